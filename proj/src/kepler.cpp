#include "orbitsr/kepler.hpp"

#include <cmath>
#include <stdexcept>

#include "orbitsr/errors.hpp"

namespace orbitsr::kepler {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;
}  // namespace

double wrap_pi(double angle) {
    double a = std::remainder(angle, kTwoPi);
    if (a <= -kPi) a += kTwoPi;
    return a;
}

double wrap_two_pi(double angle) {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a;
}

double bessel_j(int n, double x) {
    if (n < 0) throw ValidationError("bessel_j: order must be non-negative");
    if (std::abs(x) > 30.0)
        throw ValidationError("bessel_j: |x| exceeds the series regime (30)");
    const double half = 0.5 * x;
    // term_0 = (x/2)^n / n!
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= half / k;
    double sum = term;
    const double hh = half * half;
    for (int k = 1; k < 200; ++k) {
        term *= -hh / (static_cast<double>(k) * (n + k));
        sum += term;
        if (std::abs(term) < 1e-18) break;
    }
    return sum;
}

double beta_of_e(double e) {
    if (e < 0.0 || e >= 1.0)
        throw ValidationError("beta_of_e: eccentricity must be in [0, 1)");
    return e / (1.0 + std::sqrt(1.0 - e * e));
}

namespace {
// J_n(x) for possibly negative order via the reflection identity.
double bessel_j_any(int n, double x) {
    if (n >= 0) return bessel_j(n, x);
    double v = bessel_j(-n, x);
    return ((-n) % 2 == 0) ? v : -v;
}
}  // namespace

double centre_bessel_series(double e, double mean_anomaly,
                            const SeriesTruncation& trunc) {
    if (e < 0.0 || e >= 1.0)
        throw ValidationError("centre_bessel_series: eccentricity out of [0, 1)");
    if (trunc.max_s < 1)
        throw ValidationError("centre_bessel_series: max_s must be >= 1");
    if (e == 0.0) return 0.0;
    const double beta = beta_of_e(e);
    double total = 0.0;
    for (int s = 1; s <= trunc.max_s; ++s) {
        const double se = s * e;
        double inner = bessel_j(s, se);
        double beta_p = 1.0;
        for (int p = 1; p <= trunc.max_p; ++p) {
            beta_p *= beta;
            inner += beta_p * (bessel_j_any(s - p, se) + bessel_j(s + p, se));
        }
        total += inner * std::sin(s * mean_anomaly) / s;
    }
    return 2.0 * total;
}

double centre_coefficient_c1(double e) {
    if (e < 0.0 || e >= 1.0)
        throw ValidationError("centre_coefficient_c1: eccentricity out of [0, 1)");
    const double e2 = e * e;
    return e * (2.0 + e2 * (-0.25 + e2 * (5.0 / 96.0 + e2 * (107.0 / 4608.0))));
}

double invert_c1(double coeff) {
    if (coeff < 0.0 || coeff >= centre_coefficient_c1(0.99))
        throw ValidationError("invert_c1: coefficient out of invertible range");
    double lo = 0.0, hi = 0.99;
    // c1 is strictly increasing on [0, 0.99]
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (centre_coefficient_c1(mid) < coeff)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double solve_kepler(double mean_anomaly, double e, double tol) {
    if (e < 0.0 || e >= 1.0)
        throw ValidationError("solve_kepler: eccentricity out of [0, 1)");
    if (tol <= 0.0) throw ValidationError("solve_kepler: tol must be positive");
    const double m_reduced = wrap_pi(mean_anomaly);
    const double branch = mean_anomaly - m_reduced;

    double E = m_reduced + e * std::sin(m_reduced);
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
        const double f = E - e * std::sin(E) - m_reduced;
        if (std::abs(f) < tol) {
            converged = true;
            break;
        }
        E -= f / (1.0 - e * std::cos(E));
    }
    if (!converged || std::abs(E - e * std::sin(E) - m_reduced) >= tol) {
        // g(E) = E - e sin E - M is strictly increasing and brackets zero
        // on [M - e, M + e].
        double lo = m_reduced - e, hi = m_reduced + e;
        for (int it = 0; it < 200; ++it) {
            E = 0.5 * (lo + hi);
            const double f = E - e * std::sin(E) - m_reduced;
            if (std::abs(f) < tol) {
                converged = true;
                break;
            }
            if (f < 0)
                lo = E;
            else
                hi = E;
        }
        if (!converged)
            throw NumericError("solve_kepler: no convergence after bisection fallback");
    }
    return E + branch;
}

double true_anomaly_from_E(double eccentric_anomaly, double e) {
    if (e < 0.0 || e >= 1.0)
        throw ValidationError("true_anomaly_from_E: eccentricity out of [0, 1)");
    const double half = 0.5 * eccentric_anomaly;
    const double v0 = 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(half),
                                       std::sqrt(1.0 - e) * std::cos(half));
    // unwrap: v and E never differ by more than pi
    return v0 + kTwoPi * std::round((eccentric_anomaly - v0) / kTwoPi);
}

double centre_exact(double mean_anomaly, double e) {
    const double E = solve_kepler(mean_anomaly, e, 1e-13);
    return true_anomaly_from_E(E, e) - mean_anomaly;
}

}  // namespace orbitsr::kepler
