#pragma once

#include <cstdint>

namespace orbitsr::kepler {

// Truncation bounds for the Bessel-series form of the equation of the centre.
struct SeriesTruncation {
    int max_s = 12;  // outer harmonic index, >= 1
    int max_p = 12;  // inner beta-power index, >= 0
};

// Bessel function of the first kind J_n(x), ascending power series.
// Valid for n >= 0 and |x| <= 30; terms are summed until they drop
// below 1e-18 in magnitude.
double bessel_j(int n, double x);

// beta(e) = (1 - sqrt(1 - e^2)) / e, evaluated in the stable form
// e / (1 + sqrt(1 - e^2)); equals 0 at e = 0.
double beta_of_e(double e);

// Equation of the centre v - M as a truncated Bessel series in the
// mean anomaly M. Negative-order Bessel terms use J_{-n} = (-1)^n J_n.
double centre_bessel_series(double e, double mean_anomaly,
                            const SeriesTruncation& trunc = {});

// First-order coefficient of sin(M):
// 2e - e^3/4 + 5 e^5/96 + 107 e^7/4608.
double centre_coefficient_c1(double e);

// Inverse of centre_coefficient_c1 on [0, 0.99], by bisection to 1e-12.
double invert_c1(double coeff);

// Solve Kepler's equation M = E - e sin(E) for the eccentric anomaly.
// Newton iteration seeded at E0 = M + e sin(M) on the wrapped branch,
// with a bisection fallback; the result is unwrapped back to M's branch.
double solve_kepler(double mean_anomaly, double e, double tol = 1e-13);

// True anomaly from eccentric anomaly via the half-angle form,
// unwrapped so that v stays within pi of E.
double true_anomaly_from_E(double eccentric_anomaly, double e);

// Exact equation of the centre v(M) - M via the Kepler solve.
// This is the ground-truth oracle for the series and for the pipeline.
double centre_exact(double mean_anomaly, double e);

// Wrap an angle into (-pi, pi].
double wrap_pi(double angle);

// Wrap an angle into [0, 2*pi).
double wrap_two_pi(double angle);

}  // namespace orbitsr::kepler
