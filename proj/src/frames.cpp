#include "orbitsr/frames.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "orbitsr/errors.hpp"
#include "orbitsr/kepler.hpp"

namespace orbitsr {

std::string FrameSpec::tag() const {
    std::string out;
    switch (origin) {
        case Origin::BodyCentred:
            out = "body:" + (bodies.empty() ? std::string("?") : bodies.front());
            break;
        case Origin::Barycentre: {
            out = "barycentre:";
            for (size_t i = 0; i < bodies.size(); ++i) {
                if (i) out += "+";
                out += bodies[i];
            }
            break;
        }
        case Origin::Offset: {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "offset:%.6g,%.6g,%.6g",
                          fixed_offset.x(), fixed_offset.y(), fixed_offset.z());
            out = buf;
            break;
        }
    }
    switch (axes) {
        case Axes::Equatorial: out += "/equatorial"; break;
        case Axes::Ecliptic: out += "/ecliptic"; break;
        case Axes::PrincipalPlane: out += "/principal-plane"; break;
    }
    return out;
}

namespace frames {

std::pair<double, double> equatorial_to_ecliptic(double ra, double dec,
                                                 double obliquity) {
    const double half_pi = std::numbers::pi / 2.0;
    if (dec < -half_pi || dec > half_pi)
        throw ValidationError("equatorial_to_ecliptic: dec out of [-pi/2, pi/2]");
    const double ce = std::cos(obliquity), se = std::sin(obliquity);
    const double sin_lat = std::sin(dec) * ce - std::cos(dec) * se * std::sin(ra);
    const double lat = std::asin(std::clamp(sin_lat, -1.0, 1.0));
    const double y = std::sin(ra) * ce + std::tan(dec) * se;
    const double lon = kepler::wrap_two_pi(std::atan2(y, std::cos(ra)));
    return {lon, lat};
}

std::pair<double, double> ecliptic_to_equatorial(double lon, double lat,
                                                 double obliquity) {
    // inverse rotation about the same axis
    auto [ra, dec] = equatorial_to_ecliptic(lon, lat, -obliquity);
    return {ra, dec};
}

Vec3 spherical_to_cartesian(double lon, double lat, double r) {
    if (!(r > 0.0))
        throw ValidationError("spherical_to_cartesian: radius must be positive");
    const double cl = std::cos(lat);
    return Vec3(r * cl * std::cos(lon), r * cl * std::sin(lon),
                r * std::sin(lat));
}

PlaneBasis fit_principal_plane(const std::vector<Vec3>& points) {
    if (points.size() < 3)
        throw DegeneracyError("fit_principal_plane: need at least 3 points");
    Vec3 centroid = Vec3::Zero();
    for (const auto& p : points) centroid += p;
    centroid /= static_cast<double>(points.size());

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const auto& p : points) {
        const Vec3 d = p - centroid;
        cov += d * d.transpose();
    }
    cov /= static_cast<double>(points.size());

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
    if (solver.info() != Eigen::Success)
        throw NumericError("fit_principal_plane: eigen decomposition failed");

    PlaneBasis basis;
    basis.centroid = centroid;
    // Eigen sorts ascending; we want descending
    for (int i = 0; i < 3; ++i) {
        Vec3 comp = solver.eigenvectors().col(2 - i);
        // sign convention: the largest-magnitude entry is positive
        int arg = 0;
        for (int j = 1; j < 3; ++j)
            if (std::abs(comp[j]) > std::abs(comp[arg])) arg = j;
        if (comp[arg] < 0) comp = -comp;
        basis.components[i] = comp;
        basis.eigenvalues[i] = std::max(0.0, solver.eigenvalues()[2 - i]);
    }
    if (basis.eigenvalues[1] < 1e-15)
        throw DegeneracyError(
            "fit_principal_plane: points are collinear or degenerate");
    return basis;
}

std::vector<Vec2> project_to_plane(const std::vector<Vec3>& points,
                                   const PlaneBasis& basis) {
    std::vector<Vec2> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        const Vec3 d = p - basis.centroid;
        out.emplace_back(d.dot(basis.components[0]), d.dot(basis.components[1]));
    }
    return out;
}

FrameSeries translate_origin(const FrameSeries& series,
                             const std::vector<double>& offset_epochs,
                             const std::vector<Vec3>& offsets,
                             const FrameSpec& new_spec) {
    if (offset_epochs.size() != offsets.size())
        throw AlignmentError("translate_origin: offset epoch/position size mismatch");
    if (offset_epochs.size() != series.epochs.size())
        throw AlignmentError("translate_origin: offset does not cover the series");
    FrameSeries out;
    out.frame = new_spec;
    out.epochs = series.epochs;
    out.positions.reserve(series.positions.size());
    for (size_t i = 0; i < series.epochs.size(); ++i) {
        if (offset_epochs[i] != series.epochs[i])
            throw AlignmentError("translate_origin: epoch mismatch at index " +
                                 std::to_string(i));
        out.positions.push_back(series.positions[i] - offsets[i]);
    }
    return out;
}

std::string serialize_basis(const PlaneBasis& basis) {
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof(buf), "centroid,%.15g,%.15g,%.15g\n",
                  basis.centroid.x(), basis.centroid.y(), basis.centroid.z());
    out += buf;
    for (int i = 0; i < 3; ++i) {
        std::snprintf(buf, sizeof(buf), "component_%d,%.15g,%.15g,%.15g\n",
                      i + 1, basis.components[i].x(), basis.components[i].y(),
                      basis.components[i].z());
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "eigenvalues,%.15g,%.15g,%.15g\n",
                  basis.eigenvalues[0], basis.eigenvalues[1],
                  basis.eigenvalues[2]);
    out += buf;
    return out;
}

PlaneBasis parse_basis(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    PlaneBasis basis;
    int seen = 0;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ls(line);
        std::string label;
        std::getline(ls, label, ',');
        double v[3];
        char comma;
        if (!(ls >> v[0] >> comma >> v[1] >> comma >> v[2]))
            throw FormatError("parse_basis: malformed line: " + line);
        if (label == "centroid") {
            basis.centroid = Vec3(v[0], v[1], v[2]);
            seen |= 1;
        } else if (label.rfind("component_", 0) == 0) {
            const int idx = label.back() - '1';
            if (idx < 0 || idx > 2)
                throw FormatError("parse_basis: bad component label: " + label);
            basis.components[idx] = Vec3(v[0], v[1], v[2]);
            seen |= 2 << idx;
        } else if (label == "eigenvalues") {
            basis.eigenvalues = {v[0], v[1], v[2]};
            seen |= 16;
        }
    }
    if (seen != 31) throw FormatError("parse_basis: incomplete basis block");
    return basis;
}

}  // namespace frames
}  // namespace orbitsr
