#pragma once

#include <Eigen/Core>
#include <array>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace orbitsr {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

// Mean obliquity of the ecliptic at J2000 (23.439279444 degrees).
inline constexpr double kObliquityJ2000 =
    23.439279444 * std::numbers::pi / 180.0;

// Identifies a reference frame: an origin plus an axes convention.
struct FrameSpec {
    enum class Origin { BodyCentred, Barycentre, Offset };
    enum class Axes { Equatorial, Ecliptic, PrincipalPlane };

    Origin origin = Origin::BodyCentred;
    std::vector<std::string> bodies;  // one name, or barycentre member set
    Vec3 fixed_offset = Vec3::Zero(); // for Origin::Offset
    Axes axes = Axes::PrincipalPlane;

    // Stable textual tag, e.g. "body:earth/principal-plane".
    std::string tag() const;
};

// Time-ordered 3D cartesian positions tagged with their frame.
struct FrameSeries {
    FrameSpec frame;
    std::vector<double> epochs;     // strictly increasing
    std::vector<Vec3> positions;    // AU, same length as epochs
};

// Principal-plane basis from PCA of 3D positions.
struct PlaneBasis {
    Vec3 centroid = Vec3::Zero();
    std::array<Vec3, 3> components{};   // orthonormal, descending variance
    std::array<double, 3> eigenvalues{};  // descending, non-negative
};

namespace frames {

// Rotate an equatorial direction (ra, dec) into ecliptic (lon, lat)
// about the equinox axis by the given obliquity. lon is in [0, 2*pi).
std::pair<double, double> equatorial_to_ecliptic(double ra, double dec,
                                                 double obliquity = kObliquityJ2000);

// Inverse rotation, for synthesizing equatorial records.
std::pair<double, double> ecliptic_to_equatorial(double lon, double lat,
                                                 double obliquity = kObliquityJ2000);

Vec3 spherical_to_cartesian(double lon, double lat, double r);

// PCA of >= 3 non-collinear points. Components carry a deterministic
// sign convention: the largest-magnitude entry of each is positive.
// Throws DegeneracyError when the second eigenvalue is below 1e-15.
PlaneBasis fit_principal_plane(const std::vector<Vec3>& points);

// Coordinates of each point in the (c1, c2) plane through the centroid.
std::vector<Vec2> project_to_plane(const std::vector<Vec3>& points,
                                   const PlaneBasis& basis);

// positions' = positions - offset, with the frame tag replaced.
// Offset epochs must match the series epochs exactly.
FrameSeries translate_origin(const FrameSeries& series,
                             const std::vector<double>& offset_epochs,
                             const std::vector<Vec3>& offsets,
                             const FrameSpec& new_spec);

// CSV block: centroid, component rows, eigenvalues.
std::string serialize_basis(const PlaneBasis& basis);
PlaneBasis parse_basis(const std::string& text);

}  // namespace frames
}  // namespace orbitsr
