#pragma once

#include <utility>
#include <vector>

#include "orbitsr/frames.hpp"
#include "orbitsr/ingest.hpp"

namespace orbitsr {

struct ApsisEvent {
    enum class Kind { Perigee, Apogee };
    double epoch = 0.0;   // refined to sub-sample precision
    Kind kind = Kind::Perigee;
    double radius = 0.0;  // smoothed radius at the extremum, AU
};

// One anomalistic (apogee-to-apogee) slice of a position series.
struct CycleSegment {
    int index = 0;  // 1-based, contiguous
    std::vector<double> epochs;
    std::vector<Vec3> positions;
    double perigee_epoch = 0.0;
    double start_epoch = 0.0;  // enclosing apogee pair
    double end_epoch = 0.0;
    double duration = 0.0;     // end - start, the per-cycle anomalistic period
};

// One row of the regression target dataset.
struct AnomalySample {
    int cycle = 0;
    double epoch = 0.0;
    double mean_anomaly = 0.0;  // [0, 2*pi)
    double true_anomaly = 0.0;  // mean_anomaly + residual
    double residual = 0.0;      // wrapped into (-pi, pi]
};

namespace cycles {

enum class CoordSystem { Equatorial, Ecliptic };

// Cartesian position of a record, in the requested coordinate system.
Vec3 record_position(const EphemerisRecord& record, CoordSystem cs);

// Geocentric FrameSeries built from parsed records.
FrameSeries series_from_records(const std::vector<EphemerisRecord>& records,
                                CoordSystem cs);

// Local extrema of the radius sequence after centred moving-average
// smoothing, refined by quadratic interpolation, alternation enforced by
// dropping the weaker of two same-kind neighbours.
std::vector<ApsisEvent> detect_apsides(const std::vector<double>& epochs,
                                       const std::vector<double>& radii,
                                       int window = 13);

// One segment per consecutive apogee pair; samples before the first and
// after the last apogee are discarded. Each segment must contain a
// perigee event.
std::vector<CycleSegment> segment_anomalistic_cycles(
    const FrameSeries& series, const std::vector<ApsisEvent>& apsides);

// M(t) = 2*pi * ((t - perigee) mod duration) / duration.
std::vector<std::pair<double, double>> mean_anomaly(const CycleSegment& segment);

// Unwrapped polar angle of the planar position about the projected
// frame origin, measured from the perigee direction, zero at perigee.
std::vector<std::pair<double, double>> true_anomaly_geometric(
    const CycleSegment& segment, const PlaneBasis& basis);

// Per sample: (cycle, M, v, v - M), residual wrapped into (-pi, pi].
std::vector<AnomalySample> residual_series(
    const std::vector<CycleSegment>& segments, const PlaneBasis& basis);

// Comparison route for the true anomaly: solve Kepler's equation for the
// per-cycle mean anomaly at an assumed eccentricity and report the max
// absolute discrepancy against the geometric route.
double kepler_route_discrepancy(const CycleSegment& segment,
                                const PlaneBasis& basis, double eccentricity);

// Regression dataset CSV: cycle,epoch_s,M_rad,v_rad,residual_rad.
std::string serialize_samples(const std::vector<AnomalySample>& samples,
                              const std::vector<std::string>& header_comments = {});
std::vector<AnomalySample> parse_samples(const std::string& text);

}  // namespace cycles
}  // namespace orbitsr
