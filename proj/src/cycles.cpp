#include "orbitsr/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "orbitsr/errors.hpp"
#include "orbitsr/kepler.hpp"

namespace orbitsr::cycles {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Vec3 record_position(const EphemerisRecord& record, CoordSystem cs) {
    if (cs == CoordSystem::Equatorial)
        return frames::spherical_to_cartesian(record.ra, record.dec,
                                              record.delta);
    auto [lon, lat] = frames::equatorial_to_ecliptic(record.ra, record.dec);
    return frames::spherical_to_cartesian(lon, lat, record.delta);
}

FrameSeries series_from_records(const std::vector<EphemerisRecord>& records,
                                CoordSystem cs) {
    FrameSeries out;
    out.frame.origin = FrameSpec::Origin::BodyCentred;
    out.frame.bodies = {"earth"};
    out.frame.axes = cs == CoordSystem::Equatorial ? FrameSpec::Axes::Equatorial
                                                   : FrameSpec::Axes::Ecliptic;
    out.epochs.reserve(records.size());
    out.positions.reserve(records.size());
    for (const auto& r : records) {
        out.epochs.push_back(r.epoch_s);
        out.positions.push_back(record_position(r, cs));
    }
    return out;
}

std::vector<ApsisEvent> detect_apsides(const std::vector<double>& epochs,
                                       const std::vector<double>& radii,
                                       int window) {
    const size_t n = radii.size();
    if (epochs.size() != n)
        throw ValidationError("detect_apsides: epoch/radius size mismatch");
    if (window < 3 || window % 2 == 0)
        throw ValidationError("detect_apsides: window must be an odd integer >= 3");
    if (n < static_cast<size_t>(window))
        throw SegmentationError("detect_apsides: fewer samples than the window");

    const int h = window / 2;
    // centred moving average, window clamped at the edges
    std::vector<double> smooth(n);
    for (size_t i = 0; i < n; ++i) {
        const size_t lo = i >= static_cast<size_t>(h) ? i - h : 0;
        const size_t hi = std::min(n - 1, i + h);
        double sum = 0.0;
        for (size_t j = lo; j <= hi; ++j) sum += radii[j];
        smooth[i] = sum / static_cast<double>(hi - lo + 1);
    }

    std::vector<ApsisEvent> events;
    for (size_t i = h; i + h < n; ++i) {
        bool is_max = true, is_min = true;
        for (size_t j = i - h; j <= i + h; ++j) {
            if (j == i) continue;
            if (smooth[j] >= smooth[i]) is_max = false;
            if (smooth[j] <= smooth[i]) is_min = false;
        }
        if (!is_max && !is_min) continue;

        ApsisEvent ev;
        ev.kind = is_max ? ApsisEvent::Kind::Apogee : ApsisEvent::Kind::Perigee;
        ev.epoch = epochs[i];
        ev.radius = smooth[i];
        if (i > 0 && i + 1 < n) {
            // parabola through the three neighbouring smoothed values
            const double denom = smooth[i - 1] - 2.0 * smooth[i] + smooth[i + 1];
            if (std::abs(denom) > 1e-300) {
                const double shift =
                    0.5 * (smooth[i - 1] - smooth[i + 1]) / denom;
                if (std::abs(shift) <= 1.0) {
                    ev.epoch = epochs[i] +
                               shift * 0.5 * (epochs[i + 1] - epochs[i - 1]);
                    ev.radius = smooth[i] -
                                0.25 * (smooth[i - 1] - smooth[i + 1]) * shift;
                }
            }
        }
        events.push_back(ev);
    }

    // enforce alternation by dropping the weaker of same-kind neighbours
    std::vector<ApsisEvent> kept;
    for (const auto& ev : events) {
        if (!kept.empty() && kept.back().kind == ev.kind) {
            const bool replace =
                ev.kind == ApsisEvent::Kind::Apogee
                    ? ev.radius > kept.back().radius
                    : ev.radius < kept.back().radius;
            if (replace) kept.back() = ev;
            continue;
        }
        kept.push_back(ev);
    }
    if (kept.size() < 2)
        throw SegmentationError("detect_apsides: fewer than 2 apsides found");
    return kept;
}

std::vector<CycleSegment> segment_anomalistic_cycles(
    const FrameSeries& series, const std::vector<ApsisEvent>& apsides) {
    std::vector<const ApsisEvent*> apogees, perigees;
    for (const auto& ev : apsides) {
        (ev.kind == ApsisEvent::Kind::Apogee ? apogees : perigees).push_back(&ev);
    }
    if (apogees.size() < 2)
        throw SegmentationError(
            "segment_anomalistic_cycles: need at least 2 apogee events");

    std::vector<CycleSegment> segments;
    for (size_t k = 0; k + 1 < apogees.size(); ++k) {
        CycleSegment seg;
        seg.index = static_cast<int>(k + 1);
        seg.start_epoch = apogees[k]->epoch;
        seg.end_epoch = apogees[k + 1]->epoch;
        seg.duration = seg.end_epoch - seg.start_epoch;

        const ApsisEvent* perigee = nullptr;
        for (const auto* p : perigees) {
            if (p->epoch > seg.start_epoch && p->epoch < seg.end_epoch) {
                perigee = p;
                break;
            }
        }
        if (!perigee)
            throw SegmentationError("segment_anomalistic_cycles: cycle " +
                                    std::to_string(seg.index) +
                                    " contains no perigee event");
        seg.perigee_epoch = perigee->epoch;

        for (size_t i = 0; i < series.epochs.size(); ++i) {
            const double t = series.epochs[i];
            if (t >= seg.start_epoch && t < seg.end_epoch) {
                seg.epochs.push_back(t);
                seg.positions.push_back(series.positions[i]);
            }
        }
        segments.push_back(std::move(seg));
    }
    return segments;
}

std::vector<std::pair<double, double>> mean_anomaly(const CycleSegment& segment) {
    std::vector<std::pair<double, double>> out;
    out.reserve(segment.epochs.size());
    for (double t : segment.epochs) {
        double phase = std::fmod(t - segment.perigee_epoch, segment.duration);
        if (phase < 0) phase += segment.duration;
        out.emplace_back(t, kTwoPi * phase / segment.duration);
    }
    return out;
}

std::vector<std::pair<double, double>> true_anomaly_geometric(
    const CycleSegment& segment, const PlaneBasis& basis) {
    const size_t n = segment.epochs.size();
    if (n == 0) return {};

    // planar coordinates of the frame origin (the focus)
    const Vec3 d0 = -basis.centroid;
    const Vec2 focus(d0.dot(basis.components[0]), d0.dot(basis.components[1]));
    const auto planar = frames::project_to_plane(segment.positions, basis);

    std::vector<double> theta(n);
    for (size_t i = 0; i < n; ++i) {
        const Vec2 rel = planar[i] - focus;
        if (rel.norm() < 1e-15)
            throw DegeneracyError(
                "true_anomaly_geometric: sample coincides with the focus");
        theta[i] = std::atan2(rel.y(), rel.x());
    }

    // unwrap into a continuous angle
    std::vector<double> unwrapped(n);
    unwrapped[0] = theta[0];
    for (size_t i = 1; i < n; ++i)
        unwrapped[i] = unwrapped[i - 1] + kepler::wrap_pi(theta[i] - theta[i - 1]);

    // orient along the direction of motion
    if (unwrapped.back() < unwrapped.front())
        for (auto& u : unwrapped) u = -u;

    // zero at the sample nearest the perigee epoch
    size_t ip = 0;
    for (size_t i = 1; i < n; ++i)
        if (std::abs(segment.epochs[i] - segment.perigee_epoch) <
            std::abs(segment.epochs[ip] - segment.perigee_epoch))
            ip = i;
    const double anchor = unwrapped[ip];

    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i)
        out.emplace_back(segment.epochs[i], unwrapped[i] - anchor);
    return out;
}

std::vector<AnomalySample> residual_series(
    const std::vector<CycleSegment>& segments, const PlaneBasis& basis) {
    std::vector<AnomalySample> out;
    for (const auto& seg : segments) {
        const auto ms = mean_anomaly(seg);
        const auto vs = true_anomaly_geometric(seg, basis);
        for (size_t i = 0; i < ms.size(); ++i) {
            AnomalySample s;
            s.cycle = seg.index;
            s.epoch = ms[i].first;
            s.mean_anomaly = ms[i].second;
            s.residual = kepler::wrap_pi(vs[i].second - ms[i].second);
            s.true_anomaly = s.mean_anomaly + s.residual;
            out.push_back(s);
        }
    }
    return out;
}

double kepler_route_discrepancy(const CycleSegment& segment,
                                const PlaneBasis& basis, double eccentricity) {
    const auto ms = mean_anomaly(segment);
    const auto vs = true_anomaly_geometric(segment, basis);
    double worst = 0.0;
    for (size_t i = 0; i < ms.size(); ++i) {
        const double geometric = kepler::wrap_pi(vs[i].second - ms[i].second);
        const double solved = kepler::centre_exact(ms[i].second, eccentricity);
        worst = std::max(worst, std::abs(kepler::wrap_pi(geometric - solved)));
    }
    return worst;
}

std::string serialize_samples(const std::vector<AnomalySample>& samples,
                              const std::vector<std::string>& header_comments) {
    std::string out;
    for (const auto& c : header_comments) out += "# " + c + "\n";
    out += "cycle,epoch_s,M_rad,v_rad,residual_rad\n";
    char buf[192];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof(buf), "%d,%.15g,%.15g,%.15g,%.15g\n", s.cycle,
                      s.epoch, s.mean_anomaly, s.true_anomaly, s.residual);
        out += buf;
    }
    return out;
}

std::vector<AnomalySample> parse_samples(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    std::vector<AnomalySample> out;
    bool header_seen = false;
    size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        AnomalySample s;
        if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf", &s.cycle, &s.epoch,
                        &s.mean_anomaly, &s.true_anomaly, &s.residual) != 5)
            throw FormatError("parse_samples: malformed line " +
                              std::to_string(line_no));
        out.push_back(s);
    }
    return out;
}

}  // namespace orbitsr::cycles
