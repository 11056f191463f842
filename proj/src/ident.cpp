#include "starident/ident.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "starident/csv.hpp"

namespace starident::ident {

namespace {

constexpr double kTrackStaleS = 10.0;
constexpr double kScoreTieEpsilonDeg = 1e-9;

double lerp(double a, double b, double t) { return a + (b - a) * t; }

/// Shortest-path interpolation between two bearings, degrees.
double lerp_angle_deg(double a, double b, double t) {
    double d = std::fmod(b - a, 360.0);
    if (d > 180.0) d -= 360.0;
    if (d < -180.0) d += 360.0;
    return orientation::wrap_degrees_360(a + d * t);
}

}  // namespace

Timeslot timeslot_of(double t) {
    const double minute = std::floor(t / 60.0) * 60.0;
    const double sec = t - minute;
    static constexpr double kBoundaries[4] = {12.0, 27.0, 42.0, 57.0};
    double start;
    if (sec < kBoundaries[0]) {
        start = minute - 60.0 + kBoundaries[3];
    } else {
        start = minute + kBoundaries[0];
        for (double b : kBoundaries) {
            if (sec >= b) start = minute + b;
        }
    }
    return {start, start + 15.0};
}

// ---------------------------------------------------------------------------
// Interpolating tracks.
// ---------------------------------------------------------------------------

AttitudeTrack::AttitudeTrack(std::vector<UtStatusRecord> records) : records_(std::move(records)) {
    std::stable_sort(records_.begin(), records_.end(),
                     [](const UtStatusRecord& a, const UtStatusRecord& b) {
                         return a.timestamp < b.timestamp;
                     });
}

std::optional<orientation::Attitude> AttitudeTrack::at(double t, double max_gap_s) const {
    if (records_.empty()) return std::nullopt;
    const auto upper = std::upper_bound(
        records_.begin(), records_.end(), t,
        [](double v, const UtStatusRecord& r) { return v < r.timestamp; });
    if (upper == records_.begin()) {
        const auto& first = records_.front();
        if (first.timestamp - t > max_gap_s) return std::nullopt;
        return orientation::attitude_from_status(first);
    }
    if (upper == records_.end()) {
        const auto& last = records_.back();
        if (t - last.timestamp > max_gap_s) return std::nullopt;
        return orientation::attitude_from_status(last);
    }
    const UtStatusRecord& b = *upper;
    const UtStatusRecord& a = *(upper - 1);
    if (b.timestamp - a.timestamp > max_gap_s && t - a.timestamp > 0.0 &&
        b.timestamp - t > 0.0) {
        return std::nullopt;
    }
    const double frac = b.timestamp == a.timestamp
                            ? 0.0
                            : (t - a.timestamp) / (b.timestamp - a.timestamp);
    UtStatusRecord mid = a;
    mid.timestamp = t;
    mid.tilt_deg = lerp(a.tilt_deg, b.tilt_deg, frac);
    mid.boresight_azimuth_deg =
        lerp_angle_deg(a.boresight_azimuth_deg, b.boresight_azimuth_deg, frac);
    mid.boresight_elevation_deg = lerp(a.boresight_elevation_deg, b.boresight_elevation_deg, frac);
    const bool qa = a.has_quaternion && !a.degraded;
    const bool qb = b.has_quaternion && !b.degraded;
    if (qa && qb) {
        const orientation::Quaternion q = orientation::slerp(
            {a.q_w, a.q_x, a.q_y, a.q_z}, {b.q_w, b.q_x, b.q_y, b.q_z}, frac);
        mid.has_quaternion = true;
        mid.degraded = false;
        mid.q_w = q.w;
        mid.q_x = q.x;
        mid.q_y = q.y;
        mid.q_z = q.z;
    } else {
        mid.has_quaternion = false;
        mid.degraded = false;
    }
    return orientation::attitude_from_status(mid);
}

orientation::Attitude AttitudeTrack::at_clamped(double t) const {
    auto a = at(t, std::numeric_limits<double>::infinity());
    if (!a) throw Error("attitude track is empty");
    return *a;
}

LocationTrack::LocationTrack(std::vector<UtLocationRecord> records)
    : records_(std::move(records)) {
    std::stable_sort(records_.begin(), records_.end(),
                     [](const UtLocationRecord& a, const UtLocationRecord& b) {
                         return a.timestamp < b.timestamp;
                     });
}

UtLocationRecord LocationTrack::at(double t) const {
    if (records_.empty()) throw Error("location track is empty");
    const auto upper = std::upper_bound(
        records_.begin(), records_.end(), t,
        [](double v, const UtLocationRecord& r) { return v < r.timestamp; });
    if (upper == records_.begin()) return records_.front();
    if (upper == records_.end()) return records_.back();
    const UtLocationRecord& b = *upper;
    const UtLocationRecord& a = *(upper - 1);
    const double frac =
        b.timestamp == a.timestamp ? 0.0 : (t - a.timestamp) / (b.timestamp - a.timestamp);
    UtLocationRecord mid = a;
    mid.timestamp = t;
    mid.latitude = lerp(a.latitude, b.latitude, frac);
    mid.longitude = lerp_angle_deg(a.longitude, b.longitude, frac);
    if (mid.longitude >= 180.0) mid.longitude -= 360.0;
    mid.altitude_m = lerp(a.altitude_m, b.altitude_m, frac);
    mid.horizontal_speed_mps = lerp(a.horizontal_speed_mps, b.horizontal_speed_mps, frac);
    mid.vertical_speed_mps = lerp(a.vertical_speed_mps, b.vertical_speed_mps, frac);
    return mid;
}

// ---------------------------------------------------------------------------
// Matching.
// ---------------------------------------------------------------------------

MatchOutcome match_segment(const TrajectoryObservation& obs, const LocationTrack& location,
                           const AttitudeTrack& attitude, const std::vector<TleRecord>& catalog,
                           geometry::Sgp4Cache& cache, const IdentifyConfig& config) {
    MatchOutcome out;
    if (obs.samples.empty()) {
        out.no_candidates = true;
        return out;
    }
    const double t_mid = obs.mid_time();
    const UtLocationRecord observer_mid = location.at(t_mid);
    const orientation::Attitude attitude_mid = attitude.at_clamped(t_mid);
    // The candidate set is frozen at the segment mid-time.
    const auto candidates =
        geometry::visible_catalog(t_mid, observer_mid, attitude_mid, config.fov, catalog, cache,
                                  config.elevation_mask_deg);
    if (candidates.empty()) {
        out.no_candidates = true;
        return out;
    }

    struct Scored {
        const TleRecord* tle;
        double score;
        double mean_elevation;
    };
    std::vector<Scored> scored;
    for (const auto& cand : candidates) {
        double total_sep = 0.0;
        double total_elev = 0.0;
        size_t n = 0;
        bool failed = false;
        for (const auto& sample : obs.samples) {
            geometry::EcefState state;
            try {
                state = geometry::propagate(cache.get(*cand.tle), cand.tle->name,
                                            sample.timestamp);
            } catch (const Error&) {
                failed = true;
                break;
            }
            const auto predicted = geometry::topocentric(location.at(sample.timestamp), state);
            total_sep += geometry::angular_separation_deg(sample.direction, predicted);
            total_elev += predicted.elevation_deg;
            ++n;
        }
        if (failed || n == 0) continue;
        scored.push_back({cand.tle, total_sep / n, total_elev / n});
    }
    if (scored.empty()) {
        out.no_candidates = true;
        return out;
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (std::fabs(a.score - b.score) > kScoreTieEpsilonDeg) return a.score < b.score;
        if (a.mean_elevation != b.mean_elevation) return a.mean_elevation > b.mean_elevation;
        return a.tle->norad_id < b.tle->norad_id;
    });
    const Scored& best = scored.front();
    out.score_deg = best.score;
    if (best.score <= config.tau_match_deg) {
        out.norad_id = best.tle->norad_id;
        out.satellite_name = best.tle->name;
    }
    return out;
}

// ---------------------------------------------------------------------------
// The identification pipeline.
// ---------------------------------------------------------------------------

namespace {

struct Track {
    int id{};
    double birth{};
    double last_seen{};
    std::vector<Pixel> last_chunk;
    Pixel last_midpoint;
    TrajectoryObservation obs;
    bool switch_suppressed{};  // born right after a map reset
    double activation{-1.0};
    MatchOutcome match;
    bool emitted_switch{};
};

struct PendingGroup {
    double birth{};
    std::vector<int> members;  // track ids in segment-label order
};

class Pipeline {
public:
    Pipeline(const AttitudeTrack& attitude, const LocationTrack& location,
             const std::vector<TleRecord>& catalog, const IdentifyConfig& config)
        : attitude_(attitude), location_(location), catalog_(catalog), config_(config),
          geom_(geometry::MapGeometry::for_fov(config.fov)) {}

    void process(const ObstructionFrame& frame);
    IdentifyOutput finish();

    size_t frames_processed{};
    size_t frames_skipped{};
    size_t resets{};

private:
    void handle_reset(const mapproc::BinaryFrame& new_baseline);
    void process_diff(const mapproc::DiffFrame& diff);
    int new_track(const mapproc::Segment& seg, double t);
    void append_sample(Track& track, const mapproc::Segment& seg, double t);
    void resolve_pending(const std::vector<int>& grown, double t_now);
    bool within_slot_guard(double t) const;

    const AttitudeTrack& attitude_;
    const LocationTrack& location_;
    const std::vector<TleRecord>& catalog_;
    const IdentifyConfig& config_;
    geometry::MapGeometry geom_;

    std::optional<mapproc::BinaryFrame> prev_raw_;
    std::vector<Track> tracks_;
    std::vector<int> sequence_;  // resolved connection order (track ids)
    std::optional<PendingGroup> pending_;
    bool after_reset_{};
    double last_diff_time_{};
    bool saw_diff_{};
};

bool Pipeline::within_slot_guard(double t) const {
    const Timeslot slot = timeslot_of(t);
    return t - slot.start >= config_.slot_boundary_guard_s &&
           slot.end - t >= config_.slot_boundary_guard_s;
}

int Pipeline::new_track(const mapproc::Segment& seg, double t) {
    Track track;
    track.id = static_cast<int>(tracks_.size());
    track.birth = t;
    track.last_seen = t;
    track.last_chunk = seg.pixels;
    track.last_midpoint = seg.midpoint;
    track.switch_suppressed = after_reset_;
    track.obs.track_id = track.id;
    track.obs.birth_time = t;
    append_sample(track, seg, t);
    tracks_.push_back(std::move(track));
    return tracks_.back().id;
}

void Pipeline::append_sample(Track& track, const mapproc::Segment& seg, double t) {
    TrajectorySample sample;
    sample.timestamp = t;
    sample.pixel = seg.midpoint;
    sample.direction =
        geometry::pixel_to_direction(seg.midpoint, FrameType::kEarth, {}, geom_);
    if (track.obs.samples.empty() || track.obs.samples.back().timestamp < t) {
        track.obs.samples.push_back(sample);
    }
    for (const auto& p : seg.pixels) track.obs.pixels.set(p);
    track.last_chunk = seg.pixels;
    track.last_midpoint = seg.midpoint;
    track.last_seen = t;
}

void Pipeline::resolve_pending(const std::vector<int>& grown, double t_now) {
    if (!pending_) return;
    const PendingGroup group = *pending_;
    pending_.reset();

    std::vector<int> not_grown;
    std::vector<int> grew;
    for (int id : group.members) {
        if (std::find(grown.begin(), grown.end(), id) != grown.end()) {
            grew.push_back(id);
        } else {
            not_grown.push_back(id);
        }
    }
    // The growing segment is the currently connected one: it goes last.
    const size_t n_pre = not_grown.size();
    for (size_t i = 0; i < not_grown.size(); ++i) {
        Track& t = tracks_[not_grown[i]];
        t.activation = group.birth + (t_now - group.birth) * static_cast<double>(i) /
                                         static_cast<double>(n_pre);
        sequence_.push_back(t.id);
    }
    for (int id : grew) {
        tracks_[id].activation = t_now;
        sequence_.push_back(id);
    }
}

void Pipeline::handle_reset(const mapproc::BinaryFrame& new_baseline) {
    ++resets;
    if (pending_) resolve_pending({}, new_baseline.timestamp);
    // Existing tracks age out through the stale gate; the next births are
    // map reconstruction, not beam switches.
    after_reset_ = true;
    prev_raw_ = new_baseline;
}

void Pipeline::process(const ObstructionFrame& frame) {
    const mapproc::BinaryFrame bf = mapproc::classify(frame, config_.tau_obs);

    std::optional<orientation::Attitude> att;
    if (frame.frame_type == FrameType::kUt) {
        att = attitude_.at(frame.timestamp, config_.attitude_gap_limit_s);
        if (!att) {
            ++frames_skipped;
            return;
        }
    }
    ++frames_processed;

    if (prev_raw_ && prev_raw_->frame_type != bf.frame_type) {
        throw Error("obstruction stream mixes FRAME_UT and FRAME_EARTH records");
    }
    if (prev_raw_ && bf.timestamp <= prev_raw_->timestamp) {
        if (bf.timestamp < prev_raw_->timestamp) {
            throw Error("obstruction frames regress in time");
        }
        prev_raw_ = bf;  // duplicate timestamp keeps the last record
        return;
    }

    if (prev_raw_) {
        const long prev_count = static_cast<long>(prev_raw_->explored.count());
        const long curr_count = static_cast<long>(bf.explored.count());
        if (curr_count < prev_count - mapproc::kResetGuardPixels) {
            handle_reset(bf);
            return;
        }
    } else {
        prev_raw_ = bf;
        return;
    }

    mapproc::DiffFrame diff;
    if (bf.frame_type == FrameType::kUt) {
        // Both frames are projected through the attitude of the current frame
        // so that previously-recorded body pixels cancel exactly in the XOR;
        // only genuinely new pixels survive, placed with the current attitude.
        const auto prev_conv = mapproc::ut_to_earth_frame(*prev_raw_, *att, geom_);
        const auto curr_conv = mapproc::ut_to_earth_frame(bf, *att, geom_);
        diff = mapproc::xor_diff(prev_conv.frame, curr_conv.frame);
    } else {
        diff = mapproc::xor_diff(*prev_raw_, bf);
    }
    prev_raw_ = bf;
    if (diff.reset) {
        handle_reset(bf);
        return;
    }
    process_diff(diff);
}

void Pipeline::process_diff(const mapproc::DiffFrame& diff) {
    const double t = diff.t_curr;
    last_diff_time_ = t;
    saw_diff_ = true;
    const auto segments = mapproc::label_segments(diff);
    if (segments.empty()) return;

    // Correspondence against the latest chunk of every live track.
    std::vector<mapproc::Segment> summaries;
    std::vector<int> summary_track;
    for (const auto& track : tracks_) {
        if (t - track.last_seen > kTrackStaleS) continue;
        mapproc::Segment s;
        s.label = static_cast<int>(summaries.size());
        s.pixels = track.last_chunk;
        s.midpoint = track.last_midpoint;
        summaries.push_back(std::move(s));
        summary_track.push_back(track.id);
    }
    const auto report = mapproc::track_segments(summaries, segments);

    std::vector<int> grown;
    std::vector<int> born;
    for (const auto& m : report.matches) {
        const auto& seg = segments[m.curr_index];
        if (m.prev_index >= 0) {
            Track& track = tracks_[summary_track[m.prev_index]];
            append_sample(track, seg, t);
            grown.push_back(track.id);
        } else {
            born.push_back(new_track(seg, t));
        }
    }

    if (pending_) {
        bool pending_grew = false;
        for (int id : pending_->members) {
            if (std::find(grown.begin(), grown.end(), id) != grown.end()) pending_grew = true;
        }
        if (pending_grew || !born.empty()) resolve_pending(grown, t);
    }

    if (!born.empty()) {
        if (born.size() == 1) {
            Track& track = tracks_[born.front()];
            track.activation = track.birth;
            sequence_.push_back(track.id);
        } else {
            pending_ = PendingGroup{t, born};
        }
        after_reset_ = false;
    }
}

IdentifyOutput Pipeline::finish() {
    if (pending_) resolve_pending({}, saw_diff_ ? last_diff_time_ : pending_->birth);

    IdentifyOutput out;
    out.frames_processed = frames_processed;
    out.frames_skipped_attitude = frames_skipped;
    out.resets = resets;

    geometry::Sgp4Cache cache;
    for (Track& track : tracks_) {
        track.match = match_segment(track.obs, location_, attitude_, catalog_, cache, config_);
    }

    // Intervals follow the resolved connection order; each runs until the
    // next connection takes over.
    std::map<double, IdentificationResult> per_slot;
    std::vector<Interval> flat;
    for (size_t i = 0; i < sequence_.size(); ++i) {
        Track& track = tracks_[sequence_[i]];
        Interval iv;
        iv.t_from = track.activation;
        iv.t_to = i + 1 < sequence_.size() ? tracks_[sequence_[i + 1]].activation
                                           : last_diff_time_;
        if (iv.t_to < iv.t_from) iv.t_to = iv.t_from;
        iv.norad_id = track.match.norad_id;
        iv.satellite_name = track.match.satellite_name;
        iv.score_deg = track.match.score_deg;
        iv.n_samples = static_cast<int>(track.obs.samples.size());
        iv.track_id = track.id;
        const bool eligible = i > 0 && !track.switch_suppressed && within_slot_guard(track.birth);
        iv.via_switch = eligible;
        track.emitted_switch = eligible;
        iv.slot_start = timeslot_of(iv.t_from).start;
        flat.push_back(iv);
    }
    for (const auto& iv : flat) {
        auto& result = per_slot[iv.slot_start];
        result.slot = {iv.slot_start, iv.slot_start + 15.0};
        result.intervals.push_back(iv);
    }
    for (auto& [start, result] : per_slot) {
        std::sort(result.intervals.begin(), result.intervals.end(),
                  [](const Interval& a, const Interval& b) {
                      return a.t_from != b.t_from ? a.t_from < b.t_from
                                                  : a.track_id < b.track_id;
                  });
        out.results.push_back(std::move(result));
    }

    for (size_t i = 1; i < sequence_.size(); ++i) {
        const Track& track = tracks_[sequence_[i]];
        if (!track.emitted_switch) continue;
        BeamSwitchEvent ev;
        ev.timestamp = track.birth;
        ev.from_norad = tracks_[sequence_[i - 1]].match.norad_id;
        ev.to_norad = track.match.norad_id;
        ev.within_slot = true;
        out.switches.push_back(ev);
    }
    std::sort(out.switches.begin(), out.switches.end(),
              [](const BeamSwitchEvent& a, const BeamSwitchEvent& b) {
                  return a.timestamp < b.timestamp;
              });

    out.observations.reserve(tracks_.size());
    for (Track& track : tracks_) out.observations.push_back(std::move(track.obs));
    return out;
}

}  // namespace

IdentifyOutput identify(const FrameSource& frames, const AttitudeTrack& attitude,
                        const LocationTrack& location, const std::vector<TleRecord>& catalog,
                        const IdentifyConfig& config) {
    Pipeline pipeline(attitude, location, catalog, config);
    while (auto frame = frames()) pipeline.process(*frame);
    return pipeline.finish();
}

IdentifyOutput identify(const std::vector<ObstructionFrame>& frames,
                        const std::vector<UtStatusRecord>& status,
                        const std::vector<UtLocationRecord>& location,
                        const std::vector<TleRecord>& catalog, const IdentifyConfig& config) {
    const AttitudeTrack attitude(status);
    const LocationTrack loc(location);
    size_t i = 0;
    const FrameSource source = [&]() -> std::optional<ObstructionFrame> {
        if (i >= frames.size()) return std::nullopt;
        return frames[i++];
    };
    return identify(source, attitude, loc, catalog, config);
}

// ---------------------------------------------------------------------------
// Validation.
// ---------------------------------------------------------------------------

Reconstruction reconstruct_map(const TleRecord& tle, double t_from, double t_to,
                               const LocationTrack& location,
                               const geometry::MapGeometry& geom, geometry::Sgp4Cache& cache,
                               double cadence_s) {
    if (cadence_s <= 0.0) throw ConfigError("reconstruction cadence must be positive");
    Reconstruction rec;
    for (double t = t_from; t <= t_to + 1e-9; t += cadence_s) {
        const auto state = geometry::propagate(cache.get(tle), tle.name, t);
        const auto dir = geometry::topocentric(location.at(t), state);
        try {
            const Pixel px = geometry::direction_to_pixel(dir, FrameType::kEarth, {}, geom);
            rec.mask.set(px);
            rec.samples.emplace_back(t, px);
        } catch (const Error&) {
            ++rec.dropped;
        }
    }
    return rec;
}

IntervalValidation validate_interval(const TrajectoryObservation& obs, const TleRecord& tle,
                                     const LocationTrack& location,
                                     const geometry::MapGeometry& geom,
                                     geometry::Sgp4Cache& cache) {
    IntervalValidation v;
    double sum_px = 0.0, sum_sep = 0.0, max_px = 0.0;
    size_t n = 0;
    for (const auto& sample : obs.samples) {
        geometry::EcefState state;
        try {
            state = geometry::propagate(cache.get(tle), tle.name, sample.timestamp);
        } catch (const Error&) {
            continue;
        }
        const auto predicted_dir = geometry::topocentric(location.at(sample.timestamp), state);
        sum_sep += geometry::angular_separation_deg(sample.direction, predicted_dir);
        double px_dist;
        try {
            const Pixel predicted_px =
                geometry::direction_to_pixel(predicted_dir, FrameType::kEarth, {}, geom);
            px_dist = pixel_distance(sample.pixel, predicted_px);
        } catch (const Error&) {
            // Predicted direction fell off the map: charge the full radius.
            px_dist = static_cast<double>(geom.max_radius_px);
        }
        sum_px += px_dist;
        max_px = std::max(max_px, px_dist);
        ++n;
    }
    v.n_samples = n;
    if (n > 0) {
        v.mean_pixel_distance = sum_px / static_cast<double>(n);
        v.mean_separation_deg = sum_sep / static_cast<double>(n);
        v.max_pixel_distance = max_px;
    }
    v.flagged = n > 0 && v.mean_pixel_distance > kReconstructionFlagPx;
    return v;
}

SeparationStats separation_stats(const std::vector<IdentificationResult>& results,
                                 const std::vector<TrajectoryObservation>& observations,
                                 const LocationTrack& location,
                                 const std::vector<TleRecord>& catalog,
                                 geometry::Sgp4Cache& cache) {
    std::map<int, const TleRecord*> by_norad;
    for (const auto& tle : catalog) by_norad[tle.norad_id] = &tle;

    double sum = 0.0, sum_sq = 0.0;
    size_t n = 0;
    for (const auto& result : results) {
        for (const auto& iv : result.intervals) {
            if (iv.norad_id == kUnidentified) continue;
            const auto tle_it = by_norad.find(iv.norad_id);
            if (tle_it == by_norad.end()) continue;
            if (iv.track_id < 0 || static_cast<size_t>(iv.track_id) >= observations.size()) {
                continue;
            }
            const auto& obs = observations[iv.track_id];
            for (const auto& sample : obs.samples) {
                geometry::EcefState state;
                try {
                    state = geometry::propagate(cache.get(*tle_it->second),
                                                tle_it->second->name, sample.timestamp);
                } catch (const Error&) {
                    continue;
                }
                const auto predicted =
                    geometry::topocentric(location.at(sample.timestamp), state);
                const double sep =
                    geometry::angular_separation_deg(sample.direction, predicted);
                sum += sep;
                sum_sq += sep * sep;
                ++n;
            }
        }
    }
    SeparationStats stats;
    stats.n_samples = n;
    if (n > 0) {
        stats.mean_deg = sum / static_cast<double>(n);
        const double var = sum_sq / static_cast<double>(n) - stats.mean_deg * stats.mean_deg;
        stats.stddev_deg = var > 0.0 ? std::sqrt(var) : 0.0;
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Record streams.
// ---------------------------------------------------------------------------

void write_identification(const std::string& path,
                          const std::vector<IdentificationResult>& results) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "slot_start,t_from,t_to,norad_id,satellite_name,score_deg,n_samples,switch_flag\n";
    for (const auto& result : results) {
        for (const auto& iv : result.intervals) {
            out << csv::format_timestamp(iv.slot_start) << ',' << csv::format_timestamp(iv.t_from)
                << ',' << csv::format_timestamp(iv.t_to) << ',';
            if (iv.norad_id == kUnidentified) {
                out << "UNIDENTIFIED";
            } else {
                out << iv.norad_id;
            }
            out << ',' << iv.satellite_name << ',';
            if (iv.score_deg >= 0.0) out << csv::format_fixed(iv.score_deg, 6);
            out << ',' << iv.n_samples << ',' << (iv.via_switch ? 1 : 0) << '\n';
        }
    }
}

std::vector<Interval> parse_identification(const std::string& path) {
    const auto lines = csv::read_lines(path);
    std::vector<Interval> out;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (csv::strip(lines[i]).empty()) continue;
        const auto f = csv::split(lines[i]);
        if (f.size() < 8) throw ParseError(path + ": bad identification row at line " +
                                           std::to_string(i + 1));
        Interval iv;
        iv.slot_start = csv::parse_double(f[0]).value_or(0.0);
        iv.t_from = csv::parse_double(f[1]).value_or(0.0);
        iv.t_to = csv::parse_double(f[2]).value_or(0.0);
        const auto norad_field = csv::strip(f[3]);
        iv.norad_id = norad_field == "UNIDENTIFIED"
                          ? kUnidentified
                          : static_cast<int>(csv::parse_int64(norad_field).value_or(-1));
        iv.satellite_name = std::string(csv::strip(f[4]));
        iv.score_deg = csv::parse_double(f[5]).value_or(-1.0);
        iv.n_samples = static_cast<int>(csv::parse_int64(f[6]).value_or(0));
        iv.via_switch = csv::parse_int64(f[7]).value_or(0) != 0;
        iv.track_id = static_cast<int>(out.size());
        out.push_back(std::move(iv));
    }
    return out;
}

void write_switch_events(const std::string& path, const std::vector<BeamSwitchEvent>& events) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "timestamp,from_norad,to_norad,within_slot\n";
    for (const auto& ev : events) {
        out << csv::format_timestamp(ev.timestamp) << ',';
        if (ev.from_norad) out << *ev.from_norad;
        out << ',' << ev.to_norad << ',' << (ev.within_slot ? 1 : 0) << '\n';
    }
}

std::vector<BeamSwitchEvent> parse_switch_events(const std::string& path) {
    const auto lines = csv::read_lines(path);
    std::vector<BeamSwitchEvent> out;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (csv::strip(lines[i]).empty()) continue;
        const auto f = csv::split(lines[i]);
        if (f.size() < 4) throw ParseError(path + ": bad switch row at line " +
                                           std::to_string(i + 1));
        BeamSwitchEvent ev;
        ev.timestamp = csv::parse_double(f[0]).value_or(0.0);
        const auto from = csv::parse_int64(f[1]);
        if (from) ev.from_norad = static_cast<int>(*from);
        ev.to_norad = static_cast<int>(csv::parse_int64(f[2]).value_or(kUnidentified));
        ev.within_slot = csv::parse_int64(f[3]).value_or(1) != 0;
        out.push_back(ev);
    }
    return out;
}

}  // namespace starident::ident
