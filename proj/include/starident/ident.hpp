/// Mobility-aware satellite identification: timeslot segmentation, trajectory
/// tracking across XOR diffs, per-segment candidate matching, beam-switch
/// event detection, and the map-reconstruction validation metrics.
#pragma once

#include <functional>
#include <optional>

#include "starident/geometry.hpp"
#include "starident/mapproc.hpp"
#include "starident/orientation.hpp"
#include "starident/types.hpp"

namespace starident::ident {

/// A 15-second handover slot; boundaries fall on seconds 12/27/42/57 of each
/// UTC minute.
struct Timeslot {
    double start{};
    double end{};
    bool operator==(const Timeslot&) const = default;
};

/// The unique slot containing t (slots are [start, end)).
Timeslot timeslot_of(double t);

inline constexpr int kUnidentified = -1;
inline constexpr double kDefaultMatchThresholdDeg = 4.0;
inline constexpr double kAttitudeGapLimitS = 2.0;
inline constexpr double kSlotBoundaryGuardS = 1.0;

// ---------------------------------------------------------------------------
// Interpolating views over the telemetry streams.
// ---------------------------------------------------------------------------

class AttitudeTrack {
public:
    explicit AttitudeTrack(std::vector<UtStatusRecord> records);

    /// Attitude at t. Returns nullopt when the bracketing telemetry gap
    /// exceeds `max_gap_s`; endpoints clamp to the nearest record within the
    /// same limit.
    std::optional<orientation::Attitude> at(double t, double max_gap_s = kAttitudeGapLimitS) const;

    /// Attitude at t with no gap limit (nearest/interpolated); throws when
    /// the stream is empty.
    orientation::Attitude at_clamped(double t) const;

    bool empty() const { return records_.empty(); }
    const std::vector<UtStatusRecord>& records() const { return records_; }

private:
    std::vector<UtStatusRecord> records_;
};

class LocationTrack {
public:
    explicit LocationTrack(std::vector<UtLocationRecord> records);

    /// Piecewise-linear interpolation, clamped at the ends; throws when empty.
    UtLocationRecord at(double t) const;

    bool empty() const { return records_.empty(); }

private:
    std::vector<UtLocationRecord> records_;
};

// ---------------------------------------------------------------------------
// Observations and results.
// ---------------------------------------------------------------------------

struct TrajectorySample {
    double timestamp{};
    geometry::Topocentric direction;
    Pixel pixel;  // earth-frame pixel the direction was read from
};

struct TrajectoryObservation {
    int track_id{};
    double birth_time{};
    std::vector<TrajectorySample> samples;  // strictly increasing timestamps
    mapproc::Mask pixels;                   // cumulative earth-frame trajectory

    double mid_time() const {
        return samples.empty()
                   ? birth_time
                   : 0.5 * (samples.front().timestamp + samples.back().timestamp);
    }
};

struct MatchOutcome {
    int norad_id{kUnidentified};
    std::string satellite_name;
    double score_deg{-1.0};  // mean separation of the winner; -1 when unscored
    bool no_candidates{};
};

struct Interval {
    double slot_start{};
    double t_from{};
    double t_to{};
    int norad_id{kUnidentified};
    std::string satellite_name;
    double score_deg{-1.0};
    int n_samples{};
    bool via_switch{};  // interval began with a within-slot beam switch
    int track_id{};
};

struct BeamSwitchEvent {
    double timestamp{};
    std::optional<int> from_norad;
    int to_norad{kUnidentified};
    bool within_slot{true};
};

struct IdentificationResult {
    Timeslot slot;
    std::vector<Interval> intervals;  // ordered by t_from, non-overlapping
};

struct IdentifyConfig {
    double tau_obs{mapproc::kDefaultObstructionThreshold};
    double tau_match_deg{kDefaultMatchThresholdDeg};
    double elevation_mask_deg{geometry::kDefaultElevationMaskDeg};
    geometry::FovModel fov;
    double attitude_gap_limit_s{kAttitudeGapLimitS};
    double slot_boundary_guard_s{kSlotBoundaryGuardS};
};

struct IdentifyOutput {
    std::vector<IdentificationResult> results;
    std::vector<BeamSwitchEvent> switches;
    std::vector<TrajectoryObservation> observations;  // indexed by track id
    size_t frames_processed{};
    size_t frames_skipped_attitude{};
    size_t resets{};
};

/// Scores one trajectory observation against the satellites visible at its
/// mid-time: mean great-circle separation between each observed direction
/// and the candidate's propagated direction at the same timestamp. Returns
/// the minimizer when its score is within tau_match, ties broken by higher
/// mean elevation then lower NORAD id.
MatchOutcome match_segment(const TrajectoryObservation& obs, const LocationTrack& location,
                           const AttitudeTrack& attitude, const std::vector<TleRecord>& catalog,
                           geometry::Sgp4Cache& cache, const IdentifyConfig& config);

using FrameSource = std::function<std::optional<ObstructionFrame>()>;

/// Runs the full pipeline over a frame stream: classify -> (FRAME_UT only)
/// orientation-compensated conversion -> XOR diff -> segment labeling ->
/// tracking -> per-track matching. NEW segments born at least 1 s away from
/// both slot boundaries emit BeamSwitchEvents; boundary births are regular
/// handovers.
IdentifyOutput identify(const FrameSource& frames, const AttitudeTrack& attitude,
                        const LocationTrack& location, const std::vector<TleRecord>& catalog,
                        const IdentifyConfig& config);

IdentifyOutput identify(const std::vector<ObstructionFrame>& frames,
                        const std::vector<UtStatusRecord>& status,
                        const std::vector<UtLocationRecord>& location,
                        const std::vector<TleRecord>& catalog, const IdentifyConfig& config);

// ---------------------------------------------------------------------------
// Validation: map reconstruction and separation statistics.
// ---------------------------------------------------------------------------

struct Reconstruction {
    mapproc::Mask mask;
    std::vector<std::pair<double, Pixel>> samples;  // (timestamp, pixel)
    size_t dropped{};                               // samples outside the disc
};

/// Projects the satellite's predicted directions over [t_from, t_to] at the
/// frame cadence onto the earth-frame map.
Reconstruction reconstruct_map(const TleRecord& tle, double t_from, double t_to,
                               const LocationTrack& location,
                               const geometry::MapGeometry& geom, geometry::Sgp4Cache& cache,
                               double cadence_s = 0.5);

struct IntervalValidation {
    double mean_pixel_distance{};
    double max_pixel_distance{};
    double mean_separation_deg{};
    size_t n_samples{};
    bool flagged{};  // mean pixel distance above the mismatch threshold
};

inline constexpr double kReconstructionFlagPx = 2.0;

/// Per-sample comparison between an observed trajectory and the identified
/// satellite's predicted pixels/directions.
IntervalValidation validate_interval(const TrajectoryObservation& obs, const TleRecord& tle,
                                     const LocationTrack& location,
                                     const geometry::MapGeometry& geom,
                                     geometry::Sgp4Cache& cache);

struct SeparationStats {
    double mean_deg{};
    double stddev_deg{};
    size_t n_samples{};
};

/// Mean and standard deviation of per-sample angular separation between
/// observed directions and the identified satellites' predicted directions,
/// over all identified intervals.
SeparationStats separation_stats(const std::vector<IdentificationResult>& results,
                                 const std::vector<TrajectoryObservation>& observations,
                                 const LocationTrack& location,
                                 const std::vector<TleRecord>& catalog,
                                 geometry::Sgp4Cache& cache);

// ---------------------------------------------------------------------------
// Record streams (External Interfaces).
// ---------------------------------------------------------------------------

void write_identification(const std::string& path,
                          const std::vector<IdentificationResult>& results);
std::vector<Interval> parse_identification(const std::string& path);

void write_switch_events(const std::string& path, const std::vector<BeamSwitchEvent>& events);
std::vector<BeamSwitchEvent> parse_switch_events(const std::string& path);

}  // namespace starident::ident
