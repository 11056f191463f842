/// Core domain types shared by every module.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace starident {

inline constexpr int kGridSize = 123;
inline constexpr int kGridCenter = 61;          // 0-indexed center pixel of the 123x123 map
inline constexpr int kGridMaxRadiusPx = 61;
inline constexpr int kCellCount = kGridSize * kGridSize;

/// Raw obstruction-map cells use a strictly negative sentinel for "never explored";
/// valid cells carry a signal-quality fraction in [0,1].
inline constexpr float kUnknownCell = -1.0f;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Small vector math used across orientation/geometry.
// ---------------------------------------------------------------------------

struct Vec3 {
    double x{};
    double y{};
    double z{};
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator*(const Vec3& v, double s) { return s * v; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (n == 0.0) throw Error("cannot normalize zero vector");
    return {v.x / n, v.y / n, v.z / n};
}

/// Pixel coordinate on the obstruction map. `col` is the x axis (left to
/// right), `row` the y axis (top of the image is row 0).
struct Pixel {
    int col{};
    int row{};
    bool operator==(const Pixel&) const = default;
};

inline double pixel_distance(const Pixel& a, const Pixel& b) {
    const double dc = a.col - b.col;
    const double dr = a.row - b.row;
    return std::sqrt(dc * dc + dr * dr);
}

// ---------------------------------------------------------------------------
// Enumerations with their canonical wire names.
// ---------------------------------------------------------------------------

enum class FrameType { kEarth, kUt };

std::string_view to_string(FrameType t);
std::optional<FrameType> frame_type_from_string(std::string_view s);

enum class LocationSource { kDishGnss, kExternalGps };

std::string_view to_string(LocationSource s);
std::optional<LocationSource> location_source_from_string(std::string_view s);

enum class TrafficDirection { kDown, kUp };

std::string_view to_string(TrafficDirection d);
std::optional<TrafficDirection> traffic_direction_from_string(std::string_view s);

/// The 17 UT event reasons exposed by the dish firmware.
enum class OutageCause {
    kOutageUnknown,
    kOutageBooting,
    kOutageStowed,
    kOutageThermalShutdown,
    kOutageNoSchedule,
    kOutageNoSats,
    kOutageObstructed,
    kOutageNoDownlink,
    kOutageNoPings,
    kOutageSleeping,
    kOutageMovingWhileNotAllowed,
    kOutageSkySearch,
    kHighDownlinkPacketLoss,
    kUtAlertRainSnrPersistentlyLow,
    kUtAlertEthNoLink,
    kUtAlertEthSlowLink,
    kUtAlertEthSlowLink100,
};

inline constexpr int kOutageCauseCount = 17;

/// Full firmware name, e.g. "EVENT_REASON_OUTAGE_OBSTRUCTED".
std::string_view to_string(OutageCause c);
/// Short name used in report tables, e.g. "OBSTRUCTED".
std::string_view short_name(OutageCause c);
/// Accepts both the full firmware name and the short form.
std::optional<OutageCause> outage_cause_from_string(std::string_view s);

// ---------------------------------------------------------------------------
// Parsed telemetry records.
// ---------------------------------------------------------------------------

struct UtStatusRecord {
    double timestamp{};               // seconds since Unix epoch
    std::string hardware_model;       // e.g. "rev3_proto2", "hp1_proto2"
    double pop_ping_latency_ms{};
    double downlink_bps{};
    double uplink_bps{};
    double tilt_deg{};
    double boresight_azimuth_deg{};   // (-180, 180]
    double boresight_elevation_deg{};
    double attitude_uncertainty_deg{};
    bool has_quaternion{};            // q columns absent (empty) when false
    double q_w{}, q_x{}, q_y{}, q_z{};
    bool degraded{};                  // quaternion norm outside 1 +/- 1e-3

    bool operator==(const UtStatusRecord&) const = default;
};

struct UtLocationRecord {
    double timestamp{};               // seconds since Unix epoch (converted at parse)
    double latitude{};                // degrees, WGS84
    double longitude{};
    double altitude_m{};
    double horizontal_speed_mps{};
    double vertical_speed_mps{};
    LocationSource source{LocationSource::kDishGnss};

    bool operator==(const UtLocationRecord&) const = default;
};

struct ObstructionFrame {
    double timestamp{};
    FrameType frame_type{FrameType::kUt};
    std::vector<float> cells;         // row-major, kCellCount entries

    float at(int row, int col) const { return cells[static_cast<size_t>(row) * kGridSize + col]; }
    static bool is_unknown(float v) { return v < 0.0f; }

    bool operator==(const ObstructionFrame&) const = default;
};

struct OutageEvent {
    std::int64_t start_ns{};
    std::int64_t duration_ns{};
    OutageCause cause{OutageCause::kOutageUnknown};
    bool did_switch{};

    double start_s() const { return static_cast<double>(start_ns) * 1e-9; }
    double duration_s() const { return static_cast<double>(duration_ns) * 1e-9; }
    double end_s() const { return static_cast<double>(start_ns + duration_ns) * 1e-9; }

    bool operator==(const OutageEvent&) const = default;
};

struct TleRecord {
    std::string name;
    int norad_id{};
    std::string line1;                // 69 characters, checksum-valid
    std::string line2;
    double epoch_unix{};
    bool is_dtc{};

    bool operator==(const TleRecord&) const = default;
};

struct PingSample {
    double response_timestamp{};
    std::int64_t sequence{};
    double rtt_ms{};
    bool lost{};

    bool operator==(const PingSample&) const = default;
};

struct ThroughputSample {
    double timestamp{};
    TrafficDirection direction{TrafficDirection::kDown};
    double bps{};

    bool operator==(const ThroughputSample&) const = default;
};

}  // namespace starident
