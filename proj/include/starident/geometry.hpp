/// Orbital propagation to ECEF, topocentric look angles, FOV membership and
/// the pixel<->direction projection for both obstruction-map reference frames.
#pragma once

#include <map>
#include <memory>
#include <vector>

#include "starident/orientation.hpp"
#include "starident/sgp4.hpp"
#include "starident/types.hpp"

namespace starident::geometry {

struct EcefState {
    Vec3 position_m;
    Vec3 velocity_mps;
    double timestamp{};
};

struct Topocentric {
    double azimuth_deg{};    // [0, 360) clockwise from True North
    double elevation_deg{};  // [-90, 90]
};

struct FovModel {
    std::string hardware_model;
    double full_angle_deg{110.0};
};

/// FOV table keyed by hardware model. Throws ConfigError for unknown models
/// unless `override_deg` is given.
FovModel fov_for_model(const std::string& hardware_model,
                       std::optional<double> override_deg = std::nullopt);

struct MapGeometry {
    int grid_size{kGridSize};
    Pixel center{kGridCenter, kGridCenter};
    int max_radius_px{kGridMaxRadiusPx};
    double zenith_max_deg{55.0};  // full_angle_deg / 2

    static MapGeometry for_fov(const FovModel& fov) {
        MapGeometry g;
        g.zenith_max_deg = fov.full_angle_deg / 2.0;
        return g;
    }

    /// Angular size of one pixel step along the radius, degrees.
    double degrees_per_pixel() const { return zenith_max_deg / max_radius_px; }
};

/// Great-circle angle between two look directions, degrees.
double angular_separation_deg(const Topocentric& a, const Topocentric& b);

/// Unit vector of a look direction in the local NED frame.
Vec3 ned_from_topocentric(const Topocentric& t);
Topocentric topocentric_from_ned(const Vec3& ned);

/// WGS84 geodetic -> ECEF, meters.
Vec3 ecef_from_geodetic(double lat_deg, double lon_deg, double alt_m);

/// SGP4 propagation to ECEF at a Unix time. Enforces the 14-day element
/// validity window; failures name the satellite.
EcefState propagate(const TleRecord& tle, double unix_seconds);

/// Same, reusing an initialized propagator (hot path for catalogs).
EcefState propagate(const Sgp4& sgp4, const std::string& name, double unix_seconds);

/// Look angles of a satellite from an observer.
Topocentric topocentric(const UtLocationRecord& observer, const EcefState& sat);

/// True iff the direction lies inside the dish's FOV cone: the angle to the
/// boresight (built from tilt and the effective heading) is at most half the
/// full FOV angle.
bool in_fov(const Topocentric& dir, const orientation::Attitude& attitude, const FovModel& fov);

/// Boresight look direction of an attitude.
Topocentric boresight_direction(const orientation::Attitude& attitude);

/// Pixel -> look direction for a map frame. FRAME_EARTH is an azimuthal
/// equidistant sky projection about the zenith with North at the top of the
/// image; FRAME_UT is the same projection about the body boresight axis with
/// the image bearing measured from bottom-center, rotated into NED by the
/// attitude. Throws for pixels outside the FOV disc.
Topocentric pixel_to_direction(const Pixel& px, FrameType frame_type,
                               const orientation::Attitude& attitude, const MapGeometry& geom);

/// Inverse of pixel_to_direction with round-half-away-from-zero rounding.
/// Throws for directions outside the frame's disc.
Pixel direction_to_pixel(const Topocentric& dir, FrameType frame_type,
                         const orientation::Attitude& attitude, const MapGeometry& geom);

inline bool pixel_in_disc(const Pixel& px, const MapGeometry& geom) {
    const double dc = px.col - geom.center.col;
    const double dr = px.row - geom.center.row;
    return dc * dc + dr * dr <= static_cast<double>(geom.max_radius_px) * geom.max_radius_px;
}

/// Caches initialized propagators per NORAD id.
class Sgp4Cache {
public:
    const Sgp4& get(const TleRecord& tle);

private:
    std::map<int, std::unique_ptr<Sgp4>> cache_;
};

struct VisibleSatellite {
    const TleRecord* tle{};
    Topocentric direction;
};

inline constexpr double kDefaultElevationMaskDeg = 20.0;

/// All non-DTC satellites inside the FOV at `unix_seconds`, each with its
/// look direction, sorted by descending elevation (NORAD id breaks ties).
/// Candidates below the elevation mask are excluded.
std::vector<VisibleSatellite> visible_catalog(
    double unix_seconds, const UtLocationRecord& observer, const orientation::Attitude& attitude,
    const FovModel& fov, const std::vector<TleRecord>& catalog, Sgp4Cache& cache,
    double elevation_mask_deg = kDefaultElevationMaskDeg);

}  // namespace starident::geometry
