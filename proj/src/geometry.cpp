#include "starident/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "starident/time_util.hpp"

namespace starident::geometry {

namespace {

constexpr double kDegToRad = M_PI / 180.0;
constexpr double kRadToDeg = 180.0 / M_PI;

// WGS84 ellipsoid.
constexpr double kWgs84A = 6378137.0;
constexpr double kWgs84F = 1.0 / 298.257223563;
constexpr double kWgs84E2 = kWgs84F * (2.0 - kWgs84F);

constexpr double kEarthRotationRadS = 7.292115146706979e-5;
constexpr double kTleValidityWindowS = 14.0 * 86400.0;

// Numeric slack on the disc boundary so exact-edge pixels survive round trips.
constexpr double kDiscEpsilon = 1e-9;

struct NedBasis {
    Vec3 north, east, down;
};

NedBasis ned_basis(double lat_deg, double lon_deg) {
    const double lat = lat_deg * kDegToRad;
    const double lon = lon_deg * kDegToRad;
    const double slat = std::sin(lat), clat = std::cos(lat);
    const double slon = std::sin(lon), clon = std::cos(lon);
    NedBasis b;
    b.north = {-slat * clon, -slat * slon, clat};
    b.east = {-slon, clon, 0.0};
    b.down = {-clat * clon, -clat * slon, -slat};
    return b;
}

}  // namespace

FovModel fov_for_model(const std::string& hardware_model, std::optional<double> override_deg) {
    FovModel fov;
    fov.hardware_model = hardware_model;
    if (override_deg) {
        if (*override_deg <= 0.0 || *override_deg >= 180.0) {
            throw ConfigError("FOV full angle must be in (0, 180) degrees");
        }
        fov.full_angle_deg = *override_deg;
        return fov;
    }
    if (hardware_model == "rev3_proto2") {
        fov.full_angle_deg = 110.0;
    } else if (hardware_model == "hp1_proto2") {
        fov.full_angle_deg = 140.0;
    } else {
        throw ConfigError("unknown hardware model '" + hardware_model +
                          "' and no FOV override given");
    }
    return fov;
}

Vec3 ned_from_topocentric(const Topocentric& t) {
    const double az = t.azimuth_deg * kDegToRad;
    const double el = t.elevation_deg * kDegToRad;
    const double cel = std::cos(el);
    return {cel * std::cos(az), cel * std::sin(az), -std::sin(el)};
}

Topocentric topocentric_from_ned(const Vec3& ned) {
    const Vec3 u = normalized(ned);
    Topocentric t;
    t.elevation_deg = std::asin(std::clamp(-u.z, -1.0, 1.0)) * kRadToDeg;
    t.azimuth_deg = orientation::wrap_degrees_360(std::atan2(u.y, u.x) * kRadToDeg);
    return t;
}

double angular_separation_deg(const Topocentric& a, const Topocentric& b) {
    const Vec3 va = ned_from_topocentric(a);
    const Vec3 vb = ned_from_topocentric(b);
    return std::atan2(norm(cross(va, vb)), dot(va, vb)) * kRadToDeg;
}

Vec3 ecef_from_geodetic(double lat_deg, double lon_deg, double alt_m) {
    const double lat = lat_deg * kDegToRad;
    const double lon = lon_deg * kDegToRad;
    const double slat = std::sin(lat), clat = std::cos(lat);
    const double n = kWgs84A / std::sqrt(1.0 - kWgs84E2 * slat * slat);
    return {(n + alt_m) * clat * std::cos(lon), (n + alt_m) * clat * std::sin(lon),
            (n * (1.0 - kWgs84E2) + alt_m) * slat};
}

EcefState propagate(const Sgp4& sgp4, const std::string& name, double unix_seconds) {
    const double dt = unix_seconds - sgp4.elements().epoch_unix;
    if (std::fabs(dt) > kTleValidityWindowS) {
        throw Error("TLE for " + name + " is outside its 14-day validity window");
    }
    TemeState teme;
    try {
        teme = sgp4.at_unix(unix_seconds);
    } catch (const Error& e) {
        throw Error("propagation failed for " + name + ": " + e.what());
    }

    // TEME -> pseudo-earth-fixed via the GMST rotation; polar motion ignored.
    const double gmst = timeutil::gmst_rad(timeutil::julian_date(unix_seconds));
    const double cg = std::cos(gmst), sg = std::sin(gmst);
    const Vec3& rt = teme.position_km;
    const Vec3& vt = teme.velocity_kms;
    const Vec3 r_ecef{cg * rt.x + sg * rt.y, -sg * rt.x + cg * rt.y, rt.z};
    Vec3 v_ecef{cg * vt.x + sg * vt.y, -sg * vt.x + cg * vt.y, vt.z};
    const Vec3 omega{0.0, 0.0, kEarthRotationRadS};
    v_ecef = v_ecef - cross(omega, r_ecef);

    EcefState s;
    s.position_m = r_ecef * 1000.0;
    s.velocity_mps = v_ecef * 1000.0;
    s.timestamp = unix_seconds;
    return s;
}

EcefState propagate(const TleRecord& tle, double unix_seconds) {
    const Sgp4 sgp4(tle);
    return propagate(sgp4, tle.name.empty() ? std::to_string(tle.norad_id) : tle.name,
                     unix_seconds);
}

Topocentric topocentric(const UtLocationRecord& observer, const EcefState& sat) {
    if (std::fabs(observer.latitude) > 90.0) throw Error("observer latitude out of range");
    const Vec3 obs = ecef_from_geodetic(observer.latitude, observer.longitude,
                                        observer.altitude_m);
    const Vec3 los = sat.position_m - obs;
    const NedBasis b = ned_basis(observer.latitude, observer.longitude);
    const Vec3 ned{dot(los, b.north), dot(los, b.east), dot(los, b.down)};
    return topocentric_from_ned(ned);
}

Topocentric boresight_direction(const orientation::Attitude& attitude) {
    return {orientation::wrap_degrees_360(attitude.effective_heading_deg),
            90.0 - attitude.tilt_deg};
}

bool in_fov(const Topocentric& dir, const orientation::Attitude& attitude, const FovModel& fov) {
    return angular_separation_deg(dir, boresight_direction(attitude)) <= fov.full_angle_deg / 2.0;
}

Topocentric pixel_to_direction(const Pixel& px, FrameType frame_type,
                               const orientation::Attitude& attitude, const MapGeometry& geom) {
    const double dc = px.col - geom.center.col;
    const double dr = px.row - geom.center.row;
    const double r = std::sqrt(dc * dc + dr * dr);
    if (r > geom.max_radius_px + kDiscEpsilon) {
        throw Error("pixel outside the FOV disc");
    }
    const double zenith = (r / geom.max_radius_px) * geom.zenith_max_deg;

    if (frame_type == FrameType::kEarth) {
        // Image bearing from top-center equals azimuth (North up, East right).
        const double az = r == 0.0 ? 0.0 : std::atan2(dc, -dr) * kRadToDeg;
        return {orientation::wrap_degrees_360(az), 90.0 - zenith};
    }

    // FRAME_UT: bearing measured from bottom-center; bottom is the body -Y
    // half-plane, image-right is body +X.
    const double bearing = r == 0.0 ? 0.0 : std::atan2(dc, dr);
    const double sz = std::sin(zenith * kDegToRad);
    const Vec3 body{sz * std::sin(bearing), -sz * std::cos(bearing), std::cos(zenith * kDegToRad)};
    const Vec3 ned = attitude.q.rotate(body);
    return topocentric_from_ned(ned);
}

Pixel direction_to_pixel(const Topocentric& dir, FrameType frame_type,
                         const orientation::Attitude& attitude, const MapGeometry& geom) {
    double zenith = 0.0;
    double dc = 0.0, dr = 0.0;
    if (frame_type == FrameType::kEarth) {
        zenith = 90.0 - dir.elevation_deg;
        if (zenith > geom.zenith_max_deg + kDiscEpsilon) {
            throw Error("direction outside the FRAME_EARTH disc");
        }
        const double r = (zenith / geom.zenith_max_deg) * geom.max_radius_px;
        const double az = dir.azimuth_deg * kDegToRad;
        dc = r * std::sin(az);
        dr = -r * std::cos(az);
    } else {
        const Vec3 ned = ned_from_topocentric(dir);
        const Vec3 body = attitude.q.conjugate().rotate(ned);
        zenith = std::atan2(std::hypot(body.x, body.y), body.z) * kRadToDeg;
        if (zenith > geom.zenith_max_deg + kDiscEpsilon) {
            throw Error("direction outside the FRAME_UT disc");
        }
        const double r = (zenith / geom.zenith_max_deg) * geom.max_radius_px;
        const double bearing = std::atan2(body.x, -body.y);
        dc = r * std::sin(bearing);
        dr = r * std::cos(bearing);
    }
    return {geom.center.col + static_cast<int>(std::round(dc)),
            geom.center.row + static_cast<int>(std::round(dr))};
}

const Sgp4& Sgp4Cache::get(const TleRecord& tle) {
    auto it = cache_.find(tle.norad_id);
    if (it == cache_.end()) {
        it = cache_.emplace(tle.norad_id, std::make_unique<Sgp4>(tle)).first;
    }
    return *it->second;
}

std::vector<VisibleSatellite> visible_catalog(double unix_seconds,
                                              const UtLocationRecord& observer,
                                              const orientation::Attitude& attitude,
                                              const FovModel& fov,
                                              const std::vector<TleRecord>& catalog,
                                              Sgp4Cache& cache, double elevation_mask_deg) {
    std::vector<VisibleSatellite> out;
    for (const auto& tle : catalog) {
        if (tle.is_dtc) continue;
        EcefState state;
        try {
            state = propagate(cache.get(tle), tle.name, unix_seconds);
        } catch (const Error&) {
            continue;  // decayed or out-of-window entries just drop out
        }
        const Topocentric dir = topocentric(observer, state);
        if (dir.elevation_deg < elevation_mask_deg) continue;
        if (!in_fov(dir, attitude, fov)) continue;
        out.push_back({&tle, dir});
    }
    std::sort(out.begin(), out.end(), [](const VisibleSatellite& a, const VisibleSatellite& b) {
        if (a.direction.elevation_deg != b.direction.elevation_deg) {
            return a.direction.elevation_deg > b.direction.elevation_deg;
        }
        return a.tle->norad_id < b.tle->norad_id;
    });
    return out;
}

}  // namespace starident::geometry
