/// Near-earth SGP4 propagator (WGS72 constants, the standard model for TLE
/// ephemeris). Deep-space orbits (period >= 225 min) are rejected: this
/// toolkit only deals with LEO constellations.
#pragma once

#include "starident/types.hpp"

namespace starident::geometry {

/// Position/velocity in the TEME inertial frame, km and km/s.
struct TemeState {
    Vec3 position_km;
    Vec3 velocity_kms;
};

/// Orbital elements decoded from a two-line element set, in TLE units.
struct TleElements {
    int norad_id{};
    int epoch_year{};        // two-digit year as printed
    double epoch_day{};      // fractional day of year, 1-based
    double epoch_unix{};
    double ndot{};           // rev/day^2 (written /2 in the TLE, decoded here)
    double nddot{};          // rev/day^3 (written /6 in the TLE)
    double bstar{};          // 1/earth-radii
    double inclination_deg{};
    double raan_deg{};
    double eccentricity{};
    double arg_perigee_deg{};
    double mean_anomaly_deg{};
    double mean_motion_revday{};
};

/// Decodes the element fields of a TLE line pair. Performs no checksum
/// validation (ingest owns that); throws ParseError on malformed fields.
TleElements decode_tle_elements(const std::string& line1, const std::string& line2);

/// Decodes a NORAD catalog number field, including the alpha-5 scheme.
int decode_norad_field(std::string_view field);

class Sgp4 {
public:
    explicit Sgp4(const TleRecord& tle);
    Sgp4(const std::string& line1, const std::string& line2);

    /// Propagate to `tsince` minutes past the element epoch.
    /// Throws Error on internal propagation failure (decay, bad elements).
    TemeState at_minutes(double tsince) const;

    /// Propagate to an absolute Unix time.
    TemeState at_unix(double unix_seconds) const {
        return at_minutes((unix_seconds - elements_.epoch_unix) / 60.0);
    }

    const TleElements& elements() const { return elements_; }

    /// Semi-major axis recovered from the mean motion, km.
    double semi_major_axis_km() const;
    double period_minutes() const;

private:
    void initialize();

    TleElements elements_;

    // Mean elements in internal units (radians, rad/min).
    double ecco_{}, inclo_{}, nodeo_{}, argpo_{}, mo_{}, no_kozai_{}, bstar_{};
    double no_unkozai_{}, a_{};

    // Init-time propagation constants (canonical SGP4 names).
    bool simple_{};
    double con41_{}, cc1_{}, cc4_{}, cc5_{}, d2_{}, d3_{}, d4_{};
    double delmo_{}, eta_{}, argpdot_{}, omgcof_{}, sinmao_{};
    double t2cof_{}, t3cof_{}, t4cof_{}, t5cof_{};
    double x1mth2_{}, x7thm1_{}, mdot_{}, nodedot_{}, xlcof_{}, xmcof_{}, nodecf_{}, aycof_{};
};

}  // namespace starident::geometry
