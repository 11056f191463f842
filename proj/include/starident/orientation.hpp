/// Attitude math: quaternions, Tait-Bryan angles, Y-axis heading and the
/// compensated heading used when the panel is near level.
///
/// Conventions (fixed for the whole toolkit):
///  - The attitude quaternion q rotates body-frame vectors into the local
///    NED frame: v_ned = R(q) * v_body. Euler angles are Z-Y-X intrinsic
///    (yaw, pitch, roll) of that same rotation.
///  - Body axes: +Z is the panel normal (boresight), +Y points from panel
///    center to panel top, +X completes the right-handed set.
#pragma once

#include "starident/types.hpp"

namespace starident::orientation {

struct Quaternion {
    double w{1.0}, x{}, y{}, z{};

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

    /// Throws on the zero quaternion.
    Quaternion normalized() const;
    Quaternion conjugate() const { return {w, -x, -y, -z}; }

    /// Rotate a body-frame vector into NED.
    Vec3 rotate(const Vec3& v) const;

    static Quaternion from_axis_angle(const Vec3& axis, double angle_rad);
    /// Build from an orthonormal rotation matrix given by its columns
    /// (the body axes expressed in NED).
    static Quaternion from_axes(const Vec3& x_axis, const Vec3& y_axis, const Vec3& z_axis);
};

Quaternion operator*(const Quaternion& a, const Quaternion& b);

/// Spherical interpolation; takes the short arc.
Quaternion slerp(const Quaternion& a, const Quaternion& b, double t);

struct TaitBryan {
    double yaw_deg{};
    double pitch_deg{};
    double roll_deg{};
    bool gimbal_adjacent{};  // |pitch| > 89.9 deg; angles still returned
};

/// Z-Y-X intrinsic Euler angles of the body->NED rotation, degrees.
TaitBryan to_tait_bryan(const Quaternion& q);

/// Inverse construction of to_tait_bryan.
Quaternion quaternion_from_tait_bryan(double yaw_deg, double pitch_deg, double roll_deg);

/// Bearing of the ground-plane projection of the rotated body +Y axis,
/// clockwise from True North in [0, 360). Throws if +Y is within 0.1 deg
/// of the vertical.
double y_heading_deg(const Quaternion& q);

/// delta' = (delta + 180) mod 360 when the rotated +Y axis tilts upward,
/// otherwise delta unchanged. Always in [0, 360).
double compensated_heading_deg(const Quaternion& q);

/// The physical dish pose: boresight at `heading_deg` bearing, panel tilted
/// `tilt_deg` from the vertical, panel top leaning backward. For this family
/// compensated_heading_deg(q) == heading_deg for any tilt in (0, 90).
Quaternion quaternion_from_heading_tilt(double heading_deg, double tilt_deg);

enum class HeadingSource { kCompensated, kBoresight };

struct EffectiveHeading {
    double degrees{};
    HeadingSource source{HeadingSource::kCompensated};
    bool low_confidence{};  // boresight fallback with tilt below 15 deg
};

/// Chooses the compensated heading when a valid quaternion is present, the
/// raw boresight azimuth otherwise. Throws when neither source exists.
EffectiveHeading effective_heading(const UtStatusRecord& status);

/// Full attitude snapshot consumed by the geometry and map pipelines.
struct Attitude {
    Quaternion q;
    bool has_quaternion{};
    double yaw_deg{}, pitch_deg{}, roll_deg{};
    double tilt_deg{};
    double boresight_azimuth_deg{};
    double y_heading_deg{};
    double compensated_heading_deg{};
    double effective_heading_deg{};
    bool low_confidence{};
};

/// Derives the attitude from one status record.
Attitude attitude_from_status(const UtStatusRecord& status);

inline double wrap_degrees_360(double deg) {
    double d = std::fmod(deg, 360.0);
    if (d < 0) d += 360.0;
    return d;
}

}  // namespace starident::orientation
