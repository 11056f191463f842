#include "starident/orientation.hpp"

#include <algorithm>
#include <cmath>

namespace starident::orientation {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
constexpr double kRadToDeg = 180.0 / M_PI;
constexpr double kQuaternionNormTolerance = 1e-3;
}  // namespace

Quaternion Quaternion::normalized() const {
    const double n = norm();
    if (n < 1e-12) throw Error("zero quaternion cannot represent an orientation");
    return {w / n, x / n, y / n, z / n};
}

Vec3 Quaternion::rotate(const Vec3& v) const {
    // v' = v + 2*u x (u x v + w*v), u = (x,y,z)
    const Vec3 u{x, y, z};
    const Vec3 t = cross(u, v) * 2.0;
    return v + w * t + cross(u, t);
}

Quaternion Quaternion::from_axis_angle(const Vec3& axis, double angle_rad) {
    const Vec3 a = normalized(axis);
    const double h = 0.5 * angle_rad;
    const double s = std::sin(h);
    return {std::cos(h), a.x * s, a.y * s, a.z * s};
}

Quaternion Quaternion::from_axes(const Vec3& ex, const Vec3& ey, const Vec3& ez) {
    // Shepperd's method on the column matrix [ex ey ez].
    const double m00 = ex.x, m01 = ey.x, m02 = ez.x;
    const double m10 = ex.y, m11 = ey.y, m12 = ez.y;
    const double m20 = ex.z, m21 = ey.z, m22 = ez.z;
    const double tr = m00 + m11 + m22;
    Quaternion q;
    if (tr > 0.0) {
        const double s = std::sqrt(tr + 1.0) * 2.0;
        q.w = 0.25 * s;
        q.x = (m21 - m12) / s;
        q.y = (m02 - m20) / s;
        q.z = (m10 - m01) / s;
    } else if (m00 > m11 && m00 > m22) {
        const double s = std::sqrt(1.0 + m00 - m11 - m22) * 2.0;
        q.w = (m21 - m12) / s;
        q.x = 0.25 * s;
        q.y = (m01 + m10) / s;
        q.z = (m02 + m20) / s;
    } else if (m11 > m22) {
        const double s = std::sqrt(1.0 + m11 - m00 - m22) * 2.0;
        q.w = (m02 - m20) / s;
        q.x = (m01 + m10) / s;
        q.y = 0.25 * s;
        q.z = (m12 + m21) / s;
    } else {
        const double s = std::sqrt(1.0 + m22 - m00 - m11) * 2.0;
        q.w = (m10 - m01) / s;
        q.x = (m02 + m20) / s;
        q.y = (m12 + m21) / s;
        q.z = 0.25 * s;
    }
    return q.normalized();
}

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion slerp(const Quaternion& a, const Quaternion& b, double t) {
    Quaternion qa = a.normalized();
    Quaternion qb = b.normalized();
    double d = qa.w * qb.w + qa.x * qb.x + qa.y * qb.y + qa.z * qb.z;
    if (d < 0.0) {
        qb = {-qb.w, -qb.x, -qb.y, -qb.z};
        d = -d;
    }
    d = std::min(d, 1.0);
    if (d > 1.0 - 1e-10) {
        Quaternion q{qa.w + t * (qb.w - qa.w), qa.x + t * (qb.x - qa.x),
                     qa.y + t * (qb.y - qa.y), qa.z + t * (qb.z - qa.z)};
        return q.normalized();
    }
    const double theta = std::acos(d);
    const double sa = std::sin((1.0 - t) * theta) / std::sin(theta);
    const double sb = std::sin(t * theta) / std::sin(theta);
    return Quaternion{sa * qa.w + sb * qb.w, sa * qa.x + sb * qb.x, sa * qa.y + sb * qb.y,
                      sa * qa.z + sb * qb.z}
        .normalized();
}

TaitBryan to_tait_bryan(const Quaternion& q_in) {
    const Quaternion q = q_in.normalized();
    // Rotation matrix entries of R(q) (body -> NED).
    const double r00 = 1.0 - 2.0 * (q.y * q.y + q.z * q.z);
    const double r10 = 2.0 * (q.x * q.y + q.w * q.z);
    const double r20 = 2.0 * (q.x * q.z - q.w * q.y);
    const double r21 = 2.0 * (q.y * q.z + q.w * q.x);
    const double r22 = 1.0 - 2.0 * (q.x * q.x + q.y * q.y);

    TaitBryan tb;
    const double sp = std::clamp(-r20, -1.0, 1.0);
    tb.pitch_deg = std::asin(sp) * kRadToDeg;
    tb.yaw_deg = std::atan2(r10, r00) * kRadToDeg;
    tb.roll_deg = std::atan2(r21, r22) * kRadToDeg;
    tb.gimbal_adjacent = std::fabs(tb.pitch_deg) > 89.9;
    return tb;
}

Quaternion quaternion_from_tait_bryan(double yaw_deg, double pitch_deg, double roll_deg) {
    const Quaternion qz = Quaternion::from_axis_angle({0, 0, 1}, yaw_deg * kDegToRad);
    const Quaternion qy = Quaternion::from_axis_angle({0, 1, 0}, pitch_deg * kDegToRad);
    const Quaternion qx = Quaternion::from_axis_angle({1, 0, 0}, roll_deg * kDegToRad);
    return (qz * qy * qx).normalized();
}

double y_heading_deg(const Quaternion& q) {
    const Vec3 y_ned = q.normalized().rotate({0, 1, 0});
    const double horizontal = std::hypot(y_ned.x, y_ned.y);
    // Within 0.1 deg of the vertical the projection direction is meaningless.
    if (horizontal < std::sin(0.1 * kDegToRad)) {
        throw Error("y-heading undefined: body +Y axis within 0.1 deg of vertical");
    }
    return wrap_degrees_360(std::atan2(y_ned.y, y_ned.x) * kRadToDeg);
}

double compensated_heading_deg(const Quaternion& q) {
    const Quaternion qn = q.normalized();
    const double delta = y_heading_deg(qn);
    const Vec3 y_ned = qn.rotate({0, 1, 0});
    // NED z points down; a negative component means the panel top tilts upward.
    if (y_ned.z < 0.0) return wrap_degrees_360(delta + 180.0);
    return delta;
}

Quaternion quaternion_from_heading_tilt(double heading_deg, double tilt_deg) {
    const double h = heading_deg * kDegToRad;
    const double t = tilt_deg * kDegToRad;
    const double ch = std::cos(h), sh = std::sin(h);
    const double ct = std::cos(t), st = std::sin(t);
    // NED components of the body axes: boresight tips toward the heading,
    // panel top leans the opposite way.
    const Vec3 z_axis{st * ch, st * sh, -ct};
    const Vec3 y_axis{-ct * ch, -ct * sh, -st};
    const Vec3 x_axis = cross(y_axis, z_axis);
    return Quaternion::from_axes(x_axis, y_axis, z_axis);
}

EffectiveHeading effective_heading(const UtStatusRecord& status) {
    const bool quaternion_usable = status.has_quaternion && !status.degraded;
    if (quaternion_usable) {
        const Quaternion q{status.q_w, status.q_x, status.q_y, status.q_z};
        return {compensated_heading_deg(q), HeadingSource::kCompensated, false};
    }
    if (!status.has_quaternion && status.boresight_azimuth_deg == 0.0 && status.tilt_deg == 0.0 &&
        status.hardware_model.empty()) {
        throw Error("status record carries neither quaternion nor boresight pose");
    }
    EffectiveHeading eh;
    eh.degrees = wrap_degrees_360(status.boresight_azimuth_deg);
    eh.source = HeadingSource::kBoresight;
    eh.low_confidence = status.tilt_deg < 15.0;
    return eh;
}

Attitude attitude_from_status(const UtStatusRecord& status) {
    Attitude a;
    a.tilt_deg = status.tilt_deg;
    a.boresight_azimuth_deg = status.boresight_azimuth_deg;
    a.has_quaternion = status.has_quaternion && !status.degraded;
    if (a.has_quaternion) {
        a.q = Quaternion{status.q_w, status.q_x, status.q_y, status.q_z}.normalized();
        const TaitBryan tb = to_tait_bryan(a.q);
        a.yaw_deg = tb.yaw_deg;
        a.pitch_deg = tb.pitch_deg;
        a.roll_deg = tb.roll_deg;
        a.y_heading_deg = orientation::y_heading_deg(a.q);
        a.compensated_heading_deg = orientation::compensated_heading_deg(a.q);
    }
    const EffectiveHeading eh = effective_heading(status);
    a.effective_heading_deg = eh.degrees;
    a.low_confidence = eh.low_confidence;
    if (!a.has_quaternion) {
        // Geometry still needs a rotation for FRAME_UT maps; reconstruct the
        // physical pose from the reported tilt and azimuth.
        a.q = quaternion_from_heading_tilt(eh.degrees, status.tilt_deg);
        const TaitBryan tb = to_tait_bryan(a.q);
        a.yaw_deg = tb.yaw_deg;
        a.pitch_deg = tb.pitch_deg;
        a.roll_deg = tb.roll_deg;
        a.y_heading_deg = orientation::y_heading_deg(a.q);
        a.compensated_heading_deg = orientation::compensated_heading_deg(a.q);
    }
    return a;
}

}  // namespace starident::orientation
