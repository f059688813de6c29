#pragma once

#include <cmath>
#include <functional>

namespace ballmodes {

inline constexpr double kPi = 3.14159265358979323846;

/// Point in spherical coordinates: r >= 0, theta in [0,pi] from the +z axis,
/// phi in [0,2pi) counterclockwise from the +x axis.
struct SphericalPoint {
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Vector value in the local orthonormal spherical frame (e_r, e_theta, e_phi).
struct VectorValue {
    double u_r = 0.0;
    double u_theta = 0.0;
    double u_phi = 0.0;
};

inline VectorValue operator+(const VectorValue& a, const VectorValue& b) {
    return {a.u_r + b.u_r, a.u_theta + b.u_theta, a.u_phi + b.u_phi};
}

inline VectorValue operator-(const VectorValue& a, const VectorValue& b) {
    return {a.u_r - b.u_r, a.u_theta - b.u_theta, a.u_phi - b.u_phi};
}

inline VectorValue operator*(double s, const VectorValue& v) {
    return {s * v.u_r, s * v.u_theta, s * v.u_phi};
}

inline double dot(const VectorValue& a, const VectorValue& b) {
    return a.u_r * b.u_r + a.u_theta * b.u_theta + a.u_phi * b.u_phi;
}

inline double norm(const VectorValue& v) { return std::sqrt(dot(v, v)); }

/// Cartesian point or vector.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Vector field sampled in spherical coordinates.
using FieldEvaluator = std::function<VectorValue(const SphericalPoint&)>;

/// Vector field sampled in Cartesian coordinates (used by finite-difference
/// checks and streamline tracing).
using CartesianField = std::function<Vec3(const Vec3&)>;

inline SphericalPoint to_spherical(const Vec3& p) {
    const double rho = std::hypot(p.x, p.y);
    SphericalPoint s;
    s.r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
    s.theta = std::atan2(rho, p.z);
    s.phi = std::atan2(p.y, p.x);
    if (s.phi < 0.0) s.phi += 2.0 * kPi;
    return s;
}

inline Vec3 to_cartesian(const SphericalPoint& p) {
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    const double sp = std::sin(p.phi), cp = std::cos(p.phi);
    return {p.r * st * cp, p.r * st * sp, p.r * ct};
}

/// Express a spherical-frame vector at point p in Cartesian components.
inline Vec3 frame_to_cartesian(const SphericalPoint& p, const VectorValue& v) {
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    const double sp = std::sin(p.phi), cp = std::cos(p.phi);
    return {v.u_r * st * cp + v.u_theta * ct * cp - v.u_phi * sp,
            v.u_r * st * sp + v.u_theta * ct * sp + v.u_phi * cp,
            v.u_r * ct - v.u_theta * st};
}

/// Wrap a spherical-frame evaluator as a Cartesian vector field.
inline CartesianField make_cartesian_field(FieldEvaluator f) {
    return [f = std::move(f)](const Vec3& x) {
        const SphericalPoint p = to_spherical(x);
        return frame_to_cartesian(p, f(p));
    };
}

}  // namespace ballmodes
