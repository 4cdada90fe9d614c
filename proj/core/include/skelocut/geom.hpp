#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace skelocut {

// All models are expected to be scaled to bounding-box diameter ~ 1 so the
// absolute tolerances below are meaningful.
struct ToleranceConfig {
    double tol_plane = 1e-9;
    double tol_len = 1e-9;
    double tol_angle = 1e-8;  // radians
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonPlanarFace : GeometryError { using GeometryError::GeometryError; };
struct NonConvex : GeometryError { using GeometryError::GeometryError; };
struct BadTopology : GeometryError { using GeometryError::GeometryError; };
struct DegenerateInput : GeometryError { using GeometryError::GeometryError; };
struct TangentPlane : GeometryError { using GeometryError::GeometryError; };
struct NonConvexPolygon : GeometryError { using GeometryError::GeometryError; };
struct ParseError : GeometryError { using GeometryError::GeometryError; };
struct SearchBudgetExceeded : GeometryError { using GeometryError::GeometryError; };
struct InterferenceViolation : GeometryError { using GeometryError::GeometryError; };
struct RootNotBracketed : GeometryError { using GeometryError::GeometryError; };
struct SelectionFailure : GeometryError { using GeometryError::GeometryError; };
struct UnsupportedPattern : GeometryError { using GeometryError::GeometryError; };
struct RealizationFailure : GeometryError { using GeometryError::GeometryError; };
struct WitnessNotFound : GeometryError { using GeometryError::GeometryError; };

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};
using Point3 = Vec3;

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }
inline Vec3 normalized(const Vec3& a) {
    double n = norm(a);
    if (n == 0) throw GeometryError("cannot normalize zero vector");
    return a / n;
}

struct Vec2 {
    double x = 0, y = 0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 operator-() const { return {-x, -y}; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }
inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }
inline Vec2 normalized(const Vec2& a) {
    double n = norm(a);
    if (n == 0) throw GeometryError("cannot normalize zero vector");
    return a / n;
}
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }

// Orientation-preserving rigid motion of the plane: p -> R(angle) p + t.
struct Rigid2 {
    double c = 1, s = 0;  // cos/sin of the rotation
    Vec2 t;

    Vec2 operator()(const Vec2& p) const {
        return {c * p.x - s * p.y + t.x, s * p.x + c * p.y + t.y};
    }
    Vec2 apply_dir(const Vec2& d) const { return {c * d.x - s * d.y, s * d.x + c * d.y}; }
    Rigid2 operator*(const Rigid2& o) const {
        // (this * o)(p) = this(o(p))
        Rigid2 r;
        r.c = c * o.c - s * o.s;
        r.s = s * o.c + c * o.s;
        r.t = (*this)(o.t);
        return r;
    }
    Rigid2 inverse() const {
        Rigid2 r;
        r.c = c;
        r.s = -s;
        r.t = {-(c * t.x + s * t.y), -(-s * t.x + c * t.y)};
        return r;
    }
    // Unique orientation-preserving rigid motion with a0 -> b0, a1 -> b1
    // (requires |a1-a0| == |b1-b0|; renormalizes against drift).
    static Rigid2 align(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1);
};

struct Plane {
    Vec3 normal;     // unit
    double offset;   // plane is { p : dot(normal, p) = offset }

    double signed_dist(const Vec3& p) const { return dot(normal, p) - offset; }
    static Plane from_point_normal(const Vec3& p, const Vec3& n) {
        Vec3 u = normalized(n);
        return {u, dot(u, p)};
    }
    static Plane through(const Vec3& a, const Vec3& b, const Vec3& c) {
        return from_point_normal(a, cross(b - a, c - a));
    }
    // Perpendicular bisector plane of segment ab, normal pointing from a to b.
    static Plane mediator(const Vec3& a, const Vec3& b) {
        return from_point_normal((a + b) * 0.5, b - a);
    }
};

inline double clamp01(double t) { return t < 0 ? 0 : (t > 1 ? 1 : t); }

// Distance from p to segment [a,b].
double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b);
double point_segment_dist(const Vec3& p, const Vec3& a, const Vec3& b);

// Parameter of the orthogonal projection of p onto line a + t(b-a).
double line_param(const Vec3& a, const Vec3& b, const Vec3& p);
double line_param(const Vec2& a, const Vec2& b, const Vec2& p);

// Intersection of lines a+t(b-a) and c+s(d-c); throws GeometryError if parallel.
Vec2 line_line_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

// Signed angle of v relative to u in (-pi, pi].
double signed_angle(const Vec2& u, const Vec2& v);
// Unsigned angle between u and v in [0, pi].
double angle_between(const Vec3& u, const Vec3& v);
double angle_between(const Vec2& u, const Vec2& v);

}  // namespace skelocut
