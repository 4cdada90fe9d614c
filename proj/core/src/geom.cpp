#include "skelocut/geom.hpp"

namespace skelocut {

Rigid2 Rigid2::align(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
    Vec2 da = a1 - a0, db = b1 - b0;
    double na = norm(da), nb = norm(db);
    if (na == 0 || nb == 0) throw GeometryError("Rigid2::align: degenerate segment");
    da = da / na;
    db = db / nb;
    Rigid2 r;
    r.c = da.x * db.x + da.y * db.y;
    r.s = da.x * db.y - da.y * db.x;
    double n = std::sqrt(r.c * r.c + r.s * r.s);
    r.c /= n;
    r.s /= n;
    r.t = b0 - r.apply_dir(a0);
    return r;
}

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 d = b - a;
    double l2 = dot(d, d);
    double t = l2 == 0 ? 0 : clamp01(dot(p - a, d) / l2);
    return dist(p, a + d * t);
}

double point_segment_dist(const Vec3& p, const Vec3& a, const Vec3& b) {
    Vec3 d = b - a;
    double l2 = dot(d, d);
    double t = l2 == 0 ? 0 : clamp01(dot(p - a, d) / l2);
    return dist(p, a + d * t);
}

double line_param(const Vec3& a, const Vec3& b, const Vec3& p) {
    Vec3 d = b - a;
    double l2 = dot(d, d);
    if (l2 == 0) throw GeometryError("line_param: degenerate line");
    return dot(p - a, d) / l2;
}

double line_param(const Vec2& a, const Vec2& b, const Vec2& p) {
    Vec2 d = b - a;
    double l2 = dot(d, d);
    if (l2 == 0) throw GeometryError("line_param: degenerate line");
    return dot(p - a, d) / l2;
}

Vec2 line_line_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    Vec2 r = b - a, s = d - c;
    double den = cross(r, s);
    if (std::abs(den) < 1e-300) throw GeometryError("line_line_intersect: parallel lines");
    double t = cross(c - a, s) / den;
    return a + r * t;
}

double signed_angle(const Vec2& u, const Vec2& v) {
    return std::atan2(cross(u, v), dot(u, v));
}

double angle_between(const Vec3& u, const Vec3& v) {
    double c = dot(u, v) / (norm(u) * norm(v));
    if (c > 1) c = 1;
    if (c < -1) c = -1;
    return std::acos(c);
}

double angle_between(const Vec2& u, const Vec2& v) {
    double c = dot(u, v) / (norm(u) * norm(v));
    if (c > 1) c = 1;
    if (c < -1) c = -1;
    return std::acos(c);
}

}  // namespace skelocut
