#include "doctest.h"
#include "skelocut/geom.hpp"

using namespace skelocut;

TEST_CASE("Rigid2 align maps segment endpoints exactly") {
    Vec2 a0{1, 2}, a1{4, 6};
    Vec2 b0{-3, 0.5}, b1{-3 + 5 * std::cos(1.1), 0.5 + 5 * std::sin(1.1)};
    Rigid2 r = Rigid2::align(a0, a1, b0, b1);
    CHECK(dist(r(a0), b0) < 1e-12);
    CHECK(dist(r(a1), b1) < 1e-12);
    // orientation preserving: left side stays left
    Vec2 p{1, 3};
    double s_before = cross(a1 - a0, p - a0);
    double s_after = cross(b1 - b0, r(p) - b0);
    CHECK(s_before * s_after > 0);
}

TEST_CASE("Rigid2 composition and inverse") {
    Rigid2 r1 = Rigid2::align({0, 0}, {1, 0}, {2, 1}, {2, 2});
    Rigid2 r2 = Rigid2::align({5, 5}, {6, 7}, {0, 0}, {std::sqrt(5.0), 0});
    Vec2 p{0.3, -0.7};
    CHECK(dist((r1 * r2)(p), r1(r2(p))) < 1e-12);
    CHECK(dist(r1.inverse()(r1(p)), p) < 1e-12);
}

TEST_CASE("mediator plane is equidistant") {
    Vec3 a{1, 2, 3}, b{-2, 0, 5};
    Plane m = Plane::mediator(a, b);
    Vec3 p = (a + b) * 0.5 + cross(b - a, Vec3{0, 0, 1});
    CHECK(std::abs(dist(p, a) - dist(p, b)) < 1e-12);
    CHECK(std::abs(m.signed_dist(p)) < 1e-12);
}

TEST_CASE("line intersection and angles") {
    Vec2 q = line_line_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0});
    CHECK(dist(q, {1, 1}) < 1e-14);
    CHECK(signed_angle({1, 0}, {0, 1}) == doctest::Approx(M_PI / 2));
    CHECK(signed_angle({1, 0}, {0, -1}) == doctest::Approx(-M_PI / 2));
    CHECK(angle_between(Vec3{1, 0, 0}, Vec3{0, 3, 0}) == doctest::Approx(M_PI / 2));
}
