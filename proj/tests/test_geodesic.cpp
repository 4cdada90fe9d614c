#include <cmath>

#include "doctest.h"
#include "skelocut/examples.hpp"
#include "skelocut/geodesic.hpp"

using namespace skelocut;

static SurfacePoint centroid_of(const Polyhedron& P, int f) { return face_centroid(P, f); }

static int base_face(const Polyhedron& P) {
    // face whose plane has the most negative z-normal
    int best = 0;
    double bz = 1;
    for (size_t f = 0; f < P.faces.size(); ++f)
        if (P.face_planes[f].normal.z < bz) {
            bz = P.face_planes[f].normal.z;
            best = int(f);
        }
    return best;
}

TEST_CASE("identical points give a single zero geodesic") {
    Polyhedron T = examples::regular_tetrahedron();
    SurfacePoint x = vertex_point(3);
    auto gs = shortest_geodesics(T, x, x);
    REQUIRE(gs.size() == 1);
    CHECK(gs[0].length == doctest::Approx(0.0));
}

TEST_CASE("same-face geodesic is the straight chord") {
    Polyhedron C = examples::cube();
    int f = base_face(C);
    SurfacePoint x = vertex_point(C.faces[f][0]);
    SurfacePoint y = vertex_point(C.faces[f][2]);  // diagonal of the unit square
    auto gs = shortest_geodesics(C, x, y);
    REQUIRE(!gs.empty());
    CHECK(gs[0].length == doctest::Approx(std::sqrt(2.0)));
    CHECK(gs[0].crossed_edges.empty());
}

TEST_CASE("tetrahedron: base centroid to apex has exactly 3 ties") {
    Polyhedron T = examples::regular_tetrahedron();
    SurfacePoint x = centroid_of(T, base_face(T));
    SurfacePoint y = vertex_point(3);  // apex
    auto gs = shortest_geodesics(T, x, y);
    CHECK(gs.size() == 3);
    // Unfold one lateral face: centroid-to-edge 1/(2 sqrt 3) plus apex height sqrt(3)/2.
    double expect = 1.0 / (2 * std::sqrt(3.0)) + std::sqrt(3.0) / 2;
    for (const auto& g : gs) {
        CHECK(g.length == doctest::Approx(expect));
        CHECK(g.crossed_edges.size() == 1);
    }
}

TEST_CASE("cube: opposite face centers, 4 ties of length 2") {
    Polyhedron C = examples::cube();
    int fb = base_face(C);
    int ft = 0;
    for (size_t f = 0; f < C.faces.size(); ++f)
        if (C.face_planes[f].normal.z > 0.9) ft = int(f);
    auto gs = shortest_geodesics(C, centroid_of(C, fb), centroid_of(C, ft));
    CHECK(gs.size() == 4);
    for (const auto& g : gs) CHECK(g.length == doctest::Approx(2.0));
}

TEST_CASE("cube: opposite corners, 6 ties of length sqrt 5") {
    Polyhedron C = examples::cube();
    int a = -1, b = -1;
    for (size_t v = 0; v < C.vertices.size(); ++v) {
        if (norm(C.vertices[v]) < 1e-9) a = int(v);
        if (dist(C.vertices[v], {1, 1, 1}) < 1e-9) b = int(v);
    }
    REQUIRE(a >= 0);
    REQUIRE(b >= 0);
    auto gs = shortest_geodesics(C, vertex_point(a), vertex_point(b));
    CHECK(gs.size() == 6);
    for (const auto& g : gs) {
        CHECK(g.length == doctest::Approx(std::sqrt(5.0)));
        CHECK(g.crossed_edges.size() == 1);
        CHECK(g.cross_t[0] == doctest::Approx(0.5));  // through an equatorial edge midpoint
    }
}

TEST_CASE("octahedron: antipodal vertices, 4 ties of length sqrt 6") {
    Polyhedron O = examples::regular_octahedron();
    int a = -1, b = -1;
    for (size_t v = 0; v < O.vertices.size(); ++v) {
        if (O.vertices[v].z > 0.9) a = int(v);
        if (O.vertices[v].z < -0.9) b = int(v);
    }
    auto gs = shortest_geodesics(O, vertex_point(a), vertex_point(b));
    CHECK(gs.size() == 4);
    for (const auto& g : gs) CHECK(g.length == doctest::Approx(std::sqrt(6.0)));
}

TEST_CASE("doubly covered square: front center to back center, 4 ties of length 1") {
    Polyhedron S = examples::doubly_covered_square();
    auto gs = shortest_geodesics(S, centroid_of(S, 0), centroid_of(S, 1));
    CHECK(gs.size() == 4);
    for (const auto& g : gs) CHECK(g.length == doctest::Approx(1.0));
}

TEST_CASE("polyline length matches reported length") {
    Polyhedron I = examples::regular_icosahedron();
    SurfacePoint x = centroid_of(I, 0);
    SurfacePoint y = vertex_point(7);
    auto gs = shortest_geodesics(I, x, y);
    REQUIRE(!gs.empty());
    for (const auto& g : gs) {
        auto pts = geodesic_polyline(I, g);
        double len = 0;
        for (size_t i = 1; i < pts.size(); ++i) len += dist(pts[i - 1], pts[i]);
        CHECK(len == doctest::Approx(g.length).epsilon(1e-9));
        for (double t : g.cross_t) {
            CHECK(t >= 0.0);
            CHECK(t <= 1.0);
        }
    }
}

TEST_CASE("graph oracle upper-bounds and approximates the exact distance") {
    Polyhedron T = examples::regular_tetrahedron();
    SurfacePoint x = centroid_of(T, base_face(T));
    SurfacePoint y = vertex_point(3);
    double exact = geodesic_distance(T, x, y);
    double approx = approx_distance(T, x, y, 64);
    CHECK(approx >= exact - 1e-9);
    CHECK(approx <= exact * 1.01);

    Polyhedron C = examples::cube();
    ApproxDistances R = approx_distance_graph(C, centroid_of(C, 0), 32);
    for (size_t v = 0; v < C.vertices.size(); ++v) {
        double ex = geodesic_distance(C, centroid_of(C, 0), vertex_point(int(v)));
        CHECK(R.dist[v] >= ex - 1e-9);
        CHECK(R.dist[v] <= ex * 1.01);
    }
}

TEST_CASE("random pairs: exact vs graph oracle on the octahedron") {
    Polyhedron O = examples::regular_octahedron();
    unsigned s = 777;
    auto rnd = [&] { s = s * 1664525u + 1013904223u; return double(s >> 8) / double(1u << 24); };
    for (int it = 0; it < 10; ++it) {
        int f1 = int(rnd() * O.faces.size()) % O.faces.size();
        int f2 = int(rnd() * O.faces.size()) % O.faces.size();
        double a = rnd(), b = rnd() * (1 - a);
        SurfacePoint x = face_point(O, f1, {a, b, 1 - a - b});
        SurfacePoint y = face_centroid(O, f2);
        double exact = geodesic_distance(O, x, y);
        double approx = approx_distance(O, x, y, 48);
        CHECK(approx >= exact - 1e-9);
        CHECK(approx <= exact * 1.01 + 1e-9);
    }
}
