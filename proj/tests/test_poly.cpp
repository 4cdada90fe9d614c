#include <cmath>

#include "doctest.h"
#include "skelocut/examples.hpp"
#include "skelocut/polyhedron.hpp"

using namespace skelocut;

TEST_CASE("regular tetrahedron builds with E = 6") {
    Polyhedron P = examples::regular_tetrahedron();
    CHECK(P.vertices.size() == 4);
    CHECK(P.edges.size() == 6);
    CHECK(P.faces.size() == 4);
    for (int e = 0; e < 6; ++e) CHECK(P.edge_length(e) == doctest::Approx(1.0));
}

TEST_CASE("cube satisfies Euler identity") {
    Polyhedron P = examples::cube();
    CHECK(P.vertices.size() == 8);
    CHECK(P.edges.size() == 12);
    CHECK(P.faces.size() == 6);
    CHECK(int(P.vertices.size()) - int(P.edges.size()) + int(P.faces.size()) == 2);
}

TEST_CASE("dented octahedron rejected as non-convex") {
    // Octahedron with the top apex pushed into the interior: faces stay
    // planar triangles but the bottom apex lies outside the top face planes.
    std::vector<Vec3> v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                           {0, -1, 0}, {0, 0, -0.3}, {0, 0, -1}};
    std::vector<std::vector<int>> f = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                                       {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
    CHECK_THROWS_AS(build_polyhedron(v, f), NonConvex);
}

TEST_CASE("hull of 4 points is a tetrahedron; interior points absorbed") {
    Polyhedron T = convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(T.faces.size() == 4);
    std::vector<Vec3> pts;
    for (int i = 0; i < 8; ++i)
        pts.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
    pts.push_back({0.5, 0.5, 0.5});
    Polyhedron C = convex_hull(pts);
    CHECK(C.vertices.size() == 8);
    CHECK(C.faces.size() == 6);
}

TEST_CASE("hull is idempotent") {
    std::vector<Vec3> pts;
    unsigned s = 12345;
    auto rnd = [&] { s = s * 1664525u + 1013904223u; return double(s >> 8) / double(1u << 24) - 0.5; };
    for (int i = 0; i < 20; ++i) pts.push_back({rnd(), rnd(), rnd()});
    Polyhedron H = convex_hull(pts);
    Polyhedron H2 = convex_hull(H.vertices);
    CHECK(H.vertices.size() == H2.vertices.size());
    CHECK(H.faces.size() == H2.faces.size());
}

TEST_CASE("truncation identity, tangency, and vertex-cut counts") {
    Polyhedron T = examples::regular_tetrahedron();
    Plane outside = Plane::from_point_normal({0, 0, 5}, {0, 0, 1});
    Polyhedron same = truncate(T, outside);
    CHECK(same.vertices.size() == 4);

    Plane tangent = Plane::from_point_normal({0, 0, std::sqrt(2.0 / 3.0)}, {0, 0, 1});
    CHECK_THROWS_AS(truncate(T, tangent), TangentPlane);

    // Cut off the apex: plane z = h/2 keeps the bottom.
    Plane cut = Plane::from_point_normal({0, 0, 0.5 * std::sqrt(2.0 / 3.0)}, {0, 0, 1});
    Polyhedron Tr = truncate(T, cut);
    // Cutting one corner of a tetrahedron: 3 kept + 3 new vertices, all of
    // degree 3, so E = 9 and F = 5 are forced by Euler's identity.
    CHECK(Tr.vertices.size() == 6);
    CHECK(Tr.edges.size() == 9);
    CHECK(Tr.faces.size() == 5);
}

TEST_CASE("truncation through a vertex neighborhood gives a triangular new face") {
    Polyhedron T = examples::regular_tetrahedron();
    // Cut off base vertex 0 only.
    Vec3 v0 = T.vertices[0];
    Plane cut = Plane::from_point_normal(v0 * 0.7, v0);
    Polyhedron Tr = truncate(T, cut);
    CHECK(Tr.vertices.size() == 6);
    CHECK(Tr.edges.size() == 9);
    CHECK(Tr.faces.size() == 5);
    int tri = 0, newface = 0;
    for (size_t f = 0; f < Tr.faces.size(); ++f) {
        if (Tr.faces[f].size() == 3) ++tri;
        bool allnew = true;
        for (int i : Tr.faces[f])
            if (dist(Tr.vertices[i], v0) > 0.9) allnew = false;
        if (allnew && Tr.faces[f].size() == 3) ++newface;
    }
    CHECK(newface == 1);
}

TEST_CASE("regular pyramid: n=3 with equal edges, n=4 has 8 edges") {
    Polyhedron T = make_regular_pyramid(3, std::sqrt(2.0));
    for (size_t e = 0; e < T.edges.size(); ++e)
        CHECK(T.edge_length(int(e)) == doctest::Approx(std::sqrt(3.0)));
    Polyhedron S = make_regular_pyramid(4, 1.0);
    CHECK(S.edges.size() == 8);
    CHECK(S.vertices[4].z == doctest::Approx(1.0));
}

TEST_CASE("doubly covered polygons") {
    Polyhedron T = doubly_covered_polygon({{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2, 0}});
    CHECK(T.degenerate);
    CHECK(T.edges.size() == 3);
    CHECK(T.faces.size() == 2);
    CHECK(int(T.vertices.size()) - int(T.edges.size()) + int(T.faces.size()) == 2);

    Polyhedron S = examples::doubly_covered_square();
    CHECK(S.degenerate);
    CHECK(S.edges.size() == 4);
    // rim vertex angle is doubled interior angle
    CHECK(S.vertex_total_angle(0) == doctest::Approx(M_PI));

    CHECK_THROWS_AS(doubly_covered_polygon({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0.9, 0.1, 0}}),
                    NonConvexPolygon);
}

TEST_CASE("coplanar hull input yields a degenerate polyhedron") {
    Polyhedron P = convex_hull({{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {0, 2, 0}, {1, 1, 0}});
    CHECK(P.degenerate);
    CHECK(P.vertices.size() == 4);
}

TEST_CASE("Gauss-Bonnet: vertex curvatures sum to 4 pi") {
    for (const Polyhedron& P :
         {examples::regular_tetrahedron(), examples::cube(), examples::regular_octahedron(),
          examples::regular_icosahedron(), examples::pentagonal_dipyramid(),
          examples::regular_dodecahedron()}) {
        double total = 0;
        for (size_t v = 0; v < P.vertices.size(); ++v) {
            double ang = P.vertex_total_angle(int(v));
            CHECK(ang < 2 * M_PI);
            total += 2 * M_PI - ang;
        }
        CHECK(total == doctest::Approx(4 * M_PI).epsilon(1e-6));
    }
}

TEST_CASE("icosahedron and dodecahedron combinatorics") {
    Polyhedron I = examples::regular_icosahedron();
    CHECK(I.vertices.size() == 12);
    CHECK(I.edges.size() == 30);
    CHECK(I.faces.size() == 20);
    Polyhedron D = examples::regular_dodecahedron();
    CHECK(D.vertices.size() == 20);
    CHECK(D.edges.size() == 30);
    CHECK(D.faces.size() == 12);
    for (const auto& f : D.faces) CHECK(f.size() == 5);
}

TEST_CASE("chart transfer glues across an edge isometrically") {
    Polyhedron P = examples::cube();
    const Polyhedron::Edge& e = P.edges[0];
    Rigid2 t = P.transfer(0, e.face_ab, e.face_ba);
    // endpoints map to endpoints
    CHECK(dist(t(P.chart_vertex(e.face_ab, e.a)), P.chart_vertex(e.face_ba, e.a)) < 1e-12);
    // interiors land on opposite sides of the shared edge in the target chart
    Vec2 a = P.chart_vertex(e.face_ba, e.a), b = P.chart_vertex(e.face_ba, e.b);
    Vec2 ca{0, 0}, cb{0, 0};
    for (Vec2 q : P.charts[e.face_ab].pts) ca = ca + q;
    ca = t(ca / double(P.charts[e.face_ab].pts.size()));
    for (Vec2 q : P.charts[e.face_ba].pts) cb = cb + q;
    cb = cb / double(P.charts[e.face_ba].pts.size());
    CHECK(cross(b - a, ca - a) * cross(b - a, cb - a) < 0);
}

TEST_CASE("vertex fans cover the cone and invert consistently") {
    Polyhedron P = examples::regular_octahedron();
    CHECK(P.vertex_total_angle(0) == doctest::Approx(4 * (M_PI / 3)));
    auto [f, dir] = fan_direction(P, 0, 1.234);
    CHECK(fan_angle(P, 0, f, dir) == doctest::Approx(1.234));
}

TEST_CASE("truncation keeps original vertices on the kept side") {
    Polyhedron T = examples::cube();
    Plane cut = Plane::from_point_normal({0.8, 0.8, 0.8}, {1, 1, 1});
    Polyhedron Tr = truncate(T, cut);
    int preserved = 0;
    for (const Vec3& v : T.vertices)
        for (const Vec3& w : Tr.vertices)
            if (dist(v, w) < 1e-12) { ++preserved; break; }
    CHECK(preserved == 7);
    CHECK(Tr.vertices.size() == 10);
}
