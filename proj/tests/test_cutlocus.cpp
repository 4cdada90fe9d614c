#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "skelocut/cutlocus.hpp"
#include "skelocut/examples.hpp"

using namespace skelocut;

static int base_face(const Polyhedron& P) {
    int best = 0;
    double bz = 1;
    for (size_t f = 0; f < P.faces.size(); ++f)
        if (P.face_planes[f].normal.z < bz) {
            bz = P.face_planes[f].normal.z;
            best = int(f);
        }
    return best;
}

static void check_tree_invariants(const Polyhedron& P, const CutLocus& CL) {
    // tree: arcs = nodes - 1
    CHECK(CL.arcs.size() + 1 == CL.nodes.size());
    // every vertex of P (except a vertex source) appears; leaves are vertices
    for (size_t v = 0; v < P.vertices.size(); ++v) {
        if (CL.source.is_vertex() && CL.source.index == int(v)) continue;
        CHECK(CL.node_at_vertex(int(v)) >= 0);
    }
    for (const auto& nd : CL.nodes) {
        if (nd.degree == 1) CHECK(nd.vertex >= 0);
        CHECK(nd.degree == nd.num_geodesics);
    }
    // degree accounting
    std::vector<int> deg(CL.nodes.size(), 0);
    for (const auto& a : CL.arcs) {
        ++deg[a.a];
        ++deg[a.b];
    }
    for (size_t i = 0; i < CL.nodes.size(); ++i) CHECK(deg[i] == CL.nodes[i].degree);
}

TEST_CASE("tetrahedron from base centroid: C(x) is the three apex edges") {
    Polyhedron T = examples::regular_tetrahedron();
    SurfacePoint x = face_centroid(T, base_face(T));
    CutLocus CL = cut_locus(T, x);
    check_tree_invariants(T, CL);
    REQUIRE(CL.nodes.size() == 4);
    REQUIRE(CL.arcs.size() == 3);
    int apex = CL.node_at_vertex(3);
    REQUIRE(apex >= 0);
    CHECK(CL.nodes[apex].degree == 3);
    CHECK(CL.nodes[apex].num_geodesics == 3);
    for (const auto& a : CL.arcs) {
        CHECK(a.on_skeleton);
        CHECK((a.a == apex || a.b == apex));
        CHECK(a.length == doctest::Approx(1.0));
    }
}

TEST_CASE("verify_skeletal passes on the tetrahedron apex-edge claim") {
    Polyhedron T = examples::regular_tetrahedron();
    SurfacePoint x = face_centroid(T, base_face(T));
    std::vector<int> claimed;
    for (size_t e = 0; e < T.edges.size(); ++e)
        if (T.edges[e].a == 3 || T.edges[e].b == 3) claimed.push_back(int(e));
    REQUIRE(claimed.size() == 3);
    VerificationReport R = verify_skeletal(T, x, claimed);
    CHECK(R.spanning_precondition);
    CHECK(R.simple_and_star_shaped);
    CHECK(R.boundary_equidistant);
    CHECK(R.bisection_at_nodes);
    CHECK(R.matches_cut_locus);
    CHECK(R.pass());
}

TEST_CASE("verify_skeletal rejects a wrong spanning claim") {
    Polyhedron T = examples::regular_tetrahedron();
    SurfacePoint x = face_centroid(T, base_face(T));
    // two base edges plus one apex edge: spans all 4 vertices but is not C(x)
    std::vector<int> claimed;
    int e01 = T.edge_index(0, 1), e12 = T.edge_index(1, 2), e23 = T.edge_index(2, 3);
    claimed = {e01, e12, e23};
    VerificationReport R = verify_skeletal(T, x, claimed);
    CHECK(R.spanning_precondition);
    CHECK_FALSE(R.bisection_at_nodes);
    CHECK_FALSE(R.matches_cut_locus);
    CHECK_FALSE(R.pass());
}

TEST_CASE("pentagonal dipyramid from a base-edge midpoint: skeletal 6-edge cut locus") {
    Polyhedron D = examples::pentagonal_dipyramid();
    int e = D.edge_index(0, 1);  // a base edge
    REQUIRE(e >= 0);
    SurfacePoint x = edge_point(D, e, 0.5);
    CutLocus CL = cut_locus(D, x);
    check_tree_invariants(D, CL);
    // 4 other base edges + 2 opposite lateral edges
    CHECK(CL.arcs.size() == 6);
    for (const auto& a : CL.arcs) CHECK(a.on_skeleton);
    // the two lateral arcs end at the apexes (vertices 2, 3) and share the base
    // vertex opposite the source edge (vertex 6, degree 4)
    int na = CL.node_at_vertex(2), nb = CL.node_at_vertex(3);
    REQUIRE(na >= 0);
    REQUIRE(nb >= 0);
    CHECK(CL.nodes[na].degree == 1);
    CHECK(CL.nodes[nb].degree == 1);
    int nmid = CL.node_at_vertex(6);
    REQUIRE(nmid >= 0);
    CHECK(CL.nodes[nmid].degree == 4);
}

TEST_CASE("cube face center: 4 vertical edges plus 4 half-diagonals of the far face") {
    Polyhedron C = examples::cube();
    SurfacePoint x = face_centroid(C, base_face(C));
    CutLocus CL = cut_locus(C, x);
    check_tree_invariants(C, CL);
    int leaves = 0, off = 0, on = 0;
    for (const auto& nd : CL.nodes)
        if (nd.degree == 1) ++leaves;
    for (const auto& a : CL.arcs)
        a.on_skeleton ? ++on : ++off;
    CHECK(CL.nodes.size() == 9);
    CHECK(CL.arcs.size() == 8);
    CHECK(leaves == 4);  // the near-face vertices; far-face vertices have degree 2
    CHECK(on == 4);      // the vertical edges
    CHECK(off == 4);     // half-diagonals meeting at the far face center
}

TEST_CASE("source unfolding conserves area and is computed for golden solids") {
    for (const Polyhedron& P :
         {examples::regular_tetrahedron(), examples::cube(), examples::regular_octahedron()}) {
        SurfacePoint x = face_centroid(P, base_face(P));
        Net N = source_unfolding(P, x);
        CHECK(N.area() == doctest::Approx(P.surface_area()).epsilon(1e-6));
        CHECK(!N.gluings.empty());
    }
}

TEST_CASE("doubly covered square: rim point yields a path cut locus") {
    Polyhedron S = examples::doubly_covered_square();
    int e = -1;
    for (size_t i = 0; i < S.edges.size(); ++i)
        if ((S.edges[i].a == 0 && S.edges[i].b == 1) || (S.edges[i].a == 1 && S.edges[i].b == 0))
            e = int(i);
    REQUIRE(e >= 0);
    SurfacePoint x = edge_point(S, e, 0.5);
    CutLocus CL = cut_locus(S, x);
    check_tree_invariants(S, CL);
    int leaves = 0;
    for (const auto& nd : CL.nodes) {
        CHECK(nd.degree <= 2);
        if (nd.degree == 1) ++leaves;
    }
    CHECK(leaves == 2);
}
