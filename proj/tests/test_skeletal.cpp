#include <algorithm>
#include <set>

#include "doctest.h"
#include "skelocut/examples.hpp"
#include "skelocut/skeletal.hpp"

using namespace skelocut;

TEST_CASE("tetrahedron: at most 30 candidates, exactly 4 skeletal sources") {
    Polyhedron T = examples::regular_tetrahedron();
    std::vector<CandidateSource> cands = candidate_sources(T);
    int E = int(T.edges.size());
    CHECK(int(cands.size()) <= E * (E - 1));  // 2*C(E,2)
    CHECK(cands.size() <= 30);
    SkeletalReport rep = scan_skeletal(T);
    CHECK(rep.num_skeletal == 4);
    // robustness gate: positives stay positive with tolerances halved
    GeodesicParams tight;
    tight.tol.tol_plane /= 2;
    tight.tol.tol_len /= 2;
    tight.tol.tol_angle /= 2;
    for (const auto& r : rep.records)
        if (r.skeletal) CHECK(is_skeletal(T, r.point, tight).first);
}

TEST_CASE("cube: face centers among candidates, none skeletal, L lower bound 4") {
    Polyhedron C = examples::cube();
    std::vector<CandidateSource> cands = candidate_sources(C);
    int centers = 0;
    for (size_t f = 0; f < C.faces.size(); ++f) {
        Vec3 ctr = surface_position(C, face_centroid(C, int(f)));
        for (const CandidateSource& c : cands)
            if (dist(surface_position(C, c.point), ctr) <= 1e-7) {
                ++centers;
                break;
            }
    }
    CHECK(centers == 6);
    SkeletalReport rep = scan_skeletal(C);
    CHECK(rep.num_skeletal == 0);
    CHECK(rep.max_edge_count == 4);
}

TEST_CASE("pentagonal dipyramid: base-edge midpoints are skeletal with 6 edges") {
    Polyhedron D = examples::pentagonal_dipyramid();
    int e = D.edge_index(0, 1);
    auto [ok, edges] = is_skeletal(D, edge_point(D, e, 0.5));
    CHECK(ok);
    CHECK(edges.size() == 6);
    SkeletalReport rep = scan_skeletal(D);
    CHECK(rep.num_skeletal >= 5);
}

TEST_CASE("regular octahedron: every vertex is a skeletal source") {
    Polyhedron O = examples::regular_octahedron();
    for (size_t v = 0; v < O.vertices.size(); ++v) CHECK(is_skeletal(O, vertex_point(int(v))).first);
}

TEST_CASE("icosahedron face center: 6 disjoint skeleton edges, not fully skeletal") {
    Polyhedron I = examples::regular_icosahedron();
    auto [ok, edges] = is_skeletal(I, face_centroid(I, 0));
    CHECK_FALSE(ok);
    REQUIRE(edges.size() == 6);
    std::set<int> verts;
    for (int e : edges) {
        verts.insert(I.edges[e].a);
        verts.insert(I.edges[e].b);
    }
    CHECK(verts.size() == 12);  // pairwise disjoint: a perfect matching
    CHECK(edge_count_in_cutlocus(I, face_centroid(I, 0)) == 6);
}

TEST_CASE("doubly covered square scan reports the infinite rim family") {
    SkeletalReport rep = scan_skeletal(examples::doubly_covered_square());
    CHECK(rep.infinite_family);
    CHECK(!rep.rim_description.empty());
}

TEST_CASE("one_edge_witness finds a source containing each edge") {
    Polyhedron T = examples::regular_tetrahedron();
    for (size_t e = 0; e < T.edges.size(); ++e) {
        SurfacePoint x = one_edge_witness(T, int(e));
        CutLocus CL = cut_locus(T, x);
        CHECK(edge_count_in_cutlocus(T, x) >= 1);
    }
    Polyhedron C = examples::cube();
    SurfacePoint x = one_edge_witness(C, 0);
    CHECK(edge_count_in_cutlocus(C, x) >= 1);
}

TEST_CASE("HIST existence on the golden graphs") {
    CHECK(has_hist(examples::k4_graph()));
    CHECK(has_hist(examples::octahedron_graph()));
    CHECK_FALSE(has_hist(examples::cube_graph()));
    CHECK_FALSE(has_hist(examples::dodecahedron_graph()));
}

TEST_CASE("restriction verdicts") {
    CHECK(restriction_check(examples::cube()) == RestrictionVerdict::ProvablyNoSkeletal);
    CHECK(restriction_check(examples::regular_tetrahedron()) == RestrictionVerdict::Inconclusive);
    CHECK(restriction_check(examples::regular_octahedron()) == RestrictionVerdict::Inconclusive);
}

TEST_CASE("every-vertex property report") {
    EveryVertexReport octa = every_vertex_report(examples::regular_octahedron());
    CHECK(octa.all_vertices_skeletal);
    CHECK(octa.faces_triangular);
    CHECK(octa.degrees_even);
    CHECK(octa.opposite_angles_congruent);
    CHECK(octa.octahedral_case_applies);
    CHECK(octa.octahedral_case_ok);
    CHECK(octa.pass());

    EveryVertexReport cube = every_vertex_report(examples::cube());
    CHECK_FALSE(cube.faces_triangular);
    CHECK_FALSE(cube.pass());
}
