#pragma once

#include <string>
#include <vector>

#include "skelocut/cutlocus.hpp"

namespace skelocut {

// A flat point where the straight extensions of two polyhedron edges first
// meet beyond their endpoints: the only possible locations of a flat source
// with a skeletal cut locus.
struct CandidateSource {
    SurfacePoint point;
    int edge_a = -1, edge_b = -1;  // provenance: the extended edges
};

// Geodesic ray continuing edge `edge` beyond endpoint `from_vertex`, i.e. the
// direction that together with the edge bisects the complete angle there.
struct ExtensionRay {
    int edge = -1;
    int from_vertex = -1;
    std::vector<Vec3> pts;        // polyline; pts[0] is the vertex
    std::vector<int> faces;       // face carrying segment pts[i] -> pts[i+1]
    std::vector<int> along_edge;  // polyhedron edge the segment runs along, or -1
    std::vector<double> arclen;   // cumulative arclength at pts[i]
    bool hit_vertex = false;      // terminated at a vertex of P
};

ExtensionRay trace_extension(const Polyhedron& P, int e, int from_vertex, int max_crossings,
                             const ToleranceConfig& tol = {});

std::vector<CandidateSource> candidate_sources(const Polyhedron& P,
                                               const GeodesicParams& params = {});

// True iff every arc of C(x) runs along polyhedron edges; also returns the
// whole edges covered.
std::pair<bool, std::vector<int>> is_skeletal(const Polyhedron& P, const SurfacePoint& x,
                                              const GeodesicParams& params = {});

// Whole polyhedron edges contained in C(x).
int edge_count_in_cutlocus(const Polyhedron& P, const SurfacePoint& x,
                           const GeodesicParams& params = {});

struct SkeletalReport {
    struct Record {
        SurfacePoint point;
        int edge_a = -1, edge_b = -1;  // candidate provenance; -1,-1 for vertices
        bool skeletal = false;
        std::vector<int> edges;  // whole edges in C(x)
        int edge_count = 0;
    };
    std::vector<Record> records;
    int num_skeletal = 0;
    int max_edge_count = 0;  // lower bound for L(P)
    bool infinite_family = false;
    std::string rim_description;
};

// Evaluate is_skeletal at every candidate source, every vertex, and every
// edge-interior candidate (points where two edge extensions coincide along an
// edge); positives are re-verified with verify_skeletal. Degenerate P reports
// the infinite rim family instead.
SkeletalReport scan_skeletal(const Polyhedron& P, const GeodesicParams& params = {});

// A source x with e in C(x): taken on the ray bisecting the complete angle at
// an endpoint of e opposite to e, at a distance shrunk geometrically until the
// cut locus confirms containment. Throws WitnessNotFound on budget exhaustion.
SurfacePoint one_edge_witness(const Polyhedron& P, int e, const GeodesicParams& params = {});

// Spanning tree without degree-2 nodes (homeomorphically irreducible spanning
// tree), by backtracking over edge inclusion with degree-feasibility pruning.
bool has_hist(const std::vector<std::vector<int>>& adjacency);

enum class RestrictionVerdict {
    ProvablyNoSkeletal,  // skeleton is cubic and HIST-free
    Inconclusive,
};
RestrictionVerdict restriction_check(const Polyhedron& P);

// Necessary conditions on a polyhedron all of whose vertices are skeletal
// sources.
struct EveryVertexReport {
    bool all_vertices_skeletal = false;
    bool faces_triangular = false;         // (1)
    bool degrees_even = false;             // (2)
    bool opposite_angles_congruent = false;  // (3) at each degree-2k vertex
    bool octahedral_case_applies = false;  // all degrees 4
    bool octahedral_case_ok = false;       // (4) V=6, F=8, congruent acute faces
    bool pass() const {
        return all_vertices_skeletal && faces_triangular && degrees_even &&
               opposite_angles_congruent && (!octahedral_case_applies || octahedral_case_ok);
    }
};
EveryVertexReport every_vertex_report(const Polyhedron& P, const GeodesicParams& params = {});

}  // namespace skelocut
