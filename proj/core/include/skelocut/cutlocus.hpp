#pragma once

#include <string>
#include <vector>

#include "skelocut/geodesic.hpp"

namespace skelocut {

// Cut locus C(x): a tree embedded on the surface. Leaves are vertices of P;
// every vertex of P (except a vertex source) appears among the nodes.
struct CutLocus {
    SurfacePoint source;
    struct Node {
        SurfacePoint point;
        Vec3 pos;
        int degree = 0;
        int num_geodesics = 0;  // shortest geodesics back to the source
        int vertex = -1;        // polyhedron vertex index, or -1
    };
    struct Arc {
        int a = -1, b = -1;          // node indices
        std::vector<Vec3> polyline;  // from node a to node b
        std::vector<int> faces;      // face carrying each polyline segment
        bool on_skeleton = false;    // lies along polyhedron edges throughout
        double length = 0;
    };
    std::vector<Node> nodes;
    std::vector<Arc> arcs;

    int node_at_vertex(int v) const;
};

CutLocus cut_locus(const Polyhedron& P, const SurfacePoint& x, const GeodesicParams& params = {});

// An unfolding: placed planar pieces plus the gluing pairing of the boundary
// fragments created by the cut.
struct Net {
    struct Piece {
        int face;                   // face of P the piece came from
        std::vector<Vec2> polygon;  // placed plane coordinates, CCW
    };
    struct Gluing {
        int piece_a, edge_a;  // edge i of a piece runs polygon[i] -> polygon[i+1]
        int piece_b, edge_b;
    };
    std::vector<Piece> pieces;
    std::vector<Gluing> gluings;
    Vec2 source_image;
    double area() const;
};

// Cut along C(x) and develop isometrically: a simple planar region,
// star-shaped about the image of x, whose boundary is the unfolded C(x).
Net source_unfolding(const Polyhedron& P, const SurfacePoint& x, const GeodesicParams& params = {});

struct VerificationReport {
    bool spanning_precondition = false;
    bool simple_and_star_shaped = false;  // (1)
    bool boundary_equidistant = false;    // (2)
    bool bisection_at_nodes = false;      // (3)
    bool matches_cut_locus = false;       // (4)
    std::vector<std::string> failures;
    bool pass() const {
        return spanning_precondition && simple_and_star_shaped && boundary_equidistant &&
               bisection_at_nodes && matches_cut_locus;
    }
};

// Checks that the claimed polyhedron edges (a spanning tree of the vertices,
// minus x when x is a vertex) are exactly C(x).
VerificationReport verify_skeletal(const Polyhedron& P, const SurfacePoint& x,
                                   const std::vector<int>& claimed_edges,
                                   const GeodesicParams& params = {});

}  // namespace skelocut
