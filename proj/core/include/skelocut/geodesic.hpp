#pragma once

#include <vector>

#include "skelocut/polyhedron.hpp"
#include "skelocut/surface.hpp"

namespace skelocut {

struct GeodesicParams {
    ToleranceConfig tol;
    double tie_rel = 1e-7;        // geodesics within this relative length are tied
    size_t frontier_cap = 1000000; // search states before SearchBudgetExceeded
};

// A shortest geodesic, developed into the chart plane of its first face.
// faces has one more entry than crossed_edges; placements[i] maps the chart of
// faces[i] into that common plane.
struct UnfoldedGeodesic {
    SurfacePoint source, target;
    std::vector<int> faces;
    std::vector<int> crossed_edges;
    std::vector<double> cross_t;   // parameter on crossed_edges[i], from edge.a to edge.b
    std::vector<Rigid2> placements;
    Vec2 src_image, dst_image;     // endpoints of the straight planar segment
    double length = 0;
};

std::vector<Vec3> geodesic_polyline(const Polyhedron& P, const UnfoldedGeodesic& g);

// All globally shortest geodesics from x to y (ties grouped by tie_rel),
// best-first search over unfolded face sequences with visibility-cone windows.
std::vector<UnfoldedGeodesic> shortest_geodesics(const Polyhedron& P, const SurfacePoint& x,
                                                 const SurfacePoint& y,
                                                 const GeodesicParams& params = {});

double geodesic_distance(const Polyhedron& P, const SurfacePoint& x, const SurfacePoint& y,
                         const GeodesicParams& params = {});

// Upper-bound oracle: Dijkstra over vertices + edge subdivision points, with
// straight chords between all sample points sharing a face. Node order:
// vertices first, then (subdivisions - 1) interior points per edge, then x.
struct ApproxDistances {
    std::vector<SurfacePoint> nodes;
    std::vector<double> dist;  // from x; upper bounds on geodesic distance
};
ApproxDistances approx_distance_graph(const Polyhedron& P, const SurfacePoint& x,
                                      int subdivisions);
double approx_distance(const Polyhedron& P, const SurfacePoint& x, const SurfacePoint& y,
                       int subdivisions);

}  // namespace skelocut
