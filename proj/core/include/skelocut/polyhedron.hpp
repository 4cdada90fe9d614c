#pragma once

#include <map>
#include <utility>
#include <vector>

#include "skelocut/geom.hpp"

namespace skelocut {

// Convex polyhedron with derived incidence and per-face isometric 2D charts.
// Charts are counterclockwise as seen from outside, so gluing two charts along
// a shared edge with an orientation-preserving rigid motion develops the
// surface correctly.
struct Polyhedron {
    std::vector<Vec3> vertices;
    std::vector<std::vector<int>> faces;  // vertex cycles, CCW from outside
    bool degenerate = false;              // doubly covered convex polygon

    std::vector<Plane> face_planes;  // outward normals

    struct Edge {
        int a, b;             // a < b
        int face_ab, face_ba; // face whose cycle contains a->b, resp. b->a
    };
    std::vector<Edge> edges;

    struct Chart {
        Vec3 origin, e1, e2;     // orthonormal in-plane basis, e1 x e2 = outward normal
        std::vector<Vec2> pts;   // chart coords of the face cycle
    };
    std::vector<Chart> charts;

    // Cyclic fan of face corners around a vertex, angles accumulated CCW as
    // seen from outside. Entry i spans chart directions from (v -> succ) at
    // angle `offset` to (v -> pred) at angle `offset + ang`; the next entry is
    // the face across edge (v, pred).
    struct FanEntry {
        int face;
        int succ, pred;   // neighbors of v in the face cycle
        double offset, ang;
    };
    struct VertexFan {
        double total = 0;
        std::vector<FanEntry> entries;
    };
    std::vector<VertexFan> fans;

    int edge_index(int a, int b) const;
    int other_face(int e, int f) const;
    const Chart& chart(int f) const { return charts[f]; }
    Vec2 to_chart(int f, const Vec3& p) const;
    Vec3 from_chart(int f, const Vec2& q) const;
    Vec2 chart_vertex(int f, int v) const;
    // Rigid motion taking f_from chart coords to f_to chart coords across edge e.
    Rigid2 transfer(int e, int f_from, int f_to) const;
    double edge_length(int e) const { return dist(vertices[edges[e].a], vertices[edges[e].b]); }
    double surface_area() const;
    double face_area(int f) const;
    double vertex_total_angle(int v) const { return fans[v].total; }
    double bbox_diameter() const;
    std::vector<std::vector<int>> skeleton_adjacency() const;
    bool vertex_in_face(int f, int v) const;

private:
    friend Polyhedron build_polyhedron(const std::vector<Vec3>&, const std::vector<std::vector<int>>&,
                                       const ToleranceConfig&);
    void derive(const ToleranceConfig& tol);
};

// Angle coordinate in [0, fan total) of direction `dir` (at vertex v, in the
// chart of `face`); inverse mapping below.
double fan_angle(const Polyhedron& P, int v, int face, const Vec2& dir);
std::pair<int, Vec2> fan_direction(const Polyhedron& P, int v, double theta);

Polyhedron build_polyhedron(const std::vector<Vec3>& vertices,
                            const std::vector<std::vector<int>>& faces,
                            const ToleranceConfig& tol = {});

Polyhedron convex_hull(const std::vector<Vec3>& points, const ToleranceConfig& tol = {});

// Keeps the closed halfspace signed_dist <= 0. A cut not separating the
// vertices returns P unchanged.
Polyhedron truncate(const Polyhedron& P, const Plane& cut, const ToleranceConfig& tol = {});

// Regular n-gon base of circumradius 1 in z = 0 centered at the origin
// (vertices 0..n-1, vertex i at angle 2*pi*i/n), apex n at (0,0,apex_height).
Polyhedron make_regular_pyramid(int n, double apex_height, const ToleranceConfig& tol = {});

Polyhedron doubly_covered_polygon(const std::vector<Vec3>& polygon, const ToleranceConfig& tol = {});

// Indices into `pts` of the convex hull in CCW order; collinear boundary
// points are dropped. Used by the hull builder and the net exporter.
std::vector<int> convex_hull_2d(const std::vector<Vec2>& pts);

}  // namespace skelocut
