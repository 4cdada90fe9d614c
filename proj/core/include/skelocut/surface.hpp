#pragma once

#include <string>
#include <vector>

#include "skelocut/polyhedron.hpp"

namespace skelocut {

// A canonical point on the surface of a polyhedron. The anchor is always the
// lowest-dimensional feature containing the point (within tol_len), so two
// equal geometric points compare equal structurally.
struct SurfacePoint {
    enum class Kind { Vertex, Edge, Face };
    Kind kind = Kind::Vertex;
    int index = 0;                 // vertex, edge, or face index
    double t = 0;                  // Edge: parameter in (0,1) from edge.a to edge.b
    std::vector<double> weights;   // Face: barycentric weights over the face cycle

    bool is_vertex() const { return kind == Kind::Vertex; }
    bool is_edge() const { return kind == Kind::Edge; }
    bool is_face() const { return kind == Kind::Face; }
};

SurfacePoint vertex_point(int v);
// Both constructors canonicalize: an edge parameter within tol of an endpoint
// collapses to that vertex; a face point on the boundary collapses to an edge
// or vertex anchor.
SurfacePoint edge_point(const Polyhedron& P, int e, double t,
                        const ToleranceConfig& tol = {});
SurfacePoint face_point(const Polyhedron& P, int f, const std::vector<double>& weights,
                        const ToleranceConfig& tol = {});
// Point given in 3D, known to lie on face f (within tol_plane of its plane).
SurfacePoint face_point_3d(const Polyhedron& P, int f, const Vec3& p,
                           const ToleranceConfig& tol = {});
SurfacePoint face_centroid(const Polyhedron& P, int f);

Vec3 surface_position(const Polyhedron& P, const SurfacePoint& sp);
// Faces incident to the anchor (1 for Face, 2 for Edge, the full fan for Vertex).
std::vector<int> containing_faces(const Polyhedron& P, const SurfacePoint& sp);
bool point_on_face(const Polyhedron& P, const SurfacePoint& sp, int f);
// Coordinates of sp in the chart of face f; f must contain the point.
Vec2 surface_chart_coords(const Polyhedron& P, const SurfacePoint& sp, int f);
bool same_surface_point(const Polyhedron& P, const SurfacePoint& a, const SurfacePoint& b,
                        double eps);

// CLI grammar: "vertex:i" | "edge:i:t" | "face:i:centroid" | "face:i:b1,b2,...".
SurfacePoint parse_surface_point(const Polyhedron& P, const std::string& spec,
                                 const ToleranceConfig& tol = {});
std::string format_surface_point(const SurfacePoint& sp);

}  // namespace skelocut
