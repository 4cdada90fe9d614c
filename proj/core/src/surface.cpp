#include "skelocut/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace skelocut {

SurfacePoint vertex_point(int v) {
    SurfacePoint sp;
    sp.kind = SurfacePoint::Kind::Vertex;
    sp.index = v;
    return sp;
}

SurfacePoint edge_point(const Polyhedron& P, int e, double t, const ToleranceConfig& tol) {
    if (e < 0 || e >= int(P.edges.size())) throw DegenerateInput("edge index out of range");
    double len = P.edge_length(e);
    double eps = tol.tol_len / std::max(len, tol.tol_len);
    if (t <= eps) return vertex_point(P.edges[e].a);
    if (t >= 1 - eps) return vertex_point(P.edges[e].b);
    SurfacePoint sp;
    sp.kind = SurfacePoint::Kind::Edge;
    sp.index = e;
    sp.t = t;
    return sp;
}

SurfacePoint face_point_3d(const Polyhedron& P, int f, const Vec3& p, const ToleranceConfig& tol) {
    const std::vector<int>& cyc = P.faces[f];
    int n = int(cyc.size());
    // Snap to a vertex of the face.
    for (int i = 0; i < n; ++i)
        if (dist(p, P.vertices[cyc[i]]) <= tol.tol_len) return vertex_point(cyc[i]);
    // Snap to a boundary edge.
    for (int i = 0; i < n; ++i) {
        int a = cyc[i], b = cyc[(i + 1) % n];
        const Vec3& pa = P.vertices[a];
        const Vec3& pb = P.vertices[b];
        if (point_segment_dist(p, pa, pb) <= tol.tol_len) {
            double t = line_param(pa, pb, p);
            int e = P.edge_index(a, b);
            if (P.edges[e].a != a) t = 1 - t;
            return edge_point(P, e, t, tol);
        }
    }
    // Interior: generalized barycentric (Wachspress) weights on the chart polygon.
    Vec2 q = P.to_chart(f, p);
    const std::vector<Vec2>& c = P.charts[f].pts;
    std::vector<double> w(n);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        const Vec2& prev = c[(i + n - 1) % n];
        const Vec2& cur = c[i];
        const Vec2& next = c[(i + 1) % n];
        double A_prev = cross(cur - prev, q - prev);   // 2*area(prev, cur, q)
        double A_next = cross(next - cur, q - cur);    // 2*area(cur, next, q)
        double C = cross(next - prev, cur - prev);     // 2*area(prev, cur, next)
        if (A_prev <= 0 || A_next <= 0) throw DegenerateInput("point not inside face");
        w[i] = C / (A_prev * A_next);
        sum += w[i];
    }
    SurfacePoint sp;
    sp.kind = SurfacePoint::Kind::Face;
    sp.index = f;
    sp.weights.resize(n);
    for (int i = 0; i < n; ++i) sp.weights[i] = w[i] / sum;
    return sp;
}

SurfacePoint face_point(const Polyhedron& P, int f, const std::vector<double>& weights,
                        const ToleranceConfig& tol) {
    if (f < 0 || f >= int(P.faces.size())) throw DegenerateInput("face index out of range");
    if (weights.size() != P.faces[f].size())
        throw DegenerateInput("barycentric weight count does not match face");
    double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(std::abs(sum - 1.0) <= 1e-9)) throw DegenerateInput("barycentric weights must sum to 1");
    for (double w : weights)
        if (w < -1e-12) throw DegenerateInput("negative barycentric weight");
    Vec3 p{0, 0, 0};
    for (size_t i = 0; i < weights.size(); ++i) p = p + P.vertices[P.faces[f][i]] * weights[i];
    return face_point_3d(P, f, p, tol);
}

SurfacePoint face_centroid(const Polyhedron& P, int f) {
    int n = int(P.faces[f].size());
    return face_point(P, f, std::vector<double>(n, 1.0 / n));
}

Vec3 surface_position(const Polyhedron& P, const SurfacePoint& sp) {
    switch (sp.kind) {
        case SurfacePoint::Kind::Vertex:
            return P.vertices[sp.index];
        case SurfacePoint::Kind::Edge: {
            const Polyhedron::Edge& e = P.edges[sp.index];
            return P.vertices[e.a] * (1 - sp.t) + P.vertices[e.b] * sp.t;
        }
        case SurfacePoint::Kind::Face: {
            Vec3 p{0, 0, 0};
            for (size_t i = 0; i < sp.weights.size(); ++i)
                p = p + P.vertices[P.faces[sp.index][i]] * sp.weights[i];
            return p;
        }
    }
    return {0, 0, 0};
}

std::vector<int> containing_faces(const Polyhedron& P, const SurfacePoint& sp) {
    switch (sp.kind) {
        case SurfacePoint::Kind::Vertex: {
            std::vector<int> fs;
            for (const auto& fe : P.fans[sp.index].entries) fs.push_back(fe.face);
            return fs;
        }
        case SurfacePoint::Kind::Edge:
            return {P.edges[sp.index].face_ab, P.edges[sp.index].face_ba};
        case SurfacePoint::Kind::Face:
            return {sp.index};
    }
    return {};
}

bool point_on_face(const Polyhedron& P, const SurfacePoint& sp, int f) {
    std::vector<int> fs = containing_faces(P, sp);
    return std::find(fs.begin(), fs.end(), f) != fs.end();
}

Vec2 surface_chart_coords(const Polyhedron& P, const SurfacePoint& sp, int f) {
    if (!point_on_face(P, sp, f)) throw DegenerateInput("surface point not on requested face");
    switch (sp.kind) {
        case SurfacePoint::Kind::Vertex:
            return P.chart_vertex(f, sp.index);
        case SurfacePoint::Kind::Edge: {
            const Polyhedron::Edge& e = P.edges[sp.index];
            Vec2 a = P.chart_vertex(f, e.a), b = P.chart_vertex(f, e.b);
            return a * (1 - sp.t) + b * sp.t;
        }
        case SurfacePoint::Kind::Face:
            return P.to_chart(f, surface_position(P, sp));
    }
    return {0, 0};
}

bool same_surface_point(const Polyhedron& P, const SurfacePoint& a, const SurfacePoint& b,
                        double eps) {
    if (dist(surface_position(P, a), surface_position(P, b)) > eps) return false;
    // On doubly covered polygons, 3D coincidence is not enough: mirror points on
    // the two covers are distinct. Coinciding points are equal iff they share a face.
    std::vector<int> fa = containing_faces(P, a);
    for (int f : containing_faces(P, b))
        if (std::find(fa.begin(), fa.end(), f) != fa.end()) return true;
    return false;
}

SurfacePoint parse_surface_point(const Polyhedron& P, const std::string& spec,
                                 const ToleranceConfig& tol) {
    std::vector<std::string> parts;
    {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
    }
    auto to_int = [&](const std::string& s) {
        size_t pos = 0;
        int v;
        try {
            v = std::stoi(s, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad index in surface point spec: " + spec);
        }
        if (pos != s.size()) throw ParseError("bad index in surface point spec: " + spec);
        return v;
    };
    auto to_real = [&](const std::string& s) {
        size_t pos = 0;
        double v;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad number in surface point spec: " + spec);
        }
        if (pos != s.size()) throw ParseError("bad number in surface point spec: " + spec);
        return v;
    };
    if (parts.size() == 2 && parts[0] == "vertex") {
        int v = to_int(parts[1]);
        if (v < 0 || v >= int(P.vertices.size())) throw ParseError("vertex index out of range");
        return vertex_point(v);
    }
    if (parts.size() == 3 && parts[0] == "edge") {
        int e = to_int(parts[1]);
        if (e < 0 || e >= int(P.edges.size())) throw ParseError("edge index out of range");
        double t = to_real(parts[2]);
        if (t < 0 || t > 1) throw ParseError("edge parameter must be in [0,1]");
        return edge_point(P, e, t, tol);
    }
    if (parts.size() == 3 && parts[0] == "face") {
        int f = to_int(parts[1]);
        if (f < 0 || f >= int(P.faces.size())) throw ParseError("face index out of range");
        if (parts[2] == "centroid") return face_centroid(P, f);
        std::vector<double> w;
        std::stringstream ss(parts[2]);
        std::string item;
        while (std::getline(ss, item, ',')) w.push_back(to_real(item));
        if (w.size() != P.faces[f].size())
            throw ParseError("barycentric weight count does not match face size");
        return face_point(P, f, w, tol);
    }
    throw ParseError("unrecognized surface point spec: " + spec);
}

std::string format_surface_point(const SurfacePoint& sp) {
    char buf[64];
    switch (sp.kind) {
        case SurfacePoint::Kind::Vertex:
            std::snprintf(buf, sizeof buf, "vertex:%d", sp.index);
            return buf;
        case SurfacePoint::Kind::Edge:
            std::snprintf(buf, sizeof buf, "edge:%d:%.17g", sp.index, sp.t);
            return buf;
        case SurfacePoint::Kind::Face: {
            std::string out = "face:" + std::to_string(sp.index) + ":";
            for (size_t i = 0; i < sp.weights.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%s%.17g", i ? "," : "", sp.weights[i]);
                out += buf;
            }
            return out;
        }
    }
    return "";
}

}  // namespace skelocut
