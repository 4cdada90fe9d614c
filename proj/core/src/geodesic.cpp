#include "skelocut/geodesic.hpp"
#include <array>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace skelocut {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SearchNode {
    int face;        // face being entered
    int entry;       // edge crossed to enter it
    double t0, t1;   // admissible window on the entry edge (param edge.a -> edge.b)
    Rigid2 T;        // chart(face) -> development plane
    Vec2 S;          // source image in the development plane
    int parent;      // index into the node pool, -1 for a seed
    int prev_face;   // face on the other side of entry (the seed's start face)
    double lb;       // distance lower bound: dist(S, clipped window)
};

struct Candidate {
    double length;
    int node;     // -1 for a same-face direct segment
    int face;     // face on which the target was reached
    Vec2 simg, timg;
};

Vec2 edge_image(const Polyhedron& P, int face, const Rigid2& T, int vertex) {
    return T(P.chart_vertex(face, vertex));
}

struct Probe {
    Vec3 p;
    int face = -1;
};

// Fraction point along a polyline by arc length, plus the segment index it
// falls in (segment i of a geodesic polyline lies on faces[i]).
std::pair<Vec3, int> polyline_at(const std::vector<Vec3>& pts, double frac) {
    double total = 0;
    for (size_t i = 1; i < pts.size(); ++i) total += dist(pts[i - 1], pts[i]);
    if (total == 0) return {pts.front(), 0};
    double want = frac * total, acc = 0;
    for (size_t i = 1; i < pts.size(); ++i) {
        double d = dist(pts[i - 1], pts[i]);
        if (acc + d >= want) {
            double t = d == 0 ? 0 : (want - acc) / d;
            return {pts[i - 1] + (pts[i] - pts[i - 1]) * t, int(i) - 1};
        }
        acc += d;
    }
    return {pts.back(), int(pts.size()) - 2};
}

bool anchored_on_edge(const Polyhedron& P, const SurfacePoint& sp, int e) {
    if (sp.is_edge()) return sp.index == e;
    if (sp.is_vertex()) return sp.index == P.edges[e].a || sp.index == P.edges[e].b;
    return false;
}

}  // namespace

std::vector<Vec3> geodesic_polyline(const Polyhedron& P, const UnfoldedGeodesic& g) {
    std::vector<Vec3> pts;
    pts.push_back(surface_position(P, g.source));
    for (size_t i = 0; i < g.crossed_edges.size(); ++i) {
        const Polyhedron::Edge& e = P.edges[g.crossed_edges[i]];
        pts.push_back(P.vertices[e.a] * (1 - g.cross_t[i]) + P.vertices[e.b] * g.cross_t[i]);
    }
    pts.push_back(surface_position(P, g.target));
    return pts;
}

std::vector<UnfoldedGeodesic> shortest_geodesics(const Polyhedron& P, const SurfacePoint& x,
                                                 const SurfacePoint& y,
                                                 const GeodesicParams& params) {
    const ToleranceConfig& tol = params.tol;

    if (same_surface_point(P, x, y, tol.tol_len)) {
        UnfoldedGeodesic g;
        g.source = x;
        g.target = y;
        g.faces = {containing_faces(P, x).front()};
        g.placements = {Rigid2{}};
        g.src_image = g.dst_image = surface_chart_coords(P, x, g.faces[0]);
        g.length = 0;
        return {g};
    }

    double best = kInf;
    std::vector<Candidate> cands;
    auto tie_abs = [&](double b) { return std::max(tol.tol_len, b * params.tie_rel); };
    auto consider = [&](double len, int node, int face, Vec2 simg, Vec2 timg) {
        if (len < best) best = len;
        cands.push_back({len, node, face, simg, timg});
    };

    // Same-face straight segments.
    std::vector<int> xf = containing_faces(P, x), yf = containing_faces(P, y);
    for (int f : xf)
        if (std::find(yf.begin(), yf.end(), f) != yf.end()) {
            Vec2 a = surface_chart_coords(P, x, f), b = surface_chart_coords(P, y, f);
            consider(dist(a, b), -1, f, a, b);
        }

    // Seeds: first crossing out of each face containing x.
    std::vector<SearchNode> pool;
    using QEntry = std::pair<double, int>;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> pq;
    auto push_node = [&](SearchNode n) {
        if (pool.size() >= params.frontier_cap)
            throw SearchBudgetExceeded("geodesic search frontier exceeded cap");
        pool.push_back(n);
        pq.push({n.lb, int(pool.size()) - 1});
    };
    for (int f : xf) {
        Vec2 S = surface_chart_coords(P, x, f);
        const std::vector<int>& cyc = P.faces[f];
        int m = int(cyc.size());
        for (int i = 0; i < m; ++i) {
            int e = P.edge_index(cyc[i], cyc[(i + 1) % m]);
            if (anchored_on_edge(P, x, e)) continue;
            int g = P.other_face(e, f);
            SearchNode n;
            n.face = g;
            n.entry = e;
            n.t0 = 0;
            n.t1 = 1;
            n.T = P.transfer(e, g, f);
            n.S = S;
            n.parent = -1;
            n.prev_face = f;
            Vec2 a = edge_image(P, g, n.T, P.edges[e].a);
            Vec2 b = edge_image(P, g, n.T, P.edges[e].b);
            n.lb = point_segment_dist(S, a, b);
            push_node(n);
        }
    }

    const double eps_cone = 1e-9;
    while (!pq.empty()) {
        auto [lb, ni] = pq.top();
        pq.pop();
        if (std::isfinite(best) && lb > best + tie_abs(best)) break;
        SearchNode n = pool[ni];
        Vec2 Ea = edge_image(P, n.face, n.T, P.edges[n.entry].a);
        Vec2 Eb = edge_image(P, n.face, n.T, P.edges[n.entry].b);
        Vec2 Wa = Ea * (1 - n.t0) + Eb * n.t0;
        Vec2 Wb = Ea * (1 - n.t1) + Eb * n.t1;
        Vec2 d0 = Wa - n.S, d1 = Wb - n.S;
        if (cross(d0, d1) < 0) std::swap(d0, d1);
        double s0n = norm(d0), s1n = norm(d1);
        if (s0n <= tol.tol_len || s1n <= tol.tol_len) continue;

        // Target on this face, reached straight through the window?
        if (point_on_face(P, y, n.face) && !anchored_on_edge(P, y, n.entry)) {
            Vec2 Ty = n.T(surface_chart_coords(P, y, n.face));
            Vec2 dt = Ty - n.S;
            double nt = norm(dt);
            if (cross(d0, dt) >= -eps_cone * s0n * nt && cross(dt, d1) >= -eps_cone * s1n * nt) {
                // must actually pass beyond the entry line
                double sideS = cross(Eb - Ea, n.S - Ea), sideT = cross(Eb - Ea, Ty - Ea);
                if (sideS * sideT <= 0) consider(nt, ni, n.face, n.S, Ty);
            }
        }

        // Propagate through the other edges of this face.
        const std::vector<int>& cyc = P.faces[n.face];
        int m = int(cyc.size());
        for (int i = 0; i < m; ++i) {
            int e2 = P.edge_index(cyc[i], cyc[(i + 1) % m]);
            if (e2 == n.entry) continue;
            Vec2 A = edge_image(P, n.face, n.T, P.edges[e2].a);
            Vec2 B = edge_image(P, n.face, n.T, P.edges[e2].b);
            // Clip {s : w(s) = A + s(B-A) inside the cone [d0, d1]}.
            double lo = 0, hi = 1;
            auto clip_half = [&](Vec2 d, double sign) {
                // keep sign * cross(d, w(s) - S) >= 0, linear in s
                double c = sign * cross(d, A - n.S);
                double mm = sign * cross(d, B - A);
                if (std::abs(mm) < 1e-300) {
                    if (c < 0) lo = 1, hi = 0;
                    return;
                }
                double r = -c / mm;
                if (mm > 0)
                    lo = std::max(lo, r);
                else
                    hi = std::min(hi, r);
            };
            clip_half(d0, 1.0);
            clip_half(d1, -1.0);
            if (hi - lo <= 1e-13) continue;
            SearchNode nn;
            nn.face = P.other_face(e2, n.face);
            nn.entry = e2;
            nn.t0 = lo;
            nn.t1 = hi;
            nn.T = n.T * P.transfer(e2, nn.face, n.face);
            nn.S = n.S;
            nn.parent = ni;
            nn.prev_face = n.face;
            Vec2 wa = A * (1 - lo) + B * lo, wb = A * (1 - hi) + B * hi;
            nn.lb = point_segment_dist(n.S, wa, wb);
            if (std::isfinite(best) && nn.lb > best + tie_abs(best)) continue;
            push_node(nn);
        }
    }

    if (cands.empty()) throw GeometryError("no geodesic found (disconnected surface?)");

    // Reconstruct all ties, dedupe geometrically identical ones.
    double cutoff = best + tie_abs(best);
    std::vector<UnfoldedGeodesic> out;
    std::vector<std::array<Probe, 3>> probes;
    for (const Candidate& c : cands) {
        if (c.length > cutoff) continue;
        UnfoldedGeodesic g;
        g.source = x;
        g.target = y;
        g.length = c.length;
        g.src_image = c.simg;
        g.dst_image = c.timg;
        if (c.node < 0) {
            g.faces = {c.face};
            g.placements = {Rigid2{}};
        } else {
            std::vector<int> chain;
            for (int p = c.node; p >= 0; p = pool[p].parent) chain.push_back(p);
            std::reverse(chain.begin(), chain.end());
            g.faces.push_back(pool[chain.front()].prev_face);
            g.placements.push_back(Rigid2{});
            Vec2 D = c.timg - c.simg;
            for (int p : chain) {
                const SearchNode& sn = pool[p];
                g.faces.push_back(sn.face);
                g.placements.push_back(sn.T);
                g.crossed_edges.push_back(sn.entry);
                Vec2 Ea = edge_image(P, sn.face, sn.T, P.edges[sn.entry].a);
                Vec2 Eb = edge_image(P, sn.face, sn.T, P.edges[sn.entry].b);
                double denom = cross(D, Eb - Ea);
                double t = std::abs(denom) < 1e-300 ? 0.5 : -cross(D, Ea - c.simg) / denom;
                g.cross_t.push_back(clamp01(t));
            }
        }
        std::vector<Vec3> poly = geodesic_polyline(P, g);
        std::array<Probe, 3> probe;
        {
            double frac[3] = {0.25, 0.5, 0.75};
            for (int k = 0; k < 3; ++k) {
                auto [p, seg] = polyline_at(poly, frac[k]);
                probe[k] = {p, g.faces[std::min(seg, int(g.faces.size()) - 1)]};
            }
        }
        // Duplicate iff all probes coincide and lie on the same face, or on an
        // edge shared by the two faces (two views of an edge-running geodesic).
        // Mirror geodesics on doubly covered polygons coincide in 3D but run on
        // different covers and stay distinct.
        bool dup = false;
        for (size_t i = 0; i < out.size() && !dup; ++i) {
            if (std::abs(out[i].length - g.length) > 10 * tol.tol_len) continue;
            bool close = true;
            for (int k = 0; k < 3 && close; ++k) {
                if (dist(probes[i][k].p, probe[k].p) > 10 * tol.tol_len) close = false;
                else if (probes[i][k].face != probe[k].face) {
                    bool shared = false;
                    for (const auto& pe : P.edges)
                        if (((pe.face_ab == probe[k].face && pe.face_ba == probes[i][k].face) ||
                             (pe.face_ba == probe[k].face && pe.face_ab == probes[i][k].face)) &&
                            point_segment_dist(probe[k].p, P.vertices[pe.a], P.vertices[pe.b]) <=
                                10 * tol.tol_len)
                            shared = true;
                    if (!shared) close = false;
                }
            }
            dup = close;
        }
        if (dup) continue;
        out.push_back(std::move(g));
        probes.push_back(probe);
    }
    std::sort(out.begin(), out.end(),
              [](const UnfoldedGeodesic& a, const UnfoldedGeodesic& b) {
                  return a.length < b.length ||
                         (a.length == b.length && a.crossed_edges < b.crossed_edges);
              });
    return out;
}

double geodesic_distance(const Polyhedron& P, const SurfacePoint& x, const SurfacePoint& y,
                         const GeodesicParams& params) {
    return shortest_geodesics(P, x, y, params).front().length;
}

namespace {

ApproxDistances approx_graph_impl(const Polyhedron& P, const std::vector<SurfacePoint>& extra,
                                  int subdivisions) {
    if (subdivisions < 1) throw DegenerateInput("subdivisions must be >= 1");
    int nv = int(P.vertices.size()), ne = int(P.edges.size());
    int per_edge = subdivisions - 1;
    ApproxDistances R;
    for (int v = 0; v < nv; ++v) R.nodes.push_back(vertex_point(v));
    for (int e = 0; e < ne; ++e)
        for (int k = 1; k <= per_edge; ++k) {
            SurfacePoint sp;
            sp.kind = SurfacePoint::Kind::Edge;
            sp.index = e;
            sp.t = double(k) / subdivisions;
            R.nodes.push_back(sp);
        }
    for (const SurfacePoint& sp : extra) R.nodes.push_back(sp);

    std::vector<Vec3> pos;
    pos.reserve(R.nodes.size());
    for (const SurfacePoint& sp : R.nodes) pos.push_back(surface_position(P, sp));

    // Per-face node lists; chords between nodes sharing a face stay on the surface.
    std::vector<std::vector<int>> face_nodes(P.faces.size());
    for (size_t f = 0; f < P.faces.size(); ++f) {
        const std::vector<int>& cyc = P.faces[f];
        for (int v : cyc) face_nodes[f].push_back(v);
        int m = int(cyc.size());
        for (int i = 0; i < m; ++i) {
            int e = P.edge_index(cyc[i], cyc[(i + 1) % m]);
            for (int k = 0; k < per_edge; ++k) face_nodes[f].push_back(nv + e * per_edge + k);
        }
    }
    for (size_t i = 0; i < extra.size(); ++i) {
        int id = nv + ne * per_edge + int(i);
        for (int f : containing_faces(P, R.nodes[id])) face_nodes[f].push_back(id);
    }

    std::vector<std::vector<std::pair<int, double>>> adj(R.nodes.size());
    for (const std::vector<int>& fn : face_nodes)
        for (size_t i = 0; i < fn.size(); ++i)
            for (size_t j = i + 1; j < fn.size(); ++j) {
                double d = dist(pos[fn[i]], pos[fn[j]]);
                adj[fn[i]].push_back({fn[j], d});
                adj[fn[j]].push_back({fn[i], d});
            }

    int src = nv + ne * per_edge;  // first extra point (the source x)
    R.dist.assign(R.nodes.size(), kInf);
    R.dist[src] = 0;
    using QE = std::pair<double, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    pq.push({0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > R.dist[u]) continue;
        for (auto [v, w] : adj[u])
            if (d + w < R.dist[v]) {
                R.dist[v] = d + w;
                pq.push({d + w, v});
            }
    }
    return R;
}

}  // namespace

ApproxDistances approx_distance_graph(const Polyhedron& P, const SurfacePoint& x,
                                      int subdivisions) {
    return approx_graph_impl(P, {x}, subdivisions);
}

double approx_distance(const Polyhedron& P, const SurfacePoint& x, const SurfacePoint& y,
                       int subdivisions) {
    ApproxDistances R = approx_graph_impl(P, {x, y}, subdivisions);
    return R.dist.back();
}

}  // namespace skelocut
