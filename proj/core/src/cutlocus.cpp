#include "skelocut/cutlocus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace skelocut {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double polygon_area(const std::vector<Vec2>& p) {
    double a = 0;
    for (size_t i = 0; i < p.size(); ++i) a += cross(p[i], p[(i + 1) % p.size()]);
    return a / 2;
}

// ---------------------------------------------------------------------------
// Planar subdivision of a convex polygon by non-crossing chords (chords may
// share endpoints, e.g. a pencil of cuts through the source). Returns the
// bounded cells, CCW.
// ---------------------------------------------------------------------------
std::vector<std::vector<Vec2>> split_polygon(const std::vector<Vec2>& poly,
                                             const std::vector<std::pair<Vec2, Vec2>>& chords,
                                             double eps) {
    std::vector<Vec2> nodes;
    auto add_node = [&](const Vec2& p) -> int {
        for (size_t i = 0; i < nodes.size(); ++i)
            if (dist(nodes[i], p) <= eps) return int(i);
        nodes.push_back(p);
        return int(nodes.size()) - 1;
    };
    for (const Vec2& p : poly) add_node(p);
    for (const auto& c : chords) {
        add_node(c.first);
        add_node(c.second);
    }

    std::set<std::pair<int, int>> segs;
    auto add_split_seg = [&](const Vec2& a, const Vec2& b) {
        int ia = add_node(a), ib = add_node(b);
        if (ia == ib) return;
        std::vector<std::pair<double, int>> on;
        for (size_t i = 0; i < nodes.size(); ++i)
            if (point_segment_dist(nodes[i], nodes[ia], nodes[ib]) <= eps)
                on.push_back({line_param(nodes[ia], nodes[ib], nodes[i]), int(i)});
        std::sort(on.begin(), on.end());
        for (size_t i = 1; i < on.size(); ++i) {
            int u = on[i - 1].second, v = on[i].second;
            if (u != v) segs.insert({std::min(u, v), std::max(u, v)});
        }
    };
    size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) add_split_seg(poly[i], poly[(i + 1) % m]);
    for (const auto& c : chords) add_split_seg(c.first, c.second);

    // Directed half-edge face walk: next(u->v) is the outgoing edge at v that
    // is the clockwise successor of v->u; bounded cells come out CCW.
    struct Out {
        double ang;
        int to;
    };
    std::vector<std::vector<Out>> out(nodes.size());
    for (auto [u, v] : segs) {
        out[u].push_back({std::atan2(nodes[v].y - nodes[u].y, nodes[v].x - nodes[u].x), v});
        out[v].push_back({std::atan2(nodes[u].y - nodes[v].y, nodes[u].x - nodes[v].x), u});
    }
    for (auto& o : out)
        std::sort(o.begin(), o.end(), [](const Out& a, const Out& b) { return a.ang < b.ang; });

    std::set<std::pair<int, int>> used;  // directed
    std::vector<std::vector<Vec2>> cells;
    for (auto [su, sv] : segs) {
        for (auto [u0, v0] : {std::pair{su, sv}, std::pair{sv, su}}) {
            if (used.count({u0, v0})) continue;
            std::vector<int> cyc;
            int u = u0, v = v0;
            size_t guard = 0;
            do {
                used.insert({u, v});
                cyc.push_back(u);
                // find v->u among v's outgoing, take the previous (clockwise next)
                const auto& ov = out[v];
                int k = -1;
                for (size_t i = 0; i < ov.size(); ++i)
                    if (ov[i].to == u) k = int(i);
                if (k < 0) throw BadTopology("inconsistent planar subdivision");
                int k2 = (k - 1 + int(ov.size())) % int(ov.size());
                u = v;
                v = ov[k2].to;
                if (++guard > 4 * segs.size() + 8) throw BadTopology("face walk did not close");
            } while (!(u == u0 && v == v0));
            std::vector<Vec2> cell;
            for (int id : cyc) cell.push_back(nodes[id]);
            if (polygon_area(cell) > eps * eps) cells.push_back(std::move(cell));
        }
    }
    return cells;
}

// ---------------------------------------------------------------------------
// Development of the surface cut along given segments: subdivide each face by
// its chords, glue cells across uncut edge fragments, and BFS-place the cells
// isometrically in one plane. Valid whenever the cut set touches every vertex
// (no interior cone points), which holds for star and source unfoldings.
// ---------------------------------------------------------------------------
struct DevPatch {
    int face;
    std::vector<Vec2> poly;  // chart coords, CCW
    Rigid2 place;
    bool placed = false;
};
struct DevFragment {
    int patch, edge;  // poly[edge] -> poly[edge+1]
    Vec3 a3, b3, mid;
    bool cut = false;
    int pedge = -1;  // polyhedron edge carrying it, if any
    int mate = -1;
};
struct Development {
    std::vector<DevPatch> patches;
    std::vector<DevFragment> frags;
};

Development develop_cut(const Polyhedron& P,
                        const std::vector<std::vector<std::pair<Vec2, Vec2>>>& chords,
                        const std::vector<std::pair<Vec3, Vec3>>& cuts3d, int start_face,
                        const Vec2& start_pt, double eps) {
    Development D;
    for (size_t f = 0; f < P.faces.size(); ++f) {
        for (auto& cell : split_polygon(P.charts[f].pts, chords[f], eps)) {
            DevPatch p;
            p.face = int(f);
            p.poly = std::move(cell);
            D.patches.push_back(std::move(p));
        }
    }

    for (size_t pi = 0; pi < D.patches.size(); ++pi) {
        const DevPatch& p = D.patches[pi];
        size_t m = p.poly.size();
        for (size_t i = 0; i < m; ++i) {
            DevFragment fr;
            fr.patch = int(pi);
            fr.edge = int(i);
            fr.a3 = P.from_chart(p.face, p.poly[i]);
            fr.b3 = P.from_chart(p.face, p.poly[(i + 1) % m]);
            fr.mid = (fr.a3 + fr.b3) * 0.5;
            for (const auto& c : cuts3d)
                if (point_segment_dist(fr.a3, c.first, c.second) <= eps &&
                    point_segment_dist(fr.b3, c.first, c.second) <= eps &&
                    point_segment_dist(fr.mid, c.first, c.second) <= eps) {
                    fr.cut = true;
                    break;
                }
            for (size_t e = 0; e < P.edges.size(); ++e) {
                const Vec3& ea = P.vertices[P.edges[e].a];
                const Vec3& eb = P.vertices[P.edges[e].b];
                if (point_segment_dist(fr.a3, ea, eb) <= eps &&
                    point_segment_dist(fr.b3, ea, eb) <= eps) {
                    fr.pedge = int(e);
                    break;
                }
            }
            D.frags.push_back(fr);
        }
    }

    // Pair fragments: same 3D midpoint; cut pairs prefer the same face (both
    // sides of a chord on one cover of a doubly covered polygon), glued pairs
    // must join different faces across the shared polyhedron edge.
    auto key = [&](const Vec3& v) {
        double q = eps * 4;
        return std::tuple<long long, long long, long long>(llround(v.x / q), llround(v.y / q),
                                                           llround(v.z / q));
    };
    std::map<std::tuple<long long, long long, long long>, std::vector<int>> groups;
    for (size_t i = 0; i < D.frags.size(); ++i) groups[key(D.frags[i].mid)].push_back(int(i));
    auto mates = [&](int i) -> std::vector<int> {
        std::vector<int> cand;
        for (auto d : {-1, 0, 1})
            for (auto dy : {-1, 0, 1})
                for (auto dz : {-1, 0, 1}) {
                    auto [kx, ky, kz] = key(D.frags[i].mid);
                    auto it = groups.find({kx + d, ky + dy, kz + dz});
                    if (it == groups.end()) continue;
                    for (int j : it->second)
                        if (j != i && dist(D.frags[j].mid, D.frags[i].mid) <= 2 * eps &&
                            D.frags[j].cut == D.frags[i].cut)
                            cand.push_back(j);
                }
        return cand;
    };
    for (size_t i = 0; i < D.frags.size(); ++i) {
        DevFragment& fr = D.frags[int(i)];
        if (fr.mate >= 0) continue;
        std::vector<int> cand = mates(int(i));
        int pick = -1;
        for (int j : cand) {
            if (D.frags[j].mate >= 0) continue;
            bool same_face = D.patches[D.frags[j].patch].face == D.patches[fr.patch].face;
            if (fr.cut) {
                if (same_face) {
                    pick = j;
                    break;
                }
                if (pick < 0) pick = j;
            } else {
                if (!same_face) {
                    pick = j;
                    break;
                }
            }
        }
        if (pick >= 0) {
            fr.mate = pick;
            D.frags[pick].mate = int(i);
        } else if (!fr.cut && fr.pedge >= 0) {
            throw BadTopology("unmatched glued fragment in development");
        }
    }

    // BFS placement.
    int start = -1;
    if (start_face >= 0) {
        double best = -kInf;
        for (size_t pi = 0; pi < D.patches.size(); ++pi) {
            const DevPatch& p = D.patches[pi];
            if (p.face != start_face) continue;
            double worst = kInf;
            size_t m = p.poly.size();
            for (size_t i = 0; i < m; ++i) {
                Vec2 a = p.poly[i], b = p.poly[(i + 1) % m];
                double len = dist(a, b);
                if (len < eps) continue;
                worst = std::min(worst, cross(b - a, start_pt - a) / len);
            }
            if (worst > best) {
                best = worst;
                start = int(pi);
            }
        }
    }
    if (start < 0) start = 0;
    D.patches[start].place = Rigid2{};
    D.patches[start].placed = true;
    std::queue<int> bfs;
    bfs.push(start);
    // per-patch fragment offsets
    std::vector<int> first_frag(D.patches.size() + 1, 0);
    for (const DevFragment& fr : D.frags) first_frag[fr.patch + 1]++;
    for (size_t i = 1; i < first_frag.size(); ++i) first_frag[i] += first_frag[i - 1];

    while (!bfs.empty()) {
        int pi = bfs.front();
        bfs.pop();
        const DevPatch& p = D.patches[pi];
        for (int fi = first_frag[pi]; fi < first_frag[pi + 1]; ++fi) {
            const DevFragment& fr = D.frags[fi];
            if (fr.cut || fr.mate < 0) continue;
            int qi = D.frags[fr.mate].patch;
            if (D.patches[qi].placed) continue;
            DevPatch& q = D.patches[qi];
            if (q.face == p.face) throw BadTopology("glued fragment within one face");
            q.place = p.place * P.transfer(fr.pedge, q.face, p.face);
            q.placed = true;
            bfs.push(qi);
        }
    }
    for (const DevPatch& p : D.patches)
        if (!p.placed) throw BadTopology("cut disconnects the surface; development incomplete");
    return D;
}

// Chord lists per face for a set of 3D cut polylines; segments running along a
// polyhedron edge are registered on both adjacent faces so the subdivisions of
// the two faces split at the same points.
struct CutInput {
    std::vector<std::vector<std::pair<Vec2, Vec2>>> chords;
    std::vector<std::pair<Vec3, Vec3>> cuts3d;
};

void add_cut_segment(const Polyhedron& P, CutInput& in, int face, const Vec3& a, const Vec3& b,
                     double eps) {
    if (dist(a, b) <= eps) return;
    in.cuts3d.push_back({a, b});
    in.chords[face].push_back({P.to_chart(face, a), P.to_chart(face, b)});
    for (size_t e = 0; e < P.edges.size(); ++e) {
        const Vec3& ea = P.vertices[P.edges[e].a];
        const Vec3& eb = P.vertices[P.edges[e].b];
        if (point_segment_dist(a, ea, eb) <= eps && point_segment_dist(b, ea, eb) <= eps) {
            int g = P.other_face(int(e), face);
            in.chords[g].push_back({P.to_chart(g, a), P.to_chart(g, b)});
            break;
        }
    }
}

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) {
        for (int i = 0; i < n; ++i) up[i] = i;
    }
    int find(int i) { return up[i] == i ? i : up[i] = find(up[i]); }
    void unite(int a, int b) { up[find(a)] = find(b); }
};

}  // namespace

int CutLocus::node_at_vertex(int v) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].vertex == v) return int(i);
    return -1;
}

CutLocus cut_locus(const Polyhedron& P, const SurfacePoint& x, const GeodesicParams& params) {
    const double eps = 10 * params.tol.tol_len;
    const double snap = std::max(100 * params.tol.tol_len, 1e-7);

    // One shortest geodesic per vertex (ties broken by smallest crossing
    // sequence; any choice yields the same cut locus).
    std::vector<UnfoldedGeodesic> star;
    for (size_t v = 0; v < P.vertices.size(); ++v) {
        if (x.is_vertex() && x.index == int(v)) continue;
        auto gs = shortest_geodesics(P, x, vertex_point(int(v)), params);
        int pick = 0;
        for (size_t i = 1; i < gs.size(); ++i)
            if (gs[i].crossed_edges < gs[pick].crossed_edges) pick = int(i);
        star.push_back(gs[pick]);
    }

    CutInput in;
    in.chords.resize(P.faces.size());
    for (const UnfoldedGeodesic& g : star) {
        std::vector<Vec3> poly = geodesic_polyline(P, g);
        for (size_t i = 0; i < g.faces.size(); ++i)
            add_cut_segment(P, in, g.faces[i], poly[i], poly[i + 1], eps);
    }

    Development D = develop_cut(P, in.chords, in.cuts3d, -1, {}, eps);

    // Source images: the cut pencil splits x into one image per sector.
    std::vector<int> xfaces = containing_faces(P, x);
    std::vector<Vec2> ximg;
    for (const DevPatch& p : D.patches) {
        if (std::find(xfaces.begin(), xfaces.end(), p.face) == xfaces.end()) continue;
        Vec2 cx = surface_chart_coords(P, x, p.face);
        for (const Vec2& q : p.poly)
            if (dist(q, cx) <= snap) {
                Vec2 img = p.place(q);
                bool dup = false;
                for (const Vec2& o : ximg)
                    if (dist(o, img) <= snap) dup = true;
                if (!dup) ximg.push_back(img);
            }
    }
    if (ximg.empty()) throw GeometryError("no source image found in star unfolding");

    // Voronoi edges of the source images, clipped to each placed cell.
    struct RawSeg {
        Vec3 a3, b3;
        Vec2 a2, b2;  // plane coordinates
        int face;
    };
    std::vector<RawSeg> raw;
    int n = int(ximg.size());
    for (const DevPatch& p : D.patches) {
        std::vector<Vec2> Q;
        for (const Vec2& q : p.poly) Q.push_back(p.place(q));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Vec2 xi = ximg[i], xj = ximg[j];
                if (dist(xi, xj) <= snap) continue;
                Vec2 p0 = (xi + xj) * 0.5;
                Vec2 d = normalized(perp(xj - xi));
                double t0 = -kInf, t1 = kInf;
                // keep c + m0 * t <= 0; `scale` is the magnitude of the
                // constraint's normal, so c/scale is a distance. A constraint
                // (near-)parallel to the bisector would otherwise clip at the
                // garbage parameter -c/m0 computed from rounding noise.
                auto clip_le = [&](double c, double m0, double scale) {
                    if (std::abs(m0) <= 1e-9 * scale) {
                        if (c > eps * scale) t0 = 1, t1 = 0;
                        return;
                    }
                    double r = -c / m0;
                    if (m0 > 0)
                        t1 = std::min(t1, r);
                    else
                        t0 = std::max(t0, r);
                };
                size_t m = Q.size();
                bool dead = false;
                for (size_t k = 0; k < m && !dead; ++k) {
                    Vec2 qa = Q[k], qb = Q[(k + 1) % m];
                    // inside: cross(qb-qa, p - qa) >= 0  ->  -that <= 0
                    clip_le(-cross(qb - qa, p0 - qa), -cross(qb - qa, d), norm(qb - qa));
                    if (t0 > t1) dead = true;
                }
                for (int k = 0; k < n && !dead; ++k) {
                    if (k == i || k == j) continue;
                    // |p-xi|^2 <= |p-xk|^2  ->  2 p.(xk-xi) <= |xk|^2-|xi|^2
                    Vec2 w = ximg[k] - xi;
                    double rhs = (dot(ximg[k], ximg[k]) - dot(xi, xi)) / 2;
                    clip_le(dot(p0, w) - rhs, dot(d, w), norm(w));
                    if (t0 > t1) dead = true;
                }
                if (dead || t1 - t0 <= eps) continue;
                RawSeg rs;
                rs.a2 = p0 + d * t0;
                rs.b2 = p0 + d * t1;
                Rigid2 inv = p.place.inverse();
                rs.a3 = P.from_chart(p.face, inv(rs.a2));
                rs.b3 = P.from_chart(p.face, inv(rs.b2));
                rs.face = p.face;
                raw.push_back(rs);
            }
    }

    // A bisector along a glued cell boundary is produced by both sides, and
    // the two sides may be subdivided differently; merge collinear overlapping
    // segments into their union.
    std::vector<RawSeg> segs = raw;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < segs.size() && !changed; ++i)
            for (size_t j = i + 1; j < segs.size() && !changed; ++j) {
                Vec3 d = segs[i].b3 - segs[i].a3;
                double len = norm(d);
                if (len <= snap) continue;
                Vec3 u = d / len;
                auto off_line = [&](const Vec3& p) {
                    Vec3 w = p - segs[i].a3;
                    return norm(w - u * dot(w, u));
                };
                if (off_line(segs[j].a3) > snap || off_line(segs[j].b3) > snap) continue;
                double ta = dot(segs[j].a3 - segs[i].a3, u);
                double tb = dot(segs[j].b3 - segs[i].a3, u);
                double jlo = std::min(ta, tb), jhi = std::max(ta, tb);
                if (std::min(len, jhi) - std::max(0.0, jlo) <= snap) continue;  // no overlap
                // union: pick extreme endpoints among the four, keeping their
                // own plane coordinates
                struct End {
                    double t;
                    Vec3 p3;
                    Vec2 p2;
                };
                End ends[4] = {{0, segs[i].a3, segs[i].a2},
                               {len, segs[i].b3, segs[i].b2},
                               {ta, segs[j].a3, segs[j].a2},
                               {tb, segs[j].b3, segs[j].b2}};
                End lo = ends[0], hi = ends[0];
                for (const End& e2 : ends) {
                    if (e2.t < lo.t) lo = e2;
                    if (e2.t > hi.t) hi = e2;
                }
                segs[i].a3 = lo.p3;
                segs[i].a2 = lo.p2;
                segs[i].b3 = hi.p3;
                segs[i].b2 = hi.p2;
                segs.erase(segs.begin() + j);
                changed = true;
            }
    }

    // Graph assembly: snap endpoints, contract non-vertex degree-2 joints.
    std::vector<Vec3> pts;
    std::vector<Vec2> pts2;
    auto add_pt = [&](const Vec3& p, const Vec2& p2) -> int {
        for (size_t i = 0; i < pts.size(); ++i)
            if (dist(pts[i], p) <= snap) return int(i);
        pts.push_back(p);
        pts2.push_back(p2);
        return int(pts.size()) - 1;
    };
    struct GEdge {
        int a, b, face;
    };
    std::vector<GEdge> ge;
    for (const RawSeg& r : segs) {
        int a = add_pt(r.a3, r.a2), b = add_pt(r.b3, r.b2);
        if (a != b) ge.push_back({a, b, r.face});
    }
    std::vector<std::vector<int>> inc(pts.size());
    for (size_t i = 0; i < ge.size(); ++i) {
        inc[ge[i].a].push_back(int(i));
        inc[ge[i].b].push_back(int(i));
    }
    std::vector<int> at_vertex(pts.size(), -1);
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t v = 0; v < P.vertices.size(); ++v)
            if (dist(pts[i], P.vertices[v]) <= snap) at_vertex[i] = int(v);

    CutLocus CL;
    CL.source = x;
    std::vector<int> node_of(pts.size(), -1);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (at_vertex[i] >= 0 || inc[i].size() != 2) {
            CutLocus::Node nd;
            nd.pos = pts[i];
            nd.vertex = at_vertex[i];
            nd.degree = int(inc[i].size());
            int face = ge[inc[i].front()].face;
            nd.point = at_vertex[i] >= 0 ? vertex_point(at_vertex[i])
                                         : face_point_3d(P, face, pts[i], params.tol);
            // multiplicity: distinct source images at minimum distance; the cut
            // geodesic of a vertex node is seen from both of its flanking images
            double mind = kInf;
            for (const Vec2& s : ximg) mind = std::min(mind, dist(pts2[i], s));
            int cnt = 0;
            for (const Vec2& s : ximg)
                if (dist(pts2[i], s) <= mind + std::max(10 * params.tol.tol_len,
                                                        mind * params.tie_rel))
                    ++cnt;
            nd.num_geodesics = at_vertex[i] >= 0 ? cnt - 1 : cnt;
            node_of[i] = int(CL.nodes.size());
            CL.nodes.push_back(nd);
        }
    }

    // Walk chains between kept nodes.
    std::vector<char> used(ge.size(), 0);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (node_of[i] < 0) continue;
        for (int ei : inc[i]) {
            if (used[ei]) continue;
            CutLocus::Arc arc;
            arc.a = node_of[i];
            arc.polyline.push_back(pts[i]);
            int cur = int(i), e = ei;
            size_t guard = 0;
            while (true) {
                used[e] = 1;
                int nxt = ge[e].a == cur ? ge[e].b : ge[e].a;
                arc.polyline.push_back(pts[nxt]);
                arc.faces.push_back(ge[e].face);
                arc.length += dist(pts[cur], pts[nxt]);
                cur = nxt;
                if (node_of[cur] >= 0) break;
                int e2 = inc[cur][0] == e ? inc[cur][1] : inc[cur][0];
                e = e2;
                if (++guard > ge.size() + 2) throw BadTopology("cycle in cut locus graph");
            }
            arc.b = node_of[cur];
            arc.on_skeleton = true;
            for (size_t s = 0; s + 1 < arc.polyline.size(); ++s) {
                Vec3 a = arc.polyline[s], b = arc.polyline[s + 1];
                Vec3 mid = (a + b) * 0.5;
                bool on = false;
                for (const auto& pe : P.edges) {
                    const Vec3& ea = P.vertices[pe.a];
                    const Vec3& eb = P.vertices[pe.b];
                    if (point_segment_dist(a, ea, eb) <= snap &&
                        point_segment_dist(b, ea, eb) <= snap &&
                        point_segment_dist(mid, ea, eb) <= snap) {
                        on = true;
                        break;
                    }
                }
                if (!on) arc.on_skeleton = false;
            }
            CL.arcs.push_back(std::move(arc));
        }
    }
    return CL;
}

Net source_unfolding(const Polyhedron& P, const SurfacePoint& x, const GeodesicParams& params) {
    const double eps = 10 * params.tol.tol_len;
    CutLocus CL = cut_locus(P, x, params);

    CutInput in;
    in.chords.resize(P.faces.size());
    for (const CutLocus::Arc& a : CL.arcs)
        for (size_t i = 0; i + 1 < a.polyline.size(); ++i)
            add_cut_segment(P, in, a.faces[i], a.polyline[i], a.polyline[i + 1], eps);

    int xface = containing_faces(P, x).front();
    Vec2 cx = surface_chart_coords(P, x, xface);
    Development D = develop_cut(P, in.chords, in.cuts3d, xface, cx, eps);

    Net N;
    std::vector<int> first_frag(D.patches.size() + 1, 0);
    for (const DevFragment& fr : D.frags) first_frag[fr.patch + 1]++;
    for (size_t i = 1; i < first_frag.size(); ++i) first_frag[i] += first_frag[i - 1];

    for (const DevPatch& p : D.patches) {
        Net::Piece piece;
        piece.face = p.face;
        for (const Vec2& q : p.poly) piece.polygon.push_back(p.place(q));
        N.pieces.push_back(std::move(piece));
    }
    for (size_t i = 0; i < D.frags.size(); ++i) {
        const DevFragment& fr = D.frags[i];
        if (!fr.cut || fr.mate < 0 || int(i) > fr.mate) continue;
        const DevFragment& mt = D.frags[fr.mate];
        N.gluings.push_back({fr.patch, fr.edge, mt.patch, mt.edge});
    }
    // place x: find its (placed) patch in the start face
    for (const DevPatch& p : D.patches) {
        if (p.face != xface) continue;
        size_t m = p.poly.size();
        double worst = kInf;
        for (size_t k = 0; k < m; ++k) {
            Vec2 a = p.poly[k], b = p.poly[(k + 1) % m];
            double len = dist(a, b);
            if (len < eps) continue;
            worst = std::min(worst, cross(b - a, cx - a) / len);
        }
        if (worst >= -eps) {
            N.source_image = p.place(cx);
            break;
        }
    }
    return N;
}

double Net::area() const {
    double a = 0;
    for (const Piece& p : pieces) a += polygon_area(p.polygon);
    return a;
}

VerificationReport verify_skeletal(const Polyhedron& P, const SurfacePoint& x,
                                   const std::vector<int>& claimed_edges,
                                   const GeodesicParams& params) {
    VerificationReport R;
    const double eps = 10 * params.tol.tol_len;
    const double match = std::max(100 * params.tol.tol_len, 1e-7);

    // Precondition: claimed edges form a tree spanning all vertices (minus a
    // vertex source).
    int nv = int(P.vertices.size());
    std::vector<char> spanned(nv, 0);
    UnionFind uf(nv);
    bool ok = true;
    for (int e : claimed_edges) {
        if (e < 0 || e >= int(P.edges.size())) {
            ok = false;
            break;
        }
        int a = P.edges[e].a, b = P.edges[e].b;
        if (x.is_vertex() && (a == x.index || b == x.index)) ok = false;
        if (uf.find(a) == uf.find(b)) ok = false;  // cycle
        uf.unite(a, b);
        spanned[a] = spanned[b] = 1;
    }
    int expect = x.is_vertex() ? nv - 1 : nv;
    if (int(claimed_edges.size()) != expect - 1) ok = false;
    for (int v = 0; v < nv && ok; ++v) {
        if (x.is_vertex() && v == x.index) continue;
        if (!spanned[v] && expect > 1) ok = false;
    }
    R.spanning_precondition = ok;
    if (!ok) {
        R.failures.push_back("claimed edges are not a spanning tree of the vertices");
        return R;
    }

    // Cut the claimed tree and develop.
    CutInput in;
    in.chords.resize(P.faces.size());
    for (int e : claimed_edges) {
        const Vec3& a = P.vertices[P.edges[e].a];
        const Vec3& b = P.vertices[P.edges[e].b];
        add_cut_segment(P, in, P.edges[e].face_ab, a, b, eps);
    }
    int xface = containing_faces(P, x).front();
    Vec2 cx = surface_chart_coords(P, x, xface);
    Vec2 ximg;
    bool dev_ok = true;
    Development D;
    try {
        D = develop_cut(P, in.chords, in.cuts3d, xface, cx, eps);
    } catch (const GeometryError& ge) {
        dev_ok = false;
        R.failures.push_back(std::string("development failed: ") + ge.what());
    }
    if (dev_ok) {
        // source image
        for (const DevPatch& p : D.patches) {
            if (p.face != xface) continue;
            size_t m = p.poly.size();
            double worst = kInf;
            for (size_t k = 0; k < m; ++k) {
                Vec2 a = p.poly[k], b = p.poly[(k + 1) % m];
                double len = dist(a, b);
                if (len < eps) continue;
                worst = std::min(worst, cross(b - a, cx - a) / len);
            }
            if (worst >= -eps) {
                ximg = p.place(cx);
                break;
            }
        }
        // (1) simple and star-shaped about x: every cut fragment, directed with
        // the patch interior on its left, sees the source image on its left.
        bool star = true;
        for (const DevFragment& fr : D.frags) {
            if (!fr.cut) continue;
            const DevPatch& p = D.patches[fr.patch];
            Vec2 a = p.place(p.poly[fr.edge]);
            Vec2 b = p.place(p.poly[(fr.edge + 1) % p.poly.size()]);
            double len = dist(a, b);
            if (len < eps) continue;
            if (cross(b - a, ximg - a) < -match * len) star = false;
        }
        // simplicity: placed pieces have pairwise disjoint interiors
        std::vector<std::vector<Vec2>> placed;
        for (const DevPatch& p : D.patches) {
            std::vector<Vec2> q;
            for (const Vec2& c : p.poly) q.push_back(p.place(c));
            placed.push_back(std::move(q));
        }
        auto overlap = [&](const std::vector<Vec2>& A, const std::vector<Vec2>& B) {
            // separating-axis test for convex CCW polygons, tolerant to touching
            auto axes_separate = [&](const std::vector<Vec2>& U, const std::vector<Vec2>& V) {
                for (size_t i = 0; i < U.size(); ++i) {
                    Vec2 a = U[i], b = U[(i + 1) % U.size()];
                    Vec2 nvec = perp(b - a);
                    double ln = norm(nvec);
                    if (ln < 1e-300) continue;
                    nvec = nvec / ln;
                    double minU = kInf, maxU = -kInf, minV = kInf, maxV = -kInf;
                    for (const Vec2& u : U) {
                        double d = dot(nvec, u);
                        minU = std::min(minU, d);
                        maxU = std::max(maxU, d);
                    }
                    for (const Vec2& v : V) {
                        double d = dot(nvec, v);
                        minV = std::min(minV, d);
                        maxV = std::max(maxV, d);
                    }
                    if (maxU <= minV + match || maxV <= minU + match) return true;
                }
                return false;
            };
            return !axes_separate(A, B) && !axes_separate(B, A);
        };
        bool simple = true;
        for (size_t i = 0; i < placed.size() && simple; ++i)
            for (size_t j = i + 1; j < placed.size() && simple; ++j)
                if (overlap(placed[i], placed[j])) simple = false;
        R.simple_and_star_shaped = simple && star;
        if (!simple) R.failures.push_back("development overlaps itself");
        if (!star) R.failures.push_back("development is not star-shaped about the source image");

        // (2) paired cut fragments pointwise equidistant from the source image.
        bool equi = true;
        for (size_t i = 0; i < D.frags.size(); ++i) {
            const DevFragment& fr = D.frags[i];
            if (!fr.cut || fr.mate < 0 || int(i) > fr.mate) continue;
            const DevFragment& mt = D.frags[fr.mate];
            const DevPatch& p = D.patches[fr.patch];
            const DevPatch& q = D.patches[mt.patch];
            Vec2 a0 = p.place(p.poly[fr.edge]);
            Vec2 a1 = p.place(p.poly[(fr.edge + 1) % p.poly.size()]);
            Vec2 b0 = q.place(q.poly[mt.edge]);
            Vec2 b1 = q.place(q.poly[(mt.edge + 1) % q.poly.size()]);
            if (dist(fr.a3, mt.a3) > dist(fr.a3, mt.b3)) std::swap(b0, b1);
            for (double t : {0.0, 0.5, 1.0}) {
                Vec2 pa = a0 * (1 - t) + a1 * t, pb = b0 * (1 - t) + b1 * t;
                if (std::abs(dist(pa, ximg) - dist(pb, ximg)) > match) equi = false;
            }
        }
        R.boundary_equidistant = equi;
        if (!equi) R.failures.push_back("paired boundary fragments not equidistant from source");
    }

    // (3) bisection at every tree node: at each vertex, edge directions and
    // arriving geodesic directions alternate around the cone, and each tree
    // edge bisects the angle between its flanking geodesics.
    bool bis = true;
    std::vector<std::vector<int>> at(nv);
    for (int e : claimed_edges) {
        at[P.edges[e].a].push_back(e);
        at[P.edges[e].b].push_back(e);
    }
    for (int v = 0; v < nv && bis; ++v) {
        if (at[v].empty()) continue;
        std::vector<double> edge_ang, geo_ang;
        for (int e : at[v]) {
            int w = P.edges[e].a == v ? P.edges[e].b : P.edges[e].a;
            int f = P.edges[e].face_ab;
            Vec2 dir = P.chart_vertex(f, w) - P.chart_vertex(f, v);
            edge_ang.push_back(fan_angle(P, v, f, dir));
        }
        std::vector<UnfoldedGeodesic> gs;
        try {
            gs = shortest_geodesics(P, x, vertex_point(v), params);
        } catch (const GeometryError&) {
            bis = false;
            R.failures.push_back("geodesic computation failed at node " + std::to_string(v));
            break;
        }
        if (gs.size() != at[v].size()) {
            bis = false;
            R.failures.push_back("node " + std::to_string(v) + " has " +
                                 std::to_string(gs.size()) + " geodesics but degree " +
                                 std::to_string(at[v].size()));
            break;
        }
        for (const UnfoldedGeodesic& g : gs) {
            std::vector<Vec3> poly = geodesic_polyline(P, g);
            int f = g.faces.back();
            Vec2 pv = P.to_chart(f, poly[poly.size() - 1]);
            Vec2 pu = P.to_chart(f, poly[poly.size() - 2]);
            geo_ang.push_back(fan_angle(P, v, f, pu - pv));
        }
        double total = P.vertex_total_angle(v);
        std::vector<std::pair<double, int>> ring;  // angle, type 0=edge 1=geodesic
        for (double a : edge_ang) ring.push_back({a, 0});
        for (double a : geo_ang) ring.push_back({a, 1});
        std::sort(ring.begin(), ring.end());
        int m = int(ring.size());
        for (int i = 0; i < m; ++i)
            if (ring[i].second == ring[(i + 1) % m].second) bis = false;
        if (!bis) {
            R.failures.push_back("directions do not alternate at node " + std::to_string(v));
            break;
        }
        for (int i = 0; i < m; ++i) {
            if (ring[i].second != 0) continue;
            double prev = ring[(i - 1 + m) % m].first;
            double next = ring[(i + 1) % m].first;
            double gap_prev = std::fmod(ring[i].first - prev + total, total);
            double gap_next = std::fmod(next - ring[i].first + total, total);
            if (std::abs(gap_prev - gap_next) > params.tol.tol_angle * 10) {
                bis = false;
                R.failures.push_back("edge does not bisect geodesic angle at node " +
                                     std::to_string(v));
            }
        }
    }
    R.bisection_at_nodes = bis;

    // (4) authoritative: the computed cut locus coincides with the claim.
    bool matches = true;
    try {
        CutLocus CL = cut_locus(P, x, params);
        std::vector<char> covered(claimed_edges.size(), 0);
        for (const CutLocus::Arc& a : CL.arcs) {
            bool found = false;
            for (size_t ci = 0; ci < claimed_edges.size() && !found; ++ci) {
                const auto& pe = P.edges[claimed_edges[ci]];
                const Vec3& ea = P.vertices[pe.a];
                const Vec3& eb = P.vertices[pe.b];
                bool on = true;
                for (const Vec3& p : a.polyline)
                    if (point_segment_dist(p, ea, eb) > match) on = false;
                if (on && ((dist(CL.nodes[a.a].pos, ea) <= match &&
                            dist(CL.nodes[a.b].pos, eb) <= match) ||
                           (dist(CL.nodes[a.a].pos, eb) <= match &&
                            dist(CL.nodes[a.b].pos, ea) <= match))) {
                    covered[ci] = 1;
                    found = true;
                }
            }
            if (!found) matches = false;
        }
        for (char c : covered)
            if (!c) matches = false;
    } catch (const GeometryError& gerr) {
        matches = false;
        R.failures.push_back(std::string("cut locus computation failed: ") + gerr.what());
    }
    R.matches_cut_locus = matches;
    if (!matches) R.failures.push_back("computed cut locus differs from claimed edges");
    return R;
}

}  // namespace skelocut
