#include "skelocut/skeletal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace skelocut {

namespace {

// Polyhedron edge of face f that the chart segment a2 -> b2 runs along, or -1.
int segment_on_face_edge(const Polyhedron& P, int f, const Vec3& a3, const Vec3& b3, double eps) {
    const std::vector<int>& cyc = P.faces[f];
    int n = int(cyc.size());
    for (int i = 0; i < n; ++i) {
        const Vec3& pa = P.vertices[cyc[i]];
        const Vec3& pb = P.vertices[cyc[(i + 1) % n]];
        if (point_segment_dist(a3, pa, pb) <= eps && point_segment_dist(b3, pa, pb) <= eps)
            return P.edge_index(cyc[i], cyc[(i + 1) % n]);
    }
    return -1;
}

}  // namespace

ExtensionRay trace_extension(const Polyhedron& P, int e, int from_vertex, int max_crossings,
                             const ToleranceConfig& tol) {
    const Polyhedron::Edge& E = P.edges[e];
    int v = from_vertex;
    int w = (E.a == v) ? E.b : E.a;
    if (E.a != v && E.b != v) throw DegenerateInput("trace_extension: vertex not on edge");
    double snap = 10 * tol.tol_len;

    // Direction bisecting the complete angle at v together with the edge.
    double theta_e = fan_angle(P, v, E.face_ab,
                               normalized(P.chart_vertex(E.face_ab, w) - P.chart_vertex(E.face_ab, v)));
    auto [face, dir] = fan_direction(P, v, theta_e + P.fans[v].total / 2);

    ExtensionRay R;
    R.edge = e;
    R.from_vertex = v;
    R.pts.push_back(P.vertices[v]);
    R.arclen.push_back(0);
    Vec2 p = P.chart_vertex(face, v);

    for (int step = 0; step < max_crossings; ++step) {
        const std::vector<int>& cyc = P.faces[face];
        const std::vector<Vec2>& c = P.charts[face].pts;
        int n = int(cyc.size());
        double best_t = -1;
        int best_i = -1;
        for (int i = 0; i < n; ++i) {
            Vec2 a = c[i], b = c[(i + 1) % n];
            double den = cross(dir, b - a);
            if (std::abs(den) < 1e-14) continue;
            double t = cross(a - p, b - a) / den;
            double s = cross(a - p, dir) / den;
            if (t <= snap || s < -1e-9 || s > 1 + 1e-9) continue;
            if (best_i < 0 || t < best_t) {
                best_t = t;
                best_i = i;
            }
        }
        if (best_i < 0) break;  // numerically stuck; return what we have
        Vec2 q = p + dir * best_t;
        Vec3 q3 = P.from_chart(face, q);
        R.faces.push_back(face);
        R.pts.push_back(q3);
        R.arclen.push_back(R.arclen.back() + best_t);
        R.along_edge.push_back(segment_on_face_edge(P, face, R.pts[R.pts.size() - 2], q3, snap));

        // Vertex hit terminates the geodesic ray.
        bool at_vertex = false;
        for (int i = 0; i < n; ++i)
            if (dist(q3, P.vertices[cyc[i]]) <= snap) at_vertex = true;
        if (at_vertex) {
            R.hit_vertex = true;
            return R;
        }
        int ec = P.edge_index(cyc[best_i], cyc[(best_i + 1) % n]);
        int f2 = P.other_face(ec, face);
        Rigid2 M = P.transfer(ec, face, f2);
        p = M(q);
        dir = M.apply_dir(dir);
        face = f2;
    }
    return R;
}

namespace {

struct Hit {
    double s1, s2;
    Vec3 p;
    int face;
};

// First mutual intersection (minimal combined arclength) of two traced rays,
// beyond their start vertices.
bool first_intersection(const Polyhedron& P, const ExtensionRay& A, const ExtensionRay& B,
                        double skip, double snap, Hit& out) {
    std::vector<Hit> hits;
    for (size_t i = 0; i < A.faces.size(); ++i) {
        for (size_t j = 0; j < B.faces.size(); ++j) {
            if (A.faces[i] != B.faces[j]) continue;
            int f = A.faces[i];
            Vec2 a0 = P.to_chart(f, A.pts[i]), a1 = P.to_chart(f, A.pts[i + 1]);
            Vec2 b0 = P.to_chart(f, B.pts[j]), b1 = P.to_chart(f, B.pts[j + 1]);
            Vec2 da = a1 - a0, db = b1 - b0;
            double den = cross(da, db);
            if (std::abs(den) < 1e-14) continue;
            double t = cross(b0 - a0, db) / den;
            double u = cross(b0 - a0, da) / den;
            if (t < -1e-9 || t > 1 + 1e-9 || u < -1e-9 || u > 1 + 1e-9) continue;
            double s1 = A.arclen[i] + t * (A.arclen[i + 1] - A.arclen[i]);
            double s2 = B.arclen[j] + u * (B.arclen[j + 1] - B.arclen[j]);
            if (s1 <= skip || s2 <= skip) continue;
            hits.push_back({s1, s2, P.from_chart(f, a0 + da * clamp01(t)), f});
        }
    }
    // Crossings exactly on a polyhedron edge appear as coinciding breakpoints.
    for (size_t i = 1; i + 1 < A.pts.size(); ++i)
        for (size_t j = 1; j + 1 < B.pts.size(); ++j)
            if (dist(A.pts[i], B.pts[j]) <= snap && A.arclen[i] > skip && B.arclen[j] > skip)
                hits.push_back({A.arclen[i], B.arclen[j], A.pts[i], A.faces[i - 1]});
    if (hits.empty()) return false;
    out = *std::min_element(hits.begin(), hits.end(),
                            [](const Hit& x, const Hit& y) { return x.s1 + x.s2 < y.s1 + y.s2; });
    return true;
}

}  // namespace

std::vector<CandidateSource> candidate_sources(const Polyhedron& P, const GeodesicParams& params) {
    if (P.degenerate) throw DegenerateInput("candidate_sources: degenerate polyhedron");
    const ToleranceConfig& tol = params.tol;
    double snap = 10 * tol.tol_len;
    int max_cross = 4 * int(P.faces.size());

    std::vector<ExtensionRay> rays;
    for (size_t e = 0; e < P.edges.size(); ++e) {
        rays.push_back(trace_extension(P, int(e), P.edges[e].a, max_cross, tol));
        rays.push_back(trace_extension(P, int(e), P.edges[e].b, max_cross, tol));
    }

    std::vector<CandidateSource> out;
    auto add = [&](const SurfacePoint& sp, int ea, int eb) {
        if (sp.is_vertex()) return;  // flat points only
        for (const CandidateSource& c : out)
            if (same_surface_point(P, c.point, sp, snap)) return;
        out.push_back({sp, ea, eb});
    };

    for (size_t i = 0; i < rays.size(); ++i)
        for (size_t j = i + 1; j < rays.size(); ++j) {
            const ExtensionRay& A = rays[i];
            const ExtensionRay& B = rays[j];
            if (A.edge == B.edge) continue;
            Hit h;
            if (first_intersection(P, A, B, snap, snap, h))
                add(face_point_3d(P, h.face, h.p, tol), A.edge, B.edge);
            // Extensions coinciding along a common polyhedron edge: every
            // interior point is a candidate; take the overlap midpoint.
            for (size_t k = 0; k < A.along_edge.size(); ++k)
                for (size_t l = 0; l < B.along_edge.size(); ++l) {
                    if (A.along_edge[k] < 0 || A.along_edge[k] != B.along_edge[l]) continue;
                    int e = A.along_edge[k];
                    const Vec3& pa = P.vertices[P.edges[e].a];
                    const Vec3& pb = P.vertices[P.edges[e].b];
                    double a0 = line_param(pa, pb, A.pts[k]), a1 = line_param(pa, pb, A.pts[k + 1]);
                    double b0 = line_param(pa, pb, B.pts[l]), b1 = line_param(pa, pb, B.pts[l + 1]);
                    double lo = std::max(std::min(a0, a1), std::min(b0, b1));
                    double hi = std::min(std::max(a0, a1), std::max(b0, b1));
                    if (hi - lo <= snap / P.edge_length(e)) continue;
                    add(edge_point(P, e, (lo + hi) / 2, tol), A.edge, B.edge);
                }
        }
    return out;
}

namespace {

// Whole polyhedron edges covered by the arcs of a cut locus.
std::vector<int> whole_edges_in(const Polyhedron& P, const CutLocus& CL,
                                const ToleranceConfig& tol) {
    double eps = std::max(100 * tol.tol_len, 1e-7);
    std::vector<std::vector<std::pair<double, double>>> cov(P.edges.size());
    for (const CutLocus::Arc& arc : CL.arcs)
        for (size_t k = 0; k + 1 < arc.polyline.size(); ++k) {
            const Vec3& a = arc.polyline[k];
            const Vec3& b = arc.polyline[k + 1];
            int e = segment_on_face_edge(P, arc.faces[k], a, b, eps);
            if (e < 0) continue;
            const Vec3& pa = P.vertices[P.edges[e].a];
            const Vec3& pb = P.vertices[P.edges[e].b];
            double t0 = clamp01(line_param(pa, pb, a)), t1 = clamp01(line_param(pa, pb, b));
            cov[e].push_back({std::min(t0, t1), std::max(t0, t1)});
        }
    std::vector<int> covered;
    for (size_t e = 0; e < cov.size(); ++e) {
        if (cov[e].empty()) continue;
        double gap = std::max(eps / P.edge_length(int(e)), 1e-7);
        std::sort(cov[e].begin(), cov[e].end());
        if (cov[e][0].first > gap) continue;
        double reach = cov[e][0].second;
        for (const auto& iv : cov[e])
            if (iv.first <= reach + gap) reach = std::max(reach, iv.second);
        if (reach >= 1 - gap) covered.push_back(int(e));
    }
    return covered;
}

}  // namespace

std::pair<bool, std::vector<int>> is_skeletal(const Polyhedron& P, const SurfacePoint& x,
                                              const GeodesicParams& params) {
    CutLocus CL = cut_locus(P, x, params);
    bool ok = !CL.arcs.empty();
    for (const CutLocus::Arc& a : CL.arcs) ok = ok && a.on_skeleton;
    return {ok, whole_edges_in(P, CL, params.tol)};
}

int edge_count_in_cutlocus(const Polyhedron& P, const SurfacePoint& x,
                           const GeodesicParams& params) {
    CutLocus CL = cut_locus(P, x, params);
    return int(whole_edges_in(P, CL, params.tol).size());
}

SkeletalReport scan_skeletal(const Polyhedron& P, const GeodesicParams& params) {
    SkeletalReport rep;
    if (P.degenerate) {
        rep.infinite_family = true;
        std::string rim;
        for (size_t e = 0; e < P.edges.size(); ++e) {
            if (!rim.empty()) rim += ", ";
            rim += std::to_string(P.edges[e].a) + "-" + std::to_string(P.edges[e].b);
        }
        rep.rim_description =
            "degenerate (doubly covered) polyhedron: every rim point is a skeletal source; rim "
            "edges: " +
            rim;
        return rep;
    }
    std::vector<CandidateSource> cands = candidate_sources(P, params);
    for (size_t v = 0; v < P.vertices.size(); ++v) cands.push_back({vertex_point(int(v)), -1, -1});
    for (const CandidateSource& c : cands) {
        SkeletalReport::Record rec;
        rec.point = c.point;
        rec.edge_a = c.edge_a;
        rec.edge_b = c.edge_b;
        auto [ok, edges] = is_skeletal(P, c.point, params);
        rec.edges = edges;
        rec.edge_count = int(edges.size());
        rec.skeletal = ok && verify_skeletal(P, c.point, edges, params).pass();
        if (rec.skeletal) ++rep.num_skeletal;
        rep.max_edge_count = std::max(rep.max_edge_count, rec.edge_count);
        rep.records.push_back(std::move(rec));
    }
    return rep;
}

SurfacePoint one_edge_witness(const Polyhedron& P, int e, const GeodesicParams& params) {
    if (P.degenerate) throw DegenerateInput("one_edge_witness: degenerate polyhedron");
    const ToleranceConfig& tol = params.tol;
    for (int v : {P.edges[e].a, P.edges[e].b}) {
        ExtensionRay R = trace_extension(P, e, v, 4 * int(P.faces.size()), tol);
        if (R.faces.empty()) continue;
        double total = R.arclen.back();
        double eps_w = std::min(0.5 * total, 0.25 * P.edge_length(e));
        for (int iter = 0; iter < 16; ++iter, eps_w *= 0.5) {
            // point at arclength eps_w along the ray
            size_t i = 0;
            while (i + 2 < R.pts.size() && R.arclen[i + 1] < eps_w) ++i;
            double span = R.arclen[i + 1] - R.arclen[i];
            double t = span > 0 ? (eps_w - R.arclen[i]) / span : 0;
            Vec3 p = R.pts[i] * (1 - t) + R.pts[i + 1] * t;
            SurfacePoint x = face_point_3d(P, R.faces[i], p, tol);
            if (x.is_vertex()) continue;
            CutLocus CL = cut_locus(P, x, params);
            std::vector<int> cov = whole_edges_in(P, CL, tol);
            if (std::find(cov.begin(), cov.end(), e) != cov.end()) return x;
        }
    }
    throw WitnessNotFound("one_edge_witness: no source found with edge " + std::to_string(e) +
                          " in its cut locus");
}

bool has_hist(const std::vector<std::vector<int>>& adj) {
    int n = int(adj.size());
    if (n <= 2) return true;  // a single edge (or vertex) has no degree-2 node
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
        for (int b : adj[a])
            if (a < b) edges.push_back({a, b});
    // most-constrained first: low-degree endpoints have the least slack
    std::stable_sort(edges.begin(), edges.end(), [&](const auto& x, const auto& y) {
        return std::min(adj[x.first].size(), adj[x.second].size()) <
               std::min(adj[y.first].size(), adj[y.second].size());
    });
    int E = int(edges.size());
    std::vector<int> deg(n, 0), undecided(n);
    for (int v = 0; v < n; ++v) undecided[v] = int(adj[v].size());
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : find(uf[x]); };

    auto feasible = [&](int v) {
        if (deg[v] + undecided[v] < 1) return false;            // would end isolated
        if (undecided[v] == 0 && deg[v] == 2) return false;     // degree-2 node locked in
        if (undecided[v] == 0 && deg[v] == 0) return false;
        return true;
    };

    std::function<bool(int, int)> go = [&](int idx, int used) -> bool {
        if (used == n - 1) {  // acyclic inclusions: n-1 edges imply spanning tree
            for (int v = 0; v < n; ++v)
                if (deg[v] == 2 || deg[v] == 0) return false;
            return true;
        }
        if (idx == E || used + (E - idx) < n - 1) return false;
        auto [a, b] = edges[idx];
        --undecided[a];
        --undecided[b];
        int ra = find(a), rb = find(b);
        if (ra != rb) {  // include (excluded edges that close a cycle are forced out)
            uf[ra] = rb;
            ++deg[a];
            ++deg[b];
            if (feasible(a) && feasible(b) && go(idx + 1, used + 1)) return true;
            --deg[a];
            --deg[b];
            uf[ra] = ra;
        }
        bool ok = feasible(a) && feasible(b) && go(idx + 1, used);
        ++undecided[a];
        ++undecided[b];
        return ok;
    };
    return go(0, 0);
}

RestrictionVerdict restriction_check(const Polyhedron& P) {
    std::vector<std::vector<int>> adj = P.skeleton_adjacency();
    bool cubic = true;
    for (const auto& nb : adj) cubic = cubic && nb.size() == 3;
    if (cubic && !has_hist(adj)) return RestrictionVerdict::ProvablyNoSkeletal;
    return RestrictionVerdict::Inconclusive;
}

EveryVertexReport every_vertex_report(const Polyhedron& P, const GeodesicParams& params) {
    const ToleranceConfig& tol = params.tol;
    EveryVertexReport rep;
    rep.all_vertices_skeletal = true;
    for (size_t v = 0; v < P.vertices.size(); ++v)
        rep.all_vertices_skeletal =
            rep.all_vertices_skeletal && is_skeletal(P, vertex_point(int(v)), params).first;

    rep.faces_triangular = true;
    for (const auto& f : P.faces) rep.faces_triangular = rep.faces_triangular && f.size() == 3;

    rep.degrees_even = true;
    rep.opposite_angles_congruent = true;
    bool all_deg4 = true;
    for (const auto& fan : P.fans) {
        int m = int(fan.entries.size());
        if (m % 2 != 0) {
            rep.degrees_even = false;
            rep.opposite_angles_congruent = false;
            continue;
        }
        if (m != 4) all_deg4 = false;
        for (int i = 0; i < m / 2; ++i)
            if (std::abs(fan.entries[i].ang - fan.entries[i + m / 2].ang) > tol.tol_angle)
                rep.opposite_angles_congruent = false;
    }

    rep.octahedral_case_applies = all_deg4;
    if (all_deg4) {
        bool ok = P.vertices.size() == 6 && P.faces.size() == 8 && rep.faces_triangular;
        std::vector<double> ref;
        for (size_t f = 0; ok && f < P.faces.size(); ++f) {
            std::vector<double> sides;
            for (int i = 0; i < 3; ++i)
                sides.push_back(dist(P.vertices[P.faces[f][i]], P.vertices[P.faces[f][(i + 1) % 3]]));
            std::sort(sides.begin(), sides.end());
            // acute: largest side's square below the sum of the other two squares
            ok = ok && sides[2] * sides[2] < sides[0] * sides[0] + sides[1] * sides[1] - tol.tol_len;
            if (f == 0)
                ref = sides;
            else
                for (int i = 0; i < 3; ++i) ok = ok && std::abs(sides[i] - ref[i]) <= 1e-7;
        }
        rep.octahedral_case_ok = ok;
    }
    return rep;
}

}  // namespace skelocut
