#include "skelocut/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

namespace skelocut {

namespace {

Vec3 newell_normal(const std::vector<Vec3>& verts, const std::vector<int>& cycle) {
    Vec3 n{0, 0, 0};
    Vec3 c{0, 0, 0};
    for (int i : cycle) c = c + verts[i];
    c = c / double(cycle.size());
    for (size_t i = 0; i < cycle.size(); ++i) {
        const Vec3& p = verts[cycle[i]];
        const Vec3& q = verts[cycle[(i + 1) % cycle.size()]];
        n = n + cross(p - c, q - c);
    }
    return n;
}

double points_diameter(const std::vector<Vec3>& pts) {
    if (pts.empty()) return 0;
    Vec3 lo = pts[0], hi = pts[0];
    for (const Vec3& p : pts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return norm(hi - lo);
}

}  // namespace

int Polyhedron::edge_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].a == a && edges[i].b == b) return int(i);
    return -1;
}

int Polyhedron::other_face(int e, int f) const {
    const Edge& ed = edges[e];
    if (ed.face_ab == f) return ed.face_ba;
    if (ed.face_ba == f) return ed.face_ab;
    throw GeometryError("other_face: face not incident to edge");
}

Vec2 Polyhedron::to_chart(int f, const Vec3& p) const {
    const Chart& ch = charts[f];
    Vec3 d = p - ch.origin;
    return {dot(d, ch.e1), dot(d, ch.e2)};
}

Vec3 Polyhedron::from_chart(int f, const Vec2& q) const {
    const Chart& ch = charts[f];
    return ch.origin + ch.e1 * q.x + ch.e2 * q.y;
}

Vec2 Polyhedron::chart_vertex(int f, int v) const {
    const std::vector<int>& cyc = faces[f];
    for (size_t i = 0; i < cyc.size(); ++i)
        if (cyc[i] == v) return charts[f].pts[i];
    throw GeometryError("chart_vertex: vertex not in face");
}

bool Polyhedron::vertex_in_face(int f, int v) const {
    for (int u : faces[f])
        if (u == v) return true;
    return false;
}

Rigid2 Polyhedron::transfer(int e, int f_from, int f_to) const {
    const Edge& ed = edges[e];
    return Rigid2::align(chart_vertex(f_from, ed.a), chart_vertex(f_from, ed.b),
                         chart_vertex(f_to, ed.a), chart_vertex(f_to, ed.b));
}

double Polyhedron::face_area(int f) const {
    const std::vector<Vec2>& p = charts[f].pts;
    double a = 0;
    for (size_t i = 0; i < p.size(); ++i) a += cross(p[i], p[(i + 1) % p.size()]);
    return 0.5 * std::abs(a);
}

double Polyhedron::surface_area() const {
    double a = 0;
    for (size_t f = 0; f < faces.size(); ++f) a += face_area(int(f));
    return a;
}

double Polyhedron::bbox_diameter() const { return points_diameter(vertices); }

std::vector<std::vector<int>> Polyhedron::skeleton_adjacency() const {
    std::vector<std::vector<int>> adj(vertices.size());
    for (const Edge& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    return adj;
}

void Polyhedron::derive(const ToleranceConfig& tol) {
    const int V = int(vertices.size());
    const int F = int(faces.size());
    if (V < 3 || F < 2) throw BadTopology("too few vertices or faces");
    for (const Vec3& p : vertices)
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            throw GeometryError("non-finite vertex coordinate");

    double diam = bbox_diameter();
    double eps_plane = tol.tol_plane * std::max(1.0, diam);

    std::vector<char> used(V, 0);
    for (const std::vector<int>& cyc : faces) {
        if (cyc.size() < 3) throw BadTopology("face cycle shorter than 3");
        std::set<int> seen;
        for (int i : cyc) {
            if (i < 0 || i >= V) throw BadTopology("vertex index out of range");
            if (!seen.insert(i).second) throw BadTopology("repeated vertex in face cycle");
            used[i] = 1;
        }
    }
    for (int v = 0; v < V; ++v)
        if (!used[v]) throw BadTopology("unreferenced vertex");

    face_planes.clear();
    for (const std::vector<int>& cyc : faces) {
        Vec3 n = newell_normal(vertices, cyc);
        if (norm(n) < 1e-14 * std::max(1.0, diam * diam))
            throw NonPlanarFace("degenerate face normal");
        Plane pl = Plane::from_point_normal(vertices[cyc[0]], n);
        for (int i : cyc)
            if (std::abs(pl.signed_dist(vertices[i])) > eps_plane)
                throw NonPlanarFace("face vertices not coplanar");
        face_planes.push_back(pl);
    }

    // Degenerate = all vertices on one plane: exactly two mirror faces.
    bool flat = true;
    for (const Vec3& p : vertices)
        if (std::abs(face_planes[0].signed_dist(p)) > eps_plane) { flat = false; break; }
    degenerate = flat;
    if (degenerate) {
        if (F != 2 || faces[0].size() != faces[1].size() || faces[0].size() != size_t(V))
            throw BadTopology("degenerate polyhedron must be two mirror faces over all vertices");
    }

    for (size_t f = 0; f < faces.size(); ++f)
        for (int i : faces[f])
            if (face_planes[f].signed_dist(vertices[i]) > eps_plane)
                throw NonConvex("vertex outside face plane");
    for (const Plane& pl : face_planes)
        for (const Vec3& p : vertices)
            if (pl.signed_dist(p) > eps_plane) throw NonConvex("vertex outside face plane");

    // Edges: each undirected edge must appear once per direction.
    edges.clear();
    std::map<std::pair<int, int>, int> idx;
    for (int f = 0; f < F; ++f) {
        const std::vector<int>& cyc = faces[f];
        for (size_t i = 0; i < cyc.size(); ++i) {
            int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
            std::pair<int, int> key{std::min(a, b), std::max(a, b)};
            auto it = idx.find(key);
            if (it == idx.end()) {
                Edge e{key.first, key.second, -1, -1};
                idx.emplace(key, int(edges.size()));
                edges.push_back(e);
                it = idx.find(key);
            }
            Edge& e = edges[it->second];
            int& slot = (a == e.a) ? e.face_ab : e.face_ba;
            if (slot != -1) throw BadTopology("edge direction used twice");
            slot = f;
        }
    }
    for (const Edge& e : edges)
        if (e.face_ab < 0 || e.face_ba < 0) throw BadTopology("boundary edge");
    int E = int(edges.size());
    if (V - E + F != 2) throw BadTopology("Euler characteristic != 2");

    {
        std::vector<char> vis(V, 0);
        std::queue<int> q;
        q.push(0);
        vis[0] = 1;
        auto adj = skeleton_adjacency();
        int cnt = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : adj[v])
                if (!vis[u]) { vis[u] = 1; ++cnt; q.push(u); }
        }
        if (cnt != V) throw BadTopology("skeleton not connected");
    }

    charts.clear();
    for (int f = 0; f < F; ++f) {
        const std::vector<int>& cyc = faces[f];
        Chart ch;
        ch.origin = vertices[cyc[0]];
        ch.e1 = normalized(vertices[cyc[1]] - vertices[cyc[0]]);
        ch.e2 = normalized(cross(face_planes[f].normal, ch.e1));
        for (int i : cyc) {
            Vec3 d = vertices[i] - ch.origin;
            ch.pts.push_back({dot(d, ch.e1), dot(d, ch.e2)});
        }
        charts.push_back(std::move(ch));
    }

    // Vertex fans: walk faces CCW around each vertex, crossing edge (v, pred).
    fans.assign(V, {});
    std::vector<std::pair<int, int>> start(V, {-1, -1});  // (face, position)
    for (int f = 0; f < F; ++f)
        for (size_t i = 0; i < faces[f].size(); ++i)
            if (start[faces[f][i]].first < 0) start[faces[f][i]] = {f, int(i)};
    for (int v = 0; v < V; ++v) {
        int f = start[v].first;
        VertexFan fan;
        int guard = 0;
        int cur = f;
        while (true) {
            const std::vector<int>& cyc = faces[cur];
            int pos = -1;
            for (size_t i = 0; i < cyc.size(); ++i)
                if (cyc[i] == v) pos = int(i);
            if (pos < 0) throw BadTopology("fan walk left the vertex star");
            int succ = cyc[(pos + 1) % cyc.size()];
            int pred = cyc[(pos + cyc.size() - 1) % cyc.size()];
            Vec2 pv = charts[cur].pts[pos];
            Vec2 ds = chart_vertex(cur, succ) - pv;
            Vec2 dp = chart_vertex(cur, pred) - pv;
            FanEntry en;
            en.face = cur;
            en.succ = succ;
            en.pred = pred;
            en.offset = fan.total;
            en.ang = angle_between(ds, dp);
            fan.total += en.ang;
            fan.entries.push_back(en);
            int e = edge_index(v, pred);
            if (e < 0) throw BadTopology("missing fan edge");
            cur = other_face(e, cur);
            if (cur == f) break;
            if (++guard > 2 * F + 4) throw BadTopology("fan walk did not close");
        }
        fans[v] = std::move(fan);
    }
}

double fan_angle(const Polyhedron& P, int v, int face, const Vec2& dir) {
    const Polyhedron::VertexFan& fan = P.fans[v];
    for (const Polyhedron::FanEntry& en : fan.entries) {
        if (en.face != face) continue;
        Vec2 pv = P.chart_vertex(face, v);
        Vec2 ray0 = P.chart_vertex(face, en.succ) - pv;
        double phi = signed_angle(ray0, dir);
        if (phi < -1e-9) phi += 2 * M_PI;
        double th = en.offset + phi;
        while (th >= fan.total) th -= fan.total;
        if (th < 0) th += fan.total;
        return th;
    }
    throw GeometryError("fan_angle: face not incident to vertex");
}

std::pair<int, Vec2> fan_direction(const Polyhedron& P, int v, double theta) {
    const Polyhedron::VertexFan& fan = P.fans[v];
    theta = std::fmod(theta, fan.total);
    if (theta < 0) theta += fan.total;
    for (size_t i = 0; i < fan.entries.size(); ++i) {
        const Polyhedron::FanEntry& en = fan.entries[i];
        bool last = (i + 1 == fan.entries.size());
        if (theta < en.offset + en.ang || last) {
            Vec2 pv = P.chart_vertex(en.face, v);
            Vec2 ray0 = normalized(P.chart_vertex(en.face, en.succ) - pv);
            double phi = theta - en.offset;
            double c = std::cos(phi), s = std::sin(phi);
            return {en.face, {c * ray0.x - s * ray0.y, s * ray0.x + c * ray0.y}};
        }
    }
    throw GeometryError("fan_direction: empty fan");
}

Polyhedron build_polyhedron(const std::vector<Vec3>& vertices,
                            const std::vector<std::vector<int>>& faces,
                            const ToleranceConfig& tol) {
    Polyhedron P;
    P.vertices = vertices;
    P.faces = faces;
    P.derive(tol);
    return P;
}

std::vector<int> convex_hull_2d(const std::vector<Vec2>& pts) {
    int n = int(pts.size());
    std::vector<int> ord(n);
    for (int i = 0; i < n; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](int i, int j) {
        if (pts[i].x != pts[j].x) return pts[i].x < pts[j].x;
        return pts[i].y < pts[j].y;
    });
    auto build = [&](bool upper) {
        std::vector<int> h;
        for (int k = 0; k < n; ++k) {
            int i = ord[upper ? n - 1 - k : k];
            while (h.size() >= 2) {
                Vec2 a = pts[h[h.size() - 2]], b = pts[h.back()];
                if (cross(b - a, pts[i] - a) <= 0)
                    h.pop_back();
                else
                    break;
            }
            h.push_back(i);
        }
        return h;
    };
    std::vector<int> lo = build(false), hi = build(true);
    lo.pop_back();
    hi.pop_back();
    lo.insert(lo.end(), hi.begin(), hi.end());
    return lo;
}

Polyhedron convex_hull(const std::vector<Vec3>& points, const ToleranceConfig& tol) {
    std::vector<Vec3> pts;
    for (const Vec3& p : points) {
        bool dup = false;
        for (const Vec3& q : pts)
            if (dist(p, q) <= tol.tol_len) { dup = true; break; }
        if (!dup) pts.push_back(p);
    }
    int n = int(pts.size());
    if (n < 3) throw DegenerateInput("need at least 3 distinct points");
    double diam = points_diameter(pts);
    double eps = tol.tol_plane * std::max(1.0, diam);

    // Rank test: find a non-degenerate triple, then a fourth point off the plane.
    int bi = -1, bj = -1, bk = -1;
    double best = 0;
    for (int i = 0; i < n && bi < 0; ++i)
        for (int j = i + 1; j < n && bi < 0; ++j)
            for (int k = j + 1; k < n; ++k) {
                double a = norm(cross(pts[j] - pts[i], pts[k] - pts[i]));
                if (a > best) { best = a; bi = i; bj = j; bk = k; }
                if (a > eps * diam) { bi = i; bj = j; bk = k; break; }
            }
    if (bi < 0 || best <= eps * std::max(1.0, diam))
        throw DegenerateInput("points are collinear");
    Plane base = Plane::through(pts[bi], pts[bj], pts[bk]);
    bool coplanar = true;
    for (const Vec3& p : pts)
        if (std::abs(base.signed_dist(p)) > eps) { coplanar = false; break; }
    if (coplanar) {
        // Doubly covered 2D hull.
        Vec3 e1 = normalized(pts[bj] - pts[bi]);
        Vec3 e2 = normalized(cross(base.normal, e1));
        std::vector<Vec2> flat;
        for (const Vec3& p : pts) flat.push_back({dot(p - pts[bi], e1), dot(p - pts[bi], e2)});
        std::vector<int> h = convex_hull_2d(flat);
        std::vector<Vec3> rim;
        for (int i : h) rim.push_back(pts[i]);
        return doubly_covered_polygon(rim, tol);
    }

    std::set<std::vector<int>> face_sets;
    std::vector<std::pair<Plane, std::vector<int>>> hull_faces;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Vec3 nr = cross(pts[j] - pts[i], pts[k] - pts[i]);
                if (norm(nr) < 1e-12 * std::max(1.0, diam * diam)) continue;
                Plane pl = Plane::from_point_normal(pts[i], nr);
                double mx = -1e300, mn = 1e300;
                for (const Vec3& p : pts) {
                    double d = pl.signed_dist(p);
                    mx = std::max(mx, d);
                    mn = std::min(mn, d);
                }
                if (mx > eps && mn < -eps) continue;  // not supporting
                if (mx > eps) pl = {-pl.normal, -pl.offset};  // orient outward
                std::vector<int> on;
                for (int t = 0; t < n; ++t)
                    if (std::abs(pl.signed_dist(pts[t])) <= eps) on.push_back(t);
                if (!face_sets.insert(on).second) continue;
                hull_faces.push_back({pl, on});
            }

    std::vector<int> remap(n, -1);
    std::vector<Vec3> verts;
    std::vector<std::vector<int>> cycles;
    for (const auto& [pl, on] : hull_faces) {
        Vec3 e1;
        {
            // any in-plane direction
            Vec3 d = pts[on[1]] - pts[on[0]];
            e1 = normalized(d - pl.normal * dot(d, pl.normal));
        }
        Vec3 e2 = normalized(cross(pl.normal, e1));
        std::vector<Vec2> flat;
        for (int t : on) flat.push_back({dot(pts[t] - pts[on[0]], e1), dot(pts[t] - pts[on[0]], e2)});
        std::vector<int> h = convex_hull_2d(flat);
        std::vector<int> cyc;
        for (int hi2 : h) {
            int orig = on[hi2];
            if (remap[orig] < 0) {
                remap[orig] = int(verts.size());
                verts.push_back(pts[orig]);
            }
            cyc.push_back(remap[orig]);
        }
        cycles.push_back(cyc);
    }
    return build_polyhedron(verts, cycles, tol);
}

Polyhedron truncate(const Polyhedron& P, const Plane& cut, const ToleranceConfig& tol) {
    double diam = P.bbox_diameter();
    double eps = tol.tol_plane * std::max(1.0, diam);
    std::vector<double> sd;
    for (const Vec3& p : P.vertices) sd.push_back(cut.signed_dist(p));
    bool any_pos = false, any_neg = false, any_on = false;
    for (double d : sd) {
        if (d > eps) any_pos = true;
        else if (d < -eps) any_neg = true;
        else any_on = true;
    }
    if (!any_pos) {
        if (any_on) throw TangentPlane("cut plane tangent to polyhedron");
        return P;
    }
    if (!any_neg) throw DegenerateInput("cut removes the whole polyhedron");

    std::vector<Vec3> kept;
    for (size_t i = 0; i < P.vertices.size(); ++i)
        if (sd[i] <= eps) kept.push_back(P.vertices[i]);
    for (const Polyhedron::Edge& e : P.edges) {
        double da = sd[e.a], db = sd[e.b];
        if ((da > eps && db < -eps) || (da < -eps && db > eps)) {
            double t = da / (da - db);
            kept.push_back(P.vertices[e.a] + (P.vertices[e.b] - P.vertices[e.a]) * t);
        }
    }
    return convex_hull(kept, tol);
}

Polyhedron make_regular_pyramid(int n, double apex_height, const ToleranceConfig& tol) {
    if (n < 3) throw DegenerateInput("pyramid base needs n >= 3");
    if (!(apex_height > 0)) throw DegenerateInput("apex height must be positive");
    std::vector<Vec3> v;
    for (int i = 0; i < n; ++i) {
        double a = 2 * M_PI * i / n;
        v.push_back({std::cos(a), std::sin(a), 0});
    }
    v.push_back({0, 0, apex_height});
    std::vector<std::vector<int>> f;
    std::vector<int> base;
    for (int i = n - 1; i >= 0; --i) base.push_back(i);
    f.push_back(base);
    for (int i = 0; i < n; ++i) f.push_back({i, (i + 1) % n, n});
    return build_polyhedron(v, f, tol);
}

Polyhedron doubly_covered_polygon(const std::vector<Vec3>& polygon, const ToleranceConfig& tol) {
    int n = int(polygon.size());
    if (n < 3) throw NonConvexPolygon("polygon needs at least 3 vertices");
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    Vec3 nr = newell_normal(polygon, ids);
    if (norm(nr) < 1e-14) throw NonConvexPolygon("degenerate polygon");
    Vec3 u = normalized(nr);
    double diam = points_diameter(polygon);
    double eps = tol.tol_plane * std::max(1.0, diam);
    for (const Vec3& p : polygon)
        if (std::abs(dot(u, p - polygon[0])) > eps)
            throw NonConvexPolygon("polygon not planar");
    for (int i = 0; i < n; ++i) {
        Vec3 a = polygon[i], b = polygon[(i + 1) % n], c = polygon[(i + 2) % n];
        if (dot(cross(b - a, c - b), u) <= eps * std::max(1.0, diam))
            throw NonConvexPolygon("polygon not strictly convex");
    }
    std::vector<std::vector<int>> f(2);
    for (int i = 0; i < n; ++i) f[0].push_back(i);
    for (int i = n - 1; i >= 0; --i) f[1].push_back(i);
    Polyhedron P = build_polyhedron(polygon, f, tol);
    if (!P.degenerate) throw BadTopology("doubly covered polygon not detected as degenerate");
    return P;
}

}  // namespace skelocut
