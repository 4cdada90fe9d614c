#include "skelocut/realize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "skelocut/examples.hpp"
#include "skelocut/skeletal.hpp"
#include "skelocut/surface.hpp"

namespace skelocut {

namespace {

constexpr double kMatch = 1e-7;  // vertex relocation tolerance across hull rebuilds

Vec2 xy(const Vec3& p) { return {p.x, p.y}; }
Vec3 lift(const Vec2& p) { return {p.x, p.y, 0}; }
Vec2 dir2(double th) { return {std::cos(th), std::sin(th)}; }

int find_vertex(const Polyhedron& P, const Vec3& p, double eps = kMatch) {
    for (size_t i = 0; i < P.vertices.size(); ++i)
        if (dist(P.vertices[i], p) <= eps) return int(i);
    return -1;
}

int need_vertex(const Polyhedron& P, const Vec3& p, const char* what) {
    int v = find_vertex(P, p);
    if (v < 0) throw RealizationFailure(std::string("expected vertex missing from hull: ") + what);
    return v;
}

int base_face_of(const Polyhedron& P) {
    for (size_t f = 0; f < P.faces.size(); ++f)
        if (P.face_planes[f].normal.z < -0.999) return int(f);
    throw RealizationFailure("no base face in construction solid");
}

// The two base-polygon neighbors of base vertex v.
std::pair<int, int> base_neighbors(const Polyhedron& P, int v) {
    const std::vector<int>& cyc = P.faces[base_face_of(P)];
    int n = int(cyc.size());
    for (int i = 0; i < n; ++i)
        if (cyc[i] == v) return {cyc[(i + n - 1) % n], cyc[(i + 1) % n]};
    throw RealizationFailure("vertex not on the base polygon");
}

// Unfold point z (interior to a planar face over base edge A B) into the base
// plane: |p-A| = |z-A|, |p-B| = |z-B|, on the far side of line A B from x = 0.
Vec2 unfold_across(const Vec3& A, const Vec3& B, const Vec3& z) {
    Vec2 a = xy(A), b = xy(B);
    Vec2 e = b - a;
    double L2 = dot(e, e);
    double da2 = dot(z - A, z - A), db2 = dot(z - B, z - B);
    double s = (da2 - db2 + L2) / (2 * L2);  // projection parameter along a->b
    double h2 = da2 - s * s * L2;
    if (h2 < 0) h2 = 0;
    double h = std::sqrt(h2);
    Vec2 nrm = normalized(perp(e));
    Vec2 foot = a + e * s;
    Vec2 p1 = foot + nrm * h, p2 = foot - nrm * h;
    // choose the solution on the opposite side of line A B from the origin
    double side_x = cross(e, Vec2{0, 0} - a);
    return (cross(e, p1 - a) * side_x < 0) ? p1 : p2;
}

Vec2 reflect_across_ray(const Vec2& p, const Vec2& through) {
    Vec2 u = normalized(through);
    double along = dot(p, u), off = cross(u, p);
    return u * along - perp(u) * off;
}

double wrap_pi(double a) {
    while (a > M_PI) a -= 2 * M_PI;
    while (a <= -M_PI) a += 2 * M_PI;
    return a;
}

double angle_at(const Vec3& c, const Vec3& p, const Vec3& q) {
    return angle_between(p - c, q - c);
}

// Robust bisection of a continuous f with f(lo), f(hi) of opposite signs.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              const ConstructionParams& cp, const char* what) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw RootNotBracketed(std::string(what) + ": endpoints do not bracket a root");
    for (int i = 0; i < cp.max_bisect_iters && hi - lo > cp.bisect_tol; ++i) {
        double mid = (lo + hi) / 2, fm = f(mid);
        if (fm == 0) return mid;
        if ((fm > 0) == (flo > 0))
            lo = mid, flo = fm;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

Polyhedron rebuild(const Polyhedron& P, const std::vector<Vec3>& remove,
                   const std::vector<Vec3>& add, const ToleranceConfig& tol) {
    std::vector<Vec3> pts;
    for (const Vec3& v : P.vertices) {
        bool drop = false;
        for (const Vec3& r : remove) drop = drop || dist(v, r) <= kMatch;
        if (!drop) pts.push_back(v);
    }
    for (const Vec3& a : add) pts.push_back(a);
    return convex_hull(pts, tol);
}

}  // namespace

ChainResult truncation_chain(const Polyhedron& P, int u_vertex, int v_vertex, double z_fraction,
                             int k, const ConstructionParams& cp, TraceStep* trace) {
    if (k < 1) throw DegenerateInput("truncation chain needs k >= 1");
    const Vec3& U = P.vertices[u_vertex];
    const Vec3& V = P.vertices[v_vertex];
    if (std::abs(V.z) > 1e-9) throw RealizationFailure("chain base vertex not in the base plane");
    Vec3 z3 = U + (V - U) * z_fraction;

    auto [wa, wb] = base_neighbors(P, v_vertex);
    Vec3 Wa = P.vertices[wa], Wb = P.vertices[wb];

    // (1)-(2): unfold z with the left face; reflect across x v1 for the right.
    Vec2 z0 = unfold_across(V, Wa, z3);
    Vec2 zK = reflect_across_ray(z0, xy(V));
    double right_gap = dist(zK, unfold_across(V, Wb, z3));
    double r_z = norm(z0);

    // (3)-(5): z_i on circle C_z, on rays from x separated by alpha = A/(k+1),
    // sweeping from z0 to z_{k+1} through the direction of V.
    double th0 = std::atan2(z0.y, z0.x);
    double thK = std::atan2(zK.y, zK.x);
    double thV = std::atan2(V.y, V.x);
    double A = wrap_pi(thK - th0);
    double dv = wrap_pi(thV - th0);
    if (!((dv >= 0) == (A >= 0) && std::abs(dv) <= std::abs(A))) A = A - (A >= 0 ? 1 : -1) * 2 * M_PI;
    double alpha = A / (k + 1);

    std::vector<Vec2> zi(k + 2);
    for (int i = 0; i <= k + 1; ++i) zi[i] = dir2(th0 + i * alpha) * r_z;

    // (6)-(10): bisectors B_i and mediator lines L_i give the chain points.
    auto ray_hit_line = [&](double th, const Vec2& a, const Vec2& b) {
        Vec2 d = dir2(th), e = b - a;
        double den = cross(d, e);
        if (std::abs(den) < 1e-14) throw InterferenceViolation("chain bisector parallel to base edge");
        double t = cross(a, e) / den;
        if (t <= 0) throw InterferenceViolation("chain bisector misses the base edge");
        return d * t;
    };
    std::vector<Vec2> t(k + 2);  // t[1..k+1]
    t[1] = ray_hit_line(th0 + 0.5 * alpha, xy(V), xy(Wa));
    t[k + 1] = ray_hit_line(th0 + (k + 0.5) * alpha, xy(V), xy(Wb));
    for (int i = 2; i <= k; ++i) {
        // L_i: points of the base plane equidistant from z and z_i
        Vec2 n = (zi[i] - xy(z3)) * 2.0;
        double c = dot(zi[i], zi[i]) - dot(z3, z3);
        Vec2 d = dir2(th0 + (i - 0.5) * alpha);
        double den = dot(n, d);
        if (std::abs(den) < 1e-14) throw InterferenceViolation("mediator line parallel to bisector");
        t[i] = d * (c / den);
    }

    // interference margins: the end chain points stay on the v-side of the
    // adjacent base-edge midpoints, by margin_eps of the half edge
    double ta = line_param(xy(V), xy(Wa), t[1]);
    double tb = line_param(xy(V), xy(Wb), t[k + 1]);
    double lim = 0.5 * (1 - cp.margin_eps);
    if (!(ta > 1e-9 && ta < lim) || !(tb > 1e-9 && tb < lim))
        throw InterferenceViolation("truncation chain exits its margin band");

    ChainResult R;
    R.P = P;
    R.z = z3;
    for (int i = 1; i <= k + 1; ++i) R.chain.push_back(lift(t[i]));
    for (int i = 1; i <= k; ++i) {
        Vec3 nrm = cross(R.chain[i - 1] - z3, R.chain[i] - z3);
        Plane cut{normalized(nrm), 0};
        cut.offset = dot(cut.normal, z3);
        if (cut.signed_dist(V) < 0) {
            cut.normal = cut.normal * -1.0;
            cut.offset = -cut.offset;
        }
        if (cut.signed_dist({0, 0, 0}) > -1e-9)
            throw InterferenceViolation("truncation plane reaches the source");
        R.P = truncate(R.P, cut, cp.tol);
    }
    need_vertex(R.P, z3, "chain vertex z");
    for (const Vec3& c : R.chain) need_vertex(R.P, c, "chain point");

    if (trace) {
        trace->kind = "truncation_chain";
        trace->scalars = {{"k", double(k)},
                          {"r_z", r_z},
                          {"A", A},
                          {"alpha", alpha},
                          {"right_unfold_gap", right_gap}};
        trace->points.push_back({"z", z3});
        for (int i = 0; i <= k + 1; ++i)
            trace->points.push_back({"z" + std::to_string(i), lift(zi[i])});
        for (int i = 1; i <= k + 1; ++i)
            trace->points.push_back({"t" + std::to_string(i), lift(t[i])});
        for (int i = 1; i <= k + 1; ++i)
            trace->points.push_back({"B" + std::to_string(i), lift(dir2(th0 + (i - 0.5) * alpha))});
        for (int i = 1; i <= k; ++i)
            trace->points.push_back({"m" + std::to_string(i), (z3 + lift(zi[i])) * 0.5});
    }
    return R;
}

namespace {

// ---- driver -----------------------------------------------------------------

// ---- whole-tree layout -------------------------------------------------------
//
// The rooted tree is realized in one joint solve.  The root sits at a fixed
// apex on the z-axis, every internal node is a free point above the base
// plane (3 unknowns), and every leaf is a base-plane vertex on a pinned
// direction with a free radius (1 unknown).  The surface between consecutive
// leaves (cyclically around the base) is one region bounded by the two tree
// paths from the leaves up to their lowest common ancestor, triangulated as a
// ladder that merges the two paths by depth.  One condition family: at every
// non-leaf node the developed distance from x agrees across all incident
// regions.  By rigid congruence of the adjacent developments this makes every
// tree edge equidistant from x, hence part of the cut locus; leaves need no
// equation because a base vertex develops to its own position on every side.
// The system is underdetermined (3I + m unknowns vs I + m - 1 equations for I
// internal nodes and m leaves) and solved by minimum-norm Gauss-Newton from a
// seed draped over the apex cone.  Feasibility guards keep the modeled
// creases strictly convex and the base polygon convex, so the convex hull of
// the solved points reproduces the modeled triangulation and every node
// survives as a hull vertex.

constexpr int kNearBase = -10;  // sentinel: the near side of the first rung is x

struct LayoutSys {
    const LevelDecomposition* L = nullptr;
    int root = -1;
    Vec3 apex;
    std::vector<int> internals, leaves;  // node ids; leaves in planar order
    std::map<int, int> iidx, lidx;
    std::vector<double> phi;  // pinned leaf directions
    struct Step {
        int k1, k2, nv;  // triangle (k1, k2, nv): nv placed across edge (k1, k2)
        int near;        // already-placed vertex on the x side of the edge
    };
    struct Region {
        std::vector<Step> steps;  // ladder order, base edge first, lca last
    };
    std::vector<Region> regions;
    std::vector<int> eqnodes;                    // internals, then the root
    std::vector<std::vector<int>> node_regions;  // eqnode idx -> region ids
    struct Crease {
        int a, b, c, d;  // node d must lie on or below the plane of (a,b,c)
    };
    std::vector<Crease> creases;
    std::map<int, std::vector<std::array<int, 3>>> node_tris;  // curvature wedges
    Vec3 pc;  // interior reference point for plane orientation

    int I() const { return int(internals.size()); }
    int m() const { return int(leaves.size()); }

    Vec3 node_pos(int w, const std::vector<double>& q) const {
        if (w == root) return apex;
        auto it = iidx.find(w);
        if (it != iidx.end()) {
            int i = it->second;
            return {q[3 * i], q[3 * i + 1], q[3 * i + 2]};
        }
        int j = lidx.at(w);
        return lift(dir2(phi[j]) * q[3 * I() + j]);
    }
    // developed distance from x to node u through one region: unfold the
    // ladder triangle by triangle, placing each new vertex by its distances
    // to the two endpoints of the entry edge, on the far side of that edge
    double dev(int u, const Region& R, const std::vector<double>& q) const {
        std::map<int, Vec2> img;
        int first1 = R.steps[0].k1, first2 = R.steps[0].k2;
        img[first1] = xy(node_pos(first1, q));
        img[first2] = xy(node_pos(first2, q));
        for (const Step& s : R.steps) {
            Vec2 p1 = img.at(s.k1), p2 = img.at(s.k2);
            Vec3 P1 = node_pos(s.k1, q), P2 = node_pos(s.k2, q), N = node_pos(s.nv, q);
            double d1 = dist(P1, N), d2 = dist(P2, N);
            double len = dist(p1, p2);
            double a = (d1 * d1 - d2 * d2 + len * len) / (2 * len);
            double h = std::sqrt(std::max(0.0, d1 * d1 - a * a));
            Vec2 dir = (p2 - p1) * (1.0 / len);
            Vec2 prp{-dir.y, dir.x};
            Vec2 foot = p1 + dir * a;
            Vec2 nearp = s.near == kNearBase ? Vec2{0, 0} : img.at(s.near);
            double side = cross(p2 - p1, nearp - p1);
            Vec2 im = side > 0 ? foot - prp * h : foot + prp * h;
            img[s.nv] = im;
            if (s.nv == u) return norm(im);
        }
        throw RealizationFailure("layout region does not reach the node");
    }
    // signed height of node d over the oriented plane of (a,b,c); positive
    // means the crease folds the wrong (reflex) way
    double crease_sd(const Crease& cr, const std::vector<double>& q) const {
        Vec3 a = node_pos(cr.a, q), b = node_pos(cr.b, q);
        Vec3 c = node_pos(cr.c, q), p = node_pos(cr.d, q);
        Vec3 n = cross(b - a, c - a);
        double ln = norm(n);
        if (ln < 1e-12) return 0;
        n = n * (1.0 / ln);
        if (dot(n, pc - a) > 0) n = n * -1.0;
        return dot(n, p - a);
    }
    // total surface angle around a node (base wedge included for leaves)
    double cone_angle(int w, const std::vector<double>& q) const {
        double total = 0;
        Vec3 at = node_pos(w, q);
        for (const std::array<int, 3>& t : node_tris.at(w))
            total += angle_at(at, node_pos(t[1], q), node_pos(t[2], q));
        auto it = lidx.find(w);
        if (it != lidx.end()) {
            int j = it->second, mm = m();
            Vec3 prv = node_pos(leaves[(j + mm - 1) % mm], q);
            Vec3 nxt = node_pos(leaves[(j + 1) % mm], q);
            total += angle_at(at, prv, nxt);
        }
        return total;
    }
    int num_eqs() const {
        int k = 0;
        for (const auto& rs : node_regions) k += int(rs.size()) - 1;
        return k + int(creases.size()) + int(node_tris.size()) + m();
    }
    // equality rows (developed-distance agreement) followed by hinge rows that
    // activate only when a convexity condition is violated: reflex creases,
    // too-flat vertices, and non-convex base corners.  The hinges are squared
    // (C^1 at the boundary) so the Gauss-Newton step stays consistent as
    // conditions switch on and off.
    static double hinge(double s) { return s > 0 ? 30 * s * s : 0.0; }
    void resid(const std::vector<double>& q, std::vector<double>& F) const {
        int k = 0;
        for (size_t i = 0; i < eqnodes.size(); ++i) {
            const std::vector<int>& rs = node_regions[i];
            for (size_t j = 0; j + 1 < rs.size(); ++j)
                F[k++] = dev(eqnodes[i], regions[rs[j]], q) -
                         dev(eqnodes[i], regions[rs[j + 1]], q);
        }
        for (const Crease& cr : creases) F[k++] = hinge(crease_sd(cr, q) - 1e-6);
        for (const auto& [w, tris] : node_tris)
            F[k++] = hinge(cone_angle(w, q) - (2 * M_PI - 1e-4));
        int mm = m();
        for (int j = 0; j < mm; ++j) {
            Vec2 a = xy(node_pos(leaves[(j + mm - 1) % mm], q));
            Vec2 b = xy(node_pos(leaves[j], q));
            Vec2 c = xy(node_pos(leaves[(j + 1) % mm], q));
            F[k++] = hinge(1e-4 - cross(b - a, c - b));
        }
    }
};

// positions of all tree nodes after a successful layout solve
struct LayoutResult {
    std::map<int, Vec3> pos;
    double residual = 0;
};

LayoutResult layout_solve_once(const CombinatorialTree& T, int root, const LevelDecomposition& L,
                               const ConstructionParams& cp, double width) {
    int d = int(L.children[root].size());
    double apex_h = (d == 3) ? std::sqrt(2.0) : 1.0;

    LayoutSys S;
    S.L = &L;
    S.root = root;
    S.apex = {0, 0, apex_h};

    // planar-order traversal; remember which root-child block owns each leaf
    std::map<int, int> parent, depth;
    std::vector<int> leaf_block;
    int maxdepth = 1, cur_block = 0;
    std::function<void(int, int, int)> dfs = [&](int w, int p, int dep) {
        parent[w] = p;
        depth[w] = dep;
        maxdepth = std::max(maxdepth, dep);
        if (L.children[w].empty()) {
            S.lidx[w] = int(S.leaves.size());
            S.leaves.push_back(w);
            leaf_block.push_back(cur_block);
            return;
        }
        S.iidx[w] = int(S.internals.size());
        S.internals.push_back(w);
        for (int ch : L.children[w]) dfs(ch, w, dep + 1);
    };
    parent[root] = -1;
    depth[root] = 0;
    for (int k = 0; k < d; ++k) {
        cur_block = k;
        dfs(L.children[root][k], root, 1);
    }
    int I = S.I(), m = S.m();

    // pinned leaf directions: block k spreads around the corner angle 2 pi k/d
    S.phi.resize(m);
    {
        std::vector<int> bsize(d, 0), bseen(d, 0);
        for (int b : leaf_block) ++bsize[b];
        for (int j = 0; j < m; ++j) {
            int k = leaf_block[j];
            int t = bseen[k]++;
            S.phi[j] = 2 * M_PI * k / d +
                       (M_PI / d) * width * (-1.0 + 2.0 * (t + 0.5) / bsize[k]);
        }
    }

    // regions: one ladder per cyclic gap between consecutive leaves.  The gap
    // is bounded by the two paths up to the lca; the first build merges the
    // paths deeper-side-first, later rebuilds pick each rung so the fold stays
    // convex in the current geometry.
    auto path_up = [&](int w) {  // parent(w) .. root inclusive
        std::vector<int> p;
        for (int v = parent.at(w); v != -1; v = parent.at(v)) p.push_back(v);
        return p;
    };
    // the boundary polygon of the gap: leafA, left chain up, lca, right chain
    // down, leafB (the base edge closes it)
    std::vector<std::vector<int>> gaps;
    for (int j = 0; j < m; ++j) {
        int a = S.leaves[j], b = S.leaves[(j + 1) % m];
        std::vector<int> upA = path_up(a), upB = path_up(b);
        int lca = -1;
        for (int w : upB)
            if (std::find(upA.begin(), upA.end(), w) != upA.end()) {
                lca = w;
                break;
            }
        std::vector<int> poly = {a};
        for (int w : upA) {
            poly.push_back(w);
            if (w == lca) break;
        }
        std::vector<int> down;
        for (int w : upB) {
            if (w == lca) break;
            down.push_back(w);
        }
        poly.insert(poly.end(), down.rbegin(), down.rend());
        poly.push_back(b);
        gaps.push_back(poly);
    }
    S.pc = {0, 0, 0.3 * apex_h};

    std::set<std::pair<int, int>> tree_edges;
    for (int w = 0; w < T.n; ++w)
        for (int u : T.adj[w])
            if (w < u) tree_edges.insert({w, u});

    auto build_regions = [&](const std::vector<double>* qg) {
        S.regions.clear();
        S.node_regions.clear();
        S.creases.clear();
        S.node_tris.clear();
        for (const std::vector<int>& poly : gaps) {
            // serpentine triangulation by a two-pointer merge from the leaves
            LayoutSys::Region R;
            size_t p = 0, q = poly.size() - 1;
            int near = kNearBase;
            while (q - p >= 2) {
                int nl = poly[p + 1], nr = poly[q - 1];
                bool left;
                if (nl == nr)
                    left = true;
                else if (!qg)
                    left = depth.at(nl) >= depth.at(nr);
                else {
                    // fold height of the skipped candidate over each choice
                    Vec3 pl = S.node_pos(poly[p], *qg), pr = S.node_pos(poly[q], *qg);
                    Vec3 cl = S.node_pos(nl, *qg), cr = S.node_pos(nr, *qg);
                    auto sd = [&](const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& pt) {
                        Vec3 nn = cross(b - a, c - a);
                        double ln = norm(nn);
                        if (ln < 1e-12) return 0.0;
                        nn = nn * (1.0 / ln);
                        if (dot(nn, S.pc - a) > 0) nn = nn * -1.0;
                        return dot(nn, pt - a);
                    };
                    left = sd(pl, pr, cl, cr) <= sd(pl, pr, cr, cl);
                }
                R.steps.push_back({poly[p], poly[q], left ? nl : nr, near});
                near = left ? poly[p] : poly[q];
                if (left)
                    ++p;
                else
                    --q;
            }
            S.regions.push_back(R);
        }
        S.node_regions.assign(S.eqnodes.size(), {});
        std::map<int, int> epos;
        for (size_t i = 0; i < S.eqnodes.size(); ++i) epos[S.eqnodes[i]] = int(i);
        std::map<std::pair<int, int>, std::vector<std::array<int, 3>>> edge_tris;
        for (const LayoutSys::Region& R : S.regions) {
            size_t r = &R - S.regions.data();
            for (size_t i = 0; i < R.steps.size(); ++i) {
                const LayoutSys::Step& s = R.steps[i];
                if (epos.count(s.nv)) S.node_regions[epos[s.nv]].push_back(int(r));
                std::array<int, 3> tri{s.k1, s.k2, s.nv};
                for (auto [u, v] : {std::pair{s.k1, s.k2}, {s.k1, s.nv}, {s.k2, s.nv}}) {
                    std::pair<int, int> key{std::min(u, v), std::max(u, v)};
                    if (tree_edges.count(key)) edge_tris[key].push_back(tri);
                }
                if (i + 1 < R.steps.size()) {
                    const LayoutSys::Step& t = R.steps[i + 1];
                    S.creases.push_back({s.k1, s.k2, s.nv, t.nv});
                    S.creases.push_back({t.k1, t.k2, t.nv, t.near});
                }
                S.node_tris[s.k1].push_back({s.k1, s.k2, s.nv});
                S.node_tris[s.k2].push_back({s.k2, s.nv, s.k1});
                S.node_tris[s.nv].push_back({s.nv, s.k1, s.k2});
            }
        }
        for (const auto& [e, tris] : edge_tris) {
            if (tris.size() != 2)
                throw RealizationFailure("tree edge is not flanked by two regions");
            for (int s = 0; s < 2; ++s) {
                const std::array<int, 3>& A = tris[s], &B = tris[1 - s];
                for (int v : B)
                    if (v != A[0] && v != A[1] && v != A[2])
                        S.creases.push_back({A[0], A[1], A[2], v});
            }
        }
    };
    S.eqnodes = S.internals;
    S.eqnodes.push_back(root);
    build_regions(nullptr);

    // seed: drape the tree over the apex cone, pushed slightly off the surface
    std::vector<double> q(3 * I + m);
    for (int j = 0; j < m; ++j) q[3 * I + j] = 1.0;
    std::function<double(int)> mean_phi = [&](int w) -> double {
        if (S.lidx.count(w)) return S.phi[S.lidx.at(w)];
        double s = 0;
        for (int ch : L.children[w]) s += mean_phi(ch);
        return s / double(L.children[w].size());
    };
    for (int i = 0; i < I; ++i) {
        int w = S.internals[i];
        double t = double(depth.at(w)) / double(maxdepth + 1);
        Vec3 rim = lift(dir2(mean_phi(w)));
        Vec3 pos = S.apex * (1 - t) + rim * t;
        pos.x *= 1.15, pos.y *= 1.15;
        q[3 * i] = pos.x, q[3 * i + 1] = pos.y, q[3 * i + 2] = pos.z;
    }

    // hard bounds only; convexity lives in the hinge rows of the residual
    auto feasible = [&](const std::vector<double>& qq) {
        for (int i = 0; i < I; ++i)
            if (qq[3 * i + 2] < 0.02) return false;
        for (int j = 0; j < m; ++j)
            if (qq[3 * I + j] < 0.25 || qq[3 * I + j] > 4.0) return false;
        return true;
    };

    // Levenberg-Marquardt over the current ladder model; the hinge rows make
    // the linearized system inconsistent near constraint boundaries, so the
    // damping must adapt rather than stay tiny
    int n = int(q.size());
    double rn = 0;
    auto solve_gn = [&]() {
        int me = S.num_eqs();
        std::vector<double> F(me), Fh(me), Fn(me);
        auto rnorm = [&](const std::vector<double>& Fo) {
            double s = 0;
            for (double f : Fo) s += f * f;
            return std::sqrt(s);
        };
        S.resid(q, F);
        rn = rnorm(F);
        double mu = 1e-6;
        std::vector<double> J(me * n), A(n * (n + 1)), dq(n), qn(n);
        for (int it = 0; it < 300 && rn > 1e-12; ++it) {
            for (int j = 0; j < n; ++j) {
                double h = 1e-6 * std::max(1.0, std::abs(q[j]));
                double save = q[j];
                q[j] = save + h;
                S.resid(q, Fh);
                q[j] = save - h;
                S.resid(q, Fn);
                q[j] = save;
                for (int i = 0; i < me; ++i) J[i * n + j] = (Fh[i] - Fn[i]) / (2 * h);
            }
            bool moved = false;
            for (int damp = 0; damp < 25 && !moved; ++damp) {
                // (J^T J + mu I) dq = -J^T F
                for (int r = 0; r < n; ++r) {
                    for (int c = 0; c < n; ++c) {
                        double s = 0;
                        for (int i = 0; i < me; ++i) s += J[i * n + r] * J[i * n + c];
                        A[r * (n + 1) + c] = s;
                    }
                    double g = 0;
                    for (int i = 0; i < me; ++i) g += J[i * n + r] * F[i];
                    A[r * (n + 1) + n] = -g;
                    A[r * (n + 1) + r] += mu;
                }
                bool singular = false;
                for (int col = 0; col < n && !singular; ++col) {
                    int piv = col;
                    for (int r = col + 1; r < n; ++r)
                        if (std::abs(A[r * (n + 1) + col]) > std::abs(A[piv * (n + 1) + col]))
                            piv = r;
                    if (std::abs(A[piv * (n + 1) + col]) < 1e-300) singular = true;
                    if (piv != col)
                        for (int j2 = 0; j2 <= n; ++j2)
                            std::swap(A[col * (n + 1) + j2], A[piv * (n + 1) + j2]);
                    for (int r = 0; r < n && !singular; ++r) {
                        if (r == col) continue;
                        double f = A[r * (n + 1) + col] / A[col * (n + 1) + col];
                        for (int j2 = col; j2 <= n; ++j2)
                            A[r * (n + 1) + j2] -= f * A[col * (n + 1) + j2];
                    }
                }
                if (!singular) {
                    for (int j = 0; j < n; ++j) dq[j] = A[j * (n + 1) + n] / A[j * (n + 1) + j];
                    for (int j = 0; j < n; ++j) qn[j] = q[j] + dq[j];
                    if (feasible(qn)) {
                        S.resid(qn, Fn);
                        double rnn = rnorm(Fn);
                        if (rnn < rn) {
                            q = qn;
                            F = Fn;
                            rn = rnn;
                            moved = true;
                            mu = std::max(1e-12, mu * 0.3);
                        }
                    }
                }
                if (!moved) mu *= 10;
            }
            if (!moved) {
                if (getenv("SKELOCUT_DBG2")) {
                    int neq = 0;
                    for (const auto& rs : S.node_regions) neq += int(rs.size()) - 1;
                    int nc = int(S.creases.size()), nt = int(S.node_tris.size());
                    double m_eq = 0, m_cr = 0, m_cn = 0, m_bs = 0;
                    for (int i = 0; i < me; ++i) {
                        double a2 = std::abs(F[i]);
                        if (i < neq)
                            m_eq = std::max(m_eq, a2);
                        else if (i < neq + nc)
                            m_cr = std::max(m_cr, a2);
                        else if (i < neq + nc + nt)
                            m_cn = std::max(m_cn, a2);
                        else
                            m_bs = std::max(m_bs, a2);
                    }
                    fprintf(stderr,
                            "DBG2 it=%d rn=%g stalled maxrow eq=%g crease=%g cone=%g base=%g\n", it,
                            rn, m_eq, m_cr, m_cn, m_bs);
                    for (const LayoutSys::Crease& cr : S.creases) {
                        double sd = S.crease_sd(cr, q);
                        if (sd > -3e-4)
                            fprintf(stderr, "DBG2   active crease (%d,%d,%d | %d) sd=%g\n", cr.a,
                                    cr.b, cr.c, cr.d, sd);
                    }
                }
                break;
            }
        }
    };
    auto steps_snapshot = [&]() {
        std::vector<int> snap;
        for (const LayoutSys::Region& R : S.regions)
            for (const LayoutSys::Step& s : R.steps) snap.push_back(s.nv);
        return snap;
    };
    solve_gn();
    for (int round = 0; round < 3 && rn > 1e-9; ++round) {
        std::vector<int> before = steps_snapshot();
        build_regions(&q);
        if (steps_snapshot() == before) break;
        if (getenv("SKELOCUT_DBG"))
            fprintf(stderr, "DBG relaid ladders, round %d\n", round + 1);
        solve_gn();
    }
    if (getenv("SKELOCUT_DBG"))
        fprintf(stderr, "DBG layout I=%d m=%d width=%g rn=%g\n", I, m, width, rn);
    if (rn > 1e-9) throw RealizationFailure("layout conditions did not converge");

    LayoutResult res;
    res.residual = rn;
    res.pos[root] = S.apex;
    for (int i = 0; i < I; ++i) res.pos[S.internals[i]] = {q[3 * i], q[3 * i + 1], q[3 * i + 2]};
    for (int j = 0; j < m; ++j) res.pos[S.leaves[j]] = S.node_pos(S.leaves[j], q);
    return res;
}

LayoutResult layout_solve(const CombinatorialTree& T, int root, const LevelDecomposition& L,
                          const ConstructionParams& cp) {
    double w0 = cp.sector_fraction;
    const double scales[] = {1.0, 0.6, 1.3, 0.35, 0.8};
    std::string last;
    for (double s : scales) {
        try {
            return layout_solve_once(T, root, L, cp, std::min(0.95, w0 * s));
        } catch (const GeometryError& e) {
            last = e.what();
            if (getenv("SKELOCUT_DBG"))
                fprintf(stderr, "DBG   layout w=%g failed: %s\n", w0 * s, last.c_str());
        }
    }
    throw RealizationFailure("layout failed: " + last);
}

CombinatorialTree cutlocus_tree(const CutLocus& CL) {
    CombinatorialTree G;
    G.n = int(CL.nodes.size());
    G.adj.resize(G.n);
    for (const CutLocus::Arc& a : CL.arcs) G.add_edge(a.a, a.b);
    return G;
}

Realization realize_path(const CombinatorialTree& T, const ConstructionParams& cp) {
    int n = T.n;
    if (n < 2) throw UnsupportedPattern("a single-node tree has no cut-locus realization");
    Polyhedron P;
    SurfacePoint x;
    if (n == 2) {
        std::vector<Vec3> tri = {{1, 0, 0}, {-0.5, std::sqrt(3) / 2, 0}, {-0.5, -std::sqrt(3) / 2, 0}};
        P = doubly_covered_polygon(tri, cp.tol);
        x = vertex_point(0);
    } else {
        std::vector<Vec3> poly;
        for (int i = 0; i < n; ++i) {
            double a = 2 * M_PI * i / n;
            poly.push_back({std::cos(a), std::sin(a), 0});
        }
        P = doubly_covered_polygon(poly, cp.tol);
        int e = P.edge_index(0, 1);
        x = edge_point(P, e, 0.5, cp.tol);
    }
    GeodesicParams gp;
    gp.tol = cp.tol;
    CutLocus CL = cut_locus(P, x, gp);
    CombinatorialTree G = cutlocus_tree(CL);
    if (!tree_isomorphic(G, T))
        throw RealizationFailure("doubly covered polygon did not realize the path");
    Realization R;
    R.P = P;
    R.x = x;
    R.tree = T;
    R.node_map.resize(T.n);
    // map path order onto cut-locus path order
    std::vector<int> order;  // CL node indices along the path
    {
        int start = -1;
        for (int i = 0; i < G.n; ++i)
            if (G.degree(i) == 1) start = i;
        int prev = -1, cur = start;
        while (cur >= 0) {
            order.push_back(cur);
            int nxt = -1;
            for (int u : G.adj[cur])
                if (u != prev) nxt = u;
            prev = cur;
            cur = nxt;
        }
    }
    std::vector<int> torder;
    {
        int start = -1;
        for (int i = 0; i < T.n; ++i)
            if (T.degree(i) == 1) start = i;
        int prev = -1, cur = start;
        while (cur >= 0) {
            torder.push_back(cur);
            int nxt = -1;
            for (int u : T.adj[cur])
                if (u != prev) nxt = u;
            prev = cur;
            cur = nxt;
        }
    }
    for (size_t i = 0; i < torder.size(); ++i)
        R.node_map[torder[i]] = CL.nodes[order[i]].point;
    for (const CutLocus::Arc& a : CL.arcs) {
        if (!a.on_skeleton) throw RealizationFailure("path cut locus left the skeleton");
        for (size_t e = 0; e < P.edges.size(); ++e) {
            const Vec3& pa = P.vertices[P.edges[e].a];
            const Vec3& pb = P.vertices[P.edges[e].b];
            if (point_segment_dist(a.polyline.front(), pa, pb) <= 1e-7 &&
                point_segment_dist(a.polyline.back(), pa, pb) <= 1e-7) {
                R.claimed_edges.push_back(int(e));
                break;
            }
        }
    }
    TraceStep ts;
    ts.kind = "doubly_covered_polygon";
    ts.scalars = {{"n", double(n)}};
    R.trace.steps.push_back(ts);
    return R;
}

Realization realize_rooted(const CombinatorialTree& T, int root, const ConstructionParams& cp) {
    LevelDecomposition L = level_decomposition(T, root);
    LayoutResult lay = layout_solve(T, root, L, cp);

    std::vector<Vec3> pts;
    for (const auto& [w, p] : lay.pos) pts.push_back(p);
    Polyhedron P = convex_hull(pts, cp.tol);

    Realization R;
    R.tree = T;
    R.tree.root = root;
    int bf = base_face_of(P);
    R.x = face_point_3d(P, bf, {0, 0, 0}, cp.tol);
    R.node_map.resize(T.n);
    for (int w = 0; w < T.n; ++w) {
        auto it = lay.pos.find(w);
        if (it == lay.pos.end()) throw RealizationFailure("tree node was never materialized");
        int vtx = find_vertex(P, it->second);
        if (vtx < 0) {
            double best = 1e9;
            for (const Vec3& vv : P.vertices) best = std::min(best, dist(vv, it->second));
            throw RealizationFailure("node " + std::to_string(w) + " position (" +
                                     std::to_string(it->second.x) + "," +
                                     std::to_string(it->second.y) + "," +
                                     std::to_string(it->second.z) +
                                     ") is not a vertex; nearest at distance " +
                                     std::to_string(best));
        }
        R.node_map[w] = vertex_point(vtx);
    }
    for (int w = 0; w < T.n; ++w)
        for (int u : T.adj[w])
            if (w < u) {
                int e = P.edge_index(R.node_map[w].index, R.node_map[u].index);
                if (e < 0) throw RealizationFailure("claimed tree edge is not a skeleton edge");
                R.claimed_edges.push_back(e);
            }
    TraceStep ts;
    ts.kind = "layout";
    ts.node = root;
    ts.scalars = {{"residual", lay.residual}};
    for (const auto& [w, p] : lay.pos) ts.points.push_back({"n" + std::to_string(w), p});
    R.trace.steps.push_back(ts);
    R.P = std::move(P);
    return R;
}

}  // namespace

Realization realize_tree(const CombinatorialTree& T, const ConstructionParams& cp) {
    RootChoice rc = choose_root(T);
    if (rc.path_case) return realize_path(T, cp);

    GeodesicParams gp;
    gp.tol = cp.tol;
    std::string last_err = "never attempted";
    ConstructionParams p = cp;
    for (int attempt = 0; attempt < 4; ++attempt) {
        try {
            Realization R = realize_rooted(T, rc.root, p);
            VerificationReport rep = verify_skeletal(R.P, R.x, R.claimed_edges, gp);
            CutLocus CL = cut_locus(R.P, R.x, gp);
            if (rep.pass() && tree_isomorphic(cutlocus_tree(CL), T)) return R;
            last_err = "verification failed";
            for (const std::string& f : rep.failures) last_err += "; " + f;
            if (rep.pass()) last_err = "cut locus tree mismatch";
        } catch (const GeometryError& e) {
            last_err = e.what();
        }
        if (getenv("SKELOCUT_DBG"))
            fprintf(stderr, "DBG attempt %d failed: %s\n", attempt, last_err.c_str());
        // parameter retries: vary the leaf spread inside each corner sector
        p.sector_fraction *= 0.72;
    }
    throw RealizationFailure("tree realization failed: " + last_err);
}

Realization realize_tree(const std::string& balanced_parens, const ConstructionParams& cp) {
    return realize_tree(parse_tree(balanced_parens), cp);
}


}  // namespace skelocut
