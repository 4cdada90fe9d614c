#pragma once

#include <string>
#include <vector>

#include "skelocut/cutlocus.hpp"
#include "skelocut/tree.hpp"

namespace skelocut {

struct ConstructionParams {
    double z_fraction = 0.5;        // truncation vertex position along its parent edge
    double margin_eps = 0.05;       // interference margin, fraction of the half base edge
    double v3prime_fraction = 0.9;  // Case (c): v3' = x + f (v3 - x); raised toward 0.99 on failure
    double v1prime_overshoot = 1.05;  // Case (b): v1' = x + o (v1 - x), o > 1
    double ring_fraction = 0.9;       // Case (d): y_i = x + r (v_i - x); raised toward 1 on failure
    double sector_fraction = 0.5;     // branch solves: leaf spread as a fraction of the corner sector
    double bisect_tol = 1e-12;
    int max_bisect_iters = 200;
    int max_retries = 20;
    ToleranceConfig tol;
};

// Every constructed quantity of a step, re-verifiable from the recorded
// coordinates (z_i images, bisectors, mediator lines, chain points, ...).
struct TraceStep {
    std::string kind;
    int node = -1;  // tree node being materialized (-1 for auxiliary steps)
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<std::pair<std::string, Vec3>> points;
};
struct RealizationTrace {
    std::vector<TraceStep> steps;
    const TraceStep* find(const std::string& kind, int node) const {
        for (const TraceStep& s : steps)
            if (s.kind == kind && s.node == node) return &s;
        return nullptr;
    }
};

struct Realization {
    Polyhedron P;
    SurfacePoint x;
    CombinatorialTree tree;               // rooted as realized
    std::vector<SurfacePoint> node_map;   // tree node -> vertex of P
    std::vector<int> claimed_edges;       // skeletal cut locus edge set
    RealizationTrace trace;
};

struct ChainResult {
    Polyhedron P;
    Vec3 z;
    std::vector<Vec3> chain;  // t_1 .. t_{k+1} in the base plane
};

// Truncates k planes through the point z on edge (u_vertex, v_vertex), where
// v_vertex lies in the base plane; the chain t_1..t_{k+1} is placed so all
// truncation edges z t_i join the cut locus of the base centroid. z gains
// degree k+2 among the cut-locus edges.
ChainResult truncation_chain(const Polyhedron& P, int u_vertex, int v_vertex, double z_fraction,
                             int k, const ConstructionParams& cp = {}, TraceStep* trace = nullptr);

Realization realize_tree(const CombinatorialTree& T, const ConstructionParams& cp = {});
Realization realize_tree(const std::string& balanced_parens, const ConstructionParams& cp = {});

}  // namespace skelocut
