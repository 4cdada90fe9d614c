#pragma once

#include <string>
#include <vector>

#include "skelocut/geom.hpp"

namespace skelocut {

struct CombinatorialTree {
    int n = 0;
    std::vector<std::vector<int>> adj;
    int root = -1;  // -1 when unrooted

    int degree(int v) const { return int(adj[v].size()); }
    void add_edge(int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
};

// Balanced-parentheses form: a node is "(" children ")"; outermost node is the
// root. Whitespace ignored.
CombinatorialTree parse_tree(const std::string& text);
std::string serialize_tree(const CombinatorialTree& T);

struct RootChoice {
    int root = -1;     // node of degree >= 3 when one exists
    bool path_case = false;  // all degrees <= 2: realized on a doubly covered polygon
};
RootChoice choose_root(const CombinatorialTree& T);

struct LevelDecomposition {
    int root;
    std::vector<int> depth;
    std::vector<int> parent;
    std::vector<std::vector<int>> children;  // in adjacency order
    int max_depth = 0;
    std::vector<std::vector<int>> levels;    // nodes at each depth
};
LevelDecomposition level_decomposition(const CombinatorialTree& T, int root);

enum class CaseTag { A, B, C, D };

struct Deg2Case {
    int node;
    CaseTag tag;
    int chain_id;  // shared by members of one C run or D ring; -1 for A/B
};

// Tags every degree-2 node of T rooted at `root`. D: the whole frontier at the
// node's depth carries pending subtrees, so the ring construction applies. C:
// maximal runs of >= 2 adjacent leaf-parents. B: isolated leaf-parents.
// A: the child is internal.
std::vector<Deg2Case> classify_deg2(const CombinatorialTree& T, int root);

bool tree_isomorphic(const CombinatorialTree& T1, const CombinatorialTree& T2);

// Canonical AHU encoding of T rooted at r (used by tree_isomorphic and tests).
std::string ahu_encoding(const CombinatorialTree& T, int root);

CombinatorialTree tree_from_edges(int n, const std::vector<std::pair<int, int>>& edges, int root = -1);

}  // namespace skelocut
