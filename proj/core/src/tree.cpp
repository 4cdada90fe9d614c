#include "skelocut/tree.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace skelocut {

CombinatorialTree parse_tree(const std::string& text) {
    CombinatorialTree T;
    std::vector<int> stack;
    int root = -1;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        if (c == '(') {
            if (root >= 0 && stack.empty())
                throw ParseError("second root at byte " + std::to_string(i));
            int id = T.n++;
            T.adj.push_back({});
            if (!stack.empty()) T.add_edge(stack.back(), id);
            else root = id;
            stack.push_back(id);
        } else if (c == ')') {
            if (stack.empty()) throw ParseError("unbalanced ')' at byte " + std::to_string(i));
            stack.pop_back();
        } else {
            throw ParseError(std::string("stray character '") + c + "' at byte " + std::to_string(i));
        }
    }
    if (!stack.empty()) throw ParseError("unbalanced '(' at end of input");
    if (root < 0) throw ParseError("empty tree text");
    T.root = root;
    return T;
}

std::string serialize_tree(const CombinatorialTree& T) {
    int root = T.root >= 0 ? T.root : 0;
    std::string out;
    std::function<void(int, int)> rec = [&](int v, int p) {
        out += '(';
        for (int u : T.adj[v])
            if (u != p) rec(u, v);
        out += ')';
    };
    rec(root, -1);
    return out;
}

RootChoice choose_root(const CombinatorialTree& T) {
    if (T.n == 0) throw ParseError("empty tree");
    RootChoice rc;
    int maxdeg = 0;
    for (int v = 0; v < T.n; ++v) maxdeg = std::max(maxdeg, T.degree(v));
    if (maxdeg <= 2) {
        rc.path_case = true;
        rc.root = 0;
        return rc;
    }
    for (int v = 0; v < T.n; ++v)
        if (T.degree(v) == maxdeg) { rc.root = v; break; }
    return rc;
}

LevelDecomposition level_decomposition(const CombinatorialTree& T, int root) {
    LevelDecomposition L;
    L.root = root;
    L.depth.assign(T.n, -1);
    L.parent.assign(T.n, -1);
    L.children.assign(T.n, {});
    std::queue<int> q;
    q.push(root);
    L.depth[root] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : T.adj[v]) {
            if (u == L.parent[v]) continue;
            L.parent[u] = v;
            L.depth[u] = L.depth[v] + 1;
            L.children[v].push_back(u);
            L.max_depth = std::max(L.max_depth, L.depth[u]);
            q.push(u);
        }
    }
    for (int v = 0; v < T.n; ++v)
        if (L.depth[v] < 0) throw BadTopology("tree not connected");
    L.levels.assign(L.max_depth + 1, {});
    for (int v = 0; v < T.n; ++v) L.levels[L.depth[v]].push_back(v);
    return L;
}

std::vector<Deg2Case> classify_deg2(const CombinatorialTree& T, int root) {
    if (T.degree(root) < 3) throw ParseError("classify_deg2 requires a root of degree >= 3");
    LevelDecomposition L = level_decomposition(T, root);
    int min_leaf_depth = T.n;
    for (int v = 0; v < T.n; ++v)
        if (L.children[v].empty()) min_leaf_depth = std::min(min_leaf_depth, L.depth[v]);

    std::vector<Deg2Case> out;
    int next_chain = 0;
    for (int k = 1; k <= L.max_depth; ++k) {
        std::vector<int> deg2;  // depth-k nodes with exactly one child
        for (int v : L.levels[k])
            if (L.children[v].size() == 1) deg2.push_back(v);
        if (deg2.empty()) continue;

        if (min_leaf_depth > k) {
            // Whole frontier pending: closed ring, Case (d).
            int chain = next_chain++;
            for (int v : deg2) out.push_back({v, CaseTag::D, chain});
            continue;
        }

        // Frontier in base-cycle order: depth-k nodes and shallower leaves, by
        // depth-first traversal.
        std::vector<int> frontier;
        std::function<void(int)> rec = [&](int v) {
            if (L.depth[v] == k || L.children[v].empty()) {
                frontier.push_back(v);
                return;
            }
            for (int u : L.children[v]) rec(u);
        };
        for (int u : L.children[root]) rec(u);

        std::vector<char> is_run_member(T.n, 0);
        for (int v : deg2) {
            int c = L.children[v][0];
            if (L.children[c].empty())
                is_run_member[v] = 1;  // leaf-parent: candidate for B/C
            else
                out.push_back({v, CaseTag::A, -1});
        }

        int m = int(frontier.size());
        std::vector<char> member(m, 0);
        for (int i = 0; i < m; ++i) member[i] = is_run_member[frontier[i]];
        // Maximal cyclic runs of members.
        std::vector<char> seen(m, 0);
        for (int i = 0; i < m; ++i) {
            if (!member[i] || seen[i]) continue;
            int s = i;
            while (member[(s + m - 1) % m] && (s + m - 1) % m != i) s = (s + m - 1) % m;
            std::vector<int> run;
            int j = s;
            while (member[j] && !seen[j]) {
                seen[j] = 1;
                run.push_back(frontier[j]);
                j = (j + 1) % m;
            }
            if (run.size() >= 2) {
                int chain = next_chain++;
                for (int v : run) out.push_back({v, CaseTag::C, chain});
            } else {
                out.push_back({run[0], CaseTag::B, -1});
            }
        }
    }
    return out;
}

namespace {

std::string ahu_rec(const CombinatorialTree& T, int v, int p) {
    std::vector<std::string> subs;
    for (int u : T.adj[v])
        if (u != p) subs.push_back(ahu_rec(T, u, v));
    std::sort(subs.begin(), subs.end());
    std::string s = "(";
    for (const std::string& t : subs) s += t;
    s += ")";
    return s;
}

std::vector<int> tree_centers(const CombinatorialTree& T) {
    if (T.n == 1) return {0};
    std::vector<int> deg(T.n);
    std::vector<char> removed(T.n, 0);
    std::queue<int> q;
    for (int v = 0; v < T.n; ++v) {
        deg[v] = T.degree(v);
        if (deg[v] == 1) q.push(v);
    }
    int remaining = T.n;
    while (remaining > 2) {
        int cnt = int(q.size());
        for (int i = 0; i < cnt; ++i) {
            int v = q.front();
            q.pop();
            removed[v] = 1;
            --remaining;
            for (int u : T.adj[v])
                if (!removed[u] && --deg[u] == 1) q.push(u);
        }
    }
    std::vector<int> centers;
    for (int v = 0; v < T.n; ++v)
        if (!removed[v]) centers.push_back(v);
    return centers;
}

}  // namespace

std::string ahu_encoding(const CombinatorialTree& T, int root) { return ahu_rec(T, root, -1); }

bool tree_isomorphic(const CombinatorialTree& T1, const CombinatorialTree& T2) {
    if (T1.n != T2.n) return false;
    if (T1.n == 0) return true;
    auto canon = [](const CombinatorialTree& T) {
        std::string best;
        for (int c : tree_centers(T)) {
            std::string s = ahu_encoding(T, c);
            if (best.empty() || s < best) best = s;
        }
        return best;
    };
    return canon(T1) == canon(T2);
}

CombinatorialTree tree_from_edges(int n, const std::vector<std::pair<int, int>>& edges, int root) {
    CombinatorialTree T;
    T.n = n;
    T.adj.assign(n, {});
    for (auto [a, b] : edges) T.add_edge(a, b);
    T.root = root;
    return T;
}

}  // namespace skelocut
