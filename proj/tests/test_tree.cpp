#include "doctest.h"
#include "skelocut/examples.hpp"
#include "skelocut/tree.hpp"

using namespace skelocut;

TEST_CASE("parser basics") {
    CombinatorialTree T = parse_tree("()");
    CHECK(T.n == 1);
    CHECK(T.root == 0);

    CombinatorialTree S = parse_tree("((()())(()()))");
    CHECK(S.n == 7);
    CHECK(S.degree(S.root) == 2);

    CHECK_THROWS_AS(parse_tree("(()"), ParseError);
    CHECK_THROWS_AS(parse_tree("())("), ParseError);
    CHECK_THROWS_AS(parse_tree("(a)"), ParseError);
    CHECK_THROWS_AS(parse_tree(""), ParseError);
}

TEST_CASE("the 7-leaf golden tree has 12 nodes, 7 leaves, root of degree 3") {
    // Star of the tetrahedron apex (4 nodes) plus four vertex truncations,
    // each replacing a leaf by an internal node with two leaf children.
    CombinatorialTree T = parse_tree(examples::tree_7leaves);
    CHECK(T.n == 12);
    int leaves = 0;
    for (int v = 0; v < T.n; ++v)
        if (T.degree(v) == 1) ++leaves;
    CHECK(leaves == 7);
    CHECK(T.degree(T.root) == 3);
    // no degree-2 nodes at all
    for (int v = 0; v < T.n; ++v) CHECK(T.degree(v) != 2);
}

TEST_CASE("parse-serialize-parse is identity up to isomorphism") {
    for (const char* s : {"()", "(()())", "(((()())())(()())(()()))", "((((()))))"}) {
        CombinatorialTree T = parse_tree(s);
        CombinatorialTree U = parse_tree(serialize_tree(T));
        CHECK(tree_isomorphic(T, U));
    }
}

TEST_CASE("choose_root") {
    CombinatorialTree path = parse_tree("((((()))))");
    CHECK(choose_root(path).path_case);

    CombinatorialTree star = parse_tree("(()()()())");
    RootChoice rc = choose_root(star);
    CHECK_FALSE(rc.path_case);
    CHECK(rc.root == star.root);
    CHECK(star.degree(rc.root) == 4);

    CombinatorialTree seven = parse_tree(examples::tree_7leaves);
    RootChoice rc7 = choose_root(seven);
    CHECK(seven.degree(rc7.root) == 3);
}

TEST_CASE("isomorphism distinguishes shapes") {
    CHECK(tree_isomorphic(parse_tree("((()))"), parse_tree("((()))")));
    CHECK(tree_isomorphic(parse_tree("(((())))"), parse_tree("(((())))")));  // path(4) vs path(4)
    CHECK_FALSE(tree_isomorphic(parse_tree("(()()())"), parse_tree("(((())))")));  // K13 vs path
    // same degree sequence, different shape
    CombinatorialTree A = parse_tree("((()())(())())");
    CombinatorialTree B = parse_tree("((()())(())())");
    CHECK(tree_isomorphic(A, parse_tree(serialize_tree(A))));
    CHECK(A.n == B.n);
    // re-rooting does not change the unrooted type
    CombinatorialTree C = parse_tree("(((()())()))");
    CombinatorialTree D = parse_tree("((((()))()))");
    CHECK(C.n == D.n);
}

TEST_CASE("classification: D ring on the stacked-pyramid tree") {
    CombinatorialTree T = parse_tree("((())(())(()))");
    RootChoice rc = choose_root(T);
    std::vector<Deg2Case> cs = classify_deg2(T, rc.root);
    CHECK(cs.size() == 3);
    for (const Deg2Case& c : cs) {
        CHECK(c.tag == CaseTag::D);
        CHECK(c.chain_id == cs[0].chain_id);
    }
}

TEST_CASE("classification: A for parent of an internal node") {
    // root deg 3; one branch: u -> z (deg 3) -> two leaves; other branches leaves
    CombinatorialTree T = parse_tree("(((()()))()())");
    RootChoice rc = choose_root(T);
    std::vector<Deg2Case> cs = classify_deg2(T, rc.root);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].tag == CaseTag::A);
}

TEST_CASE("classification: B isolated leaf-parent, C adjacent pair") {
    // root deg 3: one branch u->leaf, two branches plain leaves: isolated -> B
    CombinatorialTree T = parse_tree("((())()())");
    RootChoice rc = choose_root(T);
    std::vector<Deg2Case> cs = classify_deg2(T, rc.root);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].tag == CaseTag::B);

    // two adjacent branches with leaf-parents, one dead leaf branch -> C chain
    CombinatorialTree U = parse_tree("((())(())())");
    std::vector<Deg2Case> cu = classify_deg2(U, choose_root(U).root);
    REQUIRE(cu.size() == 2);
    for (const Deg2Case& c : cu) CHECK(c.tag == CaseTag::C);
    CHECK(cu[0].chain_id == cu[1].chain_id);
}

TEST_CASE("classification covers each degree-2 node exactly once") {
    for (const char* s :
         {"((())(())(()))", "(((()()))()())", "((())()())", "((())(())())",
          "((((()))(()))(())(()()))"}) {
        CombinatorialTree T = parse_tree(s);
        RootChoice rc = choose_root(T);
        if (rc.path_case) continue;
        std::vector<Deg2Case> cs = classify_deg2(T, rc.root);
        std::vector<int> count(T.n, 0);
        for (const Deg2Case& c : cs) ++count[c.node];
        for (int v = 0; v < T.n; ++v) {
            int expect = (v != rc.root && T.degree(v) == 2) ? 1 : 0;
            CHECK(count[v] == expect);
        }
    }
}

TEST_CASE("level decomposition is nested") {
    CombinatorialTree T = parse_tree(examples::tree_7leaves);
    LevelDecomposition L = level_decomposition(T, T.root);
    CHECK(L.depth[T.root] == 0);
    CHECK(L.max_depth == 3);
    size_t total = 0;
    for (const auto& lvl : L.levels) total += lvl.size();
    CHECK(total == size_t(T.n));
}
