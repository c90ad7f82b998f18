#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ntl/tree.hpp"
#include "oracles.hpp"

using namespace ntl;

namespace {

Tree path(int n) {
    std::vector<int> vs;
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) vs.push_back(i);
    for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
    return Tree(vs, es);
}

Tree star(int leaves) {
    std::vector<int> vs{0};
    std::vector<Edge> es;
    for (int i = 1; i <= leaves; ++i) {
        vs.push_back(i);
        es.push_back({0, i});
    }
    return Tree(vs, es);
}

bool has_issue(const TreeValidation& v, TreeIssue::Kind k) {
    for (const auto& i : v.issues)
        if (i.kind == k) return true;
    return false;
}

}  // namespace

TEST_CASE("validate_tree accepts the single-vertex tree") {
    TreeValidation v = validate_tree({0}, {});
    REQUIRE(v.ok());
    CHECK(v.tree->vertex_count() == 1);
    CHECK(v.tree->edge_count() == 0);
}

TEST_CASE("validate_tree rejects triangles, disconnection, loops, duplicates") {
    CHECK(has_issue(validate_tree({0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}}), TreeIssue::Kind::HasCycle));
    CHECK(has_issue(validate_tree({0, 1, 2, 3}, {{0, 1}, {2, 3}}), TreeIssue::Kind::Disconnected));
    CHECK(has_issue(validate_tree({0, 1}, {{0, 0}, {0, 1}}), TreeIssue::Kind::SelfLoop));
    CHECK(has_issue(validate_tree({0, 1}, {{0, 1}, {1, 0}}), TreeIssue::Kind::DuplicateEdge));
    CHECK(has_issue(validate_tree({0, 1}, {{0, 2}}), TreeIssue::Kind::UnknownVertex));
    CHECK(has_issue(validate_tree({}, {}), TreeIssue::Kind::EmptyVertexSet));
}

TEST_CASE("tips") {
    CHECK(tips(path(3)) == std::vector<int>{0, 2});
    CHECK(tips(star(3)) == std::vector<int>{1, 2, 3});
    CHECK(tips(Tree()) == std::vector<int>{0});  // lone vertex counts as a tip
}

TEST_CASE("canonical form identifies relabelings and separates shapes") {
    Tree p1({0, 1, 2}, {{0, 1}, {1, 2}});
    Tree p2({5, 9, 7}, {{5, 9}, {9, 7}});
    CHECK(canonical_form(p1) == canonical_form(p2));
    CHECK(canonical_form(path(4)) != canonical_form(star(3)));
}

TEST_CASE("canonical form agreement equals brute-force isomorphism, up to 7 vertices") {
    std::vector<Tree> all = enumerate_trees(7);
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i; j < all.size(); ++j) {
            bool canon = canonical_form(all[i]) == canonical_form(all[j]);
            bool brute = oracle::isomorphic(all[i], all[j]);
            INFO("pair " << i << "," << j);
            CHECK(canon == brute);
        }
    }
}

TEST_CASE("enumerate_trees counts match brute-force enumeration") {
    // 1, 1, 1, 2, 3, 6, 11 free trees on 1..7 vertices
    std::vector<Tree> all = enumerate_trees(7);
    std::map<std::size_t, int> by_size;
    for (const Tree& t : all) ++by_size[t.vertex_count()];
    CHECK(by_size[1] == 1);
    CHECK(by_size[4] == 2);
    CHECK(by_size[6] == 6);
    for (int n = 1; n <= 7; ++n) {
        INFO("n = " << n);
        CHECK(by_size[n] == static_cast<int>(oracle::enumerate_trees_brute(n).size()));
    }
    CHECK_THROWS_AS(enumerate_trees(11), SizeLimitExceeded);
}

TEST_CASE("enumerate_trees covers the full supported range") {
    // free-tree counts per vertex count; 1..7 cross-checked against the
    // brute-force oracle above, the rest frozen as regression values
    std::vector<Tree> all = enumerate_trees(10);
    std::map<std::size_t, int> by_size;
    for (const Tree& t : all) ++by_size[t.vertex_count()];
    const std::vector<int> expect{1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
    for (int n = 1; n <= 10; ++n) CHECK(by_size[n] == expect[n - 1]);
}

TEST_CASE("enumerate_trees is duplicate-free and deterministic") {
    std::vector<Tree> a = enumerate_trees(7);
    std::vector<Tree> b = enumerate_trees(7);
    REQUIRE(a.size() == b.size());
    std::set<std::string> forms;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        CHECK(forms.insert(canonical_form(a[i])).second);
    }
}

TEST_CASE("stability of labeled trees") {
    Tree single;
    CHECK(is_stable_labeled(LabeledTree(single, 3, {{1, 0}, {2, 0}, {3, 0}})));
    CHECK_FALSE(is_stable_labeled(LabeledTree(single, 2, {{1, 0}, {2, 0}})));
    Tree edge({0, 1}, {{0, 1}});
    CHECK(is_stable_labeled(LabeledTree(edge, 4, {{1, 0}, {2, 0}, {3, 1}, {4, 1}})));
    CHECK_FALSE(is_stable_labeled(LabeledTree(edge, 3, {{1, 0}, {2, 0}, {3, 1}})));
}

TEST_CASE("nodal shape counts") {
    Tree edge({0, 1}, {{0, 1}});
    NodalShape s = nodal_shape(LabeledTree(edge, 4, {{1, 0}, {2, 0}, {3, 1}, {4, 1}}));
    CHECK(s.double_points[0] == 1);
    CHECK(s.marked_points[0] == 2);
    CHECK(s.special_points[0] == 3);
    CHECK(s.special_points[1] == 3);
}

TEST_CASE("minimal stabilizations: forced counts and small cases") {
    SECTION("single vertex: one stabilization with n = 3") {
        std::vector<LabeledTree> ms = minimal_stabilizations(Tree());
        REQUIRE(ms.size() == 1);
        CHECK(ms[0].n() == 3);
        CHECK(ms[0].label_count_at(0) == 3);
    }
    SECTION("edge tree: n = 4, two labels per vertex") {
        Tree edge({0, 1}, {{0, 1}});
        std::vector<LabeledTree> ms = minimal_stabilizations(edge);
        CHECK(ms.size() == minimal_stabilization_count(edge));
        CHECK(ms.size() == 6);  // choose 2 of 4 labels for vertex 0
        for (const LabeledTree& lt : ms) {
            REQUIRE(lt.n() == 4);
            CHECK(lt.label_count_at(0) == 2);
            CHECK(lt.label_count_at(1) == 2);
            CHECK(is_stable_labeled(lt));
            CHECK(minimal_stabilization_formula_holds(edge, lt.n()));
        }
    }
    SECTION("path on 3: ends get 2 labels, middle gets 1, n = 5") {
        Tree p({0, 1, 2}, {{0, 1}, {1, 2}});
        std::vector<LabeledTree> ms = minimal_stabilizations(p);
        REQUIRE_FALSE(ms.empty());
        for (const LabeledTree& lt : ms) {
            CHECK(lt.n() == 5);
            CHECK(lt.label_count_at(0) == 2);
            CHECK(lt.label_count_at(1) == 1);
            CHECK(lt.label_count_at(2) == 2);
        }
        CHECK(minimal_stabilization_formula_holds(p, 5));
    }
}

TEST_CASE("minimal stabilizations are distinct as label maps") {
    for (const Tree& t : enumerate_trees(5)) {
        std::set<std::map<int, int>> seen;
        for (const LabeledTree& lt : minimal_stabilizations(t))
            CHECK(seen.insert(lt.label()).second);
        CHECK(seen.size() == minimal_stabilization_count(t));
    }
}

TEST_CASE("stabilization formula holds exactly for every output, trees up to 8 vertices") {
    for (const Tree& t : enumerate_trees(8)) {
        int n = minimal_stabilization_n(t);
        INFO("tree " << canonical_form(t));
        CHECK(minimal_stabilization_formula_holds(t, n));
    }
}
