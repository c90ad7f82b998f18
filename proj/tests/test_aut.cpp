#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "ntl/aut.hpp"
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

Tree star3() { return Tree({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}}); }

// center 0 with three legs of length two
Tree spider222() {
    return Tree({0, 1, 2, 3, 4, 5, 6}, {{0, 1}, {1, 4}, {0, 2}, {2, 5}, {0, 3}, {3, 6}});
}

// center 0, legs of lengths 1, 1, 2
Tree spider112() { return Tree({0, 1, 2, 3, 4}, {{0, 1}, {0, 2}, {0, 3}, {3, 4}}); }

// brute-force automorphism count for the oracle side
int brute_aut_count(const Tree& t) {
    std::vector<int> idx(t.vertices());
    std::sort(idx.begin(), idx.end());
    std::vector<int> perm(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) perm[i] = static_cast<int>(i);
    int count = 0;
    do {
        bool ok = true;
        for (const Edge& e : t.edges()) {
            std::size_t i = std::lower_bound(idx.begin(), idx.end(), e.first) - idx.begin();
            std::size_t j = std::lower_bound(idx.begin(), idx.end(), e.second) - idx.begin();
            if (!t.has_edge(idx[perm[i]], idx[perm[j]])) { ok = false; break; }
        }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

}  // namespace

TEST_CASE("automorphism groups of the basic shapes") {
    CHECK(automorphism_group(star3()).order() == 6);
    CHECK(automorphism_group(path(3)).order() == 2);
    CHECK(automorphism_group(path(2)).order() == 2);
    CHECK(automorphism_group(Tree()).order() == 1);
    CHECK_THROWS_AS(automorphism_group(path(11)), SizeLimitExceeded);
}

TEST_CASE("automorphism enumeration matches the brute-force count and the group axioms hold") {
    for (const Tree& t : enumerate_trees(6)) {
        AutomorphismGroup g = automorphism_group(t);
        INFO("tree " << canonical_form(t));
        CHECK(static_cast<int>(g.order()) == brute_aut_count(t));
        CHECK(g.verify_group_axioms());
    }
}

TEST_CASE("isomorphism count onto a relabeled copy equals the automorphism count") {
    for (const Tree& t : enumerate_trees(6)) {
        int shift = static_cast<int>(t.vertex_count()) + 7;
        std::vector<int> vs;
        std::vector<Edge> es;
        for (int v : t.vertices()) vs.push_back(shift - v);
        for (const Edge& e : t.edges()) es.push_back(make_edge(shift - e.first, shift - e.second));
        Tree copy = unchecked_tree(std::move(vs), std::move(es));
        CHECK(enumerate_isomorphisms(t, copy).size() == automorphism_group(t).order());
        CHECK(enumerate_isomorphisms(t, Tree({0, 1}, {{0, 1}})).size() ==
              (t.vertex_count() == 2 ? 2 : 0));
    }
}

TEST_CASE("isomorphism pairs agreeing on tips coincide") {
    std::vector<Tree> all = enumerate_trees(7);
    for (const Tree& t : all) {
        std::vector<std::map<int, int>> isos = enumerate_isomorphisms(t, t);
        std::vector<int> tps = tips(t);
        for (std::size_t i = 0; i < isos.size(); ++i) {
            for (std::size_t j = i + 1; j < isos.size(); ++j) {
                bool agree = true;
                for (int tp : tps)
                    if (isos[i].at(tp) != isos[j].at(tp)) { agree = false; break; }
                INFO("tree " << canonical_form(t));
                CHECK_FALSE(agree);  // distinct isomorphisms must differ on some tip
            }
        }
    }
}

TEST_CASE("an automorphism fixing every tip is the identity") {
    for (const Tree& t : enumerate_trees(7)) {
        AutomorphismGroup g = automorphism_group(t);
        std::vector<int> tps = tips(t);
        for (const auto& perm : g.elements()) {
            std::map<int, int> phi = g.to_vertex_map(perm);
            bool fixes_tips = true;
            for (int tp : tps)
                if (phi.at(tp) != tp) { fixes_tips = false; break; }
            if (!fixes_tips) continue;
            for (const auto& [v, w] : phi) CHECK(v == w);
        }
    }
}

TEST_CASE("ordered labeled automorphisms are trivial, unordered equal Aut(T)") {
    for (const Tree& t : enumerate_trees(5)) {
        std::size_t full = automorphism_group(t).order();
        for (const LabeledTree& lt : minimal_stabilizations(t)) {
            CHECK(labeled_automorphism_group(lt, LabeledAutMode::Ordered).order() == 1);
            CHECK(labeled_automorphism_group(lt, LabeledAutMode::Unordered).order() == full);
        }
    }
}

TEST_CASE("fixed point sets") {
    SECTION("identity fixes everything") {
        Tree t = star3();
        FixedPointSet f = fixed_point_set(t, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
        CHECK(f.fixed_vertices.size() == 4);
        CHECK(f.pointwise_fixed_edges.size() == 3);
        CHECK(f.midpoint_only_edges.empty());
    }
    SECTION("path involution fixes only the middle vertex") {
        FixedPointSet f = fixed_point_set(path(3), {{0, 2}, {1, 1}, {2, 0}});
        CHECK(f.fixed_vertices == std::vector<int>{1});
        CHECK(f.pointwise_fixed_edges.empty());
        CHECK(f.midpoint_only_edges.empty());
    }
    SECTION("edge involution fixes only the midpoint") {
        FixedPointSet f = fixed_point_set(path(2), {{0, 1}, {1, 0}});
        CHECK(f.fixed_vertices.empty());
        CHECK(f.midpoint_only_edges == std::vector<Edge>{{0, 1}});
    }
    SECTION("non-automorphisms are rejected") {
        CHECK_THROWS_AS(fixed_point_set(path(3), {{0, 0}, {1, 2}, {2, 1}}), NotAnAutomorphism);
    }
}

TEST_CASE("per-automorphism fixed loci: nonempty, subtree when 1-dimensional, one midpoint") {
    for (const Tree& t : enumerate_trees(7)) {
        AutomorphismGroup g = automorphism_group(t);
        for (const auto& perm : g.elements()) {
            FixedPointSet f = fixed_point_set(t, g.to_vertex_map(perm));
            CHECK_FALSE(f.empty());
            CHECK(f.midpoint_only_edges.size() <= 1);
            if (f.dimension_one()) {
                // fixed vertices + pointwise edges form a connected subtree
                std::vector<int> fv = f.fixed_vertices;
                TreeValidation sub = validate_tree(fv, f.pointwise_fixed_edges);
                CHECK(sub.ok());
            }
            if (!f.midpoint_only_edges.empty()) {
                CHECK(f.fixed_vertices.empty());
                CHECK(f.pointwise_fixed_edges.empty());
            }
        }
    }
}

TEST_CASE("involution midpoint: at most one per tree, exhaustively to 8 vertices") {
    CHECK(involution_midpoint(path(2)) == Edge{0, 1});
    CHECK_FALSE(involution_midpoint(star3()).has_value());
    for (const Tree& t : enumerate_trees(8)) {
        // must not throw: uniqueness is checked inside
        (void)involution_midpoint(t);
    }
}

TEST_CASE("level one points") {
    CHECK(level_one_points(path(5)).points.empty());
    CHECK(level_one_points(Tree()).points.empty());
    LevelOneReport star = level_one_points(star3());
    CHECK(star.points == std::vector<int>{0});
    REQUIRE(star.witness.has_value());
    LevelOneReport sp = level_one_points(spider222());
    CHECK(sp.points == std::vector<int>{0});
    REQUIRE(sp.witness.has_value());
    CHECK(sp.witness->vertex == 0);
}

TEST_CASE("a tree has no level one points exactly when it is a simple chain") {
    for (const Tree& t : enumerate_trees(8)) {
        bool chain = true;
        for (int v : t.vertices())
            if (t.valence(v) > 2) chain = false;
        LevelOneReport r = level_one_points(t);
        CHECK(r.points.empty() == chain);
        if (!r.points.empty()) {
            // the existence lemma: some level-one point sees two tips
            REQUIRE(r.witness.has_value());
        }
    }
}

TEST_CASE("stabilizers") {
    CHECK(stabilizer(star3(), 0).order() == 6);
    CHECK(stabilizer(star3(), 1).order() == 2);
    CHECK(stabilizer(path(3), 0).order() == 1);
}

TEST_CASE("stabilizer decomposition and the order formula") {
    SECTION("star at the center: one class of three leaves") {
        StabilizerStructure s = decompose_stabilizer(star3(), 0);
        REQUIRE(s.classes.size() == 1);
        CHECK(s.classes[0].multiplicity == 3);
        CHECK(s.classes[0].root_fixing_order == 1);
        CHECK(s.group_order == 6);
    }
    SECTION("spider with legs 1,1,2") {
        StabilizerStructure s = decompose_stabilizer(spider112(), 0);
        REQUIRE(s.classes.size() == 2);
        CHECK(s.group_order == 2);
        CHECK(s.group_order == stabilizer(spider112(), 0).order());
    }
    SECTION("two identical depth-2 branches") {
        // path of length 4 around a center: two identical legs of length 2
        Tree t({0, 1, 2, 3, 4}, {{0, 1}, {1, 2}, {0, 3}, {3, 4}});
        StabilizerStructure s = decompose_stabilizer(t, 0);
        REQUIRE(s.classes.size() == 1);
        CHECK(s.classes[0].multiplicity == 2);
        CHECK(s.group_order == 2);  // branch groups trivial, swap of the legs
    }
    SECTION("formula matches the enumerated stabilizer for every tree and base") {
        for (const Tree& t : enumerate_trees(7)) {
            for (int v0 : t.vertices()) {
                INFO("tree " << canonical_form(t) << " base " << v0);
                CHECK(decompose_stabilizer(t, v0).group_order == stabilizer(t, v0).order());
            }
        }
    }
}

TEST_CASE("single fixed vertex analysis") {
    SECTION("star at the center has a witness and S_T = stabilizer") {
        SingleFixedVertexReport r = single_fixed_vertex_analysis(star3(), 0);
        CHECK(r.exists_witness);
        CHECK(r.s_t_equals_stabilizer);
        CHECK(r.common_fixed_is_v0);
    }
    SECTION("path at the middle: the involution is the witness") {
        SingleFixedVertexReport r = single_fixed_vertex_analysis(path(3), 1);
        CHECK(r.exists_witness);
        CHECK(r.s_t_equals_stabilizer);
    }
    SECTION("edge tree at an endpoint: no witness") {
        SingleFixedVertexReport r = single_fixed_vertex_analysis(path(2), 0);
        CHECK_FALSE(r.exists_witness);
    }
    SECTION("both directions of the fixed-set equivalence, trees to 7 vertices") {
        for (const Tree& t : enumerate_trees(7)) {
            for (int v0 : t.vertices()) {
                SingleFixedVertexReport r = single_fixed_vertex_analysis(t, v0);
                INFO("tree " << canonical_form(t) << " base " << v0);
                CHECK(r.exists_witness == r.common_fixed_is_v0);
                if (r.exists_witness) CHECK(r.s_t_equals_stabilizer);
            }
        }
    }
}

TEST_CASE("reparametrization shape") {
    SECTION("single unstable vertex, no doubles: one full factor of dimension 6") {
        ReparametrizationShape s = reparametrization_shape(LabeledTree(Tree(), 0, {}));
        REQUIRE(s.factors.size() == 1);
        CHECK(s.factors[0].double_points == 0);
        CHECK(s.total_real_dimension == 6);
    }
    SECTION("bare edge tree: two one-point factors, dimension 8") {
        Tree e({0, 1}, {{0, 1}});
        ReparametrizationShape s = reparametrization_shape(LabeledTree(e, 0, {}));
        REQUIRE(s.factors.size() == 2);
        CHECK(s.total_real_dimension == 8);
    }
    SECTION("bare path of 3: middle vertex has two doubles, dimension 10") {
        Tree p({0, 1, 2}, {{0, 1}, {1, 2}});
        ReparametrizationShape s = reparametrization_shape(LabeledTree(p, 0, {}));
        REQUIRE(s.factors.size() == 3);
        CHECK(s.total_real_dimension == 10);
        CHECK(s.factors[1].double_points == 2);
        CHECK(s.factors[1].real_dimension == 2);
    }
    SECTION("stable vertices contribute no factor") {
        Tree e({0, 1}, {{0, 1}});
        LabeledTree lt(e, 2, {{1, 0}, {2, 0}});  // vertex 0 stable, vertex 1 not
        ReparametrizationShape s = reparametrization_shape(lt);
        REQUIRE(s.factors.size() == 1);
        CHECK(s.factors[0].vertex == 1);
        CHECK(s.total_real_dimension == 4);
    }
}

TEST_CASE("realizability filter per cycle length") {
    SECTION("l = 1 admits every kind") {
        // path(3) at an end: single branch class of multiplicity 1
        RealizabilityReport r = realizable_symmetry_report(path(3), 0);
        REQUIRE(r.cycles.size() == 1);
        CHECK(r.cycles[0].cycle_length == 1);
        CHECK(r.cycles[0].tetrahedral);
        CHECK(r.cycles[0].octahedral);
        CHECK(r.cycles[0].icosahedral);
    }
    SECTION("l = 3 admits the exceptional kinds with 3-fold elements") {
        RealizabilityReport r = realizable_symmetry_report(star3(), 0);
        REQUIRE(r.cycles.size() == 1);
        CHECK(r.cycles[0].cycle_length == 3);
        CHECK(r.cycles[0].tetrahedral);
        CHECK(r.cycles[0].octahedral);
        CHECK(r.cycles[0].icosahedral);
    }
    SECTION("l = 5: icosahedral only among the exceptionals") {
        Tree s5({0, 1, 2, 3, 4, 5}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
        RealizabilityReport r = realizable_symmetry_report(s5, 0);
        REQUIRE(r.cycles.size() == 1);
        CHECK(r.cycles[0].cycle_length == 5);
        CHECK_FALSE(r.cycles[0].tetrahedral);
        CHECK_FALSE(r.cycles[0].octahedral);
        CHECK(r.cycles[0].icosahedral);
    }
    SECTION("l = 7: cyclic and dihedral only") {
        Tree s7({0, 1, 2, 3, 4, 5, 6, 7},
                {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {0, 7}});
        RealizabilityReport r = realizable_symmetry_report(s7, 0);
        REQUIRE(r.cycles.size() == 1);
        CHECK(r.cycles[0].cycle_length == 7);
        CHECK_FALSE(r.cycles[0].tetrahedral);
        CHECK_FALSE(r.cycles[0].octahedral);
        CHECK_FALSE(r.cycles[0].icosahedral);
    }
    SECTION("l = 4: octahedral only among the exceptionals") {
        Tree s4({0, 1, 2, 3, 4}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
        RealizabilityReport r = realizable_symmetry_report(s4, 0);
        CHECK_FALSE(r.cycles[0].tetrahedral);
        CHECK(r.cycles[0].octahedral);
        CHECK_FALSE(r.cycles[0].icosahedral);
    }
}
