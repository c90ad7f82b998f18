#pragma once
// The claim-to-check matrix: every verifiable statement the library encodes,
// run exhaustively at desk scale. The CLI `verify` subcommand prints one line
// per claim; the acceptance suite reuses the same checks with pinned
// parameters.

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ntl/aut.hpp"
#include "ntl/energy.hpp"
#include "ntl/mobius.hpp"
#include "ntl/moduli.hpp"
#include "ntl/morphism.hpp"
#include "ntl/order.hpp"
#include "ntl/tree.hpp"

namespace ntl {

struct VerificationSuiteConfig {
    int max_vertices = 8;              // global cap, <= 10
    std::uint64_t seed = 20240515;
    int resolution = 256;              // grid resolution for the energy checks
    int chart_trials = 1000;
    int kak_trials = 10000;
    int random_frames = 10;
    long long stabilization_stream_cap = 200000;

    int cap(int wanted) const { return std::min(wanted, max_vertices); }
};

struct CheckResult {
    std::string id;
    std::string claim;
    bool pass = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0;
};

namespace verify_detail {

template <typename Fn>
void for_each_vertex_map(const Tree& dom, const Tree& cod, Fn&& fn) {
    const std::vector<int>& dv = dom.vertices();
    const std::vector<int>& cv = cod.vertices();
    std::map<int, int> m;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == dv.size()) {
            fn(m);
            return;
        }
        for (int w : cv) {
            m[dv[k]] = w;
            rec(k + 1);
        }
        m.erase(dv[k]);
    };
    rec(0);
}

inline std::vector<std::vector<int>> tip_permutations(const Tree& t) {
    std::vector<int> tp = tips(t);
    std::sort(tp.begin(), tp.end());
    std::vector<std::vector<int>> out;
    do out.push_back(tp);
    while (std::next_permutation(tp.begin(), tp.end()));
    return out;
}

struct RandomSource {
    std::mt19937_64 rng;
    explicit RandomSource(std::uint64_t seed) : rng(seed) {}

    Complex complex() {
        std::normal_distribution<double> g(0.0, 1.0);
        return Complex(g(rng), g(rng));
    }
    SpherePoint point() { return SpherePoint(complex(), complex()); }
    MobiusTransform transform(double entry_cap = 4.0) {
        while (true) {
            Mat2 m{complex(), complex(), complex(), complex()};
            if (std::abs(m.det()) < 0.1) continue;
            MobiusTransform t(m);
            double worst = std::max({std::abs(t.matrix().a), std::abs(t.matrix().b),
                                     std::abs(t.matrix().c), std::abs(t.matrix().d)});
            if (worst <= entry_cap) return t;
        }
    }
    MobiusTransform su2() {
        std::normal_distribution<double> g(0.0, 1.0);
        double q0 = g(rng), q1 = g(rng), q2 = g(rng), q3 = g(rng);
        double n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
        return MobiusTransform(Mat2{Complex(q0 / n, q1 / n), Complex(q2 / n, q3 / n),
                                    Complex(-q2 / n, q3 / n), Complex(q0 / n, -q1 / n)});
    }
};

inline std::vector<LabeledTree> chart_fixtures() {
    std::vector<LabeledTree> out;
    out.emplace_back(Tree(), 4, std::map<int, int>{{1, 0}, {2, 0}, {3, 0}, {4, 0}});
    Tree edge({0, 1}, {{0, 1}});
    out.emplace_back(edge, 8, std::map<int, int>{{1, 0}, {2, 0}, {3, 0}, {4, 0},
                                                 {5, 1}, {6, 1}, {7, 1}, {8, 1}});
    Tree path({0, 1, 2}, {{0, 1}, {1, 2}});
    out.emplace_back(path, 8, std::map<int, int>{{1, 0}, {2, 0}, {3, 0}, {4, 1},
                                                 {5, 1}, {6, 2}, {7, 2}, {8, 2}});
    return out;
}

inline SpecialPointConfig random_config(const LabeledTree& lt, RandomSource& rnd) {
    LabeledOrder lo = order_from_labeling(lt);
    while (true) {
        std::map<int, std::vector<SpherePoint>> pts;
        bool ok = true;
        for (int v : lt.tree().vertices()) {
            std::size_t need = lo.special_points.at(v).size();
            std::vector<SpherePoint>& target = pts[v];
            int guard = 0;
            while (target.size() < need && guard < 500) {
                ++guard;
                SpherePoint cand = rnd.point();
                bool far = true;
                for (const SpherePoint& p : target)
                    if (chordal_distance(cand, p) < 0.08) far = false;
                if (far) target.push_back(cand);
            }
            if (target.size() < need) { ok = false; break; }
        }
        if (ok) return SpecialPointConfig(lt, std::move(pts));
    }
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// individual checks; each returns pass/fail plus a short detail string

inline CheckResult check_morphism_iff_no_flip(const VerificationSuiteConfig& cfg) {
    CheckResult r{"morphism-iff-no-flip",
                  "a pre-morphism is a morphism exactly when it has no flipped identification",
                  true, false, "", 0};
    const int K = cfg.cap(5);
    std::vector<Tree> all = enumerate_trees(K);
    long long premorphisms = 0, counterexamples = 0;
    for (const Tree& t1 : all) {
        for (const Tree& t2 : all) {
            verify_detail::for_each_vertex_map(t1, t2, [&](const std::map<int, int>& vm) {
                TreeMorphism m(t1, t2, vm);
                if (!m.premorphism()) return;
                ++premorphisms;
                bool flipped = has_flipped_identification(m).has_value();
                if (flipped == m.morphism()) ++counterexamples;
            });
        }
    }
    r.pass = counterexamples == 0;
    std::ostringstream os;
    os << premorphisms << " pre-morphisms over trees with <= " << K << " vertices, "
       << counterexamples << " counterexamples";
    r.detail = os.str();
    return r;
}

inline CheckResult check_tip_determination(const VerificationSuiteConfig& cfg) {
    CheckResult r{"tip-determination",
                  "isomorphisms agreeing on every tip are identical", true, false, "", 0};
    const int K = cfg.cap(7);
    std::vector<Tree> all = enumerate_trees(K);
    long long pairs = 0, clashes = 0;
    auto scan = [&](const Tree& t1, const Tree& t2) {
        std::vector<std::map<int, int>> isos = enumerate_isomorphisms(t1, t2);
        std::vector<int> tps = tips(t1);
        for (std::size_t i = 0; i < isos.size(); ++i) {
            for (std::size_t j = i + 1; j < isos.size(); ++j) {
                ++pairs;
                bool agree = true;
                for (int tp : tps)
                    if (isos[i].at(tp) != isos[j].at(tp)) { agree = false; break; }
                if (agree) ++clashes;
            }
        }
    };
    for (const Tree& t1 : all) {
        scan(t1, t1);
        // a relabeled copy exercises isomorphisms between distinct trees
        int shift = static_cast<int>(t1.vertex_count()) + 3;
        std::vector<int> vs;
        std::vector<Edge> es;
        for (int v : t1.vertices()) vs.push_back(shift - v);
        for (const Edge& e : t1.edges()) es.push_back(make_edge(shift - e.first, shift - e.second));
        scan(t1, unchecked_tree(std::move(vs), std::move(es)));
    }
    r.pass = clashes == 0;
    std::ostringstream os;
    os << pairs << " isomorphism pairs over trees with <= " << K
       << " vertices (originals and relabeled copies), " << clashes << " agreed on the tips";
    r.detail = os.str();
    return r;
}

inline CheckResult check_stable_labeled_automorphisms(const VerificationSuiteConfig& cfg) {
    CheckResult r{"stable-labeled-automorphisms",
                  "stable labelings admit no ordered symmetry; unordered symmetry equals Aut(T)",
                  true, false, "", 0};
    const int K = cfg.cap(6);
    long long labelings = 0, bad = 0;
    for (const Tree& t : enumerate_trees(K)) {
        AutomorphismGroup g = automorphism_group(t);
        std::vector<std::map<int, int>> phis;
        for (const auto& perm : g.elements()) phis.push_back(g.to_vertex_map(perm));
        for_each_minimal_stabilization(t, [&](const LabeledTree& lt) {
            ++labelings;
            std::map<int, int> counts;
            for (int v : t.vertices()) counts[v] = lt.label_count_at(v);
            std::size_t ordered = 0, unordered = 0;
            for (const auto& phi : phis) {
                bool fixes_labels = true;
                for (const auto& [i, v] : lt.label())
                    if (phi.at(v) != v) { fixes_labels = false; break; }
                if (fixes_labels) ++ordered;
                bool counts_match = true;
                for (int v : t.vertices())
                    if (counts[v] != counts[phi.at(v)]) { counts_match = false; break; }
                if (counts_match) ++unordered;
            }
            if (ordered != 1) ++bad;
            if (unordered != phis.size()) ++bad;
            return true;
        });
    }
    r.pass = bad == 0;
    std::ostringstream os;
    os << labelings << " minimal stabilizations over trees with <= " << K << " vertices, " << bad
       << " violations";
    r.detail = os.str();
    return r;
}

inline CheckResult check_minimal_stabilization_formula(const VerificationSuiteConfig& cfg) {
    CheckResult r{"minimal-stabilization-formula",
                  "n - 3 = #E + sum over stable vertices of (#d_v - 3) for every stabilization",
                  true, false, "", 0};
    const int K = cfg.cap(8);
    long long trees = 0, streamed = 0, bad = 0;
    for (const Tree& t : enumerate_trees(K)) {
        ++trees;
        int n = minimal_stabilization_n(t);
        if (!minimal_stabilization_formula_holds(t, n)) ++bad;
        unsigned long long expect = minimal_stabilization_count(t);
        long long seen = 0;
        for_each_minimal_stabilization(t, [&](const LabeledTree& lt) {
            ++seen;
            if (lt.n() != n || !minimal_stabilization_formula_holds(t, lt.n())) ++bad;
            if (!is_stable_labeled(lt)) ++bad;
            return seen < cfg.stabilization_stream_cap;
        });
        streamed += seen;
        if (seen < cfg.stabilization_stream_cap &&
            static_cast<unsigned long long>(seen) != expect)
            ++bad;
    }
    r.pass = bad == 0;
    std::ostringstream os;
    os << trees << " trees (<= " << K << " vertices), " << streamed
       << " stabilizations streamed (per-tree cap " << cfg.stabilization_stream_cap << "), " << bad
       << " violations";
    r.detail = os.str();
    return r;
}

inline CheckResult check_order_contraction(const VerificationSuiteConfig& cfg) {
    CheckResult r{"order-contraction-compatibility",
                  "tip orders induce total orders that contractions carry over order-preservingly",
                  true, false, "", 0};
    const int K = cfg.cap(6);
    long long cases = 0, bad = 0;
    for (const Tree& t : enumerate_trees(K)) {
        if (t.vertex_count() < 2) continue;
        for (const std::vector<int>& tp : verify_detail::tip_permutations(t)) {
            TotalOrder o = total_order_from_tip_order(t, tp);
            for (const Edge& e : t.edges()) {
                for (auto [keep, drop] :
                     {std::pair{e.first, e.second}, std::pair{e.second, e.first}}) {
                    ++cases;
                    Contraction c = contract_edge(t, keep, drop);
                    TotalOrder io;
                    try {
                        io = induced_order_under_contraction(o, c);
                    } catch (const IncompatibleOrder&) {
                        ++bad;
                        continue;
                    }
                    std::vector<int> rtips = tips(c.result);
                    int initial = io.vertex_sequence().front();
                    bool initial_is_tip =
                        std::find(rtips.begin(), rtips.end(), initial) != rtips.end();
                    if (io.vertex_rank.at(initial) != 0) ++bad;
                    // the tip order is the one induced by the source ranks
                    {
                        std::vector<std::pair<int, int>> by_rank;
                        for (int tip : rtips) {
                            int rank = o.vertex_rank.at(tip);
                            if (tip == keep) rank = std::min(rank, o.vertex_rank.at(drop));
                            by_rank.emplace_back(rank, tip);
                        }
                        std::sort(by_rank.begin(), by_rank.end());
                        std::vector<int> expect_tips;
                        if (!initial_is_tip) expect_tips.push_back(initial);
                        for (const auto& [rk, tip] : by_rank) expect_tips.push_back(tip);
                        if (io.ordered_tips != expect_tips) ++bad;
                    }
                    // full order preservation over separated fibers
                    for (int a : c.result.vertices()) {
                        for (int b : c.result.vertices()) {
                            if (a == b) continue;
                            int amax = o.vertex_rank.at(a), bmin = o.vertex_rank.at(b);
                            if (a == keep) amax = std::max(amax, o.vertex_rank.at(drop));
                            if (b == keep) bmin = std::min(bmin, o.vertex_rank.at(drop));
                            if (amax < bmin && !(io.vertex_rank.at(a) < io.vertex_rank.at(b)))
                                ++bad;
                        }
                    }
                    // chain-interior contractions re-derive from the induced tips
                    if (initial_is_tip && t.valence(drop) == 2) {
                        TotalOrder redo = total_order_from_tip_order(c.result, io.ordered_tips);
                        if (redo.vertex_rank != io.vertex_rank || redo.edge_rank != io.edge_rank)
                            ++bad;
                    }
                }
            }
        }
    }
    r.pass = bad == 0;
    std::ostringstream os;
    os << cases << " (tree, tip order, directed edge) cases over trees with <= " << K
       << " vertices, " << bad << " violations";
    r.detail = os.str();
    return r;
}

inline CheckResult check_ordered_tree_rigidity(const VerificationSuiteConfig& cfg) {
    CheckResult r{"ordered-tree-rigidity",
                  "an automorphism preserving a tip order is the identity", true, false, "", 0};
    const int K = cfg.cap(7);
    long long checked = 0, bad = 0;
    for (const Tree& t : enumerate_trees(K)) {
        AutomorphismGroup g = automorphism_group(t);
        std::vector<int> tps = tips(t);
        for (const auto& perm : g.elements()) {
            std::map<int, int> phi = g.to_vertex_map(perm);
            bool fixes_tips = true;
            for (int tp : tps)
                if (phi.at(tp) != tp) { fixes_tips = false; break; }
            if (!fixes_tips) continue;
            ++checked;
            for (const auto& [v, w] : phi)
                if (v != w) { ++bad; break; }
        }
    }
    r.pass = bad == 0;
    std::ostringstream os;
    os << checked << " tip-fixing automorphisms over trees with <= " << K << " vertices, " << bad
       << " nontrivial";
    r.detail = os.str();
    return r;
}

inline CheckResult check_involution_midpoint(const VerificationSuiteConfig& cfg) {
    CheckResult r{"involution-midpoint-uniqueness",
                  "at most one edge admits an endpoint-swapping symmetry", true, false, "", 0};
    const int K = cfg.cap(8);
    long long trees = 0, bad = 0, with_midpoint = 0;
    for (const Tree& t : enumerate_trees(K)) {
        ++trees;
        AutomorphismGroup g = automorphism_group(t);
        std::set<Edge> found;
        for (const auto& perm : g.elements()) {
            std::map<int, int> phi = g.to_vertex_map(perm);
            for (const Edge& e : t.edges())
                if (phi.at(e.first) == e.second && phi.at(e.second) == e.first) found.insert(e);
        }
        if (found.size() > 1) ++bad;
        if (found.size() == 1) ++with_midpoint;
    }
    r.pass = bad == 0;
    std::ostringstream os;
    os << trees << " trees (<= " << K << " vertices), " << with_midpoint
       << " with a midpoint, " << bad << " with more than one";
    r.detail = os.str();
    return r;
}

inline CheckResult check_stabilizer_formula(const VerificationSuiteConfig& cfg) {
    CheckResult r{"stabilizer-order-formula",
                  "|Gamma_v0| equals the product over branch classes of |Gamma_k|^l * l!",
                  true, false, "", 0};
    const int K = cfg.cap(8);
    long long cases = 0, bad = 0;
    std::vector<Tree> all = enumerate_trees(K);
    for (const Tree& t : all) {
        for (int v0 : t.vertices()) {
            ++cases;
            if (decompose_stabilizer(t, v0).group_order != stabilizer(t, v0).order()) ++bad;
        }
    }
    r.pass = bad == 0;
    std::ostringstream os;
    os << cases << " (tree, base vertex) cases over trees with <= " << K << " vertices, " << bad
       << " formula mismatches";
    r.detail = os.str();
    return r;
}

inline CheckResult check_single_fixed_vertex(const VerificationSuiteConfig& cfg) {
    CheckResult r{"single-fixed-vertex-criterion",
                  "a symmetry fixing exactly one vertex exists iff the stabilizer's common fixed "
                  "set is that vertex, and then every symmetry fixes it",
                  true, false, "", 0};
    const int K = cfg.cap(8);
    long long cases = 0, bad = 0, witnessed = 0;
    for (const Tree& t : enumerate_trees(K)) {
        for (int v0 : t.vertices()) {
            ++cases;
            SingleFixedVertexReport rep = single_fixed_vertex_analysis(t, v0);
            if (rep.exists_witness != rep.common_fixed_is_v0) ++bad;
            if (rep.exists_witness) {
                ++witnessed;
                if (!rep.s_t_equals_stabilizer) ++bad;
            }
        }
    }
    r.pass = bad == 0;
    std::ostringstream os;
    os << cases << " (tree, base vertex) cases, " << witnessed << " witnessed, " << bad
       << " violations";
    r.detail = os.str();
    return r;
}

inline CheckResult check_chart_invariance(const VerificationSuiteConfig& cfg) {
    CheckResult r{"chart-invariance",
                  "the multi-cross-ratio chart is invariant under the per-component group action",
                  true, false, "", 0};
    verify_detail::RandomSource rnd(cfg.seed);
    std::vector<LabeledTree> fixtures = verify_detail::chart_fixtures();
    double worst = 0;
    for (int trial = 0; trial < cfg.chart_trials; ++trial) {
        const LabeledTree& lt = fixtures[trial % fixtures.size()];
        SpecialPointConfig c = verify_detail::random_config(lt, rnd);
        TransformTuple tuple;
        for (int v : lt.tree().vertices()) tuple[v] = rnd.transform();
        worst = std::max(worst, max_coordinate_distance(chart(c), chart(h_t_act(c, tuple))));
    }
    r.pass = worst <= 1e-9;
    std::ostringstream os;
    os << cfg.chart_trials << " random (configuration, tuple) pairs, max deviation " << worst;
    r.detail = os.str();
    return r;
}

inline CheckResult check_chart_slice_roundtrip(const VerificationSuiteConfig& cfg) {
    CheckResult r{"chart-slice-roundtrip",
                  "chart after reconstruct is the identity; moving to the slice is rigid and "
                  "preserves the chart",
                  true, false, "", 0};
    verify_detail::RandomSource rnd(cfg.seed + 1);
    std::vector<LabeledTree> fixtures = verify_detail::chart_fixtures();
    double worst_roundtrip = 0, worst_rigidity = 0;
    bool exact = true;
    const int trials = std::max(10, cfg.chart_trials / 10);
    for (int trial = 0; trial < trials; ++trial) {
        const LabeledTree& lt = fixtures[trial % fixtures.size()];
        SpecialPointConfig c = verify_detail::random_config(lt, rnd);
        auto [slice, tuple] = to_slice(c);
        worst_roundtrip = std::max(worst_roundtrip,
                                   max_coordinate_distance(chart(c), chart(slice)));
        // exact reconstruction from the slice chart
        CrossRatioCoordinates w = chart(slice);
        SpecialPointConfig rebuilt = reconstruct_from_chart(lt, w);
        if (!(chart(rebuilt) == w)) exact = false;
        auto [slice2, tuple2] = to_slice(slice);
        for (const auto& [v, g] : tuple2)
            worst_rigidity = std::max(worst_rigidity,
                                      psl_distance(g, MobiusTransform::identity()));
    }
    r.pass = exact && worst_roundtrip <= 1e-9 && worst_rigidity <= 1e-10;
    std::ostringstream os;
    os << trials << " trials; exact reconstruction " << (exact ? "yes" : "NO")
       << ", slice chart deviation " << worst_roundtrip << ", rigidity residual " << worst_rigidity;
    r.detail = os.str();
    return r;
}

inline CheckResult check_kak(const VerificationSuiteConfig& cfg) {
    CheckResult r{"kak-reconstruction",
                  "u D(a) v reconstructs the input within 1e-12; a = 1 exactly on SU(2)",
                  true, false, "", 0};
    verify_detail::RandomSource rnd(cfg.seed + 2);
    double worst = 0;
    bool a_range_ok = true;
    for (int i = 0; i < cfg.kak_trials; ++i) {
        MobiusTransform g = rnd.transform(1e9);
        KAKDecomposition k = kak_decompose(g);
        worst = std::max(worst, kak_residual(k, g));
        if (!(k.a > 0 && k.a <= 1)) a_range_ok = false;
    }
    bool su2_exact = true;
    for (int i = 0; i < 200; ++i) {
        if (kak_decompose(rnd.su2()).a != 1.0) su2_exact = false;
    }
    r.pass = worst <= 1e-12 && a_range_ok && su2_exact;
    std::ostringstream os;
    os << cfg.kak_trials << " random matrices, max residual " << worst << ", SU(2) inputs exact: "
       << (su2_exact ? "yes" : "NO");
    r.detail = os.str();
    return r;
}

inline CheckResult check_finite_subgroups(const VerificationSuiteConfig&) {
    CheckResult r{"finite-subgroup-classification",
                  "standard cyclic, dihedral and polyhedral samples classify as themselves",
                  true, false, "", 0};
    using F = SubgroupKind::Family;
    int bad = 0, total = 0;
    for (int l = 1; l <= 8; ++l) {
        ++total;
        if (!(classify_finite_subgroup(standard_finite_subgroup({F::Cyclic, l})) ==
              SubgroupKind{F::Cyclic, l}))
            ++bad;
    }
    for (int l = 2; l <= 8; ++l) {
        ++total;
        if (!(classify_finite_subgroup(standard_finite_subgroup({F::Dihedral, l})) ==
              SubgroupKind{F::Dihedral, l}))
            ++bad;
    }
    for (auto kind : {SubgroupKind{F::Tetrahedral, 0}, SubgroupKind{F::Octahedral, 0},
                      SubgroupKind{F::Icosahedral, 0}}) {
        ++total;
        if (!(classify_finite_subgroup(standard_finite_subgroup(kind)) == kind)) ++bad;
    }
    r.pass = bad == 0;
    std::ostringstream os;
    os << total << " standard samples, " << bad << " misclassified";
    r.detail = os.str();
    return r;
}

inline CheckResult check_exceptional_orders(const VerificationSuiteConfig&) {
    CheckResult r{"exceptional-element-orders",
                  "the polyhedral groups contain no element of order greater than six",
                  true, false, "", 0};
    using F = SubgroupKind::Family;
    const std::map<int, int> tetra_expect{{1, 1}, {2, 3}, {3, 8}};
    const std::map<int, int> octa_expect{{1, 1}, {2, 9}, {3, 8}, {4, 6}};
    const std::map<int, int> icosa_expect{{1, 1}, {2, 15}, {3, 20}, {5, 24}};
    bool ok = true;
    int max_order = 0;
    const std::vector<std::pair<SubgroupKind, std::map<int, int>>> cases{
        {{F::Tetrahedral, 0}, tetra_expect},
        {{F::Octahedral, 0}, octa_expect},
        {{F::Icosahedral, 0}, icosa_expect}};
    for (const auto& [kind, expect] : cases) {
        std::map<int, int> hist = element_order_histogram(standard_finite_subgroup(kind));
        if (hist != expect) ok = false;
        for (const auto& [o, c] : hist) max_order = std::max(max_order, o);
    }
    r.pass = ok && max_order <= 6;
    std::ostringstream os;
    os << "largest element order " << max_order << ", histograms "
       << (ok ? "as expected" : "UNEXPECTED");
    r.detail = os.str();
    return r;
}

inline CheckResult check_energy_identity(const VerificationSuiteConfig& cfg) {
    CheckResult r{"energy-identity-map",
                  "the inclusion map has energy 4 pi within 0.5%; constants below 1e-10",
                  true, false, "", 0};
    double E = energy(sphere_inclusion(cfg.resolution));
    double Ec = energy(constant_sphere_map(std::min(cfg.resolution, 64), {1.0, 2.0}));
    double rel = std::abs(E - 4 * std::numbers::pi) / (4 * std::numbers::pi);
    r.pass = rel <= tol().energy_identity_rel && Ec < 1e-10;
    std::ostringstream os;
    os << "identity energy " << E << " (rel err " << rel << "), constant energy " << Ec;
    r.detail = os.str();
    return r;
}

inline CheckResult check_energy_invariance(const VerificationSuiteConfig& cfg) {
    CheckResult r{"energy-reparametrization-invariance",
                  "whole-sphere energy is invariant under reparametrization within 1% for a >= 0.1",
                  true, false, "", 0};
    verify_detail::RandomSource rnd(cfg.seed + 3);
    DiscretizedSphereMap f = sphere_inclusion(cfg.resolution);
    double E0 = energy(f);
    double worst = 0;
    for (double a : {1.0, 0.5, 0.2, 0.1}) {
        MobiusTransform g =
            rnd.su2() * MobiusTransform::diagonal(Complex(a, 0), Complex(1, 0)) * rnd.su2();
        worst = std::max(worst, std::abs(energy(reparametrize(f, g)) - E0) / E0);
    }
    // interpolation error scales like 1/N^2; the bound is pinned at N = 256
    double scale = std::max(1.0, (256.0 / cfg.resolution) * (256.0 / cfg.resolution));
    double bound = tol().reparam_invariance_rel * scale;
    r.pass = worst <= bound;
    std::ostringstream os;
    os << "max relative deviation " << worst << " over a in {1, 0.5, 0.2, 0.1} (bound " << bound
       << " at N = " << cfg.resolution << ")";
    r.detail = os.str();
    return r;
}

inline CheckResult check_energy_decay(const VerificationSuiteConfig& cfg) {
    CheckResult r{"energy-decay-quadratic",
                  "window energies of the contracted reparametrizations decay quadratically, "
                  "fall below the concentration threshold, and the verdict is frame independent "
                  "inside the decay basin",
                  true, false, "", 0};
    verify_detail::RandomSource rnd(cfg.seed + 4);
    DiscretizedSphereMap h = sphere_inclusion(cfg.resolution);
    PropernessExperimentConfig pc = PropernessExperimentConfig::defaults();
    pc.resolution = cfg.resolution;
    ExperimentReport base = properness_experiment(h, pc);
    bool all_pass = base.pass;
    double exp_lo = base.fitted_exponent, exp_hi = base.fitted_exponent;
    int frames_run = 0;
    for (int k = 0; k < cfg.random_frames; ++k) {
        PropernessExperimentConfig fc = pc;
        fc.u = rnd.su2();
        MobiusTransform v = rnd.su2();
        int guard = 0;
        while (image_disc_max(v, fc.R) > 1.5 && guard < 10000) {
            v = rnd.su2();
            ++guard;
        }
        fc.v = v;
        ExperimentReport rep = properness_experiment(h, fc);
        ++frames_run;
        all_pass = all_pass && rep.pass;
        exp_lo = std::min(exp_lo, rep.fitted_exponent);
        exp_hi = std::max(exp_hi, rep.fitted_exponent);
    }
    r.pass = all_pass;
    std::ostringstream os;
    os << "default frames plus " << frames_run << " random basin frames, fitted exponents in ["
       << exp_lo << ", " << exp_hi << "], threshold " << base.threshold;
    r.detail = os.str();
    return r;
}

inline CheckResult check_energy_separation(const VerificationSuiteConfig& cfg) {
    CheckResult r{"energy-separation",
                  "maps with different energies separate at the midpoint level; orbits and "
                  "constants do not",
                  true, false, "", 0};
    verify_detail::RandomSource rnd(cfg.seed + 5);
    const int N = std::min(cfg.resolution, 128);
    DiscretizedSphereMap incl = sphere_inclusion(N);
    DiscretizedSphereMap cst = constant_sphere_map(N, {1.0, 0.0, 0.0});
    std::optional<double> c = energy_separation(cst, incl);
    bool ok = c.has_value() && std::abs(*c - 2 * std::numbers::pi) <= 0.02 * 2 * std::numbers::pi;
    MobiusTransform g =
        rnd.su2() * MobiusTransform::diagonal(Complex(0.35, 0), Complex(1, 0)) * rnd.su2();
    if (energy_separation(incl, reparametrize(incl, g)).has_value()) ok = false;
    DiscretizedSphereMap other = constant_sphere_map(N, {0.0, 5.0, 0.0});
    if (energy_separation(cst, other).has_value()) ok = false;
    r.pass = ok;
    std::ostringstream os;
    os << "midpoint level " << (c ? *c : -1.0) << " (expected about 2 pi)";
    r.detail = os.str();
    return r;
}

inline CheckResult check_constant_image_separation(const VerificationSuiteConfig& cfg) {
    CheckResult r{"constant-image-separation",
                  "constant maps separate exactly when their values outdistance the ball radii",
                  true, false, "", 0};
    const int N = std::min(cfg.resolution, 64);
    DiscretizedSphereMap c1 = constant_sphere_map(N, {0.0, 0.0});
    DiscretizedSphereMap c1b = constant_sphere_map(N, {0.0, 0.0});
    DiscretizedSphereMap c2 = constant_sphere_map(N, {1.0, 0.0});
    bool ok = true;
    if (c0_distance(c1, c1b) != 0.0) ok = false;
    if (constant_image_separation(c1, c1b, 0.1, 0.1)) ok = false;
    if (!constant_image_separation(c1, c2, 0.1, 0.1)) ok = false;
    DiscretizedSphereMap moved =
        reparametrize(c2, MobiusTransform::diagonal(Complex(0.2, 0), Complex(1, 0)));
    if (c0_distance(c2, moved) != 0.0) ok = false;
    r.pass = ok;
    r.detail = "identical constants stay together; distance-one constants separate at radius 0.1";
    return r;
}

inline CheckResult check_s1_invariance(const VerificationSuiteConfig& cfg) {
    CheckResult r{"s1-invariance",
                  "height-profile maps rotate into themselves; an angular perturbation has a "
                  "defect of at least 0.05",
                  true, false, "", 0};
    const int N = std::min(cfg.resolution, 128);
    auto profile = [](double t) { return std::vector<double>{t, 0.0, 0.0}; };
    DiscretizedSphereMap f = standard_s1_map(profile, N);
    double d0 = s1_invariance_defect(f);
    DiscretizedSphereMap p = sample_map(
        [&](const SpherePoint& q) {
            auto [th, ph] = sphere_angles(q);
            std::vector<double> v = profile(moment_height(q));
            v[0] += 0.1 * std::cos(ph);
            return v;
        },
        N);
    double d1 = s1_invariance_defect(p);
    r.pass = d0 <= 1e-12 && d1 >= 0.05;
    std::ostringstream os;
    os << "standard defect " << d0 << ", perturbed defect " << d1;
    r.detail = os.str();
    return r;
}

inline CheckResult check_nodal_gluing_claim(const VerificationSuiteConfig&) {
    CheckResult r{"nodal-gluing",
                  "component values agree across every double point exactly for glued data",
                  true, false, "", 0};
    Tree e({0, 1}, {{0, 1}});
    LabeledTree lt(e, 4, {{1, 0}, {2, 0}, {3, 1}, {4, 1}});
    // values produced by one ambient function evaluated at the shared point glue
    auto ambient = [](double s) { return std::vector<double>{s, s * s}; };
    GluingReport ok = check_nodal_gluing(lt, {{{0, 1}, ambient(0.5)}, {{1, 0}, ambient(0.5)}});
    GluingReport mismatch =
        check_nodal_gluing(lt, {{{0, 1}, ambient(0.5)}, {{1, 0}, ambient(0.6)}});
    r.pass = ok.glued && !mismatch.glued && mismatch.mismatched.size() == 1;
    r.detail = "shared-value data glue; a perturbed edge is reported";
    return r;
}

inline CheckResult check_area_closed_form(const VerificationSuiteConfig&) {
    CheckResult r{"area-closed-form",
                  "disc image areas match 4 pi (aR)^2/(1+(aR)^2) within 0.5%", true, false, "", 0};
    double worst = 0;
    for (double a : {1.0, 0.3, 0.1, 0.01, 0.001}) {
        for (double R : {0.1, 1.0, 10.0}) {
            MobiusTransform D = MobiusTransform::diagonal(Complex(a, 0), Complex(1, 0));
            double got = area_image_disc(D, R);
            double want = disc_area_closed_form(a, R);
            worst = std::max(worst, std::abs(got - want) / want);
        }
    }
    r.pass = worst <= tol().area_closed_form_rel;
    std::ostringstream os;
    os << "max relative deviation " << worst << " over the (a, R) sweep";
    r.detail = os.str();
    return r;
}

// ---------------------------------------------------------------------------
// the full matrix

inline std::vector<CheckResult> run_verification(const VerificationSuiteConfig& cfg) {
    using Clock = std::chrono::steady_clock;
    using CheckFn = CheckResult (*)(const VerificationSuiteConfig&);
    const std::vector<std::pair<std::string, CheckFn>> checks{
        {"morphism-iff-no-flip", check_morphism_iff_no_flip},
        {"tip-determination", check_tip_determination},
        {"stable-labeled-automorphisms", check_stable_labeled_automorphisms},
        {"minimal-stabilization-formula", check_minimal_stabilization_formula},
        {"order-contraction-compatibility", check_order_contraction},
        {"ordered-tree-rigidity", check_ordered_tree_rigidity},
        {"involution-midpoint-uniqueness", check_involution_midpoint},
        {"stabilizer-order-formula", check_stabilizer_formula},
        {"single-fixed-vertex-criterion", check_single_fixed_vertex},
        {"chart-invariance", check_chart_invariance},
        {"chart-slice-roundtrip", check_chart_slice_roundtrip},
        {"kak-reconstruction", check_kak},
        {"finite-subgroup-classification", check_finite_subgroups},
        {"exceptional-element-orders", check_exceptional_orders},
        {"energy-identity-map", check_energy_identity},
        {"energy-reparametrization-invariance", check_energy_invariance},
        {"energy-decay-quadratic", check_energy_decay},
        {"energy-separation", check_energy_separation},
        {"constant-image-separation", check_constant_image_separation},
        {"s1-invariance", check_s1_invariance},
        {"nodal-gluing", check_nodal_gluing_claim},
        {"area-closed-form", check_area_closed_form},
    };
    std::vector<CheckResult> out;
    for (const auto& [id, fn] : checks) {
        auto start = Clock::now();
        CheckResult r;
        try {
            r = fn(cfg);
        } catch (const std::exception& ex) {
            r.id = id;
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        out.push_back(std::move(r));
    }
    // statements with no desk-scale analogue, reported as skipped
    auto skipped = [](std::string id, std::string claim) {
        CheckResult r;
        r.id = std::move(id);
        r.claim = std::move(claim);
        r.pass = true;
        r.skipped = true;
        r.detail = "outside the discretized scope";
        return r;
    };
    out.push_back(skipped("sobolev-mapping-space",
                          "Banach-manifold structure of the mapping space"));
    out.push_back(skipped("evaluation-map-smoothness",
                          "smoothness class of the evaluation at double points"));
    out.push_back(skipped("universal-family-extension",
                          "extension of finite symmetries to the universal family"));
    out.push_back(skipped("weak-compactness",
                          "weak compactness of closed bounded sets of maps"));
    out.push_back(skipped("homology-decorations",
                          "stability from nonzero homology decorations"));
    return out;
}

}  // namespace ntl
