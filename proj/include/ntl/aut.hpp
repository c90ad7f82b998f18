#pragma once
// Automorphism groups of trees and labeled trees, fixed loci on the geometric
// realization, involution midpoints, level-one points, stabilizer structure,
// reparametrization-group shape, and the realizability filter against the
// finite subgroups of PSL(2,C).

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ntl/errors.hpp"
#include "ntl/mobius.hpp"
#include "ntl/morphism.hpp"
#include "ntl/tree.hpp"

namespace ntl {

// Vertex permutations are stored as index-based arrays over the sorted vertex
// list; to_vertex_map converts back to id space.
class AutomorphismGroup {
public:
    AutomorphismGroup(Tree tree, std::vector<std::vector<int>> elements)
        : tree_(std::move(tree)), elements_(std::move(elements)) {
        index_.reserve(tree_.vertex_count());
        for (int v : tree_.vertices()) index_.push_back(v);
        std::sort(elements_.begin(), elements_.end());
    }

    const Tree& tree() const { return tree_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<std::vector<int>>& elements() const { return elements_; }

    int vertex_at(std::size_t idx) const { return index_[idx]; }
    std::size_t index_of(int v) const {
        return std::lower_bound(index_.begin(), index_.end(), v) - index_.begin();
    }

    std::map<int, int> to_vertex_map(const std::vector<int>& perm) const {
        std::map<int, int> m;
        for (std::size_t i = 0; i < perm.size(); ++i) m[index_[i]] = index_[perm[i]];
        return m;
    }
    std::vector<int> from_vertex_map(const std::map<int, int>& m) const {
        std::vector<int> perm(index_.size());
        for (std::size_t i = 0; i < index_.size(); ++i)
            perm[i] = static_cast<int>(index_of(m.at(index_[i])));
        return perm;
    }

    bool contains(const std::vector<int>& perm) const {
        return std::binary_search(elements_.begin(), elements_.end(), perm);
    }

    static std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
        std::vector<int> h(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) h[i] = g[f[i]];
        return h;
    }
    static std::vector<int> inverse(const std::vector<int>& f) {
        std::vector<int> h(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) h[f[i]] = static_cast<int>(i);
        return h;
    }
    static bool is_identity(const std::vector<int>& f) {
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] != static_cast<int>(i)) return false;
        return true;
    }

    // closure, inverses and identity; quadratic in the order
    bool verify_group_axioms() const {
        std::vector<int> id(index_.size());
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
        if (!contains(id)) return false;
        for (const auto& f : elements_) {
            if (!contains(inverse(f))) return false;
            for (const auto& g : elements_)
                if (!contains(compose(f, g))) return false;
        }
        return true;
    }

private:
    Tree tree_;
    std::vector<std::vector<int>> elements_;  // sorted lexicographically
    std::vector<int> index_;                  // sorted vertex ids
};

namespace detail {

// Backtracking over vertices in BFS order; candidate images must carry the
// same rooted canonical form, which prunes everything but genuine symmetry.
inline std::vector<std::map<int, int>> isomorphism_search(const Tree& t1, const Tree& t2) {
    std::vector<std::map<int, int>> out;
    if (t1.vertex_count() != t2.vertex_count() || t1.edge_count() != t2.edge_count()) return out;

    std::map<int, std::string> inv1, inv2;
    for (int v : t1.vertices()) inv1[v] = rooted_canonical_form(t1, v);
    for (int v : t2.vertices()) inv2[v] = rooted_canonical_form(t2, v);

    std::vector<int> order;
    {
        std::set<int> seen;
        std::vector<int> queue{t1.vertices().front()};
        seen.insert(queue.front());
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            order.push_back(queue[qi]);
            for (int w : t1.neighbors(queue[qi]))
                if (seen.insert(w).second) queue.push_back(w);
        }
    }

    std::map<int, int> assign;
    std::set<int> used;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == order.size()) {
            out.push_back(assign);
            return;
        }
        int v = order[k];
        for (int w : t2.vertices()) {
            if (used.count(w)) continue;
            if (inv1[v] != inv2[w]) continue;
            bool ok = true;
            for (int nb : t1.neighbors(v)) {
                auto it = assign.find(nb);
                if (it != assign.end() && !t2.has_edge(w, it->second)) { ok = false; break; }
            }
            if (!ok) continue;
            assign[v] = w;
            used.insert(w);
            rec(k + 1);
            used.erase(w);
            assign.erase(v);
        }
    };
    rec(0);
    return out;
}

}  // namespace detail

// All isomorphisms t1 -> t2 as vertex maps (empty when none exist).
inline std::vector<std::map<int, int>> enumerate_isomorphisms(const Tree& t1, const Tree& t2) {
    return detail::isomorphism_search(t1, t2);
}

inline AutomorphismGroup automorphism_group(const Tree& t) {
    if (t.vertex_count() > 10)
        throw SizeLimitExceeded("automorphism enumeration supports up to 10 vertices");
    std::vector<std::map<int, int>> maps = detail::isomorphism_search(t, t);
    AutomorphismGroup g(t, {});
    std::vector<std::vector<int>> perms;
    perms.reserve(maps.size());
    for (const auto& m : maps) perms.push_back(g.from_vertex_map(m));
    return AutomorphismGroup(t, std::move(perms));
}

enum class LabeledAutMode { Ordered, Unordered };

// Ordered: phi after L equals L. Unordered: some relabeling permutation p
// makes phi after L equal L after p, which holds exactly when the label
// counts match fiberwise.
inline AutomorphismGroup labeled_automorphism_group(const LabeledTree& lt, LabeledAutMode mode) {
    AutomorphismGroup all = automorphism_group(lt.tree());
    std::map<int, int> counts;
    for (int v : lt.tree().vertices()) counts[v] = lt.label_count_at(v);

    std::vector<std::vector<int>> keep;
    for (const auto& perm : all.elements()) {
        std::map<int, int> phi = all.to_vertex_map(perm);
        bool ok = true;
        if (mode == LabeledAutMode::Ordered) {
            for (const auto& [i, v] : lt.label())
                if (phi.at(v) != v) { ok = false; break; }
        } else {
            for (int v : lt.tree().vertices())
                if (counts[v] != counts[phi.at(v)]) { ok = false; break; }
        }
        if (ok) keep.push_back(perm);
    }
    return AutomorphismGroup(lt.tree(), std::move(keep));
}

// ---------------------------------------------------------------------------
// fixed loci

struct FixedPointSet {
    std::vector<int> fixed_vertices;
    std::vector<Edge> pointwise_fixed_edges;  // both endpoints fixed
    std::vector<Edge> midpoint_only_edges;    // endpoints swapped

    bool empty() const {
        return fixed_vertices.empty() && midpoint_only_edges.empty();
    }
    bool dimension_one() const { return !pointwise_fixed_edges.empty(); }
};

inline FixedPointSet fixed_point_set(const Tree& t, const std::map<int, int>& phi) {
    for (int v : t.vertices()) {
        auto it = phi.find(v);
        if (it == phi.end()) throw NotAnAutomorphism("map is not total");
    }
    for (const Edge& e : t.edges())
        if (!t.has_edge(phi.at(e.first), phi.at(e.second)))
            throw NotAnAutomorphism("map does not preserve the edge relation");
    std::set<int> images;
    for (const auto& [v, w] : phi) images.insert(w);
    if (images.size() != t.vertex_count()) throw NotAnAutomorphism("map is not bijective");

    FixedPointSet out;
    for (int v : t.vertices())
        if (phi.at(v) == v) out.fixed_vertices.push_back(v);
    for (const Edge& e : t.edges()) {
        if (phi.at(e.first) == e.first && phi.at(e.second) == e.second)
            out.pointwise_fixed_edges.push_back(e);
        else if (phi.at(e.first) == e.second && phi.at(e.second) == e.first)
            out.midpoint_only_edges.push_back(e);
    }
    return out;
}

// The unique edge whose endpoints are swapped by some automorphism, if any.
// Uniqueness over the whole group is asserted.
inline std::optional<Edge> involution_midpoint(const Tree& t) {
    AutomorphismGroup g = automorphism_group(t);
    std::set<Edge> found;
    for (const auto& perm : g.elements()) {
        std::map<int, int> phi = g.to_vertex_map(perm);
        for (const Edge& e : t.edges())
            if (phi.at(e.first) == e.second && phi.at(e.second) == e.first) found.insert(e);
    }
    if (found.size() > 1)
        throw NtlError("more than one involution midpoint; tree invariant violated");
    if (found.empty()) return std::nullopt;
    return *found.begin();
}

// ---------------------------------------------------------------------------
// level-one points

struct LevelOneWitness {
    int vertex;
    int tip1, tip2;  // two tips with maximal simple chains into vertex
};

struct LevelOneReport {
    std::vector<int> points;
    std::optional<LevelOneWitness> witness;
};

// A non-tip v is level one if some tip reaches it by a chain whose interior
// vertices all have valence two; empty exactly for simple chains.
inline LevelOneReport level_one_points(const Tree& t) {
    LevelOneReport out;
    std::map<int, std::vector<int>> reached;  // level-one vertex -> tips
    for (int tp : tips(t)) {
        if (t.vertex_count() == 1) break;
        int prev = tp;
        int cur = t.neighbors(tp).front();
        while (t.valence(cur) == 2) {
            int nxt = t.neighbors(cur).front() == prev ? t.neighbors(cur).back()
                                                       : t.neighbors(cur).front();
            prev = cur;
            cur = nxt;
        }
        if (t.valence(cur) >= 3) reached[cur].push_back(tp);
        // valence 1: the walk crossed a simple chain; no level-one point here
    }
    for (const auto& [v, tipss] : reached) out.points.push_back(v);
    std::sort(out.points.begin(), out.points.end());
    for (const auto& [v, tipss] : reached) {
        if (tipss.size() >= 2) {
            out.witness = LevelOneWitness{v, tipss[0], tipss[1]};
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// stabilizers and their structure

inline AutomorphismGroup stabilizer(const Tree& t, int v0) {
    if (!t.has_vertex(v0)) throw NtlError("stabilizer: no such vertex");
    AutomorphismGroup all = automorphism_group(t);
    std::size_t i0 = all.index_of(v0);
    std::vector<std::vector<int>> keep;
    for (const auto& perm : all.elements())
        if (perm[i0] == static_cast<int>(i0)) keep.push_back(perm);
    return AutomorphismGroup(t, std::move(keep));
}

// Branch subtree hanging at neighbor v_k of v0 (v0 side removed), rooted at v_k.
inline Tree branch_subtree(const Tree& t, int v0, int vk) {
    std::vector<int> verts;
    std::set<int> seen{v0, vk};
    std::vector<int> queue{vk};
    verts.push_back(vk);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (int w : t.neighbors(queue[qi])) {
            if (seen.insert(w).second) {
                verts.push_back(w);
                queue.push_back(w);
            }
        }
    }
    std::set<int> in(verts.begin(), verts.end());
    std::vector<Edge> edges;
    for (const Edge& e : t.edges())
        if (in.count(e.first) && in.count(e.second)) edges.push_back(e);
    return unchecked_tree(std::move(verts), std::move(edges));
}

// |Aut of rooted tree| through the recursive class formula.
inline unsigned long long rooted_automorphism_order(const Tree& t, int root) {
    std::map<std::string, std::pair<int, unsigned long long>> classes;  // enc -> (mult, order)
    for (int w : t.neighbors(root)) {
        Tree br = branch_subtree(t, root, w);
        std::string enc = rooted_canonical_form(br, w);
        auto it = classes.find(enc);
        if (it == classes.end())
            classes[enc] = {1, rooted_automorphism_order(br, w)};
        else
            it->second.first += 1;
    }
    unsigned long long total = 1;
    for (const auto& [enc, mu] : classes) {
        auto [mult, sub] = mu;
        for (int k = 0; k < mult; ++k) total *= sub;
        for (int k = 2; k <= mult; ++k) total *= static_cast<unsigned long long>(k);
    }
    return total;
}

struct BranchClass {
    Tree representative;    // branch subtree of the first member
    int root;               // its root (a neighbor of the base vertex)
    std::vector<int> members;  // all neighbor roots in this isomorphism class
    int multiplicity;
    unsigned long long root_fixing_order;  // |Gamma^{T_k}_{v_k}|
};

struct StabilizerStructure {
    int base_vertex;
    std::vector<BranchClass> classes;
    unsigned long long group_order;  // prod |Gamma_k|^{l_k} * l_k!
};

inline StabilizerStructure decompose_stabilizer(const Tree& t, int v0) {
    if (!t.has_vertex(v0)) throw NtlError("decompose_stabilizer: no such vertex");
    StabilizerStructure out{v0, {}, 1};
    std::map<std::string, std::size_t> index;
    for (int w : t.neighbors(v0)) {
        Tree br = branch_subtree(t, v0, w);
        std::string enc = rooted_canonical_form(br, w);
        auto it = index.find(enc);
        if (it == index.end()) {
            index[enc] = out.classes.size();
            out.classes.push_back(BranchClass{br, w, {w}, 1, rooted_automorphism_order(br, w)});
        } else {
            out.classes[it->second].members.push_back(w);
            out.classes[it->second].multiplicity += 1;
        }
    }
    for (const BranchClass& c : out.classes) {
        for (int k = 0; k < c.multiplicity; ++k) out.group_order *= c.root_fixing_order;
        for (int k = 2; k <= c.multiplicity; ++k)
            out.group_order *= static_cast<unsigned long long>(k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// single fixed vertex analysis

struct SingleFixedVertexReport {
    bool exists_witness = false;
    std::optional<std::map<int, int>> witness;  // F_{|phi|} == {v0}
    bool s_t_equals_stabilizer = false;
    bool common_fixed_is_v0 = false;
};

// Intersection of the fixed loci of a set of automorphisms: common fixed
// vertices, common pointwise edges, common midpoints.
struct CommonFixedSet {
    std::vector<int> vertices;
    std::vector<Edge> pointwise_edges;
    std::vector<Edge> midpoints;

    bool is_single_vertex(int v0) const {
        return vertices.size() == 1 && vertices.front() == v0 && pointwise_edges.empty() &&
               midpoints.empty();
    }
};

inline CommonFixedSet common_fixed_set(const AutomorphismGroup& g) {
    const Tree& t = g.tree();
    std::set<int> verts(t.vertices().begin(), t.vertices().end());
    std::set<Edge> pw(t.edges().begin(), t.edges().end());
    std::set<Edge> mid(t.edges().begin(), t.edges().end());
    for (const auto& perm : g.elements()) {
        std::map<int, int> phi = g.to_vertex_map(perm);
        FixedPointSet f = fixed_point_set(t, phi);
        std::set<int> fv(f.fixed_vertices.begin(), f.fixed_vertices.end());
        std::set<Edge> fe(f.pointwise_fixed_edges.begin(), f.pointwise_fixed_edges.end());
        std::set<Edge> fm(f.midpoint_only_edges.begin(), f.midpoint_only_edges.end());
        // a midpoint stays fixed under phi if the edge is pointwise fixed or swapped
        for (auto it = verts.begin(); it != verts.end();)
            it = fv.count(*it) ? std::next(it) : verts.erase(it);
        for (auto it = pw.begin(); it != pw.end();)
            it = fe.count(*it) ? std::next(it) : pw.erase(it);
        for (auto it = mid.begin(); it != mid.end();)
            it = (fe.count(*it) || fm.count(*it)) ? std::next(it) : mid.erase(it);
    }
    CommonFixedSet out;
    out.vertices.assign(verts.begin(), verts.end());
    out.pointwise_edges.assign(pw.begin(), pw.end());
    out.midpoints.assign(mid.begin(), mid.end());
    return out;
}

inline SingleFixedVertexReport single_fixed_vertex_analysis(const Tree& t, int v0) {
    if (!t.has_vertex(v0)) throw NtlError("single_fixed_vertex_analysis: no such vertex");
    AutomorphismGroup all = automorphism_group(t);
    AutomorphismGroup stab = stabilizer(t, v0);

    SingleFixedVertexReport out;
    for (const auto& perm : stab.elements()) {
        std::map<int, int> phi = stab.to_vertex_map(perm);
        FixedPointSet f = fixed_point_set(t, phi);
        if (f.fixed_vertices == std::vector<int>{v0} && f.pointwise_fixed_edges.empty() &&
            f.midpoint_only_edges.empty()) {
            out.exists_witness = true;
            out.witness = phi;
            break;
        }
    }
    out.s_t_equals_stabilizer = all.order() == stab.order();
    out.common_fixed_is_v0 = common_fixed_set(stab).is_single_vertex(v0);
    return out;
}

// ---------------------------------------------------------------------------
// reparametrization shape (continuous part)

struct ReparametrizationFactor {
    int vertex;
    int double_points;   // 0, 1 or 2 for an unstable vertex
    int real_dimension;  // 6 / 4 / 2
};

struct ReparametrizationShape {
    std::vector<ReparametrizationFactor> factors;  // unstable vertices only
    int total_real_dimension = 0;
};

inline ReparametrizationShape reparametrization_shape(const LabeledTree& lt) {
    ReparametrizationShape out;
    for (int v : lt.tree().vertices()) {
        if (is_stable_vertex(lt, v)) continue;
        int d = lt.tree().valence(v);  // double points of the modeled component
        int dim = d == 0 ? 6 : (d == 1 ? 4 : 2);
        out.factors.push_back({v, d, dim});
        out.total_real_dimension += dim;
    }
    return out;
}

// ---------------------------------------------------------------------------
// realizability against the finite subgroups of PSL(2,C)

struct CycleRealizability {
    int cycle_length;               // multiplicity l of one branch class
    // Cyclic(m), Dihedral(m) admissible for every multiple m of l;
    // exceptional kinds only when they contain an element of order l.
    bool tetrahedral = false;
    bool octahedral = false;
    bool icosahedral = false;
};

struct RealizabilityReport {
    int base_vertex;
    std::vector<CycleRealizability> cycles;
};

// order-l containment scan over the sampled exceptional groups
inline bool contains_element_of_order(const FiniteSubgroupSample& s, int l) {
    for (const MobiusTransform& g : s.elements)
        if (element_order(g, s.order()) == l) return true;
    return false;
}

inline RealizabilityReport realizable_symmetry_report(const Tree& t, int v0) {
    static const FiniteSubgroupSample tetra =
        standard_finite_subgroup({SubgroupKind::Family::Tetrahedral, 0});
    static const FiniteSubgroupSample octa =
        standard_finite_subgroup({SubgroupKind::Family::Octahedral, 0});
    static const FiniteSubgroupSample icosa =
        standard_finite_subgroup({SubgroupKind::Family::Icosahedral, 0});

    StabilizerStructure s = decompose_stabilizer(t, v0);
    RealizabilityReport out{v0, {}};
    for (const BranchClass& c : s.classes) {
        CycleRealizability r;
        r.cycle_length = c.multiplicity;
        r.tetrahedral = c.multiplicity == 1 || contains_element_of_order(tetra, c.multiplicity);
        r.octahedral = c.multiplicity == 1 || contains_element_of_order(octa, c.multiplicity);
        r.icosahedral = c.multiplicity == 1 || contains_element_of_order(icosa, c.multiplicity);
        out.cycles.push_back(r);
    }
    return out;
}

}  // namespace ntl
