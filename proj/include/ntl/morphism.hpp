#pragma once
// Pre-morphisms and morphisms of trees, flipped identifications, edge
// contractions, and factorization of surjective morphisms into contractions.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ntl/errors.hpp"
#include "ntl/tree.hpp"

namespace ntl {

class TreeMorphism {
public:
    TreeMorphism(Tree domain, Tree codomain, std::map<int, int> vertex_map)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), map_(std::move(vertex_map)) {
        for (int v : domain_.vertices()) {
            auto it = map_.find(v);
            if (it == map_.end())
                throw NtlError("vertex map is not total: missing " + std::to_string(v));
            if (!codomain_.has_vertex(it->second))
                throw NtlError("vertex map leaves the codomain at " + std::to_string(v));
        }
        premorphism_ = check_premorphism();
        morphism_ = premorphism_ && fibers_connected();
    }

    const Tree& domain() const { return domain_; }
    const Tree& codomain() const { return codomain_; }
    const std::map<int, int>& vertex_map() const { return map_; }
    int operator()(int v) const { return map_.at(v); }

    bool premorphism() const { return premorphism_; }
    bool morphism() const { return morphism_; }

    bool surjective() const {
        std::set<int> image;
        for (const auto& [v, w] : map_) image.insert(w);
        return image.size() == codomain_.vertex_count();
    }

    bool bijective() const {
        return surjective() && domain_.vertex_count() == codomain_.vertex_count();
    }

    // bijective and edge relations match in both directions
    bool isomorphism() const {
        if (!bijective()) return false;
        if (domain_.edge_count() != codomain_.edge_count()) return false;
        for (const Edge& e : domain_.edges())
            if (!codomain_.has_edge(map_.at(e.first), map_.at(e.second))) return false;
        return true;
    }

    std::vector<int> fiber(int u) const {
        std::vector<int> out;
        for (const auto& [v, w] : map_)
            if (w == u) out.push_back(v);
        return out;
    }

    bool operator==(const TreeMorphism& o) const {
        return domain_ == o.domain_ && codomain_ == o.codomain_ && map_ == o.map_;
    }

private:
    bool check_premorphism() const {
        for (const Edge& e : domain_.edges()) {
            int a = map_.at(e.first), b = map_.at(e.second);
            if (a != b && !codomain_.has_edge(a, b)) return false;
        }
        return true;
    }

    // condition (2): every nonempty fiber induces a connected subgraph
    bool fibers_connected() const {
        std::set<int> images;
        for (const auto& [v, w] : map_) images.insert(w);
        for (int u : images) {
            std::vector<int> f = fiber(u);
            if (f.size() <= 1) continue;
            std::set<int> in(f.begin(), f.end());
            std::set<int> seen{f.front()};
            std::vector<int> queue{f.front()};
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                for (int w : domain_.neighbors(queue[qi])) {
                    if (in.count(w) && !seen.count(w)) {
                        seen.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            if (seen.size() != f.size()) return false;
        }
        return true;
    }

    Tree domain_;
    Tree codomain_;
    std::map<int, int> map_;
    bool premorphism_ = false;
    bool morphism_ = false;
};

inline bool is_premorphism(const TreeMorphism& m) { return m.premorphism(); }
inline bool is_morphism(const TreeMorphism& m) { return m.morphism(); }

inline TreeMorphism identity_morphism(const Tree& t) {
    std::map<int, int> id;
    for (int v : t.vertices()) id[v] = v;
    return TreeMorphism(t, t, id);
}

// g after f; valid when f.codomain == g.domain.
inline TreeMorphism compose(const TreeMorphism& f, const TreeMorphism& g) {
    if (!(f.codomain() == g.domain()))
        throw NtlError("compose: codomain/domain mismatch");
    std::map<int, int> m;
    for (const auto& [v, w] : f.vertex_map()) m[v] = g(w);
    return TreeMorphism(f.domain(), g.codomain(), m);
}

// A chain a - ... - b - ... - c folded onto the edge [phi(b), phi(a)] at b:
// phi(a) = phi(c) != phi(b), phi(a) E phi(b), with b strictly inside the tree
// path from a to c. Witness is the lexicographically least such triple.
using FlippedWitness = std::array<int, 3>;

inline std::optional<FlippedWitness> has_flipped_identification(const TreeMorphism& m) {
    if (!m.premorphism())
        throw NotAPremorphism("flipped identifications are defined for pre-morphisms");
    const Tree& t = m.domain();
    std::map<int, std::map<int, int>> dist;
    for (int v : t.vertices()) dist[v] = distances_from(t, v);
    for (int a : t.vertices()) {
        for (int b : t.vertices()) {
            if (b == a) continue;
            int fa = m(a), fb = m(b);
            if (fa == fb || !m.codomain().has_edge(fa, fb)) continue;
            for (int c : t.vertices()) {
                if (c == a || c == b) continue;
                if (m(c) != fa) continue;
                if (dist[a].at(b) + dist[b].at(c) == dist[a].at(c))
                    return FlippedWitness{a, b, c};
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// contractions

struct Contraction {
    Tree source;
    std::pair<int, int> contracted_edge;  // (kept v, removed u)
    Tree result;
    TreeMorphism map;  // u -> v, identity elsewhere
};

inline Contraction contract_edge(const Tree& t, int v, int u) {
    if (!t.has_edge(v, u))
        throw NotAnEdge("(" + std::to_string(v) + "," + std::to_string(u) + ") is not an edge");
    std::vector<int> vertices;
    for (int w : t.vertices())
        if (w != u) vertices.push_back(w);
    std::vector<Edge> edges;
    for (const Edge& e : t.edges()) {
        int a = e.first == u ? v : e.first;
        int b = e.second == u ? v : e.second;
        if (a == b) continue;  // the contracted edge itself
        edges.push_back(make_edge(a, b));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Tree result = unchecked_tree(std::move(vertices), std::move(edges));
    std::map<int, int> mp;
    for (int w : t.vertices()) mp[w] = (w == u ? v : w);
    TreeMorphism m(t, result, mp);
    return Contraction{t, {v, u}, std::move(result), std::move(m)};
}

struct Factorization {
    TreeMorphism isomorphism;            // relabeling of the domain
    std::vector<Contraction> contractions;  // applied after the isomorphism

    // the composite map, for checking against the input
    TreeMorphism composite() const {
        TreeMorphism acc = isomorphism;
        for (const Contraction& c : contractions) acc = compose(acc, c.map);
        return acc;
    }
};

// Writes a surjective morphism as (relabeling isomorphism) followed by a
// sequence of single-edge contractions; |contractions| = |V(dom)| - |V(cod)|.
inline Factorization factor_surjective_morphism(const TreeMorphism& m) {
    if (!m.morphism()) throw NotAMorphism("factorization needs a morphism");
    if (!m.surjective()) throw NotSurjective("factorization needs a surjective morphism");

    const Tree& dom = m.domain();
    const Tree& cod = m.codomain();

    // Target ids: inside the fiber over u the representative takes id u; other
    // vertices keep their ids unless those collide with codomain ids.
    std::map<int, int> rename;  // domain vertex -> new id
    std::set<int> cod_ids(cod.vertices().begin(), cod.vertices().end());
    std::set<int> reps;
    for (int u : cod.vertices()) {
        std::vector<int> f = m.fiber(u);
        int rep = f.front();
        for (int x : f)
            if (x == u) rep = u;
        rename[rep] = u;
        reps.insert(rep);
    }
    int fresh = 0;
    for (int v : dom.vertices()) fresh = std::max(fresh, v + 1);
    for (int u : cod.vertices()) fresh = std::max(fresh, u + 1);
    for (int v : dom.vertices()) {
        if (reps.count(v)) continue;
        if (cod_ids.count(v))
            rename[v] = fresh++;
        else
            rename[v] = v;
    }

    std::vector<int> s0_vertices;
    std::vector<Edge> s0_edges;
    for (int v : dom.vertices()) s0_vertices.push_back(rename[v]);
    std::sort(s0_vertices.begin(), s0_vertices.end());
    for (const Edge& e : dom.edges()) s0_edges.push_back(make_edge(rename[e.first], rename[e.second]));
    Tree s0 = unchecked_tree(std::move(s0_vertices), std::move(s0_edges));
    TreeMorphism iso(dom, s0, rename);

    // fiber class of each renamed vertex
    std::map<int, int> cls;  // s0 vertex -> codomain vertex
    for (int v : dom.vertices()) cls[rename[v]] = m(v);

    std::vector<Contraction> steps;
    Tree cur = s0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const Edge& e : cur.edges()) {
            int a = e.first, b = e.second;
            if (cls[a] != cls[b]) continue;
            // contract into the vertex carrying the class id if present
            int keep = a, drop = b;
            if (b == cls[b]) std::swap(keep, drop);
            Contraction c = contract_edge(cur, keep, drop);
            cur = c.result;
            steps.push_back(std::move(c));
            progress = true;
            break;
        }
    }
    return Factorization{std::move(iso), std::move(steps)};
}

// ---------------------------------------------------------------------------
// extension of tip assignments

// All morphisms t1 -> t2 extending the given values on tips(t1). The list can
// legitimately contain more than one element; uniqueness holds for
// isomorphisms but not for arbitrary morphisms.
inline std::vector<TreeMorphism> morphisms_with_tip_values(
    const Tree& t1, const Tree& t2, const std::map<int, int>& tip_assignment) {
    std::vector<int> tps = tips(t1);
    for (int tp : tps) {
        auto it = tip_assignment.find(tp);
        if (it == tip_assignment.end())
            throw NtlError("tip assignment missing tip " + std::to_string(tp));
        if (!t2.has_vertex(it->second))
            throw NtlError("tip assignment leaves the codomain");
    }

    // BFS order from the first tip keeps each new vertex adjacent to a placed one.
    std::vector<int> order;
    std::set<int> placed;
    std::vector<int> queue{tps.front()};
    placed.insert(tps.front());
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        order.push_back(queue[qi]);
        for (int w : t1.neighbors(queue[qi])) {
            if (!placed.count(w)) {
                placed.insert(w);
                queue.push_back(w);
            }
        }
    }

    std::vector<TreeMorphism> out;
    std::map<int, int> assign;
    std::set<int> tip_set(tps.begin(), tps.end());

    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == order.size()) {
            TreeMorphism cand(t1, t2, assign);
            if (cand.morphism()) out.push_back(std::move(cand));
            return;
        }
        int v = order[k];
        std::vector<int> candidates;
        if (tip_set.count(v)) {
            candidates.push_back(tip_assignment.at(v));
        } else {
            // adjacent placed vertex constrains v to image-or-neighbor
            int anchor = -1;
            for (int w : t1.neighbors(v))
                if (assign.count(w)) { anchor = assign[w]; break; }
            if (anchor < 0) {
                candidates = t2.vertices();
            } else {
                candidates.push_back(anchor);
                for (int w : t2.neighbors(anchor)) candidates.push_back(w);
            }
        }
        for (int img : candidates) {
            bool ok = true;
            for (int w : t1.neighbors(v)) {
                auto it = assign.find(w);
                if (it == assign.end()) continue;
                if (img != it->second && !t2.has_edge(img, it->second)) { ok = false; break; }
            }
            if (!ok) continue;
            assign[v] = img;
            rec(k + 1);
            assign.erase(v);
        }
    };
    rec(0);

    std::sort(out.begin(), out.end(), [](const TreeMorphism& a, const TreeMorphism& b) {
        return a.vertex_map() < b.vertex_map();
    });
    return out;
}

}  // namespace ntl
