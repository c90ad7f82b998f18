#pragma once
// Total orders on the vertices and edges of a tree induced by an order of its
// tips, the order induced on contractions, and the order a stable labeling
// puts on each vertex's special points.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ntl/errors.hpp"
#include "ntl/morphism.hpp"
#include "ntl/tree.hpp"

namespace ntl {

struct TotalOrder {
    Tree tree;
    // First element is the initial vertex (rank 0). For orders built from a
    // tip permutation this is the initial tip; an order induced by a
    // contraction that swallows the initial tip keeps its image in front even
    // if that image is no longer a tip.
    std::vector<int> ordered_tips;
    std::map<int, int> vertex_rank;
    std::map<Edge, int> edge_rank;

    std::vector<int> vertex_sequence() const {
        std::vector<int> seq(vertex_rank.size());
        for (const auto& [v, r] : vertex_rank) seq[r] = v;
        return seq;
    }
    std::vector<Edge> edge_sequence() const {
        std::vector<Edge> seq(edge_rank.size());
        for (const auto& [e, r] : edge_rank) seq[r] = e;
        return seq;
    }
    int initial_vertex() const { return vertex_sequence().front(); }
};

// The chain construction: walk [t0,t1]; for each later tip append the
// unexplored suffix (v_k, t_k] of the connecting chain [t0, t_k].
inline TotalOrder total_order_from_tip_order(const Tree& t, const std::vector<int>& ordered_tips) {
    std::vector<int> expect = tips(t);
    std::vector<int> given(ordered_tips);
    std::sort(given.begin(), given.end());
    if (given != expect)
        throw NotATipPermutation("ordered_tips must be a permutation of tips(t)");

    TotalOrder o{t, ordered_tips, {}, {}};
    int next_v = 0, next_e = 0;
    auto take_vertex = [&](int v) {
        if (!o.vertex_rank.count(v)) o.vertex_rank[v] = next_v++;
    };
    auto take_edge = [&](int a, int b) {
        Edge e = make_edge(a, b);
        if (!o.edge_rank.count(e)) o.edge_rank[e] = next_e++;
    };

    int t0 = ordered_tips.front();
    take_vertex(t0);
    for (std::size_t k = 1; k < ordered_tips.size(); ++k) {
        std::vector<int> chain = tree_path(t, t0, ordered_tips[k]);
        // skip the prefix that is already ordered; the remainder is (v_k, t_k]
        std::size_t i = 0;
        while (i + 1 < chain.size() && o.vertex_rank.count(chain[i + 1])) ++i;
        for (std::size_t j = i + 1; j < chain.size(); ++j) {
            take_edge(chain[j - 1], chain[j]);
            take_vertex(chain[j]);
        }
    }
    if (o.vertex_rank.size() != t.vertex_count() || o.edge_rank.size() != t.edge_count())
        throw IncompatibleOrder("chain construction did not exhaust the tree");
    return o;
}

// Order induced on the contracted tree: vertices ranked by the least rank of
// their preimages, edges by their (unique) preimage edge, both compacted.
// The contraction map is then order preserving; if the contraction swallowed
// the initial tip, its image stays initial.
inline TotalOrder induced_order_under_contraction(const TotalOrder& o, const Contraction& c) {
    if (!(c.source == o.tree))
        throw IncompatibleOrder("order and contraction live on different trees");
    const Tree& res = c.result;
    const int kept = c.contracted_edge.first;
    const int removed = c.contracted_edge.second;

    std::vector<std::pair<int, int>> ranked;  // (min preimage rank, vertex)
    for (int v : res.vertices()) {
        int r = o.vertex_rank.at(v);
        if (v == kept) r = std::min(r, o.vertex_rank.at(removed));
        ranked.emplace_back(r, v);
    }
    std::sort(ranked.begin(), ranked.end());

    TotalOrder out{res, {}, {}, {}};
    for (std::size_t i = 0; i < ranked.size(); ++i) out.vertex_rank[ranked[i].second] = static_cast<int>(i);

    // result edge {a,b} pulls back to the edge between preimages of a and b
    std::vector<std::pair<int, Edge>> eranked;
    for (const Edge& e : res.edges()) {
        Edge pre = e;
        if (!o.edge_rank.count(pre)) {
            // one endpoint gained its adjacency from the removed vertex
            Edge alt1 = make_edge(e.first == kept ? removed : e.first, e.second);
            Edge alt2 = make_edge(e.first, e.second == kept ? removed : e.second);
            if (o.edge_rank.count(alt1))
                pre = alt1;
            else if (o.edge_rank.count(alt2))
                pre = alt2;
            else
                throw IncompatibleOrder("result edge has no preimage edge");
        }
        eranked.emplace_back(o.edge_rank.at(pre), e);
    }
    std::sort(eranked.begin(), eranked.end());
    for (std::size_t i = 0; i < eranked.size(); ++i) out.edge_rank[eranked[i].second] = static_cast<int>(i);

    // order-preservation sanity: the map never inverts fully separated ranks
    for (int a : res.vertices()) {
        for (int b : res.vertices()) {
            if (a == b) continue;
            int amax = o.vertex_rank.at(a), bmin = o.vertex_rank.at(b);
            if (a == kept) amax = std::max(amax, o.vertex_rank.at(removed));
            if (b == kept) bmin = std::min(bmin, o.vertex_rank.at(removed));
            if (amax < bmin && !(out.vertex_rank[a] < out.vertex_rank[b]))
                throw IncompatibleOrder("induced order is not compatible with the contraction");
        }
    }

    // leading element, then the remaining tips of the result by rank
    std::vector<int> seq = out.vertex_sequence();
    std::vector<int> res_tips = tips(res);
    std::set<int> tip_set(res_tips.begin(), res_tips.end());
    if (!tip_set.count(seq.front())) out.ordered_tips.push_back(seq.front());
    for (int v : seq)
        if (tip_set.count(v)) out.ordered_tips.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// orders from stable labelings

struct SpecialPointRef {
    enum class Kind { Double, Mark };
    Kind kind;
    int partner;  // Double: the opposite vertex u of the edge; Mark: the label index

    bool operator==(const SpecialPointRef& o) const {
        return kind == o.kind && partner == o.partner;
    }
    bool operator<(const SpecialPointRef& o) const {
        if (kind != o.kind) return kind < o.kind;
        return partner < o.partner;
    }
};

struct LabeledOrder {
    TotalOrder order;
    // per vertex: doubles first (by edge rank), then label loops ascending
    std::map<int, std::vector<SpecialPointRef>> special_points;
};

// Tips ordered by their least label; special points per vertex follow the
// documented interleaving (doubles by edge rank, then marks ascending).
inline LabeledOrder order_from_labeling(const LabeledTree& lt) {
    if (!is_stable_labeled(lt))
        throw UnstableLabeledTree("order_from_labeling needs a stable labeled tree");
    const Tree& t = lt.tree();

    std::vector<std::pair<int, int>> keyed;  // (min label, tip)
    for (int tp : tips(t)) {
        std::vector<int> ls = lt.labels_at(tp);
        if (ls.empty())
            throw TipWithoutLabel("tip " + std::to_string(tp) + " carries no label");
        keyed.emplace_back(ls.front(), tp);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> tip_order;
    for (const auto& [key, tp] : keyed) tip_order.push_back(tp);

    LabeledOrder out{total_order_from_tip_order(t, tip_order), {}};
    for (int v : t.vertices()) {
        std::vector<std::pair<int, int>> dbl;  // (edge rank, partner)
        for (int w : t.neighbors(v)) dbl.emplace_back(out.order.edge_rank.at(make_edge(v, w)), w);
        std::sort(dbl.begin(), dbl.end());
        std::vector<SpecialPointRef>& pts = out.special_points[v];
        for (const auto& [r, w] : dbl) pts.push_back({SpecialPointRef::Kind::Double, w});
        for (int i : lt.labels_at(v)) pts.push_back({SpecialPointRef::Kind::Mark, i});
    }
    return out;
}

}  // namespace ntl
