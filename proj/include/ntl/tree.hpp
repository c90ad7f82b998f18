#pragma once
// Finite simplicial trees and n-labeled trees: validation, tips, canonical
// forms (AHU rooted at the center), enumeration up to isomorphism, stability
// and minimal stabilizations.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ntl/errors.hpp"

namespace ntl {

using Edge = std::pair<int, int>;  // stored with first < second

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

class Tree {
public:
    Tree() : vertices_{0} { build_adjacency(); }  // single-vertex tree

    // Throws NtlError on invalid input; use validate_tree for a report.
    Tree(std::vector<int> vertices, std::vector<Edge> edges);

    const std::vector<int>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_vertex(int v) const { return adj_.count(v) != 0; }
    bool has_edge(int u, int v) const {
        return std::binary_search(edges_.begin(), edges_.end(), make_edge(u, v));
    }
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
    int valence(int v) const { return static_cast<int>(adj_.at(v).size()); }

    bool operator==(const Tree& o) const {
        return vertices_ == o.vertices_ && edges_ == o.edges_;
    }

private:
    std::vector<int> vertices_;               // sorted
    std::vector<Edge> edges_;                 // sorted, normalized
    std::map<int, std::vector<int>> adj_;     // sorted neighbor lists

    friend Tree unchecked_tree(std::vector<int>, std::vector<Edge>);
    void build_adjacency();
    Tree(std::vector<int> vertices, std::vector<Edge> edges, int /*unchecked*/);
};

struct TreeIssue {
    enum class Kind { EmptyVertexSet, SelfLoop, DuplicateEdge, UnknownVertex, HasCycle, Disconnected };
    Kind kind;
    std::string detail;
};

inline const char* to_string(TreeIssue::Kind k) {
    switch (k) {
        case TreeIssue::Kind::EmptyVertexSet: return "EmptyVertexSet";
        case TreeIssue::Kind::SelfLoop: return "SelfLoop";
        case TreeIssue::Kind::DuplicateEdge: return "DuplicateEdge";
        case TreeIssue::Kind::UnknownVertex: return "UnknownVertex";
        case TreeIssue::Kind::HasCycle: return "HasCycle";
        case TreeIssue::Kind::Disconnected: return "Disconnected";
    }
    return "?";
}

struct TreeValidation {
    std::optional<Tree> tree;
    std::vector<TreeIssue> issues;
    bool ok() const { return tree.has_value(); }
};

// Construction bypassing validation; callers guarantee tree-ness.
Tree unchecked_tree(std::vector<int> vertices, std::vector<Edge> edges);

namespace detail {

class UnionFind {
public:
    explicit UnionFind(const std::vector<int>& ids) {
        for (int v : ids) parent_[v] = v;
    }
    int find(int v) {
        int r = v;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[v] != r) { int nxt = parent_[v]; parent_[v] = r; v = nxt; }
        return r;
    }
    bool unite(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        parent_[a] = b;
        return true;
    }

private:
    std::map<int, int> parent_;
};

}  // namespace detail

inline TreeValidation validate_tree(const std::vector<int>& vertices_in,
                                    const std::vector<Edge>& edges_in) {
    TreeValidation out;
    std::vector<int> vertices(vertices_in);
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (vertices.empty()) {
        out.issues.push_back({TreeIssue::Kind::EmptyVertexSet, "a tree has at least one vertex"});
        return out;
    }
    std::set<int> vset(vertices.begin(), vertices.end());
    std::set<Edge> seen;
    std::vector<Edge> edges;
    for (const Edge& e : edges_in) {
        if (e.first == e.second) {
            out.issues.push_back({TreeIssue::Kind::SelfLoop,
                                  "edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ")"});
            continue;
        }
        Edge n = make_edge(e.first, e.second);
        if (!vset.count(n.first) || !vset.count(n.second)) {
            out.issues.push_back({TreeIssue::Kind::UnknownVertex,
                                  "edge (" + std::to_string(n.first) + "," + std::to_string(n.second) +
                                      ") references a vertex outside the vertex set"});
            continue;
        }
        if (!seen.insert(n).second) {
            out.issues.push_back({TreeIssue::Kind::DuplicateEdge,
                                  "edge (" + std::to_string(n.first) + "," + std::to_string(n.second) + ")"});
            continue;
        }
        edges.push_back(n);
    }
    detail::UnionFind uf(vertices);
    bool cycle = false;
    for (const Edge& e : edges) {
        if (!uf.unite(e.first, e.second)) cycle = true;
    }
    if (cycle) out.issues.push_back({TreeIssue::Kind::HasCycle, "edge set contains a cycle"});
    std::set<int> roots;
    for (int v : vertices) roots.insert(uf.find(v));
    if (roots.size() > 1) {
        out.issues.push_back({TreeIssue::Kind::Disconnected,
                              std::to_string(roots.size()) + " connected components"});
    }
    if (out.issues.empty()) out.tree = unchecked_tree(std::move(vertices), std::move(edges));
    return out;
}

inline void Tree::build_adjacency() {
    for (int v : vertices_) adj_[v];
    for (const Edge& e : edges_) {
        adj_[e.first].push_back(e.second);
        adj_[e.second].push_back(e.first);
    }
    for (auto& [v, nb] : adj_) std::sort(nb.begin(), nb.end());
}

inline Tree::Tree(std::vector<int> vertices, std::vector<Edge> edges) {
    TreeValidation v = validate_tree(vertices, edges);
    if (!v.ok()) {
        std::string msg = "invalid tree:";
        for (const auto& i : v.issues) msg += std::string(" ") + to_string(i.kind);
        throw NtlError(msg);
    }
    *this = *v.tree;
}

inline Tree::Tree(std::vector<int> vertices, std::vector<Edge> edges, int)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(vertices_.begin(), vertices_.end());
    std::sort(edges_.begin(), edges_.end());
    build_adjacency();
}

inline Tree unchecked_tree(std::vector<int> vertices, std::vector<Edge> edges) {
    return Tree(std::move(vertices), std::move(edges), 0);
}

// Vertices of valence one. The single-vertex tree reports its lone vertex:
// total orders need an initial element there.
inline std::vector<int> tips(const Tree& t) {
    if (t.vertex_count() == 1) return {t.vertices().front()};
    std::vector<int> out;
    for (int v : t.vertices())
        if (t.valence(v) == 1) out.push_back(v);
    return out;
}

// Unique path between two vertices, endpoints included.
inline std::vector<int> tree_path(const Tree& t, int from, int to) {
    if (from == to) return {from};
    std::map<int, int> parent;
    std::vector<int> queue{from};
    parent[from] = from;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        if (v == to) break;
        for (int w : t.neighbors(v)) {
            if (!parent.count(w)) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    std::vector<int> path;
    for (int v = to;; v = parent.at(v)) {
        path.push_back(v);
        if (v == from) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

inline std::map<int, int> distances_from(const Tree& t, int src) {
    std::map<int, int> dist;
    std::vector<int> queue{src};
    dist[src] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (int w : t.neighbors(v)) {
            if (!dist.count(w)) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

// Center of the tree by repeated leaf stripping: one or two vertices.
inline std::vector<int> tree_centers(const Tree& t) {
    std::map<int, int> deg;
    for (int v : t.vertices()) deg[v] = t.valence(v);
    std::vector<int> alive(t.vertices());
    std::vector<int> frontier;
    for (int v : alive)
        if (deg[v] <= 1) frontier.push_back(v);
    std::size_t remaining = alive.size();
    std::set<int> removed;
    while (remaining > 2) {
        std::vector<int> next;
        for (int v : frontier) {
            removed.insert(v);
            --remaining;
            for (int w : t.neighbors(v)) {
                if (removed.count(w)) continue;
                if (--deg[w] == 1) next.push_back(w);
            }
        }
        frontier = std::move(next);
    }
    std::vector<int> centers;
    for (int v : t.vertices())
        if (!removed.count(v)) centers.push_back(v);
    std::sort(centers.begin(), centers.end());
    return centers;
}

namespace detail {

inline std::string ahu_encode(const Tree& t, int v, int parent) {
    std::vector<std::string> kids;
    for (int w : t.neighbors(v))
        if (w != parent) kids.push_back(ahu_encode(t, w, v));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (const auto& k : kids) out += k;
    out += ")";
    return out;
}

}  // namespace detail

// Complete invariant of the rooted tree (t, root).
inline std::string rooted_canonical_form(const Tree& t, int root) {
    return detail::ahu_encode(t, root, -1);
}

// Complete isomorphism invariant: AHU encoding rooted at the center
// (lexicographically smaller of the two encodings for bicentral trees).
inline std::string canonical_form(const Tree& t) {
    std::string best;
    for (int c : tree_centers(t)) {
        std::string enc = rooted_canonical_form(t, c);
        if (best.empty() || enc < best) best = enc;
    }
    return best;
}

inline bool isomorphic(const Tree& a, const Tree& b) {
    return canonical_form(a) == canonical_form(b);
}

// Rebuild a tree from a canonical encoding, vertex ids in preorder from 0.
inline Tree tree_from_encoding(const std::string& enc) {
    std::vector<int> vertices;
    std::vector<Edge> edges;
    std::vector<int> stack;
    int next = 0;
    for (char c : enc) {
        if (c == '(') {
            int id = next++;
            vertices.push_back(id);
            if (!stack.empty()) edges.push_back(make_edge(stack.back(), id));
            stack.push_back(id);
        } else if (c == ')') {
            stack.pop_back();
        }
    }
    return unchecked_tree(std::move(vertices), std::move(edges));
}

// One canonical representative per isomorphism class, all vertex counts up to
// v_max, grown by leaf attachment and deduplicated through canonical forms.
// Deterministic: sizes ascending, encodings sorted within a size.
inline std::vector<Tree> enumerate_trees(int v_max) {
    if (v_max < 1 || v_max > 10)
        throw SizeLimitExceeded("enumerate_trees supports 1..10 vertices, got " + std::to_string(v_max));
    std::vector<Tree> out;
    std::vector<std::string> layer{canonical_form(Tree())};
    out.push_back(tree_from_encoding(layer.front()));
    for (int n = 2; n <= v_max; ++n) {
        std::set<std::string> next;
        for (const std::string& enc : layer) {
            Tree t = tree_from_encoding(enc);
            for (int v : t.vertices()) {
                std::vector<int> vs(t.vertices());
                vs.push_back(n - 1);
                std::vector<Edge> es(t.edges());
                es.push_back(make_edge(v, n - 1));
                next.insert(canonical_form(unchecked_tree(std::move(vs), std::move(es))));
            }
        }
        layer.assign(next.begin(), next.end());
        for (const std::string& enc : layer) out.push_back(tree_from_encoding(enc));
    }
    return out;
}

// ---------------------------------------------------------------------------
// labeled trees

class LabeledTree {
public:
    LabeledTree(Tree tree, int n, std::map<int, int> label)
        : tree_(std::move(tree)), n_(n), label_(std::move(label)) {
        if (n_ < 0) throw NtlError("label count must be nonnegative");
        for (int i = 1; i <= n_; ++i) {
            auto it = label_.find(i);
            if (it == label_.end())
                throw NtlError("label " + std::to_string(i) + " is unassigned");
            if (!tree_.has_vertex(it->second))
                throw NtlError("label " + std::to_string(i) + " points to a non-vertex");
        }
        if (static_cast<int>(label_.size()) != n_)
            throw NtlError("label map mentions indices outside 1..n");
    }

    const Tree& tree() const { return tree_; }
    int n() const { return n_; }
    const std::map<int, int>& label() const { return label_; }
    int label_target(int i) const { return label_.at(i); }

    // L^{-1}(v), ascending
    std::vector<int> labels_at(int v) const {
        std::vector<int> out;
        for (const auto& [i, w] : label_)
            if (w == v) out.push_back(i);
        return out;
    }
    int label_count_at(int v) const {
        int c = 0;
        for (const auto& [i, w] : label_)
            if (w == v) ++c;
        return c;
    }

    bool operator==(const LabeledTree& o) const {
        return tree_ == o.tree_ && n_ == o.n_ && label_ == o.label_;
    }

private:
    Tree tree_;
    int n_;
    std::map<int, int> label_;  // {1..n} -> vertex
};

inline bool is_stable_vertex(const LabeledTree& lt, int v) {
    return lt.tree().valence(v) + lt.label_count_at(v) >= 3;
}

inline bool is_stable_labeled(const LabeledTree& lt) {
    for (int v : lt.tree().vertices())
        if (!is_stable_vertex(lt, v)) return false;
    return true;
}

// Per-vertex special point counts of the nodal curve modeled on the tree:
// doubles #d_v = Val(v), marks #x_v = #L^{-1}(v), together #p_v.
struct NodalShape {
    LabeledTree labeled;
    std::map<int, int> double_points;   // #d_v
    std::map<int, int> marked_points;   // #x_v
    std::map<int, int> special_points;  // #p_v
};

inline NodalShape nodal_shape(const LabeledTree& lt) {
    NodalShape s{lt, {}, {}, {}};
    for (int v : lt.tree().vertices()) {
        int d = lt.tree().valence(v);
        int x = lt.label_count_at(v);
        s.double_points[v] = d;
        s.marked_points[v] = x;
        s.special_points[v] = d + x;
    }
    return s;
}

// ---------------------------------------------------------------------------
// minimal stabilizations

// Labels forced at v by minimality: 3 - Val(v) on unstable vertices, else 0.
inline int minimal_labels_at(const Tree& t, int v) {
    int val = t.valence(v);
    return val >= 3 ? 0 : 3 - val;
}

inline int minimal_stabilization_n(const Tree& t) {
    int n = 0;
    for (int v : t.vertices()) n += minimal_labels_at(t, v);
    return n;
}

// Number of distinct label maps: multinomial n! / prod(c_v!).
inline unsigned long long minimal_stabilization_count(const Tree& t) {
    auto binom = [](int m, int c) {
        unsigned long long r = 1;
        for (int k = 0; k < c; ++k) r = r * static_cast<unsigned long long>(m - k) / (k + 1);
        return r;
    };
    int remaining = minimal_stabilization_n(t);
    unsigned long long total = 1;
    for (int v : t.vertices()) {
        int c = minimal_labels_at(t, v);
        total *= binom(remaining, c);
        remaining -= c;
    }
    return total;
}

// Enumerates every stable labeling with the forced counts, as label maps.
// Vertices take their label blocks in id order; within a vertex the choice of
// label subsets runs in lexicographic order, so the stream is deterministic.
template <typename Fn>
void for_each_minimal_stabilization(const Tree& t, Fn&& fn) {
    const int n = minimal_stabilization_n(t);
    std::vector<std::pair<int, int>> slots;  // (vertex, count), id order
    for (int v : t.vertices()) {
        int c = minimal_labels_at(t, v);
        if (c > 0) slots.emplace_back(v, c);
    }
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    std::map<int, int> label;

    std::function<bool(std::size_t, std::vector<int>&)> rec =
        [&](std::size_t si, std::vector<int>& avail) -> bool {
        if (si == slots.size()) {
            return fn(LabeledTree(t, n, label));
        }
        auto [v, c] = slots[si];
        std::vector<int> choice(c);
        std::function<bool(int, int)> pick = [&](int start, int depth) -> bool {
            if (depth == c) {
                std::vector<int> rest;
                rest.reserve(avail.size() - c);
                std::set<int> chosen(choice.begin(), choice.end());
                for (int x : avail)
                    if (!chosen.count(x)) rest.push_back(x);
                for (int x : choice) label[x] = v;
                bool cont = rec(si + 1, rest);
                for (int x : choice) label.erase(x);
                return cont;
            }
            for (int i = start; i < static_cast<int>(avail.size()); ++i) {
                choice[depth] = avail[i];
                if (!pick(i + 1, depth + 1)) return false;
            }
            return true;
        };
        return pick(0, 0);
    };
    rec(0, pool);
}

// All minimal stabilizations as a list. Use the streaming form for trees with
// many tips; the count grows multinomially.
inline std::vector<LabeledTree> minimal_stabilizations(const Tree& t) {
    std::vector<LabeledTree> out;
    for_each_minimal_stabilization(t, [&](const LabeledTree& lt) {
        out.push_back(lt);
        return true;
    });
    return out;
}

// n - 3 == #E + sum over stable vertices of (#d_v - 3); exact for every
// minimal stabilization.
inline bool minimal_stabilization_formula_holds(const Tree& t, int n) {
    long long rhs = static_cast<long long>(t.edge_count());
    for (int v : t.vertices()) {
        if (t.valence(v) >= 3) rhs += t.valence(v) - 3;
    }
    return static_cast<long long>(n) - 3 == rhs;
}

}  // namespace ntl
