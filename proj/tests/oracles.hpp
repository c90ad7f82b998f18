#pragma once
// Test-only oracles, independent of the library code paths they check:
// brute-force isomorphism by bijection search and brute-force tree
// enumeration by edge-subset scan.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "ntl/tree.hpp"

namespace oracle {

// bijection search with degree pruning; no canonical forms involved
inline bool isomorphic(const ntl::Tree& a, const ntl::Tree& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    std::vector<int> da, db;
    for (int v : a.vertices()) da.push_back(a.valence(v));
    for (int v : b.vertices()) db.push_back(b.valence(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;

    const std::vector<int>& va = a.vertices();
    std::map<int, int> assign;
    std::set<int> used;
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k == va.size()) return true;
        int v = va[k];
        for (int w : b.vertices()) {
            if (used.count(w)) continue;
            if (a.valence(v) != b.valence(w)) continue;
            bool ok = true;
            for (int nb : a.neighbors(v)) {
                auto it = assign.find(nb);
                if (it != assign.end() && !b.has_edge(w, it->second)) { ok = false; break; }
            }
            // edge-reflecting too: assigned non-neighbors must stay non-neighbors
            if (ok) {
                for (const auto& [x, y] : assign) {
                    bool adjx = a.has_edge(v, x);
                    bool adjy = b.has_edge(w, y);
                    if (adjx != adjy) { ok = false; break; }
                }
            }
            if (!ok) continue;
            assign[v] = w;
            used.insert(w);
            if (rec(k + 1)) return true;
            used.erase(w);
            assign.erase(v);
        }
        return false;
    };
    return rec(0);
}

// all trees on n labeled vertices via edge subsets, filtered to one
// representative per brute-force isomorphism class
inline std::vector<ntl::Tree> enumerate_trees_brute(int n) {
    std::vector<ntl::Tree> reps;
    if (n == 1) {
        reps.push_back(ntl::Tree());
        return reps;
    }
    std::vector<ntl::Edge> all_edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all_edges.push_back({i, j});
    const int m = static_cast<int>(all_edges.size());
    std::vector<int> vertices(n);
    for (int i = 0; i < n; ++i) vertices[i] = i;

    std::vector<int> pick(n - 1);
    std::function<void(int, int)> choose = [&](int start, int depth) {
        if (depth == n - 1) {
            std::vector<ntl::Edge> es;
            for (int idx : pick) es.push_back(all_edges[idx]);
            ntl::TreeValidation v = ntl::validate_tree(vertices, es);
            if (!v.ok()) return;
            for (const ntl::Tree& r : reps)
                if (oracle::isomorphic(r, *v.tree)) return;
            reps.push_back(*v.tree);
            return;
        }
        for (int i = start; i < m; ++i) {
            pick[depth] = i;
            choose(i + 1, depth + 1);
        }
    };
    choose(0, 0);
    return reps;
}

}  // namespace oracle
