// Walk through the combinatorial layer: enumerate small trees, inspect their
// symmetry groups, stabilizer structure and minimal stabilizations.

#include <cstdio>

#include "ntl/aut.hpp"
#include "ntl/tree.hpp"

int main() {
    for (const ntl::Tree& t : ntl::enumerate_trees(6)) {
        ntl::AutomorphismGroup g = ntl::automorphism_group(t);
        auto mid = ntl::involution_midpoint(t);
        std::printf("%-16s  |V|=%zu  |Aut|=%-4zu  midpoint=%s  stabilizations=%llu\n",
                    ntl::canonical_form(t).c_str(), t.vertex_count(), g.order(),
                    mid ? "yes" : "no ", ntl::minimal_stabilization_count(t));
        for (int v : t.vertices()) {
            ntl::StabilizerStructure s = ntl::decompose_stabilizer(t, v);
            if (s.group_order > 1 && v == t.vertices().front())
                std::printf("    stabilizer at %d has order %llu across %zu branch classes\n", v,
                            s.group_order, s.classes.size());
        }
    }
    return 0;
}
