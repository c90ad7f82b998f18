// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here; runtime limits are enforced where stated.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "ntl/ntl.hpp"

namespace {

struct Criterion {
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string join(const std::vector<const ntl::CheckResult*>& rs) {
    std::string out;
    for (const ntl::CheckResult* r : rs) {
        if (!out.empty()) out += "; ";
        out += r->id + ": " + r->detail;
    }
    return out;
}

}  // namespace

int main() {
    ntl::VerificationSuiteConfig cfg;  // pinned: max 8 vertices, N = 256, seeded
    std::vector<Criterion> criteria;

    auto run = [&](const std::string& name, auto&& fn, double time_limit = 0.0) {
        auto start = Clock::now();
        Criterion c;
        c.name = name;
        try {
            ntl::CheckResult r = fn();
            c.pass = r.pass;
            c.detail = r.detail;
        } catch (const std::exception& ex) {
            c.pass = false;
            c.detail = std::string("exception: ") + ex.what();
        }
        c.seconds = seconds_since(start);
        if (time_limit > 0 && c.seconds > time_limit) {
            c.pass = false;
            c.detail += " [exceeded the time limit of " + std::to_string(time_limit) + "s]";
        }
        criteria.push_back(c);
    };

    run("01 morphism-iff-no-flipped-identification (trees <= 5, exhaustive, <= 60 s)",
        [&] { return ntl::check_morphism_iff_no_flip(cfg); }, 60.0);

    run("02 tip-determination for isomorphisms (trees <= 7)",
        [&] { return ntl::check_tip_determination(cfg); });

    run("03 stable labelings: trivial ordered symmetry, unordered = Aut(T) (trees <= 6)",
        [&] { return ntl::check_stable_labeled_automorphisms(cfg); });

    run("04 minimal-stabilization count formula (trees <= 8)",
        [&] { return ntl::check_minimal_stabilization_formula(cfg); });

    run("05 total-order/contraction compatibility (trees <= 6, all tip orders)",
        [&] { return ntl::check_order_contraction(cfg); });

    run("06 at most one involution midpoint (trees <= 8)",
        [&] { return ntl::check_involution_midpoint(cfg); });

    run("07 stabilizer order formula and single-fixed-vertex criterion (trees <= 8, <= 5 min)",
        [&] {
            ntl::CheckResult a = ntl::check_stabilizer_formula(cfg);
            ntl::CheckResult b = ntl::check_single_fixed_vertex(cfg);
            ntl::CheckResult r;
            r.pass = a.pass && b.pass;
            r.detail = join({&a, &b});
            return r;
        },
        300.0);

    run("08 chart invariance (1e3 random pairs, <= 1e-9) and slice round-trips",
        [&] {
            ntl::CheckResult a = ntl::check_chart_invariance(cfg);
            ntl::CheckResult b = ntl::check_chart_slice_roundtrip(cfg);
            ntl::CheckResult r;
            r.pass = a.pass && b.pass;
            r.detail = join({&a, &b});
            return r;
        });

    run("09 KAK reconstruction (1e4 random, residual <= 1e-12; a = 1 on SU(2))",
        [&] { return ntl::check_kak(cfg); });

    run("10 finite-subgroup classification (C1..C8, D2..D8, polyhedral; orders <= 6)",
        [&] {
            ntl::CheckResult a = ntl::check_finite_subgroups(cfg);
            ntl::CheckResult b = ntl::check_exceptional_orders(cfg);
            ntl::CheckResult r;
            r.pass = a.pass && b.pass;
            r.detail = join({&a, &b});
            return r;
        });

    run("11 identity-map energy 4 pi +- 0.5% at N = 256; constants < 1e-10; invariance <= 1%",
        [&] {
            ntl::CheckResult a = ntl::check_energy_identity(cfg);
            ntl::CheckResult b = ntl::check_energy_invariance(cfg);
            ntl::CheckResult r;
            r.pass = a.pass && b.pass;
            r.detail = join({&a, &b});
            return r;
        });

    run("12 quadratic energy decay, threshold crossing, frame independence (<= 2 min)",
        [&] { return ntl::check_energy_decay(cfg); }, 120.0);

    run("13 energy separation and constant-image separation (worked examples)",
        [&] {
            ntl::CheckResult a = ntl::check_energy_separation(cfg);
            ntl::CheckResult b = ntl::check_constant_image_separation(cfg);
            ntl::CheckResult r;
            r.pass = a.pass && b.pass;
            r.detail = join({&a, &b});
            return r;
        });

    run("14 S1 invariance: height profiles <= 1e-12, perturbed >= 0.05",
        [&] { return ntl::check_s1_invariance(cfg); });

    bool all = true;
    for (const Criterion& c : criteria) {
        std::printf("%s  criterion %s  (%.1fs)\n    %s\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.seconds, c.detail.c_str());
        all = all && c.pass;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed"
                            : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
