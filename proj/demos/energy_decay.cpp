// Run the contraction-decay experiment on the sphere inclusion and print the
// per-step window energies next to the closed-form disc areas.

#include <cstdio>

#include "ntl/energy.hpp"

int main() {
    ntl::DiscretizedSphereMap h = ntl::sphere_inclusion(128);
    ntl::PropernessExperimentConfig cfg = ntl::PropernessExperimentConfig::defaults();
    cfg.resolution = 128;
    ntl::ExperimentReport rep = ntl::properness_experiment(h, cfg);
    std::printf("threshold delta2/N2 = %.6f (delta2 = %.6f, N2 = %lld)\n", rep.threshold,
                rep.delta2, rep.n2);
    std::printf("%-10s %-14s %-14s\n", "a", "E(window)", "closed form");
    for (std::size_t i = 0; i < rep.a.size(); ++i)
        std::printf("%-10.6f %-14.8f %-14.8f\n", rep.a[i], rep.energy_window[i],
                    ntl::disc_area_closed_form(rep.a[i], cfg.R));
    std::printf("fitted exponent %.4f, verdict %s\n", rep.fitted_exponent,
                rep.pass ? "PASS" : "FAIL");
    return rep.pass ? 0 : 1;
}
