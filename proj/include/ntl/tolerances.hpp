#pragma once
// Central numeric tolerances. Every epsilon used by the numerical modules
// lives here so thresholds stay consistent between library, CLI and tests.

namespace ntl {

struct Tolerances {
    // PSL(2,C) equality (group saturation, classification)
    double psl_equality = 1e-9;
    // KAK and slice-map reconstruction residuals
    double reconstruction = 1e-12;
    // matrices with |det| below this are treated as singular
    double singular_det = 1e-14;
    // minimum chordal separation of the special points on one component
    double point_distinct = 1e-10;
    // degenerate cross-ratio triple detection
    double cross_ratio_triple = 1e-12;
    // membership test for SU(2) inputs to the KAK decomposition
    double su2_membership = 1e-9;
    // chart invariance under the per-component PSL(2,C) action
    double chart_invariance = 1e-9;
    // nodal gluing agreement at double points
    double gluing = 1e-9;
    // a map is "constant" if its node values deviate less than this
    double constant_map = 1e-9;
    // quadrature checks: identity-map energy and disc areas
    double energy_identity_rel = 0.005;
    double area_closed_form_rel = 0.005;
    // whole-sphere energy invariance under reparametrization (a >= 0.1)
    double reparam_invariance_rel = 0.01;
    // relative quadrature error budget used by energy_separation
    double quadrature_rel = 0.02;
    double quadrature_abs = 1e-8;
};

inline const Tolerances& tol() {
    static const Tolerances t{};
    return t;
}

}  // namespace ntl
