#pragma once
// JSON formats for the CLI: trees, labeled trees, morphisms, special-point
// configurations, matrices and reports. All emitted documents carry
// schema_version; ordered_json keeps reports byte-stable.

#include <string>
#include <vector>

#include <json.hpp>

#include "ntl/aut.hpp"
#include "ntl/energy.hpp"
#include "ntl/mobius.hpp"
#include "ntl/moduli.hpp"
#include "ntl/morphism.hpp"
#include "ntl/order.hpp"
#include "ntl/tree.hpp"

namespace ntl {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// {"vertices":[...], "edges":[[u,v],...]}
inline Json tree_to_json(const Tree& t) {
    Json j;
    j["vertices"] = t.vertices();
    Json edges = Json::array();
    for (const Edge& e : t.edges()) edges.push_back({e.first, e.second});
    j["edges"] = edges;
    return j;
}

inline Tree tree_from_json(const Json& j) {
    std::vector<int> vertices = j.at("vertices").get<std::vector<int>>();
    std::vector<Edge> edges;
    for (const Json& e : j.at("edges")) edges.push_back(make_edge(e.at(0), e.at(1)));
    TreeValidation v = validate_tree(vertices, edges);
    if (!v.ok()) {
        std::string msg = "invalid tree:";
        for (const auto& i : v.issues) msg += std::string(" ") + to_string(i.kind) + " (" + i.detail + ")";
        throw NtlError(msg);
    }
    return *v.tree;
}

// adds {"n":N, "labels":{"1":v,...}}
inline Json labeled_tree_to_json(const LabeledTree& lt) {
    Json j = tree_to_json(lt.tree());
    j["n"] = lt.n();
    Json labels = Json::object();
    for (const auto& [i, v] : lt.label()) labels[std::to_string(i)] = v;
    j["labels"] = labels;
    return j;
}

inline LabeledTree labeled_tree_from_json(const Json& j) {
    Tree t = tree_from_json(j);
    int n = j.at("n").get<int>();
    std::map<int, int> label;
    for (const auto& [key, val] : j.at("labels").items()) label[std::stoi(key)] = val.get<int>();
    return LabeledTree(std::move(t), n, std::move(label));
}

// {"domain":..., "codomain":..., "map":{"0":3,...}}
inline Json morphism_to_json(const TreeMorphism& m) {
    Json j;
    j["domain"] = tree_to_json(m.domain());
    j["codomain"] = tree_to_json(m.codomain());
    Json mp = Json::object();
    for (const auto& [v, w] : m.vertex_map()) mp[std::to_string(v)] = w;
    j["map"] = mp;
    return j;
}

inline TreeMorphism morphism_from_json(const Json& j) {
    Tree dom = tree_from_json(j.at("domain"));
    Tree cod = tree_from_json(j.at("codomain"));
    std::map<int, int> mp;
    for (const auto& [key, val] : j.at("map").items()) mp[std::stoi(key)] = val.get<int>();
    return TreeMorphism(std::move(dom), std::move(cod), std::move(mp));
}

// finite value: [re, im]; infinity: "inf"
inline Json sphere_point_to_json(const SpherePoint& p) {
    if (p.is_infinity()) return Json("inf");
    Complex v = p.value();
    return Json::array({v.real(), v.imag()});
}

inline SpherePoint sphere_point_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return SpherePoint::infinity();
        throw NtlError("sphere point must be [re, im] or \"inf\"");
    }
    return SpherePoint(Complex(j.at(0).get<double>(), j.at(1).get<double>()));
}

inline Json mobius_to_json(const MobiusTransform& g) {
    const Mat2& m = g.matrix();
    auto c = [](Complex z) { return Json::array({z.real(), z.imag()}); };
    return Json::array({c(m.a), c(m.b), c(m.c), c(m.d)});
}

inline MobiusTransform mobius_from_json(const Json& j) {
    auto c = [](const Json& e) { return Complex(e.at(0).get<double>(), e.at(1).get<double>()); };
    return MobiusTransform(Mat2{c(j.at(0)), c(j.at(1)), c(j.at(2)), c(j.at(3))});
}

// configuration: labeled tree plus per-vertex homogeneous or affine points
// {"points": {"0": [[re,im]|"inf", ...], ...}}
inline Json config_to_json(const SpecialPointConfig& c) {
    Json j = labeled_tree_to_json(c.labeled_tree());
    Json pts = Json::object();
    for (const auto& [v, tp] : c.points()) {
        Json arr = Json::array();
        for (const TaggedPoint& p : tp) arr.push_back(sphere_point_to_json(p.point));
        pts[std::to_string(v)] = arr;
    }
    j["points"] = pts;
    j["slice"] = c.on_slice();
    return j;
}

inline SpecialPointConfig config_from_json(const Json& j) {
    LabeledTree lt = labeled_tree_from_json(j);
    std::map<int, std::vector<SpherePoint>> pts;
    for (const auto& [key, arr] : j.at("points").items()) {
        std::vector<SpherePoint>& target = pts[std::stoi(key)];
        for (const Json& p : arr) target.push_back(sphere_point_from_json(p));
    }
    return SpecialPointConfig(std::move(lt), std::move(pts));
}

inline Json group_to_json(const FiniteSubgroupSample& s) {
    Json arr = Json::array();
    for (const MobiusTransform& g : s.elements) arr.push_back(mobius_to_json(g));
    return arr;
}

inline FiniteSubgroupSample group_from_json(const Json& j) {
    FiniteSubgroupSample s;
    for (const Json& e : j) s.elements.push_back(mobius_from_json(e));
    return s;
}

inline Json experiment_report_to_json(const ExperimentReport& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["a"] = r.a;
    j["energy_window"] = r.energy_window;
    j["delta2"] = r.delta2;
    j["local_energy"] = r.local_energy;
    j["n2"] = r.n2;
    j["threshold"] = r.threshold;
    j["min_density_in_disc"] = r.min_density_in_disc;
    j["fitted_exponent"] = r.fitted_exponent;
    j["fitted_constant"] = r.fitted_constant;
    j["monotone_from"] = r.monotone_from;
    j["eventually_below_threshold"] = r.eventually_below_threshold;
    j["frame_disc_max"] =
        std::isfinite(r.frame_disc_max) ? Json(r.frame_disc_max) : Json("inf");
    j["pass"] = r.pass;
    j["detail"] = r.detail;
    return j;
}

}  // namespace ntl
