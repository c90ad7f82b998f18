// ntl: trees, labeled trees and their symmetries; Mobius numerics; moduli
// charts; discretized energy experiments. JSON in, JSON/CSV out.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ntl/ntl.hpp"

namespace {

using ntl::Json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ntl::NtlError("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw ntl::NtlError("cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
}

ntl::Complex parse_complex(const std::string& s) {
    // forms: "1.5", "1.5+0.5i", "-2i", "i"
    std::string t = s;
    if (t.empty()) throw ntl::NtlError("empty complex literal");
    if (t.back() != 'i') return ntl::Complex(std::stod(t), 0.0);
    t.pop_back();
    if (t.empty() || t == "+") return ntl::Complex(0, 1);
    if (t == "-") return ntl::Complex(0, -1);
    std::size_t split = t.size();
    for (std::size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == t.size()) return ntl::Complex(0.0, std::stod(t));
    double re = std::stod(t.substr(0, split));
    std::string ims = t.substr(split);
    double im = (ims == "+") ? 1.0 : (ims == "-") ? -1.0 : std::stod(ims);
    return ntl::Complex(re, im);
}

int cmd_trees_enumerate(int v_max, const std::string& out_path, const std::string& format) {
    std::vector<ntl::Tree> all = ntl::enumerate_trees(v_max);
    if (format == "csv") {
        std::ostringstream os;
        os << "vertices,edges,canonical_form\n";
        for (const ntl::Tree& t : all)
            os << t.vertex_count() << "," << t.edge_count() << "," << ntl::canonical_form(t) << "\n";
        if (out_path.empty())
            std::cout << os.str();
        else
            std::ofstream(out_path) << os.str();
        return kExitOk;
    }
    Json j;
    j["schema_version"] = ntl::kSchemaVersion;
    j["max_vertices"] = v_max;
    Json arr = Json::array();
    std::map<std::size_t, int> by_size;
    for (const ntl::Tree& t : all) {
        Json jt = ntl::tree_to_json(t);
        jt["canonical_form"] = ntl::canonical_form(t);
        arr.push_back(jt);
        ++by_size[t.vertex_count()];
    }
    j["count"] = all.size();
    Json counts = Json::object();
    for (const auto& [n, c] : by_size) counts[std::to_string(n)] = c;
    j["counts_by_size"] = counts;
    j["trees"] = arr;
    emit(j, out_path);
    return kExitOk;
}

int cmd_trees_validate(const std::string& path, const std::string& out_path) {
    Json in = read_json_file(path);
    std::vector<int> vertices = in.at("vertices").get<std::vector<int>>();
    std::vector<ntl::Edge> edges;
    for (const Json& e : in.at("edges")) edges.push_back(ntl::make_edge(e.at(0), e.at(1)));
    ntl::TreeValidation v = ntl::validate_tree(vertices, edges);
    Json j;
    j["schema_version"] = ntl::kSchemaVersion;
    j["valid"] = v.ok();
    Json issues = Json::array();
    for (const auto& i : v.issues)
        issues.push_back({{"kind", ntl::to_string(i.kind)}, {"detail", i.detail}});
    j["issues"] = issues;
    if (v.ok()) {
        j["tips"] = ntl::tips(*v.tree);
        j["canonical_form"] = ntl::canonical_form(*v.tree);
    }
    emit(j, out_path);
    return v.ok() ? kExitOk : kExitVerificationFailure;
}

int cmd_morphism_check(const std::string& path, const std::string& out_path) {
    ntl::TreeMorphism m = ntl::morphism_from_json(read_json_file(path));
    Json j;
    j["schema_version"] = ntl::kSchemaVersion;
    j["premorphism"] = m.premorphism();
    j["morphism"] = m.morphism();
    if (m.premorphism()) {
        auto w = ntl::has_flipped_identification(m);
        j["flipped_witness"] = w ? Json::array({(*w)[0], (*w)[1], (*w)[2]}) : Json(nullptr);
    } else {
        j["flipped_witness"] = nullptr;
    }
    emit(j, out_path);
    return kExitOk;
}

int cmd_order_compute(const std::string& path, const std::string& out_path) {
    Json in = read_json_file(path);
    ntl::LabeledTree lt = ntl::labeled_tree_from_json(in);
    ntl::LabeledOrder lo = ntl::order_from_labeling(lt);
    Json j;
    j["schema_version"] = ntl::kSchemaVersion;
    j["vertex_order"] = lo.order.vertex_sequence();
    Json eo = Json::array();
    for (const ntl::Edge& e : lo.order.edge_sequence()) eo.push_back({e.first, e.second});
    j["edge_order"] = eo;
    Json sp = Json::object();
    for (const auto& [v, pts] : lo.special_points) {
        Json arr = Json::array();
        for (const ntl::SpecialPointRef& p : pts) {
            if (p.kind == ntl::SpecialPointRef::Kind::Double)
                arr.push_back({{"double", p.partner}});
            else
                arr.push_back({{"mark", p.partner}});
        }
        sp[std::to_string(v)] = arr;
    }
    j["special_points"] = sp;
    emit(j, out_path);
    return kExitOk;
}

int cmd_aut_analyze(const std::string& path, const std::string& out_path) {
    ntl::Tree t = ntl::tree_from_json(read_json_file(path));
    ntl::AutomorphismGroup g = ntl::automorphism_group(t);
    Json j;
    j["schema_version"] = ntl::kSchemaVersion;
    j["order"] = g.order();
    Json gens = Json::array();
    for (const auto& perm : g.elements()) {
        std::map<int, int> vm = g.to_vertex_map(perm);
        Json one = Json::object();
        for (const auto& [v, w] : vm) one[std::to_string(v)] = w;
        gens.push_back(one);
    }
    j["generators"] = gens;  // the full element list; any listing generates
    auto mid = ntl::involution_midpoint(t);
    j["involution_midpoint"] = mid ? Json::array({mid->first, mid->second}) : Json(nullptr);
    ntl::LevelOneReport lvl = ntl::level_one_points(t);
    j["level_one_points"] = lvl.points;
    if (lvl.witness) {
        j["level_one_witness"] = {{"vertex", lvl.witness->vertex},
                                  {"tip1", lvl.witness->tip1},
                                  {"tip2", lvl.witness->tip2}};
    }
    Json stabs = Json::object();
    for (int v0 : t.vertices()) {
        ntl::StabilizerStructure s = ntl::decompose_stabilizer(t, v0);
        Json classes = Json::array();
        for (const ntl::BranchClass& c : s.classes)
            classes.push_back({{"roots", c.members},
                               {"multiplicity", c.multiplicity},
                               {"branch_group_order", c.root_fixing_order}});
        ntl::RealizabilityReport rr = ntl::realizable_symmetry_report(t, v0);
        Json cycles = Json::array();
        for (const ntl::CycleRealizability& c : rr.cycles) {
            cycles.push_back({{"cycle_length", c.cycle_length},
                              {"cyclic_multiples_of", c.cycle_length},
                              {"dihedral_multiples_of", c.cycle_length},
                              {"tetrahedral", c.tetrahedral},
                              {"octahedral", c.octahedral},
                              {"icosahedral", c.icosahedral}});
        }
        stabs[std::to_string(v0)] = {{"order", s.group_order},
                                     {"classes", classes},
                                     {"realizable", cycles}};
    }
    j["stabilizers"] = stabs;
    emit(j, out_path);
    return kExitOk;
}

int cmd_mobius_decompose(const std::string& matrix, const std::string& out_path) {
    std::vector<ntl::Complex> entries;
    std::stringstream ss(matrix);
    std::string tok;
    while (std::getline(ss, tok, ',')) entries.push_back(parse_complex(tok));
    if (entries.size() != 4) throw ntl::NtlError("--matrix needs four comma-separated entries");
    ntl::MobiusTransform g(entries[0], entries[1], entries[2], entries[3]);
    ntl::KAKDecomposition k = ntl::kak_decompose(g);
    Json j;
    j["schema_version"] = ntl::kSchemaVersion;
    j["u"] = ntl::mobius_to_json(k.u);
    j["a"] = k.a;
    j["v"] = ntl::mobius_to_json(k.v);
    j["residual"] = ntl::kak_residual(k, g);
    emit(j, out_path);
    return kExitOk;
}

int cmd_mobius_classify(const std::string& path, const std::string& out_path) {
    ntl::FiniteSubgroupSample s = ntl::group_from_json(read_json_file(path));
    ntl::SubgroupKind kind = ntl::classify_finite_subgroup(s);
    Json j;
    j["schema_version"] = ntl::kSchemaVersion;
    j["kind"] = kind.name();
    j["order"] = s.order();
    Json orders = Json::object();
    for (const auto& [o, c] : ntl::element_order_histogram(s)) orders[std::to_string(o)] = c;
    j["element_orders"] = orders;
    emit(j, out_path);
    return kExitOk;
}

int cmd_moduli_chart(const std::string& path, const std::string& out_path) {
    ntl::SpecialPointConfig c = ntl::config_from_json(read_json_file(path));
    ntl::CrossRatioCoordinates w = ntl::chart(c);
    Json j;
    j["schema_version"] = ntl::kSchemaVersion;
    j["slice"] = c.on_slice();
    Json jw = Json::object();
    for (const auto& [v, xs] : w.values) {
        Json per = Json::object();
        for (std::size_t i = 0; i < xs.size(); ++i)
            per[std::to_string(i + 4)] = ntl::sphere_point_to_json(xs[i]);
        jw[std::to_string(v)] = per;
    }
    j["w"] = jw;
    emit(j, out_path);
    return kExitOk;
}

int cmd_energy_experiment(const std::string& map_name, double R, int steps, int N,
                          std::uint64_t seed, const std::string& out_dir,
                          const std::string& out_path) {
    ntl::DiscretizedSphereMap h = [&] {
        if (map_name == "inclusion") return ntl::sphere_inclusion(N);
        if (map_name == "height")
            return ntl::standard_s1_map(
                [](double t) { return std::vector<double>{t, 0.0, 0.0}; }, N);
        if (map_name == "constant") return ntl::constant_sphere_map(N, {1.0, 0.0, 0.0});
        throw ntl::NtlError("unknown --map (use inclusion, height or constant)");
    }();
    ntl::PropernessExperimentConfig cfg;
    cfg.R = R;
    cfg.resolution = N;
    for (int n = 1; n <= steps; ++n) cfg.a_sequence.push_back(std::pow(2.0, -n));
    (void)seed;
    ntl::ExperimentReport rep = ntl::properness_experiment(h, cfg);
    Json j = ntl::experiment_report_to_json(rep);
    emit(j, out_path);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream csv(std::filesystem::path(out_dir) / "energy_decay.csv");
        csv << "a,energy_window\n";
        for (std::size_t i = 0; i < rep.a.size(); ++i)
            csv << rep.a[i] << "," << rep.energy_window[i] << "\n";
    }
    return rep.pass ? kExitOk : kExitVerificationFailure;
}

int cmd_verify(int max_vertices, std::uint64_t seed, int N, const std::string& out_path,
               const std::string& format) {
    ntl::VerificationSuiteConfig cfg;
    cfg.max_vertices = std::min(max_vertices, 10);
    cfg.seed = seed;
    cfg.resolution = N;
    if (N <= 64) {  // smoke-scale run: keep the random batteries proportionate
        cfg.chart_trials = 200;
        cfg.kak_trials = 2000;
        cfg.random_frames = 3;
    }
    std::vector<ntl::CheckResult> results = ntl::run_verification(cfg);
    bool all_pass = true;
    std::ostringstream lines;
    for (const ntl::CheckResult& r : results) {
        std::string status = r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL");
        if (!r.skipped && !r.pass) all_pass = false;
        lines << status << "  " << r.id << "  [" << r.detail << "]\n";
    }
    std::cout << lines.str();
    std::cout << (all_pass ? "verification passed" : "verification FAILED") << "\n";
    // no timings in the persisted report: identical configs and seeds must
    // produce byte-identical files
    if (!out_path.empty()) {
        if (format == "csv") {
            std::ofstream out(out_path);
            out << "id,status,detail\n";
            for (const ntl::CheckResult& r : results)
                out << r.id << "," << (r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL")) << ",\""
                    << r.detail << "\"\n";
        } else {
            Json j;
            j["schema_version"] = ntl::kSchemaVersion;
            j["max_vertices"] = cfg.max_vertices;
            j["seed"] = cfg.seed;
            j["resolution"] = cfg.resolution;
            Json arr = Json::array();
            for (const ntl::CheckResult& r : results)
                arr.push_back({{"id", r.id},
                               {"claim", r.claim},
                               {"status", r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL")},
                               {"detail", r.detail}});
            j["checks"] = arr;
            j["pass"] = all_pass;
            emit(j, out_path);
        }
    }
    return all_pass ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tree symmetries, moduli charts and sphere-map energies"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path, format = "json";
    app.add_option("--out", out_path, "write the report to this file")->capture_default_str();
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    // trees
    CLI::App* trees = app.add_subcommand("trees", "enumeration and validation");
    CLI::App* trees_enum = trees->add_subcommand("enumerate", "trees up to isomorphism");
    int v_max = 6;
    trees_enum->add_option("--n,--max-vertices", v_max, "largest vertex count")->required();
    CLI::App* trees_validate = trees->add_subcommand("validate", "check a tree JSON file");
    std::string tree_file;
    trees_validate->add_option("file", tree_file, "tree JSON")->required();

    // morphism
    CLI::App* morphism = app.add_subcommand("morphism", "pre-morphism and morphism checks");
    CLI::App* morphism_check = morphism->add_subcommand("check", "classify a vertex map");
    std::string morphism_file;
    morphism_check->add_option("file", morphism_file, "morphism JSON")->required();

    // order
    CLI::App* order = app.add_subcommand("order", "total orders from labelings");
    CLI::App* order_compute = order->add_subcommand("compute", "order and special points");
    std::string order_file;
    order_compute->add_option("file", order_file, "labeled tree JSON")->required();

    // aut
    CLI::App* aut = app.add_subcommand("aut", "automorphism analysis");
    CLI::App* aut_analyze = aut->add_subcommand("analyze", "full symmetry report");
    std::string aut_file;
    aut_analyze->add_option("file", aut_file, "tree JSON")->required();

    // mobius
    CLI::App* mobius = app.add_subcommand("mobius", "PSL(2,C) numerics");
    CLI::App* mobius_decompose = mobius->add_subcommand("decompose", "u D(a) v factorization");
    std::string matrix;
    mobius_decompose->add_option("--matrix", matrix, "a,b,c,d complex entries")->required();
    CLI::App* mobius_classify = mobius->add_subcommand("classify", "finite subgroup kind");
    std::string group_file;
    mobius_classify->add_option("--group", group_file, "JSON list of matrices")->required();

    // moduli
    CLI::App* moduli = app.add_subcommand("moduli", "cross-ratio charts");
    CLI::App* moduli_chart = moduli->add_subcommand("chart", "chart a configuration");
    std::string config_file;
    moduli_chart->add_option("file", config_file, "configuration JSON")->required();

    // energy
    CLI::App* energy = app.add_subcommand("energy", "discretized energy experiments");
    CLI::App* energy_exp = energy->add_subcommand("experiment", "contraction decay experiment");
    std::string map_name = "inclusion";
    double R = 1.0;
    int steps = 8, N = 256;
    std::uint64_t seed = 20240515;
    std::string out_dir;
    energy_exp->add_option("--map", map_name, "inclusion, height or constant");
    energy_exp->add_option("--R", R, "window radius");
    energy_exp->add_option("--steps", steps, "number of contraction steps");
    energy_exp->add_option("--N", N, "grid resolution");
    energy_exp->add_option("--seed", seed, "random seed");
    energy_exp->add_option("--out-dir", out_dir, "directory for the CSV");

    // verify
    CLI::App* verify = app.add_subcommand("verify", "run the whole claim-to-check matrix");
    int max_vertices = 8;
    int verify_N = 256;
    std::uint64_t verify_seed = 20240515;
    verify->add_option("--max-vertices", max_vertices, "exhaustive scan cap");
    verify->add_option("--N", verify_N, "grid resolution");
    verify->add_option("--seed", verify_seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (trees_enum->parsed()) return cmd_trees_enumerate(v_max, out_path, format);
        if (trees_validate->parsed()) return cmd_trees_validate(tree_file, out_path);
        if (morphism_check->parsed()) return cmd_morphism_check(morphism_file, out_path);
        if (order_compute->parsed()) return cmd_order_compute(order_file, out_path);
        if (aut_analyze->parsed()) return cmd_aut_analyze(aut_file, out_path);
        if (mobius_decompose->parsed()) return cmd_mobius_decompose(matrix, out_path);
        if (mobius_classify->parsed()) return cmd_mobius_classify(group_file, out_path);
        if (moduli_chart->parsed()) return cmd_moduli_chart(config_file, out_path);
        if (energy_exp->parsed())
            return cmd_energy_experiment(map_name, R, steps, N, seed, out_dir, out_path);
        if (verify->parsed())
            return cmd_verify(max_vertices, verify_seed, verify_N, out_path, format);
        std::cerr << "missing subcommand\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitVerificationFailure;
    }
}
