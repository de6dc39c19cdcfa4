// Command-line front end: loads graphs, measures and systems from JSON,
// runs the verification routines and emits text or JSON reports.
//
// Exit codes: 0 all checks passed, 1 a check failed (or a comparison stayed
// inconclusive), 2 bad input or usage.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <kgraph/json_io.hpp>
#include <kgraph/library.hpp>
#include <kgraph/product.hpp>
#include <kgraph/sbfs_library.hpp>

namespace {

using kgraph::Json;

std::string read_input(const std::string& arg) {
    if (arg == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(arg);
    if (!in) kgraph::fail(kgraph::ErrorCode::BadArgument, "cannot open '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        kgraph::fail(kgraph::ErrorCode::BadArgument, "bad JSON in " + what + ": " + e.what());
    }
}

kgraph::KGraph load_graph(const std::string& arg) { return kgraph::graph_from_json(parse_json(read_input(arg), arg)); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (const auto& t : split(s, ',')) out.push_back(std::stoi(t));
    return out;
}

// Measure argument: a JSON file, or one of the mnemonics
//   pf | markov_x<r> | kakutani:<c>,<r>
kgraph::CylinderMeasure load_measure(const kgraph::KGraph& g, const std::string& arg) {
    if (std::filesystem::exists(arg)) return kgraph::measure_from_json(g, parse_json(read_input(arg), arg));
    if (arg == "pf") return kgraph::CylinderMeasure::pf(g);
    if (arg.rfind("markov_x", 0) == 0) return kgraph::CylinderMeasure::markov_x(g, kgraph::parse_rational(arg.substr(8)));
    if (arg.rfind("kakutani:", 0) == 0) {
        auto parts = split(arg.substr(9), ',');
        if (parts.size() != 2) kgraph::fail(kgraph::ErrorCode::BadArgument, "kakutani:<c>,<r>");
        return kgraph::CylinderMeasure::kakutani(
            g, kgraph::PerturbationSeq::geometric(kgraph::parse_rational(parts[0]), kgraph::parse_rational(parts[1])));
    }
    kgraph::fail(kgraph::ErrorCode::BadArgument, "unknown measure '" + arg + "' (not a file or mnemonic)");
}

// Path spec: @file.json, or "prefix=a,b;cycle=c,d", or "cycle=c,d", or "c,d".
kgraph::InfinitePathSpec load_point(const kgraph::KGraph& g, const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') return kgraph::spec_from_json(g, parse_json(read_input(arg.substr(1)), arg));
    std::vector<std::string> prefix, cycle;
    for (const auto& part : split(arg, ';')) {
        if (part.rfind("prefix=", 0) == 0)
            prefix = split(part.substr(7), ',');
        else if (part.rfind("cycle=", 0) == 0)
            cycle = split(part.substr(6), ',');
        else
            cycle = split(part, ',');
    }
    if (cycle.empty()) kgraph::fail(kgraph::ErrorCode::BadArgument, "path spec needs a cycle");
    kgraph::Path cyc = kgraph::path_from_edge_ids(g, cycle);
    kgraph::Path pre =
        prefix.empty() ? kgraph::vertex_path(kgraph::range(g, cyc)) : kgraph::path_from_edge_ids(g, prefix);
    return kgraph::InfinitePathSpec(g, pre, cyc);
}

kgraph::Path load_cylinder(const kgraph::KGraph& g, const std::string& arg) {
    if (g.has_vertex_id(arg)) return kgraph::vertex_path(g.vertex_by_id(arg));
    return kgraph::path_from_edge_ids(g, split(arg, ','));
}

kgraph::Degree parse_degree(const kgraph::KGraph& g, const std::string& s) {
    auto v = parse_ints(s);
    if (static_cast<int>(v.size()) != g.k())
        kgraph::fail(kgraph::ErrorCode::BadArgument, "degree needs " + std::to_string(g.k()) + " entries");
    return kgraph::Degree(v);
}

void emit(const Json& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite k-graphs, path-space measures and their Cuntz-Krieger representations"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON reports");

    std::string graph_arg = "-";
    std::string spec_arg = "pf", mu_arg, nu_arg, cylinder_arg, edge_arg, point_arg, x_arg, y_arg, m_arg, n_arg;
    std::string bound_arg = "2,2", bounds_arg = "2,3", z_arg, out_arg, name_arg, system_arg, builtin_arg, perm_arg;
    int depth = 6, level = 2, big_n = 1;
    bool force_exact = false;
    double tol = -1;

    auto* validate = app.add_subcommand("validate", "check that a colored graph with squares is a k-graph");
    validate->add_option("graph", graph_arg, "graph JSON file or - for stdin");

    auto* info = app.add_subcommand("info", "structural flags, vertex matrices and Perron-Frobenius data");
    info->add_option("graph", graph_arg);

    auto* library = app.add_subcommand("library", "emit a built-in example graph");
    library->add_option("name", name_arg, "one_vertex_fefe | three_vertex_eight_edge | lambda_2N")->required();
    library->add_option("--N", big_n, "peripheral pair count for lambda_2N");
    library->add_option("--perm", perm_arg, "permutation of 1..2N as comma list, e.g. 2,1");
    library->add_option("-o", out_arg, "output file (default stdout)");

    auto* measure = app.add_subcommand("measure", "mass of a cylinder set");
    measure->add_option("graph", graph_arg);
    measure->add_option("--spec", spec_arg, "measure spec file or mnemonic")->required();
    measure->add_option("--cylinder", cylinder_arg, "comma edge ids, or a vertex id")->required();

    auto* consistency = app.add_subcommand("consistency", "Kolmogorov consistency of a cylinder measure");
    consistency->add_option("graph", graph_arg);
    consistency->add_option("--spec", spec_arg)->required();
    consistency->add_option("--depth", depth);

    auto* rn = app.add_subcommand("rn", "Radon-Nikodym derivative of an edge prefixing map at a point");
    rn->add_option("graph", graph_arg);
    rn->add_option("--spec", spec_arg)->required();
    rn->add_option("--edge", edge_arg)->required();
    rn->add_option("--point", point_arg)->required();
    rn->add_option("--depth", depth);

    auto* compare = app.add_subcommand("compare", "Hellinger profile and equivalence/singularity verdict");
    compare->add_option("graph", graph_arg);
    compare->add_option("--mu", mu_arg)->required();
    compare->add_option("--nu", nu_arg)->required();
    compare->add_option("--depth", depth);

    auto* ck_l2 = app.add_subcommand("ck-l2", "Cuntz-Krieger relations in the measure-space representation");
    ck_l2->add_option("graph", graph_arg);
    ck_l2->add_option("--spec", spec_arg)->required();
    ck_l2->add_option("--level", level);
    ck_l2->add_option("--bound", bound_arg, "componentwise degree bound, e.g. 2,2");
    ck_l2->add_option("--depth", depth, "RN evaluation depth for tail-dependent measures");
    ck_l2->add_option("--tol", tol);
    ck_l2->add_flag("--exact", force_exact, "require exact rational verification");

    auto* ck_ind = app.add_subcommand("ck-inductive", "Cuntz-Krieger relations in the inductive-limit representation");
    ck_ind->add_option("graph", graph_arg);
    ck_ind->add_option("--point", point_arg)->required();
    ck_ind->add_option("--bounds", bounds_arg, "degreeBound,stageBound");

    auto* gauge = app.add_subcommand("gauge", "gauge unitaries intertwine the torus action");
    gauge->add_option("graph", graph_arg);
    gauge->add_option("--point", point_arg)->required();
    gauge->add_option("--z", z_arg, "k unimodular complex numbers as re,im;re,im")->required();
    gauge->add_option("--bounds", bounds_arg);

    auto* intertwine = app.add_subcommand("intertwine", "shift-tail unitary between two summands");
    intertwine->add_option("graph", graph_arg);
    intertwine->add_option("--x", x_arg)->required();
    intertwine->add_option("--y", y_arg)->required();
    intertwine->add_option("--m", m_arg)->required();
    intertwine->add_option("--n", n_arg)->required();
    intertwine->add_option("--bounds", bounds_arg);

    auto* sbfs = app.add_subcommand("sbfs-check", "validate a geometric semibranching system");
    sbfs->add_option("system", system_arg, "system JSON file");
    sbfs->add_option("--builtin", builtin_arg, "three_vertex_interval | one_vertex_square | interval_product");

    for (auto* sc : app.get_subcommands({}))
        sc->add_flag("--json", as_json, "emit machine-readable JSON reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) {
            auto g = load_graph(graph_arg);
            auto rep = kgraph::validate_kgraph(g);
            std::ostringstream text;
            for (const auto& c : rep.checks)
                text << (c.pass ? "pass" : "FAIL") << "  " << c.name << (c.detail.empty() ? "" : "  " + c.detail)
                     << "\n";
            text << (rep.pass ? "valid k-graph presentation\n" : "not a k-graph presentation\n");
            emit(kgraph::validation_to_json(rep), as_json, text.str());
            return rep.pass ? 0 : 1;
        }

        if (info->parsed()) {
            auto g = load_graph(graph_arg);
            auto flags = g.structural_flags();
            Json j;
            j["k"] = g.k();
            j["vertices"] = g.vertex_count();
            j["edges"] = g.edge_count();
            j["squares"] = static_cast<int>(g.squares().size());
            j["stronglyConnected"] = flags.strongly_connected;
            j["hasSources"] = flags.has_sources;
            j["rowFinite"] = flags.row_finite;
            Json mats = Json::array();
            for (int c = 1; c <= g.k(); ++c) {
                Json m = Json::array();
                for (const auto& row : g.vertex_matrix(c)) {
                    Json r = Json::array();
                    for (auto v : row) r.push_back(v);
                    m.push_back(r);
                }
                mats.push_back(m);
            }
            j["vertexMatrices"] = mats;
            std::ostringstream text;
            text << "k=" << g.k() << " vertices=" << g.vertex_count() << " edges=" << g.edge_count()
                 << " squares=" << g.squares().size() << "\n";
            text << "strongly_connected=" << flags.strongly_connected << " has_sources=" << flags.has_sources
                 << " row_finite=" << flags.row_finite << "\n";
            if (flags.strongly_connected) {
                auto pf = kgraph::pf_data(g);
                Json rho = Json::array(), kappa = Json::array();
                for (double r : pf.rho) rho.push_back(r);
                for (double kv : pf.kappa) kappa.push_back(kv);
                j["pf"] = Json{{"rho", rho}, {"kappa", kappa}, {"exact", pf.exact}};
                text << "rho=(";
                for (std::size_t i = 0; i < pf.rho.size(); ++i) text << (i ? "," : "") << pf.rho[i];
                text << ") kappa=(";
                for (std::size_t i = 0; i < pf.kappa.size(); ++i) text << (i ? "," : "") << pf.kappa[i];
                text << ")\n";
            }
            emit(j, as_json, text.str());
            return 0;
        }

        if (library->parsed()) {
            std::vector<int> phi = perm_arg.empty() ? std::vector<int>{} : parse_ints(perm_arg);
            auto g = kgraph::standard_library(name_arg, big_n, phi);
            Json j = kgraph::graph_to_json(g);
            std::string text = j.dump(2) + "\n";
            if (out_arg.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(out_arg);
                out << text;
            }
            return 0;
        }

        if (measure->parsed()) {
            auto g = load_graph(graph_arg);
            auto m = load_measure(g, spec_arg);
            auto p = load_cylinder(g, cylinder_arg);
            Json j;
            j["cylinder"] = kgraph::path_to_json(g, p);
            j["mass"] = m.mass_d(p);
            std::ostringstream text;
            text << "mass(Z(" << kgraph::path_str(g, p) << ")) = " << m.mass_d(p);
            if (m.exact()) {
                j["massExact"] = kgraph::rat_to_json(m.mass_q(p));
                text << " = " << kgraph::rat_to_string(m.mass_q(p));
            }
            text << "\n";
            emit(j, as_json, text.str());
            return 0;
        }

        if (consistency->parsed()) {
            auto g = load_graph(graph_arg);
            auto m = load_measure(g, spec_arg);
            auto rep = m.check_kolmogorov(depth);
            std::ostringstream text;
            text << (rep.pass ? "pass" : "FAIL") << "  kolmogorov depth=" << rep.depth
                 << " cylinders=" << rep.cylinders_checked << " maxDefect=" << rep.max_defect
                 << (rep.exact ? " (exact)" : "") << "\n";
            emit(kgraph::consistency_to_json(rep), as_json, text.str());
            return rep.pass ? 0 : 1;
        }

        if (rn->parsed()) {
            auto g = load_graph(graph_arg);
            auto m = load_measure(g, spec_arg);
            auto x = load_point(g, point_arg);
            kgraph::Path lambda = kgraph::path_from_edge_ids(g, {edge_arg});
            auto est = m.rn_at_point(lambda, x, depth);
            std::ostringstream text;
            text << "Phi_" << edge_arg << " = " << est.value;
            if (est.exact) text << " = " << kgraph::rat_to_string(est.value_q);
            text << "  multError=" << est.mult_error << " stabilizedAt=" << est.stabilized_at << "\n";
            emit(kgraph::rn_to_json(est), as_json, text.str());
            return 0;
        }

        if (compare->parsed()) {
            auto g = load_graph(graph_arg);
            auto m1 = load_measure(g, mu_arg);
            auto m2 = load_measure(g, nu_arg);
            auto ev = kgraph::equivalence_verdict(m1, m2, depth);
            std::ostringstream text;
            text << "verdict: " << kgraph::verdict_name(ev.verdict) << "  lastRatio=" << ev.last_ratio
                 << " limit=" << ev.limit << "\n";
            emit(kgraph::verdict_to_json(ev), as_json, text.str());
            return ev.verdict == kgraph::Verdict::Inconclusive ? 1 : 0;
        }

        if (ck_l2->parsed()) {
            auto g = load_graph(graph_arg);
            auto m = load_measure(g, spec_arg);
            auto rep = kgraph::verify_ck_l2(m, level, parse_degree(g, bound_arg), tol, depth, force_exact);
            std::ostringstream text;
            for (const auto& r : rep.relations)
                text << (r.pass ? "pass" : "FAIL") << "  " << r.name << "  cases=" << r.cases
                     << " maxDefect=" << r.max_defect << "\n";
            text << (rep.pass ? "CK relations hold" : "CK relations FAILED") << (rep.exact ? " (exact)" : "")
                 << "\n";
            emit(kgraph::ck_to_json(rep), as_json, text.str());
            return rep.pass ? 0 : 1;
        }

        if (ck_ind->parsed()) {
            auto g = load_graph(graph_arg);
            auto x = load_point(g, point_arg);
            auto b = parse_ints(bounds_arg);
            if (b.size() != 2) kgraph::fail(kgraph::ErrorCode::BadArgument, "--bounds needs degreeBound,stageBound");
            auto rep = kgraph::verify_ck_inductive(g, x, b[0], b[1]);
            std::ostringstream text;
            for (const auto& r : rep.relations)
                text << (r.failures == 0 ? "pass" : "FAIL") << "  " << r.name << "  cases=" << r.cases
                     << " failures=" << r.failures << "\n";
            emit(kgraph::inductive_ck_to_json(rep), as_json, text.str());
            return rep.pass ? 0 : 1;
        }

        if (gauge->parsed()) {
            auto g = load_graph(graph_arg);
            auto x = load_point(g, point_arg);
            kgraph::GaugePoint z;
            for (const auto& part : split(z_arg, ';')) {
                auto nums = split(part, ',');
                if (nums.size() != 2) kgraph::fail(kgraph::ErrorCode::BadArgument, "--z wants re,im;re,im");
                z.z.push_back({std::stod(nums[0]), std::stod(nums[1])});
            }
            auto b = parse_ints(bounds_arg);
            auto rep = kgraph::gauge_check(g, x, z, b[0], b[1]);
            std::ostringstream text;
            text << (rep.pass ? "pass" : "FAIL") << "  gauge cases=" << rep.conjugation_cases
                 << " maxDefect=" << rep.max_defect << "\n";
            emit(kgraph::gauge_to_json(rep), as_json, text.str());
            return rep.pass ? 0 : 1;
        }

        if (intertwine->parsed()) {
            auto g = load_graph(graph_arg);
            auto x = load_point(g, x_arg);
            auto y = load_point(g, y_arg);
            auto b = parse_ints(bounds_arg);
            auto rep = kgraph::shift_tail_intertwiner(g, x, parse_degree(g, m_arg), y, parse_degree(g, n_arg), b[0],
                                                      b[1]);
            std::ostringstream text;
            text << (rep.pass ? "pass" : "FAIL") << "  intertwiner probed=" << rep.probed
                 << " intertwineFailures=" << rep.intertwine_failures << " injective=" << rep.injective << "\n";
            emit(kgraph::intertwiner_to_json(rep), as_json, text.str());
            return rep.pass ? 0 : 1;
        }

        if (sbfs->parsed()) {
            std::optional<kgraph::KGraph> g;
            std::optional<kgraph::KGraph> g2;
            std::optional<kgraph::KGraph> pg;
            kgraph::GeometricSBFS system;
            kgraph::GeometricSBFS factor1, factor2;
            if (!builtin_arg.empty()) {
                if (builtin_arg == "three_vertex_interval") {
                    g = kgraph::make_three_vertex_eight_edge();
                    system = kgraph::interval_system_three_vertex(*g);
                } else if (builtin_arg == "one_vertex_square") {
                    g = kgraph::make_one_vertex_fefe();
                    system = kgraph::square_system_one_vertex(*g);
                } else if (builtin_arg == "interval_product") {
                    g = kgraph::make_three_vertex_eight_edge();
                    g2 = kgraph::make_three_vertex_eight_edge();
                    factor1 = kgraph::interval_system_three_vertex(*g);
                    factor2 = kgraph::interval_system_three_vertex(*g2);
                    pg = kgraph::product_graph(*g, *g2);
                    system = kgraph::product_sbfs(factor1, factor2, *pg);
                } else {
                    kgraph::fail(kgraph::ErrorCode::BadArgument, "unknown builtin system '" + builtin_arg + "'");
                }
            } else {
                if (system_arg.empty())
                    kgraph::fail(kgraph::ErrorCode::BadArgument, "sbfs-check needs a system file or --builtin");
                Json j = parse_json(read_input(system_arg), system_arg);
                g = kgraph::graph_from_json(j.at("graph"));
                system = kgraph::sbfs_from_json(*g, j);
            }
            auto rep = kgraph::validate_sbfs_conditions(system);
            std::ostringstream text;
            for (const auto& e : rep.entries)
                text << (e.pass ? "pass" : "FAIL") << "  condition " << e.name << (e.sampled ? " [sampled]" : "")
                     << (e.detail.empty() ? "" : "  " + e.detail) << "\n";
            emit(kgraph::condition_to_json(rep), as_json, text.str());
            return rep.pass ? 0 : 1;
        }
    } catch (const kgraph::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
