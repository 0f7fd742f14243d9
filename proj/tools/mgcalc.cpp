// mgcalc: exact calculator for divisor classes, one-dimensional boundary
// strata, wall crossings, dual-graph transforms, and section-space
// bookkeeping on the moduli space of stable curves.
//
// JSON goes to stdout by default; --tsv switches tabular commands to TSV
// and --out redirects to a file.  Exit codes: 0 success, 1 domain error,
// 2 usage error.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mgcalc/curve_graph.hpp"
#include "mgcalc/descent.hpp"
#include "mgcalc/divisor.hpp"
#include "mgcalc/fcurve.hpp"
#include "mgcalc/linear_series.hpp"
#include "mgcalc/oracle.hpp"
#include "mgcalc/phase.hpp"

namespace {

using namespace mgcalc;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

void emit_json(const nlohmann::ordered_json& j, const std::string& out_path) {
    emit(j.dump(2), out_path);
}

Model parse_intersection_model(const std::string& name) {
    const Model model = model_from_name(name);
    if (model == Model::Coarse)
        throw std::domain_error("the coarse form is not paired with curves; use mg or ps");
    return model;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

std::string markdown_report(int from, int to) {
    std::ostringstream out;
    for (int g = from; g <= to; ++g) {
        out << "# Genus " << g << "\n\n";
        for (const Model model : {Model::Stack, Model::PsPullback}) {
            const PhaseReport report = critical_alphas(Genus(g), model);
            out << "## Family " << model_name(model) << "\n\n";
            if (!report.identically_zero.empty()) {
                out << "Identically zero strata:";
                for (const FCurve& curve : report.identically_zero) out << ' ' << curve.label();
                out << "\n\n";
            }
            if (report.walls.empty()) {
                out << "No walls in [0, 1].\n\n";
                continue;
            }
            out << "| wall | contracted strata | discrepancy 9 - 11a | certified |\n";
            out << "|------|-------------------|---------------------|-----------|\n";
            for (const Wall& wall : report.walls) {
                out << "| " << to_string(wall.alpha) << " | ";
                for (std::size_t i = 0; i < wall.contracted.size(); ++i) {
                    if (i) out << ", ";
                    out << wall.contracted[i].label();
                }
                out << " | " << to_string(discrepancy_coefficient(wall.alpha)) << " | "
                    << (wall.certified ? "yes" : "outside certified range") << " |\n";
            }
            out << '\n';
        }
        out << "## Coarse-space boundary coefficients\n\n";
        out << "| alpha | genus-1 boundary coefficient (1+a)/2 |\n";
        out << "|-------|--------------------------------------|\n";
        for (const Rational& alpha :
             {Rational(1), make_rational(9, 11), make_rational(7, 10)}) {
            out << "| " << to_string(alpha) << " | "
                << to_string(coarse_coefficient(RamifiedBoundary(2, alpha))) << " |\n";
        }
        out << '\n' << contracted_loci_description(Genus(g)) << '\n';
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact divisor-class and boundary-strata calculator for moduli of stable curves"};
    app.require_subcommand(1);

    std::string out_path;
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    // nef-check
    auto* nef = app.add_subcommand("nef-check", "sufficient nefness certificate for a log-canonical class");
    int nef_genus = 0;
    std::string nef_alpha, nef_model = "mg";
    nef->add_option("--genus", nef_genus, "genus (>= 3)")->required();
    nef->add_option("--alpha", nef_alpha, "alpha as p/q in [0,1]")->required();
    nef->add_option("--model", nef_model, "family: mg or ps")->check(CLI::IsMember({"mg", "ps"}));

    // phases
    auto* phases = app.add_subcommand("phases", "critical alpha values with contracted strata");
    int phases_genus = 0;
    std::string phases_model = "mg";
    bool phases_tsv = false;
    phases->add_option("--genus", phases_genus, "genus (>= 3)")->required();
    phases->add_option("--model", phases_model, "family: mg or ps")->check(CLI::IsMember({"mg", "ps"}));
    phases->add_flag("--tsv", phases_tsv, "emit the alpha-by-stratum sign table as TSV");

    // fcurves
    auto* fcurves = app.add_subcommand("fcurves", "one-dimensional boundary strata and intersections");
    int fcurves_genus = 0;
    std::string fcurves_alpha, fcurves_model = "mg";
    bool fcurves_tsv = false;
    fcurves->add_option("--genus", fcurves_genus, "genus (>= 3)")->required();
    fcurves->add_option("--alpha", fcurves_alpha, "alpha as p/q; adds intersection values");
    fcurves->add_option("--model", fcurves_model, "family: mg or ps")->check(CLI::IsMember({"mg", "ps"}));
    fcurves->add_flag("--tsv", fcurves_tsv, "emit TSV instead of JSON");

    // vnprofile
    auto* vnprofile = app.add_subcommand("vnprofile", "dimension profile of the limiting linear series");
    int vn_g = 0, vn_r = 0, vn_n = 0;
    vnprofile->add_option("--g", vn_g, "total genus (>= 3)")->required();
    vnprofile->add_option("--r", vn_r, "number of elliptic tails")->required();
    vnprofile->add_option("--n", vn_n, "power of the twisted dualizing sheaf (>= 2)")->required();

    // graph
    auto* graph = app.add_subcommand("graph", "dual-graph predicates and transforms");
    graph->require_subcommand(1);
    auto* graph_check = graph->add_subcommand("check", "stability/pseudostability report");
    auto* graph_transform = graph->add_subcommand("transform", "replace elliptic tails with cusps");
    auto* graph_equiv = graph->add_subcommand("equiv", "same image under the tail-to-cusp transform?");
    std::string graph_file, graph_file2;
    graph_check->add_option("file", graph_file, "graph JSON file")->required();
    graph_transform->add_option("file", graph_file, "graph JSON file")->required();
    graph_equiv->add_option("file1", graph_file, "first graph JSON file")->required();
    graph_equiv->add_option("file2", graph_file2, "second graph JSON file")->required();

    // descent
    auto* descent = app.add_subcommand("descent", "stack-to-coarse boundary coefficient calculus");
    descent->require_subcommand(1);
    auto* descent_coeff = descent->add_subcommand("coeff", "coarse coefficient (e-1+a)/e");
    int descent_e = 0;
    std::string descent_a;
    descent_coeff->add_option("--e", descent_e, "ramification order (>= 1)")->required();
    descent_coeff->add_option("--a", descent_a, "stack-side coefficient p/q in [0,1]")->required();
    auto* descent_sweep_cmd = descent->add_subcommand("sweep", "exhaustive floor-identity sweep");
    long sweep_m = 200;
    int sweep_e = 20, sweep_q = 12;
    descent_sweep_cmd->add_option("--m-max", sweep_m, "largest multiple (default 200)");
    descent_sweep_cmd->add_option("--e-max", sweep_e, "largest ramification order (default 20)");
    descent_sweep_cmd->add_option("--q-max", sweep_q, "largest denominator (default 12)");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "independent brute-force cross-checks");
    auto* oracle_run = oracle_cmd->add_subcommand("run", "run oracle comparisons");
    std::string oracle_scope = "all", oracle_bounds = "default";
    oracle_run->add_option("--scope", oracle_scope, "all, fcurves, pseudostability, riemann-roch, floors")
        ->check(CLI::IsMember({"all", "fcurves", "pseudostability", "riemann-roch", "floors"}));
    oracle_run->add_option("--bounds", oracle_bounds, "default or small")
        ->check(CLI::IsMember({"default", "small"}));

    // report
    auto* report_cmd = app.add_subcommand("report", "markdown wall report per genus");
    int report_from = 0, report_to = -1;
    report_cmd->add_option("--from", report_from, "first genus (>= 3)")->required();
    report_cmd->add_option("--to", report_to, "last genus (<= 100); empty range gives empty output");

    // Let --out appear after a subcommand as well as before it.
    const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
        cmd->fallthrough();
        for (CLI::App* sub : cmd->get_subcommands({})) enable_fallthrough(sub);
    };
    for (CLI::App* sub : app.get_subcommands({})) enable_fallthrough(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::CallForAllHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        std::cerr << error.what() << '\n' << app.help() << '\n';
        return 2;
    }

    try {
        if (*nef) {
            const DivisorClass d = log_canonical_divisor(
                Genus(nef_genus), parse_rational(nef_alpha), parse_intersection_model(nef_model));
            auto j = nef_verdict_to_json(gkm_nef_check(d));
            j["genus"] = nef_genus;
            j["alpha"] = nef_alpha;
            j["model"] = nef_model;
            emit_json(j, out_path);
        } else if (*phases) {
            if (phases_tsv)
                emit(phase_sign_table_tsv(Genus(phases_genus), parse_intersection_model(phases_model)),
                     out_path);
            else
                emit_json(phase_report_to_json(
                              critical_alphas(Genus(phases_genus), parse_intersection_model(phases_model))),
                          out_path);
        } else if (*fcurves) {
            const Genus g(fcurves_genus);
            if (fcurves_alpha.empty()) {
                auto rows = nlohmann::ordered_json::array();
                for (const FCurve& curve : enumerate_fcurves(g)) rows.push_back(fcurve_to_json(curve));
                if (fcurves_tsv) {
                    std::ostringstream tsv;
                    tsv << "family\tparams\n";
                    for (const FCurve& curve : enumerate_fcurves(g)) {
                        tsv << family_letter(curve.family) << '\t';
                        for (std::size_t i = 0; i < curve.params.size(); ++i) {
                            if (i) tsv << ',';
                            tsv << curve.params[i];
                        }
                        tsv << '\n';
                    }
                    emit(tsv.str(), out_path);
                } else {
                    emit_json(rows, out_path);
                }
            } else {
                const DivisorClass d = log_canonical_divisor(
                    g, parse_rational(fcurves_alpha), parse_intersection_model(fcurves_model));
                const auto table = intersection_table(d);
                if (fcurves_tsv)
                    emit(table_to_tsv(table), out_path);
                else
                    emit_json(table_to_json(table), out_path);
            }
        } else if (*vnprofile) {
            emit_json(profile_to_json(dimension_profile(TailConfiguration(Genus(vn_g), vn_r), vn_n)),
                      out_path);
        } else if (*graph) {
            if (*graph_check) {
                const CurveGraph g = graph_from_json(load_json_file(graph_file));
                nlohmann::ordered_json j;
                j["connected"] = g.is_connected();
                if (g.is_connected()) j["arithmetic_genus"] = arithmetic_genus(g);
                const auto stable = is_stable(g);
                j["stable"] = {{"ok", stable.ok}, {"reasons", stable.reasons}};
                const auto pseudo = is_pseudostable(g);
                j["pseudostable"] = {{"ok", pseudo.ok}, {"reasons", pseudo.reasons}};
                if (is_tail_operable(g).ok) {
                    auto tails = nlohmann::ordered_json::array();
                    for (const SubcurveSpec& tail : find_elliptic_tails(g)) {
                        tails.push_back({{"vertices", tail.vertex_ids},
                                         {"attaching_edges", tail.attaching_edges}});
                    }
                    j["elliptic_tails"] = std::move(tails);
                }
                emit_json(j, out_path);
            } else if (*graph_transform) {
                emit_json(graph_to_json(t_transform(graph_from_json(load_json_file(graph_file)))),
                          out_path);
            } else if (*graph_equiv) {
                const bool same = t_equivalent(graph_from_json(load_json_file(graph_file)),
                                               graph_from_json(load_json_file(graph_file2)));
                emit_json(nlohmann::ordered_json{{"equivalent", same}}, out_path);
            }
        } else if (*descent) {
            if (*descent_coeff) {
                const RamifiedBoundary boundary(descent_e, parse_rational(descent_a));
                nlohmann::ordered_json j;
                j["e"] = descent_e;
                j["a"] = to_string(boundary.a);
                j["coarse_coefficient"] = to_string(coarse_coefficient(boundary));
                emit_json(j, out_path);
            } else {
                emit_json(descent_sweep_to_json(descent_sweep(sweep_m, sweep_e, sweep_q)), out_path);
            }
        } else if (*oracle_cmd) {
            oracle::OracleBounds bounds;
            if (oracle_bounds == "small") {
                bounds.fcurve_genus_max = 10;
                bounds.graph_vertices = 4;
                bounds.graph_genus = 4;
                bounds.series_genus_max = 10;
                bounds.floor_m_max = 50;
                bounds.floor_e_max = 8;
                bounds.floor_q_max = 6;
            }
            emit_json(oracle::oracle_reports_to_json(oracle::run_oracles(oracle_scope, bounds)),
                      out_path);
        } else if (*report_cmd) {
            if (report_to >= report_from) {
                if (report_from < 3 || report_to > 100)
                    throw std::domain_error("report range must lie within [3, 100]");
                emit(markdown_report(report_from, report_to), out_path);
            } else {
                emit("", out_path);
            }
        }
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 1;
    }
    return 0;
}
