// ncverify: batch verification of heat-flow, spectral-gap, and moment
// inequalities over free group algebras, deformed Fock spaces, and twisted
// tori. Scenarios come from a JSON config, a built-in battery, or both;
// results go to stdout and optional CSV/JSON reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ncverify/harness.hpp"

namespace {

using ncverify::harness::ReportRow;
using ncverify::harness::Scenario;

struct ScenarioStats {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t estpass = 0;
    std::size_t estfail = 0;
    double ms = 0.0;
};

int run_command(const std::string& config_path, bool use_defaults, std::optional<std::uint64_t> seed,
                const std::string& out_csv, const std::string& out_json, std::optional<double> tol,
                std::optional<std::size_t> quad_points, bool include_estimates, bool print_rows) {
    std::vector<Scenario> scenarios;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "ncverify: cannot open config " << config_path << "\n";
            return 2;
        }
        nlohmann::json cfg;
        in >> cfg;
        scenarios = ncverify::harness::parse_config(cfg);
    }
    if (use_defaults) {
        auto defaults = ncverify::harness::default_scenarios();
        scenarios.insert(scenarios.end(), std::make_move_iterator(defaults.begin()),
                         std::make_move_iterator(defaults.end()));
    }
    if (scenarios.empty()) {
        std::cerr << "ncverify: nothing to run; pass --config FILE and/or --all\n";
        return 2;
    }
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        if (seed) scenarios[i].seed = *seed + i;
        if (tol) scenarios[i].tolerance = *tol;
        if (quad_points) scenarios[i].quad_points = *quad_points;
    }

    const auto summary = ncverify::harness::run_all(std::move(scenarios));

    std::map<std::string, ScenarioStats> by_scenario;
    for (const ReportRow& r : summary.rows) {
        ScenarioStats& st = by_scenario[r.scenario];
        if (r.status == "pass") ++st.pass;
        else if (r.status == "fail") ++st.fail;
        else if (r.status == "estpass") ++st.estpass;
        else ++st.estfail;
        st.ms += r.ms;
    }
    for (const auto& [id, st] : by_scenario) {
        std::printf("%-28s hard %zu/%zu", id.c_str(), st.pass, st.pass + st.fail);
        if (st.estpass + st.estfail > 0) std::printf("  est %zu/%zu", st.estpass, st.estpass + st.estfail);
        std::printf("  (%.0f ms)\n", st.ms);
    }
    if (print_rows) ncverify::harness::write_csv(summary.rows, std::cout);
    for (const ReportRow& r : summary.rows)
        if (r.status == "fail" || r.status == "estfail")
            std::printf("%s: %s %s p=%s params=%s lhs=%s rhs=%s slack=%s\n", r.status.c_str(),
                        r.scenario.c_str(), r.check.c_str(), r.p.c_str(), r.params.c_str(),
                        ncverify::harness::fmt_g(r.lhs).c_str(), ncverify::harness::fmt_g(r.rhs).c_str(),
                        ncverify::harness::fmt_g(r.slack).c_str());

    if (!out_csv.empty()) {
        std::ofstream os(out_csv);
        if (!os) {
            std::cerr << "ncverify: cannot write " << out_csv << "\n";
            return 2;
        }
        ncverify::harness::write_csv(summary.rows, os);
    }
    if (!out_json.empty()) {
        std::ofstream os(out_json);
        if (!os) {
            std::cerr << "ncverify: cannot write " << out_json << "\n";
            return 2;
        }
        os << ncverify::harness::rows_to_json(summary.rows).dump(2) << "\n";
    }

    std::printf("hard checks: %zu/%zu passed", summary.hard_total - summary.hard_failed, summary.hard_total);
    if (summary.est_total > 0)
        std::printf("; estimates: %zu/%zu passed", summary.est_total - summary.est_failed, summary.est_total);
    std::printf("\n");

    const bool ok = summary.hard_pass() && (!include_estimates || summary.estimates_pass());
    std::printf("%s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verify heat-smoothing, spectral-gap, and moment inequalities over free, deformed "
                 "Gaussian, and twisted torus algebras"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_csv;
    std::string out_json;
    bool use_defaults = false;
    bool include_estimates = false;
    bool print_rows = false;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<std::size_t> quad_points;

    CLI::App* run = app.add_subcommand("run", "run verification scenarios");
    run->add_option("--config", config_path, "JSON scenario file");
    run->add_flag("--all", use_defaults, "append the built-in scenario battery");
    run->add_option("--seed", seed, "override scenario seeds with N + scenario index");
    run->add_option("--out", out_csv, "write rows as CSV");
    run->add_option("--json", out_json, "write rows as JSON");
    run->add_option("--tol", tol, "override every scenario tolerance");
    run->add_option("--quad-points", quad_points, "override quadrature resolution");
    run->add_flag("--include-estimates", include_estimates, "estimate rows also gate the exit code");
    run->add_flag("--print-rows", print_rows, "print the full CSV to stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        return run_command(config_path, use_defaults, seed, out_csv, out_json, tol, quad_points,
                           include_estimates, print_rows);
    } catch (const std::exception& e) {
        std::cerr << "ncverify: " << e.what() << "\n";
        return 2;
    }
}
