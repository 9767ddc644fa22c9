#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "drl/error.hpp"
#include "drl/io.hpp"

namespace drl::cli {

namespace {

struct Options {
    QuadConfig quad;
    double delta0 = kDefaultDelta0;
    std::string output;
    std::string format = "csv";
};

void add_numeric_options(CLI::App* cmd, Options& o) {
    auto* g = cmd->add_option_group("quadrature");
    g->add_option("--rel-tol", o.quad.rel_tol, "Relative tolerance")->capture_default_str();
    g->add_option("--abs-tol", o.quad.abs_tol, "Absolute tolerance")->capture_default_str();
    g->add_option("--max-halfperiods", o.quad.max_halfperiods, "Phase node guard")
        ->capture_default_str();
    g->add_option("--panel-order", o.quad.panel_order, "Gauss-Legendre points per panel")
        ->capture_default_str();
    g->add_option("--tail-sigma-mult", o.quad.tail_sigma_mult, "Multiplier on the tail cutoff")
        ->capture_default_str();
    g->add_option("--direct-halfperiods", o.quad.direct_halfperiods,
                  "Half-periods integrated before the oscillatory split")
        ->capture_default_str();
    g->add_option("--euler-terms", o.quad.euler_terms, "Differences per Euler tail transform")
        ->capture_default_str();
    cmd->add_option("--delta0", o.delta0, "Low/high frequency split parameter in (0,1)")
        ->capture_default_str();
}

void add_window_options(CLI::App* cmd, FitWindow& w) {
    cmd->add_option("--t-min", w.t_min, "First time of the log grid")->capture_default_str();
    cmd->add_option("--t-max", w.t_max, "Last time of the log grid")->capture_default_str();
    cmd->add_option("--count", w.points, "Number of log-spaced times")->capture_default_str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes to the output path, or to `out` when the path is empty.
template <class Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
    if (path.empty()) {
        write(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw InvalidInput("cannot write '" + path + "'");
    }
    write(file);
    if (!file) {
        throw Error("write to '" + path + "' failed");
    }
}

void check_format(const std::string& f) {
    if (f != "csv" && f != "json") {
        throw InvalidInput("--format must be csv or json");
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral solver and growth-rate verifier for u_tt + (-Delta)^sigma u = 0", "drl"};
    app.require_subcommand(1);
    app.footer("Environment: DRL_THREADS caps the number of worker threads.\n"
               "Exit codes: 0 success, 1 verification or numerical failure, 2 usage error.");

    Options opt;
    std::string problem_path;
    std::string problem_inline;

    auto add_problem = [&](CLI::App* cmd) {
        auto* g = cmd->add_option_group("problem", "Problem description (JSON)");
        g->add_option("--problem", problem_path, "Path to a problem JSON file");
        g->add_option("--problem-json", problem_inline, "Problem JSON given inline");
        g->require_option(1);
    };
    auto load_problem = [&] {
        return parse_problem(problem_path.empty() ? problem_inline : read_file(problem_path));
    };

    // norm
    double t_single = 0.0;
    auto* norm = app.add_subcommand("norm", "||u(t)||^2 and ||u(t)|| at one time");
    add_problem(norm);
    norm->add_option("--t", t_single, "Time")->required();
    norm->add_option("--format", opt.format, "Output format: csv or json")->capture_default_str();
    add_numeric_options(norm, opt);

    // series
    FitWindow window;
    std::vector<double> times;
    std::string quantity = "norm_sq";
    auto* series = app.add_subcommand("series", "Write a time series as CSV (t,value,err) or JSON");
    add_problem(series);
    add_window_options(series, window);
    series->add_option("--times", times, "Explicit comma-separated times (overrides the log grid)")
        ->delimiter(',');
    series->add_option("--quantity", quantity, "norm_sq, norm, energy, I_low or I_high")
        ->capture_default_str();
    series->add_option("--out,-o", opt.output, "Output path (default stdout)");
    series->add_option("--format", opt.format, "Output format: csv or json")->capture_default_str();
    add_numeric_options(series, opt);

    // fit
    std::string input;
    std::string model = "power";
    double fit_tol = 0.05;
    auto* fit = app.add_subcommand("fit", "Fit a power or log law to a series CSV");
    fit->add_option("input", input, "Series CSV (t,value[,err])")->required();
    fit->add_option("--model", model, "power, log or classify")->capture_default_str();
    fit->add_option("--tol", fit_tol, "Classification tolerance (classify only)")
        ->capture_default_str();
    fit->add_option("--out,-o", opt.output, "Output path (default stdout)");

    // verify
    std::vector<std::string> ids;
    std::optional<int> dim;
    std::string summary;
    ScenarioConfig scfg;
    auto* verify = app.add_subcommand("verify", "Run verification scenarios; exit 0 iff all pass");
    verify->add_option("ids", ids, "Scenario ids or 'all'")->required();
    verify->add_option("--n", dim, "Restrict to one dimension");
    verify->add_option("--summary", summary, "Also write a CSV summary to this path");
    verify->add_option("--out,-o", opt.output, "JSON report path (default stdout)");
    verify->add_option("--classify-tol", scfg.classify_tol, "Classification tolerance")
        ->capture_default_str();
    add_window_options(verify, scfg.window);
    add_numeric_options(verify, opt);

    // sweep
    std::vector<double> sigmas{1.0, 1.5, 2.0, 3.0};
    std::vector<int> ns{1, 2, 3, 4, 5, 6, 7};
    ScenarioConfig sweep_cfg;
    auto* sweep = app.add_subcommand("sweep", "Growth class over a sigma x n grid");
    sweep->add_option("--sigmas", sigmas, "Comma-separated sigma values")->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--ns", ns, "Comma-separated dimensions")->delimiter(',')->capture_default_str();
    sweep->add_option("--classify-tol", sweep_cfg.classify_tol, "Classification tolerance")
        ->capture_default_str();
    sweep->add_option("--out,-o", opt.output, "Output path (default stdout)");
    sweep->add_option("--format", opt.format, "Output format: csv or json")->capture_default_str();
    add_window_options(sweep, sweep_cfg.window);
    add_numeric_options(sweep, opt);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        opt.quad.validate();
        if (!(opt.delta0 > 0.0 && opt.delta0 < 1.0)) {
            throw InvalidInput("--delta0 must lie in (0, 1)");
        }

        if (norm->parsed()) {
            check_format(opt.format);
            const Problem p = load_problem();
            const Estimate e = solution_l2_sq(p, t_single, opt.quad);
            const double v = std::sqrt(std::max(0.0, e.value));
            if (opt.format == "json") {
                out << Json{{"t", t_single}, {"norm_sq", e.value}, {"err", e.error}, {"norm", v}}.dump(2)
                    << '\n';
            } else {
                out << "t,norm_sq,err,norm\n"
                    << format_double(t_single) << ',' << format_double(e.value) << ','
                    << format_double(e.error) << ',' << format_double(v) << '\n';
            }
            return kOk;
        }

        if (series->parsed()) {
            check_format(opt.format);
            const Problem p = load_problem();
            const Quantity q = quantity_from_string(quantity);
            const bool explicit_times = series->count("--times") > 0;
            const std::vector<double> grid = explicit_times ? times : window.grid();
            const NormSeries s = norm_series(p, grid, q, opt.quad, opt.delta0);
            emit(opt.output, out, [&](std::ostream& os) {
                if (opt.format == "json") {
                    os << to_json(s).dump(2) << '\n';
                } else {
                    write_series_csv(os, s);
                }
            });
            return kOk;
        }

        if (fit->parsed()) {
            std::ifstream in(input, std::ios::binary);
            if (!in) {
                throw InvalidInput("cannot read '" + input + "'");
            }
            const NormSeries s = read_series_csv(in);
            Json j;
            if (model == "power") {
                j = to_json(fit_power(s));
            } else if (model == "log") {
                j = to_json(fit_log(s));
            } else if (model == "classify") {
                j = to_json(classify_growth(s, fit_tol));
            } else {
                throw InvalidInput("--model must be power, log or classify");
            }
            emit(opt.output, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
            return kOk;
        }

        if (verify->parsed()) {
            scfg.quad = opt.quad;
            scfg.delta0 = opt.delta0;
            std::vector<std::string> run_ids;
            for (const auto& id : ids) {
                if (id == "all") {
                    run_ids.insert(run_ids.end(), scenario_ids().begin(), scenario_ids().end());
                } else if (std::find(scenario_ids().begin(), scenario_ids().end(), id) ==
                           scenario_ids().end()) {
                    throw InvalidInput("unknown scenario '" + id + "'");
                } else {
                    run_ids.push_back(id);
                }
            }
            std::vector<VerificationReport> reports;
            for (const auto& id : run_ids) {
                reports.push_back(run_scenario(id, dim, scfg));
                err << id << ": " << (reports.back().passed ? "pass" : "FAIL") << '\n';
            }
            const bool all_pass = std::all_of(reports.begin(), reports.end(),
                                              [](const VerificationReport& r) { return r.passed; });
            Json bundle{{"passed", all_pass}, {"reports", Json::array()}};
            for (const auto& r : reports) {
                bundle["reports"].push_back(to_json(r));
            }
            emit(opt.output, out, [&](std::ostream& os) { os << bundle.dump(2) << '\n'; });
            if (!summary.empty()) {
                emit(summary, out, [&](std::ostream& os) { write_report_summary_csv(os, reports); });
            }
            return all_pass ? kOk : kFailed;
        }

        if (sweep->parsed()) {
            check_format(opt.format);
            sweep_cfg.quad = opt.quad;
            sweep_cfg.delta0 = opt.delta0;
            for (double s : sigmas) {
                if (!(s > 0.0)) {
                    throw InvalidInput("--sigmas must be positive");
                }
            }
            for (int n : ns) {
                if (n < 1) {
                    throw InvalidInput("--ns must be >= 1");
                }
            }
            const auto rows = sigma_sweep(sigmas, ns, sweep_cfg);
            emit(opt.output, out, [&](std::ostream& os) {
                if (opt.format == "json") {
                    Json j = Json::array();
                    for (const auto& r : rows) {
                        j.push_back(to_json(r));
                    }
                    os << j.dump(2) << '\n';
                } else {
                    write_sweep_csv(os, rows);
                }
            });
            return kOk;
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const FitError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}

} // namespace drl::cli
