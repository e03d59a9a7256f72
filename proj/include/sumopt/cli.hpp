#pragma once

// Command-line front end. run() is callable in-process so the exit-code
// contract is testable without spawning the binary.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sumopt/harness.hpp"

namespace sumopt::cli {

// Exit codes: 0 success, 2 bad configuration or usage, 3 accuracy not
// reached, 4 internal invariant violation.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"descent subgradient solver for multiobjective problems"};
    app.set_config("--config", "", "read options from a key=value file");

    std::string problem_id;
    std::vector<double> start_vals;
    int n_random = 0;
    int n_grid = 0;
    std::vector<double> box_vals;
    std::uint64_t seed = 0;
    SolverParams params;
    std::string out_dir = ".";
    bool trace = false;
    bool filter_dominated = false;
    bool metrics = false;
    int ws_lambdas = 0;
    int jobs = 1;

    app.add_option("--problem", problem_id, "problem id (P1..P15, FL, SPARSE:<seed>)")
        ->required();
    auto* opt_start =
        app.add_option("--start", start_vals, "explicit start point, comma separated")
            ->delimiter(',');
    auto* opt_random = app.add_option("--random", n_random, "number of random starts");
    auto* opt_grid = app.add_option("--grid", n_grid, "grid starts per axis");
    auto* opt_box = app.add_option("--box", box_vals, "start box as lo,hi (per component)")
                        ->delimiter(',')
                        ->expected(2);
    app.add_option("--seed", seed, "seed for random starts");
    app.add_option("--rho", params.rho, "target accuracy");
    app.add_option("--eps0", params.eps0, "initial sampling radius");
    app.add_option("--delta0", params.delta0, "initial stationarity threshold");
    app.add_option("--gamma", params.gamma, "radius/threshold shrink factor");
    app.add_option("--beta", params.beta, "sufficient decrease coefficient");
    app.add_option("--c", params.c, "curvature-style acceptance coefficient");
    app.add_option("--tbar-frac", params.tbar_fraction, "max step as a fraction of the radius");
    app.add_option("--t0", params.t0, "line search base step");
    app.add_option("--r", params.r, "line search grid ratio");
    app.add_flag("--trace", trace, "write per-iteration trace.csv (single start only)");
    app.add_flag("--filter-dominated", filter_dominated,
                 "keep only nondominated endpoints in front.csv");
    app.add_flag("--metrics", metrics, "write front spread metrics to metrics.csv");
    app.add_option("--ws-lambdas", ws_lambdas,
                   "run the weighted-sum baseline with this many weights");
    app.add_option("--jobs", jobs, "worker threads for multistart");
    app.add_option("--out", out_dir, "output directory");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg;
        cfg.problem_id = problem_id;
        cfg.seed = seed;
        cfg.params = params;
        cfg.out_dir = out_dir;
        cfg.trace = trace;
        cfg.filter_dominated = filter_dominated;
        cfg.metrics = metrics;
        cfg.ws_lambdas = ws_lambdas;
        cfg.jobs = jobs;

        const int n_modes = (opt_start->count() > 0 ? 1 : 0) + (opt_random->count() > 0 ? 1 : 0) +
                            (opt_grid->count() > 0 ? 1 : 0);
        if (n_modes != 1)
            throw ConfigError("choose exactly one of --start, --random, --grid");
        if (opt_start->count() > 0) {
            cfg.start.kind = StartSpec::Kind::explicit_point;
            cfg.start.point = start_vals;
        } else {
            if (opt_box->count() == 0)
                throw ConfigError("--random and --grid require --box lo,hi");
            cfg.start.box = Box{box_vals.at(0), box_vals.at(1)};
            if (opt_random->count() > 0) {
                cfg.start.kind = StartSpec::Kind::random_box;
                cfg.start.count = n_random;
            } else {
                cfg.start.kind = StartSpec::Kind::grid;
                cfg.start.count = n_grid;
            }
        }
        if (cfg.ws_lambdas < 0) throw ConfigError("--ws-lambdas must be positive");
        if (cfg.jobs < 1) throw ConfigError("--jobs must be at least 1");
        if (cfg.trace && cfg.start.kind != StartSpec::Kind::explicit_point)
            throw ConfigError("--trace requires a single explicit --start");
        if (cfg.trace && cfg.ws_lambdas > 0)
            throw ConfigError("--trace is not available for the weighted-sum baseline");

        std::filesystem::create_directories(cfg.out_dir);
        const auto out_path = [&](const char* name) {
            return (std::filesystem::path(cfg.out_dir) / name).string();
        };
        const bool sparse = cfg.problem_id.rfind("SPARSE", 0) == 0;

        if (cfg.ws_lambdas > 0) {
            auto res = run_ws_baseline(cfg);
            emit::ws_front_csv(out_path("front.csv"), res.front);
            out << "weighted-sum baseline on " << cfg.problem_id << ": " << res.front.size()
                << " of " << cfg.ws_lambdas << " weights converged\n";
            return res.front.empty() ? 3 : 0;
        }

        if (cfg.start.kind == StartSpec::Kind::explicit_point) {
            Problem prob = make_problem(cfg.problem_id);
            std::vector<TraceRow> rows;
            RunRecord rec = run_single(prob, resolve_starts(cfg, prob.dim()).at(0), cfg.params,
                                       cfg.trace ? &rows : nullptr);
            rec.run_id = 0;
            emit::runs_csv(out_path("runs.csv"), {rec}, prob.dim(), prob.num_objectives());
            if (cfg.trace)
                emit::trace_csv(out_path("trace.csv"), rows, prob.dim(), prob.num_objectives());
            out << cfg.problem_id << ": " << (rec.converged ? "converged" : "did not converge")
                << " after " << rec.outer_iters << " rounds, " << rec.serious_steps
                << " serious and " << rec.null_steps << " null steps\n";
            out << "final values:";
            for (double v : rec.final_values) out << ' ' << v;
            out << "\nshortest combined subgradient at stop: " << rec.final_xi_norm << "\n";
            out << "function evaluations " << rec.fun_evals << ", subgradient evaluations "
                << rec.sub_evals << ", wall time " << rec.wall_time_s << "s\n";
            if (sparse)
                out << "zero components (|x_j| < 1e-3): " << count_zero(rec.final_point)
                    << " of " << rec.final_point.size() << "\n";
            return rec.converged ? 0 : 3;
        }

        auto res = run_multistart(cfg);
        Problem probe = make_problem(cfg.problem_id);
        emit::runs_csv(out_path("runs.csv"), res.records, probe.dim(), probe.num_objectives());
        emit::front_csv(out_path("front.csv"), res.front, probe.num_objectives());
        int n_conv = 0;
        for (const auto& r : res.records) n_conv += r.converged ? 1 : 0;
        out << cfg.problem_id << ": " << n_conv << " of " << res.records.size()
            << " runs converged, front size " << res.front.points.size() << "\n";
        if (sparse) {
            for (const auto& r : res.records)
                out << "run " << r.run_id << ": converged=" << (r.converged ? "true" : "false")
                    << " f=(" << (r.final_values.empty() ? 0.0 : r.final_values[0]) << ", "
                    << (r.final_values.size() > 1 ? r.final_values[1] : 0.0)
                    << ") zero components: " << count_zero(r.final_point) << "\n";
        }
        if (cfg.metrics) {
            if (res.has_value && res.hrs_value) {
                emit::metrics_csv(out_path("metrics.csv"), res.front.points.size(),
                                  *res.has_value, *res.hrs_value);
                out << "front metrics: size " << res.front.points.size() << ", largest gap "
                    << *res.has_value << ", gap ratio " << *res.hrs_value << "\n";
            } else {
                err << res.metrics_note << "\n";
            }
        }
        return n_conv > 0 ? 0 : 3;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonconvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace sumopt::cli
