#pragma once

// Experiment harness: start-point resolution, single runs with trace capture,
// parallel multistart sweeps, the weighted-sum baseline, and CSV emission.

#include <atomic>
#include <cmath>
#include <filesystem>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sumopt/csv.hpp"
#include "sumopt/metrics.hpp"
#include "sumopt/problems.hpp"
#include "sumopt/solver.hpp"

namespace sumopt {

struct StartSpec {
    enum class Kind { explicit_point, random_box, grid };
    Kind kind = Kind::explicit_point;
    Vector point;      // explicit_point
    int count = 0;     // random_box: #draws; grid: points per axis
    Box box;           // random_box / grid
};

struct RunConfig {
    std::string problem_id;
    StartSpec start;
    std::uint64_t seed = 0;
    SolverParams params;
    std::string out_dir = ".";
    bool trace = false;
    bool filter_dominated = false;
    bool metrics = false;
    int ws_lambdas = 0;
    int jobs = 1;
};

// Start i consumes draws [i*n, (i+1)*n) of the master stream, so the set of
// starts is a pure function of (seed, box, count) independent of --jobs.
inline std::vector<Vector> resolve_starts(const RunConfig& cfg, int dim) {
    std::vector<Vector> starts;
    switch (cfg.start.kind) {
        case StartSpec::Kind::explicit_point: {
            if (static_cast<int>(cfg.start.point.size()) != dim)
                throw ConfigError("start point has wrong dimension");
            starts.push_back(cfg.start.point);
            break;
        }
        case StartSpec::Kind::random_box: {
            if (cfg.start.count < 1) throw ConfigError("need at least one random start");
            if (!(cfg.start.box.lo < cfg.start.box.hi)) throw ConfigError("empty start box");
            detail::Rng rng(cfg.seed);
            for (int i = 0; i < cfg.start.count; ++i) {
                Vector x(static_cast<std::size_t>(dim));
                for (auto& v : x) v = rng.uniform(cfg.start.box.lo, cfg.start.box.hi);
                starts.push_back(std::move(x));
            }
            break;
        }
        case StartSpec::Kind::grid: {
            const int k = cfg.start.count;
            if (k < 1) throw ConfigError("grid needs at least one point per axis");
            if (!(cfg.start.box.lo < cfg.start.box.hi)) throw ConfigError("empty start box");
            if (dim > 2) throw ConfigError("grid starts supported for dimension 1 and 2 only");
            auto axis = [&](int i) {
                if (k == 1) return 0.5 * (cfg.start.box.lo + cfg.start.box.hi);
                return cfg.start.box.lo + (cfg.start.box.hi - cfg.start.box.lo) * i / (k - 1);
            };
            if (dim == 1) {
                for (int i = 0; i < k; ++i) starts.push_back({axis(i)});
            } else {
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) starts.push_back({axis(i), axis(j)});
            }
            break;
        }
    }
    return starts;
}

inline RunRecord run_single(Problem& prob, const Vector& start, const SolverParams& params,
                            std::vector<TraceRow>* trace_rows = nullptr) {
    TraceSink sink;
    if (trace_rows) sink = [trace_rows](const TraceRow& r) { trace_rows->push_back(r); };
    return solve(prob, start, params, sink);
}

struct MultistartResult {
    std::vector<RunRecord> records;
    FrontApproximation front;  // converged endpoints (filtered iff configured)
    std::optional<double> has_value;
    std::optional<double> hrs_value;
    std::string metrics_note;  // nonempty when metrics were requested but undefined
};

inline MultistartResult run_multistart(const RunConfig& cfg) {
    Problem base = make_problem(cfg.problem_id);
    const auto starts = resolve_starts(cfg, base.dim());
    const int nruns = static_cast<int>(starts.size());
    const int p = base.num_objectives();

    MultistartResult out;
    out.records.resize(static_cast<std::size_t>(nruns));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= nruns) return;
            Problem prob = base;  // independent counters per run
            RunRecord rec;
            try {
                rec = solve(prob, starts[static_cast<std::size_t>(i)], cfg.params);
            } catch (const Error&) {
                rec = RunRecord{};
                rec.start = starts[static_cast<std::size_t>(i)];
                rec.final_point = rec.start;
                rec.final_values.assign(static_cast<std::size_t>(p),
                                        std::numeric_limits<double>::quiet_NaN());
                rec.converged = false;
                rec.fun_evals = prob.total_fun_evals();
                rec.sub_evals = prob.total_sub_evals();
            }
            rec.run_id = i;
            out.records[static_cast<std::size_t>(i)] = std::move(rec);
        }
    };
    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || nruns <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min(jobs, nruns); ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    FrontApproximation front;
    for (const auto& rec : out.records)
        if (rec.converged) {
            front.points.push_back(rec.final_values);
            front.run_ids.push_back(rec.run_id);
        }
    out.front = cfg.filter_dominated ? filter_nondominated(front) : std::move(front);

    if (cfg.metrics) {
        if (p != 2)
            out.metrics_note = "front metrics are defined for bi-objective problems only";
        else if (out.front.points.size() < 2)
            out.metrics_note = "front metrics undefined: fewer than two converged endpoints";
        else {
            out.has_value = has(out.front);
            out.hrs_value = hrs(out.front);
        }
    }
    return out;
}

// Scalarization lam*f1 + (1-lam)*f2 as a single-objective problem.
inline Problem scalarized_problem(const Problem& base, double lam) {
    if (base.num_objectives() != 2)
        throw ConfigError("weighted-sum baseline requires a bi-objective problem");
    Problem copy = base;  // capture an independent oracle pair
    auto shared = std::make_shared<Problem>(std::move(copy));
    std::vector<ObjectiveOracle> objs;
    objs.emplace_back(
        "ws",
        [shared, lam](const Vector& x) {
            return lam * shared->objective(0).value(x) +
                   (1.0 - lam) * shared->objective(1).value(x);
        },
        [shared, lam](const Vector& x) {
            const Vector g0 = shared->objective(0).subgrad(x);
            const Vector g1 = shared->objective(1).subgrad(x);
            Vector g(g0.size());
            for (std::size_t i = 0; i < g.size(); ++i)
                g[i] = lam * g0[i] + (1.0 - lam) * g1[i];
            return g;
        });
    return Problem(base.name() + ":ws", base.dim(), std::move(objs));
}

struct WsPoint {
    double lambda = 0.0;
    int run_id = 0;          // index into records
    Vector objectives;       // (f1, f2) of the original problem at the endpoint
};

struct WsResult {
    std::vector<RunRecord> records;  // best converged run per lambda
    std::vector<WsPoint> front;
};

// One scalar solve per (lambda, start); per lambda the best converged
// endpoint by scalarized value is kept ("given convergence": a lambda whose
// runs all fail contributes no row).
inline WsResult run_ws_baseline(const RunConfig& cfg) {
    Problem base = make_problem(cfg.problem_id);
    if (base.num_objectives() != 2)
        throw ConfigError("weighted-sum baseline requires a bi-objective problem");
    if (cfg.ws_lambdas < 1) throw ConfigError("need at least one lambda");
    const auto starts = resolve_starts(cfg, base.dim());

    WsResult out;
    const int L = cfg.ws_lambdas;
    std::vector<std::optional<RunRecord>> kept(static_cast<std::size_t>(L));
    std::vector<double> kept_val(static_cast<std::size_t>(L),
                                 std::numeric_limits<double>::infinity());
    std::vector<int> kept_task(static_cast<std::size_t>(L), std::numeric_limits<int>::max());
    std::vector<double> lambdas(static_cast<std::size_t>(L));
    for (int j = 0; j < L; ++j)
        lambdas[static_cast<std::size_t>(j)] = (L == 1) ? 0.5 : static_cast<double>(j) / (L - 1);

    std::atomic<int> next{0};
    const int total = L * static_cast<int>(starts.size());
    std::mutex mu;
    auto worker = [&]() {
        for (;;) {
            const int task = next.fetch_add(1);
            if (task >= total) return;
            const int j = task / static_cast<int>(starts.size());
            const int s = task % static_cast<int>(starts.size());
            Problem scal = scalarized_problem(base, lambdas[static_cast<std::size_t>(j)]);
            RunRecord rec;
            try {
                rec = solve(scal, starts[static_cast<std::size_t>(s)], cfg.params);
            } catch (const Error&) {
                continue;
            }
            if (!rec.converged) continue;
            const double v = rec.final_values.at(0);
            std::lock_guard<std::mutex> lock(mu);
            // tie-break on the task index so the winner is jobs-independent
            if (v < kept_val[static_cast<std::size_t>(j)] ||
                (v == kept_val[static_cast<std::size_t>(j)] &&
                 task < kept_task[static_cast<std::size_t>(j)])) {
                kept_val[static_cast<std::size_t>(j)] = v;
                kept_task[static_cast<std::size_t>(j)] = task;
                kept[static_cast<std::size_t>(j)] = std::move(rec);
            }
        }
    };
    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || total <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min(jobs, total); ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Problem eval = base;
    for (int j = 0; j < L; ++j) {
        if (!kept[static_cast<std::size_t>(j)]) continue;
        RunRecord rec = *kept[static_cast<std::size_t>(j)];
        rec.run_id = static_cast<int>(out.records.size());
        WsPoint pt;
        pt.lambda = lambdas[static_cast<std::size_t>(j)];
        pt.run_id = rec.run_id;
        pt.objectives = eval.evaluate_all(rec.final_point);
        out.records.push_back(std::move(rec));
        out.front.push_back(std::move(pt));
    }
    return out;
}

// ---- CSV emission ----------------------------------------------------------

namespace emit {

inline std::string step_name(StepKind k) {
    switch (k) {
        case StepKind::serious: return "serious";
        case StepKind::null: return "null";
        case StepKind::stop: return "stop";
    }
    return "?";
}

inline std::string failing_set(const std::vector<int>& failing) {
    std::string s = "{";
    for (std::size_t i = 0; i < failing.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(failing[i] + 1);  // 1-based in reports
    }
    return s + "}";
}

inline void runs_csv(const std::string& path, const std::vector<RunRecord>& records, int dim,
                     int p) {
    csv::Writer w(path);
    std::vector<std::string> h{"run_id"};
    for (int i = 1; i <= dim; ++i) h.push_back("start_" + std::to_string(i));
    for (int i = 1; i <= dim; ++i) h.push_back("final_" + std::to_string(i));
    for (int i = 1; i <= p; ++i) h.push_back("f_" + std::to_string(i));
    for (const char* c : {"converged", "outer_iters", "serious_steps", "null_steps", "fun_evals",
                          "sub_evals", "wall_time_s"})
        h.push_back(c);
    w.row(h);
    for (const auto& r : records) {
        std::vector<std::string> row{std::to_string(r.run_id)};
        for (int i = 0; i < dim; ++i)
            row.push_back(csv::fmt(i < static_cast<int>(r.start.size()) ? r.start[i] : 0.0));
        for (int i = 0; i < dim; ++i)
            row.push_back(
                csv::fmt(i < static_cast<int>(r.final_point.size()) ? r.final_point[i] : 0.0));
        for (int i = 0; i < p; ++i)
            row.push_back(csv::fmt(i < static_cast<int>(r.final_values.size())
                                       ? r.final_values[i]
                                       : std::numeric_limits<double>::quiet_NaN()));
        row.push_back(r.converged ? "true" : "false");
        row.push_back(std::to_string(r.outer_iters));
        row.push_back(std::to_string(r.serious_steps));
        row.push_back(std::to_string(r.null_steps));
        row.push_back(std::to_string(r.fun_evals));
        row.push_back(std::to_string(r.sub_evals));
        row.push_back(csv::fmt(r.wall_time_s));
        w.row(row);
    }
}

inline void front_csv(const std::string& path, const FrontApproximation& front, int p) {
    csv::Writer w(path);
    std::vector<std::string> h{"run_id"};
    for (int i = 1; i <= p; ++i) h.push_back("f_" + std::to_string(i));
    w.row(h);
    const auto order = detail::order_by_first_objective(front);
    for (std::size_t k : order) {
        std::vector<std::string> row{std::to_string(front.run_ids[k])};
        for (double v : front.points[k]) row.push_back(csv::fmt(v));
        w.row(row);
    }
}

inline void ws_front_csv(const std::string& path, const std::vector<WsPoint>& front) {
    csv::Writer w(path);
    w.row({"lambda", "run_id", "f_1", "f_2"});
    for (const auto& pt : front)
        w.row({csv::fmt(pt.lambda), std::to_string(pt.run_id), csv::fmt(pt.objectives[0]),
               csv::fmt(pt.objectives[1])});
}

inline void metrics_csv(const std::string& path, std::size_t n_points, double has_v,
                        double hrs_v) {
    csv::Writer w(path);
    w.row({"size", "has", "hrs"});
    w.row({std::to_string(n_points), csv::fmt(has_v), csv::fmt(hrs_v)});
}

inline void trace_csv(const std::string& path, const std::vector<TraceRow>& rows, int dim,
                      int p) {
    csv::Writer w(path);
    std::vector<std::string> h{"nu", "k", "xi_norm", "step", "t"};
    for (int i = 1; i <= dim; ++i) h.push_back("d_" + std::to_string(i));
    h.push_back("I");
    for (int i = 1; i <= dim; ++i) h.push_back("x_" + std::to_string(i));
    for (int i = 1; i <= p; ++i) h.push_back("f_" + std::to_string(i));
    w.row(h);
    for (const auto& r : rows) {
        std::vector<std::string> row{std::to_string(r.nu), std::to_string(r.k),
                                     csv::fmt(r.xi_norm), step_name(r.kind)};
        if (r.kind == StepKind::stop) {
            row.insert(row.end(), static_cast<std::size_t>(1 + dim + 1 + dim + p), "");
        } else {
            row.push_back(csv::fmt(r.t));
            for (int i = 0; i < dim; ++i) row.push_back(csv::fmt(r.d[static_cast<std::size_t>(i)]));
            row.push_back(r.kind == StepKind::null ? failing_set(r.failing) : "{}");
            for (int i = 0; i < dim; ++i)
                row.push_back(csv::fmt(r.x_next[static_cast<std::size_t>(i)]));
            for (int i = 0; i < p; ++i)
                row.push_back(csv::fmt(r.f_next[static_cast<std::size_t>(i)]));
        }
        w.row(row);
    }
}

}  // namespace emit
}  // namespace sumopt
