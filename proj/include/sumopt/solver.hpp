#pragma once

// Descent solver for unconstrained nonsmooth multiobjective problems.
//
// Inner routine (dssp): keep one subgradient bundle per objective, pool them,
// and take the minimum-norm element xi* of the pooled convex hull.
//   ||xi*|| <= delta          -> the iterate is (delta, eps)-substationary; stop.
//   otherwise d = -xi*/||xi*||, run the backtracking search:
//     serious step  -> move, reset every bundle to a fresh subgradient there;
//     null step     -> stay, enrich the bundles of the objectives that blocked
//                      the step with subgradients sampled in (0, eps) along d.
//
// Outer driver (solve): call dssp on a geometrically shrinking pair
// (eps_nu, delta_nu) = gamma^nu * (eps0, delta0) until both drop below rho.

#include <cassert>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "sumopt/core.hpp"
#include "sumopt/detail/vec.hpp"
#include "sumopt/linesearch.hpp"
#include "sumopt/minnorm.hpp"

namespace sumopt {

enum class EntryOrigin { initial, serious_reset, fes };

struct BundleEntry {
    Vector subgrad;
    Vector eval_point;  // where the oracle was queried (within eps of the iterate)
    EntryOrigin source = EntryOrigin::initial;
};

// Per-objective subgradient memory between serious steps.
class Bundle {
public:
    explicit Bundle(int p) : per_objective_(static_cast<std::size_t>(p)) {}

    int num_objectives() const { return static_cast<int>(per_objective_.size()); }

    const std::vector<BundleEntry>& entries(int i) const {
        return per_objective_[static_cast<std::size_t>(i)];
    }

    void reset(int i, BundleEntry e) {
        auto& lst = per_objective_[static_cast<std::size_t>(i)];
        lst.clear();
        lst.push_back(std::move(e));
    }

    void append(int i, BundleEntry e) {
        per_objective_[static_cast<std::size_t>(i)].push_back(std::move(e));
    }

    // Objective-major pooling; duplicates collapse (hull unchanged).
    GeneratorSet pooled() const {
        std::vector<Vector> cols;
        for (const auto& lst : per_objective_)
            for (const auto& e : lst) cols.push_back(e.subgrad);
        return GeneratorSet::from_vectors(std::move(cols));
    }

private:
    std::vector<std::vector<BundleEntry>> per_objective_;
};

struct SubstationarityCheck {
    bool substationary = false;
    MinNormResult min_norm;
    GeneratorSet generators;
};

inline SubstationarityCheck is_substationary(const Bundle& bundle, double delta) {
    SubstationarityCheck out;
    out.generators = bundle.pooled();
    out.min_norm = min_norm_point(out.generators);
    out.substationary = out.min_norm.norm <= delta;
    return out;
}

enum class StepKind { serious, null, stop };

// One row per inner iteration; on a stop row only nu/k/xi_norm are meaningful.
struct TraceRow {
    int nu = 0;
    long k = 0;
    double xi_norm = 0.0;
    StepKind kind = StepKind::stop;
    double t = 0.0;
    Vector d;
    std::vector<int> failing;   // 0-based objective indices (null rows)
    Vector x_next;
    std::vector<double> f_next;
};

using TraceSink = std::function<void(const TraceRow&)>;

struct DsspStats {
    long iterations = 0;
    long serious_steps = 0;
    long null_steps = 0;
};

// Mutable state of one inner run; exposed for inspection and testing.
struct DsspState {
    Vector x;
    std::vector<double> fx;
    Bundle bundle;
    long k = 0;
};

struct DsspResult {
    Vector x;
    std::vector<double> fx;
    DsspStats stats;
    MinNormResult final_min_norm;
    GeneratorSet final_generators;
};

inline DsspResult dssp(Problem& prob, const Vector& x0, double eps, double delta,
                       const SolverParams& params, const TraceSink& trace = {}, int nu = 0) {
    const int p = prob.num_objectives();
    const double tbar = params.tbar_fraction * eps;

    DsspState st{x0, prob.evaluate_all(x0), Bundle(p), 0};
    for (int i = 0; i < p; ++i)
        st.bundle.reset(i, {prob.objective(i).subgrad(st.x), st.x, EntryOrigin::initial});

    DsspStats stats;
    for (st.k = 0;; ++st.k) {
        if (st.k >= params.max_dssp_iters)
            throw NonconvergenceError("dssp: iteration cap " +
                                      std::to_string(params.max_dssp_iters) + " exceeded");
        auto check = is_substationary(st.bundle, delta);
        if (check.substationary) {
            if (trace) trace({nu, st.k, check.min_norm.norm, StepKind::stop, 0.0, {}, {}, {}, {}});
            stats.iterations = st.k;
            return {st.x, st.fx, stats, std::move(check.min_norm), std::move(check.generators)};
        }
        const Vector d = detail::scaled(check.min_norm.xi_star, -1.0 / check.min_norm.norm);
        auto out = lbls(prob, st.x, st.fx, d, check.min_norm.norm, params.beta, tbar, params.r,
                        params.t0);
        if (out.serious()) {
#ifndef NDEBUG
            for (int i = 0; i < p; ++i)
                assert(out.step_values[static_cast<std::size_t>(i)] -
                           st.fx[static_cast<std::size_t>(i)] <=
                       -params.beta * out.t * check.min_norm.norm + 1e-15);
#endif
            st.x = detail::axpy(st.x, out.t, d);
            st.fx = out.step_values;
            for (int i = 0; i < p; ++i)
                st.bundle.reset(i, {prob.objective(i).subgrad(st.x), st.x,
                                    EntryOrigin::serious_reset});
            ++stats.serious_steps;
            if (trace)
                trace({nu, st.k, check.min_norm.norm, StepKind::serious, out.t, d, {}, st.x,
                       st.fx});
        } else {
            for (int i : out.failing) {
                auto fr = fes(prob.objective(i), st.x, st.fx[static_cast<std::size_t>(i)], d,
                              check.min_norm.norm, eps, params.beta, params.c, tbar,
                              params.max_fes_iters);
                st.bundle.append(i, {std::move(fr.subgrad), detail::axpy(st.x, fr.t, d),
                                     EntryOrigin::fes});
            }
            ++stats.null_steps;
            if (trace)
                trace({nu, st.k, check.min_norm.norm, StepKind::null, 0.0, d, out.failing, st.x,
                       st.fx});
        }
    }
}

inline RunRecord solve(Problem& prob, const Vector& x0, const SolverParams& params,
                       const TraceSink& trace = {}) {
    params.validate();
    if (static_cast<int>(x0.size()) != prob.dim())
        throw ConfigError("solve: start point dimension mismatch");
    if (!detail::all_finite(x0)) throw ConfigError("solve: non-finite start point");

    prob.reset_counters();
    const auto t_begin = std::chrono::steady_clock::now();

    RunRecord rec;
    rec.start = x0;

    double eps = params.eps0;
    double delta = params.delta0;
    double eps_used = eps, delta_used = delta;
    Vector x = x0;
    DsspResult last;
    bool stopped = false;
    int nu = 0;
    for (; nu < params.max_outer_iters; ++nu) {
        eps_used = eps;
        delta_used = delta;
        last = dssp(prob, x, eps, delta, params, trace, nu);
        x = last.x;
        rec.inner_iters += last.stats.iterations;
        rec.serious_steps += last.stats.serious_steps;
        rec.null_steps += last.stats.null_steps;
        if (delta < params.rho && eps < params.rho) {
            stopped = true;
            break;
        }
        eps *= params.gamma;
        delta *= params.gamma;
    }

    rec.converged = stopped;
    rec.outer_iters = nu;
    eps = eps_used;
    delta = delta_used;
    rec.final_point = x;
    rec.final_values = last.fx;
    rec.final_xi_norm = last.final_min_norm.norm;
    rec.delta_final = delta;
    rec.eps_final = eps;
    rec.final_generators = last.final_generators.columns;

    if (params.report_final_proxy && stopped) {
        std::vector<Vector> cols = last.final_generators.columns;
        for (int i = 0; i < prob.num_objectives(); ++i) cols.push_back(prob.objective(i).subgrad(x));
        rec.stationarity_proxy = min_norm_point(GeneratorSet::from_vectors(std::move(cols))).norm;
    }

    rec.fun_evals = prob.total_fun_evals();
    rec.sub_evals = prob.total_sub_evals();
    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    return rec;
}

}  // namespace sumopt
