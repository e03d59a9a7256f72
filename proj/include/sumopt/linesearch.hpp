#pragma once

// Line search machinery for the descent solver.
//
// lbls: limited backtracking over the fixed trial grid
//   {t0, r*t0, ..., r^tau*t0, tbar}, accepting the first step where EVERY
//   objective drops by at least beta * t * ||xi*||. If even tbar fails, the
//   step is null (t = 0) and the objectives violating the test at tbar are
//   reported; that set is nonempty by construction.
//
// fes: after a null step, search (0, eps] for a subgradient of one failing
//   objective that certifies the blockage: bisect a bracket [tl, tu] (decrease
//   test moves tl up, failure moves tu down) starting from the probe t = tbar,
//   and return the first sampled subgradient with  xi . d >= -c * ||xi*||.
//   Every probe costs exactly one value and one subgradient evaluation.

#include <cmath>
#include <functional>
#include <vector>

#include "sumopt/core.hpp"
#include "sumopt/detail/vec.hpp"

namespace sumopt {

struct LblsOutcome {
    double t = 0.0;                    // accepted step; exactly 0.0 on a null step
    std::vector<int> failing;          // objectives violating the test at tbar (0-based)
    std::vector<double> step_values;   // f_i(x + t d) for the accepted step; empty on null
    bool serious() const { return t > 0.0; }
};

// fx must hold the objective values at x (no re-evaluation here); xi_norm is
// the pooled min-norm value driving both the direction and the decrease test.
inline LblsOutcome lbls(Problem& prob, const Vector& x, const std::vector<double>& fx,
                        const Vector& d, double xi_norm, double beta, double tbar, double r,
                        double t0) {
    const int p = prob.num_objectives();
    if (static_cast<int>(fx.size()) != p) throw std::invalid_argument("lbls: fx size mismatch");
    if (!(xi_norm > 0.0)) throw std::invalid_argument("lbls: xi_norm must be > 0");
    if (std::fabs(detail::norm(d) - 1.0) > 1e-9) throw std::invalid_argument("lbls: d not unit");
    const int tau = tau_of(tbar, t0, r);

    // interior candidates, largest first; stop at the first failing objective
    for (int s = 0; s <= tau; ++s) {
        const double t = t0 * std::pow(r, s);
        const double bound = -beta * t * xi_norm;
        std::vector<double> vals(static_cast<std::size_t>(p));
        bool ok = true;
        for (int i = 0; i < p; ++i) {
            vals[static_cast<std::size_t>(i)] = prob.objective(i).value(detail::axpy(x, t, d));
            if (!(vals[static_cast<std::size_t>(i)] - fx[static_cast<std::size_t>(i)] <= bound)) {
                ok = false;
                break;
            }
        }
        if (ok) return {t, {}, std::move(vals)};
    }

    // final candidate tbar: all objectives evaluated once, failures collected
    const double bound = -beta * tbar * xi_norm;
    std::vector<double> vals(static_cast<std::size_t>(p));
    std::vector<int> failing;
    for (int i = 0; i < p; ++i) {
        vals[static_cast<std::size_t>(i)] = prob.objective(i).value(detail::axpy(x, tbar, d));
        if (!(vals[static_cast<std::size_t>(i)] - fx[static_cast<std::size_t>(i)] <= bound))
            failing.push_back(i);
    }
    if (failing.empty()) return {tbar, {}, std::move(vals)};
    return {0.0, std::move(failing), {}};
}

struct FesResult {
    Vector subgrad;
    double t = 0.0;   // probe offset along d where the subgradient was sampled
    int probes = 0;
};

// Optional per-probe observer: (tl, tu, t) after each bracket update.
using FesObserver = std::function<void(double, double, double)>;

// fx is the cached value of this objective at x. The returned subgradient was
// sampled at x + t d with t in (0, eps), hence lies in the eps-subdifferential
// at x for Lipschitz objectives.
inline FesResult fes(ObjectiveOracle& obj, const Vector& x, double fx, const Vector& d,
                     double xi_norm, double eps, double beta, double c, double tbar,
                     int max_iters, const FesObserver& observer = {}) {
    if (!(xi_norm > 0.0)) throw std::invalid_argument("fes: xi_norm must be > 0");
    if (!(tbar > 0.0 && tbar <= eps)) throw std::invalid_argument("fes: need 0 < tbar <= eps");
    if (!(beta < c)) throw std::invalid_argument("fes: need beta < c");

    double tl = 0.0, tu = eps, t = tbar;
    for (int s = 0; s < max_iters; ++s) {
        const Vector pt = detail::axpy(x, t, d);
        const double val = obj.value(pt);
        const Vector g = obj.subgrad(pt);
        if (val - fx <= -beta * t * xi_norm)
            tl = t;
        else
            tu = t;
        if (observer) observer(tl, tu, t);
        if (detail::dot(g, d) >= -c * xi_norm) return {g, t, s + 1};
        t = 0.5 * (tl + tu);
    }
    throw NonconvergenceError("fes: no acceptable subgradient within " +
                              std::to_string(max_iters) + " probes on objective '" + obj.name() +
                              "'");
}

}  // namespace sumopt
