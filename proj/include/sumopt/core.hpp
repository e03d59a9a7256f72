#pragma once

// Core types shared by the solver stack: objective oracles with evaluation
// counters, multiobjective problem container, solver parameters, run records.

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sumopt/detail/vec.hpp"

namespace sumopt {

// Error taxonomy. The CLI maps these onto exit codes:
//   ConfigError -> 2, NonconvergenceError -> 3, InternalError -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct NonconvergenceError : Error {
    using Error::Error;
};
struct InternalError : Error {
    using Error::Error;
};

// A single objective f_i: value and one Clarke subgradient per query, with
// per-instance call counters. Oracles must be pure: same point, same answer,
// no observable state besides the counters. Counters are per-instance and
// never shared; concurrent runs operate on copies of the Problem.
class ObjectiveOracle {
public:
    using ValueFn = std::function<double(const Vector&)>;
    using SubgradFn = std::function<Vector(const Vector&)>;

    ObjectiveOracle(std::string name, ValueFn value, SubgradFn subgrad)
        : name_(std::move(name)), value_(std::move(value)), subgrad_(std::move(subgrad)) {
        if (!value_ || !subgrad_) throw ConfigError("objective '" + name_ + "': empty callable");
    }

    const std::string& name() const { return name_; }

    double value(const Vector& x) {
        ++fun_count_;
        return value_(x);
    }

    Vector subgrad(const Vector& x) {
        ++sub_count_;
        return subgrad_(x);
    }

    long fun_count() const { return fun_count_; }
    long sub_count() const { return sub_count_; }

    void reset_counters() {
        fun_count_ = 0;
        sub_count_ = 0;
    }

private:
    std::string name_;
    ValueFn value_;
    SubgradFn subgrad_;
    long fun_count_ = 0;
    long sub_count_ = 0;
};

// Unconstrained multiobjective problem: p >= 1 objectives over R^n.
// Copyable; a copy carries independent counters.
class Problem {
public:
    Problem(std::string name, int dim, std::vector<ObjectiveOracle> objectives)
        : name_(std::move(name)), dim_(dim), objectives_(std::move(objectives)) {
        if (dim_ < 1) throw ConfigError("problem '" + name_ + "': dim must be >= 1");
        if (objectives_.empty()) throw ConfigError("problem '" + name_ + "': no objectives");
    }

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    int num_objectives() const { return static_cast<int>(objectives_.size()); }

    ObjectiveOracle& objective(int i) { return objectives_.at(static_cast<std::size_t>(i)); }
    const ObjectiveOracle& objective(int i) const {
        return objectives_.at(static_cast<std::size_t>(i));
    }

    // One value call per objective, in index order.
    std::vector<double> evaluate_all(const Vector& x) {
        std::vector<double> f(objectives_.size());
        for (std::size_t i = 0; i < objectives_.size(); ++i) f[i] = objectives_[i].value(x);
        return f;
    }

    void reset_counters() {
        for (auto& o : objectives_) o.reset_counters();
    }

    long total_fun_evals() const {
        long s = 0;
        for (const auto& o : objectives_) s += o.fun_count();
        return s;
    }

    long total_sub_evals() const {
        long s = 0;
        for (const auto& o : objectives_) s += o.sub_count();
        return s;
    }

private:
    std::string name_;
    int dim_;
    std::vector<ObjectiveOracle> objectives_;
};

// Parameters of the full solver stack. Defaults are the standard desk-scale
// configuration; validate() enforces the documented admissible ranges.
struct SolverParams {
    double eps0 = 0.1;           // initial sampling radius
    double delta0 = 0.1;         // initial stationarity threshold
    double gamma = 0.1;          // geometric shrink factor per outer round
    double beta = 1e-6;          // sufficient-decrease coefficient
    double c = 0.01;             // subgradient acceptance coefficient (beta < c < 1)
    double eta = 0.1;            // bracket-shrink guarantee parameter (analysis only)
    double r = 0.5;              // backtracking ratio
    double t0 = 2.0;             // largest trial step
    double tbar_fraction = 0.1;  // tbar = tbar_fraction * eps, per outer round
    double rho = 1e-3;           // outer stop: eps < rho and delta < rho
    int max_fes_iters = 100;     // probe cap per subgradient search
    long max_dssp_iters = 10000; // inner-iteration cap per outer round
    int max_outer_iters = 60;    // outer-round cap
    bool report_final_proxy = false;  // pooled min-norm with fresh subgradients at the end

    void validate() const {
        auto fail = [](const std::string& what) { throw ConfigError("invalid parameter: " + what); };
        if (!(eps0 > 0.0)) fail("eps0 must be > 0");
        if (!(delta0 > 0.0)) fail("delta0 must be > 0");
        if (!(gamma > 0.0 && gamma < 1.0)) fail("gamma must be in (0,1)");
        if (!(beta > 0.0 && beta < c && c < 1.0)) fail("need 0 < beta < c < 1");
        if (!(eta > 0.0 && eta < 0.5)) fail("eta must be in (0,1/2)");
        if (!(r > 0.0 && r < 1.0)) fail("r must be in (0,1)");
        if (!(tbar_fraction > 0.0 && tbar_fraction < 1.0)) fail("tbar_fraction must be in (0,1)");
        if (!(t0 > 0.0)) fail("t0 must be > 0");
        if (!(t0 > tbar_fraction * eps0))
            fail("t0 must exceed the first-round tbar = tbar_fraction * eps0");
        if (!(rho > 0.0)) fail("rho must be > 0");
        if (max_fes_iters < 1) fail("max_fes_iters must be >= 1");
        if (max_dssp_iters < 1) fail("max_dssp_iters must be >= 1");
        if (max_outer_iters < 1) fail("max_outer_iters must be >= 1");
    }
};

// Number of interior backtracks tau in the trial-step grid
// {t0, r*t0, ..., r^tau*t0, tbar}: the ceil rule picks the unique integer with
// r^tau * t0 > tbar > r^(tau+1) * t0 (boundary ties resolve by the formula).
inline int tau_of(double tbar, double t0, double r) {
    if (!(t0 > 0.0) || !(tbar > 0.0) || !(tbar < t0))
        throw std::invalid_argument("tau_of: need 0 < tbar < t0");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("tau_of: need r in (0,1)");
    const double raw = std::ceil(std::log(tbar / t0) / std::log(r) - 1.0);
    if (raw < 0.0) return 0;
    return static_cast<int>(raw);
}

// Outcome of one full solve: endpoint, certificates, counters.
// final_generators is the pooled deduplicated bundle at termination so the
// substationarity certificate can be re-checked from the record alone.
struct RunRecord {
    int run_id = 0;
    Vector start;
    Vector final_point;
    std::vector<double> final_values;
    bool converged = false;
    int outer_iters = 0;      // outer index at termination
    long inner_iters = 0;     // total inner iterations over all rounds
    long serious_steps = 0;
    long null_steps = 0;
    long fun_evals = 0;
    long sub_evals = 0;
    double wall_time_s = 0.0;
    double final_xi_norm = 0.0;
    double delta_final = 0.0;
    double eps_final = 0.0;
    std::vector<Vector> final_generators;
    std::optional<double> stationarity_proxy;
};

}  // namespace sumopt
