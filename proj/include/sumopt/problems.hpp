#pragma once

// Benchmark problems: seven planar max-type objectives, fifteen bi-to-five
// objective combinations of them, a periodic 1-D bi-objective curve, and a
// randomized sparse-recovery instance. A string registry addresses them all.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sumopt/core.hpp"
#include "sumopt/detail/vec.hpp"

namespace sumopt {

struct SmoothPiece {
    std::function<double(const Vector&)> value;
    std::function<Vector(const Vector&)> grad;
};

// Finite-max objective f(x) = max_j p_j(x) over smooth pieces. The reported
// subgradient is the gradient of the first maximizing piece; "maximizing" is
// judged within 1e-12 * max(1, |f|) so exact mathematical ties that land a
// last-bit apart in floating point still resolve to the lowest index.
struct MaxTypeObjective {
    std::string name;
    std::vector<SmoothPiece> pieces;

    double value(const Vector& x) const {
        double best = pieces.front().value(x);
        for (std::size_t j = 1; j < pieces.size(); ++j) best = std::max(best, pieces[j].value(x));
        return best;
    }

    Vector subgrad(const Vector& x) const {
        std::vector<double> vals(pieces.size());
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < pieces.size(); ++j) {
            vals[j] = pieces[j].value(x);
            best = std::max(best, vals[j]);
        }
        const double tol = 1e-12 * std::max(1.0, std::fabs(best));
        for (std::size_t j = 0; j < pieces.size(); ++j)
            if (vals[j] >= best - tol) return pieces[j].grad(x);
        return pieces.front().grad(x);  // unreachable
    }

    // Gradients of every piece within `margin` of the max (certification aid).
    std::vector<Vector> active_gradients(const Vector& x, double margin) const {
        std::vector<double> vals(pieces.size());
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < pieces.size(); ++j) {
            vals[j] = pieces[j].value(x);
            best = std::max(best, vals[j]);
        }
        std::vector<Vector> out;
        for (std::size_t j = 0; j < pieces.size(); ++j)
            if (vals[j] >= best - margin) out.push_back(pieces[j].grad(x));
        return out;
    }

    // Gap between the best and second-best piece (infinite for one piece).
    double activity_margin(const Vector& x) const {
        if (pieces.size() == 1) return std::numeric_limits<double>::infinity();
        double best = -std::numeric_limits<double>::infinity(), second = best;
        for (const auto& pc : pieces) {
            const double v = pc.value(x);
            if (v > best) {
                second = best;
                best = v;
            } else if (v > second) {
                second = v;
            }
        }
        return best - second;
    }

    ObjectiveOracle oracle() const {
        return ObjectiveOracle(
            name, [self = *this](const Vector& x) { return self.value(x); },
            [self = *this](const Vector& x) { return self.subgrad(x); });
    }
};

namespace zoo {

inline MaxTypeObjective crescent() {
    return {"Crescent",
            {{[](const Vector& x) { return x[0] * x[0] + (x[1] - 1.0) * (x[1] - 1.0) + x[1] - 1.0; },
              [](const Vector& x) { return Vector{2.0 * x[0], 2.0 * (x[1] - 1.0) + 1.0}; }},
             {[](const Vector& x) {
                  return -x[0] * x[0] - (x[1] - 1.0) * (x[1] - 1.0) + x[1] + 1.0;
              },
              [](const Vector& x) { return Vector{-2.0 * x[0], -2.0 * (x[1] - 1.0) + 1.0}; }}}};
}

inline MaxTypeObjective lq() {
    return {"LQ",
            {{[](const Vector& x) { return -x[0] - x[1]; },
              [](const Vector&) { return Vector{-1.0, -1.0}; }},
             {[](const Vector& x) { return -x[0] - x[1] + x[0] * x[0] + x[1] * x[1] - 1.0; },
              [](const Vector& x) { return Vector{-1.0 + 2.0 * x[0], -1.0 + 2.0 * x[1]}; }}}};
}

inline MaxTypeObjective ql() {
    return {"QL",
            {{[](const Vector& x) { return x[0] * x[0] + x[1] * x[1]; },
              [](const Vector& x) { return Vector{2.0 * x[0], 2.0 * x[1]}; }},
             {[](const Vector& x) {
                  return x[0] * x[0] + x[1] * x[1] + 10.0 * (-4.0 * x[0] - x[1] + 4.0);
              },
              [](const Vector& x) { return Vector{2.0 * x[0] - 40.0, 2.0 * x[1] - 10.0}; }},
             {[](const Vector& x) {
                  return x[0] * x[0] + x[1] * x[1] + 10.0 * (-x[0] - 2.0 * x[1] + 6.0);
              },
              [](const Vector& x) { return Vector{2.0 * x[0] - 10.0, 2.0 * x[1] - 20.0}; }}}};
}

inline MaxTypeObjective cb3() {
    return {"CB3",
            {{[](const Vector& x) { return x[0] * x[0] * x[0] * x[0] + x[1] * x[1]; },
              [](const Vector& x) { return Vector{4.0 * x[0] * x[0] * x[0], 2.0 * x[1]}; }},
             {[](const Vector& x) {
                  return (2.0 - x[0]) * (2.0 - x[0]) + (2.0 - x[1]) * (2.0 - x[1]);
              },
              [](const Vector& x) { return Vector{-2.0 * (2.0 - x[0]), -2.0 * (2.0 - x[1])}; }},
             {[](const Vector& x) { return 2.0 * std::exp(x[1] - x[0]); },
              [](const Vector& x) {
                  const double e = std::exp(x[1] - x[0]);
                  return Vector{-2.0 * e, 2.0 * e};
              }}}};
}

inline MaxTypeObjective dem() {
    return {"DEM",
            {{[](const Vector& x) { return 5.0 * x[0] + x[1]; },
              [](const Vector&) { return Vector{5.0, 1.0}; }},
             {[](const Vector& x) { return -5.0 * x[0] + x[1]; },
              [](const Vector&) { return Vector{-5.0, 1.0}; }},
             {[](const Vector& x) { return x[0] * x[0] + x[1] * x[1] + 4.0 * x[1]; },
              [](const Vector& x) { return Vector{2.0 * x[0], 2.0 * x[1] + 4.0}; }}}};
}

// -x1 + 20 max{x1^2 + x2^2 - 1, 0}, written as a two-piece max.
inline MaxTypeObjective mifflin1() {
    return {"Mifflin1",
            {{[](const Vector& x) {
                  return -x[0] + 20.0 * (x[0] * x[0] + x[1] * x[1] - 1.0);
              },
              [](const Vector& x) { return Vector{-1.0 + 40.0 * x[0], 40.0 * x[1]}; }},
             {[](const Vector& x) { return -x[0]; },
              [](const Vector&) { return Vector{-1.0, 0.0}; }}}};
}

// -x1 + 2 s + 1.75 |s| with s = x1^2 + x2^2 - 1, i.e. max{-x1+3.75s, -x1+0.25s}.
inline MaxTypeObjective mifflin2() {
    return {"Mifflin2",
            {{[](const Vector& x) {
                  return -x[0] + 3.75 * (x[0] * x[0] + x[1] * x[1] - 1.0);
              },
              [](const Vector& x) { return Vector{-1.0 + 7.5 * x[0], 7.5 * x[1]}; }},
             {[](const Vector& x) {
                  return -x[0] + 0.25 * (x[0] * x[0] + x[1] * x[1] - 1.0);
              },
              [](const Vector& x) { return Vector{-1.0 + 0.5 * x[0], 0.5 * x[1]}; }}}};
}

inline const std::vector<MaxTypeObjective>& planar() {
    static const std::vector<MaxTypeObjective> all = {crescent(), lq(),       ql(),      cb3(),
                                                      dem(),      mifflin1(), mifflin2()};
    return all;
}

}  // namespace zoo

// Free-function views of the planar zoo.
inline double crescent(const Vector& x) { return zoo::crescent().value(x); }
inline Vector crescent_subgrad(const Vector& x) { return zoo::crescent().subgrad(x); }
inline double lq(const Vector& x) { return zoo::lq().value(x); }
inline Vector lq_subgrad(const Vector& x) { return zoo::lq().subgrad(x); }
inline double ql(const Vector& x) { return zoo::ql().value(x); }
inline Vector ql_subgrad(const Vector& x) { return zoo::ql().subgrad(x); }
inline double cb3(const Vector& x) { return zoo::cb3().value(x); }
inline Vector cb3_subgrad(const Vector& x) { return zoo::cb3().subgrad(x); }
inline double dem(const Vector& x) { return zoo::dem().value(x); }
inline Vector dem_subgrad(const Vector& x) { return zoo::dem().subgrad(x); }
inline double mifflin1(const Vector& x) { return zoo::mifflin1().value(x); }
inline Vector mifflin1_subgrad(const Vector& x) { return zoo::mifflin1().subgrad(x); }
inline double mifflin2(const Vector& x) { return zoo::mifflin2().value(x); }
inline Vector mifflin2_subgrad(const Vector& x) { return zoo::mifflin2().subgrad(x); }

// Objective line-ups of the fifteen planar combinations.
inline const std::vector<std::vector<int>>& composite_table() {
    // indices into zoo::planar(): 0 Crescent, 1 LQ, 2 QL, 3 CB3, 4 DEM, 5 Mifflin1, 6 Mifflin2
    static const std::vector<std::vector<int>> table = {
        {0, 1}, {6, 0}, {0, 2}, {3, 1}, {3, 5}, {6, 5}, {3, 2}, {6, 4},
        {6, 1}, {3, 4}, {4, 2, 5}, {6, 0, 5}, {4, 2, 5, 3}, {6, 0, 4, 5}, {6, 0, 4, 5, 2}};
    return table;
}

inline Problem composite_problem(int id) {
    if (id < 1 || id > 15) throw ConfigError("composite_problem: id must be in 1..15");
    const auto& lineup = composite_table()[static_cast<std::size_t>(id - 1)];
    std::vector<ObjectiveOracle> objs;
    for (int idx : lineup) objs.push_back(zoo::planar()[static_cast<std::size_t>(idx)].oracle());
    return Problem("P" + std::to_string(id), 2, std::move(objs));
}

// Periodic 1-D bi-objective curve: a wobbling unit circle traced in objective
// space, f(x) = (1 + 0.1 sin 8x) * (cos(x - 0.6), sin(x - 0.6)).
inline double fl_f1(double x) { return (1.0 + 0.1 * std::sin(8.0 * x)) * std::cos(x - 0.6); }
inline double fl_f2(double x) { return (1.0 + 0.1 * std::sin(8.0 * x)) * std::sin(x - 0.6); }
inline double fl_f1_prime(double x) {
    const double a = 1.0 + 0.1 * std::sin(8.0 * x), ap = 0.8 * std::cos(8.0 * x);
    return ap * std::cos(x - 0.6) - a * std::sin(x - 0.6);
}
inline double fl_f2_prime(double x) {
    const double a = 1.0 + 0.1 * std::sin(8.0 * x), ap = 0.8 * std::cos(8.0 * x);
    return ap * std::sin(x - 0.6) + a * std::cos(x - 0.6);
}
// Nonpositive exactly on the substationary set of the curve problem.
inline double fl_substationarity_indicator(double x) { return fl_f1_prime(x) * fl_f2_prime(x); }

inline Problem fl_problem() {
    std::vector<ObjectiveOracle> objs;
    objs.emplace_back(
        "FL1", [](const Vector& x) { return fl_f1(x[0]); },
        [](const Vector& x) { return Vector{fl_f1_prime(x[0])}; });
    objs.emplace_back(
        "FL2", [](const Vector& x) { return fl_f2(x[0]); },
        [](const Vector& x) { return Vector{fl_f2_prime(x[0])}; });
    return Problem("FL", 1, std::move(objs));
}

// Sparse recovery: minimize (||x||_1, ||A x - b||^2) with standard-normal
// data. The instance is a pure function of the seed: mt19937_64 feeds a
// Box-Muller normal stream (detail::Rng), A is filled row-major, then b.
struct SparseInstance {
    std::uint64_t seed = 0;
    int rows = 0;
    int cols = 0;
    std::vector<double> A;  // row-major rows x cols
    std::vector<double> b;
};

inline SparseInstance make_sparse_instance(std::uint64_t seed, int rows = 50, int cols = 100) {
    if (rows < 1 || cols < 1) throw ConfigError("make_sparse_instance: bad shape");
    SparseInstance inst;
    inst.seed = seed;
    inst.rows = rows;
    inst.cols = cols;
    detail::Rng rng(seed);
    inst.A.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (auto& v : inst.A) v = rng.normal();
    inst.b.resize(static_cast<std::size_t>(rows));
    for (auto& v : inst.b) v = rng.normal();
    return inst;
}

inline Problem sparse_problem(const SparseInstance& inst) {
    const int m = inst.rows, n = inst.cols;
    auto residual = [inst, m, n](const Vector& x) {
        std::vector<double> r(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            double s = -inst.b[static_cast<std::size_t>(i)];
            const double* row = inst.A.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) s += row[j] * x[static_cast<std::size_t>(j)];
            r[static_cast<std::size_t>(i)] = s;
        }
        return r;
    };
    std::vector<ObjectiveOracle> objs;
    objs.emplace_back(
        "l1",
        [](const Vector& x) {
            double s = 0.0;
            for (double v : x) s += std::fabs(v);
            return s;
        },
        [](const Vector& x) {
            Vector g(x.size());
            for (std::size_t j = 0; j < x.size(); ++j)
                g[j] = x[j] > 0.0 ? 1.0 : (x[j] < 0.0 ? -1.0 : 0.0);
            return g;
        });
    objs.emplace_back(
        "residual2",
        [residual](const Vector& x) {
            const auto r = residual(x);
            return detail::norm2(r);
        },
        [residual, inst, m, n](const Vector& x) {
            const auto r = residual(x);
            Vector g(static_cast<std::size_t>(n), 0.0);
            for (int i = 0; i < m; ++i) {
                const double* row = inst.A.data() + static_cast<std::size_t>(i) * n;
                const double ri = 2.0 * r[static_cast<std::size_t>(i)];
                for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(j)] += ri * row[j];
            }
            return g;
        });
    return Problem("SPARSE:" + std::to_string(inst.seed), n, std::move(objs));
}

// Components with magnitude below the sparsity threshold.
inline int count_zero(const Vector& x, double tol = 1e-3) {
    int c = 0;
    for (double v : x)
        if (std::fabs(v) < tol) ++c;
    return c;
}

// Named start-region presets used by the reproduction sweeps.
struct Box {
    double lo = 0.0;
    double hi = 1.0;
};
inline constexpr Box kParetoSweepBox{0.0, 2.0};
struct GridPreset {
    int k = 1;
    Box box;
};
inline constexpr GridPreset kComparisonGrid{13, {-3.0, 3.0}};

// Registry: "P1".."P15", "FL", "SPARSE:<seed>".
inline Problem make_problem(const std::string& id) {
    if (id == "FL") return fl_problem();
    if (id.rfind("SPARSE:", 0) == 0) {
        const std::string tail = id.substr(7);
        try {
            if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument(tail);
            std::size_t used = 0;
            const unsigned long long seed = std::stoull(tail, &used);
            if (used != tail.size()) throw std::invalid_argument(tail);
            return sparse_problem(make_sparse_instance(static_cast<std::uint64_t>(seed)));
        } catch (const std::exception&) {
            throw ConfigError("make_problem: bad sparse seed in '" + id + "'");
        }
    }
    if (!id.empty() && id[0] == 'P') {
        const std::string tail = id.substr(1);
        if (!tail.empty() && tail.find_first_not_of("0123456789") == std::string::npos) {
            const int k = std::stoi(tail);
            if (k >= 1 && k <= 15) return composite_problem(k);
        }
    }
    throw ConfigError("make_problem: unknown problem id '" + id + "'");
}

}  // namespace sumopt
