#pragma once

// Minimum-norm point in the convex hull of finitely many vectors:
//     min ||G lambda||  s.t.  lambda >= 0, sum_j lambda_j = 1.
// Solved with Wolfe's corral algorithm: grow an affinely independent active
// set, move to the norm minimizer of its affine hull, and shed generators
// whose barycentric weight would turn negative. Finite for exact arithmetic;
// here guarded by an iteration cap plus an explicit optimality certificate
//     g_j . xi* >= ||xi*||^2 - kkt_tol  for every generator g_j,
// which is validated before returning.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sumopt/core.hpp"
#include "sumopt/detail/vec.hpp"

namespace sumopt {

// Finite set of pooled subgradients, deduplicated component-wise at 1e-14.
struct GeneratorSet {
    std::vector<Vector> columns;

    static GeneratorSet from_vectors(std::vector<Vector> cols, double dedup_tol = 1e-14) {
        if (cols.empty()) throw std::invalid_argument("GeneratorSet: empty input");
        const std::size_t n = cols.front().size();
        if (n == 0) throw std::invalid_argument("GeneratorSet: zero-dimensional generator");
        GeneratorSet g;
        for (auto& c : cols) {
            if (c.size() != n) throw std::invalid_argument("GeneratorSet: mixed dimensions");
            if (!detail::all_finite(c)) throw std::invalid_argument("GeneratorSet: non-finite entry");
            bool dup = false;
            for (const auto& kept : g.columns)
                if (detail::approx_equal(kept, c, dedup_tol)) {
                    dup = true;
                    break;
                }
            if (!dup) g.columns.push_back(std::move(c));
        }
        return g;
    }

    int dim() const { return static_cast<int>(columns.front().size()); }
    int size() const { return static_cast<int>(columns.size()); }
};

struct MinNormResult {
    Vector xi_star;              // = sum_j lambda_j g_j, recomputed on exit
    std::vector<double> lambda;  // hull coefficients over the deduplicated columns
    double norm = 0.0;
};

namespace detail {

// Solve M a = rhs by Gaussian elimination with partial pivoting.
// Returns false when a pivot collapses (numerically singular M).
inline bool solve_dense(std::vector<std::vector<double>> M, std::vector<double> rhs,
                        std::vector<double>& out) {
    const std::size_t k = M.size();
    double maxm = 0.0;
    for (const auto& row : M)
        for (double v : row) maxm = std::max(maxm, std::fabs(v));
    const double piv_tol = 1e-14 * std::max(1.0, maxm);
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
        if (std::fabs(M[piv][col]) <= piv_tol) return false;
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < k; ++r) {
            const double f = M[r][col] / M[col][col];
            if (f == 0.0) continue;
            for (std::size_t cc = col; cc < k; ++cc) M[r][cc] -= f * M[col][cc];
            rhs[r] -= f * rhs[col];
        }
    }
    out.assign(k, 0.0);
    for (std::size_t r = k; r-- > 0;) {
        double s = rhs[r];
        for (std::size_t cc = r + 1; cc < k; ++cc) s -= M[r][cc] * out[cc];
        out[r] = s / M[r][r];
    }
    return true;
}

}  // namespace detail

inline MinNormResult min_norm_point(const GeneratorSet& gens) {
    const std::size_t m = gens.columns.size();
    const std::size_t n = gens.columns.front().size();

    // Work on generators normalized by the largest norm so the corral systems
    // stay well scaled; all hull coefficients are scale-free.
    double scale = 0.0;
    for (const auto& g : gens.columns) scale = std::max(scale, detail::norm(g));
    std::vector<Vector> G;
    G.reserve(m);
    for (const auto& g : gens.columns) G.push_back(scale > 0.0 ? detail::scaled(g, 1.0 / scale) : g);

    std::vector<std::size_t> corral;
    std::vector<double> w;

    // start from the shortest generator (first on ties)
    std::size_t j0 = 0;
    double best = detail::norm2(G[0]);
    for (std::size_t j = 1; j < m; ++j) {
        const double v = detail::norm2(G[j]);
        if (v < best) {
            best = v;
            j0 = j;
        }
    }
    corral.push_back(j0);
    w.push_back(1.0);
    Vector x = G[j0];

    auto rebuild_x = [&]() {
        x.assign(n, 0.0);
        for (std::size_t t = 0; t < corral.size(); ++t)
            for (std::size_t i = 0; i < n; ++i) x[i] += w[t] * G[corral[t]][i];
    };

    const double stop_tol = 1e-12;  // normalized data: ||g|| <= 1
    const long iter_cap = std::max<long>(10L * static_cast<long>(n) * static_cast<long>(m), 64);
    long iters = 0;

    while (iters++ < iter_cap) {
        // most violating generator for the current point
        std::size_t jmin = 0;
        double dmin = detail::dot(G[0], x);
        for (std::size_t j = 1; j < m; ++j) {
            const double d = detail::dot(G[j], x);
            if (d < dmin) {
                dmin = d;
                jmin = j;
            }
        }
        const double xx = detail::norm2(x);
        if (dmin >= xx - stop_tol) break;  // optimal within tolerance
        if (std::find(corral.begin(), corral.end(), jmin) != corral.end()) break;  // stall
        corral.push_back(jmin);
        w.push_back(0.0);

        // minor cycle: project onto the affine hull of the corral, shedding
        // generators until the barycentric weights are all positive
        while (iters++ < iter_cap) {
            const std::size_t k = corral.size();
            std::vector<std::vector<double>> M(k, std::vector<double>(k));
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b)
                    M[a][b] = 1.0 + detail::dot(G[corral[a]], G[corral[b]]);
            std::vector<double> a_sol;
            if (!detail::solve_dense(M, std::vector<double>(k, 1.0), a_sol)) {
                // affinely dependent corral: drop the newest generator
                corral.pop_back();
                w.pop_back();
                rebuild_x();
                break;
            }
            double asum = 0.0;
            for (double v : a_sol) asum += v;
            if (asum == 0.0) {
                corral.pop_back();
                w.pop_back();
                rebuild_x();
                break;
            }
            std::vector<double> v(k);
            for (std::size_t t = 0; t < k; ++t) v[t] = a_sol[t] / asum;

            bool interior = true;
            for (double vt : v)
                if (vt <= 1e-12) {
                    interior = false;
                    break;
                }
            if (interior) {
                w = v;
                rebuild_x();
                break;
            }

            // step from w toward v until the first weight hits zero
            double theta = 1.0;
            for (std::size_t t = 0; t < k; ++t)
                if (v[t] <= 1e-12) {
                    const double denom = w[t] - v[t];
                    if (denom > 0.0) theta = std::min(theta, w[t] / denom);
                }
            theta = std::clamp(theta, 0.0, 1.0);
            for (std::size_t t = 0; t < k; ++t) {
                w[t] = (1.0 - theta) * w[t] + theta * v[t];
                if (w[t] < 1e-14) w[t] = 0.0;
            }
            for (std::size_t t = k; t-- > 0;) {
                if (w[t] == 0.0) {
                    corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(t));
                    w.erase(w.begin() + static_cast<std::ptrdiff_t>(t));
                }
            }
            if (corral.empty()) {  // numerically degenerate; restart from jmin
                corral.push_back(jmin);
                w.push_back(1.0);
            }
            rebuild_x();
        }
    }

    // scatter hull coefficients, renormalize, recompute xi on original scale
    MinNormResult res;
    res.lambda.assign(m, 0.0);
    double wsum = 0.0;
    for (double v : w) wsum += v;
    for (std::size_t t = 0; t < corral.size(); ++t) res.lambda[corral[t]] = w[t] / wsum;
    res.xi_star.assign(n, 0.0);
    for (std::size_t j = 0; j < m; ++j)
        if (res.lambda[j] != 0.0)
            for (std::size_t i = 0; i < n; ++i) res.xi_star[i] += res.lambda[j] * gens.columns[j][i];
    res.norm = detail::norm(res.xi_star);

    // The loop certifies optimality to stop_tol in normalized units, so the
    // admissible slack on the original data grows with scale^2.
    const double n2 = res.norm * res.norm;
    const double kkt_tol =
        std::max(1e-9 * std::max(1.0, n2), 100.0 * stop_tol * scale * scale);
    for (const auto& g : gens.columns)
        if (detail::dot(g, res.xi_star) < n2 - kkt_tol)
            throw InternalError("min_norm_point: optimality certificate failed");
    return res;
}

}  // namespace sumopt
