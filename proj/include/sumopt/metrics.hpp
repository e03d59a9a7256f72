#pragma once

// Objective-space front bookkeeping: dominance filtering and the two spread
// statistics for bi-objective fronts (largest hole, and largest hole relative
// to the mean gap after sorting by the first objective).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sumopt/detail/vec.hpp"

namespace sumopt {

// A set Y of attained objective vectors; run_ids records which run attained each
// point (parallel arrays).
struct FrontApproximation {
    std::vector<Vector> points;
    std::vector<int> run_ids;
};

namespace detail {

// y dominates z iff y <= z component-wise and y != z (weak Pareto dominance).
inline bool dominates(const Vector& y, const Vector& z) {
    bool some_strict = false;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] > z[i]) return false;
        if (y[i] < z[i]) some_strict = true;
    }
    return some_strict;
}

inline std::vector<std::size_t> order_by_first_objective(const FrontApproximation& front) {
    std::vector<std::size_t> idx(front.points.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return front.points[a][0] < front.points[b][0];
    });
    return idx;
}

}  // namespace detail

// Points not dominated by any other member, in stable order of the first
// objective. Exact duplicates do not dominate each other and are all kept.
inline FrontApproximation filter_nondominated(const FrontApproximation& front) {
    FrontApproximation out;
    const auto& pts = front.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pts.size() && !dominated; ++j)
            if (j != i && detail::dominates(pts[j], pts[i])) dominated = true;
        if (!dominated) {
            out.points.push_back(pts[i]);
            out.run_ids.push_back(i < front.run_ids.size() ? front.run_ids[i] : static_cast<int>(i));
        }
    }
    const auto order = detail::order_by_first_objective(out);
    FrontApproximation sorted;
    for (std::size_t k : order) {
        sorted.points.push_back(out.points[k]);
        sorted.run_ids.push_back(out.run_ids[k]);
    }
    return sorted;
}

namespace detail {

inline std::vector<double> sorted_gaps(const FrontApproximation& front) {
    if (front.points.size() < 2)
        throw std::invalid_argument("front metrics: need at least two points");
    for (const auto& pt : front.points)
        if (pt.size() != 2)
            throw std::invalid_argument("front metrics: defined for bi-objective fronts only");
    const auto order = order_by_first_objective(front);
    std::vector<double> gaps;
    gaps.reserve(order.size() - 1);
    for (std::size_t k = 1; k < order.size(); ++k) {
        const auto& a = front.points[order[k - 1]];
        const auto& b = front.points[order[k]];
        gaps.push_back(std::hypot(b[0] - a[0], b[1] - a[1]));
    }
    return gaps;
}

}  // namespace detail

// Largest Euclidean gap between neighbors along the front.
inline double has(const FrontApproximation& front) {
    const auto gaps = detail::sorted_gaps(front);
    return *std::max_element(gaps.begin(), gaps.end());
}

// Largest gap relative to the mean gap; >= 1, with equality iff all gaps are
// equal. Degenerate (all points identical) yields 0/0 -> reported as 1.
inline double hrs(const FrontApproximation& front) {
    const auto gaps = detail::sorted_gaps(front);
    const double hmax = *std::max_element(gaps.begin(), gaps.end());
    const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / gaps.size();
    if (mean == 0.0) return 1.0;
    return hmax / mean;
}

}  // namespace sumopt
