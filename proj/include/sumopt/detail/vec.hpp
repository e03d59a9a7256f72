#pragma once

// Small dense-vector helpers and a reproducible RNG. Everything operates on
// std::vector<double>; sizes are trusted (callers validate at API boundaries).

#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace sumopt {

using Vector = std::vector<double>;

namespace detail {

inline double dot(const Vector& a, const Vector& b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vector& a) { return dot(a, a); }

inline double norm(const Vector& a) { return std::sqrt(norm2(a)); }

// y = x + t*d
inline Vector axpy(const Vector& x, double t, const Vector& d) {
    assert(x.size() == d.size());
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + t * d[i];
    return y;
}

inline Vector scaled(const Vector& x, double s) {
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = s * x[i];
    return y;
}

inline bool all_finite(const Vector& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

// Component-wise equality within an absolute tolerance.
inline bool approx_equal(const Vector& a, const Vector& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::fabs(a[i] - b[i]) > tol) return false;
    return true;
}

// Deterministic random source. mt19937_64 has a standard-pinned sequence;
// the uniform and normal mappings below are spelled out (rather than using
// std::uniform_real_distribution / std::normal_distribution, whose algorithms
// are implementation-defined) so a seed regenerates identical data.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1): take the top 53 bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller; draws are consumed in pairs and the
    // cos/sin values are handed out alternately. u1 is mapped into (0, 1].
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
        const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        const double m = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = m * std::sin(a);
        have_spare_ = true;
        return m * std::cos(a);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace detail
}  // namespace sumopt
