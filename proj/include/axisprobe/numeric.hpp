#ifndef AXISPROBE_NUMERIC_HPP
#define AXISPROBE_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace axisprobe::numeric {

// Fixed block size below which sums are plain sequential loops. Pairwise
// splitting above this keeps rounding error O(log n) and, more importantly
// here, makes every sum a fixed reduction tree: the result depends only on
// the operand order, never on chunking or thread count.
inline constexpr std::size_t kPairwiseBlock = 64;

namespace detail {

template <typename F>
double pairwise_accumulate(std::size_t lo, std::size_t hi, F&& term) {
    const std::size_t n = hi - lo;
    if (n <= kPairwiseBlock) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        return acc;
    }
    const std::size_t mid = lo + n / 2;
    return pairwise_accumulate(lo, mid, term) + pairwise_accumulate(mid, hi, term);
}

}  // namespace detail

inline double pairwise_sum(std::span<const double> x) {
    return detail::pairwise_accumulate(0, x.size(), [&](std::size_t i) { return x[i]; });
}

// All dot products accumulate in 64-bit regardless of input width.
inline double dot(std::span<const float> a, std::span<const float> b) {
    return detail::pairwise_accumulate(
        0, a.size(), [&](std::size_t i) { return static_cast<double>(a[i]) * static_cast<double>(b[i]); });
}

inline double dot(std::span<const float> a, std::span<const double> b) {
    return detail::pairwise_accumulate(0, a.size(),
                                       [&](std::size_t i) { return static_cast<double>(a[i]) * b[i]; });
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    return detail::pairwise_accumulate(0, a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

inline double norm(std::span<const float> v) {
    return std::sqrt(dot(v, v));
}

inline double norm(std::span<const double> v) {
    return std::sqrt(dot(v, v));
}

inline void normalize_in_place(std::vector<double>& v) {
    const double n = norm(v);
    if (n > 0.0) {
        for (double& x : v) x /= n;
    }
}

inline double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    return pairwise_sum(x) / static_cast<double>(x.size());
}

}  // namespace axisprobe::numeric

#endif
