#ifndef AXISPROBE_STATS_HPP
#define AXISPROBE_STATS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace axisprobe::stats {

enum class Method { spearman, pearson };

struct CorrelationResult {
    double coefficient = 0.0;  // in [-1, 1]
    std::size_t n = 0;
    double p_raw = 1.0;  // two-sided
    Method method = Method::spearman;
};

// Average ranks 1..n; tied values share the mean of their rank positions.
// Throws InvalidArgument on non-finite input.
std::vector<double> ranks(std::span<const double> x);

// Spearman rank correlation: Pearson correlation of the rank vectors
// (tie-correct). p is the two-sided t approximation with df = n-2.
// Throws InvalidArgument (length mismatch, n < 3, non-finite values) and
// DegenerateInput (either side constant).
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

// Product-moment correlation with the same p-value treatment and the same
// degeneracy rule as spearman().
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

// min(1, p * m). Throws InvalidArgument when m == 0 or p outside [0, 1].
double bonferroni(double p_raw, std::size_t m);

// Seeded permutation p-value for the Spearman coefficient: the fraction of
// score-permutations whose |r| reaches the observed |r|, with the +1
// correction. Cross-check for small n where the t approximation is coarse.
double spearman_permutation_p(std::span<const double> x, std::span<const double> y,
                              std::size_t n_permutations, std::uint64_t seed);

// Two-sided p for a t statistic with df degrees of freedom. Exposed for
// tests; implemented with the regularized incomplete beta function.
double t_two_sided_p(double t, double df);

}  // namespace axisprobe::stats

#endif
