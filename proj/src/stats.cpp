#include "axisprobe/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "axisprobe/errors.hpp"
#include "axisprobe/numeric.hpp"
#include "axisprobe/rng.hpp"

namespace axisprobe::stats {

namespace {

void require_finite(std::span<const double> x) {
    for (double v : x) {
        if (!std::isfinite(v)) throw InvalidArgument("non-finite value in correlation input");
    }
}

bool is_constant(std::span<const double> x) {
    for (double v : x) {
        if (v != x[0]) return false;
    }
    return true;
}

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_bt =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return bt * beta_cf(a, b, x) / a;
    }
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double correlation_p(double r, std::size_t n) {
    const double df = static_cast<double>(n) - 2.0;
    const double one_minus_r2 = 1.0 - r * r;
    if (one_minus_r2 <= 0.0) return 0.0;
    const double t = r * std::sqrt(df / one_minus_r2);
    return t_two_sided_p(t, df);
}

double pearson_coefficient(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    const double mx = numeric::mean(x);
    const double my = numeric::mean(y);
    const double sxy = numeric::detail::pairwise_accumulate(
        0, n, [&](std::size_t i) { return (x[i] - mx) * (y[i] - my); });
    const double sxx = numeric::detail::pairwise_accumulate(
        0, n, [&](std::size_t i) { return (x[i] - mx) * (x[i] - mx); });
    const double syy = numeric::detail::pairwise_accumulate(
        0, n, [&](std::size_t i) { return (y[i] - my) * (y[i] - my); });
    if (sxx <= 0.0 || syy <= 0.0) throw DegenerateInput("constant input to correlation");
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

// Pearson over rank vectors with scaled centering: d_i = n*r_i - sum(r).
// Ranks are half-integers <= n, so every d_i is computed exactly; mirroring
// the ranks of a negated argument then negates the coefficient exactly,
// which the sign-antisymmetry contract requires. (Mean-centering would be
// off by the rounding of sum/n.)
double rank_pearson_coefficient(std::span<const double> rx, std::span<const double> ry) {
    const std::size_t n = rx.size();
    const double fn = static_cast<double>(n);
    const double sx = numeric::pairwise_sum(rx);
    const double sy = numeric::pairwise_sum(ry);
    const double sxy = numeric::detail::pairwise_accumulate(
        0, n, [&](std::size_t i) { return (fn * rx[i] - sx) * (fn * ry[i] - sy); });
    const double sxx = numeric::detail::pairwise_accumulate(
        0, n, [&](std::size_t i) { return (fn * rx[i] - sx) * (fn * rx[i] - sx); });
    const double syy = numeric::detail::pairwise_accumulate(
        0, n, [&](std::size_t i) { return (fn * ry[i] - sy) * (fn * ry[i] - sy); });
    if (sxx <= 0.0 || syy <= 0.0) throw DegenerateInput("constant input to correlation");
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

void check_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("correlation inputs differ in length");
    if (x.size() < 3) throw InvalidArgument("correlation requires n >= 3");
    require_finite(x);
    require_finite(y);
    if (is_constant(x) || is_constant(y)) throw DegenerateInput("constant input to correlation");
}

}  // namespace

double t_two_sided_p(double t, double df) {
    if (df <= 0.0) throw InvalidArgument("t distribution requires df > 0");
    if (!std::isfinite(t)) return 0.0;
    const double p = reg_inc_beta(0.5 * df, 0.5, df / (df + t * t));
    return std::clamp(p, 0.0, 1.0);
}

std::vector<double> ranks(std::span<const double> x) {
    require_finite(x);
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        // positions i..j (0-based) share the average rank
        const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const std::vector<double> rx = ranks(x);
    const std::vector<double> ry = ranks(y);
    const double r = rank_pearson_coefficient(rx, ry);
    return {r, x.size(), correlation_p(r, x.size()), Method::spearman};
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const double r = pearson_coefficient(x, y);
    return {r, x.size(), correlation_p(r, x.size()), Method::pearson};
}

double bonferroni(double p_raw, std::size_t m) {
    if (m == 0) throw InvalidArgument("bonferroni family size must be positive");
    if (!(p_raw >= 0.0 && p_raw <= 1.0)) throw InvalidArgument("p-value outside [0, 1]");
    return std::min(1.0, p_raw * static_cast<double>(m));
}

double spearman_permutation_p(std::span<const double> x, std::span<const double> y,
                              std::size_t n_permutations, std::uint64_t seed) {
    if (n_permutations == 0) throw InvalidArgument("need at least one permutation");
    check_pair(x, y);
    const std::vector<double> rx = ranks(x);
    std::vector<double> ry = ranks(y);
    const double observed = std::fabs(rank_pearson_coefficient(rx, ry));

    rng::SplitMix64 gen(seed);
    std::size_t at_least = 0;
    for (std::size_t p = 0; p < n_permutations; ++p) {
        for (std::size_t i = ry.size() - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(gen.bounded(i + 1));
            std::swap(ry[i], ry[j]);
        }
        if (std::fabs(rank_pearson_coefficient(rx, ry)) >= observed) ++at_least;
    }
    return static_cast<double>(at_least + 1) / static_cast<double>(n_permutations + 1);
}

}  // namespace axisprobe::stats
