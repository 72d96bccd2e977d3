#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "axisprobe/errors.hpp"
#include "axisprobe/rng.hpp"
#include "axisprobe/stats.hpp"

using namespace axisprobe;

namespace {

// O(n^2) counting oracle: rank = |{x_j < x_i}| + (|{x_j == x_i}| + 1)/2.
std::vector<double> rank_oracle(const std::vector<double>& x) {
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t less = 0;
        std::size_t equal = 0;
        for (double v : x) {
            if (v < x[i]) ++less;
            if (v == x[i]) ++equal;
        }
        r[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
    }
    return r;
}

// direct-formula Pearson in extended precision
double pearson_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    long double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const long double mx = sx / n;
    const long double my = sy / n;
    long double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

double spearman_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    return pearson_oracle(rank_oracle(x), rank_oracle(y));
}

// adaptive Simpson quadrature of the t probability density: an independent
// route to the tail mass behind t_two_sided_p
double t_pdf(double x, double df) {
    return std::exp(std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0)) /
           std::sqrt(df * std::acos(-1.0)) *
           std::pow(1.0 + x * x / df, -(df + 1.0) / 2.0);
}

double simpson(double a, double b, double df) {
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (t_pdf(a, df) + 4.0 * t_pdf(c, df) + t_pdf(b, df));
}

double integrate(double a, double b, double df, double eps, int depth) {
    const double c = 0.5 * (a + b);
    const double whole = simpson(a, b, df);
    const double halves = simpson(a, c, df) + simpson(c, b, df);
    if (depth > 40 || std::fabs(whole - halves) < 15.0 * eps) {
        return halves + (halves - whole) / 15.0;
    }
    return integrate(a, c, df, eps / 2.0, depth + 1) + integrate(c, b, df, eps / 2.0, depth + 1);
}

double t_two_sided_p_oracle(double t, double df) {
    const double at = std::fabs(t);
    // central mass, complemented: integrate the body instead of the tail
    const double body = integrate(-at, at, df, 1e-13, 0);
    return 1.0 - body;
}

std::vector<double> random_vector(std::size_t n, rng::SplitMix64& gen, bool with_ties) {
    std::vector<double> x(n);
    for (auto& v : x) {
        v = with_ties ? static_cast<double>(gen.bounded(n / 2 + 2)) : gen.normal();
    }
    return x;
}

}  // namespace

TEST_CASE("ranks: simple sequences") {
    CHECK(stats::ranks(std::vector<double>{10, 20, 30}) == std::vector<double>{1, 2, 3});
    CHECK(stats::ranks(std::vector<double>{5, 5, 7}) == std::vector<double>{1.5, 1.5, 3});
    CHECK(stats::ranks(std::vector<double>{30, 10, 20}) == std::vector<double>{3, 1, 2});
}

TEST_CASE("ranks: random vectors match the counting oracle") {
    rng::SplitMix64 gen(11);
    for (int rep = 0; rep < 50; ++rep) {
        const auto x = random_vector(20, gen, rep % 2 == 0);
        CHECK(stats::ranks(x) == rank_oracle(x));
    }
}

TEST_CASE("ranks: NaN input rejected") {
    CHECK_THROWS_AS(stats::ranks(std::vector<double>{1.0, std::nan(""), 2.0}), InvalidArgument);
}

TEST_CASE("spearman: monotone sequences hit the boundary exactly") {
    const std::vector<double> x{1, 2, 3};
    CHECK(stats::spearman(x, std::vector<double>{10, 20, 30}).coefficient == 1.0);
    CHECK(stats::spearman(x, std::vector<double>{30, 20, 10}).coefficient == -1.0);
}

TEST_CASE("spearman: dual-oracle fixture") {
    // tie-free subcase: the closed form 1 - 6*sum d^2/(n(n^2-1)) applies
    const std::vector<double> x{3, 1, 4, 15, 9, 2, 6, 5, 35, 8};
    const std::vector<double> y{2, 7, 1, 8, 28, 18, 284, 59, 4, 5};
    {
        const auto rx = rank_oracle(x);
        const auto ry = rank_oracle(y);
        long double d2 = 0;
        for (std::size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
        const double n = static_cast<double>(x.size());
        const double closed_form = 1.0 - 6.0 * static_cast<double>(d2) / (n * (n * n - 1.0));
        CHECK(std::fabs(stats::spearman(x, y).coefficient - closed_form) < 1e-12);
    }
    // tied case: rank-Pearson oracle
    const std::vector<double> xt{3, 1, 4, 1, 5, 9, 2, 6, 5, 3};
    const std::vector<double> yt{2, 7, 1, 8, 2, 8, 1, 8, 2, 8};
    CHECK(std::fabs(stats::spearman(xt, yt).coefficient - spearman_oracle(xt, yt)) < 1e-12);
}

TEST_CASE("pearson: affine boundary cases and oracle fixture") {
    std::vector<double> x(30);
    rng::SplitMix64 gen(12);
    for (auto& v : x) v = gen.normal();
    std::vector<double> y(30);
    for (std::size_t i = 0; i < 30; ++i) y[i] = 2.0 * x[i] + 1.0;
    CHECK(stats::pearson(x, y).coefficient == 1.0);
    for (std::size_t i = 0; i < 30; ++i) y[i] = -x[i];
    CHECK(stats::pearson(x, y).coefficient == -1.0);
    for (auto& v : y) v = gen.normal();
    CHECK(std::fabs(stats::pearson(x, y).coefficient - pearson_oracle(x, y)) < 1e-12);
}

TEST_CASE("bonferroni") {
    CHECK(stats::bonferroni(0.005, 2) == 0.01);
    CHECK(stats::bonferroni(0.9, 3) == 1.0);
    CHECK(stats::bonferroni(0.37, 1) == 0.37);
    CHECK_THROWS_AS(stats::bonferroni(0.5, 0), InvalidArgument);
    CHECK_THROWS_AS(stats::bonferroni(1.5, 2), InvalidArgument);
}

TEST_CASE("degenerate and invalid inputs") {
    const std::vector<double> c{2, 2, 2, 2};
    const std::vector<double> x{1, 2, 3, 4};
    CHECK_THROWS_AS(stats::spearman(c, x), DegenerateInput);
    CHECK_THROWS_AS(stats::pearson(x, c), DegenerateInput);
    CHECK_THROWS_AS(stats::spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}),
                    InvalidArgument);
    CHECK_THROWS_AS(stats::spearman(x, std::vector<double>{1, 2, 3}), InvalidArgument);
}

TEST_CASE("spearman invariances") {
    rng::SplitMix64 gen(13);
    for (int rep = 0; rep < 20; ++rep) {
        const auto x = random_vector(25, gen, rep % 3 == 0);
        const auto y = random_vector(25, gen, rep % 2 == 0);
        const auto base = stats::spearman(x, y);

        // symmetry
        CHECK(stats::spearman(y, x).coefficient == base.coefficient);

        // strictly monotone transforms leave ranks (hence r) unchanged
        std::vector<double> x3(x.size());
        std::transform(x.begin(), x.end(), x3.begin(), [](double v) { return v * v * v; });
        CHECK(std::fabs(stats::spearman(x3, y).coefficient - base.coefficient) < 1e-12);
        std::vector<double> ey(y.size());
        std::transform(y.begin(), y.end(), ey.begin(), [](double v) { return std::exp(v / 8.0); });
        CHECK(std::fabs(stats::spearman(x, ey).coefficient - base.coefficient) < 1e-12);

        // sign antisymmetry, exact in rank space
        std::vector<double> ny(y.size());
        std::transform(y.begin(), y.end(), ny.begin(), [](double v) { return -v; });
        CHECK(stats::spearman(x, ny).coefficient == -base.coefficient);
    }
}

TEST_CASE("pearson: positive affine invariance") {
    rng::SplitMix64 gen(14);
    const auto x = random_vector(40, gen, false);
    const auto y = random_vector(40, gen, false);
    const double base = stats::pearson(x, y).coefficient;
    std::vector<double> ay(y.size());
    std::transform(y.begin(), y.end(), ay.begin(), [](double v) { return 3.5 * v - 11.0; });
    CHECK(std::fabs(stats::pearson(x, ay).coefficient - base) < 1e-12);
}

TEST_CASE("p-value decreases monotonically in |r| at fixed n") {
    const double df = 18.0;
    double last = 2.0;
    for (double r = 0.05; r < 0.95; r += 0.05) {
        const double t = r * std::sqrt(df / (1.0 - r * r));
        const double p = stats::t_two_sided_p(t, df);
        CHECK(p < last);
        last = p;
    }
}

TEST_CASE("t_two_sided_p against quadrature oracle") {
    for (double df : {3.0, 8.0, 28.0, 100.0, 3621.0}) {
        for (double t : {0.0, 0.5, 1.0, 2.0, 3.5, 6.0}) {
            const double got = stats::t_two_sided_p(t, df);
            const double want = t_two_sided_p_oracle(t, df);
            CHECK(std::fabs(got - want) < 1e-10);
        }
    }
    CHECK(stats::t_two_sided_p(std::numeric_limits<double>::infinity(), 10.0) == 0.0);
}

TEST_CASE("p at r = +-1 is zero") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> y{2, 4, 6, 8, 10};
    CHECK(stats::spearman(x, y).p_raw == 0.0);
}

TEST_CASE("permutation p-value cross-check") {
    rng::SplitMix64 gen(15);
    std::vector<double> x(24);
    std::vector<double> y(24);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = gen.normal();
        y[i] = x[i] + 0.2 * gen.normal();  // strong dependence
    }
    const double p_strong = stats::spearman_permutation_p(x, y, 999, 7);
    CHECK(p_strong < 0.01);

    for (auto& v : y) v = gen.normal();  // independent
    const double p_null = stats::spearman_permutation_p(x, y, 999, 7);
    const double p_t = stats::spearman(x, y).p_raw;
    CHECK(std::fabs(p_null - p_t) < 0.15);

    // deterministic for a fixed seed
    CHECK(stats::spearman_permutation_p(x, y, 499, 123) ==
          stats::spearman_permutation_p(x, y, 499, 123));
}
