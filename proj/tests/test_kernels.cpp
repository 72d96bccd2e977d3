#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <vector>

#include "axisprobe/kernels.hpp"
#include "axisprobe/numeric.hpp"
#include "axisprobe/rng.hpp"

using namespace axisprobe;

namespace {

struct RandomProblem {
    std::vector<float> rows;
    std::size_t n;
    std::size_t dim;
    std::vector<double> direction;
    std::vector<kernels::AnalogyQuery> queries;
};

RandomProblem make_problem(std::size_t n, std::size_t dim, std::size_t n_queries,
                           std::uint64_t seed) {
    rng::SplitMix64 gen(seed);
    RandomProblem p;
    p.n = n;
    p.dim = dim;
    p.rows.resize(n * dim);
    for (auto& x : p.rows) x = static_cast<float>(gen.normal());
    p.direction.resize(dim);
    for (auto& x : p.direction) x = gen.normal();
    for (std::size_t q = 0; q < n_queries; ++q) {
        p.queries.push_back({static_cast<std::size_t>(gen.bounded(n)),
                             static_cast<std::size_t>(gen.bounded(n)),
                             static_cast<std::size_t>(gen.bounded(n))});
    }
    return p;
}

}  // namespace

TEST_CASE("project_rows: OpenMP output equals the serial reference bitwise") {
    const auto p = make_problem(997, 73, 0, 1);
    std::vector<double> serial(p.n);
    std::vector<double> parallel(p.n);
    kernels::project_rows_serial(p.rows.data(), p.n, p.dim, p.direction.data(), serial.data());
    for (int threads : {1, 3, 8}) {
        kernels::set_threads(threads);
        kernels::project_rows(p.rows.data(), p.n, p.dim, p.direction.data(), parallel.data());
        CHECK(std::memcmp(serial.data(), parallel.data(), p.n * sizeof(double)) == 0);
    }
}

TEST_CASE("analogy_argmax: OpenMP output equals the serial reference") {
    const auto p = make_problem(400, 24, 60, 2);
    std::vector<std::size_t> serial(p.queries.size());
    std::vector<std::size_t> parallel(p.queries.size());
    kernels::analogy_argmax_serial(p.rows.data(), p.n, p.dim, p.queries, serial.data());
    for (int threads : {1, 2, 7}) {
        kernels::set_threads(threads);
        kernels::analogy_argmax(p.rows.data(), p.n, p.dim, p.queries, parallel.data());
        CHECK(serial == parallel);
    }
}

TEST_CASE("analogy_argmax: input rows are excluded") {
    const auto p = make_problem(50, 8, 40, 3);
    std::vector<std::size_t> out(p.queries.size());
    kernels::analogy_argmax_serial(p.rows.data(), p.n, p.dim, p.queries, out.data());
    for (std::size_t q = 0; q < p.queries.size(); ++q) {
        CHECK(out[q] != p.queries[q].a);
        CHECK(out[q] != p.queries[q].a_star);
        CHECK(out[q] != p.queries[q].b);
        CHECK(out[q] < p.n);
    }
}

TEST_CASE("analogy_argmax: exact ties break to the lowest index") {
    // two identical candidate rows; the lower index must win
    const std::size_t dim = 4;
    std::vector<float> rows = {
        1, 0, 0, 0,  // 0: a
        0, 1, 0, 0,  // 1: a*
        0, 0, 1, 0,  // 2: b
        0, 0.6f, 0.8f, 0,  // 3: candidate (tie with 4)
        0, 0.6f, 0.8f, 0,  // 4: identical candidate
    };
    const kernels::AnalogyQuery query{0, 1, 2};
    std::size_t out = 99;
    kernels::analogy_argmax_serial(rows.data(), 5, dim, std::span(&query, 1), &out);
    CHECK(out == 3);
    kernels::analogy_argmax(rows.data(), 5, dim, std::span(&query, 1), &out);
    CHECK(out == 3);
}

TEST_CASE("analogy_argmax: no candidates yields kNoAnswer") {
    const std::size_t dim = 2;
    std::vector<float> rows = {1, 0, 0, 1, 1, 1};
    const kernels::AnalogyQuery query{0, 1, 2};
    std::size_t out = 0;
    kernels::analogy_argmax_serial(rows.data(), 3, dim, std::span(&query, 1), &out);
    CHECK(out == kernels::kNoAnswer);
}

TEST_CASE("project_rows matches per-row dot products") {
    const auto p = make_problem(64, 300, 0, 4);
    std::vector<double> out(p.n);
    kernels::project_rows_serial(p.rows.data(), p.n, p.dim, p.direction.data(), out.data());
    for (std::size_t i = 0; i < p.n; ++i) {
        const double want =
            numeric::dot(std::span<const float>(p.rows.data() + i * p.dim, p.dim),
                         std::span<const double>(p.direction));
        CHECK(out[i] == want);
    }
}
