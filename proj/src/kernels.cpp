#include "axisprobe/kernels.hpp"

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "axisprobe/numeric.hpp"

namespace axisprobe::kernels {

namespace {

std::size_t argmax_one(const float* rows, std::size_t n, std::size_t dim, const AnalogyQuery& q,
                       const double* target) {
    std::size_t best = kNoAnswer;
    double best_score = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == q.a || i == q.a_star || i == q.b) continue;
        const double s =
            numeric::dot(std::span<const float>(rows + i * dim, dim), std::span<const double>(target, dim));
        if (best == kNoAnswer || s > best_score) {
            best = i;
            best_score = s;
        }
    }
    return best;
}

void build_target(const float* rows, std::size_t dim, const AnalogyQuery& q, double* target) {
    const float* va = rows + q.a * dim;
    const float* vas = rows + q.a_star * dim;
    const float* vb = rows + q.b * dim;
    for (std::size_t k = 0; k < dim; ++k) {
        target[k] = static_cast<double>(vb[k]) - static_cast<double>(va[k]) +
                    static_cast<double>(vas[k]);
    }
}

}  // namespace

void project_rows_serial(const float* rows, std::size_t n, std::size_t dim,
                         const double* direction, double* out) {
    const std::span<const double> dir(direction, dim);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = numeric::dot(std::span<const float>(rows + i * dim, dim), dir);
    }
}

void project_rows(const float* rows, std::size_t n, std::size_t dim, const double* direction,
                  double* out) {
    const std::span<const double> dir(direction, dim);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        out[i] = numeric::dot(std::span<const float>(rows + static_cast<std::size_t>(i) * dim, dim), dir);
    }
}

void analogy_argmax_serial(const float* rows, std::size_t n, std::size_t dim,
                           std::span<const AnalogyQuery> queries, std::size_t* out) {
    std::vector<double> target(dim);
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        build_target(rows, dim, queries[qi], target.data());
        out[qi] = argmax_one(rows, n, dim, queries[qi], target.data());
    }
}

void analogy_argmax(const float* rows, std::size_t n, std::size_t dim,
                    std::span<const AnalogyQuery> queries, std::size_t* out) {
#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<double> target(dim);
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t qi = 0; qi < static_cast<std::int64_t>(queries.size()); ++qi) {
            build_target(rows, dim, queries[qi], target.data());
            out[qi] = argmax_one(rows, n, dim, queries[qi], target.data());
        }
    }
#else
    analogy_argmax_serial(rows, n, dim, queries, out);
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

}  // namespace axisprobe::kernels
