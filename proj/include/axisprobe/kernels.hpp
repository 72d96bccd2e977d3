#ifndef AXISPROBE_KERNELS_HPP
#define AXISPROBE_KERNELS_HPP

#include <cstddef>
#include <span>

namespace axisprobe::kernels {

// Hot inner loops, each in two variants: an OpenMP-parallel version used by
// the pipelines and a serial reference the tests compare against. Both must
// produce bit-identical output for any thread count: every iteration writes
// its own slot and all per-element arithmetic is a fixed reduction tree
// (see numeric.hpp), so scheduling cannot reorder any floating-point sum.

// out[i] = rows[i] . direction, accumulated in 64-bit.
void project_rows_serial(const float* rows, std::size_t n, std::size_t dim,
                         const double* direction, double* out);
void project_rows(const float* rows, std::size_t n, std::size_t dim, const double* direction,
                  double* out);

constexpr std::size_t kNoAnswer = static_cast<std::size_t>(-1);

// One vector-offset analogy query: the row maximizing dot(row, target)
// where target = rows[b] - rows[a] + rows[a_star], with the three input
// rows excluded from the candidate set. Ties break to the lowest row
// index, which makes the result independent of evaluation order.
struct AnalogyQuery {
    std::size_t a = 0;
    std::size_t a_star = 0;
    std::size_t b = 0;
};

void analogy_argmax_serial(const float* rows, std::size_t n, std::size_t dim,
                           std::span<const AnalogyQuery> queries, std::size_t* out);
void analogy_argmax(const float* rows, std::size_t n, std::size_t dim,
                    std::span<const AnalogyQuery> queries, std::size_t* out);

// Effective OpenMP thread count (1 when built without OpenMP).
int max_threads();
void set_threads(int n);

}  // namespace axisprobe::kernels

#endif
