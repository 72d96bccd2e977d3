// Timing comparison of the serial reference kernels against the OpenMP
// versions used by the pipelines. The two must agree bit for bit; the only
// difference worth measuring is speed.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "axisprobe/kernels.hpp"
#include "axisprobe/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Args {
    std::size_t rows = 200000;
    std::size_t dim = 300;
    std::size_t quads = 200;
    int repeats = 3;
};

Args parse(int argc, char** argv) {
    Args a;
    for (int i = 1; i < argc; ++i) {
        auto next = [&]() -> std::size_t { return std::stoull(argv[++i]); };
        if (!std::strcmp(argv[i], "--rows")) a.rows = next();
        else if (!std::strcmp(argv[i], "--dim")) a.dim = next();
        else if (!std::strcmp(argv[i], "--quads")) a.quads = next();
        else if (!std::strcmp(argv[i], "--repeats")) a.repeats = static_cast<int>(next());
        else {
            std::fprintf(stderr, "usage: %s [--rows N] [--dim N] [--quads N] [--repeats N]\n",
                         argv[0]);
            std::exit(2);
        }
    }
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    const Args args = parse(argc, argv);
    using namespace axisprobe;

    rng::SplitMix64 gen(42);
    std::vector<float> rows(args.rows * args.dim);
    for (auto& x : rows) x = static_cast<float>(gen.normal());
    std::vector<double> direction(args.dim);
    for (auto& x : direction) x = gen.normal();

    std::vector<kernels::AnalogyQuery> queries(args.quads);
    for (auto& q : queries) {
        q.a = gen.bounded(args.rows);
        q.a_star = gen.bounded(args.rows);
        q.b = gen.bounded(args.rows);
    }

    std::printf("rows=%zu dim=%zu quads=%zu threads=%d repeats=%d\n", args.rows, args.dim,
                args.quads, kernels::max_threads(), args.repeats);

    std::vector<double> out_serial(args.rows);
    std::vector<double> out_parallel(args.rows);
    double t_serial = 1e30;
    double t_parallel = 1e30;
    for (int r = 0; r < args.repeats; ++r) {
        auto t0 = Clock::now();
        kernels::project_rows_serial(rows.data(), args.rows, args.dim, direction.data(),
                                     out_serial.data());
        t_serial = std::min(t_serial, seconds_since(t0));
        t0 = Clock::now();
        kernels::project_rows(rows.data(), args.rows, args.dim, direction.data(),
                              out_parallel.data());
        t_parallel = std::min(t_parallel, seconds_since(t0));
    }
    const bool proj_equal =
        std::memcmp(out_serial.data(), out_parallel.data(), args.rows * sizeof(double)) == 0;
    std::printf("project_rows   serial %8.4fs  omp %8.4fs  speedup %5.2fx  identical=%s\n",
                t_serial, t_parallel, t_serial / t_parallel, proj_equal ? "yes" : "NO");

    std::vector<std::size_t> ans_serial(args.quads);
    std::vector<std::size_t> ans_parallel(args.quads);
    double a_serial = 1e30;
    double a_parallel = 1e30;
    for (int r = 0; r < args.repeats; ++r) {
        auto t0 = Clock::now();
        kernels::analogy_argmax_serial(rows.data(), args.rows, args.dim, queries,
                                       ans_serial.data());
        a_serial = std::min(a_serial, seconds_since(t0));
        t0 = Clock::now();
        kernels::analogy_argmax(rows.data(), args.rows, args.dim, queries, ans_parallel.data());
        a_parallel = std::min(a_parallel, seconds_since(t0));
    }
    const bool ans_equal = ans_serial == ans_parallel;
    std::printf("analogy_argmax serial %8.4fs  omp %8.4fs  speedup %5.2fx  identical=%s\n",
                a_serial, a_parallel, a_serial / a_parallel, ans_equal ? "yes" : "NO");

    return proj_equal && ans_equal ? 0 : 1;
}
