#ifndef AXISPROBE_TEST_HELPERS_HPP
#define AXISPROBE_TEST_HELPERS_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "axisprobe/axis.hpp"
#include "axisprobe/embedding.hpp"
#include "axisprobe/lexicon.hpp"
#include "axisprobe/rng.hpp"

namespace testsupport {

inline std::string env_or(const char* name, const char* fallback) {
    const char* v = std::getenv(name);
    return v ? v : fallback;
}

inline std::string data_dir() { return env_or("AXISPROBE_DATA", "data"); }
inline std::string golden_dir() { return env_or("AXISPROBE_GOLDEN", "tests/golden"); }
inline std::string cli_bin() { return env_or("AXISPROBE_BIN", ""); }

class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        const auto base = std::filesystem::temp_directory_path();
        path_ = base / ("axisprobe_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string str() const { return path_.string(); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

// ---------------------------------------------------------------------------
// planted-bias synthetic model: the screening module's central oracle.
//
// dim-dimensional model with orthonormal pole anchors e0 and e1 and the
// axis direction u = (e1 - e0)/sqrt(2). Each lexicon word w_i carries a
// binary score s_i and is placed so its projection onto u equals
// t_i = s*score + noise (up to one common positive scale), with the rest
// of its mass on a random direction orthogonal to u. For binary half/half
// scores the rank correlation between scores and projections is then
// analytically
//
//   rho(n) = m * (p - 1/2) / sqrt((n^2 - 1) / 12),   p = Phi(sqrt(2) s)
//
// (n = 2m words): the mean rank of the positive group is determined by the
// probability p that a positive word out-projects a negative one, and for
// t = s*score + N(0,1) noise that probability is Phi(sqrt(2) s).

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Bisection inverse; plenty for oracle use.
inline double normal_quantile(double p) {
    double lo = -10.0;
    double hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct PlantedModel {
    axisprobe::embedding::EmbeddingModel model;
    axisprobe::lexicon::SentimentLexicon lexicon;
    axisprobe::axis::AxisSpec axis_spec;
    double target_rho = 0.0;  // finite-n analytic rank correlation
    std::vector<double> axis_direction;  // the planted u
};

inline PlantedModel make_planted(double rho_star, std::uint64_t seed, std::size_t n_words = 3000,
                                 std::size_t dim = 50, std::size_t pole_words = 8) {
    using namespace axisprobe;
    if (n_words % 2) ++n_words;
    const double p = 0.5 + rho_star / std::sqrt(3.0);
    const double s = normal_quantile(p) / std::sqrt(2.0);

    rng::SplitMix64 gen(seed);
    embedding::ModelBuilder builder("planted", dim);

    PlantedModel out;
    out.axis_spec.name = "planted_axis";
    out.axis_spec.pole1.name = "pole1";
    out.axis_spec.pole2.name = "pole2";

    // pole words: tight clusters around e0 / e1 with jitter confined to
    // dims >= 2 so the axis stays aligned with u
    for (std::size_t side = 0; side < 2; ++side) {
        for (std::size_t k = 0; k < pole_words; ++k) {
            std::vector<double> v(dim, 0.0);
            v[side] = 1.0;
            for (std::size_t d = 2; d < dim; ++d) v[d] = 0.08 * gen.normal() / std::sqrt(dim - 2.0);
            const std::string word = (side ? "poleb" : "polea") + std::to_string(k);
            builder.add(word, std::span<const double>(v));
            (side ? out.axis_spec.pole2 : out.axis_spec.pole1).words.push_back(word);
        }
    }

    // u has components only on dims 0 and 1; q_i only on dims >= 2
    std::vector<double> raw_t(n_words);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n_words; ++i) {
        const double score = i % 2 == 0 ? 1.0 : -1.0;
        raw_t[i] = s * score + gen.normal();
        max_abs = std::max(max_abs, std::fabs(raw_t[i]));
    }
    const double scale = 1.05 * std::max(max_abs, 1.0);

    out.lexicon.name = "planted";
    out.lexicon.kind = lexicon::Kind::binary;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < n_words; ++i) {
        const double score = i % 2 == 0 ? 1.0 : -1.0;
        const double t = raw_t[i] / scale;
        std::vector<double> v(dim, 0.0);
        v[0] = -t * inv_sqrt2;
        v[1] = t * inv_sqrt2;
        std::vector<double> q(dim - 2);
        double qn = 0.0;
        for (auto& x : q) {
            x = gen.normal();
            qn += x * x;
        }
        qn = std::sqrt(qn);
        const double rest = std::sqrt(std::max(0.0, 1.0 - t * t));
        for (std::size_t d = 2; d < dim; ++d) v[d] = rest * q[d - 2] / qn;

        char name[32];
        std::snprintf(name, sizeof(name), "w%05zu", i);
        builder.add(name, std::span<const double>(v));
        lexicon::Entry e;
        e.word = name;
        e.score = score;
        out.lexicon.entries.emplace(e.word, e);
    }
    out.lexicon.annotation_count = n_words;

    out.model = builder.build();
    const double m = static_cast<double>(n_words) / 2.0;
    const double fn = static_cast<double>(n_words);
    out.target_rho = m * (p - 0.5) / std::sqrt((fn * fn - 1.0) / 12.0);
    out.axis_direction.assign(dim, 0.0);
    out.axis_direction[0] = -inv_sqrt2;
    out.axis_direction[1] = inv_sqrt2;
    return out;
}

}  // namespace testsupport

#endif
