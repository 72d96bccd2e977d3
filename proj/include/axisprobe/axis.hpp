#ifndef AXISPROBE_AXIS_HPP
#define AXISPROBE_AXIS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "axisprobe/embedding.hpp"

namespace axisprobe::axis {

struct PoleSpec {
    std::string name;
    std::vector<std::string> words;
    // filled at build time: (word, resolved-in-model)
    std::vector<std::pair<std::string, bool>> resolved;

    std::size_t resolved_count() const;
    double coverage() const;  // resolved / total, 0 when empty
};

struct PoleConstruct {
    std::vector<double> vec;  // unit length
    PoleSpec spec;            // with resolution report filled
};

// Pole construct = unit-normalized sum of the resolved word vectors,
// accumulated in 64-bit. Unresolved words are reported, not fatal, as long
// as at least one word resolves.
PoleConstruct build_pole(const embedding::EmbeddingModel& model, const PoleSpec& spec,
                         embedding::Fallback fallback);

struct CulturalAxis {
    std::string name;
    PoleSpec pole1;  // negative end
    PoleSpec pole2;  // positive end
    std::vector<double> direction;  // unit, points pole1 -> pole2
    std::vector<double> pole1_vec;
    std::vector<double> pole2_vec;
    std::vector<double> midpoint;  // kept for plot axes only

    std::size_t dim() const { return direction.size(); }
};

CulturalAxis build_axis(const embedding::EmbeddingModel& model, const PoleSpec& pole1,
                        const PoleSpec& pole2, embedding::Fallback fallback,
                        const std::string& axis_name = "");

// Signed association scalar in [-1, 1]; positive means pole2.
double project(const CulturalAxis& axis, std::span<const double> v);
double project(const CulturalAxis& axis, std::span<const float> v);

struct BatchProjection {
    std::vector<std::pair<std::string, double>> values;  // resolved words, input order
    std::vector<std::string> unresolved;                 // input order
};

BatchProjection project_batch(const CulturalAxis& axis, std::span<const std::string> words,
                              const embedding::EmbeddingModel& model, embedding::Fallback fallback);

// Uniform subset of ceil((1-fraction)*n) words, at least one, without
// replacement; original word order preserved. Deterministic per seed.
PoleSpec excise_pole(const PoleSpec& spec, double fraction, std::uint64_t seed);

// Axis configuration files:
// {"name":..., "pole1": {"name":..., "words":[...]}, "pole2": {...}}
// with an optional "min_pole_coverage" (default 0.5).
struct AxisSpec {
    std::string name;
    PoleSpec pole1;
    PoleSpec pole2;
    double min_pole_coverage = 0.5;
};

AxisSpec load_axis_spec(const std::string& path);
// All *.json files in a directory, sorted by axis name.
std::vector<AxisSpec> load_axis_dir(const std::string& dir);

}  // namespace axisprobe::axis

#endif
