#include "axisprobe/axis.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "axisprobe/errors.hpp"
#include "axisprobe/numeric.hpp"
#include "axisprobe/rng.hpp"

namespace axisprobe::axis {

std::size_t PoleSpec::resolved_count() const {
    std::size_t n = 0;
    for (const auto& [word, ok] : resolved) {
        if (ok) ++n;
    }
    return n;
}

double PoleSpec::coverage() const {
    if (words.empty()) return 0.0;
    return static_cast<double>(resolved_count()) / static_cast<double>(words.size());
}

PoleConstruct build_pole(const embedding::EmbeddingModel& model, const PoleSpec& spec,
                         embedding::Fallback fallback) {
    if (spec.words.empty()) throw PoleEmpty("pole \"" + spec.name + "\" has no words");

    PoleConstruct out;
    out.spec = spec;
    out.spec.resolved.clear();

    std::vector<double> sum(model.dim(), 0.0);
    std::size_t n_resolved = 0;
    for (const auto& word : spec.words) {
        const auto vec = model.lookup(word, fallback);
        out.spec.resolved.emplace_back(word, vec.has_value());
        if (!vec) continue;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += static_cast<double>((*vec)[i]);
        ++n_resolved;
    }
    if (n_resolved == 0)
        throw PoleEmpty("no word of pole \"" + spec.name + "\" resolves in model " + model.name());

    const double n = numeric::norm(std::span<const double>(sum));
    if (n < 1e-9)
        throw DegeneratePole("pole \"" + spec.name + "\" sums to a near-zero vector");
    for (double& x : sum) x /= n;
    out.vec = std::move(sum);
    return out;
}

CulturalAxis build_axis(const embedding::EmbeddingModel& model, const PoleSpec& pole1,
                        const PoleSpec& pole2, embedding::Fallback fallback,
                        const std::string& axis_name) {
    PoleConstruct p1 = build_pole(model, pole1, fallback);
    PoleConstruct p2 = build_pole(model, pole2, fallback);

    const std::size_t dim = model.dim();
    std::vector<double> diff(dim);
    for (std::size_t i = 0; i < dim; ++i) diff[i] = p2.vec[i] - p1.vec[i];
    const double n = numeric::norm(std::span<const double>(diff));
    if (n < 1e-9)
        throw DegenerateAxis("poles \"" + pole1.name + "\" and \"" + pole2.name +
                             "\" coincide; no axis direction");
    for (double& x : diff) x /= n;

    CulturalAxis a;
    a.name = axis_name.empty() ? pole1.name + "-" + pole2.name : axis_name;
    a.pole1 = std::move(p1.spec);
    a.pole2 = std::move(p2.spec);
    a.direction = std::move(diff);
    a.midpoint.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) a.midpoint[i] = 0.5 * (p1.vec[i] + p2.vec[i]);
    a.pole1_vec = std::move(p1.vec);
    a.pole2_vec = std::move(p2.vec);
    return a;
}

namespace {

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

double project(const CulturalAxis& axis, std::span<const double> v) {
    if (v.size() != axis.direction.size())
        throw InvalidArgument("vector dimensionality does not match axis");
    return clamp_unit(numeric::dot(v, std::span<const double>(axis.direction)));
}

double project(const CulturalAxis& axis, std::span<const float> v) {
    if (v.size() != axis.direction.size())
        throw InvalidArgument("vector dimensionality does not match axis");
    return clamp_unit(numeric::dot(v, std::span<const double>(axis.direction)));
}

BatchProjection project_batch(const CulturalAxis& axis, std::span<const std::string> words,
                              const embedding::EmbeddingModel& model,
                              embedding::Fallback fallback) {
    BatchProjection out;
    for (const auto& word : words) {
        const auto vec = model.lookup(word, fallback);
        if (!vec) {
            out.unresolved.push_back(word);
            continue;
        }
        out.values.emplace_back(word, project(axis, std::span<const float>(*vec)));
    }
    return out;
}

PoleSpec excise_pole(const PoleSpec& spec, double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction < 1.0))
        throw InvalidArgument("excision fraction must lie in [0, 1)");
    const std::size_t n = spec.words.size();
    if (n == 0) throw PoleEmpty("cannot excise an empty pole");

    std::size_t keep = static_cast<std::size_t>(
        std::ceil((1.0 - fraction) * static_cast<double>(n)));
    keep = std::max<std::size_t>(1, std::min(keep, n));

    PoleSpec out;
    out.name = spec.name;
    if (keep == n) {
        out.words = spec.words;
        return out;
    }
    rng::SplitMix64 gen(seed);
    auto idx = rng::sample_without_replacement(n, keep, gen);
    std::sort(idx.begin(), idx.end());  // keep the original word order
    out.words.reserve(keep);
    for (std::size_t i : idx) out.words.push_back(spec.words[i]);
    return out;
}

namespace {

PoleSpec pole_from_json(const nlohmann::json& j, const std::string& path) {
    PoleSpec p;
    if (!j.is_object() || !j.contains("name") || !j.contains("words"))
        throw ParseError("pole entry needs \"name\" and \"words\" in " + path);
    p.name = j.at("name").get<std::string>();
    for (const auto& w : j.at("words")) p.words.push_back(w.get<std::string>());
    if (p.words.empty()) throw ParseError("pole \"" + p.name + "\" has an empty word list in " + path);
    return p;
}

}  // namespace

AxisSpec load_axis_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open axis file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("bad JSON in " + path + ": " + e.what());
    }
    AxisSpec spec;
    if (!j.contains("name") || !j.contains("pole1") || !j.contains("pole2"))
        throw ParseError("axis file needs \"name\", \"pole1\", \"pole2\": " + path);
    spec.name = j.at("name").get<std::string>();
    spec.pole1 = pole_from_json(j.at("pole1"), path);
    spec.pole2 = pole_from_json(j.at("pole2"), path);
    if (j.contains("min_pole_coverage")) {
        spec.min_pole_coverage = j.at("min_pole_coverage").get<double>();
        if (spec.min_pole_coverage < 0.0 || spec.min_pole_coverage > 1.0)
            throw ParseError("min_pole_coverage outside [0, 1] in " + path);
    }
    return spec;
}

std::vector<AxisSpec> load_axis_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw ParseError("not a directory: " + dir);
    std::vector<AxisSpec> axes;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") {
            axes.push_back(load_axis_spec(entry.path().string()));
        }
    }
    std::sort(axes.begin(), axes.end(),
              [](const AxisSpec& a, const AxisSpec& b) { return a.name < b.name; });
    if (axes.empty()) throw ParseError("no axis files (*.json) in " + dir);
    return axes;
}

}  // namespace axisprobe::axis
