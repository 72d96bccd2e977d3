#include "axisprobe/screening.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <set>

#include "axisprobe/errors.hpp"
#include "axisprobe/kernels.hpp"
#include "axisprobe/numeric.hpp"
#include "axisprobe/rng.hpp"

namespace axisprobe::screening {

namespace {

struct CellData {
    BiasResult result;
    // parallel arrays over resolved lexicon words (only filled on request)
    std::vector<std::string> words;
    std::vector<double> scores;
    std::vector<double> projections;
};

// One (model, axis, lexicon) evaluation. All skip/degeneracy policy lives
// here so screen, validation and excision report identical cells for
// identical inputs.
CellData evaluate_cell(const embedding::EmbeddingModel& model, const axis::AxisSpec& spec,
                       const lexicon::ResolvedLexicon& resolved,
                       const lexicon::SentimentLexicon& lex, embedding::Fallback fallback,
                       bool keep_words) {
    CellData cell;
    BiasResult& r = cell.result;
    r.model = model.name();
    r.axis = spec.name;
    r.lexicon = lex.name;
    r.coverage = resolved.coverage;
    r.n_projected = resolved.words.size();

    axis::CulturalAxis ax;
    try {
        ax = axis::build_axis(model, spec.pole1, spec.pole2, fallback, spec.name);
    } catch (const Error& e) {
        r.status = CellStatus::skipped_pole_error;
        r.note = e.what();
        return cell;
    }
    r.pole1_coverage = ax.pole1.coverage();
    r.pole2_coverage = ax.pole2.coverage();
    if (r.pole1_coverage < spec.min_pole_coverage || r.pole2_coverage < spec.min_pole_coverage) {
        r.status = CellStatus::skipped_pole_coverage;
        r.note = "pole coverage below " + std::to_string(spec.min_pole_coverage);
        return cell;
    }

    const std::size_t n = resolved.words.size();
    std::vector<double> projections(n);
    kernels::project_rows(resolved.matrix.data(), n, resolved.dim, ax.direction.data(),
                          projections.data());

    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) scores[i] = resolved.words[i].score;

    try {
        r.correlation = stats::spearman(scores, projections);
    } catch (const DegenerateInput& e) {
        r.status = CellStatus::undefined_degenerate;
        r.note = e.what();
        return cell;
    } catch (const InvalidArgument& e) {
        r.status = CellStatus::undefined_degenerate;
        r.note = e.what();
        return cell;
    }

    if (keep_words) {
        cell.words.reserve(n);
        for (const auto& w : resolved.words) cell.words.push_back(w.word);
        cell.scores = std::move(scores);
        cell.projections = std::move(projections);
    }
    return cell;
}

std::vector<std::size_t> sorted_model_order(std::span<const embedding::EmbeddingModel> models) {
    std::vector<std::size_t> order(models.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return models[a].name() < models[b].name(); });
    return order;
}

// Restrict a lexicon to words resolving in every model (the
// --shared-vocab alternative to per-model intersections).
lexicon::SentimentLexicon shared_intersection(const lexicon::SentimentLexicon& lex,
                                              std::span<const embedding::EmbeddingModel> models,
                                              embedding::Fallback fallback) {
    lexicon::SentimentLexicon out;
    out.name = lex.name;
    out.kind = lex.kind;
    for (const auto& [word, entry] : lex.entries) {
        const bool everywhere = std::all_of(
            models.begin(), models.end(),
            [&](const embedding::EmbeddingModel& m) { return m.resolve(word, fallback).has_value(); });
        if (everywhere) out.entries.emplace(word, entry);
    }
    out.annotation_count = out.entries.size();
    if (out.entries.empty())
        throw EmptyIntersection("no lexicon word resolves in every model");
    return out;
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    return numeric::pairwise_sum(std::span<const double>(v)) / static_cast<double>(v.size());
}

int sign_of(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

std::string_view to_string(CellStatus s) {
    switch (s) {
        case CellStatus::ok: return "ok";
        case CellStatus::skipped_pole_coverage: return "skipped_pole_coverage";
        case CellStatus::skipped_pole_error: return "skipped_pole_error";
        case CellStatus::skipped_empty_intersection: return "skipped_empty_intersection";
        case CellStatus::undefined_degenerate: return "undefined_degenerate";
    }
    return "?";
}

const BiasResult* BiasMatrix::find(const std::string& model, const std::string& axis) const {
    for (const auto& c : cells) {
        if (c.model == model && c.axis == axis) return &c;
    }
    return nullptr;
}

BiasMatrix screen(std::span<const embedding::EmbeddingModel> models,
                  std::span<const axis::AxisSpec> axes, const lexicon::SentimentLexicon& lex,
                  const ScreenOptions& options, std::vector<ProjectionRecord>* projections) {
    if (models.empty()) throw InvalidArgument("screen needs at least one model");
    if (axes.empty()) throw InvalidArgument("screen needs at least one axis");

    BiasMatrix matrix;
    matrix.lexicon = lex.name;
    matrix.family_size =
        options.family_size ? options.family_size : models.size() * axes.size();

    const lexicon::SentimentLexicon* effective = &lex;
    lexicon::SentimentLexicon shared;
    if (options.shared_vocab) {
        shared = shared_intersection(lex, models, options.fallback);
        effective = &shared;
    }

    std::vector<axis::AxisSpec> sorted_axes(axes.begin(), axes.end());
    std::sort(sorted_axes.begin(), sorted_axes.end(),
              [](const axis::AxisSpec& a, const axis::AxisSpec& b) { return a.name < b.name; });

    for (std::size_t mi : sorted_model_order(models)) {
        const auto& model = models[mi];
        std::optional<lexicon::ResolvedLexicon> resolved;
        std::string intersect_error;
        try {
            resolved = lexicon::intersect_with_model(*effective, model, options.fallback);
        } catch (const EmptyIntersection& e) {
            intersect_error = e.what();
        }
        for (const auto& spec : sorted_axes) {
            if (!resolved) {
                BiasResult r;
                r.model = model.name();
                r.axis = spec.name;
                r.lexicon = lex.name;
                r.status = CellStatus::skipped_empty_intersection;
                r.note = intersect_error;
                matrix.cells.push_back(std::move(r));
                continue;
            }
            CellData cell = evaluate_cell(model, spec, *resolved, *effective, options.fallback,
                                          projections != nullptr);
            if (cell.result.ok()) {
                cell.result.p_adjusted =
                    stats::bonferroni(cell.result.correlation.p_raw, matrix.family_size);
            }
            if (projections && cell.result.ok()) {
                for (std::size_t i = 0; i < cell.words.size(); ++i) {
                    projections->push_back({model.name(), spec.name, cell.words[i], cell.scores[i],
                                            cell.projections[i]});
                }
            }
            matrix.cells.push_back(std::move(cell.result));
        }
    }
    return matrix;
}

BiasMatrix validation_run(const embedding::EmbeddingModel& model,
                          std::span<const axis::AxisSpec> validation_axes,
                          const lexicon::SentimentLexicon& lex, const ScreenOptions& options) {
    return screen(std::span<const embedding::EmbeddingModel>(&model, 1), validation_axes, lex,
                  options);
}

ExcisionReport excision_experiment(std::span<const embedding::EmbeddingModel> models,
                                   const axis::AxisSpec& axis_spec,
                                   const lexicon::SentimentLexicon& lex,
                                   std::span<const double> fractions, std::size_t reps,
                                   std::uint64_t seed, const ScreenOptions& options) {
    if (reps == 0) throw InvalidArgument("excision needs at least one repetition");
    for (double f : fractions) {
        if (!(f >= 0.0 && f < 1.0)) throw InvalidArgument("excision fraction outside [0, 1)");
    }

    ExcisionReport report;
    report.axis = axis_spec.name;
    report.lexicon = lex.name;
    report.seed = seed;

    const auto model_order = sorted_model_order(models);

    // Per-model lexicon intersections are independent of pole excision;
    // gather them once.
    struct ModelCtx {
        const embedding::EmbeddingModel* model;
        std::optional<lexicon::ResolvedLexicon> resolved;
    };
    std::vector<ModelCtx> ctx;
    for (std::size_t mi : model_order) {
        ModelCtx c;
        c.model = &models[mi];
        try {
            c.resolved = lexicon::intersect_with_model(lex, models[mi], options.fallback);
        } catch (const EmptyIntersection&) {
        }
        ctx.push_back(std::move(c));
    }

    // Fraction 0 = the plain screen cells.
    ExcisionRow base;
    base.fraction = 0.0;
    base.repetitions = 1;
    std::vector<double> base_values;
    for (const auto& c : ctx) {
        if (!c.resolved) {
            ++base.undefined_cells;
            continue;
        }
        CellData cell =
            evaluate_cell(*c.model, axis_spec, *c.resolved, lex, options.fallback, false);
        if (!cell.result.ok()) {
            ++base.undefined_cells;
            continue;
        }
        const double r = cell.result.correlation.coefficient;
        base.per_model_mean[c.model->name()] = r;
        report.unexcised[c.model->name()] = r;
        base_values.push_back(r);
    }
    base.mean_correlation = mean_of(base_values);
    report.rows.push_back(std::move(base));

    std::vector<double> sorted_fractions(fractions.begin(), fractions.end());
    std::sort(sorted_fractions.begin(), sorted_fractions.end());
    sorted_fractions.erase(std::unique(sorted_fractions.begin(), sorted_fractions.end()),
                           sorted_fractions.end());

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double fraction : sorted_fractions) {
        if (fraction == 0.0) continue;  // already reported
        const std::uint64_t fraction_key =
            static_cast<std::uint64_t>(std::llround(fraction * 1e6));

        // slot matrix: reps x models, NaN = undefined
        std::vector<double> slots(reps * ctx.size(), nan);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(reps); ++rep) {
            const std::uint64_t rep_seed = rng::derive_seed(
                seed, axis_spec.name, fraction_key, static_cast<std::uint64_t>(rep));
            axis::AxisSpec excised = axis_spec;
            excised.pole1 = axis::excise_pole(axis_spec.pole1, fraction, rng::mix(rep_seed, 1));
            excised.pole2 = axis::excise_pole(axis_spec.pole2, fraction, rng::mix(rep_seed, 2));
            for (std::size_t m = 0; m < ctx.size(); ++m) {
                if (!ctx[m].resolved) continue;
                CellData cell = evaluate_cell(*ctx[m].model, excised, *ctx[m].resolved, lex,
                                              options.fallback, false);
                if (cell.result.ok()) {
                    slots[static_cast<std::size_t>(rep) * ctx.size() + m] =
                        cell.result.correlation.coefficient;
                }
            }
        }

        // Deterministic reduction: walk the slot matrix in index order.
        ExcisionRow row;
        row.fraction = fraction;
        row.repetitions = reps;
        std::vector<double> all_values;
        std::size_t sign_kept = 0;
        std::size_t sign_total = 0;
        for (std::size_t m = 0; m < ctx.size(); ++m) {
            std::vector<double> model_values;
            const auto unexcised_it = ctx[m].resolved
                                          ? report.unexcised.find(ctx[m].model->name())
                                          : report.unexcised.end();
            for (std::size_t rep = 0; rep < reps; ++rep) {
                const double v = slots[rep * ctx.size() + m];
                if (std::isnan(v)) {
                    ++row.undefined_cells;
                    continue;
                }
                model_values.push_back(v);
                all_values.push_back(v);
                if (unexcised_it != report.unexcised.end()) {
                    ++sign_total;
                    if (sign_of(v) == sign_of(unexcised_it->second)) ++sign_kept;
                }
            }
            if (!model_values.empty())
                row.per_model_mean[ctx[m].model->name()] = mean_of(model_values);
        }
        row.mean_correlation = mean_of(all_values);
        row.sign_preserved =
            sign_total ? static_cast<double>(sign_kept) / static_cast<double>(sign_total) : 0.0;
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

AgreementMatrix pairwise_agreement(const std::vector<std::string>& names,
                                   const std::vector<std::map<std::string, double>>& vectors) {
    AgreementMatrix agg;
    agg.names = names;
    const std::size_t k = names.size();
    agg.values.assign(k * k, std::numeric_limits<double>::quiet_NaN());
    std::vector<double> off_diagonal;
    for (std::size_t i = 0; i < k; ++i) {
        agg.values[i * k + i] = 1.0;
        for (std::size_t j = i + 1; j < k; ++j) {
            std::vector<double> xi;
            std::vector<double> xj;
            for (const auto& [key, value] : vectors[i]) {
                const auto it = vectors[j].find(key);
                if (it != vectors[j].end()) {
                    xi.push_back(value);
                    xj.push_back(it->second);
                }
            }
            double r = std::numeric_limits<double>::quiet_NaN();
            if (xi.size() >= 3) {
                try {
                    r = stats::spearman(xi, xj).coefficient;
                } catch (const Error&) {
                }
            }
            agg.values[i * k + j] = r;
            agg.values[j * k + i] = r;
            if (!std::isnan(r)) {
                off_diagonal.push_back(r);
                ++agg.defined_pairs;
            }
        }
    }
    agg.mean_off_diagonal = off_diagonal.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                 : mean_of(off_diagonal);
    return agg;
}

}  // namespace

EnsembleReport ensemble_summary(std::span<const embedding::EmbeddingModel> models,
                                std::span<const axis::AxisSpec> axes,
                                std::span<const lexicon::SentimentLexicon> lexicons,
                                const ScreenOptions& options) {
    if (lexicons.size() < 2) throw InvalidArgument("ensemble needs at least two lexicons");

    std::vector<std::size_t> lex_order(lexicons.size());
    for (std::size_t i = 0; i < lex_order.size(); ++i) lex_order[i] = i;
    std::sort(lex_order.begin(), lex_order.end(), [&](std::size_t a, std::size_t b) {
        return lexicons[a].name < lexicons[b].name;
    });

    ScreenOptions cell_options = options;
    cell_options.family_size = models.size() * axes.size() * lexicons.size();

    EnsembleReport report;
    for (std::size_t li : lex_order) {
        report.matrices.push_back(screen(models, axes, lexicons[li], cell_options));
    }

    // lexicon agreement: bias vectors keyed by (model, axis)
    std::vector<std::string> lex_names;
    std::vector<std::map<std::string, double>> lex_vectors;
    for (const auto& matrix : report.matrices) {
        lex_names.push_back(matrix.lexicon);
        std::map<std::string, double> v;
        for (const auto& cell : matrix.cells) {
            if (cell.ok()) v[cell.model + "\x1f" + cell.axis] = cell.correlation.coefficient;
        }
        lex_vectors.push_back(std::move(v));
    }
    report.lexicon_agreement = pairwise_agreement(lex_names, lex_vectors);

    // model agreement: bias vectors keyed by (axis, lexicon)
    std::set<std::string> model_name_set;
    for (const auto& m : models) model_name_set.insert(m.name());
    std::vector<std::string> model_names(model_name_set.begin(), model_name_set.end());
    std::vector<std::map<std::string, double>> model_vectors(model_names.size());
    for (const auto& matrix : report.matrices) {
        for (const auto& cell : matrix.cells) {
            if (!cell.ok()) continue;
            const auto it = std::find(model_names.begin(), model_names.end(), cell.model);
            model_vectors[static_cast<std::size_t>(it - model_names.begin())]
                         [cell.axis + "\x1f" + cell.lexicon] = cell.correlation.coefficient;
        }
    }
    report.model_agreement = pairwise_agreement(model_names, model_vectors);
    return report;
}

GroundTruthResult ground_truth_correlation(const embedding::EmbeddingModel& model,
                                           const axis::AxisSpec& axis_spec,
                                           std::span<const std::pair<std::string, double>> targets,
                                           embedding::Fallback fallback) {
    const axis::CulturalAxis ax =
        axis::build_axis(model, axis_spec.pole1, axis_spec.pole2, fallback, axis_spec.name);

    GroundTruthResult out;
    for (const auto& [word, metric] : targets) {
        const auto vec = model.lookup(word, fallback);
        if (!vec) {
            out.unresolved.push_back(word);
            continue;
        }
        out.points.push_back({word, axis::project(ax, std::span<const float>(*vec)), metric});
    }
    if (out.points.size() < 3)
        throw EmptyIntersection("fewer than three target words resolve in model " + model.name());

    std::vector<double> projections;
    std::vector<double> metrics;
    for (const auto& p : out.points) {
        projections.push_back(p.projection);
        metrics.push_back(p.metric);
    }
    out.pearson = stats::pearson(projections, metrics);
    out.spearman = stats::spearman(projections, metrics);
    return out;
}

std::vector<std::pair<std::string, double>> load_targets_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open targets file: " + path);
    std::vector<std::pair<std::string, double>> out;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty targets file: " + path, 0, 1);
    ++line_no;  // header
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.rfind(',');
        if (comma == std::string::npos || comma == 0)
            throw ParseError("expected \"word,value\"", 0, line_no);
        double value = 0.0;
        const char* begin = line.data() + comma + 1;
        const char* end = line.data() + line.size();
        auto res = std::from_chars(begin, end, value);
        if (res.ec != std::errc() || res.ptr != end)
            throw ParseError("bad numeric value \"" + std::string(begin, end) + "\"", 0, line_no);
        out.emplace_back(line.substr(0, comma), value);
    }
    if (out.empty()) throw ParseError("no target rows in " + path);
    return out;
}

}  // namespace axisprobe::screening
