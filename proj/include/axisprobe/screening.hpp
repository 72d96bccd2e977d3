#ifndef AXISPROBE_SCREENING_HPP
#define AXISPROBE_SCREENING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axisprobe/axis.hpp"
#include "axisprobe/embedding.hpp"
#include "axisprobe/lexicon.hpp"
#include "axisprobe/stats.hpp"

namespace axisprobe::screening {

// Why a cell carries no coefficient. Undefined and skipped cells are
// reported with their reason; they are never coerced to zero.
enum class CellStatus {
    ok,
    skipped_pole_coverage,     // a pole resolved below its threshold
    skipped_pole_error,        // pole empty / degenerate pole or axis
    skipped_empty_intersection,
    undefined_degenerate,      // constant scores or projections
};

std::string_view to_string(CellStatus s);

struct BiasResult {
    std::string model;
    std::string axis;
    std::string lexicon;
    CellStatus status = CellStatus::ok;
    stats::CorrelationResult correlation;  // meaningful only when status == ok
    double p_adjusted = 1.0;
    double coverage = 0.0;       // lexicon words resolved / lexicon size
    std::size_t n_projected = 0;
    double pole1_coverage = 0.0;
    double pole2_coverage = 0.0;
    std::string note;  // reason text for non-ok cells

    bool ok() const { return status == CellStatus::ok; }
};

struct BiasMatrix {
    std::vector<BiasResult> cells;  // sorted by (model, axis)
    std::size_t family_size = 0;    // Bonferroni m for this run
    std::string lexicon;

    const BiasResult* find(const std::string& model, const std::string& axis) const;
};

struct ProjectionRecord {
    std::string model;
    std::string axis;
    std::string word;
    double score = 0.0;
    double projection = 0.0;
};

struct ScreenOptions {
    embedding::Fallback fallback = embedding::Fallback::lowercase;
    // Restrict the lexicon to words that resolve in every model before
    // screening (one shared intersection instead of per-model ones).
    bool shared_vocab = false;
    // Override of the Bonferroni family size; 0 = |models| x |axes|.
    // Ensemble runs pass models x axes x lexicons.
    std::size_t family_size = 0;
};

// One bias cell per (model, axis): Spearman correlation between lexicon
// scores and the projections of the resolved lexicon words onto the axis,
// Bonferroni-adjusted over the family.
BiasMatrix screen(std::span<const embedding::EmbeddingModel> models,
                  std::span<const axis::AxisSpec> axes, const lexicon::SentimentLexicon& lex,
                  const ScreenOptions& options, std::vector<ProjectionRecord>* projections = nullptr);

// screen() over a fixed axis battery on one model; used with the shipped
// validation axes whose positive pole carries the agreed-upon positive
// valence.
BiasMatrix validation_run(const embedding::EmbeddingModel& model,
                          std::span<const axis::AxisSpec> validation_axes,
                          const lexicon::SentimentLexicon& lex, const ScreenOptions& options);

struct ExcisionRow {
    double fraction = 0.0;
    std::size_t repetitions = 0;
    double mean_correlation = 0.0;  // over models x reps, defined cells only
    std::map<std::string, double> per_model_mean;
    // fraction of repetitions whose correlation keeps the unexcised sign
    double sign_preserved = 1.0;
    std::size_t undefined_cells = 0;
};

struct ExcisionReport {
    std::string axis;
    std::string lexicon;
    std::uint64_t seed = 0;
    std::vector<ExcisionRow> rows;       // fraction 0 first, then ascending
    std::map<std::string, double> unexcised;  // model -> r (the fraction-0 cells)
};

// Pole-robustness experiment: for each fraction, excise both poles, rebuild
// the axis, rerun the cell, `reps` times. Repetition i of fraction f draws
// its words from a stream seeded by (seed, axis, f, i), so results are
// identical for any thread count or scheduling order.
ExcisionReport excision_experiment(std::span<const embedding::EmbeddingModel> models,
                                   const axis::AxisSpec& axis_spec,
                                   const lexicon::SentimentLexicon& lex,
                                   std::span<const double> fractions, std::size_t reps,
                                   std::uint64_t seed, const ScreenOptions& options);

struct AgreementMatrix {
    std::vector<std::string> names;
    std::vector<double> values;  // names.size()^2, row-major; NaN = undefined
    double mean_off_diagonal = 0.0;
    std::size_t defined_pairs = 0;

    double at(std::size_t i, std::size_t j) const { return values[i * names.size() + j]; }
};

struct EnsembleReport {
    std::vector<BiasMatrix> matrices;  // one per lexicon, lexicon-name order
    AgreementMatrix lexicon_agreement;
    AgreementMatrix model_agreement;
};

// Cross-lexicon replication: screen every lexicon, then correlate the bias
// vectors pairwise across lexicons (and across models) to measure how far
// the measured associations depend on the probe.
EnsembleReport ensemble_summary(std::span<const embedding::EmbeddingModel> models,
                                std::span<const axis::AxisSpec> axes,
                                std::span<const lexicon::SentimentLexicon> lexicons,
                                const ScreenOptions& options);

struct GroundTruthPoint {
    std::string word;
    double projection = 0.0;
    double metric = 0.0;
};

struct GroundTruthResult {
    stats::CorrelationResult pearson;
    stats::CorrelationResult spearman;
    std::vector<GroundTruthPoint> points;
    std::vector<std::string> unresolved;
};

// Correlate axis projections of target words against an external
// quantitative metric ("word,value" CSV with one header line).
GroundTruthResult ground_truth_correlation(const embedding::EmbeddingModel& model,
                                           const axis::AxisSpec& axis_spec,
                                           std::span<const std::pair<std::string, double>> targets,
                                           embedding::Fallback fallback);

std::vector<std::pair<std::string, double>> load_targets_csv(const std::string& path);

}  // namespace axisprobe::screening

#endif
