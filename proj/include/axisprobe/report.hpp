#ifndef AXISPROBE_REPORT_HPP
#define AXISPROBE_REPORT_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "axisprobe/antonym.hpp"
#include "axisprobe/evaluation.hpp"
#include "axisprobe/screening.hpp"

namespace axisprobe::report {

// Shared number format for every CSV/JSON/SVG value: 12 significant digits,
// '.' decimal, shortest form. Undefined values render as the empty string.
// Figures embed the same strings, so a figure value always equals its CSV
// counterpart byte for byte.
std::string format_value(double v);

// RFC-4180: quote when the field contains a comma, quote or newline.
std::string csv_field(const std::string& s);

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::string& path);

struct RunManifest {
    std::string tool_version;
    std::string command_line;
    std::vector<std::pair<std::string, std::uint64_t>> input_hashes;  // (path, fnv1a64)
    std::uint64_t seed = 0;
    std::string timestamp;  // the only place a timestamp may appear
    std::size_t family_size = 0;
};

std::string manifest_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::string& dir);

void write_text_file(const std::string& path, const std::string& content);

// ---- tabular reports -------------------------------------------------

std::string bias_matrix_csv(const screening::BiasMatrix& matrix);
std::string bias_matrix_json(const screening::BiasMatrix& matrix, const RunManifest& manifest);
std::string projections_csv(std::span<const screening::ProjectionRecord> records);
std::string excision_csv(const screening::ExcisionReport& report);
std::string excision_json(const screening::ExcisionReport& report, const RunManifest& manifest);
std::string ensemble_cells_csv(const screening::EnsembleReport& report);
std::string agreement_csv(const screening::AgreementMatrix& matrix);
std::string groundtruth_csv(const screening::GroundTruthResult& result);
std::string groundtruth_json(const screening::GroundTruthResult& result,
                             const std::string& model, const std::string& axis,
                             const RunManifest& manifest);
std::string alignment_csv(const antonym::AlignmentRanking& ranking);

struct EvalRow {
    std::string dataset;
    std::string metric;  // "spearman" or "accuracy"
    double value = 0.0;
    double coverage = 0.0;
    std::size_t n = 0;
};
std::string eval_table_csv(std::span<const EvalRow> rows);

// ---- figures -----------------------------------------------------------

// Grouped horizontal bars per axis x model; an asterisk marks cells with
// p_adjusted < 0.01; skipped/undefined cells are footnoted, never drawn
// as zero.
std::string emit_bias_bars(const screening::BiasMatrix& matrix);

struct ScatterPoint {
    std::string word;
    double x = 0.0;
    double y = 0.0;
    int polarity = 0;  // +1 blue, -1 red, 0 gray
};

std::string emit_scatter(std::span<const ScatterPoint> points, const std::string& x_label,
                         const std::string& y_label);

// Words of each ranked pair placed at +/- cosine along the axis line,
// colored by polarity. `exclude` removes glyphs at plot level only.
std::string emit_alignment_strip(const antonym::AlignmentRanking& ranking,
                                 const std::set<std::string>& exclude);

}  // namespace axisprobe::report

#endif
