#include "axisprobe/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "axisprobe/errors.hpp"
#include "axisprobe/version.hpp"

namespace axisprobe::report {

namespace {

using nlohmann::json;

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// SVG coordinates: fixed two decimals, locale-independent.
std::string fmt_coord(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

json number_or_null(double v) {
    if (std::isnan(v) || std::isinf(v)) return nullptr;
    return v;
}

// provenance embedded in data files: hashes, seed, version. The command
// line and timestamp stay in the manifest so identical analyses emit
// identical data bytes regardless of --out/--threads placement.
json provenance_json(const RunManifest& m) {
    json j;
    j["tool"] = kToolName;
    j["tool_version"] = m.tool_version;
    j["seed"] = m.seed;
    j["family_size"] = m.family_size;
    json hashes = json::object();
    for (const auto& [path, hash] : m.input_hashes) {
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
        hashes[path] = buf;
    }
    j["input_hashes"] = hashes;
    return j;
}

const char* polarity_color(int polarity) {
    if (polarity > 0) return "#1f77b4";  // blue = positive
    if (polarity < 0) return "#d62728";  // red = negative
    return "#7f7f7f";
}

// fixed model palette, by sorted-model index
const char* model_color(std::size_t i) {
    static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                     "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                     "#bcbd22", "#17becf"};
    return kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

}  // namespace

std::string format_value(double v) {
    if (std::isnan(v) || std::isinf(v)) return "";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open for hashing: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (n < static_cast<std::streamsize>(sizeof(buf))) break;
    }
    return h;
}

std::string manifest_json(const RunManifest& m) {
    json j = provenance_json(m);
    j["command_line"] = m.command_line;
    j["timestamp"] = m.timestamp;
    return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::string& dir) {
    write_text_file((std::filesystem::path(dir) / "manifest.json").string(), manifest_json(m));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// tabular reports

namespace {

void bias_row_csv(std::string& out, const screening::BiasResult& c) {
    const bool ok = c.ok();
    out += csv_field(c.model);
    out += ',';
    out += csv_field(c.axis);
    out += ',';
    out += csv_field(c.lexicon);
    out += ',';
    out += ok ? format_value(c.correlation.coefficient) : "";
    out += ',';
    out += ok ? std::to_string(c.correlation.n) : "";
    out += ',';
    out += format_value(c.coverage);
    out += ',';
    out += ok ? format_value(c.correlation.p_raw) : "";
    out += ',';
    out += ok ? format_value(c.p_adjusted) : "";
    out += ',';
    out += std::string(screening::to_string(c.status));
    out += '\n';
}

}  // namespace

std::string bias_matrix_csv(const screening::BiasMatrix& matrix) {
    std::string out = "model,axis,lexicon,r,n,coverage,p_raw,p_adjusted,flags\n";
    for (const auto& c : matrix.cells) bias_row_csv(out, c);
    return out;
}

namespace {

json bias_cell_json(const screening::BiasResult& c) {
    json jc;
    jc["model"] = c.model;
    jc["axis"] = c.axis;
    jc["lexicon"] = c.lexicon;
    jc["status"] = std::string(screening::to_string(c.status));
    if (c.ok()) {
        jc["r"] = number_or_null(c.correlation.coefficient);
        jc["n"] = c.correlation.n;
        jc["p_raw"] = number_or_null(c.correlation.p_raw);
        jc["p_adjusted"] = number_or_null(c.p_adjusted);
    } else {
        jc["r"] = nullptr;
        jc["n"] = nullptr;
        jc["p_raw"] = nullptr;
        jc["p_adjusted"] = nullptr;
        jc["note"] = c.note;
    }
    jc["coverage"] = number_or_null(c.coverage);
    jc["pole1_coverage"] = number_or_null(c.pole1_coverage);
    jc["pole2_coverage"] = number_or_null(c.pole2_coverage);
    return jc;
}

}  // namespace

std::string bias_matrix_json(const screening::BiasMatrix& matrix, const RunManifest& manifest) {
    json j;
    j["lexicon"] = matrix.lexicon;
    j["family_size"] = matrix.family_size;
    json cells = json::array();
    for (const auto& c : matrix.cells) cells.push_back(bias_cell_json(c));
    j["cells"] = cells;
    j["provenance"] = provenance_json(manifest);
    return j.dump(2) + "\n";
}

std::string projections_csv(std::span<const screening::ProjectionRecord> records) {
    std::string out = "model,axis,word,score,projection\n";
    for (const auto& r : records) {
        out += csv_field(r.model);
        out += ',';
        out += csv_field(r.axis);
        out += ',';
        out += csv_field(r.word);
        out += ',';
        out += format_value(r.score);
        out += ',';
        out += format_value(r.projection);
        out += '\n';
    }
    return out;
}

std::string excision_csv(const screening::ExcisionReport& report) {
    std::string out = "axis,lexicon,fraction,repetitions,model,mean_r,sign_preserved,undefined_cells\n";
    for (const auto& row : report.rows) {
        out += csv_field(report.axis);
        out += ',';
        out += csv_field(report.lexicon);
        out += ',';
        out += format_value(row.fraction);
        out += ',';
        out += std::to_string(row.repetitions);
        out += ",ALL,";
        out += format_value(row.mean_correlation);
        out += ',';
        out += format_value(row.sign_preserved);
        out += ',';
        out += std::to_string(row.undefined_cells);
        out += '\n';
        for (const auto& [model, mean] : row.per_model_mean) {
            out += csv_field(report.axis);
            out += ',';
            out += csv_field(report.lexicon);
            out += ',';
            out += format_value(row.fraction);
            out += ',';
            out += std::to_string(row.repetitions);
            out += ',';
            out += csv_field(model);
            out += ',';
            out += format_value(mean);
            out += ",,\n";
        }
    }
    return out;
}

std::string excision_json(const screening::ExcisionReport& report, const RunManifest& manifest) {
    json j;
    j["axis"] = report.axis;
    j["lexicon"] = report.lexicon;
    j["seed"] = report.seed;
    json unexcised = json::object();
    for (const auto& [model, r] : report.unexcised) unexcised[model] = number_or_null(r);
    j["unexcised"] = unexcised;
    json rows = json::array();
    for (const auto& row : report.rows) {
        json jr;
        jr["fraction"] = row.fraction;
        jr["repetitions"] = row.repetitions;
        jr["mean_r"] = number_or_null(row.mean_correlation);
        jr["sign_preserved"] = number_or_null(row.sign_preserved);
        jr["undefined_cells"] = row.undefined_cells;
        json per_model = json::object();
        for (const auto& [model, mean] : row.per_model_mean) per_model[model] = number_or_null(mean);
        jr["per_model_mean"] = per_model;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    j["provenance"] = provenance_json(manifest);
    return j.dump(2) + "\n";
}

std::string ensemble_cells_csv(const screening::EnsembleReport& report) {
    std::string out = "model,axis,lexicon,r,n,coverage,p_raw,p_adjusted,flags\n";
    for (const auto& matrix : report.matrices) {
        for (const auto& c : matrix.cells) bias_row_csv(out, c);
    }
    return out;
}

std::string agreement_csv(const screening::AgreementMatrix& matrix) {
    std::string out = "name";
    for (const auto& n : matrix.names) {
        out += ',';
        out += csv_field(n);
    }
    out += '\n';
    const std::size_t k = matrix.names.size();
    for (std::size_t i = 0; i < k; ++i) {
        out += csv_field(matrix.names[i]);
        for (std::size_t j = 0; j < k; ++j) {
            out += ',';
            out += format_value(matrix.at(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string groundtruth_csv(const screening::GroundTruthResult& result) {
    std::string out = "word,projection,metric\n";
    for (const auto& p : result.points) {
        out += csv_field(p.word);
        out += ',';
        out += format_value(p.projection);
        out += ',';
        out += format_value(p.metric);
        out += '\n';
    }
    return out;
}

std::string groundtruth_json(const screening::GroundTruthResult& result, const std::string& model,
                             const std::string& axis, const RunManifest& manifest) {
    json j;
    j["model"] = model;
    j["axis"] = axis;
    j["n"] = result.points.size();
    j["unresolved"] = result.unresolved;
    j["pearson"] = {{"r", number_or_null(result.pearson.coefficient)},
                    {"p_raw", number_or_null(result.pearson.p_raw)}};
    j["spearman"] = {{"r", number_or_null(result.spearman.coefficient)},
                     {"p_raw", number_or_null(result.spearman.p_raw)}};
    j["provenance"] = provenance_json(manifest);
    return j.dump(2) + "\n";
}

std::string alignment_csv(const antonym::AlignmentRanking& ranking) {
    std::string out = "word1,word2,cosine,label1,label2\n";
    for (const auto& e : ranking.entries) {
        out += csv_field(e.pair.word1);
        out += ',';
        out += csv_field(e.pair.word2);
        out += ',';
        out += format_value(e.cosine);
        out += ',';
        out += e.label1 ? std::to_string(e.label1) : "";
        out += ',';
        out += e.label2 ? std::to_string(e.label2) : "";
        out += '\n';
    }
    return out;
}

std::string eval_table_csv(std::span<const EvalRow> rows) {
    std::string out = "dataset,metric,value,coverage,n\n";
    for (const auto& r : rows) {
        out += csv_field(r.dataset);
        out += ',';
        out += csv_field(r.metric);
        out += ',';
        out += format_value(r.value);
        out += ',';
        out += format_value(r.coverage);
        out += ',';
        out += std::to_string(r.n);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// figures

std::string emit_bias_bars(const screening::BiasMatrix& matrix) {
    // unique axes and models in cell (sorted) order
    std::vector<std::string> axes;
    std::vector<std::string> models;
    for (const auto& c : matrix.cells) {
        if (std::find(axes.begin(), axes.end(), c.axis) == axes.end()) axes.push_back(c.axis);
        if (std::find(models.begin(), models.end(), c.model) == models.end())
            models.push_back(c.model);
    }
    std::sort(axes.begin(), axes.end());
    std::sort(models.begin(), models.end());

    const double bar_h = 14.0;
    const double group_gap = 18.0;
    const double left = 190.0;
    const double plot_w = 420.0;
    const double top = 40.0 + 16.0 * static_cast<double>(models.size());
    const double group_h = bar_h * static_cast<double>(models.size()) + group_gap;

    std::vector<std::string> footnotes;
    for (const auto& c : matrix.cells) {
        if (!c.ok())
            footnotes.push_back(c.axis + " / " + c.model + ": " +
                                std::string(screening::to_string(c.status)));
    }

    const double height = top + group_h * static_cast<double>(axes.size()) + 30.0 +
                          14.0 * static_cast<double>(footnotes.size());
    const double width = left + plot_w + 60.0;

    auto x_of = [&](double r) { return left + (r + 1.0) * 0.5 * plot_w; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_coord(width) +
           "\" height=\"" + fmt_coord(height) + "\" viewBox=\"0 0 " + fmt_coord(width) + " " +
           fmt_coord(height) + "\">\n";
    svg += "<style>text{font-family:monospace;font-size:11px;}</style>\n";
    svg += "<title>bias matrix: " + xml_escape(matrix.lexicon) + "</title>\n";

    // legend
    for (std::size_t m = 0; m < models.size(); ++m) {
        const double ly = 20.0 + 16.0 * static_cast<double>(m);
        svg += "<rect x=\"" + fmt_coord(left) + "\" y=\"" + fmt_coord(ly - 9.0) +
               "\" width=\"10\" height=\"10\" fill=\"" + model_color(m) + "\"/>\n";
        svg += "<text x=\"" + fmt_coord(left + 14.0) + "\" y=\"" + fmt_coord(ly) + "\">" +
               xml_escape(models[m]) + "</text>\n";
    }

    // zero line
    svg += "<line x1=\"" + fmt_coord(x_of(0.0)) + "\" y1=\"" + fmt_coord(top - 6.0) + "\" x2=\"" +
           fmt_coord(x_of(0.0)) + "\" y2=\"" +
           fmt_coord(top + group_h * static_cast<double>(axes.size())) +
           "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";

    for (std::size_t a = 0; a < axes.size(); ++a) {
        const double gy = top + group_h * static_cast<double>(a);
        svg += "<text x=\"6\" y=\"" + fmt_coord(gy + group_h * 0.5) + "\">" +
               xml_escape(axes[a]) + "</text>\n";
        for (std::size_t m = 0; m < models.size(); ++m) {
            const screening::BiasResult* cell = matrix.find(models[m], axes[a]);
            if (!cell || !cell->ok()) continue;
            const double r = cell->correlation.coefficient;
            const double x0 = x_of(std::min(0.0, r));
            const double x1 = x_of(std::max(0.0, r));
            const double y = gy + bar_h * static_cast<double>(m);
            svg += "<rect x=\"" + fmt_coord(x0) + "\" y=\"" + fmt_coord(y) + "\" width=\"" +
                   fmt_coord(x1 - x0) + "\" height=\"" + fmt_coord(bar_h - 3.0) + "\" fill=\"" +
                   model_color(m) + "\" data-model=\"" + xml_escape(models[m]) +
                   "\" data-axis=\"" + xml_escape(axes[a]) + "\" data-value=\"" +
                   format_value(r) + "\"/>\n";
            if (cell->p_adjusted < 0.01) {
                const double star_x = r >= 0.0 ? x1 + 4.0 : x0 - 10.0;
                svg += "<text x=\"" + fmt_coord(star_x) + "\" y=\"" +
                       fmt_coord(y + bar_h - 4.0) + "\">*</text>\n";
            }
        }
    }

    double fy = top + group_h * static_cast<double>(axes.size()) + 20.0;
    for (const auto& note : footnotes) {
        svg += "<text x=\"6\" y=\"" + fmt_coord(fy) + "\" fill=\"#666666\">omitted: " +
               xml_escape(note) + "</text>\n";
        fy += 14.0;
    }
    svg += "</svg>\n";
    return svg;
}

std::string emit_scatter(std::span<const ScatterPoint> points, const std::string& x_label,
                         const std::string& y_label) {
    const double size = 640.0;
    const double margin = 50.0;
    const double plot = size - 2.0 * margin;

    double limit = 0.1;
    for (const auto& p : points) {
        limit = std::max({limit, std::fabs(p.x), std::fabs(p.y)});
    }

    auto sx = [&](double v) { return margin + (v + limit) / (2.0 * limit) * plot; };
    auto sy = [&](double v) { return margin + (limit - v) / (2.0 * limit) * plot; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_coord(size) +
           "\" height=\"" + fmt_coord(size) + "\" viewBox=\"0 0 " + fmt_coord(size) + " " +
           fmt_coord(size) + "\">\n";
    svg += "<style>text{font-family:monospace;font-size:11px;}</style>\n";
    // frame and quadrant gridlines at zero
    svg += "<rect x=\"" + fmt_coord(margin) + "\" y=\"" + fmt_coord(margin) + "\" width=\"" +
           fmt_coord(plot) + "\" height=\"" + fmt_coord(plot) +
           "\" fill=\"none\" stroke=\"#333333\"/>\n";
    svg += "<line x1=\"" + fmt_coord(sx(0.0)) + "\" y1=\"" + fmt_coord(margin) + "\" x2=\"" +
           fmt_coord(sx(0.0)) + "\" y2=\"" + fmt_coord(margin + plot) +
           "\" stroke=\"#bbbbbb\"/>\n";
    svg += "<line x1=\"" + fmt_coord(margin) + "\" y1=\"" + fmt_coord(sy(0.0)) + "\" x2=\"" +
           fmt_coord(margin + plot) + "\" y2=\"" + fmt_coord(sy(0.0)) +
           "\" stroke=\"#bbbbbb\"/>\n";
    svg += "<text x=\"" + fmt_coord(size / 2.0 - 40.0) + "\" y=\"" + fmt_coord(size - 14.0) +
           "\">" + xml_escape(x_label) + "</text>\n";
    svg += "<text x=\"14\" y=\"" + fmt_coord(size / 2.0) + "\" transform=\"rotate(-90 14 " +
           fmt_coord(size / 2.0) + ")\">" + xml_escape(y_label) + "</text>\n";

    for (const auto& p : points) {
        svg += "<circle cx=\"" + fmt_coord(sx(p.x)) + "\" cy=\"" + fmt_coord(sy(p.y)) +
               "\" r=\"2.5\" fill=\"" + polarity_color(p.polarity) + "\" fill-opacity=\"0.7\"" +
               " data-word=\"" + xml_escape(p.word) + "\" data-x=\"" + format_value(p.x) +
               "\" data-y=\"" + format_value(p.y) + "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::string emit_alignment_strip(const antonym::AlignmentRanking& ranking,
                                 const std::set<std::string>& exclude) {
    const double width = 720.0;
    const double left = 60.0;
    const double plot_w = width - 2.0 * left;
    const double top = 56.0;
    const double row_h = 16.0;

    std::size_t n_rows = 0;
    for (const auto& e : ranking.entries) {
        if (exclude.count(e.pair.word1) && exclude.count(e.pair.word2)) continue;
        ++n_rows;
    }
    const double height = top + row_h * static_cast<double>(n_rows) + 20.0;

    auto x_of = [&](double c) { return left + (c + 1.0) * 0.5 * plot_w; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_coord(width) +
           "\" height=\"" + fmt_coord(height) + "\" viewBox=\"0 0 " + fmt_coord(width) + " " +
           fmt_coord(height) + "\">\n";
    svg += "<style>text{font-family:monospace;font-size:11px;}</style>\n";
    svg += "<title>" + xml_escape(ranking.axis) + " / " + xml_escape(ranking.model) +
           "</title>\n";
    svg += "<text x=\"" + fmt_coord(left) + "\" y=\"20\">pole1 &#8592;</text>\n";
    svg += "<text x=\"" + fmt_coord(left + plot_w - 70.0) + "\" y=\"20\">&#8594; pole2</text>\n";
    svg += "<line x1=\"" + fmt_coord(left) + "\" y1=\"30\" x2=\"" + fmt_coord(left + plot_w) +
           "\" y2=\"30\" stroke=\"#333333\"/>\n";
    svg += "<line x1=\"" + fmt_coord(x_of(0.0)) + "\" y1=\"24\" x2=\"" + fmt_coord(x_of(0.0)) +
           "\" y2=\"" + fmt_coord(height - 10.0) + "\" stroke=\"#dddddd\"/>\n";

    double y = top;
    for (const auto& e : ranking.entries) {
        const bool w1_shown = exclude.count(e.pair.word1) == 0;
        const bool w2_shown = exclude.count(e.pair.word2) == 0;
        if (!w1_shown && !w2_shown) continue;
        // word2 aligns with the +cosine side, word1 with the mirror
        if (w1_shown) {
            svg += "<text x=\"" + fmt_coord(x_of(-e.cosine)) + "\" y=\"" + fmt_coord(y) +
                   "\" text-anchor=\"middle\" fill=\"" + polarity_color(e.label1) +
                   "\" data-word=\"" + xml_escape(e.pair.word1) + "\" data-cosine=\"" +
                   format_value(e.cosine) + "\">" + xml_escape(e.pair.word1) + "</text>\n";
        }
        if (w2_shown) {
            svg += "<text x=\"" + fmt_coord(x_of(e.cosine)) + "\" y=\"" + fmt_coord(y) +
                   "\" text-anchor=\"middle\" fill=\"" + polarity_color(e.label2) +
                   "\" data-word=\"" + xml_escape(e.pair.word2) + "\" data-cosine=\"" +
                   format_value(e.cosine) + "\">" + xml_escape(e.pair.word2) + "</text>\n";
        }
        y += row_h;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace axisprobe::report
