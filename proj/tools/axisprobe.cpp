// axisprobe: load embedding models, build cultural axes, project sentiment
// lexicons, and report the resulting association statistics.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "axisprobe/antonym.hpp"
#include "axisprobe/axis.hpp"
#include "axisprobe/embedding.hpp"
#include "axisprobe/errors.hpp"
#include "axisprobe/evaluation.hpp"
#include "axisprobe/kernels.hpp"
#include "axisprobe/lexicon.hpp"
#include "axisprobe/report.hpp"
#include "axisprobe/screening.hpp"
#include "axisprobe/version.hpp"

namespace fs = std::filesystem;
using namespace axisprobe;

namespace {

// Outputs are buffered and flushed only after the whole pipeline succeeded,
// so a failing run leaves no partial files behind.
struct OutputBundle {
    std::string out_dir;
    std::vector<std::pair<std::string, std::string>> files;  // (name, content)
    std::vector<std::string> warnings;
    report::RunManifest manifest;

    void add(const std::string& name, std::string content) {
        files.emplace_back(name, std::move(content));
    }

    void warn(const std::string& msg) {
        warnings.push_back(msg);
        std::cerr << "warning: " << msg << "\n";
    }

    void flush() {
        fs::create_directories(out_dir);
        for (const auto& [name, content] : files) {
            report::write_text_file((fs::path(out_dir) / name).string(), content);
        }
        std::string log;
        for (const auto& w : warnings) {
            log += w;
            log += '\n';
        }
        report::write_text_file((fs::path(out_dir) / "run.log").string(), log);
        report::write_manifest(manifest, out_dir);
    }
};

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) {
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'
                          ? c
                          : '_');
    }
    return out;
}

void require_file(const std::string& path) {
    if (!fs::is_regular_file(path)) throw Error("input file not found: " + path);
}

embedding::EmbeddingModel load_model_any(const std::string& path) {
    require_file(path);
    const std::string ext = fs::path(path).extension().string();
    if (ext == ".bin") return embedding::load_word2vec_binary(path);
    if (ext == ".vec" || ext == ".txt")
        return embedding::load_text_vectors(path, embedding::detect_text_header(path));
    return embedding::read_cache(path);
}

struct GlobalOptions {
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out_dir = "out";
    std::string fallback = "lowercase";
    std::vector<std::string> subword_specs;  // "model=path" or bare path

    embedding::Fallback fallback_policy() const {
        return embedding::fallback_from_string(fallback);
    }
};

std::vector<embedding::EmbeddingModel> load_models(const std::vector<std::string>& paths,
                                                   const GlobalOptions& g) {
    std::vector<embedding::EmbeddingModel> models;
    for (const auto& p : paths) models.push_back(load_model_any(p));
    for (const auto& spec : g.subword_specs) {
        const std::size_t eq = spec.find('=');
        std::string name;
        std::string path;
        if (eq == std::string::npos) {
            if (models.size() != 1)
                throw Error("--subwords needs the form <model>=<path> with several models");
            name = models.front().name();
            path = spec;
        } else {
            name = spec.substr(0, eq);
            path = spec.substr(eq + 1);
        }
        require_file(path);
        bool attached = false;
        for (auto& m : models) {
            if (m.name() == name) {
                m.attach_subwords(embedding::load_subword_table(path));
                attached = true;
            }
        }
        if (!attached) throw Error("--subwords names unknown model \"" + name + "\"");
    }
    return models;
}

lexicon::SentimentLexicon resolve_lexicon(const std::string& arg, const std::string& root) {
    if (fs::is_directory(arg) && fs::exists(fs::path(arg) / "format.json"))
        return lexicon::load_lexicon(arg);
    const fs::path under_root = fs::path(root) / arg;
    if (fs::is_directory(under_root) && fs::exists(under_root / "format.json"))
        return lexicon::load_lexicon(under_root.string());
    throw Error("lexicon \"" + arg + "\" not found (looked in " + root + ")");
}

report::RunManifest make_manifest(const std::string& command_line, const GlobalOptions& g,
                                  const std::vector<std::string>& inputs,
                                  std::size_t family_size) {
    report::RunManifest m;
    m.tool_version = kToolVersion;
    m.command_line = command_line;
    m.seed = g.seed;
    m.timestamp = iso_timestamp();
    m.family_size = family_size;
    std::vector<std::string> sorted_inputs = inputs;
    std::sort(sorted_inputs.begin(), sorted_inputs.end());
    sorted_inputs.erase(std::unique(sorted_inputs.begin(), sorted_inputs.end()),
                        sorted_inputs.end());
    for (const auto& path : sorted_inputs) {
        m.input_hashes.emplace_back(path, report::fnv1a64_file(path));
    }
    return m;
}

std::vector<std::string> files_under(const std::string& dir, const std::string& ext) {
    std::vector<std::string> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ext)
            out.push_back(e.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> axis_input_files(const std::string& axes_dir) {
    auto files = files_under(axes_dir, ".json");
    if (files.empty()) throw Error("no axis files in " + axes_dir);
    return files;
}

int status_from_matrix(const screening::BiasMatrix& matrix, OutputBundle& bundle) {
    int rc = 0;
    for (const auto& c : matrix.cells) {
        if (!c.ok()) {
            bundle.warn("cell " + c.model + "/" + c.axis + ": " +
                        std::string(screening::to_string(c.status)) +
                        (c.note.empty() ? "" : " (" + c.note + ")"));
            rc = 1;
        }
    }
    return rc;
}

// ---------------------------------------------------------------------------
// CSV read-back (used only by `plot`; figures must carry exactly the values
// the analysis CSVs carry)

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    out.push_back(std::move(field));
    return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    require_file(path);
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.size() < 2) throw Error("no data rows in " + path);
    return rows;
}

double parse_double_or_nan(const std::string& s) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw Error("bad numeric field \"" + s + "\"");
    return v;
}

std::map<std::string, std::size_t> header_index(const std::vector<std::string>& header) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < header.size(); ++i) idx[header[i]] = i;
    return idx;
}

screening::BiasMatrix read_bias_matrix_csv(const std::string& path) {
    const auto rows = read_csv(path);
    const auto idx = header_index(rows[0]);
    for (const char* col : {"model", "axis", "lexicon", "r", "p_adjusted", "flags"}) {
        if (!idx.count(col)) throw Error(path + " lacks column \"" + col + "\"");
    }
    screening::BiasMatrix matrix;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        screening::BiasResult c;
        c.model = row[idx.at("model")];
        c.axis = row[idx.at("axis")];
        c.lexicon = row[idx.at("lexicon")];
        const std::string& flags = row[idx.at("flags")];
        if (flags == "ok") {
            c.status = screening::CellStatus::ok;
            c.correlation.coefficient = parse_double_or_nan(row[idx.at("r")]);
            c.p_adjusted = parse_double_or_nan(row[idx.at("p_adjusted")]);
        } else if (flags == "skipped_pole_coverage") {
            c.status = screening::CellStatus::skipped_pole_coverage;
        } else if (flags == "skipped_pole_error") {
            c.status = screening::CellStatus::skipped_pole_error;
        } else if (flags == "skipped_empty_intersection") {
            c.status = screening::CellStatus::skipped_empty_intersection;
        } else {
            c.status = screening::CellStatus::undefined_degenerate;
        }
        matrix.lexicon = c.lexicon;
        matrix.cells.push_back(std::move(c));
    }
    return matrix;
}

}  // namespace

// ---------------------------------------------------------------------------
// subcommand implementations

namespace {

struct ConvertArgs {
    std::string in;
    std::string format;  // word2vec-bin | text
    std::string out;
};

int run_convert(const ConvertArgs& a) {
    require_file(a.in);
    embedding::EmbeddingModel model;
    if (a.format == "word2vec-bin") {
        model = embedding::load_word2vec_binary(a.in);
    } else if (a.format == "text") {
        model = embedding::load_text_vectors(a.in, embedding::detect_text_header(a.in));
    } else {
        throw Error("unknown --format \"" + a.format + "\" (word2vec-bin|text)");
    }
    if (!a.out.empty() && a.out.find('/') != std::string::npos)
        fs::create_directories(fs::path(a.out).parent_path());
    embedding::write_cache(model, a.out);
    std::cout << "converted " << a.in << " -> " << a.out << " (" << model.vocab_size() << " x "
              << model.dim() << ")\n";
    return 0;
}

struct ScreenArgs {
    std::vector<std::string> models;
    std::string axes_dir;
    std::string lexicon_name;
    std::string lexicon_root = "data/lexicons";
    bool shared_vocab = false;
    bool dump_projections = false;
};

int run_screen(const ScreenArgs& a, const GlobalOptions& g, const std::string& command_line) {
    for (const auto& m : a.models) require_file(m);
    const auto models = load_models(a.models, g);
    const auto axes = axis::load_axis_dir(a.axes_dir);
    const auto lex = resolve_lexicon(a.lexicon_name, a.lexicon_root);

    screening::ScreenOptions options;
    options.fallback = g.fallback_policy();
    options.shared_vocab = a.shared_vocab;

    std::vector<screening::ProjectionRecord> projections;
    const screening::BiasMatrix matrix =
        screening::screen(models, axes, lex, options, a.dump_projections ? &projections : nullptr);

    OutputBundle bundle;
    bundle.out_dir = g.out_dir;
    std::vector<std::string> inputs = a.models;
    for (const auto& f : axis_input_files(a.axes_dir)) inputs.push_back(f);
    bundle.manifest = make_manifest(command_line, g, inputs, matrix.family_size);
    const int rc = status_from_matrix(matrix, bundle);
    bundle.add("bias_matrix.csv", report::bias_matrix_csv(matrix));
    bundle.add("bias_matrix.json", report::bias_matrix_json(matrix, bundle.manifest));
    bundle.add("bias_matrix.svg", report::emit_bias_bars(matrix));
    if (a.dump_projections) bundle.add("projections.csv", report::projections_csv(projections));
    bundle.flush();
    std::cout << "screen: " << matrix.cells.size() << " cells (m=" << matrix.family_size
              << ") -> " << g.out_dir << "\n";
    return rc;
}

struct ExciseArgs {
    std::vector<std::string> models;
    std::string axes_dir;
    std::string axis_name;  // empty = every axis in the directory
    std::string lexicon_name;
    std::string lexicon_root = "data/lexicons";
    std::string fractions = "0.25,0.5,0.75";
    std::size_t reps = 500;
};

std::vector<double> parse_fractions(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        double f = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), f);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw Error("bad fraction \"" + tok + "\"");
        out.push_back(f);
    }
    if (out.empty()) throw Error("--fractions is empty");
    return out;
}

int run_excise(const ExciseArgs& a, const GlobalOptions& g, const std::string& command_line) {
    for (const auto& m : a.models) require_file(m);
    const auto models = load_models(a.models, g);
    auto axes = axis::load_axis_dir(a.axes_dir);
    if (!a.axis_name.empty()) {
        std::erase_if(axes, [&](const axis::AxisSpec& s) { return s.name != a.axis_name; });
        if (axes.empty()) throw Error("axis \"" + a.axis_name + "\" not found in " + a.axes_dir);
    }
    const auto lex = resolve_lexicon(a.lexicon_name, a.lexicon_root);
    const auto fractions = parse_fractions(a.fractions);

    screening::ScreenOptions options;
    options.fallback = g.fallback_policy();

    OutputBundle bundle;
    bundle.out_dir = g.out_dir;
    std::vector<std::string> inputs = a.models;
    for (const auto& f : axis_input_files(a.axes_dir)) inputs.push_back(f);
    bundle.manifest = make_manifest(command_line, g, inputs, models.size() * axes.size());

    std::string csv;
    std::string json_all = "[";
    bool first = true;
    for (const auto& spec : axes) {
        const auto report = screening::excision_experiment(models, spec, lex, fractions, a.reps,
                                                           g.seed, options);
        std::string one = report::excision_csv(report);
        if (!csv.empty()) one.erase(0, one.find('\n') + 1);  // keep a single header
        csv += one;
        std::string j = report::excision_json(report, bundle.manifest);
        if (!j.empty() && j.back() == '\n') j.pop_back();
        json_all += first ? "\n" : ",\n";
        json_all += j;
        first = false;
        for (const auto& row : report.rows) {
            if (row.undefined_cells > 0)
                bundle.warn("axis " + spec.name + " fraction " +
                            report::format_value(row.fraction) + ": " +
                            std::to_string(row.undefined_cells) + " undefined cells");
        }
    }
    json_all += "\n]\n";
    bundle.add("excision.csv", csv);
    bundle.add("excision.json", json_all);
    bundle.flush();
    std::cout << "excise: " << axes.size() << " axes x " << a.reps << " reps -> " << g.out_dir
              << "\n";
    return bundle.warnings.empty() ? 0 : 1;
}

struct EnsembleArgs {
    std::vector<std::string> models;
    std::string axes_dir;
    std::string lexicon_root = "data/lexicons";
};

int run_ensemble(const EnsembleArgs& a, const GlobalOptions& g, const std::string& command_line) {
    for (const auto& m : a.models) require_file(m);
    const auto models = load_models(a.models, g);
    const auto axes = axis::load_axis_dir(a.axes_dir);
    const auto lexicons = lexicon::load_lexicon_set(a.lexicon_root);

    screening::ScreenOptions options;
    options.fallback = g.fallback_policy();
    const auto report = screening::ensemble_summary(models, axes, lexicons, options);

    OutputBundle bundle;
    bundle.out_dir = g.out_dir;
    std::vector<std::string> inputs = a.models;
    for (const auto& f : axis_input_files(a.axes_dir)) inputs.push_back(f);
    bundle.manifest = make_manifest(command_line, g, inputs,
                                    models.size() * axes.size() * lexicons.size());

    int rc = 0;
    for (const auto& matrix : report.matrices) rc = std::max(rc, status_from_matrix(matrix, bundle));

    bundle.add("ensemble_cells.csv", report::ensemble_cells_csv(report));
    bundle.add("lexicon_agreement.csv", report::agreement_csv(report.lexicon_agreement));
    bundle.add("model_agreement.csv", report::agreement_csv(report.model_agreement));
    {
        std::string j = "{\n  \"mean_lexicon_agreement\": ";
        j += report.lexicon_agreement.defined_pairs
                 ? report::format_value(report.lexicon_agreement.mean_off_diagonal)
                 : "null";
        j += ",\n  \"mean_model_agreement\": ";
        j += report.model_agreement.defined_pairs
                 ? report::format_value(report.model_agreement.mean_off_diagonal)
                 : "null";
        j += "\n}\n";
        bundle.add("ensemble.json", j);
    }
    bundle.flush();
    std::cout << "ensemble: " << report.matrices.size() << " lexicons, mean lexicon agreement "
              << report::format_value(report.lexicon_agreement.mean_off_diagonal)
              << ", mean model agreement "
              << report::format_value(report.model_agreement.mean_off_diagonal) << " -> "
              << g.out_dir << "\n";
    return rc;
}

struct AlignArgs {
    std::string model;
    std::string axes_dir;
    std::string axis_name;
    std::string pairs;
    std::string lexicon_name;  // optional: sentiment-filtered mode
    std::string lexicon_root = "data/lexicons";
    std::size_t top_k = 100;
    std::vector<std::string> exclude;  // plot-level
};

int run_align(const AlignArgs& a, const GlobalOptions& g, const std::string& command_line) {
    require_file(a.model);
    require_file(a.pairs);
    const auto models = load_models({a.model}, g);
    const auto& model = models.front();
    auto axes = axis::load_axis_dir(a.axes_dir);
    std::erase_if(axes, [&](const axis::AxisSpec& s) { return s.name != a.axis_name; });
    if (axes.empty()) throw Error("axis \"" + a.axis_name + "\" not found in " + a.axes_dir);
    const auto& spec = axes.front();

    const auto pair_report = antonym::load_antonym_pairs(a.pairs);
    const auto cultural =
        axis::build_axis(model, spec.pole1, spec.pole2, g.fallback_policy(), spec.name);

    antonym::AlignmentRanking ranking;
    if (a.lexicon_name.empty()) {
        ranking = antonym::alignment_ranking(model, cultural, pair_report.pairs, a.top_k,
                                             g.fallback_policy());
    } else {
        const auto lex = resolve_lexicon(a.lexicon_name, a.lexicon_root);
        ranking = antonym::sentiment_filtered_alignment(model, cultural, pair_report.pairs, lex,
                                                        a.top_k, g.fallback_policy());
    }

    OutputBundle bundle;
    bundle.out_dir = g.out_dir;
    bundle.manifest = make_manifest(command_line, g, {a.model, a.pairs}, 0);
    if (pair_report.self_pairs_skipped)
        bundle.warn(std::to_string(pair_report.self_pairs_skipped) + " self-pairs skipped");
    if (ranking.pairs_unresolved)
        bundle.warn(std::to_string(ranking.pairs_unresolved) + " pairs did not resolve");

    const std::string base = "alignment_" + sanitize(spec.name) + "_" + sanitize(model.name());
    bundle.add(base + ".csv", report::alignment_csv(ranking));
    const std::set<std::string> exclude(a.exclude.begin(), a.exclude.end());
    bundle.add(base + ".svg", report::emit_alignment_strip(ranking, exclude));
    bundle.flush();
    std::cout << "align: " << ranking.entries.size() << " pairs ranked -> " << g.out_dir << "\n";
    return 0;
}

struct GroundTruthArgs {
    std::string model;
    std::string axes_dir;
    std::string axis_name;
    std::string targets;
};

int run_groundtruth(const GroundTruthArgs& a, const GlobalOptions& g,
                    const std::string& command_line) {
    require_file(a.model);
    require_file(a.targets);
    const auto models = load_models({a.model}, g);
    const auto& model = models.front();
    auto axes = axis::load_axis_dir(a.axes_dir);
    std::erase_if(axes, [&](const axis::AxisSpec& s) { return s.name != a.axis_name; });
    if (axes.empty()) throw Error("axis \"" + a.axis_name + "\" not found in " + a.axes_dir);

    const auto targets = screening::load_targets_csv(a.targets);
    const auto result =
        screening::ground_truth_correlation(model, axes.front(), targets, g.fallback_policy());

    OutputBundle bundle;
    bundle.out_dir = g.out_dir;
    bundle.manifest = make_manifest(command_line, g, {a.model, a.targets}, 0);
    if (!result.unresolved.empty())
        bundle.warn(std::to_string(result.unresolved.size()) + " target words did not resolve");

    bundle.add("groundtruth.csv", report::groundtruth_csv(result));
    bundle.add("groundtruth.json",
               report::groundtruth_json(result, model.name(), axes.front().name, bundle.manifest));
    std::vector<report::ScatterPoint> points;
    for (const auto& p : result.points) points.push_back({p.word, p.projection, p.metric, 0});
    bundle.add("groundtruth.svg",
               report::emit_scatter(points, axes.front().name + " projection", "metric"));
    bundle.flush();
    std::cout << "groundtruth: n=" << result.points.size()
              << " pearson=" << report::format_value(result.pearson.coefficient)
              << " spearman=" << report::format_value(result.spearman.coefficient) << " -> "
              << g.out_dir << "\n";
    return 0;
}

struct EvalArgs {
    std::string model;
    std::string suite = "all";  // all | similarity | analogy
    std::string datasets = "data/eval";
    std::size_t vocab_limit = 200000;
    bool strict = false;
    bool use_3cosmul = false;  // diagnostic only, excluded from table runs
};

int run_eval(const EvalArgs& a, const GlobalOptions& g, const std::string& command_line) {
    require_file(a.model);
    if (a.use_3cosmul)
        throw Error("--3cosmul is diagnostic-only and not wired into table output yet");
    const auto models = load_models({a.model}, g);
    const auto& model = models.front();

    std::vector<report::EvalRow> rows;
    std::vector<std::string> inputs = {a.model};

    const bool want_similarity = a.suite == "all" || a.suite == "similarity";
    const bool want_analogy = a.suite == "all" || a.suite == "analogy";
    if (!want_similarity && !want_analogy)
        throw Error("unknown --suite \"" + a.suite + "\" (all|similarity|analogy)");

    if (want_similarity) {
        for (const auto& f : files_under((fs::path(a.datasets) / "similarity").string(), ".txt")) {
            inputs.push_back(f);
            const auto ds = evaluation::load_similarity_dataset(f);
            const auto res = evaluation::similarity_eval(model, ds, g.fallback_policy());
            rows.push_back({ds.name, "spearman", res.correlation.coefficient, res.coverage,
                            res.pairs_used});
        }
    }
    if (want_analogy) {
        for (const auto& f : files_under((fs::path(a.datasets) / "analogy").string(), ".txt")) {
            inputs.push_back(f);
            const auto ds = evaluation::load_google_analogies(f);
            for (const bool syntactic : {false, true}) {
                const auto part = evaluation::filter_sections(
                    ds, syntactic, ds.name + (syntactic ? "-syntactic" : "-semantic"));
                if (part.quads.empty()) continue;
                const auto res = evaluation::analogy_eval(model, part, a.vocab_limit,
                                                          g.fallback_policy(), a.strict);
                rows.push_back({part.name, "accuracy", res.accuracy, res.coverage, res.attempted});
            }
        }
        for (const auto& f :
             files_under((fs::path(a.datasets) / "analogy" / "bats").string(), ".txt")) {
            inputs.push_back(f);
            const auto ds = evaluation::load_bats(f);
            const auto res =
                evaluation::analogy_eval(model, ds, a.vocab_limit, g.fallback_policy(), a.strict);
            rows.push_back({ds.name, "accuracy", res.accuracy, res.coverage, res.attempted});
        }
    }
    if (rows.empty()) throw Error("no datasets found under " + a.datasets);

    OutputBundle bundle;
    bundle.out_dir = g.out_dir;
    bundle.manifest = make_manifest(command_line, g, inputs, 0);
    bundle.add("table1.csv", report::eval_table_csv(rows));
    bundle.flush();
    std::cout << "eval: " << rows.size() << " dataset rows -> " << g.out_dir << "/table1.csv\n";
    return 0;
}

int run_lexicon_stats(const std::string& name, const std::string& root) {
    const auto lex = resolve_lexicon(name, root);
    std::cout << "lexicon:     " << lex.name << "\n"
              << "kind:        " << lexicon::to_string(lex.kind) << "\n"
              << "entries:     " << lex.size() << "\n"
              << "positive:    " << lex.count_positive() << "\n"
              << "negative:    " << lex.count_negative() << "\n"
              << "annotations: " << lex.annotation_count << "\n"
              << "notes:       " << lex.notes.size() << "\n";
    for (const auto& n : lex.notes) std::cout << "  - " << n << "\n";
    return 0;
}

struct PlotArgs {
    std::string mode;  // bars | scatter | strip
    std::string input;
    std::string name;  // output file name override
    // scatter
    std::string model;
    std::string axis_x;
    std::string axis_y;
    // strip
    std::string axis;
    std::vector<std::string> exclude;
};

int run_plot(const PlotArgs& a, const GlobalOptions& g, const std::string& command_line) {
    OutputBundle bundle;
    bundle.out_dir = g.out_dir;
    bundle.manifest = make_manifest(command_line, g, {a.input}, 0);

    if (a.mode == "bars") {
        const auto matrix = read_bias_matrix_csv(a.input);
        bundle.add(a.name.empty() ? "bias_matrix.svg" : a.name, report::emit_bias_bars(matrix));
    } else if (a.mode == "scatter") {
        // projections.csv -> two-axis scatter with majority-polarity colors
        const auto rows = read_csv(a.input);
        const auto idx = header_index(rows[0]);
        for (const char* col : {"model", "axis", "word", "score", "projection"}) {
            if (!idx.count(col)) throw Error(a.input + " lacks column \"" + col + "\"");
        }
        std::map<std::string, report::ScatterPoint> by_word;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& row = rows[i];
            if (row[idx.at("model")] != a.model) continue;
            const std::string& word = row[idx.at("word")];
            const std::string& which = row[idx.at("axis")];
            const double value = parse_double_or_nan(row[idx.at("projection")]);
            const double score = parse_double_or_nan(row[idx.at("score")]);
            auto& p = by_word[word];
            p.word = word;
            p.polarity = score > 0 ? 1 : (score < 0 ? -1 : 0);
            if (which == a.axis_x) p.x = value;
            if (which == a.axis_y) p.y = value;
        }
        std::vector<report::ScatterPoint> points;
        for (auto& [w, p] : by_word) points.push_back(std::move(p));
        bundle.add(a.name.empty() ? "scatter.svg" : a.name,
                   report::emit_scatter(points, a.axis_x, a.axis_y));
    } else if (a.mode == "strip") {
        const auto rows = read_csv(a.input);
        const auto idx = header_index(rows[0]);
        for (const char* col : {"word1", "word2", "cosine", "label1", "label2"}) {
            if (!idx.count(col)) throw Error(a.input + " lacks column \"" + col + "\"");
        }
        antonym::AlignmentRanking ranking;
        ranking.axis = a.axis;
        ranking.model = a.model;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& row = rows[i];
            antonym::AlignmentEntry e;
            e.pair.word1 = row[idx.at("word1")];
            e.pair.word2 = row[idx.at("word2")];
            e.cosine = parse_double_or_nan(row[idx.at("cosine")]);
            const std::string& l1 = row[idx.at("label1")];
            const std::string& l2 = row[idx.at("label2")];
            e.label1 = l1.empty() ? 0 : static_cast<int>(parse_double_or_nan(l1));
            e.label2 = l2.empty() ? 0 : static_cast<int>(parse_double_or_nan(l2));
            ranking.entries.push_back(std::move(e));
        }
        const std::set<std::string> exclude(a.exclude.begin(), a.exclude.end());
        bundle.add(a.name.empty() ? "alignment_strip.svg" : a.name,
                   report::emit_alignment_strip(ranking, exclude));
    } else {
        throw Error("unknown plot mode \"" + a.mode + "\" (bars|scatter|strip)");
    }
    bundle.flush();
    std::cout << "plot " << a.mode << " -> " << g.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cultural-axis projection and lexicon association screening for word embedding "
                 "models"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--seed", g.seed, "master RNG seed for seeded experiments");
    app.add_option("--threads", g.threads, "worker thread count (never affects results)");
    app.add_option("--out", g.out_dir, "output directory");
    app.add_option("--fallback", g.fallback, "lookup policy: exact|lowercase|subword")
        ->default_str("lowercase");
    app.add_option("--subwords", g.subword_specs,
                   "attach an n-gram table: <model>=<path> (bare path with a single model)");

    ConvertArgs convert_args;
    auto* convert = app.add_subcommand("convert", "convert a model file to the binary cache");
    convert->add_option("--in", convert_args.in, "input model file")->required();
    convert->add_option("--format", convert_args.format, "word2vec-bin|text")->required();
    convert->add_option("--out", convert_args.out, "output cache path")->required();

    ScreenArgs screen_args;
    auto* screen = app.add_subcommand("screen", "project a lexicon onto axes across models");
    screen->add_option("--models", screen_args.models, "model files")->required();
    screen->add_option("--axes", screen_args.axes_dir, "axis config directory")->required();
    screen->add_option("--lexicon", screen_args.lexicon_name, "lexicon name or directory")
        ->required();
    screen->add_option("--lexicons", screen_args.lexicon_root, "lexicon root directory");
    screen->add_flag("--shared-vocab", screen_args.shared_vocab,
                     "intersect the lexicon across all models first");
    screen->add_flag("--dump-projections", screen_args.dump_projections,
                     "write per-word projections.csv");

    ExciseArgs excise_args;
    auto* excise = app.add_subcommand("excise", "pole-excision robustness experiment");
    excise->add_option("--models", excise_args.models, "model files")->required();
    excise->add_option("--axes", excise_args.axes_dir, "axis config directory")->required();
    excise->add_option("--axis", excise_args.axis_name, "restrict to one axis name");
    excise->add_option("--lexicon", excise_args.lexicon_name, "lexicon name or directory")
        ->required();
    excise->add_option("--lexicons", excise_args.lexicon_root, "lexicon root directory");
    excise->add_option("--fractions", excise_args.fractions, "comma-separated excision fractions");
    excise->add_option("--reps", excise_args.reps, "repetitions per fraction");

    EnsembleArgs ensemble_args;
    auto* ensemble = app.add_subcommand("ensemble", "replicate screening across all lexicons");
    ensemble->add_option("--models", ensemble_args.models, "model files")->required();
    ensemble->add_option("--axes", ensemble_args.axes_dir, "axis config directory")->required();
    ensemble->add_option("--lexicons", ensemble_args.lexicon_root, "lexicon root directory");

    AlignArgs align_args;
    auto* align = app.add_subcommand("align", "rank antonym-pair axes by axis alignment");
    align->add_option("--model", align_args.model, "model file")->required();
    align->add_option("--axes", align_args.axes_dir, "axis config directory")->required();
    align->add_option("--axis", align_args.axis_name, "cultural axis name")->required();
    align->add_option("--pairs", align_args.pairs, "two-column antonym TSV")->required();
    align->add_option("--lexicon", align_args.lexicon_name,
                      "restrict to pairs with both words in this lexicon");
    align->add_option("--lexicons", align_args.lexicon_root, "lexicon root directory");
    align->add_option("--top-k", align_args.top_k, "ranking length (0 = all)");
    align->add_option("--exclude", align_args.exclude, "plot-level word exclusion");

    GroundTruthArgs gt_args;
    auto* groundtruth =
        app.add_subcommand("groundtruth", "correlate projections with an external metric");
    groundtruth->add_option("--model", gt_args.model, "model file")->required();
    groundtruth->add_option("--axes", gt_args.axes_dir, "axis config directory")->required();
    groundtruth->add_option("--axis", gt_args.axis_name, "cultural axis name")->required();
    groundtruth->add_option("--targets", gt_args.targets, "word,value CSV")->required();

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "similarity and analogy benchmarks");
    eval->add_option("--model", eval_args.model, "model file")->required();
    eval->add_option("--suite", eval_args.suite, "all|similarity|analogy");
    eval->add_option("--datasets", eval_args.datasets, "dataset root directory");
    eval->add_option("--limit", eval_args.vocab_limit, "vocabulary restriction (top-k rows)");
    eval->add_flag("--strict", eval_args.strict, "count unresolved quads as wrong");
    eval->add_flag("--3cosmul", eval_args.use_3cosmul, "diagnostic scorer (not for tables)");

    std::string lexicon_stats_name;
    std::string lexicon_root = "data/lexicons";
    auto* lexicon_cmd = app.add_subcommand("lexicon", "lexicon utilities");
    auto* lexicon_stats = lexicon_cmd->add_subcommand("stats", "print lexicon statistics");
    lexicon_stats->add_option("name", lexicon_stats_name, "lexicon name or directory")->required();
    lexicon_stats->add_option("--lexicons", lexicon_root, "lexicon root directory");

    PlotArgs plot_args;
    auto* plot = app.add_subcommand("plot", "re-render figures from report CSVs");
    plot->add_option("mode", plot_args.mode, "bars|scatter|strip")->required();
    plot->add_option("--in", plot_args.input, "input CSV")->required();
    plot->add_option("--name", plot_args.name, "output file name");
    plot->add_option("--model", plot_args.model, "model name filter");
    plot->add_option("--axis-x", plot_args.axis_x, "x axis name (scatter)");
    plot->add_option("--axis-y", plot_args.axis_y, "y axis name (scatter)");
    plot->add_option("--axis", plot_args.axis, "axis name (strip)");
    plot->add_option("--exclude", plot_args.exclude, "plot-level word exclusion");

    // global flags may appear after the subcommand name
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        std::cout << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    kernels::set_threads(g.threads);
    const std::string command_line = join_args(argc, argv);

    try {
        if (convert->parsed()) return run_convert(convert_args);
        if (screen->parsed()) return run_screen(screen_args, g, command_line);
        if (excise->parsed()) return run_excise(excise_args, g, command_line);
        if (ensemble->parsed()) return run_ensemble(ensemble_args, g, command_line);
        if (align->parsed()) return run_align(align_args, g, command_line);
        if (groundtruth->parsed()) return run_groundtruth(gt_args, g, command_line);
        if (eval->parsed()) return run_eval(eval_args, g, command_line);
        if (lexicon_cmd->parsed()) {
            if (!lexicon_stats->parsed()) {
                std::cerr << lexicon_cmd->help();
                return 2;
            }
            return run_lexicon_stats(lexicon_stats_name, lexicon_root);
        }
        if (plot->parsed()) return run_plot(plot_args, g, command_line);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << app.help();
    return 2;
}
