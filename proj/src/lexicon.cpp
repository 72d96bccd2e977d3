#include "axisprobe/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "axisprobe/errors.hpp"

namespace axisprobe::lexicon {

namespace {

std::string ascii_lower(std::string s) {
    for (char& c : s) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return s;
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

// A usable entry has at least one letter and only word characters. Keeps
// underscores (phrase vocab), apostrophes and hyphens; rejects emoticons,
// bare numbers and punctuation.
bool is_word_entry(const std::string& w) {
    bool has_letter = false;
    for (char c : w) {
        if (c >= 'a' && c <= 'z') {
            has_letter = true;
        } else if (!(c == '_' || c == '-' || c == '\'' || (c >= '0' && c <= '9'))) {
            return false;
        }
    }
    return has_letter;
}

// First "NN%" or "NN.N%" occurrence anywhere in the field list.
std::optional<double> find_usage_percent(std::span<const std::string> fields) {
    for (const auto& f : fields) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(f[i]))) continue;
            std::size_t j = i;
            while (j < f.size() && (std::isdigit(static_cast<unsigned char>(f[j])) || f[j] == '.')) ++j;
            if (j < f.size() && f[j] == '%') {
                double v = 0.0;
                auto res = std::from_chars(f.data() + i, f.data() + j, v);
                if (res.ec == std::errc() && v >= 0.0 && v <= 100.0) return v;
            }
            i = j;
        }
    }
    return std::nullopt;
}

char parse_separator(const std::string& s) {
    if (s == "\\t" || s == "tab") return '\t';
    if (s == " " || s == "space") return ' ';
    if (s.size() == 1) return s[0];
    throw ParseError("unsupported separator \"" + s + "\" in format spec");
}

}  // namespace

std::string_view to_string(Kind k) {
    return k == Kind::binary ? "binary" : "graded";
}

std::size_t SentimentLexicon::count_positive() const {
    std::size_t n = 0;
    for (const auto& [w, e] : entries) {
        if (e.score > 0) ++n;
    }
    return n;
}

std::size_t SentimentLexicon::count_negative() const {
    std::size_t n = 0;
    for (const auto& [w, e] : entries) {
        if (e.score < 0) ++n;
    }
    return n;
}

SentimentLexicon parse_hgi(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open lexicon file: " + path);

    SentimentLexicon lex;
    lex.name = "hgi";
    lex.kind = Kind::binary;

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty lexicon file: " + path, 0, 1);
    const char sep = line.find('\t') != std::string::npos ? '\t' : ',';

    std::vector<std::string> header = split(line, sep);
    for (auto& h : header) h = trim(h);
    const auto col_of = [&](std::string_view name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<int>(i);
        }
        return -1;
    };
    const int entry_col = col_of("Entry");
    const int pos_col = col_of("Positiv");
    const int neg_col = col_of("Negativ");
    if (entry_col < 0 || pos_col < 0 || neg_col < 0)
        throw ParseError("missing Entry/Positiv/Negativ columns in " + path, 0, 1);

    struct Sense {
        Entry entry;
        std::size_t order;  // listing order within the word
    };
    std::map<std::string, std::vector<Sense>> by_word;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split(line, sep);
        auto field = [&](int i) -> std::string {
            return i >= 0 && i < static_cast<int>(fields.size()) ? trim(fields[i]) : std::string();
        };
        const std::string raw_entry = field(entry_col);
        if (raw_entry.empty()) throw ParseError("empty Entry field", 0, line_no);
        const bool positive = !field(pos_col).empty();
        const bool negative = !field(neg_col).empty();
        if (positive == negative) continue;  // not a sentiment annotation (or contradictory)

        Entry e;
        std::string word = raw_entry;
        if (const std::size_t hash = word.find('#'); hash != std::string::npos) {
            e.sense_tag = word.substr(hash);
            word.resize(hash);
        }
        e.word = ascii_lower(word);
        e.score = positive ? 1.0 : -1.0;
        e.usage_percent = find_usage_percent(fields);

        auto& senses = by_word[e.word];
        senses.push_back({std::move(e), senses.size()});
        ++lex.annotation_count;
    }

    for (auto& [word, senses] : by_word) {
        std::size_t pick = 0;
        if (senses.size() > 1) {
            const bool all_have_percent =
                std::all_of(senses.begin(), senses.end(),
                            [](const Sense& s) { return s.entry.usage_percent.has_value(); });
            if (!all_have_percent) {
                lex.notes.push_back("multi-sense word \"" + word +
                                    "\" lacks usage percentages; kept first-listed sense");
                pick = 0;
            } else {
                double best = -1.0;
                for (std::size_t i = 0; i < senses.size(); ++i) {
                    const double u = *senses[i].entry.usage_percent;
                    if (u > best) {
                        best = u;
                        pick = i;
                    } else if (u == best && senses[i].entry.score > senses[pick].entry.score) {
                        // equal usage: keep the positive sense
                        pick = i;
                        lex.notes.push_back("multi-sense tie for \"" + word + "\"; kept positive sense");
                    }
                }
            }
        }
        lex.entries.emplace(word, std::move(senses[pick].entry));
    }
    if (lex.entries.empty()) throw ParseError("no sentiment annotations in " + path);
    return lex;
}

FormatSpec load_format_spec(const std::string& dir) {
    namespace fs = std::filesystem;
    const std::string path = (fs::path(dir) / "format.json").string();
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open format spec: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("bad JSON in " + path + ": " + e.what());
    }

    FormatSpec spec;
    spec.name = j.value("name", fs::path(dir).filename().string());
    const std::string kind = j.value("kind", "binary");
    if (kind == "binary") {
        spec.kind = Kind::binary;
    } else if (kind == "graded") {
        spec.kind = Kind::graded;
    } else {
        throw ParseError("unknown lexicon kind \"" + kind + "\" in " + path);
    }
    spec.layout = j.value("layout", "columns");
    if (spec.layout != "columns" && spec.layout != "hgi")
        throw ParseError("unknown layout \"" + spec.layout + "\" in " + path);
    spec.separator = parse_separator(j.value("separator", ","));
    spec.has_header = j.value("has_header", false);
    spec.word_column = j.value("word_column", 0);
    spec.score_column = j.value("score_column", 1);
    spec.filter_non_words = j.value("filter_non_words", true);
    if (j.contains("score_map")) {
        for (const auto& [token, value] : j.at("score_map").items()) {
            spec.score_map.emplace(token, value.get<double>());
        }
    }
    spec.data_file = j.value("data_file", "");
    if (spec.data_file.empty()) {
        // default: the single data.* file next to format.json
        for (const auto& entry : fs::directory_iterator(dir)) {
            const std::string stem = entry.path().stem().string();
            if (stem == "data") {
                spec.data_file = entry.path().filename().string();
                break;
            }
        }
        if (spec.data_file.empty()) throw ParseError("no data file declared or found in " + dir);
    }
    return spec;
}

SentimentLexicon parse_generic(const std::string& path, const FormatSpec& spec) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open lexicon file: " + path);

    SentimentLexicon lex;
    lex.name = spec.name;
    lex.kind = spec.kind;

    std::string line;
    std::size_t line_no = 0;
    std::size_t dropped = 0;
    if (spec.has_header) {
        std::getline(in, line);
        ++line_no;
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split(line, spec.separator);
        const int needed = std::max(spec.word_column, spec.score_column);
        if (needed >= static_cast<int>(fields.size()))
            throw ParseError("line has too few columns", 0, line_no);

        std::string word = ascii_lower(trim(fields[spec.word_column]));
        if (word.empty()) throw ParseError("empty word field", 0, line_no);
        if (word.find(' ') != std::string::npos) {
            std::string mapped = word;
            std::replace(mapped.begin(), mapped.end(), ' ', '_');
            lex.notes.push_back("multi-word entry \"" + word + "\" mapped to \"" + mapped + "\"");
            word = std::move(mapped);
        }
        if (spec.filter_non_words && !is_word_entry(word)) {
            ++dropped;
            continue;
        }

        const std::string token = trim(fields[spec.score_column]);
        double score = 0.0;
        if (!spec.score_map.empty()) {
            const auto it = spec.score_map.find(token);
            if (it == spec.score_map.end())
                throw ParseError("unmapped score token \"" + token + "\"", 0, line_no);
            score = it->second;
        } else {
            auto res = std::from_chars(token.data(), token.data() + token.size(), score);
            if (res.ec != std::errc() || res.ptr != token.data() + token.size())
                throw ParseError("unmapped score token \"" + token + "\"", 0, line_no);
        }
        if (!std::isfinite(score)) throw ParseError("non-finite score", 0, line_no);
        if (spec.kind == Kind::binary && score != 1.0 && score != -1.0)
            throw ParseError("binary lexicon requires scores +1/-1, got \"" + token + "\"", 0,
                             line_no);

        ++lex.annotation_count;
        Entry e;
        e.word = word;
        e.score = score;
        auto [it, inserted] = lex.entries.emplace(word, std::move(e));
        if (!inserted)
            lex.notes.push_back("duplicate entry \"" + word + "\" ignored (kept first)");
    }
    if (dropped > 0)
        lex.notes.push_back(std::to_string(dropped) + " non-word entries filtered");
    if (lex.entries.empty()) throw ParseError("no usable entries in " + path);
    return lex;
}

SentimentLexicon load_lexicon(const std::string& dir) {
    namespace fs = std::filesystem;
    const FormatSpec spec = load_format_spec(dir);
    const std::string data = (fs::path(dir) / spec.data_file).string();
    if (spec.layout == "hgi") {
        SentimentLexicon lex = parse_hgi(data);
        lex.name = spec.name;
        return lex;
    }
    return parse_generic(data, spec);
}

std::vector<SentimentLexicon> load_lexicon_set(const std::string& root) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root)) throw ParseError("not a directory: " + root);
    std::vector<std::string> dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory() && fs::exists(entry.path() / "format.json")) {
            dirs.push_back(entry.path().string());
        }
    }
    std::sort(dirs.begin(), dirs.end());
    if (dirs.empty()) throw ParseError("no lexicon directories under " + root);
    std::vector<SentimentLexicon> out;
    out.reserve(dirs.size());
    for (const auto& d : dirs) out.push_back(load_lexicon(d));
    return out;
}

int UnionEntry::majority() const {
    if (positive_votes > negative_votes) return 1;
    if (negative_votes > positive_votes) return -1;
    return 0;
}

std::size_t UnionVocabulary::count_majority(int polarity) const {
    std::size_t n = 0;
    for (const auto& [w, e] : words) {
        if (e.majority() == polarity) ++n;
    }
    return n;
}

UnionVocabulary union_vocabulary(std::span<const SentimentLexicon> lexicons) {
    if (lexicons.empty()) throw InvalidArgument("union of zero lexicons");
    UnionVocabulary u;
    for (const auto& lex : lexicons) {
        for (const auto& [word, entry] : lex.entries) {
            UnionEntry& ue = u.words[word];
            ue.scores.emplace_back(lex.name, entry.score);
            if (entry.score > 0) ++ue.positive_votes;
            if (entry.score < 0) ++ue.negative_votes;
        }
    }
    return u;
}

ResolvedLexicon intersect_with_model(const SentimentLexicon& lexicon,
                                     const embedding::EmbeddingModel& model,
                                     embedding::Fallback fallback) {
    ResolvedLexicon out;
    out.dim = model.dim();
    for (const auto& [word, entry] : lexicon.entries) {
        const auto res = model.resolve(word, fallback);
        if (!res) {
            out.unresolved.push_back(word);
            continue;
        }
        out.words.push_back({word, entry.score, res->via});
        if (res->in_vocab()) {
            const auto row = model.row(res->row);
            out.matrix.insert(out.matrix.end(), row.begin(), row.end());
        } else {
            out.matrix.insert(out.matrix.end(), res->composed.begin(), res->composed.end());
        }
    }
    if (out.words.empty())
        throw EmptyIntersection("lexicon \"" + lexicon.name + "\" shares no vocabulary with model " +
                                model.name());
    out.coverage = static_cast<double>(out.words.size()) / static_cast<double>(lexicon.size());
    return out;
}

}  // namespace axisprobe::lexicon
