#ifndef AXISPROBE_LEXICON_HPP
#define AXISPROBE_LEXICON_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axisprobe/embedding.hpp"

namespace axisprobe::lexicon {

enum class Kind { binary, graded };
std::string_view to_string(Kind k);

struct Entry {
    std::string word;
    double score = 0.0;  // binary lexicons: exactly +1/-1; graded: native scale
    std::optional<std::string> sense_tag;
    std::optional<double> usage_percent;  // in [0, 100]
};

struct SentimentLexicon {
    std::string name;
    Kind kind = Kind::binary;
    std::map<std::string, Entry> entries;  // one entry per word, sorted
    std::size_t annotation_count = 0;      // raw rows before sense resolution
    std::vector<std::string> notes;        // resolution log: fallbacks, drops, mappings

    std::size_t size() const { return entries.size(); }
    std::size_t count_positive() const;
    std::size_t count_negative() const;
};

// Harvard-General-Inquirer-style spreadsheet export: Entry column with "#n"
// sense markers, Positiv/Negativ label columns, usage percentages ("NN%")
// in the trailing tag/definition fields. Multi-sense words resolve to the
// sense with the highest usage percent; missing percentages fall back to
// the first-listed sense (logged); exact ties keep the positive sense.
SentimentLexicon parse_hgi(const std::string& path);

struct FormatSpec {
    std::string name;
    Kind kind = Kind::binary;
    std::string layout = "columns";  // "columns" or "hgi"
    char separator = ',';
    bool has_header = false;
    int word_column = 0;
    int score_column = 1;
    std::map<std::string, double> score_map;  // empty: parse scores as numbers
    bool filter_non_words = true;             // drop emoticons and other non-word entries
    std::string data_file;                    // relative to the lexicon directory
};

// <dir>/format.json
FormatSpec load_format_spec(const std::string& dir);

// Column-mapped parser for everything that is not HGI-shaped. Words are
// lowercased; entries with embedded spaces map to their underscore form;
// binary lexicons reject any score other than exactly +1/-1.
SentimentLexicon parse_generic(const std::string& path, const FormatSpec& spec);

// Load one lexicon directory (data file + format.json), dispatching on the
// declared layout.
SentimentLexicon load_lexicon(const std::string& dir);

// All lexicon subdirectories under a root, sorted by name.
std::vector<SentimentLexicon> load_lexicon_set(const std::string& root);

struct UnionEntry {
    int positive_votes = 0;
    int negative_votes = 0;
    // (lexicon name, score) in lexicon order
    std::vector<std::pair<std::string, double>> scores;

    // +1 / -1 majority polarity; 0 for a tie (kept in the union, excluded
    // from polarity plots)
    int majority() const;
};

struct UnionVocabulary {
    std::map<std::string, UnionEntry> words;

    std::size_t size() const { return words.size(); }
    std::size_t count_majority(int polarity) const;
};

UnionVocabulary union_vocabulary(std::span<const SentimentLexicon> lexicons);

struct ResolvedWord {
    std::string word;
    double score = 0.0;
    embedding::MatchKind via = embedding::MatchKind::exact;
};

// Lexicon rows gathered against a model: the projection-ready matrix plus
// the coverage bookkeeping every bias cell reports.
struct ResolvedLexicon {
    std::vector<ResolvedWord> words;   // lexicon (sorted) order
    std::vector<float> matrix;         // words.size() x dim, row-major
    std::vector<std::string> unresolved;
    std::size_t dim = 0;
    double coverage = 0.0;  // resolved / lexicon size
};

ResolvedLexicon intersect_with_model(const SentimentLexicon& lexicon,
                                     const embedding::EmbeddingModel& model,
                                     embedding::Fallback fallback);

}  // namespace axisprobe::lexicon

#endif
