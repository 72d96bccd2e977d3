#ifndef AXISPROBE_ANTONYM_HPP
#define AXISPROBE_ANTONYM_HPP

#include <optional>
#include <string>
#include <vector>

#include "axisprobe/axis.hpp"
#include "axisprobe/embedding.hpp"
#include "axisprobe/lexicon.hpp"

namespace axisprobe::antonym {

// Axis direction runs word1 -> word2, as listed in the pair file.
struct AntonymPair {
    std::string word1;
    std::string word2;
};

struct PairLoadReport {
    std::vector<AntonymPair> pairs;   // file order, unordered-deduplicated
    std::size_t duplicates_dropped = 0;
    std::size_t self_pairs_skipped = 0;
};

// Two-column TSV, UTF-8. "a\tb" and "b\ta" are the same pair; self-pairs
// are skipped with a warning count.
PairLoadReport load_antonym_pairs(const std::string& path);

// normalize(v(word2) - v(word1)); the single-word degenerate case of
// build_axis. Throws PairUnresolved when either word is OOV and
// DegenerateAxis when both words map to the same vector.
std::vector<double> pair_axis(const embedding::EmbeddingModel& model, const AntonymPair& pair,
                              embedding::Fallback fallback);

struct AlignmentEntry {
    AntonymPair pair;
    double cosine = 0.0;  // signed: >0 means word2 lies toward pole2
    // polarity labels when a lexicon filter was applied, else 0
    int label1 = 0;
    int label2 = 0;
};

struct AlignmentRanking {
    std::string axis;
    std::string model;
    std::vector<AlignmentEntry> entries;  // descending |cosine|
    std::size_t pairs_unresolved = 0;
    std::size_t pairs_considered = 0;
};

// Cosine of every pair axis against the cultural axis, ranked by
// |cosine| descending; near-ties (< 1e-12 apart) break lexicographically
// on word1 so the ordering is deterministic. top_k == 0 keeps everything.
AlignmentRanking alignment_ranking(const embedding::EmbeddingModel& model,
                                   const axis::CulturalAxis& cultural_axis,
                                   std::span<const AntonymPair> pairs, std::size_t top_k,
                                   embedding::Fallback fallback);

// Ranking restricted to pairs whose BOTH words carry lexicon labels; each
// entry is annotated with the words' polarities for the strip plots.
AlignmentRanking sentiment_filtered_alignment(const embedding::EmbeddingModel& model,
                                              const axis::CulturalAxis& cultural_axis,
                                              std::span<const AntonymPair> pairs,
                                              const lexicon::SentimentLexicon& lex,
                                              std::size_t top_k, embedding::Fallback fallback);

}  // namespace axisprobe::antonym

#endif
