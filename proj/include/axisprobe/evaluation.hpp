#ifndef AXISPROBE_EVALUATION_HPP
#define AXISPROBE_EVALUATION_HPP

#include <string>
#include <vector>

#include "axisprobe/embedding.hpp"
#include "axisprobe/stats.hpp"

namespace axisprobe::evaluation {

struct SimilarityItem {
    std::string word1;
    std::string word2;
    double human_score = 0.0;
};

struct SimilarityDataset {
    std::string name;
    std::vector<SimilarityItem> items;  // unordered pairs, deduplicated
    std::size_t duplicates_dropped = 0;
};

// "word1 word2 score" per line (space or tab separated); a first line whose
// third token is not numeric is treated as a header.
SimilarityDataset load_similarity_dataset(const std::string& path, const std::string& name = "");

struct AnalogyQuad {
    std::string a;
    std::string a_star;
    std::string b;
    std::vector<std::string> answers;  // first entry is the gold answer
    std::string section;
};

struct AnalogyDataset {
    std::string name;
    std::vector<AnalogyQuad> quads;
};

// Google analogy format: 4 words per line, ": section" header lines.
AnalogyDataset load_google_analogies(const std::string& path, const std::string& name = "");

// BATS category file: "a<TAB>b1/b2/..." rows; quads are all ordered row
// pairs (i, j), i != j, using the first answer of row i as the example
// target. Multiple gold candidates stay attached to the quad, but only the
// first counts as correct.
AnalogyDataset load_bats(const std::string& path, const std::string& name = "");

// "gram..." sections of the Google set are the syntactic half.
bool is_syntactic_section(const std::string& section);
AnalogyDataset filter_sections(const AnalogyDataset& dataset, bool syntactic,
                               const std::string& name);

struct SimilarityResult {
    stats::CorrelationResult correlation;  // Spearman vs human scores
    double coverage = 0.0;                 // resolved pairs / total pairs
    std::size_t pairs_used = 0;
};

// Spearman between human scores and cos(v1, v2) over the resolved pairs.
SimilarityResult similarity_eval(const embedding::EmbeddingModel& model,
                                 const SimilarityDataset& dataset, embedding::Fallback fallback);

struct QuadOutcome {
    bool attempted = false;
    bool correct = false;
    std::string predicted;  // empty when not attempted
};

struct AnalogyResult {
    double accuracy = 0.0;  // correct / attempted
    std::size_t attempted = 0;
    std::size_t correct = 0;
    std::size_t skipped = 0;  // quads with unresolved words (default mode)
    double coverage = 0.0;    // attempted / total
    std::vector<QuadOutcome> outcomes;  // one per quad, dataset order
};

// 3CosAdd over the top-`vocab_limit` rows: predicted = argmax cos(v, b-a+a*)
// excluding {a, a*, b}. Unresolved quads are skipped and counted; with
// strict=true they are counted as attempted-and-wrong instead.
AnalogyResult analogy_eval(const embedding::EmbeddingModel& model, const AnalogyDataset& dataset,
                           std::size_t vocab_limit, embedding::Fallback fallback,
                           bool strict = false);

}  // namespace axisprobe::evaluation

#endif
