#include "axisprobe/antonym.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_set>

#include "axisprobe/errors.hpp"
#include "axisprobe/numeric.hpp"

namespace axisprobe::antonym {

namespace {

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
    return s.substr(b);
}

}  // namespace

PairLoadReport load_antonym_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open antonym pair file: " + path);

    PairLoadReport report;
    std::unordered_set<std::string> seen;  // canonical "min\x1fmax" keys
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("expected two tab-separated words", 0, line_no);
        const std::string w1 = trim(line.substr(0, tab));
        const std::string w2 = trim(line.substr(tab + 1));
        if (w1.empty() || w2.empty())
            throw ParseError("empty word in antonym pair", 0, line_no);
        if (w1 == w2) {
            ++report.self_pairs_skipped;
            continue;
        }
        const std::string key = w1 < w2 ? w1 + "\x1f" + w2 : w2 + "\x1f" + w1;
        if (!seen.insert(key).second) {
            ++report.duplicates_dropped;
            continue;
        }
        report.pairs.push_back({w1, w2});
    }
    if (report.pairs.empty()) throw ParseError("no antonym pairs in " + path);
    return report;
}

std::vector<double> pair_axis(const embedding::EmbeddingModel& model, const AntonymPair& pair,
                              embedding::Fallback fallback) {
    const auto v1 = model.lookup(pair.word1, fallback);
    const auto v2 = model.lookup(pair.word2, fallback);
    if (!v1 || !v2)
        throw PairUnresolved("pair (" + pair.word1 + ", " + pair.word2 +
                             ") does not fully resolve in model " + model.name());
    std::vector<double> diff(model.dim());
    for (std::size_t i = 0; i < diff.size(); ++i) {
        diff[i] = static_cast<double>((*v2)[i]) - static_cast<double>((*v1)[i]);
    }
    const double n = numeric::norm(std::span<const double>(diff));
    if (n < 1e-9)
        throw DegenerateAxis("antonym pair (" + pair.word1 + ", " + pair.word2 +
                             ") maps to identical vectors");
    for (double& x : diff) x /= n;
    return diff;
}

AlignmentRanking alignment_ranking(const embedding::EmbeddingModel& model,
                                   const axis::CulturalAxis& cultural_axis,
                                   std::span<const AntonymPair> pairs, std::size_t top_k,
                                   embedding::Fallback fallback) {
    AlignmentRanking ranking;
    ranking.axis = cultural_axis.name;
    ranking.model = model.name();
    ranking.pairs_considered = pairs.size();

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> cosines(pairs.size(), nan);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(pairs.size()); ++i) {
        try {
            const std::vector<double> dir = pair_axis(model, pairs[i], fallback);
            cosines[i] = numeric::dot(std::span<const double>(dir),
                                      std::span<const double>(cultural_axis.direction));
        } catch (const Error&) {
            // unresolved or degenerate: excluded, counted below
        }
    }

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (std::isnan(cosines[i])) {
            ++ranking.pairs_unresolved;
            continue;
        }
        AlignmentEntry e;
        e.pair = pairs[i];
        e.cosine = cosines[i];
        ranking.entries.push_back(std::move(e));
    }
    if (ranking.entries.empty())
        throw EmptyResult("no antonym pair resolves in model " + model.name());

    // exact-equality ties break lexicographically; a fuzzy comparator would
    // not be a strict weak ordering
    std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                     [](const AlignmentEntry& a, const AlignmentEntry& b) {
                         const double ma = std::fabs(a.cosine);
                         const double mb = std::fabs(b.cosine);
                         if (ma != mb) return ma > mb;
                         return a.pair.word1 < b.pair.word1;
                     });
    if (top_k > 0 && ranking.entries.size() > top_k) ranking.entries.resize(top_k);
    return ranking;
}

AlignmentRanking sentiment_filtered_alignment(const embedding::EmbeddingModel& model,
                                              const axis::CulturalAxis& cultural_axis,
                                              std::span<const AntonymPair> pairs,
                                              const lexicon::SentimentLexicon& lex,
                                              std::size_t top_k, embedding::Fallback fallback) {
    std::vector<AntonymPair> labeled;
    for (const auto& p : pairs) {
        if (lex.entries.count(p.word1) && lex.entries.count(p.word2)) labeled.push_back(p);
    }
    if (labeled.empty())
        throw EmptyResult("no antonym pair has both words in lexicon \"" + lex.name + "\"");

    AlignmentRanking ranking =
        alignment_ranking(model, cultural_axis, labeled, top_k, fallback);
    for (auto& e : ranking.entries) {
        const double s1 = lex.entries.at(e.pair.word1).score;
        const double s2 = lex.entries.at(e.pair.word2).score;
        e.label1 = s1 > 0 ? 1 : (s1 < 0 ? -1 : 0);
        e.label2 = s2 > 0 ? 1 : (s2 < 0 ? -1 : 0);
    }
    return ranking;
}

}  // namespace axisprobe::antonym
