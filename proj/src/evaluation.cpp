#include "axisprobe/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "axisprobe/errors.hpp"
#include "axisprobe/kernels.hpp"
#include "axisprobe/numeric.hpp"

namespace axisprobe::evaluation {

namespace {

std::string stem_of(const std::string& path) {
    const std::size_t slash = path.find_last_of("/\\");
    const std::size_t start = slash == std::string::npos ? 0 : slash + 1;
    const std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || dot <= start) return path.substr(start);
    return path.substr(start, dot - start);
}

std::vector<std::string> whitespace_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

bool parse_double(const std::string& s, double& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

SimilarityDataset load_similarity_dataset(const std::string& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open similarity dataset: " + path);

    SimilarityDataset ds;
    ds.name = name.empty() ? stem_of(path) : name;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> tok = whitespace_tokens(line);
        double score = 0.0;
        if (tok.size() != 3 || !parse_double(tok[2], score)) {
            if (first_data_line) continue;  // header row
            throw ParseError("expected \"word1 word2 score\"", 0, line_no);
        }
        first_data_line = false;
        const std::string key =
            tok[0] < tok[1] ? tok[0] + "\x1f" + tok[1] : tok[1] + "\x1f" + tok[0];
        if (!seen.insert(key).second) {
            ++ds.duplicates_dropped;
            continue;
        }
        ds.items.push_back({tok[0], tok[1], score});
    }
    if (ds.items.empty()) throw ParseError("no pairs in " + path);
    return ds;
}

AnalogyDataset load_google_analogies(const std::string& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open analogy dataset: " + path);

    AnalogyDataset ds;
    ds.name = name.empty() ? stem_of(path) : name;
    std::string section = "default";
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == ':') {
            std::vector<std::string> tok = whitespace_tokens(line.substr(1));
            section = tok.empty() ? "default" : tok[0];
            continue;
        }
        std::vector<std::string> tok = whitespace_tokens(line);
        if (tok.size() != 4) throw ParseError("expected four words per analogy line", 0, line_no);
        ds.quads.push_back({tok[0], tok[1], tok[2], {tok[3]}, section});
    }
    if (ds.quads.empty()) throw ParseError("no analogy quads in " + path);
    return ds;
}

AnalogyDataset load_bats(const std::string& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open BATS file: " + path);

    struct Row {
        std::string a;
        std::vector<std::string> answers;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw ParseError("expected \"word<TAB>answer[/answer...]\"", 0, line_no);
        Row row;
        row.a = line.substr(0, tab);
        std::string rest = line.substr(tab + 1);
        std::size_t start = 0;
        for (;;) {
            const std::size_t slash = rest.find('/', start);
            const std::string ans = rest.substr(start, slash - start);
            if (!ans.empty()) row.answers.push_back(ans);
            if (slash == std::string::npos) break;
            start = slash + 1;
        }
        if (row.answers.empty()) throw ParseError("row has no answers", 0, line_no);
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw ParseError("BATS file needs at least two rows: " + path);

    AnalogyDataset ds;
    ds.name = name.empty() ? stem_of(path) : name;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (i == j) continue;
            ds.quads.push_back({rows[i].a, rows[i].answers.front(), rows[j].a, rows[j].answers,
                                ds.name});
        }
    }
    return ds;
}

bool is_syntactic_section(const std::string& section) {
    return section.rfind("gram", 0) == 0;
}

AnalogyDataset filter_sections(const AnalogyDataset& dataset, bool syntactic,
                               const std::string& name) {
    AnalogyDataset out;
    out.name = name;
    for (const auto& q : dataset.quads) {
        if (is_syntactic_section(q.section) == syntactic) out.quads.push_back(q);
    }
    return out;
}

SimilarityResult similarity_eval(const embedding::EmbeddingModel& model,
                                 const SimilarityDataset& dataset, embedding::Fallback fallback) {
    std::vector<double> human;
    std::vector<double> cosines;
    for (const auto& item : dataset.items) {
        const auto v1 = model.lookup(item.word1, fallback);
        if (!v1) continue;
        const auto v2 = model.lookup(item.word2, fallback);
        if (!v2) continue;
        human.push_back(item.human_score);
        cosines.push_back(numeric::dot(std::span<const float>(*v1), std::span<const float>(*v2)));
    }
    if (human.empty())
        throw EmptyIntersection("no dataset pair resolves in model " + model.name());

    SimilarityResult out;
    out.pairs_used = human.size();
    out.coverage = static_cast<double>(human.size()) / static_cast<double>(dataset.items.size());
    out.correlation = stats::spearman(human, cosines);
    return out;
}

AnalogyResult analogy_eval(const embedding::EmbeddingModel& model, const AnalogyDataset& dataset,
                           std::size_t vocab_limit, embedding::Fallback fallback,
                           bool strict) {
    if (dataset.quads.empty()) throw InvalidArgument("empty analogy dataset");
    const embedding::EmbeddingModel restricted =
        vocab_limit > 0 ? restrict_top_k(model, vocab_limit) : model;

    // Candidates and exclusions are vocabulary rows, so only in-vocab
    // resolutions count here; subword composition cannot name a row.
    const auto row_of = [&](const std::string& word) -> std::size_t {
        const auto res = restricted.resolve(word, fallback);
        if (res && res->in_vocab()) return res->row;
        return kernels::kNoAnswer;
    };

    AnalogyResult out;
    out.outcomes.resize(dataset.quads.size());

    std::vector<kernels::AnalogyQuery> queries;
    std::vector<std::size_t> query_quad;    // query -> quad index
    std::vector<std::size_t> gold_rows;     // per query
    for (std::size_t qi = 0; qi < dataset.quads.size(); ++qi) {
        const auto& quad = dataset.quads[qi];
        const std::size_t a = row_of(quad.a);
        const std::size_t a_star = row_of(quad.a_star);
        const std::size_t b = row_of(quad.b);
        const std::size_t gold = quad.answers.empty() ? kernels::kNoAnswer
                                                      : row_of(quad.answers.front());
        if (a == kernels::kNoAnswer || a_star == kernels::kNoAnswer || b == kernels::kNoAnswer ||
            gold == kernels::kNoAnswer) {
            if (strict) {
                out.outcomes[qi].attempted = true;  // counted wrong
                ++out.attempted;
            } else {
                ++out.skipped;
            }
            continue;
        }
        queries.push_back({a, a_star, b});
        query_quad.push_back(qi);
        gold_rows.push_back(gold);
    }
    if (queries.empty() && out.attempted == 0)
        throw EmptyIntersection("no analogy quad resolves in model " + model.name());

    std::vector<std::size_t> predicted(queries.size(), kernels::kNoAnswer);
    kernels::analogy_argmax(restricted.vectors_flat().data(), restricted.vocab_size(),
                            restricted.dim(), queries, predicted.data());

    for (std::size_t k = 0; k < queries.size(); ++k) {
        QuadOutcome& o = out.outcomes[query_quad[k]];
        o.attempted = true;
        ++out.attempted;
        if (predicted[k] == kernels::kNoAnswer) continue;
        o.predicted = restricted.word_at(predicted[k]);
        if (predicted[k] == gold_rows[k]) {
            o.correct = true;
            ++out.correct;
        }
    }
    out.accuracy = out.attempted ? static_cast<double>(out.correct) /
                                       static_cast<double>(out.attempted)
                                 : 0.0;
    out.coverage =
        static_cast<double>(out.attempted) / static_cast<double>(dataset.quads.size());
    return out;
}

}  // namespace axisprobe::evaluation
