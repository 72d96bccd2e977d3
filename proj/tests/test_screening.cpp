#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "axisprobe/errors.hpp"
#include "axisprobe/kernels.hpp"
#include "axisprobe/screening.hpp"
#include "support/helpers.hpp"

using namespace axisprobe;
using testsupport::make_planted;
using testsupport::TempDir;

namespace {

screening::ScreenOptions exact_options() {
    screening::ScreenOptions o;
    o.fallback = embedding::Fallback::exact;
    return o;
}

const screening::BiasResult& only_ok_cell(const screening::BiasMatrix& m) {
    REQUIRE(m.cells.size() >= 1);
    REQUIRE(m.cells[0].ok());
    return m.cells[0];
}

}  // namespace

TEST_CASE("planted correlation is recovered within tolerance") {
    for (const double rho : {0.5, -0.5}) {
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            const auto planted = make_planted(rho, seed, 2000);
            const auto matrix =
                screening::screen(std::span(&planted.model, 1), std::span(&planted.axis_spec, 1),
                                  planted.lexicon, exact_options());
            const auto& cell = only_ok_cell(matrix);
            CHECK(std::fabs(cell.correlation.coefficient - planted.target_rho) < 0.05);
            CHECK(cell.coverage == 1.0);
        }
    }
}

TEST_CASE("null plant is non-significant") {
    const auto planted = make_planted(0.0, 11, 2000);
    const auto matrix = screening::screen(std::span(&planted.model, 1),
                                          std::span(&planted.axis_spec, 1), planted.lexicon,
                                          exact_options());
    const auto& cell = only_ok_cell(matrix);
    CHECK(std::fabs(cell.correlation.coefficient) < 0.05);
    CHECK(cell.p_adjusted >= 0.01);
}

TEST_CASE("constant lexicon makes the cell undefined, not zero") {
    auto planted = make_planted(0.5, 4, 400);
    for (auto& [w, e] : planted.lexicon.entries) e.score = 1.0;
    const auto matrix = screening::screen(std::span(&planted.model, 1),
                                          std::span(&planted.axis_spec, 1), planted.lexicon,
                                          exact_options());
    REQUIRE(matrix.cells.size() == 1);
    CHECK(matrix.cells[0].status == screening::CellStatus::undefined_degenerate);
}

TEST_CASE("negating lexicon scores negates every r exactly") {
    auto planted = make_planted(0.4, 5, 600);
    const auto base = screening::screen(std::span(&planted.model, 1),
                                        std::span(&planted.axis_spec, 1), planted.lexicon,
                                        exact_options());
    for (auto& [w, e] : planted.lexicon.entries) e.score = -e.score;
    const auto flipped = screening::screen(std::span(&planted.model, 1),
                                           std::span(&planted.axis_spec, 1), planted.lexicon,
                                           exact_options());
    CHECK(flipped.cells[0].correlation.coefficient == -base.cells[0].correlation.coefficient);
}

TEST_CASE("pole swap negates every r exactly") {
    const auto planted = make_planted(0.4, 6, 600);
    const auto base = screening::screen(std::span(&planted.model, 1),
                                        std::span(&planted.axis_spec, 1), planted.lexicon,
                                        exact_options());
    axis::AxisSpec swapped = planted.axis_spec;
    std::swap(swapped.pole1, swapped.pole2);
    const auto flipped = screening::screen(std::span(&planted.model, 1), std::span(&swapped, 1),
                                           planted.lexicon, exact_options());
    CHECK(flipped.cells[0].correlation.coefficient == -base.cells[0].correlation.coefficient);
}

TEST_CASE("family size bookkeeping") {
    const auto planted = make_planted(0.5, 7, 400);
    axis::AxisSpec second = planted.axis_spec;
    second.name = "second_axis";
    std::swap(second.pole1, second.pole2);
    const std::vector<axis::AxisSpec> axes{planted.axis_spec, second};
    const auto matrix =
        screening::screen(std::span(&planted.model, 1), axes, planted.lexicon, exact_options());
    CHECK(matrix.family_size == 2);
    REQUIRE(matrix.cells.size() == 2);
    for (const auto& cell : matrix.cells) {
        REQUIRE(cell.ok());
        CHECK(cell.p_adjusted == stats::bonferroni(cell.correlation.p_raw, 2));
    }
}

TEST_CASE("skip policies") {
    const auto planted = make_planted(0.5, 8, 300);
    SUBCASE("pole below coverage threshold") {
        axis::AxisSpec spec = planted.axis_spec;
        // half the words of pole1 are unknown: coverage 0.5 < 0.6
        const std::size_t n = spec.pole1.words.size();
        for (std::size_t i = 0; i < n; ++i) spec.pole1.words.push_back("ghost" + std::to_string(i));
        spec.min_pole_coverage = 0.6;
        const auto matrix = screening::screen(std::span(&planted.model, 1), std::span(&spec, 1),
                                              planted.lexicon, exact_options());
        CHECK(matrix.cells[0].status == screening::CellStatus::skipped_pole_coverage);
    }
    SUBCASE("pole entirely unresolved") {
        axis::AxisSpec spec = planted.axis_spec;
        spec.pole1.words = {"ghost1", "ghost2"};
        const auto matrix = screening::screen(std::span(&planted.model, 1), std::span(&spec, 1),
                                              planted.lexicon, exact_options());
        CHECK(matrix.cells[0].status == screening::CellStatus::skipped_pole_error);
    }
    SUBCASE("empty lexicon intersection") {
        lexicon::SentimentLexicon off;
        off.name = "off";
        off.kind = lexicon::Kind::binary;
        off.entries.emplace("zzz", lexicon::Entry{"zzz", 1.0, {}, {}});
        off.entries.emplace("qqq", lexicon::Entry{"qqq", -1.0, {}, {}});
        const auto matrix = screening::screen(std::span(&planted.model, 1),
                                              std::span(&planted.axis_spec, 1), off,
                                              exact_options());
        CHECK(matrix.cells[0].status == screening::CellStatus::skipped_empty_intersection);
    }
}

TEST_CASE("coverage is monotone under vocabulary restriction") {
    const auto planted = make_planted(0.5, 9, 500);
    const auto full = lexicon::intersect_with_model(planted.lexicon, planted.model,
                                                    embedding::Fallback::exact);
    double last = full.coverage;
    for (std::size_t k : {400u, 200u, 60u}) {
        const auto restricted = embedding::restrict_top_k(planted.model, k);
        double cov = 0.0;
        try {
            cov = lexicon::intersect_with_model(planted.lexicon, restricted,
                                                embedding::Fallback::exact)
                      .coverage;
        } catch (const EmptyIntersection&) {
            cov = 0.0;
        }
        CHECK(cov <= last);
        last = cov;
    }
}

TEST_CASE("validation_run on a valence plant") {
    const auto planted = make_planted(0.6, 10, 1500);
    const auto matrix = screening::validation_run(planted.model,
                                                  std::span(&planted.axis_spec, 1),
                                                  planted.lexicon, exact_options());
    const auto& cell = only_ok_cell(matrix);
    CHECK(cell.correlation.coefficient > 0.4);
    CHECK(cell.p_adjusted < 0.01);

    axis::AxisSpec swapped = planted.axis_spec;
    std::swap(swapped.pole1, swapped.pole2);
    const auto rev = screening::validation_run(planted.model, std::span(&swapped, 1),
                                               planted.lexicon, exact_options());
    CHECK(rev.cells[0].correlation.coefficient < 0.0);
}

TEST_CASE("excision: fraction zero equals screen exactly") {
    const auto planted = make_planted(0.5, 12, 800);
    const auto matrix = screening::screen(std::span(&planted.model, 1),
                                          std::span(&planted.axis_spec, 1), planted.lexicon,
                                          exact_options());
    const std::vector<double> fractions{};
    const auto report =
        screening::excision_experiment(std::span(&planted.model, 1), planted.axis_spec,
                                       planted.lexicon, fractions, 5, 99, exact_options());
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].fraction == 0.0);
    CHECK(report.rows[0].mean_correlation == matrix.cells[0].correlation.coefficient);
}

TEST_CASE("excision: planted model is stable at fraction 0.25") {
    const auto planted = make_planted(0.5, 13, 1200);
    const std::vector<double> fractions{0.25};
    const auto report =
        screening::excision_experiment(std::span(&planted.model, 1), planted.axis_spec,
                                       planted.lexicon, fractions, 100, 7, exact_options());
    REQUIRE(report.rows.size() == 2);
    const auto& row = report.rows[1];
    CHECK(row.fraction == 0.25);
    CHECK(std::fabs(row.mean_correlation - report.rows[0].mean_correlation) < 0.05);
    CHECK(row.sign_preserved >= 0.99);
}

TEST_CASE("excision: identical results for any thread count") {
    const auto planted = make_planted(0.5, 14, 400);
    const std::vector<double> fractions{0.25, 0.5};
    kernels::set_threads(1);
    const auto serial =
        screening::excision_experiment(std::span(&planted.model, 1), planted.axis_spec,
                                       planted.lexicon, fractions, 40, 1234, exact_options());
    kernels::set_threads(8);
    const auto parallel =
        screening::excision_experiment(std::span(&planted.model, 1), planted.axis_spec,
                                       planted.lexicon, fractions, 40, 1234, exact_options());
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].mean_correlation == parallel.rows[i].mean_correlation);
        CHECK(serial.rows[i].sign_preserved == parallel.rows[i].sign_preserved);
        CHECK(serial.rows[i].per_model_mean == parallel.rows[i].per_model_mean);
    }
}

TEST_CASE("ensemble agreement") {
    const auto planted = make_planted(0.5, 15, 600);

    SUBCASE("two identical lexicons agree perfectly") {
        axis::AxisSpec second = planted.axis_spec;
        second.name = "axis_b";
        std::swap(second.pole1, second.pole2);
        axis::AxisSpec third = planted.axis_spec;
        third.name = "axis_c";
        third.pole1.words.resize(4);
        const std::vector<axis::AxisSpec> axes{planted.axis_spec, second, third};

        lexicon::SentimentLexicon copy = planted.lexicon;
        copy.name = "copy";
        const std::vector<lexicon::SentimentLexicon> lexicons{planted.lexicon, copy};
        const auto report = screening::ensemble_summary(std::span(&planted.model, 1), axes,
                                                        lexicons, exact_options());
        CHECK(report.lexicon_agreement.mean_off_diagonal == doctest::Approx(1.0));
        CHECK(report.matrices.size() == 2);
        // ensemble family covers models x axes x lexicons
        CHECK(report.matrices[0].family_size == 1 * 3 * 2);
    }

    SUBCASE("independently shuffled scores do not agree") {
        // many single-word-pole axes give a long bias vector per lexicon
        std::vector<axis::AxisSpec> axes;
        auto words = planted.lexicon.entries.begin();
        for (int i = 0; i < 52; ++i) {
            axis::AxisSpec spec;
            spec.name = "pair" + std::string(i < 10 ? "0" : "") + std::to_string(i);
            spec.pole1.name = "p1";
            spec.pole1.words = {words->first};
            ++words;
            spec.pole2.name = "p2";
            spec.pole2.words = {words->first};
            ++words;
            axes.push_back(std::move(spec));
        }
        auto shuffle_scores = [](lexicon::SentimentLexicon lex, std::uint64_t seed) {
            std::vector<double> scores;
            for (const auto& [w, e] : lex.entries) scores.push_back(e.score);
            rng::SplitMix64 gen(seed);
            for (std::size_t i = scores.size() - 1; i > 0; --i) {
                std::swap(scores[i], scores[gen.bounded(i + 1)]);
            }
            std::size_t i = 0;
            for (auto& [w, e] : lex.entries) e.score = scores[i++];
            return lex;
        };
        auto lex_a = shuffle_scores(planted.lexicon, 100);
        lex_a.name = "shuffle_a";
        auto lex_b = shuffle_scores(planted.lexicon, 200);
        lex_b.name = "shuffle_b";
        const std::vector<lexicon::SentimentLexicon> lexicons{lex_a, lex_b};
        const auto report = screening::ensemble_summary(std::span(&planted.model, 1), axes,
                                                        lexicons, exact_options());
        CHECK(report.lexicon_agreement.defined_pairs == 1);
        CHECK(std::fabs(report.lexicon_agreement.mean_off_diagonal) < 0.2);
    }
}

TEST_CASE("ground truth correlation") {
    const auto planted = make_planted(0.5, 16, 400);
    const auto ax = axis::build_axis(planted.model, planted.axis_spec.pole1,
                                     planted.axis_spec.pole2, embedding::Fallback::exact);

    SUBCASE("metric equal to the projection gives r = 1") {
        std::vector<std::pair<std::string, double>> targets;
        std::size_t i = 0;
        for (const auto& [w, e] : planted.lexicon.entries) {
            if (++i > 30) break;
            const auto v = planted.model.lookup(w, embedding::Fallback::exact);
            targets.emplace_back(w, axis::project(ax, std::span<const float>(*v)));
        }
        const auto res = screening::ground_truth_correlation(planted.model, planted.axis_spec,
                                                             targets, embedding::Fallback::exact);
        CHECK(res.pearson.coefficient == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(res.spearman.coefficient == 1.0);
        CHECK(res.points.size() == 30);
    }
    SUBCASE("pearson matches a long-double oracle on a 20-point fixture") {
        std::vector<std::pair<std::string, double>> targets;
        rng::SplitMix64 gen(3);
        std::size_t i = 0;
        for (const auto& [w, e] : planted.lexicon.entries) {
            if (++i > 20) break;
            targets.emplace_back(w, gen.normal() * 10.0 + 50.0);
        }
        const auto res = screening::ground_truth_correlation(planted.model, planted.axis_spec,
                                                             targets, embedding::Fallback::exact);
        long double sx = 0, sy = 0;
        const std::size_t n = res.points.size();
        for (const auto& p : res.points) {
            sx += p.projection;
            sy += p.metric;
        }
        const long double mx = sx / n, my = sy / n;
        long double sxy = 0, sxx = 0, syy = 0;
        for (const auto& p : res.points) {
            sxy += (p.projection - mx) * (p.metric - my);
            sxx += (p.projection - mx) * (p.projection - mx);
            syy += (p.metric - my) * (p.metric - my);
        }
        const double want = static_cast<double>(sxy / std::sqrt(sxx * syy));
        CHECK(std::fabs(res.pearson.coefficient - want) < 1e-12);
    }
    SUBCASE("constant metric degenerates") {
        std::vector<std::pair<std::string, double>> targets;
        std::size_t i = 0;
        for (const auto& [w, e] : planted.lexicon.entries) {
            if (++i > 5) break;
            targets.emplace_back(w, 7.0);
        }
        CHECK_THROWS_AS(screening::ground_truth_correlation(planted.model, planted.axis_spec,
                                                            targets, embedding::Fallback::exact),
                        DegenerateInput);
    }
    SUBCASE("fewer than three resolving targets") {
        std::vector<std::pair<std::string, double>> targets{
            {"w00000", 1.0}, {"missing_a", 2.0}, {"missing_b", 3.0}};
        CHECK_THROWS_AS(screening::ground_truth_correlation(planted.model, planted.axis_spec,
                                                            targets, embedding::Fallback::exact),
                        EmptyIntersection);
    }
}

TEST_CASE("load_targets_csv") {
    TempDir tmp;
    testsupport::write_file(tmp.file("t.csv"), "word,value\nnurse,89.4\nengineer,13\n");
    const auto targets = screening::load_targets_csv(tmp.file("t.csv"));
    REQUIRE(targets.size() == 2);
    CHECK(targets[0].first == "nurse");
    CHECK(targets[0].second == 89.4);

    testsupport::write_file(tmp.file("bad.csv"), "word,value\noops,notanumber\n");
    CHECK_THROWS_AS(screening::load_targets_csv(tmp.file("bad.csv")), ParseError);
}

TEST_CASE("shared vocabulary option") {
    const auto planted = make_planted(0.5, 17, 300);
    // second model missing a third of the lexicon words
    embedding::ModelBuilder builder("third", planted.model.dim());
    for (std::size_t w = 0; w < planted.model.vocab_size(); ++w) {
        if (planted.model.word_at(w).starts_with("w") && w % 3 == 0) continue;
        const auto row = planted.model.row(w);
        builder.add(planted.model.word_at(w), row);
    }
    std::vector<embedding::EmbeddingModel> models{planted.model, builder.build()};

    screening::ScreenOptions opts = exact_options();
    opts.shared_vocab = true;
    const auto matrix =
        screening::screen(models, std::span(&planted.axis_spec, 1), planted.lexicon, opts);
    REQUIRE(matrix.cells.size() == 2);
    REQUIRE(matrix.cells[0].ok());
    REQUIRE(matrix.cells[1].ok());
    // both models see the same resolved count under a shared intersection
    CHECK(matrix.cells[0].n_projected == matrix.cells[1].n_projected);
}
