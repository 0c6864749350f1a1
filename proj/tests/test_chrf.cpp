#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "igtaug/chrf.hpp"
#include "igtaug/io.hpp"
#include "igtaug/rng.hpp"

using namespace igtaug;

namespace {

struct FrozenCases {
    double corpus_score = -1.0;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<double> scores;
};

// tests/data/chrf_cases.tsv: "# corpus_chrf\t<score>" plus hyp/ref/score rows
FrozenCases load_frozen_cases() {
    FrozenCases cases;
    std::istringstream in(
        read_file(std::string(IGTAUG_SOURCE_DIR) + "/tests/data/chrf_cases.tsv"));
    std::string line;
    const std::string corpus_tag = "# corpus_chrf\t";
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind(corpus_tag, 0) == 0)
                cases.corpus_score = std::stod(line.substr(corpus_tag.size()));
            continue;
        }
        std::size_t t1 = line.find('\t');
        std::size_t t2 = line.find('\t', t1 + 1);
        REQUIRE(t1 != std::string::npos);
        REQUIRE(t2 != std::string::npos);
        cases.pairs.emplace_back(line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1));
        cases.scores.push_back(std::stod(line.substr(t2 + 1)));
    }
    REQUIRE(cases.corpus_score >= 0.0);
    REQUIRE(cases.pairs.size() > 100);
    return cases;
}

} // namespace

TEST_CASE("character n-grams respect the boundary mode", "[chrf]") {
    auto crossing = char_ngrams("ab c", 2, BoundaryMode::crossing);
    CHECK(crossing == std::map<std::string, std::int64_t>{{"ab", 1}, {"bc", 1}});
    auto internal = char_ngrams("ab c", 2, BoundaryMode::word_internal);
    CHECK(internal == std::map<std::string, std::int64_t>{{"ab", 1}});
    auto counted = char_ngrams("aaa", 2, BoundaryMode::crossing);
    CHECK(counted == std::map<std::string, std::int64_t>{{"aa", 2}});
    CHECK_THROWS_AS(char_ngrams("x", 0, BoundaryMode::crossing), ConfigError);
}

TEST_CASE("n-grams are codepoints, not bytes", "[chrf]") {
    // "río" is three codepoints; byte-wise it would be four
    auto grams = char_ngrams("río", 3, BoundaryMode::crossing);
    CHECK(grams == std::map<std::string, std::int64_t>{{"río", 1}});
}

TEST_CASE("a hand-computed score matches", "[chrf]") {
    // "abc" vs "abd": P1=R1=2/3, P2=R2=1/2, order 3 contributes zero;
    // mean of (2/3, 1/2, 0) * 100
    ChrfConfig cfg;
    cfg.max_n = 3;
    ChrfScore s = chrf("abc", "abd", cfg);
    CHECK(s.score == Catch::Approx(38.888888888888886).margin(1e-9));
    REQUIRE(s.per_n.size() == 3);
    CHECK(s.per_n[0].stats.hyp_grams == 3);
    CHECK(s.per_n[0].stats.ref_grams == 3);
    CHECK(s.per_n[0].stats.match_grams == 2);
    CHECK(s.per_n[2].stats.match_grams == 0);
}

TEST_CASE("sentence scores match the frozen reference", "[chrf]") {
    FrozenCases cases = load_frozen_cases();
    for (std::size_t i = 0; i < cases.pairs.size(); ++i) {
        ChrfScore s = chrf(cases.pairs[i].first, cases.pairs[i].second);
        INFO("case " << i << ": '" << cases.pairs[i].first << "' vs '"
                     << cases.pairs[i].second << "'");
        CHECK(s.score == Catch::Approx(cases.scores[i]).margin(1e-4));
    }
}

TEST_CASE("the corpus score matches the frozen reference", "[chrf]") {
    FrozenCases cases = load_frozen_cases();
    ChrfScore s = chrf_corpus(cases.pairs);
    CHECK(s.score == Catch::Approx(cases.corpus_score).margin(1e-4));
}

TEST_CASE("micro aggregation differs from averaging sentence scores", "[chrf]") {
    std::vector<std::pair<std::string, std::string>> pairs = {
        {"abc", "abc"}, {"wxyz", "abcd"}};
    double avg = (chrf("abc", "abc").score + chrf("wxyz", "abcd").score) / 2.0;
    CHECK(chrf_corpus(pairs).score != Catch::Approx(avg).margin(1e-6));
}

TEST_CASE("degenerate inputs have pinned scores", "[chrf]") {
    CHECK(chrf("", "").score == 100.0); // both raw-empty: nothing to get wrong
    CHECK(chrf("abc", "abc").score == 100.0);
    CHECK(chrf("", "abc").score == 0.0);
    CHECK(chrf("abc", "").score == 0.0);
    // whitespace-only is not raw-empty, and stripping leaves no grams on
    // either side, so no order is effective and the score bottoms out
    CHECK(chrf("   ", "").score == 0.0);
    CHECK(chrf(" \t ", "  ").score == 0.0);
}

TEST_CASE("corpus scoring validates input", "[chrf]") {
    CHECK_THROWS_AS(chrf_corpus({}), DataError);
    ChrfConfig bad;
    bad.max_n = 0;
    CHECK_THROWS_AS(chrf("a", "b", bad), ConfigError);
    bad.max_n = 6;
    bad.beta = 0.0;
    CHECK_THROWS_AS(chrf("a", "b", bad), ConfigError);
}

TEST_CASE("an all-empty corpus scores 100", "[chrf]") {
    std::vector<std::pair<std::string, std::string>> pairs = {{"", ""}, {"", ""}};
    CHECK(chrf_corpus(pairs).score == 100.0);
    // one non-empty pair switches to the usual formula
    pairs.push_back({"abc", "abc"});
    CHECK(chrf_corpus(pairs).score == 100.0); // still perfect, via matching grams
    pairs.push_back({"zzz", "abc"});
    CHECK(chrf_corpus(pairs).score < 100.0);
}

TEST_CASE("the word-internal variant ignores word order exactly", "[chrf]") {
    ChrfScore reordered = modified_chrf("sat the cat", "the cat sat");
    CHECK(reordered.score == 100.0);
    CHECK(chrf("sat the cat", "the cat sat").score < 100.0);

    // equality is exact because only integer statistics enter the formula
    ChrfScore a = modified_chrf("wi' neen tb'ank juntir", "juntir tb'ank wi' neen");
    CHECK(a.score == 100.0);
}

TEST_CASE("word-internal scores agree pairwise under permutations of both sides", "[chrf]") {
    std::vector<std::string> words = {"wi'", "neen", "tb'ank", "juntir", "que", "hacer"};
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::string> hyp = words, ref = words;
        rng.shuffle(hyp);
        rng.shuffle(ref);
        hyp.resize(4);
        ref.resize(5);
        std::string h = join(hyp), r = join(ref);
        std::vector<std::string> h2 = hyp, r2 = ref;
        rng.shuffle(h2);
        rng.shuffle(r2);
        double base = modified_chrf(h, r).score;
        double perm = modified_chrf(join(h2), join(r2)).score;
        CHECK(base == perm); // bit-identical, not approximate
    }
}

TEST_CASE("word-internal corpus scoring is also order-insensitive", "[chrf]") {
    std::vector<std::pair<std::string, std::string>> a = {
        {"the cat sat", "cat the sat"}, {"wi' neen", "neen wi'"}};
    std::vector<std::pair<std::string, std::string>> b = {
        {"sat the cat", "sat cat the"}, {"neen wi'", "wi' neen"}};
    CHECK(modified_chrf_corpus(a).score == modified_chrf_corpus(b).score);
    CHECK(modified_chrf_corpus(a).score == 100.0);
}

TEST_CASE("malformed UTF-8 does not crash scoring", "[chrf]") {
    std::string bad = "ab\xffzz";
    ChrfScore s = chrf(bad, bad);
    CHECK(s.score == 100.0);
    CHECK(chrf(bad, "abzz").score < 100.0);
}
