#include <catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "igtaug/experiment.hpp"
#include "igtaug/io.hpp"

using namespace igtaug;

namespace {

Corpus synth_corpus(std::size_t n) {
    Corpus c;
    c.language = "zz";
    for (std::size_t i = 0; i < n; ++i) {
        IgtExample ex;
        ex.id = "s" + std::to_string(i);
        ex.language = "zz";
        ex.surface_words = {"w" + std::to_string(i)};
        ex.gloss_words = {"G" + std::to_string(i)};
        ex.translation = "t" + std::to_string(i);
        c.examples.push_back(std::move(ex));
    }
    return c;
}

const Corpus& usp_sample() {
    static const Corpus c = parse_corpus(
        read_file(std::string(IGTAUG_SOURCE_DIR) + "/data/corpora/uspanteko-sample.txt"), true);
    return c;
}

const Corpus& arp_sample() {
    static const Corpus c = parse_corpus(
        read_file(std::string(IGTAUG_SOURCE_DIR) + "/data/corpora/arapaho-sample.txt"), true);
    return c;
}

std::vector<std::size_t> original_indices(const Corpus& part, const Corpus& whole) {
    std::vector<std::size_t> out;
    for (const auto& ex : part.examples)
        for (std::size_t i = 0; i < whole.examples.size(); ++i)
            if (whole.examples[i].id == ex.id) out.push_back(i);
    return out;
}

} // namespace

TEST_CASE("splits take a ceiling-sized eval slice and keep order", "[experiment]") {
    Corpus c = synth_corpus(100);
    SplitSpec spec;
    auto [train, eval] = make_splits(c, spec);
    CHECK(eval.examples.size() == 5); // ceil(100 * 0.05)
    CHECK(train.examples.size() == 95);
    CHECK(train.language == "zz");

    std::set<std::string> train_ids, eval_ids;
    for (const auto& ex : train.examples) train_ids.insert(ex.id);
    for (const auto& ex : eval.examples) eval_ids.insert(ex.id);
    CHECK(train_ids.size() + eval_ids.size() == 100);
    for (const auto& id : eval_ids) CHECK(train_ids.count(id) == 0);

    auto ti = original_indices(train, c);
    CHECK(std::is_sorted(ti.begin(), ti.end()));
    auto ei = original_indices(eval, c);
    CHECK(std::is_sorted(ei.begin(), ei.end()));
}

TEST_CASE("an uneven corpus still rounds the eval slice up", "[experiment]") {
    Corpus c = synth_corpus(41);
    auto [train, eval] = make_splits(c, SplitSpec{});
    CHECK(eval.examples.size() == 3); // ceil(2.05)
    CHECK(train.examples.size() == 38);
}

TEST_CASE("splitting is seed-deterministic", "[experiment]") {
    Corpus c = synth_corpus(100);
    SplitSpec one;
    one.seed = 1;
    SplitSpec two;
    two.seed = 2;
    auto a = make_splits(c, one);
    auto b = make_splits(c, one);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    auto other = make_splits(c, two);
    CHECK(a.second.examples != other.second.examples);
}

TEST_CASE("split preconditions are enforced", "[experiment]") {
    SplitSpec bad;
    bad.eval_fraction = 0.0;
    CHECK_THROWS_AS(make_splits(synth_corpus(10), bad), ConfigError);
    bad.eval_fraction = 1.0;
    CHECK_THROWS_AS(make_splits(synth_corpus(10), bad), ConfigError);
    CHECK_THROWS_AS(make_splits(Corpus{}, SplitSpec{}), DataError);
    SplitSpec greedy;
    greedy.eval_fraction = 0.95;
    CHECK_THROWS_AS(make_splits(synth_corpus(10), greedy), DataError); // would take all 10
}

TEST_CASE("subsampling keeps order and honors the size", "[experiment]") {
    Corpus c = synth_corpus(20);
    Corpus five = subsample(c, 5, 42);
    CHECK(five.examples.size() == 5);
    auto idx = original_indices(five, c);
    CHECK(idx.size() == 5);
    CHECK(std::is_sorted(idx.begin(), idx.end()));
    CHECK(subsample(c, 5, 42) == five); // deterministic
    CHECK(subsample(c, 5, 43).examples != five.examples);
    CHECK(subsample(c, kFullSize, 42) == c);
    CHECK_THROWS_AS(subsample(c, 21, 42), DataError);
    CHECK_THROWS_AS(subsample(c, 0, 42), ConfigError);
}

TEST_CASE("prompt formatting covers all three tasks", "[experiment]") {
    Corpus one;
    one.language = "usp";
    one.examples = {usp_sample().examples[0]};

    auto to_hrl = format_prompts(one, "to_hrl", "Spanish");
    REQUIRE(to_hrl.size() == 1);
    CHECK(to_hrl[0].input == "Translate into Spanish: wi' neen tb'ank juntir");
    CHECK(to_hrl[0].label == "Tienen que hacer todo");

    auto from_hrl = format_prompts(one, "from_hrl", "Spanish");
    CHECK(from_hrl[0].input == "Translate into Uspanteko: Tienen que hacer todo");
    CHECK(from_hrl[0].label == "wi' neen tb'ank juntir");

    auto igt = format_prompts(one, "igt", "Spanish");
    CHECK(igt[0].input == "Gloss: wi' neen tb'ank juntir");
    CHECK(igt[0].label == "EXS INT INC-hacer-SC todo");
}

TEST_CASE("the default translation prompt wording is reproduced verbatim", "[experiment]") {
    Corpus one;
    one.language = "arp";
    one.examples = {arp_sample().examples[3]};
    auto prompts = format_prompts(one, "to_hrl", "English");
    REQUIRE(prompts.size() == 1);
    CHECK(prompts[0].input ==
          "Translate into English: Henee3nee-3oonouh'ut niine'eehek nehe' hotii");
    CHECK(prompts[0].label == "This car is very cheap.");
}

TEST_CASE("prompt formatting rejects missing lines and unknown tasks", "[experiment]") {
    Corpus c;
    c.language = "arp";
    c.examples = {arp_sample().examples[3]}; // no gloss line
    CHECK_THROWS_AS(format_prompts(c, "igt", "English"), DataError);

    IgtExample no_translation = usp_sample().examples[0];
    no_translation.translation.clear();
    Corpus d;
    d.examples = {no_translation};
    CHECK_THROWS_AS(format_prompts(d, "to_hrl", "Spanish"), DataError);
    CHECK_THROWS_AS(format_prompts(d, "from_hrl", "Spanish"), DataError);
    CHECK_THROWS_AS(format_prompts(d, "summarize", "Spanish"), ConfigError);
}

TEST_CASE("display names exist for the two shipped languages", "[experiment]") {
    CHECK(language_display_name("usp") == "Uspanteko");
    CHECK(language_display_name("arp") == "Arapaho");
    CHECK(language_display_name("zz") == "zz");
}

TEST_CASE("prompt pairs serialize as sorted-key JSON lines", "[experiment]") {
    std::vector<PromptPair> pairs = {{"Gloss: a", "X"}, {"Gloss: b", "Y Z"}};
    CHECK(prompts_to_jsonl(pairs) ==
          "{\"input\":\"Gloss: a\",\"label\":\"X\"}\n"
          "{\"input\":\"Gloss: b\",\"label\":\"Y Z\"}\n");
    // every line must parse back on its own
    nlohmann::json j = nlohmann::json::parse("{\"input\":\"Gloss: a\",\"label\":\"X\"}");
    CHECK(j["input"] == "Gloss: a");
}

TEST_CASE("default curricula carry the fixed per-language hyperparameters", "[experiment]") {
    CurriculumManifest usp = default_manifest("usp");
    CHECK(usp.batch_size == 32);
    CHECK(usp.phase1_steps == 500);
    CHECK(usp.phase2_steps == 1000);
    CHECK(usp.learning_rate == 2e-4);
    CHECK(usp.weight_decay == 0.5);
    CHECK(usp.optimizer_reset_between);

    CurriculumManifest arp = default_manifest("arp");
    CHECK(arp.batch_size == 16);
    CHECK(arp.phase1_steps == 2000);
    CHECK(arp.phase2_steps == 4000);
    CHECK(arp.learning_rate == 2e-4);
    CHECK(arp.weight_decay == 0.5);

    CHECK_THROWS_AS(default_manifest("zz"), ConfigError);
}

TEST_CASE("the baseline curriculum trains phase 1 on original data", "[experiment]") {
    Corpus original = synth_corpus(4);
    original.language = "usp";
    Corpus augmented;
    CHECK(build_manifest(augmented, original, "usp").phase1_source == "original");
    augmented.examples.push_back(original.examples[0]);
    CHECK(build_manifest(augmented, original, "usp").phase1_source == "augmented");
}

TEST_CASE("the manifest JSON records phases, sources, and prompts", "[experiment]") {
    CurriculumManifest m = default_manifest("usp");
    m.phase1_file = "igt/phase1.jsonl";
    m.phase2_file = "igt/phase2.jsonl";
    nlohmann::json j = manifest_to_json(m);
    CHECK(j["language"] == "usp");
    CHECK(j["optimizer_reset_between"] == true);
    CHECK(j["phase1"]["file"] == "igt/phase1.jsonl");
    CHECK(j["phase1"]["source"] == "augmented");
    CHECK(j["phase1"]["steps"] == 500);
    CHECK(j["phase2"]["source"] == "original");
    CHECK(j["phase2"]["steps"] == 1000);
    CHECK(j["hyperparameters"]["batch_size"] == 32);
    CHECK(j["hyperparameters"]["learning_rate"] == 2e-4);
    CHECK(j["hyperparameters"]["weight_decay"] == 0.5);
    CHECK(j["prompt_prefixes"]["to_hrl"] == "Translate into <HRL>: ");
    CHECK(j["prompt_prefixes"]["igt"] == "Gloss: ");
}
