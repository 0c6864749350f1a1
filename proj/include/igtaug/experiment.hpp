#pragma once

// Data pipeline pieces: eval split, size subsampling, prompt formatting,
// and the two-phase curriculum manifest consumed by an external trainer.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "igtaug/analysis.hpp" // kFullSize / format_train_size
#include "igtaug/errors.hpp"
#include "igtaug/igt.hpp"
#include "igtaug/rng.hpp"

namespace igtaug {

struct SplitSpec {
    double eval_fraction = 0.05;
    std::uint64_t seed = 42;
    std::vector<std::int64_t> sizes; // drawn from {100,500,1000,5000,full}
};

namespace detail {

inline Corpus select_by_sorted_indices(const Corpus& corpus,
                                       const std::vector<std::size_t>& indices) {
    Corpus out;
    out.language = corpus.language;
    out.provenance = corpus.provenance;
    out.examples.reserve(indices.size());
    for (std::size_t i : indices) out.examples.push_back(corpus.examples[i]);
    return out;
}

} // namespace detail

// Uniform eval selection without replacement; both halves keep the input
// order.  Eval size is ceil(total * fraction): rounding up keeps the eval
// half non-empty for any corpus size.
inline std::pair<Corpus, Corpus> make_splits(const Corpus& corpus, const SplitSpec& spec) {
    if (!(spec.eval_fraction > 0.0 && spec.eval_fraction < 1.0))
        throw ConfigError("eval fraction must be in (0,1)");
    const std::size_t n = corpus.examples.size();
    if (n == 0) throw DataError("make_splits: empty corpus");
    const std::size_t eval_n = static_cast<std::size_t>(
        std::ceil(static_cast<double>(n) * spec.eval_fraction));
    if (eval_n >= n)
        throw DataError("make_splits: eval split would consume the whole corpus (" +
                        std::to_string(eval_n) + " of " + std::to_string(n) + ")");
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    Rng rng(substream_seed(spec.seed, "split", ""));
    rng.shuffle(indices);
    std::vector<std::size_t> eval_idx(indices.begin(),
                                      indices.begin() + static_cast<std::ptrdiff_t>(eval_n));
    std::vector<std::size_t> train_idx(indices.begin() + static_cast<std::ptrdiff_t>(eval_n),
                                       indices.end());
    std::sort(eval_idx.begin(), eval_idx.end());
    std::sort(train_idx.begin(), train_idx.end());
    return {detail::select_by_sorted_indices(corpus, train_idx),
            detail::select_by_sorted_indices(corpus, eval_idx)};
}

// Uniform subsample without replacement, in input order.  Draws for
// different sizes are independent streams: size 100 is not a subset of
// size 500.
inline Corpus subsample(const Corpus& train, std::int64_t size, std::uint64_t seed) {
    if (size == kFullSize) return train;
    if (size <= 0) throw ConfigError("subsample: size must be positive or 'full'");
    const std::size_t n = train.examples.size();
    if (static_cast<std::size_t>(size) > n)
        throw DataError("subsample: requested " + std::to_string(size) + " of " +
                        std::to_string(n) + " examples");
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    Rng rng(substream_seed(seed, "subsample", format_train_size(size)));
    rng.shuffle(indices);
    std::vector<std::size_t> keep(indices.begin(),
                                  indices.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(keep.begin(), keep.end());
    return detail::select_by_sorted_indices(train, keep);
}

// ---------------------------------------------------------------- prompts

struct PromptPair {
    std::string input;
    std::string label;

    bool operator==(const PromptPair&) const = default;
};

inline std::string language_display_name(const std::string& code) {
    if (code == "usp") return "Uspanteko";
    if (code == "arp") return "Arapaho";
    return code;
}

// to_hrl:  "Translate into <HRL>: <surface>"  -> translation
// from_hrl: "Translate into <language>: <translation>" -> surface
// igt:     "Gloss: <surface>" -> gloss line
inline std::vector<PromptPair> format_prompts(const Corpus& corpus, const std::string& task,
                                              const std::string& hrl_name) {
    if (task != "to_hrl" && task != "from_hrl" && task != "igt")
        throw ConfigError("unknown task '" + task + "'");
    std::vector<PromptPair> out;
    out.reserve(corpus.examples.size());
    for (const auto& ex : corpus.examples) {
        PromptPair p;
        if (task == "to_hrl") {
            if (ex.translation.empty())
                throw DataError("format_prompts: example '" + ex.id + "' has no translation");
            p.input = "Translate into " + hrl_name + ": " + join(ex.surface_words);
            p.label = ex.translation;
        } else if (task == "from_hrl") {
            if (ex.translation.empty())
                throw DataError("format_prompts: example '" + ex.id + "' has no translation");
            p.input = "Translate into " + language_display_name(ex.language) + ": " +
                      ex.translation;
            p.label = join(ex.surface_words);
        } else {
            if (ex.gloss_words.empty())
                throw DataError("format_prompts: example '" + ex.id + "' has no gloss line");
            p.input = "Gloss: " + join(ex.surface_words);
            p.label = join(ex.gloss_words);
        }
        out.push_back(std::move(p));
    }
    return out;
}

inline std::string prompts_to_jsonl(const std::vector<PromptPair>& pairs) {
    std::string out;
    for (const auto& p : pairs) {
        nlohmann::json obj;
        obj["input"] = p.input;
        obj["label"] = p.label;
        out += obj.dump() + "\n";
    }
    return out;
}

// --------------------------------------------------------------- manifest

struct CurriculumManifest {
    std::string language;
    std::string phase1_file = "phase1.jsonl";
    std::string phase1_source = "augmented"; // or "original" for the baseline
    std::int64_t phase1_steps = 0;
    std::string phase2_file = "phase2.jsonl";
    std::int64_t phase2_steps = 0;
    std::int64_t batch_size = 0;
    double learning_rate = 0.0;
    double weight_decay = 0.0;
    bool optimizer_reset_between = true;
};

inline CurriculumManifest default_manifest(const std::string& language) {
    CurriculumManifest m;
    m.language = language;
    if (language == "usp") {
        m.batch_size = 32;
        m.phase1_steps = 500;
        m.phase2_steps = 1000;
    } else if (language == "arp") {
        m.batch_size = 16;
        m.phase1_steps = 2000;
        m.phase2_steps = 4000;
    } else {
        throw ConfigError("no default hyperparameters for language '" + language +
                          "'; supply overrides");
    }
    m.learning_rate = 2e-4;
    m.weight_decay = 0.5;
    m.optimizer_reset_between = true;
    return m;
}

// When the augmented corpus is empty (the baseline), phase 1 trains on the
// original data too — the optimizer reset between phases still happens.
inline CurriculumManifest build_manifest(const Corpus& augmented, const Corpus& /*original*/,
                                         const std::string& language) {
    CurriculumManifest m = default_manifest(language);
    m.phase1_source = augmented.examples.empty() ? "original" : "augmented";
    return m;
}

inline nlohmann::json manifest_to_json(const CurriculumManifest& m) {
    nlohmann::json j;
    j["language"] = m.language;
    j["optimizer_reset_between"] = m.optimizer_reset_between;
    j["phase1"] = {{"file", m.phase1_file}, {"source", m.phase1_source}, {"steps", m.phase1_steps}};
    j["phase2"] = {{"file", m.phase2_file}, {"source", "original"}, {"steps", m.phase2_steps}};
    j["hyperparameters"] = {{"batch_size", m.batch_size},
                            {"learning_rate", m.learning_rate},
                            {"weight_decay", m.weight_decay}};
    // the prompt wording is a toolkit choice, recorded for provenance
    j["prompt_prefixes"] = {{"to_hrl", "Translate into <HRL>: "},
                            {"from_hrl", "Translate into <language>: "},
                            {"igt", "Gloss: "}};
    return j;
}

} // namespace igtaug
