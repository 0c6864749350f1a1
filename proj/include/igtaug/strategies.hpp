#pragma once

// The augmentation strategies and their seeded application to corpora.
//
// Every (strategy, example) pair draws from an independent RNG substream
// derived from (global seed, strategy name, example id), so corpus order
// and parallel execution cannot change any output.  Insertion strategies
// are exhaustive over their word list and never touch the RNG.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "igtaug/errors.hpp"
#include "igtaug/igt.hpp"
#include "igtaug/lexicon.hpp"
#include "igtaug/rng.hpp"

namespace igtaug {

// --------------------------------------------------------------- registry

inline const std::vector<std::string>& all_strategy_names() {
    static const std::vector<std::string> names = {
        "UpdTam", "InsConj", "InsNoise", "DelAny", "DelExcl", "Dup", "InsIntj", "Perm"};
    return names;
}

inline const std::vector<std::string>& language_strategy_names(const std::string& language) {
    static const std::vector<std::string> usp = {"UpdTam",  "InsConj", "InsNoise",
                                                 "DelAny",  "DelExcl", "Dup"};
    static const std::vector<std::string> arp = {"InsIntj", "InsNoise", "Perm"};
    static const std::vector<std::string> none;
    if (language == "usp") return usp;
    if (language == "arp") return arp;
    return none;
}

inline bool known_strategy(const std::string& name) {
    const auto& all = all_strategy_names();
    return std::find(all.begin(), all.end(), name) != all.end();
}

// linguistic = grammar-aware edits; non-linguistic = blind noise
inline const std::map<std::string, std::string>& strategy_categories() {
    static const std::map<std::string, std::string> cats = {
        {"UpdTam", "linguistic"},      {"InsConj", "linguistic"},
        {"InsNoise", "non-linguistic"}, {"DelAny", "non-linguistic"},
        {"DelExcl", "linguistic"},     {"Dup", "non-linguistic"},
        {"InsIntj", "linguistic"},     {"Perm", "linguistic"}};
    return cats;
}

// Order strategy names canonically: per-language table order for usp/arp,
// otherwise the global registry order, falling back to plain string order
// for names outside the registry (synthetic lattices in tests).
inline std::vector<std::string> canonical_strategy_order(const std::set<std::string>& names,
                                                         const std::string& language) {
    const std::vector<std::string>* ref = &language_strategy_names(language);
    if (ref->empty()) ref = &all_strategy_names();
    std::vector<std::string> out;
    for (const auto& name : *ref)
        if (names.count(name)) out.push_back(name);
    std::vector<std::string> rest;
    for (const auto& name : names)
        if (std::find(out.begin(), out.end(), name) == out.end()) rest.push_back(name);
    std::sort(rest.begin(), rest.end());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

// "+"-joined canonical order; empty set -> empty string (the baseline).
inline std::string combination_label(const std::set<std::string>& names,
                                     const std::string& language) {
    std::string out;
    for (const auto& name : canonical_strategy_order(names, language)) {
        if (!out.empty()) out += "+";
        out += name;
    }
    return out;
}

struct Combination {
    std::set<std::string> strategies;
    std::string language;
};

struct TamPair {
    std::string incompletive_tag = "INC";
    std::string completive_tag = "COM";
    std::string incompletive_prefix = "t";
    std::string completive_prefix = "x";
};

struct AugmentationContext {
    std::uint64_t global_seed = 42;
    std::optional<InsertionList> conjunctions;
    std::optional<InsertionList> noise;
    std::optional<InsertionList> interjections;
    std::optional<ConjugationTable> conjugation;
    std::set<std::string> verb_tags = {"COM", "INC"};
    TamPair tam;
    int perm_cap = 10;
};

// ------------------------------------------------------------- insertions

inline IgtExample insert_front(const IgtExample& example, const LexEntry& entry,
                               const std::string& strategy_label) {
    if (example.gloss_words.empty())
        throw DataError("insert_front: example '" + example.id + "' has no gloss line");
    IgtExample out = example;
    out.surface_words.insert(out.surface_words.begin(), entry.form);
    if (out.segmentation_words)
        out.segmentation_words->insert(out.segmentation_words->begin(), entry.form);
    out.gloss_words.insert(out.gloss_words.begin(), entry.gloss_label);
    out.translation = entry.translation + " " + example.translation;
    out.id = example.id + "." + strategy_label + "." + entry.form;
    return out;
}

inline std::string insertion_strategy_label(const InsertionList& list) {
    if (list.name == "conj") return "InsConj";
    if (list.name == "noise") return "InsNoise";
    if (list.name == "intj") return "InsIntj";
    return "Ins." + list.name;
}

// Exhaustive: one output per entry, in list order.  This is what pins the
// per-example yield to exactly the list size.
inline std::vector<IgtExample> run_insertion_strategy(const IgtExample& example,
                                                      const InsertionList& list) {
    const std::string label = insertion_strategy_label(list);
    std::vector<IgtExample> out;
    out.reserve(list.entries.size());
    for (const auto& entry : list.entries) out.push_back(insert_front(example, entry, label));
    return out;
}

// ---------------------------------------------------------------- UpdTam

// Swap the first completive/incompletive aspect tag, repair the matching
// segmentation prefix morpheme and surface prefix letter, and re-tense the
// translation.  Absent on any mismatch: the example is skipped.
inline std::optional<IgtExample> update_tam(const IgtExample& example,
                                            const AugmentationContext& ctx) {
    if (!ctx.conjugation) throw ConfigError("UpdTam requires a conjugation table");
    if (!example.segmentation_words || example.gloss_words.empty()) return std::nullopt;
    if (example.segmentation_words->size() != example.surface_words.size() ||
        example.gloss_words.size() != example.surface_words.size())
        return std::nullopt;

    const std::string inc = ctx.tam.incompletive_tag + "-";
    const std::string com = ctx.tam.completive_tag + "-";
    std::size_t idx = example.gloss_words.size();
    bool from_incompletive = false;
    for (std::size_t i = 0; i < example.gloss_words.size(); ++i) {
        const std::string& g = example.gloss_words[i];
        if (g.rfind(inc, 0) == 0) {
            idx = i;
            from_incompletive = true;
            break;
        }
        if (g.rfind(com, 0) == 0) {
            idx = i;
            from_incompletive = false;
            break;
        }
    }
    if (idx == example.gloss_words.size()) return std::nullopt;

    const std::string& old_tag = from_incompletive ? ctx.tam.incompletive_tag : ctx.tam.completive_tag;
    const std::string& new_tag = from_incompletive ? ctx.tam.completive_tag : ctx.tam.incompletive_tag;
    const std::string& old_prefix =
        from_incompletive ? ctx.tam.incompletive_prefix : ctx.tam.completive_prefix;
    const std::string& new_prefix =
        from_incompletive ? ctx.tam.completive_prefix : ctx.tam.incompletive_prefix;

    IgtExample out = example;
    out.gloss_words[idx] = new_tag + example.gloss_words[idx].substr(old_tag.size());

    auto morphemes = split_morphemes((*example.segmentation_words)[idx]);
    if (morphemes.empty() || morphemes.front() != old_prefix) return std::nullopt;
    morphemes.front() = new_prefix;
    (*out.segmentation_words)[idx] = join(morphemes, "-");

    const std::string& surf = example.surface_words[idx];
    if (surf.rfind(old_prefix, 0) != 0) return std::nullopt;
    out.surface_words[idx] = new_prefix + surf.substr(old_prefix.size());

    Tense from = from_incompletive ? Tense::present : Tense::preterite;
    Tense to = from_incompletive ? Tense::preterite : Tense::present;
    auto retensed = retense_translation(example.translation, from, to, *ctx.conjugation);
    if (!retensed) return std::nullopt;
    out.translation = *retensed;
    out.id = example.id + ".UpdTam";
    return out;
}

// -------------------------------------------------------------- deletions

inline IgtExample delete_word(const IgtExample& example, std::size_t index) {
    auto rep = check_alignment(example);
    if (!rep.four_line_aligned)
        throw DataError("delete_word: example '" + example.id + "' is not four-line aligned");
    const std::size_t n = example.surface_words.size();
    if (n < 2) throw DataError("delete_word: need at least two words");
    if (index >= n) throw DataError("delete_word: index out of range");
    IgtExample out = example;
    out.surface_words.erase(out.surface_words.begin() + static_cast<std::ptrdiff_t>(index));
    if (out.segmentation_words)
        out.segmentation_words->erase(out.segmentation_words->begin() +
                                      static_cast<std::ptrdiff_t>(index));
    if (!out.gloss_words.empty())
        out.gloss_words.erase(out.gloss_words.begin() + static_cast<std::ptrdiff_t>(index));
    if (!out.translation.empty()) {
        auto tokens = split_ws(out.translation);
        tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(index));
        out.translation = join(tokens);
    }
    return out;
}

// Deletion at a fixed index, honoring the verb-exclusion rule; no RNG.
inline std::optional<IgtExample> try_delete_at(const IgtExample& example, std::size_t index,
                                               bool exclude_verbs,
                                               const std::set<std::string>& verb_tags) {
    if (exclude_verbs && is_verb(example.gloss_words[index], verb_tags)) return std::nullopt;
    return delete_word(example, index);
}

// A rejected (verbal) draw skips the example entirely; it is NOT redrawn.
inline std::optional<IgtExample> run_deletion_strategy(const IgtExample& example,
                                                       const AugmentationContext& ctx,
                                                       bool exclude_verbs) {
    if (example.gloss_words.empty()) return std::nullopt;
    auto rep = check_alignment(example);
    const std::size_t n = example.surface_words.size();
    if (!rep.four_line_aligned || n < 2) return std::nullopt;
    const std::string label = exclude_verbs ? "DelExcl" : "DelAny";
    Rng rng(substream_seed(ctx.global_seed, label, example.id));
    std::size_t index = static_cast<std::size_t>(rng.below(n));
    auto out = try_delete_at(example, index, exclude_verbs, ctx.verb_tags);
    if (out) out->id = example.id + "." + label;
    return out;
}

// ------------------------------------------------------------ duplication

inline IgtExample duplicate_at(const IgtExample& example, std::size_t index) {
    auto rep = check_alignment(example);
    if (!rep.four_line_aligned)
        throw DataError("duplicate_at: example '" + example.id + "' is not four-line aligned");
    const std::size_t n = example.surface_words.size();
    if (index >= n) throw DataError("duplicate_at: index out of range");
    IgtExample out = example;
    auto dup = [index](std::vector<std::string>& words) {
        words.insert(words.begin() + static_cast<std::ptrdiff_t>(index), words[index]);
    };
    dup(out.surface_words);
    if (out.segmentation_words) dup(*out.segmentation_words);
    if (!out.gloss_words.empty()) dup(out.gloss_words);
    if (!out.translation.empty()) {
        auto tokens = split_ws(out.translation);
        tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(index), tokens[index]);
        out.translation = join(tokens);
    }
    return out;
}

inline std::optional<IgtExample> duplicate_word(const IgtExample& example,
                                                const AugmentationContext& ctx) {
    if (example.gloss_words.empty()) return std::nullopt;
    auto rep = check_alignment(example);
    if (!rep.four_line_aligned || example.surface_words.empty()) return std::nullopt;
    Rng rng(substream_seed(ctx.global_seed, "Dup", example.id));
    std::size_t index = static_cast<std::size_t>(rng.below(example.surface_words.size()));
    IgtExample out = duplicate_at(example, index);
    out.id = example.id + ".Dup";
    return out;
}

// ------------------------------------------------------------ permutation

inline std::size_t permutation_target(std::size_t n, int cap) {
    if (n <= 1 || cap <= 0) return 0;
    std::uint64_t fact = 1;
    const std::uint64_t limit = static_cast<std::uint64_t>(cap) + 2;
    for (std::uint64_t i = 2; i <= n; ++i) {
        fact *= i;
        if (fact >= limit) {
            fact = limit;
            break;
        }
    }
    return static_cast<std::size_t>(std::min<std::uint64_t>(static_cast<std::uint64_t>(cap), fact - 1));
}

// Distinct non-identity word-order permutations, applied jointly to
// surface, gloss, and segmentation.  The translation stays as-is: the
// high-resource language cannot mirror free word order.
inline std::vector<IgtExample> permute(const IgtExample& example,
                                       const AugmentationContext& ctx) {
    std::vector<IgtExample> out;
    const std::size_t n = example.surface_words.size();
    if (example.gloss_words.size() != n) return out;
    if (example.segmentation_words && example.segmentation_words->size() != n) return out;
    const std::size_t target = permutation_target(n, ctx.perm_cap);
    if (target == 0) return out;

    std::vector<std::uint32_t> identity(n);
    for (std::size_t i = 0; i < n; ++i) identity[i] = static_cast<std::uint32_t>(i);

    Rng rng(substream_seed(ctx.global_seed, "Perm", example.id));
    std::set<std::vector<std::uint32_t>> seen;
    while (out.size() < target) {
        std::vector<std::uint32_t> perm = identity;
        rng.shuffle(perm);
        if (perm == identity || !seen.insert(perm).second) continue;
        IgtExample ex = example;
        auto apply = [&perm](const std::vector<std::string>& words) {
            std::vector<std::string> rearranged(words.size());
            for (std::size_t i = 0; i < words.size(); ++i) rearranged[i] = words[perm[i]];
            return rearranged;
        };
        ex.surface_words = apply(example.surface_words);
        ex.gloss_words = apply(example.gloss_words);
        if (example.segmentation_words) ex.segmentation_words = apply(*example.segmentation_words);
        ex.id = example.id + ".Perm." + std::to_string(out.size() + 1);
        out.push_back(std::move(ex));
    }
    return out;
}

// ------------------------------------------------------------ combination

namespace detail {

inline const InsertionList& require_list(const std::optional<InsertionList>& list,
                                         const char* strategy) {
    if (!list) throw ConfigError(std::string(strategy) + " requires its insertion word list");
    return *list;
}

} // namespace detail

inline std::vector<IgtExample> run_strategy(const std::string& name, const IgtExample& example,
                                            const AugmentationContext& ctx) {
    if (example.gloss_words.empty()) return {}; // augmentation needs a gloss line
    if (name == "UpdTam") {
        auto out = update_tam(example, ctx);
        return out ? std::vector<IgtExample>{*out} : std::vector<IgtExample>{};
    }
    if (name == "InsConj")
        return run_insertion_strategy(example, detail::require_list(ctx.conjunctions, "InsConj"));
    if (name == "InsNoise")
        return run_insertion_strategy(example, detail::require_list(ctx.noise, "InsNoise"));
    if (name == "InsIntj")
        return run_insertion_strategy(example, detail::require_list(ctx.interjections, "InsIntj"));
    if (name == "DelAny" || name == "DelExcl") {
        auto out = run_deletion_strategy(example, ctx, name == "DelExcl");
        return out ? std::vector<IgtExample>{*out} : std::vector<IgtExample>{};
    }
    if (name == "Dup") {
        auto out = duplicate_word(example, ctx);
        return out ? std::vector<IgtExample>{*out} : std::vector<IgtExample>{};
    }
    if (name == "Perm") return permute(example, ctx);
    throw ConfigError("unknown strategy '" + name + "'");
}

inline void validate_combination(const Combination& combo) {
    const auto& allowed = language_strategy_names(combo.language);
    for (const auto& name : combo.strategies) {
        if (!known_strategy(name)) throw ConfigError("unknown strategy '" + name + "'");
        if (!allowed.empty() &&
            std::find(allowed.begin(), allowed.end(), name) == allowed.end())
            throw ConfigError("strategy '" + name + "' is not available for language '" +
                              combo.language + "'");
    }
}

struct AugmentStats {
    std::int64_t originals = 0;
    // realized per-strategy output counts (averages = count / originals)
    std::map<std::string, std::int64_t> outputs;
};

// Union semantics: each strategy runs on every ORIGINAL example; outputs
// are concatenated in canonical strategy order, then corpus order, then
// within-example order.  Originals themselves are not included.
inline Corpus apply_combination(const Corpus& corpus, const Combination& combo,
                                const AugmentationContext& ctx,
                                AugmentStats* stats = nullptr) {
    if (!combo.language.empty() && !corpus.language.empty() &&
        combo.language != corpus.language)
        throw ConfigError("combination language '" + combo.language +
                          "' does not match corpus language '" + corpus.language + "'");
    validate_combination(combo);
    if (stats) stats->originals = static_cast<std::int64_t>(corpus.examples.size());
    Corpus out;
    out.language = corpus.language;
    out.provenance = corpus.provenance;
    for (const auto& name : canonical_strategy_order(combo.strategies, combo.language)) {
        std::int64_t produced = 0;
        for (const auto& ex : corpus.examples) {
            auto results = run_strategy(name, ex, ctx);
            produced += static_cast<std::int64_t>(results.size());
            for (auto& r : results) out.examples.push_back(std::move(r));
        }
        if (stats) stats->outputs[name] = produced;
    }
    return out;
}

// Power set including the empty baseline, ordered by subset size and then
// lexicographically over the sorted member names.
inline std::vector<Combination> enumerate_combinations(const std::vector<std::string>& names,
                                                       const std::string& language = "") {
    std::set<std::string> unique(names.begin(), names.end());
    if (unique.size() != names.size())
        throw ConfigError("enumerate_combinations: duplicate strategy name");
    if (names.size() > 16)
        throw ConfigError("enumerate_combinations: too many strategies");
    std::vector<std::vector<std::string>> subsets;
    const std::size_t k = names.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<std::string> subset;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::size_t{1} << i)) subset.push_back(names[i]);
        std::sort(subset.begin(), subset.end());
        subsets.push_back(std::move(subset));
    }
    std::sort(subsets.begin(), subsets.end(),
              [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    std::vector<Combination> out;
    out.reserve(subsets.size());
    for (auto& subset : subsets)
        out.push_back(Combination{{subset.begin(), subset.end()}, language});
    return out;
}

} // namespace igtaug
