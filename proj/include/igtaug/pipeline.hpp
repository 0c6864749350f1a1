#pragma once

// End-to-end batch runs: split -> subsample -> augment -> prompts ->
// manifest -> stats, fanned out over (combination, size, seed) leaves.
// Every leaf write is atomic and every choice is seeded, so reruns with
// the same config produce byte-identical trees.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "igtaug/analysis.hpp"
#include "igtaug/errors.hpp"
#include "igtaug/experiment.hpp"
#include "igtaug/igt.hpp"
#include "igtaug/io.hpp"
#include "igtaug/lexicon.hpp"
#include "igtaug/strategies.hpp"

namespace igtaug {

constexpr std::uint64_t kDefaultSeed = 42;

struct PipelineConfig {
    std::string input;
    std::string language;
    std::string out_dir;
    std::string lexicon_dir;
    std::string hrl_name;
    std::vector<std::string> tasks = {"to_hrl"};
    std::vector<std::int64_t> sizes = {kFullSize};
    std::vector<std::int64_t> seeds = {static_cast<std::int64_t>(kDefaultSeed)};
    // raw combination labels; "all" expands to the language's power set,
    // "baseline" (or the empty string) is the empty combination
    std::vector<std::string> combination_labels = {"baseline"};
    bool expand_all_combinations = false;
    double eval_fraction = 0.05;
    bool strict = false;
};

inline std::string default_hrl_name(const std::string& language) {
    if (language == "usp") return "Spanish";
    if (language == "arp") return "English";
    return "";
}

inline std::string default_lexicon_dir() {
    const char* env = std::getenv("IGTAUG_LEXICON_DIR");
    return env ? env : "";
}

// ------------------------------------------------------------ config I/O

inline std::int64_t parse_size_value(const nlohmann::json& v) {
    if (v.is_string()) return parse_train_size(v.get<std::string>());
    if (v.is_number_integer()) return parse_train_size(std::to_string(v.get<std::int64_t>()));
    throw ConfigError("sizes entries must be integers or \"full\"");
}

inline PipelineConfig load_pipeline_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad pipeline config JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("pipeline config must be a JSON object");
    static const std::set<std::string> known = {
        "input",    "language", "out_dir",       "lexicon_dir", "hrl_name", "tasks",
        "sizes",    "seeds",    "combinations",  "eval_fraction", "strict"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ConfigError("unknown pipeline config key '" + key + "'");

    PipelineConfig cfg;
    cfg.input = j.value("input", "");
    cfg.language = j.value("language", "");
    cfg.out_dir = j.value("out_dir", "");
    cfg.lexicon_dir = j.value("lexicon_dir", "");
    cfg.hrl_name = j.value("hrl_name", "");
    cfg.eval_fraction = j.value("eval_fraction", 0.05);
    cfg.strict = j.value("strict", false);
    if (j.contains("tasks")) {
        cfg.tasks.clear();
        for (const auto& t : j["tasks"]) cfg.tasks.push_back(t.get<std::string>());
        if (cfg.tasks.empty()) throw ConfigError("tasks must not be empty");
    }
    if (j.contains("sizes")) {
        cfg.sizes.clear();
        for (const auto& s : j["sizes"]) cfg.sizes.push_back(parse_size_value(s));
        if (cfg.sizes.empty()) throw ConfigError("sizes must not be empty");
    }
    if (j.contains("seeds")) {
        cfg.seeds.clear();
        for (const auto& s : j["seeds"]) {
            if (!s.is_number_integer()) throw ConfigError("seeds must be integers");
            cfg.seeds.push_back(s.get<std::int64_t>());
        }
        if (cfg.seeds.empty()) throw ConfigError("seeds must not be empty");
    }
    if (j.contains("combinations")) {
        const auto& c = j["combinations"];
        if (c.is_string() && c.get<std::string>() == "all") {
            cfg.expand_all_combinations = true;
            cfg.combination_labels.clear();
        } else if (c.is_array()) {
            cfg.combination_labels.clear();
            for (const auto& label : c) cfg.combination_labels.push_back(label.get<std::string>());
            if (cfg.combination_labels.empty())
                throw ConfigError("combinations must not be empty");
        } else {
            throw ConfigError("combinations must be \"all\" or an array of labels");
        }
    }
    return cfg;
}

// ----------------------------------------------------------- corpus I/O

inline bool json_corpus_path(const fs::path& path) {
    return path.extension() == ".json" || path.extension() == ".jsonl";
}

inline Corpus load_corpus_file(const fs::path& path, bool strict = false) {
    std::string text = read_file(path);
    if (json_corpus_path(path)) return parse_corpus_json(text);
    return parse_corpus(text, strict);
}

// ----------------------------------------------------------- lexicon I/O

inline std::optional<std::string> read_optional_file(const fs::path& path) {
    if (!fs::exists(path)) return std::nullopt;
    return read_file(path);
}

// <dir>/<lang>-conjunctions.tsv, -noise.tsv, -interjections.tsv,
// -conjugation.tsv; only the files a strategy actually needs must exist.
inline AugmentationContext load_augmentation_context(const std::string& lexicon_dir,
                                                     const std::string& language,
                                                     std::uint64_t seed, bool strict = false) {
    AugmentationContext ctx;
    ctx.global_seed = seed;
    if (lexicon_dir.empty()) return ctx;
    fs::path dir(lexicon_dir);
    if (auto text = read_optional_file(dir / (language + "-conjunctions.tsv")))
        ctx.conjunctions = load_word_list(*text, "conj");
    if (auto text = read_optional_file(dir / (language + "-noise.tsv")))
        ctx.noise = load_word_list(*text, "noise");
    if (auto text = read_optional_file(dir / (language + "-interjections.tsv")))
        ctx.interjections = load_word_list(*text, "intj");
    if (auto text = read_optional_file(dir / (language + "-conjugation.tsv")))
        ctx.conjugation = load_conjugation_table(*text, strict);
    return ctx;
}

// --------------------------------------------------------------- running

struct PipelineSummary {
    int leaves_written = 0;
    fs::path out_dir;
};

namespace detail {

inline nlohmann::json stats_json(const std::string& combo_label, std::int64_t size,
                                 std::int64_t seed, const Corpus& train, const Corpus& eval,
                                 const Corpus& augmented, const AugmentStats& stats) {
    nlohmann::json j;
    j["combination"] = combo_label.empty() ? "baseline" : combo_label;
    j["train_size"] = format_train_size(size);
    j["seed"] = seed;
    j["train_examples"] = train.examples.size();
    j["eval_examples"] = eval.examples.size();
    j["augmented_examples"] = augmented.examples.size();
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [name, count] : stats.outputs) {
        nlohmann::json s;
        s["outputs"] = count;
        s["avg_per_example"] = stats.originals > 0
                                   ? static_cast<double>(count) /
                                         static_cast<double>(stats.originals)
                                   : 0.0;
        per[name] = std::move(s);
    }
    j["per_strategy"] = std::move(per);
    return j;
}

} // namespace detail

inline PipelineSummary run_pipeline(PipelineConfig cfg, bool force = false) {
    if (cfg.input.empty()) throw ConfigError("pipeline config needs 'input'");
    if (cfg.out_dir.empty()) throw ConfigError("pipeline config needs 'out_dir'");
    if (!(cfg.eval_fraction > 0.0 && cfg.eval_fraction < 1.0))
        throw ConfigError("eval_fraction must be in (0,1)");
    for (const auto& task : cfg.tasks)
        if (task != "to_hrl" && task != "from_hrl" && task != "igt")
            throw ConfigError("unknown task '" + task + "'");

    Corpus corpus = load_corpus_file(cfg.input, cfg.strict);
    if (cfg.language.empty()) cfg.language = corpus.language;
    if (cfg.language.empty())
        throw ConfigError("language not given and not recorded in the corpus");
    if (!corpus.language.empty() && corpus.language != cfg.language)
        throw ConfigError("config language '" + cfg.language + "' does not match corpus '" +
                          corpus.language + "'");
    if (cfg.lexicon_dir.empty()) cfg.lexicon_dir = default_lexicon_dir();
    if (cfg.hrl_name.empty()) cfg.hrl_name = default_hrl_name(cfg.language);
    if (cfg.hrl_name.empty())
        throw ConfigError("hrl_name not given and no default for language '" + cfg.language +
                          "'");

    // resolve combinations
    std::vector<std::set<std::string>> combos;
    if (cfg.expand_all_combinations) {
        const auto& names = language_strategy_names(cfg.language);
        if (names.empty())
            throw ConfigError("combinations=\"all\" needs language usp or arp");
        for (const auto& c : enumerate_combinations(names, cfg.language))
            combos.push_back(c.strategies);
        cfg.combination_labels.clear();
        for (const auto& c : combos)
            cfg.combination_labels.push_back(
                c.empty() ? "baseline" : combination_label(c, cfg.language));
    } else {
        for (const auto& label : cfg.combination_labels) {
            std::set<std::string> combo =
                label == "baseline" ? std::set<std::string>{}
                                    : parse_combination_field(label, cfg.language);
            validate_combination(Combination{combo, cfg.language});
            combos.push_back(std::move(combo));
        }
    }

    const fs::path out(cfg.out_dir);
    fs::create_directories(out);

    // echo the resolved config for provenance
    {
        nlohmann::json j;
        j["input"] = cfg.input;
        j["language"] = cfg.language;
        j["out_dir"] = cfg.out_dir;
        j["lexicon_dir"] = cfg.lexicon_dir;
        j["hrl_name"] = cfg.hrl_name;
        j["tasks"] = cfg.tasks;
        nlohmann::json sizes = nlohmann::json::array();
        for (auto s : cfg.sizes) sizes.push_back(format_train_size(s));
        j["sizes"] = std::move(sizes);
        j["seeds"] = cfg.seeds;
        j["combinations"] = cfg.combination_labels;
        j["eval_fraction"] = cfg.eval_fraction;
        j["strict"] = cfg.strict;
        write_file_atomic(out / "effective-config.json", j.dump(2) + "\n");
    }

    // per-seed split cache
    std::map<std::int64_t, std::pair<Corpus, Corpus>> splits;
    for (std::int64_t seed : cfg.seeds) {
        SplitSpec spec;
        spec.eval_fraction = cfg.eval_fraction;
        spec.seed = static_cast<std::uint64_t>(seed);
        splits.emplace(seed, make_splits(corpus, spec));
    }

    PipelineSummary summary;
    summary.out_dir = out;
    for (std::size_t ci = 0; ci < combos.size(); ++ci) {
        const auto& combo = combos[ci];
        const std::string label = combination_label(combo, cfg.language);
        const std::string dir_label = label.empty() ? "baseline" : label;
        for (std::int64_t size : cfg.sizes) {
            for (std::int64_t seed : cfg.seeds) {
                const fs::path leaf = out / dir_label / format_train_size(size) /
                                      std::to_string(seed);
                if (fs::exists(leaf) && !fs::exists(leaf / "stats.json")) {
                    if (!force)
                        throw DataError("partial output directory " + leaf.string() +
                                        " (re-run with --force to rebuild it)");
                    fs::remove_all(leaf);
                }
                const auto& [train, eval] = splits.at(seed);
                Corpus sub = subsample(train, size, static_cast<std::uint64_t>(seed));
                AugmentationContext ctx = load_augmentation_context(
                    cfg.lexicon_dir, cfg.language, static_cast<std::uint64_t>(seed),
                    cfg.strict);
                AugmentStats stats;
                Corpus augmented =
                    apply_combination(sub, Combination{combo, cfg.language}, ctx, &stats);

                fs::create_directories(leaf);
                write_file_atomic(leaf / "train.txt", serialize_corpus(sub));
                write_file_atomic(leaf / "eval.txt", serialize_corpus(eval));
                write_file_atomic(leaf / "augmented.txt", serialize_corpus(augmented));
                for (const auto& task : cfg.tasks) {
                    const fs::path tdir = leaf / task;
                    const Corpus& phase1 = augmented.examples.empty() ? sub : augmented;
                    write_file_atomic(tdir / "phase1.jsonl",
                                      prompts_to_jsonl(format_prompts(phase1, task, cfg.hrl_name)));
                    write_file_atomic(tdir / "phase2.jsonl",
                                      prompts_to_jsonl(format_prompts(sub, task, cfg.hrl_name)));
                    write_file_atomic(tdir / "eval.jsonl",
                                      prompts_to_jsonl(format_prompts(eval, task, cfg.hrl_name)));
                    CurriculumManifest manifest = build_manifest(augmented, sub, cfg.language);
                    manifest.phase1_file = task + "/phase1.jsonl";
                    manifest.phase2_file = task + "/phase2.jsonl";
                    write_file_atomic(tdir / "manifest.json",
                                      manifest_to_json(manifest).dump(2) + "\n");
                }
                // completeness marker: written last
                write_file_atomic(leaf / "stats.json",
                                  detail::stats_json(label, size, seed, sub, eval, augmented,
                                                     stats)
                                          .dump(2) +
                                      "\n");
                ++summary.leaves_written;
            }
        }
    }
    return summary;
}

} // namespace igtaug
