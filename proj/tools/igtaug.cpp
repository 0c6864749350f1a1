// igtaug: deterministic toolkit for interlinear glossed text corpora —
// validation, augmentation, splitting, prompt formatting, chrF scoring,
// and combination analysis.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "igtaug/analysis.hpp"
#include "igtaug/chrf.hpp"
#include "igtaug/errors.hpp"
#include "igtaug/experiment.hpp"
#include "igtaug/igt.hpp"
#include "igtaug/io.hpp"
#include "igtaug/lexicon.hpp"
#include "igtaug/pipeline.hpp"
#include "igtaug/strategies.hpp"

namespace {

using namespace igtaug;

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty())
        std::cout << text;
    else
        write_file_atomic(output_path, text);
}

std::vector<std::string> read_lines(const std::string& path) {
    std::string text = read_file(path);
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        std::string line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        pos = nl + 1;
    }
    return lines;
}

// ----------------------------------------------------------------- validate

int cmd_validate(const std::string& input, bool strict, bool as_json) {
    std::string text = read_file(input);
    ParseResult parsed;
    if (json_corpus_path(input)) {
        parsed.corpus = parse_corpus_json(text);
    } else {
        parsed = parse_corpus_full(text, ParseOptions{strict});
    }
    int word = 0, four = 0, morph = 0;
    for (const auto& ex : parsed.corpus.examples) {
        auto rep = check_alignment(ex);
        word += rep.word_aligned;
        four += rep.four_line_aligned;
        morph += rep.morpheme_aligned;
    }
    if (as_json) {
        nlohmann::json j;
        j["examples"] = parsed.corpus.examples.size();
        j["skipped_blocks"] = parsed.skipped_blocks;
        j["word_aligned"] = word;
        j["four_line_aligned"] = four;
        j["morpheme_aligned"] = morph;
        j["warnings"] = parsed.warnings;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << "examples: " << parsed.corpus.examples.size() << "\n"
                  << "skipped blocks: " << parsed.skipped_blocks << "\n"
                  << "word aligned: " << word << "\n"
                  << "four-line aligned: " << four << "\n"
                  << "morpheme aligned: " << morph << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------ augment

int cmd_augment(const std::string& input, const std::string& output,
                const std::string& stats_path, const std::string& strategies,
                std::string language, std::int64_t seed, std::string lexicon_dir,
                bool strict) {
    Corpus corpus = load_corpus_file(input, strict);
    if (language.empty()) language = corpus.language;
    if (language.empty()) throw ConfigError("--language not given and corpus has none");
    if (lexicon_dir.empty()) lexicon_dir = default_lexicon_dir();

    std::set<std::string> combo;
    if (strategies == "all") {
        const auto& names = language_strategy_names(language);
        if (names.empty()) throw ConfigError("--strategies all needs language usp or arp");
        combo.insert(names.begin(), names.end());
    } else if (strategies != "baseline" && !strategies.empty()) {
        try {
            combo = parse_combination_field(strategies, language);
        } catch (const DataError& e) {
            throw ConfigError(e.what()); // a bad flag value is a usage problem
        }
    }

    AugmentationContext ctx = load_augmentation_context(
        lexicon_dir, language, static_cast<std::uint64_t>(seed), strict);
    AugmentStats stats;
    Corpus augmented = apply_combination(corpus, Combination{combo, language}, ctx, &stats);
    write_file_atomic(output, json_corpus_path(output) ? serialize_corpus_json(augmented)
                                                       : serialize_corpus(augmented));

    nlohmann::json j;
    j["originals"] = stats.originals;
    j["outputs"] = augmented.examples.size();
    j["seed"] = seed;
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [name, count] : stats.outputs) {
        nlohmann::json s;
        s["outputs"] = count;
        s["avg_per_example"] =
            stats.originals > 0 ? static_cast<double>(count) / static_cast<double>(stats.originals)
                                : 0.0;
        s["category"] = strategy_categories().at(name);
        per[name] = std::move(s);
    }
    j["per_strategy"] = std::move(per);
    if (stats_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_file_atomic(stats_path, j.dump(2) + "\n");
    return 0;
}

// -------------------------------------------------------------------- split

int cmd_split(const std::string& input, const std::string& out_dir, double fraction,
              std::int64_t seed, std::int64_t size, bool strict) {
    Corpus corpus = load_corpus_file(input, strict);
    SplitSpec spec;
    spec.eval_fraction = fraction;
    spec.seed = static_cast<std::uint64_t>(seed);
    auto [train, eval] = make_splits(corpus, spec);
    if (size != kFullSize) train = subsample(train, size, static_cast<std::uint64_t>(seed));
    fs::create_directories(out_dir);
    write_file_atomic(fs::path(out_dir) / "train.txt", serialize_corpus(train));
    write_file_atomic(fs::path(out_dir) / "eval.txt", serialize_corpus(eval));
    std::cout << "train: " << train.examples.size() << "\n"
              << "eval: " << eval.examples.size() << "\n";
    return 0;
}

// ------------------------------------------------------------------- format

int cmd_format(const std::string& input, const std::string& output, const std::string& task,
               std::string hrl_name, bool strict) {
    Corpus corpus = load_corpus_file(input, strict);
    if (hrl_name.empty()) hrl_name = default_hrl_name(corpus.language);
    if (hrl_name.empty())
        throw ConfigError("--hrl not given and no default for language '" + corpus.language +
                          "'");
    emit(prompts_to_jsonl(format_prompts(corpus, task, hrl_name)), output);
    return 0;
}

// -------------------------------------------------------------------- score

int cmd_score(const std::string& hyp_path, const std::string& ref_path, bool modified,
              int max_n, double beta, const std::string& output) {
    auto hyps = read_lines(hyp_path);
    auto refs = read_lines(ref_path);
    if (hyps.size() != refs.size())
        throw DataError("line count mismatch: " + std::to_string(hyps.size()) +
                        " hypotheses vs " + std::to_string(refs.size()) + " references");
    if (hyps.empty()) throw DataError("no sentences to score");

    ChrfConfig cfg;
    cfg.max_n = max_n;
    cfg.beta = beta;
    cfg.boundary_mode = modified ? BoundaryMode::word_internal : BoundaryMode::crossing;

    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(hyps.size());
    for (std::size_t i = 0; i < hyps.size(); ++i) pairs.emplace_back(hyps[i], refs[i]);

    nlohmann::json j;
    j["config"] = {{"beta", cfg.beta},
                   {"max_n", cfg.max_n},
                   {"mode", modified ? "word_internal" : "crossing"},
                   {"aggregation", "micro"}};
    j["corpus_chrf"] = chrf_corpus(pairs, cfg).score;
    nlohmann::json sentences = nlohmann::json::array();
    for (const auto& [hyp, ref] : pairs) sentences.push_back(chrf(hyp, ref, cfg).score);
    j["sentence_chrf"] = std::move(sentences);
    emit(j.dump(2) + "\n", output);
    return 0;
}

// ------------------------------------------------------------------ analyze

int cmd_analyze(const std::string& results_path, const std::string& analysis,
                const std::string& language, const std::string& task,
                const std::string& split, std::size_t top_k, bool markdown,
                const std::string& output) {
    ResultsTable table = ingest_results(read_file(results_path));
    ReportFormat format = markdown ? ReportFormat::markdown : ReportFormat::csv;
    std::string report;
    if (analysis == "marginal")
        report = report_marginal_effects(table, language, task, split, format);
    else if (analysis == "deltas")
        report = report_baseline_deltas(table, language, task, split, format);
    else if (analysis == "best")
        report = report_best_combinations(table, language, task, top_k, format);
    else
        throw ConfigError("unknown analysis '" + analysis + "' (marginal|deltas|best)");
    emit(report, output);
    return 0;
}

// ----------------------------------------------------------------- pipeline

int cmd_pipeline(const std::string& config_path, bool force, const std::string& input,
                 const std::string& out_dir, const std::string& language,
                 const std::string& lexicon_dir, std::optional<std::int64_t> seed) {
    PipelineConfig cfg = load_pipeline_config(read_file(config_path));
    // flags override config keys
    if (!input.empty()) cfg.input = input;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!language.empty()) cfg.language = language;
    if (!lexicon_dir.empty()) cfg.lexicon_dir = lexicon_dir;
    if (seed) cfg.seeds = {*seed};
    PipelineSummary summary = run_pipeline(cfg, force);
    std::cout << "wrote " << summary.leaves_written << " leaf directories under "
              << summary.out_dir.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic IGT augmentation and evaluation toolkit"};
    app.require_subcommand(1);

    // validate
    auto* validate = app.add_subcommand("validate", "parse a corpus and report alignment counts");
    std::string v_input;
    bool v_strict = false, v_json = false;
    validate->add_option("--input", v_input, "corpus file (.txt or .json)")->required();
    validate->add_flag("--strict", v_strict, "abort on malformed blocks");
    validate->add_flag("--json", v_json, "emit the summary as JSON");

    // augment
    auto* augment = app.add_subcommand("augment", "apply augmentation strategies to a corpus");
    std::string a_input, a_output, a_stats, a_strategies = "baseline", a_language, a_lexicons;
    std::int64_t a_seed = static_cast<std::int64_t>(kDefaultSeed);
    bool a_strict = false;
    augment->add_option("--input", a_input, "corpus file")->required();
    augment->add_option("--output", a_output, "augmented corpus file")->required();
    augment->add_option("--strategies", a_strategies,
                        "\"+\"-joined strategy names, \"all\", or \"baseline\"");
    augment->add_option("--language", a_language, "language code (default: from corpus)");
    augment->add_option("--seed", a_seed, "global seed");
    augment->add_option("--lexicon-dir", a_lexicons,
                        "word list directory (default: $IGTAUG_LEXICON_DIR)");
    augment->add_option("--stats", a_stats, "write run statistics JSON here (default: stdout)");
    augment->add_flag("--strict", a_strict, "abort on malformed input");

    // split
    auto* split = app.add_subcommand("split", "split a corpus into train and eval files");
    std::string s_input, s_out_dir;
    double s_fraction = 0.05;
    std::int64_t s_seed = static_cast<std::int64_t>(kDefaultSeed), s_size = kFullSize;
    bool s_strict = false;
    std::string s_size_str = "full";
    split->add_option("--input", s_input, "corpus file")->required();
    split->add_option("--out-dir", s_out_dir, "directory for train.txt / eval.txt")->required();
    split->add_option("--fraction", s_fraction, "eval fraction (default 0.05)");
    split->add_option("--seed", s_seed, "global seed");
    split->add_option("--size", s_size_str, "subsample the train half (100/500/1000/5000/full)");
    split->add_flag("--strict", s_strict, "abort on malformed input");

    // format
    auto* format = app.add_subcommand("format", "write prompt pairs as JSON lines");
    std::string f_input, f_output, f_task = "to_hrl", f_hrl;
    bool f_strict = false;
    format->add_option("--input", f_input, "corpus file")->required();
    format->add_option("--output", f_output, "output path (default: stdout)");
    format->add_option("--task", f_task, "to_hrl | from_hrl | igt");
    format->add_option("--hrl", f_hrl, "high-resource language name (default by language)");
    format->add_flag("--strict", f_strict, "abort on malformed input");

    // score
    auto* score = app.add_subcommand("score", "chrF between two parallel sentence files");
    std::string c_hyp, c_ref, c_output;
    bool c_modified = false;
    int c_max_n = 6;
    double c_beta = 2.0;
    score->add_option("--hyp", c_hyp, "hypothesis file, one sentence per line")->required();
    score->add_option("--ref", c_ref, "reference file, one sentence per line")->required();
    score->add_flag("--modified", c_modified, "word-order-insensitive variant");
    score->add_option("--max-n", c_max_n, "maximum n-gram order (default 6)");
    score->add_option("--beta", c_beta, "recall weight (default 2)");
    score->add_option("--output", c_output, "output path (default: stdout)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "analyses over a results CSV");
    std::string n_results, n_analysis = "marginal", n_language, n_task = "to_hrl",
                n_split = "test", n_output;
    std::size_t n_top = 5;
    bool n_markdown = false;
    analyze->add_option("--results", n_results, "results CSV")->required();
    analyze->add_option("--analysis", n_analysis, "marginal | deltas | best");
    analyze->add_option("--language", n_language, "language code")->required();
    analyze->add_option("--task", n_task, "to_hrl | from_hrl | igt");
    analyze->add_option("--split", n_split, "eval | test (default test)");
    analyze->add_option("--top", n_top, "how many combinations for --analysis best");
    analyze->add_flag("--markdown", n_markdown, "markdown tables instead of CSV");
    analyze->add_option("--output", n_output, "output path (default: stdout)");

    // pipeline
    auto* pipeline = app.add_subcommand("pipeline", "full batch run from a JSON config");
    std::string p_config, p_input, p_out, p_language, p_lexicons;
    std::int64_t p_seed_value = 0;
    bool p_force = false;
    auto* p_seed_opt = pipeline->add_option("--seed", p_seed_value,
                                            "replace the config's seed list with one seed");
    pipeline->add_option("--config", p_config, "pipeline config JSON")->required();
    pipeline->add_option("--input", p_input, "override config input");
    pipeline->add_option("--out-dir", p_out, "override config out_dir");
    pipeline->add_option("--language", p_language, "override config language");
    pipeline->add_option("--lexicon-dir", p_lexicons, "override config lexicon_dir");
    pipeline->add_flag("--force", p_force, "rebuild partial output directories");

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(validate)) return cmd_validate(v_input, v_strict, v_json);
        if (app.got_subcommand(augment))
            return cmd_augment(a_input, a_output, a_stats, a_strategies, a_language, a_seed,
                               a_lexicons, a_strict);
        if (app.got_subcommand(split)) {
            try {
                s_size = igtaug::parse_train_size(s_size_str);
            } catch (const igtaug::DataError& e) {
                // a bad flag value is a usage problem, not bad data
                throw igtaug::ConfigError(e.what());
            }
            return cmd_split(s_input, s_out_dir, s_fraction, s_seed, s_size, s_strict);
        }
        if (app.got_subcommand(format))
            return cmd_format(f_input, f_output, f_task, f_hrl, f_strict);
        if (app.got_subcommand(score))
            return cmd_score(c_hyp, c_ref, c_modified, c_max_n, c_beta, c_output);
        if (app.got_subcommand(analyze))
            return cmd_analyze(n_results, n_analysis, n_language, n_task, n_split, n_top,
                               n_markdown, n_output);
        if (app.got_subcommand(pipeline))
            return cmd_pipeline(p_config, p_force, p_input, p_out, p_language, p_lexicons,
                                p_seed_opt->count() ? std::optional<std::int64_t>(p_seed_value)
                                                    : std::nullopt);
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const igtaug::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const igtaug::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
