#pragma once

// Results-table ingestion and the three downstream analyses: deltas from
// the baseline, per-strategy marginal effects over the combination
// lattice, and best-combination ranking.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "igtaug/errors.hpp"
#include "igtaug/strategies.hpp"

namespace igtaug {

constexpr std::int64_t kFullSize = -1;

inline std::string format_train_size(std::int64_t size) {
    return size == kFullSize ? "full" : std::to_string(size);
}

inline std::int64_t parse_train_size(const std::string& s) {
    if (s == "full") return kFullSize;
    static const std::set<std::string> allowed = {"100", "500", "1000", "5000"};
    if (!allowed.count(s))
        throw DataError("train_size must be one of 100/500/1000/5000/full, got '" + s + "'");
    return std::stoll(s);
}

struct ExperimentRecord {
    std::string task; // to_hrl | from_hrl | igt
    std::string language;
    std::set<std::string> combination; // empty = baseline
    std::int64_t train_size = kFullSize;
    std::int64_t seed = 0;
    std::string split; // eval | test
    double chrf = 0.0;
};

struct ResultsTable {
    std::vector<ExperimentRecord> records;
};

struct MeanStd {
    double mean = 0.0;
    double stdev = 0.0; // population standard deviation
    std::int64_t count = 0;
};

namespace detail {

inline MeanStd mean_std(const std::vector<double>& xs) {
    MeanStd out;
    out.count = static_cast<std::int64_t>(xs.size());
    if (xs.empty()) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(xs.size());
    double sq = 0.0;
    for (double x : xs) sq += (x - out.mean) * (x - out.mean);
    out.stdev = std::sqrt(sq / static_cast<double>(xs.size()));
    return out;
}

inline std::string record_key(const std::string& task, const std::string& language,
                              const std::string& combo_label, std::int64_t size,
                              std::int64_t seed, const std::string& split) {
    return task + "|" + language + "|" + combo_label + "|" + format_train_size(size) + "|" +
           std::to_string(seed) + "|" + split;
}

// chrf by full key, for paired lookups
inline std::map<std::string, double> score_index(const ResultsTable& table) {
    std::map<std::string, double> idx;
    for (const auto& rec : table.records) {
        std::string key = record_key(rec.task, rec.language,
                                     combination_label(rec.combination, rec.language),
                                     rec.train_size, rec.seed, rec.split);
        idx.emplace(std::move(key), rec.chrf);
    }
    return idx;
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

} // namespace detail

inline std::set<std::string> parse_combination_field(const std::string& field,
                                                     const std::string& language) {
    std::set<std::string> combo;
    if (field.empty()) return combo;
    for (const auto& name : detail::split_on(field, '+')) {
        if (name.empty()) throw DataError("bad combination field '" + field + "'");
        const auto& allowed = language_strategy_names(language);
        if (!allowed.empty() &&
            std::find(allowed.begin(), allowed.end(), name) == allowed.end())
            throw DataError("unknown strategy name '" + name + "' for language '" + language +
                            "'");
        if (!combo.insert(name).second)
            throw DataError("repeated strategy '" + name + "' in combination field");
    }
    return combo;
}

// CSV schema: task,language,combination,train_size,seed,split,chrf with the
// combination encoded as "+"-joined names (canonical order on output, any
// order accepted on input) and the empty field meaning the baseline.
// Plain commas only; fields are not quoted.
inline ResultsTable ingest_results(const std::string& csv) {
    static const std::string kHeader = "task,language,combination,train_size,seed,split,chrf";
    std::vector<std::string> lines;
    for (auto& line : detail::split_on(csv, '\n')) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(std::move(line));
    }
    if (lines.empty() || lines[0] != kHeader)
        throw DataError("results CSV must start with header '" + kHeader + "'");

    ResultsTable table;
    std::set<std::string> keys;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto cols = detail::split_on(lines[i], ',');
        if (cols.size() != 7)
            throw DataError("results row " + std::to_string(i + 1) + ": expected 7 columns");
        ExperimentRecord rec;
        rec.task = cols[0];
        if (rec.task != "to_hrl" && rec.task != "from_hrl" && rec.task != "igt")
            throw DataError("results row " + std::to_string(i + 1) + ": unknown task '" +
                            rec.task + "'");
        rec.language = cols[1];
        rec.combination = parse_combination_field(cols[2], rec.language);
        rec.train_size = parse_train_size(cols[3]);
        try {
            rec.seed = std::stoll(cols[4]);
        } catch (const std::exception&) {
            throw DataError("results row " + std::to_string(i + 1) + ": bad seed '" + cols[4] +
                            "'");
        }
        rec.split = cols[5];
        if (rec.split != "eval" && rec.split != "test")
            throw DataError("results row " + std::to_string(i + 1) + ": unknown split '" +
                            rec.split + "'");
        try {
            rec.chrf = std::stod(cols[6]);
        } catch (const std::exception&) {
            throw DataError("results row " + std::to_string(i + 1) + ": bad chrf '" + cols[6] +
                            "'");
        }
        if (!(rec.chrf >= 0.0 && rec.chrf <= 100.0))
            throw DataError("results row " + std::to_string(i + 1) + ": chrf out of [0,100]");
        std::string key = detail::record_key(rec.task, rec.language,
                                             combination_label(rec.combination, rec.language),
                                             rec.train_size, rec.seed, rec.split);
        if (!keys.insert(key).second)
            throw DataError("results row " + std::to_string(i + 1) + ": duplicate record key");
        table.records.push_back(std::move(rec));
    }
    return table;
}

// Mean/std of (chrF - baseline chrF), paired by seed, at one train size.
inline MeanStd baseline_delta(const ResultsTable& table, const std::string& language,
                              const std::set<std::string>& combination,
                              const std::string& task, std::int64_t train_size,
                              const std::string& split = "test") {
    const std::string combo_label = combination_label(combination, language);
    const std::string base_label;
    std::map<std::int64_t, double> combo_scores, base_scores;
    for (const auto& rec : table.records) {
        if (rec.task != task || rec.language != language || rec.split != split ||
            rec.train_size != train_size)
            continue;
        std::string label = combination_label(rec.combination, rec.language);
        if (label == combo_label) combo_scores[rec.seed] = rec.chrf;
        if (label == base_label) base_scores[rec.seed] = rec.chrf;
    }
    if (combo_scores.empty())
        throw DataError("baseline_delta: no records for combination '" +
                        (combo_label.empty() ? "(baseline)" : combo_label) + "'");
    std::vector<double> deltas;
    for (const auto& [seed, score] : combo_scores) {
        auto it = base_scores.find(seed);
        if (it == base_scores.end())
            throw DataError("baseline_delta: no baseline record for seed " +
                            std::to_string(seed));
        deltas.push_back(score - it->second);
    }
    return detail::mean_std(deltas);
}

// Distinct strategy names forming the lattice for one (language, task,
// split) slice: the fixed per-language set for usp/arp, the observed set
// otherwise.
inline std::vector<std::string> strategy_universe(const ResultsTable& table,
                                                  const std::string& language,
                                                  const std::string& task,
                                                  const std::string& split) {
    if (!language_strategy_names(language).empty()) return language_strategy_names(language);
    std::set<std::string> seen;
    for (const auto& rec : table.records) {
        if (rec.task != task || rec.language != language || rec.split != split) continue;
        seen.insert(rec.combination.begin(), rec.combination.end());
    }
    return {seen.begin(), seen.end()};
}

// Mean difference chrF(C + S) - chrF(C) over every combination C not
// containing S, every train size, and every seed.  Requires the full
// 2^k lattice; exactly 2^(k-1) combination pairs contribute.
inline MeanStd marginal_effect(const ResultsTable& table, const std::string& language,
                               const std::string& strategy, const std::string& task,
                               const std::string& split = "test") {
    auto universe = strategy_universe(table, language, task, split);
    if (std::find(universe.begin(), universe.end(), strategy) == universe.end())
        throw DataError("marginal_effect: strategy '" + strategy +
                        "' appears in no combination for this slice");

    std::set<std::int64_t> sizes, seeds;
    for (const auto& rec : table.records) {
        if (rec.task != task || rec.language != language || rec.split != split) continue;
        sizes.insert(rec.train_size);
        seeds.insert(rec.seed);
    }
    if (sizes.empty())
        throw DataError("marginal_effect: no records for task '" + task + "', language '" +
                        language + "', split '" + split + "'");

    auto index = detail::score_index(table);
    std::vector<std::string> others;
    for (const auto& name : universe)
        if (name != strategy) others.push_back(name);

    std::vector<double> diffs;
    for (const auto& without : enumerate_combinations(others, language)) {
        std::set<std::string> with = without.strategies;
        with.insert(strategy);
        const std::string label_without = combination_label(without.strategies, language);
        const std::string label_with = combination_label(with, language);
        for (std::int64_t size : sizes) {
            for (std::int64_t seed : seeds) {
                auto lo = index.find(detail::record_key(task, language, label_without, size,
                                                       seed, split));
                auto hi = index.find(detail::record_key(task, language, label_with, size,
                                                       seed, split));
                if (lo == index.end() || hi == index.end())
                    throw DataError("marginal_effect: incomplete lattice, missing '" +
                                    (lo == index.end() ? label_without : label_with) +
                                    "' at size " + format_train_size(size) + ", seed " +
                                    std::to_string(seed));
                diffs.push_back(hi->second - lo->second);
            }
        }
    }
    return detail::mean_std(diffs);
}

struct RankedCombination {
    std::set<std::string> combination;
    std::string label; // empty = baseline
    double mean_eval_chrf = 0.0;
    std::int64_t eval_records = 0;
    // per-train-size test deltas vs baseline (sizes with complete pairs only)
    std::vector<std::pair<std::int64_t, MeanStd>> test_deltas;
};

// Rank combinations by mean eval-split chrF pooled across train sizes and
// seeds; report per-size test-split deltas for the top k.  Ties break
// toward fewer strategies, then name order.
inline std::vector<RankedCombination> best_combinations(const ResultsTable& table,
                                                        const std::string& language,
                                                        const std::string& task,
                                                        std::size_t k) {
    struct Group {
        std::set<std::string> combination;
        std::vector<double> eval_scores;
        std::set<std::int64_t> test_sizes;
    };
    std::map<std::string, Group> groups;
    for (const auto& rec : table.records) {
        if (rec.task != task || rec.language != language) continue;
        std::string label = combination_label(rec.combination, rec.language);
        auto& g = groups[label];
        g.combination = rec.combination;
        if (rec.split == "eval")
            g.eval_scores.push_back(rec.chrf);
        else
            g.test_sizes.insert(rec.train_size);
    }
    std::vector<RankedCombination> ranked;
    for (auto& [label, g] : groups) {
        if (g.eval_scores.empty()) continue;
        RankedCombination rc;
        rc.combination = g.combination;
        rc.label = label;
        // records were grouped via an ordered map, so the pooled order is
        // stable no matter how the input rows were shuffled
        std::sort(g.eval_scores.begin(), g.eval_scores.end());
        rc.mean_eval_chrf = detail::mean_std(g.eval_scores).mean;
        rc.eval_records = static_cast<std::int64_t>(g.eval_scores.size());
        ranked.push_back(std::move(rc));
    }
    if (k > ranked.size())
        throw DataError("best_combinations: asked for " + std::to_string(k) +
                        " combinations but only " + std::to_string(ranked.size()) +
                        " have eval records");
    std::sort(ranked.begin(), ranked.end(),
              [](const RankedCombination& a, const RankedCombination& b) {
                  if (a.mean_eval_chrf != b.mean_eval_chrf)
                      return a.mean_eval_chrf > b.mean_eval_chrf;
                  if (a.combination.size() != b.combination.size())
                      return a.combination.size() < b.combination.size();
                  return std::vector<std::string>(a.combination.begin(), a.combination.end()) <
                         std::vector<std::string>(b.combination.begin(), b.combination.end());
              });
    ranked.resize(k);

    // attach test deltas where both sides exist
    for (auto& rc : ranked) {
        std::set<std::int64_t> sizes;
        for (const auto& rec : table.records)
            if (rec.task == task && rec.language == language && rec.split == "test" &&
                combination_label(rec.combination, rec.language) == rc.label)
                sizes.insert(rec.train_size);
        for (std::int64_t size : sizes) {
            try {
                rc.test_deltas.emplace_back(
                    size, baseline_delta(table, language, rc.combination, task, size, "test"));
            } catch (const DataError&) {
                // baseline missing for this size: skip rather than fail the report
            }
        }
    }
    return ranked;
}

// -------------------------------------------------------------- reporting

inline std::string format_fixed(double value, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

// "mean(std)" presentation, e.g. "-0.83 (1.99)"
inline std::string format_mean_std(const MeanStd& ms) {
    return format_fixed(ms.mean) + " (" + format_fixed(ms.stdev) + ")";
}

enum class ReportFormat { csv, markdown };

inline std::string report_marginal_effects(const ResultsTable& table,
                                           const std::string& language,
                                           const std::string& task,
                                           const std::string& split = "test",
                                           ReportFormat format = ReportFormat::csv) {
    auto universe = strategy_universe(table, language, task, split);
    std::string out;
    if (format == ReportFormat::csv) {
        out = "strategy,effect,count\n";
        for (const auto& name : universe) {
            MeanStd ms = marginal_effect(table, language, name, task, split);
            out += name + "," + format_mean_std(ms) + "," + std::to_string(ms.count) + "\n";
        }
    } else {
        out = "| strategy | effect |\n|---|---|\n";
        for (const auto& name : universe) {
            MeanStd ms = marginal_effect(table, language, name, task, split);
            out += "| " + name + " | " + format_mean_std(ms) + " |\n";
        }
    }
    return out;
}

inline std::string report_baseline_deltas(const ResultsTable& table,
                                          const std::string& language,
                                          const std::string& task,
                                          const std::string& split = "test",
                                          ReportFormat format = ReportFormat::csv) {
    // all non-baseline combinations present in the slice, smallest first
    std::map<std::pair<std::size_t, std::string>, std::set<std::string>> combos;
    std::set<std::int64_t> sizes;
    for (const auto& rec : table.records) {
        if (rec.task != task || rec.language != language || rec.split != split) continue;
        sizes.insert(rec.train_size);
        if (!rec.combination.empty()) {
            std::string label = combination_label(rec.combination, rec.language);
            combos[{rec.combination.size(), label}] = rec.combination;
        }
    }
    std::string out = format == ReportFormat::csv
                          ? "combination,train_size,delta\n"
                          : "| combination | train size | delta |\n|---|---|---|\n";
    for (const auto& [key, combo] : combos) {
        for (std::int64_t size : sizes) {
            MeanStd ms = baseline_delta(table, language, combo, task, size, split);
            if (format == ReportFormat::csv)
                out += key.second + "," + format_train_size(size) + "," + format_mean_std(ms) +
                       "\n";
            else
                out += "| " + key.second + " | " + format_train_size(size) + " | " +
                       format_mean_std(ms) + " |\n";
        }
    }
    return out;
}

inline std::string report_best_combinations(const ResultsTable& table,
                                            const std::string& language,
                                            const std::string& task, std::size_t k,
                                            ReportFormat format = ReportFormat::csv) {
    auto ranked = best_combinations(table, language, task, k);
    std::string out = format == ReportFormat::csv
                          ? "rank,combination,mean_eval_chrf,train_size,test_delta\n"
                          : "| rank | combination | mean eval chrF | train size | test delta "
                            "|\n|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& rc = ranked[i];
        const std::string shown = rc.label.empty() ? "(baseline)" : rc.label;
        auto emit_row = [&](const std::string& size, const std::string& delta) {
            if (format == ReportFormat::csv)
                out += std::to_string(i + 1) + "," + shown + "," +
                       format_fixed(rc.mean_eval_chrf) + "," + size + "," + delta + "\n";
            else
                out += "| " + std::to_string(i + 1) + " | " + shown + " | " +
                       format_fixed(rc.mean_eval_chrf) + " | " + size + " | " + delta + " |\n";
        };
        if (rc.test_deltas.empty())
            emit_row("-", "-");
        else
            for (const auto& [size, ms] : rc.test_deltas)
                emit_row(format_train_size(size), format_mean_std(ms));
    }
    return out;
}

} // namespace igtaug
