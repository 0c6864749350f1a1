#pragma once

// Character n-gram F-score, plus the word-order-insensitive variant that
// drops every n-gram crossing a word boundary.
//
// Conventions (frozen against tests/data/chrf_cases.tsv, which was
// generated by the reference implementation in tests/oracle/): n-grams are
// Unicode codepoints, not bytes; base mode strips all whitespace before
// extraction; an order contributes to the average only when both sides
// have at least one n-gram of that order; the final score is 100 times the
// mean of the per-order F_beta values.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "igtaug/errors.hpp"
#include "igtaug/igt.hpp"

namespace igtaug {

enum class BoundaryMode { crossing, word_internal };

struct ChrfConfig {
    int max_n = 6;
    double beta = 2.0;
    BoundaryMode boundary_mode = BoundaryMode::crossing;
};

struct ChrfOrderStats {
    std::int64_t hyp_grams = 0;
    std::int64_t ref_grams = 0;
    std::int64_t match_grams = 0;
};

struct ChrfPerOrder {
    double precision = 0.0;
    double recall = 0.0;
    ChrfOrderStats stats;
};

struct ChrfScore {
    double score = 0.0;
    std::vector<ChrfPerOrder> per_n;
};

namespace detail {

// Lenient UTF-8 decode; a malformed byte becomes its own codepoint so the
// metric stays total and deterministic on arbitrary input.
inline std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        int extra = 0;
        char32_t cp = c;
        if (c >= 0xf0)
            extra = 3, cp = c & 0x07u;
        else if (c >= 0xe0)
            extra = 2, cp = c & 0x0fu;
        else if (c >= 0xc0)
            extra = 1, cp = c & 0x1fu;
        if (extra > 0 && i + extra < s.size()) {
            bool ok = true;
            for (int k = 1; k <= extra; ++k) {
                unsigned char cc = static_cast<unsigned char>(s[i + k]);
                if ((cc & 0xc0u) != 0x80u) {
                    ok = false;
                    break;
                }
                cp = (cp << 6) | (cc & 0x3fu);
            }
            if (ok) {
                out.push_back(cp);
                i += extra + 1;
                continue;
            }
        }
        out.push_back(c);
        ++i;
    }
    return out;
}

inline std::string encode_utf8(const std::u32string& s) {
    std::string out;
    for (char32_t cp : s) {
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xc0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3f));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xe0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
            out += static_cast<char>(0x80 | (cp & 0x3f));
        } else {
            out += static_cast<char>(0xf0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
            out += static_cast<char>(0x80 | (cp & 0x3f));
        }
    }
    return out;
}

inline bool cp_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v';
}

using GramCounts = std::map<std::u32string, std::int64_t>;

inline void count_grams(const std::u32string& chars, int n, GramCounts& out) {
    if (static_cast<int>(chars.size()) < n) return;
    for (std::size_t i = 0; i + n <= chars.size(); ++i)
        ++out[chars.substr(i, static_cast<std::size_t>(n))];
}

inline GramCounts grams_of(std::string_view text, int n, BoundaryMode mode) {
    GramCounts out;
    std::u32string chars = decode_utf8(text);
    if (mode == BoundaryMode::crossing) {
        std::u32string stripped;
        stripped.reserve(chars.size());
        for (char32_t c : chars)
            if (!cp_space(c)) stripped.push_back(c);
        count_grams(stripped, n, out);
    } else {
        std::size_t i = 0;
        while (i < chars.size()) {
            while (i < chars.size() && cp_space(chars[i])) ++i;
            std::size_t start = i;
            while (i < chars.size() && !cp_space(chars[i])) ++i;
            if (i > start) count_grams(chars.substr(start, i - start), n, out);
        }
    }
    return out;
}

inline std::vector<ChrfOrderStats> pair_stats(std::string_view hyp, std::string_view ref,
                                              const ChrfConfig& cfg) {
    std::vector<ChrfOrderStats> stats(static_cast<std::size_t>(cfg.max_n));
    for (int n = 1; n <= cfg.max_n; ++n) {
        GramCounts h = grams_of(hyp, n, cfg.boundary_mode);
        GramCounts r = grams_of(ref, n, cfg.boundary_mode);
        ChrfOrderStats& s = stats[static_cast<std::size_t>(n - 1)];
        for (const auto& [gram, count] : h) s.hyp_grams += count;
        for (const auto& [gram, count] : r) s.ref_grams += count;
        for (const auto& [gram, count] : h) {
            auto it = r.find(gram);
            if (it != r.end()) s.match_grams += std::min(count, it->second);
        }
    }
    return stats;
}

inline ChrfScore score_from_stats(const std::vector<ChrfOrderStats>& stats, double beta) {
    ChrfScore out;
    const double factor = beta * beta;
    int effective = 0;
    double total = 0.0;
    for (const auto& s : stats) {
        ChrfPerOrder per;
        per.stats = s;
        if (s.hyp_grams > 0)
            per.precision = static_cast<double>(s.match_grams) / static_cast<double>(s.hyp_grams);
        if (s.ref_grams > 0)
            per.recall = static_cast<double>(s.match_grams) / static_cast<double>(s.ref_grams);
        if (s.hyp_grams > 0 && s.ref_grams > 0) {
            double denom = factor * per.precision + per.recall;
            if (denom > 0.0)
                total += (1.0 + factor) * per.precision * per.recall / denom;
            ++effective;
        }
        out.per_n.push_back(per);
    }
    out.score = effective > 0 ? 100.0 * total / static_cast<double>(effective) : 0.0;
    return out;
}

inline void validate(const ChrfConfig& cfg) {
    if (cfg.max_n < 1) throw ConfigError("chrf: max_n must be >= 1");
    if (!(cfg.beta > 0.0)) throw ConfigError("chrf: beta must be > 0");
}

} // namespace detail

// Multiset of n-grams as UTF-8 strings, mainly for inspection and tests.
inline std::map<std::string, std::int64_t> char_ngrams(std::string_view text, int n,
                                                       BoundaryMode mode) {
    if (n < 1) throw ConfigError("char_ngrams: n must be >= 1");
    std::map<std::string, std::int64_t> out;
    for (const auto& [gram, count] : detail::grams_of(text, n, mode))
        out.emplace(detail::encode_utf8(gram), count);
    return out;
}

inline ChrfScore chrf(std::string_view hypothesis, std::string_view reference,
                      const ChrfConfig& config = {}) {
    detail::validate(config);
    if (hypothesis.empty() && reference.empty()) {
        ChrfScore s;
        s.score = 100.0; // both sides empty: nothing to get wrong
        s.per_n.resize(static_cast<std::size_t>(config.max_n));
        return s;
    }
    return detail::score_from_stats(detail::pair_stats(hypothesis, reference, config),
                                    config.beta);
}

// Micro aggregation: n-gram statistics are summed over all pairs before
// precision/recall/F are computed.
inline ChrfScore chrf_corpus(const std::vector<std::pair<std::string, std::string>>& pairs,
                             const ChrfConfig& config = {}) {
    detail::validate(config);
    if (pairs.empty()) throw DataError("chrf_corpus: empty pair list");
    bool all_empty = true;
    std::vector<ChrfOrderStats> total(static_cast<std::size_t>(config.max_n));
    for (const auto& [hyp, ref] : pairs) {
        if (!hyp.empty() || !ref.empty()) all_empty = false;
        auto stats = detail::pair_stats(hyp, ref, config);
        for (std::size_t i = 0; i < total.size(); ++i) {
            total[i].hyp_grams += stats[i].hyp_grams;
            total[i].ref_grams += stats[i].ref_grams;
            total[i].match_grams += stats[i].match_grams;
        }
    }
    if (all_empty) {
        ChrfScore s;
        s.score = 100.0;
        s.per_n.resize(static_cast<std::size_t>(config.max_n));
        return s;
    }
    return detail::score_from_stats(total, config.beta);
}

inline ChrfScore modified_chrf(std::string_view hypothesis, std::string_view reference,
                               ChrfConfig config = {}) {
    config.boundary_mode = BoundaryMode::word_internal;
    return chrf(hypothesis, reference, config);
}

inline ChrfScore modified_chrf_corpus(
    const std::vector<std::pair<std::string, std::string>>& pairs, ChrfConfig config = {}) {
    config.boundary_mode = BoundaryMode::word_internal;
    return chrf_corpus(pairs, config);
}

} // namespace igtaug
