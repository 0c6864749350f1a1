#pragma once

// Interlinear glossed text: records, parsing, serialization, alignment.
//
// On-disk text format (UTF-8, LF): Toolbox-style blocks separated by blank
// lines.  Each line is `\<prefix> <content>` with a literal backslash.
// Recognized example prefixes: \t transcription, \m segmentation, \g gloss,
// \l translation, \id stable identifier, \lang language override.  A
// leading block containing only \lang / \src lines is the corpus header.
// Unknown prefixes are kept as ordered metadata (lenient) or rejected
// (strict).

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "igtaug/errors.hpp"

namespace igtaug {

// ---------------------------------------------------------------- helpers

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_ascii_space(s[i])) ++i;
        std::size_t start = i;
        while (i < s.size() && !is_ascii_space(s[i])) ++i;
        if (i > start) out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

inline std::string join(const std::vector<std::string>& words, std::string_view sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += sep;
        out += words[i];
    }
    return out;
}

// ------------------------------------------------------------------ types

struct IgtExample {
    std::string id;
    std::string language;
    std::vector<std::string> surface_words;
    std::optional<std::vector<std::string>> segmentation_words;
    std::vector<std::string> gloss_words; // empty = no gloss line
    std::string translation;              // raw line content; empty = absent
    // Unrecognized lines, in file order: (prefix without backslash, content).
    std::vector<std::pair<std::string, std::string>> extra;

    bool operator==(const IgtExample&) const = default;
};

struct Corpus {
    std::string language;
    std::string provenance;
    std::vector<IgtExample> examples;

    bool operator==(const Corpus&) const = default;
};

struct AlignmentReport {
    bool word_aligned = false;
    bool four_line_aligned = false;
    bool morpheme_aligned = false; // vacuously true when not evaluated
    std::vector<std::size_t> offending_positions;
};

// ------------------------------------------------------------- operations

// Split a gloss or segmentation word into morphemes.  "-" separates
// morphemes; "@" joins multi-word stem translations and is NOT split.
inline std::vector<std::string> split_morphemes(std::string_view word) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= word.size(); ++i) {
        if (i == word.size() || word[i] == '-') {
            out.emplace_back(word.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline bool is_verb(std::string_view gloss_word, const std::set<std::string>& verb_tags) {
    if (verb_tags.empty()) throw ConfigError("is_verb: verb tag set is empty");
    for (const auto& m : split_morphemes(gloss_word))
        if (verb_tags.count(m)) return true;
    return false;
}

// Concatenate morphemes by dropping "-".  Note the attested surface form
// can differ from this (e.g. segmentation "juntiir" vs surface "juntir"),
// so callers must not assume equality.
inline std::string reconstruct_surface(std::string_view segmentation_word) {
    std::string out;
    for (char c : segmentation_word)
        if (c != '-') out += c;
    return out;
}

inline AlignmentReport check_alignment(const IgtExample& ex) {
    AlignmentReport rep;
    const std::size_t n = ex.surface_words.size();
    rep.word_aligned = ex.gloss_words.size() == n &&
                       (!ex.segmentation_words || ex.segmentation_words->size() == n);
    rep.four_line_aligned = rep.word_aligned;
    if (!ex.translation.empty() && split_ws(ex.translation).size() != n)
        rep.four_line_aligned = false;
    rep.morpheme_aligned = true;
    if (ex.segmentation_words && rep.word_aligned) {
        for (std::size_t i = 0; i < n; ++i) {
            if (split_morphemes((*ex.segmentation_words)[i]).size() !=
                split_morphemes(ex.gloss_words[i]).size())
                rep.offending_positions.push_back(i);
        }
        rep.morpheme_aligned = rep.offending_positions.empty();
    }
    return rep;
}

// ----------------------------------------------------------------- parser

struct ParseOptions {
    bool strict = false;
};

struct ParseResult {
    Corpus corpus;
    int skipped_blocks = 0;
    std::vector<std::string> warnings;
};

namespace detail {

struct RawLine {
    std::string prefix; // without the backslash
    std::string content;
};

inline bool parse_raw_line(std::string_view line, RawLine& out) {
    if (line.empty() || line[0] != '\\') return false;
    std::size_t sp = line.find(' ');
    if (sp == std::string_view::npos) {
        out.prefix = std::string(line.substr(1));
        out.content.clear();
    } else {
        out.prefix = std::string(line.substr(1, sp - 1));
        out.content = std::string(line.substr(sp + 1));
    }
    return !out.prefix.empty();
}

inline bool blank_line(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return is_ascii_space(c); });
}

} // namespace detail

inline ParseResult parse_corpus_full(const std::string& text, ParseOptions opt = {}) {
    ParseResult res;
    static const std::set<std::string> kRecognized = {"t", "m", "g", "l", "id", "lang"};

    // split into blocks of consecutive non-blank lines
    std::vector<std::vector<std::string>> blocks;
    {
        std::vector<std::string> cur;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (detail::blank_line(line)) {
                if (!cur.empty()) blocks.push_back(std::move(cur)), cur.clear();
            } else {
                cur.push_back(std::move(line));
            }
            if (nl == std::string::npos) break;
            pos = nl + 1;
        }
        if (!cur.empty()) blocks.push_back(std::move(cur));
    }

    auto fail = [&](const std::string& msg) {
        if (opt.strict) throw DataError(msg);
        res.warnings.push_back(msg);
        ++res.skipped_blocks;
    };

    std::size_t first_example_block = 0;
    if (!blocks.empty()) {
        // header block: only \lang / \src directives, no transcription
        bool header = true;
        for (const auto& line : blocks[0]) {
            detail::RawLine rl;
            if (!detail::parse_raw_line(line, rl) || (rl.prefix != "lang" && rl.prefix != "src")) {
                header = false;
                break;
            }
        }
        if (header) {
            for (const auto& line : blocks[0]) {
                detail::RawLine rl;
                detail::parse_raw_line(line, rl);
                if (rl.prefix == "lang") {
                    if (!res.corpus.language.empty())
                        res.warnings.push_back("header: duplicate \\lang ignored");
                    else
                        res.corpus.language = rl.content;
                } else {
                    if (!res.corpus.provenance.empty())
                        res.warnings.push_back("header: duplicate \\src ignored");
                    else
                        res.corpus.provenance = rl.content;
                }
            }
            first_example_block = 1;
        }
    }

    std::set<std::string> seen_ids;
    for (std::size_t b = first_example_block; b < blocks.size(); ++b) {
        std::map<std::string, std::string> rec;
        std::vector<std::pair<std::string, std::string>> extras;
        bool bad = false;
        for (const auto& line : blocks[b]) {
            detail::RawLine rl;
            if (!detail::parse_raw_line(line, rl)) {
                fail("block " + std::to_string(b + 1) + ": line without \\prefix");
                bad = true;
                break;
            }
            if (kRecognized.count(rl.prefix)) {
                if (rec.count(rl.prefix)) {
                    fail("block " + std::to_string(b + 1) + ": duplicate \\" + rl.prefix);
                    bad = true;
                    break;
                }
                rec.emplace(rl.prefix, rl.content);
            } else {
                if (opt.strict)
                    throw DataError("block " + std::to_string(b + 1) +
                                    ": unknown prefix \\" + rl.prefix);
                extras.emplace_back(rl.prefix, rl.content);
            }
        }
        if (bad) continue;
        if (!rec.count("t")) {
            fail("block " + std::to_string(b + 1) + ": missing \\t transcription line");
            continue;
        }
        int core = 0;
        for (const char* p : {"t", "m", "g", "l"})
            if (rec.count(p)) ++core;
        if (core < 2) {
            fail("block " + std::to_string(b + 1) + ": transcription line only");
            continue;
        }

        IgtExample ex;
        ex.surface_words = split_ws(rec["t"]);
        if (ex.surface_words.empty()) {
            fail("block " + std::to_string(b + 1) + ": empty transcription");
            continue;
        }
        if (rec.count("m")) ex.segmentation_words = split_ws(rec["m"]);
        if (rec.count("g")) ex.gloss_words = split_ws(rec["g"]);
        if (rec.count("l")) ex.translation = rec["l"];
        ex.language = rec.count("lang") ? rec["lang"] : res.corpus.language;
        if (rec.count("id")) {
            ex.id = rec["id"];
            if (ex.id.empty() || split_ws(ex.id).size() != 1) {
                fail("block " + std::to_string(b + 1) + ": bad \\id");
                continue;
            }
        } else {
            ex.id = "ex" + std::to_string(res.corpus.examples.size() + 1);
        }
        if (!seen_ids.insert(ex.id).second) {
            fail("block " + std::to_string(b + 1) + ": duplicate id '" + ex.id + "'");
            continue;
        }
        ex.extra = std::move(extras);
        res.corpus.examples.push_back(std::move(ex));
    }
    return res;
}

inline Corpus parse_corpus(const std::string& text, bool strict = false) {
    return parse_corpus_full(text, ParseOptions{strict}).corpus;
}

// ------------------------------------------------------------- serializer

inline std::string serialize_corpus(const Corpus& corpus) {
    if (corpus.examples.empty()) return "";
    std::vector<std::string> blocks;
    {
        std::string header;
        if (!corpus.language.empty()) header += "\\lang " + corpus.language;
        if (!corpus.provenance.empty()) {
            if (!header.empty()) header += "\n";
            header += "\\src " + corpus.provenance;
        }
        if (!header.empty()) blocks.push_back(std::move(header));
    }
    auto line = [](const char* prefix, const std::string& content) {
        std::string out = "\\";
        out += prefix;
        if (!content.empty()) out += " " + content;
        return out;
    };
    for (const auto& ex : corpus.examples) {
        std::string b = line("id", ex.id);
        if (ex.language != corpus.language) b += "\n" + line("lang", ex.language);
        b += "\n" + line("t", join(ex.surface_words));
        if (ex.segmentation_words) b += "\n" + line("m", join(*ex.segmentation_words));
        if (!ex.gloss_words.empty()) b += "\n" + line("g", join(ex.gloss_words));
        if (!ex.translation.empty()) b += "\n" + line("l", ex.translation);
        for (const auto& [prefix, content] : ex.extra)
            b += "\n" + line(prefix.c_str(), content);
        blocks.push_back(std::move(b));
    }
    std::string out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) out += "\n";
        out += blocks[i] + "\n";
    }
    return out;
}

// ------------------------------------------------------------ JSON mirror

inline nlohmann::json corpus_to_json(const Corpus& corpus) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& ex : corpus.examples) {
        nlohmann::json obj;
        obj["id"] = ex.id;
        obj["language"] = ex.language;
        obj["surface"] = join(ex.surface_words);
        obj["segmentation"] =
            ex.segmentation_words ? nlohmann::json(join(*ex.segmentation_words))
                                  : nlohmann::json(nullptr);
        obj["gloss"] = join(ex.gloss_words);
        obj["translation"] = ex.translation;
        arr.push_back(std::move(obj));
    }
    return arr;
}

inline std::string serialize_corpus_json(const Corpus& corpus) {
    return corpus_to_json(corpus).dump(2) + "\n";
}

inline Corpus parse_corpus_json(const std::string& text) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad JSON corpus: ") + e.what());
    }
    if (!arr.is_array()) throw DataError("JSON corpus must be an array of objects");
    Corpus corpus;
    std::set<std::string> seen_ids;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& obj = arr[i];
        if (!obj.is_object() || !obj.contains("surface"))
            throw DataError("JSON corpus: element " + std::to_string(i) +
                            " is not an object with a 'surface' key");
        IgtExample ex;
        ex.id = obj.value("id", "ex" + std::to_string(i + 1));
        ex.language = obj.value("language", "");
        ex.surface_words = split_ws(obj["surface"].get<std::string>());
        if (ex.surface_words.empty())
            throw DataError("JSON corpus: element " + std::to_string(i) + ": empty surface");
        if (obj.contains("segmentation") && !obj["segmentation"].is_null())
            ex.segmentation_words = split_ws(obj["segmentation"].get<std::string>());
        ex.gloss_words = split_ws(obj.value("gloss", ""));
        ex.translation = obj.value("translation", "");
        if (!seen_ids.insert(ex.id).second)
            throw DataError("JSON corpus: duplicate id '" + ex.id + "'");
        corpus.examples.push_back(std::move(ex));
    }
    // corpus language = shared example language, when uniform
    if (!corpus.examples.empty()) {
        const std::string& first = corpus.examples.front().language;
        bool uniform = std::all_of(corpus.examples.begin(), corpus.examples.end(),
                                   [&](const IgtExample& e) { return e.language == first; });
        if (uniform) corpus.language = first;
    }
    return corpus;
}

} // namespace igtaug
