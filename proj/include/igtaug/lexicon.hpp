#pragma once

// Insertion word lists and the Spanish conjugation table.
// All files are UTF-8 TSV, no header row, '#' comment lines ignored.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "igtaug/errors.hpp"
#include "igtaug/igt.hpp"

namespace igtaug {

struct LexEntry {
    std::string form;        // target-language surface word
    std::string gloss_label; // gloss-line label, may contain "@" or "."
    std::string translation; // prepended to the translation line

    bool operator==(const LexEntry&) const = default;
};

struct InsertionList {
    std::string name; // conj | noise | intj
    std::vector<LexEntry> entries;
};

namespace detail {

inline std::vector<std::string> tsv_rows(const std::string& text,
                                         std::vector<std::string>* comments = nullptr) {
    std::vector<std::string> rows;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) {
            if (line[0] == '#') {
                if (comments) comments->push_back(line);
            } else {
                rows.push_back(std::move(line));
            }
        }
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    return rows;
}

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '\t') {
            cols.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return cols;
}

} // namespace detail

// Columns: form, gloss label, translation.
inline InsertionList load_word_list(const std::string& tsv, const std::string& name) {
    InsertionList list;
    list.name = name;
    std::set<std::string> forms;
    int row_no = 0;
    for (const auto& row : detail::tsv_rows(tsv)) {
        ++row_no;
        auto cols = detail::split_tabs(row);
        if (cols.size() != 3)
            throw DataError("word list '" + name + "' row " + std::to_string(row_no) +
                            ": expected 3 tab-separated columns, got " +
                            std::to_string(cols.size()));
        LexEntry e{cols[0], cols[1], cols[2]};
        if (e.form.empty() || split_ws(e.form).size() != 1)
            throw DataError("word list '" + name + "' row " + std::to_string(row_no) +
                            ": form must be a single word");
        if (e.gloss_label.empty() || split_ws(e.gloss_label).size() != 1)
            throw DataError("word list '" + name + "' row " + std::to_string(row_no) +
                            ": gloss label must be a single word");
        if (!forms.insert(e.form).second)
            throw DataError("word list '" + name + "': duplicate form '" + e.form + "'");
        list.entries.push_back(std::move(e));
    }
    if (list.entries.empty()) throw DataError("empty insertion list '" + name + "'");
    return list;
}

// ----------------------------------------------------------- conjugations

enum class Tense { present, preterite };

inline std::string tense_name(Tense t) {
    return t == Tense::present ? "present" : "preterite";
}

inline std::optional<Tense> parse_tense(std::string_view s) {
    if (s == "present") return Tense::present;
    if (s == "preterite") return Tense::preterite;
    return std::nullopt;
}

struct VerbSlot {
    std::string lemma;
    Tense tense;
    std::string person; // 1sg .. 3pl

    bool operator<(const VerbSlot& o) const {
        if (lemma != o.lemma) return lemma < o.lemma;
        if (tense != o.tense) return tense < o.tense;
        return person < o.person;
    }
    bool operator==(const VerbSlot&) const = default;
};

struct ConjugationTable {
    std::map<std::string, VerbSlot> by_form;
    std::map<VerbSlot, std::string> by_slot;
    int skipped_rows = 0; // lenient-mode collision count

    bool empty() const { return by_form.empty(); }
};

// Columns: form, lemma, tense, person-number.  Collisions (a form mapping
// to two slots, or a slot claiming two forms) abort in strict mode and are
// dropped first-wins in lenient mode; accepted rows always keep the two
// maps mutually consistent.
inline ConjugationTable load_conjugation_table(const std::string& tsv, bool strict = false) {
    ConjugationTable table;
    int row_no = 0;
    for (const auto& row : detail::tsv_rows(tsv)) {
        ++row_no;
        auto cols = detail::split_tabs(row);
        if (cols.size() != 4)
            throw DataError("conjugation table row " + std::to_string(row_no) +
                            ": expected 4 tab-separated columns");
        auto tense = parse_tense(cols[2]);
        if (!tense)
            throw DataError("conjugation table row " + std::to_string(row_no) +
                            ": unknown tense '" + cols[2] + "'");
        const std::string& form = cols[0];
        VerbSlot slot{cols[1], *tense, cols[3]};
        if (table.by_form.count(form) || table.by_slot.count(slot)) {
            if (strict)
                throw DataError("conjugation table row " + std::to_string(row_no) +
                                ": ambiguous entry for form '" + form + "'");
            ++table.skipped_rows;
            continue;
        }
        table.by_form.emplace(form, slot);
        table.by_slot.emplace(slot, form);
    }
    return table;
}

// ASCII-only lowercasing; accented characters pass through untouched
// (table forms are stored lowercase, so only a capitalized first letter
// needs folding in practice).
inline std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

// Swap the tense of the first translation token found in the table with
// the source tense.  The replacement is spliced over the token's exact
// byte range, so surrounding whitespace is preserved; the stored
// (lowercase) form is inserted even sentence-initially.  Absent means
// "skip this example": either no token matched, or the matched verb has
// no form for the target tense.
inline std::optional<std::string> retense_translation(const std::string& translation,
                                                      Tense from, Tense to,
                                                      const ConjugationTable& table) {
    std::size_t i = 0;
    while (i < translation.size()) {
        while (i < translation.size() && is_ascii_space(translation[i])) ++i;
        std::size_t start = i;
        while (i < translation.size() && !is_ascii_space(translation[i])) ++i;
        if (i == start) break;
        std::string token = ascii_lower(std::string_view(translation).substr(start, i - start));
        auto it = table.by_form.find(token);
        if (it == table.by_form.end() || it->second.tense != from) continue;
        VerbSlot target = it->second;
        target.tense = to;
        auto slot_it = table.by_slot.find(target);
        if (slot_it == table.by_slot.end()) return std::nullopt;
        std::string out = translation;
        out.replace(start, i - start, slot_it->second);
        return out;
    }
    return std::nullopt;
}

} // namespace igtaug
