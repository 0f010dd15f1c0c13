#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cyrcite/normalize.hpp"

namespace cyrcite {

enum class NameProvenance { Seed, Derived, Mined };

std::string_view to_string(NameProvenance p);

// Capitalized Cyrillic surnames, closed under gender derivation: adding a
// name always adds its derived counterpart too.
class NameLexicon {
public:
    NameLexicon() = default;

    // One surname per line; an optional tab-separated provenance column is
    // accepted (and ignored on input: entries from a file are Seed unless
    // the column says otherwise).
    static NameLexicon load(const std::string& path);

    void save(const std::string& path) const;

    // Inserts the name plus its gender variants. Returns how many entries
    // were actually new.
    std::size_t add(const std::string& surname, NameProvenance prov);

    bool contains(std::string_view surname) const;
    std::size_t size() const { return entries_.size(); }

    std::vector<std::pair<std::string, NameProvenance>> sorted_entries() const;

private:
    std::unordered_map<std::string, NameProvenance> entries_;
};

// Applies the male/female suffix rules in both directions and returns the
// input together with any derived counterpart.
std::unordered_set<std::string> derive_gender_variants(const std::string& surname);

// Dotted abbreviations ("т.", "изд.") matched case-insensitively.
class AbbreviationList {
public:
    AbbreviationList() = default;
    static AbbreviationList load(const std::string& path);

    void add(const std::string& abbrev);
    bool contains_token(std::string_view token_text) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::unordered_set<std::string> entries_;  // lowercased, trailing dot kept
};

// Exact lookup after homoglyph repair; enclosing punctuation is ignored so
// "Иванов," still hits.
bool is_known_surname(std::string_view token_text, const NameLexicon& lexicon, const HomoglyphTable& table);

bool is_abbreviation(std::string_view token_text, const AbbreviationList& list);

struct MiningOptions {
    // Occurrences a candidate needs before it is accepted.
    std::size_t min_count = 1;
    std::size_t max_rounds = 32;
};

// Scans reference lines for an unknown capitalized Cyrillic word with
// initials adjacent to a known surname with initials; accepted candidates
// join the lexicon (with gender variants) and scanning repeats until no
// round adds a name. Returns the enlarged lexicon.
NameLexicon mine_candidate_names(const std::vector<std::string>& corpus, const NameLexicon& lexicon,
                                 const HomoglyphTable& table, const MiningOptions& options = {});

}  // namespace cyrcite
