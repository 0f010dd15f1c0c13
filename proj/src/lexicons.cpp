#include "cyrcite/lexicons.hpp"

#include <algorithm>
#include <fstream>

#include "cyrcite/errors.hpp"
#include "cyrcite/utf8.hpp"

namespace cyrcite {

std::string_view to_string(NameProvenance p) {
    switch (p) {
        case NameProvenance::Seed: return "seed";
        case NameProvenance::Derived: return "derived";
        case NameProvenance::Mined: return "mined";
    }
    return "seed";
}

namespace {

NameProvenance provenance_from(std::string_view s) {
    if (s == "derived") return NameProvenance::Derived;
    if (s == "mined") return NameProvenance::Mined;
    return NameProvenance::Seed;
}

bool starts_upper_cyrillic(const std::string& name) {
    std::u32string cps = utf8::decode(name);
    return !cps.empty() && utf8::is_cyrillic(cps[0]) && utf8::is_upper(cps[0]);
}

struct SuffixRule {
    std::u32string male;
    std::u32string female;
};

const std::vector<SuffixRule>& suffix_rules() {
    // Checked longest-first so -ский fires before -ый could.
    static const std::vector<SuffixRule> rules = {
        {U"ский", U"ская"}, {U"цкий", U"цкая"}, {U"ов", U"ова"},
        {U"ев", U"ева"},    {U"ин", U"ина"},    {U"ый", U"ая"},
    };
    return rules;
}

bool ends_with(const std::u32string& s, const std::u32string& suffix) {
    return s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string strip_enclosing_punct(std::string_view text) {
    std::u32string cps = utf8::decode(text);
    std::size_t a = 0, b = cps.size();
    while (a < b && !utf8::is_alpha(cps[a]) && !utf8::is_digit(cps[a])) ++a;
    while (b > a && !utf8::is_alpha(cps[b - 1]) && !utf8::is_digit(cps[b - 1])) --b;
    return utf8::encode(std::u32string_view(cps).substr(a, b - a));
}

}  // namespace

std::unordered_set<std::string> derive_gender_variants(const std::string& surname) {
    std::unordered_set<std::string> out{surname};
    std::u32string cps = utf8::decode(surname);
    for (const auto& rule : suffix_rules()) {
        if (ends_with(cps, rule.male)) {
            std::u32string derived = cps.substr(0, cps.size() - rule.male.size()) + rule.female;
            out.insert(utf8::encode(derived));
            break;
        }
        if (ends_with(cps, rule.female)) {
            std::u32string derived = cps.substr(0, cps.size() - rule.female.size()) + rule.male;
            out.insert(utf8::encode(derived));
            break;
        }
    }
    return out;
}

NameLexicon NameLexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open surname lexicon: " + path);
    NameLexicon lex;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        std::string name = tab == std::string::npos ? line : line.substr(0, tab);
        NameProvenance prov =
            tab == std::string::npos ? NameProvenance::Seed : provenance_from(line.substr(tab + 1));
        lex.add(name, prov);
    }
    return lex;
}

void NameLexicon::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write surname lexicon: " + path);
    for (const auto& [name, prov] : sorted_entries()) out << name << '\t' << to_string(prov) << '\n';
}

std::size_t NameLexicon::add(const std::string& surname, NameProvenance prov) {
    if (!starts_upper_cyrillic(surname)) return 0;
    std::size_t added = 0;
    for (const auto& variant : derive_gender_variants(surname)) {
        NameProvenance p = variant == surname ? prov : NameProvenance::Derived;
        if (entries_.emplace(variant, p).second) ++added;
    }
    return added;
}

bool NameLexicon::contains(std::string_view surname) const {
    return entries_.count(std::string(surname)) > 0;
}

std::vector<std::pair<std::string, NameProvenance>> NameLexicon::sorted_entries() const {
    std::vector<std::pair<std::string, NameProvenance>> out(entries_.begin(), entries_.end());
    std::sort(out.begin(), out.end());
    return out;
}

AbbreviationList AbbreviationList::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open abbreviation list: " + path);
    AbbreviationList list;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        list.add(line);
    }
    return list;
}

void AbbreviationList::add(const std::string& abbrev) {
    if (abbrev.empty() || abbrev.back() != '.')
        throw std::invalid_argument("abbreviation must end with '.': " + abbrev);
    entries_.insert(utf8::to_lower_copy(abbrev));
}

bool AbbreviationList::contains_token(std::string_view token_text) const {
    // Keep the dot, drop anything after it ("т.," compares as "т.").
    std::u32string cps = utf8::decode(token_text);
    std::size_t end = cps.size();
    while (end > 0 && cps[end - 1] != U'.') --end;
    if (end == 0) return false;
    std::u32string core = cps.substr(0, end);
    for (auto& cp : core) cp = utf8::to_lower(cp);
    return entries_.count(utf8::encode(core)) > 0;
}

bool is_known_surname(std::string_view token_text, const NameLexicon& lexicon, const HomoglyphTable& table) {
    if (token_text.empty()) return false;
    std::string repaired = repair_homoglyphs(token_text, table).first;
    std::string core = strip_enclosing_punct(repaired);
    return !core.empty() && lexicon.contains(core);
}

bool is_abbreviation(std::string_view token_text, const AbbreviationList& list) {
    return !token_text.empty() && list.contains_token(token_text);
}

namespace {

// "Э.А." / "Э." — one or two uppercase Cyrillic initials, each dotted.
// Trailing separators (",", ";") are ignored.
bool is_initials_token(const std::string& repaired_text) {
    std::u32string cps = utf8::decode(repaired_text);
    std::size_t end = cps.size();
    while (end > 0 && (cps[end - 1] == U',' || cps[end - 1] == U';')) --end;
    if (end == 0) return false;
    std::size_t groups = 0, i = 0;
    while (i < end) {
        if (!utf8::is_cyrillic(cps[i]) || !utf8::is_upper(cps[i])) return false;
        if (i + 1 >= end || cps[i + 1] != U'.') return false;
        ++groups;
        i += 2;
    }
    return groups >= 1 && groups <= 2;
}

bool is_capitalized_cyrillic_word(const std::string& repaired_core) {
    std::u32string cps = utf8::decode(repaired_core);
    if (cps.size() < 2) return false;
    if (!utf8::is_cyrillic(cps[0]) || !utf8::is_upper(cps[0])) return false;
    for (char32_t cp : cps)
        if (!utf8::is_cyrillic(cp) && cp != U'-') return false;
    return true;
}

struct NameUnit {
    std::string surname;   // repaired, punctuation-stripped
    std::size_t first_token = 0;
    std::size_t last_token = 0;  // inclusive; covers the initials
};

std::vector<NameUnit> scan_name_units(const std::vector<Token>& tokens, const HomoglyphTable& table) {
    std::vector<std::string> repaired(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i)
        repaired[i] = repair_homoglyphs(tokens[i].text, table).first;

    std::vector<NameUnit> units;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        std::string core = strip_enclosing_punct(repaired[i]);
        if (!is_capitalized_cyrillic_word(core)) continue;
        // One combined token ("Э.А.") or up to two single-letter ones.
        std::size_t last = i;
        if (is_initials_token(repaired[i + 1])) {
            last = i + 1;
            if (utf8::decode(strip_enclosing_punct(repaired[i + 1])).size() == 2 &&  // single "Э."
                i + 2 < tokens.size() && is_initials_token(repaired[i + 2]) &&
                utf8::decode(strip_enclosing_punct(repaired[i + 2])).size() == 2)
                last = i + 2;
        }
        if (last == i) continue;
        units.push_back({core, i, last});
    }
    return units;
}

}  // namespace

NameLexicon mine_candidate_names(const std::vector<std::string>& corpus, const NameLexicon& lexicon,
                                 const HomoglyphTable& table, const MiningOptions& options) {
    NameLexicon result = lexicon;

    std::vector<std::vector<NameUnit>> units_per_line;
    units_per_line.reserve(corpus.size());
    for (const auto& line : corpus) units_per_line.push_back(scan_name_units(tokenize(line), table));

    for (std::size_t round = 0; round < options.max_rounds; ++round) {
        std::unordered_map<std::string, std::size_t> candidates;
        for (const auto& units : units_per_line) {
            for (std::size_t k = 0; k + 1 < units.size(); ++k) {
                const NameUnit& a = units[k];
                const NameUnit& b = units[k + 1];
                if (b.first_token != a.last_token + 1) continue;
                bool a_known = result.contains(a.surname);
                bool b_known = result.contains(b.surname);
                if (a_known == b_known) continue;
                ++candidates[a_known ? b.surname : a.surname];
            }
        }
        std::size_t added = 0;
        for (const auto& [name, count] : candidates)
            if (count >= options.min_count) added += result.add(name, NameProvenance::Mined);
        if (added == 0) break;
    }
    return result;
}

}  // namespace cyrcite
