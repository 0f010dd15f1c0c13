#include "cyrcite/normalize.hpp"

#include <fstream>
#include <stdexcept>

#include "cyrcite/errors.hpp"
#include "cyrcite/utf8.hpp"

namespace cyrcite {

std::string_view to_string(ScriptClass c) {
    switch (c) {
        case ScriptClass::Cyrillic: return "Cyrillic";
        case ScriptClass::Latin: return "Latin";
        case ScriptClass::Numeric: return "Numeric";
        case ScriptClass::RomanNumeral: return "RomanNumeral";
        case ScriptClass::Url: return "Url";
        case ScriptClass::Symbol: return "Symbol";
        case ScriptClass::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

HomoglyphTable HomoglyphTable::defaults() {
    HomoglyphTable t;
    static constexpr std::pair<char32_t, char32_t> kPairs[] = {
        {U'A', U'А'}, {U'B', U'В'}, {U'C', U'С'}, {U'E', U'Е'}, {U'H', U'Н'},
        {U'K', U'К'}, {U'M', U'М'}, {U'O', U'О'}, {U'P', U'Р'}, {U'T', U'Т'},
        {U'X', U'Х'}, {U'a', U'а'}, {U'c', U'с'}, {U'e', U'е'}, {U'o', U'о'},
        {U'p', U'р'}, {U'x', U'х'}, {U'y', U'у'},
    };
    for (auto [lat, cyr] : kPairs) t.add_pair(lat, cyr);
    return t;
}

HomoglyphTable HomoglyphTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open homoglyph table: " + path);
    HomoglyphTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw IoError("homoglyph table line lacks a tab: " + line);
        std::u32string lat = utf8::decode(std::string_view(line).substr(0, tab));
        std::u32string cyr = utf8::decode(std::string_view(line).substr(tab + 1));
        if (lat.size() != 1 || cyr.size() != 1)
            throw IoError("homoglyph table columns must be single code points: " + line);
        t.add_pair(lat[0], cyr[0]);
    }
    if (t.size() == 0) throw IoError("homoglyph table is empty: " + path);
    return t;
}

void HomoglyphTable::add_pair(char32_t latin, char32_t cyrillic) {
    if (!utf8::is_latin(latin) || !utf8::is_cyrillic(cyrillic))
        throw std::invalid_argument("homoglyph pair must map Latin to Cyrillic");
    auto l = lat_to_cyr_.find(latin);
    auto c = cyr_to_lat_.find(cyrillic);
    if ((l != lat_to_cyr_.end() && l->second != cyrillic) || (c != cyr_to_lat_.end() && c->second != latin))
        throw std::invalid_argument("homoglyph pair conflicts with an existing pair");
    lat_to_cyr_[latin] = cyrillic;
    cyr_to_lat_[cyrillic] = latin;
}

bool HomoglyphTable::is_ambiguous(char32_t cp) const {
    return lat_to_cyr_.count(cp) > 0 || cyr_to_lat_.count(cp) > 0;
}

char32_t HomoglyphTable::to_cyrillic(char32_t cp) const {
    auto it = lat_to_cyr_.find(cp);
    return it == lat_to_cyr_.end() ? cp : it->second;
}

char32_t HomoglyphTable::to_latin(char32_t cp) const {
    auto it = cyr_to_lat_.find(cp);
    return it == cyr_to_lat_.end() ? cp : it->second;
}

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::vector<std::size_t> offsets;
    std::u32string cps = utf8::decode_with_offsets(line, offsets);
    std::size_t i = 0;
    while (i < cps.size()) {
        while (i < cps.size() && utf8::is_space(cps[i])) ++i;
        if (i >= cps.size()) break;
        std::size_t start = i;
        while (i < cps.size() && !utf8::is_space(cps[i])) ++i;
        Token tok;
        tok.text = std::string(line.substr(offsets[start], offsets[i] - offsets[start]));
        tok.index = tokens.size();
        tok.span = {start, i};
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

namespace {

bool is_punct(char32_t cp) { return !utf8::is_alpha(cp) && !utf8::is_digit(cp); }

bool is_roman_letter(char32_t cp) {
    switch (cp) {
        case U'I': case U'V': case U'X': case U'L': case U'C': case U'D': case U'M':
            return true;
        default:
            return false;
    }
}

bool is_roman_numeral(const std::u32string& cps) {
    // Optional ranges: XII-XVI. Leading/trailing punctuation stripped first.
    std::size_t a = 0, b = cps.size();
    while (a < b && is_punct(cps[a]) && cps[a] != U'-' && cps[a] != U'–') ++a;
    while (b > a && is_punct(cps[b - 1])) --b;
    if (a >= b) return false;
    bool in_part = false;
    for (std::size_t i = a; i < b; ++i) {
        char32_t cp = cps[i];
        if (cp == U'-' || cp == U'–') {
            if (!in_part) return false;
            in_part = false;
        } else if (is_roman_letter(cp)) {
            in_part = true;
        } else {
            return false;
        }
    }
    return in_part;
}

bool looks_like_url(std::string_view text) {
    std::string lower = utf8::to_lower_copy(text);
    if (lower.rfind("www.", 0) == 0) return true;
    auto pos = lower.find("://");
    if (pos == std::string::npos || pos == 0) return false;
    for (std::size_t i = 0; i < pos; ++i) {
        char c = lower[i];
        bool ok = (c >= 'a' && c <= 'z') || (i > 0 && ((c >= '0' && c <= '9') || c == '+' || c == '.' || c == '-'));
        if (!ok) return false;
    }
    return pos + 3 < lower.size();
}

enum class Scr { Latin, Cyrillic, Other };

Scr script_of(char32_t cp) {
    if (utf8::is_latin(cp)) return Scr::Latin;
    if (utf8::is_cyrillic(cp)) return Scr::Cyrillic;
    return Scr::Other;
}

}  // namespace

ScriptClass classify_script(std::string_view token_text) {
    if (token_text.empty()) throw std::invalid_argument("classify_script: empty token");
    std::u32string cps = utf8::decode(token_text);

    std::size_t digits = 0, letters = 0, latin = 0, cyr = 0, other = 0;
    for (char32_t cp : cps) {
        if (utf8::is_digit(cp)) {
            ++digits;
        } else if (utf8::is_alpha(cp)) {
            ++letters;
            switch (script_of(cp)) {
                case Scr::Latin: ++latin; break;
                case Scr::Cyrillic: ++cyr; break;
                case Scr::Other: ++other; break;
            }
        }
    }

    if (digits > 0 && letters == 0) return ScriptClass::Numeric;
    if (is_roman_numeral(cps)) return ScriptClass::RomanNumeral;
    if (looks_like_url(token_text)) return ScriptClass::Url;
    if (letters > 0) {
        if (cyr == letters) return ScriptClass::Cyrillic;
        if (latin == letters) return ScriptClass::Latin;
        return ScriptClass::Undetermined;
    }
    if (digits == 0) return ScriptClass::Symbol;
    return ScriptClass::Undetermined;
}

std::pair<std::string, bool> repair_homoglyphs(std::string_view token_text, const HomoglyphTable& table) {
    if (token_text.empty()) throw std::invalid_argument("repair_homoglyphs: empty token");
    std::u32string cps = utf8::decode(token_text);

    std::size_t fixed_latin = 0, fixed_cyr = 0, fixed_other = 0, ambiguous = 0;
    for (char32_t cp : cps) {
        if (!utf8::is_alpha(cp)) continue;
        if (table.is_ambiguous(cp)) {
            ++ambiguous;
            continue;
        }
        switch (script_of(cp)) {
            case Scr::Latin: ++fixed_latin; break;
            case Scr::Cyrillic: ++fixed_cyr; break;
            case Scr::Other: ++fixed_other; break;
        }
    }

    if (fixed_other > 0)
        return {std::string(token_text), fixed_latin == 0 && fixed_cyr == 0 && ambiguous == 0};
    if (fixed_latin > 0 && fixed_cyr > 0) return {std::string(token_text), false};
    if (ambiguous == 0) return {std::string(token_text), true};

    // Exactly one anchored script, or none; ties go to Cyrillic.
    const bool to_latin = fixed_latin > fixed_cyr;
    for (auto& cp : cps) cp = to_latin ? table.to_latin(cp) : table.to_cyrillic(cp);
    return {utf8::encode(cps), true};
}

std::optional<Span> find_cyrillic_span(const std::vector<Token>& tokens, const HomoglyphTable& table) {
    std::vector<bool> admissible(tokens.size()), cyrillic(tokens.size());
    bool any_cyr = false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        ScriptClass c = classify_script(repair_homoglyphs(tokens[i].text, table).first);
        cyrillic[i] = c == ScriptClass::Cyrillic;
        admissible[i] = cyrillic[i] || c == ScriptClass::Numeric || c == ScriptClass::Symbol;
        any_cyr = any_cyr || cyrillic[i];
    }
    if (!any_cyr) return std::nullopt;

    std::optional<Span> best;
    std::size_t i = 0;
    while (i < tokens.size()) {
        if (!admissible[i]) {
            ++i;
            continue;
        }
        std::size_t start = i;
        bool has_cyr = false;
        while (i < tokens.size() && admissible[i]) {
            has_cyr = has_cyr || cyrillic[i];
            ++i;
        }
        if (has_cyr && (!best || i - start > best->length())) best = Span{start, i};
    }
    return best;
}

}  // namespace cyrcite
