#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cyrcite {

// Half-open interval of code-point offsets.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - start; }
    bool operator==(const Span&) const = default;
};

// One whitespace-delimited unit of a reference line. `span` indexes into
// the original line by code points.
struct Token {
    std::string text;
    std::size_t index = 0;
    Span span;

    bool operator==(const Token&) const = default;
};

enum class ScriptClass {
    Cyrillic,
    Latin,
    Numeric,
    RomanNumeral,
    Url,
    Symbol,
    Undetermined,
};

std::string_view to_string(ScriptClass c);

// Bidirectional map between visually identical Latin and Cyrillic letters.
class HomoglyphTable {
public:
    // The stock pairs: A/А B/В C/С E/Е H/Н K/К M/М O/О P/Р T/Т X/Х and the
    // lowercase a c e o p x y counterparts.
    static HomoglyphTable defaults();

    // Two-column plain text file, one "latin<TAB>cyrillic" pair per line,
    // UTF-8. '#' starts a comment.
    static HomoglyphTable load(const std::string& path);

    void add_pair(char32_t latin, char32_t cyrillic);

    bool is_ambiguous(char32_t cp) const;
    char32_t to_cyrillic(char32_t cp) const;  // identity for unmapped
    char32_t to_latin(char32_t cp) const;

    std::size_t size() const { return lat_to_cyr_.size(); }

private:
    std::unordered_map<char32_t, char32_t> lat_to_cyr_;
    std::unordered_map<char32_t, char32_t> cyr_to_lat_;
};

// Splits at runs of Unicode whitespace; spans index the original line.
std::vector<Token> tokenize(std::string_view line);

// Broad type of a token. Throws std::invalid_argument on empty input.
ScriptClass classify_script(std::string_view token_text);

// If some assignment of homoglyph flips makes every alphabetic character
// single-script, returns the flipped string and true; otherwise the input
// unchanged and false. Ties between Latin and Cyrillic go to Cyrillic.
std::pair<std::string, bool> repair_homoglyphs(std::string_view token_text, const HomoglyphTable& table);

// Longest contiguous run of tokens classified (after repair) as Cyrillic,
// Numeric or Symbol and containing at least one Cyrillic token. Earliest
// run wins ties. nullopt when the line has no Cyrillic token.
std::optional<Span> find_cyrillic_span(const std::vector<Token>& tokens, const HomoglyphTable& table);

}  // namespace cyrcite
