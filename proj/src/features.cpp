#include "cyrcite/features.hpp"

#include <chrono>
#include <ctime>

#include "cyrcite/utf8.hpp"

namespace cyrcite {

int effective_year_max(const FeatureConfig& cfg) {
    if (cfg.year_max > 0) return cfg.year_max;
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    return tm.tm_year + 1900 + 1;
}

const std::vector<std::string_view>& feature_names() {
    static const std::vector<std::string_view> names = {
        "broad_type",          "is_known_surname",   "is_capitalized",
        "is_allcaps_dotted",   "is_publication_year", "is_four_digits",
        "is_mimeo_marker",     "is_double_slash",    "is_single_slash",
        "is_abbreviation",     "before_single_slash", "after_single_slash",
        "before_double_slash", "after_double_slash", "likely_author_zone",
        "likely_title_zone",
    };
    return names;
}

namespace {

bool is_allcaps_dotted_text(const std::u32string& cps) {
    bool any_letter = false;
    for (char32_t cp : cps) {
        if (cp == U'.') continue;
        if (!utf8::is_alpha(cp) || !utf8::is_upper(cp)) return false;
        any_letter = true;
    }
    return any_letter;
}

// Strips leading and trailing non-alphanumeric code points.
std::u32string core_of(const std::u32string& cps) {
    std::size_t a = 0, b = cps.size();
    auto is_word = [](char32_t cp) { return utf8::is_alpha(cp) || utf8::is_digit(cp); };
    while (a < b && !is_word(cps[a])) ++a;
    while (b > a && !is_word(cps[b - 1])) --b;
    return cps.substr(a, b - a);
}

bool is_year_core(const std::u32string& core, const FeatureConfig& cfg) {
    if (core.size() != 4) return false;
    int value = 0;
    for (char32_t cp : core) {
        if (!utf8::is_digit(cp)) return false;
        value = value * 10 + static_cast<int>(cp - U'0');
    }
    return value >= cfg.year_min && value <= effective_year_max(cfg);
}

bool has_exact_four_digit_run(const std::u32string& cps) {
    std::size_t run = 0;
    for (std::size_t i = 0; i <= cps.size(); ++i) {
        if (i < cps.size() && utf8::is_digit(cps[i])) {
            ++run;
        } else {
            if (run == 4) return true;
            run = 0;
        }
    }
    return false;
}

bool has_lone_slash(const std::u32string& cps) {
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (cps[i] != U'/') continue;
        bool doubled = (i > 0 && cps[i - 1] == U'/') || (i + 1 < cps.size() && cps[i + 1] == U'/');
        if (!doubled) return true;
    }
    return false;
}

// Initials with at most two letter groups, each dotted: "Э.", "Э.А.".
bool is_initials_text(const std::u32string& cps) {
    std::size_t end = cps.size();
    while (end > 0 && (cps[end - 1] == U',' || cps[end - 1] == U';')) --end;
    std::size_t groups = 0, i = 0;
    while (i < end) {
        if (!utf8::is_alpha(cps[i]) || !utf8::is_upper(cps[i])) return false;
        if (i + 1 >= end || cps[i + 1] != U'.') return false;
        ++groups;
        i += 2;
    }
    return groups >= 1 && groups <= 2;
}

bool ends_with_dot(const std::u32string& cps) {
    std::size_t end = cps.size();
    while (end > 0 && (cps[end - 1] == U',' || cps[end - 1] == U';' || cps[end - 1] == U')'))
        --end;
    return end > 0 && cps[end - 1] == U'.';
}

}  // namespace

TokenFeatures token_features(const Token& token, const Resources& res, const FeatureConfig& cfg) {
    TokenFeatures f;
    std::string repaired = repair_homoglyphs(token.text, res.homoglyphs).first;
    std::u32string cps = utf8::decode(repaired);
    std::u32string core = core_of(cps);

    f.broad_type = classify_script(repaired);
    f.is_known_surname = is_known_surname(token.text, res.surnames, res.homoglyphs);
    for (char32_t cp : cps) {
        if (!utf8::is_alpha(cp)) continue;
        f.is_capitalized = utf8::is_upper(cp);
        break;
    }
    f.is_allcaps_dotted = is_allcaps_dotted_text(cps);
    f.is_publication_year = is_year_core(core, cfg);
    f.is_four_digits = has_exact_four_digit_run(cps);
    f.is_mimeo_marker = repaired == "М.:";
    f.is_double_slash = repaired.find("//") != std::string::npos;
    f.is_single_slash =
        f.broad_type != ScriptClass::Url && !f.is_double_slash && has_lone_slash(cps);
    f.is_abbreviation = is_abbreviation(token.text, res.abbreviations);
    return f;
}

namespace {

// Maximal prefix of (surname, initials)+ units. A unit's surname is either
// a known one or any capitalized word that the following initials vouch for.
std::size_t author_zone_end(const std::vector<Token>& tokens, const std::vector<TokenFeatures>& features,
                            const Resources& res) {
    std::size_t i = 0;
    while (i < tokens.size()) {
        const TokenFeatures& f = features[i];
        bool surname_like = (f.is_known_surname || f.is_capitalized) && !f.is_allcaps_dotted &&
                            (f.broad_type == ScriptClass::Cyrillic || f.broad_type == ScriptClass::Latin);
        if (!surname_like) break;
        std::size_t j = i + 1;
        std::size_t initial_groups = 0;
        while (j < tokens.size() && initial_groups < 2) {
            std::u32string cps =
                utf8::decode(repair_homoglyphs(tokens[j].text, res.homoglyphs).first);
            if (!is_initials_text(cps)) break;
            initial_groups += utf8::decode(core_of(cps)).size() > 2 ? 2 : 1;
            ++j;
        }
        if (j == i + 1) break;  // no initials, unit rejected
        i = j;
    }
    return i;
}

}  // namespace

void add_row_features(const std::vector<Token>& tokens, std::vector<TokenFeatures>& features,
                      const Resources& res) {
    std::size_t n = tokens.size();
    std::size_t first_double = n, first_single = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (first_double == n && features[i].is_double_slash) first_double = i;
        if (first_single == n && features[i].is_single_slash) first_single = i;
    }
    for (std::size_t i = 0; i < n; ++i) {
        features[i].before_double_slash = first_double < n && i < first_double;
        features[i].after_double_slash = first_double < n && i > first_double;
        features[i].before_single_slash = first_single < n && i < first_single;
        features[i].after_single_slash = first_single < n && i > first_single;
    }

    std::size_t author_end = author_zone_end(tokens, features, res);
    for (std::size_t i = 0; i < author_end; ++i) features[i].likely_author_zone = true;

    if (author_end >= n) return;
    // The title runs to the double slash or to the first sentence-final
    // token after it has at least one token; known abbreviations are
    // skipped rather than treated as the end.
    std::size_t title_end = first_double;
    for (std::size_t k = author_end + 1; k < n && k < title_end; ++k) {
        const TokenFeatures& f = features[k];
        if (f.is_abbreviation) continue;
        std::u32string cps = utf8::decode(repair_homoglyphs(tokens[k].text, res.homoglyphs).first);
        if (ends_with_dot(cps)) {
            title_end = k + 1;
            break;
        }
    }
    if (title_end > n) title_end = n;
    for (std::size_t i = author_end; i < title_end; ++i) features[i].likely_title_zone = true;
}

std::vector<TokenFeatures> compute_features(const std::vector<Token>& tokens, const Resources& res,
                                            const FeatureConfig& cfg) {
    std::vector<TokenFeatures> features;
    features.reserve(tokens.size());
    for (const Token& tok : tokens) features.push_back(token_features(tok, res, cfg));
    add_row_features(tokens, features, res);
    return features;
}

std::string render_feature_tsv(const std::vector<Token>& tokens, const std::vector<TokenFeatures>& features,
                               const std::vector<Label>* gold) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const TokenFeatures& f = features[i];
        out += tokens[i].text;
        out.push_back('\t');
        out += to_string(f.broad_type);
        const bool flags[] = {
            f.is_known_surname,  f.is_capitalized,      f.is_allcaps_dotted, f.is_publication_year,
            f.is_four_digits,    f.is_mimeo_marker,     f.is_double_slash,   f.is_single_slash,
            f.is_abbreviation,   f.before_single_slash, f.after_single_slash, f.before_double_slash,
            f.after_double_slash, f.likely_author_zone,  f.likely_title_zone,
        };
        for (bool b : flags) {
            out.push_back('\t');
            out.push_back(b ? '1' : '0');
        }
        if (gold) {
            out.push_back('\t');
            out += to_string((*gold)[i]);
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace cyrcite
