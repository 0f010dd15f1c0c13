#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyrcite/normalize.hpp"
#include "cyrcite/resources.hpp"
#include "cyrcite/training_data.hpp"

namespace cyrcite {

struct FeatureConfig {
    int year_min = 1500;
    int year_max = 0;  // 0 means current year + 1
};

int effective_year_max(const FeatureConfig& cfg);

// Per-token features. The token part is a function of the token alone;
// the row part is filled in afterwards from the whole line.
struct TokenFeatures {
    ScriptClass broad_type = ScriptClass::Undetermined;
    bool is_known_surname = false;
    bool is_capitalized = false;
    bool is_allcaps_dotted = false;
    bool is_publication_year = false;
    bool is_four_digits = false;
    bool is_mimeo_marker = false;
    bool is_double_slash = false;
    bool is_single_slash = false;
    bool is_abbreviation = false;
    // Row features.
    bool before_single_slash = false;
    bool after_single_slash = false;
    bool before_double_slash = false;
    bool after_double_slash = false;
    bool likely_author_zone = false;
    bool likely_title_zone = false;
};

// The declared dump order; the TSV columns follow it.
const std::vector<std::string_view>& feature_names();

TokenFeatures token_features(const Token& token, const Resources& res, const FeatureConfig& cfg = {});

// Fills the row part in place. Token features must be computed already.
void add_row_features(const std::vector<Token>& tokens, std::vector<TokenFeatures>& features,
                      const Resources& res);

// token_features for every token plus the row pass.
std::vector<TokenFeatures> compute_features(const std::vector<Token>& tokens, const Resources& res,
                                            const FeatureConfig& cfg = {});

// The sequence-labeler interchange layout: one token per line, tab-separated
// columns token, features in declared order, then the gold label when given.
std::string render_feature_tsv(const std::vector<Token>& tokens, const std::vector<TokenFeatures>& features,
                               const std::vector<Label>* gold = nullptr);

}  // namespace cyrcite
