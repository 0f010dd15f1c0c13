#pragma once

#include <string>
#include <vector>

#include "cyrcite/features.hpp"
#include "cyrcite/labeler.hpp"
#include "cyrcite/normalize.hpp"
#include "cyrcite/resources.hpp"
#include "cyrcite/training_data.hpp"

namespace cyrcite {

// The three linking fields plus bookkeeping. Empty fields represent a
// parse failure; only references with all three non-empty are linkable.
struct ParsedReference {
    std::size_t num = 0;     // ordinal in the reference list
    std::string raw;         // entry text as found in the document
    Span span;               // code-point interval in the document text
    std::string author;      // A runs joined with ", "
    std::string title;       // T tokens, trailing punctuation trimmed
    std::string title_raw;   // T tokens exactly as labeled
    std::string year;        // 4-digit core of the first Y token
    std::string unparsed_tail;
    double min_confidence = 1.0;
};

struct AssembledFields {
    std::string author;
    std::string title;
    std::string title_raw;
    std::string year;
    std::string unparsed_tail;
};

// Joins labeled tokens into fields. Title tokens at or after the first
// double-slash token are demoted to the tail, so a title never crosses
// a "//" separator.
AssembledFields assemble_fields(const std::vector<Token>& tokens, const std::vector<Label>& labels);

// tokenize -> repair -> features -> predict -> assemble. A mixed-script
// line that is Cyrillic-dominant is parsed on its Cyrillic span only; the
// remainder lands in unparsed_tail.
ParsedReference parse_reference(const std::string& line, const Model& model, const Resources& res,
                                const FeatureConfig& cfg = {});

}  // namespace cyrcite
