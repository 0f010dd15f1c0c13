#pragma once

#include "cyrcite/lexicons.hpp"
#include "cyrcite/normalize.hpp"

namespace cyrcite {

// Immutable lookup tables shared by the feature extractor, the parser and
// the linker. Safe for unrestricted parallel reads.
struct Resources {
    HomoglyphTable homoglyphs = HomoglyphTable::defaults();
    NameLexicon surnames;
    AbbreviationList abbreviations;
};

}  // namespace cyrcite
