#pragma once

#include <stdexcept>
#include <string>

namespace cyrcite {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input file does not parse as the structured page/item format.
struct BrokenStructureError : Error {
    using Error::Error;
};

// Parsed fine but there is no text to work with.
struct NoTextLayerError : Error {
    using Error::Error;
};

// No reference-section heading and no numbered tail found.
struct NoReferenceSectionError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace cyrcite
