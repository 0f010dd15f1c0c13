#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cyrcite::utf8 {

// Decodes UTF-8 into code points. Invalid byte sequences decode to U+FFFD,
// one replacement per offending byte, so decoding never fails.
std::u32string decode(std::string_view s);

// Decodes and records the byte offset of each code point. `offsets` gets
// one entry per code point plus a final entry equal to s.size().
std::u32string decode_with_offsets(std::string_view s, std::vector<std::size_t>& offsets);

void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view s);

std::size_t count(std::string_view s);

// Slice by code-point offsets, half-open [from, to).
std::string substr(std::string_view s, std::size_t from, std::size_t to);

bool is_space(char32_t cp);
bool is_digit(char32_t cp);
bool is_latin(char32_t cp);
bool is_cyrillic(char32_t cp);
// Letters we know about: Latin, Cyrillic, Greek, CJK. Everything else is
// treated as non-alphabetic.
bool is_alpha(char32_t cp);
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
char32_t to_lower(char32_t cp);

std::string to_lower_copy(std::string_view s);

}  // namespace cyrcite::utf8
