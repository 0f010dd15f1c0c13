#include "cyrcite/utf8.hpp"

namespace cyrcite::utf8 {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Returns the code point starting at s[i] and advances i. Invalid input
// consumes one byte and yields U+FFFD.
char32_t decode_one(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](std::size_t k) {
        return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    auto at = [&](std::size_t k) { return static_cast<unsigned char>(s[i + k]) & 0x3F; };
    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
        char32_t cp = (static_cast<char32_t>(b0 & 0x1F) << 6) | at(1);
        i += 2;
        return cp < 0x80 ? kReplacement : cp;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        char32_t cp = (static_cast<char32_t>(b0 & 0x0F) << 12) | (static_cast<char32_t>(at(1)) << 6) | at(2);
        i += 3;
        return cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF) ? kReplacement : cp;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        char32_t cp = (static_cast<char32_t>(b0 & 0x07) << 18) | (static_cast<char32_t>(at(1)) << 12) |
                      (static_cast<char32_t>(at(2)) << 6) | at(3);
        i += 4;
        return cp < 0x10000 || cp > 0x10FFFF ? kReplacement : cp;
    }
    ++i;
    return kReplacement;
}

}  // namespace

std::u32string decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) out.push_back(decode_one(s, i));
    return out;
}

std::u32string decode_with_offsets(std::string_view s, std::vector<std::size_t>& offsets) {
    std::u32string out;
    out.reserve(s.size());
    offsets.clear();
    offsets.reserve(s.size() + 1);
    std::size_t i = 0;
    while (i < s.size()) {
        offsets.push_back(i);
        out.push_back(decode_one(s, i));
    }
    offsets.push_back(s.size());
    return out;
}

void append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode(std::u32string_view s) {
    std::string out;
    out.reserve(s.size() * 2);
    for (char32_t cp : s) append(out, cp);
    return out;
}

std::size_t count(std::string_view s) {
    std::size_t n = 0, i = 0;
    while (i < s.size()) {
        decode_one(s, i);
        ++n;
    }
    return n;
}

std::string substr(std::string_view s, std::size_t from, std::size_t to) {
    std::size_t i = 0, cp = 0;
    std::size_t byte_from = s.size(), byte_to = s.size();
    while (i < s.size()) {
        if (cp == from) byte_from = i;
        if (cp == to) {
            byte_to = i;
            break;
        }
        decode_one(s, i);
        ++cp;
    }
    if (cp <= from) byte_from = (cp == from) ? i : s.size();
    if (byte_from > byte_to) return {};
    return std::string(s.substr(byte_from, byte_to - byte_from));
}

bool is_space(char32_t cp) {
    switch (cp) {
        case U' ': case U'\t': case U'\n': case U'\r': case U'\f': case U'\v':
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_latin(char32_t cp) {
    if ((cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z')) return true;
    if (cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7) return true;
    return false;
}

bool is_cyrillic(char32_t cp) { return (cp >= 0x400 && cp <= 0x4FF) || (cp >= 0x500 && cp <= 0x52F); }

bool is_alpha(char32_t cp) {
    if (is_latin(cp) || is_cyrillic(cp)) return true;
    if (cp >= 0x386 && cp <= 0x3CE) return true;          // Greek
    if (cp >= 0x4E00 && cp <= 0x9FFF) return true;        // CJK
    return false;
}

bool is_upper(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return true;
    if (cp >= 0x410 && cp <= 0x42F) return true;  // А..Я
    if (cp == 0x401) return true;                 // Ё
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return true;
    return false;
}

bool is_lower(char32_t cp) {
    if (cp >= U'a' && cp <= U'z') return true;
    if (cp >= 0x430 && cp <= 0x44F) return true;  // а..я
    if (cp == 0x451) return true;                 // ё
    if (cp >= 0xDF && cp <= 0xFF && cp != 0xF7) return true;
    return false;
}

char32_t to_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    if (cp == 0x401) return 0x451;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    return cp;
}

std::string to_lower_copy(std::string_view s) {
    std::u32string cps = decode(s);
    for (auto& cp : cps) cp = to_lower(cp);
    return encode(cps);
}

}  // namespace cyrcite::utf8
