#include "cyrcite/training_data.hpp"

#include <fstream>
#include <optional>

#include "cyrcite/errors.hpp"
#include "cyrcite/normalize.hpp"
#include "cyrcite/utf8.hpp"

namespace cyrcite {

std::string_view to_string(Label l) { return kLabelNames[static_cast<std::size_t>(l)]; }

Label label_from_string(std::string_view s) {
    for (std::size_t i = 0; i < kLabelCount; ++i)
        if (kLabelNames[i] == s) return static_cast<Label>(i);
    throw Error("unknown label: " + std::string(s));
}

char field_letter(Label l) {
    switch (l) {
        case Label::BA: case Label::IA: return 'A';
        case Label::BT: case Label::IT: return 'T';
        case Label::BY: return 'Y';
        case Label::O: return 'O';
    }
    return 'O';
}

bool is_begin(Label l) { return l == Label::BA || l == Label::BT || l == Label::BY; }

bool is_scheme_valid(const LabeledSequence& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        Label l = seq[i].label;
        if (l == Label::IA || l == Label::IT) {
            if (i == 0) return false;
            Label prev = seq[i - 1].label;
            if (field_letter(prev) != field_letter(l)) return false;
        }
    }
    return true;
}

namespace {

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        auto take = [&](std::string_view entity, char c) {
            if (s.substr(i, entity.size()) == entity) {
                out.push_back(c);
                i += entity.size();
                return true;
            }
            return false;
        };
        if (take("&amp;", '&') || take("&lt;", '<') || take("&gt;", '>') || take("&quot;", '"') ||
            take("&apos;", '\''))
            continue;
        out.push_back(s[i++]);
    }
    return out;
}

std::string collapse_whitespace(std::string_view s) {
    std::u32string cps = utf8::decode(s);
    std::u32string out;
    bool pending = false;
    for (char32_t cp : cps) {
        if (utf8::is_space(cp)) {
            pending = !out.empty();
        } else {
            if (pending) out.push_back(U' ');
            pending = false;
            out.push_back(cp);
        }
    }
    return utf8::encode(out);
}

struct FieldSpan {
    char field;  // 'a', 't', 'y'
    std::size_t start;  // code-point offsets into the tag-stripped text
    std::size_t end;
};

// Minimal parser for the constrained fragment format: an <r> root whose
// direct content mixes text with non-nested <a>/<t>/<y> elements.
struct FragmentParts {
    std::string text;  // tag-stripped, entities decoded
    std::vector<FieldSpan> fields;
};

FragmentParts parse_fragment(std::string_view fragment) {
    std::size_t i = 0, n = fragment.size();
    auto skip_ws = [&] {
        while (i < n && (fragment[i] == ' ' || fragment[i] == '\t' || fragment[i] == '\n' ||
                         fragment[i] == '\r'))
            ++i;
    };
    skip_ws();
    if (fragment.substr(i, 3) != "<r>") throw Error("annotation fragment must start with <r>");
    i += 3;

    FragmentParts parts;
    std::u32string text;
    std::optional<char> open_field;
    std::size_t field_start = 0;
    bool closed = false;

    auto flush_text = [&](std::string_view raw) {
        std::u32string cps = utf8::decode(decode_entities(raw));
        text += cps;
    };

    std::size_t chunk_start = i;
    while (i < n) {
        if (fragment[i] != '<') {
            ++i;
            continue;
        }
        flush_text(fragment.substr(chunk_start, i - chunk_start));
        std::size_t close = fragment.find('>', i);
        if (close == std::string_view::npos) throw Error("unterminated tag in annotation fragment");
        std::string_view tag = fragment.substr(i + 1, close - i - 1);
        i = close + 1;
        chunk_start = i;
        if (tag == "a" || tag == "t" || tag == "y") {
            if (open_field) throw Error("nested field elements in annotation fragment");
            open_field = tag[0];
            field_start = text.size();
        } else if (tag == "/a" || tag == "/t" || tag == "/y") {
            if (!open_field || *open_field != tag[1])
                throw Error("mismatched closing tag in annotation fragment");
            parts.fields.push_back({*open_field, field_start, text.size()});
            open_field.reset();
        } else if (tag == "/r") {
            if (open_field) throw Error("field element not closed before </r>");
            closed = true;
            break;
        } else {
            throw Error("unknown tag in annotation fragment: <" + std::string(tag) + ">");
        }
    }
    if (!closed) throw Error("annotation fragment lacks </r>");
    std::size_t tail = i;
    while (tail < n) {
        char c = fragment[tail];
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r')
            throw Error("trailing content after </r>");
        ++tail;
    }
    parts.text = utf8::encode(text);
    return parts;
}

}  // namespace

LabeledSequence parse_annotation(std::string_view fragment) {
    FragmentParts parts = parse_fragment(fragment);

    std::vector<Token> tokens = tokenize(parts.text);
    LabeledSequence seq;
    seq.reserve(tokens.size());
    char prev_field = 0;
    for (const Token& tok : tokens) {
        char field = 0;
        for (const FieldSpan& f : parts.fields) {
            if (tok.span.start >= f.start && tok.span.start < f.end) {
                field = f.field;
                break;
            }
        }
        Label label = Label::O;
        if (field == 'a') label = prev_field == 'a' ? Label::IA : Label::BA;
        if (field == 't') label = prev_field == 't' ? Label::IT : Label::BT;
        if (field == 'y') label = Label::BY;
        prev_field = field;
        seq.push_back({tok.text, label});
    }

    std::string expected = collapse_whitespace(parts.text);
    if (reconstruct(seq) != expected)
        throw Error("annotation round-trip mismatch for: " + expected);
    return seq;
}

std::string render_columns(const LabeledSequence& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out.push_back('\n');
        out += seq[i].text;
        out.push_back('\t');
        out += to_string(seq[i].label);
    }
    return out;
}

std::string render_columns_batch(const std::vector<LabeledSequence>& seqs) {
    std::string out;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        if (i) out += "\n\n";
        out += render_columns(seqs[i]);
    }
    return out;
}

std::vector<LabeledSequence> parse_columns(std::string_view text) {
    std::vector<LabeledSequence> seqs;
    LabeledSequence current;
    std::size_t pos = 0;
    auto flush = [&] {
        if (current.empty()) return;
        if (!is_scheme_valid(current)) throw Error("column data violates the label scheme");
        seqs.push_back(std::move(current));
        current.clear();
    };
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) {
            flush();
        } else {
            auto tab = line.find('\t');
            if (tab == std::string_view::npos) throw Error("column line lacks a tab: " + std::string(line));
            current.push_back({std::string(line.substr(0, tab)), label_from_string(line.substr(tab + 1))});
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    flush();
    return seqs;
}

std::string reconstruct(const LabeledSequence& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out.push_back(' ');
        out += seq[i].text;
    }
    return out;
}

std::vector<LabeledSequence> load_annotation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open annotation file: " + path);
    std::vector<LabeledSequence> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            out.push_back(parse_annotation(line));
        } catch (const Error& e) {
            throw Error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace cyrcite
