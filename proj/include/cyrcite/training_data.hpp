#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace cyrcite {

// Fields are A (author), T (title), Y (year); there is no I-Y because a
// year is always a single token.
enum class Label { BA, IA, BT, IT, BY, O };

inline constexpr std::size_t kLabelCount = 6;
inline constexpr std::array<std::string_view, kLabelCount> kLabelNames = {"B-A", "I-A", "B-T",
                                                                          "I-T", "B-Y", "O"};

std::string_view to_string(Label l);
Label label_from_string(std::string_view s);  // throws on unknown
char field_letter(Label l);                   // 'A', 'T', 'Y' or 'O'
bool is_begin(Label l);

struct LabeledToken {
    std::string text;
    Label label = Label::O;

    bool operator==(const LabeledToken&) const = default;
};

using LabeledSequence = std::vector<LabeledToken>;

// True when every I-X is immediately preceded by B-X or I-X of the same
// field letter.
bool is_scheme_valid(const LabeledSequence& seq);

// Parses one <r>...</r> fragment whose <a>, <t>, <y> children wrap the
// author, title and year spans. Throws Error on malformed XML, nested or
// overlapping field elements, or a tag-strip/reconstruction mismatch.
LabeledSequence parse_annotation(std::string_view fragment);

// One "token<TAB>label" line per pair, lines joined with '\n'.
std::string render_columns(const LabeledSequence& seq);

// Several sequences, separated by one blank line.
std::string render_columns_batch(const std::vector<LabeledSequence>& seqs);

// Inverse of render_columns_batch. Validates labels and the label scheme.
std::vector<LabeledSequence> parse_columns(std::string_view text);

// Token texts joined with single spaces; equals the whitespace-collapsed
// tag-stripped fragment for every well-formed annotation.
std::string reconstruct(const LabeledSequence& seq);

// Loads an annotation file: UTF-8, one <r>...</r> fragment per line.
std::vector<LabeledSequence> load_annotation_file(const std::string& path);

}  // namespace cyrcite
