#include "cyrcite/ref_parser.hpp"

#include <algorithm>

#include "cyrcite/utf8.hpp"

namespace cyrcite {

namespace {

std::string rstrip_punct(std::string_view s, std::string_view punct) {
    std::u32string cps = utf8::decode(s);
    std::u32string drop = utf8::decode(punct);
    std::size_t end = cps.size();
    while (end > 0 && drop.find(cps[end - 1]) != std::u32string::npos) --end;
    return utf8::encode(cps.substr(0, end));
}

std::string first_four_digit_run(std::string_view s) {
    std::u32string cps = utf8::decode(s);
    std::size_t run = 0;
    for (std::size_t i = 0; i <= cps.size(); ++i) {
        bool digit = i < cps.size() && utf8::is_digit(cps[i]);
        if (digit) {
            ++run;
        } else {
            if (run == 4) return utf8::encode(cps.substr(i - 4, 4));
            run = 0;
        }
    }
    return {};
}

void append_joined(std::string& out, std::string_view piece) {
    if (!out.empty()) out.push_back(' ');
    out += piece;
}

}  // namespace

AssembledFields assemble_fields(const std::vector<Token>& tokens, const std::vector<Label>& labels) {
    AssembledFields fields;

    std::size_t first_dsl = tokens.size();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].text.find("//") != std::string::npos) {
            first_dsl = i;
            break;
        }
    }

    std::vector<Label> effective = labels;
    for (std::size_t i = first_dsl; i < effective.size(); ++i) {
        if (field_letter(effective[i]) == 'T') effective[i] = Label::O;
    }

    std::vector<std::string> author_runs;
    std::ptrdiff_t last_t = -1, last_a = -1;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        switch (effective[i]) {
            case Label::BA:
                author_runs.emplace_back(tokens[i].text);
                last_a = static_cast<std::ptrdiff_t>(i);
                break;
            case Label::IA:
                append_joined(author_runs.back(), tokens[i].text);
                last_a = static_cast<std::ptrdiff_t>(i);
                break;
            case Label::BT:
            case Label::IT:
                append_joined(fields.title_raw, tokens[i].text);
                last_t = static_cast<std::ptrdiff_t>(i);
                break;
            case Label::BY:
                if (fields.year.empty()) fields.year = first_four_digit_run(tokens[i].text);
                break;
            case Label::O:
                break;
        }
    }

    for (std::size_t r = 0; r < author_runs.size(); ++r) {
        if (r) fields.author += ", ";
        fields.author += rstrip_punct(author_runs[r], ",;");
    }
    fields.title = rstrip_punct(fields.title_raw, ".,;:");

    std::ptrdiff_t anchor = last_t >= 0 ? last_t : last_a;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (static_cast<std::ptrdiff_t>(i) > anchor && effective[i] == Label::O)
            append_joined(fields.unparsed_tail, tokens[i].text);
    }
    return fields;
}

ParsedReference parse_reference(const std::string& line, const Model& model, const Resources& res,
                                const FeatureConfig& cfg) {
    ParsedReference ref;
    ref.raw = line;

    std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) return ref;

    std::size_t cyr = 0, lat = 0;
    for (const Token& tok : tokens) {
        switch (classify_script(repair_homoglyphs(tok.text, res.homoglyphs).first)) {
            case ScriptClass::Cyrillic: ++cyr; break;
            case ScriptClass::Latin: ++lat; break;
            default: break;
        }
    }

    std::size_t begin = 0, end = tokens.size();
    if (cyr > 0 && lat > 0 && cyr > lat) {
        if (auto span = find_cyrillic_span(tokens, res.homoglyphs)) {
            begin = span->start;
            end = span->end;
        }
    }

    std::vector<Token> row(tokens.begin() + static_cast<std::ptrdiff_t>(begin),
                           tokens.begin() + static_cast<std::ptrdiff_t>(end));
    for (std::size_t i = 0; i < row.size(); ++i) row[i].index = i;

    std::vector<TokenFeatures> features = compute_features(row, res, cfg);
    std::vector<double> confidence;
    std::vector<Label> labels = model.predict(row, features, &confidence);

    AssembledFields fields = assemble_fields(row, labels);
    ref.author = std::move(fields.author);
    ref.title = std::move(fields.title);
    ref.title_raw = std::move(fields.title_raw);
    ref.year = std::move(fields.year);
    ref.min_confidence = confidence.empty() ? 1.0 : *std::min_element(confidence.begin(), confidence.end());

    std::string tail;
    for (std::size_t i = 0; i < begin; ++i) append_joined(tail, tokens[i].text);
    if (!fields.unparsed_tail.empty()) append_joined(tail, fields.unparsed_tail);
    for (std::size_t i = end; i < tokens.size(); ++i) append_joined(tail, tokens[i].text);
    ref.unparsed_tail = std::move(tail);
    return ref;
}

}  // namespace cyrcite
