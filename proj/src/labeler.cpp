#include "cyrcite/labeler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "cyrcite/errors.hpp"
#include "cyrcite/utf8.hpp"

namespace cyrcite {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<std::string> featurize_token(const std::vector<Token>& tokens,
                                         const std::vector<TokenFeatures>& features, std::size_t i) {
    const TokenFeatures& f = features[i];
    std::vector<std::string> out;
    out.reserve(24);
    out.emplace_back("bias");
    out.emplace_back("bt=").back() += to_string(f.broad_type);

    auto flag = [&](bool v, const char* name) {
        if (v) out.emplace_back(name);
    };
    flag(f.is_known_surname, "sur");
    flag(f.is_capitalized, "cap");
    flag(f.is_allcaps_dotted, "acd");
    flag(f.is_publication_year, "year");
    flag(f.is_four_digits, "dig4");
    flag(f.is_mimeo_marker, "mimeo");
    flag(f.is_double_slash, "dsl");
    flag(f.is_single_slash, "ssl");
    flag(f.is_abbreviation, "abbr");
    flag(f.before_single_slash, "b_ssl");
    flag(f.after_single_slash, "a_ssl");
    flag(f.before_double_slash, "b_dsl");
    flag(f.after_double_slash, "a_dsl");
    flag(f.likely_author_zone, "az");
    flag(f.likely_title_zone, "tz");

    const std::string& text = tokens[i].text;
    std::string lower = utf8::to_lower_copy(text);
    out.push_back("w=" + lower);
    std::u32string cps = utf8::decode(lower);
    std::size_t n = cps.size();
    out.push_back("sfx2=" + utf8::encode(cps.substr(n > 2 ? n - 2 : 0)));
    out.push_back("sfx3=" + utf8::encode(cps.substr(n > 3 ? n - 3 : 0)));

    if (i == 0) out.emplace_back("bos");
    if (i + 1 == tokens.size()) out.emplace_back("eos");
    if (i > 0) {
        out.push_back("pw=" + utf8::to_lower_copy(tokens[i - 1].text));
        out.emplace_back("pbt=").back() += to_string(features[i - 1].broad_type);
        if (features[i - 1].is_allcaps_dotted) out.emplace_back("p_acd");
        if (features[i - 1].is_known_surname) out.emplace_back("p_sur");
    }
    if (i + 1 < tokens.size()) {
        out.push_back("nw=" + utf8::to_lower_copy(tokens[i + 1].text));
        out.emplace_back("nbt=").back() += to_string(features[i + 1].broad_type);
        if (features[i + 1].is_allcaps_dotted) out.emplace_back("n_acd");
    }
    return out;
}

double Model::emission(const std::vector<std::string>& feats, std::size_t label) const {
    double s = 0;
    for (const auto& f : feats) {
        auto it = weights_.find(f);
        if (it != weights_.end()) s += it->second[label];
    }
    return s;
}

std::vector<Label> Model::viterbi(const std::vector<std::vector<std::string>>& feats) const {
    const std::size_t n = feats.size();
    const std::size_t L = kLabelCount;
    if (n == 0) return {};

    std::vector<std::array<double, kLabelCount>> score(n);
    std::vector<std::array<int, kLabelCount>> back(n);
    for (std::size_t l = 0; l < L; ++l) {
        score[0][l] = transitions_[0][l] + emission(feats[0], l);
        back[0][l] = -1;
    }
    for (std::size_t t = 1; t < n; ++t) {
        std::array<double, kLabelCount> emit{};
        for (std::size_t l = 0; l < L; ++l) emit[l] = emission(feats[t], l);
        for (std::size_t l = 0; l < L; ++l) {
            double best = score[t - 1][0] + transitions_[1][l];
            int arg = 0;
            for (std::size_t p = 1; p < L; ++p) {
                double s = score[t - 1][p] + transitions_[1 + p][l];
                if (s > best) {
                    best = s;
                    arg = static_cast<int>(p);
                }
            }
            score[t][l] = best + emit[l];
            back[t][l] = arg;
        }
    }
    std::size_t last = 0;
    for (std::size_t l = 1; l < L; ++l)
        if (score[n - 1][l] > score[n - 1][last]) last = l;
    std::vector<Label> labels(n);
    for (std::size_t t = n; t-- > 0;) {
        labels[t] = static_cast<Label>(last);
        if (t > 0) last = static_cast<std::size_t>(back[t][last]);
    }
    return labels;
}

namespace {

void repair_scheme(std::vector<Label>& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        Label l = labels[i];
        if (l != Label::IA && l != Label::IT) continue;
        bool orphan = i == 0 || field_letter(labels[i - 1]) != field_letter(l);
        if (orphan) labels[i] = l == Label::IA ? Label::BA : Label::BT;
    }
}

}  // namespace

std::vector<Label> Model::predict(const std::vector<Token>& tokens,
                                  const std::vector<TokenFeatures>& features,
                                  std::vector<double>* confidence) const {
    std::vector<std::vector<std::string>> feats(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) feats[i] = featurize_token(tokens, features, i);

    std::vector<Label> labels = viterbi(feats);
    repair_scheme(labels);

    if (confidence) {
        confidence->assign(labels.size(), 0.0);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            std::array<double, kLabelCount> s{};
            std::size_t prev = i == 0 ? 0 : 1 + static_cast<std::size_t>(labels[i - 1]);
            for (std::size_t l = 0; l < kLabelCount; ++l) {
                s[l] = transitions_[prev][l] + emission(feats[i], l);
                if (i + 1 < labels.size())
                    s[l] += transitions_[1 + l][static_cast<std::size_t>(labels[i + 1])];
            }
            double mx = *std::max_element(s.begin(), s.end());
            double z = 0;
            for (double v : s) z += std::exp(v - mx);
            (*confidence)[i] = std::exp(s[static_cast<std::size_t>(labels[i])] - mx) / z;
        }
    }
    return labels;
}

Model Model::train(const std::vector<LabeledRow>& corpus, const TrainOptions& options) {
    if (corpus.empty()) throw Error("train: empty corpus");
    for (const auto& row : corpus) {
        if (row.tokens.size() != row.gold.size() || row.tokens.size() != row.features.size())
            throw Error("train: row tokens, features and gold labels must align");
        LabeledSequence seq;
        for (std::size_t i = 0; i < row.tokens.size(); ++i) seq.push_back({row.tokens[i].text, row.gold[i]});
        if (!is_scheme_valid(seq)) throw Error("train: corpus sequence violates the label scheme");
    }

    Model model;
    model.epochs_ = options.epochs;
    model.seed_ = options.seed;
    {
        std::string all;
        for (const auto& row : corpus) {
            for (std::size_t i = 0; i < row.tokens.size(); ++i) {
                all += row.tokens[i].text;
                all.push_back('\t');
                all += to_string(row.gold[i]);
                all.push_back('\n');
            }
            all.push_back('\n');
        }
        model.corpus_hash_ = fnv1a64(all);
    }

    std::vector<std::vector<std::vector<std::string>>> feats(corpus.size());
    for (std::size_t r = 0; r < corpus.size(); ++r) {
        feats[r].resize(corpus[r].tokens.size());
        for (std::size_t i = 0; i < corpus[r].tokens.size(); ++i)
            feats[r][i] = featurize_token(corpus[r].tokens, corpus[r].features, i);
    }

    // Averaged perceptron: totals accumulate update * timestamp so the
    // average comes out as w - totals / c.
    std::map<std::string, WeightRow> totals;
    std::array<WeightRow, kLabelCount + 1> trans_totals{};
    double c = 1;

    auto bump = [&](const std::string& f, std::size_t label, double delta) {
        model.weights_[f][label] += delta;
        totals[f][label] += delta * c;
    };
    auto bump_trans = [&](std::size_t prev, std::size_t label, double delta) {
        model.transitions_[prev][label] += delta;
        trans_totals[prev][label] += delta * c;
    };

    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(options.seed);

    for (unsigned epoch = 0; epoch < options.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t r : order) {
            const auto& gold = corpus[r].gold;
            std::vector<Label> pred = model.viterbi(feats[r]);
            bool mismatch = false;
            for (std::size_t i = 0; i < gold.size(); ++i) {
                if (pred[i] == gold[i]) continue;
                mismatch = true;
                auto g = static_cast<std::size_t>(gold[i]);
                auto p = static_cast<std::size_t>(pred[i]);
                for (const auto& f : feats[r][i]) {
                    bump(f, g, 1.0);
                    bump(f, p, -1.0);
                }
            }
            if (mismatch) {
                for (std::size_t i = 0; i < gold.size(); ++i) {
                    std::size_t gp = i == 0 ? 0 : 1 + static_cast<std::size_t>(gold[i - 1]);
                    std::size_t pp = i == 0 ? 0 : 1 + static_cast<std::size_t>(pred[i - 1]);
                    auto g = static_cast<std::size_t>(gold[i]);
                    auto p = static_cast<std::size_t>(pred[i]);
                    if (gp != pp || g != p) {
                        bump_trans(gp, g, 1.0);
                        bump_trans(pp, p, -1.0);
                    }
                }
            }
            c += 1;
        }
    }

    for (auto& [f, row] : model.weights_) {
        const WeightRow& tot = totals[f];
        for (std::size_t l = 0; l < kLabelCount; ++l) row[l] -= tot[l] / c;
    }
    for (std::size_t p = 0; p <= kLabelCount; ++p)
        for (std::size_t l = 0; l < kLabelCount; ++l)
            model.transitions_[p][l] -= trans_totals[p][l] / c;

    return model;
}

namespace {

std::string hex_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double parse_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

std::string Model::serialize() const {
    std::ostringstream out;
    out << "cyrcite-model 1\n";
    out << "labels";
    for (auto name : kLabelNames) out << ' ' << name;
    out << '\n';
    out << "epochs " << epochs_ << '\n';
    out << "seed " << seed_ << '\n';
    out << "corpus_hash " << std::hex << corpus_hash_ << std::dec << '\n';
    out << "transitions\n";
    for (const auto& row : transitions_) {
        for (std::size_t l = 0; l < kLabelCount; ++l) out << (l ? " " : "") << hex_double(row[l]);
        out << '\n';
    }
    out << "weights " << weights_.size() << '\n';
    for (const auto& [f, row] : weights_) {
        out << f;
        for (double v : row) out << '\t' << hex_double(v);
        out << '\n';
    }
    return out.str();
}

Model Model::deserialize(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line, word;
    auto fail = [](const std::string& why) -> Model { throw Error("model file: " + why); };

    if (!std::getline(in, line) || line != "cyrcite-model 1") return fail("bad magic");
    Model model;
    if (!std::getline(in, line) || line.rfind("labels ", 0) != 0) return fail("missing labels");
    {
        std::istringstream ls(line.substr(7));
        std::size_t i = 0;
        while (ls >> word) {
            if (i >= kLabelCount || word != kLabelNames[i]) return fail("label set mismatch");
            ++i;
        }
        if (i != kLabelCount) return fail("label set mismatch");
    }
    if (!std::getline(in, line) || line.rfind("epochs ", 0) != 0) return fail("missing epochs");
    model.epochs_ = static_cast<unsigned>(std::stoul(line.substr(7)));
    if (!std::getline(in, line) || line.rfind("seed ", 0) != 0) return fail("missing seed");
    model.seed_ = std::stoull(line.substr(5));
    if (!std::getline(in, line) || line.rfind("corpus_hash ", 0) != 0) return fail("missing corpus_hash");
    model.corpus_hash_ = std::stoull(line.substr(12), nullptr, 16);
    if (!std::getline(in, line) || line != "transitions") return fail("missing transitions");
    for (auto& row : model.transitions_) {
        if (!std::getline(in, line)) return fail("truncated transitions");
        std::istringstream ls(line);
        for (std::size_t l = 0; l < kLabelCount; ++l) {
            if (!(ls >> word)) return fail("short transition row");
            row[l] = parse_double(word);
        }
    }
    if (!std::getline(in, line) || line.rfind("weights ", 0) != 0) return fail("missing weights");
    std::size_t count = std::stoul(line.substr(8));
    for (std::size_t k = 0; k < count; ++k) {
        if (!std::getline(in, line)) return fail("truncated weights");
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) return fail("weight line lacks a tab");
        WeightRow row{};
        std::size_t pos = tab;
        for (std::size_t l = 0; l < kLabelCount; ++l) {
            std::size_t next = line.find('\t', pos + 1);
            std::string field = line.substr(pos + 1, next == std::string::npos ? next : next - pos - 1);
            if (field.empty()) return fail("short weight row");
            row[l] = parse_double(field);
            pos = next == std::string::npos ? line.size() : next;
        }
        model.weights_.emplace(line.substr(0, tab), row);
    }
    return model;
}

void Model::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write model: " + path);
    out << serialize();
    if (!out) throw IoError("failed writing model: " + path);
}

Model Model::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

void Model::set_weight(const std::string& feature, Label label, double value) {
    weights_[feature][static_cast<std::size_t>(label)] = value;
}

void Model::set_transition(int prev, Label label, double value) {
    transitions_[static_cast<std::size_t>(prev + 1)][static_cast<std::size_t>(label)] = value;
}

const FieldStats& FieldReport::row(char field) const {
    for (std::size_t i = 0; i < kFields.size(); ++i)
        if (kFields[i] == field) return rows[i];
    throw Error(std::string("unknown field letter: ") + field);
}

std::string FieldReport::render() const {
    std::ostringstream out;
    out << "field\tcount\tmean\tvar.\tmin\tmax\n";
    for (std::size_t i = 0; i < kFields.size(); ++i) {
        const FieldStats& s = rows[i];
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%c\t%zu\t%.2f\t%.2f\t%.2f\t%.2f\n", kFields[i], s.count, s.mean,
                      s.variance, s.min, s.max);
        out << buf;
    }
    return out.str();
}

FieldReport evaluate(const Model& model, const std::vector<LabeledRow>& corpus) {
    struct Acc {
        std::size_t n = 0;
        double sum = 0, sumsq = 0, mn = 0, mx = 0;
    };
    std::array<Acc, 4> acc{};
    auto slot = [](char f) -> std::size_t {
        switch (f) {
            case 'A': return 0;
            case 'O': return 1;
            case 'T': return 2;
            default: return 3;
        }
    };

    for (const auto& row : corpus) {
        std::vector<double> conf;
        std::vector<Label> pred = model.predict(row.tokens, row.features, &conf);
        for (std::size_t i = 0; i < pred.size(); ++i) {
            Acc& a = acc[slot(field_letter(pred[i]))];
            double v = conf[i];
            if (a.n == 0) {
                a.mn = a.mx = v;
            } else {
                a.mn = std::min(a.mn, v);
                a.mx = std::max(a.mx, v);
            }
            ++a.n;
            a.sum += v;
            a.sumsq += v * v;
        }
    }

    FieldReport report;
    for (std::size_t i = 0; i < 4; ++i) {
        const Acc& a = acc[i];
        FieldStats& s = report.rows[i];
        s.count = a.n;
        if (a.n > 0) {
            s.mean = a.sum / static_cast<double>(a.n);
            s.variance = std::max(0.0, a.sumsq / static_cast<double>(a.n) - s.mean * s.mean);
            s.min = a.mn;
            s.max = a.mx;
        }
    }
    return report;
}

}  // namespace cyrcite
