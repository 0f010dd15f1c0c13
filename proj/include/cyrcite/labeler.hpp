#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cyrcite/features.hpp"
#include "cyrcite/normalize.hpp"
#include "cyrcite/training_data.hpp"

namespace cyrcite {

// One reference line ready for the labeler: tokens with completed feature
// vectors, and gold labels when training.
struct LabeledRow {
    std::vector<Token> tokens;
    std::vector<TokenFeatures> features;
    std::vector<Label> gold;  // empty outside training
};

struct TrainOptions {
    unsigned epochs = 20;
    std::uint64_t seed = 42;
};

// Averaged structured perceptron over per-token feature strings plus
// label-bigram transitions, decoded with Viterbi.
class Model {
public:
    using WeightRow = std::array<double, kLabelCount>;

    static Model train(const std::vector<LabeledRow>& corpus, const TrainOptions& options = {});

    // Viterbi decode, repaired so orphan I-X become B-X. `confidence` gets
    // one value in [0,1] per token: the softmax share of the emitted label
    // with the neighbouring labels fixed.
    std::vector<Label> predict(const std::vector<Token>& tokens, const std::vector<TokenFeatures>& features,
                               std::vector<double>* confidence = nullptr) const;

    void save(const std::string& path) const;
    static Model load(const std::string& path);

    std::string serialize() const;
    static Model deserialize(std::string_view text);

    unsigned epochs() const { return epochs_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t corpus_hash() const { return corpus_hash_; }
    std::size_t feature_count() const { return weights_.size(); }

    // Test hook: direct weight access for hand-built models.
    void set_weight(const std::string& feature, Label label, double value);
    void set_transition(int prev /* -1 for start */, Label label, double value);

private:
    std::map<std::string, WeightRow> weights_;
    // transitions_[0] scores the start; [1+l] scores prev label l.
    std::array<WeightRow, kLabelCount + 1> transitions_{};
    unsigned epochs_ = 0;
    std::uint64_t seed_ = 0;
    std::uint64_t corpus_hash_ = 0;

    std::vector<Label> viterbi(const std::vector<std::vector<std::string>>& feats) const;
    double emission(const std::vector<std::string>& feats, std::size_t label) const;
};

// Per-field confidence statistics, the shape of the labeler's
// self-assessment report.
struct FieldStats {
    std::size_t count = 0;
    double mean = 0, variance = 0, min = 0, max = 0;
};

struct FieldReport {
    // Rows in fixed order A, O, T, Y.
    static constexpr std::array<char, 4> kFields = {'A', 'O', 'T', 'Y'};
    std::array<FieldStats, 4> rows{};

    const FieldStats& row(char field) const;
    std::string render() const;
};

FieldReport evaluate(const Model& model, const std::vector<LabeledRow>& corpus);

// Feature strings consumed by the model: the declared feature vector plus
// lexical and neighbour context so the learner can pin down rare tokens.
std::vector<std::string> featurize_token(const std::vector<Token>& tokens,
                                         const std::vector<TokenFeatures>& features, std::size_t i);

std::uint64_t fnv1a64(std::string_view data);

}  // namespace cyrcite
