#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "causal/errors.hpp"

namespace causal {

// Diagnostic label tiers, totally ordered Cause < Reason < Symptom.
// The order fixes cross-tier edge direction during discovery.
enum class Tier : int { Cause = 0, Reason = 1, Symptom = 2 };

const char* tier_code(Tier t);  // "C", "R", "S"
std::optional<Tier> tier_from_code(std::string_view code);

struct Label {
    std::string name;
    Tier tier;
};

// Immutable ordered label universe. Position in the list is the canonical
// index used by every other type (datasets, graphs, belief vectors).
class LabelSchema {
public:
    explicit LabelSchema(std::vector<Label> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const Label& label(int i) const { return labels_[i]; }
    const std::string& name(int i) const { return labels_[i].name; }
    Tier tier(int i) const { return labels_[i].tier; }

    // -1 when the name is unknown
    int index_of(const std::string& name) const;

    int tier_count(Tier t) const;

    bool operator==(const LabelSchema& other) const;
    bool operator!=(const LabelSchema& other) const { return !(*this == other); }

private:
    std::vector<Label> labels_;
    std::unordered_map<std::string, int> index_;
};

using SchemaPtr = std::shared_ptr<const LabelSchema>;

SchemaPtr make_schema(std::vector<Label> labels);

// Throws SchemaMismatch unless both handles describe the same label universe.
void require_same_schema(const SchemaPtr& a, const SchemaPtr& b, const std::string& context);

// N records over M binary label columns, row-major.
class BinaryDataset {
public:
    BinaryDataset(SchemaPtr schema, std::vector<std::uint8_t> cells, int n_rows);

    int rows() const { return n_rows_; }
    int cols() const { return schema_->size(); }
    std::uint8_t at(int row, int col) const { return cells_[static_cast<std::size_t>(row) * cols() + col]; }

    const SchemaPtr& schema() const { return schema_; }

    bool operator==(const BinaryDataset& other) const;

private:
    SchemaPtr schema_;
    std::vector<std::uint8_t> cells_;
    int n_rows_;
};

// Beliefs are clipped into [kBeliefClip, 1 - kBeliefClip] so degenerate 0/1
// marginals cannot freeze Bayes-inverted backward messages.
inline constexpr double kBeliefClip = 1e-6;

double clip_belief(double p);

// Per-label marginal probabilities for one instance.
class BeliefVector {
public:
    BeliefVector(SchemaPtr schema, std::vector<double> p);

    int size() const { return static_cast<int>(p_.size()); }
    double at(int i) const { return p_[i]; }
    const std::vector<double>& values() const { return p_; }
    const SchemaPtr& schema() const { return schema_; }

    // copy with every entry clipped into the belief bounds
    BeliefVector clipped() const;

private:
    SchemaPtr schema_;
    std::vector<double> p_;
};

}  // namespace causal
