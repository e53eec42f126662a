#include "causal/types.hpp"

#include <algorithm>

namespace causal {

const char* tier_code(Tier t) {
    switch (t) {
        case Tier::Cause: return "C";
        case Tier::Reason: return "R";
        case Tier::Symptom: return "S";
    }
    return "?";
}

std::optional<Tier> tier_from_code(std::string_view code) {
    if (code == "C") return Tier::Cause;
    if (code == "R") return Tier::Reason;
    if (code == "S") return Tier::Symptom;
    return std::nullopt;
}

LabelSchema::LabelSchema(std::vector<Label> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw InvalidArgument("schema must contain at least one label");
    index_.reserve(labels_.size());
    for (int i = 0; i < static_cast<int>(labels_.size()); ++i) {
        const auto& name = labels_[i].name;
        if (name.empty()) throw InvalidArgument("label " + std::to_string(i) + " has an empty name");
        if (!index_.emplace(name, i).second) {
            throw InvalidArgument("duplicate label name '" + name + "'");
        }
    }
}

int LabelSchema::index_of(const std::string& name) const {
    const auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

int LabelSchema::tier_count(Tier t) const {
    return static_cast<int>(
        std::count_if(labels_.begin(), labels_.end(), [t](const Label& l) { return l.tier == t; }));
}

bool LabelSchema::operator==(const LabelSchema& other) const {
    if (labels_.size() != other.labels_.size()) return false;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].name != other.labels_[i].name || labels_[i].tier != other.labels_[i].tier) {
            return false;
        }
    }
    return true;
}

SchemaPtr make_schema(std::vector<Label> labels) {
    return std::make_shared<const LabelSchema>(std::move(labels));
}

void require_same_schema(const SchemaPtr& a, const SchemaPtr& b, const std::string& context) {
    if (a == b) return;
    if (a == nullptr || b == nullptr || *a != *b) {
        throw SchemaMismatch(context + ": label schemas differ");
    }
}

BinaryDataset::BinaryDataset(SchemaPtr schema, std::vector<std::uint8_t> cells, int n_rows)
    : schema_(std::move(schema)), cells_(std::move(cells)), n_rows_(n_rows) {
    if (schema_ == nullptr) throw InvalidArgument("dataset requires a schema");
    if (n_rows_ < 1) throw InvalidArgument("dataset must contain at least one record");
    if (cells_.size() != static_cast<std::size_t>(n_rows_) * schema_->size()) {
        throw InvalidArgument("dataset cell count does not match rows x schema size");
    }
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (cells_[i] > 1) {
            const int row = static_cast<int>(i) / schema_->size();
            const int col = static_cast<int>(i) % schema_->size();
            throw InvalidArgument("non-binary cell at row " + std::to_string(row + 1) + ", column '" +
                                  schema_->name(col) + "'");
        }
    }
}

bool BinaryDataset::operator==(const BinaryDataset& other) const {
    return n_rows_ == other.n_rows_ && *schema_ == *other.schema_ && cells_ == other.cells_;
}

double clip_belief(double p) {
    return std::min(1.0 - kBeliefClip, std::max(kBeliefClip, p));
}

BeliefVector::BeliefVector(SchemaPtr schema, std::vector<double> p)
    : schema_(std::move(schema)), p_(std::move(p)) {
    if (schema_ == nullptr) throw InvalidArgument("belief vector requires a schema");
    if (p_.size() != static_cast<std::size_t>(schema_->size())) {
        throw InvalidArgument("belief vector length does not match schema size");
    }
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (!(p_[i] >= 0.0 && p_[i] <= 1.0)) {
            throw InvalidArgument("belief for '" + schema_->name(static_cast<int>(i)) +
                                  "' is outside [0,1]");
        }
    }
}

BeliefVector BeliefVector::clipped() const {
    std::vector<double> q(p_.size());
    for (std::size_t i = 0; i < p_.size(); ++i) q[i] = clip_belief(p_[i]);
    return BeliefVector(schema_, std::move(q));
}

}  // namespace causal
