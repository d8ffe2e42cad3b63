#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riscgen/dependency_model.hpp"
#include "riscgen/error.hpp"
#include "riscgen/protection_table.hpp"
#include "riscgen/random.hpp"

namespace riscgen {

/// Protections of one contract, bound to its column schema.
class ProtectionSet {
 public:
  ProtectionSet(std::shared_ptr<const ColumnSchema> schema, Row bits)
      : schema_(std::move(schema)), bits_(std::move(bits)) {
    if (!schema_) throw Error(ErrorCode::InvalidConfig, "protection set without schema");
    if (bits_.size() != schema_->size()) {
      throw Error(ErrorCode::SchemaMismatch, "protection set length does not match schema");
    }
    for (auto b : bits_) {
      if (b > 1) throw Error(ErrorCode::NonBinaryCell, "protection set cell outside {0,1}");
    }
  }

  /// Builds a set from the names of included columns.
  static ProtectionSet from_names(std::shared_ptr<const ColumnSchema> schema,
                                  const std::vector<std::string>& included) {
    Row bits(schema->size(), 0);
    for (const auto& name : included) {
      auto idx = schema->index_of(name);
      if (!idx) throw Error(ErrorCode::MissingColumn, "unknown column '" + name + "'");
      bits[*idx] = 1;
    }
    return ProtectionSet(std::move(schema), std::move(bits));
  }

  const ColumnSchema& schema() const noexcept { return *schema_; }
  const std::shared_ptr<const ColumnSchema>& schema_ptr() const noexcept { return schema_; }
  const Row& bits() const noexcept { return bits_; }

  /// nullopt when the column is not in the schema.
  std::optional<bool> get(std::string_view column) const {
    auto idx = schema_->index_of(column);
    if (!idx) return std::nullopt;
    return bits_[*idx] == 1;
  }
  bool has(std::string_view column) const { return get(column).value_or(false); }

  /// Included column indices, schema order.
  std::vector<std::size_t> included() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i]) out.push_back(i);
    }
    return out;
  }

  /// Included endorsement ids sorted ascending ("20a" before "27").
  std::vector<std::string> endorsements() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] && schema_->role(i) == ColumnRole::Endorsement) out.push_back(schema_->endorsement_id(i));
    }
    std::sort(out.begin(), out.end(), endorsement_id_less);
    return out;
  }

  friend bool operator==(const ProtectionSet& a, const ProtectionSet& b) {
    return *a.schema_ == *b.schema_ && a.bits_ == b.bits_;
  }

 private:
  std::shared_ptr<const ColumnSchema> schema_;
  Row bits_;
};

struct DrivingRecord {
  int claims = 0;       // past five years; 3 stands for "3 or more"
  int suspensions = 0;  // 3 stands for "3 or more"

  friend bool operator==(const DrivingRecord&, const DrivingRecord&) = default;
};

enum class RuleId { R1 = 1, R2, R3, R4, R5 };

inline std::string_view to_string(RuleId id) {
  switch (id) {
    case RuleId::R1: return "R1";
    case RuleId::R2: return "R2";
    case RuleId::R3: return "R3";
    case RuleId::R4: return "R4";
    case RuleId::R5: return "R5";
  }
  return "R?";
}

struct RuleViolation {
  RuleId rule;
  std::string message;
};

enum class Qef41Mode { Conditional, Strict };

inline Qef41Mode parse_qef41_mode(std::string_view s) {
  if (s == "conditional") return Qef41Mode::Conditional;
  if (s == "strict") return Qef41Mode::Strict;
  throw Error(ErrorCode::InvalidConfig, "rules.qef41_mode must be conditional or strict, got '" + std::string(s) + "'");
}

struct RuleConfig {
  Qef41Mode qef41_mode = Qef41Mode::Conditional;
  std::size_t max_attempts = 10'000;
  /// Skip rules whose Section A/B columns are absent instead of throwing.
  bool lenient_columns = false;
};

inline constexpr std::string_view kQef41 = "QEF_41";
inline constexpr std::string_view kQef43 = "QEF_43";

/// All violated rules in R1..R5 order; empty means the set is valid.
inline std::vector<RuleViolation> validate(const ProtectionSet& set, const std::optional<DrivingRecord>& driving,
                                           const RuleConfig& config = {}) {
  std::vector<RuleViolation> out;
  auto base = [&](std::string_view column) -> std::optional<bool> {
    auto v = set.get(column);
    if (!v && !config.lenient_columns) {
      throw Error(ErrorCode::MissingColumn, "rule column '" + std::string(column) + "' absent from schema");
    }
    return v;
  };

  const auto a = base(kSectionA);
  const auto b1 = base("SectionB1");
  const auto b2 = base("SectionB2");
  const auto b3 = base("SectionB3");
  const auto b4 = base("SectionB4");

  if (a && !*a) out.push_back({RuleId::R1, "mandatory Section A coverage is missing"});
  if (b1 && b2 && b3 && b4 && *b1 && (*b2 || *b3 || *b4)) {
    out.push_back({RuleId::R2, "Section B1 already includes every other Section B coverage"});
  }
  if (b3 && b4 && *b3 && *b4) out.push_back({RuleId::R3, "Section B3 already includes Section B4"});

  if (auto q41 = set.get(kQef41); q41 && *q41) {
    const bool forbidden = config.qef41_mode == Qef41Mode::Strict ||
                           (driving && (driving->claims > 0 || driving->suspensions > 0));
    if (forbidden) {
      out.push_back({RuleId::R4, config.qef41_mode == Qef41Mode::Strict
                                     ? "Q.E.F. 41 is not offered"
                                     : "Q.E.F. 41 is not offered to an insured with claims or suspensions"});
    }
  }
  if (auto q43 = set.get(kQef43); q43 && *q43 && b1 && b2 && b3 && b4) {
    if (!(*b1 || *b2 || *b3 || *b4)) {
      out.push_back({RuleId::R5, "Q.E.F. 43 requires a Section B coverage"});
    }
  }
  return out;
}

inline bool is_valid(const ProtectionSet& set, const std::optional<DrivingRecord>& driving,
                     const RuleConfig& config = {}) {
  return validate(set, driving, config).empty();
}

struct SampledProtections {
  ProtectionSet set;
  std::size_t attempts;
};

/// Rejection loop: attempt k draws from the stream (seed, "attempt", k).
inline SampledProtections sample_valid(const DependencyModel& model, const std::optional<DrivingRecord>& driving,
                                       std::uint64_t seed, const RuleConfig& config = {}) {
  if (config.max_attempts == 0) throw Error(ErrorCode::InvalidConfig, "rules.max_attempts must be >= 1");
  auto schema = std::make_shared<const ColumnSchema>(model.schema());
  for (std::size_t k = 0; k < config.max_attempts; ++k) {
    Rng rng = Rng::stream(seed, "attempt", k);
    ProtectionSet candidate(schema, model.sample_row(rng));
    if (is_valid(candidate, driving, config)) return {std::move(candidate), k + 1};
  }
  throw Error(ErrorCode::RejectionBudgetExhausted,
              "no rule-compliant protection set after " + std::to_string(config.max_attempts) + " attempts");
}

}  // namespace riscgen
