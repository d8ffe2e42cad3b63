#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "riscgen/error.hpp"
#include "riscgen/protection_table.hpp"
#include "riscgen/random.hpp"

namespace riscgen {

/// Column `target` is switched on with probability `strength` whenever `source` is on.
struct Coupling {
  std::string source;
  std::string target;
  double strength = 0.9;
};

/// Ground-truth stand-in for a real portfolio: every row carries Section A,
/// a rule-compliant Section B pattern and at least one endorsement.
struct BootstrapSpec {
  ColumnSchema schema = ColumnSchema::contract_default();
  double target_mean = 7.24;
  std::vector<Coupling> couplings = {{"QEF_20a", "QEF_27", 0.9}};
  /// Relative endorsement popularity; empty means 1 / (1 + 0.12 k) by schema order.
  std::vector<double> endorsement_weights;
};

/// Section B patterns (B1, B2, B3, B4) with their probabilities.
struct SectionBPattern {
  std::array<std::uint8_t, 4> bits;
  double probability;
};

inline const std::vector<SectionBPattern>& section_b_patterns() {
  static const std::vector<SectionBPattern> patterns = {
      {{0, 0, 0, 0}, 0.10}, {{1, 0, 0, 0}, 0.45}, {{0, 1, 1, 0}, 0.25},
      {{0, 1, 0, 1}, 0.10}, {{0, 0, 1, 0}, 0.05}, {{0, 0, 0, 1}, 0.05},
  };
  return patterns;
}

/// Resolved sampling plan for a BootstrapSpec.
struct BootstrapPlan {
  bool saturated = false;  // target equals the column count: all-ones rows
  std::size_t section_a = 0;
  std::array<std::size_t, 4> section_b{};
  std::vector<std::size_t> endorsements;  // column indices
  std::vector<double> p_endorsement;      // independent inclusion probability
  std::optional<std::size_t> qef43;
  std::size_t fallback = 0;  // forced on when a row would have no endorsement
  struct ResolvedCoupling {
    std::size_t source, target;
    double strength;
  };
  std::vector<ResolvedCoupling> couplings;
  double scale = 0.0;
  double expected_mean = 0.0;
};

namespace detail {

inline double bootstrap_expected_mean(const BootstrapPlan& plan, const std::vector<double>& weights, double scale,
                                      std::vector<double>* probs_out = nullptr) {
  double p_b_none = 0.0;
  double e_b = 0.0;
  for (const auto& pat : section_b_patterns()) {
    const int count = pat.bits[0] + pat.bits[1] + pat.bits[2] + pat.bits[3];
    e_b += pat.probability * count;
    if (count == 0) p_b_none += pat.probability;
  }
  const std::size_t m = plan.endorsements.size();
  std::vector<double> p(m);
  for (std::size_t k = 0; k < m; ++k) p[k] = std::min(1.0, scale * weights[k]);
  if (probs_out) *probs_out = p;

  auto slot = [&](std::size_t column) {
    return static_cast<std::size_t>(std::find(plan.endorsements.begin(), plan.endorsements.end(), column) -
                                    plan.endorsements.begin());
  };
  std::vector<double> included = p;  // P(column on) after couplings and the Q.E.F. 43 rule
  std::vector<bool> grouped(m, false);
  double p_all_zero = 1.0;
  for (const auto& c : plan.couplings) {
    const auto s = slot(c.source), t = slot(c.target);
    included[t] = p[t] + (1.0 - p[t]) * p[s] * c.strength;
    p_all_zero *= (1.0 - p[s]) * (1.0 - p[t]);
    grouped[s] = grouped[t] = true;
  }
  if (plan.qef43) {
    const auto q = slot(*plan.qef43);
    included[q] = p[q] * (1.0 - p_b_none);
    p_all_zero *= 1.0 - included[q];
    grouped[q] = true;
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (!grouped[k]) p_all_zero *= 1.0 - p[k];
  }
  double sum = 1.0 + e_b + p_all_zero;
  for (double v : included) sum += v;
  return sum;
}

}  // namespace detail

inline BootstrapPlan plan_bootstrap(const BootstrapSpec& spec) {
  const auto& schema = spec.schema;
  schema.require_contract_layout();
  BootstrapPlan plan;
  const auto cols = static_cast<double>(schema.size());
  if (!(spec.target_mean > 0.0) || spec.target_mean > cols) {
    throw Error(ErrorCode::InfeasibleSpec, "target mean " + std::to_string(spec.target_mean) +
                                               " is outside (0, " + std::to_string(schema.size()) + "]");
  }
  plan.section_a = *schema.index_of(kSectionA);
  for (int k = 0; k < 4; ++k) plan.section_b[k] = *schema.index_of(section_b_name(k + 1));
  if (spec.target_mean == cols) {
    plan.saturated = true;
    plan.expected_mean = cols;
    return plan;
  }

  for (std::size_t c = 0; c < schema.size(); ++c) {
    if (schema.role(c) == ColumnRole::Endorsement) plan.endorsements.push_back(c);
  }
  if (plan.endorsements.empty()) throw Error(ErrorCode::InfeasibleSpec, "schema has no endorsement columns");
  plan.qef43 = schema.index_of("QEF_43");

  std::vector<double> weights = spec.endorsement_weights;
  if (weights.empty()) {
    for (std::size_t k = 0; k < plan.endorsements.size(); ++k) weights.push_back(1.0 / (1.0 + 0.12 * k));
  }
  if (weights.size() != plan.endorsements.size()) {
    throw Error(ErrorCode::InfeasibleSpec, "endorsement weight count does not match endorsement columns");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::InfeasibleSpec, "endorsement weights must be positive");
  }

  std::vector<bool> used(schema.size(), false);
  if (plan.qef43) used[*plan.qef43] = true;
  for (const auto& c : spec.couplings) {
    auto s = schema.index_of(c.source);
    auto t = schema.index_of(c.target);
    if (!s || !t || schema.role(*s) != ColumnRole::Endorsement || schema.role(*t) != ColumnRole::Endorsement ||
        *s == *t) {
      throw Error(ErrorCode::InfeasibleSpec, "coupling " + c.source + " -> " + c.target +
                                                 " must join two distinct endorsement columns");
    }
    if (used[*s] || used[*t]) {
      throw Error(ErrorCode::InfeasibleSpec, "a column may take part in at most one coupling (and not QEF_43)");
    }
    if (!(c.strength >= 0.0 && c.strength <= 1.0)) throw Error(ErrorCode::InfeasibleSpec, "coupling strength outside [0,1]");
    used[*s] = used[*t] = true;
    plan.couplings.push_back({*s, *t, c.strength});
  }
  std::optional<std::size_t> fallback;
  double best = -1.0;
  for (std::size_t k = 0; k < plan.endorsements.size(); ++k) {
    if (!used[plan.endorsements[k]] && weights[k] > best) {
      best = weights[k];
      fallback = plan.endorsements[k];
    }
  }
  if (!fallback) throw Error(ErrorCode::InfeasibleSpec, "no free endorsement column for the at-least-one guarantee");
  plan.fallback = *fallback;

  const double w_min = *std::min_element(weights.begin(), weights.end());
  const double lo_mean = detail::bootstrap_expected_mean(plan, weights, 0.0);
  const double hi_mean = detail::bootstrap_expected_mean(plan, weights, 1.0 / w_min);
  if (spec.target_mean < lo_mean || spec.target_mean > hi_mean) {
    throw Error(ErrorCode::InfeasibleSpec, "target mean " + std::to_string(spec.target_mean) +
                                               " unreachable by rule-compliant rows; feasible range [" +
                                               std::to_string(lo_mean) + ", " + std::to_string(hi_mean) + "]");
  }
  double lo = 0.0, hi = 1.0 / w_min;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (detail::bootstrap_expected_mean(plan, weights, mid) < spec.target_mean ? lo : hi) = mid;
  }
  plan.scale = 0.5 * (lo + hi);
  plan.expected_mean = detail::bootstrap_expected_mean(plan, weights, plan.scale, &plan.p_endorsement);
  return plan;
}

inline ProtectionTable bootstrap_seed_data(const BootstrapSpec& spec, std::size_t rows, std::uint64_t seed) {
  if (rows == 0) throw Error(ErrorCode::InfeasibleSpec, "bootstrap needs at least one row");
  const auto plan = plan_bootstrap(spec);
  const std::size_t cols = spec.schema.size();
  std::vector<double> pattern_weights;
  for (const auto& pat : section_b_patterns()) pattern_weights.push_back(pat.probability);

  std::vector<Row> out;
  out.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    Row row(cols, plan.saturated ? 1 : 0);
    if (plan.saturated) {
      out.push_back(std::move(row));
      continue;
    }
    Rng rng = Rng::stream(seed, "bootstrap", r);
    row[plan.section_a] = 1;
    const auto& pat = section_b_patterns()[rng.categorical(pattern_weights)];
    bool any_b = false;
    for (int k = 0; k < 4; ++k) {
      row[plan.section_b[k]] = pat.bits[k];
      any_b = any_b || pat.bits[k];
    }
    for (std::size_t k = 0; k < plan.endorsements.size(); ++k) {
      row[plan.endorsements[k]] = rng.bernoulli(plan.p_endorsement[k]) ? 1 : 0;
    }
    for (const auto& c : plan.couplings) {
      const bool pull = rng.bernoulli(c.strength);
      if (row[c.source] && pull) row[c.target] = 1;
    }
    if (plan.qef43 && !any_b) row[*plan.qef43] = 0;
    bool any_endorsement = false;
    for (auto c : plan.endorsements) any_endorsement = any_endorsement || row[c];
    if (!any_endorsement) row[plan.fallback] = 1;
    out.push_back(std::move(row));
  }
  return ProtectionTable(spec.schema, std::move(out));
}

}  // namespace riscgen
