#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "riscgen/error.hpp"
#include "riscgen/protection_table.hpp"

namespace riscgen {

/// Two-sample Kolmogorov-Smirnov statistic: supremum distance between the
/// empirical CDFs of a and b.
inline double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyTable, "KS statistic of an empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

namespace detail {
inline void require_same_schema(const ProtectionTable& a, const ProtectionTable& b) {
  if (!(a.schema() == b.schema())) throw Error(ErrorCode::SchemaMismatch, "tables have different schemas");
}
}  // namespace detail

/// Per-column KS statistics; for binary columns this is |p_a - p_b|.
inline std::vector<double> column_ks(const ProtectionTable& real, const ProtectionTable& synthetic) {
  detail::require_same_schema(real, synthetic);
  if (real.empty() || synthetic.empty()) throw Error(ErrorCode::EmptyTable, "KS over an empty table");
  std::vector<double> out(real.column_count());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = std::abs(real.marginal(c) - synthetic.marginal(c));
  return out;
}

/// 1 - KS statistic per column; the per-column score vector fed to z_test.
inline std::vector<double> column_scores(const ProtectionTable& real, const ProtectionTable& synthetic) {
  auto ks = column_ks(real, synthetic);
  for (auto& v : ks) v = 1.0 - v;
  return ks;
}

inline double inverted_ks(const ProtectionTable& real, const ProtectionTable& synthetic) {
  const auto ks = column_ks(real, synthetic);
  double sum = 0.0;
  for (double v : ks) sum += v;
  return 1.0 - sum / static_cast<double>(ks.size());
}

struct UcStats {
  std::size_t unique_count = 0;
  // Percentages of total rows.
  double mean_freq_pct = 0.0;
  double median_freq_pct = 0.0;
  double q75_freq_pct = 0.0;
  double max_freq_pct = 0.0;
  /// Sum of all unique-row frequencies; 100 up to rounding.
  double total_freq_pct = 0.0;
};

namespace detail {
/// Linear-interpolation quantile over sorted values (position q * (n - 1)).
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}
}  // namespace detail

inline std::map<Row, std::size_t> unique_rows(const ProtectionTable& table) {
  std::map<Row, std::size_t> counts;
  for (const auto& r : table.rows()) ++counts[r];
  return counts;
}

inline UcStats uc_stats(const ProtectionTable& table) {
  if (table.empty()) throw Error(ErrorCode::EmptyTable, "unique-combination stats of an empty table");
  const auto counts = unique_rows(table);
  const double total = static_cast<double>(table.row_count());
  std::vector<double> freq;
  freq.reserve(counts.size());
  for (const auto& [row, count] : counts) freq.push_back(100.0 * static_cast<double>(count) / total);
  std::sort(freq.begin(), freq.end());
  UcStats s;
  s.unique_count = counts.size();
  for (double f : freq) s.total_freq_pct += f;
  s.mean_freq_pct = s.total_freq_pct / static_cast<double>(freq.size());
  s.median_freq_pct = detail::quantile_sorted(freq, 0.5);
  s.q75_freq_pct = detail::quantile_sorted(freq, 0.75);
  s.max_freq_pct = freq.back();
  return s;
}

/// Distinct synthetic rows never seen in training.
inline std::size_t new_uc_count(const ProtectionTable& training, const ProtectionTable& synthetic) {
  detail::require_same_schema(training, synthetic);
  const std::set<Row> seen(training.rows().begin(), training.rows().end());
  std::set<Row> novel;
  for (const auto& r : synthetic.rows()) {
    if (!seen.contains(r)) novel.insert(r);
  }
  return novel.size();
}

/// Two-sided critical value at alpha = 0.001.
inline constexpr double kZCritical = 3.290527;

struct ZTestResult {
  double z = 0.0;
  bool reject = false;
  /// Both samples have zero variance (z is 0 or +-inf).
  bool degenerate = false;
  double threshold = kZCritical;
};

/// Unpaired two-sample z-test on score vectors. Positive z means `a` scores higher.
inline ZTestResult z_test(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyScores, "z-test needs two non-empty score lists");
  auto moments = [](std::span<const double> v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double var = v.size() > 1 ? ss / static_cast<double>(v.size() - 1) : 0.0;
    return std::pair{mean, var};
  };
  const auto [mean_a, var_a] = moments(a);
  const auto [mean_b, var_b] = moments(b);
  const double se2 = var_a / static_cast<double>(a.size()) + var_b / static_cast<double>(b.size());
  ZTestResult r;
  const double diff = mean_a - mean_b;
  if (se2 == 0.0) {
    r.degenerate = true;
    if (diff == 0.0) {
      r.z = 0.0;
    } else {
      r.z = diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
  } else {
    r.z = diff / std::sqrt(se2);
  }
  r.reject = std::abs(r.z) > kZCritical;
  return r;
}

}  // namespace riscgen
