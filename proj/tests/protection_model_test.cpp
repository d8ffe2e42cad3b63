#include <cmath>
#include <sstream>
#include <unordered_map>

#include <gtest/gtest.h>

#include "riscgen/dependency_model.hpp"
#include "riscgen/metrics.hpp"
#include "riscgen/protection_table.hpp"

using namespace riscgen;

namespace {

ProtectionTable make_table(std::vector<std::string> names, std::vector<Row> rows) {
  return ProtectionTable(ColumnSchema(std::move(names)), std::move(rows));
}

// Exact joint distribution of a tree model by enumeration over all rows.
std::map<Row, double> joint_distribution(const DependencyModel& m) {
  const std::size_t k = m.schema().size();
  std::map<Row, double> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Row row(k);
    for (std::size_t c = 0; c < k; ++c) row[c] = (mask >> c) & 1;
    double p = 1.0;
    for (std::size_t c = 0; c < k; ++c) {
      const auto& n = m.nodes()[c];
      const double p1 = n.parent ? n.p_one[row[*n.parent]] : n.p_one[0];
      p *= row[c] ? p1 : 1.0 - p1;
    }
    out[row] = p;
  }
  return out;
}

ProtectionTable random_table(std::size_t rows, std::size_t cols, std::uint64_t seed, double density = 0.4) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < cols; ++c) names.push_back("C" + std::to_string(c));
  ProtectionTable t{ColumnSchema(names)};
  Rng rng(seed);
  for (std::size_t r = 0; r < rows; ++r) {
    Row row(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      // chain-correlated columns
      row[c] = (c > 0 && rng.bernoulli(0.5)) ? row[c - 1] : (rng.bernoulli(density) ? 1 : 0);
    }
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace

TEST(Fit, PerfectDependenceIsCapturedExactly) {
  auto t = make_table({"X", "Y"}, {{1, 1}, {1, 1}, {0, 0}, {0, 0}});
  auto m = fit(t, 42);
  auto joint = joint_distribution(m);
  const double equal_pairs = joint[Row{1, 1}] + joint[Row{0, 0}];
  EXPECT_DOUBLE_EQ(equal_pairs, 1.0);
  EXPECT_DOUBLE_EQ(joint[(Row{1, 1})], 0.5);

  auto s = sample(m, 1000, 7);
  for (const auto& r : s.rows()) EXPECT_EQ(r[0], r[1]);
}

TEST(Fit, DegenerateAllOnesColumn) {
  auto t = make_table({"A"}, {{1}, {1}, {1}});
  auto m = fit(t, 1);
  EXPECT_DOUBLE_EQ(m.marginals()[0], 1.0);
  const auto s = sample(m, 500, 3);
  for (const auto& r : s.rows()) EXPECT_EQ(r[0], 1);
}

TEST(Fit, Errors) {
  EXPECT_THROW(
      {
        try {
          fit(ProtectionTable(ColumnSchema({"A"})), 0);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::EmptyTable);
          throw;
        }
      },
      Error);
  try {
    make_table({"A", "B"}, {{1, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonBinaryCell);
  }
  EXPECT_THROW(ColumnSchema({"A", "A"}), Error);
}

TEST(Fit, StructureSpansAllColumnsAndIsDeterministic) {
  auto t = random_table(300, 9, 11);
  auto m1 = fit(t, 5);
  auto m2 = fit(t, 5);
  EXPECT_EQ(m1, m2);
  EXPECT_EQ(m1.edges().size(), 8u);
  EXPECT_EQ(m1.order().size(), 9u);
  EXPECT_EQ(m1.root(), 0u);
  double total = 0.0;
  for (auto& [row, p] : joint_distribution(m1)) {
    EXPECT_GE(p, 0.0);
    total += p;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Fit, ChainDataRecoversChainEdges) {
  // C_k copies C_{k-1} half the time, so adjacent columns carry the most information.
  auto t = random_table(5000, 5, 99, 0.3);
  auto m = fit(t, 0);
  for (auto [parent, child] : m.edges()) {
    EXPECT_EQ(std::max(parent, child) - std::min(parent, child), 1u);
  }
}

TEST(Fit, MarginalFidelityProperty) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto t = random_table(50 + seed * 13, 6, seed);
    auto m = fit(t, seed);
    auto marg = m.marginals();
    for (std::size_t c = 0; c < t.column_count(); ++c) {
      EXPECT_LE(std::abs(marg[c] - t.marginal(c)), m.metadata().pseudo_count) << "column " << c;
      EXPECT_NEAR(marg[c], t.marginal(c), 1e-12);
    }
  }
}

TEST(Fit, UnsupportedParentStateGetsPseudoCounts) {
  // X is always 1 so P(Y | X = 0) has no support.
  auto t = make_table({"X", "Y"}, {{1, 1}, {1, 0}, {1, 1}, {1, 1}});
  auto m = fit(t, 0);
  const auto& y = m.nodes()[1];
  ASSERT_TRUE(y.parent.has_value());
  EXPECT_DOUBLE_EQ(y.p_one[0], 0.5);
  EXPECT_DOUBLE_EQ(y.p_one[1], 0.75);
}

TEST(Sample, AllOnesModel) {
  auto schema = ColumnSchema({"A", "B", "C"});
  DependencyModel m(schema, {TreeNode{std::nullopt, {1.0, 1.0}}, TreeNode{0, {1.0, 1.0}}, TreeNode{1, {1.0, 1.0}}});
  auto s = sample(m, 3, 0);
  ASSERT_EQ(s.row_count(), 3u);
  for (const auto& r : s.rows()) EXPECT_EQ(r, (Row{1, 1, 1}));
  EXPECT_EQ(s.schema(), schema);
}

TEST(Sample, DeterministicAndWorkerIndependent) {
  auto m = fit(random_table(400, 7, 3), 3);
  auto a = sample(m, 2000, 17);
  auto b = sample(m, 2000, 17);
  auto c = sample(m, 2000, 17, 4);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_NE(a, sample(m, 2000, 18));
  EXPECT_THROW(sample(m, 0, 1), Error);
}

TEST(Sample, NoveltyBeyondTrainingSupport) {
  // Even-parity rows: pairwise independent columns, so the tree reaches all 8 rows.
  auto t = make_table({"A", "B", "C"}, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  auto m = fit(t, 0);
  auto s = sample(m, 5000, 1);
  EXPECT_GT(new_uc_count(t, s), 0u);
}

TEST(ModelJson, RoundTrip) {
  auto m = fit(random_table(200, 6, 8), 8);
  auto back = model_from_json(nlohmann::json::parse(to_json(m).dump()));
  EXPECT_EQ(m, back);
  EXPECT_EQ(sample(m, 100, 2), sample(back, 100, 2));
}

TEST(TableCsv, RoundTripAndErrors) {
  auto t = random_table(30, 4, 1);
  std::stringstream ss;
  write_table_csv(t, ss);
  EXPECT_EQ(read_table_csv(ss), t);

  std::stringstream bad("A,B\n0,1\n1,2\n");
  try {
    read_table_csv(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonBinaryCell);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("'B'"), std::string::npos);
  }
}

TEST(InvertedKs, SelfComparisonIsOne) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto t = random_table(37, 5, seed);
    EXPECT_EQ(inverted_ks(t, t), 1.0);
  }
}

TEST(InvertedKs, ClosedFormExamples) {
  // p = 0.5 vs p = 0.4
  auto real = make_table({"X"}, {{1}, {1}, {1}, {1}, {1}, {0}, {0}, {0}, {0}, {0}});
  auto syn = make_table({"X"}, {{1}, {1}, {1}, {1}, {0}, {0}, {0}, {0}, {0}, {0}});
  EXPECT_NEAR(inverted_ks(real, syn), 0.9, 1e-12);

  // Gaps 0.1 and 0.3 -> 1 - 0.2
  std::vector<Row> r, s;
  for (int i = 0; i < 10; ++i) {
    r.push_back({static_cast<std::uint8_t>(i < 5), static_cast<std::uint8_t>(i < 5)});
    s.push_back({static_cast<std::uint8_t>(i < 4), static_cast<std::uint8_t>(i < 8)});
  }
  EXPECT_NEAR(inverted_ks(make_table({"X", "Y"}, r), make_table({"X", "Y"}, s)), 0.8, 1e-12);
}

TEST(InvertedKs, SymmetricAndSchemaChecked) {
  auto a = random_table(50, 5, 1);
  auto b = random_table(80, 5, 2);
  EXPECT_DOUBLE_EQ(inverted_ks(a, b), inverted_ks(b, a));
  auto other = make_table({"Q"}, {{1}});
  EXPECT_THROW(inverted_ks(a, other), Error);
  EXPECT_THROW(inverted_ks(a, ProtectionTable(a.schema())), Error);
}

TEST(KsStatistic, GeneralRouteMatchesBinaryClosedForm) {
  Rng rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(1 + rng.below(60)), y(1 + rng.below(60));
    const double px = rng.uniform(), py = rng.uniform();
    std::size_t ones_x = 0, ones_y = 0;
    for (auto& v : x) ones_x += (v = rng.bernoulli(px));
    for (auto& v : y) ones_y += (v = rng.bernoulli(py));
    const double closed = std::abs(double(ones_x) / x.size() - double(ones_y) / y.size());
    EXPECT_NEAR(ks_statistic(x, y), closed, 1e-12);
  }
  std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  EXPECT_DOUBLE_EQ(ks_statistic(a, b), 1.0);
}

TEST(UcStats, HandEnumeratedExample) {
  auto s = uc_stats(make_table({"X", "Y"}, {{1, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(s.unique_count, 2u);
  EXPECT_NEAR(s.max_freq_pct, 200.0 / 3.0, 1e-9);
  EXPECT_NEAR(s.median_freq_pct, 50.0, 1e-9);
  EXPECT_NEAR(s.mean_freq_pct, 50.0, 1e-9);
}

TEST(UcStats, SingleCombination) {
  auto s = uc_stats(make_table({"X", "Y"}, {{1, 1}, {1, 1}, {1, 1}}));
  EXPECT_EQ(s.unique_count, 1u);
  EXPECT_DOUBLE_EQ(s.mean_freq_pct, 100.0);
  EXPECT_DOUBLE_EQ(s.median_freq_pct, 100.0);
  EXPECT_DOUBLE_EQ(s.q75_freq_pct, 100.0);
  EXPECT_DOUBLE_EQ(s.max_freq_pct, 100.0);
  EXPECT_THROW(uc_stats(ProtectionTable(ColumnSchema({"X"}))), Error);
}

TEST(UcStats, AgreesWithHashMapCounting) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto t = random_table(200, 8, seed * 7 + 1);
    std::unordered_map<std::string, int> counts;
    for (const auto& r : t.rows()) ++counts[std::string(r.begin(), r.end())];
    std::vector<double> freq;
    for (auto& [k, v] : counts) freq.push_back(100.0 * v / 200.0);
    std::sort(freq.begin(), freq.end());

    auto s = uc_stats(t);
    EXPECT_EQ(s.unique_count, counts.size());
    EXPECT_DOUBLE_EQ(s.max_freq_pct, freq.back());
    EXPECT_NEAR(s.total_freq_pct, 100.0, 1e-9);
    EXPECT_NEAR(s.mean_freq_pct * s.unique_count, 100.0, 1e-9);
    EXPECT_LE(s.median_freq_pct, s.q75_freq_pct);
    EXPECT_LE(s.q75_freq_pct, s.max_freq_pct);
    EXPECT_GT(s.median_freq_pct, 0.0);
  }
}

TEST(NewUc, Examples) {
  auto training = make_table({"X", "Y"}, {{1, 0}});
  auto synthetic = make_table({"X", "Y"}, {{1, 0}, {0, 1}, {1, 1}, {0, 1}});
  EXPECT_EQ(new_uc_count(training, synthetic), 2u);
  EXPECT_EQ(new_uc_count(synthetic, training), 0u);
  EXPECT_THROW(new_uc_count(training, make_table({"Z"}, {{1}})), Error);
}

TEST(ZTest, EqualInputs) {
  std::vector<double> a{0.9, 0.95, 0.97, 0.99};
  auto r = z_test(a, a);
  EXPECT_EQ(r.z, 0.0);
  EXPECT_FALSE(r.reject);
  EXPECT_DOUBLE_EQ(r.threshold, 3.290527);
}

TEST(ZTest, HandComputedFormula) {
  // 100 values with mean 0.9 and sample variance exactly 1e-4, same for 0.8.
  const double d = std::sqrt(1e-4 * 99.0 / 100.0);
  std::vector<double> a, b;
  for (int i = 0; i < 100; ++i) {
    a.push_back(0.9 + (i % 2 ? d : -d));
    b.push_back(0.8 + (i % 2 ? d : -d));
  }
  auto r = z_test(a, b);
  EXPECT_NEAR(r.z, 0.1 / std::sqrt(2 * 0.0001 / 100), 1e-6);
  EXPECT_NEAR(r.z, 70.7107, 1e-4);
  EXPECT_TRUE(r.reject);
}

TEST(ZTest, AntisymmetryAndDegenerateCases) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(2 + rng.below(20)), b(2 + rng.below(20));
    for (auto& v : a) v = rng.uniform();
    for (auto& v : b) v = rng.uniform();
    EXPECT_DOUBLE_EQ(z_test(a, b).z, -z_test(b, a).z);
  }
  std::vector<double> same{0.5, 0.5}, higher{0.7, 0.7};
  auto zero = z_test(same, same);
  EXPECT_TRUE(zero.degenerate);
  EXPECT_EQ(zero.z, 0.0);
  auto inf = z_test(higher, same);
  EXPECT_TRUE(std::isinf(inf.z));
  EXPECT_GT(inf.z, 0.0);
  EXPECT_TRUE(inf.reject);
  EXPECT_THROW(z_test(std::vector<double>{}, same), Error);
}
