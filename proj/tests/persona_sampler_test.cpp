#include <map>

#include <gtest/gtest.h>

#include "riscgen/persona.hpp"

using namespace riscgen;

namespace {

const Presets& presets() {
  static const Presets p = load_presets(std::string(RISCGEN_DATA_DIR) + "/presets");
  return p;
}

auto schema() {
  static const auto s = std::make_shared<const ColumnSchema>(ColumnSchema::contract_default());
  return s;
}

ProtectionSet example_set() {
  return ProtectionSet::from_names(schema(), {"SectionA", "SectionB2", "SectionB3", "QEF_3", "QEF_20a", "QEF_27"});
}

const Date kGenerationDate = make_date(2023, 6, 15);

void expect_invariants(const ContractRecord& r, const Date& generation) {
  EXPECT_EQ(r.contract.end_date, add_one_year(r.contract.start_date));
  const long back = days_between(r.contract.start_date, generation);
  EXPECT_GE(back, 0);
  EXPECT_LE(back, 365);
  Cents sum;
  for (const auto& p : r.financials.premiums) sum += p.amount;
  EXPECT_EQ(sum, r.financials.total_premium);
  const auto included = r.protections.included();
  ASSERT_EQ(r.financials.premiums.size(), included.size());
  for (std::size_t i = 0; i < included.size(); ++i) EXPECT_EQ(r.financials.premiums[i].column, included[i]);
  std::size_t b_count = 0;
  for (auto c : included) b_count += r.protections.schema().name(c).starts_with("SectionB");
  EXPECT_EQ(r.financials.deductibles.size(), b_count);
  EXPECT_EQ(r.insured.client_id.size(), 10u);
  EXPECT_TRUE(r.insured.birth_date < r.contract.start_date);
}

}  // namespace

TEST(Calendar, OneYearTermAndLeapDay) {
  EXPECT_EQ(add_one_year(make_date(2023, 6, 1)), make_date(2024, 6, 1));
  EXPECT_EQ(add_one_year(make_date(2024, 2, 29)), make_date(2025, 2, 28));
  EXPECT_EQ(to_iso(parse_iso_date("2023-01-05")), "2023-01-05");
  EXPECT_THROW(parse_iso_date("2023-02-30"), Error);
  EXPECT_THROW(parse_iso_date("June 1"), Error);
}

TEST(Money, FormatAndParse) {
  EXPECT_EQ(format_money(Cents{100'000'000}, Language::En, false), "$1,000,000");
  EXPECT_EQ(format_money(Cents{100'000'000}, Language::Fr, false), "1 000 000 $");
  EXPECT_EQ(format_money(Cents{123'456}, Language::En), "$1,234.56");
  EXPECT_EQ(format_money(Cents{123'456}, Language::Fr), "1 234,56 $");
  EXPECT_EQ(format_money(Cents{5}, Language::En), "$0.05");
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const Cents c{rng.between(0, 5'000'000'000)};
    for (auto lang : {Language::Fr, Language::En}) {
      EXPECT_EQ(parse_money(format_money(c, lang), lang), c);
    }
  }
  EXPECT_THROW(parse_money("1 000", Language::Fr), Error);
}

TEST(Presets, LoadedListsHaveParallelLanguages) {
  const auto& p = presets();
  EXPECT_EQ(p.street_names.fr.size(), p.street_names.en.size());
  EXPECT_EQ(p.street_names.fr[3], "rue Principale");
  EXPECT_EQ(p.street_names.en[3], "Main Street");
  EXPECT_EQ(p.first_names.fr, p.first_names.en);
  EXPECT_THROW(load_presets("/nonexistent/presets"), Error);
}

TEST(Presets, EmptyListRejected) {
  Presets p = presets();
  p.vehicles.fr.clear();
  p.vehicles.en.clear();
  try {
    sample_record(DistributionConfig{}, p, example_set(), kGenerationDate, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyPresets);
  }
}

TEST(DistributionConfig, ValidationAndJson) {
  DistributionConfig c;
  EXPECT_NO_THROW(c.validate());
  auto back = distribution_from_json(to_json(c));
  EXPECT_EQ(back.claims, c.claims);
  EXPECT_EQ(back.premium_range("SectionA").max, c.premium_range("SectionA").max);
  c.claims = {0.5, 0.5, 0.5, 0.0};
  EXPECT_THROW(c.validate(), Error);
  DistributionConfig empty_menu;
  empty_menu.liability_limits.clear();
  EXPECT_THROW(empty_menu.validate(), Error);
}

TEST(SampleRecord, Deterministic) {
  auto a = sample_record(DistributionConfig{}, presets(), example_set(), kGenerationDate, 77);
  auto b = sample_record(DistributionConfig{}, presets(), example_set(), kGenerationDate, 77);
  EXPECT_EQ(a, b);
  auto c = sample_record(DistributionConfig{}, presets(), example_set(), kGenerationDate, 78);
  EXPECT_NE(a.insured.client_id, c.insured.client_id);
}

TEST(SampleRecord, SectionAOnly) {
  auto only_a = ProtectionSet::from_names(schema(), {"SectionA"});
  auto r = sample_record(DistributionConfig{}, presets(), only_a, kGenerationDate, 5);
  EXPECT_TRUE(r.financials.deductibles.empty());
  ASSERT_EQ(r.financials.premiums.size(), 1u);
  EXPECT_EQ(r.financials.premiums[0].column, 0u);
  EXPECT_EQ(r.financials.total_premium, r.financials.premiums[0].amount);
}

TEST(SampleRecord, InvariantsHoldOnTenThousandRecords) {
  const DistributionConfig config;
  for (std::uint64_t seed = 0; seed < 10'000; ++seed) {
    auto r = sample_record(config, presets(), example_set(), kGenerationDate, seed);
    expect_invariants(r, kGenerationDate);
    if (HasFailure()) break;
  }
  // Leap-day generation date
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    expect_invariants(sample_record(config, presets(), example_set(), make_date(2024, 2, 29), seed),
                      make_date(2024, 2, 29));
  }
}

TEST(SampleRecord, StartDatesUniformOverMonths) {
  // Window [2022-12-31, 2023-12-31]: 366 days; the single December 2022 day
  // shares the December bin, giving exactly 12 monthly bins.
  const Date gen = make_date(2023, 12, 31);
  const int n = 10'000;
  std::array<int, 12> observed{};
  std::array<double, 12> days{};
  for (long d = 0; d <= 365; ++d) days[static_cast<unsigned>(add_days(gen, -d).month()) - 1] += 1;
  for (std::uint64_t seed = 0; seed < static_cast<std::uint64_t>(n); ++seed) {
    auto r = sample_record(DistributionConfig{}, presets(), example_set(), gen, seed);
    ++observed[static_cast<unsigned>(r.contract.start_date.month()) - 1];
  }
  double chi2 = 0.0;
  for (int m = 0; m < 12; ++m) {
    const double expected = n * days[m] / 366.0;
    chi2 += (observed[m] - expected) * (observed[m] - expected) / expected;
  }
  // chi-square critical value, 11 degrees of freedom, alpha = 0.01
  EXPECT_LT(chi2, 24.725);
}

TEST(SampleRecord, FieldStreamsAreIndependent) {
  Presets extended = presets();
  extended.street_names.fr.push_back("rue Nouvelle");
  extended.street_names.en.push_back("New Street");
  int street_changes = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto a = sample_record(DistributionConfig{}, presets(), example_set(), kGenerationDate, seed);
    auto b = sample_record(DistributionConfig{}, extended, example_set(), kGenerationDate, seed);
    street_changes += !(a.insured.street == b.insured.street);
    b.insured.street = a.insured.street;
    EXPECT_EQ(a, b) << "seed " << seed;
  }
  EXPECT_GT(street_changes, 0);
}

TEST(DrivingRecord, PointMass) {
  DistributionConfig c;
  c.claims = {1.0, 0.0, 0.0, 0.0};
  for (std::uint64_t seed = 0; seed < 1000; ++seed) EXPECT_EQ(sample_driving_record(c, seed).claims, 0);
}

TEST(DrivingRecord, FrequenciesMatchConfig) {
  DistributionConfig c;
  c.claims = {0.7, 0.2, 0.08, 0.02};
  std::array<int, 4> counts{};
  const int n = 100'000;
  for (std::uint64_t seed = 0; seed < static_cast<std::uint64_t>(n); ++seed) ++counts[sample_driving_record(c, seed).claims];
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(counts[k] / double(n), c.claims[k], 0.01) << "claims=" << k;
}

TEST(SampleFinancials, SingletonLiabilityMenu) {
  DistributionConfig c;
  c.liability_limits = {{Cents{100'000'000}, 1.0}};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EXPECT_EQ(sample_financials(c, example_set(), seed).liability_limit, Cents{100'000'000});
  }
}

TEST(SampleFinancials, Cardinalities) {
  auto set = ProtectionSet::from_names(schema(), {"SectionA", "SectionB2", "SectionB3"});
  auto f = sample_financials(DistributionConfig{}, set, 1);
  EXPECT_EQ(f.deductibles.size(), 2u);
  EXPECT_EQ(f.premiums.size(), 3u);
}

TEST(SampleFinancials, IntervalBoundsOnTotal) {
  DistributionConfig c;
  c.premiums.clear();
  c.default_premium = {Cents{10'000}, Cents{20'000}};
  auto set = ProtectionSet::from_names(
      schema(), {"SectionA", "SectionB1", "QEF_2", "QEF_3", "QEF_20a", "QEF_27", "QEF_43"});
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    auto f = sample_financials(c, set, seed);
    ASSERT_EQ(f.premiums.size(), 7u);
    EXPECT_GE(f.total_premium, Cents{70'000});
    EXPECT_LE(f.total_premium, Cents{140'000});
  }
}
