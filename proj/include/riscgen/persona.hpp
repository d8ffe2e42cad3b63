#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "riscgen/calendar.hpp"
#include "riscgen/error.hpp"
#include "riscgen/language.hpp"
#include "riscgen/money.hpp"
#include "riscgen/random.hpp"
#include "riscgen/rules.hpp"

namespace riscgen {

enum class Sex { Male, Female };
enum class MotorType { Gasoline, Diesel, Electric, Hybrid };
enum class PurchaseCondition { New, Used };

inline MotorType parse_motor_type(std::string_view s) {
  if (s == "gasoline") return MotorType::Gasoline;
  if (s == "diesel") return MotorType::Diesel;
  if (s == "electric") return MotorType::Electric;
  if (s == "hybrid") return MotorType::Hybrid;
  throw Error(ErrorCode::InvalidConfig, "unknown motor type '" + std::string(s) + "'");
}

template <typename T>
struct Weighted {
  T value;
  double probability;
};

struct MoneyRange {
  Cents min;
  Cents max;
};

/// Sampling parameters. The defaults are placeholders chosen to look
/// plausible, not measured from any real portfolio.
struct DistributionConfig {
  std::array<double, 2> sex{0.5, 0.5};  // male, female
  std::array<double, 4> claims{0.70, 0.20, 0.08, 0.02};
  std::array<double, 4> suspensions{0.95, 0.04, 0.008, 0.002};
  std::array<double, 2> purchase_condition{0.35, 0.65};  // new, used
  double financed_probability = 0.55;
  double association_rebate_probability = 0.25;
  std::vector<Weighted<int>> rebate_percent{{5, 0.5}, {10, 0.35}, {15, 0.15}};
  int min_age = 18;
  int max_age = 85;
  std::vector<Weighted<Cents>> liability_limits{{Cents{100'000'000}, 0.35}, {Cents{200'000'000}, 0.65}};
  std::vector<Weighted<Cents>> deductibles{{Cents{25'000}, 0.2}, {Cents{50'000}, 0.6}, {Cents{100'000}, 0.2}};
  MoneyRange default_premium{Cents{2'500}, Cents{15'000}};
  std::map<std::string, MoneyRange> premiums{
      {"SectionA", {Cents{35'000}, Cents{95'000}}},  {"SectionB1", {Cents{40'000}, Cents{120'000}}},
      {"SectionB2", {Cents{25'000}, Cents{80'000}}}, {"SectionB3", {Cents{10'000}, Cents{40'000}}},
      {"SectionB4", {Cents{5'000}, Cents{25'000}}},
  };

  const MoneyRange& premium_range(const std::string& column) const {
    auto it = premiums.find(column);
    return it == premiums.end() ? default_premium : it->second;
  }

  void validate() const {
    auto check_sum = [](const auto& probs, const char* what) {
      double s = 0.0;
      for (double p : probs) {
        if (!(p >= 0.0)) throw Error(ErrorCode::InvalidConfig, std::string(what) + ": negative probability");
        s += p;
      }
      if (std::abs(s - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidConfig, std::string(what) + ": probabilities sum to " + std::to_string(s));
      }
    };
    auto menu_probs = [](const auto& menu) {
      std::vector<double> p;
      for (const auto& m : menu) p.push_back(m.probability);
      return p;
    };
    check_sum(sex, "sex");
    check_sum(claims, "claims");
    check_sum(suspensions, "suspensions");
    check_sum(purchase_condition, "purchase_condition");
    auto check_menu = [&](const auto& menu, const char* what) {
      if (menu.empty()) throw Error(ErrorCode::InvalidConfig, std::string(what) + ": menu is empty");
      check_sum(menu_probs(menu), what);
    };
    check_menu(liability_limits, "liability_limits");
    check_menu(deductibles, "deductibles");
    check_menu(rebate_percent, "rebate_percent");
    for (double p : {financed_probability, association_rebate_probability}) {
      if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidConfig, "probability outside [0,1]");
    }
    if (min_age < 0 || max_age < min_age) throw Error(ErrorCode::InvalidConfig, "invalid age range");
    auto check_range = [](const MoneyRange& r) {
      if (r.min.value < 0 || r.max < r.min) throw Error(ErrorCode::InvalidConfig, "invalid premium range");
    };
    check_range(default_premium);
    for (const auto& [k, r] : premiums) check_range(r);
  }
};

// JSON form: probabilities as arrays/objects, amounts in dollars.

inline DistributionConfig distribution_from_json(const nlohmann::json& j) {
  DistributionConfig c;
  try {
    auto arr = [&](const char* key, auto& target) {
      if (!j.contains(key)) return;
      const auto v = j.at(key).get<std::vector<double>>();
      if (v.size() != target.size()) {
        throw Error(ErrorCode::InvalidConfig, std::string(key) + ": expected " + std::to_string(target.size()) + " entries");
      }
      std::copy(v.begin(), v.end(), target.begin());
    };
    auto money_menu = [&](const char* key, std::vector<Weighted<Cents>>& target) {
      if (!j.contains(key)) return;
      target.clear();
      for (const auto& e : j.at(key)) target.push_back({Cents::from_dollars(e.at("amount").get<double>()), e.at("p").get<double>()});
    };
    auto range = [](const nlohmann::json& e) {
      return MoneyRange{Cents::from_dollars(e.at("min").get<double>()), Cents::from_dollars(e.at("max").get<double>())};
    };
    arr("sex", c.sex);
    arr("claims", c.claims);
    arr("suspensions", c.suspensions);
    arr("purchase_condition", c.purchase_condition);
    c.financed_probability = j.value("financed_probability", c.financed_probability);
    c.association_rebate_probability = j.value("association_rebate_probability", c.association_rebate_probability);
    if (j.contains("rebate_percent")) {
      c.rebate_percent.clear();
      for (const auto& e : j.at("rebate_percent")) c.rebate_percent.push_back({e.at("percent").get<int>(), e.at("p").get<double>()});
    }
    c.min_age = j.value("min_age", c.min_age);
    c.max_age = j.value("max_age", c.max_age);
    money_menu("liability_limits", c.liability_limits);
    money_menu("deductibles", c.deductibles);
    if (j.contains("default_premium")) c.default_premium = range(j.at("default_premium"));
    if (j.contains("premiums")) {
      c.premiums.clear();
      for (const auto& [k, v] : j.at("premiums").items()) c.premiums[k] = range(v);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("distribution config: ") + e.what());
  }
  c.validate();
  return c;
}

inline nlohmann::json to_json(const DistributionConfig& c) {
  auto money_menu = [](const std::vector<Weighted<Cents>>& m) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : m) out.push_back({{"amount", e.value.dollars()}, {"p", e.probability}});
    return out;
  };
  auto range = [](const MoneyRange& r) { return nlohmann::json{{"min", r.min.dollars()}, {"max", r.max.dollars()}}; };
  nlohmann::json rebates = nlohmann::json::array();
  for (const auto& e : c.rebate_percent) rebates.push_back({{"percent", e.value}, {"p", e.probability}});
  nlohmann::json premiums = nlohmann::json::object();
  for (const auto& [k, r] : c.premiums) premiums[k] = range(r);
  return {{"sex", c.sex},
          {"claims", c.claims},
          {"suspensions", c.suspensions},
          {"purchase_condition", c.purchase_condition},
          {"financed_probability", c.financed_probability},
          {"association_rebate_probability", c.association_rebate_probability},
          {"rebate_percent", rebates},
          {"min_age", c.min_age},
          {"max_age", c.max_age},
          {"liability_limits", money_menu(c.liability_limits)},
          {"deductibles", money_menu(c.deductibles)},
          {"default_premium", range(c.default_premium)},
          {"premiums", premiums}};
}

/// One preset entry in both languages. `index` is the shared position in the
/// fr and en lists, which is what keeps the two renderings in step.
struct LocalizedText {
  std::size_t index = 0;
  std::string fr;
  std::string en;

  const std::string& in(Language lang) const { return lang == Language::Fr ? fr : en; }
  friend bool operator==(const LocalizedText&, const LocalizedText&) = default;
};

struct PresetList {
  std::vector<std::string> fr;
  std::vector<std::string> en;

  std::size_t size() const { return fr.size(); }
  LocalizedText at(std::size_t i) const { return {i, fr.at(i), en.at(i)}; }
  const std::vector<std::string>& in(Language lang) const { return lang == Language::Fr ? fr : en; }
};

/// Preset lists; lines of `municipalities` are "name|FSA" and lines of
/// `vehicles` are "year|maker|model|motor type".
struct Presets {
  PresetList first_names;
  PresetList last_names;
  PresetList street_names;
  PresetList municipalities;
  PresetList vehicles;
  PresetList financing_institutions;

  static constexpr std::array<const char*, 6> kListNames = {
      "first_names", "last_names", "street_names", "municipalities", "vehicles", "financing_institutions"};

  PresetList& list(std::string_view name) {
    if (name == "first_names") return first_names;
    if (name == "last_names") return last_names;
    if (name == "street_names") return street_names;
    if (name == "municipalities") return municipalities;
    if (name == "vehicles") return vehicles;
    return financing_institutions;
  }
  const PresetList& list(std::string_view name) const { return const_cast<Presets*>(this)->list(name); }

  void validate() const {
    for (const char* name : kListNames) {
      const auto& l = list(name);
      if (l.fr.empty() || l.en.empty()) throw Error(ErrorCode::EmptyPresets, std::string("preset list '") + name + "' is empty");
      if (l.fr.size() != l.en.size()) {
        throw Error(ErrorCode::InvalidConfig, std::string("preset list '") + name + "' has different fr/en lengths");
      }
    }
  }
};

namespace detail {

inline std::vector<std::string> split_fields(std::string_view line, char sep = '|') {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string> read_preset_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

}  // namespace detail

/// Reads `<dir>/{fr,en}/<list>.txt`; a list present in only one language is
/// shared by both.
inline Presets load_presets(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  Presets p;
  for (const char* name : Presets::kListNames) {
    const auto fr_path = dir / "fr" / (std::string(name) + ".txt");
    const auto en_path = dir / "en" / (std::string(name) + ".txt");
    const bool has_fr = fs::exists(fr_path), has_en = fs::exists(en_path);
    if (!has_fr && !has_en) throw Error(ErrorCode::EmptyPresets, std::string("missing preset list '") + name + "' in " + dir.string());
    auto& l = p.list(name);
    l.fr = detail::read_preset_file(has_fr ? fr_path : en_path);
    l.en = detail::read_preset_file(has_en ? en_path : fr_path);
  }
  p.validate();
  for (std::size_t i = 0; i < p.municipalities.size(); ++i) {
    for (auto lang : {Language::Fr, Language::En}) {
      if (detail::split_fields(p.municipalities.in(lang)[i]).size() != 2) {
        throw Error(ErrorCode::InvalidConfig, "municipality preset must be 'name|FSA': " + p.municipalities.in(lang)[i]);
      }
    }
  }
  for (std::size_t i = 0; i < p.vehicles.size(); ++i) {
    for (auto lang : {Language::Fr, Language::En}) {
      const auto f = detail::split_fields(p.vehicles.in(lang)[i]);
      if (f.size() != 4) throw Error(ErrorCode::InvalidConfig, "vehicle preset must be 'year|maker|model|motor': " + p.vehicles.in(lang)[i]);
      parse_motor_type(f[3]);
    }
  }
  return p;
}

struct Insured {
  LocalizedText first_name;
  LocalizedText last_name;
  int civic_number = 0;
  LocalizedText street;
  LocalizedText municipality;  // name only
  std::string postal_code;
  Date birth_date;
  Sex sex = Sex::Male;
  std::string client_id;  // 10 digits
  bool association_rebate = false;
  int rebate_percent = 0;  // 0 without rebate

  std::string full_name(Language lang) const { return first_name.in(lang) + " " + last_name.in(lang); }
  friend bool operator==(const Insured&, const Insured&) = default;
};

struct Vehicle {
  std::size_t preset_index = 0;
  int year = 0;
  LocalizedText maker;
  LocalizedText model;
  MotorType motor = MotorType::Gasoline;
  PurchaseCondition condition = PurchaseCondition::Used;
  std::optional<LocalizedText> financing_institution;
  friend bool operator==(const Vehicle&, const Vehicle&) = default;
};

/// Amount attached to one protection column.
struct ColumnAmount {
  std::size_t column = 0;
  Cents amount;
  friend bool operator==(const ColumnAmount&, const ColumnAmount&) = default;
};

struct Financials {
  Cents liability_limit;
  std::vector<ColumnAmount> deductibles;  // one per included Section B, schema order
  std::vector<ColumnAmount> premiums;     // one per included protection, schema order
  Cents total_premium;
  friend bool operator==(const Financials&, const Financials&) = default;
};

struct ContractTerms {
  std::string contract_number;
  Date start_date;
  Date end_date;
  friend bool operator==(const ContractTerms&, const ContractTerms&) = default;
};

/// Language-neutral data of one contract.
struct ContractRecord {
  Insured insured;
  DrivingRecord driving;
  Vehicle vehicle;
  Financials financials;
  ContractTerms contract;
  ProtectionSet protections;

  friend bool operator==(const ContractRecord&, const ContractRecord&) = default;
};

inline DrivingRecord sample_driving_record(const DistributionConfig& config, std::uint64_t seed) {
  config.validate();
  auto claims = Rng::stream(seed, "driving.claims");
  auto suspensions = Rng::stream(seed, "driving.suspensions");
  return DrivingRecord{static_cast<int>(claims.categorical(config.claims)),
                       static_cast<int>(suspensions.categorical(config.suspensions))};
}

namespace detail {
template <typename T>
const T& draw(const std::vector<Weighted<T>>& menu, Rng& rng) {
  std::vector<double> w;
  w.reserve(menu.size());
  for (const auto& m : menu) w.push_back(m.probability);
  return menu[rng.categorical(w)].value;
}
}  // namespace detail

inline Financials sample_financials(const DistributionConfig& config, const ProtectionSet& protections,
                                    std::uint64_t seed) {
  config.validate();
  const auto& schema = protections.schema();
  Financials f;
  auto liability = Rng::stream(seed, "coverage.liability");
  f.liability_limit = detail::draw(config.liability_limits, liability);
  for (auto c : protections.included()) {
    const auto& name = schema.name(c);
    if (name.starts_with("SectionB")) {
      auto rng = Rng::stream(seed, "coverage.deductible", c);
      f.deductibles.push_back({c, detail::draw(config.deductibles, rng)});
    }
    const auto& range = config.premium_range(name);
    auto rng = Rng::stream(seed, "premium", c);
    const Cents premium{rng.between(range.min.value, range.max.value)};
    f.premiums.push_back({c, premium});
    f.total_premium += premium;
  }
  return f;
}

inline ContractRecord sample_record(const DistributionConfig& config, const Presets& presets,
                                    const ProtectionSet& protections, const Date& generation_date,
                                    std::uint64_t seed) {
  config.validate();
  presets.validate();
  auto pick = [&](const PresetList& list, std::string_view label) {
    auto rng = Rng::stream(seed, label);
    return list.at(rng.below(list.size()));
  };

  Insured insured;
  insured.first_name = pick(presets.first_names, "insured.first_name");
  insured.last_name = pick(presets.last_names, "insured.last_name");
  insured.civic_number = static_cast<int>(Rng::stream(seed, "insured.civic").between(1, 9999));
  insured.street = pick(presets.street_names, "insured.street");
  {
    const auto m = pick(presets.municipalities, "insured.municipality");
    const auto fr = detail::split_fields(m.fr), en = detail::split_fields(m.en);
    insured.municipality = {m.index, fr.at(0), en.at(0)};
    static constexpr std::string_view letters = "ABCEGHJKLMNPRSTVWXYZ";
    auto rng = Rng::stream(seed, "insured.postal");
    std::string ldu;
    ldu.push_back(static_cast<char>('0' + rng.below(10)));
    ldu.push_back(letters[rng.below(letters.size())]);
    ldu.push_back(static_cast<char>('0' + rng.below(10)));
    insured.postal_code = fr.at(1) + " " + ldu;
  }
  {
    auto rng = Rng::stream(seed, "insured.birth");
    const long min_days = static_cast<long>(std::ceil(config.min_age * 365.25));
    const long max_days = static_cast<long>(std::floor((config.max_age + 1) * 365.25)) - 1;
    insured.birth_date = add_days(generation_date, -rng.between(min_days, std::max(min_days, max_days)));
  }
  insured.sex = Rng::stream(seed, "insured.sex").categorical(config.sex) == 0 ? Sex::Male : Sex::Female;
  {
    auto rng = Rng::stream(seed, "insured.client_id");
    const auto id = std::to_string(rng.below(10'000'000'000ULL));
    insured.client_id = std::string(10 - id.size(), '0') + id;
  }
  {
    auto rng = Rng::stream(seed, "insured.rebate");
    insured.association_rebate = rng.bernoulli(config.association_rebate_probability);
    insured.rebate_percent = insured.association_rebate ? detail::draw(config.rebate_percent, rng) : 0;
  }

  Vehicle vehicle;
  {
    const auto v = pick(presets.vehicles, "vehicle.preset");
    const auto fr = detail::split_fields(v.fr), en = detail::split_fields(v.en);
    vehicle.preset_index = v.index;
    vehicle.year = std::stoi(fr.at(0));
    vehicle.maker = {v.index, fr.at(1), en.at(1)};
    vehicle.model = {v.index, fr.at(2), en.at(2)};
    vehicle.motor = parse_motor_type(fr.at(3));
  }
  vehicle.condition = Rng::stream(seed, "vehicle.condition").categorical(config.purchase_condition) == 0
                          ? PurchaseCondition::New
                          : PurchaseCondition::Used;
  if (Rng::stream(seed, "vehicle.financed").bernoulli(config.financed_probability)) {
    vehicle.financing_institution = pick(presets.financing_institutions, "vehicle.financing");
  }

  ContractTerms terms;
  {
    auto rng = Rng::stream(seed, "contract.number");
    const auto n = std::to_string(rng.below(1'000'000'000ULL));
    terms.contract_number = "AUT-" + std::string(9 - n.size(), '0') + n;
  }
  terms.start_date = add_days(generation_date, -Rng::stream(seed, "contract.start").between(0, 365));
  terms.end_date = add_one_year(terms.start_date);

  return ContractRecord{std::move(insured), sample_driving_record(config, seed), std::move(vehicle),
                        sample_financials(config, protections, seed), std::move(terms), protections};
}

}  // namespace riscgen
