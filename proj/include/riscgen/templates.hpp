#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "riscgen/calendar.hpp"
#include "riscgen/digest.hpp"
#include "riscgen/error.hpp"
#include "riscgen/language.hpp"
#include "riscgen/money.hpp"
#include "riscgen/persona.hpp"
#include "riscgen/protection_labels.hpp"

namespace riscgen {

enum class TemplatePart { Introductory, Declaration, Qpf, Endorsement };

inline std::string_view to_string(TemplatePart p) {
  switch (p) {
    case TemplatePart::Introductory: return "introductory";
    case TemplatePart::Declaration: return "declaration";
    case TemplatePart::Qpf: return "qpf";
    case TemplatePart::Endorsement: return "endorsement";
  }
  return "?";
}

inline TemplatePart parse_template_part(std::string_view s) {
  for (auto p : {TemplatePart::Introductory, TemplatePart::Declaration, TemplatePart::Qpf, TemplatePart::Endorsement}) {
    if (s == to_string(p)) return p;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown template part '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Placeholder catalogue

/// How a placeholder value is rendered (and later canonicalized back).
enum class PlaceholderKind {
  Text,
  Integer,
  Date,
  WholeMoney,
  Money,
  Count,
  Sex,
  Motor,
  Condition,
  Rebate,
  Financing,
  Address,
  CoverageSummary,
  PremiumDetails,
  EndorsementList,
};

struct PlaceholderSpec {
  std::string_view name;
  PlaceholderKind kind;
};

inline const std::vector<PlaceholderSpec>& placeholder_catalogue() {
  using K = PlaceholderKind;
  static const std::vector<PlaceholderSpec> catalogue = {
      {"Insured Name", K::Text},
      {"Insured Address", K::Address},
      {"Insured Birth Date", K::Date},
      {"Insured Sex", K::Sex},
      {"Client ID", K::Text},
      {"Association Rebate", K::Rebate},
      {"Claims Count", K::Count},
      {"Suspensions Count", K::Count},
      {"Vehicle Year", K::Integer},
      {"Vehicle Maker", K::Text},
      {"Vehicle Model", K::Text},
      {"Motor Type", K::Motor},
      {"Purchase Condition", K::Condition},
      {"Financing Institution", K::Financing},
      {"Liability Limit", K::WholeMoney},
      {"Coverage Summary", K::CoverageSummary},
      {"Premium Details", K::PremiumDetails},
      {"Total Premium", K::Money},
      {"Endorsement List", K::EndorsementList},
      {"Contract Number", K::Text},
      {"Contract Start Date", K::Date},
      {"Contract End Date", K::Date},
      {"Insurer Name", K::Text},
      {"Insurer Phone", K::Text},
  };
  return catalogue;
}

inline const PlaceholderSpec* find_placeholder(std::string_view name) {
  for (const auto& p : placeholder_catalogue()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Locale formatting

namespace detail {
inline constexpr std::array<std::string_view, 12> kMonthsEn = {
    "January", "February", "March", "April", "May", "June", "July", "August", "September", "October", "November", "December"};
inline constexpr std::array<std::string_view, 12> kMonthsFr = {
    "janvier", "février", "mars", "avril", "mai", "juin", "juillet", "août", "septembre", "octobre", "novembre", "décembre"};
}  // namespace detail

/// en "June 1, 2023"; fr "1 juin 2023".
inline std::string format_date(const Date& d, Language lang) {
  const auto month = static_cast<unsigned>(d.month()) - 1;
  const auto day = std::to_string(static_cast<unsigned>(d.day()));
  const auto year = std::to_string(static_cast<int>(d.year()));
  if (lang == Language::En) return std::string(detail::kMonthsEn[month]) + " " + day + ", " + year;
  return day + " " + std::string(detail::kMonthsFr[month]) + " " + year;
}

inline Date parse_date_text(std::string_view text, Language lang) {
  const auto fail = [&] { return Error(ErrorCode::ParseError, "unparseable date '" + std::string(text) + "'"); };
  std::istringstream in{std::string(text)};
  std::string a, b, c;
  if (!(in >> a >> b >> c)) throw fail();
  std::string month_name = lang == Language::En ? a : b;
  std::string day = lang == Language::En ? b : a;
  if (lang == Language::En) {
    if (day.empty() || day.back() != ',') throw fail();
    day.pop_back();
  }
  const auto& months = lang == Language::En ? detail::kMonthsEn : detail::kMonthsFr;
  const auto it = std::find(months.begin(), months.end(), month_name);
  if (it == months.end()) throw fail();
  try {
    const Date d = make_date(std::stoi(c), static_cast<unsigned>(it - months.begin() + 1), static_cast<unsigned>(std::stoi(day)));
    if (!d.ok() || format_date(d, lang) != text) throw fail();
    return d;
  } catch (const std::logic_error&) {
    throw fail();
  }
}

struct InsurerProfile {
  std::string name = "Assurances Boréales inc.";
  std::string phone = "1 800 555-0142";
};

/// Everything besides the record and the language that rendering needs.
struct RenderContext {
  InsurerProfile insurer;
};

using PlaceholderValues = std::map<std::string, std::string, std::less<>>;

namespace detail {

inline std::string yes_no(bool yes, Language lang) {
  if (lang == Language::En) return yes ? "Yes" : "No";
  return yes ? "Oui" : "Non";
}

inline std::string none_word(Language lang) { return lang == Language::En ? "None" : "Aucune"; }

inline std::string count_text(int n, Language lang) {
  if (n >= 3) return lang == Language::En ? "3 or more" : "3 ou plus";
  return std::to_string(n);
}

inline std::string sex_text(Sex s, Language lang) {
  if (lang == Language::En) return s == Sex::Male ? "Male" : "Female";
  return s == Sex::Male ? "Homme" : "Femme";
}

inline std::string motor_text(MotorType m, Language lang) {
  static constexpr std::array<std::string_view, 4> en = {"Gasoline", "Diesel", "Electric", "Hybrid"};
  static constexpr std::array<std::string_view, 4> fr = {"Essence", "Diesel", "Électrique", "Hybride"};
  return std::string((lang == Language::En ? en : fr)[static_cast<std::size_t>(m)]);
}

inline std::string condition_text(PurchaseCondition c, Language lang) {
  if (lang == Language::En) return c == PurchaseCondition::New ? "New" : "Used";
  return c == PurchaseCondition::New ? "Neuf" : "Usagé";
}

inline std::string rebate_text(const Insured& ins, Language lang) {
  if (!ins.association_rebate) return yes_no(false, lang);
  const auto pct = std::to_string(ins.rebate_percent);
  return yes_no(true, lang) + (lang == Language::En ? " (" + pct + "%)" : " (" + pct + " %)");
}

inline std::string address_text(const Insured& ins, Language lang) {
  const auto civic = std::to_string(ins.civic_number);
  if (lang == Language::En) {
    return civic + " " + ins.street.en + ", " + ins.municipality.en + ", Quebec " + ins.postal_code;
  }
  return civic + ", " + ins.street.fr + ", " + ins.municipality.fr + " (Québec) " + ins.postal_code;
}

inline std::string limit_label(Language lang) { return lang == Language::En ? "Limit: " : "Limite : "; }
inline std::string deductible_label(Language lang) { return lang == Language::En ? "Deductible: " : "Franchise : "; }

inline std::string coverage_summary(const ContractRecord& r, Language lang) {
  const auto& schema = r.protections.schema();
  std::string out;
  auto line = [&](const std::string& column, const std::string& amount) {
    if (!out.empty()) out.push_back('\n');
    out += protection_code(column, lang) + " | " + protection_title(column, lang) + " | " + amount;
  };
  if (r.protections.has(std::string(kSectionA))) {
    line(std::string(kSectionA), limit_label(lang) + format_money(r.financials.liability_limit, lang, false));
  }
  for (const auto& d : r.financials.deductibles) {
    line(schema.name(d.column), deductible_label(lang) + format_money(d.amount, lang, false));
  }
  return out.empty() ? none_word(lang) : out;
}

inline std::string premium_details(const ContractRecord& r, Language lang) {
  const auto& schema = r.protections.schema();
  std::string out;
  for (const auto& p : r.financials.premiums) {
    if (!out.empty()) out.push_back('\n');
    const auto& column = schema.name(p.column);
    out += protection_code(column, lang) + " | " + protection_title(column, lang) + " | " + format_money(p.amount, lang);
  }
  return out.empty() ? none_word(lang) : out;
}

inline std::string endorsement_list(const ContractRecord& r, Language lang) {
  std::string out;
  for (const auto& id : r.protections.endorsements()) {
    if (!out.empty()) out.push_back('\n');
    const auto column = endorsement_column(id);
    out += protection_code(column, lang) + " | " + protection_title(column, lang);
  }
  return out.empty() ? none_word(lang) : out;
}

}  // namespace detail

/// Locale-formatted value of every catalogued placeholder for one record.
inline PlaceholderValues placeholder_values(const ContractRecord& r, Language lang, const RenderContext& ctx = {}) {
  PlaceholderValues v;
  const auto& ins = r.insured;
  v["Insured Name"] = ins.full_name(lang);
  v["Insured Address"] = detail::address_text(ins, lang);
  v["Insured Birth Date"] = format_date(ins.birth_date, lang);
  v["Insured Sex"] = detail::sex_text(ins.sex, lang);
  v["Client ID"] = ins.client_id;
  v["Association Rebate"] = detail::rebate_text(ins, lang);
  v["Claims Count"] = detail::count_text(r.driving.claims, lang);
  v["Suspensions Count"] = detail::count_text(r.driving.suspensions, lang);
  v["Vehicle Year"] = std::to_string(r.vehicle.year);
  v["Vehicle Maker"] = r.vehicle.maker.in(lang);
  v["Vehicle Model"] = r.vehicle.model.in(lang);
  v["Motor Type"] = detail::motor_text(r.vehicle.motor, lang);
  v["Purchase Condition"] = detail::condition_text(r.vehicle.condition, lang);
  v["Financing Institution"] =
      r.vehicle.financing_institution ? r.vehicle.financing_institution->in(lang) : detail::none_word(lang);
  v["Liability Limit"] = format_money(r.financials.liability_limit, lang, false);
  v["Coverage Summary"] = detail::coverage_summary(r, lang);
  v["Premium Details"] = detail::premium_details(r, lang);
  v["Total Premium"] = format_money(r.financials.total_premium, lang);
  v["Endorsement List"] = detail::endorsement_list(r, lang);
  v["Contract Number"] = r.contract.contract_number;
  v["Contract Start Date"] = format_date(r.contract.start_date, lang);
  v["Contract End Date"] = format_date(r.contract.end_date, lang);
  v["Insurer Name"] = ctx.insurer.name;
  v["Insurer Phone"] = ctx.insurer.phone;
  return v;
}

// ---------------------------------------------------------------------------
// Templates

/// Either literal text or a placeholder reference.
struct Segment {
  bool placeholder = false;
  std::string text;  // literal text, or the placeholder name
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Splits a body into segments. `\<` is a literal '<'; any other '<' opens a
/// placeholder which must close on the same line and be catalogued.
inline std::vector<Segment> parse_template_body(std::string_view body, std::string_view template_id) {
  std::vector<Segment> out;
  std::string literal;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (c == '\\' && i + 1 < body.size() && body[i + 1] == '<') {
      literal.push_back('<');
      ++i;
      continue;
    }
    if (c != '<') {
      literal.push_back(c);
      continue;
    }
    const auto close = body.find_first_of(">\n", i + 1);
    if (close == std::string_view::npos || body[close] != '>') {
      throw Error(ErrorCode::ParseError, "template '" + std::string(template_id) + "': unterminated placeholder");
    }
    const std::string name(body.substr(i + 1, close - i - 1));
    if (!find_placeholder(name)) {
      throw Error(ErrorCode::UnknownPlaceholder,
                  "template '" + std::string(template_id) + "' uses unknown placeholder <" + name + ">");
    }
    if (!literal.empty()) out.push_back({false, std::move(literal)});
    literal.clear();
    out.push_back({true, name});
    i = close;
  }
  if (!literal.empty()) out.push_back({false, std::move(literal)});
  return out;
}

struct Template {
  std::string id;
  Language language = Language::Fr;
  TemplatePart part = TemplatePart::Introductory;
  std::optional<std::string> endorsement_id;
  std::string body;
  std::vector<Segment> segments;

  static Template make(std::string id, Language lang, TemplatePart part, std::optional<std::string> endorsement_id,
                       std::string body) {
    if (part == TemplatePart::Endorsement && !endorsement_id) {
      throw Error(ErrorCode::InvalidConfig, "endorsement template '" + id + "' has no endorsement_id");
    }
    if (part != TemplatePart::Endorsement && endorsement_id) {
      throw Error(ErrorCode::InvalidConfig, "template '" + id + "' is not an endorsement but has an endorsement_id");
    }
    Template t{std::move(id), lang, part, std::move(endorsement_id), std::move(body), {}};
    t.segments = parse_template_body(t.body, t.id);
    return t;
  }

  std::vector<std::string> placeholders() const {
    std::vector<std::string> out;
    for (const auto& s : segments) {
      if (s.placeholder && std::find(out.begin(), out.end(), s.text) == out.end()) out.push_back(s.text);
    }
    return out;
  }
};

inline std::string render_segments(const std::vector<Segment>& segments, const PlaceholderValues& values) {
  std::string out;
  for (const auto& s : segments) {
    if (!s.placeholder) {
      out += s.text;
      continue;
    }
    const auto it = values.find(s.text);
    if (it == values.end()) throw Error(ErrorCode::MissingValue, "no value for placeholder <" + s.text + ">");
    out += it->second;
  }
  return out;
}

inline std::string fill(const Template& t, const PlaceholderValues& values) { return render_segments(t.segments, values); }

inline std::string fill(const Template& t, const ContractRecord& record, const RenderContext& ctx = {}) {
  return fill(t, placeholder_values(record, t.language, ctx));
}

/// Immutable, ordered per-language template collection.
class TemplateSet {
 public:
  TemplateSet(Language lang, std::vector<Template> templates, std::string manifest_checksum,
              const ColumnSchema& schema = ColumnSchema::contract_default())
      : language_(lang), templates_(std::move(templates)), checksum_(std::move(manifest_checksum)) {
    std::unordered_set<std::string> ids;
    TemplatePart previous = TemplatePart::Introductory;
    for (const auto& t : templates_) {
      if (!ids.insert(t.id).second) throw Error(ErrorCode::DuplicateTemplateId, "duplicate template id '" + t.id + "'");
      if (t.language != lang) throw Error(ErrorCode::InvalidConfig, "template '" + t.id + "' has the wrong language");
      if (t.part < previous) {
        throw Error(ErrorCode::InvalidConfig, "template '" + t.id + "' breaks the part order");
      }
      previous = t.part;
      if (t.endorsement_id) {
        const auto column = endorsement_column(*t.endorsement_id);
        if (!schema.index_of(column)) {
          throw Error(ErrorCode::InvalidConfig, "template '" + t.id + "' names an endorsement not in the schema: " + column);
        }
      }
    }
    for (auto p : {TemplatePart::Introductory, TemplatePart::Declaration, TemplatePart::Qpf}) {
      if (part(p).empty()) throw Error(ErrorCode::InvalidConfig, "template set has no " + std::string(to_string(p)) + " template");
    }
  }

  Language language() const { return language_; }
  const std::vector<Template>& templates() const { return templates_; }
  const std::string& manifest_checksum() const { return checksum_; }

  std::vector<const Template*> part(TemplatePart p) const {
    std::vector<const Template*> out;
    for (const auto& t : templates_) {
      if (t.part == p) out.push_back(&t);
    }
    return out;
  }

  std::vector<const Template*> endorsement(std::string_view id) const {
    std::vector<const Template*> out;
    for (const auto& t : templates_) {
      if (t.endorsement_id && *t.endorsement_id == id) out.push_back(&t);
    }
    return out;
  }

 private:
  Language language_;
  std::vector<Template> templates_;
  std::string checksum_;
};

/// Reads `<root>/<lang>/manifest.json`:
/// {"templates": [{"id", "file", "part", "endorsement_id"?, "repeat"?}, ...],
///  "counts"?: {"base": n, "endorsement": m}}
/// `repeat` duplicates a body (blank-line separated) to pad document length.
inline TemplateSet load_template_set(const std::filesystem::path& root, Language lang,
                                     const ColumnSchema& schema = ColumnSchema::contract_default()) {
  const auto dir = root / std::string(to_string(lang));
  const auto manifest_path = dir / "manifest.json";
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingManifest, "no template manifest at " + manifest_path.string());
  const std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, manifest_path.string() + ": " + e.what());
  }
  if (!manifest.contains("templates") || !manifest["templates"].is_array()) {
    throw Error(ErrorCode::InvalidConfig, manifest_path.string() + ": missing 'templates' array");
  }

  std::vector<Template> templates;
  try {
    for (const auto& entry : manifest["templates"]) {
      const auto id = entry.at("id").get<std::string>();
      const auto file = dir / entry.at("file").get<std::string>();
      std::ifstream tin(file, std::ios::binary);
      if (!tin) throw Error(ErrorCode::IoError, "template '" + id + "': cannot read " + file.string());
      std::string body((std::istreambuf_iterator<char>(tin)), std::istreambuf_iterator<char>());
      while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
      const int repeat = entry.value("repeat", 1);
      if (repeat < 1) throw Error(ErrorCode::InvalidConfig, "template '" + id + "': repeat must be >= 1");
      std::string full = body;
      for (int k = 1; k < repeat; ++k) full += "\n\n" + body;
      std::optional<std::string> endorsement_id;
      if (entry.contains("endorsement_id") && !entry["endorsement_id"].is_null()) {
        endorsement_id = entry["endorsement_id"].get<std::string>();
      }
      templates.push_back(Template::make(id, lang, parse_template_part(entry.at("part").get<std::string>()),
                                         std::move(endorsement_id), std::move(full)));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, manifest_path.string() + ": " + e.what());
  }

  TemplateSet set(lang, std::move(templates), sha256_hex(raw), schema);
  if (manifest.contains("counts")) {
    const auto& counts = manifest["counts"];
    const auto endorsements = set.part(TemplatePart::Endorsement).size();
    const auto base = set.templates().size() - endorsements;
    if (counts.value("base", base) != base || counts.value("endorsement", endorsements) != endorsements) {
      throw Error(ErrorCode::InvalidConfig, manifest_path.string() + ": template counts disagree with the manifest");
    }
  }
  return set;
}

// ---------------------------------------------------------------------------
// Assembly

inline constexpr std::string_view kTemplateSeparator = "\n\n";
inline constexpr std::string_view kPageBreak = "\n\f\n";

/// Segment layout of a whole document: the part templates, then one page per
/// included endorsement in ascending id order. Shared by assemble and by
/// value extraction so both see the same structure.
inline std::vector<Segment> document_layout(const TemplateSet& set, const ProtectionSet& protections) {
  std::vector<Segment> out;
  auto append_literal = [&](std::string_view s) {
    if (s.empty()) return;
    if (!out.empty() && !out.back().placeholder) {
      out.back().text += s;
    } else {
      out.push_back({false, std::string(s)});
    }
  };
  auto append_template = [&](const Template& t) {
    for (const auto& s : t.segments) {
      if (s.placeholder) {
        out.push_back(s);
      } else {
        append_literal(s.text);
      }
    }
  };
  auto append_block = [&](const std::vector<const Template*>& block) {
    for (std::size_t k = 0; k < block.size(); ++k) {
      if (k > 0) append_literal(kTemplateSeparator);
      append_template(*block[k]);
    }
  };

  bool first = true;
  for (auto p : {TemplatePart::Introductory, TemplatePart::Declaration, TemplatePart::Qpf}) {
    if (!first) append_literal(kPageBreak);
    first = false;
    append_block(set.part(p));
  }
  for (const auto& id : protections.endorsements()) {
    const auto block = set.endorsement(id);
    if (block.empty()) {
      throw Error(ErrorCode::MissingEndorsementTemplate,
                  "no " + std::string(to_string(set.language())) + " template for endorsement " + id);
    }
    append_literal(kPageBreak);
    append_block(block);
  }
  append_literal("\n");
  return out;
}

inline std::string assemble(const ContractRecord& record, const TemplateSet& set, const RenderContext& ctx = {}) {
  return render_segments(document_layout(set, record.protections), placeholder_values(record, set.language(), ctx));
}

/// Recovers placeholder values from rendered text by matching the literal
/// segments in order. Each value ends at the first occurrence of the literal
/// that follows it. A placeholder used several times must render identically.
inline PlaceholderValues extract_values(const std::vector<Segment>& segments, std::string_view text) {
  PlaceholderValues out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (!s.placeholder) {
      if (text.substr(pos, s.text.size()) != s.text) {
        throw Error(ErrorCode::ParseError, "text does not match the template at byte " + std::to_string(pos));
      }
      pos += s.text.size();
      continue;
    }
    std::size_t end = text.size();
    if (i + 1 < segments.size()) {
      if (segments[i + 1].placeholder) {
        throw Error(ErrorCode::ParseError, "adjacent placeholders <" + s.text + "><" + segments[i + 1].text + ">");
      }
      end = text.find(segments[i + 1].text, pos);
      if (end == std::string_view::npos) throw Error(ErrorCode::ParseError, "value of <" + s.text + "> is unterminated");
    }
    const std::string value(text.substr(pos, end - pos));
    const auto [it, inserted] = out.emplace(s.text, value);
    if (!inserted && it->second != value) {
      throw Error(ErrorCode::ParseError, "placeholder <" + s.text + "> renders inconsistently");
    }
    pos = end;
  }
  if (pos != text.size()) throw Error(ErrorCode::ParseError, "trailing text after the last template segment");
  return out;
}

inline PlaceholderValues extract_values(const Template& t, std::string_view text) { return extract_values(t.segments, text); }

}  // namespace riscgen
