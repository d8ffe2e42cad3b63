#pragma once

// Maps rendered placeholder values back to language-neutral canonical strings
// so a French and an English document can be compared field by field.

#include <string>
#include <vector>

#include "riscgen/templates.hpp"

namespace riscgen {

namespace detail {

inline std::vector<std::string> split_on(std::string_view s, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + sep.size();
  }
}

inline std::size_t preset_index(const PresetList& list, Language lang, std::string_view value, bool first_field = false) {
  const auto& items = list.in(lang);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string item = first_field ? split_fields(items[i]).at(0) : items[i];
    if (item == value) return i;
  }
  throw Error(ErrorCode::ParseError, "value '" + std::string(value) + "' is not a known preset");
}

template <std::size_t N>
std::size_t label_index(std::string_view value, Language lang, std::string (*render)(int, Language)) {
  for (std::size_t i = 0; i < N; ++i) {
    if (render(static_cast<int>(i), lang) == value) return i;
  }
  throw Error(ErrorCode::ParseError, "unrecognized label '" + std::string(value) + "'");
}

inline std::string strip_prefix(std::string_view s, std::string_view prefix) {
  if (!s.starts_with(prefix)) throw Error(ErrorCode::ParseError, "expected '" + std::string(prefix) + "' in '" + std::string(s) + "'");
  return std::string(s.substr(prefix.size()));
}

inline std::string column_of(const std::string& code, Language lang) {
  auto col = column_from_code(code, lang);
  if (!col) throw Error(ErrorCode::ParseError, "unknown protection code '" + code + "'");
  return *col;
}

}  // namespace detail

/// Canonical, language-independent form of one rendered placeholder value.
inline std::string canonical_value(std::string_view name, std::string_view rendered, Language lang, const Presets& presets) {
  using K = PlaceholderKind;
  const auto* spec = find_placeholder(name);
  if (!spec) throw Error(ErrorCode::UnknownPlaceholder, "unknown placeholder <" + std::string(name) + ">");
  const std::string value(rendered);
  switch (spec->kind) {
    case K::Text:
    case K::Integer:
      return value;
    case K::Date:
      return to_iso(parse_date_text(value, lang));
    case K::WholeMoney:
    case K::Money:
      return std::to_string(parse_money(value, lang).value);
    case K::Count:
      return std::to_string(detail::label_index<4>(value, lang, +[](int i, Language l) { return detail::count_text(i, l); }));
    case K::Sex:
      return std::to_string(detail::label_index<2>(value, lang, +[](int i, Language l) { return detail::sex_text(static_cast<Sex>(i), l); }));
    case K::Motor:
      return std::to_string(
          detail::label_index<4>(value, lang, +[](int i, Language l) { return detail::motor_text(static_cast<MotorType>(i), l); }));
    case K::Condition:
      return std::to_string(detail::label_index<2>(
          value, lang, +[](int i, Language l) { return detail::condition_text(static_cast<PurchaseCondition>(i), l); }));
    case K::Rebate: {
      if (value == detail::yes_no(false, lang)) return "0";
      auto rest = detail::strip_prefix(value, detail::yes_no(true, lang) + " (");
      const std::string suffix = lang == Language::En ? "%)" : " %)";
      if (!rest.ends_with(suffix)) throw Error(ErrorCode::ParseError, "bad rebate '" + value + "'");
      return rest.substr(0, rest.size() - suffix.size());
    }
    case K::Financing:
      if (value == detail::none_word(lang)) return "none";
      return std::to_string(detail::preset_index(presets.financing_institutions, lang, value));
    case K::Address: {
      std::string civic, street, municipality, postal;
      if (lang == Language::En) {
        const auto parts = detail::split_on(value, ", ");
        if (parts.size() != 3) throw Error(ErrorCode::ParseError, "bad address '" + value + "'");
        const auto space = parts[0].find(' ');
        if (space == std::string::npos) throw Error(ErrorCode::ParseError, "bad address '" + value + "'");
        civic = parts[0].substr(0, space);
        street = parts[0].substr(space + 1);
        municipality = parts[1];
        postal = detail::strip_prefix(parts[2], "Quebec ");
      } else {
        const auto parts = detail::split_on(value, ", ");
        if (parts.size() != 3) throw Error(ErrorCode::ParseError, "bad address '" + value + "'");
        civic = parts[0];
        street = parts[1];
        const auto tail = detail::split_on(parts[2], " (Québec) ");
        if (tail.size() != 2) throw Error(ErrorCode::ParseError, "bad address '" + value + "'");
        municipality = tail[0];
        postal = tail[1];
      }
      return civic + "|" + std::to_string(detail::preset_index(presets.street_names, lang, street)) + "|" +
             std::to_string(detail::preset_index(presets.municipalities, lang, municipality, true)) + "|" + postal;
    }
    case K::CoverageSummary: {
      if (value == detail::none_word(lang)) return "";
      std::string out;
      for (const auto& line : detail::split_on(value, "\n")) {
        const auto f = detail::split_on(line, " | ");
        if (f.size() != 3) throw Error(ErrorCode::ParseError, "bad coverage line '" + line + "'");
        const auto column = detail::column_of(f[0], lang);
        std::string amount;
        if (f[2].starts_with(detail::limit_label(lang))) {
          amount = "limit=" + std::to_string(parse_money(detail::strip_prefix(f[2], detail::limit_label(lang)), lang).value);
        } else {
          amount = "deductible=" +
                   std::to_string(parse_money(detail::strip_prefix(f[2], detail::deductible_label(lang)), lang).value);
        }
        out += column + ":" + amount + ";";
      }
      return out;
    }
    case K::PremiumDetails: {
      if (value == detail::none_word(lang)) return "";
      std::string out;
      for (const auto& line : detail::split_on(value, "\n")) {
        const auto f = detail::split_on(line, " | ");
        if (f.size() != 3) throw Error(ErrorCode::ParseError, "bad premium line '" + line + "'");
        out += detail::column_of(f[0], lang) + "=" + std::to_string(parse_money(f[2], lang).value) + ";";
      }
      return out;
    }
    case K::EndorsementList: {
      if (value == detail::none_word(lang)) return "";
      std::string out;
      for (const auto& line : detail::split_on(value, "\n")) {
        const auto f = detail::split_on(line, " | ");
        out += detail::column_of(f.at(0), lang) + ";";
      }
      return out;
    }
  }
  return value;
}

inline PlaceholderValues canonical_values(const PlaceholderValues& rendered, Language lang, const Presets& presets) {
  PlaceholderValues out;
  for (const auto& [name, value] : rendered) out[name] = canonical_value(name, value, lang, presets);
  return out;
}

/// Re-extracts every placeholder value from an assembled document and returns
/// the canonical forms.
inline PlaceholderValues document_canonical_values(std::string_view document, const TemplateSet& set,
                                                   const ProtectionSet& protections, const Presets& presets) {
  return canonical_values(extract_values(document_layout(set, protections), document), set.language(), presets);
}

struct ParityMismatch {
  std::string placeholder;
  std::string fr;
  std::string en;
};

/// Fields whose canonical values differ between the two renderings.
inline std::vector<ParityMismatch> compare_parity(const PlaceholderValues& fr, const PlaceholderValues& en) {
  std::vector<ParityMismatch> out;
  for (const auto& [name, value] : fr) {
    const auto it = en.find(name);
    if (it == en.end()) {
      out.push_back({name, value, "<absent>"});
    } else if (it->second != value) {
      out.push_back({name, value, it->second});
    }
  }
  for (const auto& [name, value] : en) {
    if (!fr.contains(name)) out.push_back({name, "<absent>", value});
  }
  return out;
}

}  // namespace riscgen
