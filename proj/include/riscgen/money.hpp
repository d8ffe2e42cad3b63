#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "riscgen/error.hpp"
#include "riscgen/language.hpp"

namespace riscgen {

/// Monetary amount in integer cents.
struct Cents {
  std::int64_t value = 0;

  static Cents from_dollars(double dollars) {
    if (!std::isfinite(dollars)) throw Error(ErrorCode::InvalidConfig, "non-finite monetary amount");
    return Cents{static_cast<std::int64_t>(std::llround(dollars * 100.0))};
  }
  double dollars() const { return static_cast<double>(value) / 100.0; }

  friend Cents operator+(Cents a, Cents b) { return Cents{a.value + b.value}; }
  Cents& operator+=(Cents o) {
    value += o.value;
    return *this;
  }
  friend auto operator<=>(const Cents&, const Cents&) = default;
};

/// en: "$1,234.56" (or "$1,234" without cents); fr: "1 234,56 $" (or "1 234 $").
inline std::string format_money(Cents amount, Language lang, bool with_cents = true) {
  const bool negative = amount.value < 0;
  const std::uint64_t abs = negative ? static_cast<std::uint64_t>(-amount.value) : static_cast<std::uint64_t>(amount.value);
  const std::string whole = std::to_string(abs / 100);
  const char group = lang == Language::En ? ',' : ' ';
  std::string grouped;
  for (std::size_t i = 0; i < whole.size(); ++i) {
    if (i > 0 && (whole.size() - i) % 3 == 0) grouped.push_back(group);
    grouped.push_back(whole[i]);
  }
  if (with_cents) {
    const auto cents = abs % 100;
    grouped.push_back(lang == Language::En ? '.' : ',');
    grouped.push_back(static_cast<char>('0' + cents / 10));
    grouped.push_back(static_cast<char>('0' + cents % 10));
  }
  const std::string sign = negative ? "-" : "";
  return lang == Language::En ? sign + "$" + grouped : sign + grouped + " $";
}

/// Inverse of format_money for either language.
inline Cents parse_money(std::string_view text, Language lang) {
  std::string s(text);
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.erase(0, 1);
  }
  if (lang == Language::En) {
    if (s.empty() || s.front() != '$') throw Error(ErrorCode::ParseError, "not an English amount: '" + std::string(text) + "'");
    s.erase(0, 1);
  } else {
    if (s.size() < 2 || s.substr(s.size() - 2) != " $") {
      throw Error(ErrorCode::ParseError, "not a French amount: '" + std::string(text) + "'");
    }
    s.resize(s.size() - 2);
  }
  const char group = lang == Language::En ? ',' : ' ';
  const char decimal = lang == Language::En ? '.' : ',';
  std::int64_t whole = 0, cents = 0;
  bool seen_decimal = false, any_digit = false;
  int cent_digits = 0;
  for (char c : s) {
    if (c == group && !seen_decimal) continue;
    if (c == decimal && !seen_decimal) {
      seen_decimal = true;
      continue;
    }
    if (c < '0' || c > '9') throw Error(ErrorCode::ParseError, "bad character in amount '" + std::string(text) + "'");
    any_digit = true;
    if (seen_decimal) {
      if (++cent_digits > 2) throw Error(ErrorCode::ParseError, "too many decimals in '" + std::string(text) + "'");
      cents = cents * 10 + (c - '0');
    } else {
      whole = whole * 10 + (c - '0');
    }
  }
  if (!any_digit || (seen_decimal && cent_digits != 2)) {
    throw Error(ErrorCode::ParseError, "malformed amount '" + std::string(text) + "'");
  }
  const std::int64_t v = whole * 100 + cents;
  return Cents{negative ? -v : v};
}

}  // namespace riscgen
