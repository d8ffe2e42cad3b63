#pragma once

#include <chrono>
#include <cstdio>
#include <string>
#include <string_view>

#include "riscgen/error.hpp"

namespace riscgen {

using Date = std::chrono::year_month_day;

inline Date make_date(int y, unsigned m, unsigned d) {
  return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

inline Date parse_iso_date(std::string_view s) {
  int y = 0;
  unsigned m = 0, d = 0;
  char tail = 0;
  const std::string str(s);
  if (s.size() != 10 || std::sscanf(str.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3) {
    throw Error(ErrorCode::InvalidConfig, "expected a YYYY-MM-DD date, got '" + str + "'");
  }
  const Date date = make_date(y, m, d);
  if (!date.ok()) throw Error(ErrorCode::InvalidConfig, "invalid calendar date '" + str + "'");
  return date;
}

inline std::string to_iso(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

inline Date add_days(const Date& d, long days) {
  return Date{std::chrono::sys_days{d} + std::chrono::days{days}};
}

inline long days_between(const Date& from, const Date& to) {
  return (std::chrono::sys_days{to} - std::chrono::sys_days{from}).count();
}

/// Same calendar date next year; February 29 maps to February 28.
inline Date add_one_year(const Date& d) {
  Date next = d + std::chrono::years{1};
  if (!next.ok()) next = Date{next.year(), next.month(), std::chrono::day{28}};
  return next;
}

inline Date today() {
  return Date{std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now())};
}

}  // namespace riscgen
