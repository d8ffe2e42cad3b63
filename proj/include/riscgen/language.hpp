#pragma once

#include <string>
#include <string_view>

#include "riscgen/error.hpp"

namespace riscgen {

enum class Language { Fr, En };

constexpr std::string_view to_string(Language lang) { return lang == Language::Fr ? "fr" : "en"; }

inline Language parse_language(std::string_view s) {
  if (s == "fr") return Language::Fr;
  if (s == "en") return Language::En;
  throw Error(ErrorCode::InvalidConfig, "unknown language '" + std::string(s) + "' (expected fr or en)");
}

}  // namespace riscgen
