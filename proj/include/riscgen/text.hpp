#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "riscgen/error.hpp"
#include "riscgen/language.hpp"
#include "riscgen/stopwords.hpp"

namespace riscgen {

namespace utf8 {

/// Decodes the code point at `pos` and advances it. Malformed bytes decode as U+FFFD.
inline char32_t next(std::string_view s, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](std::size_t i) -> int {
    if (pos + i >= s.size()) return -1;
    const auto b = static_cast<unsigned char>(s[pos + i]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3 : (b0 >> 3) == 0x1E ? 4 : 0;
  if (len == 0) {
    ++pos;
    return 0xFFFD;
  }
  char32_t cp = b0 & (0x7F >> len);
  for (int i = 1; i < len; ++i) {
    const int c = cont(i);
    if (c < 0) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | static_cast<char32_t>(c);
  }
  pos += static_cast<std::size_t>(len);
  return cp;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

/// Latin letters: ASCII plus Latin-1 Supplement and Latin Extended-A/B.
constexpr bool is_letter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  return cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7;
}

constexpr bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

constexpr char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp >= 0x100 && cp <= 0x17F && cp != 0x130 && cp != 0x138 && cp != 0x149 && cp != 0x178) {
    // Latin Extended-A mostly alternates upper/lower, but the pairing flips at
    // U+0139..U+0148 and U+0179..U+017E.
    const bool odd_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
    if (odd_upper ? (cp % 2 == 1) : (cp % 2 == 0)) return cp + 1;
  }
  if (cp == 0x178) return 0xFF;
  return cp;
}

inline std::string lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) append(out, to_lower(next(s, pos)));
  return out;
}

}  // namespace utf8

/// Token exclusions: newline, whitespace, punctuation, the special characters
/// < > | $, and numeric tokens. Only runs of letters and digits survive, and
/// digit-only runs are dropped.
struct TokenizationRules {
  Language language = Language::En;
  const std::unordered_set<std::string_view>* stopwords = nullptr;

  static TokenizationRules for_language(Language lang) {
    return {lang, lang == Language::Fr ? &french_stopwords() : &english_stopwords()};
  }
  bool is_stopword(std::string_view token) const { return stopwords && stopwords->contains(token); }
};

inline std::vector<std::string> tokenize(std::string_view text, const TokenizationRules& = {}) {
  std::vector<std::string> tokens;
  std::string current;
  bool has_letter = false;
  auto flush = [&] {
    if (!current.empty() && has_letter) tokens.push_back(std::move(current));
    current.clear();
    has_letter = false;
  };
  for (std::size_t pos = 0; pos < text.size();) {
    const char32_t cp = utf8::next(text, pos);
    if (utf8::is_letter(cp)) {
      utf8::append(current, utf8::to_lower(cp));
      has_letter = true;
    } else if (utf8::is_digit(cp)) {
      current.push_back(static_cast<char>(cp));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

inline std::vector<std::string> lexical_words(const std::vector<std::string>& tokens, const TokenizationRules& rules) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (!rules.is_stopword(t)) out.push_back(t);
  }
  return out;
}

inline const std::unordered_set<std::string_view>& abbreviations(Language lang) {
  static const std::unordered_set<std::string_view> en = {
      "mr.", "mrs.", "ms.", "dr.", "st.", "no.", "inc.", "ltd.", "co.", "e.g.", "i.e.", "vs.",
      "q.e.f.", "q.p.f.", "art.", "sec.", "approx.", "jr.", "sr.", "p."};
  static const std::unordered_set<std::string_view> fr = {
      "m.", "mme.", "mlle.", "dr.", "st.", "ste.", "no.", "art.", "q.e.f.", "q.p.f.", "f.p.q.",
      "f.a.q.", "p.", "ex.", "c.-à-d.", "inc.", "ltée."};
  return lang == Language::Fr ? fr : en;
}

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

inline bool has_word_char(std::string_view s) {
  for (std::size_t pos = 0; pos < s.size();) {
    const char32_t cp = utf8::next(s, pos);
    if (utf8::is_letter(cp) || utf8::is_digit(cp)) return true;
  }
  return false;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Rule-based sentence splitter. A run of . ! ? ends a sentence when followed
/// by whitespace or end of text, unless the single period closes a listed
/// abbreviation. Blank lines and form feeds also end sentences. Segments
/// without any letter or digit are dropped.
inline std::vector<std::string> split_sentences(std::string_view text, Language lang) {
  const auto& abbrev = abbreviations(lang);
  std::vector<std::string> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    auto seg = detail::trim(text.substr(start, end - start));
    if (detail::has_word_char(seg)) out.emplace_back(seg);
    start = end;
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i;
      while (j < text.size() && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
      std::size_t k = j;
      while (k < text.size() && (text[k] == '"' || text[k] == '\'' || text[k] == ')')) ++k;
      const bool at_break = k == text.size() || detail::is_space(text[k]);
      bool abbreviation = false;
      if (at_break && c == '.' && j == i + 1) {
        std::size_t w = i;
        while (w > start && !detail::is_space(text[w - 1])) --w;
        while (w < i && (text[w] == '(' || text[w] == '"' || text[w] == '\'')) ++w;
        abbreviation = abbrev.contains(utf8::lower(text.substr(w, i + 1 - w)));
      }
      if (at_break && !abbreviation) emit(k);
      i = k > i ? k : i + 1;
      continue;
    }
    if (c == '\f') {
      emit(i);
      ++i;
      continue;
    }
    if (c == '\n') {
      std::size_t j = i + 1;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
      if (j < text.size() && text[j] == '\n') {
        emit(i);
        i = j + 1;
        continue;
      }
    }
    ++i;
  }
  emit(text.size());
  return out;
}

namespace detail {

inline bool is_vowel(char32_t cp, Language lang) {
  switch (cp) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
      return true;
    default:
      break;
  }
  if (lang == Language::En) return false;
  static constexpr char32_t accented[] = {0xE0, 0xE2, 0xE4, 0xE9, 0xE8, 0xEA, 0xEB, 0xEE, 0xEF,
                                          0xF4, 0xF6, 0xF9, 0xFB, 0xFC, 0xFF, 0x153, 0xE6};
  return std::find(std::begin(accented), std::end(accented), cp) != std::end(accented);
}

}  // namespace detail

/// Vowel-group syllable count of one letter run (minimum 1). English drops a
/// silent final "e" (but not a consonant + "le" ending).
inline int count_syllables(std::string_view word, Language lang) {
  std::u32string letters;
  for (std::size_t pos = 0; pos < word.size();) {
    const char32_t cp = utf8::to_lower(utf8::next(word, pos));
    if (utf8::is_letter(cp)) letters.push_back(cp);
  }
  int groups = 0;
  bool in_group = false;
  for (char32_t cp : letters) {
    const bool v = detail::is_vowel(cp, lang);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  if (lang == Language::En && groups > 1 && letters.size() >= 2 && letters.back() == U'e') {
    const bool consonant_le = letters.size() >= 3 && letters[letters.size() - 2] == U'l' &&
                              !detail::is_vowel(letters[letters.size() - 3], lang);
    const bool vowel_before = detail::is_vowel(letters[letters.size() - 2], lang);
    if (!consonant_le && !vowel_before) --groups;
  }
  return std::max(groups, 1);
}

struct TextCounts {
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t syllables = 0;
  std::size_t polysyllables = 0;  // words with >= 3 syllables
};

/// Words are whitespace-delimited chunks containing at least one letter; a
/// chunk's syllables are summed over its letter runs.
inline TextCounts count_text(std::string_view text, Language lang) {
  TextCounts c;
  c.sentences = split_sentences(text, lang).size();
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && detail::is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !detail::is_space(text[j])) ++j;
    if (j > i) {
      const auto chunk = text.substr(i, j - i);
      int syllables = 0;
      bool any_letter = false;
      std::string run;
      auto close_run = [&] {
        if (!run.empty()) syllables += count_syllables(run, lang);
        run.clear();
      };
      for (std::size_t pos = 0; pos < chunk.size();) {
        const std::size_t before = pos;
        const char32_t cp = utf8::next(chunk, pos);
        if (utf8::is_letter(cp)) {
          any_letter = true;
          run.append(chunk.substr(before, pos - before));
        } else {
          close_run();
        }
      }
      close_run();
      if (any_letter) {
        ++c.words;
        c.syllables += static_cast<std::size_t>(syllables);
        if (syllables >= 3) ++c.polysyllables;
      }
    }
    i = j;
  }
  return c;
}

struct Readability {
  double flesch_reading_ease = 0.0;
  double gunning_fog = 0.0;
  double smog = 0.0;
};

inline Readability readability_from_counts(const TextCounts& c) {
  if (c.sentences == 0 || c.words == 0) {
    throw Error(ErrorCode::DegenerateText, "readability needs at least one sentence and one word");
  }
  const double words = static_cast<double>(c.words);
  const double sentences = static_cast<double>(c.sentences);
  const double wps = words / sentences;
  Readability r;
  r.flesch_reading_ease = 206.835 - 1.015 * wps - 84.6 * (static_cast<double>(c.syllables) / words);
  r.gunning_fog = 0.4 * (wps + 100.0 * static_cast<double>(c.polysyllables) / words);
  r.smog = 1.0430 * std::sqrt(static_cast<double>(c.polysyllables) * 30.0 / sentences) + 3.1291;
  return r;
}

inline Readability readability(std::string_view text, Language lang) {
  return readability_from_counts(count_text(text, lang));
}

}  // namespace riscgen
