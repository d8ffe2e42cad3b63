#pragma once

// A second, deliberately naive implementation of the corpus statistics. It
// works on decoded code points, splits sentences with std::regex and keeps
// every per-document figure in plain vectors, so it shares no code paths with
// the library analyzer beyond the stopword lists and abbreviation table.

#include <cmath>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "riscgen/analyzer.hpp"

namespace reference {

using riscgen::Language;

inline std::u32string decode(const std::string& s) {
  std::u32string out;
  for (std::size_t i = 0; i < s.size();) {
    const unsigned char b = static_cast<unsigned char>(s[i]);
    int extra = b < 0x80 ? 0 : b < 0xE0 ? 1 : b < 0xF0 ? 2 : 3;
    char32_t cp = extra == 0 ? b : extra == 1 ? (b & 0x1F) : extra == 2 ? (b & 0x0F) : (b & 0x07);
    ++i;
    for (; extra > 0 && i < s.size(); --extra, ++i) cp = (cp << 6) | (static_cast<unsigned char>(s[i]) & 0x3F);
    out.push_back(cp);
  }
  return out;
}

inline std::string encode(const std::u32string& s) {
  std::string out;
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }
  return out;
}

// The generated micro-corpora stay inside ASCII and Latin-1.
inline bool letter(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || (c >= 0xC0 && c <= 0xFF && c != 0xD7 && c != 0xF7);
}
inline bool digit(char32_t c) { return c >= U'0' && c <= U'9'; }
inline bool blank(char32_t c) { return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v'; }
inline char32_t lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  return c;
}
inline std::u32string lower(std::u32string s) {
  for (auto& c : s) c = lower(c);
  return s;
}

inline std::vector<std::u32string> chunks(const std::u32string& text) {
  std::vector<std::u32string> out(1);
  for (char32_t c : text) {
    if (blank(c)) {
      if (!out.back().empty()) out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (out.back().empty()) out.pop_back();
  return out;
}

inline std::vector<std::string> tokens(const std::u32string& text) {
  std::vector<std::string> out;
  std::u32string cur;
  auto close = [&] {
    bool any = false;
    for (char32_t c : cur) any = any || letter(c);
    if (any) out.push_back(encode(lower(cur)));
    cur.clear();
  };
  for (char32_t c : text) {
    if (letter(c) || digit(c)) {
      cur += c;
    } else {
      close();
    }
  }
  close();
  return out;
}

inline bool has_alnum(const std::u32string& s) {
  for (char32_t c : s) {
    if (letter(c) || digit(c)) return true;
  }
  return false;
}

// Paragraph blocks first (form feeds, blank lines), then punctuation clusters
// inside each block.
inline std::size_t sentence_count(const std::string& utf8, Language lang) {
  const auto& abbrev = riscgen::abbreviations(lang);
  static const std::regex paragraph("\f|\n[ \t\r]*\n");
  static const std::regex cluster("[.!?]+[\"')]*");
  std::size_t count = 0;
  std::sregex_token_iterator it(utf8.begin(), utf8.end(), paragraph, -1), end;
  for (; it != end; ++it) {
    const std::string block = *it;
    std::size_t cut = 0;
    for (std::sregex_iterator m(block.begin(), block.end(), cluster), mend; m != mend; ++m) {
      const std::size_t pos = static_cast<std::size_t>(m->position());
      const std::size_t after = pos + static_cast<std::size_t>(m->length());
      if (after < block.size() && !blank(static_cast<unsigned char>(block[after]))) continue;
      const std::string match = m->str();
      const std::size_t run = match.find_first_not_of(".!?");
      if (match[0] == '.' && (run == std::string::npos ? match.size() : run) == 1) {
        std::size_t w = pos;
        while (w > cut && !blank(static_cast<unsigned char>(block[w - 1]))) --w;
        while (w < pos && (block[w] == '(' || block[w] == '"' || block[w] == '\'')) ++w;
        const std::string word = encode(lower(decode(block.substr(w, pos + 1 - w))));
        if (abbrev.contains(word)) continue;
      }
      if (has_alnum(decode(block.substr(cut, after - cut)))) ++count;
      cut = after;
    }
    if (cut < block.size() && has_alnum(decode(block.substr(cut)))) ++count;
  }
  return count;
}

inline bool vowel(char32_t c, Language lang) {
  static const std::u32string plain = U"aeiouy";
  static const std::u32string accented = U"àâäéèêëîïôöùûüÿœæ";
  return plain.find(c) != std::u32string::npos || (lang == Language::Fr && accented.find(c) != std::u32string::npos);
}

inline int syllables(const std::u32string& run, Language lang) {
  int groups = 0;
  for (std::size_t i = 0; i < run.size(); ++i) {
    if (vowel(run[i], lang) && (i == 0 || !vowel(run[i - 1], lang))) ++groups;
  }
  const std::size_t n = run.size();
  if (lang == Language::En && groups > 1 && run[n - 1] == U'e') {
    const bool keeps = vowel(run[n - 2], lang) || (n >= 3 && run[n - 2] == U'l' && !vowel(run[n - 3], lang));
    if (!keeps) --groups;
  }
  return groups < 1 ? 1 : groups;
}

struct Doc {
  std::size_t tokens = 0, lexical = 0, sentences = 0, pages = 0, words = 0, syllables = 0, poly = 0;
  std::set<std::string> vocab;
};

inline std::size_t pages(const std::string& text) {
  if (text.find('\f') == std::string::npos) {
    if (text.empty()) return 0;
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    if (text.back() != '\n') ++lines;
    return lines / 60 + (lines % 60 != 0);
  }
  std::size_t n = 0;
  std::string seg;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\f') {
      for (char c : seg) {
        if (!blank(static_cast<unsigned char>(c))) {
          ++n;
          break;
        }
      }
      seg.clear();
    } else {
      seg += text[i];
    }
  }
  return n;
}

inline Doc document(const std::string& text, Language lang) {
  const auto rules = riscgen::TokenizationRules::for_language(lang);
  const auto cps = decode(text);
  Doc d;
  for (const auto& t : tokens(cps)) {
    ++d.tokens;
    if (!rules.is_stopword(t)) ++d.lexical;
    d.vocab.insert(t);
  }
  d.sentences = sentence_count(text, lang);
  d.pages = pages(text);
  for (const auto& chunk : chunks(cps)) {
    int total = 0;
    bool word = false;
    std::u32string run;
    for (std::size_t i = 0; i <= chunk.size(); ++i) {
      if (i < chunk.size() && letter(chunk[i])) {
        run += lower(chunk[i]);
        word = true;
      } else if (!run.empty()) {
        total += syllables(run, lang);
        run.clear();
      }
    }
    if (!word) continue;
    ++d.words;
    d.syllables += static_cast<std::size_t>(total);
    d.poly += total >= 3;
  }
  return d;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline riscgen::CorpusReport analyze(const std::vector<std::string>& docs, Language lang) {
  std::vector<double> tok, lex, sent, pg, slt, sll, fre, fog, smog;
  std::set<std::string> vocab;
  std::size_t total_lexical = 0;
  for (const auto& text : docs) {
    const Doc d = document(text, lang);
    tok.push_back(double(d.tokens));
    lex.push_back(double(d.lexical));
    sent.push_back(double(d.sentences));
    pg.push_back(double(d.pages));
    total_lexical += d.lexical;
    vocab.insert(d.vocab.begin(), d.vocab.end());
    if (d.sentences > 0) {
      slt.push_back(double(d.tokens) / double(d.sentences));
      sll.push_back(double(d.lexical) / double(d.sentences));
    }
    if (d.sentences > 0 && d.words > 0) {
      const double asl = double(d.words) / double(d.sentences);
      fre.push_back(206.835 - 1.015 * asl - 84.6 * double(d.syllables) / double(d.words));
      fog.push_back(0.4 * (asl + 100.0 * double(d.poly) / double(d.words)));
      smog.push_back(1.0430 * std::sqrt(30.0 * double(d.poly) / double(d.sentences)) + 3.1291);
    }
  }
  riscgen::CorpusReport r;
  r.language = lang;
  r.document_count = docs.size();
  r.vocabulary_size = vocab.size();
  r.total_lexical_words = total_lexical;
  r.avg_tokens = mean(tok);
  r.avg_lexical_words = mean(lex);
  r.avg_sentences = mean(sent);
  r.avg_pages = mean(pg);
  r.avg_sentence_length_tokens = mean(slt);
  r.avg_sentence_length_lw = mean(sll);
  r.lexical_richness = total_lexical ? double(vocab.size()) / double(total_lexical) : 0.0;
  r.avg_flesch_reading_ease = mean(fre);
  r.avg_gunning_fog = mean(fog);
  r.avg_smog = mean(smog);
  return r;
}

}  // namespace reference
