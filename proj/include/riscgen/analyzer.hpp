#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "riscgen/error.hpp"
#include "riscgen/text.hpp"

namespace riscgen {

/// Pages are form-feed delimited segments with visible content; without any
/// form feed, ceil(lines / 60).
inline std::size_t count_pages(std::string_view text, std::size_t lines_per_page = 60) {
  if (text.find('\f') != std::string_view::npos) {
    std::size_t pages = 0, start = 0;
    while (true) {
      const auto end = text.find('\f', start);
      const auto seg = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
      if (!detail::trim(seg).empty()) ++pages;
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
    return pages;
  }
  if (text.empty()) return 0;
  std::size_t lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  if (text.back() != '\n') ++lines;
  return (lines + lines_per_page - 1) / lines_per_page;
}

struct DocumentStats {
  std::size_t tokens = 0;
  std::size_t lexical_words = 0;
  std::size_t sentences = 0;
  std::size_t pages = 0;
  std::set<std::string> vocabulary;
  std::optional<Readability> readability;
};

inline DocumentStats analyze_document(std::string_view text, const TokenizationRules& rules) {
  DocumentStats d;
  const auto tokens = tokenize(text, rules);
  d.tokens = tokens.size();
  for (const auto& t : tokens) {
    if (!rules.is_stopword(t)) ++d.lexical_words;
  }
  d.vocabulary.insert(tokens.begin(), tokens.end());
  const auto counts = count_text(text, rules.language);
  d.sentences = counts.sentences;
  d.pages = count_pages(text);
  if (counts.sentences > 0 && counts.words > 0) d.readability = readability_from_counts(counts);
  return d;
}

/// Associative, commutative accumulator over documents.
struct CorpusAccumulator {
  std::size_t documents = 0;
  std::size_t tokens = 0;
  std::size_t lexical_words = 0;
  std::size_t sentences = 0;
  std::size_t pages = 0;
  std::size_t sentence_documents = 0;
  double sentence_length_tokens = 0.0;
  double sentence_length_lw = 0.0;
  std::size_t readable_documents = 0;
  double flesch = 0.0, fog = 0.0, smog = 0.0;
  std::set<std::string> vocabulary;

  void add(const DocumentStats& d) {
    ++documents;
    tokens += d.tokens;
    lexical_words += d.lexical_words;
    sentences += d.sentences;
    pages += d.pages;
    if (d.sentences > 0) {
      ++sentence_documents;
      sentence_length_tokens += static_cast<double>(d.tokens) / static_cast<double>(d.sentences);
      sentence_length_lw += static_cast<double>(d.lexical_words) / static_cast<double>(d.sentences);
    }
    if (d.readability) {
      ++readable_documents;
      flesch += d.readability->flesch_reading_ease;
      fog += d.readability->gunning_fog;
      smog += d.readability->smog;
    }
    vocabulary.insert(d.vocabulary.begin(), d.vocabulary.end());
  }

  void merge(const CorpusAccumulator& o) {
    documents += o.documents;
    tokens += o.tokens;
    lexical_words += o.lexical_words;
    sentences += o.sentences;
    pages += o.pages;
    sentence_documents += o.sentence_documents;
    sentence_length_tokens += o.sentence_length_tokens;
    sentence_length_lw += o.sentence_length_lw;
    readable_documents += o.readable_documents;
    flesch += o.flesch;
    fog += o.fog;
    smog += o.smog;
    vocabulary.insert(o.vocabulary.begin(), o.vocabulary.end());
  }
};

struct CorpusReport {
  Language language = Language::En;
  std::size_t document_count = 0;
  std::size_t vocabulary_size = 0;
  std::size_t total_lexical_words = 0;
  double avg_tokens = 0.0;
  double avg_lexical_words = 0.0;
  double avg_sentences = 0.0;
  double avg_sentence_length_tokens = 0.0;
  double avg_sentence_length_lw = 0.0;
  double avg_pages = 0.0;
  double lexical_richness = 0.0;
  double avg_flesch_reading_ease = 0.0;
  double avg_gunning_fog = 0.0;
  double avg_smog = 0.0;

  friend bool operator==(const CorpusReport&, const CorpusReport&) = default;
};

/// Vocabulary size divided by the total lexical-word count.
inline double lexical_richness(double vocabulary_size, double total_lexical_words) {
  return total_lexical_words > 0.0 ? vocabulary_size / total_lexical_words : 0.0;
}

/// Truncates toward zero at `decimals` places, so 0.0001461 reports as
/// 0.00014 rather than rounding up.
inline double truncate_decimals(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // Nudge by a few ulps so exact decimal inputs are not truncated one step low.
  return std::trunc(value * scale * (1.0 + 4 * std::numeric_limits<double>::epsilon())) / scale;
}

inline CorpusReport finalize(const CorpusAccumulator& acc, Language lang) {
  if (acc.documents == 0) throw Error(ErrorCode::EmptyCorpus, "corpus has no documents");
  const double n = static_cast<double>(acc.documents);
  CorpusReport r;
  r.language = lang;
  r.document_count = acc.documents;
  r.vocabulary_size = acc.vocabulary.size();
  r.total_lexical_words = acc.lexical_words;
  r.avg_tokens = static_cast<double>(acc.tokens) / n;
  r.avg_lexical_words = static_cast<double>(acc.lexical_words) / n;
  r.avg_sentences = static_cast<double>(acc.sentences) / n;
  r.avg_pages = static_cast<double>(acc.pages) / n;
  if (acc.sentence_documents > 0) {
    r.avg_sentence_length_tokens = acc.sentence_length_tokens / static_cast<double>(acc.sentence_documents);
    r.avg_sentence_length_lw = acc.sentence_length_lw / static_cast<double>(acc.sentence_documents);
  }
  r.lexical_richness = lexical_richness(static_cast<double>(r.vocabulary_size), static_cast<double>(acc.lexical_words));
  if (acc.readable_documents > 0) {
    const double m = static_cast<double>(acc.readable_documents);
    r.avg_flesch_reading_ease = acc.flesch / m;
    r.avg_gunning_fog = acc.fog / m;
    r.avg_smog = acc.smog / m;
  }
  return r;
}

/// Analyzes in-memory documents; `workers` > 1 splits them into contiguous
/// chunks whose accumulators are merged in chunk order.
inline CorpusReport analyze_documents(const std::vector<std::string>& documents, const TokenizationRules& rules,
                                      unsigned workers = 1) {
  if (documents.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus has no documents");
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(documents.size())));
  std::vector<CorpusAccumulator> parts(workers);
  const std::size_t chunk = (documents.size() + workers - 1) / workers;
  auto run = [&](unsigned w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(documents.size(), begin + chunk);
    for (std::size_t i = begin; i < end; ++i) parts[w].add(analyze_document(documents[i], rules));
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  CorpusAccumulator total;
  for (const auto& p : parts) total.merge(p);
  return finalize(total, rules.language);
}

/// `.txt` files directly inside `directory`, sorted by file name.
inline std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) throw Error(ErrorCode::IoError, "'" + directory.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CorpusReport analyze_corpus(const std::filesystem::path& directory, const TokenizationRules& rules,
                                   unsigned workers = 1) {
  const auto files = corpus_files(directory);
  if (files.empty()) throw Error(ErrorCode::EmptyCorpus, "no .txt documents in '" + directory.string() + "'");
  std::vector<std::string> documents;
  documents.reserve(files.size());
  for (const auto& f : files) documents.push_back(read_file(f));
  return analyze_documents(documents, rules, workers);
}

inline nlohmann::json to_json(const CorpusReport& r) {
  return {{"language", to_string(r.language)},
          {"document_count", r.document_count},
          {"vocabulary_size", r.vocabulary_size},
          {"total_lexical_words", r.total_lexical_words},
          {"avg_tokens", r.avg_tokens},
          {"avg_lexical_words", r.avg_lexical_words},
          {"avg_sentences", r.avg_sentences},
          {"avg_sentence_length_tokens", r.avg_sentence_length_tokens},
          {"avg_sentence_length_lw", r.avg_sentence_length_lw},
          {"avg_pages", r.avg_pages},
          {"lexical_richness", r.lexical_richness},
          {"avg_flesch_reading_ease", r.avg_flesch_reading_ease},
          {"avg_gunning_fog", r.avg_gunning_fog},
          {"avg_smog", r.avg_smog}};
}

/// Aligned two-column table using the conventional corpus-statistics row labels.
inline std::string to_table(const CorpusReport& r) {
  auto fixed = [](double v, int p) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(p) << v;
    return ss.str();
  };
  const std::vector<std::pair<std::string, std::string>> rows = {
      {"Number of documents", std::to_string(r.document_count)},
      {"Vocabulary size", std::to_string(r.vocabulary_size)},
      {"Avg number of tokens", fixed(r.avg_tokens, 2)},
      {"Avg number of LW", fixed(r.avg_lexical_words, 2)},
      {"Avg number of sentence", fixed(r.avg_sentences, 2)},
      {"Avg sentence length (tokens)", fixed(r.avg_sentence_length_tokens, 2)},
      {"Avg sentence length (LW)", fixed(r.avg_sentence_length_lw, 2)},
      {"Avg number of pages", fixed(r.avg_pages, 2)},
      {"Lexical richness", fixed(truncate_decimals(r.lexical_richness, 5), 5)},
      {"Avg Flesch-Kincaid score", fixed(r.avg_flesch_reading_ease, 2)},
      {"Avg Gunning fog score", fixed(r.avg_gunning_fog, 2)},
      {"Avg SMOG score", fixed(r.avg_smog, 2)},
  };
  std::size_t width = 0;
  for (const auto& [label, value] : rows) width = std::max(width, label.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "" << "  " << to_string(r.language) << '\n';
  for (const auto& [label, value] : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << label << "  " << value << '\n';
  }
  return out.str();
}

}  // namespace riscgen
