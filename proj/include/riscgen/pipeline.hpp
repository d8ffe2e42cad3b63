#pragma once

#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "riscgen/analyzer.hpp"
#include "riscgen/bootstrap.hpp"
#include "riscgen/dependency_model.hpp"
#include "riscgen/digest.hpp"
#include "riscgen/metrics.hpp"
#include "riscgen/persona.hpp"
#include "riscgen/rules.hpp"
#include "riscgen/templates.hpp"

#ifndef RISCGEN_VERSION
#define RISCGEN_VERSION "0.0.0"
#endif

namespace riscgen {

inline constexpr std::string_view kToolVersion = RISCGEN_VERSION;
inline constexpr std::size_t kDefaultBootstrapRows = 10'000;

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t count = 1;
  std::vector<Language> languages{Language::Fr, Language::En};
  std::filesystem::path template_dir;
  std::filesystem::path preset_dir;
  DistributionConfig distributions;
  RuleConfig rules;
  std::optional<std::filesystem::path> model_path;
  std::optional<std::filesystem::path> seed_table_path;
  std::size_t bootstrap_rows = kDefaultBootstrapRows;
  std::filesystem::path output_dir = "corpus";
  std::optional<Date> generation_date;
  InsurerProfile insurer;
  unsigned workers = 1;
  bool force = false;

  void validate() const {
    if (count < 1) throw Error(ErrorCode::InvalidConfig, "count must be >= 1");
    if (languages.empty()) throw Error(ErrorCode::InvalidConfig, "at least one language is required");
    for (std::size_t i = 0; i < languages.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (languages[i] == languages[j]) throw Error(ErrorCode::InvalidConfig, "duplicate language in languages");
      }
    }
    if (workers < 1) throw Error(ErrorCode::InvalidConfig, "workers must be >= 1");
    if (rules.max_attempts < 1) throw Error(ErrorCode::InvalidConfig, "rules.max_attempts must be >= 1");
    distributions.validate();
  }
};

inline std::vector<Language> parse_language_list(std::string_view csv) {
  std::vector<Language> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto end = csv.find(',', start);
    if (end == std::string_view::npos) end = csv.size();
    const auto item = csv.substr(start, end - start);
    if (!item.empty()) out.push_back(parse_language(item));
    start = end + 1;
  }
  return out;
}

/// Builds a RunConfig from JSON. Input paths (templates, presets, model,
/// seed_table) are resolved against `base_dir`; the output directory is kept
/// as written so it is relative to the working directory.
inline RunConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  RunConfig c;
  auto path = [&](const std::string& p) {
    std::filesystem::path v(p);
    return v.is_absolute() ? v : (base_dir / v).lexically_normal();
  };
  try {
    c.seed = j.value("seed", c.seed);
    c.count = j.value("count", c.count);
    if (j.contains("languages")) {
      c.languages.clear();
      for (const auto& l : j.at("languages")) c.languages.push_back(parse_language(l.get<std::string>()));
    }
    c.template_dir = path(j.value("templates", std::string("templates")));
    c.preset_dir = path(j.value("presets", std::string("presets")));
    if (j.contains("distributions")) c.distributions = distribution_from_json(j.at("distributions"));
    if (j.contains("rules")) {
      const auto& r = j.at("rules");
      if (r.contains("qef41_mode")) c.rules.qef41_mode = parse_qef41_mode(r.at("qef41_mode").get<std::string>());
      c.rules.max_attempts = r.value("max_attempts", c.rules.max_attempts);
    }
    if (j.contains("model") && !j.at("model").is_null()) c.model_path = path(j.at("model").get<std::string>());
    if (j.contains("seed_table") && !j.at("seed_table").is_null()) {
      c.seed_table_path = path(j.at("seed_table").get<std::string>());
    }
    c.bootstrap_rows = j.value("bootstrap_rows", c.bootstrap_rows);
    c.output_dir = j.value("output", c.output_dir.string());
    if (j.contains("generation_date") && !j.at("generation_date").is_null()) {
      c.generation_date = parse_iso_date(j.at("generation_date").get<std::string>());
    }
    if (j.contains("insurer")) {
      c.insurer.name = j.at("insurer").value("name", c.insurer.name);
      c.insurer.phone = j.at("insurer").value("phone", c.insurer.phone);
    }
    c.workers = j.value("workers", c.workers);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("run config: ") + e.what());
  }
  return c;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot read config file " + path.string());
  try {
    return config_from_json(nlohmann::json::parse(in), path.parent_path());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
  }
}

/// Canonical JSON of everything that determines the corpus content. The
/// output directory, worker count and force flag are excluded.
inline nlohmann::json content_json(const RunConfig& c) {
  nlohmann::json langs = nlohmann::json::array();
  for (auto l : c.languages) langs.push_back(to_string(l));
  return {{"seed", c.seed},
          {"count", c.count},
          {"languages", langs},
          {"templates", c.template_dir.generic_string()},
          {"presets", c.preset_dir.generic_string()},
          {"distributions", to_json(c.distributions)},
          {"rules",
           {{"qef41_mode", c.rules.qef41_mode == Qef41Mode::Strict ? "strict" : "conditional"},
            {"max_attempts", c.rules.max_attempts}}},
          {"model", c.model_path ? nlohmann::json(c.model_path->generic_string()) : nlohmann::json(nullptr)},
          {"seed_table", c.seed_table_path ? nlohmann::json(c.seed_table_path->generic_string()) : nlohmann::json(nullptr)},
          {"bootstrap_rows", c.bootstrap_rows},
          {"generation_date", c.generation_date ? nlohmann::json(to_iso(*c.generation_date)) : nlohmann::json(nullptr)},
          {"insurer", {{"name", c.insurer.name}, {"phone", c.insurer.phone}}}};
}

/// Model precedence: explicit model file, then a seed table fitted with the
/// master seed, then a bootstrap table generated and fitted on the fly.
inline DependencyModel resolve_model(const RunConfig& c) {
  if (c.model_path) return load_model(c.model_path->string());
  if (c.seed_table_path) return fit(read_table_csv(*c.seed_table_path), c.seed);
  return fit(bootstrap_seed_data(BootstrapSpec{}, c.bootstrap_rows, derive_key(c.seed, "bootstrap")), c.seed);
}

/// Immutable inputs shared by all contracts of a run.
struct GenerationContext {
  std::uint64_t seed = 42;
  DependencyModel model;
  DistributionConfig distributions;
  Presets presets;
  RuleConfig rules;
  Date generation_date;
};

struct GeneratedContract {
  ContractRecord record;
  std::size_t attempts = 0;
};

/// Contract i draws from streams keyed by derive_key(seed, "contract", i),
/// so contracts are independent of each other and of scheduling.
inline GeneratedContract generate_contract(const GenerationContext& ctx, std::size_t index) {
  const auto cseed = derive_key(ctx.seed, "contract", index);
  const auto driving = sample_driving_record(ctx.distributions, derive_key(cseed, "driving"));
  auto protections = sample_valid(ctx.model, driving, derive_key(cseed, "protections"), ctx.rules);
  auto record = sample_record(ctx.distributions, ctx.presets, protections.set, ctx.generation_date, derive_key(cseed, "record"));
  record.driving = driving;
  return {std::move(record), protections.attempts};
}

inline std::string contract_file_name(std::size_t index, Language lang) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "contract_%05zu_%s.txt", index, std::string(to_string(lang)).c_str());
  return buf;
}

struct ManifestFile {
  std::string name;
  std::string sha256;
  friend bool operator==(const ManifestFile&, const ManifestFile&) = default;
};

struct RunManifest {
  std::string config_digest;
  std::uint64_t seed = 0;
  std::string generation_date;
  std::vector<std::size_t> attempts;
  std::vector<ManifestFile> files;
  std::string tool_version{kToolVersion};
  std::map<std::string, std::string> template_checksums;
  std::string model_digest;
  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

inline nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : m.files) files.push_back({{"name", f.name}, {"sha256", f.sha256}});
  return {{"format", "riscgen-run-manifest"}, {"config_digest", m.config_digest},
          {"seed", m.seed},                    {"generation_date", m.generation_date},
          {"attempts", m.attempts},            {"files", files},
          {"tool_version", m.tool_version},    {"template_checksums", m.template_checksums},
          {"model_digest", m.model_digest}};
}

inline RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  try {
    m.config_digest = j.at("config_digest").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.generation_date = j.at("generation_date").get<std::string>();
    m.attempts = j.at("attempts").get<std::vector<std::size_t>>();
    for (const auto& f : j.at("files")) m.files.push_back({f.at("name").get<std::string>(), f.at("sha256").get<std::string>()});
    m.tool_version = j.at("tool_version").get<std::string>();
    m.template_checksums = j.at("template_checksums").get<std::map<std::string, std::string>>();
    m.model_digest = j.at("model_digest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("run manifest: ") + e.what());
  }
  return m;
}

namespace detail {

inline void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

/// Creates the output directory, or clears previous run artifacts when
/// `force` is set. Files that are not run artifacts are never removed.
inline void prepare_output_dir(const std::filesystem::path& dir, bool force) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::exists(dir, ec)) {
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
    return;
  }
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::IoError, dir.string() + " is not a directory");
  if (fs::directory_iterator(dir) == fs::directory_iterator()) return;
  if (!force) throw Error(ErrorCode::OutputDirNotEmpty, "output directory " + dir.string() + " is not empty (use --force)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    const bool artifact =
        name == "manifest.json" || (name.starts_with("contract_") && entry.path().extension() == ".txt");
    if (artifact && entry.is_regular_file()) fs::remove(entry.path());
  }
}

}  // namespace detail

/// Generates the corpus and writes `manifest.json` next to it.
inline RunManifest generate(const RunConfig& config) {
  config.validate();
  std::vector<TemplateSet> sets;
  for (auto lang : config.languages) sets.push_back(load_template_set(config.template_dir, lang));
  GenerationContext ctx{config.seed,
                        resolve_model(config),
                        config.distributions,
                        load_presets(config.preset_dir),
                        config.rules,
                        config.generation_date.value_or(today())};
  ctx.model.schema().require_contract_layout();
  const RenderContext render{config.insurer};

  detail::prepare_output_dir(config.output_dir, config.force);

  const std::size_t n = config.count;
  const std::size_t langs = sets.size();
  std::vector<std::size_t> attempts(n, 0);
  std::vector<ManifestFile> files(n * langs);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const auto contract = generate_contract(ctx, i);
        attempts[i] = contract.attempts;
        for (std::size_t l = 0; l < langs; ++l) {
          const auto doc = assemble(contract.record, sets[l], render);
          const auto name = contract_file_name(i, sets[l].language());
          detail::write_text_file(config.output_dir / name, doc);
          files[i * langs + l] = {name, sha256_hex(doc)};
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(config.workers, n));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  // Report the lowest failing index so errors are deterministic too.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  RunManifest m;
  m.config_digest = sha256_hex(content_json(config).dump());
  m.seed = config.seed;
  m.generation_date = to_iso(ctx.generation_date);
  m.attempts = std::move(attempts);
  m.files = std::move(files);
  for (const auto& s : sets) m.template_checksums[std::string(to_string(s.language()))] = s.manifest_checksum();
  m.model_digest = sha256_hex(to_json(ctx.model).dump());
  detail::write_text_file(config.output_dir / "manifest.json", to_json(m).dump(2) + "\n");
  return m;
}

// ---------------------------------------------------------------------------
// Other commands

inline DependencyModel fit_command(const std::filesystem::path& seed_table, const std::filesystem::path& out,
                                   std::uint64_t seed) {
  const auto model = fit(read_table_csv(seed_table), seed);
  save_model(model, out.string());
  return model;
}

struct EvaluateReport {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double inverted_ks = 0.0;
  std::vector<double> column_scores;
  UcStats reference;
  UcStats synthetic;
  std::size_t new_uc = 0;
  struct Comparison {
    double inverted_ks_b = 0.0;
    ZTestResult z;
  };
  std::optional<Comparison> comparison;
};

/// Samples n rows from `model` (stream key derived from `seed`) and compares
/// them with the reference table. With `model_b`, the per-column scores of
/// both models are compared by a two-sample z-test.
inline EvaluateReport evaluate(const DependencyModel& model, const ProtectionTable& reference, std::size_t n,
                               std::uint64_t seed, const std::optional<DependencyModel>& model_b = std::nullopt,
                               unsigned workers = 1) {
  if (!(model.schema() == reference.schema())) {
    throw Error(ErrorCode::SchemaMismatch, "model and reference table have different columns");
  }
  const auto synthetic = sample(model, n, derive_key(seed, "evaluate.a"), workers);
  EvaluateReport r;
  r.n = n;
  r.seed = seed;
  r.column_scores = column_scores(reference, synthetic);
  r.inverted_ks = inverted_ks(reference, synthetic);
  r.reference = uc_stats(reference);
  r.synthetic = uc_stats(synthetic);
  r.new_uc = new_uc_count(reference, synthetic);
  if (model_b) {
    if (!(model_b->schema() == reference.schema())) {
      throw Error(ErrorCode::SchemaMismatch, "second model and reference table have different columns");
    }
    const auto synthetic_b = sample(*model_b, n, derive_key(seed, "evaluate.b"), workers);
    const auto scores_b = column_scores(reference, synthetic_b);
    r.comparison = EvaluateReport::Comparison{inverted_ks(reference, synthetic_b), z_test(r.column_scores, scores_b)};
  }
  return r;
}

inline nlohmann::json to_json(const UcStats& s) {
  return {{"unique_count", s.unique_count},     {"mean_freq_pct", s.mean_freq_pct},
          {"median_freq_pct", s.median_freq_pct}, {"q75_freq_pct", s.q75_freq_pct},
          {"max_freq_pct", s.max_freq_pct},     {"total_freq_pct", s.total_freq_pct}};
}

inline nlohmann::json to_json(const EvaluateReport& r) {
  nlohmann::json j = {{"n", r.n},
                      {"seed", r.seed},
                      {"inverted_ks", r.inverted_ks},
                      {"column_scores", r.column_scores},
                      {"reference", to_json(r.reference)},
                      {"synthetic", to_json(r.synthetic)},
                      {"new_uc", r.new_uc}};
  if (r.comparison) {
    const auto& z = r.comparison->z;
    j["comparison"] = {{"inverted_ks_b", r.comparison->inverted_ks_b},
                       {"z", std::isfinite(z.z) ? nlohmann::json(z.z) : nlohmann::json(z.z > 0 ? "inf" : "-inf")},
                       {"reject", z.reject},
                       {"degenerate", z.degenerate},
                       {"threshold", z.threshold}};
  }
  return j;
}

inline ProtectionTable bootstrap_command(std::size_t rows, const std::filesystem::path& out, std::uint64_t seed,
                                         const BootstrapSpec& spec = {}) {
  auto table = bootstrap_seed_data(spec, rows, seed);
  std::ofstream os(out, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::IoError, "cannot write " + out.string());
  write_table_csv(table, os);
  if (!os) throw Error(ErrorCode::IoError, "cannot write " + out.string());
  return table;
}

/// Analyzes `corpus_dir` (files for other languages are skipped when the
/// names follow the contract_{i}_{lang}.txt convention) and writes a JSON
/// report to `report_path`.
inline CorpusReport analyze_command(const std::filesystem::path& corpus_dir, Language lang,
                                    const std::filesystem::path& report_path, unsigned workers = 1) {
  const auto rules = TokenizationRules::for_language(lang);
  std::vector<std::string> documents;
  const std::string own_suffix = "_" + std::string(to_string(lang)) + ".txt";
  for (const auto& f : corpus_files(corpus_dir)) {
    const auto name = f.filename().string();
    if (name.starts_with("contract_") && !name.ends_with(own_suffix)) continue;
    documents.push_back(read_file(f));
  }
  if (documents.empty()) throw Error(ErrorCode::EmptyCorpus, "no " + std::string(to_string(lang)) + " documents in " + corpus_dir.string());
  const auto report = analyze_documents(documents, rules, workers);
  detail::write_text_file(report_path, to_json(report).dump(2) + "\n");
  return report;
}

}  // namespace riscgen
