// riscgen command-line tool: fit, evaluate, generate, analyze, bootstrap.

#include <iostream>

#include <CLI11.hpp>

#include "riscgen/pipeline.hpp"

using namespace riscgen;

namespace {

int run_fit(const std::string& seed_data, const std::string& out, std::uint64_t seed) {
  const auto model = fit_command(seed_data, out, seed);
  std::cout << "fitted " << model.schema().size() << " columns on " << model.metadata().rows << " rows -> " << out
            << "\n";
  return 0;
}

int run_evaluate(const std::string& model_path, const std::string& reference, std::size_t n, std::uint64_t seed,
                 const std::string& model_b, const std::string& out, unsigned workers) {
  const auto model = load_model(model_path);
  const auto table = read_table_csv(reference);
  std::optional<DependencyModel> second;
  if (!model_b.empty()) second = load_model(model_b);
  const auto report = to_json(evaluate(model, table, n, seed, second, workers)).dump(2);
  if (out.empty()) {
    std::cout << report << "\n";
  } else {
    std::ofstream(out) << report << "\n";
  }
  return 0;
}

struct GenerateOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count;
  std::string langs;
  std::string out;
  std::string generation_date;
  std::optional<unsigned> workers;
  bool force = false;
};

int run_generate(const GenerateOptions& o) {
  auto config = load_run_config(o.config);
  if (o.seed) config.seed = *o.seed;
  if (o.count) config.count = *o.count;
  if (!o.langs.empty()) config.languages = parse_language_list(o.langs);
  if (!o.out.empty()) config.output_dir = o.out;
  if (!o.generation_date.empty()) config.generation_date = parse_iso_date(o.generation_date);
  if (o.workers) config.workers = *o.workers;
  config.force = o.force;
  const auto manifest = generate(config);
  std::size_t max_attempts = 0;
  for (auto a : manifest.attempts) max_attempts = std::max(max_attempts, a);
  std::cout << "wrote " << manifest.files.size() << " documents to " << config.output_dir.string()
            << " (max attempts " << max_attempts << ")\n";
  return 0;
}

int run_analyze(const std::string& corpus, const std::string& lang, const std::string& report, unsigned workers) {
  const auto result = analyze_command(corpus, parse_language(lang), report, workers);
  std::cout << to_table(result);
  return 0;
}

int run_bootstrap(std::size_t rows, const std::string& out, std::uint64_t seed, double target_mean) {
  BootstrapSpec spec;
  spec.target_mean = target_mean;
  const auto table = bootstrap_command(rows, out, seed, spec);
  std::cout << "wrote " << table.row_count() << " rows (mean protections per row " << table.mean_row_sum() << ") to "
            << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic bilingual automobile insurance contract generator"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string seed_data, out, model_path, reference, model_b, corpus, lang, report;
  std::uint64_t seed = 42;
  std::size_t n = 30'000, rows = 10'000;
  unsigned workers = 1;
  double target_mean = BootstrapSpec{}.target_mean;
  GenerateOptions gen;

  auto* fit_cmd = app.add_subcommand("fit", "Fit a dependency model on a protection table");
  fit_cmd->add_option("--seed-data", seed_data, "Protection table CSV")->required();
  fit_cmd->add_option("--out", out, "Output model JSON")->required();
  fit_cmd->add_option("--seed", seed, "Seed recorded with the model");

  auto* eval_cmd = app.add_subcommand("evaluate", "Compare model samples with a reference table");
  eval_cmd->add_option("--model", model_path, "Model JSON")->required();
  eval_cmd->add_option("--reference", reference, "Reference table CSV")->required();
  eval_cmd->add_option("--n", n, "Number of rows to sample")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--model-b", model_b, "Second model for a z-test comparison");
  eval_cmd->add_option("--seed", seed, "Sampling seed");
  eval_cmd->add_option("--report", out, "Write the JSON report here instead of stdout");
  eval_cmd->add_option("--workers", workers, "Sampling threads")->check(CLI::PositiveNumber);

  auto* gen_cmd = app.add_subcommand("generate", "Generate a bilingual contract corpus");
  gen_cmd->add_option("--config", gen.config, "Run config JSON")->required();
  gen_cmd->add_option("--seed", gen.seed, "Master seed");
  gen_cmd->add_option("--count", gen.count, "Number of contracts")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--langs", gen.langs, "Comma-separated languages (fr,en)");
  gen_cmd->add_option("--out", gen.out, "Output directory");
  gen_cmd->add_option("--generation-date", gen.generation_date, "Generation date (YYYY-MM-DD)");
  gen_cmd->add_option("--workers", gen.workers, "Generation threads")->check(CLI::PositiveNumber);
  gen_cmd->add_flag("--force", gen.force, "Replace artifacts of a previous run in the output directory");

  auto* analyze_cmd = app.add_subcommand("analyze", "Compute corpus statistics");
  analyze_cmd->add_option("--corpus", corpus, "Corpus directory")->required();
  analyze_cmd->add_option("--lang", lang, "Corpus language (fr|en)")->required()->check(CLI::IsMember({"fr", "en"}));
  analyze_cmd->add_option("--report", report, "Output JSON report")->required();
  analyze_cmd->add_option("--workers", workers, "Analysis threads")->check(CLI::PositiveNumber);

  auto* boot_cmd = app.add_subcommand("bootstrap", "Write a synthetic ground-truth protection table");
  boot_cmd->add_option("--rows", rows, "Number of rows")->required()->check(CLI::PositiveNumber);
  boot_cmd->add_option("--out", out, "Output CSV")->required();
  boot_cmd->add_option("--seed", seed, "Seed")->required();
  boot_cmd->add_option("--target-mean", target_mean, "Expected protections per row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*fit_cmd) return run_fit(seed_data, out, seed);
    if (*eval_cmd) return run_evaluate(model_path, reference, n, seed, model_b, out, workers);
    if (*gen_cmd) return run_generate(gen);
    if (*analyze_cmd) return run_analyze(corpus, lang, report, workers);
    if (*boot_cmd) return run_bootstrap(rows, out, seed, target_mean);
  } catch (const Error& e) {
    std::cerr << "riscgen: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "riscgen: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "riscgen: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
