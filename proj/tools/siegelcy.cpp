#include <iostream>

#include <CLI11.hpp>

#include "siegelcy/suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{"siegelcy: exact and numeric checks for the genus-2 modular threefold and its Calabi-Yau form"};
  app.require_subcommand(1, 1);

  siegelcy::SuiteParams params;
  std::string json_path, cache_dir, format = "text";
  app.add_option("--truncation,-N", params.truncation, "q-expansion truncation n0 + n2 <= N")
      ->check(CLI::Range(std::int64_t{4}, std::int64_t{200}))
      ->capture_default_str();
  app.add_option("--seed", params.seed, "seed for sampled matrices and points")->capture_default_str();
  app.add_option("--tol", params.tol, "numeric tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--json", json_path, "also write the JSON report to PATH");
  app.add_option("--cache", cache_dir, "directory for cached theta expansions");
  app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  std::string selector;
  for (const auto& s : siegelcy::suite_selectors())
    app.add_subcommand(s, "run the " + s + " checks")->fallthrough()->callback([&selector, s] { selector = s; });

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<std::filesystem::path> cache;
    if (!cache_dir.empty()) {
      std::filesystem::create_directories(cache_dir);
      cache = cache_dir;
    }
    const auto report = siegelcy::run_suite(selector, params, cache);
    siegelcy::emit_report(report, format == "json" ? siegelcy::ReportFormat::json : siegelcy::ReportFormat::text,
                          std::cout);
    if (!json_path.empty()) siegelcy::emit_report(report, siegelcy::ReportFormat::json, json_path);
    return report.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
