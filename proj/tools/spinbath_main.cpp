#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "spinbath/parallel.hpp"
#include "spinbath/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kAssertion = 2;

int cmd_run(const std::string& path, const std::string& output_override) {
  spinbath::ScenarioConfig cfg = spinbath::load_config(path);
  if (!output_override.empty()) cfg.output = output_override;
  const spinbath::RunResult r = spinbath::run(cfg);
  if (cfg.output.empty() || cfg.output == "-") {
    r.series.write_csv(std::cout);
    spinbath::write_summary(std::cerr, r);
  } else {
    std::ofstream out(cfg.output);
    if (!out) {
      std::cerr << "error: cannot write output file '" << cfg.output << "'\n";
      return kInvalid;
    }
    r.series.write_csv(out);
    spinbath::write_summary(std::cout, r);
    std::cout << "wrote " << r.series.size() << " rows to " << cfg.output << '\n';
  }
  return r.passed() ? kOk : kAssertion;
}

int cmd_validate(const std::string& path) {
  spinbath::ScenarioConfig cfg = spinbath::load_config(path);
  spinbath::apply_defaults(cfg);
  const auto rep = spinbath::validate(cfg);
  spinbath::write_report(std::cout, rep);
  return rep.ok() ? kOk : kInvalid;
}

int cmd_list() {
  for (const auto& s : spinbath::list_scenarios()) std::cout << s.name << "\t" << s.description << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit decoherence in nuclear spin baths"};
  app.set_version_flag("--version", std::string(spinbath::version()));
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (overrides SPINBATH_THREADS)");

  std::string run_path;
  std::string output;
  auto* run = app.add_subcommand("run", "Run a scenario config");
  run->add_option("config", run_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", output, "Output CSV path (overrides the config; '-' for stdout)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a config and print derived quantities");
  validate->add_option("config", validate_path, "Config file")->required()->check(CLI::ExistingFile);

  auto* list = app.add_subcommand("list-scenarios", "List the available scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  if (threads > 0) spinbath::set_thread_count(threads);

  try {
    if (*run) return cmd_run(run_path, output);
    if (*validate) return cmd_validate(validate_path);
    if (*list) return cmd_list();
  } catch (const spinbath::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAssertion;
  }
  return kOk;
}
