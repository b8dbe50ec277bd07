#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dqlab/errors.hpp"
#include "dqlab/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dqlab::ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dqlab: degenerate-qubit gate simulation scenarios"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  bool seed_set = false;

  const char* names[] = {"rabi", "hadamard", "expand", "fidelity-sweep", "cz", "dephase"};
  for (const char* name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--seed", seed, "RNG seed override")->each([&](const std::string&) {
      seed_set = true;
    });
    sub->add_option("--out", out_path, "output file path");
    sub->add_option("--format", format, "output format (csv or json)")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    dqlab::ScenarioConfig cfg =
        dqlab::parse_config(dqlab::parse_command(command), read_file(config_path));
    if (seed_set) cfg.seed = seed;
    if (!out_path.empty()) cfg.output_path = out_path;
    if (format == "csv") cfg.format = dqlab::ReportFormat::kCsv;
    if (format == "json") cfg.format = dqlab::ReportFormat::kJson;
    dqlab::run_and_write(cfg);
    return 0;
  } catch (const dqlab::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const dqlab::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
