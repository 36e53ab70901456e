#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qnet_cli/cli.hpp"

// Exit codes: 0 success, 1 config validation failure, 2 runtime/I-O failure.
int main(int argc, char** argv) {
  CLI::App app{"qnet-cli: spin-photon network simulation front-end"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_override;
  std::string format_override;
  int64_t seed_override = -1;
  int64_t trials_override = -1;

  const std::vector<std::string> commands = {"interface-report", "bsa-bench", "cluster-gen",
                                             "repeater-2way", "repeater-1way", "sweep"};
  std::string chosen;
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("-c,--config", config_path, "JSON run configuration file")->required();
    sub->add_option("-o,--output", output_override, "override the configured output path");
    sub->add_option("-f,--format", format_override, "override the output format (csv|json)");
    sub->add_option("-s,--seed", seed_override, "override the configured seed");
    sub->add_option("-t,--trials", trials_override, "override the configured trial count");
    sub->callback([&chosen, name] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read config file '" << config_path << "'\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  // Apply command-line overrides on the raw document, then validate once.
  auto doc = nlohmann::ordered_json::parse(buf.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    std::cerr << "(document): not a JSON object\n";
    return 1;
  }
  if (!doc.contains("command")) doc["command"] = chosen;
  if (!output_override.empty()) doc["output_path"] = output_override;
  if (!format_override.empty()) doc["output_format"] = format_override;
  if (seed_override >= 0) doc["seed"] = seed_override;
  if (trials_override >= 0) doc["trials"] = trials_override;

  auto parsed = qnet::cli::validate_config(doc.dump());
  if (!parsed.config) {
    for (const auto& d : parsed.diagnostics) std::cerr << d << "\n";
    return 1;
  }
  const auto& cfg = *parsed.config;
  if (cfg.command != chosen) {
    std::cerr << "command: config file says '" << cfg.command << "' but subcommand is '" << chosen
              << "'\n";
    return 1;
  }

  const int workers = qnet::cli::workers_from_env();
  if (cfg.output_path.empty()) return qnet::cli::run(cfg, std::cout, std::cerr, workers);

  std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot write output path '" << cfg.output_path << "'\n";
    return 2;
  }
  const int rc = qnet::cli::run(cfg, out, std::cerr, workers);
  out.flush();
  if (!out) {
    std::cerr << "error: write to '" << cfg.output_path << "' failed\n";
    return 2;
  }
  return rc;
}
