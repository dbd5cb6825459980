#include <algorithm>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "panda/errors.hpp"
#include "panda/io.hpp"
#include "panda_cli/cli.hpp"

namespace panda::cli {

int exit_code_for(const std::exception& e) {
  if (const auto* pe = dynamic_cast<const Error*>(&e)) {
    switch (pe->kind()) {
      case ErrorKind::configuration:
      case ErrorKind::file:
        return exit_usage;
      default:
        return exit_computation;
    }
  }
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return exit_usage;
  return exit_computation;
}

nlohmann::json error_json(const std::exception& e) {
  std::string kind = "internal";
  if (const auto* pe = dynamic_cast<const Error*>(&e)) kind = to_string(pe->kind());
  else if (dynamic_cast<const nlohmann::json::exception*>(&e)) kind = "configuration";
  return {{"error", {{"kind", kind}, {"message", e.what()}, {"exit_code", exit_code_for(e)}}}};
}

int main(int argc, char** argv) {
  CLI::App app{"PANDA attosecond pulse characterization: simulation and retrieval"};
  app.require_subcommand(1);
  app.fallthrough();

  ScenarioConfig cfg;
  std::string config_path;
  std::string out = ".";
  std::uint64_t seed = 0;
  for (const auto& name : commands()) {
    auto* sub = app.add_subcommand(name, fmt::format("run the {} scenario", name));
    sub->add_option("--config", config_path, "JSON scenario configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", seed, "seed for optional noise");
    sub->add_option("--format", cfg.format, "table format")->check(CLI::IsMember({"csv", "json"}));
  }

  if (argc > 1 && argv[1][0] != '-' &&
      std::find(commands().begin(), commands().end(), argv[1]) == commands().end()) {
    std::cerr << app.help() << "\n";
    nlohmann::json j = {{"error",
                         {{"kind", "usage"}, {"message", fmt::format("unknown command '{}'", argv[1])}, {"exit_code", exit_usage}}}};
    std::cerr << j.dump() << "\n";
    return exit_usage;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help() << "\n";
    nlohmann::json j = {{"error", {{"kind", "usage"}, {"message", e.what()}, {"exit_code", exit_usage}}}};
    std::cerr << j.dump() << "\n";
    return exit_usage;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    cfg.out = out;
    if (sub->count("--seed")) cfg.seed = seed;
    if (!config_path.empty()) {
      cfg.config_path = config_path;
      cfg.config = io::read_json(config_path);
    }
    const auto files = run(cfg);
    nlohmann::json done = {{"command", cfg.command}, {"artifacts", nlohmann::json::array()}};
    for (const auto& f : files) done["artifacts"].push_back(f.string());
    std::cout << done.dump() << "\n";
    return exit_ok;
  } catch (const std::exception& e) {
    std::cerr << error_json(e).dump() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace panda::cli
