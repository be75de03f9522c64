// wxbench: fetch, analyze and benchmark daily POWER weather data.
#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wxbench/cli/commands.hpp"
#include "wxbench/cli/run_config.hpp"
#include "wxbench/core/errors.hpp"

namespace {

using wxbench::cli::RunConfig;

struct Overrides {
  std::string config_path;
  std::optional<std::string> target, seed, offline, out, lag, input;
  std::vector<std::string> sets;
};

RunConfig resolve(const Overrides& o) {
  RunConfig config;
  if (!o.config_path.empty()) config = wxbench::cli::load_config(o.config_path);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw wxbench::InvalidArgument("--set expects key=value, got '" + kv + "'");
    wxbench::cli::set_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  const auto apply = [&](const char* key, const std::optional<std::string>& v) {
    if (v) wxbench::cli::set_config_value(config, key, *v);
  };
  apply("target", o.target);
  apply("seed", o.seed);
  apply("offline", o.offline);
  apply("out", o.out);
  apply("lag", o.lag);
  apply("input", o.input);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Daily weather classification benchmark on NASA POWER data"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--config", o.config_path, "key = value run configuration file");
  app.add_option("--set", o.sets, "override one configuration key (key=value), repeatable");
  app.add_option("--out", o.out, "output directory");

  auto* fetch = app.add_subcommand("fetch", "download (or read --offline) and clean the daily series");
  fetch->add_option("--offline", o.offline, "raw POWER CSV to use instead of the network");

  auto* analyze = app.add_subcommand("analyze", "correlations, densities and monthly profiles");
  analyze->add_option("--input", o.input, "cleaned CSV (default <out>/power_clean.csv)");

  auto* bench = app.add_subcommand("benchmark", "train and score the six classifiers");
  bench->add_option("--input", o.input, "cleaned CSV (default <out>/power_clean.csv)");
  bench->add_option("--target", o.target, "precipitation or temperature");
  bench->add_option("--seed", o.seed, "global seed");
  bench->add_option("--lag", o.lag, "days between covariates and target");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : wxbench::cli::kExitUsage;
  }

  try {
    const auto config = resolve(o);
    if (fetch->parsed()) {
      wxbench::cli::cmd_fetch(config, std::cout);
    } else if (analyze->parsed()) {
      wxbench::cli::cmd_analyze(config, std::cout);
    } else {
      wxbench::cli::cmd_benchmark(config, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return wxbench::cli::exit_code_for(e);
  }
  return wxbench::cli::kExitOk;
}
