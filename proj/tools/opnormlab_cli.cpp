#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opnormlab/cli.hpp"

namespace {

using opnormlab::cli::RunConfig;

bool parse_dims(const std::string& text, RunConfig& cfg) {
  std::size_t left = 0, right = 0;
  if (std::sscanf(text.c_str(), "%zu,%zu", &left, &right) != 2 || left == 0 || right == 0)
    return false;
  cfg.dim_left = left;
  cfg.dim_right = right;
  return true;
}

// Values from --config fill in flags the user did not pass on the command line.
void apply_config_file(const nlohmann::json& j, CLI::App* sub, RunConfig& cfg,
                       std::string& dims_text) {
  const auto unset = [sub](const std::string& flag) {
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    return opt != nullptr && opt->count() == 0;
  };
  if (j.contains("seed") && unset("--seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out") && unset("--out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("format") && unset("--format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("nmax") && unset("--nmax")) cfg.nmax = j["nmax"].get<std::size_t>();
  if (j.contains("d") && unset("--d")) cfg.d = j["d"].get<std::size_t>();
  if (j.contains("dims") && unset("--dims")) {
    if (j["dims"].is_array() && j["dims"].size() == 2)
      dims_text = std::to_string(j["dims"][0].get<std::size_t>()) + "," +
                  std::to_string(j["dims"][1].get<std::size_t>());
    else
      dims_text = j["dims"].get<std::string>();
  }
  if (j.contains("pairs") && unset("--pairs")) cfg.pair_count = j["pairs"].get<std::size_t>();
  if (j.contains("count") && unset("--count")) cfg.count = j["count"].get<std::size_t>();
  if (j.contains("restarts") && unset("--restarts"))
    cfg.restarts = j["restarts"].get<std::size_t>();
  if (j.contains("map") && unset("--map")) cfg.map = j["map"].get<std::string>();
  if (j.contains("dim") && unset("--dim")) cfg.dim = j["dim"].get<std::size_t>();
  if (j.contains("input") && unset("--input")) cfg.input = j["input"].get<std::string>();
  if (j.contains("algebra") && unset("--algebra"))
    cfg.algebra = j["algebra"].get<std::string>();
  if (j.contains("degree") && unset("--degree")) cfg.degree = j["degree"].get<std::size_t>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opnormlab: finite-dimensional operator-space tensor norm laboratory"};
  app.set_version_flag("--version", opnormlab::cli::kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.format.clear();  // resolved after parsing: csv for gap, json otherwise
  std::string dims_text = "3,3";
  std::string config_path;

  CLI::App* gap = app.add_subcommand("gap", "Haagerup-vs-min gap table for the y_n family");
  gap->add_option("--nmax", cfg.nmax, "largest n (rows run n = 2..nmax)");
  gap->add_option("--d", cfg.d, "fiber dimension of the isometry family");

  CLI::App* interp = app.add_subcommand(
      "interp", "Riesz-Thorin midpoint checks on seeded random superoperators");
  interp->add_option("--dims", dims_text, "input dims as n,m");
  interp->add_option("--pairs", cfg.pair_count, "pairs per map");
  interp->add_option("--count", cfg.count, "number of maps");
  interp->add_option("--restarts", cfg.restarts, "seesaw restarts before escalation");

  CLI::App* diamond = app.add_subcommand("diamond", "diamond norm of a named map");
  diamond->add_option("--map", cfg.map, "transpose|identity|random");
  diamond->add_option("--dim", cfg.dim, "matrix dimension d");
  diamond->add_option("--pairs", cfg.pair_count, "pairs for --map random");

  CLI::App* theorem1 =
      app.add_subcommand("theorem1", "min-vs-projective certificates for tensor elements");
  theorem1->add_option("--input", cfg.input, "TensorElement JSON file (default: seeded batch)");
  theorem1->add_option("--count", cfg.count, "batch size without --input");

  CLI::App* cocycle = app.add_subcommand("cocycle", "wedge 2-cocycle suite");
  cocycle->add_option("--algebra", cfg.algebra, "algebra family (truncpoly)");
  cocycle->add_option("--degree", cfg.degree, "truncation degree N");

  CLI::App* selftest = app.add_subcommand("sdp-selftest", "SDP solver example suite");
  CLI::App* all = app.add_subcommand("all", "every command with its defaults, one report");

  for (CLI::App* sub : {gap, interp, diamond, theorem1, cocycle, selftest, all}) {
    sub->add_option("--seed", cfg.seed, "root RNG seed");
    sub->add_option("--out", cfg.out, "report path (default stdout)");
    sub->add_option("--format", cfg.format, "json|csv");
    sub->add_option("--config", config_path, "JSON config file; explicit flags win");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "usage error: cannot open --config file: " << config_path << "\n";
      return 2;
    }
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "usage error: bad --config JSON: " << e.what() << "\n";
      return 2;
    }
    apply_config_file(j, sub, cfg, dims_text);
  }
  if (!parse_dims(dims_text, cfg)) {
    std::cerr << "usage error: --dims expects n,m with positive entries\n";
    return 2;
  }
  if (cfg.format.empty()) cfg.format = cfg.command == "gap" ? "csv" : "json";

  return opnormlab::cli::run_and_write(cfg);
}
