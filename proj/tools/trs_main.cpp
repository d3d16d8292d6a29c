#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trs/cli_ops.hpp"
#include "trs/csv.hpp"

namespace {

// Flag overrides are folded into the same section.key=value stream as --set,
// so precedence is simply: config file, then --set, then named flags.
struct FlagOverride {
  std::string flag;
  std::string key;
  std::string value;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(trs::kEngineName) +
               " - multimodal ridesharing-transit matching"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(trs::kEngineName) + " " +
                                        trs::kEngineVersion);

  std::string config_path;
  std::vector<std::string> sets;
  app.add_option("-c,--config", config_path, "sectioned key=value run config");
  app.add_option("--set", sets,
                 "config override, section.key=value (repeatable)");

  std::vector<FlagOverride> named = {
      {"--road-nodes", "paths.road_nodes", ""},
      {"--road-links", "paths.road_links", ""},
      {"--gtfs", "paths.gtfs", ""},
      {"--network", "paths.network", ""},
      {"--requests", "paths.requests", ""},
      {"--matches", "paths.matches", ""},
      {"--out", "paths.out_dir", ""},
      {"--date", "build.service_date", ""},
      {"--seed", "scenario.seed", ""},
      {"--objective", "match.objective", ""},
      {"--mode", "match.mode", ""},
      {"--variant", "match.variant", ""},
      {"--threads", "match.threads", ""},
  };
  for (auto& f : named) {
    app.add_option(f.flag, f.value, "sets " + f.key);
  }

  CLI::App* build = app.add_subcommand("build-network",
                                       "expand a GTFS feed into the transit "
                                       "graph and save it");
  CLI::App* match = app.add_subcommand("match", "static feasibility and "
                                                "assignment run");
  CLI::App* simulate = app.add_subcommand("simulate", "rolling-horizon "
                                                      "dynamic run");
  CLI::App* sweep = app.add_subcommand("sweep", "repeat the static run "
                                                "across one scenario dimension");
  CLI::App* validate = app.add_subcommand("validate", "re-check a match table "
                                                      "against its inputs");

  std::string dimension;
  std::string values_text;
  sweep->add_option("--dim", dimension,
                    "rider_flex|driver_flex|participation|ratio")
      ->required();
  sweep->add_option("--values", values_text, "comma-separated value list")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    std::vector<std::string> overrides = sets;
    for (const auto& f : named) {
      if (!f.value.empty()) overrides.push_back(f.key + "=" + f.value);
    }
    trs::RunConfig cfg = config_path.empty()
                             ? trs::config_from_overrides(overrides)
                             : trs::load_config(config_path, overrides);

    if (app.got_subcommand(build)) return trs::cmd_build_network(cfg, std::cout);
    if (app.got_subcommand(match)) return trs::cmd_match(cfg, std::cout);
    if (app.got_subcommand(simulate)) return trs::cmd_simulate(cfg, std::cout);
    if (app.got_subcommand(validate)) return trs::cmd_validate(cfg, std::cout);
    if (app.got_subcommand(sweep)) {
      std::vector<double> values;
      for (const std::string& part : trs::split_delimited(values_text, ',')) {
        try {
          values.push_back(std::stod(part));
        } catch (const std::exception&) {
          throw trs::InputError("bad sweep value '" + part + "'");
        }
      }
      return trs::cmd_sweep(cfg, dimension, values, std::cout);
    }
    throw trs::InputError("no subcommand");
  } catch (const trs::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const trs::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected failure: " << e.what() << "\n";
    return 2;
  }
}
