#pragma once

// Command-line driver: run, sweep, path. Exit codes are 0 on success, 1 for
// configuration errors (bad flags, bad config, unknown keys), 2 otherwise.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pension_mc/engine.hpp"
#include "pension_mc/report.hpp"
#include "pension_mc/scenario.hpp"

namespace pension_mc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

inline Scenario load_scenario(const std::string& path) {
  if (path.empty()) return parse_scenario("");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_scenario(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

namespace detail {

inline std::vector<std::string> split_values(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = csv.find(',', pos);
    const auto item = trim(std::string_view(csv).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (item.empty()) throw ConfigError("empty entry in --values '" + csv + "'");
    out.emplace_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::string file_safe(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')) c = '_';
  return out;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Monte Carlo risk engine for defined-contribution pensions", "pension_mc"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = 0;

  auto* run = app.add_subcommand("run", "simulate all paths and write summary.json");
  std::optional<std::int64_t> paths_override;
  std::optional<std::uint64_t> seed_override;
  std::vector<std::int64_t> detail_indices;
  bool write_paths_table = false;
  run->add_option("--config", config_path, "scenario file (key = value)");
  run->add_option("--paths", paths_override, "override num_paths");
  run->add_option("--seed", seed_override, "override seed");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--detail", detail_indices, "path indices to write per-year CSVs for");
  run->add_flag("--paths-table", write_paths_table, "also write paths.csv with every outcome");
  run->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* sw = app.add_subcommand("sweep", "run one variant per value of a parameter");
  std::string param;
  std::string values;
  sw->add_option("--config", config_path, "scenario file (key = value)");
  sw->add_option("--param", param, "scenario key to vary")->required();
  sw->add_option("--values", values, "comma-separated values")->required();
  sw->add_option("--out", out_dir, "output directory");
  sw->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* path_cmd = app.add_subcommand("path", "print one path's per-year CSVs to stdout");
  std::int64_t index = 0;
  path_cmd->add_option("--config", config_path, "scenario file (key = value)");
  path_cmd->add_option("--index", index, "path index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Scenario scenario = load_scenario(config_path);
    const RunOptions options{threads, kDefaultBinCount};
    const std::filesystem::path dir(out_dir);

    if (*run) {
      if (paths_override) scenario.num_paths = *paths_override;
      if (seed_override) scenario.master_seed = *seed_override;
      validate(scenario);
      for (auto k : detail_indices)
        if (k < 0 || k >= scenario.num_paths)
          throw ConfigError("--detail index " + std::to_string(k) + " outside [0, " +
                            std::to_string(scenario.num_paths) + ")");
      std::filesystem::create_directories(dir);
      const auto result = run_scenario(scenario, options);
      write_file_atomic(dir / "summary.json", summary_json(scenario, result));
      write_file_atomic(dir / "histogram_final_corpus.csv", histogram_csv(result.final_corpus.histogram));
      write_file_atomic(dir / "histogram_shortfall_years.csv",
                        histogram_csv(result.shortfall_years.histogram));
      write_file_atomic(dir / "histogram_pv_support.csv", histogram_csv(result.pv_support.histogram));
      if (write_paths_table) write_file_atomic(dir / "paths.csv", outcomes_csv(result.outcomes));
      for (auto k : detail_indices) {
        const auto traced = run_path(scenario, k, true);
        const std::string stem = "path_" + std::to_string(k);
        write_file_atomic(dir / (stem + "_career.csv"), career_csv(traced.detail->career));
        write_file_atomic(dir / (stem + "_retirement.csv"), retirement_csv(traced.detail->retirement));
      }
      out << "wrote " << (dir / "summary.json").string() << " (" << scenario.num_paths
          << " paths, mean final corpus " << detail::format_double(result.final_corpus.mean) << ")\n";
    } else if (*sw) {
      std::vector<Override> overrides;
      for (auto& v : detail::split_values(values)) overrides.push_back({param, v});
      std::filesystem::create_directories(dir);
      const auto variants = sweep(scenario, overrides, options);
      for (std::size_t i = 0; i < variants.size(); ++i) {
        const auto& v = variants[i];
        const std::string name = "summary_" + std::to_string(i) + "_" + detail::file_safe(param) +
                                 "_" + detail::file_safe(overrides[i].value) + ".json";
        write_file_atomic(dir / name, summary_json(v.scenario, v.result));
      }
      write_file_atomic(dir / "comparison.csv", comparison_csv(variants));
      out << comparison_csv(variants);
    } else if (*path_cmd) {
      const auto traced = run_path(scenario, index, true);
      out << career_csv(traced.detail->career) << '\n' << retirement_csv(traced.detail->retirement);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace pension_mc
