#include <cstdint>
#include <iostream>
#include <string>

#include "heatflow/runner.hpp"

#include <CLI11.hpp>

namespace {

struct Flags {
  heatflow::RunConfig config;
  std::string config_path;
  std::string kernel = "gaussian";
  std::string band = "0:0";
  double t0 = 0.0;
  double t_max = 0.0;
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--input", flags.config.input, "CSV file with one point per row");
  cmd->add_option("--generator", flags.config.generator,
                  "Synthetic dataset: noisy1d or circles2d");
  cmd->add_option("--seed", flags.config.seed, "Generator seed");
  cmd->add_option("--kernel", flags.kernel, "Kernel family: gaussian or exponential")
      ->check(CLI::IsMember({"gaussian", "exponential"}));
  cmd->add_option("--t0", flags.t0, "First time value (default: from the grid spacing)");
  cmd->add_option("--t-max", flags.t_max,
                  "Last time value (default: from the dataset diameter)");
  cmd->add_option("--slices", flags.config.slices, "Number of time slices");
  cmd->add_option("--grid-res", flags.config.grid_res,
                  "Grid nodes per axis (default: 1024 in 1D, 128 otherwise)");
  cmd->add_option("--path-samples", flags.config.path_samples,
                  "Samples along each cost path");
  cmd->add_option("--threshold", flags.config.threshold,
                  "Minimal local score for the driver to emit a cluster");
  cmd->add_option("--band", flags.band, "Local score entropy band, s1:s2");
  cmd->add_option("--out", flags.config.out_dir, "Output directory");
  cmd->add_option("--config", flags.config_path,
                  "Flat key=value config file; flags override it");
}

// "s1:s2"
void parse_band(const std::string& text, heatflow::RunConfig& config) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("band must be given as s1:s2");
  }
  config.band_lo = std::stod(text.substr(0, colon));
  config.band_hi = std::stod(text.substr(colon + 1));
}

// Defaults, then the config file, then whatever was set on the command line.
heatflow::RunConfig resolve(const CLI::App* cmd, const Flags& flags) {
  heatflow::RunConfig config;
  if (!flags.config_path.empty()) {
    for (const auto& [key, value] : heatflow::read_config_file(flags.config_path)) {
      if (!heatflow::apply_config_entry(config, key, value)) {
        throw std::invalid_argument("unknown config key: " + key);
      }
    }
  }
  if (cmd->count("--input")) config.input = flags.config.input;
  if (cmd->count("--generator")) config.generator = flags.config.generator;
  if (cmd->count("--seed")) config.seed = flags.config.seed;
  if (cmd->count("--kernel")) {
    config.kernel = heatflow::kernel_family_from_name(flags.kernel);
  }
  if (cmd->count("--t0")) config.t0 = flags.t0;
  if (cmd->count("--t-max")) config.t_max = flags.t_max;
  if (cmd->count("--slices")) config.slices = flags.config.slices;
  if (cmd->count("--grid-res")) config.grid_res = flags.config.grid_res;
  if (cmd->count("--path-samples")) config.path_samples = flags.config.path_samples;
  if (cmd->count("--threshold")) config.threshold = flags.config.threshold;
  if (cmd->count("--band")) parse_band(flags.band, config);
  if (cmd->count("--out")) config.out_dir = flags.config.out_dir;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat-flow stability clustering"};
  app.require_subcommand(1);

  Flags run_flags;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Run the full flow, stability and driver pipeline");
  add_common_flags(run_cmd, run_flags);

  std::string gen_name;
  std::uint64_t gen_seed = 42;
  std::string gen_out = ".";
  std::string gen_config;
  CLI::App* gen_cmd = app.add_subcommand("generate", "Write a synthetic dataset");
  gen_cmd->add_option("--generator", gen_name, "noisy1d or circles2d");
  gen_cmd->add_option("--seed", gen_seed, "Generator seed");
  gen_cmd->add_option("--out", gen_out, "Output directory");
  gen_cmd->add_option("--config", gen_config,
                      "Flat key=value config file; flags override it");

  Flags scan_flags;
  CLI::App* scan_cmd =
      app.add_subcommand("wgll-scan", "Scan the WGLL entropy over the time grid");
  add_common_flags(scan_cmd, scan_flags);

  Flags field_flags;
  double field_t = 0.0;
  CLI::App* field_cmd =
      app.add_subcommand("field", "Sample the potential at one time as CSV");
  add_common_flags(field_cmd, field_flags);
  field_cmd->add_option("--t", field_t, "Time at which to sample the potential")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      heatflow::run_pipeline(resolve(run_cmd, run_flags));
    } else if (gen_cmd->parsed()) {
      if (!gen_config.empty()) {
        heatflow::RunConfig from_file;
        for (const auto& [key, value] : heatflow::read_config_file(gen_config)) {
          if (!heatflow::apply_config_entry(from_file, key, value)) {
            throw std::invalid_argument("unknown config key: " + key);
          }
        }
        if (!gen_cmd->count("--generator")) gen_name = from_file.generator;
        if (!gen_cmd->count("--seed")) gen_seed = from_file.seed;
        if (!gen_cmd->count("--out")) gen_out = from_file.out_dir;
      }
      if (gen_name.empty()) {
        throw std::invalid_argument("generate needs --generator");
      }
      heatflow::run_generate(gen_name, gen_seed, gen_out);
    } else if (scan_cmd->parsed()) {
      heatflow::run_wgll_scan(resolve(scan_cmd, scan_flags));
    } else if (field_cmd->parsed()) {
      heatflow::run_field_export(resolve(field_cmd, field_flags), field_t);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
