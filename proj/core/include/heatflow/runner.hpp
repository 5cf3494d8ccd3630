#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heatflow/kernel.hpp"

namespace heatflow {

struct RunConfig {
  std::string input;      // CSV path; mutually exclusive with generator
  std::string generator;  // noisy1d | circles2d
  std::uint64_t seed = 42;
  KernelFamily kernel = KernelFamily::gaussian;
  std::optional<double> t0;     // auto bounds when absent
  std::optional<double> t_max;  // auto bounds when absent
  std::size_t slices = 51;
  std::size_t grid_res = 0;  // 0 picks the default for the dimension
  std::size_t path_samples = 256;
  double threshold = 0.4;
  double band_lo = 0.0;
  double band_hi = 0.0;
  std::string out_dir = ".";
};

// Full pipeline: flow, stability table, chronodendrogram, driver, WGLL scan.
// Writes series.csv, stability.csv, chronodendrogram.json, chronodendrogram.dot,
// clusters.csv, wgll.csv and run_summary.json into out_dir. Reruns with an
// identical config produce byte-identical artifacts.
void run_pipeline(const RunConfig& config);

// Writes dataset.csv (and labels.csv for generated data) into out_dir.
void run_generate(const std::string& generator, std::uint64_t seed,
                  const std::string& out_dir);

// Flat key=value config entries in file order; blank lines and '#' comments
// are skipped.
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path);

// Applies one entry whose key names a command-line flag; false when the key
// is unknown, throws when the value does not parse.
bool apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

// Standalone scan; writes wgll.csv into out_dir.
void run_wgll_scan(const RunConfig& config);

// Samples the potential at one time and writes field.csv (node coordinates
// and value, one node per row) into out_dir.
void run_field_export(const RunConfig& config, double t);

}  // namespace heatflow
