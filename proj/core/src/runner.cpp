#include "heatflow/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "heatflow/chronograph.hpp"
#include "heatflow/csv.hpp"
#include "heatflow/format.hpp"
#include "heatflow/generators.hpp"

#include <json.hpp>

namespace heatflow {

namespace {

struct LoadedData {
  Dataset dataset;
  std::vector<int> labels;  // empty for CSV input
  std::string source;
};

LoadedData load_input(const RunConfig& config) {
  const bool has_input = !config.input.empty();
  const bool has_generator = !config.generator.empty();
  if (has_input == has_generator) {
    throw std::invalid_argument("exactly one of input and generator must be set");
  }
  if (has_input) {
    return LoadedData{load_csv(config.input), {}, config.input};
  }
  GeneratedDataset gen = generate(config.generator, config.seed);
  return LoadedData{std::move(gen.dataset), std::move(gen.labels),
                    "generator:" + gen.name};
}

void validate(const RunConfig& config) {
  if (config.slices < 2) {
    throw std::invalid_argument("slice count must be at least 2");
  }
  if (!(config.threshold > 0.0) || config.threshold > 1.0) {
    throw std::invalid_argument("threshold must lie in (0, 1]");
  }
  if (config.band_lo > config.band_hi) {
    throw std::invalid_argument("entropy band requires s1 <= s2");
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << text;
}

struct Bounds {
  double t0;
  double t_max;
  bool automatic;
};

struct Prepared {
  SamplingGrid grid;
  Bounds bounds;
};

// The grid margin is sized from the largest time in play, so the upper bound
// is resolved before the grid and the lower bound from the grid spacing.
Prepared prepare(const Dataset& dataset, const Kernel& kernel,
                 const RunConfig& config) {
  const std::size_t res =
      config.grid_res ? config.grid_res : default_grid_resolution(dataset.dim());
  const bool automatic = !config.t0.has_value() || !config.t_max.has_value();

  double t_max;
  if (config.t_max.has_value()) {
    t_max = *config.t_max;
    if (!(t_max > 0.0)) throw std::domain_error("nonpositive time");
  } else {
    const double diameter = dataset.diameter();
    if (diameter <= 0.0) throw std::domain_error("zero diameter");
    t_max = (diameter / 2.0) / kernel.base_std(dataset.dim());
  }

  SamplingGrid grid = SamplingGrid::cover(dataset, kernel, t_max, res);

  double t0;
  if (config.t0.has_value()) {
    t0 = *config.t0;
    if (!(t0 > 0.0)) throw std::domain_error("nonpositive time");
  } else {
    t0 = (2.0 * grid.max_spacing()) / kernel.base_std(dataset.dim());
  }
  if (!(t0 < t_max)) {
    throw std::domain_error("degenerate time range");
  }
  return Prepared{std::move(grid), Bounds{t0, t_max, automatic}};
}

std::string series_csv(const FlowResult& flow) {
  std::string out = "k,t,M,S\n";
  for (std::size_t k = 0; k < flow.times.size(); ++k) {
    out += std::to_string(k);
    out += ',';
    out += format_double(flow.times.at(k));
    out += ',';
    out += std::to_string(flow.m_series[k]);
    out += ',';
    out += format_double(flow.s_series[k]);
    out += '\n';
  }
  return out;
}

std::string stability_csv(const FlowResult& flow, std::size_t horizon,
                          double band_lo, double band_hi) {
  const StabilityTable full =
      stability_table(flow, flow.last_index(), band_lo, band_hi);
  const StabilityTable truncated = stability_table(flow, horizon, band_lo, band_hi);
  std::string out = "n,b,b_banded,b_consolidated,b_banded_consolidated\n";
  for (std::size_t n = 1; n <= flow.point_count; ++n) {
    out += std::to_string(n);
    out += ',';
    out += format_double(full.scores[n]);
    out += ',';
    out += format_double(full.banded[n - 1].value);
    out += ',';
    out += format_double(truncated.scores[n]);
    out += ',';
    out += format_double(truncated.banded[n - 1].value);
    out += '\n';
  }
  return out;
}

std::string clusters_csv(const Dataset& dataset, const DriverResult& driver) {
  std::vector<int> labels(dataset.size(), -1);
  std::vector<double> scores(dataset.size(), -1.0);
  for (std::size_t c = 0; c < driver.clusters.size(); ++c) {
    const StableCluster& cluster = driver.clusters[c];
    for (std::size_t p : cluster.points) {
      labels[p] = static_cast<int>(c);
      scores[p] = cluster.scored ? cluster.score : -1.0;
    }
  }
  std::string out = "point,label,score\n";
  for (std::size_t p = 0; p < dataset.size(); ++p) {
    out += std::to_string(p);
    out += ',';
    out += std::to_string(labels[p]);
    out += ',';
    out += format_double(scores[p]);
    out += '\n';
  }
  return out;
}

std::string wgll_csv(const WgllScan& scan) {
  std::string out = "t,entropy\n";
  for (std::size_t k = 0; k < scan.times.size(); ++k) {
    out += format_double(scan.times[k]);
    out += ',';
    out += format_double(scan.values[k]);
    out += '\n';
  }
  return out;
}

std::string dataset_csv(const Dataset& dataset) {
  std::string out;
  for (const Vec& p : dataset.points()) {
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (a) out += ',';
      out += format_double(p[a]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json config_json(const RunConfig& config) {
  nlohmann::ordered_json j;
  j["input"] = config.input;
  j["generator"] = config.generator;
  j["seed"] = config.seed;
  j["kernel"] = std::string(kernel_family_name(config.kernel));
  if (config.t0.has_value()) {
    j["t0"] = *config.t0;
  } else {
    j["t0"] = nullptr;
  }
  if (config.t_max.has_value()) {
    j["t_max"] = *config.t_max;
  } else {
    j["t_max"] = nullptr;
  }
  j["slices"] = config.slices;
  j["grid_res"] = config.grid_res;
  j["path_samples"] = config.path_samples;
  j["threshold"] = config.threshold;
  j["band"] = {config.band_lo, config.band_hi};
  j["out"] = config.out_dir;
  return j;
}

nlohmann::ordered_json geometry_json() {
  const CirclesGeometry geo = circles2d_geometry();
  nlohmann::ordered_json j;
  j["distribution"] = "uniform";
  j["large_disc"] = {{"center", {geo.large_cx, geo.large_cy}}, {"radius", geo.large_r}};
  j["small_disc_1"] = {{"center", {geo.small1_cx, geo.small1_cy}},
                       {"radius", geo.small1_r}};
  j["small_disc_2"] = {{"center", {geo.small2_cx, geo.small2_cy}},
                       {"radius", geo.small2_r}};
  return j;
}

}  // namespace

void run_pipeline(const RunConfig& config) {
  validate(config);
  const LoadedData data = load_input(config);
  const Kernel kernel(config.kernel);
  const Prepared prepared = prepare(data.dataset, kernel, config);

  const TimeGrid times =
      TimeGrid::uniform(prepared.bounds.t0, prepared.bounds.t_max, config.slices);
  const FlowResult flow =
      run_flow(data.dataset, kernel, times, prepared.grid, config.path_samples);

  const std::optional<std::size_t> consolidation = consolidation_time(flow);
  const std::size_t horizon = consolidation.value_or(flow.last_index());

  DriverOptions driver_options;
  driver_options.grid_res = config.grid_res;
  driver_options.slices = config.slices;
  driver_options.samples = config.path_samples;
  driver_options.threshold = config.threshold;
  driver_options.band_lo = config.band_lo;
  driver_options.band_hi = config.band_hi;
  const DriverResult driver =
      stable_cluster_driver(data.dataset, kernel, driver_options);

  const WgllScan scan = wgll_scan(data.dataset, kernel, times);

  const std::filesystem::path out_dir(config.out_dir);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "series.csv", series_csv(flow));
  write_file(out_dir / "stability.csv",
             stability_csv(flow, horizon, config.band_lo, config.band_hi));
  const Chronodendrogram tree = build_chronodendrogram(flow);
  write_file(out_dir / "chronodendrogram.json", export_json(tree));
  write_file(out_dir / "chronodendrogram.dot", export_dot(tree));
  write_file(out_dir / "clusters.csv", clusters_csv(data.dataset, driver));
  write_file(out_dir / "wgll.csv", wgll_csv(scan));

  nlohmann::ordered_json summary;
  summary["config"] = config_json(config);
  summary["dataset"] = {{"source", data.source},
                        {"points", data.dataset.size()},
                        {"dim", data.dataset.dim()}};
  summary["time_bounds"] = {{"t0", prepared.bounds.t0},
                            {"t_max", prepared.bounds.t_max},
                            {"auto", prepared.bounds.automatic}};
  if (consolidation.has_value()) {
    summary["consolidation"] = {{"index", *consolidation},
                                {"time", flow.times.at(*consolidation)}};
  } else {
    summary["consolidation"] = nullptr;
  }
  if (!driver.rounds.empty() && driver.rounds.front().chosen_n.has_value()) {
    summary["chosen_n"] = *driver.rounds.front().chosen_n;
  } else {
    summary["chosen_n"] = nullptr;
  }
  summary["driver_clusters"] = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < driver.clusters.size(); ++c) {
    const StableCluster& cluster = driver.clusters[c];
    nlohmann::ordered_json entry;
    entry["label"] = c;
    entry["size"] = cluster.points.size();
    entry["scored"] = cluster.scored;
    entry["score"] = cluster.scored ? nlohmann::ordered_json(cluster.score)
                                    : nlohmann::ordered_json(nullptr);
    entry["anchor_time"] = cluster.scored
                               ? nlohmann::ordered_json(cluster.anchor_time)
                               : nlohmann::ordered_json(nullptr);
    summary["driver_clusters"].push_back(std::move(entry));
  }
  summary["wgll_minima"] = nlohmann::ordered_json::array();
  for (std::size_t k : scan.minima) {
    summary["wgll_minima"].push_back({{"index", k}, {"t", scan.times[k]}});
  }
  if (config.generator == "circles2d") {
    summary["generator_assumptions"] = geometry_json();
  } else if (config.generator == "noisy1d") {
    summary["generator_assumptions"] = {{"distribution", "uniform"},
                                        {"blocks", {{-0.9, -0.7}, {-0.3, 0.2}, {0.7, 0.8}}},
                                        {"noise_range", {-1.0, 1.0}},
                                        {"noise_points", 70}};
  }
  write_file(out_dir / "run_summary.json", summary.dump(1) + "\n");
}

void run_generate(const std::string& generator, std::uint64_t seed,
                  const std::string& out_dir) {
  const GeneratedDataset gen = generate(generator, seed);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "dataset.csv", dataset_csv(gen.dataset));
  std::string labels = "point,label\n";
  for (std::size_t p = 0; p < gen.labels.size(); ++p) {
    labels += std::to_string(p);
    labels += ',';
    labels += std::to_string(gen.labels[p]);
    labels += '\n';
  }
  write_file(dir / "labels.csv", labels);
}

namespace {

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid value for " + key + ": " + value);
  }
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid value for " + key + ": " + value);
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file " + path);
  }
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view text = trim_view(line);
    if (text.empty() || text.front() == '#') continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw std::runtime_error("config line " + std::to_string(row) +
                               " is not key=value");
    }
    entries.emplace_back(std::string(trim_view(text.substr(0, eq))),
                         std::string(trim_view(text.substr(eq + 1))));
  }
  return entries;
}

bool apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "input") {
    config.input = value;
  } else if (key == "generator") {
    config.generator = value;
  } else if (key == "seed") {
    config.seed = parse_unsigned(key, value);
  } else if (key == "kernel") {
    config.kernel = kernel_family_from_name(value);
  } else if (key == "t0") {
    config.t0 = parse_number(key, value);
  } else if (key == "t-max") {
    config.t_max = parse_number(key, value);
  } else if (key == "slices") {
    config.slices = parse_unsigned(key, value);
  } else if (key == "grid-res") {
    config.grid_res = parse_unsigned(key, value);
  } else if (key == "path-samples") {
    config.path_samples = parse_unsigned(key, value);
  } else if (key == "threshold") {
    config.threshold = parse_number(key, value);
  } else if (key == "band") {
    const std::size_t colon = value.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("invalid value for band: " + value);
    }
    config.band_lo = parse_number(key, value.substr(0, colon));
    config.band_hi = parse_number(key, value.substr(colon + 1));
  } else if (key == "out") {
    config.out_dir = value;
  } else {
    return false;
  }
  return true;
}

void run_wgll_scan(const RunConfig& config) {
  validate(config);
  const LoadedData data = load_input(config);
  const Kernel kernel(config.kernel);
  const Prepared prepared = prepare(data.dataset, kernel, config);
  const TimeGrid times =
      TimeGrid::uniform(prepared.bounds.t0, prepared.bounds.t_max, config.slices);
  const WgllScan scan = wgll_scan(data.dataset, kernel, times);
  const std::filesystem::path out_dir(config.out_dir);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "wgll.csv", wgll_csv(scan));
}

void run_field_export(const RunConfig& config, double t) {
  if (!(t > 0.0)) {
    throw std::domain_error("nonpositive time");
  }
  const LoadedData data = load_input(config);
  const Kernel kernel(config.kernel);
  const std::size_t res = config.grid_res
                              ? config.grid_res
                              : default_grid_resolution(data.dataset.dim());
  const double t_cover = std::max(t, config.t_max.value_or(t));
  const SamplingGrid grid = SamplingGrid::cover(data.dataset, kernel, t_cover, res);
  const PotentialField field = eval_field(data.dataset, kernel, t, grid);

  std::string out;
  for (std::size_t a = 0; a < grid.dim(); ++a) {
    out += "x" + std::to_string(a) + ",";
  }
  out += "value\n";
  std::vector<double> coords(grid.dim());
  for (std::size_t node = 0; node < grid.node_count(); ++node) {
    grid.node_coords(node, coords);
    for (double c : coords) {
      out += format_double(c);
      out += ',';
    }
    out += format_double(field.values[node]);
    out += '\n';
  }
  const std::filesystem::path out_dir(config.out_dir);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "field.csv", out);
}

}  // namespace heatflow
