#include "heatflow/stability.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

namespace heatflow {

namespace {

constexpr double kBandEps = 1e-12;

void check_horizon(const FlowResult& flow, std::size_t horizon) {
  if (horizon > flow.last_index()) {
    throw std::out_of_range("horizon exceeds the flow");
  }
}

}  // namespace

FlowResult run_flow(const Dataset& dataset, const Kernel& kernel,
                    const TimeGrid& times, const SamplingGrid& grid,
                    std::size_t samples) {
  FlowResult flow{times, {}, {}, {}, dataset.size()};
  const std::size_t count = times.size();
  flow.clusterings.resize(count);

  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) {
      flow.clusterings[k] =
          cluster_at_time(dataset, kernel, times.at(k), grid, samples, k);
    }
  } else {
    // Interleaved slice ownership; each slot is written by exactly one worker.
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&, w]() {
        for (std::size_t k = w; k < count; k += workers) {
          flow.clusterings[k] =
              cluster_at_time(dataset, kernel, times.at(k), grid, samples, k);
        }
      }));
    }
    for (auto& f : futures) f.get();
  }

  flow.m_series.resize(count);
  flow.s_series.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    flow.m_series[k] = flow.clusterings[k].cluster_count;
    flow.s_series[k] = smi(flow.clusterings[k]);
  }
  return flow;
}

double stability_score(const FlowResult& flow, std::size_t n) {
  return stability_score(flow, n, flow.last_index());
}

double stability_score(const FlowResult& flow, std::size_t n, std::size_t horizon) {
  if (n < 1) {
    throw std::invalid_argument("cluster count must be at least 1");
  }
  check_horizon(flow, horizon);
  std::size_t hits = 0;
  for (std::size_t k = 0; k <= horizon; ++k) {
    if (flow.m_series[k] == n) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(horizon + 1);
}

bool entropy_band_contains(double s1, double s2, double s) {
  if (s1 == s2) {
    return std::abs(s - s1) <= kBandEps;
  }
  if (s1 == 0.0 && std::abs(s) <= kBandEps) {
    return true;
  }
  return s1 < s && s <= s2;
}

double entropy_stability_score(const FlowResult& flow, std::size_t n, double s1,
                               double s2) {
  return entropy_stability_score(flow, n, s1, s2, flow.last_index());
}

double entropy_stability_score(const FlowResult& flow, std::size_t n, double s1,
                               double s2, std::size_t horizon) {
  if (n < 1) {
    throw std::invalid_argument("cluster count must be at least 1");
  }
  if (!(s1 < s2)) {
    throw std::invalid_argument("entropy band requires s1 < s2");
  }
  check_horizon(flow, horizon);
  std::size_t hits = 0;
  for (std::size_t k = 0; k <= horizon; ++k) {
    if (flow.m_series[k] == n && entropy_band_contains(s1, s2, flow.s_series[k])) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(horizon + 1);
}

std::optional<std::size_t> consolidation_time(const FlowResult& flow) {
  if (flow.m_series.empty() || flow.m_series.back() != 1) {
    return std::nullopt;
  }
  std::size_t k = flow.m_series.size() - 1;
  while (k > 0 && flow.m_series[k - 1] == 1) --k;
  return k;
}

StabilityTable stability_table(const FlowResult& flow, std::size_t horizon) {
  check_horizon(flow, horizon);
  StabilityTable table;
  table.horizon = horizon;
  table.scores.assign(flow.point_count + 1, 0.0);
  const double denom = static_cast<double>(horizon + 1);
  for (std::size_t k = 0; k <= horizon; ++k) {
    const std::size_t m = flow.m_series[k];
    if (m < table.scores.size()) {
      table.scores[m] += 1.0 / denom;
    }
  }
  return table;
}

StabilityTable stability_table(const FlowResult& flow, std::size_t horizon,
                               double s1, double s2) {
  StabilityTable table = stability_table(flow, horizon);
  std::vector<std::size_t> hits(flow.point_count + 1, 0);
  for (std::size_t k = 0; k <= horizon; ++k) {
    const std::size_t m = flow.m_series[k];
    if (m < hits.size() && entropy_band_contains(s1, s2, flow.s_series[k])) {
      ++hits[m];
    }
  }
  const double denom = static_cast<double>(horizon + 1);
  for (std::size_t n = 1; n < hits.size(); ++n) {
    table.banded.push_back(
        StabilityTable::Banded{n, s1, s2, static_cast<double>(hits[n]) / denom});
  }
  return table;
}

LocalAnalysis backtrack(const FlowResult& flow, std::span<const std::size_t> subset,
                        std::size_t k) {
  if (subset.empty()) {
    throw std::invalid_argument("empty subset");
  }
  check_horizon(flow, k);

  LocalAnalysis analysis;
  analysis.subset.assign(subset.begin(), subset.end());
  std::sort(analysis.subset.begin(), analysis.subset.end());
  analysis.subset.erase(
      std::unique(analysis.subset.begin(), analysis.subset.end()),
      analysis.subset.end());
  if (analysis.subset.back() >= flow.point_count) {
    throw std::out_of_range("subset index exceeds the dataset");
  }
  analysis.anchor = k;

  analysis.m_series.resize(k + 1);
  analysis.s_series.resize(k + 1);
  std::vector<std::size_t> counts;
  for (std::size_t slice = 0; slice <= k; ++slice) {
    const Clustering& clustering = flow.clusterings[slice];
    counts.assign(clustering.cluster_count, 0);
    for (std::size_t p : analysis.subset) {
      ++counts[static_cast<std::size_t>(clustering.assignment[p])];
    }
    std::vector<std::size_t> nonempty;
    for (std::size_t c : counts) {
      if (c > 0) nonempty.push_back(c);
    }
    analysis.m_series[slice] = nonempty.size();
    analysis.s_series[slice] = smi(nonempty, analysis.subset.size());
  }
  return analysis;
}

double local_entropy_stability_score(const LocalAnalysis& analysis, double s1,
                                     double s2, std::size_t horizon) {
  if (s1 > s2) {
    throw std::invalid_argument("entropy band requires s1 <= s2");
  }
  std::size_t hits = 0;
  for (double s : analysis.s_series) {
    if (entropy_band_contains(s1, s2, s)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(horizon + 1);
}

std::pair<double, double> auto_time_bounds(const Dataset& dataset,
                                           const SamplingGrid& grid,
                                           const Kernel& kernel) {
  const double diameter = dataset.diameter();
  if (diameter <= 0.0) {
    throw std::domain_error("zero diameter");
  }
  const double base = kernel.base_std(dataset.dim());
  const double t_max = (diameter / 2.0) / base;
  const double t0 = (2.0 * grid.max_spacing()) / base;
  if (!(t0 < t_max)) {
    throw std::domain_error("degenerate time range");
  }
  return {t0, t_max};
}

namespace {

StableCluster unscored_group(std::vector<std::size_t> points) {
  StableCluster group;
  group.points = std::move(points);
  std::sort(group.points.begin(), group.points.end());
  return group;
}

}  // namespace

DriverResult stable_cluster_driver(const Dataset& dataset, const Kernel& kernel,
                                   const DriverOptions& options) {
  if (!(options.threshold > 0.0) || options.threshold > 1.0) {
    throw std::invalid_argument("threshold must lie in (0, 1]");
  }
  if (options.slices < 2) {
    throw std::invalid_argument("driver needs at least two slices");
  }

  DriverResult result;
  std::vector<std::size_t> remaining(dataset.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

  const std::size_t res =
      options.grid_res ? options.grid_res : default_grid_resolution(dataset.dim());

  while (!remaining.empty()) {
    DriverRound round;
    round.points_in = remaining.size();

    std::vector<Vec> sub_points;
    sub_points.reserve(remaining.size());
    for (std::size_t p : remaining) sub_points.push_back(dataset.point(p));
    const Dataset sub(std::move(sub_points));

    double t0 = 0.0;
    double t_max = 0.0;
    std::optional<SamplingGrid> grid;
    try {
      t_max = (sub.diameter() / 2.0) / kernel.base_std(sub.dim());
      if (!(t_max > 0.0)) throw std::domain_error("zero diameter");
      grid.emplace(SamplingGrid::cover(sub, kernel, t_max, res));
      std::tie(t0, t_max) = auto_time_bounds(sub, *grid, kernel);
    } catch (const std::domain_error&) {
      result.clusters.push_back(unscored_group(std::move(remaining)));
      result.rounds.push_back(round);
      break;
    }
    round.t0 = t0;
    round.t_max = t_max;

    const TimeGrid times = TimeGrid::uniform(t0, t_max, options.slices);
    const FlowResult flow = run_flow(sub, kernel, times, *grid, options.samples);

    const std::size_t horizon =
        consolidation_time(flow).value_or(flow.last_index());

    // n' maximizing B(n) over n >= 2; smallest n wins a tie.
    std::vector<std::size_t> hits(sub.size() + 1, 0);
    for (std::size_t k = 0; k <= horizon; ++k) {
      if (flow.m_series[k] < hits.size()) ++hits[flow.m_series[k]];
    }
    std::size_t chosen_n = 0;
    for (std::size_t n = 2; n < hits.size(); ++n) {
      if (hits[n] > (chosen_n ? hits[chosen_n] : 0)) chosen_n = n;
    }
    if (chosen_n == 0) {
      result.clusters.push_back(unscored_group(std::move(remaining)));
      result.rounds.push_back(round);
      break;
    }
    round.chosen_n = chosen_n;

    std::size_t anchor = 0;
    for (std::size_t k = 0; k <= horizon; ++k) {
      if (flow.m_series[k] == chosen_n) anchor = k;
    }
    round.anchor_index = anchor;

    std::vector<std::size_t> emitted_local;
    for (const std::vector<std::size_t>& cluster :
         flow.clusterings[anchor].members()) {
      const LocalAnalysis analysis = backtrack(flow, cluster, anchor);
      const double score = local_entropy_stability_score(
          analysis, options.band_lo, options.band_hi, horizon);
      if (score >= options.threshold) {
        StableCluster out;
        out.points.reserve(cluster.size());
        for (std::size_t local : cluster) out.points.push_back(remaining[local]);
        std::sort(out.points.begin(), out.points.end());
        out.score = score;
        out.anchor_time = times.at(anchor);
        out.scored = true;
        result.clusters.push_back(std::move(out));
        emitted_local.insert(emitted_local.end(), cluster.begin(), cluster.end());
        ++round.emitted;
      }
    }

    if (emitted_local.empty()) {
      result.clusters.push_back(unscored_group(std::move(remaining)));
      result.rounds.push_back(round);
      break;
    }
    result.rounds.push_back(round);

    std::sort(emitted_local.begin(), emitted_local.end());
    std::vector<std::size_t> next;
    next.reserve(remaining.size() - emitted_local.size());
    std::size_t e = 0;
    for (std::size_t local = 0; local < remaining.size(); ++local) {
      if (e < emitted_local.size() && emitted_local[e] == local) {
        ++e;
      } else {
        next.push_back(remaining[local]);
      }
    }
    remaining = std::move(next);
  }
  return result;
}

double wgll_entropy(const Dataset& dataset, const Kernel& kernel, double t) {
  const std::size_t count = dataset.size();
  std::vector<double> potentials(count);
  double z = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    potentials[i] = eval_potential(dataset, kernel, t, dataset.point(i));
    z += potentials[i];
  }
  double acc = 0.0;
  for (double p : potentials) {
    const double q = p / z;
    acc += q * std::log2(q);
  }
  return acc == 0.0 ? 0.0 : -acc;
}

WgllScan wgll_scan(const Dataset& dataset, const Kernel& kernel,
                   const TimeGrid& times) {
  WgllScan scan;
  scan.times = times.values();
  scan.values.resize(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    scan.values[k] = wgll_entropy(dataset, kernel, times.at(k));
  }
  for (std::size_t k = 1; k + 1 < times.size(); ++k) {
    if (scan.values[k] < scan.values[k - 1] && scan.values[k] < scan.values[k + 1]) {
      scan.minima.push_back(k);
    }
  }
  return scan;
}

}  // namespace heatflow
