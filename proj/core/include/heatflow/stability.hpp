#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "heatflow/partitioner.hpp"

namespace heatflow {

// Clusterings and their (M_k, S_k) series over a whole time grid.
struct FlowResult {
  TimeGrid times;
  std::vector<Clustering> clusterings;
  std::vector<std::size_t> m_series;  // cluster count per slice
  std::vector<double> s_series;       // base-2 partition entropy per slice
  std::size_t point_count = 0;

  std::size_t last_index() const { return times.last_index(); }
};

// Cluster every slice; slices are mutually independent and run in parallel,
// with results identical to a sequential pass.
FlowResult run_flow(const Dataset& dataset, const Kernel& kernel,
                    const TimeGrid& times, const SamplingGrid& grid,
                    std::size_t samples);

// B(n): proportion of slices k <= horizon with exactly n clusters.
double stability_score(const FlowResult& flow, std::size_t n);
double stability_score(const FlowResult& flow, std::size_t n, std::size_t horizon);

// Membership test for the entropy band (s1, s2]. A zero-width band matches
// the exact value, and a lower bound of zero admits exactly-zero entropies.
bool entropy_band_contains(double s1, double s2, double s);

// B(n) restricted to slices whose entropy falls in the band (s1, s2].
double entropy_stability_score(const FlowResult& flow, std::size_t n, double s1,
                               double s2);
double entropy_stability_score(const FlowResult& flow, std::size_t n, double s1,
                               double s2, std::size_t horizon);

// Earliest slice from which every later slice has a single cluster; nullopt
// when the final slice still has more than one.
std::optional<std::size_t> consolidation_time(const FlowResult& flow);

struct StabilityTable {
  std::size_t horizon = 0;
  std::vector<double> scores;  // scores[n] = B(n), n in 1..N; scores[0] unused

  struct Banded {
    std::size_t n;
    double s1;
    double s2;
    double value;
  };
  std::vector<Banded> banded;
};

StabilityTable stability_table(const FlowResult& flow, std::size_t horizon);

// Same table with banded entries for every n over the given band (zero-width
// bands follow the exact-match convention).
StabilityTable stability_table(const FlowResult& flow, std::size_t horizon,
                               double s1, double s2);

// Restriction of the earlier clusterings to a fixed subset: the M'/S' series
// of X' intersected with each slice partition up to the anchor.
struct LocalAnalysis {
  std::vector<std::size_t> subset;    // sorted original point indices
  std::size_t anchor = 0;             // slice the subset was taken from
  std::vector<std::size_t> m_series;  // nonempty intersection counts, k' <= anchor
  std::vector<double> s_series;       // entropy of the induced partition of X'
};

LocalAnalysis backtrack(const FlowResult& flow, std::span<const std::size_t> subset,
                        std::size_t k);

// Share of the horizon's slices (k' <= anchor) whose local entropy lies in
// the band; the denominator is horizon + 1.
double local_entropy_stability_score(const LocalAnalysis& analysis, double s1,
                                     double s2, std::size_t horizon);

// (t_0, t_T): t_T puts the kernel standard deviation at half the dataset
// diameter, t_0 at twice the grid spacing.
std::pair<double, double> auto_time_bounds(const Dataset& dataset,
                                           const SamplingGrid& grid,
                                           const Kernel& kernel);

struct DriverOptions {
  std::size_t grid_res = 0;  // 0 picks the default for the dimension
  std::size_t slices = 51;
  std::size_t samples = 256;
  double threshold = 0.4;  // minimal local score for a cluster to be emitted
  double band_lo = 0.0;    // local score entropy band
  double band_hi = 0.0;
};

struct StableCluster {
  std::vector<std::size_t> points;  // original dataset indices, sorted
  double score = -1.0;              // -1 when the group was never scored
  double anchor_time = 0.0;
  bool scored = false;
};

struct DriverRound {
  std::size_t points_in = 0;
  double t0 = 0.0;
  double t_max = 0.0;
  std::optional<std::size_t> chosen_n;
  std::optional<std::size_t> anchor_index;
  std::size_t emitted = 0;
};

struct DriverResult {
  std::vector<StableCluster> clusters;
  std::vector<DriverRound> rounds;
};

// Repeatedly: run a flow over automatic bounds, truncate at the consolidation
// time, pick n' maximizing B(n) over n >= 2, analyse each cluster at the last
// n'-cluster slice, emit those whose local score clears the threshold, and
// recurse on the remainder. Whatever cannot be analysed further is emitted as
// one unscored group.
DriverResult stable_cluster_driver(const Dataset& dataset, const Kernel& kernel,
                                   const DriverOptions& options);

// Entropy of the normalized potential values at the datapoints, base 2.
double wgll_entropy(const Dataset& dataset, const Kernel& kernel, double t);

struct WgllScan {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<std::size_t> minima;  // indices of interior local minima
};

WgllScan wgll_scan(const Dataset& dataset, const Kernel& kernel,
                   const TimeGrid& times);

}  // namespace heatflow
