#pragma once

#include <optional>

#include "heatflow/partition.hpp"
#include "heatflow/potential.hpp"

namespace heatflow {

struct CostEvaluation {
  std::size_t point;
  Vec maximum;
  double cost;
  std::size_t samples;
};

// Normalized total variation of the potential along the segment from x to m,
// sampled at `samples` uniformly spaced nodes (endpoints included):
//   (1 / |P(x) - P(m)|) * sum_j |P(g(s_{j+1})) - P(g(s_j))|
// Bounded below by 1; equals 1 exactly when the sampled path is monotone.
// Throws "degenerate normalization" when |P(x) - P(m)| < 1e-12.
double path_cost(const PotentialFn& potential, std::span<const double> x,
                 std::span<const double> m, std::size_t samples);

// nullopt instead of the degenerate-normalization error.
std::optional<double> try_path_cost(const PotentialFn& potential,
                                    std::span<const double> x,
                                    std::span<const double> m, std::size_t samples);

// Minimum-partition clustering: cut the line at the local minima of the
// field and intersect the dataset with the resulting segments. A segment is
// closed on the left, so a point sitting exactly on a minimum goes right.
Clustering cluster_1d(const Dataset& dataset, const PotentialField& field,
                      std::optional<std::size_t> time_index = {});

// Assign every point to the local maximum of least path cost. Cost ties
// within 1e-6 go to the nearest maximum, distance ties within 1e-12 to the
// lowest maximum index. Labels are densified in maxima order.
Clustering assign_nd(const Dataset& dataset, const PotentialFn& potential,
                     const std::vector<Vec>& maxima, std::size_t samples,
                     std::optional<std::size_t> time_index = {},
                     std::vector<CostEvaluation>* evaluations = nullptr);

// One time slice end to end: evaluate the field, then dispatch to the 1D
// segment rule or the nD cost assignment. A flat field yields a single
// cluster flagged degenerate.
Clustering cluster_at_time(const Dataset& dataset, const Kernel& kernel, double t,
                           const SamplingGrid& grid, std::size_t samples,
                           std::optional<std::size_t> time_index = {});

}  // namespace heatflow
