#include "heatflow/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heatflow {

namespace {

constexpr double kDegenerateNormalizer = 1e-12;
constexpr double kCostTie = 1e-6;
constexpr double kDistanceTie = 1e-12;

double distance2(std::span<const double> a, std::span<const double> b) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return d2;
}

Clustering densify(const std::vector<int>& raw, std::size_t group_count,
                   std::optional<std::size_t> time_index, bool degenerate) {
  // Densify keeping the raw group order (segments left to right, or maxima
  // order), dropping empty groups.
  std::vector<int> dense(group_count, -1);
  std::vector<std::size_t> counts(group_count, 0);
  for (int g : raw) ++counts[static_cast<std::size_t>(g)];
  int next = 0;
  for (std::size_t g = 0; g < group_count; ++g) {
    if (counts[g] > 0) dense[g] = next++;
  }
  Clustering out;
  out.time_index = time_index;
  out.degenerate = degenerate;
  out.cluster_count = static_cast<std::size_t>(next);
  out.sizes.assign(out.cluster_count, 0);
  out.assignment.resize(raw.size());
  for (std::size_t p = 0; p < raw.size(); ++p) {
    const int label = dense[static_cast<std::size_t>(raw[p])];
    out.assignment[p] = label;
    ++out.sizes[static_cast<std::size_t>(label)];
  }
  return out;
}

}  // namespace

std::optional<double> try_path_cost(const PotentialFn& potential,
                                    std::span<const double> x,
                                    std::span<const double> m, std::size_t samples) {
  if (samples < 2) {
    throw std::invalid_argument("path cost needs at least two samples");
  }
  if (x.size() != m.size()) {
    throw std::invalid_argument("endpoint dimensions differ");
  }
  const std::size_t n = x.size();
  std::vector<double> pos(n);
  const double denom_steps = static_cast<double>(samples - 1);

  double total_variation = 0.0;
  double first = 0.0;
  double prev = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double s = static_cast<double>(j) / denom_steps;
    for (std::size_t a = 0; a < n; ++a) {
      pos[a] = (1.0 - s) * x[a] + s * m[a];
    }
    const double v = potential(pos);
    if (j == 0) {
      first = v;
    } else {
      total_variation += std::abs(v - prev);
    }
    prev = v;
  }
  const double normalizer = std::abs(first - prev);
  if (normalizer < kDegenerateNormalizer) {
    return std::nullopt;
  }
  return total_variation / normalizer;
}

double path_cost(const PotentialFn& potential, std::span<const double> x,
                 std::span<const double> m, std::size_t samples) {
  const auto cost = try_path_cost(potential, x, m, samples);
  if (!cost) {
    throw std::domain_error("degenerate normalization");
  }
  return *cost;
}

Clustering cluster_1d(const Dataset& dataset, const PotentialField& field,
                      std::optional<std::size_t> time_index) {
  if (dataset.dim() != 1) {
    throw std::invalid_argument("minimum-partition clustering requires 1D data");
  }
  const std::vector<double> minima = find_local_minima_1d(field);

  // Segment index of x = number of minima <= x (segments closed on the left).
  std::vector<int> raw(dataset.size());
  for (std::size_t p = 0; p < dataset.size(); ++p) {
    const double x = dataset.point(p)[0];
    const auto it = std::upper_bound(minima.begin(), minima.end(), x);
    raw[p] = static_cast<int>(it - minima.begin());
  }
  return densify(raw, minima.size() + 1, time_index, false);
}

Clustering assign_nd(const Dataset& dataset, const PotentialFn& potential,
                     const std::vector<Vec>& maxima, std::size_t samples,
                     std::optional<std::size_t> time_index,
                     std::vector<CostEvaluation>* evaluations) {
  if (maxima.empty()) {
    throw std::invalid_argument("assignment needs at least one maximum");
  }
  std::vector<int> raw(dataset.size());
  std::vector<double> costs(maxima.size());
  std::vector<double> dists(maxima.size());

  for (std::size_t p = 0; p < dataset.size(); ++p) {
    const Vec& x = dataset.point(p);

    std::size_t coincident = maxima.size();
    for (std::size_t j = 0; j < maxima.size(); ++j) {
      dists[j] = std::sqrt(distance2(x, maxima[j]));
      if (coincident == maxima.size() && dists[j] < kDistanceTie) {
        coincident = j;
      }
    }

    std::size_t chosen;
    double chosen_cost = 1.0;
    if (coincident < maxima.size()) {
      chosen = coincident;
    } else {
      bool any_valid = false;
      double best_cost = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < maxima.size(); ++j) {
        const auto c = try_path_cost(potential, x, maxima[j], samples);
        costs[j] = c.value_or(std::numeric_limits<double>::infinity());
        if (c) {
          any_valid = true;
          best_cost = std::min(best_cost, *c);
        }
      }
      if (!any_valid) {
        // Flat normalizers everywhere; fall back to plain distance.
        chosen = 0;
        for (std::size_t j = 1; j < maxima.size(); ++j) {
          if (dists[j] < dists[chosen] - kDistanceTie) chosen = j;
        }
      } else {
        chosen = maxima.size();
        double chosen_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < maxima.size(); ++j) {
          if (costs[j] > best_cost + kCostTie) continue;
          if (chosen == maxima.size() || dists[j] < chosen_dist - kDistanceTie) {
            chosen = j;
            chosen_dist = dists[j];
          }
        }
        chosen_cost = costs[chosen];
      }
    }
    raw[p] = static_cast<int>(chosen);
    if (evaluations) {
      evaluations->push_back(CostEvaluation{p, maxima[chosen], chosen_cost, samples});
    }
  }
  return densify(raw, maxima.size(), time_index, false);
}

Clustering cluster_at_time(const Dataset& dataset, const Kernel& kernel, double t,
                           const SamplingGrid& grid, std::size_t samples,
                           std::optional<std::size_t> time_index) {
  const PotentialField field = eval_field(dataset, kernel, t, grid);

  if (field.constant()) {
    Clustering out;
    out.assignment.assign(dataset.size(), 0);
    out.cluster_count = 1;
    out.sizes = {dataset.size()};
    out.time_index = time_index;
    out.degenerate = true;
    return out;
  }

  if (dataset.dim() == 1) {
    return cluster_1d(dataset, field, time_index);
  }

  const std::vector<Vec> maxima = find_local_maxima(field);
  if (maxima.empty()) {
    Clustering out;
    out.assignment.assign(dataset.size(), 0);
    out.cluster_count = 1;
    out.sizes = {dataset.size()};
    out.time_index = time_index;
    out.degenerate = true;
    return out;
  }
  const PotentialFn potential = interpolated_potential(field);
  return assign_nd(dataset, potential, maxima, samples, time_index);
}

}  // namespace heatflow
