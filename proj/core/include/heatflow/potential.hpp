#pragma once

#include <functional>
#include <vector>

#include "heatflow/grid.hpp"

namespace heatflow {

// P(x, t) = (1/N) sum_l K(x - x_l, t).
double eval_potential(const Dataset& dataset, const Kernel& kernel, double t,
                      std::span<const double> x);

// P(., t) at every grid node, in flat node order. The per-node sum over data
// points uses a fixed order, so the result does not depend on how callers
// schedule the nodes.
PotentialField eval_field(const Dataset& dataset, const Kernel& kernel, double t,
                          const SamplingGrid& grid);

// Interior nodes strictly greater than every axis-and-diagonal neighbor; a
// flat plateau counts once, at its lexicographically smallest node. Ordered
// lexicographically by coordinate.
std::vector<Vec> find_local_maxima(const PotentialField& field);

// Interior 1D nodes strictly smaller than both neighbors, in increasing
// position order; same plateau convention as the maxima.
std::vector<double> find_local_minima_1d(const PotentialField& field);

// Continuous potential accessor used by the path-cost machinery.
using PotentialFn = std::function<double(std::span<const double>)>;

// Exact evaluation of P(., t); the dataset must outlive the returned callable.
PotentialFn exact_potential(const Dataset& dataset, const Kernel& kernel, double t);

// Multilinear interpolation of a sampled field; the field must outlive the
// returned callable.
PotentialFn interpolated_potential(const PotentialField& field);

}  // namespace heatflow
