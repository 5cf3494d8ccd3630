#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "heatflow/dataset.hpp"
#include "heatflow/kernel.hpp"

namespace heatflow {

struct GridAxis {
  double lo;
  double hi;
  std::size_t res;  // node count along this axis

  double spacing() const { return (hi - lo) / static_cast<double>(res - 1); }
};

// Regular node lattice over a box. Flat node indices run row-major with the
// last axis fastest, so the flat order is the lexicographic coordinate order.
class SamplingGrid {
 public:
  explicit SamplingGrid(std::vector<GridAxis> axes);

  // Box = dataset extent padded on every side by margin_sigmas * std_dev(t_max).
  static SamplingGrid cover(const Dataset& dataset, const Kernel& kernel,
                            double t_max, std::size_t res_per_axis,
                            double margin_sigmas = 4.0);

  std::size_t dim() const { return axes_.size(); }
  const GridAxis& axis(std::size_t a) const { return axes_[a]; }
  std::size_t node_count() const { return node_count_; }
  double max_spacing() const;

  void unflatten(std::size_t flat, std::span<std::size_t> idx) const;
  std::size_t flatten(std::span<const std::size_t> idx) const;
  void node_coords(std::size_t flat, std::span<double> out) const;
  Vec node_coords(std::size_t flat) const;
  bool on_boundary(std::span<const std::size_t> idx) const;

  // Smallest distance from x to a box face; negative when x lies outside.
  double margin_of(std::span<const double> x) const;

 private:
  std::vector<GridAxis> axes_;
  std::vector<std::size_t> strides_;
  std::size_t node_count_;
};

// Sampled potential P(., t) on a grid.
struct PotentialField {
  SamplingGrid grid;
  std::vector<double> values;
  double time = 0.0;

  // Multilinear interpolation; x must lie inside the box (edge-clamped).
  double value_at(std::span<const double> x) const;

  bool constant() const;
};

// Default sampling resolution per axis: 1024 in 1D, 128 otherwise.
std::size_t default_grid_resolution(std::size_t dim);

}  // namespace heatflow
