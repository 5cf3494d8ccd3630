#include "heatflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heatflow {

SamplingGrid::SamplingGrid(std::vector<GridAxis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) {
    throw std::invalid_argument("sampling grid needs at least one axis");
  }
  node_count_ = 1;
  for (const GridAxis& ax : axes_) {
    if (ax.res < 16) {
      throw std::invalid_argument("grid resolution must be at least 16 per axis");
    }
    if (!(ax.lo < ax.hi) || !std::isfinite(ax.lo) || !std::isfinite(ax.hi)) {
      throw std::invalid_argument("grid axis bounds must be finite with lo < hi");
    }
    node_count_ *= ax.res;
  }
  strides_.assign(axes_.size(), 1);
  for (std::size_t a = axes_.size(); a-- > 1;) {
    strides_[a - 1] = strides_[a] * axes_[a].res;
  }
}

SamplingGrid SamplingGrid::cover(const Dataset& dataset, const Kernel& kernel,
                                 double t_max, std::size_t res_per_axis,
                                 double margin_sigmas) {
  const double margin = margin_sigmas * kernel.std_dev(t_max, dataset.dim());
  auto [lo, hi] = dataset.bounding_box();
  std::vector<GridAxis> axes(dataset.dim());
  for (std::size_t a = 0; a < dataset.dim(); ++a) {
    axes[a] = GridAxis{lo[a] - margin, hi[a] + margin, res_per_axis};
  }
  return SamplingGrid(std::move(axes));
}

double SamplingGrid::max_spacing() const {
  double h = 0.0;
  for (const GridAxis& ax : axes_) h = std::max(h, ax.spacing());
  return h;
}

void SamplingGrid::unflatten(std::size_t flat, std::span<std::size_t> idx) const {
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    idx[a] = flat / strides_[a];
    flat %= strides_[a];
  }
}

std::size_t SamplingGrid::flatten(std::span<const std::size_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    flat += idx[a] * strides_[a];
  }
  return flat;
}

void SamplingGrid::node_coords(std::size_t flat, std::span<double> out) const {
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const std::size_t i = flat / strides_[a];
    flat %= strides_[a];
    out[a] = axes_[a].lo + axes_[a].spacing() * static_cast<double>(i);
  }
}

Vec SamplingGrid::node_coords(std::size_t flat) const {
  Vec out(axes_.size());
  node_coords(flat, out);
  return out;
}

bool SamplingGrid::on_boundary(std::span<const std::size_t> idx) const {
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (idx[a] == 0 || idx[a] + 1 == axes_[a].res) return true;
  }
  return false;
}

double SamplingGrid::margin_of(std::span<const double> x) const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    m = std::min(m, x[a] - axes_[a].lo);
    m = std::min(m, axes_[a].hi - x[a]);
  }
  return m;
}

double PotentialField::value_at(std::span<const double> x) const {
  const std::size_t n = grid.dim();
  // Cell base index and in-cell fractions per axis.
  std::vector<std::size_t> base(n);
  std::vector<double> frac(n);
  for (std::size_t a = 0; a < n; ++a) {
    const GridAxis& ax = grid.axis(a);
    double u = (x[a] - ax.lo) / ax.spacing();
    u = std::clamp(u, 0.0, static_cast<double>(ax.res - 1));
    std::size_t i = static_cast<std::size_t>(u);
    if (i + 1 >= ax.res) i = ax.res - 2;
    base[a] = i;
    frac[a] = u - static_cast<double>(i);
  }
  const std::size_t corners = std::size_t{1} << n;
  double acc = 0.0;
  std::vector<std::size_t> idx(n);
  for (std::size_t c = 0; c < corners; ++c) {
    double w = 1.0;
    for (std::size_t a = 0; a < n; ++a) {
      const bool hi = (c >> a) & 1u;
      idx[a] = base[a] + (hi ? 1 : 0);
      w *= hi ? frac[a] : 1.0 - frac[a];
    }
    if (w != 0.0) acc += w * values[grid.flatten(idx)];
  }
  return acc;
}

bool PotentialField::constant() const {
  for (double v : values) {
    if (v != values.front()) return false;
  }
  return true;
}

std::size_t default_grid_resolution(std::size_t dim) {
  return dim == 1 ? 1024 : 128;
}

}  // namespace heatflow
