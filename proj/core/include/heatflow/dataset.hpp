#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace heatflow {

using Vec = std::vector<double>;

// Ordered collection of points in R^n. The positional index is the point
// identity and is never reordered after construction.
class Dataset {
 public:
  explicit Dataset(std::vector<Vec> points);

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return dim_; }
  const Vec& point(std::size_t i) const { return points_[i]; }
  const std::vector<Vec>& points() const { return points_; }

  // Largest pairwise Euclidean distance.
  double diameter() const;

  // Per-axis (min, max) over all points.
  std::pair<Vec, Vec> bounding_box() const;

 private:
  std::vector<Vec> points_;
  std::size_t dim_;
};

// Strictly increasing positive times t_0 < ... < t_T.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);

  static TimeGrid uniform(double t0, double t_max, std::size_t count);

  std::size_t size() const { return times_.size(); }            // T + 1
  std::size_t last_index() const { return times_.size() - 1; }  // T
  double at(std::size_t k) const { return times_[k]; }
  const std::vector<double>& values() const { return times_; }

 private:
  std::vector<double> times_;
};

}  // namespace heatflow
