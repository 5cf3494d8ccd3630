#include "heatflow/dataset.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace heatflow {

Dataset::Dataset(std::vector<Vec> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw std::invalid_argument("dataset must contain at least one point");
  }
  dim_ = points_.front().size();
  if (dim_ == 0) {
    throw std::invalid_argument("dataset points must have dimension >= 1");
  }
  for (const Vec& p : points_) {
    if (p.size() != dim_) {
      throw std::invalid_argument("all dataset points must share one dimension");
    }
    for (double c : p) {
      if (!std::isfinite(c)) {
        throw std::invalid_argument("dataset coordinates must be finite");
      }
    }
  }
}

double Dataset::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      double d2 = 0.0;
      for (std::size_t a = 0; a < dim_; ++a) {
        const double d = points_[i][a] - points_[j][a];
        d2 += d * d;
      }
      if (d2 > best) best = d2;
    }
  }
  return std::sqrt(best);
}

std::pair<Vec, Vec> Dataset::bounding_box() const {
  Vec lo(dim_, std::numeric_limits<double>::infinity());
  Vec hi(dim_, -std::numeric_limits<double>::infinity());
  for (const Vec& p : points_) {
    for (std::size_t a = 0; a < dim_; ++a) {
      if (p[a] < lo[a]) lo[a] = p[a];
      if (p[a] > hi[a]) hi[a] = p[a];
    }
  }
  return {lo, hi};
}

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) {
    throw std::invalid_argument("time grid needs at least two values");
  }
  double prev = 0.0;
  for (double t : times_) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw std::invalid_argument("time values must be positive and finite");
    }
    if (t <= prev) {
      throw std::invalid_argument("time values must be strictly increasing");
    }
    prev = t;
  }
}

TimeGrid TimeGrid::uniform(double t0, double t_max, std::size_t count) {
  if (count < 2) {
    throw std::invalid_argument("time grid needs at least two values");
  }
  if (!(t0 < t_max)) {
    throw std::invalid_argument("degenerate time range");
  }
  std::vector<double> times(count);
  const double step = (t_max - t0) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    times[k] = t0 + step * static_cast<double>(k);
  }
  times.back() = t_max;
  return TimeGrid(std::move(times));
}

}  // namespace heatflow
