#include "heatflow/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace heatflow {

namespace {

// Uniform doubles straight from the engine bits, so sequences do not depend
// on the standard library's distribution implementation.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}

  double next(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

 private:
  std::mt19937_64 engine_;
};

void fill_interval(Uniform& rng, std::size_t count, double lo, double hi, int label,
                   std::vector<Vec>& points, std::vector<int>& labels) {
  for (std::size_t i = 0; i < count; ++i) {
    points.push_back({rng.next(lo, hi)});
    labels.push_back(label);
  }
}

void fill_disc(Uniform& rng, std::size_t count, double cx, double cy, double radius,
               int label, std::vector<Vec>& points, std::vector<int>& labels) {
  for (std::size_t i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(rng.next(0.0, 1.0));
    const double theta = rng.next(0.0, 2.0 * std::numbers::pi);
    points.push_back({cx + r * std::cos(theta), cy + r * std::sin(theta)});
    labels.push_back(label);
  }
}

}  // namespace

CirclesGeometry circles2d_geometry() {
  // Staggered center distances so the two small clusters dissolve into the
  // large one at clearly separated times (near 0.29 and 0.41), leaving both a
  // long three-cluster phase and a nonempty two-cluster phase.
  return CirclesGeometry{};
}

GeneratedDataset generate(std::string_view name, std::uint64_t seed) {
  Uniform rng(seed);
  std::vector<Vec> points;
  std::vector<int> labels;

  if (name == "noisy1d") {
    fill_interval(rng, 30, -0.9, -0.7, 0, points, labels);
    fill_interval(rng, 30, -0.3, 0.2, 1, points, labels);
    fill_interval(rng, 10, 0.7, 0.8, 2, points, labels);
    fill_interval(rng, 70, -1.0, 1.0, -1, points, labels);
  } else if (name == "circles2d") {
    const CirclesGeometry geo = circles2d_geometry();
    fill_disc(rng, 25, geo.small1_cx, geo.small1_cy, geo.small1_r, 0, points, labels);
    fill_disc(rng, 25, geo.small2_cx, geo.small2_cy, geo.small2_r, 1, points, labels);
    fill_disc(rng, 150, geo.large_cx, geo.large_cy, geo.large_r, 2, points, labels);
  } else {
    throw std::invalid_argument("unknown generator: " + std::string(name));
  }

  return GeneratedDataset{Dataset(std::move(points)), std::move(labels),
                          std::string(name)};
}

}  // namespace heatflow
