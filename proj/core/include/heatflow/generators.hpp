#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "heatflow/dataset.hpp"

namespace heatflow {

// Synthetic dataset plus the planted labels (-1 marks background noise),
// kept for purity scoring.
struct GeneratedDataset {
  Dataset dataset;
  std::vector<int> labels;
  std::string name;
};

// Known generators:
//   noisy1d   - three 1D blocks (30, 30, 10 points) plus 70 noise points on [-1, 1]
//   circles2d - 25 points in each of two small discs plus 150 in a large disc
// Deterministic for a given seed; the single seeded engine is the only
// randomness source.
GeneratedDataset generate(std::string_view name, std::uint64_t seed);

// Fixed circles2d geometry, recorded in run summaries.
struct CirclesGeometry {
  double large_cx = 0.0, large_cy = 0.0, large_r = 0.5;
  double small1_cx = -0.884, small1_cy = 0.884, small1_r = 0.12;
  double small2_cx = 1.025, small2_cy = -1.025, small2_r = 0.12;
};

CirclesGeometry circles2d_geometry();

}  // namespace heatflow
