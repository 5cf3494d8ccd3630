#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace heatflow {

enum class KernelFamily { gaussian, exponential };

KernelFamily kernel_family_from_name(std::string_view name);
std::string_view kernel_family_name(KernelFamily family);

// Radial base profile k with unit integral over R^n, widened through the
// rescaling K(x, t) = t^-n k(x / t). The rescaling keeps the total mass at 1
// and spreads the standard deviation linearly in t.
class Kernel {
 public:
  explicit Kernel(KernelFamily family) : family_(family) {}

  KernelFamily family() const { return family_; }

  // K(x, t). Throws on t <= 0.
  double at(std::span<const double> x, double t) const;

  // Same, from the squared radius; the hot path for field evaluation.
  double at_radius2(double r2, double t, std::size_t dim) const;

  // Per-axis standard deviation of K(., t) in dimension `dim`.
  double std_dev(double t, std::size_t dim) const;
  double base_std(std::size_t dim) const;

  // Normalization constant of the base profile in dimension `dim`.
  double norm_constant(std::size_t dim) const;

 private:
  KernelFamily family_;
};

}  // namespace heatflow
