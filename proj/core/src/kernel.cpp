#include "heatflow/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace heatflow {

namespace {

void check_time(double t) {
  if (!(t > 0.0)) {
    throw std::domain_error("nonpositive time");
  }
}

}  // namespace

KernelFamily kernel_family_from_name(std::string_view name) {
  if (name == "gaussian") return KernelFamily::gaussian;
  if (name == "exponential") return KernelFamily::exponential;
  throw std::invalid_argument("unknown kernel family: " + std::string(name));
}

std::string_view kernel_family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::gaussian:
      return "gaussian";
    case KernelFamily::exponential:
      return "exponential";
  }
  return "unknown";
}

double Kernel::norm_constant(std::size_t dim) const {
  const double n = static_cast<double>(dim);
  switch (family_) {
    case KernelFamily::gaussian:
      // k(x) = (2 pi)^(-n/2) exp(-|x|^2 / 2); unit mass, unit per-axis std.
      return std::pow(2.0 * std::numbers::pi, -n / 2.0);
    case KernelFamily::exponential:
      // k(x) = c_n exp(-|x|); c_n = Gamma(n/2) / (2 pi^(n/2) Gamma(n)).
      return std::exp(std::lgamma(n / 2.0) - std::numbers::ln2 -
                      (n / 2.0) * std::log(std::numbers::pi) - std::lgamma(n));
  }
  return 0.0;
}

double Kernel::at_radius2(double r2, double t, std::size_t dim) const {
  check_time(t);
  const double n = static_cast<double>(dim);
  const double scale = std::pow(t, -n) * norm_constant(dim);
  switch (family_) {
    case KernelFamily::gaussian:
      return scale * std::exp(-r2 / (2.0 * t * t));
    case KernelFamily::exponential:
      return scale * std::exp(-std::sqrt(r2) / t);
  }
  return 0.0;
}

double Kernel::at(std::span<const double> x, double t) const {
  if (x.empty()) {
    throw std::invalid_argument("kernel argument must have dimension >= 1");
  }
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  return at_radius2(r2, t, x.size());
}

double Kernel::base_std(std::size_t dim) const {
  switch (family_) {
    case KernelFamily::gaussian:
      return 1.0;
    case KernelFamily::exponential:
      // Per-axis variance of c_n exp(-|x|) in R^n is n + 1.
      return std::sqrt(static_cast<double>(dim) + 1.0);
  }
  return 0.0;
}

double Kernel::std_dev(double t, std::size_t dim) const {
  check_time(t);
  return t * base_std(dim);
}

}  // namespace heatflow
