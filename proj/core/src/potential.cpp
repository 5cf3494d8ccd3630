#include "heatflow/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatflow {

namespace {

// Offsets of the full 3^n - 1 neighborhood as per-axis steps in {-1, 0, +1}.
std::vector<std::vector<int>> neighbor_offsets(std::size_t dim) {
  std::vector<std::vector<int>> offsets;
  std::vector<int> step(dim, -1);
  while (true) {
    if (std::any_of(step.begin(), step.end(), [](int s) { return s != 0; })) {
      offsets.push_back(step);
    }
    std::size_t a = 0;
    for (; a < dim; ++a) {
      if (step[a] < 1) {
        ++step[a];
        break;
      }
      step[a] = -1;
    }
    if (a == dim) break;
  }
  return offsets;
}

// Precomputed per-(kernel, t, dim) evaluation of K from the squared radius.
struct RadialEval {
  KernelFamily family;
  double scale;   // t^-n * c_n
  double inv2t2;  // gaussian exponent factor
  double inv_t;   // exponential exponent factor

  double operator()(double r2) const {
    if (family == KernelFamily::gaussian) {
      return scale * std::exp(-r2 * inv2t2);
    }
    return scale * std::exp(-std::sqrt(r2) * inv_t);
  }
};

RadialEval make_radial_eval(const Kernel& kernel, double t, std::size_t dim) {
  if (!(t > 0.0)) {
    throw std::domain_error("nonpositive time");
  }
  const double n = static_cast<double>(dim);
  return RadialEval{kernel.family(), std::pow(t, -n) * kernel.norm_constant(dim),
                    1.0 / (2.0 * t * t), 1.0 / t};
}

enum class Extremum { maximum, minimum };

// Plateau-aware detection: a connected set of equal-valued nodes counts as a
// single extremum at its lexicographically smallest node, and is discarded
// when it touches the grid boundary.
std::vector<std::size_t> find_extrema_nodes(const PotentialField& field, Extremum kind) {
  const SamplingGrid& grid = field.grid;
  const std::size_t n = grid.dim();
  const auto offsets = neighbor_offsets(n);
  std::vector<char> visited(grid.node_count(), 0);
  std::vector<std::size_t> found;

  std::vector<std::size_t> idx(n), nidx(n);
  std::vector<std::size_t> plateau, frontier;
  for (std::size_t start = 0; start < grid.node_count(); ++start) {
    if (visited[start]) continue;
    const double v = field.values[start];

    plateau.clear();
    frontier.clear();
    plateau.push_back(start);
    frontier.push_back(start);
    visited[start] = 1;
    bool beaten = false;
    bool touches_boundary = false;

    while (!frontier.empty()) {
      const std::size_t node = frontier.back();
      frontier.pop_back();
      grid.unflatten(node, idx);
      if (grid.on_boundary(idx)) touches_boundary = true;
      for (const auto& off : offsets) {
        bool inside = true;
        for (std::size_t a = 0; a < n; ++a) {
          const long long j = static_cast<long long>(idx[a]) + off[a];
          if (j < 0 || j >= static_cast<long long>(grid.axis(a).res)) {
            inside = false;
            break;
          }
          nidx[a] = static_cast<std::size_t>(j);
        }
        if (!inside) continue;
        const std::size_t neighbor = grid.flatten(nidx);
        const double w = field.values[neighbor];
        if (w == v) {
          if (!visited[neighbor]) {
            visited[neighbor] = 1;
            plateau.push_back(neighbor);
            frontier.push_back(neighbor);
          }
        } else if (kind == Extremum::maximum ? w > v : w < v) {
          beaten = true;
        }
      }
    }

    if (!beaten && !touches_boundary) {
      found.push_back(*std::min_element(plateau.begin(), plateau.end()));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace

double eval_potential(const Dataset& dataset, const Kernel& kernel, double t,
                      std::span<const double> x) {
  if (x.size() != dataset.dim()) {
    throw std::invalid_argument("point dimension does not match dataset");
  }
  const std::size_t n = dataset.dim();
  const RadialEval eval = make_radial_eval(kernel, t, n);
  double acc = 0.0;
  for (const Vec& p : dataset.points()) {
    double r2 = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      const double d = x[a] - p[a];
      r2 += d * d;
    }
    acc += eval(r2);
  }
  return acc / static_cast<double>(dataset.size());
}

PotentialField eval_field(const Dataset& dataset, const Kernel& kernel, double t,
                          const SamplingGrid& grid) {
  if (grid.dim() != dataset.dim()) {
    throw std::invalid_argument("grid dimension does not match dataset");
  }
  const double needed = 3.0 * kernel.std_dev(t, dataset.dim());
  for (const Vec& p : dataset.points()) {
    if (grid.margin_of(p) < needed) {
      throw std::invalid_argument("grid margin too small for this time");
    }
  }

  const std::size_t n = dataset.dim();
  const std::size_t count = dataset.size();
  const RadialEval eval = make_radial_eval(kernel, t, n);

  // Contiguous point coordinates, point-major.
  std::vector<double> coords(count * n);
  for (std::size_t l = 0; l < count; ++l) {
    for (std::size_t a = 0; a < n; ++a) coords[l * n + a] = dataset.point(l)[a];
  }

  PotentialField field{grid, std::vector<double>(grid.node_count()), t};
  std::vector<double> x(n);
  for (std::size_t node = 0; node < grid.node_count(); ++node) {
    grid.node_coords(node, x);
    double acc = 0.0;
    for (std::size_t l = 0; l < count; ++l) {
      double r2 = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        const double d = x[a] - coords[l * n + a];
        r2 += d * d;
      }
      acc += eval(r2);
    }
    field.values[node] = acc / static_cast<double>(count);
  }
  return field;
}

std::vector<Vec> find_local_maxima(const PotentialField& field) {
  std::vector<Vec> out;
  for (std::size_t node : find_extrema_nodes(field, Extremum::maximum)) {
    out.push_back(field.grid.node_coords(node));
  }
  return out;
}

std::vector<double> find_local_minima_1d(const PotentialField& field) {
  if (field.grid.dim() != 1) {
    throw std::invalid_argument("minima scan requires a 1-dimensional field");
  }
  std::vector<double> out;
  for (std::size_t node : find_extrema_nodes(field, Extremum::minimum)) {
    out.push_back(field.grid.node_coords(node)[0]);
  }
  return out;
}

PotentialFn exact_potential(const Dataset& dataset, const Kernel& kernel, double t) {
  if (!(t > 0.0)) {
    throw std::domain_error("nonpositive time");
  }
  return [&dataset, kernel, t](std::span<const double> x) {
    return eval_potential(dataset, kernel, t, x);
  };
}

PotentialFn interpolated_potential(const PotentialField& field) {
  return [&field](std::span<const double> x) { return field.value_at(x); };
}

}  // namespace heatflow
