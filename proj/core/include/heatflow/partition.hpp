#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heatflow/dataset.hpp"

namespace heatflow {

// A partition of dataset indices at one time slice. Labels are dense
// integers 0..cluster_count-1 and every label owns at least one point.
struct Clustering {
  std::vector<int> assignment;  // per-point label
  std::size_t cluster_count = 0;
  std::vector<std::size_t> sizes;  // indexed by label
  std::optional<std::size_t> time_index;
  bool degenerate = false;  // produced from a flat potential field

  // Point indices grouped by label, ascending inside each group.
  std::vector<std::vector<std::size_t>> members() const;
};

// Builds a Clustering from raw labels, densifying them in order of first
// point occurrence.
Clustering clustering_from_labels(std::span<const int> labels,
                                  std::optional<std::size_t> time_index = {});

// Shannon measure of information of a partition, base 2:
//   -sum_i (n_i / total) * log2(n_i / total)
double smi(std::span<const std::size_t> sizes, std::size_t total);
double smi(const Clustering& clustering);

enum class ViolationKind {
  unlabeled_point,
  label_out_of_range,
  empty_label,
  size_mismatch,
};

struct PartitionViolation {
  ViolationKind kind;
  std::string message;
};

// nullopt when `clustering` is a valid partition of the dataset indices.
std::optional<PartitionViolation> validate_partition(const Clustering& clustering,
                                                     const Dataset& dataset);

}  // namespace heatflow
