#include "heatflow/partition.hpp"

#include <cmath>
#include <stdexcept>

namespace heatflow {

std::vector<std::vector<std::size_t>> Clustering::members() const {
  std::vector<std::vector<std::size_t>> groups(cluster_count);
  for (std::size_t i = 0; i < cluster_count; ++i) {
    groups[i].reserve(sizes[i]);
  }
  for (std::size_t p = 0; p < assignment.size(); ++p) {
    groups[static_cast<std::size_t>(assignment[p])].push_back(p);
  }
  return groups;
}

Clustering clustering_from_labels(std::span<const int> labels,
                                  std::optional<std::size_t> time_index) {
  if (labels.empty()) {
    throw std::invalid_argument("empty partition");
  }
  Clustering out;
  out.time_index = time_index;
  out.assignment.resize(labels.size());
  std::vector<std::pair<int, int>> remap;  // (raw label, dense label)
  for (std::size_t p = 0; p < labels.size(); ++p) {
    const int raw = labels[p];
    int dense = -1;
    for (const auto& [r, d] : remap) {
      if (r == raw) {
        dense = d;
        break;
      }
    }
    if (dense < 0) {
      dense = static_cast<int>(remap.size());
      remap.emplace_back(raw, dense);
      out.sizes.push_back(0);
    }
    out.assignment[p] = dense;
    ++out.sizes[static_cast<std::size_t>(dense)];
  }
  out.cluster_count = remap.size();
  return out;
}

double smi(std::span<const std::size_t> sizes, std::size_t total) {
  if (sizes.empty()) {
    throw std::invalid_argument("empty partition");
  }
  std::size_t sum = 0;
  for (std::size_t n : sizes) {
    if (n == 0) {
      throw std::invalid_argument("cluster sizes must be positive");
    }
    sum += n;
  }
  if (sum != total) {
    throw std::invalid_argument("cluster sizes do not sum to the point total");
  }
  double acc = 0.0;
  const double n = static_cast<double>(total);
  for (std::size_t size : sizes) {
    const double p = static_cast<double>(size) / n;
    acc += p * std::log2(p);
  }
  return acc == 0.0 ? 0.0 : -acc;
}

double smi(const Clustering& clustering) {
  return smi(clustering.sizes, clustering.assignment.size());
}

std::optional<PartitionViolation> validate_partition(const Clustering& clustering,
                                                     const Dataset& dataset) {
  if (clustering.assignment.size() != dataset.size()) {
    return PartitionViolation{
        ViolationKind::unlabeled_point,
        "assignment covers " + std::to_string(clustering.assignment.size()) +
            " points, dataset has " + std::to_string(dataset.size())};
  }
  if (clustering.cluster_count == 0) {
    return PartitionViolation{ViolationKind::empty_label, "no clusters declared"};
  }
  std::vector<std::size_t> counts(clustering.cluster_count, 0);
  for (std::size_t p = 0; p < clustering.assignment.size(); ++p) {
    const int label = clustering.assignment[p];
    if (label < 0) {
      return PartitionViolation{ViolationKind::unlabeled_point,
                                "unlabeled point " + std::to_string(p)};
    }
    if (static_cast<std::size_t>(label) >= clustering.cluster_count) {
      return PartitionViolation{ViolationKind::label_out_of_range,
                                "label out of range at point " + std::to_string(p)};
    }
    ++counts[static_cast<std::size_t>(label)];
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) {
      return PartitionViolation{ViolationKind::empty_label,
                                "empty label " + std::to_string(i)};
    }
  }
  if (clustering.sizes.size() != clustering.cluster_count) {
    return PartitionViolation{ViolationKind::size_mismatch,
                              "size table does not match cluster count"};
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != clustering.sizes[i]) {
      return PartitionViolation{ViolationKind::size_mismatch,
                                "declared size mismatch for label " + std::to_string(i)};
    }
  }
  return std::nullopt;
}

}  // namespace heatflow
