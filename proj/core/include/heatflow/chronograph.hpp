#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heatflow/stability.hpp"

namespace heatflow {

// Time-layered cluster graph. Every (slice, label) pair is a node; an edge
// carries the number of points a slice-k cluster inherits from a slice-(k-1)
// cluster. Edges are stored backward in time and rendered forward.
struct ChronoNode {
  std::size_t k;
  std::size_t label;
  std::size_t size;

  bool operator==(const ChronoNode&) const = default;
};

struct ChronoEdge {
  std::size_t k;           // later slice (k >= 1)
  std::size_t label;       // cluster at slice k
  std::size_t prev_label;  // cluster at slice k - 1
  std::size_t weight;      // inherited point count, always > 0

  bool operator==(const ChronoEdge&) const = default;
};

struct Chronodendrogram {
  std::vector<double> times;
  std::vector<ChronoNode> nodes;  // ordered by (k, label)
  std::vector<ChronoEdge> edges;  // ordered by (k, label, prev_label)

  std::size_t slice_count() const { return times.size(); }

  bool operator==(const Chronodendrogram&) const = default;
};

Chronodendrogram build_chronodendrogram(const FlowResult& flow);

// Clusters of slice k as (label, size) in label order; throws on k out of range.
std::vector<std::pair<std::size_t, std::size_t>> slice(const Chronodendrogram& tree,
                                                       std::size_t k);

// Graphviz digraph; nodes named "k_label", edge pen widths proportional to
// the inherited counts, one rank group per slice. Byte-deterministic.
std::string export_dot(const Chronodendrogram& tree);

// Canonical interchange form; import reverses it losslessly.
std::string export_json(const Chronodendrogram& tree);
Chronodendrogram import_json(std::string_view text);

}  // namespace heatflow
