#include "heatflow/chronograph.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "heatflow/format.hpp"

#include <json.hpp>

namespace heatflow {

Chronodendrogram build_chronodendrogram(const FlowResult& flow) {
  const std::size_t slices = flow.times.size();
  Chronodendrogram tree;
  tree.times = flow.times.values();

  for (std::size_t k = 0; k < slices; ++k) {
    const Clustering& clustering = flow.clusterings[k];
    for (std::size_t i = 0; i < clustering.cluster_count; ++i) {
      tree.nodes.push_back(ChronoNode{k, i, clustering.sizes[i]});
    }
  }

  for (std::size_t k = 1; k < slices; ++k) {
    const Clustering& now = flow.clusterings[k];
    const Clustering& before = flow.clusterings[k - 1];
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> weights;
    for (std::size_t p = 0; p < flow.point_count; ++p) {
      const auto key = std::make_pair(
          static_cast<std::size_t>(now.assignment[p]),
          static_cast<std::size_t>(before.assignment[p]));
      ++weights[key];
    }
    for (const auto& [key, weight] : weights) {
      tree.edges.push_back(ChronoEdge{k, key.first, key.second, weight});
    }
  }
  return tree;
}

std::vector<std::pair<std::size_t, std::size_t>> slice(const Chronodendrogram& tree,
                                                       std::size_t k) {
  if (k >= tree.slice_count()) {
    throw std::out_of_range("slice index out of range");
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const ChronoNode& node : tree.nodes) {
    if (node.k == k) out.emplace_back(node.label, node.size);
  }
  return out;
}

std::string export_dot(const Chronodendrogram& tree) {
  std::size_t total = 0;
  for (const ChronoNode& node : tree.nodes) {
    if (node.k == 0) total += node.size;
  }
  if (total == 0) total = 1;

  std::ostringstream out;
  out << "digraph chronodendrogram {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (std::size_t k = 0; k < tree.slice_count(); ++k) {
    out << "  { rank=same;";
    for (const ChronoNode& node : tree.nodes) {
      if (node.k != k) continue;
      out << " \"" << node.k << "_" << node.label << "\" [label=\"" << node.size
          << "\"];";
    }
    out << " }\n";
  }
  for (const ChronoEdge& edge : tree.edges) {
    const double width =
        6.0 * static_cast<double>(edge.weight) / static_cast<double>(total);
    out << "  \"" << (edge.k - 1) << "_" << edge.prev_label << "\" -> \"" << edge.k
        << "_" << edge.label << "\" [penwidth=" << format_double(width) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_json(const Chronodendrogram& tree) {
  nlohmann::ordered_json doc;
  doc["times"] = tree.times;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const ChronoNode& node : tree.nodes) {
    nlohmann::ordered_json entry;
    entry["k"] = node.k;
    entry["i"] = node.label;
    entry["size"] = node.size;
    doc["nodes"].push_back(std::move(entry));
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const ChronoEdge& edge : tree.edges) {
    nlohmann::ordered_json entry;
    entry["k"] = edge.k;
    entry["i"] = edge.label;
    entry["iprev"] = edge.prev_label;
    entry["w"] = edge.weight;
    doc["edges"].push_back(std::move(entry));
  }
  return doc.dump(1) + "\n";
}

Chronodendrogram import_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::runtime_error(std::string("invalid chronodendrogram JSON: ") +
                             err.what());
  }
  Chronodendrogram tree;
  try {
    tree.times = doc.at("times").get<std::vector<double>>();
    for (const auto& entry : doc.at("nodes")) {
      tree.nodes.push_back(ChronoNode{entry.at("k").get<std::size_t>(),
                                      entry.at("i").get<std::size_t>(),
                                      entry.at("size").get<std::size_t>()});
    }
    for (const auto& entry : doc.at("edges")) {
      tree.edges.push_back(ChronoEdge{entry.at("k").get<std::size_t>(),
                                      entry.at("i").get<std::size_t>(),
                                      entry.at("iprev").get<std::size_t>(),
                                      entry.at("w").get<std::size_t>()});
    }
  } catch (const nlohmann::json::exception& err) {
    throw std::runtime_error(std::string("invalid chronodendrogram JSON: ") +
                             err.what());
  }
  return tree;
}

}  // namespace heatflow
