#pragma once

#include <string>
#include <vector>

#include "snm/network.hpp"

namespace testing {

inline snm::ConceptNode node(snm::NodeId id, double threshold = 0.0) {
  return {id, "v" + std::to_string(id), threshold, {}};
}

/// Network on ids 0..n-1 with the given edges.
inline snm::SemanticNetwork make_net(std::size_t n, std::vector<snm::WeightedEdge> edges) {
  std::vector<snm::ConceptNode> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(node(static_cast<snm::NodeId>(i)));
  return snm::SemanticNetwork::build(std::move(nodes), std::move(edges));
}

}  // namespace testing
