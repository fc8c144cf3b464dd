#pragma once

#include <cstddef>
#include <cstdint>

#include "snm/network.hpp"

namespace snm {

/// Seeded random network on ids 0..n-1 (labels "n<id>"). A random spanning
/// tree is laid down first, then every remaining pair is joined with
/// probability `edge_prob`. Weights are uniform in (0,1]. Connected by
/// construction and identical for identical arguments.
SemanticNetwork generate_network(std::size_t n, double edge_prob, std::uint64_t seed);

/// Two dense clusters of `cluster_size` nodes joined by one weak bridge edge.
/// Intra-cluster weights are drawn from [0.3,1]. Nodes 0..k-1 form the first
/// cluster, k..2k-1 the second.
SemanticNetwork two_cluster_network(std::size_t cluster_size, std::uint64_t seed);

/// Complete graph on ids 0..n-1 with a uniform edge weight.
SemanticNetwork complete_network(std::size_t n, double weight);

/// Breadth-first reachability check.
bool is_connected(const SemanticNetwork& net);

}  // namespace snm
