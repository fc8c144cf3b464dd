#include "snm/generate.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "snm/error.hpp"

namespace snm {

namespace {

std::vector<ConceptNode> plain_nodes(std::size_t n) {
  std::vector<ConceptNode> nodes;
  nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({static_cast<NodeId>(i), "n" + std::to_string(i), 0.0, {}});
  return nodes;
}

// (0,1]
double unit_weight(std::mt19937_64& rng) { return 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace

SemanticNetwork generate_network(std::size_t n, double edge_prob, std::uint64_t seed) {
  if (n < 2) throw ValidationError("generated networks need at least 2 nodes");
  if (!(edge_prob > 0.0 && edge_prob <= 1.0)) throw ValidationError("edge probability must lie in (0,1]");

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::set<std::pair<std::size_t, std::size_t>> present;
  std::vector<WeightedEdge> edges;
  auto add = [&](std::size_t a, std::size_t b, double w) {
    if (a > b) std::swap(a, b);
    present.emplace(a, b);
    edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), w});
  };
  for (std::size_t k = 1; k < n; ++k) {
    const auto parent = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
    add(order[k], order[parent], unit_weight(rng));
  }
  std::bernoulli_distribution coin(edge_prob);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (present.contains({a, b})) continue;
      if (coin(rng)) add(a, b, unit_weight(rng));
    }
  }
  return SemanticNetwork::build(plain_nodes(n), std::move(edges));
}

SemanticNetwork two_cluster_network(std::size_t cluster_size, std::uint64_t seed) {
  if (cluster_size < 2) throw ValidationError("clusters need at least 2 nodes");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> strong(0.3, 1.0);
  std::vector<WeightedEdge> edges;
  for (std::size_t c = 0; c < 2; ++c) {
    const auto base = c * cluster_size;
    for (std::size_t i = 0; i < cluster_size; ++i) {
      for (std::size_t j = i + 1; j < cluster_size; ++j) {
        edges.push_back({static_cast<NodeId>(base + i), static_cast<NodeId>(base + j), strong(rng)});
      }
    }
  }
  edges.push_back({static_cast<NodeId>(cluster_size - 1), static_cast<NodeId>(cluster_size), 0.1});
  return SemanticNetwork::build(plain_nodes(2 * cluster_size), std::move(edges));
}

SemanticNetwork complete_network(std::size_t n, double weight) {
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), weight});
  }
  return SemanticNetwork::build(plain_nodes(n), std::move(edges));
}

bool is_connected(const SemanticNetwork& net) {
  if (net.size() == 0) return true;
  std::vector<bool> seen(net.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();
    for (const auto& nb : net.neighbors(i)) {
      if (seen[nb.index]) continue;
      seen[nb.index] = true;
      ++reached;
      queue.push_back(nb.index);
    }
  }
  return reached == net.size();
}

}  // namespace snm
