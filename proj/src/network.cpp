#include "snm/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snm/error.hpp"

namespace snm {

namespace {

std::string node_context(std::size_t position, const ConceptNode& n) {
  return "node #" + std::to_string(position) + " (id " + std::to_string(n.id) + ")";
}

std::string edge_context(std::size_t position, const WeightedEdge& e) {
  return "edge #" + std::to_string(position) + " (" + std::to_string(e.a) + "-" + std::to_string(e.b) + ")";
}

}  // namespace

SemanticNetwork SemanticNetwork::build(std::vector<ConceptNode> nodes, std::vector<WeightedEdge> edges) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.label.empty()) throw ValidationError(node_context(i, n) + ": empty label");
    if (!std::isfinite(n.threshold) || n.threshold < 0.0)
      throw ValidationError(node_context(i, n) + ": threshold must be a finite value >= 0");
    for (std::size_t k = 0; k < n.history.size(); ++k) {
      if (!std::isfinite(n.history[k]) || n.history[k] < 0.0)
        throw ValidationError(node_context(i, n) + ": history timestamps must be finite and >= 0");
      if (k > 0 && n.history[k] < n.history[k - 1])
        throw ValidationError(node_context(i, n) + ": history timestamps must be non-decreasing");
    }
  }

  std::stable_sort(nodes.begin(), nodes.end(),
                   [](const ConceptNode& x, const ConceptNode& y) { return x.id < y.id; });
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].id == nodes[i - 1].id)
      throw ValidationError("duplicate node id " + std::to_string(nodes[i].id));
  }

  SemanticNetwork net;
  net.nodes_ = std::move(nodes);
  net.ids_.reserve(net.nodes_.size());
  for (const auto& n : net.nodes_) net.ids_.push_back(n.id);
  net.adjacency_.assign(net.nodes_.size(), {});

  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto& e = edges[k];
    if (e.a == e.b) throw ValidationError(edge_context(k, e) + ": self-loop");
    if (!std::isfinite(e.weight) || e.weight < 0.0 || e.weight > 1.0)
      throw ValidationError(edge_context(k, e) + ": weight " + std::to_string(e.weight) + " outside [0,1]");
    if (!net.contains(e.a)) throw ValidationError(edge_context(k, e) + ": dangling endpoint " + std::to_string(e.a));
    if (!net.contains(e.b)) throw ValidationError(edge_context(k, e) + ": dangling endpoint " + std::to_string(e.b));
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::stable_sort(edges.begin(), edges.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k].a == edges[k - 1].a && edges[k].b == edges[k - 1].b)
      throw ValidationError("duplicate edge " + std::to_string(edges[k].a) + "-" + std::to_string(edges[k].b));
  }

  for (const auto& e : edges) {
    const auto ia = net.index_of(e.a);
    const auto ib = net.index_of(e.b);
    net.adjacency_[ia].push_back({ib, e.weight});
    net.adjacency_[ib].push_back({ia, e.weight});
  }
  for (auto& list : net.adjacency_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& x, const Neighbor& y) { return x.index < y.index; });
  }
  net.edges_ = std::move(edges);
  return net;
}

std::optional<std::size_t> SemanticNetwork::find(NodeId id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

std::size_t SemanticNetwork::index_of(NodeId id) const {
  const auto found = find(id);
  if (!found) throw ValidationError("unknown node id " + std::to_string(id));
  return *found;
}

NodeId SemanticNetwork::id_for_label(const std::string& label) const {
  std::optional<NodeId> hit;
  for (const auto& n : nodes_) {
    if (n.label != label) continue;
    if (hit) throw ValidationError("label '" + label + "' is ambiguous");
    hit = n.id;
  }
  if (!hit) throw ValidationError("unknown label '" + label + "'");
  return *hit;
}

double SemanticNetwork::weight(std::size_t i, std::size_t j) const {
  for (const auto& nb : adjacency_.at(i)) {
    if (nb.index == j) return nb.weight;
  }
  return 0.0;
}

bool SemanticNetwork::adjacent(std::size_t i, std::size_t j) const {
  const auto& list = adjacency_.at(i);
  return std::any_of(list.begin(), list.end(), [j](const Neighbor& nb) { return nb.index == j; });
}

double neighbor_weight_sum(const SemanticNetwork& net, NodeId x) {
  double sum = 0.0;
  for (const auto& nb : net.neighbors(net.index_of(x))) sum += nb.weight;
  return sum;
}

double total_weight_sum(const SemanticNetwork& net) {
  double sum = 0.0;
  for (const auto& e : net.edges()) sum += e.weight;
  return sum;
}

}  // namespace snm
