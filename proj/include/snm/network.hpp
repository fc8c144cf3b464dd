#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace snm {

using NodeId = std::int64_t;

struct ConceptNode {
  NodeId id = 0;
  std::string label;
  double threshold = 0.0;        // per-node activation-energy threshold (E_a)
  std::vector<double> history;   // past activation timestamps, ascending

  bool operator==(const ConceptNode&) const = default;
};

struct WeightedEdge {
  NodeId a = 0;
  NodeId b = 0;
  double weight = 0.0;

  bool operator==(const WeightedEdge&) const = default;
};

/// One entry of a node's adjacency list. `index` is a dense node position.
struct Neighbor {
  std::size_t index;
  double weight;
};

/// Undirected weighted concept graph.
///
/// Nodes are stored in ascending id order and addressed either by id or by
/// their dense position (`index_of`). Edges are stored once per unordered
/// pair with `a < b`. Instances are immutable once built, so a network can be
/// shared read-only between threads.
class SemanticNetwork {
 public:
  SemanticNetwork() = default;

  /// Validates and builds a network. Throws ValidationError on a duplicate
  /// id, empty label, negative threshold, unsorted or non-finite history,
  /// dangling endpoint, self-loop, duplicate edge, or weight outside [0,1].
  static SemanticNetwork build(std::vector<ConceptNode> nodes, std::vector<WeightedEdge> edges);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<ConceptNode>& nodes() const { return nodes_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  const ConceptNode& node(std::size_t index) const { return nodes_.at(index); }
  NodeId id_at(std::size_t index) const { return nodes_.at(index).id; }
  const std::vector<NodeId>& ids() const { return ids_; }

  bool contains(NodeId id) const { return find(id).has_value(); }
  std::optional<std::size_t> find(NodeId id) const;
  /// Throws ValidationError for unknown ids.
  std::size_t index_of(NodeId id) const;

  /// Resolves a label to its node id. Throws ValidationError when the label is
  /// missing or shared by several nodes.
  NodeId id_for_label(const std::string& label) const;

  std::span<const Neighbor> neighbors(std::size_t index) const { return adjacency_.at(index); }
  /// Weight of the edge between two positions, 0 when there is none.
  double weight(std::size_t i, std::size_t j) const;
  bool adjacent(std::size_t i, std::size_t j) const;

  bool operator==(const SemanticNetwork& other) const {
    return nodes_ == other.nodes_ && edges_ == other.edges_;
  }

 private:
  std::vector<ConceptNode> nodes_;
  std::vector<WeightedEdge> edges_;
  std::vector<NodeId> ids_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Sum of the weights of the edges incident to `x`.
double neighbor_weight_sum(const SemanticNetwork& net, NodeId x);

/// Sum of all edge weights, each unordered edge counted once.
double total_weight_sum(const SemanticNetwork& net);

struct PairJudgment {
  std::string label_a;
  std::string label_b;
  double human_score = 0.0;  // normalized to [0,1]

  bool operator==(const PairJudgment&) const = default;
};

}  // namespace snm
