#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "snm/network.hpp"

namespace snm {

/// Activation of every node of a companion network at one time step.
///
/// Vectors are aligned with the network's dense node order (`ids`).
/// `incoming` holds the value delivered into a node at the latest step (I),
/// `held` the value the node currently holds (O). The spreading engine
/// accumulates immediately, so after a step the two coincide.
struct ActivationState {
  std::size_t t = 0;
  std::vector<NodeId> ids;
  std::vector<double> incoming;
  std::vector<double> held;
  std::vector<bool> activated;  // fired at step t
  std::vector<bool> source;     // seeded stimulus nodes

  static ActivationState zeros(const SemanticNetwork& net);

  std::size_t size() const { return ids.size(); }
  std::optional<std::size_t> find(NodeId id) const;
  std::size_t index_of(NodeId id) const;
  double held_of(NodeId id) const { return held[index_of(id)]; }
  double total_held() const;
  std::vector<NodeId> activated_ids() const;
  std::vector<NodeId> source_ids() const;

  /// Throws ValidationError unless the state is keyed by exactly the network's
  /// nodes and every energy is finite and non-negative.
  void validate_against(const SemanticNetwork& net) const;

  bool operator==(const ActivationState&) const = default;
};

struct SpreadParams {
  double delta = 0.2;             // attenuation per hop, in [0,1]
  double fire_threshold = 1e-4;   // minimum held energy for a node to fire
  std::size_t max_steps = 5;
  double budget = 100.0;          // total activation energy

  /// Defaults with `fire_threshold = 1e-6 * budget`.
  static SpreadParams with_budget(double budget);
  void validate() const;
};

/// Energy node x delivers to y across one edge: o_x * weight * (1 - delta).
constexpr double edge_spread(double o_x, double weight, double delta) {
  return o_x * weight * (1.0 - delta);
}

/// One synchronous spreading step. Every node z receives
/// `sum over activated neighbours x of edge_spread(held(x), w_xz, delta)` on
/// top of what it already holds. A node fires next step when its held energy
/// reaches `fire_threshold` and changed during this step.
ActivationState step(const SemanticNetwork& net, const ActivationState& state, const SpreadParams& params);

using SpreadObserver = std::function<void(const ActivationState&)>;

/// Seeds `sources`, marks them activated and steps until nothing fires or
/// `max_steps` is reached. The observer, when given, sees the seeded state and
/// every subsequent one.
ActivationState run_spread(const SemanticNetwork& net, const std::map<NodeId, double>& sources,
                           const SpreadParams& params, const SpreadObserver& observer = {});

/// Attention share of node x: (incident weight / total weight) * held(x).
double attention(const SemanticNetwork& net, const ActivationState& state, NodeId x);

/// History-based initial activation, ln(sum_j age_j^-decay) floored at 0.
/// Entries with age 0 are skipped. Throws for future timestamps.
double initial_activation(std::span<const double> history, double now, double decay = 0.5);

/// Sources seeded from node histories: every node with positive initial
/// activation, rescaled so the seeds sum to `budget`. Empty when no node has a
/// usable history.
std::map<NodeId, double> history_sources(const SemanticNetwork& net, double now, double decay, double budget);

/// Uniformly rescales held and incoming values so held sums to `budget`.
ActivationState scale_to_budget(ActivationState state, double budget);

}  // namespace snm
