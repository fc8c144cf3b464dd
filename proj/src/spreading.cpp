#include "snm/spreading.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "snm/error.hpp"

namespace snm {

ActivationState ActivationState::zeros(const SemanticNetwork& net) {
  ActivationState s;
  const auto n = net.size();
  s.ids = net.ids();
  s.incoming.assign(n, 0.0);
  s.held.assign(n, 0.0);
  s.activated.assign(n, false);
  s.source.assign(n, false);
  return s;
}

std::optional<std::size_t> ActivationState::find(NodeId id) const {
  const auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids.begin());
}

std::size_t ActivationState::index_of(NodeId id) const {
  const auto i = find(id);
  if (!i) throw ValidationError("node id " + std::to_string(id) + " is not part of the activation state");
  return *i;
}

double ActivationState::total_held() const { return std::accumulate(held.begin(), held.end(), 0.0); }

std::vector<NodeId> ActivationState::activated_ids() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (activated[i]) out.push_back(ids[i]);
  }
  return out;
}

std::vector<NodeId> ActivationState::source_ids() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (source[i]) out.push_back(ids[i]);
  }
  return out;
}

void ActivationState::validate_against(const SemanticNetwork& net) const {
  if (ids != net.ids()) throw ValidationError("activation state is not keyed by the network's nodes");
  const auto n = ids.size();
  if (incoming.size() != n || held.size() != n || activated.size() != n || source.size() != n)
    throw ValidationError("activation state vectors have inconsistent lengths");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(held[i]) || held[i] < 0.0 || !std::isfinite(incoming[i]) || incoming[i] < 0.0)
      throw ValidationError("node " + std::to_string(ids[i]) + " has a negative or non-finite energy");
  }
}

SpreadParams SpreadParams::with_budget(double budget) {
  SpreadParams p;
  p.budget = budget;
  p.fire_threshold = 1e-6 * budget;
  return p;
}

void SpreadParams::validate() const {
  if (!(delta >= 0.0 && delta <= 1.0)) throw ValidationError("delta must lie in [0,1]");
  if (!(fire_threshold >= 0.0) || !std::isfinite(fire_threshold)) throw ValidationError("fire_threshold must be >= 0");
  if (max_steps < 1) throw ValidationError("max_steps must be positive");
  if (!(budget > 0.0) || !std::isfinite(budget)) throw ValidationError("budget must be > 0");
}

ActivationState step(const SemanticNetwork& net, const ActivationState& state, const SpreadParams& params) {
  const auto n = net.size();
  ActivationState next = state;
  next.t = state.t + 1;
  for (std::size_t z = 0; z < n; ++z) {
    double inflow = 0.0;
    for (const auto& nb : net.neighbors(z)) {
      if (state.activated[nb.index]) inflow += edge_spread(state.held[nb.index], nb.weight, params.delta);
    }
    next.held[z] = state.held[z] + inflow;
    next.incoming[z] = next.held[z];
    next.activated[z] = next.held[z] >= params.fire_threshold && next.held[z] != state.held[z];
  }
  return next;
}

ActivationState run_spread(const SemanticNetwork& net, const std::map<NodeId, double>& sources,
                           const SpreadParams& params, const SpreadObserver& observer) {
  params.validate();
  if (sources.empty()) throw ValidationError("spreading needs at least one source");
  auto state = ActivationState::zeros(net);
  double total = 0.0;
  for (const auto& [id, energy] : sources) {
    const auto i = net.find(id);
    if (!i) throw ValidationError("source id " + std::to_string(id) + " is not in the network");
    if (!std::isfinite(energy) || energy < 0.0)
      throw ValidationError("source " + std::to_string(id) + " has a negative or non-finite energy");
    state.held[*i] = energy;
    state.incoming[*i] = energy;
    state.activated[*i] = true;
    state.source[*i] = true;
    total += energy;
  }
  if (total > params.budget * (1.0 + 1e-12))
    throw ValidationError("source energies sum to " + std::to_string(total) + ", above the budget " +
                          std::to_string(params.budget));

  if (observer) observer(state);
  while (state.t < params.max_steps &&
         std::any_of(state.activated.begin(), state.activated.end(), [](bool b) { return b; })) {
    state = step(net, state, params);
    if (observer) observer(state);
  }
  return state;
}

double attention(const SemanticNetwork& net, const ActivationState& state, NodeId x) {
  const double total = total_weight_sum(net);
  if (!(total > 0.0)) throw ValidationError("attention is undefined on an edgeless network");
  return neighbor_weight_sum(net, x) / total * state.held[net.index_of(x)];
}

double initial_activation(std::span<const double> history, double now, double decay) {
  if (!(decay > 0.0)) throw ValidationError("decay must be > 0");
  double sum = 0.0;
  for (const double ts : history) {
    if (ts > now) throw ValidationError("history timestamp " + std::to_string(ts) + " lies after now");
    const double age = now - ts;
    if (age > 0.0) sum += std::pow(age, -decay);
  }
  if (sum <= 0.0) return 0.0;
  return std::max(0.0, std::log(sum));
}

std::map<NodeId, double> history_sources(const SemanticNetwork& net, double now, double decay, double budget) {
  std::map<NodeId, double> out;
  double total = 0.0;
  for (const auto& node : net.nodes()) {
    const double a = initial_activation(node.history, now, decay);
    if (a > 0.0) {
      out[node.id] = a;
      total += a;
    }
  }
  for (auto& [id, energy] : out) energy = energy / total * budget;
  return out;
}

ActivationState scale_to_budget(ActivationState state, double budget) {
  const double total = state.total_held();
  if (!(total > 0.0)) throw ValidationError("cannot rescale an activation state that holds no energy");
  const double factor = budget / total;
  for (auto& v : state.held) v *= factor;
  for (auto& v : state.incoming) v *= factor;
  return state;
}

}  // namespace snm
