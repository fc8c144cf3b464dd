#include "snm/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snm/error.hpp"

namespace snm {

namespace {

ActivationState as_shares(ActivationState state, double budget) {
  for (auto& v : state.held) v /= budget;
  for (auto& v : state.incoming) v /= budget;
  return state;
}

// Everything a round needs to price strategies, frozen at the round start.
class RoundModel {
 public:
  RoundModel(const SemanticNetwork& net, const ActivationState& state, const GameParams& params)
      : net_(net), n_(net.size()), proposal_(propose(net, state, params)) {
    const auto screened = screen(net, state, params);
    const auto current_share = as_shares(state, params.budget);
    const auto proposal_share = as_shares(proposal_, params.budget);
    change_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) change_[i] = proposal_share.incoming[i] - current_share.held[i];

    gain_.assign(n_, std::nullopt);
    participant_.assign(n_, false);
    for (const NodeId id : screened) {
      const auto i = net.index_of(id);
      if (state.source[i]) continue;
      participant_[i] = true;
      if (!net.neighbors(i).empty()) gain_[i] = gain(net, id, current_share, proposal_share, params.delta);
    }
  }

  const ActivationState& proposal() const { return proposal_; }
  bool participant(std::size_t i) const { return participant_[i]; }
  bool can_accept(std::size_t i) const { return gain_[i].has_value(); }

  double accept_utility(const std::vector<bool>& accepting, std::size_t i) const {
    double others = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j != i && accepting[j]) others += change_[j] * change_[j];
    }
    const double n = static_cast<double>(n_);
    const double attributable = std::sqrt((others + change_[i] * change_[i]) / n) - std::sqrt(others / n);
    return utility(*gain_[i], attributable);
  }

  std::vector<bool> greatest_equilibrium() const {
    std::vector<bool> accepting(n_, false);
    for (std::size_t i = 0; i < n_; ++i) accepting[i] = participant_[i] && can_accept(i);
    while (true) {
      std::vector<bool> next(n_, false);
      for (std::size_t i = 0; i < n_; ++i) {
        if (accepting[i]) next[i] = accept_utility(accepting, i) > 0.0;
      }
      if (next == accepting) return accepting;
      accepting = std::move(next);
    }
  }

  std::vector<bool> accepting_from(const StrategyProfile& profile) const {
    std::vector<bool> accepting(n_, false);
    for (const auto& [id, s] : profile) {
      if (s == Strategy::Accept) accepting[net_.index_of(id)] = true;
    }
    return accepting;
  }

  double utility_of(const std::vector<bool>& accepting, std::size_t i) const {
    if (!accepting[i]) return 0.0;
    if (!can_accept(i))
      throw DegenerateNodeError("node " + std::to_string(net_.id_at(i)) + " has no neighbours and cannot accept");
    return accept_utility(accepting, i);
  }

 private:
  const SemanticNetwork& net_;
  std::size_t n_;
  ActivationState proposal_;
  std::vector<double> change_;
  std::vector<std::optional<double>> gain_;
  std::vector<bool> participant_;
};

void check_aligned(const ActivationState& a, const ActivationState& b) {
  if (a.ids != b.ids) throw ValidationError("activation states are keyed by different node sets");
}

}  // namespace

std::string_view to_string(Strategy s) { return s == Strategy::Accept ? "accept" : "reject"; }

GameParams GameParams::with_budget(double budget) {
  GameParams p;
  p.budget = budget;
  p.epsilon = 1e-3 * budget;
  return p;
}

void GameParams::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ValidationError("epsilon must be > 0");
  if (max_rounds < 1) throw ValidationError("max_rounds must be >= 1");
  if (screen_threshold && !(*screen_threshold >= 0.0)) throw ValidationError("screen threshold must be >= 0");
  if (!(delta >= 0.0 && delta <= 1.0)) throw ValidationError("delta must lie in [0,1]");
  if (!(budget > 0.0) || !std::isfinite(budget)) throw ValidationError("budget must be > 0");
}

std::set<NodeId> screen(const ActivationState& state, double threshold) {
  std::set<NodeId> out;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state.held[i] >= threshold) out.insert(state.ids[i]);
  }
  return out;
}

std::set<NodeId> screen(const SemanticNetwork& net, const ActivationState& state, const GameParams& params) {
  if (params.screen_threshold) return screen(state, *params.screen_threshold);
  std::set<NodeId> out;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state.held[i] >= net.node(i).threshold) out.insert(state.ids[i]);
  }
  return out;
}

double cost(const ActivationState& current, const ActivationState& proposal) {
  check_aligned(current, proposal);
  if (current.size() == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < current.size(); ++i) {
    const double d = proposal.incoming[i] - current.held[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(current.size()));
}

double signed_power(double x, double p) {
  if (x == 0.0) return 0.0;
  return std::copysign(std::pow(std::fabs(x), p), x);
}

double gain(const SemanticNetwork& net, NodeId i, const ActivationState& current, const ActivationState& proposal,
            double delta) {
  check_aligned(current, proposal);
  const auto neighbors = net.neighbors(net.index_of(i));
  if (neighbors.empty()) throw DegenerateNodeError("gain is undefined for node " + std::to_string(i) + " without neighbours");
  double change = 0.0;
  for (const auto& nb : neighbors) change += proposal.incoming[nb.index] - current.held[nb.index];
  return signed_power(change, 1.0 - delta) / static_cast<double>(neighbors.size());
}

ActivationState propose(const SemanticNetwork& net, const ActivationState& state, const GameParams& params) {
  const auto spreaders = screen(net, state, params);
  ActivationState firing = state;
  for (std::size_t i = 0; i < firing.size(); ++i) firing.activated[i] = spreaders.contains(firing.ids[i]);
  SpreadParams sp;
  sp.delta = params.delta;
  sp.budget = params.budget;
  auto proposal = step(net, firing, sp);
  if (proposal.total_held() > 0.0) proposal = scale_to_budget(std::move(proposal), params.budget);
  return proposal;
}

double profile_utility(const SemanticNetwork& net, const ActivationState& state, const GameParams& params,
                       const StrategyProfile& profile, NodeId i) {
  const RoundModel model(net, state, params);
  const auto idx = net.index_of(i);
  if (!model.participant(idx)) throw ValidationError("node " + std::to_string(i) + " does not take part in this round");
  return model.utility_of(model.accepting_from(profile), idx);
}

RoundResult best_response_round(const SemanticNetwork& net, const ActivationState& state, const GameParams& params) {
  params.validate();
  state.validate_against(net);
  const auto n = net.size();
  const RoundModel model(net, state, params);

  RoundResult result;
  result.proposal = model.proposal();
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) any = any || model.participant(i);
  if (!any) {
    result.next = state;
    return result;
  }

  const auto accepting = model.greatest_equilibrium();
  ActivationState next = state;
  next.t = state.t + 1;
  for (std::size_t i = 0; i < n; ++i) {
    next.activated[i] = accepting[i];
    if (accepting[i]) next.held[i] = model.proposal().held[i];
    if (!model.participant(i)) continue;
    const NodeId id = net.id_at(i);
    result.strategies[id] = accepting[i] ? Strategy::Accept : Strategy::Reject;
    result.utilities[id] = model.utility_of(accepting, i);
  }

  // Sources keep their energy; everyone else absorbs the budget correction.
  double pinned = 0.0;
  double free_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) (next.source[i] ? pinned : free_total) += next.held[i];
  const double room = params.budget - pinned;
  if (free_total > 0.0 && room > 0.0) {
    const double factor = room / free_total;
    for (std::size_t i = 0; i < n; ++i) {
      if (!next.source[i]) next.held[i] *= factor;
    }
  } else if (pinned + free_total > 0.0) {
    const double factor = params.budget / (pinned + free_total);
    for (auto& v : next.held) v *= factor;
  }
  next.incoming = next.held;
  result.next = std::move(next);
  return result;
}

GameOutcome run_game(const SemanticNetwork& net, const ActivationState& initial, const GameParams& params,
                     const RoundObserver& observer) {
  params.validate();
  initial.validate_against(net);
  const double total = initial.total_held();
  if (!(total > 0.0)) throw ValidationError("the initial state holds no energy");
  if (total > params.budget * (1.0 + 1e-9))
    throw ValidationError("initial energy " + std::to_string(total) + " exceeds the budget " + std::to_string(params.budget));

  GameOutcome out;
  auto state = scale_to_budget(initial, params.budget);
  state.incoming = state.held;
  out.decided_from = state;
  while (out.rounds < params.max_rounds) {
    auto result = best_response_round(net, state, params);
    const double c = cost(state, result.next);
    ++out.rounds;
    out.round_costs.push_back(c);
    if (observer) observer(out.rounds, result, c);
    out.decided_from = std::move(state);
    state = std::move(result.next);
    out.strategies = std::move(result.strategies);
    out.utilities = std::move(result.utilities);
    if (c < params.epsilon) {
      out.converged = true;
      break;
    }
  }
  out.final = std::move(state);
  return out;
}

bool verify_nash(const SemanticNetwork& net, const GameOutcome& outcome, const GameParams& params) {
  const RoundModel model(net, outcome.decided_from, params);
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (model.participant(i) != outcome.strategies.contains(net.id_at(i))) return false;
  }
  const auto accepting = model.accepting_from(outcome.strategies);
  for (const auto& [id, s] : outcome.strategies) {
    const auto i = net.index_of(id);
    if (!model.can_accept(i)) {
      if (s == Strategy::Accept) return false;
      continue;  // Reject is the only strategy available
    }
    auto flipped = accepting;
    flipped[i] = !flipped[i];
    if (model.utility_of(flipped, i) > model.utility_of(accepting, i)) return false;
  }
  return true;
}

std::vector<std::pair<NodeId, double>> rank_nodes(const ActivationState& state, std::size_t k) {
  if (k < 1) throw ValidationError("rank_nodes needs k >= 1");
  std::vector<std::pair<NodeId, double>> all;
  all.reserve(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) all.emplace_back(state.ids[i], state.held[i]);
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace snm
