#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "snm/network.hpp"
#include "snm/spreading.hpp"

namespace snm {

enum class Strategy { Accept, Reject };

std::string_view to_string(Strategy s);

struct GameParams {
  double epsilon = 0.1;                   // convergence threshold on per-round cost
  std::size_t max_rounds = 100;
  std::optional<double> screen_threshold;  // overrides per-node thresholds when set
  double delta = 0.2;
  double budget = 100.0;

  /// Defaults with `epsilon = 1e-3 * budget`.
  static GameParams with_budget(double budget);
  void validate() const;
};

using StrategyProfile = std::map<NodeId, Strategy>;

struct RoundResult {
  ActivationState next;
  StrategyProfile strategies;          // keyed by the round's participants
  std::map<NodeId, double> utilities;  // utility of the chosen strategy
  ActivationState proposal;            // the redistribution the round voted on
};

struct GameOutcome {
  ActivationState final;
  ActivationState decided_from;  // state the final profile was chosen against
  StrategyProfile strategies;
  std::map<NodeId, double> utilities;
  std::size_t rounds = 0;
  bool converged = false;
  std::vector<double> round_costs;
};

/// Nodes whose held energy is at least `threshold` (inclusive).
std::set<NodeId> screen(const ActivationState& state, double threshold);

/// Screening with per-node thresholds, or `params.screen_threshold` when set.
std::set<NodeId> screen(const SemanticNetwork& net, const ActivationState& state, const GameParams& params);

/// Root-mean-square of `proposal.incoming - current.held` over all nodes.
double cost(const ActivationState& current, const ActivationState& proposal);

/// Signed power sign(x) * |x|^p.
double signed_power(double x, double p);

/// Attenuated mean change of i's neighbourhood:
/// signed_power(sum_x (proposal.incoming(x) - current.held(x)), 1 - delta) / deg(i).
/// Throws DegenerateNodeError when i has no neighbours.
double gain(const SemanticNetwork& net, NodeId i, const ActivationState& current, const ActivationState& proposal,
            double delta);

constexpr double utility(double g, double c) { return g - c; }

/// The redistribution a round votes on: one spreading step fired by the
/// screened nodes, rescaled to the budget.
ActivationState propose(const SemanticNetwork& net, const ActivationState& state, const GameParams& params);

/// Utility node i receives from its strategy in `profile` when the round is
/// played from `state`.
///
/// Utilities are measured in budget shares (energy / budget). Reject is worth
/// 0. Accept is worth the node's gain minus the part of the round cost that
/// its own change adds given everyone else's choices:
///   rms(changes of the other acceptors and i) - rms(changes of the other acceptors).
double profile_utility(const SemanticNetwork& net, const ActivationState& state, const GameParams& params,
                       const StrategyProfile& profile, NodeId i);

/// Plays one round from `state`:
///  1. screen participants (sources keep their energy and take no strategy),
///  2. build the proposal,
///  3. settle on the greatest Nash profile by best-response iteration that
///     starts from everybody accepting (ties resolve to Reject),
///  4. commit accepted values and rescale non-source nodes so the total held
///     energy equals the budget.
/// With no participants the state is returned unchanged with an empty profile.
RoundResult best_response_round(const SemanticNetwork& net, const ActivationState& state, const GameParams& params);

using RoundObserver = std::function<void(std::size_t round, const RoundResult& result, double round_cost)>;

/// Rescales `initial` to the budget, then repeats rounds until the
/// per-round cost drops below epsilon or max_rounds is hit.
GameOutcome run_game(const SemanticNetwork& net, const ActivationState& initial, const GameParams& params,
                     const RoundObserver& observer = {});

/// True iff no participant of the final profile gains strictly by flipping
/// its strategy while the others hold theirs.
bool verify_nash(const SemanticNetwork& net, const GameOutcome& outcome, const GameParams& params);

/// Top-k nodes by held energy, descending, ties by ascending id.
std::vector<std::pair<NodeId, double>> rank_nodes(const ActivationState& state, std::size_t k);

}  // namespace snm
