#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "snm/baselines.hpp"
#include "snm/game.hpp"
#include "snm/network.hpp"
#include "snm/spreading.hpp"

namespace snm {

struct SpearmanResult {
  double rho = 0.0;
  bool ties = false;  // rho came from the Pearson-of-ranks fallback
};

/// 1-based ranks, tied values share their average rank.
std::vector<double> average_ranks(std::span<const double> xs);

/// Spearman's rank correlation. Without ties the closed form
/// 1 - 6 sum d^2 / (n (n^2 - 1)) is used; with ties, the Pearson correlation
/// of the average-rank vectors. Throws on length mismatch, fewer than 2
/// values, or a constant rank vector.
SpearmanResult spearman(std::span<const double> xs, std::span<const double> ys);

/// Final state of one relatedness probe: `source` seeded with the full
/// budget, spread, rescaled to the budget, then (optionally) the game.
ActivationState relatedness_probe(const SemanticNetwork& net, NodeId source, const SpreadParams& sp,
                                  const GameParams& gp, bool use_game = true);

/// Symmetric relatedness in [0,1]: the mean over both seeding directions of
/// the target's final held energy divided by the largest held energy.
double relatedness(const SemanticNetwork& net, NodeId a, NodeId b, const SpreadParams& sp, const GameParams& gp,
                   bool use_game = true);

struct EvalRow {
  std::string label_a;
  std::string label_b;
  double human_score;
  double model_score;
};

struct EvalReport {
  double rho = 0.0;
  std::vector<EvalRow> pairs;
  std::size_t n_pairs = 0;
  bool tie_warning = false;
};

EvalReport evaluate_pairs(const SemanticNetwork& net, const std::vector<PairJudgment>& pairs, const SpreadParams& sp,
                          const GameParams& gp, bool use_game = true);

/// Population standard deviation of the held energies.
double load_balance(const ActivationState& state);

/// sum_i min(allocation_i, demand_i) / budget, clamped to [0,1].
double utilization(const std::map<NodeId, double>& allocations, const std::map<NodeId, double>& demands, double budget);

struct Cycles {
  std::size_t count = 0;
  bool converged = false;
};

Cycles cycles_to_equilibrium(const GameOutcome& outcome);
Cycles cycles_to_equilibrium(const CobwebResult& result);

// --- comparison experiments ---------------------------------------------

struct LoadBalanceTrial {
  std::uint64_t seed = 0;
  double snm_stddev = 0.0;
  double traditional_stddev = 0.0;
  std::size_t rounds = 0;
  bool converged = false;
};

/// Spreads from one seeded source on `generate_network(n, edge_prob, seed)`
/// and compares the dispersion of the spread-only state (rescaled to the
/// budget) with the state after the game.
LoadBalanceTrial load_balance_trial(std::uint64_t seed, std::size_t n, double edge_prob, const SpreadParams& sp,
                                    const GameParams& gp);

struct AllocationTrial {
  std::uint64_t seed = 0;
  double budget = 0.0;
  std::vector<double> demands;
  std::vector<double> initial;
  std::vector<double> snm_allocations;
  std::vector<double> cobweb_allocations;
  double snm_utilization = 0.0;
  double cobweb_utilization = 0.0;
  std::size_t snm_unmet = 0;
  std::size_t cobweb_unmet = 0;
  Cycles snm_cycles;
  Cycles cobweb_cycles;
};

/// Relative shortfall under which a demand still counts as met.
inline constexpr double kDemandTolerance = 1e-3;

/// Half-width of the relative perturbation applied to the demand level when
/// seeding allocation trials. The game only moves nodes whose proposed change
/// is small relative to the budget, so wide perturbations freeze it.
inline constexpr double kAllocationJitter = 0.1;

/// Seeded start values in demand * [1 - jitter, 1 + jitter), not yet scaled.
std::vector<double> perturbed_demands(std::uint64_t seed, std::size_t nodes, double per_node_demand);

/// `nodes` nodes with equal demand compete for `budget`. The game runs on a
/// complete unit-weight network without sources; the cobweb model runs with
/// `cobweb`. Both start from the same seeded random distribution.
AllocationTrial allocation_trial(std::uint64_t seed, std::size_t nodes, double per_node_demand, double budget,
                                 const CobwebParams& cobweb, const GameParams& gp);

}  // namespace snm
