#include "snm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "snm/error.hpp"
#include "snm/generate.hpp"

namespace snm {

std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

bool has_ties(std::span<const double> xs) {
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw ValidationError("spearman is undefined for a constant input");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

SpearmanResult spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw ValidationError("spearman inputs differ in length");
  if (xs.size() < 2) throw ValidationError("spearman needs at least 2 observations");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);

  SpearmanResult out;
  out.ties = has_ties(xs) || has_ties(ys);
  if (out.ties) {
    out.rho = pearson(rx, ry);
  } else {
    double sum_d2 = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) sum_d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    const double n = static_cast<double>(xs.size());
    out.rho = 1.0 - 6.0 * sum_d2 / (n * (n * n - 1.0));
  }
  out.rho = std::clamp(out.rho, -1.0, 1.0);
  return out;
}

ActivationState relatedness_probe(const SemanticNetwork& net, NodeId source, const SpreadParams& sp,
                                  const GameParams& gp, bool use_game) {
  auto spread = run_spread(net, {{source, sp.budget}}, sp);
  spread = scale_to_budget(std::move(spread), gp.budget);
  if (!use_game) return spread;
  return run_game(net, spread, gp).final;
}

namespace {

double normalized_share(const ActivationState& state, NodeId target) {
  const double peak = *std::max_element(state.held.begin(), state.held.end());
  return peak > 0.0 ? state.held_of(target) / peak : 0.0;
}

void check_relatedness_inputs(const SemanticNetwork& net, NodeId a, NodeId b) {
  net.index_of(a);
  net.index_of(b);
  if (!(total_weight_sum(net) > 0.0)) throw ValidationError("relatedness is undefined on an edgeless network");
}

}  // namespace

double relatedness(const SemanticNetwork& net, NodeId a, NodeId b, const SpreadParams& sp, const GameParams& gp,
                   bool use_game) {
  check_relatedness_inputs(net, a, b);
  if (a == b) return 1.0;
  const double forward = normalized_share(relatedness_probe(net, a, sp, gp, use_game), b);
  const double backward = normalized_share(relatedness_probe(net, b, sp, gp, use_game), a);
  return (forward + backward) / 2.0;
}

EvalReport evaluate_pairs(const SemanticNetwork& net, const std::vector<PairJudgment>& pairs, const SpreadParams& sp,
                          const GameParams& gp, bool use_game) {
  if (pairs.size() < 2) throw ValidationError("evaluation needs at least 2 pairs");
  if (!(total_weight_sum(net) > 0.0)) throw ValidationError("relatedness is undefined on an edgeless network");

  std::map<NodeId, ActivationState> probes;
  auto probe = [&](NodeId source) -> const ActivationState& {
    auto it = probes.find(source);
    if (it == probes.end()) it = probes.emplace(source, relatedness_probe(net, source, sp, gp, use_game)).first;
    return it->second;
  };

  EvalReport report;
  std::vector<double> human, model;
  for (const auto& p : pairs) {
    const NodeId a = net.id_for_label(p.label_a);
    const NodeId b = net.id_for_label(p.label_b);
    double score = 1.0;
    if (a != b) score = (normalized_share(probe(a), b) + normalized_share(probe(b), a)) / 2.0;
    report.pairs.push_back({p.label_a, p.label_b, p.human_score, score});
    human.push_back(p.human_score);
    model.push_back(score);
  }
  const auto sr = spearman(human, model);
  report.rho = sr.rho;
  report.tie_warning = sr.ties;
  report.n_pairs = report.pairs.size();
  return report;
}

double load_balance(const ActivationState& state) {
  if (state.size() < 2) throw ValidationError("load balance needs at least 2 nodes");
  const double n = static_cast<double>(state.size());
  const double mean = state.total_held() / n;
  double ss = 0.0;
  for (const double v : state.held) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / n);
}

double utilization(const std::map<NodeId, double>& allocations, const std::map<NodeId, double>& demands, double budget) {
  if (!(budget > 0.0)) throw ValidationError("utilization needs a positive budget");
  if (allocations.size() != demands.size()) throw ValidationError("allocations and demands cover different nodes");
  double used = 0.0;
  auto a = allocations.begin();
  for (auto d = demands.begin(); d != demands.end(); ++d, ++a) {
    if (a->first != d->first) throw ValidationError("allocations and demands cover different nodes");
    used += std::min(a->second, d->second);
  }
  return std::clamp(used / budget, 0.0, 1.0);
}

Cycles cycles_to_equilibrium(const GameOutcome& outcome) { return {outcome.rounds, outcome.converged}; }

Cycles cycles_to_equilibrium(const CobwebResult& result) { return {result.iters, result.converged}; }

LoadBalanceTrial load_balance_trial(std::uint64_t seed, std::size_t n, double edge_prob, const SpreadParams& sp,
                                    const GameParams& gp) {
  const auto net = generate_network(n, edge_prob, seed);
  const NodeId source = static_cast<NodeId>(seed % n);
  const auto traditional = scale_to_budget(run_traditional(net, {{source, sp.budget}}, sp), gp.budget);
  const auto game = run_game(net, traditional, gp);
  return {seed, load_balance(game.final), load_balance(traditional), game.rounds, game.converged};
}

namespace {

std::map<NodeId, double> keyed(const std::vector<double>& values) {
  std::map<NodeId, double> out;
  for (std::size_t i = 0; i < values.size(); ++i) out[static_cast<NodeId>(i)] = values[i];
  return out;
}

std::size_t count_unmet(const std::vector<double>& alloc, const std::vector<double>& demands) {
  std::size_t unmet = 0;
  for (std::size_t i = 0; i < alloc.size(); ++i) {
    if (alloc[i] < demands[i] * (1.0 - kDemandTolerance)) ++unmet;
  }
  return unmet;
}

}  // namespace

std::vector<double> perturbed_demands(std::uint64_t seed, std::size_t nodes, double per_node_demand) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> factor(1.0 - kAllocationJitter, 1.0 + kAllocationJitter);
  std::vector<double> out;
  for (std::size_t i = 0; i < nodes; ++i) out.push_back(factor(rng) * per_node_demand);
  return out;
}

AllocationTrial allocation_trial(std::uint64_t seed, std::size_t nodes, double per_node_demand, double budget,
                                 const CobwebParams& cobweb, const GameParams& gp) {
  if (nodes < 2) throw ValidationError("allocation trials need at least 2 nodes");
  AllocationTrial trial;
  trial.seed = seed;
  trial.budget = budget;
  trial.demands.assign(nodes, per_node_demand);

  trial.initial = perturbed_demands(seed, nodes, per_node_demand);
  double total = 0.0;
  for (const double v : trial.initial) total += v;
  for (auto& v : trial.initial) v *= budget / total;

  const auto net = complete_network(nodes, 1.0);
  auto start = ActivationState::zeros(net);
  start.held = trial.initial;
  start.incoming = trial.initial;
  GameParams params = gp;
  params.budget = budget;
  const auto game = run_game(net, start, params);
  trial.snm_allocations = game.final.held;
  trial.snm_cycles = cycles_to_equilibrium(game);

  std::vector<CobwebNode> cw_nodes;
  for (std::size_t i = 0; i < nodes; ++i) cw_nodes.push_back({trial.initial[i], per_node_demand});
  const auto cw = run_cobweb(cw_nodes, cobweb, budget);
  trial.cobweb_allocations = cw.allocations;
  trial.cobweb_cycles = cycles_to_equilibrium(cw);

  const auto demands = keyed(trial.demands);
  trial.snm_utilization = utilization(keyed(trial.snm_allocations), demands, budget);
  trial.cobweb_utilization = utilization(keyed(trial.cobweb_allocations), demands, budget);
  trial.snm_unmet = count_unmet(trial.snm_allocations, trial.demands);
  trial.cobweb_unmet = count_unmet(trial.cobweb_allocations, trial.demands);
  return trial;
}

}  // namespace snm
