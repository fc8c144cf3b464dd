#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "snm/network.hpp"
#include "snm/spreading.hpp"

namespace snm {

// Cobweb-theorem allocator. Demand D(O) = demand_intercept - demand_slope * O,
// supply S(O') = supply_intercept + supply_slope * O', expectations are naive
// (O'(t+1) = O(t)).
struct CobwebParams {
  double r = 0.5;
  double demand_intercept = 0.0;
  double demand_slope = 1.0;
  double supply_intercept = 0.0;
  double supply_slope = 1.0;
  std::size_t max_iters = 100;
  double tol = 1e-6;

  double demand(double o) const { return demand_intercept - demand_slope * o; }
  double supply(double expected) const { return supply_intercept + supply_slope * expected; }
  void validate() const;
};

struct CobwebState {
  double o = 0.0;         // O(t)
  double expected = 0.0;  // O'(t)
  double incoming = 0.0;  // I(t)

  bool operator==(const CobwebState&) const = default;
};

/// O(t+1) = I(t) + r * (D(O(t)) - S(O'(t))); O'(t+1) = O(t); I carried forward.
CobwebState cobweb_step(const CobwebState& state, const CobwebParams& params);

struct CobwebNode {
  double initial = 0.0;
  double demand = 0.0;  // equilibrium the node's curves cross at
};

struct CobwebResult {
  std::vector<double> allocations;  // indexed like the input nodes
  std::size_t iters = 0;
  bool converged = false;
};

struct CobwebTraceRow {
  std::size_t iter;
  std::size_t node;
  double o;
  double excess_demand;
  double allocated;
};

using CobwebObserver = std::function<void(const CobwebTraceRow&)>;

/// Curves of a node whose demand and supply cross at (demand, demand): the
/// intercepts of `shared` are replaced, slopes, r and limits are kept.
CobwebParams node_curves(const CobwebParams& shared, double demand);

/// Runs one cobweb recurrence per node against a shared budget pool. Each
/// cycle the nodes, in input order, request their next activation value and
/// are granted min(max(request, 0), remaining budget). The granted value
/// becomes the node's activation and its next incoming value. Stops when every
/// node moved by less than `tol` and its expectation is within `tol` of its
/// value (a fixed point of the recurrence), or after `max_iters` cycles.
CobwebResult run_cobweb(const std::vector<CobwebNode>& nodes, const CobwebParams& params, double budget,
                        const CobwebObserver& observer = {});

/// Spreading without any game phase.
ActivationState run_traditional(const SemanticNetwork& net, const std::map<NodeId, double>& sources,
                                const SpreadParams& params, const SpreadObserver& observer = {});

}  // namespace snm
