#include "snm/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "snm/error.hpp"

namespace snm {

void CobwebParams::validate() const {
  if (max_iters < 1) throw ValidationError("cobweb max_iters must be >= 1");
  if (!(tol > 0.0)) throw ValidationError("cobweb tol must be > 0");
  if (!(demand_slope >= 0.0) || !(supply_slope >= 0.0)) throw ValidationError("cobweb slopes must be >= 0");
  if (!std::isfinite(r) || !std::isfinite(demand_intercept) || !std::isfinite(supply_intercept))
    throw ValidationError("cobweb parameters must be finite");
}

CobwebState cobweb_step(const CobwebState& state, const CobwebParams& params) {
  CobwebState next;
  next.o = state.incoming + params.r * (params.demand(state.o) - params.supply(state.expected));
  next.expected = state.o;
  next.incoming = state.incoming;
  return next;
}

CobwebParams node_curves(const CobwebParams& shared, double demand) {
  CobwebParams p = shared;
  p.demand_intercept = demand * (1.0 + shared.demand_slope);
  p.supply_intercept = demand * (1.0 - shared.supply_slope);
  return p;
}

CobwebResult run_cobweb(const std::vector<CobwebNode>& nodes, const CobwebParams& params, double budget,
                        const CobwebObserver& observer) {
  params.validate();
  if (!(budget > 0.0)) throw ValidationError("cobweb budget must be > 0");

  std::vector<CobwebParams> curves;
  std::vector<CobwebState> states;
  for (const auto& node : nodes) {
    curves.push_back(node_curves(params, node.demand));
    states.push_back({node.initial, node.initial, node.initial});
  }

  CobwebResult result;
  result.allocations.resize(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) result.allocations[k] = nodes[k].initial;

  while (result.iters < params.max_iters) {
    ++result.iters;
    double remaining = budget;
    bool settled = true;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const auto& s = states[k];
      const double excess = curves[k].demand(s.o) - curves[k].supply(s.expected);
      const double request = cobweb_step(s, curves[k]).o;
      const double granted = std::clamp(request, 0.0, remaining);
      remaining -= granted;
      // A clamp can hold the value still for one cycle while the expectation
      // is far off, so a node only counts as settled at a true fixed point.
      settled = settled && std::fabs(granted - s.o) < params.tol && std::fabs(s.o - s.expected) < params.tol;
      if (observer) observer({result.iters, k, s.o, excess, granted});
      states[k] = {granted, s.o, granted};
      result.allocations[k] = granted;
    }
    if (settled) {
      result.converged = true;
      break;
    }
  }
  return result;
}

ActivationState run_traditional(const SemanticNetwork& net, const std::map<NodeId, double>& sources,
                                const SpreadParams& params, const SpreadObserver& observer) {
  return run_spread(net, sources, params, observer);
}

}  // namespace snm
