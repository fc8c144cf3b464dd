#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "snm/baselines.hpp"
#include "snm/error.hpp"
#include "snm/generate.hpp"

using namespace snm;

TEST_CASE("cobweb_step examples") {
  CobwebParams p;
  p.r = 0.0;
  p.demand_intercept = 10;
  p.supply_intercept = 2;
  const CobwebState s{4.0, 3.0, 7.0};
  CHECK(cobweb_step(s, p).o == 7.0);

  p.r = 0.5;
  // D(4) = 10 - 4 = 6, S(4) = 2 + 4 = 6: no excess demand
  const CobwebState balanced{4.0, 4.0, 4.0};
  const auto next = cobweb_step(balanced, p);
  CHECK(next.o == 4.0 + 0.5 * ((10.0 - 4.0) - (2.0 + 4.0)));
  CHECK(next.expected == 4.0);
  CHECK(next.incoming == 4.0);

  const CobwebState off{5.0, 2.0, 1.0};
  CHECK(cobweb_step(off, p).o == doctest::Approx(1.0 + 0.5 * ((10.0 - 5.0) - (2.0 + 2.0))));
  CHECK(cobweb_step(off, p).expected == 5.0);
}

TEST_CASE("node curves cross at the demand") {
  CobwebParams shared;
  shared.demand_slope = 0.7;
  shared.supply_slope = 1.3;
  const auto p = node_curves(shared, 20.0);
  CHECK(p.demand(20.0) == doctest::Approx(20.0));
  CHECK(p.supply(20.0) == doctest::Approx(20.0));
}

TEST_CASE("single node at equilibrium converges in one iteration") {
  CobwebParams p;
  const auto r = run_cobweb({{20.0, 20.0}}, p, 100.0);
  CHECK(r.converged);
  CHECK(r.iters == 1);
  CHECK(r.allocations[0] == 20.0);
}

TEST_CASE("run_cobweb matches an independent recurrence replay") {
  CobwebParams p;
  p.r = 0.4;
  p.demand_slope = 0.8;
  p.supply_slope = 0.6;
  p.max_iters = 30;
  p.tol = 1e-9;
  const std::vector<CobwebNode> nodes{{10, 12}, {15, 12}, {8, 12}, {20, 12}, {11, 12}};
  const double budget = 1000.0;  // never binding
  const auto r = run_cobweb(nodes, p, budget);

  std::vector<double> o, prev;
  for (const auto& n : nodes) o.push_back(n.initial), prev.push_back(n.initial);
  for (std::size_t it = 0; it < r.iters; ++it) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double d = nodes[k].demand;
      const double demand = d * (1 + p.demand_slope) - p.demand_slope * o[k];
      const double supply = d * (1 - p.supply_slope) + p.supply_slope * prev[k];
      const double next = std::max(0.0, o[k] + p.r * (demand - supply));
      prev[k] = o[k];
      o[k] = next;
    }
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) CHECK(r.allocations[k] == doctest::Approx(o[k]).epsilon(1e-12));
}

TEST_CASE("stability follows r times the slope sum") {
  for (const double r : {0.2, 0.5, 0.9}) {
    for (const double ds : {0.5, 1.0, 2.0}) {
      for (const double ss : {0.5, 1.0, 2.0}) {
        CobwebParams p;
        p.r = r;
        p.demand_slope = ds;
        p.supply_slope = ss;
        p.max_iters = 500;
        const auto res = run_cobweb({{15.0, 20.0}}, p, 1e6);
        CAPTURE(r);
        CAPTURE(ds);
        CAPTURE(ss);
        if (r * (ds + ss) < 1.0) CHECK(res.converged);
      }
    }
  }
}

TEST_CASE("surplus budget can still leave demand unmet when oscillating") {
  CobwebParams p;
  p.r = 0.9;
  p.demand_slope = 0.5;
  p.supply_slope = 2.0;
  std::vector<CobwebNode> nodes;
  for (const double start : {18.0, 22.0, 19.0, 21.0, 20.5, 19.5}) nodes.push_back({start, 20.0});
  const auto res = run_cobweb(nodes, p, 120.0);
  CHECK_FALSE(res.converged);
  CHECK(std::any_of(res.allocations.begin(), res.allocations.end(), [](double a) { return a < 20.0 * 0.999; }));
  double total = 0.0;
  for (const double a : res.allocations) total += a;
  CHECK(total <= 120.0 + 1e-9);
}

TEST_CASE("cobweb trace rows cover every node each cycle") {
  CobwebParams p;
  p.max_iters = 4;
  p.tol = 1e-15;
  std::vector<CobwebTraceRow> rows;
  const auto res = run_cobweb({{10, 20}, {30, 20}}, p, 100.0, [&](const CobwebTraceRow& r) { rows.push_back(r); });
  CHECK(rows.size() == res.iters * 2);
}

TEST_CASE("cobweb parameter validation") {
  CobwebParams p;
  p.max_iters = 0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = CobwebParams{};
  p.tol = 0.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  CHECK_THROWS_AS(run_cobweb({{1, 1}}, CobwebParams{}, 0.0), ValidationError);
}

TEST_CASE("traditional model is plain spreading") {
  const auto net = generate_network(12, 0.3, 8);
  SpreadParams sp;
  CHECK(run_traditional(net, {{2, 50.0}}, sp) == run_spread(net, {{2, 50.0}}, sp));
  const auto chain = testing::make_net(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  sp.delta = 0.5;
  sp.max_steps = 2;
  const auto s = run_traditional(chain, {{0, 1.0}}, sp);
  CHECK(s.held[2] == 0.25);
}
