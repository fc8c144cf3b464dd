#include <doctest.h>

#include "helpers.hpp"
#include "snm/error.hpp"
#include "snm/generate.hpp"
#include "snm/network.hpp"
#include "support/oracles.hpp"

using namespace snm;
using testing::make_net;
using testing::node;

TEST_CASE("build normalizes edge orientation and node order") {
  const auto net = SemanticNetwork::build({node(7), node(3)}, {{7, 3, 0.5}});
  CHECK(net.ids() == std::vector<NodeId>{3, 7});
  REQUIRE(net.edges().size() == 1);
  CHECK(net.edges()[0] == WeightedEdge{3, 7, 0.5});
  CHECK(net.weight(0, 1) == 0.5);
  CHECK(net.weight(1, 0) == 0.5);
  CHECK(net.adjacent(0, 1));
}

TEST_CASE("build rejects invariant violations") {
  CHECK_THROWS_AS(SemanticNetwork::build({node(1), node(1)}, {}), ValidationError);
  CHECK_THROWS_AS(SemanticNetwork::build({node(1), node(2)}, {{1, 2, 1.5}}), ValidationError);
  CHECK_THROWS_AS(SemanticNetwork::build({node(1), node(2)}, {{1, 2, -0.1}}), ValidationError);
  CHECK_THROWS_AS(SemanticNetwork::build({node(1), node(2)}, {{1, 9, 0.5}}), ValidationError);
  CHECK_THROWS_AS(SemanticNetwork::build({node(1)}, {{1, 1, 0.5}}), ValidationError);
  CHECK_THROWS_AS(SemanticNetwork::build({node(1), node(2)}, {{1, 2, 0.5}, {2, 1, 0.4}}), ValidationError);
  CHECK_THROWS_AS(SemanticNetwork::build({{1, "", 0.0, {}}}, {}), ValidationError);
  CHECK_THROWS_AS(SemanticNetwork::build({{1, "a", -1.0, {}}}, {}), ValidationError);
  CHECK_THROWS_AS(SemanticNetwork::build({{1, "a", 0.0, {2.0, 1.0}}}, {}), ValidationError);
}

TEST_CASE("label lookup") {
  const auto net = SemanticNetwork::build({{1, "cat", 0, {}}, {2, "dog", 0, {}}, {3, "dog", 0, {}}}, {});
  CHECK(net.id_for_label("cat") == 1);
  CHECK_THROWS_AS(net.id_for_label("dog"), ValidationError);
  CHECK_THROWS_AS(net.id_for_label("cow"), ValidationError);
  CHECK_THROWS_AS(net.index_of(42), ValidationError);
}

TEST_CASE("neighbor_weight_sum examples") {
  const auto net = make_net(4, {{0, 1, 0.3}, {0, 2, 0.5}});
  CHECK(neighbor_weight_sum(net, 3) == 0.0);
  CHECK(neighbor_weight_sum(net, 0) == doctest::Approx(0.8));
}

TEST_CASE("total_weight_sum examples") {
  CHECK(total_weight_sum(make_net(3, {})) == 0.0);
  CHECK(total_weight_sum(make_net(3, {{0, 1, 0.2}, {1, 2, 0.7}})) == doctest::Approx(0.9));
}

TEST_CASE("weight sums match an edge-scan oracle and the handshake identity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto net = generate_network(6, 0.4, seed);
    double half = 0.0;
    for (const NodeId id : net.ids()) {
      double scan = 0.0;
      for (const auto& e : net.edges())
        if (e.a == id || e.b == id) scan += e.weight;
      CHECK(neighbor_weight_sum(net, id) == doctest::Approx(scan).epsilon(1e-14));
      half += neighbor_weight_sum(net, id) / 2.0;
    }
    CHECK(total_weight_sum(net) == doctest::Approx(half).epsilon(1e-14));
  }
}

TEST_CASE("generate_network is deterministic and connected") {
  const auto pair = generate_network(2, 1.0, 11);
  CHECK(pair.size() == 2);
  CHECK(pair.edges().size() == 1);
  CHECK(generate_network(25, 0.2, 5) == generate_network(25, 0.2, 5));
  CHECK_FALSE(generate_network(25, 0.2, 5) == generate_network(25, 0.2, 6));

  // traversal oracle over the raw edge list
  const auto net = generate_network(30, 0.2, 7);
  std::vector<bool> seen(net.size(), false);
  std::vector<NodeId> frontier{net.ids()[0]};
  seen[0] = true;
  while (!frontier.empty()) {
    const NodeId x = frontier.back();
    frontier.pop_back();
    for (const auto& e : net.edges()) {
      const NodeId other = e.a == x ? e.b : e.b == x ? e.a : -1;
      if (other >= 0 && !seen[net.index_of(other)]) {
        seen[net.index_of(other)] = true;
        frontier.push_back(other);
      }
    }
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
  CHECK(is_connected(net));
  for (const auto& e : net.edges()) {
    CHECK(e.weight > 0.0);
    CHECK(e.weight <= 1.0);
  }
  CHECK_THROWS_AS(generate_network(1, 0.5, 0), ValidationError);
  CHECK_THROWS_AS(generate_network(5, 0.0, 0), ValidationError);
}

TEST_CASE("fixture generators") {
  const auto two = two_cluster_network(4, 1);
  CHECK(two.size() == 8);
  CHECK(is_connected(two));
  CHECK(two.weight(3, 4) == doctest::Approx(0.1));
  const auto k = complete_network(5, 1.0);
  CHECK(k.edges().size() == 10);
  CHECK_FALSE(is_connected(make_net(3, {{0, 1, 0.5}})));
}
