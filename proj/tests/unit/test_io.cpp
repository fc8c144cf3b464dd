#include <doctest.h>

#include <filesystem>

#include "snm/error.hpp"
#include "snm/generate.hpp"
#include "snm/io.hpp"

using namespace snm;

TEST_CASE("parse_network minimal file") {
  const auto net = parse_network(R"({"nodes":[{"id":1,"label":"a"},{"id":2,"label":"b"}],"edges":[{"a":1,"b":2,"w":0.5}]})");
  CHECK(net.size() == 2);
  CHECK(net.weight(0, 1) == 0.5);
  CHECK(net.weight(1, 0) == 0.5);
  CHECK(net.node(0).threshold == 0.0);
  CHECK(net.node(0).history.empty());
}

TEST_CASE("parse_network reports bad content") {
  CHECK_THROWS_AS(parse_network(R"({"nodes":[{"id":1,"label":"a"},{"id":2,"label":"b"}],"edges":[{"a":1,"b":2,"w":1.5}]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_network(R"({"nodes":[{"id":1,"label":"a"}],"edges":[{"a":1,"b":3,"w":0.5}]})"), ValidationError);
  CHECK_THROWS_AS(parse_network("{not json"), ParseError);
  CHECK_THROWS_AS(parse_network(R"({"nodes":[{"id":"x","label":"a"}],"edges":[]})"), ParseError);
  CHECK_THROWS_AS(parse_network(R"({"edges":[]})"), ParseError);
}

TEST_CASE("network JSON round-trips") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto net = generate_network(12, 0.3, seed);
    CHECK(parse_network(network_to_json(net)) == net);
  }
  const auto dir = std::filesystem::temp_directory_path() / "snm_io_test";
  std::filesystem::create_directories(dir);
  const auto net = generate_network(8, 0.5, 3);
  save_network(net, dir / "net.json");
  CHECK(load_network(dir / "net.json") == net);
  CHECK_THROWS(load_network(dir / "missing.json"));
}

TEST_CASE("pairs parsing and scales") {
  auto five = parse_pairs("cat\tdog\t4\n", ScoreScale::FivePoint);
  REQUIRE(five.size() == 1);
  CHECK(five[0] == PairJudgment{"cat", "dog", 0.75});
  auto unit = parse_pairs("label_a\tlabel_b\tscore\na\tb\t0.6\n", ScoreScale::Unit);
  REQUIRE(unit.size() == 1);
  CHECK(unit[0] == PairJudgment{"a", "b", 0.6});
  CHECK(parse_pairs("a\tb\t1\nc\td\t5\n", ScoreScale::FivePoint)[1].human_score == 1.0);
  CHECK_THROWS_AS(parse_pairs("a\tb\t6\n", ScoreScale::FivePoint), ValidationError);
  CHECK_THROWS_AS(parse_pairs("a\tb\t1.2\n", ScoreScale::Unit), ValidationError);
  CHECK_THROWS_AS(parse_pairs("a\tb\n", ScoreScale::Unit), ValidationError);
  CHECK(parse_scale("five-point") == ScoreScale::FivePoint);
  CHECK_THROWS_AS(parse_scale("ten"), ValidationError);
}
