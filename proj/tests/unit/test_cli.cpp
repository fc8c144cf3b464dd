#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "snm/cli.hpp"
#include "snm/eval.hpp"
#include "snm/generate.hpp"
#include "snm/io.hpp"

using namespace snm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = snm::cli::main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "snm_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

nlohmann::json summary(const fs::path& dir) { return nlohmann::json::parse(read_text_file(dir / "summary.json")); }

}  // namespace

TEST_CASE("spread on the two-node demo network") {
  const auto dir = workdir("spread");
  write_text_file(dir / "net.json", R"({"nodes":[{"id":1,"label":"a"},{"id":2,"label":"b"}],"edges":[{"a":1,"b":2,"w":0.5}]})");
  const auto r = run_cli({"spread", "--network", (dir / "net.json").string(), "--source", "a=1", "--delta", "0",
                      "--max-steps", "1", "--trace", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto s = summary(dir);
  CHECK(s["final"][0]["held"] == 1.0);
  CHECK(s["final"][1]["held"] == 0.5);
  CHECK(fs::exists(dir / "trace.csv"));
  CHECK(read_text_file(dir / "trace.csv").rfind("step,node,held\n", 0) == 0);
}

TEST_CASE("game and relatedness commands") {
  const auto dir = workdir("game");
  save_network(generate_network(12, 0.3, 2), dir / "net.json");
  const auto net = (dir / "net.json").string();
  REQUIRE(run_cli({"game", "--network", net, "--source", "n0", "--trace", "--out", dir.string()}).code == 0);
  CHECK(summary(dir)["converged"] == true);
  CHECK(summary(dir)["nash"] == true);
  CHECK(read_text_file(dir / "trace.csv").rfind("round,node,held,strategy,utility,round_cost\n", 0) == 0);
  REQUIRE(run_cli({"relatedness", "--network", net, "--a", "n1", "--b", "n1", "--out", dir.string()}).code == 0);
  CHECK(summary(dir)["relatedness"] == 1.0);
}

TEST_CASE("evaluate with monotone pairs gives rho 1") {
  const auto dir = workdir("evaluate");
  const auto network = generate_network(10, 0.3, 1);
  save_network(network, dir / "net.json");
  const auto sp = SpreadParams::with_budget(100.0);
  const auto gp = GameParams::with_budget(100.0);
  std::string tsv = "label_a\tlabel_b\tscore\n";
  for (const auto& [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {2, 5}, {3, 8}, {4, 9}}) {
    const double m = relatedness(network, a, b, sp, gp);
    tsv += "n" + std::to_string(a) + "\tn" + std::to_string(b) + "\t" + std::to_string(m / 2.0) + "\n";
  }
  write_text_file(dir / "pairs.tsv", tsv);
  const auto r = run_cli({"evaluate", "--network", (dir / "net.json").string(), "--pairs", (dir / "pairs.tsv").string(),
                      "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(summary(dir)["rho"] == 1.0);
  CHECK(fs::exists(dir / "pairs.csv"));
}

TEST_CASE("compare load-balance writes one row per seed") {
  const auto dir = workdir("compare");
  REQUIRE(run_cli({"compare", "--experiment", "load-balance", "--seeds", "5", "--nodes", "20", "--out", dir.string()}).code == 0);
  const auto csv = read_text_file(dir / "compare.csv");
  CHECK(csv.rfind("seed,snm_stddev,traditional_stddev\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("generate and cobweb commands") {
  const auto dir = workdir("generate");
  REQUIRE(run_cli({"generate", "--network", (dir / "g.json").string(), "--nodes", "9", "--seed", "4", "--out", dir.string()}).code == 0);
  CHECK(load_network(dir / "g.json") == generate_network(9, 0.1, 4));
  REQUIRE(run_cli({"cobweb", "--trace", "--out", dir.string()}).code == 0);
  CHECK(summary(dir).contains("allocations"));
}

TEST_CASE("exit codes") {
  const auto dir = workdir("errors");
  CHECK(run_cli({"spread", "--network", (dir / "missing.json").string(), "--source", "a", "--out", dir.string()}).code == 3);
  write_text_file(dir / "bad.json", R"({"nodes":[{"id":1,"label":"a"}],"edges":[{"a":1,"b":7,"w":0.5}]})");
  CHECK(run_cli({"spread", "--network", (dir / "bad.json").string(), "--source", "a", "--out", dir.string()}).code == 2);
  CHECK(run_cli({"spread", "--delta", "2", "--network", "x.json"}).code == 2);
  CHECK(run_cli({"spread"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"evaluate", "--network", "x.json"}).code == 2);
  const auto unknown = run_cli({"relatedness", "--network", (dir / "bad.json").string(), "--a", "a", "--b", "zz"});
  CHECK(unknown.code == 2);
  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("spread") != std::string::npos);
}

TEST_CASE("summaries are byte-reproducible") {
  const auto a = workdir("repro_a"), b = workdir("repro_b");
  for (const auto& dir : {a, b})
    REQUIRE(run_cli({"compare", "--experiment", "utilization", "--seeds", "3", "--out", dir.string()}).code == 0);
  CHECK(read_text_file(a / "summary.json") == read_text_file(b / "summary.json"));
  CHECK(read_text_file(a / "compare.csv") == read_text_file(b / "compare.csv"));
}
