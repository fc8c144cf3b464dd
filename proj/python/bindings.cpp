#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "snm/baselines.hpp"
#include "snm/cli.hpp"
#include "snm/error.hpp"
#include "snm/eval.hpp"
#include "snm/game.hpp"
#include "snm/generate.hpp"
#include "snm/io.hpp"
#include "snm/spreading.hpp"

namespace py = pybind11;
using namespace snm;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Semantic network model: spreading activation, attention game, baselines and evaluation";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());

  // --- network ----------------------------------------------------------
  py::class_<ConceptNode>(m, "ConceptNode")
      .def(py::init([](NodeId id, std::string label, double threshold, std::vector<double> history) {
             return ConceptNode{id, std::move(label), threshold, std::move(history)};
           }),
           py::arg("id"), py::arg("label"), py::arg("threshold") = 0.0, py::arg("history") = std::vector<double>{})
      .def_readonly("id", &ConceptNode::id)
      .def_readonly("label", &ConceptNode::label)
      .def_readonly("threshold", &ConceptNode::threshold)
      .def_readonly("history", &ConceptNode::history);

  py::class_<SemanticNetwork>(m, "SemanticNetwork")
      .def_static(
          "build",
          [](std::vector<ConceptNode> nodes, const std::vector<std::tuple<NodeId, NodeId, double>>& edges) {
            std::vector<WeightedEdge> out;
            for (const auto& [a, b, w] : edges) out.push_back({a, b, w});
            return SemanticNetwork::build(std::move(nodes), std::move(out));
          },
          py::arg("nodes"), py::arg("edges"))
      .def("__len__", &SemanticNetwork::size)
      .def_property_readonly("ids", &SemanticNetwork::ids)
      .def_property_readonly("labels",
                             [](const SemanticNetwork& n) {
                               std::vector<std::string> out;
                               for (const auto& node : n.nodes()) out.push_back(node.label);
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const SemanticNetwork& n) {
                               std::vector<std::tuple<NodeId, NodeId, double>> out;
                               for (const auto& e : n.edges()) out.emplace_back(e.a, e.b, e.weight);
                               return out;
                             })
      .def("id_for_label", &SemanticNetwork::id_for_label)
      .def("to_json", [](const SemanticNetwork& n) { return network_to_json(n); })
      .def("__eq__", &SemanticNetwork::operator==);

  m.def("parse_network", [](const std::string& text) { return parse_network(text); }, py::arg("json_text"));
  m.def("load_network", &load_network, py::arg("path"));
  m.def("save_network", &save_network, py::arg("network"), py::arg("path"));
  m.def("generate_network", &generate_network, py::arg("n"), py::arg("edge_prob"), py::arg("seed"));
  m.def("two_cluster_network", &two_cluster_network, py::arg("cluster_size"), py::arg("seed"));
  m.def("complete_network", &complete_network, py::arg("n"), py::arg("weight"));
  m.def("neighbor_weight_sum", &neighbor_weight_sum, py::arg("network"), py::arg("node"));
  m.def("total_weight_sum", &total_weight_sum, py::arg("network"));

  // --- spreading --------------------------------------------------------
  py::class_<ActivationState>(m, "ActivationState")
      .def_readonly("t", &ActivationState::t)
      .def_readonly("ids", &ActivationState::ids)
      .def_readonly("held", &ActivationState::held)
      .def_readonly("incoming", &ActivationState::incoming)
      .def_property_readonly("activated", &ActivationState::activated_ids)
      .def_property_readonly("sources", &ActivationState::source_ids)
      .def("held_of", &ActivationState::held_of)
      .def("total_held", &ActivationState::total_held)
      .def("as_dict", [](const ActivationState& s) {
        std::map<NodeId, double> out;
        for (std::size_t i = 0; i < s.size(); ++i) out[s.ids[i]] = s.held[i];
        return out;
      });

  py::class_<SpreadParams>(m, "SpreadParams")
      .def(py::init([](double budget) { return SpreadParams::with_budget(budget); }), py::arg("budget") = 100.0)
      .def_readwrite("delta", &SpreadParams::delta)
      .def_readwrite("fire_threshold", &SpreadParams::fire_threshold)
      .def_readwrite("max_steps", &SpreadParams::max_steps)
      .def_readwrite("budget", &SpreadParams::budget);

  m.def("edge_spread", &edge_spread, py::arg("o_x"), py::arg("weight"), py::arg("delta"));
  m.def(
      "run_spread",
      [](const SemanticNetwork& net, const std::map<NodeId, double>& sources, const SpreadParams& params) {
        return run_spread(net, sources, params);
      },
      py::arg("network"), py::arg("sources"), py::arg("params") = SpreadParams::with_budget(100.0));
  m.def("attention", &attention, py::arg("network"), py::arg("state"), py::arg("node"));
  m.def(
      "initial_activation",
      [](const std::vector<double>& history, double now, double decay) { return initial_activation(history, now, decay); },
      py::arg("history"), py::arg("now"), py::arg("decay") = 0.5);
  m.def("scale_to_budget", &scale_to_budget, py::arg("state"), py::arg("budget"));

  // --- game -------------------------------------------------------------
  py::enum_<Strategy>(m, "Strategy").value("Accept", Strategy::Accept).value("Reject", Strategy::Reject);

  py::class_<GameParams>(m, "GameParams")
      .def(py::init([](double budget) { return GameParams::with_budget(budget); }), py::arg("budget") = 100.0)
      .def_readwrite("epsilon", &GameParams::epsilon)
      .def_readwrite("max_rounds", &GameParams::max_rounds)
      .def_readwrite("screen_threshold", &GameParams::screen_threshold)
      .def_readwrite("delta", &GameParams::delta)
      .def_readwrite("budget", &GameParams::budget);

  py::class_<GameOutcome>(m, "GameOutcome")
      .def_readonly("final", &GameOutcome::final)
      .def_readonly("strategies", &GameOutcome::strategies)
      .def_readonly("utilities", &GameOutcome::utilities)
      .def_readonly("rounds", &GameOutcome::rounds)
      .def_readonly("converged", &GameOutcome::converged)
      .def_readonly("round_costs", &GameOutcome::round_costs);

  m.def("utility", &utility, py::arg("gain"), py::arg("cost"));
  m.def(
      "run_game",
      [](const SemanticNetwork& net, const ActivationState& initial, const GameParams& params) {
        return run_game(net, initial, params);
      },
      py::arg("network"), py::arg("initial"), py::arg("params") = GameParams::with_budget(100.0));
  m.def("verify_nash", &verify_nash, py::arg("network"), py::arg("outcome"), py::arg("params"));
  m.def("rank_nodes", &rank_nodes, py::arg("state"), py::arg("k"));

  // --- baselines --------------------------------------------------------
  py::class_<CobwebParams>(m, "CobwebParams")
      .def(py::init<>())
      .def_readwrite("r", &CobwebParams::r)
      .def_readwrite("demand_intercept", &CobwebParams::demand_intercept)
      .def_readwrite("demand_slope", &CobwebParams::demand_slope)
      .def_readwrite("supply_intercept", &CobwebParams::supply_intercept)
      .def_readwrite("supply_slope", &CobwebParams::supply_slope)
      .def_readwrite("max_iters", &CobwebParams::max_iters)
      .def_readwrite("tol", &CobwebParams::tol);

  py::class_<CobwebResult>(m, "CobwebResult")
      .def_readonly("allocations", &CobwebResult::allocations)
      .def_readonly("iters", &CobwebResult::iters)
      .def_readonly("converged", &CobwebResult::converged);

  m.def(
      "run_cobweb",
      [](const std::vector<std::pair<double, double>>& nodes, const CobwebParams& params, double budget) {
        std::vector<CobwebNode> in;
        for (const auto& [initial, demand] : nodes) in.push_back({initial, demand});
        return run_cobweb(in, params, budget);
      },
      py::arg("nodes"), py::arg("params"), py::arg("budget"));

  // --- eval -------------------------------------------------------------
  m.def(
      "spearman",
      [](const std::vector<double>& xs, const std::vector<double>& ys) { return spearman(xs, ys).rho; },
      py::arg("xs"), py::arg("ys"));
  m.def("relatedness", &relatedness, py::arg("network"), py::arg("a"), py::arg("b"),
        py::arg("spread_params") = SpreadParams::with_budget(100.0),
        py::arg("game_params") = GameParams::with_budget(100.0), py::arg("use_game") = true);
  m.def(
      "evaluate_pairs",
      [](const SemanticNetwork& net, const std::vector<std::tuple<std::string, std::string, double>>& pairs,
         const SpreadParams& sp, const GameParams& gp, bool use_game) {
        std::vector<PairJudgment> in;
        for (const auto& [a, b, s] : pairs) in.push_back({a, b, s});
        const auto report = evaluate_pairs(net, in, sp, gp, use_game);
        py::dict out;
        out["rho"] = report.rho;
        out["n_pairs"] = report.n_pairs;
        out["tie_warning"] = report.tie_warning;
        py::list rows;
        for (const auto& r : report.pairs) rows.append(py::make_tuple(r.label_a, r.label_b, r.human_score, r.model_score));
        out["pairs"] = rows;
        return out;
      },
      py::arg("network"), py::arg("pairs"), py::arg("spread_params") = SpreadParams::with_budget(100.0),
      py::arg("game_params") = GameParams::with_budget(100.0), py::arg("use_game") = true);
  m.def("load_balance", &load_balance, py::arg("state"));
  m.def("utilization", &utilization, py::arg("allocations"), py::arg("demands"), py::arg("budget"));

  // --- command line -----------------------------------------------------
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::main_entry(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end in-process; returns (exit_code, stdout, stderr).");
}
