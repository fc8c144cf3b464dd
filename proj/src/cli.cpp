#include "snm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "snm/baselines.hpp"
#include "snm/error.hpp"
#include "snm/eval.hpp"
#include "snm/game.hpp"
#include "snm/generate.hpp"
#include "snm/io.hpp"
#include "snm/spreading.hpp"

namespace snm::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class Csv {
 public:
  explicit Csv(std::string header) { out_ << header << '\n'; }
  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }
  void save(const std::filesystem::path& path) const { write_text_file(path, out_.str()); }

 private:
  static std::string cell(double v) { return num(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(std::string_view s) { return std::string(s); }
  static std::string cell(const char* s) { return s; }
  static std::string cell(bool b) { return b ? "1" : "0"; }
  template <typename Int>
    requires std::is_integral_v<Int>
  static std::string cell(Int v) { return std::to_string(v); }

  std::ostringstream out_;
};

struct Context {
  const RunConfig& cfg;
  SpreadParams spread;
  GameParams game;
};

Context make_context(const RunConfig& cfg) {
  Context ctx{cfg, SpreadParams::with_budget(cfg.budget), GameParams::with_budget(cfg.budget)};
  ctx.spread.delta = cfg.delta;
  ctx.spread.max_steps = cfg.max_steps;
  if (cfg.fire_threshold) ctx.spread.fire_threshold = *cfg.fire_threshold;
  ctx.game.delta = cfg.delta;
  ctx.game.max_rounds = cfg.max_rounds;
  ctx.game.screen_threshold = cfg.screen_threshold;
  if (cfg.epsilon) ctx.game.epsilon = *cfg.epsilon;
  ctx.spread.validate();
  ctx.game.validate();
  return ctx;
}

void write_summary(const RunConfig& cfg, const json& summary) {
  write_text_file(cfg.output_dir / "summary.json", summary.dump(2) + "\n");
}

json node_values(const SemanticNetwork& net, const ActivationState& state) {
  json arr = json::array();
  for (std::size_t i = 0; i < state.size(); ++i) {
    arr.push_back({{"id", state.ids[i]}, {"label", net.node(i).label}, {"held", state.held[i]}});
  }
  return arr;
}

json ranking(const SemanticNetwork& net, const ActivationState& state, std::size_t k = 10) {
  json arr = json::array();
  for (const auto& [id, held] : rank_nodes(state, k)) {
    arr.push_back({{"id", id}, {"label", net.node(net.index_of(id)).label}, {"held", held}});
  }
  return arr;
}

std::map<NodeId, double> resolve_sources(const SemanticNetwork& net, const RunConfig& cfg) {
  if (cfg.sources.empty()) {
    double now = 0.0;
    bool any_history = false;
    for (const auto& n : net.nodes()) {
      for (const double ts : n.history) {
        now = any_history ? std::max(now, ts) : ts;
        any_history = true;
      }
    }
    if (!any_history && !cfg.now) throw ValidationError("no --source given and no node carries an activation history");
    auto seeded = history_sources(net, cfg.now.value_or(now + 1.0), cfg.decay, cfg.budget);
    if (seeded.empty()) throw ValidationError("node histories yield no positive initial activation; pass --source");
    return seeded;
  }

  std::map<NodeId, double> out;
  std::vector<NodeId> unspecified;
  double explicit_total = 0.0;
  for (const auto& entry : cfg.sources) {
    const auto eq = entry.rfind('=');
    const std::string label = eq == std::string::npos ? entry : entry.substr(0, eq);
    const NodeId id = net.id_for_label(label);
    if (out.contains(id) || std::find(unspecified.begin(), unspecified.end(), id) != unspecified.end())
      throw ValidationError("source '" + label + "' given twice");
    if (eq == std::string::npos) {
      unspecified.push_back(id);
      continue;
    }
    double energy = 0.0;
    const auto text = entry.substr(eq + 1);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), energy);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
      throw ValidationError("source energy '" + text + "' is not a number");
    out[id] = energy;
    explicit_total += energy;
  }
  if (!unspecified.empty()) {
    const double share = (cfg.budget - explicit_total) / static_cast<double>(unspecified.size());
    if (!(share > 0.0)) throw ValidationError("explicit source energies leave no budget for the remaining sources");
    for (const NodeId id : unspecified) out[id] = share;
  }
  return out;
}

int cmd_spread(const Context& ctx) {
  const auto net = load_network(ctx.cfg.network_path);
  Csv trace("step,node,held");
  SpreadObserver observer;
  if (ctx.cfg.trace) {
    observer = [&](const ActivationState& s) {
      for (std::size_t i = 0; i < s.size(); ++i) trace.row(s.t, s.ids[i], s.held[i]);
    };
  }
  const auto final = run_spread(net, resolve_sources(net, ctx.cfg), ctx.spread, observer);
  if (ctx.cfg.trace) trace.save(ctx.cfg.output_dir / "trace.csv");
  write_summary(ctx.cfg, {{"command", "spread"},
                          {"steps", final.t},
                          {"activated", final.activated_ids()},
                          {"final", node_values(net, final)},
                          {"ranking", ranking(net, final)}});
  return kExitOk;
}

int cmd_game(const Context& ctx) {
  const auto net = load_network(ctx.cfg.network_path);
  const auto spread = scale_to_budget(run_spread(net, resolve_sources(net, ctx.cfg), ctx.spread), ctx.game.budget);

  Csv trace("round,node,held,strategy,utility,round_cost");
  RoundObserver observer;
  if (ctx.cfg.trace) {
    observer = [&](std::size_t round, const RoundResult& r, double round_cost) {
      for (std::size_t i = 0; i < r.next.size(); ++i) {
        const NodeId id = r.next.ids[i];
        const auto s = r.strategies.find(id);
        if (s == r.strategies.end()) {
          trace.row(round, id, r.next.held[i], "none", "", round_cost);
        } else {
          trace.row(round, id, r.next.held[i], to_string(s->second), r.utilities.at(id), round_cost);
        }
      }
    };
  }
  const auto outcome = run_game(net, spread, ctx.game, observer);
  if (ctx.cfg.trace) trace.save(ctx.cfg.output_dir / "trace.csv");
  write_summary(ctx.cfg, {{"command", "game"},
                          {"converged", outcome.converged},
                          {"rounds", outcome.rounds},
                          {"round_costs", outcome.round_costs},
                          {"nash", verify_nash(net, outcome, ctx.game)},
                          {"final", node_values(net, outcome.final)},
                          {"ranking", ranking(net, outcome.final)}});
  if (!outcome.converged)
    std::cerr << "warning: game did not converge within " << outcome.rounds << " rounds\n";
  return kExitOk;
}

int cmd_relatedness(const Context& ctx) {
  const auto net = load_network(ctx.cfg.network_path);
  const NodeId a = net.id_for_label(ctx.cfg.label_a);
  const NodeId b = net.id_for_label(ctx.cfg.label_b);
  const double r = relatedness(net, a, b, ctx.spread, ctx.game, !ctx.cfg.no_game);
  write_summary(ctx.cfg, {{"command", "relatedness"},
                          {"a", ctx.cfg.label_a},
                          {"b", ctx.cfg.label_b},
                          {"use_game", !ctx.cfg.no_game},
                          {"relatedness", r}});
  return kExitOk;
}

int cmd_evaluate(const Context& ctx) {
  const auto net = load_network(ctx.cfg.network_path);
  const auto pairs = load_pairs(*ctx.cfg.pairs_path, parse_scale(ctx.cfg.scale));
  const auto report = evaluate_pairs(net, pairs, ctx.spread, ctx.game, !ctx.cfg.no_game);
  Csv table("label_a,label_b,human_score,model_score");
  for (const auto& row : report.pairs) table.row(row.label_a, row.label_b, row.human_score, row.model_score);
  table.save(ctx.cfg.output_dir / "pairs.csv");
  write_summary(ctx.cfg, {{"command", "evaluate"},
                          {"rho", report.rho},
                          {"n_pairs", report.n_pairs},
                          {"tie_warning", report.tie_warning},
                          {"use_game", !ctx.cfg.no_game}});
  return kExitOk;
}

CobwebParams cobweb_params(const RunConfig& cfg) {
  CobwebParams p;
  p.r = cfg.cobweb_r;
  p.demand_slope = cfg.demand_slope;
  p.supply_slope = cfg.supply_slope;
  p.max_iters = cfg.max_iters;
  p.tol = 1e-6 * cfg.budget;
  return p;
}

int cmd_cobweb(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  std::vector<CobwebNode> nodes;
  for (const double start : perturbed_demands(cfg.seed, cfg.cobweb_nodes, cfg.demand)) nodes.push_back({start, cfg.demand});

  Csv trace("iter,node,o,excess_demand,allocated");
  CobwebObserver observer;
  if (cfg.trace) observer = [&](const CobwebTraceRow& r) { trace.row(r.iter, r.node, r.o, r.excess_demand, r.allocated); };
  const auto result = run_cobweb(nodes, cobweb_params(cfg), cfg.budget, observer);
  if (cfg.trace) trace.save(cfg.output_dir / "trace.csv");

  std::map<NodeId, double> alloc, demands;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    alloc[static_cast<NodeId>(i)] = result.allocations[i];
    demands[static_cast<NodeId>(i)] = cfg.demand;
  }
  write_summary(cfg, {{"command", "cobweb"},
                      {"iters", result.iters},
                      {"converged", result.converged},
                      {"allocations", result.allocations},
                      {"utilization", utilization(alloc, demands, cfg.budget)}});
  return kExitOk;
}

int cmd_compare(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  json summary = {{"command", "compare"}, {"experiment", cfg.experiment}, {"seeds", cfg.seeds}};
  if (cfg.experiment == "load-balance") {
    Csv table("seed,snm_stddev,traditional_stddev");
    std::size_t snm_better = 0;
    for (std::size_t k = 0; k < cfg.seeds; ++k) {
      const auto t = load_balance_trial(cfg.seed + k, cfg.nodes, cfg.edge_prob, ctx.spread, ctx.game);
      table.row(t.seed, t.snm_stddev, t.traditional_stddev);
      if (t.snm_stddev < t.traditional_stddev) ++snm_better;
    }
    table.save(cfg.output_dir / "compare.csv");
    summary["snm_better_fraction"] = static_cast<double>(snm_better) / static_cast<double>(cfg.seeds);
  } else if (cfg.experiment == "utilization" || cfg.experiment == "cycles") {
    const bool cycles = cfg.experiment == "cycles";
    const double total_demand = cfg.demand * static_cast<double>(cfg.cobweb_nodes);
    const std::vector<double> budgets = cycles ? std::vector<double>{total_demand}
                                               : std::vector<double>{total_demand * 100.0 / 120.0, total_demand};
    Csv table(cycles ? "seed,budget,snm_cycles,snm_converged,cobweb_cycles,cobweb_converged"
                     : "seed,budget,snm_utilization,cobweb_utilization,snm_unmet,cobweb_unmet");
    std::size_t snm_at_least = 0, runs = 0;
    for (std::size_t k = 0; k < cfg.seeds; ++k) {
      for (const double budget : budgets) {
        GameParams gp = ctx.game;
        gp.epsilon = cfg.epsilon.value_or(1e-6 * budget);
        const auto t = allocation_trial(cfg.seed + k, cfg.cobweb_nodes, cfg.demand, budget, cobweb_params(cfg), gp);
        if (cycles) {
          table.row(t.seed, budget, t.snm_cycles.count, t.snm_cycles.converged, t.cobweb_cycles.count,
                    t.cobweb_cycles.converged);
        } else {
          table.row(t.seed, budget, t.snm_utilization, t.cobweb_utilization, t.snm_unmet, t.cobweb_unmet);
        }
        ++runs;
        if (t.snm_utilization + 1e-9 >= t.cobweb_utilization) ++snm_at_least;
      }
    }
    table.save(cfg.output_dir / "compare.csv");
    summary["snm_utilization_at_least_cobweb_fraction"] = static_cast<double>(snm_at_least) / static_cast<double>(runs);
  } else {
    throw ValidationError("unknown experiment '" + cfg.experiment + "' (load-balance, utilization, cycles)");
  }
  write_summary(cfg, summary);
  return kExitOk;
}

int cmd_generate(const Context& ctx) {
  const auto net = generate_network(ctx.cfg.nodes, ctx.cfg.edge_prob, ctx.cfg.seed);
  save_network(net, ctx.cfg.network_path);
  write_summary(ctx.cfg, {{"command", "generate"},
                          {"nodes", net.size()},
                          {"edges", net.edges().size()},
                          {"seed", ctx.cfg.seed},
                          {"network", ctx.cfg.network_path.string()}});
  return kExitOk;
}

template <typename T>
void optional_option(CLI::App& app, const std::string& name, std::optional<T>& target, const std::string& help) {
  app.add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

void RunConfig::validate() const {
  static const std::vector<std::string> commands{"spread", "game", "relatedness", "evaluate",
                                                 "cobweb", "compare", "generate"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw ValidationError("unknown command '" + command + "'");
  const bool needs_network = command == "spread" || command == "game" || command == "relatedness" ||
                             command == "evaluate" || command == "generate";
  if (needs_network && network_path.empty()) throw ValidationError(command + " requires --network");
  if (command == "evaluate" && !pairs_path) throw ValidationError("evaluate requires --pairs");
  if (command == "relatedness" && (label_a.empty() || label_b.empty()))
    throw ValidationError("relatedness requires --a and --b");
  if (!(budget > 0.0)) throw ValidationError("--budget must be > 0");
  if (!(delta >= 0.0 && delta <= 1.0)) throw ValidationError("--delta must lie in [0,1]");
  if (epsilon && !(*epsilon > 0.0)) throw ValidationError("--epsilon must be > 0");
  if (screen_threshold && !(*screen_threshold >= 0.0)) throw ValidationError("--screen-threshold must be >= 0");
  if (fire_threshold && !(*fire_threshold >= 0.0)) throw ValidationError("--fire-threshold must be >= 0");
  if (max_steps < 1 || max_rounds < 1 || max_iters < 1) throw ValidationError("step and round limits must be >= 1");
  if (!(decay > 0.0)) throw ValidationError("--decay must be > 0");
  if (seeds < 1) throw ValidationError("--seeds must be >= 1");
  if (nodes < 2 || cobweb_nodes < 1) throw ValidationError("node counts are too small");
  if (!(edge_prob > 0.0 && edge_prob <= 1.0)) throw ValidationError("--edge-prob must lie in (0,1]");
  if (!(demand > 0.0)) throw ValidationError("--demand must be > 0");
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Semantic network model: spreading activation, attention game, baselines and evaluation", "snm"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands{
      {"spread", "Spread activation from source nodes"},
      {"game", "Spread, then play the attention game"},
      {"relatedness", "Relatedness of two labelled nodes"},
      {"evaluate", "Spearman correlation against judged pairs"},
      {"cobweb", "Cobweb-model allocation baseline"},
      {"compare", "Comparison experiments (load-balance, utilization, cycles)"},
      {"generate", "Write a seeded random network"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&cfg, name = name] { cfg.command = name; });
    const auto is = [&name](std::initializer_list<std::string_view> names) {
      return std::find(names.begin(), names.end(), name) != names.end();
    };

    sub->add_option("--out", cfg.output_dir, "Output directory");
    if (is({"spread", "game", "relatedness", "evaluate"})) {
      sub->add_option("--network", cfg.network_path, "Network JSON file");
    }
    if (name == "generate") sub->add_option("--network", cfg.network_path, "Network JSON file to write");
    if (!is({"generate"})) sub->add_option("--budget", cfg.budget, "Total activation energy");
    if (is({"cobweb", "compare", "generate"})) sub->add_option("--seed", cfg.seed, "Random seed");
    if (is({"spread", "game", "cobweb"})) sub->add_flag("--trace", cfg.trace, "Write trace.csv");

    if (is({"spread", "game"})) {
      sub->add_option("--source", cfg.sources, "Source node label, optionally label=energy (repeatable)");
      optional_option(*sub, "--now", cfg.now, "Clock for history-based seeding");
      sub->add_option("--decay", cfg.decay, "History decay exponent");
    }
    if (is({"spread", "game", "relatedness", "evaluate", "compare"})) {
      sub->add_option("--delta", cfg.delta, "Attenuation factor in [0,1]");
      optional_option(*sub, "--fire-threshold", cfg.fire_threshold,
                      "Minimum held energy to fire (default 1e-6 * budget)");
      sub->add_option("--max-steps", cfg.max_steps, "Spreading step limit");
    }
    if (is({"game", "relatedness", "evaluate", "compare"})) {
      optional_option(*sub, "--epsilon", cfg.epsilon, "Game convergence threshold (default 1e-3 * budget)");
      optional_option(*sub, "--screen-threshold", cfg.screen_threshold,
                      "Screening threshold overriding node thresholds");
      sub->add_option("--max-rounds", cfg.max_rounds, "Game round limit");
    }
    if (is({"relatedness", "evaluate"})) sub->add_flag("--no-game", cfg.no_game, "Score from spreading alone");
    if (name == "relatedness") {
      sub->add_option("--a", cfg.label_a, "First label");
      sub->add_option("--b", cfg.label_b, "Second label");
    }
    if (name == "evaluate") {
      optional_option(*sub, "--pairs", cfg.pairs_path, "Judged pairs TSV");
      sub->add_option("--scale", cfg.scale, "Score scale: unit or five-point");
    }
    if (name == "compare") {
      sub->add_option("--experiment", cfg.experiment, "load-balance, utilization or cycles");
      sub->add_option("--seeds", cfg.seeds, "Number of seeds");
    }
    if (is({"compare", "generate"})) {
      sub->add_option("--nodes", cfg.nodes, "Nodes per generated network");
      sub->add_option("--edge-prob", cfg.edge_prob, "Extra-edge probability of generated networks");
    }
    if (is({"cobweb", "compare"})) {
      sub->add_option("--r", cfg.cobweb_r, "Cobweb adjustment rate");
      sub->add_option("--demand-slope", cfg.demand_slope, "Cobweb demand slope");
      sub->add_option("--supply-slope", cfg.supply_slope, "Cobweb supply slope");
      sub->add_option("--demand", cfg.demand, "Per-node demand");
      sub->add_option("--cobweb-nodes", cfg.cobweb_nodes, "Number of competing nodes");
      sub->add_option("--max-iters", cfg.max_iters, "Cobweb iteration limit");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }
  cfg.validate();
  return cfg;
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    config.validate();
    std::filesystem::create_directories(config.output_dir);
    const auto ctx = make_context(config);
    if (config.command == "spread") return cmd_spread(ctx);
    if (config.command == "game") return cmd_game(ctx);
    if (config.command == "relatedness") return cmd_relatedness(ctx);
    if (config.command == "evaluate") return cmd_evaluate(ctx);
    if (config.command == "cobweb") return cmd_cobweb(ctx);
    if (config.command == "compare") return cmd_compare(ctx);
    return cmd_generate(ctx);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(args, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  if (!cfg) return kExitOk;
  return run(*cfg, err);
}

}  // namespace snm::cli
