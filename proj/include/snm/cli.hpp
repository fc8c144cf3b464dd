#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace snm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

struct RunConfig {
  std::string command;  // spread | game | relatedness | evaluate | cobweb | compare | generate
  std::filesystem::path network_path;
  std::optional<std::filesystem::path> pairs_path;
  std::string scale = "unit";
  double delta = 0.2;
  std::optional<double> epsilon;  // default 1e-3 * budget
  double budget = 100.0;
  std::optional<double> screen_threshold;
  std::optional<double> fire_threshold;  // default 1e-6 * budget
  std::size_t max_steps = 5;
  std::size_t max_rounds = 100;
  std::uint64_t seed = 0;
  bool trace = false;
  bool no_game = false;
  std::filesystem::path output_dir = ".";

  // spread / game seeding
  std::vector<std::string> sources;  // "label" or "label=energy"
  std::optional<double> now;
  double decay = 0.5;
  // relatedness
  std::string label_a;
  std::string label_b;
  // compare / generate
  std::string experiment = "load-balance";
  std::size_t seeds = 20;
  std::size_t nodes = 50;
  double edge_prob = 0.1;
  // cobweb
  double cobweb_r = 0.5;
  double demand_slope = 0.5;
  double supply_slope = 0.5;
  double demand = 20.0;
  std::size_t cobweb_nodes = 6;
  std::size_t max_iters = 100;

  /// Throws ValidationError for out-of-domain values or missing paths.
  void validate() const;
};

/// Parses argv-style arguments (without the program name). Returns nullopt
/// after printing help; throws ValidationError on bad usage.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Executes a configured command, writing artifacts into `output_dir`.
/// Returns the process exit status; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& err);

/// parse_args + run with exit-status mapping.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace snm::cli
