#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "snm/network.hpp"

namespace snm {

// Network files are JSON:
//   {"nodes":[{"id":1,"label":"cat","threshold":0.0,"history":[0.5]}],
//    "edges":[{"a":1,"b":2,"w":0.5}]}
// `threshold` and `history` are optional.

SemanticNetwork parse_network(std::string_view json_text);
SemanticNetwork load_network(const std::filesystem::path& path);
std::string network_to_json(const SemanticNetwork& net);
void save_network(const SemanticNetwork& net, const std::filesystem::path& path);

enum class ScoreScale { Unit, FivePoint };

ScoreScale parse_scale(std::string_view name);

// Pairs files are TSV rows `label_a<TAB>label_b<TAB>score` with an optional
// header row. Five-point scores map linearly onto [0,1] (1 -> 0, 5 -> 1).
std::vector<PairJudgment> parse_pairs(std::string_view tsv_text, ScoreScale scale);
std::vector<PairJudgment> load_pairs(const std::filesystem::path& path, ScoreScale scale);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace snm
