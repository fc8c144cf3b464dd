#include "snm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "snm/error.hpp"

namespace snm {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

NodeId read_id(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ParseError(where + ": expected an integer id");
  return value.get<NodeId>();
}

double read_number(const json& value, const std::string& where) {
  if (!value.is_number()) throw ParseError(where + ": expected a number");
  return value.get<double>();
}

std::string line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return std::to_string(line);
}

std::vector<std::string_view> split_tabs(std::string_view row) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const auto tab = row.find('\t', start);
    cols.push_back(row.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return cols;
}

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ')) text.remove_suffix(1);
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, out);
  return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

}  // namespace

SemanticNetwork parse_network(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("network JSON, line " + line_of(json_text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("network JSON: top level must be an object");

  std::vector<ConceptNode> nodes;
  const auto& jnodes = require(doc, "nodes", "network");
  if (!jnodes.is_array()) throw ParseError("network: 'nodes' must be an array");
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    const auto& jn = jnodes[i];
    if (!jn.is_object()) throw ParseError(where + ": expected an object");
    ConceptNode n;
    n.id = read_id(require(jn, "id", where), where + ".id");
    const auto& label = require(jn, "label", where);
    if (!label.is_string()) throw ParseError(where + ".label: expected a string");
    n.label = label.get<std::string>();
    if (const auto it = jn.find("threshold"); it != jn.end()) n.threshold = read_number(*it, where + ".threshold");
    if (const auto it = jn.find("history"); it != jn.end()) {
      if (!it->is_array()) throw ParseError(where + ".history: expected an array");
      for (const auto& ts : *it) n.history.push_back(read_number(ts, where + ".history"));
    }
    nodes.push_back(std::move(n));
  }

  std::vector<WeightedEdge> edges;
  if (const auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("network: 'edges' must be an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string where = "edges[" + std::to_string(k) + "]";
      const auto& je = (*it)[k];
      if (!je.is_object()) throw ParseError(where + ": expected an object");
      edges.push_back({read_id(require(je, "a", where), where + ".a"), read_id(require(je, "b", where), where + ".b"),
                       read_number(require(je, "w", where), where + ".w")});
    }
  }
  return SemanticNetwork::build(std::move(nodes), std::move(edges));
}

SemanticNetwork load_network(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  try {
    return parse_network(text);
  } catch (const ValidationError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string network_to_json(const SemanticNetwork& net) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& n : net.nodes()) {
    doc["nodes"].push_back({{"id", n.id}, {"label", n.label}, {"threshold", n.threshold}, {"history", n.history}});
  }
  doc["edges"] = json::array();
  for (const auto& e : net.edges()) doc["edges"].push_back({{"a", e.a}, {"b", e.b}, {"w", e.weight}});
  return doc.dump(2) + "\n";
}

void save_network(const SemanticNetwork& net, const std::filesystem::path& path) {
  write_text_file(path, network_to_json(net));
}

ScoreScale parse_scale(std::string_view name) {
  if (name == "unit") return ScoreScale::Unit;
  if (name == "five-point") return ScoreScale::FivePoint;
  throw ValidationError("unknown score scale '" + std::string(name) + "' (expected unit or five-point)");
}

std::vector<PairJudgment> parse_pairs(std::string_view tsv_text, ScoreScale scale) {
  std::vector<PairJudgment> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= tsv_text.size()) {
    auto eol = tsv_text.find('\n', pos);
    if (eol == std::string_view::npos) eol = tsv_text.size();
    auto row = tsv_text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (row.empty()) continue;

    const std::string where = "pairs line " + std::to_string(line_no);
    const auto cols = split_tabs(row);
    if (cols.size() != 3) throw ParseError(where + ": expected 3 tab-separated columns, got " + std::to_string(cols.size()));
    double score = 0.0;
    if (!parse_double(cols[2], score)) {
      if (out.empty() && line_no == 1) continue;  // header row
      throw ParseError(where + ": score '" + std::string(cols[2]) + "' is not a number");
    }
    if (cols[0].empty() || cols[1].empty()) throw ParseError(where + ": empty label");
    if (scale == ScoreScale::FivePoint) {
      if (score < 1.0 || score > 5.0) throw ValidationError(where + ": score " + std::string(cols[2]) + " outside the five-point scale [1,5]");
      score = (score - 1.0) / 4.0;
    } else if (score < 0.0 || score > 1.0) {
      throw ValidationError(where + ": score " + std::string(cols[2]) + " outside the unit scale [0,1]");
    }
    out.push_back({std::string(cols[0]), std::string(cols[1]), score});
  }
  return out;
}

std::vector<PairJudgment> load_pairs(const std::filesystem::path& path, ScoreScale scale) {
  const auto text = read_text_file(path);
  try {
    return parse_pairs(text, scale);
  } catch (const ValidationError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace snm
