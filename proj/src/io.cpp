#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "bcim/graph.hpp"

namespace bcim {
namespace {

template <class T>
bool parse_number(std::string_view text, T& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// `label,value` rows; the label is everything before the last comma.
template <class Fn>
void read_label_csv(std::istream& in, std::string_view header, Fn&& on_row) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line_no == 1 && line == header) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string_view::npos) throw ParseError("expected `" + std::string(header) + "` row", line_no);
    std::string_view label = trim(line.substr(0, comma));
    if (label.size() >= 2 && label.front() == '"' && label.back() == '"') label = label.substr(1, label.size() - 2);
    on_row(std::string(label), trim(line.substr(comma + 1)), line_no);
  }
}

class LabelIndex {
 public:
  NodeId intern(const std::string& label) {
    auto [it, inserted] = ids_.try_emplace(label, static_cast<NodeId>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }
  bool contains(const std::string& label) const { return ids_.count(label) != 0; }
  NodeId at(const std::string& label) const { return ids_.at(label); }
  std::size_t size() const { return labels_.size(); }
  std::vector<std::string> release() { return std::move(labels_); }

 private:
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::string> labels_;
};

void seed_from_node_map(std::istream& in, LabelIndex& index) {
  std::vector<std::pair<NodeId, std::string>> rows;
  read_label_csv(in, "label,node_id", [&](std::string label, std::string_view id_text, std::size_t line) {
    NodeId id = 0;
    if (!parse_number(id_text, id)) throw ParseError("node map: bad node id '" + std::string(id_text) + "'", line);
    rows.emplace_back(id, std::move(label));
  });
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != i) throw ParseError("node map: ids must be dense and unique from 0", 0);
    if (index.contains(rows[i].second)) throw ParseError("node map: duplicate label '" + rows[i].second + "'", 0);
    index.intern(rows[i].second);
  }
}

bool needs_quoting(const std::string& label) { return label.find_first_of(",\"") != std::string::npos; }

}  // namespace

std::filesystem::path node_map_sidecar(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".nodes.csv");
}

LoadResult parse_multiplex_edgelist(std::istream& in, const LoadOptions& options, std::istream* node_map,
                                    std::istream* costs) {
  LabelIndex index;
  if (node_map) seed_from_node_map(*node_map, index);

  std::vector<std::vector<Edge>> layers;
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::string_view> tokens;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    tokens.clear();
    std::size_t pos = 0;
    while (pos < line.size()) {
      const auto start = line.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos) break;
      auto stop = line.find_first_of(" \t", start);
      if (stop == std::string_view::npos) stop = line.size();
      tokens.push_back(line.substr(start, stop - start));
      pos = stop;
    }
    if (tokens.size() < 3 || tokens.size() > 4) {
      throw ParseError("expected `layer node_a node_b [weight]`, got " + std::to_string(tokens.size()) + " fields",
                       line_no);
    }
    unsigned layer = 0;
    if (!parse_number(tokens[0], layer) || layer == 0) {
      throw ParseError("layer id must be a positive integer, got '" + std::string(tokens[0]) + "'", line_no);
    }
    if (tokens.size() == 4) {
      double weight = 0.0;
      if (!parse_number(tokens[3], weight)) throw ParseError("bad weight '" + std::string(tokens[3]) + "'", line_no);
    }
    const NodeId a = index.intern(std::string(tokens[1]));
    const NodeId b = index.intern(std::string(tokens[2]));
    if (layers.size() < layer) layers.resize(layer);
    layers[layer - 1].push_back({a, b});
  }
  if (index.size() == 0) throw ParseError("edge list is empty", 0);
  if (layers.empty()) layers.resize(1);

  NormalizeReport dropped;
  for (auto& edges : layers) {
    const NormalizeReport r = normalize_edges(edges);
    dropped.self_loops += r.self_loops;
    dropped.duplicates += r.duplicates;
  }

  const std::size_t n = index.size();
  if (options.cost_rule == CostRule::explicit_costs) {
    if (!costs) throw std::invalid_argument("explicit cost rule needs a costs file");
    std::vector<Cost> values(n, -1);
    read_label_csv(*costs, "label,cost", [&](std::string label, std::string_view text, std::size_t line) {
      Cost c = 0;
      if (!parse_number(text, c) || c < 0) throw ParseError("costs: bad cost '" + std::string(text) + "'", line);
      if (!index.contains(label)) throw ParseError("costs: unknown node '" + label + "'", line);
      values[index.at(label)] = c;
    });
    std::vector<std::string> labels = index.release();
    for (std::size_t v = 0; v < n; ++v) {
      if (values[v] < 0) throw ParseError("costs: missing cost for node '" + labels[v] + "'", 0);
    }
    return {MultilayerNetwork(n, std::move(layers), std::move(labels), std::move(values)), dropped};
  }
  return {MultilayerNetwork(n, std::move(layers), index.release()), dropped};
}

LoadResult load_multiplex_edgelist(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::filesystem::path map_path = options.node_map_path;
  if (map_path.empty() && options.auto_node_map && std::filesystem::exists(node_map_sidecar(path))) {
    map_path = node_map_sidecar(path);
  }
  std::ifstream map_in;
  if (!map_path.empty()) {
    map_in.open(map_path);
    if (!map_in) throw std::runtime_error("cannot open " + map_path.string());
  }
  std::ifstream costs_in;
  if (!options.costs_path.empty()) {
    costs_in.open(options.costs_path);
    if (!costs_in) throw std::runtime_error("cannot open " + options.costs_path.string());
  }
  return parse_multiplex_edgelist(in, options, map_path.empty() ? nullptr : &map_in,
                                  options.costs_path.empty() ? nullptr : &costs_in);
}

void write_multiplex_edgelist(const MultilayerNetwork& net, std::ostream& out) {
  out << "# layer node_a node_b\n";
  for (std::size_t m = 0; m < net.num_layers(); ++m) {
    for (const Edge& e : net.edges(m)) out << (m + 1) << ' ' << net.label(e.u) << ' ' << net.label(e.v) << '\n';
  }
}

void write_node_map(const MultilayerNetwork& net, std::ostream& out) {
  out << "label,node_id\n";
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    const std::string& label = net.label(v);
    if (needs_quoting(label)) {
      out << '"' << label << '"';
    } else {
      out << label;
    }
    out << ',' << v << '\n';
  }
}

void save_network(const MultilayerNetwork& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_multiplex_edgelist(net, out);
  std::ofstream map_out(node_map_sidecar(path));
  if (!map_out) throw std::runtime_error("cannot write " + node_map_sidecar(path).string());
  write_node_map(net, map_out);
}

}  // namespace bcim
