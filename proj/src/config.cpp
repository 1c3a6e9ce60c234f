#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "bcim/experiment.hpp"

namespace bcim {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(const std::string& key, const std::string& what) { throw ConfigError(key + ": " + what); }

template <class T>
T number(const std::string& key, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) fail(key, "cannot parse '" + text + "'");
  return value;
}

double probability(const std::string& key, const std::string& text) {
  const double v = number<double>(key, text);
  if (!(v >= 0.0 && v <= 1.0)) fail(key, "value " + text + " out of range [0,1]");
  return v;
}

template <class T>
T at_least(const std::string& key, const std::string& text, T lo) {
  const T v = number<T>(key, text);
  if (v < lo) fail(key, "value " + text + " must be >= " + std::to_string(lo));
  return v;
}

std::vector<std::string> list(const std::string& key, const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') fail(key, "expected a list like [a, b]");
  std::vector<std::string> out;
  std::stringstream items(text.substr(1, text.size() - 2));
  std::string item;
  while (std::getline(items, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(key, "empty list item");
    out.push_back(item);
  }
  if (out.empty()) fail(key, "list must not be empty");
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  auto& sweep = cfg.sweep;
  auto& gen = cfg.generator;
  auto& mmga = sweep.settings.mmga;
  auto& dpso = sweep.settings.dpso;
  auto& greedy = sweep.settings.greedy;
  std::vector<std::string> network_tokens;

  using Setter = std::function<void(const std::string& key, const std::string& value)>;
  const std::map<std::string, Setter> setters{
      {"sweep.networks", [&](auto& k, auto& v) { network_tokens = list(k, v); }},
      {"sweep.algorithms",
       [&](auto& k, auto& v) {
         sweep.algorithms.clear();
         for (const auto& a : list(k, v)) {
           try {
             sweep.algorithms.push_back(AlgorithmSpec::parse(a));
           } catch (const std::invalid_argument& e) {
             fail(k, e.what());
           }
         }
       }},
      {"sweep.budgets",
       [&](auto& k, auto& v) {
         sweep.budgets.clear();
         for (const auto& b : list(k, v)) sweep.budgets.push_back(at_least<Cost>(k, b, 0));
       }},
      {"sweep.capacities",
       [&](auto& k, auto& v) {
         sweep.capacities.clear();
         for (const auto& c : list(k, v)) sweep.capacities.push_back(at_least<std::size_t>(k, c, 1));
       }},
      {"sweep.probabilities",
       [&](auto& k, auto& v) {
         sweep.probabilities.clear();
         for (const auto& p : list(k, v)) sweep.probabilities.push_back(probability(k, p));
       }},
      {"sweep.repetitions", [&](auto& k, auto& v) { sweep.repetitions = at_least<std::size_t>(k, v, 1); }},
      {"sweep.seed", [&](auto& k, auto& v) { sweep.master_seed = number<std::uint64_t>(k, v); }},
      {"sweep.final_sims", [&](auto& k, auto& v) { sweep.final_sims = at_least<std::int64_t>(k, v, 1); }},
      {"sweep.workers", [&](auto& k, auto& v) { sweep.workers = number<std::size_t>(k, v); }},

      {"generator.nodes", [&](auto& k, auto& v) { gen.num_nodes = at_least<std::size_t>(k, v, 1); }},
      {"generator.layers", [&](auto& k, auto& v) { gen.num_layers = at_least<std::size_t>(k, v, 1); }},
      {"generator.er_p", [&](auto& k, auto& v) { gen.er_edge_prob = probability(k, v); }},
      {"generator.ws_k", [&](auto& k, auto& v) { gen.ws_neighbors = at_least<std::size_t>(k, v, 2); }},
      {"generator.ws_p", [&](auto& k, auto& v) { gen.ws_rewire_prob = probability(k, v); }},
      {"generator.ba_m", [&](auto& k, auto& v) { gen.ba_edges_per_node = at_least<std::size_t>(k, v, 1); }},
      {"generator.seed", [&](auto& k, auto& v) { gen.rng_seed = number<std::uint64_t>(k, v); }},

      {"mmga.population", [&](auto& k, auto& v) { mmga.population_size = at_least<std::size_t>(k, v, 3); }},
      {"mmga.pairs", [&](auto& k, auto& v) { mmga.crossover_pairs = number<std::size_t>(k, v); }},
      {"mmga.beta", [&](auto& k, auto& v) { mmga.init_perturb_prob = probability(k, v); }},
      {"mmga.p_c", [&](auto& k, auto& v) { mmga.crossover_prob = probability(k, v); }},
      {"mmga.p_m", [&](auto& k, auto& v) { mmga.mutation_prob = probability(k, v); }},
      {"mmga.generations", [&](auto& k, auto& v) { mmga.generations = number<std::size_t>(k, v); }},
      {"mmga.fitness_sims", [&](auto& k, auto& v) { mmga.fitness_sims = at_least<std::int64_t>(k, v, 1); }},
      {"mmga.final_sims", [&](auto& k, auto& v) { mmga.final_sims = at_least<std::int64_t>(k, v, 1); }},
      {"mmga.icr_sims", [&](auto& k, auto& v) { mmga.icr_sims = at_least<std::int64_t>(k, v, 1); }},
      {"mmga.icr_seed", [&](auto& k, auto& v) { mmga.icr_seed = number<std::uint64_t>(k, v); }},
      {"mmga.selection",
       [&](auto& k, auto& v) {
         try {
           mmga.selection = parse_selection_mode(v);
         } catch (const std::invalid_argument& e) {
           fail(k, e.what());
         }
       }},
      {"mmga.init",
       [&](auto& k, auto& v) {
         try {
           mmga.init = parse_init_mode(v);
         } catch (const std::invalid_argument& e) {
           fail(k, e.what());
         }
       }},

      {"dpso.swarm", [&](auto& k, auto& v) { dpso.swarm_size = at_least<std::size_t>(k, v, 2); }},
      {"dpso.w", [&](auto& k, auto& v) { dpso.inertia = number<double>(k, v); }},
      {"dpso.i1", [&](auto& k, auto& v) { dpso.learn_personal = number<double>(k, v); }},
      {"dpso.i2", [&](auto& k, auto& v) { dpso.learn_global = number<double>(k, v); }},
      {"dpso.iterations", [&](auto& k, auto& v) { dpso.iterations = number<std::size_t>(k, v); }},
      {"dpso.fitness_sims", [&](auto& k, auto& v) { dpso.fitness_sims = at_least<std::int64_t>(k, v, 1); }},
      {"dpso.turbulence", [&](auto& k, auto& v) { dpso.turbulence = probability(k, v); }},
      {"dpso.icr_sims", [&](auto& k, auto& v) { dpso.icr_sims = at_least<std::int64_t>(k, v, 1); }},

      {"greedy.sims", [&](auto& k, auto& v) { greedy.sims = at_least<std::int64_t>(k, v, 1); }},
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(std::string_view(text).substr(0, eq));
    const auto value = trim(std::string_view(text).substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(key + ": unknown key (line " + std::to_string(line_no) + ")");
    it->second(key, value);
  }

  try {
    for (auto model : {GeneratorModel::ER, GeneratorModel::WS, GeneratorModel::BA}) {
      auto check = gen;
      check.model = model;
      check.validate();
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (const auto& token : network_tokens) sweep.networks.push_back(NetworkSource::parse(token, gen));
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  return parse_config(in);
}

}  // namespace bcim
