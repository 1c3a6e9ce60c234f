#include "bcim/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

namespace bcim {
namespace {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted field");
  return fields;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::runtime_error("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> labels_of(const MultilayerNetwork& net, const SeedSet& seeds) {
  std::vector<std::string> out;
  for (NodeId v : seeds) out.push_back(net.label(v));
  return out;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

}  // namespace

// --- algorithms ----------------------------------------------------------------

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::mmga: return "mmga";
    case Algorithm::dpso: return "dpso";
    case Algorithm::greedy: return "greedy";
    case Algorithm::acd: return "acd";
    case Algorithm::degree: return "degree";
    case Algorithm::combim: return "combim";
  }
  return "?";
}

std::string AlgorithmSpec::name() const {
  std::string out(to_string(algorithm));
  if (init) out += ":" + std::string(to_string(*init));
  return out;
}

AlgorithmSpec AlgorithmSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  AlgorithmSpec spec;
  bool found = false;
  for (auto a : {Algorithm::mmga, Algorithm::dpso, Algorithm::greedy, Algorithm::acd, Algorithm::degree,
                 Algorithm::combim}) {
    if (head == to_string(a)) {
      spec.algorithm = a;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
  if (colon != std::string_view::npos) {
    if (spec.algorithm != Algorithm::mmga) {
      throw std::invalid_argument("only mmga takes an init variant: '" + std::string(text) + "'");
    }
    spec.init = parse_init_mode(text.substr(colon + 1));
  }
  return spec;
}

std::vector<AlgorithmSpec> all_algorithms() {
  return {{Algorithm::mmga, {}},   {Algorithm::dpso, {}},   {Algorithm::greedy, {}},
          {Algorithm::acd, {}},    {Algorithm::degree, {}}, {Algorithm::combim, {}}};
}

SolveOutcome run_solver(const AlgorithmSpec& algorithm, const MultilayerNetwork& net, std::size_t K, Cost B,
                        double p, std::uint64_t seed, const SolverSettings& settings) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("spread probability must be in [0,1]");
  if (B < 0) throw std::invalid_argument("budget must be >= 0");
  if (K < 1) throw std::invalid_argument("capacity must be >= 1");
  SolveOutcome out;
  switch (algorithm.algorithm) {
    case Algorithm::mmga: {
      MmgaConfig config = settings.mmga;
      config.capacity = std::min(K, net.num_nodes());
      config.budget = B;
      config.spread_prob = p;
      config.rng_seed = seed;
      if (algorithm.init) config.init = *algorithm.init;
      auto result = solve_bcim(net, config);
      out.seeds = std::move(result.seeds);
      out.trace = std::move(result.trace);
      break;
    }
    case Algorithm::dpso: {
      DpsoConfig config = settings.dpso;
      config.rng_seed = seed;
      out.seeds = dpso_solve(net, K, B, p, config).seeds;
      break;
    }
    case Algorithm::greedy: out.seeds = greedy_solve(net, K, B, p, settings.greedy.sims, seed).seeds; break;
    case Algorithm::acd: out.seeds = acd_solve(net, K, B); break;
    case Algorithm::degree: out.seeds = degree_solve(net, K, B); break;
    case Algorithm::combim: out.seeds = combim_solve(net, K, B); break;
  }
  out.cost = net.cost_of(out.seeds);
  return out;
}

SpreadEstimate evaluate_seed_set(const MultilayerNetwork& net, const SeedSet& seeds, double p, std::int64_t sims,
                                 std::uint64_t seed) {
  if (seeds.empty()) return {0.0, 0.0, sims};
  return estimate_influence(net, seeds, p, sims, seed, CascadeMode::live_edge);
}

// --- networks and sweeps ------------------------------------------------------

NetworkSource NetworkSource::generated(const GeneratorSpec& spec) {
  spec.validate();
  NetworkSource source;
  source.id = spec.name();
  source.generator = spec;
  return source;
}

NetworkSource NetworkSource::parse(std::string_view token, const GeneratorSpec& base) {
  if (token == "ER" || token == "WS" || token == "BA") {
    GeneratorSpec spec = base;
    spec.model = parse_generator_model(token);
    return generated(spec);
  }
  NetworkSource source;
  source.path = std::filesystem::path(std::string(token));
  source.id = source.path->stem().string();
  return source;
}

MultilayerNetwork NetworkSource::load() const {
  if (generator) return generate(*generator);
  if (path) return load_multiplex_edgelist(*path).network;
  throw std::invalid_argument("network source has neither a path nor a generator");
}

std::vector<Cost> default_budgets() {
  std::vector<Cost> out;
  for (Cost b = 200; b <= 600; b += 50) out.push_back(b);
  return out;
}

std::vector<std::size_t> default_capacities() {
  std::vector<std::size_t> out;
  for (std::size_t k = 10; k <= 20; k += 2) out.push_back(k);
  return out;
}

void SweepSpec::validate() const {
  if (networks.empty()) throw std::invalid_argument("sweep: no networks");
  if (algorithms.empty()) throw std::invalid_argument("sweep: no algorithms");
  if (budgets.empty() || capacities.empty() || probabilities.empty()) throw std::invalid_argument("sweep: empty grid");
  if (repetitions < 1) throw std::invalid_argument("sweep: repetitions must be >= 1");
  if (final_sims < 1) throw std::invalid_argument("sweep: final_sims must be >= 1");
  for (Cost b : budgets) {
    if (b < 0) throw std::invalid_argument("sweep: budgets must be >= 0");
  }
  for (std::size_t k : capacities) {
    if (k < 1) throw std::invalid_argument("sweep: capacities must be >= 1");
  }
  for (double p : probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sweep: probabilities must be in [0,1]");
  }
}

std::size_t SweepSpec::num_cells() const {
  return networks.size() * algorithms.size() * probabilities.size() * capacities.size() * budgets.size() *
         repetitions;
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t network, std::size_t algorithm, std::size_t p_index,
                        std::size_t K, Cost B, std::size_t rep) {
  return derive_seed(master, 1, network, algorithm, p_index, K, static_cast<std::uint64_t>(B), rep);
}

std::uint64_t evaluation_seed(std::uint64_t master, std::size_t network, std::size_t p_index, std::size_t K, Cost B,
                              std::size_t rep) {
  return derive_seed(master, 2, network, p_index, K, static_cast<std::uint64_t>(B), rep);
}

void validate_record(const ExperimentRecord& r) {
  if (r.error) return;
  if (r.cost > r.B) {
    throw std::runtime_error("seed set cost " + std::to_string(r.cost) + " exceeds budget " + std::to_string(r.B));
  }
  if (r.seed_set.size() > r.K) {
    throw std::runtime_error("seed set size " + std::to_string(r.seed_set.size()) + " exceeds capacity " +
                             std::to_string(r.K));
  }
}

void write_csv_row(std::ostream& out, const ExperimentRecord& r) {
  std::string seeds;
  if (r.error) {
    seeds = "ERROR:" + one_line(*r.error);
  } else {
    for (std::size_t i = 0; i < r.seed_set.size(); ++i) {
      if (i) seeds += ';';
      seeds += r.seed_set[i];
    }
  }
  char seconds[32];
  std::snprintf(seconds, sizeof(seconds), "%.3f", r.seconds);
  out << csv_field(r.network) << ',' << csv_field(r.algorithm) << ',' << r.K << ',' << r.B << ','
      << format_double(r.p) << ',' << r.rep << ',' << r.seed << ',' << csv_field(seeds) << ',' << r.cost << ','
      << format_double(r.spread_mean) << ',' << format_double(r.spread_stderr) << ',' << r.sims << ',' << seconds
      << '\n';
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("line 1: unexpected CSV header");
  std::vector<ExperimentRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto f = split_csv_line(line);
      if (f.size() != 13) throw std::runtime_error("expected 13 fields, got " + std::to_string(f.size()));
      ExperimentRecord r;
      r.network = f[0];
      r.algorithm = f[1];
      r.K = parse_number<std::size_t>(f[2], "K");
      r.B = parse_number<Cost>(f[3], "B");
      r.p = parse_number<double>(f[4], "p");
      r.rep = parse_number<std::size_t>(f[5], "rep");
      r.seed = parse_number<std::uint64_t>(f[6], "seed");
      if (f[7].rfind("ERROR:", 0) == 0) {
        r.error = f[7].substr(6);
      } else if (!f[7].empty()) {
        std::string label;
        std::istringstream labels(f[7]);
        while (std::getline(labels, label, ';')) r.seed_set.push_back(label);
      }
      r.cost = parse_number<Cost>(f[8], "cost");
      r.spread_mean = parse_number<double>(f[9], "spread_mean");
      r.spread_stderr = parse_number<double>(f[10], "spread_stderr");
      r.sims = parse_number<std::int64_t>(f[11], "sims");
      r.seconds = parse_number<double>(f[12], "seconds");
      validate_record(r);
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<ExperimentRecord> run_sweep(const SweepSpec& spec, std::ostream* csv) {
  spec.validate();
  std::vector<MultilayerNetwork> nets;
  for (const auto& source : spec.networks) nets.push_back(source.load());

  struct Cell {
    std::size_t network, algorithm, p_index, K;
    Cost B;
    std::size_t rep;
    std::uint64_t seed, eval_seed;
  };
  std::vector<Cell> cells;
  cells.reserve(spec.num_cells());
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t ni = 0; ni < nets.size(); ++ni) {
    for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
      for (std::size_t pi = 0; pi < spec.probabilities.size(); ++pi) {
        for (std::size_t K : spec.capacities) {
          for (Cost B : spec.budgets) {
            for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
              const auto seed = cell_seed(spec.master_seed, ni, ai, pi, K, B, rep);
              if (!seen.insert(seed).second) throw std::logic_error("sweep: cell seed collision");
              cells.push_back({ni, ai, pi, K, B, rep, seed, evaluation_seed(spec.master_seed, ni, pi, K, B, rep)});
            }
          }
        }
      }
    }
  }

  std::vector<ExperimentRecord> records(cells.size());
  std::vector<std::uint8_t> done(cells.size(), 0);
  std::size_t written = 0;
  if (csv) *csv << kCsvHeader << '\n' << std::flush;
  const int workers = spec.workers ? static_cast<int>(spec.workers) : omp_get_max_threads();
  const auto total = static_cast<std::int64_t>(cells.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::int64_t i = 0; i < total; ++i) {
    const Cell& cell = cells[static_cast<std::size_t>(i)];
    const auto& net = nets[cell.network];
    const double p = spec.probabilities[cell.p_index];
    ExperimentRecord r;
    r.network = spec.networks[cell.network].id;
    r.algorithm = spec.algorithms[cell.algorithm].name();
    r.K = cell.K;
    r.B = cell.B;
    r.p = p;
    r.rep = cell.rep;
    r.seed = cell.seed;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto solved = run_solver(spec.algorithms[cell.algorithm], net, cell.K, cell.B, p, cell.seed, spec.settings);
      const auto est = evaluate_seed_set(net, solved.seeds, p, spec.final_sims, cell.eval_seed);
      r.seed_set = labels_of(net, solved.seeds);
      r.cost = solved.cost;
      r.spread_mean = est.mean_spread;
      r.spread_stderr = est.std_error;
      r.sims = est.num_simulations;
      validate_record(r);
    } catch (const std::exception& e) {
      r.error = e.what();
    } catch (...) {
      r.error = "unknown failure";
    }
    if (r.error) {
      r.seed_set.clear();
      r.cost = 0;
      r.spread_mean = r.spread_stderr = std::nan("");
      r.sims = 0;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    records[static_cast<std::size_t>(i)] = std::move(r);
#pragma omp critical(bcim_sweep_writer)
    {
      done[static_cast<std::size_t>(i)] = 1;
      while (written < records.size() && done[written]) {
        if (csv) write_csv_row(*csv, records[written]);
        ++written;
      }
      if (csv) csv->flush();
    }
  }
  return records;
}

// --- AUC -------------------------------------------------------------------------

double trapezoid_area(std::vector<std::pair<double, double>> points) {
  std::sort(points.begin(), points.end());
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += 0.5 * (points[i].first - points[i - 1].first) * (points[i].second + points[i - 1].second);
  }
  return area;
}

std::vector<double> auc_shares(const std::vector<double>& areas) {
  double total = 0.0;
  for (double a : areas) total += a;
  std::vector<double> out(areas.size());
  for (std::size_t i = 0; i < areas.size(); ++i) {
    out[i] = total > 0.0 ? areas[i] / total : 1.0 / static_cast<double>(areas.size());
  }
  return out;
}

std::vector<AucEntry> compute_auc(const std::vector<ExperimentRecord>& records) {
  using Group = std::tuple<std::string, std::size_t, double>;
  // group -> variant -> budget -> spreads over repetitions
  std::map<Group, std::map<std::string, std::map<Cost, std::vector<double>>>> curves;
  for (const auto& r : records) {
    if (r.error) continue;
    curves[{r.network, r.K, r.p}][r.algorithm][r.B].push_back(r.spread_mean);
  }
  std::vector<AucEntry> out;
  for (const auto& [group, variants] : curves) {
    const auto& [network, K, p] = group;
    std::set<Cost> grid;
    for (const auto& [name, points] : variants) {
      for (const auto& [b, v] : points) grid.insert(b);
    }
    std::vector<double> areas;
    for (const auto& [name, points] : variants) {
      for (Cost b : grid) {
        if (!points.count(b)) {
          throw std::invalid_argument("missing grid point: network=" + network + " K=" + std::to_string(K) +
                                      " p=" + format_double(p) + " algorithm=" + name + " B=" + std::to_string(b));
        }
      }
      std::vector<std::pair<double, double>> curve;
      for (const auto& [b, spreads] : points) {
        double mean = 0.0;
        for (double s : spreads) mean += s;
        curve.emplace_back(static_cast<double>(b), mean / static_cast<double>(spreads.size()));
      }
      areas.push_back(trapezoid_area(std::move(curve)));
    }
    const auto shares = auc_shares(areas);
    std::size_t i = 0;
    for (const auto& [name, points] : variants) {
      out.push_back({network, K, p, name, areas[i], shares[i]});
      ++i;
    }
  }
  return out;
}

}  // namespace bcim
