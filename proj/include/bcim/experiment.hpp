#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bcim/baselines.hpp"
#include "bcim/generators.hpp"
#include "bcim/mmga.hpp"

namespace bcim {

enum class Algorithm { mmga, dpso, greedy, acd, degree, combim };

/// An algorithm plus, for MMGA, an optional initialization override. Written
/// as `mmga`, `mmga:degree`, `mmga:icr`, `mmga:random`, `dpso`, ...
struct AlgorithmSpec {
  Algorithm algorithm = Algorithm::mmga;
  std::optional<InitMode> init;

  std::string name() const;
  static AlgorithmSpec parse(std::string_view text);
  bool operator==(const AlgorithmSpec&) const = default;
};

std::string_view to_string(Algorithm algorithm);
std::vector<AlgorithmSpec> all_algorithms();

struct GreedyConfig {
  std::int64_t sims = 100;
};

struct SolverSettings {
  MmgaConfig mmga;
  DpsoConfig dpso;
  GreedyConfig greedy;
};

struct SolveOutcome {
  SeedSet seeds;
  Cost cost = 0;
  std::vector<GenerationRecord> trace;  // MMGA only
};

/// Runs one solver. `seed` replaces the rng_seed of the selected config.
SolveOutcome run_solver(const AlgorithmSpec& algorithm, const MultilayerNetwork& net, std::size_t K, Cost B,
                        double p, std::uint64_t seed, const SolverSettings& settings);

/// Live-edge estimate of sigma(seeds); an empty set scores zero.
SpreadEstimate evaluate_seed_set(const MultilayerNetwork& net, const SeedSet& seeds, double p, std::int64_t sims,
                                 std::uint64_t seed);

/// File path, or one of ER / WS / BA built from a generator template.
struct NetworkSource {
  std::string id;
  std::optional<std::filesystem::path> path;
  std::optional<GeneratorSpec> generator;

  static NetworkSource parse(std::string_view token, const GeneratorSpec& base);
  static NetworkSource generated(const GeneratorSpec& spec);
  MultilayerNetwork load() const;
};

std::vector<Cost> default_budgets();
std::vector<std::size_t> default_capacities();

struct SweepSpec {
  std::vector<NetworkSource> networks;
  std::vector<AlgorithmSpec> algorithms = all_algorithms();
  std::vector<Cost> budgets = default_budgets();
  std::vector<std::size_t> capacities = default_capacities();
  std::vector<double> probabilities{0.1, 0.3, 0.5};
  std::size_t repetitions = 1;
  std::uint64_t master_seed = 1;
  std::int64_t final_sims = 1000;
  std::size_t workers = 0;  // 0: OpenMP default
  SolverSettings settings;

  void validate() const;
  std::size_t num_cells() const;
};

struct ExperimentRecord {
  std::string network;
  std::string algorithm;
  std::size_t K = 0;
  Cost B = 0;
  double p = 0.0;
  std::size_t rep = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> seed_set;  // labels
  std::optional<std::string> error;
  Cost cost = 0;
  double spread_mean = 0.0;
  double spread_stderr = 0.0;
  std::int64_t sims = 0;
  double seconds = 0.0;
};

inline constexpr std::string_view kCsvHeader =
    "network,algorithm,K,B,p,rep,seed,seed_set,cost,spread_mean,spread_stderr,sims,seconds";

void write_csv_row(std::ostream& out, const ExperimentRecord& r);
/// Parses and validates; throws std::runtime_error naming the line.
std::vector<ExperimentRecord> read_csv(std::istream& in);
/// Throws unless cost <= B and |seed set| <= K (error rows are exempt).
void validate_record(const ExperimentRecord& r);

std::uint64_t cell_seed(std::uint64_t master, std::size_t network, std::size_t algorithm, std::size_t p_index,
                        std::size_t K, Cost B, std::size_t rep);
/// Shared by every algorithm in a cell so their estimates use common random numbers.
std::uint64_t evaluation_seed(std::uint64_t master, std::size_t network, std::size_t p_index, std::size_t K, Cost B,
                              std::size_t rep);

/// Runs every cell; rows reach `csv` (header first) in cell order while later
/// cells are still running. Solver failures become error rows.
std::vector<ExperimentRecord> run_sweep(const SweepSpec& spec, std::ostream* csv = nullptr);

// --- AUC ---------------------------------------------------------------------

/// Trapezoidal area under (x, y) points sorted by x.
double trapezoid_area(std::vector<std::pair<double, double>> points);

/// Shares of the total area; they sum to 1 (uniform when all areas are zero).
std::vector<double> auc_shares(const std::vector<double>& areas);

struct AucEntry {
  std::string network;
  std::size_t K = 0;
  double p = 0.0;
  std::string variant;  // algorithm column
  double area = 0.0;
  double share = 0.0;
};

/// Groups rows by (network, K, p), averages repetitions, and compares the
/// spread-vs-budget curves of each algorithm. Throws if a variant lacks a
/// budget another variant has.
std::vector<AucEntry> compute_auc(const std::vector<ExperimentRecord>& records);

// --- configuration -----------------------------------------------------------

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  SweepSpec sweep;
  GeneratorSpec generator;
};

/// Flat `section.key = value` lines, `#` comments, lists as `[a, b]`.
/// Unknown keys and out-of-range values raise ConfigError with the key path.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace bcim
