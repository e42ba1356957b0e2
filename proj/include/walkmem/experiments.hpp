#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "walkmem/absorbing.hpp"
#include "walkmem/generate.hpp"
#include "walkmem/simulator.hpp"
#include "walkmem/stats.hpp"
#include "walkmem/strategy.hpp"

namespace walkmem {

enum class ExperimentKind { DegreeSweep, KlSweep, RewireSweep, RealTable, Single };
std::string to_string(ExperimentKind kind);

/// Which estimates to produce. `Auto` means exact plus simulated when the
/// network fits the exact solver's arc budget, simulated only otherwise.
enum class MethodChoice { Exact, Simulate, Both, Auto };
std::string to_string(MethodChoice method);
MethodChoice parse_method(std::string_view text);

/// A user-supplied edge-list file.
struct DatasetSpec {
    std::string name;
    std::string path;
    bool directed = false;
    /// Expected SHA-256 (hex); empty skips verification.
    std::string sha256;
};

/// Where a benchmark network comes from and the file name it is expected under.
struct KnownDataset {
    std::string name;
    std::string file;
    std::string source;
    bool directed = false;
};

const std::vector<KnownDataset>& known_datasets();
/// Case-insensitive lookup; nullptr when unknown.
const KnownDataset* find_known_dataset(std::string_view name);
/// Dataset entry for a known network stored under `data_dir`.
DatasetSpec dataset_in(const std::string& data_dir, const KnownDataset& known);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::DegreeSweep;
    std::vector<NetworkFamily> families{NetworkFamily::BarabasiAlbert};
    NodeId nodes = 100;
    /// <k> values for degree and KL sweeps, p_rew values for the rewire sweep.
    std::vector<double> grid;
    /// Ring degrees of the rewire sweep.
    std::vector<int> ring_degrees{4, 6};
    /// WS rewiring probability in degree and KL sweeps.
    double rewire = 0.2;
    std::vector<StrategySpec> strategies = default_strategies();
    int instances = 10;
    MethodChoice method = MethodChoice::Exact;
    /// Simulation settings; its seed is replaced by per-cell derived seeds.
    SimConfig sim;
    std::int64_t arc_budget = 50'000;
    int max_retries = 100;
    /// Record failed cells as invalid rows instead of aborting the run.
    bool skip_failed = false;
    /// Walk length of the empirical occupation in simulated KL sweeps.
    std::int64_t kl_samples = 1'000'000;
    std::vector<DatasetSpec> datasets;
    std::uint64_t seed = 42;

    void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);

/// One cell of a sweep: an aggregate over network instances.
struct SweepRow {
    std::string family;
    std::string network;
    std::string parameter;
    double value = std::numeric_limits<double>::quiet_NaN();
    std::string strategy;
    std::string method;
    std::string metric;
    double mean = std::numeric_limits<double>::quiet_NaN();
    /// Sample standard deviation across valid instances (NaN below two).
    double stddev = std::numeric_limits<double>::quiet_NaN();
    int instances = 0;
    int valid = 0;
    /// Simulation standard error of `mean`; NaN for exact rows.
    double standard_error = std::numeric_limits<double>::quiet_NaN();
    std::string note;
    /// Per-instance values (NaN where invalid). Written to JSON only.
    std::vector<double> instance_values;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct NetworkSummary {
    std::string name;
    std::string path;
    std::string sha256;
    std::size_t dropped_lines = 0;
    NodeId loaded_nodes = 0;
    NetworkStats stats;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<SweepRow> rows;
    /// Structural statistics of the real networks (real-table runs).
    std::vector<NetworkSummary> networks;
};

/// Inclusive arithmetic grid "start:stop:step" or a comma-separated list.
std::vector<double> parse_grid(std::string_view text);
std::vector<double> default_degree_grid();
std::vector<double> default_rewire_grid();

/// G per (family, <k>, strategy, method), mean over generated instances.
SweepResult run_degree_sweep(const ExperimentConfig& config);
/// D_KL of the stationary occupation from uniform per (family, <k>, strategy).
/// Instances whose chain is reducible are counted invalid and noted.
SweepResult run_kl_sweep(const ExperimentConfig& config);
/// G per (ring degree, p_rew, strategy, method) on WS networks.
SweepResult run_ws_rewire_sweep(const ExperimentConfig& config);
/// G per (dataset, strategy, method) on the largest component of each
/// dataset, with its structural statistics.
SweepResult run_real_table(const ExperimentConfig& config);
/// Dispatches on config.kind (not Single).
SweepResult run_experiment(const ExperimentConfig& config);

/// One network, one strategy. The network is datasets[0] when given,
/// otherwise instance 0 of families[0] at <k> = grid[0]. Returns the exact
/// and/or simulated reports requested by config.method.
std::vector<MfptReport> run_single(const ExperimentConfig& config);
std::vector<MfptReport> run_single(const Graph& g, const std::string& name, const StrategySpec& strategy,
                                   const ExperimentConfig& config);

/// Network used by a sweep cell: family, size, <k> and instance number fully
/// determine it under the master seed.
Graph sweep_network(const ExperimentConfig& config, NetworkFamily family, double mean_degree, int instance);
/// Network of a rewire-sweep cell.
Graph rewire_network(const ExperimentConfig& config, int ring_degree, double rewire, int instance);

/// Long-format CSV, one row per cell.
std::string to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> rows_from_csv(std::string_view text);

/// Manifest: config, rows (including per-instance values) and network stats.
nlohmann::json to_json(const SweepResult& result);
std::vector<SweepRow> rows_from_json(const nlohmann::json& manifest);

/// SHA-256 of a file as lowercase hex.
std::string file_sha256(const std::string& path);

}  // namespace walkmem
