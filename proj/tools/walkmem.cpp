// walkmem: mean first passage times of memory-biased random walks.
//
//   walkmem sweep  --family ba --n 100 --kgrid 2:20:2 --method both --out fig1.csv
//   walkmem kl     --family ba,er --kgrid 2:20:2 --out kl.csv
//   walkmem rewire --k 4,6 --pgrid 0,0.01,0.1,1 --out rewire.csv
//   walkmem real   --dataset ca-netscience --data-dir data --out table.csv
//   walkmem single --edges net.txt --strategy "pid-rwm(alpha=10)" --method both
//   walkmem stats  --edges net.txt
//
// Sweeps write long-format CSV (stdout unless --out) plus a JSON manifest
// next to --out. Failures exit nonzero with {"error": {...}} on stderr.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "walkmem/edge_list.hpp"
#include "walkmem/error.hpp"
#include "walkmem/experiments.hpp"
#include "walkmem/report_io.hpp"

namespace {

using namespace walkmem;
using nlohmann::json;

struct Options {
    std::vector<std::string> families{"ba"};
    int nodes = 100;
    std::string kgrid = "2:20:2";
    std::string pgrid;
    double mean_degree = 4.0;
    std::vector<int> ring_degrees{4, 6};
    double rewire = 0.2;
    std::string strategies;
    std::string strategy = "u-rw";
    int instances = 10;
    std::string method;
    std::uint64_t seed = 42;
    std::string out;
    std::string csv_out;
    int repetitions = 10;
    std::int64_t pairs = 0;
    std::int64_t max_steps = 0;
    double censored_limit = 0.01;
    std::int64_t arc_budget = 50'000;
    int max_retries = 100;
    bool skip_failed = false;
    std::int64_t kl_samples = 1'000'000;
    std::vector<std::string> edges;
    std::vector<std::string> names;
    std::vector<std::string> checksums;
    std::vector<std::string> datasets;
    std::string data_dir;
    bool directed = false;
    bool include_pairs = false;
    int threads = 0;
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("io_error", "cannot write " + path);
    out << text;
}

std::string manifest_path(const std::string& out) {
    return std::filesystem::path(out).replace_extension(".json").string();
}

ExperimentConfig base_config(const Options& o, ExperimentKind kind, MethodChoice default_method) {
    ExperimentConfig c;
    c.kind = kind;
    c.families.clear();
    for (const auto& f : o.families) c.families.push_back(parse_family(f));
    c.nodes = o.nodes;
    c.rewire = o.rewire;
    c.ring_degrees = o.ring_degrees;
    if (!o.strategies.empty()) c.strategies = parse_strategy_list(o.strategies);
    c.instances = o.instances;
    c.method = o.method.empty() ? default_method : parse_method(o.method);
    c.sim.repetitions = o.repetitions;
    c.sim.max_steps = o.max_steps;
    c.sim.censored_limit = o.censored_limit;
    c.sim.cache_budget = o.arc_budget;
    if (o.pairs > 0) {
        c.sim.mode = SimConfig::Mode::SampledPairs;
        c.sim.sampled_pairs = o.pairs;
    }
    c.arc_budget = o.arc_budget;
    c.max_retries = o.max_retries;
    c.skip_failed = o.skip_failed;
    c.kl_samples = o.kl_samples;
    c.seed = o.seed;
    return c;
}

std::vector<DatasetSpec> collect_datasets(const Options& o) {
    if (!o.names.empty() && o.names.size() != o.edges.size())
        throw InvalidArgument("--name must be given once per --edges file");
    if (!o.checksums.empty() && o.checksums.size() != o.edges.size())
        throw InvalidArgument("--sha256 must be given once per --edges file");
    std::vector<DatasetSpec> out;
    for (std::size_t i = 0; i < o.edges.size(); ++i) {
        DatasetSpec d;
        d.path = o.edges[i];
        d.name = o.names.empty() ? std::filesystem::path(d.path).stem().string() : o.names[i];
        d.directed = o.directed;
        if (!o.checksums.empty()) d.sha256 = o.checksums[i];
        out.push_back(std::move(d));
    }
    std::string dir = o.data_dir;
    if (dir.empty()) {
        const char* env = std::getenv("WALKMEM_DATA_DIR");
        dir = env ? env : ".";
    }
    for (const auto& name : o.datasets) {
        const auto* known = find_known_dataset(name);
        if (!known) {
            std::string list;
            for (const auto& k : known_datasets()) list += (list.empty() ? "" : ", ") + k.name;
            throw InvalidArgument("unknown dataset '" + name + "' (known: " + list + ")");
        }
        out.push_back(dataset_in(dir, *known));
    }
    return out;
}

void emit_sweep(const SweepResult& result, const Options& o) {
    write_text(o.out, to_csv(result.rows));
    if (!o.out.empty() && o.out != "-") write_text(manifest_path(o.out), to_json(result).dump(2) + "\n");
}

void add_sweep_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--family", o.families, "Network families: ba, ws, er, er-directed")->delimiter(',');
    cmd->add_option("--n", o.nodes, "Nodes per generated network")->capture_default_str();
    cmd->add_option("--kgrid", o.kgrid, "Mean degree grid, start:stop:step or a list")->capture_default_str();
    cmd->add_option("--rewire", o.rewire, "WS rewiring probability")->capture_default_str();
    cmd->add_option("--instances", o.instances, "Networks per grid point")->capture_default_str();
    cmd->add_option("--max-retries", o.max_retries, "Generator attempts to obtain a connected network")
        ->capture_default_str();
    cmd->add_flag("--skip-failed", o.skip_failed, "Record failing cells as invalid instead of aborting");
}

void add_common_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--strategies", o.strategies, "Comma-separated strategy list (default: all seven)");
    cmd->add_option("--method", o.method, "exact, simulate, both or auto");
    cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    cmd->add_option("--out", o.out, "Output CSV; the JSON manifest goes next to it");
    cmd->add_option("--reps", o.repetitions, "Simulation repetitions per ordered pair")->capture_default_str();
    cmd->add_option("--pairs", o.pairs, "Simulate this many sampled ordered pairs instead of all pairs");
    cmd->add_option("--max-steps", o.max_steps, "Trajectory cap (default 1000 N <k>)");
    cmd->add_option("--censored-limit", o.censored_limit, "Largest tolerated censored fraction")
        ->capture_default_str();
    cmd->add_option("--arc-budget", o.arc_budget, "Largest arc-state count solved exactly")->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker threads (default: all cores)");
}

void add_edge_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--edges", o.edges, "Edge-list file (repeatable)");
    cmd->add_option("--name", o.names, "Network name per --edges file");
    cmd->add_option("--sha256", o.checksums, "Expected SHA-256 per --edges file");
    cmd->add_option("--dataset", o.datasets, "Known benchmark network looked up in --data-dir");
    cmd->add_option("--data-dir", o.data_dir, "Directory of benchmark files (default $WALKMEM_DATA_DIR)");
    cmd->add_flag("--directed", o.directed, "Read edge lists as directed");
}

int fail(const std::string& code, const std::string& message, int status) {
    std::cerr << json{{"error", {{"code", code}, {"message", message}}}}.dump() << '\n';
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mean first passage times of memory-biased random walks"};
    app.require_subcommand(1);
    Options o;

    auto* sweep = app.add_subcommand("sweep", "GrMFPT against mean degree on generated networks");
    add_sweep_options(sweep, o);
    add_common_options(sweep, o);

    auto* kl = app.add_subcommand("kl", "KL divergence of stationary occupation from uniform");
    add_sweep_options(kl, o);
    add_common_options(kl, o);
    kl->add_option("--kl-samples", o.kl_samples, "Walk length for simulated occupation")->capture_default_str();

    auto* rewire = app.add_subcommand("rewire", "GrMFPT against WS rewiring probability");
    rewire->add_option("--k", o.ring_degrees, "WS ring degrees")->delimiter(',')->capture_default_str();
    rewire->add_option("--pgrid", o.pgrid, "Rewiring grid, start:stop:step or a list");
    rewire->add_option("--n", o.nodes, "Nodes per network")->capture_default_str();
    rewire->add_option("--instances", o.instances, "Networks per grid point")->capture_default_str();
    rewire->add_option("--max-retries", o.max_retries, "Generator attempts")->capture_default_str();
    rewire->add_flag("--skip-failed", o.skip_failed, "Record failing cells as invalid instead of aborting");
    add_common_options(rewire, o);

    auto* real = app.add_subcommand("real", "GrMFPT table for edge-list networks");
    add_edge_options(real, o);
    add_common_options(real, o);

    auto* single = app.add_subcommand("single", "Full MFPT report for one network and one strategy");
    add_edge_options(single, o);
    add_common_options(single, o);
    single->add_option("--strategy", o.strategy, "Strategy")->capture_default_str();
    single->add_option("--family", o.families, "Generated family when no edge list is given")->delimiter(',');
    single->add_option("--k", o.mean_degree, "Mean degree of the generated network")->capture_default_str();
    single->add_option("--n", o.nodes, "Nodes of the generated network")->capture_default_str();
    single->add_option("--rewire", o.rewire, "WS rewiring probability")->capture_default_str();
    single->add_option("--csv", o.csv_out, "Also write the (target, g_z) CSV here");
    single->add_flag("--pairs-matrix", o.include_pairs, "Include the per-pair MFPT matrix in the JSON");

    auto* stats = app.add_subcommand("stats", "Structural statistics of an edge-list network");
    add_edge_options(stats, o);
    stats->add_option("--out", o.out, "Output JSON (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        if (o.threads > 0) omp_set_num_threads(o.threads);
        if (*sweep) {
            auto c = base_config(o, ExperimentKind::DegreeSweep, MethodChoice::Exact);
            c.grid = parse_grid(o.kgrid);
            emit_sweep(run_degree_sweep(c), o);
        } else if (*kl) {
            auto c = base_config(o, ExperimentKind::KlSweep, MethodChoice::Exact);
            c.grid = parse_grid(o.kgrid);
            emit_sweep(run_kl_sweep(c), o);
        } else if (*rewire) {
            auto c = base_config(o, ExperimentKind::RewireSweep, MethodChoice::Exact);
            c.grid = o.pgrid.empty() ? default_rewire_grid() : parse_grid(o.pgrid);
            emit_sweep(run_ws_rewire_sweep(c), o);
        } else if (*real) {
            auto c = base_config(o, ExperimentKind::RealTable, MethodChoice::Auto);
            c.datasets = collect_datasets(o);
            if (o.pairs <= 0) c.sim.sampled_pairs = 100'000;
            emit_sweep(run_real_table(c), o);
        } else if (*single) {
            auto c = base_config(o, ExperimentKind::Single, MethodChoice::Exact);
            c.strategies = {StrategySpec::parse(o.strategy)};
            c.datasets = collect_datasets(o);
            c.grid = {o.mean_degree};
            const auto reports = run_single(c);
            json out = json::array();
            for (const auto& r : reports) out.push_back(to_json(r, o.include_pairs));
            write_text(o.out, (reports.size() == 1 ? out[0] : out).dump(2) + "\n");
            if (!o.csv_out.empty()) {
                std::string text;
                for (const auto& r : reports) text += to_csv(r);
                write_text(o.csv_out, text);
            }
        } else if (*stats) {
            const auto datasets = collect_datasets(o);
            if (datasets.empty()) throw InvalidArgument("stats needs --edges or --dataset");
            json out = json::array();
            for (const auto& d : datasets) {
                if (!std::filesystem::exists(d.path)) throw DatasetError("file not found: " + d.path);
                const auto loaded = load_edge_list_file(d.path, d.directed);
                out.push_back(to_json(network_stats(largest_component(loaded.graph)), d.name));
            }
            write_text(o.out, (out.size() == 1 ? out[0] : out).dump(2) + "\n");
        }
    } catch (const Error& e) {
        return fail(e.code(), e.what(), 1);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
    return 0;
}
