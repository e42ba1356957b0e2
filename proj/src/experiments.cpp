#include "walkmem/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <openssl/evp.h>

#include "walkmem/edge_list.hpp"
#include "walkmem/error.hpp"
#include "walkmem/report_io.hpp"
#include "walkmem/seeding.hpp"

namespace walkmem {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream tags folded into derive_seed ahead of the cell coordinates.
constexpr std::uint64_t kNetworkStream = 1;
constexpr std::uint64_t kSimulationStream = 2;
constexpr std::uint64_t kRewireStream = 3;
constexpr std::uint64_t kRealStream = 4;
constexpr std::uint64_t kSingleStream = 5;

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

/// Runs `f`, prefixing any library error with the cell coordinates.
template <typename F>
auto at(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.code(), where + ": " + e.what());
    }
}

std::vector<Method> methods_for(MethodChoice choice, bool fits_exact) {
    switch (choice) {
        case MethodChoice::Exact: return {Method::Exact};
        case MethodChoice::Simulate: return {Method::Simulated};
        case MethodChoice::Both: return {Method::Exact, Method::Simulated};
        case MethodChoice::Auto:
            if (fits_exact) return {Method::Exact, Method::Simulated};
            return {Method::Simulated};
    }
    return {};
}

bool fits_exact(const Graph& g, const ExperimentConfig& config) { return g.arc_count() <= config.arc_budget; }

struct Estimate {
    double value = kNaN;
    double standard_error = kNaN;
};

Estimate grmfpt_estimate(const Graph& g, const StrategySpec& strategy, Method method, const ExperimentConfig& config,
                         SimConfig sim, std::uint64_t seed) {
    if (method == Method::Exact) {
        ExactOptions options;
        options.arc_budget = config.arc_budget;
        options.keep_pairs = false;
        return {exact_report(g, strategy, options).grmfpt, kNaN};
    }
    sim.seed = seed;
    const auto report = estimate_grmfpt(g, strategy, sim);
    return {report.grmfpt, report.standard_error};
}

// Collects per-instance results of one cell.
struct Cell {
    SweepRow row;
    std::vector<double> errors;
    std::vector<std::string> failures;

    void add(const Estimate& e) {
        row.instance_values.push_back(e.value);
        errors.push_back(e.standard_error);
    }
    void fail(const std::string& why) {
        row.instance_values.push_back(kNaN);
        errors.push_back(kNaN);
        failures.push_back(why);
    }

    SweepRow finish() {
        std::vector<double> ok;
        double se2 = 0.0;
        bool has_se = false;
        for (std::size_t i = 0; i < row.instance_values.size(); ++i) {
            if (std::isnan(row.instance_values[i])) continue;
            ok.push_back(row.instance_values[i]);
            if (!std::isnan(errors[i])) {
                se2 += errors[i] * errors[i];
                has_se = true;
            }
        }
        row.instances = static_cast<int>(row.instance_values.size());
        row.valid = static_cast<int>(ok.size());
        if (!ok.empty()) {
            double sum = 0.0;
            for (double v : ok) sum += v;
            row.mean = sum / static_cast<double>(ok.size());
            if (ok.size() > 1) {
                double ss = 0.0;
                for (double v : ok) ss += (v - row.mean) * (v - row.mean);
                row.stddev = std::sqrt(ss / static_cast<double>(ok.size() - 1));
            }
            if (has_se) row.standard_error = std::sqrt(se2) / static_cast<double>(ok.size());
        }
        if (!failures.empty()) {
            row.note = std::to_string(failures.size()) + " of " + std::to_string(row.instances) +
                       " instances invalid: " + failures.front();
        }
        return row;
    }
};

std::string family_tag(NetworkFamily f) { return to_string(f); }

std::string value_tag(double x) { return format_double(x); }

// Shared driver for the G sweeps. `network(point, instance)` builds the
// graph and returns its seed; rows are emitted per (point, strategy, method).
template <typename Network>
void grmfpt_points(const ExperimentConfig& config, const std::string& family, const std::string& network_name,
                   const std::string& parameter, Network&& network, SweepResult& result) {
    for (double point : config.grid) {
        const std::string where = family + " " + parameter + "=" + value_tag(point);
        std::vector<Cell> cells;
        const auto methods = methods_for(config.method, true);
        for (const auto& s : config.strategies) {
            for (Method m : methods) {
                Cell c;
                c.row.family = family;
                c.row.network = network_name;
                c.row.parameter = parameter;
                c.row.value = point;
                c.row.strategy = s.label();
                c.row.method = to_string(m);
                c.row.metric = "grmfpt";
                cells.push_back(std::move(c));
            }
        }
        for (int inst = 0; inst < config.instances; ++inst) {
            const std::string here = where + " instance=" + std::to_string(inst);
            std::uint64_t seed = 0;
            std::optional<Graph> g;
            try {
                g = at(here, [&] { return network(point, inst, seed); });
            } catch (const Error& e) {
                if (!config.skip_failed) throw;
                for (auto& c : cells) c.fail(e.what());
                continue;
            }
            std::size_t k = 0;
            for (const auto& s : config.strategies) {
                const std::uint64_t sim_seed = derive_seed(config.seed, {kSimulationStream, seed, hash_label(s.label())});
                for (Method m : methods) {
                    Cell& c = cells[k++];
                    try {
                        c.add(at(here + " strategy=" + s.label() + " method=" + to_string(m) +
                                     " seed=" + std::to_string(seed),
                                 [&] { return grmfpt_estimate(*g, s, m, config, config.sim, sim_seed); }));
                    } catch (const Error& e) {
                        if (!config.skip_failed) throw;
                        c.fail(e.what());
                    }
                }
            }
        }
        for (auto& c : cells) result.rows.push_back(c.finish());
    }
}

std::uint64_t network_seed(const ExperimentConfig& config, NetworkFamily family, double k, int instance) {
    return derive_seed(config.seed, {kNetworkStream, static_cast<std::uint64_t>(family), bits(k),
                                     static_cast<std::uint64_t>(instance)});
}

std::uint64_t rewire_seed(const ExperimentConfig& config, int ring_degree, double p, int instance) {
    return derive_seed(config.seed, {kRewireStream, static_cast<std::uint64_t>(ring_degree), bits(p),
                                     static_cast<std::uint64_t>(instance)});
}

std::string sweep_network_name(const ExperimentConfig& config, NetworkFamily family) {
    std::string name = family_tag(family) + "-n" + std::to_string(config.nodes);
    if (family == NetworkFamily::WattsStrogatz) name += "-p" + value_tag(config.rewire);
    return name;
}

struct LoadedDataset {
    Graph graph;
    NetworkSummary summary;
};

LoadedDataset load_dataset(const DatasetSpec& ds) {
    if (!std::filesystem::exists(ds.path)) {
        std::string msg = "dataset '" + ds.name + "' not found at " + ds.path;
        if (const auto* known = find_known_dataset(ds.name)) {
            msg += "; expected the " + known->source + " file " + known->file;
        }
        throw DatasetError(msg);
    }
    LoadedDataset out{Graph{}, {}};
    out.summary.name = ds.name;
    out.summary.path = ds.path;
    out.summary.sha256 = file_sha256(ds.path);
    if (!ds.sha256.empty() && lower(ds.sha256) != out.summary.sha256) {
        throw DatasetError("checksum mismatch for " + ds.path + ": expected " + lower(ds.sha256) + ", got " +
                           out.summary.sha256);
    }
    const auto loaded = load_edge_list_file(ds.path, ds.directed);
    out.summary.dropped_lines = loaded.dropped();
    out.summary.loaded_nodes = loaded.graph.node_count();
    out.graph = largest_component(loaded.graph);
    out.summary.stats = network_stats(out.graph);
    return out;
}

void check_csv_field(bool ok, std::size_t line) {
    if (!ok) throw ParseError(line, "malformed sweep CSV row");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    if (!field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

double parse_number(const std::string& s, std::size_t line) {
    if (s == "nan" || s.empty()) return kNaN;
    double x = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    check_csv_field(ec == std::errc() && end == s.data() + s.size(), line);
    return x;
}

json number_or_null(double x) { return std::isnan(x) ? json(nullptr) : json(x); }
double number_from(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

const char* const kCsvHeader =
    "family,network,parameter,value,strategy,method,metric,mean,stddev,instances,valid,standard_error,note";

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::DegreeSweep: return "degree-sweep";
        case ExperimentKind::KlSweep: return "kl-sweep";
        case ExperimentKind::RewireSweep: return "ws-rewire-sweep";
        case ExperimentKind::RealTable: return "real-table";
        case ExperimentKind::Single: return "single";
    }
    return "?";
}

std::string to_string(MethodChoice method) {
    switch (method) {
        case MethodChoice::Exact: return "exact";
        case MethodChoice::Simulate: return "simulate";
        case MethodChoice::Both: return "both";
        case MethodChoice::Auto: return "auto";
    }
    return "?";
}

MethodChoice parse_method(std::string_view text) {
    const std::string t = lower(text);
    if (t == "exact") return MethodChoice::Exact;
    if (t == "simulate" || t == "simulated") return MethodChoice::Simulate;
    if (t == "both") return MethodChoice::Both;
    if (t == "auto") return MethodChoice::Auto;
    throw InvalidArgument("unknown method '" + std::string(text) + "' (expected exact, simulate, both or auto)");
}

const std::vector<KnownDataset>& known_datasets() {
    static const std::vector<KnownDataset> table{
        {"Internet", "as20000102.txt", "SNAP (as-733 collection)", false},
        {"Wikipedia", "links.tsv", "SNAP (wikispeedia)", true},
        {"Euroroad", "road-euroroad.edges", "Network Repository", false},
        {"FB-Pages", "fb-pages-food.edges", "Network Repository", false},
        {"Bio-diseasome", "bio-diseasome.mtx", "Network Repository", false},
        {"CA-netscience", "ca-netscience.mtx", "Network Repository", false},
    };
    return table;
}

const KnownDataset* find_known_dataset(std::string_view name) {
    for (const auto& d : known_datasets())
        if (lower(d.name) == lower(name)) return &d;
    return nullptr;
}

DatasetSpec dataset_in(const std::string& data_dir, const KnownDataset& known) {
    return {known.name, (std::filesystem::path(data_dir) / known.file).string(), known.directed, {}};
}

void ExperimentConfig::validate() const {
    if (instances < 1) throw InvalidArgument("instances must be >= 1");
    if (strategies.empty()) throw InvalidArgument("strategy list is empty");
    for (const auto& s : strategies) s.validate();
    if (nodes < 2) throw InvalidArgument("networks need at least 2 nodes");
    if (arc_budget < 1) throw InvalidArgument("arc budget must be >= 1");
    if (kl_samples < 1) throw InvalidArgument("KL sample count must be >= 1");
    sim.validate();
    switch (kind) {
        case ExperimentKind::DegreeSweep:
        case ExperimentKind::KlSweep:
            if (families.empty()) throw InvalidArgument("no network family given");
            if (grid.empty()) throw InvalidArgument("<k> grid is empty");
            for (double k : grid)
                if (!(k > 0.0)) throw InvalidArgument("<k> grid values must be positive");
            break;
        case ExperimentKind::RewireSweep:
            if (grid.empty()) throw InvalidArgument("p_rew grid is empty");
            if (ring_degrees.empty()) throw InvalidArgument("no ring degree given");
            for (double p : grid)
                if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p_rew values must lie in [0, 1]");
            break;
        case ExperimentKind::RealTable:
            if (datasets.empty()) throw InvalidArgument("no dataset given");
            break;
        case ExperimentKind::Single:
            if (datasets.empty() && (families.empty() || grid.empty()))
                throw InvalidArgument("single run needs a dataset or a family and <k>");
            break;
    }
}

json to_json(const ExperimentConfig& c) {
    json families = json::array();
    for (auto f : c.families) families.push_back(to_string(f));
    json strategies = json::array();
    for (const auto& s : c.strategies) strategies.push_back(s.label());
    json datasets = json::array();
    for (const auto& d : c.datasets)
        datasets.push_back({{"name", d.name}, {"path", d.path}, {"directed", d.directed}, {"sha256", d.sha256}});
    return json{{"kind", to_string(c.kind)},
                {"families", families},
                {"nodes", c.nodes},
                {"grid", c.grid},
                {"ring_degrees", c.ring_degrees},
                {"rewire", c.rewire},
                {"strategies", strategies},
                {"instances", c.instances},
                {"method", to_string(c.method)},
                {"simulation",
                 {{"mode", c.sim.mode == SimConfig::Mode::AllPairs ? "all-pairs" : "sampled-pairs"},
                  {"repetitions", c.sim.repetitions},
                  {"sampled_pairs", c.sim.sampled_pairs},
                  {"max_steps", c.sim.max_steps},
                  {"censored_limit", c.sim.censored_limit},
                  {"cache_budget", c.sim.cache_budget}}},
                {"arc_budget", c.arc_budget},
                {"max_retries", c.max_retries},
                {"skip_failed", c.skip_failed},
                {"kl_samples", c.kl_samples},
                {"datasets", datasets},
                {"seed", c.seed}};
}

std::vector<double> parse_grid(std::string_view text) {
    auto number = [&](std::string_view s) {
        double x = 0.0;
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
        if (ec != std::errc() || end != s.data() + s.size() || s.empty())
            throw InvalidArgument("bad grid value '" + std::string(s) + "'");
        return x;
    };
    std::vector<double> grid;
    if (text.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::size_t pos = 0;
        while (true) {
            const auto next = text.find(':', pos);
            parts.push_back(number(text.substr(pos, next - pos)));
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
        if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
            throw InvalidArgument("grid '" + std::string(text) + "' must be start:stop:step with step > 0");
        const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
        for (long i = 0; i <= count; ++i) grid.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    } else {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto next = text.find(',', pos);
            grid.push_back(number(text.substr(pos, next == std::string_view::npos ? next : next - pos)));
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
    }
    return grid;
}

std::vector<double> default_degree_grid() { return parse_grid("2:20:2"); }

std::vector<double> default_rewire_grid() { return {0.0, 0.001, 0.01, 0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 0.9, 1.0}; }

Graph sweep_network(const ExperimentConfig& config, NetworkFamily family, double mean_degree, int instance) {
    auto spec = GeneratorSpec::for_mean_degree(family, config.nodes, mean_degree,
                                               network_seed(config, family, mean_degree, instance), config.rewire);
    spec.max_retries = config.max_retries;
    return generate(spec);
}

Graph rewire_network(const ExperimentConfig& config, int ring_degree, double rewire, int instance) {
    GeneratorSpec spec;
    spec.family = NetworkFamily::WattsStrogatz;
    spec.nodes = config.nodes;
    spec.ring_degree = ring_degree;
    spec.rewire = rewire;
    spec.seed = rewire_seed(config, ring_degree, rewire, instance);
    spec.max_retries = config.max_retries;
    return generate(spec);
}

SweepResult run_degree_sweep(const ExperimentConfig& requested) {
    ExperimentConfig config = requested;
    config.kind = ExperimentKind::DegreeSweep;
    config.validate();
    SweepResult result{config, {}, {}};
    for (auto family : config.families) {
        grmfpt_points(
            config, family_tag(family), sweep_network_name(config, family), "mean_degree",
            [&](double k, int inst, std::uint64_t& seed) {
                seed = network_seed(config, family, k, inst);
                return sweep_network(config, family, k, inst);
            },
            result);
    }
    return result;
}

SweepResult run_ws_rewire_sweep(const ExperimentConfig& requested) {
    ExperimentConfig config = requested;
    config.kind = ExperimentKind::RewireSweep;
    config.validate();
    SweepResult result{config, {}, {}};
    for (int ring : config.ring_degrees) {
        grmfpt_points(
            config, "ws", "ws-n" + std::to_string(config.nodes) + "-k" + std::to_string(ring), "p_rew",
            [&](double p, int inst, std::uint64_t& seed) {
                seed = rewire_seed(config, ring, p, inst);
                return rewire_network(config, ring, p, inst);
            },
            result);
    }
    return result;
}

SweepResult run_kl_sweep(const ExperimentConfig& requested) {
    ExperimentConfig config = requested;
    config.kind = ExperimentKind::KlSweep;
    config.validate();
    SweepResult result{config, {}, {}};
    const auto methods = methods_for(config.method, true);
    for (auto family : config.families) {
        for (double k : config.grid) {
            const std::string where = family_tag(family) + " mean_degree=" + value_tag(k);
            std::vector<Cell> cells;
            for (const auto& s : config.strategies) {
                for (Method m : methods) {
                    Cell c;
                    c.row.family = family_tag(family);
                    c.row.network = sweep_network_name(config, family);
                    c.row.parameter = "mean_degree";
                    c.row.value = k;
                    c.row.strategy = s.label();
                    c.row.method = to_string(m);
                    c.row.metric = "kl_divergence";
                    cells.push_back(std::move(c));
                }
            }
            for (int inst = 0; inst < config.instances; ++inst) {
                const std::string here = where + " instance=" + std::to_string(inst);
                const std::uint64_t seed = network_seed(config, family, k, inst);
                std::optional<Graph> g;
                try {
                    g = at(here, [&] { return sweep_network(config, family, k, inst); });
                } catch (const Error& e) {
                    if (!config.skip_failed) throw;
                    for (auto& c : cells) c.fail(e.what());
                    continue;
                }
                std::size_t idx = 0;
                for (const auto& s : config.strategies) {
                    for (Method m : methods) {
                        Cell& c = cells[idx++];
                        try {
                            const double d = at(here + " strategy=" + s.label() + " seed=" + std::to_string(seed), [&] {
                                if (m == Method::Simulated) {
                                    Rng rng(derive_seed(config.seed, {kSimulationStream, seed, hash_label(s.label())}));
                                    return kl_from_uniform(
                                        empirical_occupation(*g, s, 100LL * g->node_count(), config.kl_samples, rng));
                                }
                                if (s.has_memory()) return kl_from_uniform(stationary_occupation(*g, build_arc_chain(*g, s)));
                                return kl_from_uniform(stationary_occupation(build_node_chain(*g, s)));
                            });
                            c.add({d, kNaN});
                        } catch (const Error& e) {
                            if (e.code() != "reducible_chain" && !config.skip_failed) throw;
                            c.fail(e.what());
                        }
                    }
                }
            }
            for (auto& c : cells) result.rows.push_back(c.finish());
        }
    }
    return result;
}

SweepResult run_real_table(const ExperimentConfig& requested) {
    ExperimentConfig config = requested;
    config.kind = ExperimentKind::RealTable;
    config.validate();
    SweepResult result{config, {}, {}};
    SimConfig sim = config.sim;
    sim.mode = SimConfig::Mode::SampledPairs;
    sim.repetitions = 1;
    for (const auto& ds : config.datasets) {
        auto loaded = load_dataset(ds);
        const Graph& g = loaded.graph;
        result.networks.push_back(loaded.summary);
        const std::uint64_t net = hash_label(ds.name);
        for (const auto& s : config.strategies) {
            for (Method m : methods_for(config.method, fits_exact(g, config))) {
                Cell c;
                c.row.family = "real";
                c.row.network = ds.name;
                c.row.strategy = s.label();
                c.row.method = to_string(m);
                c.row.metric = "grmfpt";
                const std::uint64_t seed = derive_seed(config.seed, {kRealStream, net, hash_label(s.label())});
                try {
                    c.add(at(ds.name + " strategy=" + s.label() + " method=" + to_string(m),
                             [&] { return grmfpt_estimate(g, s, m, config, sim, seed); }));
                } catch (const Error& e) {
                    if (!config.skip_failed) throw;
                    c.fail(e.what());
                }
                result.rows.push_back(c.finish());
            }
        }
    }
    return result;
}

SweepResult run_experiment(const ExperimentConfig& config) {
    switch (config.kind) {
        case ExperimentKind::DegreeSweep: return run_degree_sweep(config);
        case ExperimentKind::KlSweep: return run_kl_sweep(config);
        case ExperimentKind::RewireSweep: return run_ws_rewire_sweep(config);
        case ExperimentKind::RealTable: return run_real_table(config);
        case ExperimentKind::Single: break;
    }
    throw InvalidArgument("single runs produce reports, not sweeps; use run_single");
}

std::vector<MfptReport> run_single(const Graph& g, const std::string& name, const StrategySpec& strategy,
                                   const ExperimentConfig& config) {
    std::vector<MfptReport> reports;
    for (Method m : methods_for(config.method, fits_exact(g, config))) {
        if (m == Method::Exact) {
            ExactOptions options;
            options.arc_budget = config.arc_budget;
            options.network_name = name;
            reports.push_back(exact_report(g, strategy, options));
        } else {
            SimConfig sim = config.sim;
            sim.seed = derive_seed(config.seed, {kSingleStream, hash_label(name), hash_label(strategy.label())});
            reports.push_back(estimate_grmfpt(g, strategy, sim, name));
        }
    }
    return reports;
}

std::vector<MfptReport> run_single(const ExperimentConfig& requested) {
    ExperimentConfig config = requested;
    config.kind = ExperimentKind::Single;
    config.validate();
    const StrategySpec& strategy = config.strategies.front();
    if (!config.datasets.empty()) {
        const auto loaded = load_dataset(config.datasets.front());
        return run_single(loaded.graph, config.datasets.front().name, strategy, config);
    }
    const auto family = config.families.front();
    const double k = config.grid.front();
    const Graph g = at(family_tag(family) + " mean_degree=" + value_tag(k),
                       [&] { return sweep_network(config, family, k, 0); });
    return run_single(g, sweep_network_name(config, family) + "-k" + value_tag(k), strategy, config);
}

std::string to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << csv_field(r.family) << ',' << csv_field(r.network) << ',' << csv_field(r.parameter) << ','
            << format_double(r.value) << ',' << csv_field(r.strategy) << ',' << r.method << ',' << r.metric << ','
            << format_double(r.mean) << ',' << format_double(r.stddev) << ',' << r.instances << ',' << r.valid << ','
            << format_double(r.standard_error) << ',' << csv_field(r.note) << '\n';
    }
    return out.str();
}

std::vector<SweepRow> rows_from_csv(std::string_view text) {
    const auto table = parse_csv(text);
    if (table.empty()) throw ParseError(1, "empty sweep CSV");
    std::vector<SweepRow> rows;
    for (std::size_t i = 1; i < table.size(); ++i) {
        const auto& f = table[i];
        if (f.size() == 1 && f[0].empty()) continue;
        check_csv_field(f.size() == 13, i + 1);
        SweepRow r;
        r.family = f[0];
        r.network = f[1];
        r.parameter = f[2];
        r.value = parse_number(f[3], i + 1);
        r.strategy = f[4];
        r.method = f[5];
        r.metric = f[6];
        r.mean = parse_number(f[7], i + 1);
        r.stddev = parse_number(f[8], i + 1);
        r.instances = static_cast<int>(parse_number(f[9], i + 1));
        r.valid = static_cast<int>(parse_number(f[10], i + 1));
        r.standard_error = parse_number(f[11], i + 1);
        r.note = f[12];
        rows.push_back(std::move(r));
    }
    return rows;
}

json to_json(const SweepResult& result) {
    json rows = json::array();
    for (const auto& r : result.rows) {
        json values = json::array();
        for (double v : r.instance_values) values.push_back(number_or_null(v));
        rows.push_back({{"family", r.family},
                        {"network", r.network},
                        {"parameter", r.parameter},
                        {"value", number_or_null(r.value)},
                        {"strategy", r.strategy},
                        {"method", r.method},
                        {"metric", r.metric},
                        {"mean", number_or_null(r.mean)},
                        {"stddev", number_or_null(r.stddev)},
                        {"instances", r.instances},
                        {"valid", r.valid},
                        {"standard_error", number_or_null(r.standard_error)},
                        {"note", r.note},
                        {"instance_values", values}});
    }
    json networks = json::array();
    for (const auto& n : result.networks) {
        json j = to_json(n.stats, n.name);
        j["path"] = n.path;
        j["sha256"] = n.sha256;
        j["dropped_lines"] = n.dropped_lines;
        j["loaded_nodes"] = n.loaded_nodes;
        networks.push_back(std::move(j));
    }
    return json{{"config", to_json(result.config)},
                {"seed_scheme",
                 "networks: derive_seed(seed, {stream, family|ring degree, bits(parameter), instance}); "
                 "simulations: derive_seed(seed, {2, network seed, fnv1a(strategy label)})"},
                {"columns", kCsvHeader},
                {"rows", rows},
                {"networks", networks}};
}

std::vector<SweepRow> rows_from_json(const json& manifest) {
    std::vector<SweepRow> rows;
    for (const auto& j : manifest.at("rows")) {
        SweepRow r;
        r.family = j.at("family").get<std::string>();
        r.network = j.at("network").get<std::string>();
        r.parameter = j.at("parameter").get<std::string>();
        r.value = number_from(j.at("value"));
        r.strategy = j.at("strategy").get<std::string>();
        r.method = j.at("method").get<std::string>();
        r.metric = j.at("metric").get<std::string>();
        r.mean = number_from(j.at("mean"));
        r.stddev = number_from(j.at("stddev"));
        r.instances = j.at("instances").get<int>();
        r.valid = j.at("valid").get<int>();
        r.standard_error = number_from(j.at("standard_error"));
        r.note = j.at("note").get<std::string>();
        for (const auto& v : j.at("instance_values")) r.instance_values.push_back(number_from(v));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string file_sha256(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatasetError("cannot open " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

}  // namespace walkmem
