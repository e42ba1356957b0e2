#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "test_graphs.hpp"
#include "walkmem/error.hpp"
#include "walkmem/experiments.hpp"
#include "walkmem/report_io.hpp"

namespace walkmem {
namespace {

namespace fs = std::filesystem;

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = fs::temp_directory_path() / ("walkmem_" + name);
    std::ofstream(path) << text;
    return path.string();
}

std::string complete_edges(int n) {
    std::string text;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) text += std::to_string(u) + " " + std::to_string(v) + "\n";
    return text;
}

bool same(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

void expect_same_rows(const std::vector<SweepRow>& a, const std::vector<SweepRow>& b) {
    EXPECT_EQ(to_csv(a), to_csv(b));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(a[i].instance_values.size(), b[i].instance_values.size());
        for (std::size_t k = 0; k < a[i].instance_values.size(); ++k)
            EXPECT_TRUE(same(a[i].instance_values[k], b[i].instance_values[k]));
    }
}

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.nodes = 30;
    c.grid = {4.0};
    c.instances = 1;
    c.sim.repetitions = 3;
    return c;
}

TEST(ReportIo, JsonRoundTrip) {
    auto exact = exact_report(testing::complete(4), StrategySpec::parse("p-rwm"), {.network_name = "K4"});
    const auto j = to_json(exact, true);
    EXPECT_EQ(j["method"], "exact");
    EXPECT_FALSE(j.contains("standard_error"));
    EXPECT_TRUE(j["pair_mfpt"][0][0].is_null());
    const auto back = report_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.network, "K4");
    EXPECT_EQ(back.grmfpt, exact.grmfpt);
    EXPECT_EQ(back.target_gmfpt, exact.target_gmfpt);
    EXPECT_EQ(back.pair_mfpt(1, 2), exact.pair_mfpt(1, 2));
    EXPECT_FALSE(to_json(exact).contains("pair_mfpt"));

    SimConfig sim;
    sim.repetitions = 2;
    const auto s = estimate_grmfpt(testing::cycle(5), StrategySpec::parse("u-rw"), sim, "C5");
    const auto js = to_json(s);
    EXPECT_EQ(js["method"], "simulated");
    EXPECT_EQ(js["trajectories"], 40);
    EXPECT_EQ(js["censored"], 0);
    EXPECT_EQ(report_from_json(js).standard_error, s.standard_error);
}

TEST(ReportIo, CsvHasTargetsAndSummary) {
    const auto r = exact_report(testing::complete(3), StrategySpec::parse("u-rw"));
    EXPECT_EQ(to_csv(r), "target,gmfpt\n0,2\n1,2\n2,2\nall,2\n");
}

TEST(ReportIo, StatsJsonFields) {
    const auto j = to_json(network_stats(testing::complete(4)), "K4");
    EXPECT_EQ(j.size(), 8u);
    EXPECT_EQ(j["name"], "K4");
    EXPECT_EQ(j["diameter"], 1);
    EXPECT_EQ(j["mean_degree"], 3.0);
}

TEST(Grid, Parsing) {
    EXPECT_EQ(parse_grid("2:20:2").size(), 10u);
    EXPECT_EQ(parse_grid("2:20:2").back(), 20.0);
    EXPECT_EQ(parse_grid("0,0.5, 1"), (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_EQ(parse_grid("0:1:0.1").size(), 11u);
    EXPECT_THROW(parse_grid("2:20"), InvalidArgument);
    EXPECT_THROW(parse_grid("5:1:1"), InvalidArgument);
    EXPECT_THROW(parse_grid("a,b"), InvalidArgument);
}

TEST(DegreeSweep, OneCellGivesStrategiesTimesMethodsRows) {
    auto c = small_config();
    c.method = MethodChoice::Both;
    const auto result = run_degree_sweep(c);
    ASSERT_EQ(result.rows.size(), 14u);
    for (std::size_t i = 0; i < result.rows.size(); i += 2) {
        const auto& exact = result.rows[i];
        const auto& sim = result.rows[i + 1];
        EXPECT_EQ(exact.method, "exact");
        EXPECT_EQ(sim.method, "simulated");
        EXPECT_EQ(exact.strategy, sim.strategy);
        EXPECT_EQ(exact.valid, 1);
        EXPECT_TRUE(std::isnan(exact.stddev));
        EXPECT_LE(std::abs(sim.mean - exact.mean), 4.0 * sim.standard_error) << exact.strategy;
        EXPECT_GT(sim.standard_error, 0.0);
    }
}

TEST(DegreeSweep, RowsAreReproducibleFromSeedAndCoordinates) {
    auto c = small_config();
    c.families = {NetworkFamily::WattsStrogatz, NetworkFamily::ErdosRenyiDirected};
    c.grid = {4.0, 6.0};
    c.instances = 3;
    c.strategies = {StrategySpec::parse("pid-rwm")};
    const auto a = run_degree_sweep(c);
    const auto b = run_degree_sweep(c);
    expect_same_rows(a.rows, b.rows);
    ASSERT_EQ(a.rows.size(), 4u);
    // recompute one instance in isolation
    const auto& row = a.rows[3];
    EXPECT_EQ(row.family, "er-directed");
    EXPECT_EQ(row.value, 6.0);
    const Graph g = sweep_network(c, NetworkFamily::ErdosRenyiDirected, 6.0, 2);
    EXPECT_EQ(exact_report(g, c.strategies[0]).grmfpt, row.instance_values[2]);
    EXPECT_GT(row.stddev, 0.0);
    c.seed = 43;
    EXPECT_NE(run_degree_sweep(c).rows[3].mean, row.mean);
}

TEST(DegreeSweep, GenerationErrorsCarryCoordinates) {
    auto c = small_config();
    c.families = {NetworkFamily::ErdosRenyi};
    c.grid = {0.5};
    c.max_retries = 2;
    try {
        run_degree_sweep(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "generation_failed");
        EXPECT_NE(std::string(e.what()).find("er mean_degree=0.5 instance=0"), std::string::npos) << e.what();
    }
    c.skip_failed = true;
    const auto result = run_degree_sweep(c);
    ASSERT_EQ(result.rows.size(), 7u);
    EXPECT_EQ(result.rows[0].valid, 0);
    EXPECT_TRUE(std::isnan(result.rows[0].mean));
    EXPECT_NE(result.rows[0].note.find("1 of 1 instances invalid"), std::string::npos);
}

TEST(KlSweep, RegularRingAndReducibleCells) {
    auto c = small_config();
    c.families = {NetworkFamily::WattsStrogatz};
    c.rewire = 0.0;
    c.grid = {2.0, 4.0};
    c.strategies = {StrategySpec::parse("u-rw"), StrategySpec::parse("f-rwm")};
    const auto result = run_kl_sweep(c);
    ASSERT_EQ(result.rows.size(), 4u);
    for (const auto& r : result.rows) EXPECT_EQ(r.metric, "kl_divergence");
    EXPECT_NEAR(result.rows[0].mean, 0.0, 1e-12);
    // F-RWM on the bare cycle never reverses: reducible, marked invalid
    EXPECT_EQ(result.rows[1].valid, 0);
    EXPECT_NE(result.rows[1].note.find("reducible"), std::string::npos);
    EXPECT_NEAR(result.rows[2].mean, 0.0, 1e-12);
    EXPECT_NEAR(result.rows[3].mean, 0.0, 1e-12);
}

TEST(KlSweep, SimulatedOccupationTracksExact) {
    auto c = small_config();
    c.method = MethodChoice::Both;
    c.strategies = {StrategySpec::parse("u-rw"), StrategySpec::parse("id-rw")};
    c.kl_samples = 2'000'000;
    const auto result = run_kl_sweep(c);
    ASSERT_EQ(result.rows.size(), 4u);
    EXPECT_NEAR(result.rows[1].mean, result.rows[0].mean, 0.01);
    EXPECT_NEAR(result.rows[3].mean, result.rows[2].mean, 0.01);
    EXPECT_LT(result.rows[2].mean, result.rows[0].mean);
}

TEST(RewireSweep, ZeroRewiringIsDeterministic) {
    auto c = small_config();
    c.grid = {0.0, 0.5};
    c.ring_degrees = {4};
    c.instances = 2;
    c.strategies = {StrategySpec::parse("p-rwm")};
    const auto a = run_ws_rewire_sweep(c);
    ASSERT_EQ(a.rows.size(), 2u);
    EXPECT_EQ(a.rows[0].network, "ws-n30-k4");
    EXPECT_EQ(a.rows[0].parameter, "p_rew");
    EXPECT_EQ(a.rows[0].instance_values[0], a.rows[0].instance_values[1]);
    EXPECT_EQ(a.rows[0].stddev, 0.0);
    expect_same_rows(run_ws_rewire_sweep(c).rows, a.rows);
}

TEST(RealTable, RunsOnSuppliedFileWithChecksum) {
    const auto path = write_temp("k6.txt", complete_edges(6) + "9 10\n");
    ExperimentConfig c;
    c.kind = ExperimentKind::RealTable;
    c.datasets = {{"K6", path, false, file_sha256(path)}};
    c.strategies = {StrategySpec::parse("u-rw"), StrategySpec::parse("f-rwm")};
    c.method = MethodChoice::Auto;
    c.sim.sampled_pairs = 20'000;
    const auto result = run_experiment(c);
    ASSERT_EQ(result.networks.size(), 1u);
    EXPECT_EQ(result.networks[0].loaded_nodes, 8);
    EXPECT_EQ(result.networks[0].stats.nodes, 6);
    ASSERT_EQ(result.rows.size(), 4u);
    EXPECT_NEAR(result.rows[0].mean, 5.0, 1e-10);
    EXPECT_EQ(result.rows[1].method, "simulated");
    EXPECT_NEAR(result.rows[1].mean, 5.0, 5 * result.rows[1].standard_error);

    c.arc_budget = 10;
    const auto sim_only = run_real_table(c);
    ASSERT_EQ(sim_only.rows.size(), 2u);
    EXPECT_EQ(sim_only.rows[0].method, "simulated");

    c.datasets[0].sha256 = std::string(64, '0');
    EXPECT_THROW(run_real_table(c), DatasetError);
}

TEST(RealTable, MissingFileNamesPathAndSource) {
    ExperimentConfig c;
    c.kind = ExperimentKind::RealTable;
    c.datasets = {dataset_in("/nonexistent/data", *find_known_dataset("ca-netscience"))};
    try {
        run_real_table(c);
        FAIL();
    } catch (const DatasetError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("/nonexistent/data/ca-netscience.mtx"), std::string::npos) << msg;
        EXPECT_NE(msg.find("Network Repository"), std::string::npos) << msg;
    }
    EXPECT_EQ(find_known_dataset("wikipedia")->source, "SNAP (wikispeedia)");
    EXPECT_TRUE(find_known_dataset("wikipedia")->directed);
    EXPECT_EQ(find_known_dataset("nowhere"), nullptr);
}

TEST(Single, ClosedFormsAndBothMethods) {
    ExperimentConfig c;
    c.kind = ExperimentKind::Single;
    c.datasets = {{"K5", write_temp("k5.txt", complete_edges(5)), false, {}}};
    c.strategies = {StrategySpec::parse("u-rw")};
    auto reports = run_single(c);
    ASSERT_EQ(reports.size(), 1u);
    EXPECT_NEAR(reports[0].grmfpt, 4.0, 1e-10);
    EXPECT_EQ(reports[0].network, "K5");

    c.datasets = {{"C6", write_temp("c6.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n"), false, {}}};
    c.strategies = {StrategySpec::parse("f-rwm")};
    c.method = MethodChoice::Both;
    c.sim.repetitions = 1000;
    reports = run_single(c);
    ASSERT_EQ(reports.size(), 2u);
    EXPECT_NEAR(reports[0].grmfpt, 3.0, 1e-10);
    EXPECT_EQ(reports[1].method, Method::Simulated);
    EXPECT_LE(std::abs(reports[1].grmfpt - 3.0) / 3.0, 0.02);

    ExperimentConfig gen;
    gen.kind = ExperimentKind::Single;
    gen.families = {NetworkFamily::BarabasiAlbert};
    gen.grid = {4.0};
    gen.strategies = {StrategySpec::parse("id-rwm")};
    const auto r = run_single(gen);
    EXPECT_EQ(r[0].nodes, 100);
    EXPECT_EQ(r[0].network, "ba-n100-k4");
}

TEST(Output, CsvRoundTripsThroughJson) {
    auto c = small_config();
    c.grid = {4.0, 6.0};
    c.instances = 2;
    c.method = MethodChoice::Both;
    c.strategies = {StrategySpec::parse("p-rwm(alpha=10,beta=0.01)"), StrategySpec::parse("u-rw")};
    auto result = run_degree_sweep(c);
    result.rows[0].note = "a note, with \"quotes\"";
    const auto from_csv = rows_from_csv(to_csv(result.rows));
    auto from_json = rows_from_json(nlohmann::json::parse(to_json(result).dump()));
    ASSERT_EQ(from_csv.size(), from_json.size());
    for (auto& r : from_json) r.instance_values.clear();
    for (std::size_t i = 0; i < from_csv.size(); ++i) {
        const auto& a = from_csv[i];
        const auto& b = from_json[i];
        EXPECT_EQ(a.family, b.family);
        EXPECT_EQ(a.strategy, b.strategy);
        EXPECT_EQ(a.note, b.note);
        EXPECT_EQ(a.mean, b.mean);
        EXPECT_EQ(a.value, b.value);
        EXPECT_TRUE(same(a.standard_error, b.standard_error));
        EXPECT_TRUE(same(a.stddev, b.stddev));
        EXPECT_EQ(a.instances, b.instances);
    }
    EXPECT_EQ(from_csv[0].strategy, "p-rwm(alpha=10,beta=0.01)");
    EXPECT_TRUE(std::isnan(from_csv[0].standard_error));
    EXPECT_EQ(to_json(result)["config"]["seed"], 42);
}

TEST(Checksum, KnownDigest) {
    EXPECT_EQ(file_sha256(write_temp("abc.txt", "abc")),
              "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_THROW(file_sha256("/nonexistent/file"), DatasetError);
}

TEST(Config, Validation) {
    ExperimentConfig c;
    c.grid = {};
    EXPECT_THROW(run_degree_sweep(c), InvalidArgument);
    c.grid = {4.0};
    c.instances = 0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c.instances = 1;
    c.kind = ExperimentKind::RewireSweep;
    c.grid = {1.5};
    EXPECT_THROW(c.validate(), InvalidArgument);
    EXPECT_EQ(parse_method("BOTH"), MethodChoice::Both);
    EXPECT_THROW(parse_method("guess"), InvalidArgument);
}

}  // namespace
}  // namespace walkmem
