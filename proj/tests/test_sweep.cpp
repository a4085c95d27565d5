#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "risec/config.hpp"
#include "risec/sweep.hpp"
#include "test_support.hpp"

using namespace risec;

namespace {

ExperimentConfig small_rate_config() {
    ExperimentConfig cfg = desk_config();
    cfg.sweep_kind = SweepKind::rate;
    cfg.rate_steps = 12;
    cfg.oracle_trials = 20000;
    return cfg;
}

std::size_t column_index(const SweepTable& t, const std::string& name) {
    for (std::size_t j = 0; j < t.columns.size(); ++j)
        if (t.columns[j] == name) return j;
    REQUIRE_MESSAGE(false, "missing column ", name);
    return 0;
}

} // namespace

TEST_CASE("rate sweep reports capacities, on-probabilities and rate search") {
    const ExperimentConfig cfg = small_rate_config();
    const SweepTable t = run_sweep(cfg);
    CHECK(t.kind == SweepKind::rate);
    CHECK(t.columns == std::vector<std::string>{"r_t", "ec_overlay", "ec_underlay",
                                                "p_on_overlay", "p_on_underlay"});
    REQUIRE(t.rows.size() == cfg.rate_steps);
    CHECK(t.rows.front()[0] == cfg.rate_lo);
    CHECK(t.rows.back()[0] == cfg.rate_hi);
    for (const auto& row : t.rows) {
        REQUIRE(row.size() == t.columns.size());
        CHECK(row[1] >= 0.0);
        CHECK(row[2] >= 0.0);
        CHECK(row[3] >= 0.0);
        CHECK(row[3] <= 1.0);
        CHECK(row[4] >= 0.0);
        CHECK(row[4] <= 1.0);
    }
    for (const char* key : {"overlay_r_opt", "overlay_ec_opt", "overlay_unimodal",
                            "overlay_r_opt_grid", "overlay_ec_opt_grid", "underlay_r_opt",
                            "underlay_ec_opt", "underlay_unimodal", "underlay_r_opt_grid",
                            "underlay_ec_opt_grid"})
        CHECK(t.stats.count(key) == 1);
    CHECK(t.notes.at("underlay_outage") == "linearized");
    CHECK(t.config_hash == config_hash(cfg));
    CHECK(t.seed == cfg.seed);

    ExperimentConfig exact = cfg;
    exact.exact_outage = true;
    const SweepTable te = run_sweep(exact);
    CHECK(te.notes.at("underlay_outage") == "exact");
    CHECK(te.config_hash != t.config_hash); // the flag participates in the hash
}

TEST_CASE("oracle columns carry the simulation value and the signed gap") {
    ExperimentConfig cfg = small_rate_config();
    cfg.rate_steps = 5;
    cfg.with_oracle = true;
    const SweepTable t = run_sweep(cfg);
    const std::size_t ec_o = column_index(t, "ec_overlay");
    const std::size_t or_o = column_index(t, "oracle_ec_overlay");
    const std::size_t de_o = column_index(t, "delta_ec_overlay");
    const std::size_t ec_u = column_index(t, "ec_underlay");
    const std::size_t or_u = column_index(t, "oracle_ec_underlay");
    const std::size_t de_u = column_index(t, "delta_ec_underlay");
    for (const auto& row : t.rows) {
        CHECK(row[de_o] == row[ec_o] - row[or_o]);
        CHECK(row[de_u] == row[ec_u] - row[or_u]);
    }
}

TEST_CASE("sweep output is byte-identical across runs and worker counts") {
    ExperimentConfig cfg = small_rate_config();
    cfg.rate_steps = 5;
    cfg.with_oracle = true;
    const std::string solo = table_csv(run_sweep(cfg));
    const std::string rerun = table_csv(run_sweep(cfg));
    CHECK(solo == rerun);
    cfg.workers = 4;
    const std::string pooled = table_csv(run_sweep(cfg));
    CHECK(solo == pooled);
}

TEST_CASE("qos sweep spans array sizes with log-spaced exponents") {
    ExperimentConfig cfg = desk_config();
    cfg.sweep_kind = SweepKind::qos;
    cfg.qos_steps = 4;
    const SweepTable t = run_sweep(cfg);
    CHECK(t.columns == std::vector<std::string>{"phi", "ec_fixed_n10", "ec_csit_n10",
                                                "ec_fixed_n100", "ec_csit_n100"});
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows.front()[0] == cfg.qos_lo);
    CHECK(t.rows.back()[0] == cfg.qos_hi);
    // Log spacing: equal ratios between consecutive exponents.
    const double q0 = t.rows[1][0] / t.rows[0][0];
    const double q1 = t.rows[2][0] / t.rows[1][0];
    CHECK(q0 == doctest::Approx(q1).epsilon(1e-9));
    for (const char* key : {"gain_fixed_at_phi_lo", "gain_fixed_at_phi_hi",
                            "gain_csit_at_phi_lo", "gain_csit_at_phi_hi"})
        CHECK(t.stats.count(key) == 1);
    // The larger panel never loses capacity on this drop.
    CHECK(t.stats.at("gain_fixed_at_phi_lo") > 1.0);
    CHECK(t.notes.at("spacing") == "log");

    // Equal element totals get disambiguated column tags.
    ExperimentConfig twin = cfg;
    twin.qos_n_z = {2, 2};
    twin.qos_n_y = {5, 5};
    const SweepTable tt = run_sweep(twin);
    CHECK(tt.columns[1] == "ec_fixed_n10");
    CHECK(tt.columns[3] == "ec_fixed_n10_1");
}

TEST_CASE("retransmission sweep tracks the chain across attempt limits") {
    ExperimentConfig cfg = desk_config();
    cfg.sweep_kind = SweepKind::harq;
    cfg.harq_x_max = 4;
    cfg.harq_trials = 2000;
    const SweepTable t = run_sweep(cfg);
    CHECK(t.columns == std::vector<std::string>{"x", "ec", "spectral_radius", "stable",
                                                "corrected", "ec_x1"});
    REQUIRE(t.rows.size() == 4);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(t.rows[i][0] == static_cast<double>(i + 1));
        CHECK(t.rows[i][5] == t.stats.at("ec_x1")); // broadcast single-attempt reference
    }
    // The single-attempt row is self-consistent with the broadcast column.
    CHECK(t.rows[0][1] == t.stats.at("ec_x1"));
    CHECK(t.rows[0][2] == t.stats.at("radius_x1"));
    CHECK(t.stats.count("x_best") == 1);
    CHECK(t.stats.count("ec_best") == 1);
    CHECK(t.notes.at("regime") == "underlay");
    CHECK(t.notes.at("log_base") == "2");
}

TEST_CASE("deviation sweep prices one scenario per grid point") {
    ExperimentConfig cfg = desk_config();
    cfg.sweep_kind = SweepKind::sigma;
    cfg.sigma_steps = 4;
    const SweepTable t = run_sweep(cfg);
    CHECK(t.columns.size() == 6);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows.front()[0] == cfg.sigma_lo);
    CHECK(t.rows.back()[0] == cfg.sigma_hi);
    const std::size_t sel = column_index(t, "sel_d2d");
    for (const auto& row : t.rows) {
        CHECK(row[sel] > 0.0);
        CHECK(row[sel] < 1.0);
    }
}

TEST_CASE("on-share sweep pins both endpoints of the capacity range") {
    ExperimentConfig cfg = desk_config();
    cfg.sweep_kind = SweepKind::pon;
    cfg.pon_steps = 6;
    const SweepTable t = run_sweep(cfg);
    CHECK(t.columns == std::vector<std::string>{"p_on", "ec_fixed"});
    REQUIRE(t.rows.size() == 6);
    CHECK(t.rows.front()[0] == 0.0);
    CHECK(t.rows.front()[1] == 0.0);
    CHECK(t.rows.back()[0] == 1.0);
    CHECK(t.rows.back()[1] == doctest::Approx(cfg.r_t).epsilon(1e-12));
    std::vector<double> ec;
    for (const auto& row : t.rows) ec.push_back(row[1]);
    CHECK(testsup::strictly_increasing(ec));
}

TEST_CASE("sweeps refuse invalid configurations") {
    ExperimentConfig cfg = desk_config();
    cfg.phi = 0.0;
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
    CHECK_THROWS_AS(run_validation(cfg), ConfigError);
}

TEST_CASE("table text renders and parses without loss") {
    ExperimentConfig cfg = small_rate_config();
    cfg.rate_steps = 4;
    const SweepTable t = run_sweep(cfg);
    const std::string csv = table_csv(t);
    CHECK(csv.rfind("# kind=rate hash=", 0) == 0);
    CHECK(csv.find("\nr_t,ec_overlay,") != std::string::npos);

    const SweepTable back = parse_table_csv(csv);
    CHECK(back.kind == t.kind);
    CHECK(back.config_hash == t.config_hash);
    CHECK(back.seed == t.seed);
    CHECK(back.columns == t.columns);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < t.columns.size(); ++j)
            CHECK(back.rows[i][j] == t.rows[i][j]); // %.17g survives the round trip

    CHECK_THROWS_AS(parse_table_csv(""), ConfigError);
    CHECK_THROWS_AS(parse_table_csv("# only a comment\n"), ConfigError);
    CHECK_THROWS_AS(parse_table_csv("a,b\n1,2,3\n"), ConfigError);
    CHECK_THROWS_AS(parse_table_csv("a,b\n1,zebra\n"), ConfigError);
}

TEST_CASE("metadata sidecar is valid json with the run identity") {
    ExperimentConfig cfg = small_rate_config();
    cfg.rate_steps = 4;
    const SweepTable t = run_sweep(cfg);
    const nlohmann::json j = nlohmann::json::parse(table_meta_json(t));
    CHECK(j.at("kind") == "rate");
    CHECK(j.at("row_count") == 4);
    CHECK(j.at("columns").size() == t.columns.size());
    CHECK(j.at("seed") == t.seed);
    CHECK(j.at("stats").contains("overlay_r_opt"));
    CHECK(j.at("notes").at("underlay_outage") == "linearized");
    const std::string hash = j.at("config_hash");
    CHECK(hash.size() == 16);
}

TEST_CASE("validation confirms every closed form on the desk drop") {
    ExperimentConfig cfg = desk_config();
    cfg.oracle_trials = 20000;
    cfg.harq_trials = 2000;
    cfg.harq_x_max = 6;
    const ValidationReport rep = run_validation(cfg);
    REQUIRE(rep.checks.size() == 15);
    for (const Check& c : rep.checks) {
        INFO(c.name, ": value=", c.value, " expected=", c.expected, " tol=", c.tolerance);
        CHECK(c.pass);
    }
    CHECK(rep.all_pass());

    // The negative checks are present and counted as passes.
    bool corrupted = false, negative = false;
    for (const Check& c : rep.checks) {
        corrupted |= c.name == "corrupted_transitions_rejected";
        negative |= c.name == "negative_companion_entry_rejected";
    }
    CHECK(corrupted);
    CHECK(negative);

    const nlohmann::json j = nlohmann::json::parse(report_json(rep));
    CHECK(j.at("all_pass") == true);
    CHECK(j.at("checks").size() == rep.checks.size());
    CHECK(j.at("checks")[0].contains("name"));
    CHECK(j.at("checks")[0].contains("tolerance"));
}

TEST_CASE("file writer creates directories and reports failures") {
    namespace fs = std::filesystem;
    const std::string root = "test_sweep_out";
    fs::remove_all(root);
    const std::string path = root + "/nested/dir/result.csv";
    const std::string content = "a,b\n1,2\n";
    write_file(path, content);
    std::ifstream in(path, std::ios::binary);
    std::string back((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(back == content);

    // A plain file in the parent chain makes directory creation fail.
    write_file(root + "/plain", "x");
    CHECK_THROWS_AS(write_file(root + "/plain/child.txt", "y"), ConfigError);
    fs::remove_all(root);
}
