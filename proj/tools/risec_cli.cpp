#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "risec/config.hpp"
#include "risec/plot.hpp"
#include "risec/sweep.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::string sweep_kind;
    std::uint64_t seed = 0;
    std::string out_dir;
    bool with_oracle = false;
    bool exact_outage = false;
    std::string harq_log_base;
    std::size_t workers = 0;
    std::size_t trials = 0;
};

void add_common(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--config", ov.config_path, "experiment description (TOML subset)");
    cmd->add_option("--sweep", ov.sweep_kind, "sweep kind: rate, qos, harq, sigma, pon");
    cmd->add_option("--seed", ov.seed, "base seed for every random substream");
    cmd->add_option("--out", ov.out_dir, "output directory");
    cmd->add_flag("--with-oracle", ov.with_oracle,
                  "add Monte Carlo / polynomial reference columns next to each closed form");
    cmd->add_flag("--exact-outage", ov.exact_outage,
                  "use exact SINR-law outage instead of the linearized closed forms");
    cmd->add_option("--harq-log-base", ov.harq_log_base,
                    "blocklength-correction log base: 2 or e");
    cmd->add_option("--workers", ov.workers, "worker threads (results do not depend on this)");
    cmd->add_option("--trials", ov.trials, "Monte Carlo trials per reference estimate");
}

risec::ExperimentConfig build_config(const CLI::App* cmd, const Overrides& ov) {
    risec::ExperimentConfig cfg =
        ov.config_path.empty() ? risec::desk_config() : risec::load_config(ov.config_path);
    if (cmd->count("--sweep")) cfg.sweep_kind = risec::sweep_kind_from_name(ov.sweep_kind);
    if (cmd->count("--seed")) cfg.seed = ov.seed;
    if (cmd->count("--out")) cfg.out_dir = ov.out_dir;
    if (cmd->count("--with-oracle")) cfg.with_oracle = true;
    if (cmd->count("--exact-outage")) cfg.exact_outage = true;
    if (cmd->count("--harq-log-base")) {
        if (ov.harq_log_base == "2") {
            cfg.harq_log_base = risec::HarqLogBase::two;
        } else if (ov.harq_log_base == "e") {
            cfg.harq_log_base = risec::HarqLogBase::natural;
        } else {
            throw risec::ConfigError("--harq-log-base must be 2 or e");
        }
    }
    if (cmd->count("--workers")) cfg.workers = ov.workers;
    if (cmd->count("--trials")) cfg.oracle_trials = ov.trials;
    const std::vector<std::string> problems = risec::validate_config(cfg);
    if (!problems.empty()) {
        std::string msg = "invalid configuration:";
        for (const std::string& p : problems) msg += "\n  - " + p;
        throw risec::ConfigError(msg);
    }
    return cfg;
}

int do_sweep(const risec::ExperimentConfig& cfg) {
    const risec::SweepTable t = risec::run_sweep(cfg);
    const std::string base = cfg.out_dir + "/" + risec::sweep_kind_name(t.kind);
    risec::write_file(base + ".csv", risec::table_csv(t));
    risec::write_file(base + ".meta.json", risec::table_meta_json(t));
    std::printf("wrote %s.csv (%zu rows, %zu columns) and %s.meta.json\n", base.c_str(),
                t.rows.size(), t.columns.size(), base.c_str());
    return 0;
}

int do_validate(const risec::ExperimentConfig& cfg) {
    const risec::ValidationReport rep = risec::run_validation(cfg);
    risec::write_file(cfg.out_dir + "/validation.json", risec::report_json(rep));
    for (const risec::Check& c : rep.checks) {
        std::printf("[%s] %-36s value=%.10g expected=%.10g tol=%.3g  %s\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.expected, c.tolerance,
                    c.note.c_str());
    }
    std::printf("%zu checks, %s\n", rep.checks.size(),
                rep.all_pass() ? "all passed" : "FAILURES PRESENT");
    return rep.all_pass() ? 0 : 1;
}

int do_plot(const std::string& input, const std::string& output) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw risec::ConfigError("cannot open '" + input + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const risec::SweepTable t = risec::parse_table_csv(ss.str());
    std::string out_path = output;
    if (out_path.empty()) {
        out_path = input;
        const std::size_t dot = out_path.find_last_of('.');
        const std::size_t slash = out_path.find_last_of('/');
        if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
            out_path.resize(dot);
        out_path += ".svg";
    }
    risec::write_file(out_path, risec::render_svg(t));
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Effective-capacity analysis of a reflector-assisted device-to-device link: "
                 "mode selection, four-state service model, retransmissions, and Monte Carlo "
                 "cross-checks of every closed form."};
    app.require_subcommand(1);

    Overrides ov_sweep, ov_validate;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "run the configured sweep and write CSV + JSON metadata");
    add_common(sweep_cmd, ov_sweep);
    CLI::App* validate_cmd = app.add_subcommand(
        "validate", "cross-check every closed form against an independent estimate");
    add_common(validate_cmd, ov_validate);

    std::string plot_input, plot_output;
    CLI::App* plot_cmd = app.add_subcommand("plot", "render a sweep CSV as an SVG chart");
    plot_cmd->add_option("input", plot_input, "CSV file produced by the sweep command")
        ->required();
    plot_cmd->add_option("--output", plot_output, "SVG path (default: input with .svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sweep_cmd->parsed()) return do_sweep(build_config(sweep_cmd, ov_sweep));
        if (validate_cmd->parsed()) return do_validate(build_config(validate_cmd, ov_validate));
        if (plot_cmd->parsed()) return do_plot(plot_input, plot_output);
    } catch (const risec::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
