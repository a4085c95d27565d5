#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "risec/config.hpp"

namespace risec {

/// Column-oriented numeric result of one sweep. `stats` carries scalar side
/// results (optimal-rate search output, achieved gains); `notes` carries
/// non-numeric remarks. Everything here is deterministic given the config.
struct SweepTable {
    SweepKind kind = SweepKind::rate;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::map<std::string, double> stats;
    std::map<std::string, std::string> notes;
};

/// Runs the sweep selected by cfg.sweep_kind:
///  - rate:  fixed-rate effective capacity against the target rate, both
///           interference regimes, plus the optimal-rate search in stats;
///  - qos:   fixed-rate and rate-adapted effective capacity against the QoS
///           exponent (log-spaced) for each configured array size;
///  - harq:  retransmission-aware effective capacity against the
///           retransmission limit, reusing one decode-error table;
///  - sigma: all four effective-capacity variants against the loss-estimate
///           deviation;
///  - pon:   fixed-rate effective capacity against a synthetic on-state
///           probability, endpoints pinned to 0 and r_t.
/// With cfg.with_oracle every analytic column gains oracle_/delta_ twins
/// estimated by Monte Carlo (or by the companion-polynomial root for the
/// retransmission sweep). Rows are computed in parallel over cfg.workers
/// but every value depends only on (seed, row, column), never on the
/// thread schedule.
SweepTable run_sweep(const ExperimentConfig& cfg);

/// Deterministic CSV rendering: '#' comment with kind, config hash and
/// seed; a header row; then %.17g-formatted values.
std::string table_csv(const SweepTable& table);

/// Parses table_csv output back (used by the plotting path so figures can
/// be regenerated from files alone).
SweepTable parse_table_csv(const std::string& text);

/// JSON sidecar with the kind, columns, hash, seed, stats and notes.
std::string table_meta_json(const SweepTable& table);

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct ValidationReport {
    std::vector<Check> checks;

    bool all_pass() const {
        for (const Check& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Cross-checks every closed form of the pipeline against an independent
/// estimate on the configured scenario: outage laws against empirical
/// frequencies, all effective-capacity variants against Monte Carlo,
/// detection probabilities against simulated decisions, the divergence
/// closed form against quadrature, eigenvalue closed forms against the
/// polynomial/dense references, plus negative tests that corrupted inputs
/// are rejected.
ValidationReport run_validation(const ExperimentConfig& cfg);

std::string report_json(const ValidationReport& report);

/// Writes content to path, creating parent directories; throws ConfigError
/// on I/O failure.
void write_file(const std::string& path, const std::string& content);

} // namespace risec
