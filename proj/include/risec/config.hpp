#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "risec/channel.hpp"
#include "risec/geometry.hpp"
#include "risec/harq.hpp"
#include "risec/link_stats.hpp"
#include "risec/mode_selection.hpp"

namespace risec {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class SweepKind { rate, qos, harq, sigma, pon };

SweepKind sweep_kind_from_name(const std::string& name);
std::string sweep_kind_name(SweepKind kind);

/// Full experiment description: geometry, link budget, mode-selection and
/// operating parameters, per-sweep ranges and Monte Carlo settings. Loaded
/// from a TOML subset file over the desk defaults; every field has a flat
/// section.key name used by both the parser and the canonical serialization.
struct ExperimentConfig {
    RisArray ris{2, 5, 0.0625, 0.0625};
    Point3 d_tx{5.0, 2.0, 0.0};
    Point3 d_rx{5.0, -2.0, 0.0};
    Point3 bs{24.0, 7.0, 0.0};
    Point3 u_tx{150.0, -120.0, 0.0};

    double wavelength = 0.125;
    double bandwidth = 1.0;
    double noise_power = 1e-10;
    double p_dt = 0.2;
    double p_ut = 0.1;
    double p_bs = 1.0;
    double rician_alpha = 4.0;
    double direct_exponent = 3.5;

    double sigma_pl = 6.0; // dB deviation of one loss estimate
    double prior_d2d = 0.3;

    double r_t = 1.5;
    double phi = 0.05;

    bool harq_underlay = true;
    std::size_t harq_block_length = 16;
    std::size_t harq_x_max = 12;
    std::size_t harq_trials = 20000;
    HarqLogBase harq_log_base = HarqLogBase::two;

    SweepKind sweep_kind = SweepKind::rate;
    double rate_lo = 0.05, rate_hi = 4.5;
    std::size_t rate_steps = 60;
    double qos_lo = 0.001, qos_hi = 1.0;
    std::size_t qos_steps = 20;
    double sigma_lo = 16.0, sigma_hi = 38.0;
    std::size_t sigma_steps = 10;
    std::size_t pon_steps = 11;
    std::vector<int> qos_n_z{2, 10};
    std::vector<int> qos_n_y{5, 10};

    std::uint64_t seed = 20250817;
    std::size_t trials = 1000000;
    std::size_t workers = 1;
    std::size_t oracle_trials = 200000;
    bool with_oracle = false;
    bool exact_outage = false;
    std::string out_dir = "out";
};

/// Built-in defaults: a desk-scale drop (devices a few meters from the
/// array, base station tens of meters, interferer far out) chosen so every
/// figure recipe runs out of the box.
ExperimentConfig desk_config();

/// Parses the TOML subset (sections, scalar/string/bool values and flat
/// numeric arrays) and applies it over the desk defaults. Unknown keys and
/// malformed lines raise ConfigError with the line number.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

/// Structural checks; returns human-readable problems, empty when valid.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

/// Sorted key=value serialization of every result-affecting field; doubles
/// printed with %.17g so the hash is stable across runs and platforms.
/// Worker count and output directory are excluded on purpose: results must
/// be byte-identical no matter where they are written or how many threads
/// computed them.
std::string canonical_config(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

/// One network drop priced end to end: path losses, detection and selection
/// probabilities, mean-SNR model.
struct Scenario {
    NetworkLayout layout;
    PathGeometry paths;
    LinkBudget budget;
    ModeSelectModel mode;
    DetectionProbs det;
    SelectionProbs sel;
    SnrModel snr;
};

Scenario build_scenario(const ExperimentConfig& cfg);
Scenario build_scenario(const ExperimentConfig& cfg, const RisArray& ris);

} // namespace risec
