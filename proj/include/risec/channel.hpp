#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "risec/geometry.hpp"
#include "risec/rng.hpp"

namespace risec {

enum class Pattern { cos_cubed, isotropic };

/// Element power pattern: cos^3(elevation) inside [0, pi/2], zero behind the
/// array. The azimuth does not shape the pattern; isotropic returns 1 in
/// front of the array and 0 behind it.
double radiation_pattern(double elevation, double azimuth,
                         Pattern pattern = Pattern::cos_cubed);

struct AntennaGains {
    double cell = 1.0; // reflecting element
    double tx = 1.0;   // device transmitter
    double rx = 1.0;   // device receiver
    double bs = 1.0;   // base station
};

enum class RisLink { d2d, uplink, downlink };

/// Far-field reflected path loss
///   64 pi^3 (d1 d2)^2 / (G Ga Gb n_total d_ye d_ze lambda^2 F_in F_out)
/// with distances, angles and gain pair chosen by the link. Throws
/// std::domain_error when either endpoint falls outside the element pattern.
double ris_path_loss(const NetworkLayout& layout, const AntennaGains& gains,
                     double wavelength, RisLink link,
                     Pattern pattern = Pattern::cos_cubed);

/// Power-law loss d^exponent for the single-antenna interference and direct
/// device-to-device paths.
double direct_path_loss(double distance, double exponent);

/// Everything the closed forms need to price one network drop: powers,
/// gains, noise, wavelength, fading shape and the full path-loss set.
struct LinkBudget {
    double wavelength = 0.125;
    double bandwidth = 1.0;
    double noise_power = 1e-10; // omega_0 [W]
    double p_dt = 0.1;          // device transmitter mean power [W]
    double p_ut = 0.1;          // interfering cellular transmitter [W]
    double p_bs = 1.0;          // base station [W]
    double rician_alpha = 4.0;
    AntennaGains gains;
    double pl_d = 1.0;      // device -> array -> device
    double pl_dt_bs = 1.0;  // device -> array -> base station
    double pl_bs_dr = 1.0;  // base station -> array -> device
    double pl_ut_dr = 1.0;  // interferer -> device receiver, direct
    double pl_ut_bs = 1.0;  // interferer -> base station, direct
    double pl_direct = 1.0; // device -> device, direct
};

/// Per-element channel coefficients of one reflected hop or of the combined
/// two-hop path; unit scale, path loss is applied by the SINR formulas.
struct ChannelRealization {
    std::vector<std::complex<double>> h;
};

/// Deterministic line-of-sight component sqrt(alpha/(1+alpha)) e^{-j 2 pi D / lambda},
/// identical across elements under the far-field scalar-distance model.
ChannelRealization mean_channel(double alpha, double wavelength, double total_path,
                                std::size_t n_total);

/// Line-of-sight mean plus sqrt(1/(1+alpha)) times an independent unit
/// complex normal per element.
ChannelRealization sample_ris_channel(double alpha, double wavelength, double total_path,
                                      std::size_t n_total, Rng& rng);

/// Reflection phases -arg(in_n) - arg(out_n) wrapped to [0, 2 pi); the two
/// arguments are line-of-sight means for the statistical design and raw
/// realizations for the instantaneous design.
std::vector<double> phase_design(const ChannelRealization& in,
                                 const ChannelRealization& out);

/// Nearest level on the grid 2 pi l / (2^bits - 1), l in 0 .. 2^bits - 1,
/// by circular distance; ties take the smaller level and the top level
/// collapses onto phase 0. Returns {level, quantized phase}.
std::pair<int, double> quantize_phase(double phase, int bits);

std::vector<double> quantize_phases(const std::vector<double>& phases, int bits);

/// Received power p_tx |h_direct + sum_n h_n e^{j phi_n}|^2 / pl_reflected
/// for the superposed direct and reflected device-to-device signal.
double received_signal_power(const ChannelRealization& reflected,
                             const std::vector<double>& phases,
                             std::complex<double> h_direct, double p_tx,
                             double pl_reflected);

} // namespace risec
