#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <utility>
#include <vector>

#include "risec/link_stats.hpp"
#include "risec/mode_selection.hpp"
#include "risec/rng.hpp"

namespace risec {

/// Monte Carlo run settings. Trials are processed in fixed-size chunks,
/// each on its own named substream, and chunk results are reduced in index
/// order, so estimates are bit-identical for a given (seed, trials) no
/// matter how many workers execute the chunks.
struct McConfig {
    std::uint64_t seed = 1;
    std::size_t trials = 1000000;
    std::size_t workers = 1;
    double confidence = 3.0;
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;

    double half_width(double z) const { return z * std_error; }
};

/// Mean of a per-trial statistic. The callable must be pure: it may be
/// invoked concurrently with distinct generators.
McEstimate mc_mean(const McConfig& cfg, std::string_view label,
                   const std::function<double(Rng&)>& value);

/// CDF of the ratio of two independent exponentials with the given rate
/// parameters, evaluated at gamma: gamma a / (b + gamma a).
double exact_ratio_cdf(double rate_num, double rate_den, double gamma);

/// Empirical P[SNR < gamma_t] under the given law.
McEstimate mc_outage(const SnrLaw& law, double gamma_t, const McConfig& cfg);

/// Empirical effective capacity -(1/(phi t)) ln E[e^{-phi S(t)}] where S(t)
/// sums `horizon` independent draws of the per-block service sampler.
McEstimate mc_effective_capacity(const std::function<double(Rng&)>& block_service, double phi,
                                 std::size_t horizon, const McConfig& cfg);

/// Empirical wrong-decision frequencies of the threshold test: the test
/// statistic is Gaussian with mean -m_tau when the device link is truly
/// better and +m_tau otherwise, both with deviation sigma_tau.
std::pair<McEstimate, McEstimate> mc_mode_error(const ModeSelectModel& model,
                                                const McConfig& cfg);

/// Divergence between the two test-statistic densities by adaptive
/// quadrature of p1 ln(p1/p0); cross-checks the closed form 2 m^2/sigma^2.
double numeric_kld(const ModeSelectModel& model);

/// Mean of (sum of n coherently combined unit-power Rician magnitudes)^2.
/// Reported against the n*pi surrogate used by the mean-SNR closed forms;
/// the gap is measured, not asserted.
McEstimate mc_aligned_gain_power(std::size_t n, double rician_alpha, const McConfig& cfg);

/// Largest root modulus of
///   lambda^n = c_1 lambda^{n-1} + ... + c_n
/// by simultaneous (Durand-Kerner) iteration over all complex roots.
/// Independent of the power-iteration path, so it serves as the reference
/// for the companion-matrix spectral radius.
double polynomial_max_root(const std::vector<double>& coeffs);

/// Largest eigenvalue modulus of a dense nonnegative matrix (row-major,
/// n x n) by shifted power iteration; reference for the rank-one closed
/// form.
double spectral_radius_dense(const std::vector<double>& matrix, std::size_t n);

} // namespace risec
