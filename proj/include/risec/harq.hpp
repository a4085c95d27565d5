#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "risec/link_stats.hpp"
#include "risec/markov_ec.hpp"
#include "risec/rng.hpp"

namespace risec {

/// Base of the log(x*l)/l blocklength correction inside the decode-error
/// argument. Base two keeps the term in the same units as the log2 rate
/// terms; natural log is kept as a switch.
enum class HarqLogBase { two, natural };

/// Retransmission setup for one queue: up to x_limit copies of a packet are
/// sent over fading blocks of block_length channel uses, each block's SNR
/// drawn independently with the per-mode means kappa.
struct HarqModel {
    std::size_t x_limit = 1;
    std::size_t block_length = 100;
    double r_t = 1.0;
    double phi = 0.01;
    double kappa_d = 1.0;
    double kappa_c = 1.0;
    TransitionVector p;
    HarqLogBase log_base = HarqLogBase::two;
    std::uint64_t seed = 1;
    std::size_t trials = 100000;
};

/// Finite-blocklength decoding-error probability after the given per-block
/// SNR draws:
///   Q( (sum_n log2(1+G_n) + log(x l)/l - r_t) /
///      (log2(e) sqrt(sum_n (2+G_n) G_n / (l (G_n+1)^2))) ).
/// When every draw is zero the dispersion vanishes; by convention the
/// result is 1 for r_t > 0 and 0.5 for r_t = 0.
double decode_error_prob(const std::vector<double>& sinr_draws, std::size_t block_length,
                         double r_t, HarqLogBase log_base = HarqLogBase::two);

/// Monte Carlo mean of decode_error_prob over `attempts` independent
/// per-block draws from the given law.
double expected_decode_error(const SnrLaw& law, std::size_t attempts, std::size_t block_length,
                             double r_t, HarqLogBase log_base, Rng& rng, std::size_t trials);

/// Cumulative decode-error means E[P_x] for x = 1..X-1 per mode (empty for
/// X = 1), repaired to be nonincreasing when sampling noise breaks
/// monotonicity.
struct ExpectedErrors {
    std::vector<double> d2d;
    std::vector<double> cellular;
    bool corrected = false;
};

ExpectedErrors expected_error_sequences(const HarqModel& model);

/// Pools adjacent violators so the sequence is nonincreasing; returns
/// whether anything changed.
bool isotonic_nonincreasing(std::vector<double>& values);

/// Distribution of the slot t in which the packet leaves the queue:
/// P_t = E[P_{t-1}] - E[P_t] for t < X (with E[P_0] = 1) and
/// P_X = E[P_{X-1}]. Sums to one by telescoping.
struct DeparturePmf {
    std::vector<double> d2d;
    std::vector<double> cellular;
    bool corrected = false;
};

DeparturePmf departure_pmf(const HarqModel& model);
DeparturePmf departure_pmf_from_errors(const ExpectedErrors& errors, std::size_t x_limit);

/// First-row entries of the X by X companion matrix:
///   a_x = q_x diag(e^{-r_t phi}, 1, e^{-r_t phi}, 1) p^T
/// with q_1 = [1-E[Pd_1], 1, 1-E[Pc_1], 1], middle rows carrying the
/// telescoped differences, and q_X = [E[Pd_{X-1}], 1, E[Pc_{X-1}], 1].
std::vector<double> companion_entries(const ExpectedErrors& errors, std::size_t x_limit,
                                      const TransitionVector& p, double r_t, double phi);

/// Largest-modulus eigenvalue of the companion matrix with first row `a`,
/// i.e. the largest root of lambda^X = sum_x a_x lambda^{X-x}. Uses power
/// iteration on the identity-shifted matrix so eigenvalue pairs of equal
/// modulus still converge; tolerance 1e-12, at most 1e5 iterations.
double spectral_radius_companion(const std::vector<double>& a);

struct HarqEcResult {
    double ec = 0.0;
    double spectral_radius = 0.0;
    bool stable = true;    // spectral radius below one
    bool corrected = false;
    std::vector<double> entries;
};

/// Retransmission-aware effective capacity -(1/phi) ln sp(A), floored at
/// zero (with stable = false) when the radius reaches one.
HarqEcResult ec_harq(const HarqModel& model);

/// Same computation from precomputed error sequences, so sweeps over the
/// retransmission limit can reuse one table of expectations.
HarqEcResult ec_harq_from_errors(const ExpectedErrors& errors, std::size_t x_limit,
                                 const TransitionVector& p, double r_t, double phi);

} // namespace risec
