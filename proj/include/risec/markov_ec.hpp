#pragma once

#include <array>
#include <cstddef>
#include <functional>

#include "risec/link_stats.hpp"
#include "risec/mode_selection.hpp"
#include "risec/rng.hpp"

namespace risec {

/// One-step probabilities of the four link states: device mode on, device
/// mode off, cellular mode on, cellular mode off. Rows of the transition
/// matrix are identical, so the chain is memoryless and p doubles as the
/// stationary law.
struct TransitionVector {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;

    double on() const { return p1 + p3; }
    double sum() const { return p1 + p2 + p3 + p4; }
};

/// Fixed-rate operation in interference-limited settings: the selection
/// probabilities split across modes and each mode stays on with one minus
/// its outage.
TransitionVector transitions_fixed_rate_underlay(const SelectionProbs& sel,
                                                 double outage_d, double outage_c);

/// Fixed-rate operation over noise alone: on-probabilities are the
/// exponential tails exp(-gamma_t / kappa).
TransitionVector transitions_fixed_rate_overlay(const SelectionProbs& sel, double kappa_d,
                                                double kappa_c, double gamma_t);

/// Rate-adapted operation: only the missed-detection state s2 is off, the
/// remaining states transmit at the instantaneous capacity.
TransitionVector transitions_csit(const ModeSelectModel& model, const DetectionProbs& d);

/// Largest eigenvalue of diag(phi) * ones * p^T; for a rank-one chain this
/// is the weighted trace sum_i phi_i p_i.
double spectral_radius_rank1(const TransitionVector& p, const std::array<double, 4>& phi_diag);

/// Fixed-rate effective capacity
///   -(1/phi) ln(p_on e^{-r_t phi} + 1 - p_on).
/// Requires phi > 0; the phi -> 0 limit is the mean service p_on r_t.
double ec_fixed_rate(const TransitionVector& p, double r_t, double phi);

double ec_fixed_rate_limit(const TransitionVector& p, double r_t);

/// E[e^{-phi B log2(1+G)}] = E[(1+G)^{-phi B / ln 2}] under the given law,
/// by adaptive quadrature.
double mgf_neg_rate(const SnrLaw& law, double phi, double bandwidth);

/// Monte Carlo fallback for the same expectation.
double mgf_neg_rate_mc(const SnrLaw& law, double phi, double bandwidth, Rng& rng,
                       std::size_t trials);

/// E[B log2(1+G)], the rate-adapted mean service of one mode.
double mean_rate(const SnrLaw& law, double bandwidth);

enum class CsitMethod { quadrature, monte_carlo };

/// Rate-adapted effective capacity
///   -(1/phi) ln(E_d (p1+p3) + p2 + E_c p4)
/// where E_d, E_c are the negative-rate transforms of the two mode laws.
double ec_csit(const TransitionVector& p, double phi, const SnrLaw& device_law,
               const SnrLaw& cellular_law, double bandwidth,
               CsitMethod method = CsitMethod::quadrature, Rng* rng = nullptr,
               std::size_t trials = 1000000);

/// phi -> 0 limit of ec_csit: (p1+p3) E[r_d] + p4 E[r_c].
double ec_csit_rate_limit(const TransitionVector& p, const SnrLaw& device_law,
                          const SnrLaw& cellular_law, double bandwidth);

struct RateSearch {
    double r_opt = 0.0;
    double ec_opt = 0.0;
    bool unimodal = true;
    std::size_t iterations = 0;
};

using TransitionsOfRate = std::function<TransitionVector(double)>;

/// Exhaustive scan of ec_fixed_rate over a uniform rate grid on [0, r_max].
RateSearch optimal_rate_grid(const TransitionsOfRate& p_of_rate, double phi, double r_max,
                             std::size_t points = 2000);

/// Descent on the four-term cost p_on(r) e^{-r phi} + 1 - p_on(r) with
/// central-difference gradients, adaptive step halving on overshoot and a
/// coarse unimodality pre-scan; falls back to the grid optimum (and clears
/// the unimodal flag) when the profile is not unimodal.
RateSearch optimal_rate_gd(const TransitionsOfRate& p_of_rate, double phi, double r_max);

/// Constant-occupancy gradient -phi p_on e^{-r phi} of the on-state cost;
/// strictly negative, so on its own it drives the rate to the upper bound.
/// The descent above therefore differentiates the full cost instead.
double printed_rate_gradient(double p_on, double r_t, double phi);

} // namespace risec
