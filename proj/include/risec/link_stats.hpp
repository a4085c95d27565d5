#pragma once

#include <complex>
#include <span>

#include "risec/channel.hpp"
#include "risec/rng.hpp"

namespace risec {

/// Smallest SINR that sustains rate r_t over bandwidth B: 2^(r_t/B) - 1.
double threshold_snr(double r_t, double bandwidth);

double capacity_d2d(double sinr, double bandwidth);

/// Two-hop decode-and-forward capacity 0.5 B log2(1 + min(ul, dl)).
double capacity_cellular(double sinr_ul, double sinr_dl, double bandwidth);

/// Mean-SNR and rate-parameter summary of one network drop. kappa_* are the
/// mean SNRs of the reflected links over noise alone; alpha/beta are the
/// exponential rate parameters of the signal and interference power terms
/// entering the interference-limited ratios.
struct SnrModel {
    double kappa_d;  // device link mean SNR
    double kappa_ul; // uplink mean SNR
    double kappa_dl; // downlink mean SNR
    double kappa_c;  // harmonic composition kappa_ul kappa_dl / (kappa_ul + kappa_dl)
    double alpha1;   // device link signal rate
    double alpha2;   // interferer-to-receiver rate
    double beta1;    // uplink signal rate
    double beta2;    // downlink signal rate
    double beta3;    // interferer-to-base-station rate
};

double mean_snr_d2d(const LinkBudget& budget, int n_total);

struct CellularSnr {
    double kappa_ul;
    double kappa_dl;
    double kappa_c;
};

/// The harmonic identity kappa_c (kappa_ul + kappa_dl) = kappa_ul kappa_dl
/// holds by construction and is verified to machine precision.
CellularSnr mean_snr_cellular(const LinkBudget& budget, int n_total);

SnrModel make_snr_model(const LinkBudget& budget, int n_total);

/// Interference-limited outage of the device link,
/// gamma alpha1 / (alpha1 + alpha2), clamped to [0, 1]. Linear in gamma and
/// accurate for small thresholds; the exact ratio law lives in the oracle.
double outage_d2d(const SnrModel& m, double gamma_t);

double outage_hop_uplink(const SnrModel& m, double gamma_t);
double outage_hop_downlink(const SnrModel& m, double gamma_t);

/// Two-hop outage as the union A + B - A B of the per-hop closed forms.
double outage_cellular(const SnrModel& m, double gamma_t);

/// Collapsed single-fraction variant of the two-hop outage; its cross terms
/// differ from the union composition and it underestimates heavily when the
/// interference terms dominate. Kept for comparison; clamped to [0, 1].
double outage_cellular_reduced(const LinkBudget& budget, int n_total, double gamma_t);

/// Coherent-sum SINR of one reflected link for a concrete realization:
/// P |sum h e^{j phi}|^2 / PL over (interference + noise), interference
/// dropped in overlay operation.
double instantaneous_sinr(RisLink link, const ChannelRealization& realization,
                          std::span<const double> phases, const LinkBudget& budget,
                          bool underlay, std::complex<double> h_interference);

/// SINR law used by the analytic expectations and the Monte Carlo drivers:
/// exponential for noise-limited operation, a ratio of independent
/// exponentials (or the minimum of two such ratios) for interference-limited
/// operation.
class SnrLaw {
public:
    enum class Kind { exponential, ratio, min_ratio };

    static SnrLaw exponential(double mean);
    static SnrLaw ratio(double rate_num, double rate_den);
    static SnrLaw min_ratio(double rate_num_1, double rate_den_1, double rate_num_2,
                            double rate_den_2);

    Kind kind() const { return kind_; }
    double survival(double g) const;
    double cdf(double g) const { return 1.0 - survival(g); }
    double density(double g) const;
    double sample(Rng& rng) const;

private:
    SnrLaw() = default;
    Kind kind_ = Kind::exponential;
    double a_ = 1.0, b_ = 1.0, c_ = 1.0, d_ = 1.0;
};

/// Device-link SINR law: Exp(kappa_d) in overlay, signal/interference ratio
/// in underlay.
SnrLaw d2d_law(const SnrModel& m, bool underlay);

/// Cellular SINR law: Exp(kappa_c) in overlay, minimum of the two per-hop
/// ratios in underlay.
SnrLaw cellular_law(const SnrModel& m, bool underlay);

} // namespace risec
