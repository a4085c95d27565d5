#pragma once

namespace risec {

enum class Mode { d2d, cellular };

/// Gaussian test statistic tau = estimated loss difference between the
/// reflected device link and the reflected uplink. Under the cellular
/// hypothesis tau ~ N(m_tau, sigma_tau^2), under the device hypothesis
/// tau ~ N(-m_tau, sigma_tau^2), with sigma_tau^2 = 2 sigma_pl^2 because
/// tau subtracts two independent estimates.
struct ModeSelectModel {
    double m_tau = 1.0;
    double sigma_pl = 1.0;
    double prior_d2d = 0.5;  // pi_0
    double prior_cell = 0.5; // pi_1
    bool relabeled = false;  // loss difference was negative and was mirrored

    double sigma_tau() const;
};

/// Builds the test model from the two reflected-path losses and the
/// per-estimate error deviation. A negative difference flips the sign
/// convention and sets `relabeled`.
ModeSelectModel make_mode_model(double pl_d, double pl_dt_bs, double sigma_pl,
                                double prior_d2d);

/// Upper tail of the standard normal.
double gaussian_q(double x);

/// Likelihood-ratio threshold ln(pi_0/pi_1) sigma_tau^2 / (2 m_tau).
double decision_threshold(const ModeSelectModel& model);

/// tau above the threshold selects the cellular mode; ties stay on d2d.
Mode decide(double tau, double threshold);

struct DetectionProbs {
    double p_e1; // cellular decided while the device hypothesis holds
    double p_e2; // device decided while the cellular hypothesis holds
    double p_d1; // 1 - p_e1
    double p_d2; // 1 - p_e2
};

DetectionProbs detection_probs(const ModeSelectModel& model);

struct SelectionProbs {
    double d2d;      // P[device mode decided]
    double cellular; // P[cellular mode decided]
};

SelectionProbs selection_probs(const ModeSelectModel& model, const DetectionProbs& d);

/// Kullback-Leibler divergence between the two tau laws,
/// (2 m_tau)^2 / (2 sigma_tau^2) = 2 m_tau^2 / sigma_tau^2, in nats.
/// Equivalently m_tau^2 / sigma_pl^2. Symmetric in the argument order.
double bht_kld(const ModeSelectModel& model);

} // namespace risec
