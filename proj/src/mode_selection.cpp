#include "risec/mode_selection.hpp"

#include <cmath>
#include <stdexcept>

namespace risec {

double ModeSelectModel::sigma_tau() const {
    return sigma_pl * std::sqrt(2.0);
}

ModeSelectModel make_mode_model(double pl_d, double pl_dt_bs, double sigma_pl,
                                double prior_d2d) {
    if (!(sigma_pl > 0.0))
        throw std::invalid_argument("make_mode_model: sigma_pl must be positive");
    if (!(prior_d2d > 0.0) || !(prior_d2d < 1.0))
        throw std::invalid_argument("make_mode_model: prior must lie in (0, 1)");
    const double diff = pl_d - pl_dt_bs;
    if (diff == 0.0)
        throw std::invalid_argument("make_mode_model: equal path losses leave no separation");
    ModeSelectModel m;
    m.m_tau = std::abs(diff);
    m.sigma_pl = sigma_pl;
    m.prior_d2d = prior_d2d;
    m.prior_cell = 1.0 - prior_d2d;
    m.relabeled = diff < 0.0;
    return m;
}

double gaussian_q(double x) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    return 0.5 * std::erfc(x * inv_sqrt2);
}

double decision_threshold(const ModeSelectModel& model) {
    const double s2 = model.sigma_tau() * model.sigma_tau();
    return std::log(model.prior_d2d / model.prior_cell) * s2 / (2.0 * model.m_tau);
}

Mode decide(double tau, double threshold) {
    return tau > threshold ? Mode::cellular : Mode::d2d;
}

DetectionProbs detection_probs(const ModeSelectModel& model) {
    const double m = model.m_tau;
    const double s = model.sigma_tau();
    const double ratio = std::log(model.prior_d2d / model.prior_cell);
    DetectionProbs d;
    d.p_e1 = gaussian_q((ratio * s * s + 2.0 * m * m) / (2.0 * m * s));
    d.p_e2 = 1.0 - gaussian_q((ratio * s * s - 2.0 * m * m) / (2.0 * m * s));
    d.p_d1 = 1.0 - d.p_e1;
    d.p_d2 = 1.0 - d.p_e2;
    return d;
}

SelectionProbs selection_probs(const ModeSelectModel& model, const DetectionProbs& d) {
    SelectionProbs s;
    s.d2d = model.prior_d2d * d.p_d1 + model.prior_cell * d.p_e2;
    s.cellular = model.prior_d2d * d.p_e1 + model.prior_cell * d.p_d2;
    return s;
}

double bht_kld(const ModeSelectModel& model) {
    const double s2 = model.sigma_tau() * model.sigma_tau();
    return 2.0 * model.m_tau * model.m_tau / s2;
}

} // namespace risec
