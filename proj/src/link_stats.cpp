#include "risec/link_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risec {

namespace {

double clamp01(double x) {
    return std::clamp(x, 0.0, 1.0);
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

} // namespace

double threshold_snr(double r_t, double bandwidth) {
    require_positive(bandwidth, "threshold_snr: bandwidth");
    if (r_t < 0.0) throw std::invalid_argument("threshold_snr: rate must be non-negative");
    return std::exp2(r_t / bandwidth) - 1.0;
}

double capacity_d2d(double sinr, double bandwidth) {
    if (sinr < 0.0) throw std::invalid_argument("capacity_d2d: sinr must be non-negative");
    return bandwidth * std::log2(1.0 + sinr);
}

double capacity_cellular(double sinr_ul, double sinr_dl, double bandwidth) {
    if (sinr_ul < 0.0 || sinr_dl < 0.0)
        throw std::invalid_argument("capacity_cellular: sinr must be non-negative");
    return 0.5 * bandwidth * std::log2(1.0 + std::min(sinr_ul, sinr_dl));
}

double mean_snr_d2d(const LinkBudget& budget, int n_total) {
    require_positive(budget.noise_power, "mean_snr_d2d: noise power");
    require_positive(budget.pl_d, "mean_snr_d2d: path loss");
    require_positive(budget.p_dt, "mean_snr_d2d: transmit power");
    if (n_total < 1) throw std::invalid_argument("mean_snr_d2d: n_total must be at least 1");
    return static_cast<double>(n_total) * std::numbers::pi * budget.p_dt /
           (budget.pl_d * budget.noise_power);
}

CellularSnr mean_snr_cellular(const LinkBudget& budget, int n_total) {
    require_positive(budget.noise_power, "mean_snr_cellular: noise power");
    require_positive(budget.pl_dt_bs, "mean_snr_cellular: uplink path loss");
    require_positive(budget.pl_bs_dr, "mean_snr_cellular: downlink path loss");
    require_positive(budget.p_dt, "mean_snr_cellular: device power");
    require_positive(budget.p_bs, "mean_snr_cellular: base station power");
    if (n_total < 1)
        throw std::invalid_argument("mean_snr_cellular: n_total must be at least 1");
    const double npi = static_cast<double>(n_total) * std::numbers::pi;
    CellularSnr c;
    c.kappa_ul = npi * budget.p_dt / (budget.pl_dt_bs * budget.noise_power);
    c.kappa_dl = npi * budget.p_bs / (budget.pl_bs_dr * budget.noise_power);
    c.kappa_c = c.kappa_ul * c.kappa_dl / (c.kappa_ul + c.kappa_dl);
    return c;
}

SnrModel make_snr_model(const LinkBudget& budget, int n_total) {
    require_positive(budget.p_ut, "make_snr_model: interferer power");
    require_positive(budget.pl_ut_dr, "make_snr_model: interferer-receiver path loss");
    require_positive(budget.pl_ut_bs, "make_snr_model: interferer-base-station path loss");
    const double npi = static_cast<double>(n_total) * std::numbers::pi;
    const CellularSnr c = mean_snr_cellular(budget, n_total);
    SnrModel m;
    m.kappa_d = mean_snr_d2d(budget, n_total);
    m.kappa_ul = c.kappa_ul;
    m.kappa_dl = c.kappa_dl;
    m.kappa_c = c.kappa_c;
    m.alpha1 = budget.pl_d / (npi * budget.p_dt);
    m.alpha2 = budget.pl_ut_dr / budget.p_ut;
    m.beta1 = budget.pl_dt_bs / (npi * budget.p_dt);
    m.beta2 = budget.pl_bs_dr / (npi * budget.p_bs);
    m.beta3 = budget.pl_ut_bs / budget.p_ut;
    return m;
}

double outage_d2d(const SnrModel& m, double gamma_t) {
    if (gamma_t < 0.0) throw std::invalid_argument("outage_d2d: threshold must be non-negative");
    return clamp01(gamma_t * m.alpha1 / (m.alpha1 + m.alpha2));
}

double outage_hop_uplink(const SnrModel& m, double gamma_t) {
    if (gamma_t < 0.0)
        throw std::invalid_argument("outage_hop_uplink: threshold must be non-negative");
    return clamp01(gamma_t * m.beta1 / (m.beta1 + m.beta3));
}

double outage_hop_downlink(const SnrModel& m, double gamma_t) {
    if (gamma_t < 0.0)
        throw std::invalid_argument("outage_hop_downlink: threshold must be non-negative");
    return clamp01(gamma_t * m.beta2 / (m.beta2 + m.alpha2));
}

double outage_cellular(const SnrModel& m, double gamma_t) {
    const double a = outage_hop_uplink(m, gamma_t);
    const double b = outage_hop_downlink(m, gamma_t);
    return a + b - a * b;
}

double outage_cellular_reduced(const LinkBudget& budget, int n_total, double gamma_t) {
    if (gamma_t < 0.0)
        throw std::invalid_argument("outage_cellular_reduced: threshold must be non-negative");
    const double npi = static_cast<double>(n_total) * std::numbers::pi;
    const double omega1 = budget.p_dt * budget.pl_ut_bs * npi;
    const double omega2 = budget.p_bs * budget.pl_ut_dr * npi;
    const double pl1 = budget.pl_dt_bs;
    const double pl2 = budget.pl_bs_dr;
    const double pu = budget.p_ut;
    const double num =
        pu * gamma_t * (pl1 * (pu * pl2 * (2.0 - gamma_t) + omega1) - pl2 * omega2);
    const double den = (pu * pl1 + omega1) * (pu * pl2 + omega2);
    return clamp01(num / den);
}

double instantaneous_sinr(RisLink link, const ChannelRealization& realization,
                          std::span<const double> phases, const LinkBudget& budget,
                          bool underlay, std::complex<double> h_interference) {
    if (realization.h.size() != phases.size())
        throw std::invalid_argument("instantaneous_sinr: phase count mismatch");
    double p_sig = 0.0, pl_sig = 0.0, pl_intf = 0.0;
    switch (link) {
        case RisLink::d2d:
            p_sig = budget.p_dt;
            pl_sig = budget.pl_d;
            pl_intf = budget.pl_ut_dr;
            break;
        case RisLink::uplink:
            p_sig = budget.p_dt;
            pl_sig = budget.pl_dt_bs;
            pl_intf = budget.pl_ut_bs;
            break;
        case RisLink::downlink:
            p_sig = budget.p_bs;
            pl_sig = budget.pl_bs_dr;
            pl_intf = budget.pl_ut_dr;
            break;
    }
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t n = 0; n < phases.size(); ++n)
        sum += realization.h[n] * std::complex<double>(std::cos(phases[n]), std::sin(phases[n]));
    const double signal = p_sig * std::norm(sum) / pl_sig;
    double denom = budget.noise_power;
    if (underlay) denom += budget.p_ut * std::norm(h_interference) / pl_intf;
    return signal / denom;
}

SnrLaw SnrLaw::exponential(double mean) {
    require_positive(mean, "SnrLaw::exponential: mean");
    SnrLaw law;
    law.kind_ = Kind::exponential;
    law.a_ = mean;
    return law;
}

SnrLaw SnrLaw::ratio(double rate_num, double rate_den) {
    require_positive(rate_num, "SnrLaw::ratio: numerator rate");
    require_positive(rate_den, "SnrLaw::ratio: denominator rate");
    SnrLaw law;
    law.kind_ = Kind::ratio;
    law.a_ = rate_num;
    law.b_ = rate_den;
    return law;
}

SnrLaw SnrLaw::min_ratio(double rate_num_1, double rate_den_1, double rate_num_2,
                         double rate_den_2) {
    SnrLaw law = ratio(rate_num_1, rate_den_1);
    require_positive(rate_num_2, "SnrLaw::min_ratio: numerator rate");
    require_positive(rate_den_2, "SnrLaw::min_ratio: denominator rate");
    law.kind_ = Kind::min_ratio;
    law.c_ = rate_num_2;
    law.d_ = rate_den_2;
    return law;
}

double SnrLaw::survival(double g) const {
    if (g < 0.0) return 1.0;
    switch (kind_) {
        case Kind::exponential:
            return std::exp(-g / a_);
        case Kind::ratio:
            return b_ / (b_ + a_ * g);
        case Kind::min_ratio:
            return (b_ / (b_ + a_ * g)) * (d_ / (d_ + c_ * g));
    }
    return 0.0;
}

double SnrLaw::density(double g) const {
    if (g < 0.0) return 0.0;
    switch (kind_) {
        case Kind::exponential:
            return std::exp(-g / a_) / a_;
        case Kind::ratio: {
            const double d = b_ + a_ * g;
            return a_ * b_ / (d * d);
        }
        case Kind::min_ratio: {
            const double s1 = b_ / (b_ + a_ * g);
            const double s2 = d_ / (d_ + c_ * g);
            const double f1 = a_ * b_ / ((b_ + a_ * g) * (b_ + a_ * g));
            const double f2 = c_ * d_ / ((d_ + c_ * g) * (d_ + c_ * g));
            return f1 * s2 + f2 * s1;
        }
    }
    return 0.0;
}

double SnrLaw::sample(Rng& rng) const {
    switch (kind_) {
        case Kind::exponential:
            return rng.exponential(a_);
        case Kind::ratio:
            return rng.exponential(1.0 / a_) / rng.exponential(1.0 / b_);
        case Kind::min_ratio: {
            const double r1 = rng.exponential(1.0 / a_) / rng.exponential(1.0 / b_);
            const double r2 = rng.exponential(1.0 / c_) / rng.exponential(1.0 / d_);
            return std::min(r1, r2);
        }
    }
    return 0.0;
}

SnrLaw d2d_law(const SnrModel& m, bool underlay) {
    return underlay ? SnrLaw::ratio(m.alpha1, m.alpha2) : SnrLaw::exponential(m.kappa_d);
}

SnrLaw cellular_law(const SnrModel& m, bool underlay) {
    return underlay ? SnrLaw::min_ratio(m.beta1, m.beta3, m.beta2, m.alpha2)
                    : SnrLaw::exponential(m.kappa_c);
}

} // namespace risec
