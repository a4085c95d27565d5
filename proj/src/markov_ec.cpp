#include "risec/markov_ec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "risec/quadrature.hpp"

namespace risec {

namespace {

void check_probability(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " outside [0, 1]");
}

void check_transitions(const TransitionVector& p) {
    check_probability(p.p1, "p1");
    check_probability(p.p2, "p2");
    check_probability(p.p3, "p3");
    check_probability(p.p4, "p4");
    if (std::abs(p.sum() - 1.0) > 1e-9) throw std::invalid_argument("transition vector must sum to 1");
}

double neg_rate_exponent(double phi, double bandwidth) {
    if (!(phi > 0.0)) throw std::invalid_argument("qos exponent must be positive");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    return phi * bandwidth / std::log(2.0);
}

} // namespace

TransitionVector transitions_fixed_rate_underlay(const SelectionProbs& sel, double outage_d,
                                                 double outage_c) {
    check_probability(outage_d, "device outage");
    check_probability(outage_c, "cellular outage");
    TransitionVector p;
    p.p1 = sel.d2d * (1.0 - outage_d);
    p.p2 = sel.d2d * outage_d;
    p.p3 = sel.cellular * (1.0 - outage_c);
    p.p4 = sel.cellular * outage_c;
    check_transitions(p);
    return p;
}

TransitionVector transitions_fixed_rate_overlay(const SelectionProbs& sel, double kappa_d,
                                                double kappa_c, double gamma_t) {
    if (!(kappa_d > 0.0) || !(kappa_c > 0.0)) throw std::invalid_argument("mean snr must be positive");
    if (!(gamma_t >= 0.0)) throw std::invalid_argument("snr threshold must be nonnegative");
    const double on_d = std::exp(-gamma_t / kappa_d);
    const double on_c = std::exp(-gamma_t / kappa_c);
    TransitionVector p;
    p.p1 = sel.d2d * on_d;
    p.p2 = sel.d2d * (1.0 - on_d);
    p.p3 = sel.cellular * on_c;
    p.p4 = sel.cellular * (1.0 - on_c);
    check_transitions(p);
    return p;
}

TransitionVector transitions_csit(const ModeSelectModel& model, const DetectionProbs& d) {
    TransitionVector p;
    p.p1 = model.prior_d2d * d.p_d1;
    p.p2 = model.prior_d2d * d.p_e1;
    p.p3 = model.prior_cell * d.p_e2;
    p.p4 = model.prior_cell * d.p_d2;
    check_transitions(p);
    return p;
}

double spectral_radius_rank1(const TransitionVector& p, const std::array<double, 4>& phi_diag) {
    return phi_diag[0] * p.p1 + phi_diag[1] * p.p2 + phi_diag[2] * p.p3 + phi_diag[3] * p.p4;
}

double ec_fixed_rate(const TransitionVector& p, double r_t, double phi) {
    check_transitions(p);
    if (!(phi > 0.0)) throw std::invalid_argument("qos exponent must be positive");
    if (!(r_t >= 0.0)) throw std::invalid_argument("rate must be nonnegative");
    const double p_on = p.on();
    const double p_off = 1.0 - p_on;
    if (p_off <= 0.0) return r_t;
    const double trace = p_on * std::exp(-r_t * phi) + p_off;
    const double ec = -std::log(trace) / phi;
    return ec == 0.0 ? 0.0 : ec;  // canonicalize the sign of zero at total outage
}

double ec_fixed_rate_limit(const TransitionVector& p, double r_t) {
    check_transitions(p);
    return p.on() * r_t;
}

double mgf_neg_rate(const SnrLaw& law, double phi, double bandwidth) {
    const double c = neg_rate_exponent(phi, bandwidth);
    auto f = [&](double g) { return std::pow(1.0 + g, -c) * law.density(g); };
    return integrate_half_line(f, 1e-10);
}

double mgf_neg_rate_mc(const SnrLaw& law, double phi, double bandwidth, Rng& rng,
                       std::size_t trials) {
    const double c = neg_rate_exponent(phi, bandwidth);
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    double acc = 0.0;
    for (std::size_t i = 0; i < trials; ++i) acc += std::pow(1.0 + law.sample(rng), -c);
    return acc / static_cast<double>(trials);
}

double mean_rate(const SnrLaw& law, double bandwidth) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    auto f = [&](double g) { return law.survival(g) / (1.0 + g); };
    return bandwidth / std::log(2.0) * integrate_half_line(f, 1e-10);
}

double ec_csit(const TransitionVector& p, double phi, const SnrLaw& device_law,
               const SnrLaw& cellular_law, double bandwidth, CsitMethod method, Rng* rng,
               std::size_t trials) {
    check_transitions(p);
    if (!(phi > 0.0)) throw std::invalid_argument("qos exponent must be positive");
    double e_d = 0.0;
    double e_c = 0.0;
    if (method == CsitMethod::quadrature) {
        e_d = mgf_neg_rate(device_law, phi, bandwidth);
        e_c = mgf_neg_rate(cellular_law, phi, bandwidth);
    } else {
        if (rng == nullptr) throw std::invalid_argument("monte carlo method requires an rng");
        e_d = mgf_neg_rate_mc(device_law, phi, bandwidth, *rng, trials);
        e_c = mgf_neg_rate_mc(cellular_law, phi, bandwidth, *rng, trials);
    }
    const double arg = e_d * (p.p1 + p.p3) + p.p2 + e_c * p.p4;
    const double ec = -std::log(arg) / phi;
    return ec == 0.0 ? 0.0 : ec;
}

double ec_csit_rate_limit(const TransitionVector& p, const SnrLaw& device_law,
                          const SnrLaw& cellular_law, double bandwidth) {
    check_transitions(p);
    return (p.p1 + p.p3) * mean_rate(device_law, bandwidth) + p.p4 * mean_rate(cellular_law, bandwidth);
}

namespace {

double on_state_cost(const TransitionsOfRate& p_of_rate, double r, double phi) {
    const TransitionVector p = p_of_rate(r);
    return p.on() * std::exp(-r * phi) + (1.0 - p.on());
}

/// Scans successive differences with a magnitude filter and reports whether
/// the sequence rises at most once and falls at most once, in that order.
bool profile_unimodal(const std::vector<double>& ec) {
    double scale = 0.0;
    for (double v : ec) scale = std::max(scale, std::abs(v));
    const double eps = std::max(scale, 1.0) * 1e-11;
    bool falling = false;
    for (std::size_t i = 1; i < ec.size(); ++i) {
        const double d = ec[i] - ec[i - 1];
        if (std::abs(d) <= eps) continue;
        if (d < 0.0) {
            falling = true;
        } else if (falling) {
            return false;
        }
    }
    return true;
}

std::vector<double> grid_profile(const TransitionsOfRate& p_of_rate, double phi, double r_max,
                                 std::size_t points) {
    std::vector<double> ec(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double r = r_max * static_cast<double>(i) / static_cast<double>(points - 1);
        ec[i] = ec_fixed_rate(p_of_rate(r), r, phi);
    }
    return ec;
}

} // namespace

RateSearch optimal_rate_grid(const TransitionsOfRate& p_of_rate, double phi, double r_max,
                             std::size_t points) {
    if (!(r_max > 0.0)) throw std::invalid_argument("rate bound must be positive");
    if (points < 3) throw std::invalid_argument("grid needs at least 3 points");
    const std::vector<double> ec = grid_profile(p_of_rate, phi, r_max, points);
    RateSearch out;
    std::size_t best = 0;
    for (std::size_t i = 1; i < points; ++i)
        if (ec[i] > ec[best]) best = i;
    out.r_opt = r_max * static_cast<double>(best) / static_cast<double>(points - 1);
    out.ec_opt = ec[best];
    out.unimodal = profile_unimodal(ec);
    out.iterations = points;
    return out;
}

RateSearch optimal_rate_gd(const TransitionsOfRate& p_of_rate, double phi, double r_max) {
    if (!(r_max > 0.0)) throw std::invalid_argument("rate bound must be positive");
    constexpr std::size_t scan_points = 65;
    const std::vector<double> scan = grid_profile(p_of_rate, phi, r_max, scan_points);
    if (!profile_unimodal(scan)) {
        RateSearch out = optimal_rate_grid(p_of_rate, phi, r_max);
        out.unimodal = false;
        return out;
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < scan_points; ++i)
        if (scan[i] > scan[best]) best = i;
    double r = r_max * static_cast<double>(best) / static_cast<double>(scan_points - 1);

    const double h = 1e-6 * r_max;
    double step = 0.05 * r_max;
    double cost = on_state_cost(p_of_rate, r, phi);
    RateSearch out;
    for (out.iterations = 0; out.iterations < 100000; ++out.iterations) {
        const double lo = std::max(0.0, r - h);
        const double hi = std::min(r_max, r + h);
        const double grad =
            (on_state_cost(p_of_rate, hi, phi) - on_state_cost(p_of_rate, lo, phi)) / (hi - lo);
        double next = std::clamp(r - step * grad, 0.0, r_max);
        double next_cost = on_state_cost(p_of_rate, next, phi);
        bool descended = next_cost < cost;
        while (!descended && step > 1e-16 * r_max) {
            step *= 0.5;
            next = std::clamp(r - step * grad, 0.0, r_max);
            next_cost = on_state_cost(p_of_rate, next, phi);
            descended = next_cost < cost;
        }
        if (!descended) break;  // cost surface is flat to FP resolution around r
        const double moved = std::abs(next - r);
        r = next;
        cost = next_cost;
        // Regrow the step so shallow gradient regions are crossed in a few
        // iterations instead of stalling at a previously halved step size.
        step *= 2.0;
        if (moved <= 1e-10 * r_max) break;
    }
    out.r_opt = r;
    out.ec_opt = ec_fixed_rate(p_of_rate(r), r, phi);
    out.unimodal = true;
    return out;
}

double printed_rate_gradient(double p_on, double r_t, double phi) {
    return -phi * p_on * std::exp(-r_t * phi);
}

} // namespace risec
