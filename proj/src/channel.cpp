#include "risec/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risec {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_phase(double phase) {
    double w = std::fmod(phase, two_pi);
    if (w < 0.0) w += two_pi;
    return w;
}

} // namespace

double radiation_pattern(double elevation, double azimuth, Pattern pattern) {
    (void)azimuth;
    if (elevation < 0.0 || elevation > 0.5 * std::numbers::pi) return 0.0;
    if (pattern == Pattern::isotropic) return 1.0;
    const double c = std::cos(elevation);
    return c * c * c;
}

double ris_path_loss(const NetworkLayout& layout, const AntennaGains& gains,
                     double wavelength, RisLink link, Pattern pattern) {
    if (!(wavelength > 0.0))
        throw std::invalid_argument("ris_path_loss: wavelength must be positive");
    const Point3 ref = array_center(layout.ris);
    const PathGeometry geo = path_geometry(layout);

    double d1 = 0.0, d2 = 0.0, gain_in = 0.0, gain_out = 0.0;
    AnglePair in{}, out{};
    switch (link) {
        case RisLink::d2d:
            d1 = geo.d_dt_ris;
            d2 = geo.d_ris_dr;
            gain_in = gains.tx;
            gain_out = gains.rx;
            in = arrival_angles(layout.d_tx, ref);
            out = arrival_angles(layout.d_rx, ref);
            break;
        case RisLink::uplink:
            d1 = geo.d_dt_ris;
            d2 = geo.d_ris_bs;
            gain_in = gains.tx;
            gain_out = gains.bs;
            in = arrival_angles(layout.d_tx, ref);
            out = arrival_angles(layout.bs, ref);
            break;
        case RisLink::downlink:
            d1 = geo.d_ris_bs;
            d2 = geo.d_ris_dr;
            gain_in = gains.bs;
            gain_out = gains.rx;
            in = arrival_angles(layout.bs, ref);
            out = arrival_angles(layout.d_rx, ref);
            break;
    }

    const double f_in = radiation_pattern(in.elevation, in.azimuth, pattern);
    const double f_out = radiation_pattern(out.elevation, out.azimuth, pattern);
    if (f_in <= 0.0 || f_out <= 0.0)
        throw std::domain_error("ris_path_loss: endpoint outside the element pattern");

    const double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
    const double num = 64.0 * pi3 * (d1 * d2) * (d1 * d2);
    const double den = gains.cell * gain_in * gain_out *
                       static_cast<double>(layout.ris.total()) * layout.ris.d_ye *
                       layout.ris.d_ze * wavelength * wavelength * f_in * f_out;
    return num / den;
}

double direct_path_loss(double distance, double exponent) {
    if (!(distance > 0.0))
        throw std::invalid_argument("direct_path_loss: distance must be positive");
    return std::pow(distance, exponent);
}

ChannelRealization mean_channel(double alpha, double wavelength, double total_path,
                                std::size_t n_total) {
    if (alpha < 0.0) throw std::invalid_argument("mean_channel: alpha must be non-negative");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("mean_channel: wavelength must be positive");
    const double los_scale = std::sqrt(alpha / (1.0 + alpha));
    const double theta = -two_pi * total_path / wavelength;
    const std::complex<double> los = los_scale * std::complex<double>(std::cos(theta), std::sin(theta));
    ChannelRealization r;
    r.h.assign(n_total, los);
    return r;
}

ChannelRealization sample_ris_channel(double alpha, double wavelength, double total_path,
                                      std::size_t n_total, Rng& rng) {
    ChannelRealization r = mean_channel(alpha, wavelength, total_path, n_total);
    const double nlos_scale = std::sqrt(1.0 / (1.0 + alpha));
    for (auto& h : r.h) h += nlos_scale * rng.complex_gaussian();
    return r;
}

std::vector<double> phase_design(const ChannelRealization& in,
                                 const ChannelRealization& out) {
    if (in.h.size() != out.h.size())
        throw std::invalid_argument("phase_design: element count mismatch");
    std::vector<double> phases(in.h.size());
    for (std::size_t n = 0; n < in.h.size(); ++n)
        phases[n] = wrap_phase(-std::arg(in.h[n]) - std::arg(out.h[n]));
    return phases;
}

std::pair<int, double> quantize_phase(double phase, int bits) {
    if (bits < 1 || bits > 30)
        throw std::invalid_argument("quantize_phase: bits outside [1, 30]");
    const double w = wrap_phase(phase);
    const int levels = 1 << bits;
    const double step = two_pi / static_cast<double>(levels - 1);
    int best = 0;
    double best_dist = two_pi;
    // Mathematical ties (e.g. pi against the 2-bit grid) can round to either
    // side in floating point; the slack keeps the documented smaller-level
    // rule and collapses the aliased top level onto level 0.
    constexpr double tie_slack = 1e-12;
    for (int l = 0; l < levels; ++l) {
        const double g = static_cast<double>(l) * step;
        double d = std::abs(w - g);
        d = std::min(d, two_pi - d);
        if (d + tie_slack < best_dist) {
            best_dist = d;
            best = l;
        }
    }
    return {best, wrap_phase(static_cast<double>(best) * step)};
}

std::vector<double> quantize_phases(const std::vector<double>& phases, int bits) {
    std::vector<double> q(phases.size());
    for (std::size_t n = 0; n < phases.size(); ++n) q[n] = quantize_phase(phases[n], bits).second;
    return q;
}

double received_signal_power(const ChannelRealization& reflected,
                             const std::vector<double>& phases,
                             std::complex<double> h_direct, double p_tx,
                             double pl_reflected) {
    if (reflected.h.size() != phases.size())
        throw std::invalid_argument("received_signal_power: phase count mismatch");
    if (!(pl_reflected > 0.0))
        throw std::invalid_argument("received_signal_power: path loss must be positive");
    std::complex<double> sum = h_direct;
    for (std::size_t n = 0; n < reflected.h.size(); ++n)
        sum += reflected.h[n] * std::complex<double>(std::cos(phases[n]), std::sin(phases[n]));
    return p_tx * std::norm(sum) / pl_reflected;
}

} // namespace risec
