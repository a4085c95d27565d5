#include "risec/harq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "risec/mode_selection.hpp"
#include "risec/quadrature.hpp"

namespace risec {

namespace {

constexpr double kLog2E = 1.4426950408889634074;

void check_model(const HarqModel& m) {
    if (m.x_limit < 1 || m.x_limit > 64) throw std::invalid_argument("retransmission limit must be in [1, 64]");
    if (m.block_length < 1) throw std::invalid_argument("block length must be positive");
    if (!(m.r_t >= 0.0)) throw std::invalid_argument("rate must be nonnegative");
    if (!(m.phi > 0.0)) throw std::invalid_argument("qos exponent must be positive");
    if (!(m.kappa_d > 0.0) || !(m.kappa_c > 0.0)) throw std::invalid_argument("mean snr must be positive");
    if (m.trials == 0) throw std::invalid_argument("trials must be positive");
}

} // namespace

double decode_error_prob(const std::vector<double>& sinr_draws, std::size_t block_length,
                         double r_t, HarqLogBase log_base) {
    if (sinr_draws.empty()) throw std::invalid_argument("at least one attempt required");
    if (block_length < 1) throw std::invalid_argument("block length must be positive");
    if (!(r_t >= 0.0)) throw std::invalid_argument("rate must be nonnegative");
    const double l = static_cast<double>(block_length);
    const double xl = static_cast<double>(sinr_draws.size()) * l;
    double rate_sum = 0.0;
    double dispersion = 0.0;
    for (double g : sinr_draws) {
        if (!(g >= 0.0)) throw std::invalid_argument("snr draws must be nonnegative");
        rate_sum += std::log2(1.0 + g);
        const double gp1 = g + 1.0;
        dispersion += (2.0 + g) * g / (l * gp1 * gp1);
    }
    const double correction = (log_base == HarqLogBase::two ? std::log2(xl) : std::log(xl)) / l;
    const double denom = kLog2E * std::sqrt(dispersion);
    if (denom == 0.0) return r_t > 0.0 ? 1.0 : 0.5;
    return gaussian_q((rate_sum + correction - r_t) / denom);
}

double expected_decode_error(const SnrLaw& law, std::size_t attempts, std::size_t block_length,
                             double r_t, HarqLogBase log_base, Rng& rng, std::size_t trials) {
    if (attempts < 1) throw std::invalid_argument("at least one attempt required");
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    std::vector<double> draws(attempts);
    double acc = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        for (double& g : draws) g = law.sample(rng);
        acc += decode_error_prob(draws, block_length, r_t, log_base);
    }
    return acc / static_cast<double>(trials);
}

bool isotonic_nonincreasing(std::vector<double>& values) {
    if (values.size() < 2) return false;
    struct Block {
        double mean;
        std::size_t count;
    };
    std::vector<Block> blocks;
    blocks.reserve(values.size());
    for (double v : values) {
        blocks.push_back({v, 1});
        while (blocks.size() > 1 && blocks[blocks.size() - 2].mean < blocks.back().mean) {
            const Block b = blocks.back();
            blocks.pop_back();
            Block& a = blocks.back();
            a.mean = (a.mean * static_cast<double>(a.count) + b.mean * static_cast<double>(b.count)) /
                     static_cast<double>(a.count + b.count);
            a.count += b.count;
        }
    }
    bool changed = false;
    std::size_t i = 0;
    for (const Block& b : blocks) {
        for (std::size_t k = 0; k < b.count; ++k, ++i) {
            if (values[i] != b.mean) changed = true;
            values[i] = b.mean;
        }
    }
    return changed;
}

ExpectedErrors expected_error_sequences(const HarqModel& model) {
    check_model(model);
    ExpectedErrors out;
    if (model.x_limit == 1) return out;
    const SnrLaw law_d = SnrLaw::exponential(model.kappa_d);
    const SnrLaw law_c = SnrLaw::exponential(model.kappa_c);
    out.d2d.resize(model.x_limit - 1);
    out.cellular.resize(model.x_limit - 1);
    for (std::size_t x = 1; x < model.x_limit; ++x) {
        Rng rng_d = Rng::substream(model.seed, "harq.decode.d2d", x);
        Rng rng_c = Rng::substream(model.seed, "harq.decode.cell", x);
        out.d2d[x - 1] = expected_decode_error(law_d, x, model.block_length, model.r_t,
                                               model.log_base, rng_d, model.trials);
        out.cellular[x - 1] = expected_decode_error(law_c, x, model.block_length, model.r_t,
                                                    model.log_base, rng_c, model.trials);
    }
    const bool fixed_d = isotonic_nonincreasing(out.d2d);
    const bool fixed_c = isotonic_nonincreasing(out.cellular);
    out.corrected = fixed_d || fixed_c;
    return out;
}

namespace {

std::vector<double> pmf_from_errors(const std::vector<double>& e, std::size_t x_limit) {
    std::vector<double> pmf(x_limit);
    double sum_head = 0.0;
    double prev = 1.0;
    for (std::size_t t = 1; t < x_limit; ++t) {
        pmf[t - 1] = prev - e[t - 1];
        sum_head += pmf[t - 1];
        prev = e[t - 1];
    }
    pmf[x_limit - 1] = 1.0 - sum_head;
    return pmf;
}

} // namespace

DeparturePmf departure_pmf_from_errors(const ExpectedErrors& errors, std::size_t x_limit) {
    if (x_limit < 1) throw std::invalid_argument("retransmission limit must be positive");
    if (errors.d2d.size() + 1 < x_limit || errors.cellular.size() + 1 < x_limit)
        throw std::invalid_argument("error sequences shorter than the retransmission limit");
    DeparturePmf out;
    out.d2d = pmf_from_errors(errors.d2d, x_limit);
    out.cellular = pmf_from_errors(errors.cellular, x_limit);
    out.corrected = errors.corrected;
    return out;
}

DeparturePmf departure_pmf(const HarqModel& model) {
    return departure_pmf_from_errors(expected_error_sequences(model), model.x_limit);
}

std::vector<double> companion_entries(const ExpectedErrors& errors, std::size_t x_limit,
                                      const TransitionVector& p, double r_t, double phi) {
    if (x_limit < 1) throw std::invalid_argument("retransmission limit must be positive");
    if (x_limit > 1 && (errors.d2d.size() + 1 < x_limit || errors.cellular.size() + 1 < x_limit))
        throw std::invalid_argument("error sequences shorter than the retransmission limit");
    const double mgf_on = std::exp(-r_t * phi);
    const double on_d = p.p1 * mgf_on;
    const double on_c = p.p3 * mgf_on;
    const double off = p.p2 + p.p4;
    std::vector<double> a(x_limit);
    if (x_limit == 1) {
        a[0] = on_d + on_c + off;
        return a;
    }
    a[0] = (1.0 - errors.d2d[0]) * on_d + (1.0 - errors.cellular[0]) * on_c + off;
    for (std::size_t x = 2; x <= x_limit - 1; ++x) {
        const double dd = errors.d2d[x - 2] - errors.d2d[x - 1];
        const double dc = errors.cellular[x - 2] - errors.cellular[x - 1];
        a[x - 1] = dd * on_d + dc * on_c + off;
    }
    a[x_limit - 1] = errors.d2d[x_limit - 2] * on_d + errors.cellular[x_limit - 2] * on_c + off;
    return a;
}

double spectral_radius_companion(const std::vector<double>& a) {
    std::size_t n = a.size();
    while (n > 0 && a[n - 1] == 0.0) --n;
    if (n == 0) throw std::invalid_argument("all companion entries are zero");
    for (std::size_t i = 0; i < n; ++i)
        if (!(a[i] >= 0.0)) throw std::invalid_argument("companion entries must be nonnegative");
    if (n == 1) return a[0];

    std::vector<double> v(n, 1.0), w(n);
    double radius = 0.0;
    for (std::size_t it = 0; it < 100000; ++it) {
        w[0] = v[0];
        for (std::size_t j = 0; j < n; ++j) w[0] += a[j] * v[j];
        for (std::size_t i = 1; i < n; ++i) w[i] = v[i - 1] + v[i];
        double lo = w[0] / v[0];
        double hi = lo;
        for (std::size_t i = 1; i < n; ++i) {
            const double ratio = w[i] / v[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        radius = 0.5 * (lo + hi) - 1.0;
        if (hi - lo <= 1e-12 * hi) return radius;
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    }
    throw NumericError("power iteration did not converge", radius, 100000);
}

HarqEcResult ec_harq_from_errors(const ExpectedErrors& errors, std::size_t x_limit,
                                 const TransitionVector& p, double r_t, double phi) {
    if (!(phi > 0.0)) throw std::invalid_argument("qos exponent must be positive");
    HarqEcResult out;
    out.entries = companion_entries(errors, x_limit, p, r_t, phi);
    out.corrected = errors.corrected;
    out.spectral_radius = spectral_radius_companion(out.entries);
    out.stable = out.spectral_radius < 1.0;
    out.ec = out.stable ? -std::log(out.spectral_radius) / phi : 0.0;
    return out;
}

HarqEcResult ec_harq(const HarqModel& model) {
    check_model(model);
    return ec_harq_from_errors(expected_error_sequences(model), model.x_limit, model.p, model.r_t,
                               model.phi);
}

} // namespace risec
