#include "risec/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "risec/quadrature.hpp"

namespace risec {

namespace {

constexpr std::size_t kChunkTrials = 65536;

struct ChunkSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

} // namespace

McEstimate mc_mean(const McConfig& cfg, std::string_view label,
                   const std::function<double(Rng&)>& value) {
    if (cfg.trials < 1000) throw std::invalid_argument("mc runs need at least 1000 trials");
    const std::size_t n_chunks = (cfg.trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<ChunkSums> chunks(n_chunks);
    const std::string name(label);

    auto run_chunk = [&](std::size_t c) {
        Rng rng = Rng::substream(cfg.seed, name, c);
        const std::size_t begin = c * kChunkTrials;
        const std::size_t count = std::min(kChunkTrials, cfg.trials - begin);
        ChunkSums s;
        for (std::size_t i = 0; i < count; ++i) {
            const double v = value(rng);
            s.sum += v;
            s.sum_sq += v * v;
        }
        chunks[c] = s;
    };

    const std::size_t workers = std::max<std::size_t>(1, cfg.workers);
    if (workers == 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1))
                    run_chunk(c);
            });
        }
        for (auto& t : pool) t.join();
    }

    double sum = 0.0;
    double sum_sq = 0.0;
    for (const ChunkSums& s : chunks) {
        sum += s.sum;
        sum_sq += s.sum_sq;
    }
    const double n = static_cast<double>(cfg.trials);
    McEstimate est;
    est.trials = cfg.trials;
    est.value = sum / n;
    const double var = std::max(0.0, (sum_sq - n * est.value * est.value) / (n - 1.0));
    est.std_error = std::sqrt(var / n);
    return est;
}

double exact_ratio_cdf(double rate_num, double rate_den, double gamma) {
    if (!(rate_num > 0.0) || !(rate_den > 0.0)) throw std::invalid_argument("rates must be positive");
    if (!(gamma >= 0.0)) throw std::invalid_argument("threshold must be nonnegative");
    return gamma * rate_num / (rate_den + gamma * rate_num);
}

McEstimate mc_outage(const SnrLaw& law, double gamma_t, const McConfig& cfg) {
    return mc_mean(cfg, "oracle.outage",
                   [&law, gamma_t](Rng& rng) { return law.sample(rng) < gamma_t ? 1.0 : 0.0; });
}

McEstimate mc_effective_capacity(const std::function<double(Rng&)>& block_service, double phi,
                                 std::size_t horizon, const McConfig& cfg) {
    if (!(phi > 0.0)) throw std::invalid_argument("qos exponent must be positive");
    if (horizon < 1) throw std::invalid_argument("horizon must be positive");
    const McEstimate mgf = mc_mean(cfg, "oracle.ec", [&block_service, phi, horizon](Rng& rng) {
        double s = 0.0;
        for (std::size_t k = 0; k < horizon; ++k) s += block_service(rng);
        return std::exp(-phi * s);
    });
    McEstimate est;
    est.trials = mgf.trials;
    const double scale = phi * static_cast<double>(horizon);
    est.value = -std::log(mgf.value) / scale;
    est.std_error = mgf.std_error / (scale * mgf.value);
    return est;
}

std::pair<McEstimate, McEstimate> mc_mode_error(const ModeSelectModel& model,
                                                const McConfig& cfg) {
    const double thr = decision_threshold(model);
    const double m = model.m_tau;
    const double s = model.sigma_tau();
    McEstimate e1 = mc_mean(cfg, "oracle.mode.e1", [thr, m, s](Rng& rng) {
        const double tau = -m + s * rng.gaussian();
        return decide(tau, thr) == Mode::cellular ? 1.0 : 0.0;
    });
    McEstimate e2 = mc_mean(cfg, "oracle.mode.e2", [thr, m, s](Rng& rng) {
        const double tau = m + s * rng.gaussian();
        return decide(tau, thr) == Mode::d2d ? 1.0 : 0.0;
    });
    return {e1, e2};
}

double numeric_kld(const ModeSelectModel& model) {
    const double m = model.m_tau;
    const double s = model.sigma_tau();
    const double norm = 1.0 / (s * std::sqrt(2.0 * 3.14159265358979323846));
    auto log_density = [&](double tau, double mean) {
        const double z = (tau - mean) / s;
        return -0.5 * z * z + std::log(norm);
    };
    auto f = [&](double tau) {
        const double lp1 = log_density(tau, m);
        const double lp0 = log_density(tau, -m);
        return std::exp(lp1) * (lp1 - lp0);
    };
    return integrate(f, m - 13.0 * s, m + 13.0 * s, 1e-10);
}

McEstimate mc_aligned_gain_power(std::size_t n, double rician_alpha, const McConfig& cfg) {
    if (n < 1) throw std::invalid_argument("element count must be positive");
    if (!(rician_alpha >= 0.0)) throw std::invalid_argument("rician factor must be nonnegative");
    const double los = std::sqrt(rician_alpha / (1.0 + rician_alpha));
    const double nlos = std::sqrt(1.0 / (1.0 + rician_alpha));
    return mc_mean(cfg, "oracle.aligned_gain", [n, los, nlos](Rng& rng) {
        double amp = 0.0;
        for (std::size_t k = 0; k < n; ++k) amp += std::abs(los + nlos * rng.complex_gaussian());
        return amp * amp;
    });
}

double polynomial_max_root(const std::vector<double>& coeffs) {
    const std::size_t n = coeffs.size();
    if (n == 0) throw std::invalid_argument("polynomial needs at least one coefficient");
    if (n == 1) return std::abs(coeffs[0]);
    // Monic form: lambda^n - c_1 lambda^{n-1} - ... - c_n = 0.
    std::vector<std::complex<double>> poly(n + 1);
    poly[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) poly[i + 1] = -coeffs[i];

    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = poly[0];
        for (std::size_t i = 1; i <= n; ++i) acc = acc * z + poly[i];
        return acc;
    };

    // Cauchy bound seeds the roots on a circle with irrational-angle spacing
    // so no two start symmetric.
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::abs(coeffs[i]));
    bound += 1.0;
    std::vector<std::complex<double>> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double angle = 0.4 + 2.0 * 3.14159265358979323846 * static_cast<double>(i) /
                                       static_cast<double>(n);
        roots[i] = bound * std::complex<double>(std::cos(angle), std::sin(angle));
    }

    double best = 0.0;
    for (std::size_t it = 0; it < 5000; ++it) {
        double move = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> denom = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            if (denom == std::complex<double>(0.0, 0.0)) {
                roots[i] += 1e-8;
                continue;
            }
            const std::complex<double> delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            move = std::max(move, std::abs(delta));
        }
        best = 0.0;
        for (const auto& r : roots) best = std::max(best, std::abs(r));
        if (move <= 1e-14 * std::max(1.0, best)) return best;
    }
    throw NumericError("root iteration did not converge", best, 5000);
}

double spectral_radius_dense(const std::vector<double>& matrix, std::size_t n) {
    if (n == 0 || matrix.size() != n * n) throw std::invalid_argument("matrix must be n x n");
    for (double x : matrix)
        if (!(x >= 0.0)) throw std::invalid_argument("matrix entries must be nonnegative");
    if (n == 1) return matrix[0];
    // Power iteration on A + I: the shift separates equal-modulus eigenvalue
    // pairs of nonnegative matrices and keeps the dominant eigenvalue simple.
    std::vector<double> v(n, 1.0), w(n);
    double radius = 0.0;
    for (std::size_t it = 0; it < 100000; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = v[i];
            for (std::size_t j = 0; j < n; ++j) acc += matrix[i * n + j] * v[j];
            w[i] = acc;
        }
        double vmax = 0.0;
        for (double x : v) vmax = std::max(vmax, x);
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (std::size_t i = 0; i < n; ++i) {
            // Coordinates that have decayed this far relative to the dominant
            // component lie in a complementary invariant subspace (reducible
            // matrix); their stalled-denormal ratios would pin the bounds.
            if (v[i] <= 1e-250 * vmax) continue;
            const double ratio = w[i] / v[i];
            if (first) {
                lo = hi = ratio;
                first = false;
            } else {
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
        if (first) return 0.0; // zero vector: matrix is nilpotent along v
        radius = 0.5 * (lo + hi) - 1.0;
        if (hi - lo <= 1e-12 * std::max(hi, 1e-300)) return radius;
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    }
    throw NumericError("power iteration did not converge", radius, 100000);
}

} // namespace risec
