#include <doctest.h>

#include <cmath>
#include <vector>

#include "risec/link_stats.hpp"
#include "risec/oracle.hpp"
#include "risec/quadrature.hpp"
#include "risec/rng.hpp"
#include "test_support.hpp"

using namespace risec;

namespace {

LinkBudget all_ones_budget() {
    LinkBudget b;
    b.noise_power = 1.0;
    b.p_dt = 1.0;
    b.p_ut = 1.0;
    b.p_bs = 1.0;
    b.pl_d = 1.0;
    b.pl_dt_bs = 1.0;
    b.pl_bs_dr = 1.0;
    b.pl_ut_dr = 1.0;
    b.pl_ut_bs = 1.0;
    b.pl_direct = 1.0;
    return b;
}

} // namespace

TEST_CASE("rate threshold map") {
    CHECK(threshold_snr(0.0, 1.0) == 0.0);
    CHECK(threshold_snr(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(threshold_snr(6.0, 2.0) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK_THROWS(threshold_snr(1.0, 0.0));
    CHECK_THROWS(threshold_snr(-0.5, 1.0));
}

TEST_CASE("capacities of the direct and relayed links") {
    CHECK(capacity_d2d(0.0, 1.0) == 0.0);
    CHECK(capacity_d2d(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(capacity_cellular(3.0, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(capacity_cellular(1.0, 3.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    // The relayed capacity is exactly half the weaker hop's direct capacity.
    for (double ul : {0.7, 2.0, 9.5}) {
        for (double dl : {0.3, 4.0}) {
            const double weaker = std::min(ul, dl);
            CHECK(capacity_cellular(ul, dl, 1.7) ==
                  doctest::Approx(0.5 * capacity_d2d(weaker, 1.7)).epsilon(1e-14));
        }
    }
    CHECK_THROWS(capacity_d2d(-1.0, 1.0));
    CHECK_THROWS(capacity_cellular(-1.0, 1.0, 1.0));
}

TEST_CASE("device-link mean SNR is linear in the element count") {
    LinkBudget b = all_ones_budget();
    b.pl_d = std::numbers::pi;
    CHECK(mean_snr_d2d(b, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mean_snr_d2d(b, 20) == doctest::Approx(2.0 * mean_snr_d2d(b, 10)).epsilon(1e-15));
    CHECK_THROWS(mean_snr_d2d(b, 0));

    // Sampling the matching exponential law reproduces the mean within 1%.
    const double kappa = mean_snr_d2d(b, 10);
    const SnrLaw law = SnrLaw::exponential(kappa);
    Rng rng = Rng::substream(41, "test.link.mean", 0);
    double acc = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) acc += law.sample(rng);
    CHECK(acc / n == doctest::Approx(kappa).epsilon(0.01));
}

TEST_CASE("relayed mean SNR composes the hops harmonically") {
    LinkBudget sym = all_ones_budget();
    const CellularSnr even = mean_snr_cellular(sym, 3);
    CHECK(even.kappa_ul == doctest::Approx(even.kappa_dl).epsilon(1e-15));
    CHECK(even.kappa_c == doctest::Approx(0.5 * even.kappa_ul).epsilon(1e-14));

    LinkBudget two = all_ones_budget();
    two.p_bs = 2.0;
    const CellularSnr c = mean_snr_cellular(two, 1);
    CHECK(c.kappa_c == doctest::Approx(2.09439510239319549230842892219).epsilon(1e-14));

    // Harmonic identity to machine precision on an asymmetric budget.
    const CellularSnr a = mean_snr_cellular(testsup::symmetric_surrogate_budget(), 10);
    CHECK(a.kappa_c * (a.kappa_ul + a.kappa_dl) ==
          doctest::Approx(a.kappa_ul * a.kappa_dl).epsilon(1e-13));
}

TEST_CASE("minimum of two exponential hops has the composed mean") {
    const CellularSnr c = mean_snr_cellular(testsup::symmetric_surrogate_budget(), 10);
    Rng rng = Rng::substream(42, "test.link.minexp", 0);
    double acc = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i)
        acc += std::min(rng.exponential(c.kappa_ul), rng.exponential(c.kappa_dl));
    CHECK(acc / n == doctest::Approx(c.kappa_c).epsilon(0.01));
}

TEST_CASE("rate parameters invert the mean SNRs through the noise floor") {
    const LinkBudget b = testsup::symmetric_surrogate_budget();
    const SnrModel m = make_snr_model(b, 10);
    CHECK(m.alpha1 * m.kappa_d == doctest::Approx(1.0 / b.noise_power).epsilon(1e-13));
    CHECK(m.beta1 * m.kappa_ul == doctest::Approx(1.0 / b.noise_power).epsilon(1e-13));
    CHECK(m.beta2 * m.kappa_dl == doctest::Approx(1.0 / b.noise_power).epsilon(1e-13));
    CHECK(m.alpha2 == doctest::Approx(b.pl_ut_dr / b.p_ut).epsilon(1e-15));
    CHECK(m.beta3 == doctest::Approx(b.pl_ut_bs / b.p_ut).epsilon(1e-15));
}

TEST_CASE("device-link outage closed form") {
    const SnrModel ones = make_snr_model(all_ones_budget(), 1);
    CHECK(outage_d2d(ones, 0.0) == 0.0);
    CHECK(outage_d2d(ones, 1.0) ==
          doctest::Approx(0.241453007005223854655569310955).epsilon(1e-14));
    CHECK_THROWS(outage_d2d(ones, -0.1));

    // Linear in the threshold before the clamp, then saturated at 1.
    CHECK(outage_d2d(ones, 0.5) == doctest::Approx(0.5 * outage_d2d(ones, 1.0)).epsilon(1e-14));
    CHECK(outage_d2d(ones, 1e9) == 1.0);

    // The closed form is a first-order expansion of the exact ratio law. As
    // the threshold shrinks the ratio settles on alpha2/(alpha1+alpha2),
    // which itself approaches 1 as the element count grows; at 10 elements
    // the residual gap stays inside the 5% envelope for thresholds <= 0.1.
    const SnrModel m = make_snr_model(testsup::symmetric_surrogate_budget(), 10);
    const double limit = m.alpha2 / (m.alpha1 + m.alpha2);
    const double ratio_lo = outage_d2d(m, 1e-6) / exact_ratio_cdf(m.alpha1, m.alpha2, 1e-6);
    CHECK(ratio_lo == doctest::Approx(limit).epsilon(1e-5));
    CHECK(std::abs(ratio_lo - 1.0) < 0.05);
    const double exact_mid = exact_ratio_cdf(m.alpha1, m.alpha2, 0.1);
    CHECK(std::abs(outage_d2d(m, 0.1) - exact_mid) / exact_mid < 0.05);

    // A hundred elements push the small-threshold ratio within half a
    // percent of unity.
    const SnrModel wide = make_snr_model(testsup::symmetric_surrogate_budget(), 100);
    const double ratio_wide =
        outage_d2d(wide, 1e-6) / exact_ratio_cdf(wide.alpha1, wide.alpha2, 1e-6);
    CHECK(std::abs(ratio_wide - 1.0) < 0.005);
}

TEST_CASE("relayed outage composes the hop closed forms as a union") {
    const SnrModel m = make_snr_model(testsup::symmetric_surrogate_budget(), 10);
    for (double g : {0.0, 0.05, 0.3, 1.0, 3.0}) {
        const double a = outage_hop_uplink(m, g);
        const double b = outage_hop_downlink(m, g);
        const double u = outage_cellular(m, g);
        CHECK(u == doctest::Approx(a + b - a * b).epsilon(1e-14));
        CHECK(u <= a + b + 1e-15);
        CHECK(u >= std::max(a, b) - 1e-15);
    }
    CHECK(outage_cellular(m, 0.0) == 0.0);

    // Union of the hop forms tracks the sum of the exact per-hop ratio laws
    // at small thresholds.
    for (double g : {0.01, 0.05, 0.1}) {
        const double exact_sum = exact_ratio_cdf(m.beta1, m.beta3, g) +
                                 exact_ratio_cdf(m.beta2, m.alpha2, g);
        CHECK(std::abs(outage_cellular(m, g) - exact_sum) / exact_sum < 0.05);
    }
}

TEST_CASE("outage grows with the threshold in the operating range") {
    const SnrModel m = make_snr_model(testsup::symmetric_surrogate_budget(), 10);
    std::vector<double> d2d, cell;
    for (int i = 0; i <= 20; ++i) {
        const double g = 0.15 * i;
        d2d.push_back(outage_d2d(m, g));
        cell.push_back(outage_cellular(m, g));
    }
    CHECK(testsup::strictly_increasing(d2d));
    CHECK(testsup::strictly_increasing(cell));
}

TEST_CASE("collapsed relayed outage variant keeps its printed fixed points") {
    const LinkBudget ones = all_ones_budget();
    CHECK(outage_cellular_reduced(ones, 1, 0.0) == 0.0);
    CHECK(outage_cellular_reduced(ones, 1, 1.0) ==
          doctest::Approx(0.0582995545918646798294636075115).epsilon(1e-14));
    CHECK_THROWS(outage_cellular_reduced(ones, 1, -1.0));

    // Rises over the unit threshold range on the balanced budget.
    std::vector<double> vals;
    for (int i = 0; i <= 10; ++i) vals.push_back(outage_cellular_reduced(ones, 1, 0.1 * i));
    CHECK(testsup::strictly_increasing(vals));

    // When interference dominates, the collapsed cross terms drive the raw
    // expression negative and the clamp floors it at zero — the reason the
    // union composition is the operative form.
    CHECK(outage_cellular_reduced(testsup::symmetric_surrogate_budget(), 10, 0.05) == 0.0);
}

TEST_CASE("instantaneous SINR follows the coherent-sum formula") {
    LinkBudget b = all_ones_budget();
    ChannelRealization r;
    r.h.assign(4, {1.0, 0.0});
    const std::vector<double> phases(4, 0.0);
    const double overlay = instantaneous_sinr(RisLink::d2d, r, phases, b, false, {0.0, 0.0});
    CHECK(overlay == doctest::Approx(16.0).epsilon(1e-14));

    // Zero interference field reduces underlay to overlay exactly.
    const double underlay_zero =
        instantaneous_sinr(RisLink::d2d, r, phases, b, true, {0.0, 0.0});
    CHECK(underlay_zero == overlay);

    // Unit interference field halves it: denominator 1 + 1.
    const double underlay_one =
        instantaneous_sinr(RisLink::d2d, r, phases, b, true, {1.0, 0.0});
    CHECK(underlay_one == doctest::Approx(8.0).epsilon(1e-14));

    // Hop selection picks the right power and losses.
    LinkBudget down = all_ones_budget();
    down.p_bs = 2.0;
    down.pl_bs_dr = 4.0;
    ChannelRealization one;
    one.h = {{1.0, 0.0}};
    const std::vector<double> phi = {0.0};
    CHECK(instantaneous_sinr(RisLink::downlink, one, phi, down, false, {0.0, 0.0}) ==
          doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS(instantaneous_sinr(RisLink::d2d, one, phases, b, false, {0.0, 0.0}));
}

TEST_CASE("underlay SINR mean matches the quadrature expectation") {
    // Fixed aligned signal of power 1, exponential interference power with
    // unit mean scaled by c, noise floor 0.5.
    const double noise = 0.5;
    const double c = 1.0;
    Rng rng = Rng::substream(43, "test.link.sinrmean", 0);
    double acc = 0.0;
    const int n = 200000;
    LinkBudget b = all_ones_budget();
    b.noise_power = noise;
    ChannelRealization sig;
    sig.h = {{1.0, 0.0}};
    const std::vector<double> phi = {0.0};
    for (int i = 0; i < n; ++i) {
        const std::complex<double> h = rng.complex_gaussian();
        acc += instantaneous_sinr(RisLink::d2d, sig, phi, b, true, h);
    }
    acc /= n;
    const double expected =
        integrate_half_line([&](double x) { return std::exp(-x) / (noise + c * x); }, 1e-9);
    CHECK(acc == doctest::Approx(expected).epsilon(0.015));
    // Convexity bound: averaging the reciprocal beats the reciprocal mean.
    CHECK(acc > 1.0 / (noise + c) - 0.02);
}

TEST_CASE("SINR laws expose coherent survival, density and sampling") {
    const SnrLaw exp_law = SnrLaw::exponential(2.0);
    CHECK(exp_law.survival(0.0) == 1.0);
    CHECK(exp_law.survival(2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(exp_law.survival(-1.0) == 1.0);
    CHECK(exp_law.density(-1.0) == 0.0);

    const SnrLaw ratio = SnrLaw::ratio(2.0, 3.0);
    CHECK(ratio.cdf(1.0) == doctest::Approx(exact_ratio_cdf(2.0, 3.0, 1.0)).epsilon(1e-14));
    CHECK(ratio.survival(1.5) == doctest::Approx(3.0 / 6.0).epsilon(1e-14));

    const SnrLaw mr = SnrLaw::min_ratio(2.0, 3.0, 1.0, 4.0);
    CHECK(mr.survival(1.0) == doctest::Approx((3.0 / 5.0) * (4.0 / 5.0)).epsilon(1e-14));

    // Densities carry unit mass.
    for (const SnrLaw* law : {&exp_law, &ratio, &mr}) {
        const double mass =
            integrate_half_line([&](double g) { return law->density(g); }, 1e-9);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-7));
    }

    // Sampled CDF agrees with the closed form at a probe point.
    Rng rng = Rng::substream(44, "test.link.lawsample", 0);
    const int n = 200000;
    int below = 0;
    for (int i = 0; i < n; ++i)
        if (mr.sample(rng) <= 1.0) ++below;
    const double p = mr.cdf(1.0);
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(static_cast<double>(below) / n - p) < 3.5 * sigma);

    CHECK_THROWS(SnrLaw::exponential(0.0));
    CHECK_THROWS(SnrLaw::ratio(0.0, 1.0));
    CHECK_THROWS(SnrLaw::min_ratio(1.0, 1.0, 1.0, 0.0));
}

TEST_CASE("operating-mode laws pick the right family and parameters") {
    const SnrModel m = make_snr_model(testsup::symmetric_surrogate_budget(), 10);

    const SnrLaw over_d = d2d_law(m, false);
    CHECK(over_d.kind() == SnrLaw::Kind::exponential);
    CHECK(over_d.survival(m.kappa_d) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));

    const SnrLaw under_d = d2d_law(m, true);
    CHECK(under_d.kind() == SnrLaw::Kind::ratio);
    CHECK(under_d.cdf(0.7) ==
          doctest::Approx(exact_ratio_cdf(m.alpha1, m.alpha2, 0.7)).epsilon(1e-13));

    const SnrLaw over_c = cellular_law(m, false);
    CHECK(over_c.kind() == SnrLaw::Kind::exponential);
    CHECK(over_c.survival(m.kappa_c) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));

    const SnrLaw under_c = cellular_law(m, true);
    CHECK(under_c.kind() == SnrLaw::Kind::min_ratio);
    const double s1 = m.beta3 / (m.beta3 + m.beta1 * 0.4);
    const double s2 = m.alpha2 / (m.alpha2 + m.beta2 * 0.4);
    CHECK(under_c.survival(0.4) == doctest::Approx(s1 * s2).epsilon(1e-13));
}
