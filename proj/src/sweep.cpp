#include "risec/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "risec/harq.hpp"
#include "risec/markov_ec.hpp"
#include "risec/oracle.hpp"
#include "risec/rng.hpp"

namespace risec {

namespace {

std::string fmt(double v) {
    if (v == 0.0) v = 0.0; // canonicalize the sign of zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string hex16(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    v.front() = lo;
    v.back() = hi;
    return v;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

std::uint64_t derive_seed(std::uint64_t seed, const std::string& label) {
    return Rng::mix64(seed ^ Rng::fnv1a64(label));
}

McConfig oracle_mc(const ExperimentConfig& cfg, const std::string& label) {
    McConfig m;
    m.seed = derive_seed(cfg.seed, label);
    m.trials = cfg.oracle_trials;
    m.workers = 1; // rows already run in parallel
    return m;
}

/// Underlay outage pair at the given threshold, linearized closed forms or
/// exact law CDFs depending on the flag.
struct OutagePair {
    double d = 0.0;
    double c = 0.0;
};

OutagePair underlay_outage(const Scenario& s, double gamma_t, bool exact) {
    if (exact)
        return {d2d_law(s.snr, true).cdf(gamma_t), cellular_law(s.snr, true).cdf(gamma_t)};
    return {outage_d2d(s.snr, gamma_t), outage_cellular(s.snr, gamma_t)};
}

TransitionVector fixed_transitions(const Scenario& s, double r_t, double bandwidth, bool underlay,
                                   bool exact) {
    const double gamma_t = threshold_snr(r_t, bandwidth);
    if (underlay) {
        const OutagePair o = underlay_outage(s, gamma_t, exact);
        return transitions_fixed_rate_underlay(s.sel, o.d, o.c);
    }
    return transitions_fixed_rate_overlay(s.sel, s.snr.kappa_d, s.snr.kappa_c, gamma_t);
}

/// Physical fixed-rate service: pick the mode by the selection
/// probabilities, draw the mode's SINR, transmit r_t when it clears the
/// threshold. Independent of the transition-vector composition.
std::function<double(Rng&)> physical_fixed_service(const Scenario& s, bool underlay, double r_t,
                                                   double gamma_t) {
    const SnrLaw ld = d2d_law(s.snr, underlay);
    const SnrLaw lc = cellular_law(s.snr, underlay);
    const double sel_d = s.sel.d2d;
    return [ld, lc, sel_d, r_t, gamma_t](Rng& rng) {
        const bool device = rng.uniform() < sel_d;
        const double g = device ? ld.sample(rng) : lc.sample(rng);
        return g >= gamma_t ? r_t : 0.0;
    };
}

/// Rate-adapted service: state from the four-state law, then the decided
/// link's instantaneous rate (state s2 is silent).
std::function<double(Rng&)> csit_service(const TransitionVector& p, const SnrLaw& ld,
                                         const SnrLaw& lc, double bandwidth) {
    return [p, ld, lc, bandwidth](Rng& rng) {
        const double u = rng.uniform();
        if (u < p.p1 + p.p2) {
            if (u >= p.p1) return 0.0;
            return bandwidth * std::log2(1.0 + ld.sample(rng));
        }
        if (u < p.p1 + p.p2 + p.p3) return bandwidth * std::log2(1.0 + ld.sample(rng));
        return bandwidth * std::log2(1.0 + lc.sample(rng));
    };
}

void for_rows(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t count = std::min(workers, n);
    pool.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

SweepTable sweep_rate(const ExperimentConfig& cfg) {
    const Scenario s = build_scenario(cfg);
    SweepTable t;
    t.kind = SweepKind::rate;
    t.columns = {"r_t", "ec_overlay", "ec_underlay", "p_on_overlay", "p_on_underlay"};
    if (cfg.with_oracle) {
        t.columns.insert(t.columns.end(), {"oracle_ec_overlay", "delta_ec_overlay",
                                           "oracle_ec_underlay", "delta_ec_underlay"});
    }
    const std::vector<double> rates = linspace(cfg.rate_lo, cfg.rate_hi, cfg.rate_steps);
    t.rows.assign(rates.size(), {});

    for_rows(rates.size(), cfg.workers, [&](std::size_t i) {
        const double r = rates[i];
        const double gamma_t = threshold_snr(r, cfg.bandwidth);
        const TransitionVector p_over =
            transitions_fixed_rate_overlay(s.sel, s.snr.kappa_d, s.snr.kappa_c, gamma_t);
        const OutagePair o = underlay_outage(s, gamma_t, cfg.exact_outage);
        const TransitionVector p_under = transitions_fixed_rate_underlay(s.sel, o.d, o.c);
        std::vector<double> row{r, ec_fixed_rate(p_over, r, cfg.phi),
                                ec_fixed_rate(p_under, r, cfg.phi), p_over.on(), p_under.on()};
        if (cfg.with_oracle) {
            const std::string tag = "sweep.rate." + std::to_string(i);
            const McEstimate over = mc_effective_capacity(
                physical_fixed_service(s, false, r, gamma_t), cfg.phi, 1,
                oracle_mc(cfg, tag + ".overlay"));
            const McEstimate under = mc_effective_capacity(
                physical_fixed_service(s, true, r, gamma_t), cfg.phi, 1,
                oracle_mc(cfg, tag + ".underlay"));
            row.insert(row.end(),
                       {over.value, row[1] - over.value, under.value, row[2] - under.value});
        }
        t.rows[i] = std::move(row);
    });

    for (const bool underlay : {false, true}) {
        const std::string prefix = underlay ? "underlay_" : "overlay_";
        const TransitionsOfRate p_of_rate = [&s, &cfg, underlay](double r) {
            return fixed_transitions(s, r, cfg.bandwidth, underlay, cfg.exact_outage);
        };
        const RateSearch gd = optimal_rate_gd(p_of_rate, cfg.phi, cfg.rate_hi);
        const RateSearch grid = optimal_rate_grid(p_of_rate, cfg.phi, cfg.rate_hi);
        t.stats[prefix + "r_opt"] = gd.r_opt;
        t.stats[prefix + "ec_opt"] = gd.ec_opt;
        t.stats[prefix + "unimodal"] = gd.unimodal ? 1.0 : 0.0;
        t.stats[prefix + "r_opt_grid"] = grid.r_opt;
        t.stats[prefix + "ec_opt_grid"] = grid.ec_opt;
    }
    t.notes["underlay_outage"] = cfg.exact_outage ? "exact" : "linearized";
    return t;
}

SweepTable sweep_qos(const ExperimentConfig& cfg) {
    SweepTable t;
    t.kind = SweepKind::qos;
    const std::size_t sizes = cfg.qos_n_z.size();
    std::vector<Scenario> scen;
    std::vector<int> totals;
    scen.reserve(sizes);
    for (std::size_t k = 0; k < sizes; ++k) {
        RisArray ris{cfg.qos_n_z[k], cfg.qos_n_y[k], cfg.ris.d_ze, cfg.ris.d_ye};
        scen.push_back(build_scenario(cfg, ris));
        totals.push_back(ris.total());
    }
    auto col_tag = [&](std::size_t k) {
        std::string tag = "n" + std::to_string(totals[k]);
        for (std::size_t j = 0; j < k; ++j)
            if (totals[j] == totals[k]) tag += "_" + std::to_string(k);
        return tag;
    };

    t.columns = {"phi"};
    for (std::size_t k = 0; k < sizes; ++k) {
        t.columns.push_back("ec_fixed_" + col_tag(k));
        t.columns.push_back("ec_csit_" + col_tag(k));
        if (cfg.with_oracle) {
            t.columns.push_back("oracle_fixed_" + col_tag(k));
            t.columns.push_back("delta_fixed_" + col_tag(k));
            t.columns.push_back("oracle_csit_" + col_tag(k));
            t.columns.push_back("delta_csit_" + col_tag(k));
        }
    }

    const std::vector<double> phis = logspace(cfg.qos_lo, cfg.qos_hi, cfg.qos_steps);
    const double gamma_t = threshold_snr(cfg.r_t, cfg.bandwidth);
    t.rows.assign(phis.size(), {});

    for_rows(phis.size(), cfg.workers, [&](std::size_t i) {
        const double phi = phis[i];
        std::vector<double> row{phi};
        for (std::size_t k = 0; k < sizes; ++k) {
            const Scenario& sc = scen[k];
            const TransitionVector p_fix =
                transitions_fixed_rate_overlay(sc.sel, sc.snr.kappa_d, sc.snr.kappa_c, gamma_t);
            const TransitionVector p_ad = transitions_csit(sc.mode, sc.det);
            const SnrLaw ld = d2d_law(sc.snr, false);
            const SnrLaw lc = cellular_law(sc.snr, false);
            const double ec_fix = ec_fixed_rate(p_fix, cfg.r_t, phi);
            const double ec_ad = ec_csit(p_ad, phi, ld, lc, cfg.bandwidth);
            row.push_back(ec_fix);
            row.push_back(ec_ad);
            if (cfg.with_oracle) {
                const std::string tag =
                    "sweep.qos." + std::to_string(i) + "." + std::to_string(k);
                const McEstimate fix = mc_effective_capacity(
                    physical_fixed_service(sc, false, cfg.r_t, gamma_t), phi, 1,
                    oracle_mc(cfg, tag + ".fixed"));
                const McEstimate ad =
                    mc_effective_capacity(csit_service(p_ad, ld, lc, cfg.bandwidth), phi, 1,
                                          oracle_mc(cfg, tag + ".csit"));
                row.push_back(fix.value);
                row.push_back(ec_fix - fix.value);
                row.push_back(ad.value);
                row.push_back(ec_ad - ad.value);
            }
        }
        t.rows[i] = std::move(row);
    });

    if (sizes >= 2) {
        const std::size_t stride = cfg.with_oracle ? 6 : 2;
        const std::size_t first_fix = 1;
        const std::size_t last_fix = 1 + (sizes - 1) * stride;
        auto gain = [&](const std::vector<double>& row, std::size_t offset) {
            const double lo_v = row[first_fix + offset];
            const double hi_v = row[last_fix + offset];
            return lo_v > 0.0 ? hi_v / lo_v : 0.0;
        };
        t.stats["gain_fixed_at_phi_lo"] = gain(t.rows.front(), 0);
        t.stats["gain_fixed_at_phi_hi"] = gain(t.rows.back(), 0);
        t.stats["gain_csit_at_phi_lo"] = gain(t.rows.front(), 1);
        t.stats["gain_csit_at_phi_hi"] = gain(t.rows.back(), 1);
    }
    t.notes["spacing"] = "log";
    return t;
}

SweepTable sweep_harq(const ExperimentConfig& cfg) {
    const Scenario s = build_scenario(cfg);
    SweepTable t;
    t.kind = SweepKind::harq;
    t.columns = {"x", "ec", "spectral_radius", "stable", "corrected", "ec_x1"};
    if (cfg.with_oracle)
        t.columns.insert(t.columns.end(), {"oracle_radius", "delta_radius"});

    HarqModel base;
    base.x_limit = cfg.harq_x_max;
    base.block_length = cfg.harq_block_length;
    base.r_t = cfg.r_t;
    base.phi = cfg.phi;
    base.kappa_d = s.snr.kappa_d;
    base.kappa_c = s.snr.kappa_c;
    base.p = fixed_transitions(s, cfg.r_t, cfg.bandwidth, cfg.harq_underlay, cfg.exact_outage);
    base.log_base = cfg.harq_log_base;
    base.seed = cfg.seed;
    base.trials = cfg.harq_trials;

    const ExpectedErrors errors = expected_error_sequences(base);
    const HarqEcResult first = ec_harq_from_errors(errors, 1, base.p, base.r_t, base.phi);

    t.rows.assign(cfg.harq_x_max, {});
    for_rows(cfg.harq_x_max, cfg.workers, [&](std::size_t i) {
        const std::size_t x = i + 1;
        const HarqEcResult res = ec_harq_from_errors(errors, x, base.p, base.r_t, base.phi);
        std::vector<double> row{static_cast<double>(x),   res.ec,
                                res.spectral_radius,      res.stable ? 1.0 : 0.0,
                                res.corrected ? 1.0 : 0.0, first.ec};
        if (cfg.with_oracle) {
            const double ref = polynomial_max_root(res.entries);
            row.push_back(ref);
            row.push_back(res.spectral_radius - ref);
        }
        t.rows[i] = std::move(row);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        if (t.rows[i][1] > t.rows[best][1]) best = i;
    t.stats["x_best"] = t.rows[best][0];
    t.stats["ec_best"] = t.rows[best][1];
    t.stats["ec_x1"] = first.ec;
    t.stats["radius_x1"] = first.spectral_radius;
    t.notes["regime"] = cfg.harq_underlay ? "underlay" : "overlay";
    t.notes["log_base"] = cfg.harq_log_base == HarqLogBase::two ? "2" : "e";
    return t;
}

SweepTable sweep_sigma(const ExperimentConfig& cfg) {
    SweepTable t;
    t.kind = SweepKind::sigma;
    t.columns = {"sigma_pl",       "ec_fixed_overlay", "ec_fixed_underlay",
                 "ec_csit_overlay", "ec_csit_underlay", "sel_d2d"};
    if (cfg.with_oracle) {
        t.columns.insert(t.columns.end(),
                         {"oracle_fixed_overlay", "delta_fixed_overlay", "oracle_fixed_underlay",
                          "delta_fixed_underlay", "oracle_csit_overlay", "delta_csit_overlay",
                          "oracle_csit_underlay", "delta_csit_underlay"});
    }
    const std::vector<double> sigmas = linspace(cfg.sigma_lo, cfg.sigma_hi, cfg.sigma_steps);
    const double gamma_t = threshold_snr(cfg.r_t, cfg.bandwidth);
    t.rows.assign(sigmas.size(), {});

    for_rows(sigmas.size(), cfg.workers, [&](std::size_t i) {
        ExperimentConfig local = cfg;
        local.sigma_pl = sigmas[i];
        const Scenario sc = build_scenario(local);
        const TransitionVector p_over =
            transitions_fixed_rate_overlay(sc.sel, sc.snr.kappa_d, sc.snr.kappa_c, gamma_t);
        const OutagePair o = underlay_outage(sc, gamma_t, cfg.exact_outage);
        const TransitionVector p_under = transitions_fixed_rate_underlay(sc.sel, o.d, o.c);
        const TransitionVector p_ad = transitions_csit(sc.mode, sc.det);
        const SnrLaw ld_over = d2d_law(sc.snr, false);
        const SnrLaw lc_over = cellular_law(sc.snr, false);
        const SnrLaw ld_under = d2d_law(sc.snr, true);
        const SnrLaw lc_under = cellular_law(sc.snr, true);
        std::vector<double> row{sigmas[i],
                                ec_fixed_rate(p_over, cfg.r_t, cfg.phi),
                                ec_fixed_rate(p_under, cfg.r_t, cfg.phi),
                                ec_csit(p_ad, cfg.phi, ld_over, lc_over, cfg.bandwidth),
                                ec_csit(p_ad, cfg.phi, ld_under, lc_under, cfg.bandwidth),
                                sc.sel.d2d};
        if (cfg.with_oracle) {
            const std::string tag = "sweep.sigma." + std::to_string(i);
            const McEstimate fo = mc_effective_capacity(
                physical_fixed_service(sc, false, cfg.r_t, gamma_t), cfg.phi, 1,
                oracle_mc(cfg, tag + ".fixed.overlay"));
            const McEstimate fu = mc_effective_capacity(
                physical_fixed_service(sc, true, cfg.r_t, gamma_t), cfg.phi, 1,
                oracle_mc(cfg, tag + ".fixed.underlay"));
            const McEstimate co =
                mc_effective_capacity(csit_service(p_ad, ld_over, lc_over, cfg.bandwidth),
                                      cfg.phi, 1, oracle_mc(cfg, tag + ".csit.overlay"));
            const McEstimate cu =
                mc_effective_capacity(csit_service(p_ad, ld_under, lc_under, cfg.bandwidth),
                                      cfg.phi, 1, oracle_mc(cfg, tag + ".csit.underlay"));
            row.insert(row.end(), {fo.value, row[1] - fo.value, fu.value, row[2] - fu.value,
                                   co.value, row[3] - co.value, cu.value, row[4] - cu.value});
        }
        t.rows[i] = std::move(row);
    });
    t.notes["underlay_outage"] = cfg.exact_outage ? "exact" : "linearized";
    return t;
}

SweepTable sweep_pon(const ExperimentConfig& cfg) {
    const Scenario s = build_scenario(cfg);
    SweepTable t;
    t.kind = SweepKind::pon;
    t.columns = {"p_on", "ec_fixed"};
    if (cfg.with_oracle) t.columns.insert(t.columns.end(), {"oracle_ec", "delta_ec"});
    const std::vector<double> shares = linspace(0.0, 1.0, cfg.pon_steps);
    t.rows.assign(shares.size(), {});

    for_rows(shares.size(), cfg.workers, [&](std::size_t i) {
        const double share = shares[i];
        TransitionVector p;
        p.p1 = share * s.sel.d2d;
        p.p2 = (1.0 - share) * s.sel.d2d;
        p.p3 = share * s.sel.cellular;
        p.p4 = (1.0 - share) * s.sel.cellular;
        const double ec = ec_fixed_rate(p, cfg.r_t, cfg.phi);
        std::vector<double> row{p.on(), ec};
        if (cfg.with_oracle) {
            const double r_t = cfg.r_t;
            const double on = p.on();
            const McEstimate est = mc_effective_capacity(
                [on, r_t](Rng& rng) { return rng.uniform() < on ? r_t : 0.0; }, cfg.phi, 1,
                oracle_mc(cfg, "sweep.pon." + std::to_string(i)));
            row.push_back(est.value);
            row.push_back(ec - est.value);
        }
        t.rows[i] = std::move(row);
    });
    return t;
}

} // namespace

SweepTable run_sweep(const ExperimentConfig& cfg) {
    const std::vector<std::string> problems = validate_config(cfg);
    if (!problems.empty()) {
        std::string msg = "invalid configuration:";
        for (const std::string& p : problems) msg += "\n  - " + p;
        throw ConfigError(msg);
    }
    SweepTable t;
    switch (cfg.sweep_kind) {
    case SweepKind::rate: t = sweep_rate(cfg); break;
    case SweepKind::qos: t = sweep_qos(cfg); break;
    case SweepKind::harq: t = sweep_harq(cfg); break;
    case SweepKind::sigma: t = sweep_sigma(cfg); break;
    case SweepKind::pon: t = sweep_pon(cfg); break;
    }
    t.config_hash = config_hash(cfg);
    t.seed = cfg.seed;
    return t;
}

std::string table_csv(const SweepTable& table) {
    std::string out = "# kind=" + sweep_kind_name(table.kind) + " hash=" + hex16(table.config_hash) +
                      " seed=" + std::to_string(table.seed) + "\n";
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (j) out += ",";
        out += table.columns[j];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ",";
            out += fmt(row[j]);
        }
        out += "\n";
    }
    return out;
}

SweepTable parse_table_csv(const std::string& text) {
    SweepTable t;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool have_header = false;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::stringstream ss(line.substr(1));
            std::string token;
            while (ss >> token) {
                const std::size_t eq = token.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = token.substr(0, eq);
                const std::string value = token.substr(eq + 1);
                if (key == "kind") t.kind = sweep_kind_from_name(value);
                else if (key == "hash") t.config_hash = std::strtoull(value.c_str(), nullptr, 16);
                else if (key == "seed") t.seed = std::strtoull(value.c_str(), nullptr, 10);
            }
            continue;
        }
        std::vector<std::string> fields;
        std::size_t fpos = 0;
        while (true) {
            const std::size_t comma = line.find(',', fpos);
            fields.push_back(line.substr(fpos, comma == std::string::npos ? std::string::npos
                                                                          : comma - fpos));
            if (comma == std::string::npos) break;
            fpos = comma + 1;
        }
        if (!have_header) {
            t.columns = fields;
            have_header = true;
            continue;
        }
        if (fields.size() != t.columns.size())
            throw ConfigError("csv line " + std::to_string(line_no) + " has " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(t.columns.size()));
        std::vector<double> row(fields.size());
        for (std::size_t j = 0; j < fields.size(); ++j) {
            const char* begin = fields[j].c_str();
            char* endp = nullptr;
            row[j] = std::strtod(begin, &endp);
            if (endp == begin)
                throw ConfigError("csv line " + std::to_string(line_no) + ": field '" + fields[j] +
                                  "' is not a number");
        }
        t.rows.push_back(std::move(row));
    }
    if (!have_header) throw ConfigError("csv input has no header row");
    return t;
}

std::string table_meta_json(const SweepTable& table) {
    nlohmann::json j;
    j["kind"] = sweep_kind_name(table.kind);
    j["config_hash"] = hex16(table.config_hash);
    j["seed"] = table.seed;
    j["columns"] = table.columns;
    j["row_count"] = table.rows.size();
    j["stats"] = table.stats;
    j["notes"] = table.notes;
    return j.dump(2) + "\n";
}

namespace {

Check against(const std::string& name, double value, double expected, double tol,
              const std::string& note) {
    Check c;
    c.name = name;
    c.value = value;
    c.expected = expected;
    c.tolerance = tol;
    c.note = note;
    c.pass = std::abs(value - expected) <= tol;
    return c;
}

Check expect_throw(const std::string& name, const std::function<void()>& call,
                   const std::string& note) {
    Check c;
    c.name = name;
    c.expected = 1.0;
    c.tolerance = 0.0;
    c.note = note;
    try {
        call();
        c.value = 0.0;
        c.pass = false;
    } catch (const std::exception&) {
        c.value = 1.0;
        c.pass = true;
    }
    return c;
}

} // namespace

ValidationReport run_validation(const ExperimentConfig& cfg) {
    const std::vector<std::string> problems = validate_config(cfg);
    if (!problems.empty()) {
        std::string msg = "invalid configuration:";
        for (const std::string& p : problems) msg += "\n  - " + p;
        throw ConfigError(msg);
    }
    ValidationReport rep;
    const Scenario s = build_scenario(cfg);
    const double gamma_t = threshold_snr(cfg.r_t, cfg.bandwidth);
    auto mc_for = [&cfg](const std::string& label, std::size_t factor = 1) {
        McConfig m;
        m.seed = derive_seed(cfg.seed, "validate." + label);
        m.trials = cfg.oracle_trials * factor;
        m.workers = cfg.workers;
        return m;
    };

    { // outage of each mode's exact law against empirical frequency
        const SnrLaw ld = d2d_law(s.snr, true);
        const McEstimate est = mc_outage(ld, gamma_t, mc_for("outage.device"));
        rep.checks.push_back(against("device_outage_law_vs_mc", est.value, ld.cdf(gamma_t),
                                     est.half_width(3.0), "underlay ratio law, 3 sigma"));
        const SnrLaw lc = cellular_law(s.snr, true);
        const McEstimate estc = mc_outage(lc, gamma_t, mc_for("outage.cellular"));
        rep.checks.push_back(against("cellular_outage_law_vs_mc", estc.value, lc.cdf(gamma_t),
                                     estc.half_width(3.0), "underlay two-hop law, 3 sigma"));
    }

    { // fixed-rate effective capacity, overlay: closed form vs physical draws
        const TransitionVector p =
            transitions_fixed_rate_overlay(s.sel, s.snr.kappa_d, s.snr.kappa_c, gamma_t);
        const double closed = ec_fixed_rate(p, cfg.r_t, cfg.phi);
        const McEstimate est =
            mc_effective_capacity(physical_fixed_service(s, false, cfg.r_t, gamma_t), cfg.phi, 1,
                                  mc_for("ec.fixed.overlay"));
        rep.checks.push_back(against("fixed_rate_ec_overlay_vs_mc", est.value, closed,
                                     est.half_width(3.0), "3 sigma"));
    }

    { // fixed-rate effective capacity, underlay, exact outage laws
        const OutagePair o = underlay_outage(s, gamma_t, true);
        const TransitionVector p = transitions_fixed_rate_underlay(s.sel, o.d, o.c);
        const double closed = ec_fixed_rate(p, cfg.r_t, cfg.phi);
        const McEstimate est =
            mc_effective_capacity(physical_fixed_service(s, true, cfg.r_t, gamma_t), cfg.phi, 1,
                                  mc_for("ec.fixed.underlay"));
        rep.checks.push_back(against("fixed_rate_ec_underlay_vs_mc", est.value, closed,
                                     est.half_width(3.0), "exact outage laws, 3 sigma"));
    }

    { // rate-adapted effective capacity against state-wise capacity draws
        const TransitionVector p = transitions_csit(s.mode, s.det);
        const SnrLaw ld = d2d_law(s.snr, true);
        const SnrLaw lc = cellular_law(s.snr, true);
        const double closed = ec_csit(p, cfg.phi, ld, lc, cfg.bandwidth);
        const McEstimate est = mc_effective_capacity(csit_service(p, ld, lc, cfg.bandwidth),
                                                     cfg.phi, 1, mc_for("ec.csit.underlay"));
        rep.checks.push_back(against("csit_ec_underlay_vs_mc", est.value, closed,
                                     est.half_width(3.0), "quadrature transform, 3 sigma"));
    }

    { // decision error probabilities against simulated tests
        const auto [e1, e2] = mc_mode_error(s.mode, mc_for("mode"));
        rep.checks.push_back(against("mode_error_1_vs_mc", e1.value, s.det.p_e1,
                                     e1.half_width(3.0), "3 sigma"));
        rep.checks.push_back(against("mode_error_2_vs_mc", e2.value, s.det.p_e2,
                                     e2.half_width(3.0), "3 sigma"));
    }

    { // divergence closed form against quadrature
        const double closed = bht_kld(s.mode);
        const double numeric = numeric_kld(s.mode);
        rep.checks.push_back(against("kld_closed_vs_quadrature", numeric, closed,
                                     1e-6 * std::max(closed, 1.0), "relative 1e-6"));
    }

    { // harmonic composition identity of the two-hop mean SNR
        const double lhs = s.snr.kappa_c * (s.snr.kappa_ul + s.snr.kappa_dl);
        const double rhs = s.snr.kappa_ul * s.snr.kappa_dl;
        rep.checks.push_back(
            against("harmonic_identity", lhs, rhs, 1e-12 * rhs, "relative 1e-12"));
    }

    { // one-shot retransmission chain must reduce to the fixed-rate form
        const TransitionVector p =
            fixed_transitions(s, cfg.r_t, cfg.bandwidth, cfg.harq_underlay, cfg.exact_outage);
        HarqModel m;
        m.x_limit = 1;
        m.block_length = cfg.harq_block_length;
        m.r_t = cfg.r_t;
        m.phi = cfg.phi;
        m.kappa_d = s.snr.kappa_d;
        m.kappa_c = s.snr.kappa_c;
        m.p = p;
        m.log_base = cfg.harq_log_base;
        m.seed = cfg.seed;
        m.trials = cfg.harq_trials;
        const double direct = ec_fixed_rate(p, cfg.r_t, cfg.phi);
        const HarqEcResult res = ec_harq(m);
        rep.checks.push_back(against("harq_x1_equals_fixed_rate", res.ec, direct,
                                     1e-12 * std::max(std::abs(direct), 1.0), "relative 1e-12"));

        // departure distribution carries unit mass exactly
        HarqModel big = m;
        big.x_limit = cfg.harq_x_max;
        const ExpectedErrors errors = expected_error_sequences(big);
        const DeparturePmf pmf = departure_pmf_from_errors(errors, big.x_limit);
        double dev = 0.0;
        for (const auto* v : {&pmf.d2d, &pmf.cellular}) {
            double sum = 0.0;
            for (double x : *v) sum += x;
            dev = std::max(dev, std::abs(sum - 1.0));
        }
        rep.checks.push_back(
            against("departure_pmf_unit_mass", dev, 0.0, 0.0, "exact in floating point"));

        // companion spectral radius against the independent polynomial root
        const HarqEcResult full =
            ec_harq_from_errors(errors, big.x_limit, p, cfg.r_t, cfg.phi);
        const double ref = polynomial_max_root(full.entries);
        rep.checks.push_back(against("companion_radius_vs_polynomial", full.spectral_radius, ref,
                                     1e-9 * std::max(ref, 1e-12), "relative 1e-9"));
    }

    { // rank-one eigenvalue closed form against a dense power iteration
        const TransitionVector p =
            transitions_fixed_rate_overlay(s.sel, s.snr.kappa_d, s.snr.kappa_c, gamma_t);
        const double mgf_on = std::exp(-cfg.r_t * cfg.phi);
        const std::array<double, 4> phi_diag{mgf_on, 1.0, mgf_on, 1.0};
        const double closed = spectral_radius_rank1(p, phi_diag);
        const std::array<double, 4> pv{p.p1, p.p2, p.p3, p.p4};
        std::vector<double> dense(16);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) dense[i * 4 + j] = pv[j] * phi_diag[j];
        const double ref = spectral_radius_dense(dense, 4);
        rep.checks.push_back(against("rank1_radius_vs_dense", closed, ref,
                                     1e-12 * std::max(ref, 1e-12), "relative 1e-12"));
    }

    rep.checks.push_back(expect_throw(
        "corrupted_transitions_rejected",
        [&] {
            TransitionVector bad{0.4, 0.4, 0.3, 0.1};
            ec_fixed_rate(bad, cfg.r_t, cfg.phi);
        },
        "state law with mass 1.2 must be refused"));
    rep.checks.push_back(expect_throw(
        "negative_companion_entry_rejected",
        [&] { spectral_radius_companion({0.5, -0.1}); },
        "negative first-row entry must be refused"));

    return rep;
}

std::string report_json(const ValidationReport& report) {
    nlohmann::json j;
    j["all_pass"] = report.all_pass();
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : report.checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["value"] = c.value;
        jc["expected"] = c.expected;
        jc["tolerance"] = c.tolerance;
        jc["note"] = c.note;
        checks.push_back(jc);
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw ConfigError("cannot create directory '" + p.parent_path().string() + "'");
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ConfigError("write to '" + path + "' failed");
}

} // namespace risec
