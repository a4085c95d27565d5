#include "risec/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "risec/rng.hpp"

namespace risec {

SweepKind sweep_kind_from_name(const std::string& name) {
    if (name == "rate") return SweepKind::rate;
    if (name == "qos") return SweepKind::qos;
    if (name == "harq") return SweepKind::harq;
    if (name == "sigma") return SweepKind::sigma;
    if (name == "pon") return SweepKind::pon;
    throw ConfigError("unknown sweep kind '" + name + "' (rate, qos, harq, sigma, pon)");
}

std::string sweep_kind_name(SweepKind kind) {
    switch (kind) {
    case SweepKind::rate: return "rate";
    case SweepKind::qos: return "qos";
    case SweepKind::harq: return "harq";
    case SweepKind::sigma: return "sigma";
    case SweepKind::pon: return "pon";
    }
    return "rate";
}

ExperimentConfig desk_config() {
    return ExperimentConfig{};
}

namespace {

struct TomlValue {
    enum class Kind { number, text, boolean, array } kind = Kind::number;
    double number = 0.0;
    std::string text;
    bool boolean = false;
    std::vector<double> array;
    int line = 0;
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& s, double& out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size() && !s.empty();
}

TomlValue parse_value(const std::string& raw, int line, const std::string& origin) {
    TomlValue v;
    v.line = line;
    const std::string s = trim(raw);
    if (s.empty()) throw ConfigError(origin + ":" + std::to_string(line) + ": missing value");
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"')
            throw ConfigError(origin + ":" + std::to_string(line) + ": unterminated string");
        v.kind = TomlValue::Kind::text;
        v.text = s.substr(1, s.size() - 2);
        return v;
    }
    if (s == "true" || s == "false") {
        v.kind = TomlValue::Kind::boolean;
        v.boolean = s == "true";
        return v;
    }
    if (s.front() == '[') {
        if (s.back() != ']')
            throw ConfigError(origin + ":" + std::to_string(line) + ": unterminated array");
        v.kind = TomlValue::Kind::array;
        std::string body = s.substr(1, s.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty())
                throw ConfigError(origin + ":" + std::to_string(line) + ": empty array element");
            double x = 0.0;
            if (!parse_number(item, x))
                throw ConfigError(origin + ":" + std::to_string(line) + ": array element '" + item +
                                  "' is not a number");
            v.array.push_back(x);
        }
        return v;
    }
    if (!parse_number(s, v.number))
        throw ConfigError(origin + ":" + std::to_string(line) + ": cannot parse value '" + s + "'");
    v.kind = TomlValue::Kind::number;
    return v;
}

std::map<std::string, TomlValue> parse_toml(const std::string& text, const std::string& origin) {
    std::map<std::string, TomlValue> out;
    std::string section;
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        std::string s = raw;
        bool in_string = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '"') in_string = !in_string;
            if (s[i] == '#' && !in_string) {
                s = s.substr(0, i);
                break;
            }
        }
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3)
                throw ConfigError(origin + ":" + std::to_string(line) + ": malformed section header");
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(line) + ": empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        if (out.count(full))
            throw ConfigError(origin + ":" + std::to_string(line) + ": duplicate key '" + full + "'");
        out[full] = parse_value(s.substr(eq + 1), line, origin);
    }
    return out;
}

class Applier {
public:
    Applier(std::map<std::string, TomlValue>&& values, const std::string& origin)
        : values_(std::move(values)), origin_(origin) {}

    void number(const std::string& key, double& field) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        require(it->second, TomlValue::Kind::number, key);
        field = it->second.number;
        values_.erase(it);
    }

    void integer(const std::string& key, std::size_t& field) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        require(it->second, TomlValue::Kind::number, key);
        const double x = it->second.number;
        if (x < 0.0 || x != std::floor(x))
            throw ConfigError(origin_ + ": key '" + key + "' must be a nonnegative integer");
        field = static_cast<std::size_t>(x);
        values_.erase(it);
    }

    void integer(const std::string& key, int& field) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        require(it->second, TomlValue::Kind::number, key);
        const double x = it->second.number;
        if (x != std::floor(x))
            throw ConfigError(origin_ + ": key '" + key + "' must be an integer");
        field = static_cast<int>(x);
        values_.erase(it);
    }

    void integer64(const std::string& key, std::uint64_t& field) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        require(it->second, TomlValue::Kind::number, key);
        const double x = it->second.number;
        if (x < 0.0 || x != std::floor(x))
            throw ConfigError(origin_ + ": key '" + key + "' must be a nonnegative integer");
        field = static_cast<std::uint64_t>(x);
        values_.erase(it);
    }

    void boolean(const std::string& key, bool& field) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        require(it->second, TomlValue::Kind::boolean, key);
        field = it->second.boolean;
        values_.erase(it);
    }

    void text(const std::string& key, std::string& field) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        require(it->second, TomlValue::Kind::text, key);
        field = it->second.text;
        values_.erase(it);
    }

    void point(const std::string& key, Point3& field) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        require(it->second, TomlValue::Kind::array, key);
        if (it->second.array.size() != 3)
            throw ConfigError(origin_ + ": key '" + key + "' needs exactly 3 coordinates");
        field = {it->second.array[0], it->second.array[1], it->second.array[2]};
        values_.erase(it);
    }

    void int_list(const std::string& key, std::vector<int>& field) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        require(it->second, TomlValue::Kind::array, key);
        field.clear();
        for (double x : it->second.array) {
            if (x != std::floor(x))
                throw ConfigError(origin_ + ": key '" + key + "' must hold integers");
            field.push_back(static_cast<int>(x));
        }
        values_.erase(it);
    }

    void finish() const {
        if (values_.empty()) return;
        std::string names;
        for (const auto& [k, v] : values_) {
            if (!names.empty()) names += ", ";
            names += "'" + k + "' (line " + std::to_string(v.line) + ")";
        }
        throw ConfigError(origin_ + ": unknown key(s): " + names);
    }

    std::map<std::string, TomlValue> values_;
    std::string origin_;

private:
    void require(const TomlValue& v, TomlValue::Kind kind, const std::string& key) const {
        if (v.kind != kind)
            throw ConfigError(origin_ + ":" + std::to_string(v.line) + ": key '" + key +
                              "' has the wrong value type");
    }
};

} // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    Applier a(parse_toml(text, origin), origin);
    ExperimentConfig cfg = desk_config();

    a.integer("ris.n_z", cfg.ris.n_z);
    a.integer("ris.n_y", cfg.ris.n_y);
    a.number("ris.spacing_z", cfg.ris.d_ze);
    a.number("ris.spacing_y", cfg.ris.d_ye);
    a.point("nodes.d_tx", cfg.d_tx);
    a.point("nodes.d_rx", cfg.d_rx);
    a.point("nodes.bs", cfg.bs);
    a.point("nodes.u_tx", cfg.u_tx);
    a.number("budget.wavelength", cfg.wavelength);
    a.number("budget.bandwidth", cfg.bandwidth);
    a.number("budget.noise_power", cfg.noise_power);
    a.number("budget.p_dt", cfg.p_dt);
    a.number("budget.p_ut", cfg.p_ut);
    a.number("budget.p_bs", cfg.p_bs);
    a.number("budget.rician_alpha", cfg.rician_alpha);
    a.number("budget.direct_exponent", cfg.direct_exponent);
    a.number("mode.sigma_pl", cfg.sigma_pl);
    a.number("mode.prior_d2d", cfg.prior_d2d);
    a.number("operating.r_t", cfg.r_t);
    a.number("operating.phi", cfg.phi);
    a.boolean("harq.underlay", cfg.harq_underlay);
    a.integer("harq.block_length", cfg.harq_block_length);
    a.integer("harq.x_max", cfg.harq_x_max);
    a.integer("harq.trials", cfg.harq_trials);
    std::string log_base = cfg.harq_log_base == HarqLogBase::two ? "2" : "e";
    a.text("harq.log_base", log_base);
    if (log_base == "2") {
        cfg.harq_log_base = HarqLogBase::two;
    } else if (log_base == "e") {
        cfg.harq_log_base = HarqLogBase::natural;
    } else {
        throw ConfigError(origin + ": harq.log_base must be \"2\" or \"e\"");
    }
    std::string kind = sweep_kind_name(cfg.sweep_kind);
    a.text("sweep.kind", kind);
    cfg.sweep_kind = sweep_kind_from_name(kind);
    a.number("sweep.rate_lo", cfg.rate_lo);
    a.number("sweep.rate_hi", cfg.rate_hi);
    a.integer("sweep.rate_steps", cfg.rate_steps);
    a.number("sweep.qos_lo", cfg.qos_lo);
    a.number("sweep.qos_hi", cfg.qos_hi);
    a.integer("sweep.qos_steps", cfg.qos_steps);
    a.number("sweep.sigma_lo", cfg.sigma_lo);
    a.number("sweep.sigma_hi", cfg.sigma_hi);
    a.integer("sweep.sigma_steps", cfg.sigma_steps);
    a.integer("sweep.pon_steps", cfg.pon_steps);
    a.int_list("sweep.qos_n_z", cfg.qos_n_z);
    a.int_list("sweep.qos_n_y", cfg.qos_n_y);
    a.integer64("mc.seed", cfg.seed);
    a.integer("mc.trials", cfg.trials);
    a.integer("mc.workers", cfg.workers);
    a.integer("mc.oracle_trials", cfg.oracle_trials);
    a.boolean("output.with_oracle", cfg.with_oracle);
    a.boolean("output.exact_outage", cfg.exact_outage);
    a.text("output.dir", cfg.out_dir);
    a.finish();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> problems;
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) problems.push_back(msg);
    };
    check(cfg.ris.n_z >= 1 && cfg.ris.n_y >= 1, "ris element counts must be positive");
    check(cfg.ris.d_ze > 0.0 && cfg.ris.d_ye > 0.0, "ris spacings must be positive");
    check(cfg.wavelength > 0.0, "wavelength must be positive");
    check(cfg.bandwidth > 0.0, "bandwidth must be positive");
    check(cfg.noise_power > 0.0, "noise power must be positive");
    check(cfg.p_dt > 0.0 && cfg.p_ut > 0.0 && cfg.p_bs > 0.0, "transmit powers must be positive");
    check(cfg.rician_alpha >= 0.0, "rician factor must be nonnegative");
    check(cfg.direct_exponent > 0.0, "direct path-loss exponent must be positive");
    check(cfg.sigma_pl > 0.0, "sigma_pl must be positive");
    check(cfg.prior_d2d > 0.0 && cfg.prior_d2d < 1.0, "prior_d2d must lie inside (0, 1)");
    check(cfg.r_t > 0.0, "r_t must be positive");
    check(cfg.phi > 0.0, "phi must be positive");
    check(cfg.harq_block_length >= 1, "harq block length must be positive");
    check(cfg.harq_x_max >= 1 && cfg.harq_x_max <= 64, "harq x_max must lie in [1, 64]");
    check(cfg.harq_trials >= 1000, "harq trials must be at least 1000");
    check(cfg.rate_lo > 0.0 && cfg.rate_hi > cfg.rate_lo, "rate sweep range must satisfy 0 < lo < hi");
    check(cfg.rate_steps >= 2, "rate sweep needs at least 2 steps");
    check(cfg.qos_lo > 0.0 && cfg.qos_hi > cfg.qos_lo, "qos sweep range must satisfy 0 < lo < hi");
    check(cfg.qos_steps >= 2, "qos sweep needs at least 2 steps");
    check(cfg.sigma_lo > 0.0 && cfg.sigma_hi > cfg.sigma_lo,
          "sigma sweep range must satisfy 0 < lo < hi");
    check(cfg.sigma_steps >= 2, "sigma sweep needs at least 2 steps");
    check(cfg.pon_steps >= 2, "pon sweep needs at least 2 steps");
    check(!cfg.qos_n_z.empty() && cfg.qos_n_z.size() == cfg.qos_n_y.size(),
          "qos_n_z and qos_n_y must be nonempty and the same length");
    for (std::size_t i = 0; i < cfg.qos_n_z.size() && i < cfg.qos_n_y.size(); ++i)
        check(cfg.qos_n_z[i] >= 1 && cfg.qos_n_y[i] >= 1, "qos element counts must be positive");
    check(cfg.trials >= 1000, "mc trials must be at least 1000");
    check(cfg.oracle_trials >= 1000, "oracle trials must be at least 1000");
    check(cfg.workers >= 1, "workers must be at least 1");
    check(!cfg.out_dir.empty(), "output directory must not be empty");
    if (problems.empty()) {
        try {
            build_scenario(cfg);
            for (std::size_t i = 0; i < cfg.qos_n_z.size(); ++i)
                build_scenario(cfg, RisArray{cfg.qos_n_z[i], cfg.qos_n_y[i], cfg.ris.d_ze, cfg.ris.d_ye});
        } catch (const std::exception& e) {
            problems.push_back(std::string("scenario construction failed: ") + e.what());
        }
    }
    return problems;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string canonical_config(const ExperimentConfig& cfg) {
    std::map<std::string, std::string> kv;
    kv["ris.n_z"] = std::to_string(cfg.ris.n_z);
    kv["ris.n_y"] = std::to_string(cfg.ris.n_y);
    kv["ris.spacing_z"] = fmt_double(cfg.ris.d_ze);
    kv["ris.spacing_y"] = fmt_double(cfg.ris.d_ye);
    auto point = [&](const std::string& key, const Point3& p) {
        kv[key] = fmt_double(p.x) + "," + fmt_double(p.y) + "," + fmt_double(p.z);
    };
    point("nodes.d_tx", cfg.d_tx);
    point("nodes.d_rx", cfg.d_rx);
    point("nodes.bs", cfg.bs);
    point("nodes.u_tx", cfg.u_tx);
    kv["budget.wavelength"] = fmt_double(cfg.wavelength);
    kv["budget.bandwidth"] = fmt_double(cfg.bandwidth);
    kv["budget.noise_power"] = fmt_double(cfg.noise_power);
    kv["budget.p_dt"] = fmt_double(cfg.p_dt);
    kv["budget.p_ut"] = fmt_double(cfg.p_ut);
    kv["budget.p_bs"] = fmt_double(cfg.p_bs);
    kv["budget.rician_alpha"] = fmt_double(cfg.rician_alpha);
    kv["budget.direct_exponent"] = fmt_double(cfg.direct_exponent);
    kv["mode.sigma_pl"] = fmt_double(cfg.sigma_pl);
    kv["mode.prior_d2d"] = fmt_double(cfg.prior_d2d);
    kv["operating.r_t"] = fmt_double(cfg.r_t);
    kv["operating.phi"] = fmt_double(cfg.phi);
    kv["harq.underlay"] = cfg.harq_underlay ? "true" : "false";
    kv["harq.block_length"] = std::to_string(cfg.harq_block_length);
    kv["harq.x_max"] = std::to_string(cfg.harq_x_max);
    kv["harq.trials"] = std::to_string(cfg.harq_trials);
    kv["harq.log_base"] = cfg.harq_log_base == HarqLogBase::two ? "2" : "e";
    kv["sweep.kind"] = sweep_kind_name(cfg.sweep_kind);
    kv["sweep.rate_lo"] = fmt_double(cfg.rate_lo);
    kv["sweep.rate_hi"] = fmt_double(cfg.rate_hi);
    kv["sweep.rate_steps"] = std::to_string(cfg.rate_steps);
    kv["sweep.qos_lo"] = fmt_double(cfg.qos_lo);
    kv["sweep.qos_hi"] = fmt_double(cfg.qos_hi);
    kv["sweep.qos_steps"] = std::to_string(cfg.qos_steps);
    kv["sweep.sigma_lo"] = fmt_double(cfg.sigma_lo);
    kv["sweep.sigma_hi"] = fmt_double(cfg.sigma_hi);
    kv["sweep.sigma_steps"] = std::to_string(cfg.sigma_steps);
    kv["sweep.pon_steps"] = std::to_string(cfg.pon_steps);
    auto int_list = [&](const std::string& key, const std::vector<int>& v) {
        std::string s;
        for (int x : v) {
            if (!s.empty()) s += ",";
            s += std::to_string(x);
        }
        kv[key] = s;
    };
    int_list("sweep.qos_n_z", cfg.qos_n_z);
    int_list("sweep.qos_n_y", cfg.qos_n_y);
    kv["mc.seed"] = std::to_string(cfg.seed);
    kv["mc.trials"] = std::to_string(cfg.trials);
    kv["mc.oracle_trials"] = std::to_string(cfg.oracle_trials);
    kv["output.with_oracle"] = cfg.with_oracle ? "true" : "false";
    kv["output.exact_outage"] = cfg.exact_outage ? "true" : "false";
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    return Rng::fnv1a64(canonical_config(cfg));
}

Scenario build_scenario(const ExperimentConfig& cfg) {
    return build_scenario(cfg, cfg.ris);
}

Scenario build_scenario(const ExperimentConfig& cfg, const RisArray& ris) {
    Scenario s;
    s.layout = NetworkLayout{ris, cfg.d_tx, cfg.d_rx, cfg.bs, cfg.u_tx};
    check_layout(s.layout);
    s.paths = path_geometry(s.layout);

    s.budget.wavelength = cfg.wavelength;
    s.budget.bandwidth = cfg.bandwidth;
    s.budget.noise_power = cfg.noise_power;
    s.budget.p_dt = cfg.p_dt;
    s.budget.p_ut = cfg.p_ut;
    s.budget.p_bs = cfg.p_bs;
    s.budget.rician_alpha = cfg.rician_alpha;
    s.budget.pl_d = ris_path_loss(s.layout, s.budget.gains, cfg.wavelength, RisLink::d2d);
    s.budget.pl_dt_bs = ris_path_loss(s.layout, s.budget.gains, cfg.wavelength, RisLink::uplink);
    s.budget.pl_bs_dr = ris_path_loss(s.layout, s.budget.gains, cfg.wavelength, RisLink::downlink);
    s.budget.pl_ut_dr = direct_path_loss(s.paths.d_ut_dr, cfg.direct_exponent);
    s.budget.pl_ut_bs = direct_path_loss(s.paths.d_ut_bs, cfg.direct_exponent);
    s.budget.pl_direct = direct_path_loss(s.paths.d_direct, cfg.direct_exponent);

    s.mode = make_mode_model(10.0 * std::log10(s.budget.pl_d), 10.0 * std::log10(s.budget.pl_dt_bs),
                             cfg.sigma_pl, cfg.prior_d2d);
    s.det = detection_probs(s.mode);
    s.sel = selection_probs(s.mode, s.det);
    s.snr = make_snr_model(s.budget, ris.total());
    return s;
}

} // namespace risec
