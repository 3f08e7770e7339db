#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "durs/channel.hpp"
#include "durs/system.hpp"

namespace durs {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key=value run description; '#' starts a comment, later keys override
// earlier ones.
struct RunConfig {
    std::optional<double> d_ia, d_ib, d_ja, d_jb;
    double pathloss_c = 1e-3;
    double pathloss_n = 2.5;
    std::optional<double> snr_db, snr_a_db, snr_b_db;
    double alpha = 0.5;
    double beta = 0.5;
    double rate_a = 1.0;
    double rate_b = 1.0;
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 1;
    int alpha_grid = 201;
    std::optional<double> g_ia, g_ib, g_ja, g_jb;  // fixed channel, region mode
};

namespace config_detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline double parse_number(std::string_view v, std::string_view key, int line) {
    const std::string tmp(v);
    char* end = nullptr;
    const double x = std::strtod(tmp.c_str(), &end);
    if (end == tmp.c_str() || *end != '\0')
        throw ConfigError("config error: unparsable number '" + tmp + "' for key '" +
                          std::string(key) + "' at line " + std::to_string(line));
    return x;
}

inline void require_range(double x, double lo, double hi, std::string_view key, int line) {
    if (x < lo || x > hi)
        throw ConfigError("config error: value for key '" + std::string(key) + "' at line " +
                          std::to_string(line) + " outside [" + std::to_string(lo) + "," +
                          std::to_string(hi) + "]");
}

inline void require_positive(double x, std::string_view key, int line) {
    if (!(x > 0.0))
        throw ConfigError("config error: value for key '" + std::string(key) + "' at line " +
                          std::to_string(line) + " must be positive");
}

}  // namespace config_detail

inline void apply_key(RunConfig& rc, std::string_view key, std::string_view value,
                      int line = 0) {
    using namespace config_detail;
    const double x = parse_number(value, key, line);
    if (key == "d_ia") { require_positive(x, key, line); rc.d_ia = x; }
    else if (key == "d_ib") { require_positive(x, key, line); rc.d_ib = x; }
    else if (key == "d_ja") { require_positive(x, key, line); rc.d_ja = x; }
    else if (key == "d_jb") { require_positive(x, key, line); rc.d_jb = x; }
    else if (key == "pathloss_c") { require_positive(x, key, line); rc.pathloss_c = x; }
    else if (key == "pathloss_n") { require_range(x, 0.0, 10.0, key, line); rc.pathloss_n = x; }
    else if (key == "snr_db") { rc.snr_db = x; }
    else if (key == "snr_a_db") { rc.snr_a_db = x; }
    else if (key == "snr_b_db") { rc.snr_b_db = x; }
    else if (key == "alpha") { require_range(x, 0.0, 1.0, key, line); rc.alpha = x; }
    else if (key == "beta") { require_range(x, 0.0, 1.0, key, line); rc.beta = x; }
    else if (key == "rate_a") { require_positive(x, key, line); rc.rate_a = x; }
    else if (key == "rate_b") { require_positive(x, key, line); rc.rate_b = x; }
    else if (key == "samples") {
        require_range(x, 1.0, 1e15, key, line);
        rc.samples = static_cast<std::uint64_t>(x);
    } else if (key == "seed") {
        require_range(x, 0.0, 1.8e19, key, line);
        rc.seed = static_cast<std::uint64_t>(x);
    } else if (key == "alpha_grid") {
        require_range(x, 2.0, 1e7, key, line);
        rc.alpha_grid = static_cast<int>(x);
    }
    else if (key == "g_ia") { require_positive(x, key, line); rc.g_ia = x; }
    else if (key == "g_ib") { require_positive(x, key, line); rc.g_ib = x; }
    else if (key == "g_ja") { require_positive(x, key, line); rc.g_ja = x; }
    else if (key == "g_jb") { require_positive(x, key, line); rc.g_jb = x; }
    else
        throw ConfigError("config error: unknown key '" + std::string(key) + "' at line " +
                          std::to_string(line));
}

inline RunConfig parse_config(std::string_view text, RunConfig base = {}) {
    int line = 0;
    while (!text.empty()) {
        ++line;
        const auto nl = text.find('\n');
        std::string_view raw = text.substr(0, nl);
        text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        const std::string_view stripped = config_detail::trim(raw);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config error: expected key=value at line " + std::to_string(line));
        const std::string_view key = config_detail::trim(stripped.substr(0, eq));
        const std::string_view value = config_detail::trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config error: empty key at line " + std::to_string(line));
        apply_key(base, key, value, line);
    }
    return base;
}

inline SystemConfig resolve(const RunConfig& rc) {
    if (!rc.d_ia || !rc.d_ib || !rc.d_ja || !rc.d_jb)
        throw ConfigError("config error: all four distances d_ia/d_ib/d_ja/d_jb are required");
    if (!rc.snr_db && !(rc.snr_a_db && rc.snr_b_db))
        throw ConfigError("config error: set snr_db or both snr_a_db and snr_b_db");
    SystemConfig cfg;
    cfg.gains = link_gains({*rc.d_ia, *rc.d_ib, *rc.d_ja, *rc.d_jb, rc.pathloss_c,
                            rc.pathloss_n});
    const double sa = rc.snr_a_db ? *rc.snr_a_db : *rc.snr_db;
    const double sb = rc.snr_b_db ? *rc.snr_b_db : *rc.snr_db;
    cfg.snr_a = db_to_linear(sa);
    cfg.snr_b = db_to_linear(sb);
    cfg.alpha = rc.alpha;
    cfg.beta = rc.beta;
    cfg.rate_a = rc.rate_a;
    cfg.rate_b = rc.rate_b;
    validate(cfg);
    return cfg;
}

inline std::optional<ChannelSample> fixed_channel(const RunConfig& rc) {
    if (rc.g_ia && rc.g_ib && rc.g_ja && rc.g_jb)
        return ChannelSample{*rc.g_ia, *rc.g_ib, *rc.g_ja, *rc.g_jb};
    return std::nullopt;
}

// Canonical re-parseable listing of the resolved configuration.
inline std::string echo_config(const RunConfig& rc) {
    char buf[128];
    std::string out;
    auto put = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%s=%.17g\n", key, v);
        out += buf;
    };
    auto put_opt = [&](const char* key, const std::optional<double>& v) {
        if (v) put(key, *v);
    };
    put_opt("d_ia", rc.d_ia);
    put_opt("d_ib", rc.d_ib);
    put_opt("d_ja", rc.d_ja);
    put_opt("d_jb", rc.d_jb);
    put("pathloss_c", rc.pathloss_c);
    put("pathloss_n", rc.pathloss_n);
    put_opt("snr_db", rc.snr_db);
    put_opt("snr_a_db", rc.snr_a_db);
    put_opt("snr_b_db", rc.snr_b_db);
    put("alpha", rc.alpha);
    put("beta", rc.beta);
    put("rate_a", rc.rate_a);
    put("rate_b", rc.rate_b);
    std::snprintf(buf, sizeof buf, "samples=%llu\nseed=%llu\nalpha_grid=%d\n",
                  static_cast<unsigned long long>(rc.samples),
                  static_cast<unsigned long long>(rc.seed), rc.alpha_grid);
    out += buf;
    put_opt("g_ia", rc.g_ia);
    put_opt("g_ib", rc.g_ib);
    put_opt("g_ja", rc.g_ja);
    put_opt("g_jb", rc.g_jb);
    return out;
}

// Experiment presets matching the documented evaluation scenarios.
inline RunConfig preset(std::string_view name) {
    RunConfig rc;
    auto set_d = [&](double ia, double ib, double ja, double jb) {
        rc.d_ia = ia;
        rc.d_ib = ib;
        rc.d_ja = ja;
        rc.d_jb = jb;
    };
    if (name == "fig2") {
        // fixed-channel capacity region; channel magnitudes 1.36 / 0.725 /
        // 2.082 / 1.013 entered as powers |h|^2
        set_d(10, 30, 30, 10);
        rc.snr_db = 75;
        rc.alpha_grid = 2001;
        rc.g_ia = 1.36 * 1.36;
        rc.g_ib = 0.725 * 0.725;
        rc.g_ja = 2.082 * 2.082;
        rc.g_jb = 1.013 * 1.013;
    } else if (name == "fig3") {
        set_d(5, 15, 17, 8);
        rc.snr_db = 75;
        rc.alpha = 0.5;
    } else if (name == "fig4") {
        set_d(10, 30, 30, 10);
        rc.snr_db = 75;
        rc.alpha_grid = 101;
    } else if (name == "fig5") {
        set_d(5, 20, 15, 10);
        rc.snr_db = 70;
        rc.alpha = 0.3;
        rc.beta = 0.5;
        rc.rate_a = rc.rate_b = 1.5;
    } else if (name == "fig6") {
        set_d(5, 25, 30, 20);
        rc.snr_db = 70;
        rc.alpha = 0.9;
        rc.beta = 0.1;
        rc.rate_a = rc.rate_b = 2.0;
    } else {
        throw ConfigError("config error: unknown preset '" + std::string(name) + "'");
    }
    return rc;
}

}  // namespace durs
