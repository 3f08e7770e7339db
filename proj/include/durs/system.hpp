#pragma once

#include <cmath>
#include <stdexcept>

namespace durs {

// The two distributed receivers. User a splits its message, user b does not.
enum class Rrh { i, j };

struct Geometry {
    double d_ia = 0, d_ib = 0, d_ja = 0, d_jb = 0;  // meters
    double c = 1e-3;                                 // path loss at reference distance, linear
    double n = 2.5;                                  // path loss exponent
};

struct LinkGains {
    double l_ia = 0, l_ib = 0, l_ja = 0, l_jb = 0;  // linear, l = c * d^-n
};

inline double path_loss(double d, double c, double n) {
    if (!(d > 0.0)) throw std::domain_error("path_loss: distance must be positive");
    if (!(c > 0.0)) throw std::domain_error("path_loss: reference loss must be positive");
    return c * std::pow(d, -n);
}

inline LinkGains link_gains(const Geometry& g) {
    return {path_loss(g.d_ia, g.c, g.n), path_loss(g.d_ib, g.c, g.n),
            path_loss(g.d_ja, g.c, g.n), path_loss(g.d_jb, g.c, g.n)};
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Decoding thresholds, all linear. theta_11/theta_12 gate the two split parts
// of user a's message, theta_1 the unsplit message, theta_2 user b's message.
struct ThresholdSet {
    double theta_11 = 0, theta_12 = 0, theta_2 = 0, theta_1 = 0;
};

inline ThresholdSet thresholds(double rate_a, double rate_b, double beta) {
    if (!(rate_a > 0.0) || !(rate_b > 0.0))
        throw std::domain_error("thresholds: target rates must be positive");
    if (beta < 0.0 || beta > 1.0)
        throw std::domain_error("thresholds: beta must lie in [0,1]");
    ThresholdSet t;
    t.theta_11 = std::exp2(beta * rate_a) - 1.0;
    t.theta_12 = std::exp2((1.0 - beta) * rate_a) - 1.0;
    t.theta_2 = std::exp2(rate_b) - 1.0;
    t.theta_1 = std::exp2(rate_a) - 1.0;
    return t;
}

struct SystemConfig {
    LinkGains gains;
    double snr_a = 1.0;   // P_a / sigma^2, linear
    double snr_b = 1.0;   // P_b / sigma^2, linear
    double alpha = 0.5;   // power split of user a onto x_1a
    double beta = 0.5;    // target rate split of user a onto x_1a
    double rate_a = 1.0;  // bps/Hz
    double rate_b = 1.0;  // bps/Hz

    double la(Rrh k) const { return k == Rrh::i ? gains.l_ia : gains.l_ja; }
    double lb(Rrh k) const { return k == Rrh::i ? gains.l_ib : gains.l_jb; }
    // received power factors l_km * gamma_m
    double pa(Rrh k) const { return la(k) * snr_a; }
    double pb(Rrh k) const { return lb(k) * snr_b; }

    ThresholdSet decode_thresholds() const { return thresholds(rate_a, rate_b, beta); }
};

inline void validate(const SystemConfig& cfg) {
    if (!(cfg.gains.l_ia > 0) || !(cfg.gains.l_ib > 0) || !(cfg.gains.l_ja > 0) ||
        !(cfg.gains.l_jb > 0))
        throw std::domain_error("config: link gains must be positive");
    if (!(cfg.snr_a > 0) || !(cfg.snr_b > 0))
        throw std::domain_error("config: transmit SNRs must be positive");
    if (cfg.alpha < 0.0 || cfg.alpha > 1.0) throw std::domain_error("config: alpha outside [0,1]");
    if (cfg.beta < 0.0 || cfg.beta > 1.0) throw std::domain_error("config: beta outside [0,1]");
}

}  // namespace durs
