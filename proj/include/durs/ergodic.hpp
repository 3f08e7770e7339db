#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "durs/specfun.hpp"
#include "durs/system.hpp"

namespace durs {

inline constexpr double ln2 = 0.69314718055994530941723212145818;

// Probability that RRH i wins the high-SNR comparison for x_1a.
// Natural-log form; symmetric ratio gives exactly 1/2.
inline double p1(const LinkGains& g) {
    const double w = (g.l_ja * g.l_ib) / (g.l_ia * g.l_jb);
    const double e = w - 1.0;
    if (std::fabs(e) < 1e-4) return 0.5 - e / 6.0 + e * e / 12.0;
    return (1.0 + w * std::log(w) / (1.0 - w)) / (1.0 - w);
}

// Probability that RRH i wins the comparison for x_2a.
inline double p2(const LinkGains& g) { return g.l_ia / (g.l_ia + g.l_ja); }

namespace detail {

// shorthand: e^x E1(x)
inline double exe1(double x) { return expint_e1_scaled(x); }

inline bool near_rel(double x, double y, double tol = 1e-9) {
    return std::fabs(x - y) <= tol * std::max(std::fabs(x), std::fabs(y));
}

// E[log2(1 + X v / (Y u + 1))] with v,u ~ Exp(1): the interference-limited
// single-message rate. Degenerate branch at X = Y.
inline double er_ratio_rate(double X, double Y) {
    if (near_rel(X, Y)) return (1.0 - exe1(1.0 / X) / X) / ln2;
    return X * (exe1(1.0 / X) - exe1(1.0 / Y)) / (X - Y) / ln2;
}

}  // namespace detail

// Per-RRH ergodic rate of x_1a under the (x_1a, x_b, x_2a) decoding chain.
inline double er_x1a(const SystemConfig& cfg, Rrh k) {
    const double a = cfg.alpha;
    if (a < 0.0 || a > 1.0) throw std::domain_error("er_x1a: alpha outside [0,1]");
    const double A = cfg.pa(k), B = cfg.pb(k);
    if (a == 0.0) return 0.0;
    if (a == 1.0) return detail::er_ratio_rate(A, B);
    const double C = (1.0 - a) * A;
    using detail::exe1;
    if (detail::near_rel(B, A)) {
        const double r = (1.0 - a) / a;
        return (1.0 - exe1(1.0 / A) * (r + 1.0 / A) + r * exe1(1.0 / C)) / ln2;
    }
    if (detail::near_rel(B, C)) {
        return ((exe1(1.0 / A) - exe1(1.0 / C)) / a - 1.0 + exe1(1.0 / C) / C) / ln2;
    }
    return (A * exe1(1.0 / A) / (A - B) - A * (1.0 - a) * exe1(1.0 / C) / (C - B) +
            a * A * B * exe1(1.0 / B) / ((B - A) * (B - C))) /
           ln2;
}

// Per-RRH ergodic rate of x_2a (decoded last, interference-free).
inline double er_x2a(const SystemConfig& cfg, Rrh k) {
    const double a = cfg.alpha;
    if (a < 0.0 || a > 1.0) throw std::domain_error("er_x2a: alpha outside [0,1]");
    if (a == 1.0) return 0.0;
    return detail::exe1(1.0 / ((1.0 - a) * cfg.pa(k))) / ln2;
}

// Per-RRH ergodic rate of x_b, residual interference (1-alpha) of user a.
inline double er_b(const SystemConfig& cfg, Rrh k) {
    const double a = cfg.alpha;
    const double A = cfg.pa(k), B = cfg.pb(k);
    if (a == 1.0) return detail::exe1(1.0 / B) / ln2;
    const double C = (1.0 - a) * A;
    if (detail::near_rel(B, C)) return (1.0 - detail::exe1(1.0 / B) / B) / ln2;
    return B * (detail::exe1(1.0 / B) - detail::exe1(1.0 / C)) / (B - C) / ln2;
}

struct ErBreakdown {
    double er_x1a_i = 0, er_x1a_j = 0;
    double er_x2a_i = 0, er_x2a_j = 0;
    double er_b_i = 0, er_b_j = 0;
    double p1 = 0, p2 = 0;
    double er_user_a = 0, er_user_b = 0, er_sum = 0;
};

// Selection-weighted composition: each message is decoded by the RRH that
// wins the high-SNR comparison, with probabilities p1 (x_1a, complement for
// x_b) and p2 (x_2a).
inline ErBreakdown er_breakdown(const SystemConfig& cfg) {
    validate(cfg);
    ErBreakdown r;
    r.er_x1a_i = er_x1a(cfg, Rrh::i);
    r.er_x1a_j = er_x1a(cfg, Rrh::j);
    r.er_x2a_i = er_x2a(cfg, Rrh::i);
    r.er_x2a_j = er_x2a(cfg, Rrh::j);
    r.er_b_i = er_b(cfg, Rrh::i);
    r.er_b_j = er_b(cfg, Rrh::j);
    r.p1 = p1(cfg.gains);
    r.p2 = p2(cfg.gains);
    r.er_user_a = r.p1 * r.er_x1a_i + (1.0 - r.p1) * r.er_x1a_j + r.p2 * r.er_x2a_i +
                  (1.0 - r.p2) * r.er_x2a_j;
    r.er_user_b = (1.0 - r.p1) * r.er_b_i + r.p1 * r.er_b_j;
    r.er_sum = r.er_user_a + r.er_user_b;
    return r;
}

struct SinrCdfSet {
    std::function<double(double)> gamma_1a;
    std::function<double(double)> gamma_b;
    std::function<double(double)> gamma_2a;
};

inline SinrCdfSet sinr_cdfs(const SystemConfig& cfg, Rrh k) {
    const double a = cfg.alpha;
    const double A = cfg.pa(k), B = cfg.pb(k);
    SinrCdfSet set;
    set.gamma_1a = [a, A, B](double x) {
        if (x <= 0.0) return 0.0;
        const double s = a - x * (1.0 - a);  // ceiling a/(1-a) reached when s = 0
        if (s <= 0.0) return 1.0;
        return 1.0 - A * s * std::exp(-x / (A * s)) / (A * s + B * x);
    };
    set.gamma_b = [a, A, B](double x) {
        if (x <= 0.0) return 0.0;
        return 1.0 - B * std::exp(-x / B) / (B + (1.0 - a) * A * x);
    };
    set.gamma_2a = [a, A](double x) {
        if (x <= 0.0) return 0.0;
        if (a == 1.0) return 1.0;
        return 1.0 - std::exp(-x / ((1.0 - a) * A));
    };
    return set;
}

}  // namespace durs
