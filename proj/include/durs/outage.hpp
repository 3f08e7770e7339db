#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "durs/system.hpp"

namespace durs {

// Fixed-rate evaluation context: thresholds are strictly positive, so target
// rates must be too.
struct OutageContext {
    SystemConfig cfg;
    ThresholdSet th;

    double A(Rrh k) const { return cfg.pa(k); }
    double B(Rrh k) const { return cfg.pb(k); }
};

inline OutageContext make_outage_context(const SystemConfig& cfg) {
    validate(cfg);
    return {cfg, cfg.decode_thresholds()};
}

struct DegenerateDenominator : std::runtime_error {
    explicit DegenerateDenominator(const char* fn, int idx)
        : std::runtime_error(std::string("degenerate denominator in ") + fn + "[" +
                             std::to_string(idx) + "]"),
          helper(fn),
          index(idx) {}
    const char* helper;
    int index;
};

// Sign-carrying gate quantities. F1 < 0 and F2 < 0 mark the regimes where the
// x_b / x_1a decode boundaries cross at positive channel gain; F3 > 0 marks
// the crossing of the x_a and x_b NOMA boundaries under residual splitting.
inline double helper_F(int idx, const OutageContext& c) {
    const double a = c.cfg.alpha;
    const ThresholdSet& t = c.th;
    switch (idx) {
        case 1: return -(a - t.theta_11 * (1.0 - a) * (1.0 + t.theta_2));
        case 2: return -(a - t.theta_11 * (1.0 - a + t.theta_2));
        case 3: return 1.0 - t.theta_1 * t.theta_2 * (1.0 - a);
        default: throw std::invalid_argument("helper_F: index must be 1..3");
    }
}

// Crossing points of the per-sample decode boundaries, as functions of the
// user-b link gain x = l_kb. Each is the |h_kb|^2 value at which two decode
// boundaries for |h_ka|^2 intersect.
inline double helper_f(int idx, double x, const OutageContext& c) {
    const double a = c.cfg.alpha;
    const double gb = c.cfg.snr_b;
    const ThresholdSet& t = c.th;
    // gate factors are dimensionless; treat anything below 1e-12 as a
    // degenerate denominator
    auto gate = [&](double g, int i) {
        if (std::fabs(g) < 1e-12) throw DegenerateDenominator("f", i);
        return g;
    };
    switch (idx) {
        case 1: return t.theta_2 * a / (x * gb * gate(-helper_F(1, c), 1));
        case 2:
            return (a * t.theta_12 - t.theta_11 * (1.0 - a) * (t.theta_12 + 1.0)) /
                   (x * gb * gate(t.theta_11 * (1.0 - a), 2));
        case 3: return t.theta_2 * (t.theta_12 + 1.0) / (x * gb);
        case 4:
            return t.theta_2 * (1.0 + t.theta_1 * (1.0 - a)) /
                   (x * gb * gate(helper_F(3, c), 4));
        case 5:
            return (t.theta_12 - t.theta_1 * (1.0 - a)) /
                   (x * gb * gate(t.theta_1 * (1.0 - a), 5));
        case 6:
            return t.theta_2 * a * (1.0 + t.theta_11) / (x * gb * gate(-helper_F(2, c), 6));
        case 7:
            return (t.theta_12 * (a - t.theta_11 * (1.0 - a)) - t.theta_11 * (1.0 - a)) /
                   (x * gb * gate(t.theta_11 * (1.0 - a), 7));
        case 8:
            return t.theta_2 * (t.theta_12 + 1.0 - a) / (x * gb * gate(1.0 - a, 8));
        case 9:
            return t.theta_2 * (t.theta_1 + 1.0) /
                   (x * gb * gate(1.0 - t.theta_1 * t.theta_2, 9));
        default: throw std::invalid_argument("helper_f: index must be 1..9");
    }
}

// phi(idx, x, y, z) = integral over |h_kb|^2 in [z, inf) of the tail
// probability of |h_ka|^2 beyond the idx-th decode boundary.
inline double phi(int idx, double x, double y, double z, const OutageContext& c) {
    const double a = c.cfg.alpha;
    const double ga = c.cfg.snr_a, gb = c.cfg.snr_b;
    const ThresholdSet& t = c.th;
    switch (idx) {
        case 1: {
            const double s = a - t.theta_11 * (1.0 - a);
            if (std::fabs(s) < 1e-300) throw DegenerateDenominator("phi", 1);
            return x * ga * s / (x * ga * s + gb * y * t.theta_11) *
                   std::exp(-(t.theta_11 * y * gb * z + t.theta_11) / (x * ga * s) - z);
        }
        case 2: {
            const double d = x * t.theta_2 * ga * (1.0 - a);
            if (std::fabs(d) < 1e-300) throw DegenerateDenominator("phi", 2);
            return d / (d + gb * y) * std::exp(-(y * gb * z - t.theta_2) / d - z);
        }
        case 3: {
            const double d = x * t.theta_2 * ga;
            return d / (d + gb * y) * std::exp(-(y * gb * z - t.theta_2) / d - z);
        }
        case 4:
            return x * ga / (x * ga + gb * y * t.theta_1) *
                   std::exp(-(t.theta_1 * y * gb * z + t.theta_1) / (x * ga) - z);
        default: throw std::invalid_argument("phi: index must be 1..4");
    }
}

namespace outage_detail {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Boundary for |h_ka|^2 as an affine function of u = |h_kb|^2.
struct Affine {
    double p = 0.0, q = 0.0;
    double at(double u) const { return p * u + q; }
};

// Exact integral over [z,w] of exp(-(p u + q)) * exp(-u) du; w may be +inf.
inline double exp_affine_integral(const Affine& t, double z, double w) {
    const double r = 1.0 + t.p;
    const double ez = std::exp(-t.q - r * z);
    const double ew = (w == inf) ? 0.0 : std::exp(-t.q - r * w);
    return (ez - ew) / r;
}

// Joint event {max(lowers,0) < |h_ka|^2 < min(uppers)} over u in [u_lo,u_hi].
struct EventSpec {
    std::vector<Affine> lowers{Affine{0.0, 0.0}};
    std::vector<Affine> uppers;
    double u_lo = 0.0, u_hi = inf;
    bool impossible = false;
};

inline double event_probability(const EventSpec& ev) {
    if (ev.impossible || ev.u_hi <= ev.u_lo) return 0.0;

    std::vector<double> cuts{ev.u_lo};
    auto consider = [&](const Affine& a, const Affine& b) {
        if (a.p == b.p) return;
        const double u = (b.q - a.q) / (a.p - b.p);
        if (u > ev.u_lo && u < ev.u_hi && std::isfinite(u)) cuts.push_back(u);
    };
    std::vector<Affine> all = ev.lowers;
    all.insert(all.end(), ev.uppers.begin(), ev.uppers.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) consider(all[i], all[j]);
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t s = 0; s < cuts.size(); ++s) {
        const double z = cuts[s];
        const double w = (s + 1 < cuts.size()) ? cuts[s + 1] : ev.u_hi;
        if (w <= z) continue;
        const double mid = (w == inf) ? z + 1.0 : 0.5 * (z + w);
        const Affine* lo = &ev.lowers.front();
        for (const Affine& a : ev.lowers)
            if (a.at(mid) > lo->at(mid)) lo = &a;
        const Affine* up = nullptr;
        for (const Affine& a : ev.uppers)
            if (!up || a.at(mid) < up->at(mid)) up = &a;
        if (up && up->at(mid) <= lo->at(mid)) continue;
        double seg = exp_affine_integral(*lo, z, w);
        if (up) seg -= exp_affine_integral(*up, z, w);
        if (seg > 0.0) total += seg;
    }
    return total;
}

// Decode-boundary construction for one RRH. Thresholds map as
// r_a -> theta_1, r_b -> theta_2, r_a1 -> theta_11, r_a2 -> theta_12.
struct Bounds {
    double A, B, alpha;
    ThresholdSet th;

    Affine t1() const { return {th.theta_1 * B / A, th.theta_1 / A}; }               // x_a, a-first
    Affine t2() const { return {B / (th.theta_2 * A), -1.0 / A}; }                   // x_b, b-first
    double s() const { return alpha - th.theta_11 * (1.0 - alpha); }
    Affine t3() const { return {th.theta_11 * B / (A * s()), th.theta_11 / (A * s())}; }
    Affine t4() const {
        return {B / (th.theta_2 * (1.0 - alpha) * A), -1.0 / ((1.0 - alpha) * A)};
    }
    Affine t5() const { return {0.0, th.theta_12 / ((1.0 - alpha) * A)}; }
};

enum class Part { x_a_ab, x_b_ba, x_1a, x_b_rsma, x_2a };

// Compose an event from per-message success/failure constraints.
struct EventBuilder {
    Bounds b;
    EventSpec ev;

    void fail_a_ab() { ev.uppers.push_back(b.t1()); }            // gamma_a^{ab} < theta_1
    void pass_a_ab() { ev.lowers.push_back(b.t1()); }
    void fail_b_ba() { ev.lowers.push_back(b.t2()); }            // gamma_b^{ba} < theta_2
    void fail_a_ba() { ev.uppers.push_back(Affine{0.0, b.th.theta_1 / b.A}); }
    void pass_b_ba() { ev.uppers.push_back(b.t2()); }
    void fail_b_ab() { ev.u_hi = std::min(ev.u_hi, b.th.theta_2 / b.B); }  // B u < theta_2

    void fail_x1a() {  // gamma_1a < theta_11
        if (b.th.theta_11 <= 0.0) { ev.impossible = true; return; }
        if (b.s() > 0.0) ev.uppers.push_back(b.t3());
    }
    void pass_x1a() {  // gamma_1a > theta_11
        if (b.th.theta_11 <= 0.0) {
            if (b.alpha <= 0.0) ev.impossible = true;  // gamma_1a identically zero
            return;
        }
        if (b.s() <= 0.0) { ev.impossible = true; return; }
        ev.lowers.push_back(b.t3());
    }
    void fail_xb() {  // gamma_b < theta_2 under residual interference
        if (b.alpha >= 1.0) ev.u_hi = std::min(ev.u_hi, b.th.theta_2 / b.B);
        else ev.lowers.push_back(b.t4());
    }
    void pass_xb() {
        if (b.alpha >= 1.0) ev.u_lo = std::max(ev.u_lo, b.th.theta_2 / b.B);
        else ev.uppers.push_back(b.t4());
    }
    void fail_x2a() {  // gamma_2a < theta_12
        if (b.th.theta_12 <= 0.0) { ev.impossible = true; return; }
        if (b.alpha >= 1.0) return;  // gamma_2a = 0 < theta_12 always
        ev.uppers.push_back(b.t5());
    }
};

inline EventSpec g_event(int idx, Rrh k, const OutageContext& c) {
    Bounds b{c.A(k), c.B(k), c.cfg.alpha, c.th};
    EventBuilder e{b, {}};
    switch (idx) {
        case 1: e.fail_a_ab(); e.fail_b_ba(); e.fail_x1a(); break;
        case 2: e.fail_a_ab(); e.fail_b_ba(); e.pass_x1a(); e.fail_xb(); break;
        case 3: e.fail_a_ab(); e.fail_b_ba(); e.fail_x1a(); e.fail_xb(); break;
        case 4: e.fail_a_ab(); e.fail_b_ba(); e.pass_x1a(); e.pass_xb(); e.fail_x2a(); break;
        case 5: e.fail_a_ab(); e.fail_b_ba(); e.pass_x1a(); e.fail_xb(); e.fail_x2a(); break;
        case 6: e.fail_a_ab(); e.fail_b_ba(); e.fail_x1a(); e.pass_xb(); e.fail_x2a(); break;
        case 7: e.fail_a_ab(); e.fail_b_ba(); e.fail_x1a(); e.fail_xb(); e.fail_x2a(); break;
        case 8: e.fail_a_ba(); e.pass_b_ba(); break;
        case 9: e.fail_a_ba(); e.fail_b_ba(); break;
        case 10: e.pass_a_ab(); e.fail_b_ab(); break;
        case 11: e.fail_a_ab(); e.fail_b_ab(); break;
        case 12: e.fail_a_ab(); e.fail_b_ba(); break;  // NOMA undecodable at this RRH
        default: throw std::invalid_argument("g_event: index must be 1..12");
    }
    return e.ev;
}

}  // namespace outage_detail

// Pairs of per-RRH failure modes whose conjunctions compose the outage of
// user a (16 products) and user b (7 products).
inline constexpr std::array<std::pair<int, int>, 16> outage_a_pairs{
    {{1, 1}, {2, 2}, {2, 3}, {3, 2}, {4, 4}, {4, 5}, {5, 4}, {4, 6},
     {4, 7}, {5, 6}, {6, 4}, {6, 5}, {7, 4}, {8, 8}, {8, 9}, {9, 8}}};
inline constexpr std::array<std::pair<int, int>, 7> outage_b_pairs{
    {{1, 1}, {2, 2}, {2, 3}, {3, 2}, {10, 10}, {10, 11}, {11, 10}}};

inline double g_term(int idx, Rrh k, const OutageContext& c) {
    if (idx < 1 || idx > 11) throw std::invalid_argument("g_term: index must be 1..11");
    const double v = outage_detail::event_probability(outage_detail::g_event(idx, k, c));
    if (v < -1e-9 || v > 1.0 + 1e-9) throw std::logic_error("g_term: value outside [0,1]");
    return std::clamp(v, 0.0, 1.0);
}

// Probability that this RRH can decode neither message by plain NOMA.
inline double noma_stuck(Rrh k, const OutageContext& c) {
    const double v = outage_detail::event_probability(outage_detail::g_event(12, k, c));
    return std::clamp(v, 0.0, 1.0);
}

namespace outage_detail {

struct GCache {
    std::array<double, 12> i, j;  // 1-based at [1..11]
};

inline GCache g_cache(const OutageContext& c) {
    GCache g{};
    for (int idx = 1; idx <= 11; ++idx) {
        g.i[static_cast<std::size_t>(idx)] = g_term(idx, Rrh::i, c);
        g.j[static_cast<std::size_t>(idx)] = g_term(idx, Rrh::j, c);
    }
    return g;
}

}  // namespace outage_detail

inline std::array<double, 16> outage_a_products(const OutageContext& c) {
    const auto g = outage_detail::g_cache(c);
    std::array<double, 16> out{};
    for (std::size_t t = 0; t < outage_a_pairs.size(); ++t)
        out[t] = g.i[static_cast<std::size_t>(outage_a_pairs[t].first)] *
                 g.j[static_cast<std::size_t>(outage_a_pairs[t].second)];
    return out;
}

inline std::array<double, 7> outage_b_products(const OutageContext& c) {
    const auto g = outage_detail::g_cache(c);
    std::array<double, 7> out{};
    for (std::size_t t = 0; t < outage_b_pairs.size(); ++t)
        out[t] = g.i[static_cast<std::size_t>(outage_b_pairs[t].first)] *
                 g.j[static_cast<std::size_t>(outage_b_pairs[t].second)];
    return out;
}

inline double outage_a(const OutageContext& c) {
    double p = 0.0;
    for (double v : outage_a_products(c)) p += v;
    return std::clamp(p, 0.0, 1.0);
}

inline double outage_b(const OutageContext& c) {
    double p = 0.0;
    for (double v : outage_b_products(c)) p += v;
    return std::clamp(p, 0.0, 1.0);
}

// DU-NOMA reference: no rate splitting, both decode orders, decoded messages
// shared over the feedback link. The stuck-stuck product is what builds the
// outage floor once theta_1 * theta_2 > 1.
inline std::pair<double, double> outage_noma_baseline(const OutageContext& c) {
    const double di = noma_stuck(Rrh::i, c), dj = noma_stuck(Rrh::j, c);
    const double g8i = g_term(8, Rrh::i, c), g8j = g_term(8, Rrh::j, c);
    const double g9i = g_term(9, Rrh::i, c), g9j = g_term(9, Rrh::j, c);
    const double g10i = g_term(10, Rrh::i, c), g10j = g_term(10, Rrh::j, c);
    const double g11i = g_term(11, Rrh::i, c), g11j = g_term(11, Rrh::j, c);
    const double pa = di * dj + g8i * g8j + g8i * g9j + g9i * g8j;
    const double pb = di * dj + g10i * g10j + g10i * g11j + g11i * g10j;
    return {std::clamp(pa, 0.0, 1.0), std::clamp(pb, 0.0, 1.0)};
}

}  // namespace durs
