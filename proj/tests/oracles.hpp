#pragma once

// Test-side oracles, kept independent of the library's closed-form paths:
// a quadrature integrator over the raw decode events and a second SINR
// evaluator written from different algebra.

#include <algorithm>
#include <cmath>
#include <limits>

#include "durs/outage.hpp"
#include "durs/sinr.hpp"
#include "durs/specfun.hpp"
#include "durs/system.hpp"

namespace oracles {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// v-interval of one per-RRH decode event at fixed u = |h_kb|^2, derived by
// inverting each SINR definition directly.
struct VInterval {
    double lo = 0.0, hi = inf;
    bool empty = false;

    void upper(double x) { hi = std::min(hi, x); }
    void lower(double x) { lo = std::max(lo, x); }
};

inline VInterval g_event_interval(int idx, double u, double A, double B, double alpha,
                                  const durs::ThresholdSet& th) {
    VInterval iv;
    const double t1 = th.theta_1, t2 = th.theta_2, t11 = th.theta_11, t12 = th.theta_12;
    auto fail_a_ab = [&] { iv.upper(t1 * (B * u + 1.0) / A); };
    auto pass_a_ab = [&] { iv.lower(t1 * (B * u + 1.0) / A); };
    auto fail_b_ba = [&] { iv.lower((B * u / t2 - 1.0) / A); };
    auto pass_b_ba = [&] { iv.upper((B * u / t2 - 1.0) / A); };
    auto fail_a_ba = [&] { iv.upper(t1 / A); };
    auto fail_b_ab = [&] { if (!(B * u < t2)) iv.empty = true; };
    auto fail_x1a = [&] {
        const double c = alpha * A - t11 * (1.0 - alpha) * A;
        if (t11 <= 0.0) { iv.empty = true; return; }
        if (c > 0.0) iv.upper(t11 * (B * u + 1.0) / c);
    };
    auto pass_x1a = [&] {
        const double c = alpha * A - t11 * (1.0 - alpha) * A;
        if (t11 <= 0.0) { if (alpha <= 0.0) iv.empty = true; return; }
        if (c <= 0.0) { iv.empty = true; return; }
        iv.lower(t11 * (B * u + 1.0) / c);
    };
    auto fail_xb = [&] {
        if (alpha >= 1.0) { if (!(B * u < t2)) iv.empty = true; return; }
        iv.lower((B * u / t2 - 1.0) / ((1.0 - alpha) * A));
    };
    auto pass_xb = [&] {
        if (alpha >= 1.0) { if (!(B * u > t2)) iv.empty = true; return; }
        iv.upper((B * u / t2 - 1.0) / ((1.0 - alpha) * A));
    };
    auto fail_x2a = [&] {
        if (t12 <= 0.0) { iv.empty = true; return; }
        if (alpha >= 1.0) return;
        iv.upper(t12 / ((1.0 - alpha) * A));
    };
    switch (idx) {
        case 1: fail_a_ab(); fail_b_ba(); fail_x1a(); break;
        case 2: fail_a_ab(); fail_b_ba(); pass_x1a(); fail_xb(); break;
        case 3: fail_a_ab(); fail_b_ba(); fail_x1a(); fail_xb(); break;
        case 4: fail_a_ab(); fail_b_ba(); pass_x1a(); pass_xb(); fail_x2a(); break;
        case 5: fail_a_ab(); fail_b_ba(); pass_x1a(); fail_xb(); fail_x2a(); break;
        case 6: fail_a_ab(); fail_b_ba(); fail_x1a(); pass_xb(); fail_x2a(); break;
        case 7: fail_a_ab(); fail_b_ba(); fail_x1a(); fail_xb(); fail_x2a(); break;
        case 8: fail_a_ba(); pass_b_ba(); break;
        case 9: fail_a_ba(); fail_b_ba(); break;
        case 10: pass_a_ab(); fail_b_ab(); break;
        case 11: fail_a_ab(); fail_b_ab(); break;
        case 12: fail_a_ab(); fail_b_ba(); break;
        default: iv.empty = true;
    }
    iv.lo = std::max(iv.lo, 0.0);
    return iv;
}

// Probability of a per-RRH decode event by direct numerical integration.
inline double g_quadrature(int idx, durs::Rrh k, const durs::OutageContext& ctx) {
    const double A = ctx.A(k), B = ctx.B(k), alpha = ctx.cfg.alpha;
    auto f = [&](double u) {
        const VInterval iv = g_event_interval(idx, u, A, B, alpha, ctx.th);
        if (iv.empty || iv.hi <= iv.lo) return 0.0;
        const double top = (iv.hi == inf) ? 0.0 : std::exp(-iv.hi);
        return std::exp(-u) * (std::exp(-iv.lo) - top);
    };
    double total = 0.0;
    const double u_max = 60.0;
    const int slices = 240;  // brute slicing absorbs the envelope kinks
    for (int i = 0; i < slices; ++i) {
        const double a = u_max * i / slices, b = u_max * (i + 1) / slices;
        total += durs::integrate(f, a, b, 1e-13).value;
    }
    return total;
}

// Second SINR evaluator on a different algebraic route.
inline durs::RsmaSinrTriple rsma_sinrs_alt(const durs::SystemConfig& cfg,
                                           const durs::ChannelSample& s, durs::Rrh k) {
    const double xa = cfg.pa(k) * s.ga(k);
    const double xb = cfg.pb(k) * s.gb(k);
    const double a = cfg.alpha;
    durs::RsmaSinrTriple t;
    t.gamma_1a = xa > 0.0 ? a / ((1.0 - a) + (xb + 1.0) / xa) : 0.0;
    t.gamma_b = xb > 0.0 ? 1.0 / (((1.0 - a) * xa + 1.0) / xb) : 0.0;
    t.gamma_2a = xa - a * xa;
    return t;
}

}  // namespace oracles
