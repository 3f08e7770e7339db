#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "durs/channel.hpp"
#include "durs/system.hpp"

namespace durs {

// SINRs for the decoding order (x_1a, x_b, x_2a) at one RRH. Each SIC step
// removes the previous message from the interference term.
struct RsmaSinrTriple {
    double gamma_1a = 0, gamma_b = 0, gamma_2a = 0;
};

enum class NomaOrder { b_first, a_first };

struct NomaSinrPair {
    double gamma_a = 0, gamma_b = 0;
    NomaOrder order = NomaOrder::b_first;
};

inline RsmaSinrTriple rsma_sinrs(const SystemConfig& cfg, const ChannelSample& s, Rrh k) {
    const double xa = cfg.pa(k) * s.ga(k);  // l_ka * gamma_a * |h_ka|^2
    const double xb = cfg.pb(k) * s.gb(k);
    const double a = cfg.alpha;
    RsmaSinrTriple t;
    t.gamma_1a = a * xa / ((1.0 - a) * xa + xb + 1.0);
    t.gamma_b = xb / ((1.0 - a) * xa + 1.0);
    t.gamma_2a = (1.0 - a) * xa;
    return t;
}

inline NomaSinrPair noma_sinrs(const SystemConfig& cfg, const ChannelSample& s, Rrh k,
                               NomaOrder order) {
    const double xa = cfg.pa(k) * s.ga(k);
    const double xb = cfg.pb(k) * s.gb(k);
    if (order == NomaOrder::b_first) return {xa, xb / (xa + 1.0), order};
    return {xa / (xb + 1.0), xb, order};
}

// Noise term dropped; used only for the RRH selection probabilities.
inline RsmaSinrTriple high_snr_sinrs(const SystemConfig& cfg, const ChannelSample& s, Rrh k) {
    const double xa = cfg.pa(k) * s.ga(k);
    const double xb = cfg.pb(k) * s.gb(k);
    const double a = cfg.alpha;
    if (a >= 1.0 || xa <= 0.0)
        throw std::domain_error("high_snr_sinrs: gamma_b undefined for alpha=1 or zero a-link");
    RsmaSinrTriple t;
    t.gamma_1a = a * xa / ((1.0 - a) * xa + xb);
    t.gamma_b = xb / ((1.0 - a) * xa);
    t.gamma_2a = (1.0 - a) * xa;
    return t;
}

// Interference-free best-RRH SINRs, as if each user were served alone.
inline std::pair<double, double> single_user_sinrs(const SystemConfig& cfg,
                                                   const ChannelSample& s) {
    const double ga = std::max(cfg.pa(Rrh::i) * s.g_ia, cfg.pa(Rrh::j) * s.g_ja);
    const double gb = std::max(cfg.pb(Rrh::i) * s.g_ib, cfg.pb(Rrh::j) * s.g_jb);
    return {ga, gb};
}

}  // namespace durs
