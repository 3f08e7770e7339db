#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "durs/channel.hpp"
#include "durs/outage.hpp"
#include "durs/sinr.hpp"
#include "durs/system.hpp"

namespace durs {

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

namespace mc_detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return std::min(requested, 64u);
    if (const char* env = std::getenv("DU_RSMA_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return std::min(static_cast<unsigned>(v), 64u);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? std::min(hw, 64u) : 1u;
}

// Fixed-size chunks with in-order reduction: results are bit-identical for
// any worker count.
inline constexpr std::uint64_t chunk_size = 1u << 16;

template <class Acc, class Body>
Acc run_chunked(std::uint64_t n, unsigned threads, Body&& body) {
    const std::uint64_t nchunks = (n + chunk_size - 1) / chunk_size;
    std::vector<Acc> acc(nchunks);
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::uint64_t ci = next.fetch_add(1);
            if (ci >= nchunks) return;
            const std::uint64_t lo = ci * chunk_size;
            const std::uint64_t hi = std::min(n, lo + chunk_size);
            Acc& a = acc[ci];
            for (std::uint64_t idx = lo; idx < hi; ++idx) body(a, idx);
        }
    };
    const unsigned nt = resolve_threads(threads);
    if (nt <= 1 || nchunks <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    Acc total;
    for (const Acc& a : acc) total.merge(a);
    return total;
}

struct MeanVar {
    double sum = 0.0, sumsq = 0.0;
    void add(double x) {
        sum += x;
        sumsq += x * x;
    }
    void merge(const MeanVar& o) {
        sum += o.sum;
        sumsq += o.sumsq;
    }
    Estimate estimate(std::uint64_t n) const {
        Estimate e;
        e.samples = n;
        if (n == 0) return e;
        e.mean = sum / static_cast<double>(n);
        if (n > 1) {
            const double var =
                std::max(0.0, (sumsq - sum * e.mean) / static_cast<double>(n - 1));
            e.std_error = std::sqrt(var / static_cast<double>(n));
        }
        return e;
    }
};

inline Estimate bernoulli(std::uint64_t count, std::uint64_t n) {
    Estimate e;
    e.samples = n;
    if (n == 0) return e;
    const double p = static_cast<double>(count) / static_cast<double>(n);
    e.mean = p;
    if (n > 1) e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n - 1));
    return e;
}

// Per-RRH failure-mode indicators evaluated from the exact SINRs.
struct GFlags {
    std::array<bool, 13> g{};  // [1..11] events, [12] = NOMA stuck
};

inline GFlags g_flags(const SystemConfig& cfg, const ThresholdSet& th, const ChannelSample& s,
                      Rrh k) {
    const double xa = cfg.pa(k) * s.ga(k);
    const double xb = cfg.pb(k) * s.gb(k);
    const double a = cfg.alpha;
    const double gab_a = xa / (xb + 1.0), gab_b = xb;
    const double gba_a = xa, gba_b = xb / (xa + 1.0);
    const double g1a = a * xa / ((1.0 - a) * xa + xb + 1.0);
    const double gb = xb / ((1.0 - a) * xa + 1.0);
    const double g2a = (1.0 - a) * xa;

    const bool e1 = gab_a < th.theta_1;
    const bool e2 = gba_b < th.theta_2;
    const bool x1a_fail = g1a < th.theta_11, x1a_pass = g1a > th.theta_11;
    const bool xb_fail = gb < th.theta_2, xb_pass = gb > th.theta_2;
    const bool x2a_fail = g2a < th.theta_12;

    GFlags f;
    f.g[1] = e1 && e2 && x1a_fail;
    f.g[2] = e1 && e2 && x1a_pass && xb_fail;
    f.g[3] = e1 && e2 && x1a_fail && xb_fail;
    f.g[4] = e1 && e2 && x1a_pass && xb_pass && x2a_fail;
    f.g[5] = e1 && e2 && x1a_pass && xb_fail && x2a_fail;
    f.g[6] = e1 && e2 && x1a_fail && xb_pass && x2a_fail;
    f.g[7] = e1 && e2 && x1a_fail && xb_fail && x2a_fail;
    f.g[8] = gba_a < th.theta_1 && gba_b > th.theta_2;
    f.g[9] = gba_a < th.theta_1 && gba_b < th.theta_2;
    f.g[10] = gab_a > th.theta_1 && gab_b < th.theta_2;
    f.g[11] = gab_a < th.theta_1 && gab_b < th.theta_2;
    f.g[12] = e1 && e2;
    return f;
}

}  // namespace mc_detail

struct McErgodicReport {
    Estimate er_user_a, er_user_b, er_sum;
    Estimate empirical_p1, empirical_p2;
    Estimate single_user_a, single_user_b;  // best-RRH interference-free rates
};

enum class RegionMode { select, force_i, force_j };

namespace mc_detail {

struct RatePair {
    double ra, rb;
};

inline RatePair rates_for_mode(const SystemConfig& cfg, const ChannelSample& s,
                               RegionMode mode) {
    const RsmaSinrTriple ti = rsma_sinrs(cfg, s, Rrh::i);
    const RsmaSinrTriple tj = rsma_sinrs(cfg, s, Rrh::j);
    double g1a, gb, g2a;
    switch (mode) {
        case RegionMode::force_i: g1a = ti.gamma_1a; gb = ti.gamma_b; g2a = ti.gamma_2a; break;
        case RegionMode::force_j: g1a = tj.gamma_1a; gb = tj.gamma_b; g2a = tj.gamma_2a; break;
        default:
            g1a = std::max(ti.gamma_1a, tj.gamma_1a);
            gb = std::max(ti.gamma_b, tj.gamma_b);
            g2a = std::max(ti.gamma_2a, tj.gamma_2a);
    }
    return {std::log2(1.0 + g1a) + std::log2(1.0 + g2a), std::log2(1.0 + gb)};
}

}  // namespace mc_detail

inline McErgodicReport mc_ergodic(const SystemConfig& cfg, std::uint64_t samples,
                                  std::uint64_t seed, unsigned threads = 0) {
    validate(cfg);
    struct Acc {
        mc_detail::MeanVar ra, rb, rsum, sa, sb;
        std::uint64_t p1c = 0, p2c = 0;
        void merge(const Acc& o) {
            ra.merge(o.ra);
            rb.merge(o.rb);
            rsum.merge(o.rsum);
            sa.merge(o.sa);
            sb.merge(o.sb);
            p1c += o.p1c;
            p2c += o.p2c;
        }
    };
    const double ratio = (cfg.gains.l_ja * cfg.gains.l_ib) / (cfg.gains.l_ia * cfg.gains.l_jb);
    Acc total = mc_detail::run_chunked<Acc>(samples, threads, [&](Acc& a, std::uint64_t idx) {
        const ChannelSample s = channel_at(seed, idx);
        const auto r = mc_detail::rates_for_mode(cfg, s, RegionMode::select);
        a.ra.add(r.ra);
        a.rb.add(r.rb);
        a.rsum.add(r.ra + r.rb);
        const auto su = single_user_sinrs(cfg, s);
        a.sa.add(std::log2(1.0 + su.first));
        a.sb.add(std::log2(1.0 + su.second));
        if (s.g_ia * s.g_jb > ratio * s.g_ja * s.g_ib) ++a.p1c;
        if (cfg.gains.l_ia * s.g_ia > cfg.gains.l_ja * s.g_ja) ++a.p2c;
    });
    McErgodicReport rep;
    rep.er_user_a = total.ra.estimate(samples);
    rep.er_user_b = total.rb.estimate(samples);
    rep.er_sum = total.rsum.estimate(samples);
    rep.single_user_a = total.sa.estimate(samples);
    rep.single_user_b = total.sb.estimate(samples);
    rep.empirical_p1 = mc_detail::bernoulli(total.p1c, samples);
    rep.empirical_p2 = mc_detail::bernoulli(total.p2c, samples);
    return rep;
}

inline std::pair<Estimate, Estimate> mc_ergodic_region_point(const SystemConfig& cfg,
                                                             std::uint64_t samples,
                                                             std::uint64_t seed, RegionMode mode,
                                                             unsigned threads = 0) {
    struct Acc {
        mc_detail::MeanVar ra, rb;
        void merge(const Acc& o) {
            ra.merge(o.ra);
            rb.merge(o.rb);
        }
    };
    Acc total = mc_detail::run_chunked<Acc>(samples, threads, [&](Acc& a, std::uint64_t idx) {
        const auto r = mc_detail::rates_for_mode(cfg, channel_at(seed, idx), mode);
        a.ra.add(r.ra);
        a.rb.add(r.rb);
    });
    return {total.ra.estimate(samples), total.rb.estimate(samples)};
}

struct McOutageReport {
    Estimate op_a, op_b;
    Estimate noma_a, noma_b;
    std::array<Estimate, 16> product_freq_a{};
    std::array<Estimate, 7> product_freq_b{};
    std::array<Estimate, 11> g_freq_i{}, g_freq_j{};  // index 0 holds G1
    std::uint64_t disjointness_violations = 0;
};

inline McOutageReport mc_outage(const SystemConfig& cfg, std::uint64_t samples,
                                std::uint64_t seed, unsigned threads = 0) {
    const OutageContext ctx = make_outage_context(cfg);
    struct Acc {
        std::array<std::uint64_t, 16> prod_a{};
        std::array<std::uint64_t, 7> prod_b{};
        std::array<std::uint64_t, 11> gi{}, gj{};
        std::uint64_t op_a = 0, op_b = 0, noma_a = 0, noma_b = 0, violations = 0;
        void merge(const Acc& o) {
            for (std::size_t t = 0; t < prod_a.size(); ++t) prod_a[t] += o.prod_a[t];
            for (std::size_t t = 0; t < prod_b.size(); ++t) prod_b[t] += o.prod_b[t];
            for (std::size_t t = 0; t < 11; ++t) {
                gi[t] += o.gi[t];
                gj[t] += o.gj[t];
            }
            op_a += o.op_a;
            op_b += o.op_b;
            noma_a += o.noma_a;
            noma_b += o.noma_b;
            violations += o.violations;
        }
    };
    Acc total = mc_detail::run_chunked<Acc>(samples, threads, [&](Acc& a, std::uint64_t idx) {
        const ChannelSample s = channel_at(seed, idx);
        const auto fi = mc_detail::g_flags(cfg, ctx.th, s, Rrh::i);
        const auto fj = mc_detail::g_flags(cfg, ctx.th, s, Rrh::j);
        for (std::size_t t = 0; t < 11; ++t) {
            a.gi[t] += fi.g[t + 1];
            a.gj[t] += fj.g[t + 1];
        }
        int fires_a = 0;
        for (std::size_t t = 0; t < outage_a_pairs.size(); ++t) {
            const bool hit = fi.g[static_cast<std::size_t>(outage_a_pairs[t].first)] &&
                             fj.g[static_cast<std::size_t>(outage_a_pairs[t].second)];
            a.prod_a[t] += hit;
            fires_a += hit;
        }
        int fires_b = 0;
        for (std::size_t t = 0; t < outage_b_pairs.size(); ++t) {
            const bool hit = fi.g[static_cast<std::size_t>(outage_b_pairs[t].first)] &&
                             fj.g[static_cast<std::size_t>(outage_b_pairs[t].second)];
            a.prod_b[t] += hit;
            fires_b += hit;
        }
        a.op_a += fires_a > 0;
        a.op_b += fires_b > 0;
        a.violations += (fires_a > 1) + (fires_b > 1);
        const bool di = fi.g[12], dj = fj.g[12];
        a.noma_a += (di && dj) || (fi.g[8] && fj.g[8]) || (fi.g[8] && fj.g[9]) ||
                    (fi.g[9] && fj.g[8]);
        a.noma_b += (di && dj) || (fi.g[10] && fj.g[10]) || (fi.g[10] && fj.g[11]) ||
                    (fi.g[11] && fj.g[10]);
    });
    McOutageReport rep;
    rep.op_a = mc_detail::bernoulli(total.op_a, samples);
    rep.op_b = mc_detail::bernoulli(total.op_b, samples);
    rep.noma_a = mc_detail::bernoulli(total.noma_a, samples);
    rep.noma_b = mc_detail::bernoulli(total.noma_b, samples);
    for (std::size_t t = 0; t < 16; ++t)
        rep.product_freq_a[t] = mc_detail::bernoulli(total.prod_a[t], samples);
    for (std::size_t t = 0; t < 7; ++t)
        rep.product_freq_b[t] = mc_detail::bernoulli(total.prod_b[t], samples);
    for (std::size_t t = 0; t < 11; ++t) {
        rep.g_freq_i[t] = mc_detail::bernoulli(total.gi[t], samples);
        rep.g_freq_j[t] = mc_detail::bernoulli(total.gj[t], samples);
    }
    rep.disjointness_violations = total.violations;
    return rep;
}

inline Estimate mc_g_term(int idx, Rrh k, const SystemConfig& cfg, std::uint64_t samples,
                          std::uint64_t seed, unsigned threads = 0) {
    if (idx < 1 || idx > 11) throw std::invalid_argument("mc_g_term: index must be 1..11");
    const OutageContext ctx = make_outage_context(cfg);
    struct Acc {
        std::uint64_t c = 0;
        void merge(const Acc& o) { c += o.c; }
    };
    Acc total = mc_detail::run_chunked<Acc>(samples, threads, [&](Acc& a, std::uint64_t i) {
        const ChannelSample s = channel_at(seed, i);
        a.c += mc_detail::g_flags(cfg, ctx.th, s, k).g[static_cast<std::size_t>(idx)];
    });
    return mc_detail::bernoulli(total.c, samples);
}

}  // namespace durs
