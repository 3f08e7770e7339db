#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "durs/channel.hpp"
#include "durs/mc.hpp"
#include "durs/sinr.hpp"
#include "durs/system.hpp"

namespace durs {

struct RatePoint {
    double r_a = 0.0, r_b = 0.0;
};

struct RegionCurve {
    std::vector<double> alphas;     // curve parameter per point
    std::vector<RatePoint> points;  // achievable (R_a, R_b)
    double denom_a = 0.0, denom_b = 0.0;  // single-user best-RRH rates
};

// One point of the fixed-channel region: per-message best-RRH decoding under
// the (x_1a, x_b, x_2a) order, messages shared over the feedback link.
inline RatePoint deterministic_rate_point(const SystemConfig& base, const ChannelSample& s,
                                          double alpha, RegionMode mode = RegionMode::select) {
    SystemConfig cfg = base;
    cfg.alpha = alpha;
    const auto r = mc_detail::rates_for_mode(cfg, s, mode);
    return {r.ra, r.rb};
}

inline RegionCurve deterministic_region(const SystemConfig& cfg, const ChannelSample& s,
                                        int grid, RegionMode mode = RegionMode::select) {
    if (grid < 2) throw std::invalid_argument("deterministic_region: grid must be >= 2");
    RegionCurve c;
    c.alphas.reserve(static_cast<std::size_t>(grid));
    c.points.reserve(static_cast<std::size_t>(grid));
    for (int k = 0; k < grid; ++k) {
        const double a = static_cast<double>(k) / (grid - 1);
        c.alphas.push_back(a);
        c.points.push_back(deterministic_rate_point(cfg, s, a, mode));
    }
    const auto su = single_user_sinrs(cfg, s);
    c.denom_a = std::log2(1.0 + su.first);
    c.denom_b = std::log2(1.0 + su.second);
    return c;
}

// NOMA corner points with per-message best-RRH decoding: (b first, a clean)
// and (a first, b clean).
inline std::pair<RatePoint, RatePoint> noma_corners(const SystemConfig& cfg,
                                                    const ChannelSample& s) {
    const auto bi = noma_sinrs(cfg, s, Rrh::i, NomaOrder::b_first);
    const auto bj = noma_sinrs(cfg, s, Rrh::j, NomaOrder::b_first);
    const auto ai = noma_sinrs(cfg, s, Rrh::i, NomaOrder::a_first);
    const auto aj = noma_sinrs(cfg, s, Rrh::j, NomaOrder::a_first);
    RatePoint b_first{std::log2(1.0 + std::max(bi.gamma_a, bj.gamma_a)),
                      std::log2(1.0 + std::max(bi.gamma_b, bj.gamma_b))};
    RatePoint a_first{std::log2(1.0 + std::max(ai.gamma_a, aj.gamma_a)),
                      std::log2(1.0 + std::max(ai.gamma_b, aj.gamma_b))};
    return {b_first, a_first};
}

// Time-sharing NOMA boundary: single-user extremes, the two corners, and the
// chord between them.
inline RegionCurve ts_noma_region(RatePoint corner_b_first, RatePoint corner_a_first,
                                  double denom_a, double denom_b, int chord_points = 101) {
    if (chord_points < 2) throw std::invalid_argument("ts_noma_region: need >= 2 chord points");
    RegionCurve c;
    c.denom_a = denom_a;
    c.denom_b = denom_b;
    c.alphas.push_back(0.0);
    c.points.push_back({denom_a, 0.0});
    for (int k = 0; k < chord_points; ++k) {
        const double t = static_cast<double>(k) / (chord_points - 1);
        c.alphas.push_back(t);
        c.points.push_back({corner_b_first.r_a + t * (corner_a_first.r_a - corner_b_first.r_a),
                            corner_b_first.r_b + t * (corner_a_first.r_b - corner_b_first.r_b)});
    }
    c.alphas.push_back(1.0);
    c.points.push_back({0.0, denom_b});
    return c;
}

inline double f_q(int q, double x, double y) {
    switch (q) {
        case 0: return std::min(x, y);
        case 1: return x + y;
        case 2: return x * y;
        default: throw std::invalid_argument("fill_factor: q must be 0, 1 or 2");
    }
}

struct FillFactor {
    double value = 0.0;
    RatePoint argmax;
    double alpha = 0.0;  // curve parameter at the maximizer
};

// Best rectangle metric over the region boundary, normalized by the
// single-user rates. For q = 0 the fill factor is the AREA of the largest
// inscribed square over the single-user square, so the side ratio enters
// squared; q = 1 compares perimeters and q = 2 areas of rectangles, both
// plain ratios of f_q.
inline FillFactor fill_factor(const RegionCurve& c, int q) {
    if (c.points.empty()) throw std::invalid_argument("fill_factor: empty curve");
    if (!(c.denom_a > 0.0) || !(c.denom_b > 0.0))
        throw std::domain_error("fill_factor: degenerate single-user rates");
    FillFactor best;
    double best_f = -1.0;
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        const double v = f_q(q, c.points[k].r_a, c.points[k].r_b);
        if (v > best_f) {
            best_f = v;
            best.argmax = c.points[k];
            best.alpha = c.alphas.empty() ? 0.0 : c.alphas[k];
        }
    }
    const double ratio = best_f / f_q(q, c.denom_a, c.denom_b);
    best.value = q == 0 ? ratio * ratio : ratio;
    return best;
}

namespace region_detail {

// Golden-section refinement of a unimodal-near-max scalar function on
// [lo, hi]; used to polish the grid argmax.
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, int iters = 60) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < iters && (b - a) > 1e-12; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace region_detail

// Deterministic fill factor with golden-section refinement around the best
// grid cell.
inline FillFactor fill_factor_refined(const SystemConfig& cfg, const ChannelSample& s, int q,
                                      int grid = 2001, RegionMode mode = RegionMode::select) {
    const RegionCurve curve = deterministic_region(cfg, s, grid, mode);
    FillFactor ff = fill_factor(curve, q);
    const double step = 1.0 / (grid - 1);
    auto score = [&](double a) {
        const RatePoint p = deterministic_rate_point(cfg, s, a, mode);
        return f_q(q, p.r_a, p.r_b);
    };
    const auto [astar, fstar] = region_detail::golden_max(
        score, std::max(0.0, ff.alpha - step), std::min(1.0, ff.alpha + step));
    if (fstar > f_q(q, ff.argmax.r_a, ff.argmax.r_b)) {
        ff.alpha = astar;
        ff.argmax = deterministic_rate_point(cfg, s, astar, mode);
        const double ratio = fstar / f_q(q, curve.denom_a, curve.denom_b);
        ff.value = q == 0 ? ratio * ratio : ratio;
    }
    return ff;
}

// Ergodic region over an alpha grid; one shared sample stream across all
// alphas so curves are smooth and comparisons are paired.
inline RegionCurve ergodic_region(const SystemConfig& cfg, int grid, std::uint64_t samples,
                                  std::uint64_t seed, RegionMode mode = RegionMode::select,
                                  unsigned threads = 0) {
    if (grid < 2) throw std::invalid_argument("ergodic_region: grid must be >= 2");
    validate(cfg);
    struct Acc {
        std::vector<double> ra, rb;
        double sa = 0.0, sb = 0.0;
        void merge(const Acc& o) {
            if (ra.empty()) {
                ra = o.ra;
                rb = o.rb;
            } else if (!o.ra.empty()) {
                for (std::size_t k = 0; k < ra.size(); ++k) {
                    ra[k] += o.ra[k];
                    rb[k] += o.rb[k];
                }
            }
            sa += o.sa;
            sb += o.sb;
        }
    };
    const std::size_t ng = static_cast<std::size_t>(grid);
    Acc total = mc_detail::run_chunked<Acc>(samples, threads, [&](Acc& a, std::uint64_t idx) {
        if (a.ra.empty()) {
            a.ra.assign(ng, 0.0);
            a.rb.assign(ng, 0.0);
        }
        const ChannelSample s = channel_at(seed, idx);
        const double xai = cfg.pa(Rrh::i) * s.g_ia, xbi = cfg.pb(Rrh::i) * s.g_ib;
        const double xaj = cfg.pa(Rrh::j) * s.g_ja, xbj = cfg.pb(Rrh::j) * s.g_jb;
        a.sa += std::log2(1.0 + std::max(xai, xaj));
        a.sb += std::log2(1.0 + std::max(xbi, xbj));
        for (std::size_t k = 0; k < ng; ++k) {
            const double al = static_cast<double>(k) / (ng - 1);
            auto triple = [al](double xa, double xb) {
                return std::array<double, 3>{al * xa / ((1.0 - al) * xa + xb + 1.0),
                                             xb / ((1.0 - al) * xa + 1.0), (1.0 - al) * xa};
            };
            const auto ti = triple(xai, xbi), tj = triple(xaj, xbj);
            double g1a, gb, g2a;
            switch (mode) {
                case RegionMode::force_i: g1a = ti[0]; gb = ti[1]; g2a = ti[2]; break;
                case RegionMode::force_j: g1a = tj[0]; gb = tj[1]; g2a = tj[2]; break;
                default:
                    g1a = std::max(ti[0], tj[0]);
                    gb = std::max(ti[1], tj[1]);
                    g2a = std::max(ti[2], tj[2]);
            }
            a.ra[k] += std::log2(1.0 + g1a) + std::log2(1.0 + g2a);
            a.rb[k] += std::log2(1.0 + gb);
        }
    });
    RegionCurve c;
    const double inv = 1.0 / static_cast<double>(samples);
    for (std::size_t k = 0; k < ng; ++k) {
        c.alphas.push_back(static_cast<double>(k) / (ng - 1));
        c.points.push_back({total.ra[k] * inv, total.rb[k] * inv});
    }
    c.denom_a = total.sa * inv;
    c.denom_b = total.sb * inv;
    return c;
}

// Ergodic fill factor: grid scan plus golden refinement; every probe reuses
// the same sample stream, so the score is a deterministic function of alpha.
inline FillFactor ergodic_fill_factor(const SystemConfig& cfg, int q, int grid,
                                      std::uint64_t samples, std::uint64_t seed,
                                      RegionMode mode = RegionMode::select,
                                      unsigned threads = 0) {
    const RegionCurve curve = ergodic_region(cfg, grid, samples, seed, mode, threads);
    FillFactor ff = fill_factor(curve, q);
    const double step = 1.0 / (grid - 1);
    auto score = [&](double a) {
        SystemConfig probe = cfg;
        probe.alpha = a;
        const auto rp = mc_ergodic_region_point(probe, samples, seed, mode, threads);
        return f_q(q, rp.first.mean, rp.second.mean);
    };
    const auto [astar, fstar] = region_detail::golden_max(
        score, std::max(0.0, ff.alpha - step), std::min(1.0, ff.alpha + step), 16);
    if (fstar > f_q(q, ff.argmax.r_a, ff.argmax.r_b)) {
        SystemConfig probe = cfg;
        probe.alpha = astar;
        const auto rp = mc_ergodic_region_point(probe, samples, seed, mode, threads);
        ff.alpha = astar;
        ff.argmax = {rp.first.mean, rp.second.mean};
        const double ratio = fstar / f_q(q, curve.denom_a, curve.denom_b);
        ff.value = q == 0 ? ratio * ratio : ratio;
    }
    return ff;
}

}  // namespace durs
