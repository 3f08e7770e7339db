#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "durs/config_file.hpp"
#include "durs/ergodic.hpp"
#include "durs/mc.hpp"
#include "durs/outage.hpp"
#include "durs/specfun.hpp"
#include "durs/system.hpp"

namespace durs {

struct ValidateOptions {
    bool full = false;          // full grid: the long per-term sweep at 1e7 samples
    unsigned threads = 0;       // 0 = resolve from DU_RSMA_THREADS / hardware
    std::uint64_t seed = 1;
};

struct ValidateResult {
    std::string report_csv;
    int checks = 0;
    int failures = 0;
};

namespace validate_detail {

inline void row(ValidateResult& r, const char* check, const std::string& config,
                const std::string& term, double analytic, double reference, double band,
                bool pass) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%s,%s,%.12g,%.12g,%.12g,%s\n", check, config.c_str(),
                  term.c_str(), analytic, reference, band, pass ? "pass" : "FAIL");
    r.report_csv += buf;
    ++r.checks;
    if (!pass) ++r.failures;
}

// 4-sigma band combining the empirical and analytic-implied standard errors,
// so exact-zero frequencies of tiny probabilities do not fail spuriously.
inline double se_band(double analytic, const Estimate& mc) {
    const double p = std::min(std::max(analytic, 0.0), 1.0);
    const double se_an =
        mc.samples > 1 ? std::sqrt(p * (1.0 - p) / static_cast<double>(mc.samples - 1)) : 0.0;
    return std::max(mc.std_error, se_an);
}

inline SystemConfig geometry_config(int which, double snr_db) {
    RunConfig rc;
    switch (which) {
        case 0: rc = preset("fig3"); break;
        case 1: rc = preset("fig5"); break;
        default:
            rc.d_ia = rc.d_ib = rc.d_ja = rc.d_jb = 12.0;  // symmetric
            break;
    }
    rc.snr_db = snr_db;
    rc.snr_a_db.reset();
    rc.snr_b_db.reset();
    return resolve(rc);
}

inline const char* geometry_name(int which) {
    return which == 0 ? "fig3" : which == 1 ? "fig5" : "symmetric";
}

// Closed-form ergodic terms against the defining rate integrals.
inline void check_er_quadrature(ValidateResult& r) {
    for (int geo = 0; geo < 3; ++geo)
        for (double snr : {60.0, 75.0, 90.0})
            for (double alpha : {0.2, 0.5, 0.8}) {
                SystemConfig cfg = geometry_config(geo, snr);
                cfg.alpha = alpha;
                char cfgname[64];
                std::snprintf(cfgname, sizeof cfgname, "%s/%gdB/a%.1f", geometry_name(geo), snr,
                              alpha);
                for (Rrh k : {Rrh::i, Rrh::j}) {
                    const double A = cfg.pa(k), B = cfg.pb(k), a = cfg.alpha;
                    const double q1 =
                        integrate(
                            [&](double y) {
                                return a * A * std::exp(-y / A) /
                                       ((1 + y) * (1 + (1 - a) * y) * (A + B * y));
                            },
                            0.0, INFINITY, 1e-12)
                            .value /
                        ln2;
                    const double q2 =
                        integrate([&](double x) { return std::exp(-x / ((1 - a) * A)) / (1 + x); },
                                  0.0, INFINITY, 1e-12)
                                .value /
                        ln2;
                    const double q3 =
                        integrate(
                            [&](double x) {
                                return B * std::exp(-x / B) /
                                       ((B + (1 - a) * A * x) * (1 + x));
                            },
                            0.0, INFINITY, 1e-12)
                            .value /
                        ln2;
                    const char* rrh = k == Rrh::i ? "i" : "j";
                    const double v1 = er_x1a(cfg, k), v2 = er_x2a(cfg, k), v3 = er_b(cfg, k);
                    row(r, "er_quad", cfgname, std::string("er_x1a_") + rrh, v1, q1, 1e-6,
                        std::fabs(v1 - q1) <= 1e-6 * std::fabs(q1));
                    row(r, "er_quad", cfgname, std::string("er_x2a_") + rrh, v2, q2, 1e-6,
                        std::fabs(v2 - q2) <= 1e-6 * std::fabs(q2));
                    row(r, "er_quad", cfgname, std::string("er_b_") + rrh, v3, q3, 1e-6,
                        std::fabs(v3 - q3) <= 1e-6 * std::fabs(q3));
                }
            }
}

// Selection probabilities against their comparison-event frequencies.
inline void check_selection_probabilities(ValidateResult& r, const ValidateOptions& opt) {
    const double geoms[5][4] = {{5, 15, 17, 8},
                                {5, 20, 15, 10},
                                {12, 12, 12, 12},
                                {10, 30, 30, 10},
                                {7, 9, 22, 6}};
    for (int g = 0; g < 5; ++g) {
        SystemConfig cfg;
        cfg.gains = link_gains({geoms[g][0], geoms[g][1], geoms[g][2], geoms[g][3], 1e-3, 2.5});
        cfg.snr_a = cfg.snr_b = db_to_linear(75.0);
        const auto mc = mc_ergodic(cfg, 1000000, opt.seed + 17 * g, opt.threads);
        char cfgname[64];
        std::snprintf(cfgname, sizeof cfgname, "geom%d", g);
        const double a1 = p1(cfg.gains), a2 = p2(cfg.gains);
        const double b1 = 3.0 * se_band(a1, mc.empirical_p1);
        const double b2 = 3.0 * se_band(a2, mc.empirical_p2);
        row(r, "p1_mc", cfgname, "p1", a1, mc.empirical_p1.mean, b1,
            std::fabs(a1 - mc.empirical_p1.mean) <= b1);
        row(r, "p2_mc", cfgname, "p2", a2, mc.empirical_p2.mean, b2,
            std::fabs(a2 - mc.empirical_p2.mean) <= b2);
    }
}

inline void check_outage_config(ValidateResult& r, const SystemConfig& cfg,
                                const std::string& cfgname, std::uint64_t samples,
                                const ValidateOptions& opt) {
    const OutageContext ctx = make_outage_context(cfg);
    const McOutageReport mc = mc_outage(cfg, samples, opt.seed, opt.threads);
    for (int idx = 1; idx <= 11; ++idx) {
        for (Rrh k : {Rrh::i, Rrh::j}) {
            const double an = g_term(idx, k, ctx);
            const Estimate& est =
                (k == Rrh::i) ? mc.g_freq_i[static_cast<std::size_t>(idx - 1)]
                              : mc.g_freq_j[static_cast<std::size_t>(idx - 1)];
            const double band = 4.0 * se_band(an, est);
            char term[16];
            std::snprintf(term, sizeof term, "G%d_%s", idx, k == Rrh::i ? "i" : "j");
            row(r, "g_term_mc", cfgname, term, an, est.mean, band,
                std::fabs(an - est.mean) <= band);
        }
    }
    const auto prods_a = outage_a_products(ctx);
    for (std::size_t t = 0; t < prods_a.size(); ++t) {
        const double band = 4.0 * se_band(prods_a[t], mc.product_freq_a[t]);
        char term[16];
        std::snprintf(term, sizeof term, "Pa_t%zu", t);
        row(r, "op_product_mc", cfgname, term, prods_a[t], mc.product_freq_a[t].mean, band,
            std::fabs(prods_a[t] - mc.product_freq_a[t].mean) <= band);
    }
    const auto prods_b = outage_b_products(ctx);
    for (std::size_t t = 0; t < prods_b.size(); ++t) {
        const double band = 4.0 * se_band(prods_b[t], mc.product_freq_b[t]);
        char term[16];
        std::snprintf(term, sizeof term, "Pb_t%zu", t);
        row(r, "op_product_mc", cfgname, term, prods_b[t], mc.product_freq_b[t].mean, band,
            std::fabs(prods_b[t] - mc.product_freq_b[t].mean) <= band);
    }
    const double pa = outage_a(ctx), pb = outage_b(ctx);
    row(r, "op_mc", cfgname, "op_a", pa, mc.op_a.mean, 4.0 * se_band(pa, mc.op_a),
        std::fabs(pa - mc.op_a.mean) <= 4.0 * se_band(pa, mc.op_a));
    row(r, "op_mc", cfgname, "op_b", pb, mc.op_b.mean, 4.0 * se_band(pb, mc.op_b),
        std::fabs(pb - mc.op_b.mean) <= 4.0 * se_band(pb, mc.op_b));
    const auto nb = outage_noma_baseline(ctx);
    row(r, "noma_mc", cfgname, "noma_a", nb.first, mc.noma_a.mean,
        4.0 * se_band(nb.first, mc.noma_a),
        std::fabs(nb.first - mc.noma_a.mean) <= 4.0 * se_band(nb.first, mc.noma_a));
    row(r, "noma_mc", cfgname, "noma_b", nb.second, mc.noma_b.mean,
        4.0 * se_band(nb.second, mc.noma_b),
        std::fabs(nb.second - mc.noma_b.mean) <= 4.0 * se_band(nb.second, mc.noma_b));
    row(r, "disjoint", cfgname, "violations",
        static_cast<double>(mc.disjointness_violations), 0.0, 0.0,
        mc.disjointness_violations == 0);
}

inline void check_outage(ValidateResult& r, const ValidateOptions& opt) {
    if (!opt.full) {
        {
            RunConfig rc = preset("fig5");
            SystemConfig cfg = resolve(rc);
            check_outage_config(r, cfg, "fig5/70dB/a0.3", 1000000, opt);
        }
        {
            RunConfig rc = preset("fig6");
            SystemConfig cfg = resolve(rc);
            check_outage_config(r, cfg, "fig6/70dB/R2", 1000000, opt);
        }
        return;
    }
    for (double snr : {70.0, 80.0}) {
        for (int ai = 1; ai <= 9; ++ai) {
            RunConfig rc = preset("fig5");
            rc.snr_db = snr;
            rc.alpha = 0.1 * ai;
            char name[64];
            std::snprintf(name, sizeof name, "fig5/%gdB/a%.1f", snr, rc.alpha);
            check_outage_config(r, resolve(rc), name, 10000000, opt);
        }
    }
    for (double rate : {1.0, 2.0}) {
        for (double snr = 50.0; snr <= 90.0; snr += 10.0) {
            RunConfig rc = preset("fig6");
            rc.snr_db = snr;
            rc.rate_a = rc.rate_b = rate;
            char name[64];
            std::snprintf(name, sizeof name, "fig6/%gdB/R%g", snr, rate);
            check_outage_config(r, resolve(rc), name, 10000000, opt);
        }
    }
}

}  // namespace validate_detail

// Analytic-vs-oracle validation suite. The report is a deterministic function
// of (options, seed); worker count never changes a byte.
inline ValidateResult run_validation(const ValidateOptions& opt = {}) {
    ValidateResult r;
    r.report_csv = "check,config,term,analytic,reference,band,status\n";
    validate_detail::check_er_quadrature(r);
    validate_detail::check_selection_probabilities(r, opt);
    validate_detail::check_outage(r, opt);
    char tail[64];
    std::snprintf(tail, sizeof tail, "# checks=%d failures=%d\n", r.checks, r.failures);
    r.report_csv += tail;
    return r;
}

}  // namespace durs
