#include <array>
#include <cmath>

#include "doctest.h"
#include "durs/mc.hpp"
#include "durs/outage.hpp"
#include "durs/system.hpp"
#include "oracles.hpp"

using namespace durs;

namespace {

SystemConfig make_cfg(std::array<double, 4> d, double snr_db, double alpha, double beta,
                      double ra, double rb) {
    SystemConfig cfg;
    cfg.gains = link_gains({d[0], d[1], d[2], d[3], 1e-3, 2.5});
    cfg.snr_a = cfg.snr_b = db_to_linear(snr_db);
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.rate_a = ra;
    cfg.rate_b = rb;
    return cfg;
}

}  // namespace

TEST_CASE("helper gate quantities") {
    const SystemConfig cfg = make_cfg({5, 20, 15, 10}, 70, 0.5, 0.5, 2.0, 2.0);
    const OutageContext ctx = make_outage_context(cfg);
    CHECK(ctx.th.theta_1 == doctest::Approx(3.0));
    CHECK(helper_F(3, ctx) == doctest::Approx(1.0 - 9.0 * 0.5));  // = -3.5
    CHECK_THROWS_AS(helper_F(4, ctx), std::invalid_argument);
}

TEST_CASE("f5 vanishes when the x_a and x_2a boundaries start together") {
    // theta_12 = theta_1 (1 - alpha): rate_a = 2, beta = 0.5 gives theta_12 = 1,
    // theta_1 = 3, so alpha = 2/3
    const SystemConfig cfg = make_cfg({5, 20, 15, 10}, 70, 2.0 / 3.0, 0.5, 2.0, 1.0);
    const OutageContext ctx = make_outage_context(cfg);
    CHECK(std::fabs(helper_f(5, cfg.gains.l_ib, ctx)) < 1e-9);
}

TEST_CASE("f2 and f7 are the same crossing") {
    const SystemConfig cfg = make_cfg({5, 20, 15, 10}, 70, 0.37, 0.41, 1.7, 2.3);
    const OutageContext ctx = make_outage_context(cfg);
    CHECK(helper_f(2, cfg.gains.l_ib, ctx) ==
          doctest::Approx(helper_f(7, cfg.gains.l_ib, ctx)).epsilon(1e-12));
}

TEST_CASE("degenerate helper denominators are signalled") {
    // alpha solving alpha = theta_11 (1-alpha)(1+theta_2) makes f1 blow up
    SystemConfig cfg = make_cfg({5, 20, 15, 10}, 70, 0.5, 0.5, 1.5, 1.5);
    const ThresholdSet th = thresholds(1.5, 1.5, 0.5);
    const double c = th.theta_11 * (1.0 + th.theta_2);
    cfg.alpha = c / (1.0 + c);
    const OutageContext ctx = make_outage_context(cfg);
    CHECK(std::fabs(helper_F(1, ctx)) < 1e-15);
    CHECK_THROWS_AS(helper_f(1, cfg.gains.l_ib, ctx), DegenerateDenominator);
}

TEST_CASE("phi functions equal their defining tail integrals") {
    const SystemConfig cfg = make_cfg({5, 20, 15, 10}, 68, 0.45, 0.55, 1.2, 1.8);
    const OutageContext ctx = make_outage_context(cfg);
    const double x = cfg.gains.l_ia, y = cfg.gains.l_ib;
    const double A = x * cfg.snr_a, B = y * cfg.snr_b;
    const ThresholdSet& t = ctx.th;
    const double s = cfg.alpha - t.theta_11 * (1.0 - cfg.alpha);
    for (double z : {0.0, 0.2, 1.4}) {
        auto tail = [&](auto bound) {
            return integrate([&](double u) { return std::exp(-bound(u) - u); }, z, INFINITY,
                             1e-13)
                .value;
        };
        CHECK(phi(1, x, y, z, ctx) ==
              doctest::Approx(tail([&](double u) {
                  return (t.theta_11 * B * u + t.theta_11) / (A * s);
              })).epsilon(1e-10));
        CHECK(phi(2, x, y, z, ctx) ==
              doctest::Approx(tail([&](double u) {
                  return (B * u - t.theta_2) / (t.theta_2 * (1.0 - cfg.alpha) * A);
              })).epsilon(1e-10));
        CHECK(phi(3, x, y, z, ctx) ==
              doctest::Approx(tail([&](double u) {
                  return (B * u - t.theta_2) / (t.theta_2 * A);
              })).epsilon(1e-10));
        CHECK(phi(4, x, y, z, ctx) ==
              doctest::Approx(tail([&](double u) {
                  return (t.theta_1 * B * u + t.theta_1) / A;
              })).epsilon(1e-10));
    }
}

TEST_CASE("closed-form G terms equal the event quadrature") {
    const std::array<std::array<double, 6>, 8> cases{{
        {5, 20, 15, 10, 70, 0.3},
        {5, 25, 30, 20, 60, 0.9},
        {5, 25, 30, 20, 80, 0.5},
        {10, 30, 30, 10, 65, 0.7},
        {5, 15, 17, 8, 55, 0.2},
        {12, 12, 12, 12, 70, 0.5},
        {5, 20, 15, 10, 75, 1.0},
        {5, 20, 15, 10, 75, 0.0},
    }};
    const double betas[8] = {0.5, 0.1, 0.5, 0.3, 0.8, 0.5, 0.5, 0.5};
    const double rates[8][2] = {{1.5, 1.5}, {2, 2}, {1, 1}, {2.5, 0.8},
                                {0.7, 2.2}, {1.5, 1.5}, {1.2, 1.2}, {1.2, 1.2}};
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& p = cases[c];
        const SystemConfig cfg = make_cfg({p[0], p[1], p[2], p[3]}, p[4], p[5], betas[c],
                                          rates[c][0], rates[c][1]);
        const OutageContext ctx = make_outage_context(cfg);
        for (int idx = 1; idx <= 11; ++idx) {
            for (Rrh k : {Rrh::i, Rrh::j}) {
                const double closed = g_term(idx, k, ctx);
                const double quad = oracles::g_quadrature(idx, k, ctx);
                CHECK(closed == doctest::Approx(quad).epsilon(1e-8));
                CHECK(closed >= 0.0);
                CHECK(closed <= 1.0);
            }
        }
        CHECK(noma_stuck(Rrh::i, ctx) ==
              doctest::Approx(oracles::g_quadrature(12, Rrh::i, ctx)).epsilon(1e-8));
    }
}

TEST_CASE("G terms match the Monte Carlo event frequencies") {
    const SystemConfig cfg = make_cfg({5, 20, 15, 10}, 70, 0.3, 0.5, 1.5, 1.5);
    const OutageContext ctx = make_outage_context(cfg);
    for (int idx = 1; idx <= 11; ++idx) {
        const Estimate est = mc_g_term(idx, Rrh::j, cfg, 400000, 88, 1);
        const double an = g_term(idx, Rrh::j, ctx);
        const double band =
            4.0 * std::max(est.std_error, std::sqrt(an * (1.0 - an) / 400000.0));
        CHECK(std::fabs(an - est.mean) <= band);
    }
}

TEST_CASE("published single-event closed forms are reproduced") {
    const SystemConfig cfg = make_cfg({5, 25, 30, 20}, 66, 0.55, 0.45, 1.3, 1.9);
    const OutageContext ctx = make_outage_context(cfg);
    const double A = ctx.A(Rrh::i), B = ctx.B(Rrh::i);
    const double t1 = ctx.th.theta_1, t2 = ctx.th.theta_2;
    const double g8 = B * std::exp(-t2 / B) / (B + A * t2) -
                      B * std::exp(-t2 * (1.0 + t1) / B - t1 / A) / (B + A * t2);
    CHECK(g_term(8, Rrh::i, ctx) == doctest::Approx(g8).epsilon(1e-12));
    const double g10 = phi(4, cfg.gains.l_ia, cfg.gains.l_ib, 0.0, ctx) -
                       phi(4, cfg.gains.l_ia, cfg.gains.l_ib, t2 / B, ctx);
    CHECK(g_term(10, Rrh::i, ctx) == doctest::Approx(g10).epsilon(1e-12));
    const double g11 = 1.0 - std::exp(-t2 / B) - g10;
    CHECK(g_term(11, Rrh::i, ctx) == doctest::Approx(g11).epsilon(1e-12));
}

TEST_CASE("G10 approaches the unconditional pass probability for huge theta_2") {
    const SystemConfig cfg = make_cfg({5, 25, 30, 20}, 70, 0.5, 0.5, 1.0, 22.0);
    const OutageContext ctx = make_outage_context(cfg);
    const double A = ctx.A(Rrh::i), B = ctx.B(Rrh::i), t1 = ctx.th.theta_1;
    const double pass_a = A / (A + t1 * B) * std::exp(-t1 / A);
    CHECK(g_term(10, Rrh::i, ctx) == doctest::Approx(pass_a).epsilon(1e-4));
}

TEST_CASE("outage compositions") {
    const SystemConfig cfg = make_cfg({5, 20, 15, 10}, 70, 0.3, 0.5, 1.5, 1.5);
    const OutageContext ctx = make_outage_context(cfg);
    const auto pa_terms = outage_a_products(ctx);
    double sum = 0.0;
    for (double v : pa_terms) sum += v;
    CHECK(outage_a(ctx) == doctest::Approx(sum));
    const auto pb_terms = outage_b_products(ctx);
    sum = 0.0;
    for (double v : pb_terms) sum += v;
    CHECK(outage_b(ctx) == doctest::Approx(sum));
    CHECK(outage_a(ctx) >= 0.0);
    CHECK(outage_a(ctx) <= 1.0);
    CHECK(outage_b(ctx) > outage_a(ctx));  // user b sits farther out
}

TEST_CASE("outage is monotone in SNR and in target rates") {
    SystemConfig cfg = make_cfg({5, 25, 30, 20}, 60, 0.9, 0.1, 1.0, 1.0);
    double pa_prev = 1.0, pb_prev = 1.0;
    for (double snr : {55.0, 65.0, 75.0, 85.0}) {
        cfg.snr_a = cfg.snr_b = db_to_linear(snr);
        const OutageContext ctx = make_outage_context(cfg);
        const double pa = outage_a(ctx), pb = outage_b(ctx);
        CHECK(pa <= pa_prev + 1e-12);
        CHECK(pb <= pb_prev + 1e-12);
        pa_prev = pa;
        pb_prev = pb;
    }
    cfg.snr_a = cfg.snr_b = db_to_linear(70.0);
    pa_prev = 0.0;
    pb_prev = 0.0;
    for (double r : {0.5, 1.0, 1.5, 2.0}) {
        cfg.rate_a = cfg.rate_b = r;
        const OutageContext ctx = make_outage_context(cfg);
        CHECK(outage_a(ctx) >= pa_prev - 1e-12);
        CHECK(outage_b(ctx) >= pb_prev - 1e-12);
        pa_prev = outage_a(ctx);
        pb_prev = outage_b(ctx);
    }
}

TEST_CASE("outage is continuous across condition flips in alpha") {
    // pick (beta, flip) pairs so each gate quantity changes sign inside (0,1)
    struct Flip {
        double beta, alpha;
    };
    std::vector<Flip> flips;
    {
        const ThresholdSet t = thresholds(1.5, 1.5, 0.5);
        flips.push_back({0.5, t.theta_11 * (1.0 + t.theta_1) /
                                  (t.theta_1 * (1.0 + t.theta_11))});        // T3 vs T1
        flips.push_back({0.5, 1.0 - 1.0 / (t.theta_1 * t.theta_2)});          // F3 = 0
        flips.push_back({0.5, t.theta_11 * (1.0 + t.theta_2) /
                                  (1.0 + t.theta_11 * (1.0 + t.theta_2))});   // F1 = 0
    }
    {
        const ThresholdSet t = thresholds(1.5, 1.5, 0.2);  // theta_11 theta_2 < 1
        flips.push_back({0.2, t.theta_11 * (1.0 + t.theta_2) / (1.0 + t.theta_11)});  // F2 = 0
    }
    for (const Flip& f : flips) {
        REQUIRE(f.alpha > 0.0);
        REQUIRE(f.alpha < 1.0);
        SystemConfig cfg = make_cfg({5, 20, 15, 10}, 70, 0.5, f.beta, 1.5, 1.5);
        cfg.alpha = f.alpha - 1e-7;
        const double lo_a = outage_a(make_outage_context(cfg));
        const double lo_b = outage_b(make_outage_context(cfg));
        cfg.alpha = f.alpha + 1e-7;
        const double hi_a = outage_a(make_outage_context(cfg));
        const double hi_b = outage_b(make_outage_context(cfg));
        CHECK(std::fabs(hi_a - lo_a) < 1e-6);
        CHECK(std::fabs(hi_b - lo_b) < 1e-6);
    }
}

TEST_CASE("vanishing target rate removes user-b outage") {
    const SystemConfig cfg = make_cfg({5, 20, 15, 10}, 80, 0.3, 0.5, 1.5, 1e-3);
    CHECK(outage_b(make_outage_context(cfg)) < 1e-2);
}

TEST_CASE("NOMA baseline floors above threshold product one, decays below") {
    SystemConfig cfg = make_cfg({5, 25, 30, 20}, 90, 0.9, 0.1, 2.0, 2.0);
    const double op90 = outage_noma_baseline(make_outage_context(cfg)).first;
    cfg.snr_a = cfg.snr_b = db_to_linear(100.0);
    const double op100 = outage_noma_baseline(make_outage_context(cfg)).first;
    CHECK(op100 / op90 > 0.9);  // theta_1 theta_2 = 9: floor
    cfg.rate_a = cfg.rate_b = 0.5;  // theta_1 theta_2 ~ 0.17: no floor
    double prev = 1.0;
    for (double snr : {60.0, 70.0, 80.0, 90.0}) {
        cfg.snr_a = cfg.snr_b = db_to_linear(snr);
        const double v = outage_noma_baseline(make_outage_context(cfg)).first;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("DU-RSMA escapes the NOMA floor at high SNR") {
    SystemConfig cfg = make_cfg({5, 25, 30, 20}, 90, 0.9, 0.1, 2.0, 2.0);
    const OutageContext c90 = make_outage_context(cfg);
    CHECK(outage_a(c90) < outage_noma_baseline(c90).first);
    cfg.snr_a = cfg.snr_b = db_to_linear(110.0);
    const OutageContext c110 = make_outage_context(cfg);
    CHECK(outage_a(c110) < outage_a(c90) / 3.0);
    CHECK(outage_a(c110) < outage_noma_baseline(c110).first);
}
