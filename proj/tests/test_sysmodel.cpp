#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "durs/channel.hpp"
#include "durs/system.hpp"

using namespace durs;

TEST_CASE("path loss examples and domain") {
    CHECK(path_loss(10, 1e-3, 2.5) == doctest::Approx(3.1623e-6).epsilon(1e-4));
    CHECK(path_loss(1, 1e-3, 2.5) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(path_loss(30, 1e-3, 2.5) == doctest::Approx(2.0286e-7).epsilon(1e-4));
    CHECK_THROWS_AS(path_loss(0, 1e-3, 2.5), std::domain_error);
    CHECK_THROWS_AS(path_loss(-3, 1e-3, 2.5), std::domain_error);
    CHECK_THROWS_AS(path_loss(10, 0, 2.5), std::domain_error);
}

TEST_CASE("path loss is decreasing in distance and linear in c") {
    double prev = path_loss(0.5, 2e-3, 2.7);
    for (double d : {1.0, 2.0, 7.0, 31.0, 120.0}) {
        const double v = path_loss(d, 2e-3, 2.7);
        CHECK(v < prev);
        prev = v;
        CHECK(path_loss(d, 6e-3, 2.7) == doctest::Approx(3.0 * v).epsilon(1e-13));
    }
}

TEST_CASE("threshold examples") {
    const ThresholdSet t = thresholds(1.5, 1.5, 0.5);
    CHECK(t.theta_11 == doctest::Approx(0.6818).epsilon(1e-4));
    CHECK(t.theta_12 == doctest::Approx(0.6818).epsilon(1e-4));
    CHECK(t.theta_1 == doctest::Approx(1.8284).epsilon(1e-4));
    CHECK(t.theta_2 == doctest::Approx(1.8284).epsilon(1e-4));

    const ThresholdSet z = thresholds(2.0, 1.0, 0.0);
    CHECK(z.theta_11 == 0.0);
    CHECK(z.theta_12 == z.theta_1);

    const ThresholdSet r = thresholds(2.0, 2.0, 0.5);
    CHECK(r.theta_1 == doctest::Approx(3.0));
    CHECK(r.theta_2 == doctest::Approx(3.0));
    CHECK(r.theta_1 * r.theta_2 > 1.0);

    CHECK_THROWS_AS(thresholds(0.0, 1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(thresholds(1.0, -2.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(thresholds(1.0, 1.0, 1.5), std::domain_error);
}

TEST_CASE("threshold split identity") {
    std::uint64_t s = 9;
    for (int i = 0; i < 200; ++i) {
        const double ra = 0.05 + 6.0 * detail::uniform01(detail::mix64(s++));
        const double rb = 0.05 + 6.0 * detail::uniform01(detail::mix64(s++));
        const double beta = detail::uniform01(detail::mix64(s++));
        const ThresholdSet t = thresholds(ra, rb, beta);
        const double lhs = (1.0 + t.theta_11) * (1.0 + t.theta_12);
        CHECK(lhs == doctest::Approx(1.0 + t.theta_1).epsilon(1e-12));
    }
}

TEST_CASE("channel sampling is a pure function of seed and index") {
    ChannelSampler gen(42);
    const ChannelSample a = gen.next();
    const ChannelSample b = gen.next();
    CHECK(a.g_ia == channel_at(42, 0).g_ia);
    CHECK(b.g_jb == channel_at(42, 1).g_jb);
    ChannelSampler again(42);
    const ChannelSample a2 = again.next();
    CHECK(a.g_ia == a2.g_ia);
    CHECK(a.g_ib == a2.g_ib);
    CHECK(channel_at(42, 0).g_ia != channel_at(43, 0).g_ia);
}

TEST_CASE("channel components are unit-mean exponential") {
    const std::uint64_t n = 1000000;
    double mean[4] = {};
    std::uint64_t tail = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const ChannelSample s = channel_at(7, i);
        mean[0] += s.g_ia;
        mean[1] += s.g_ib;
        mean[2] += s.g_ja;
        mean[3] += s.g_jb;
        tail += s.g_ia > 1.0;
    }
    for (double m : mean) CHECK(std::fabs(m / n - 1.0) < 0.004);  // 4 sigma of Exp(1)
    const double p = std::exp(-1.0);
    CHECK(std::fabs(static_cast<double>(tail) / n - p) <
          4.0 * std::sqrt(p * (1.0 - p) / n));
}

TEST_CASE("empirical CDF within the DKW band of Exp(1)") {
    const std::size_t n = 100000;
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = channel_at(11, i).g_ja;
    std::sort(xs.begin(), xs.end());
    // 99% band: sqrt(ln(2/0.01) / (2n))
    const double eps = std::sqrt(std::log(200.0) / (2.0 * n));
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double F = 1.0 - std::exp(-xs[i]);
        sup = std::max(sup, std::fabs(F - static_cast<double>(i + 1) / n));
        sup = std::max(sup, std::fabs(F - static_cast<double>(i) / n));
    }
    CHECK(sup < eps);
}

TEST_CASE("config validation") {
    SystemConfig cfg;
    cfg.gains = link_gains({10, 20, 20, 10, 1e-3, 2.5});
    cfg.snr_a = cfg.snr_b = 100.0;
    CHECK_NOTHROW(validate(cfg));
    cfg.alpha = 1.2;
    CHECK_THROWS_AS(validate(cfg), std::domain_error);
    cfg.alpha = 0.5;
    cfg.snr_b = 0.0;
    CHECK_THROWS_AS(validate(cfg), std::domain_error);
}
