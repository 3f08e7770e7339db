#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace durs {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

namespace detail {

// E1 power series, x in (0, 1].
inline double e1_series(double x) {
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 64; ++k) {
        term *= -x / k;
        const double add = -term / k;
        sum += add;
        if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
    }
    return sum - euler_gamma - std::log(x);
}

// Continued fraction for e^x * E1(x), x >= 1 (modified Lentz).
inline double e1_cf_scaled(double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 20000; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) return h;
    }
    throw std::runtime_error("expint: continued fraction failed to converge");
}

}  // namespace detail

// e^x * E1(x) for x > 0; never overflows, the form the rate expressions need.
inline double expint_e1_scaled(double x) {
    if (!(x > 0.0)) throw std::domain_error("expint_e1_scaled: x must be positive");
    if (x <= 1.0) return std::exp(x) * detail::e1_series(x);
    return detail::e1_cf_scaled(x);
}

inline double expint_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("expint_e1: x must be positive");
    if (x <= 1.0) return detail::e1_series(x);
    return detail::e1_cf_scaled(x) * std::exp(-x);
}

// Principal-value exponential integral Ei(x), x != 0.
inline double expint_ei(double x) {
    if (x == 0.0) throw std::domain_error("expint_ei: x = 0");
    if (x < 0.0) return -expint_e1(-x);
    // all-positive power series, valid for every x > 0
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 4000; ++k) {
        term *= x / k;
        sum += term / k;
        if (!std::isfinite(sum)) throw std::overflow_error("expint_ei: overflow");
        if (term / k < 1e-17 * sum && k > 4) break;
    }
    const double r = euler_gamma + std::log(x) + sum;
    if (!std::isfinite(r)) throw std::overflow_error("expint_ei: overflow");
    return r;
}

inline double bessel_i0(double x) {
    const double q = 0.25 * x * x;
    double sum = 1.0, t = 1.0;
    for (int k = 1; k < 1000; ++k) {
        t *= q / (static_cast<double>(k) * k);
        sum += t;
        if (t < 1e-17 * sum) break;
    }
    return sum;
}

inline double bessel_i1(double x) {
    const double q = 0.25 * x * x;
    double sum = 1.0, t = 1.0;
    for (int k = 1; k < 1000; ++k) {
        t *= q / (static_cast<double>(k) * (k + 1));
        sum += t;
        if (t < 1e-17 * sum) break;
    }
    return 0.5 * x * sum;
}

namespace detail {

// Thompson-Barnett continued fraction for K0 and K1, x >= 2.
inline std::pair<double, double> k01_cf2(double x) {
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 30000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (a * d + b);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < 1e-16) {
            h = a1 * h;
            const double k0 = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) / s;
            const double k1 = k0 * (x + 0.5 - h) / x;
            return {k0, k1};
        }
    }
    throw std::runtime_error("bessel_k: continued fraction failed to converge");
}

}  // namespace detail

inline double bessel_k0(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k0: x must be positive");
    if (x >= 2.0) return detail::k01_cf2(x).first;
    const double q = 0.25 * x * x;
    double t = 1.0, hk = 0.0, sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        t *= q / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        sum += t * hk;
        if (t * hk < 1e-18 * (sum + 1.0)) break;
    }
    return -(std::log(0.5 * x) + euler_gamma) * bessel_i0(x) + sum;
}

inline double bessel_k1(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k1: x must be positive");
    if (x >= 2.0) return detail::k01_cf2(x).second;
    const double q = 0.25 * x * x;
    // sum_k (psi(k+1)+psi(k+2)) q^k / (k! (k+1)!) with psi(1) = -gamma
    double t = 1.0, hk = 0.0, hk1 = 1.0;
    double sum = t * (hk + hk1 - 2.0 * euler_gamma);
    for (int k = 1; k < 200; ++k) {
        t *= q / (static_cast<double>(k) * (k + 1));
        hk += 1.0 / k;
        hk1 += 1.0 / (k + 1);
        const double add = t * (hk + hk1 - 2.0 * euler_gamma);
        sum += add;
        if (std::fabs(add) < 1e-18 * (std::fabs(sum) + 1.0)) break;
    }
    return 1.0 / x + std::log(0.5 * x) * bessel_i1(x) - 0.25 * x * sum;
}

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1,1].
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void gk15(F& f, double lo, double hi, double& value, double& err) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * gk_nodes[i];
        const double fv = (i == 7) ? f(c) : f(c - dx) + f(c + dx);
        resk += gk_wk[i] * fv;
        if (i % 2 == 1) resg += gk_wg[i / 2] * fv;  // odd indices form the Gauss-7 subset
    }
    value = resk * h;
    err = std::fabs((resk - resg) * h);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration; b may be +infinity (mapped to [0,1)).
// Stops once the error estimate falls below max(tol, 1e-14*|value|), so tol
// acts as an absolute floor while tiny-valued integrals are still resolved
// to near full relative precision.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double tol = 1e-10,
                           long max_evals = 4000000) {
    struct Seg {
        double lo, hi, value, err;
    };
    auto eval = [&](auto&& g) {
        std::vector<Seg> segs;
        long evals = 0;
        auto push = [&](double lo, double hi) {
            Seg s{lo, hi, 0.0, 0.0};
            detail::gk15(g, lo, hi, s.value, s.err);
            evals += 15;
            segs.push_back(s);
        };
        push(0.0, 1.0);
        while (true) {
            double total = 0.0, toterr = 0.0;
            std::size_t worst = 0;
            for (std::size_t k = 0; k < segs.size(); ++k) {
                total += segs[k].value;
                toterr += segs[k].err;
                if (segs[k].err > segs[worst].err) worst = k;
            }
            if (toterr <= std::max(tol, 1e-14 * std::fabs(total)) || segs[worst].err == 0.0)
                return QuadratureResult{total, toterr, evals};
            if (evals >= max_evals)
                throw std::runtime_error("integrate: evaluation budget exhausted");
            const Seg s = segs[worst];
            segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(worst));
            const double mid = 0.5 * (s.lo + s.hi);
            push(s.lo, mid);
            push(mid, s.hi);
        }
    };

    if (std::isinf(b)) {
        auto g = [&](double t) {
            const double om = 1.0 - t;
            const double x = a + t / om;
            return f(x) / (om * om);
        };
        return eval(g);
    }
    auto g = [&](double t) { return f(a + (b - a) * t) * (b - a); };
    return eval(g);
}

}  // namespace durs
