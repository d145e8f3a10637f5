// model.cpp — analytic layer implementation.
#include "hypermap/model.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace hypermap {

namespace {

constexpr double kCriticalTol = 1e-13;  // |lambda - lambda_c| below this routes critical

double lambda_of_h(double h) { return h / std::pow(1.0 + 8.0 * h, 1.5); }

// A = (1-4h)/(4h), recurring in the subcritical iterate formula.
double big_a(const ModelParams& mp) { return (1.0 - 4.0 * mp.h) / (4.0 * mp.h); }

}  // namespace

double lambda_critical() {
    static const double v = static_cast<double>(1.0L / (12.0L * sqrtl(3.0L)));
    return v;
}

double solve_h(double lambda) {
    if (!(lambda > 0.0) || lambda > lambda_critical() + 1e-15)
        throw std::domain_error("solve_h: lambda must lie in (0, lambda_c]");
    if (lambda >= lambda_critical()) return 0.25;
    double lo = 0.0, hi = 0.25;
    while (hi - lo > 1e-14) {
        double mid = 0.5 * (lo + hi);
        (lambda_of_h(mid) < lambda ? lo : hi) = mid;
    }
    double h = 0.5 * (lo + hi);
    // one Newton polish; d lambda/dh = (1-4h)/(1+8h)^{5/2}
    double deriv = (1.0 - 4.0 * h) / std::pow(1.0 + 8.0 * h, 2.5);
    if (deriv > 1e-8) {
        double step = (lambda_of_h(h) - lambda) / deriv;
        double polished = h - step;
        if (polished > 0.0 && polished <= 0.25) h = polished;
    }
    return h;
}

ModelParams ModelParams::from_h(double h) {
    if (!(h > 0.0) || h > 0.25 + 1e-15)
        throw std::domain_error("ModelParams: h must lie in (0, 1/4]");
    h = std::min(h, 0.25);
    ModelParams mp;
    mp.h = h;
    mp.lambda = lambda_of_h(h);
    mp.is_critical = std::abs(mp.lambda - lambda_critical()) < kCriticalTol;
    if (mp.is_critical) {
        mp.h = 0.25;
        mp.lambda = lambda_critical();
        mp.m = 1.0;
        mp.b = 0.0;
    } else {
        double s = std::sqrt(1.0 - 4.0 * h);
        mp.m = 2.0 * h / (1.0 - 2.0 * h + s);  // rationalized, stable near h=0
        mp.b = -0.5 * std::log(mp.m);
    }
    return mp;
}

ModelParams ModelParams::from_lambda(double lambda) { return from_h(solve_h(lambda)); }

ModelParams ModelParams::from_m(double m) {
    if (!(m > 0.0) || m > 1.0 + 1e-15)
        throw std::domain_error("ModelParams: m must lie in (0, 1]");
    if (m >= 1.0) return from_h(0.25);
    // m = 2h/(1-2h+sqrt(1-4h))  <=>  h = m(1+m)^{-2}... invert by bisection.
    double lo = 0.0, hi = 0.25;
    while (hi - lo > 1e-15) {
        double mid = 0.5 * (lo + hi);
        double s = std::sqrt(1.0 - 4.0 * mid);
        double mm = 2.0 * mid / (1.0 - 2.0 * mid + s);
        (mm < m ? lo : hi) = mid;
    }
    return from_h(0.5 * (lo + hi));
}

// --- enumeration -------------------------------------------------------------

namespace {

using BigInt = boost::multiprecision::cpp_int;

// odd double factorial with (-1)!! = (0)!! = 1; k >= -1
BigInt dfact(long k) {
    BigInt r = 1;
    for (long v = k; v > 1; v -= 2) r *= v;
    return r;
}

BigInt factorial(long k) {
    BigInt r = 1;
    for (long v = 2; v <= k; ++v) r *= v;
    return r;
}

BigInt count_tnp_big(std::uint32_t n, std::uint32_t p) {
    if (p == 0) throw std::domain_error("count_triangulations: p >= 1 required");
    if (n == 0 && p == 1) return 0;  // no triangulation of the 1-gon without inner vertices
    long pp = p, nn = n;
    if (2 * pp + 3 * nn - 5 < -1)
        throw std::domain_error("count_triangulations: outside formula validity");
    BigInt num = pp * factorial(2 * pp) * dfact(2 * pp + 3 * nn - 5);
    BigInt den = factorial(pp) * factorial(pp) * factorial(nn) * dfact(2 * pp + nn - 1);
    // 4^{n-1}: multiply 4^n into numerator, 4 into denominator
    num <<= 2 * nn;
    den <<= 2;
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw std::logic_error("count_triangulations: non-integer result");
    return q;
}

}  // namespace

std::string count_triangulations_str(std::uint32_t n, std::uint32_t p) {
    return count_tnp_big(n, p).str();
}

double count_triangulations(std::uint32_t n, std::uint32_t p) {
    return static_cast<double>(count_tnp_big(n, p));
}

double asymptotic_enumeration_constant(std::uint32_t p) {
    // c(p) = 3^{p-2} p (2p)! / (4 sqrt(2 pi) (p!)^2)
    double lg = (p - 2.0) * std::log(3.0) + std::lgamma(2.0 * p + 1.0) -
                2.0 * std::lgamma(p + 1.0);
    return p * std::exp(lg) / (4.0 * std::sqrt(2.0 * M_PI));
}

// --- disk & cone weights ------------------------------------------------------

double log_disk_weight(const ModelParams& mp, std::uint32_t p) {
    if (p == 0) throw std::domain_error("disk_weight: p >= 1 required");
    double h = mp.h;
    if (p == 1) return std::log(0.5 - (1.0 + 2.0 * h) / (2.0 * std::sqrt(1.0 + 8.0 * h)));
    // w(p) = (2+16h)^p (2p-5)!!/p! ((1-4h)p+6h) / (4 (1+8h)^{3/2})
    // (2p-5)!! = (2p-4)! / (2^{p-2} (p-2)!)  for p >= 2, with (-1)!! = 1 at p = 2.
    double ld;
    if (p == 2) {
        ld = 0.0;
    } else {
        ld = std::lgamma(2.0 * p - 3.0) - (p - 2.0) * std::log(2.0) - std::lgamma(p - 1.0);
    }
    return p * std::log(2.0 + 16.0 * h) + ld - std::lgamma(p + 1.0) +
           std::log((1.0 - 4.0 * h) * p + 6.0 * h) - std::log(4.0) -
           1.5 * std::log1p(8.0 * h);
}

double disk_weight(const ModelParams& mp, std::uint32_t p) {
    if (p == 1) return 0.5 - (1.0 + 2.0 * mp.h) / (2.0 * std::sqrt(1.0 + 8.0 * mp.h));
    return std::exp(log_disk_weight(mp, p));
}

double disk_generating(const ModelParams& mp, double x) {
    double h = mp.h, lam = mp.lambda;
    double rad = 1.0 - 4.0 * (1.0 + 8.0 * h) * x;
    if (x < 0.0 || rad < -1e-12)
        throw std::domain_error("disk_generating: x outside [0, 1/(4(1+8h))]");
    rad = std::max(rad, 0.0);
    return 0.5 * lam *
           ((1.0 - (1.0 + 8.0 * h) / h * x) * std::sqrt(rad) - 1.0 + x / lam);
}

double cone_weight(const ModelParams& mp, std::uint32_t p) {
    if (p == 0) throw std::domain_error("cone_weight: p >= 1 required");
    double h = mp.h;
    double s = 0.0, term = 1.0;  // term = binom(2q,q) h^q
    for (std::uint32_t q = 0; q < p; ++q) {
        s += term;
        term *= h * (2.0 * (2.0 * q + 1.0)) / (q + 1.0);
    }
    return s / mp.lambda * std::pow(8.0 + 1.0 / h, double(p) - 1.0);
}

double cone_generating(const ModelParams& mp, double x) {
    double h = mp.h;
    double pole = 1.0 - (1.0 + 8.0 * h) / h * x;
    double rad = 1.0 - 4.0 * (1.0 + 8.0 * h) * x;
    if (x < 0.0 || pole <= 0.0 || rad <= 0.0)
        throw std::domain_error("cone_generating: x outside the convergence domain");
    return x / (mp.lambda * pole * std::sqrt(rad));
}

// --- theta -------------------------------------------------------------------

double theta(const ModelParams& mp, std::uint32_t i) {
    // theta(i) = h^i (Cat_i - h Cat_{i+1}); matches (1+8h)^{-1/2} (h/(1+8h))^i w(i+2).
    double h = mp.h;
    if (i == 0) return 1.0 - h;
    double cat = 1.0;  // Cat_0
    double hi = 1.0;
    for (std::uint32_t k = 0; k < i; ++k) {
        cat *= 2.0 * (2.0 * k + 1.0) / (k + 2.0);  // Cat_{k+1}
        hi *= h;
    }
    double cat_next = cat * 2.0 * (2.0 * i + 1.0) / (i + 2.0);
    return hi * (cat - h * cat_next);
}

double g_of(const ModelParams& mp, double x) {
    double h = mp.h;
    if (x == 0.0) return 1.0 - h;
    if (x == 1.0) return 1.0;
    return 1.0 / x - (1.0 - x) * (1.0 - std::sqrt(1.0 - 4.0 * h * x)) / (2.0 * h * x * x);
}

double g_prime(const ModelParams& mp, double x) {
    double h = mp.h;
    if (x == 0.0) return h * (1.0 - 2.0 * h);  // theta(1)
    double s = std::sqrt(1.0 - 4.0 * h * x);
    // d/dx [ 1/x - (1-x)(1-s)/(2h x^2) ]
    double one_minus_s = 1.0 - s;
    double d_oms = 2.0 * h / s;  // d(1-s)/dx
    double f = (1.0 - x) * one_minus_s;
    double fp = -one_minus_s + (1.0 - x) * d_oms;
    return -1.0 / (x * x) - (fp * x - 2.0 * f) / (2.0 * h * x * x * x);
}

double one_minus_g_iter(const ModelParams& mp, std::uint32_t r, double u) {
    if (u <= 0.0) return 0.0;
    if (r == 0) return u;
    if (mp.is_critical) {
        double t = double(r) + 1.0 / std::sqrt(u);
        return 1.0 / (t * t);
    }
    double A = big_a(mp);
    double z = std::sqrt(A / u);
    double s = std::sinh(std::asinh(z) + double(r) * mp.b);
    return A / (s * s);
}

double g_iter(const ModelParams& mp, std::uint32_t r, double x) {
    if (x >= 1.0) return 1.0;
    if (r == 0) return x;
    return 1.0 - one_minus_g_iter(mp, r, 1.0 - x);
}

double mu(const ModelParams& mp, std::uint32_t k) {
    if (k == 0) return 0.0;
    return mp.m * std::pow(1.0 - mp.m, double(k) - 1.0);
}

double Pi(const ModelParams& mp, double x) {
    if (mp.is_critical) return 2.0 * (1.0 / std::sqrt(1.0 - x) - 1.0);
    double s = std::sqrt(1.0 - 4.0 * mp.h);
    double t = (s + 1.0) / (s + std::sqrt(1.0 - 4.0 * mp.h * x));
    return (1.0 - (1.0 - x) * t * t) / s;
}

double Pi_prime(const ModelParams& mp, double x) {
    if (mp.is_critical) return std::pow(1.0 - x, -1.5);
    double h = mp.h;
    double s = std::sqrt(1.0 - 4.0 * h);
    double sx = std::sqrt(1.0 - 4.0 * h * x);
    double t = (s + 1.0) / (s + sx);
    // d/dx [ -(1-x) t(x)^2 ] = t^2 - (1-x) * 2 t t'
    double tp = (s + 1.0) * (2.0 * h / sx) / ((s + sx) * (s + sx));
    return (t * t - (1.0 - x) * 2.0 * t * tp) / s;
}

series::Coeffs pi_series(const ModelParams& mp, std::size_t order) {
    using namespace series;
    if (mp.is_critical) {
        // 2((1-x)^{-1/2} - 1): coefficients 2 binom(2k,k) 4^{-k}
        Coeffs c(order + 1, 0.0);
        double term = 1.0;
        for (std::size_t k = 1; k <= order; ++k) {
            term *= (2.0 * (2.0 * k - 1.0)) / (4.0 * k);  // binom(2k,k)4^{-k}
            c[k] = 2.0 * term;
        }
        return c;
    }
    double h = mp.h;
    double s = std::sqrt(1.0 - 4.0 * h);
    Coeffs sx = sqrt_linear(-4.0 * h, order);  // sqrt(1-4hx)
    Coeffs den = sx;
    den[0] += s;
    Coeffs t2 = inverse(mul(den, den, order), order);
    for (auto& v : t2) v *= (s + 1.0) * (s + 1.0);
    // Pi = (1 - (1-x) t2)/s
    Coeffs one_minus_x{1.0, -1.0};
    Coeffs prod = mul(one_minus_x, t2, order);
    Coeffs out(order + 1, 0.0);
    for (std::size_t k = 0; k <= order; ++k) out[k] = ((k == 0 ? 1.0 : 0.0) - prod[k]) / s;
    return out;
}

double pi_coeff(const ModelParams& mp, std::uint32_t p) {
    if (p == 0) throw std::domain_error("pi_coeff: p >= 1 required");
    if (mp.is_critical) {
        double term = 1.0;
        for (std::uint32_t k = 1; k <= p; ++k) term *= (2.0 * (2.0 * k - 1.0)) / (4.0 * k);
        return 2.0 * term;
    }
    static thread_local std::vector<std::pair<double, series::Coeffs>> cache;
    for (auto& [hh, c] : cache)
        if (hh == mp.h && c.size() > p) return c[p];
    std::size_t order = std::max<std::size_t>(512, p + 1);
    auto c = pi_series(mp, order);
    cache.push_back({mp.h, c});
    if (cache.size() > 4) cache.erase(cache.begin());
    return p < c.size() ? c[p] : 0.0;
}

double h_weight(const ModelParams& mp, std::uint32_t p) {
    if (p == 0) throw std::domain_error("h_weight: p >= 1 required");
    double h = mp.h;
    double s = 0.0, term = 1.0;
    for (std::uint32_t q = 0; q < p; ++q) {
        s += term;
        term *= h * (2.0 * (2.0 * q + 1.0)) / (q + 1.0);
    }
    return s / (mp.lambda * double(p) * (8.0 + 1.0 / h));
}

// --- series tables -------------------------------------------------------------

SeriesTable series_table(const ModelParams& mp, SeriesKind kind, std::uint32_t pmax) {
    SeriesTable t;
    t.kind = kind;
    switch (kind) {
        case SeriesKind::disk_w:
            t.first_index = 1;
            for (std::uint32_t p = 1; p <= pmax; ++p)
                t.coefficients.push_back(disk_weight(mp, p));
            break;
        case SeriesKind::cone_c:
            t.first_index = 1;
            for (std::uint32_t p = 1; p <= pmax; ++p)
                t.coefficients.push_back(cone_weight(mp, p));
            break;
        case SeriesKind::theta:
            t.first_index = 0;
            for (std::uint32_t i = 0; i <= pmax; ++i) t.coefficients.push_back(theta(mp, i));
            break;
        case SeriesKind::pi:
            t.first_index = 1;
            for (std::uint32_t p = 1; p <= pmax; ++p) t.coefficients.push_back(pi_coeff(mp, p));
            break;
        case SeriesKind::mu:
            t.first_index = 1;
            for (std::uint32_t k = 1; k <= pmax; ++k) t.coefficients.push_back(mu(mp, k));
            break;
        case SeriesKind::countTnp:
            t.first_index = 0;
            for (std::uint32_t n = 0; n <= pmax; ++n)
                t.coefficients.push_back(count_triangulations(n, 1));
            break;
    }
    return t;
}

void dump_series_csv(const SeriesTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("dump_series_csv: cannot open " + path);
    out << "index,value\n";
    out.precision(17);
    for (std::size_t k = 0; k < t.coefficients.size(); ++k)
        out << (t.first_index + k) << "," << t.coefficients[k] << "\n";
}

series::Coeffs g_iter_series(const ModelParams& mp, std::uint32_t r, std::size_t order) {
    using namespace series;
    if (r == 0) {
        Coeffs c(order + 1, 0.0);
        if (order >= 1) c[1] = 1.0;
        return c;
    }
    Coeffs out(order + 1, 0.0);
    if (mp.is_critical) {
        // 1 - (1-x)/(1 + t sqrt(1-x))^2, t = r
        double t = double(r);
        Coeffs s = sqrt_linear(-1.0, order);  // sqrt(1-x)
        Coeffs den(order + 1, 0.0);
        for (std::size_t k = 0; k <= order; ++k) den[k] = t * s[k];
        den[0] += 1.0;
        Coeffs inv = inverse(mul(den, den, order), order);
        Coeffs frac = mul(Coeffs{1.0, -1.0}, inv, order);
        for (std::size_t k = 0; k <= order; ++k) out[k] = (k == 0 ? 1.0 : 0.0) - frac[k];
        return out;
    }
    // 1 - g^{o r}(x) = A(1-x) / [ A ch^2 + sh^2 (A+1-x) + sh(2c) sqrt(A) sqrt(A+1-x) ]
    double A = big_a(mp);
    double c = double(r) * mp.b;
    double ch = std::cosh(c), sh = std::sinh(c);
    Coeffs root = sqrt_linear(-1.0 / (A + 1.0), order);  // sqrt(1 - x/(A+1))
    double sA1 = std::sqrt(A + 1.0);
    Coeffs den(order + 1, 0.0);
    for (std::size_t k = 0; k <= order; ++k)
        den[k] = std::sinh(2.0 * c) * std::sqrt(A) * sA1 * root[k];
    den[0] += A * ch * ch + sh * sh * (A + 1.0);
    if (order >= 1) den[1] += -sh * sh;
    Coeffs inv = inverse(den, order);
    Coeffs frac = mul(Coeffs{A, -A}, inv, order);
    for (std::size_t k = 0; k <= order; ++k) out[k] = (k == 0 ? 1.0 : 0.0) - frac[k];
    return out;
}

// --- perimeter transition kernel ------------------------------------------------

std::vector<double> perimeter_transition_row(const ModelParams& mp, std::uint32_t p,
                                             std::uint32_t steps, std::uint32_t qmax,
                                             double* tail_bound) {
    if (p == 0) throw std::domain_error("perimeter_transition: p >= 1 required");
    std::vector<double> row(qmax + 1, 0.0);
    if (steps == 0) {
        if (p <= qmax) row[p] = 1.0;
        if (tail_bound) *tail_bound = (p <= qmax) ? 0.0 : 1.0;
        return row;
    }
    auto G = g_iter_series(mp, steps, p);
    double hp = h_weight(mp, p);
    series::Coeffs pw(p + 1, 0.0);
    pw[0] = 1.0;
    double total = 0.0;
    for (std::uint32_t q = 1; q <= qmax; ++q) {
        pw = series::mul(pw, G, p);
        double v = h_weight(mp, q) / hp * pw[p];
        row[q] = v;
        total += v;
    }
    if (tail_bound) *tail_bound = std::max(0.0, 1.0 - total);
    return row;
}

double perimeter_transition(const ModelParams& mp, std::uint32_t p, std::uint32_t q,
                            std::uint32_t steps) {
    if (p == 0 || q == 0) throw std::domain_error("perimeter_transition: p,q >= 1");
    if (steps == 0) return p == q ? 1.0 : 0.0;
    auto G = g_iter_series(mp, steps, p);
    auto pw = series::pow(G, q, p);
    return h_weight(mp, q) / h_weight(mp, p) * pw[p];
}

PerimeterMarginal perimeter_marginal(const ModelParams& mp, std::uint32_t r) {
    PerimeterMarginal pm;
    pm.one_minus_a0 = one_minus_g_iter(mp, r, 1.0);
    double log_a1 = 0.0;
    double x = 0.0;
    for (std::uint32_t t = 0; t < r; ++t) {
        log_a1 += std::log(g_prime(mp, x));
        x = g_of(mp, x);
    }
    pm.log_a1 = log_a1;
    return pm;
}

double perimeter_marginal_mean(const ModelParams& mp, std::uint32_t r) {
    // E[P_r] = a1 kappa C'(kappa a0) / h(1), with 1 - beta kappa a0 = 1 - a0 stable.
    auto pm = perimeter_marginal(mp, r);
    double h = mp.h, lam = mp.lambda;
    double kappa = h / (1.0 + 8.0 * h);
    double beta = (1.0 + 8.0 * h) / h;
    double u = pm.one_minus_a0;
    double a0 = 1.0 - u;
    double x = kappa * a0;
    double s2 = 1.0 - 4.0 * h * a0;  // = 1 - 4(1+8h) x
    double C = x / (lam * u * std::sqrt(s2));
    double Cp = C * (1.0 / x + beta / u + 2.0 * (1.0 + 8.0 * h) / s2);
    double h1 = h_weight(mp, 1);
    return std::exp(pm.log_a1) * kappa * Cp / h1;
}

}  // namespace hypermap
