// Analytic layer tests. Derived expectations are computed here by the stated
// independent oracles (series truncation, numeric composition, finite
// differences) and the paper-quoted values are asserted directly.
#include <cmath>
#include <vector>

#include "doctest.h"
#include "hypermap/model.hpp"

using namespace hypermap;

namespace {
const double kSqrt3 = std::sqrt(3.0);
ModelParams sub() { return ModelParams::from_h(0.125); }
ModelParams crit() { return ModelParams::from_h(0.25); }
}  // namespace

TEST_CASE("solve_h endpoints and forward evaluation") {
    CHECK(solve_h(lambda_critical()) == doctest::Approx(0.25).epsilon(1e-12));
    // forward-evaluated lambda at h = 1/8 is 2^{-3/2}/8
    double lam8 = std::pow(2.0, -1.5) / 8.0;
    CHECK(solve_h(lam8) == doctest::Approx(0.125).epsilon(1e-12));
    // h/lambda -> 1 as lambda -> 0
    for (double lam : {1e-4, 1e-6}) {
        double h = solve_h(lam);
        CHECK(h / lam == doctest::Approx(1.0).epsilon(2e-3));
    }
    CHECK_THROWS_AS(solve_h(0.0), std::domain_error);
    CHECK_THROWS_AS(solve_h(0.05), std::domain_error);
    // residual below 1e-14
    for (double h0 : {0.01, 0.125, 0.22, 0.2499}) {
        double lam = h0 / std::pow(1.0 + 8.0 * h0, 1.5);
        double h = solve_h(lam);
        CHECK(std::abs(h / std::pow(1.0 + 8.0 * h, 1.5) - lam) < 1e-14);
    }
}

TEST_CASE("ModelParams invariants") {
    for (double h : {0.02, 0.125, 0.2, 0.24}) {
        auto mp = ModelParams::from_h(h);
        CHECK(!mp.is_critical);
        CHECK(mp.m == doctest::Approx((1 - 2 * h - std::sqrt(1 - 4 * h)) / (2 * h)).epsilon(1e-12));
        CHECK(std::abs(mp.b + 0.5 * std::log(mp.m)) < 1e-12);
        CHECK(std::abs(mp.b - std::acosh(1.0 / std::sqrt(4.0 * h))) < 1e-12);
        auto mp2 = ModelParams::from_m(mp.m);
        CHECK(mp2.h == doctest::Approx(h).epsilon(1e-10));
    }
    auto c = crit();
    CHECK(c.is_critical);
    CHECK(c.m == 1.0);
    CHECK(c.b == 0.0);
    CHECK(ModelParams::from_lambda(lambda_critical()).is_critical);
}

TEST_CASE("count_triangulations small values and conventions") {
    CHECK(count_triangulations(0, 2) == 1);  // the single edge
    CHECK(count_triangulations(1, 1) == 1);
    CHECK(count_triangulations(2, 1) == 4);
    CHECK(count_triangulations(0, 1) == 0);
    CHECK(count_triangulations(0, 3) == 1);
    CHECK(count_triangulations(1, 2) == 3);
    CHECK(count_triangulations(3, 1) == 32);
    CHECK(count_triangulations_str(2, 3) == "120");
    // grows without overflow
    CHECK(count_triangulations_str(30, 1).size() > 20);
}

TEST_CASE("disk_weight closed forms and series oracle") {
    auto c = crit();
    CHECK(disk_weight(c, 1) == doctest::Approx(0.5 - kSqrt3 / 4.0).epsilon(1e-14));
    for (double h : {0.05, 0.125, 0.22}) {
        auto mp = ModelParams::from_h(h);
        CHECK(disk_weight(mp, 2) ==
              doctest::Approx((1.0 - h) * std::sqrt(1.0 + 8.0 * h)).epsilon(1e-13));
    }
    // truncated series oracle sum_{n<=40} #T_{n,1} lambda^n at lambda = lambda_c/2
    auto mp = ModelParams::from_lambda(lambda_critical() / 2.0);
    double s = 0.0, lam_pow = 1.0;
    for (std::uint32_t n = 0; n <= 40; ++n) {
        s += count_triangulations(n, 1) * lam_pow;
        lam_pow *= mp.lambda;
    }
    CHECK(std::abs(s - disk_weight(mp, 1)) < 1e-10);
    // log form agrees with direct form
    for (std::uint32_t p : {2u, 3u, 10u, 40u})
        CHECK(std::exp(log_disk_weight(mp, p)) == doctest::Approx(disk_weight(mp, p)).epsilon(1e-12));
}

TEST_CASE("disk_generating: boundary cases, coefficient oracle, peeling identity") {
    auto mp = sub();
    CHECK(disk_generating(mp, 0.0) == 0.0);
    CHECK_THROWS_AS(disk_generating(mp, 1.0), std::domain_error);
    // coefficient oracle by series division is replaced by direct high-order
    // finite differences on a Chebyshev-safe small radius: use the series of
    // W assembled from w(p) itself as the cross-check.
    double x = 0.01;
    double direct = disk_generating(mp, x);
    double fromw = 0.0, xp = 1.0;
    for (std::uint32_t p = 1; p <= 60; ++p) {
        xp *= x;
        fromw += disk_weight(mp, p) * xp;
    }
    CHECK(direct == doctest::Approx(fromw).epsilon(1e-10));
    // peeling-sum identity: 1/sqrt(1+8h) + 2(8+1/h) W(h/(1+8h)) = 1
    for (double h : {0.05, 0.125, 0.22, 0.25}) {
        auto q = ModelParams::from_h(h);
        double val = 1.0 / std::sqrt(1.0 + 8.0 * h) +
                     2.0 * (8.0 + 1.0 / h) * disk_generating(q, h / (1.0 + 8.0 * h));
        CHECK(std::abs(val - 1.0) < 1e-12);
    }
}

TEST_CASE("cone weights match the generating function") {
    auto mp = sub();
    CHECK(cone_weight(mp, 1) == doctest::Approx(1.0 / mp.lambda).epsilon(1e-13));
    for (std::uint32_t p = 1; p <= 50; ++p) CHECK(cone_weight(mp, p) > 0.0);
    // coefficient oracle: evaluate C at small x vs the partial sum
    double x = 0.002;
    double direct = cone_generating(mp, x);
    double s = 0.0, xp = 1.0;
    for (std::uint32_t p = 1; p <= 40; ++p) {
        xp *= x;
        s += cone_weight(mp, p) * xp;
    }
    CHECK(direct == doctest::Approx(s).epsilon(1e-8));
}

TEST_CASE("theta: paper values, w-based identity, normalization") {
    for (double h : {0.05, 0.125, 0.22, 0.25}) {
        auto mp = ModelParams::from_h(h);
        CHECK(theta(mp, 0) == doctest::Approx(1.0 - h).epsilon(1e-14));
        CHECK(theta(mp, 1) == doctest::Approx(h * (1.0 - 2.0 * h)).epsilon(1e-13));
        // theta(i) = (1+8h)^{-1/2} (h/(1+8h))^i w(i+2)
        for (std::uint32_t i = 0; i <= 12; ++i) {
            double viaw = std::pow(1.0 + 8.0 * h, -0.5) *
                          std::pow(h / (1.0 + 8.0 * h), double(i)) * disk_weight(mp, i + 2);
            CHECK(theta(mp, i) == doctest::Approx(viaw).epsilon(1e-11));
        }
        CHECK(g_of(mp, 1.0) == 1.0);
        if (h < 0.25) {
            double s = 0.0, mean = 0.0;
            for (std::uint32_t i = 0; i < 400; ++i) {
                s += theta(mp, i);
                mean += i * theta(mp, i);
            }
            CHECK(std::abs(s - 1.0) < 1e-12);
            CHECK(mean == doctest::Approx(mp.m).epsilon(1e-10));
        }
    }
}

TEST_CASE("g matches theta series and g_prime is its derivative") {
    auto mp = sub();
    for (double x : {0.1, 0.5, 0.9}) {
        double s = 0.0, xp = 1.0;
        for (std::uint32_t i = 0; i < 200; ++i) {
            s += theta(mp, i) * xp;
            xp *= x;
        }
        CHECK(g_of(mp, x) == doctest::Approx(s).epsilon(1e-13));
        double fd = (g_of(mp, x + 1e-6) - g_of(mp, x - 1e-6)) / 2e-6;
        CHECK(g_prime(mp, x) == doctest::Approx(fd).epsilon(1e-7));
    }
    // m = g'(1) by finite differences
    double fd = (1.0 - g_of(mp, 1.0 - 1e-7)) / 1e-7;
    CHECK(fd == doctest::Approx(mp.m).epsilon(1e-5));
}

TEST_CASE("g_iter closed form vs r-fold composition") {
    // identity iterate
    for (auto mp : {sub(), crit()}) CHECK(g_iter(mp, 0, 0.37) == 0.37);
    // paper value at criticality
    CHECK(g_iter(crit(), 1, 0.0) == doctest::Approx(0.75).epsilon(1e-14));
    // (h=1/8, r=2, x=0) equals g(g(0))
    auto mp = sub();
    CHECK(g_iter(mp, 2, 0.0) == doctest::Approx(g_of(mp, g_of(mp, 0.0))).epsilon(1e-12));
    // full grid: |g_iter(r,x) - g o...o g(x)| < 1e-10 for r <= 50
    for (double h : {0.125, 0.22, 0.25}) {
        auto q = ModelParams::from_h(h);
        for (double x0 = 0.0; x0 < 0.95; x0 += 0.1) {
            double y = x0;
            for (std::uint32_t r = 1; r <= 50; ++r) {
                y = g_of(q, y);
                CHECK(std::abs(g_iter(q, r, x0) - y) < 1e-10);
            }
        }
        CHECK(g_iter(q, 7, 1.0) == 1.0);
    }
}

TEST_CASE("Pi: paper value, series coefficients, derivative") {
    for (double h : {0.125, 0.22}) {
        auto mp = ModelParams::from_h(h);
        double want = (1.0 - std::sqrt(1.0 - 4.0 * h)) / (2.0 * h);
        CHECK(Pi(mp, theta(mp, 0)) == doctest::Approx(want).epsilon(1e-12));
        CHECK(pi_coeff(mp, 1) == doctest::Approx(1.0).epsilon(1e-12));
        // series vs direct evaluation
        auto c = pi_series(mp, 64);
        double x = 0.3;
        CHECK(series::eval(c, x) == doctest::Approx(Pi(mp, x)).epsilon(1e-12));
        double fd = (Pi(mp, x + 1e-6) - Pi(mp, x - 1e-6)) / 2e-6;
        CHECK(Pi_prime(mp, x) == doctest::Approx(fd).epsilon(1e-7));
    }
    auto c = crit();
    CHECK(Pi(c, theta(c, 0)) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(pi_coeff(c, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pi_coeff(c, 2) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("mu: paper values and mean") {
    CHECK(mu(crit(), 1) == 1.0);
    auto mp = sub();
    CHECK(mu(mp, 2) == doctest::Approx(mp.m * (1.0 - mp.m)).epsilon(1e-14));
    CHECK(mp.m == doctest::Approx(0.1715728752538099).epsilon(1e-12));
    double mean = 0.0;
    for (std::uint32_t k = 1; k < 400; ++k) mean += k * mu(mp, k);
    CHECK(mean == doctest::Approx(1.0 / mp.m).epsilon(1e-10));
}

TEST_CASE("coefficient identity of the forest-law proof") {
    // sum_l (1-4h)^{(l-1)/2} sum_{p1+...+pl=p} p1 prod pi(p_j) = p h(p)/h(1)
    auto mp = sub();
    const std::size_t P = 30;
    auto pi = pi_series(mp, P);
    double s = std::sqrt(1.0 - 4.0 * mp.h);
    // lhs series = (y Pi'(y)) * 1/(1 - s Pi(y)); build by series arithmetic
    series::Coeffs ypip(P + 1, 0.0), spi(P + 1, 0.0);
    for (std::size_t p = 1; p <= P; ++p) {
        ypip[p] = double(p) * pi[p];
        spi[p] = -s * pi[p];
    }
    spi[0] = 1.0;
    auto lhs = series::mul(ypip, series::inverse(spi, P), P);
    for (std::uint32_t p = 1; p <= P; ++p) {
        double rhs = p * h_weight(mp, p) / h_weight(mp, 1);
        CHECK(std::abs(lhs[p] - rhs) < 1e-10 * std::max(1.0, rhs));
    }
}

TEST_CASE("h_weight consistency with cone_weight") {
    auto mp = sub();
    for (std::uint32_t p : {1u, 2u, 5u, 20u}) {
        double expect = cone_weight(mp, p) / (double(p) * std::pow(8.0 + 1.0 / mp.h, double(p)));
        CHECK(h_weight(mp, p) == doctest::Approx(expect).epsilon(1e-11));
    }
}

TEST_CASE("perimeter transition kernel") {
    auto mp = ModelParams::from_h(0.22);
    // zero steps: indicator
    CHECK(perimeter_transition(mp, 3, 3, 0) == 1.0);
    CHECK(perimeter_transition(mp, 3, 4, 0) == 0.0);
    // normalization: sum_q transition(1, q, 3) -> 1 as qmax grows
    double tail200 = 0.0;
    perimeter_transition_row(mp, 1, 3, 200, &tail200);
    CHECK(tail200 < 2e-3);
    double tail = 0.0;
    auto row = perimeter_transition_row(mp, 1, 3, 700, &tail);
    double sum = 0.0;
    for (double v : row) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-6);
    CHECK(tail < 1e-6);
    // row values agree with the single-entry API
    CHECK(row[7] == doctest::Approx(perimeter_transition(mp, 1, 7, 3)).epsilon(1e-12));
}

TEST_CASE("g_iter_series matches closed-form evaluation") {
    for (auto mp : {sub(), crit()}) {
        for (std::uint32_t r : {1u, 3u, 10u}) {
            auto c = g_iter_series(mp, r, 48);
            for (double x : {0.05, 0.2, 0.4}) {
                CHECK(series::eval(c, x) == doctest::Approx(g_iter(mp, r, x)).epsilon(1e-10));
            }
            // coefficients of a probability generating function are nonnegative
            for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k] >= -1e-12);
        }
    }
}

TEST_CASE("exact perimeter marginal mean matches the transition kernel") {
    auto mp = ModelParams::from_h(0.22);
    for (std::uint32_t r : {1u, 2u, 3u}) {
        auto row = perimeter_transition_row(mp, 1, r, 3000, nullptr);
        double mean = 0.0;
        for (std::size_t q = 0; q < row.size(); ++q) mean += double(q) * row[q];
        CHECK(perimeter_marginal_mean(mp, r) == doctest::Approx(mean).epsilon(1e-8));
    }
    // growth rate approaches 1/m
    auto mp8 = sub();
    double r15 = perimeter_marginal_mean(mp8, 15), r16 = perimeter_marginal_mean(mp8, 16);
    CHECK(r16 / r15 == doctest::Approx(1.0 / mp8.m).epsilon(1e-9));
}

TEST_CASE("series tables dump") {
    auto mp = sub();
    auto t = series_table(mp, SeriesKind::theta, 16);
    CHECK(t.coefficients.size() == 17);
    CHECK(t.coefficients[0] == doctest::Approx(1.0 - mp.h));
    // theta truncations sum to <= 1 and increase toward 1
    double acc = 0.0;
    for (double v : t.coefficients) {
        CHECK(v >= 0.0);
        acc += v;
        CHECK(acc <= 1.0 + 1e-12);
    }
}
