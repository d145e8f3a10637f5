// series.hpp — truncated power-series arithmetic on double coefficient vectors.
#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace hypermap::series {

using Coeffs = std::vector<double>;

// c[k] of a*b, truncated to the shorter order.
inline Coeffs mul(const Coeffs& a, const Coeffs& b, std::size_t order) {
    Coeffs c(order + 1, 0.0);
    for (std::size_t i = 0; i <= order && i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        std::size_t jmax = std::min(order - i, b.size() == 0 ? 0 : b.size() - 1);
        for (std::size_t j = 0; j <= jmax; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

// 1/a with a[0] != 0.
inline Coeffs inverse(const Coeffs& a, std::size_t order) {
    assert(!a.empty() && a[0] != 0.0);
    Coeffs inv(order + 1, 0.0);
    inv[0] = 1.0 / a[0];
    for (std::size_t n = 1; n <= order; ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n && k < a.size(); ++k) acc += a[k] * inv[n - k];
        inv[n] = -acc / a[0];
    }
    return inv;
}

inline Coeffs div(const Coeffs& a, const Coeffs& b, std::size_t order) {
    return mul(a, inverse(b, order), order);
}

// sqrt(a) with a[0] > 0.
inline Coeffs sqrt(const Coeffs& a, std::size_t order) {
    assert(!a.empty() && a[0] > 0.0);
    Coeffs s(order + 1, 0.0);
    s[0] = std::sqrt(a[0]);
    for (std::size_t n = 1; n <= order; ++n) {
        double acc = (n < a.size()) ? a[n] : 0.0;
        for (std::size_t k = 1; k < n; ++k) acc -= s[k] * s[n - k];
        s[n] = acc / (2.0 * s[0]);
    }
    return s;
}

// (1 + c*x)^{1/2} = sum binom(1/2,k) c^k x^k.
inline Coeffs sqrt_linear(double c, std::size_t order) {
    Coeffs s(order + 1, 0.0);
    s[0] = 1.0;
    double coef = 1.0;
    for (std::size_t k = 1; k <= order; ++k) {
        // binom(1/2,k) = binom(1/2,k-1) * (1/2 - (k-1)) / k
        coef *= (0.5 - double(k - 1)) / double(k);
        s[k] = coef * std::pow(c, double(k));
    }
    return s;
}

// substitute x -> c*x.
inline Coeffs scale_arg(const Coeffs& a, double c, std::size_t order) {
    Coeffs out(order + 1, 0.0);
    double p = 1.0;
    for (std::size_t k = 0; k <= order && k < a.size(); ++k) {
        out[k] = a[k] * p;
        p *= c;
    }
    return out;
}

inline double eval(const Coeffs& a, double x) {
    double r = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) r = r * x + a[k];
    return r;
}

// raise to integer power q, truncated.
inline Coeffs pow(const Coeffs& a, unsigned q, std::size_t order) {
    Coeffs r(order + 1, 0.0);
    r[0] = 1.0;
    Coeffs base = a;
    base.resize(order + 1, 0.0);
    while (q > 0) {
        if (q & 1u) r = mul(r, base, order);
        q >>= 1u;
        if (q) base = mul(base, base, order);
    }
    return r;
}

// composition a(b(x)) with b[0] arbitrary is NOT provided; callers compose
// through closed forms instead (all inner series here have linear arguments).

}  // namespace hypermap::series
