// model.hpp — closed-form analytic layer for the hyperbolic triangulation family:
// lambda/h/m/b parameterization, disk and cone weights, the offspring law theta and
// its iterated generating function, the quasi-stationary law pi, and the perimeter
// transition kernel of hulls.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypermap/series.hpp"

namespace hypermap {

// 1/(12*sqrt(3)), evaluated once in extended precision.
double lambda_critical();

// Unique h in (0,1/4] with h/(1+8h)^{3/2} = lambda. Bisection to 1e-14 plus one
// Newton polish. Throws std::domain_error outside (0, lambda_c + 1e-15].
double solve_h(double lambda);

struct ModelParams {
    double lambda = 0.0;
    double h = 0.0;      // in (0, 1/4]
    double m = 0.0;      // mean offspring of theta, in (0, 1]
    double b = 0.0;      // argcosh(1/sqrt(4h)) = -ln(m)/2, 0 iff critical
    bool is_critical = false;

    static ModelParams from_lambda(double lambda);
    static ModelParams from_h(double h);
    static ModelParams from_m(double m);
};

// --- enumeration ----------------------------------------------------------

// #T_{n,p} as a decimal string, exact integer arithmetic. Validity: n >= 0,
// p >= 1, 2p+3n-5 >= -1 (so (0,1) is excluded and defined as 0).
std::string count_triangulations_str(std::uint32_t n, std::uint32_t p);
// Same value as double (exact for small cases, may round above 2^53).
double count_triangulations(std::uint32_t n, std::uint32_t p);

// Asymptotic constant c(p) of #T_{n,p} ~ c(p) lambda_c^{-n} n^{-5/2}.
// Documentation only; not used by any sampler.
double asymptotic_enumeration_constant(std::uint32_t p);

// --- disk & cone weights ---------------------------------------------------

double disk_weight(const ModelParams& mp, std::uint32_t p);      // w_lambda(p)
double log_disk_weight(const ModelParams& mp, std::uint32_t p);  // ln w_lambda(p)
double disk_generating(const ModelParams& mp, double x);         // W_lambda(x)
double cone_weight(const ModelParams& mp, std::uint32_t p);      // c_lambda(p)
double cone_generating(const ModelParams& mp, double x);         // C_lambda(x)

// --- offspring law theta and friends ---------------------------------------

double theta(const ModelParams& mp, std::uint32_t i);
double g_of(const ModelParams& mp, double x);        // generating function of theta
double g_prime(const ModelParams& mp, double x);     // g'(x), closed form
double g_iter(const ModelParams& mp, std::uint32_t r, double x);
// 1 - g^{o r}(x) computed without cancellation; u = 1 - x.
double one_minus_g_iter(const ModelParams& mp, std::uint32_t r, double one_minus_x);

double mu(const ModelParams& mp, std::uint32_t k);   // m(1-m)^{k-1}, k >= 1

double Pi(const ModelParams& mp, double x);          // quasi-stationary generating fn
double Pi_prime(const ModelParams& mp, double x);
double pi_coeff(const ModelParams& mp, std::uint32_t p);  // series coefficient of Pi

// h_lambda(p) = (1/p)(8+1/h)^{-p} c_lambda(p); evaluated in the cancellation-free
// form S_p / (lambda * p * (8+1/h)) with S_p = sum_{q<p} binom(2q,q) h^q.
double h_weight(const ModelParams& mp, std::uint32_t p);

// --- series tables ----------------------------------------------------------

enum class SeriesKind { disk_w, cone_c, theta, pi, mu, countTnp };

struct SeriesTable {
    SeriesKind kind;
    std::uint32_t first_index;
    std::vector<double> coefficients;
};

SeriesTable series_table(const ModelParams& mp, SeriesKind kind, std::uint32_t pmax);
void dump_series_csv(const SeriesTable& t, const std::string& path);

// Coefficients of g^{o r}(x) up to the given order, from the closed form.
series::Coeffs g_iter_series(const ModelParams& mp, std::uint32_t r, std::size_t order);
// Coefficients of Pi up to the given order.
series::Coeffs pi_series(const ModelParams& mp, std::size_t order);

// --- perimeter transition kernel -------------------------------------------

// P(|bd B_{r+steps}| = q | |bd B_r| = p) = (h(q)/h(p)) P_q(X(steps) = p), where
// X is the theta Galton-Watson process and P_q(X(t)=p) = [x^p] (g^{o t}(x))^q.
double perimeter_transition(const ModelParams& mp, std::uint32_t p, std::uint32_t q,
                            std::uint32_t steps);

// Whole row q = 1..qmax of the kernel for fixed source perimeter p. tail_bound
// (output) reports 1 - sum(row), the mass beyond qmax.
std::vector<double> perimeter_transition_row(const ModelParams& mp, std::uint32_t p,
                                             std::uint32_t steps, std::uint32_t qmax,
                                             double* tail_bound = nullptr);

// Exact marginal of the hull perimeter of the plane triangulation at radius r:
// P(P_r = q) = (h(q)/h(1)) q a0^{q-1} a1 with a0 = g^{o r}(0), a1 = (g^{o r})'(0).
struct PerimeterMarginal {
    double one_minus_a0;  // 1 - g^{o r}(0)
    double log_a1;        // ln (g^{o r})'(0)
};
PerimeterMarginal perimeter_marginal(const ModelParams& mp, std::uint32_t r);
// Exact mean E[P_r], closed form.
double perimeter_marginal_mean(const ModelParams& mp, std::uint32_t r);

}  // namespace hypermap
