#pragma once

#include <functional>
#include <vector>

namespace nscrit {

enum class QuadScheme { ProductSingular, Midpoint };

// Time-quadrature rule for Duhamel integrals. ProductSingular interpolates
// the integrand linearly on each panel and integrates the semigroup kernel
// exactly per mode; this is exact for (t-s)^{-1/2}-type kernels against
// linear integrands (such kernels are superpositions of e^{-lambda(t-s)}).
struct QuadratureRule {
    QuadScheme scheme = QuadScheme::ProductSingular;
};

// Exact moments of e^{-lambda (t-s)} over a panel s in [a, b], t >= b:
//   w0 = int_a^b e^{-lambda(t-s)} (1 - (s-a)/h) ds   (weight of g(a))
//   w1 = int_a^b e^{-lambda(t-s)} (s-a)/h ds         (weight of g(b))
// stable for lambda*h -> 0.
void exp_panel_weights(double lambda, double a, double b, double t,
                       double& w0, double& w1);

// Midpoint variant: single weight int_a^b e^{-lambda(t-s)} ds applied to
// (g(a)+g(b))/2.
double exp_panel_mass(double lambda, double a, double b, double t);

// Exact moments of (t-s)^{-1/2} over [a, b], t >= b, against the linear
// hat functions (used to validate the product rule's exactness claim).
void invsqrt_panel_weights(double a, double b, double t, double& w0, double& w1);

// tanh-sinh (double exponential) quadrature of f over (a, b); handles
// integrable endpoint singularities. level controls the step h = 2^-level.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 int level = 7);

// Gauss-Legendre nodes/weights on [-1,1]
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// composite Gauss-Legendre over [a,b] with n panels of p points
double composite_gauss(const std::function<double(double)>& f, double a,
                       double b, int panels, int points);

// simple least-squares line fit; returns slope, intercept and R^2
struct LineFit {
    double slope = 0, intercept = 0, r2 = 0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nscrit
