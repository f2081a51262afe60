#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nscrit/quadrature.hpp"
#include "test_util.hpp"

using namespace nscrit;
using namespace testutil;

TEST_CASE("exp_panel_weights matches adaptive quadrature") {
    for (double lambda : {0.0, 1e-9, 0.3, 7.0, 250.0}) {
        const double a = 0.2, b = 0.5, t = 0.8, h = b - a;
        double w0, w1;
        exp_panel_weights(lambda, a, b, t, w0, w1);
        auto hat0 = [&](double s) {
            return std::exp(-lambda * (t - s)) * (1.0 - (s - a) / h);
        };
        auto hat1 = [&](double s) {
            return std::exp(-lambda * (t - s)) * (s - a) / h;
        };
        CHECK(rel_diff(w0, tanh_sinh(hat0, a, b, 8)) < 1e-12);
        CHECK(rel_diff(w1, tanh_sinh(hat1, a, b, 8)) < 1e-12);
        // hat functions sum to 1, so the weights sum to the kernel mass
        CHECK(rel_diff(w0 + w1, exp_panel_mass(lambda, a, b, t)) < 1e-12);
    }
}

TEST_CASE("exp_panel_weights: lambda -> 0 trapezoid limit") {
    double w0, w1;
    exp_panel_weights(0.0, 1.0, 1.5, 2.0, w0, w1);
    CHECK(w0 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(w1 == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("invsqrt_panel_weights: exact moments of (t-s)^{-1/2}") {
    const double a = 0.1, b = 0.6, t = 0.6;  // singular right edge
    double w0, w1;
    invsqrt_panel_weights(a, b, t, w0, w1);
    const double h = b - a;
    auto hat0 = [&](double s) {
        return (1.0 - (s - a) / h) / std::sqrt(t - s);
    };
    auto hat1 = [&](double s) { return ((s - a) / h) / std::sqrt(t - s); };
    // The integrand is singular at the right endpoint; abscissae there are
    // formed as b - d, and the rounding of that difference caps agreement
    // near 1e-8 even though both sides are individually well converged.
    CHECK(rel_diff(w0, tanh_sinh(hat0, a, b, 9)) < 1e-7);
    CHECK(rel_diff(w1, tanh_sinh(hat1, a, b, 9)) < 1e-7);
}

TEST_CASE("product rule is exact for exponential superpositions") {
    // (t-s)^{-1/2} = int_0^inf e^{-lambda (t-s)} dlambda / sqrt(pi lambda):
    // integrating the per-lambda exact weights against this measure must
    // reproduce the invsqrt weights
    const double a = 0.3, b = 0.7, t = 1.0;
    double v0, v1;
    invsqrt_panel_weights(a, b, t, v0, v1);
    auto against = [&](int which) {
        return tanh_sinh(
            [&](double u) {
                // lambda = u^2 turns the measure into 2/sqrt(pi) du
                double w0, w1;
                exp_panel_weights(u * u, a, b, t, w0, w1);
                return 2.0 / std::sqrt(std::numbers::pi) *
                       (which == 0 ? w0 : w1);
            },
            0.0, 60.0, 9);
    };
    CHECK(rel_diff(v0, against(0)) < 1e-8);
    CHECK(rel_diff(v1, against(1)) < 1e-8);
}

TEST_CASE("tanh_sinh handles endpoint singularities") {
    CHECK(rel_diff(tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0, 1, 8),
                   2.0) < 1e-12);
    CHECK(rel_diff(tanh_sinh([](double x) { return std::log(x); }, 0, 1, 8),
                   -1.0) < 1e-12);
}

TEST_CASE("gauss_legendre and composite rule") {
    std::vector<double> x, w;
    gauss_legendre(8, x, w);
    double s = 0, s6 = 0;
    for (int i = 0; i < 8; ++i) {
        s += w[i];
        s6 += w[i] * std::pow(x[i], 6);
    }
    CHECK(rel_diff(s, 2.0) < 1e-14);
    CHECK(rel_diff(s6, 2.0 / 7.0) < 1e-13);

    const double I = composite_gauss([](double x) { return std::exp(x); }, 0.0,
                                     2.0, 8, 6);
    CHECK(rel_diff(I, std::exp(2.0) - 1.0) < 1e-13);
}

TEST_CASE("fit_line recovers exact lines and reports R^2") {
    std::vector<double> x{1, 2, 3, 4, 5}, y;
    for (double v : x) y.push_back(3.5 * v - 1.25);
    LineFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(3.5).epsilon(1e-13));
    CHECK(f.intercept == doctest::Approx(-1.25).epsilon(1e-12));
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> noisy{0.0, 2.2, 3.7, 6.1, 8.4};
    LineFit g = fit_line(x, noisy);
    CHECK(g.r2 >= 0.0);
    CHECK(g.r2 <= 1.0);
}
