#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace nscrit;
using namespace testutil;

namespace {
GridPtr box() {
    return make_grid(3, 2.0 * std::numbers::pi, 16, 0.05, 1.0, 4,
                     TimeSpacing::Uniform);
}

double rel_l2(const SpatialField& a, const SpatialField& b) {
    SpatialField d = a;
    d -= b;
    const double den = std::max(a.l2(), b.l2());
    return den > 0 ? d.l2() / den : 0.0;
}
}  // namespace

TEST_CASE("heat: identity, single-mode decay, semigroup, error path") {
    GridPtr g = box();
    SpatialField u = cos_slice(g, 0);

    CHECK(rel_l2(heat(u, 0.0), u) < 1e-15);

    SpatialField h1 = heat(u, 1.0);
    SpatialField expect = u;
    expect *= std::exp(-1.0);
    CHECK(rel_l2(h1, expect) < 1e-13);
    CHECK(h1.at(0, 0) == doctest::Approx(0.36787944117144233).epsilon(1e-10));

    std::mt19937_64 rng(5);
    SpatialField r = random_scalar(g, rng, 5);
    CHECK(rel_l2(heat(heat(r, 0.3), 0.45), heat(r, 0.75)) < 1e-12);

    CHECK_THROWS_AS(heat(u, -0.1), std::invalid_argument);
}

TEST_CASE("apply_symbol: unit mode, derivative, linearity") {
    GridPtr g = box();
    SpatialField c = cos_slice(g, 0);
    CHECK(rel_l2(apply_symbol(symbols::abs_xi(), c), c) < 1e-12);

    // d/dx1 sin x1 = cos x1
    SpatialField s(g, 1);
    for (std::int64_t i = 0; i < g->n_points(); ++i)
        s.at(0, i) = std::sin(g->unflatten(i)[0] * g->dx());
    CHECK(rel_l2(apply_symbol(symbols::deriv(0), s), c) < 1e-12);

    std::mt19937_64 rng(11);
    SpatialField u = random_scalar(g, rng, 5);
    SpatialField v = random_scalar(g, rng, 5);
    SpatialField lhs = u;
    lhs *= 2.5;
    SpatialField vv = v;
    vv *= -1.25;
    lhs += vv;
    lhs = apply_symbol(symbols::abs_xi(), lhs);
    SpatialField rhs = apply_symbol(symbols::abs_xi(), u);
    rhs *= 2.5;
    SpatialField rv = apply_symbol(symbols::abs_xi(), v);
    rv *= -1.25;
    rhs += rv;
    CHECK(rel_l2(lhs, rhs) < 1e-12);
}

TEST_CASE("symbol homogeneity on sampled frequencies") {
    std::vector<Symbol> syms{symbols::abs_xi(), symbols::deriv(1),
                             symbols::component(2), symbols::leray_div(0, 1, 2)};
    std::vector<std::array<double, 3>> xis{
        {1, 0, 0}, {0.5, -2, 1}, {3, 3, -3}, {-0.25, 0.125, 4}};
    for (const auto& sym : syms)
        for (const auto& xi : xis)
            for (double lam : {2.0, 3.0}) {
                std::array<double, 3> lx{lam * xi[0], lam * xi[1], lam * xi[2]};
                const cplx a = sym(lx);
                const cplx b = std::pow(lam, sym.degree) * sym(xi);
                CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
            }
}

TEST_CASE("leray: gradients killed, solenoidal fixed, idempotent") {
    GridPtr g = box();
    // grad of cos x1 = (-sin x1, 0, 0)
    SpatialField gradphi(g, 3);
    for (std::int64_t i = 0; i < g->n_points(); ++i)
        gradphi.at(0, i) = -std::sin(g->unflatten(i)[0] * g->dx());
    CHECK(leray(gradphi).l2() <= 1e-12 * gradphi.l2());

    SpatialField sol(g, 3);
    for (std::int64_t i = 0; i < g->n_points(); ++i)
        sol.at(0, i) = std::sin(g->unflatten(i)[1] * g->dx());
    CHECK(rel_l2(leray(sol), sol) < 1e-12);

    std::mt19937_64 rng(2);
    SpatialField u(g, 3);
    for (int c = 0; c < 3; ++c) {
        SpatialField comp = random_scalar(g, rng, 5);
        std::copy(comp.data(0), comp.data(0) + g->n_points(), u.data(c));
    }
    SpatialField p1 = leray(u);
    CHECK(rel_l2(leray(p1), p1) < 1e-12);
    CHECK(divergence(p1).l2() <= 1e-12 * std::max(1.0, u.l2()));

    SpatialField scalar(g, 1);
    CHECK_THROWS_AS(leray(scalar), std::invalid_argument);
}

TEST_CASE("frac_laplacian: identity cases and inverse round trip") {
    GridPtr g = box();
    std::mt19937_64 rng(17);
    SpatialField u = random_scalar(g, rng, 5);
    remove_mean(u);
    CHECK(rel_l2(frac_laplacian(u, 0.0), u) < 1e-14);
    CHECK(rel_l2(frac_laplacian(cos_slice(g, 0), 1.0), cos_slice(g, 0)) < 1e-12);
    CHECK(rel_l2(frac_laplacian(frac_laplacian(u, 0.7), -0.7), u) < 1e-11);
}

TEST_CASE("hilbert transform on the line grid") {
    GridPtr g = make_grid(1, 2.0 * std::numbers::pi, 64, 0.1, 1.0, 2,
                          TimeSpacing::Uniform);
    SpatialField c(g, 1), s(g, 1);
    for (std::int64_t i = 0; i < g->n_points(); ++i) {
        c.at(0, i) = std::cos(i * g->dx());
        s.at(0, i) = std::sin(i * g->dx());
    }
    CHECK(rel_l2(hilbert_1d(c), s) < 1e-12);

    SpatialField hh = hilbert_1d(hilbert_1d(s));
    SpatialField neg = s;
    neg *= -1.0;
    CHECK(rel_l2(hh, neg) < 1e-12);

    SpatialField ones(g, 1);
    for (std::int64_t i = 0; i < g->n_points(); ++i) ones.at(0, i) = 1.0;
    CHECK(hilbert_1d(ones).l2() < 1e-13);

    GridPtr g3 = box();
    CHECK_THROWS_AS(hilbert_1d(cos_slice(g3, 0)), std::invalid_argument);
}

TEST_CASE("pressure_gradient: single-mode oracle and curl-free output") {
    GridPtr g = box();
    // u = (sin x2, 0, 0), F = 0: (xi ox xi : u ox u-hat) drives grad p
    SpatialField u(g, 3);
    for (std::int64_t i = 0; i < g->n_points(); ++i)
        u.at(0, i) = std::sin(g->unflatten(i)[1] * g->dx());
    SpatialField F(g, 9);
    SpatialField gp = pressure_gradient(F, u);

    // oracle: u ox u has only the (1,1) entry sin^2 x2 = (1 - cos 2 x2)/2;
    // (xi ox xi : G) picks xi_1^2 G_11 = 0 on the cos 2x2 mode (xi_1 = 0),
    // so grad p vanishes identically here
    CHECK(gp.l2() <= 1e-12);

    // a mode where the contraction is nonzero: u = (sin x2, sin x1, 0)
    SpatialField w(g, 3);
    for (std::int64_t i = 0; i < g->n_points(); ++i) {
        auto idx = g->unflatten(i);
        w.at(0, i) = std::sin(idx[1] * g->dx());
        w.at(1, i) = std::sin(idx[0] * g->dx());
    }
    SpatialField gp2 = pressure_gradient(F, w);
    CHECK(gp2.l2() > 1e-8);
    CHECK(leray(gp2).l2() <= 1e-12 * gp2.l2());

    // curl-free: spectral curl of grad p vanishes
    auto c0 = fft::forward(*g, gp2.data(0));
    auto c1 = fft::forward(*g, gp2.data(1));
    auto c2 = fft::forward(*g, gp2.data(2));
    double curl = 0;
    for (std::int64_t i = 0; i < g->n_points(); ++i) {
        auto xi = freq_vector(*g, i);
        curl = std::max(curl, std::abs(xi[1] * c2[i] - xi[2] * c1[i]));
        curl = std::max(curl, std::abs(xi[2] * c0[i] - xi[0] * c2[i]));
        curl = std::max(curl, std::abs(xi[0] * c1[i] - xi[1] * c0[i]));
    }
    CHECK(curl < 1e-12);
}

TEST_CASE("dealiased product agrees with the exact product on safe bands") {
    GridPtr g = box();
    std::mt19937_64 rng(23);
    // band limit 3 on n=16: products stay strictly inside the resolved
    // spectrum, so the 3/2-rule result must equal the pointwise product
    SpatialField u = random_scalar(g, rng, 3);
    SpatialField v = random_scalar(g, rng, 3);
    SpatialField d = dealiased_product(u, v);
    SpatialField p(g, 1);
    for (std::int64_t i = 0; i < g->n_points(); ++i)
        p.at(0, i) = u.at(0, i) * v.at(0, i);
    CHECK(rel_l2(d, p) < 1e-12);
}
