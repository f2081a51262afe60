#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nscrit/solver.hpp"
#include "test_util.hpp"

using namespace nscrit;
using namespace testutil;

namespace {
GridPtr box2pi(int n = 16, int nt = 12, double t_max = 1.0) {
    return make_grid(3, 2.0 * std::numbers::pi, n, t_max / 64, t_max, nt,
                     TimeSpacing::Geometric);
}

ProblemData single_mode_problem(const GridPtr& g, double eps) {
    SpatialField u0(g, 3);
    for (std::int64_t s = 0; s < g->n_points(); ++s)
        u0.at(0, s) = eps * std::sin(g->unflatten(s)[1] * g->dx());
    return ProblemData(std::move(u0), SpaceTimeField(g, 9));
}
}  // namespace

TEST_CASE("zero data solves to zero in one step") {
    GridPtr g = box2pi(8, 6);
    ProblemData data(SpatialField(g, 3), SpaceTimeField(g, 9));
    SolutionTrace tr = picard_solve(data);
    CHECK(tr.converged);
    CHECK(tr.certified);
    CHECK(tr.u.l2l2() == 0.0);
    CHECK(tr.data_norm == 0.0);
    CHECK(tr.iterates <= 2);
}

TEST_CASE("data validation rejects mismatched or non-solenoidal input") {
    GridPtr g = box2pi(8, 6);
    GridPtr g2 = box2pi(16, 6);
    CHECK_THROWS_AS(ProblemData(SpatialField(g, 3), SpaceTimeField(g2, 9)),
                    std::invalid_argument);
    CHECK_THROWS_AS(ProblemData(SpatialField(g, 2), SpaceTimeField(g, 9)),
                    std::invalid_argument);
    SpatialField bad(g, 3);  // u = (sin x0, 0, 0): div = cos x0 != 0
    for (std::int64_t s = 0; s < g->n_points(); ++s)
        bad.at(0, s) = std::sin(g->unflatten(s)[0] * g->dx());
    CHECK_THROWS_AS(ProblemData(std::move(bad), SpaceTimeField(g, 9)),
                    std::invalid_argument);
}

TEST_CASE("small single-mode data: certified contraction") {
    GridPtr g = box2pi(16, 10);
    ProblemData data = single_mode_problem(g, 1e-3);
    SolutionTrace tr = picard_solve(data);
    CHECK(tr.converged);
    CHECK(tr.certified);
    CHECK(tr.margin < 1.0);
    CHECK(tr.bound_ok);
    CHECK(tr.solution_norm <= 2.0 * tr.data_norm + 1e-14);
    CHECK(residual(data, tr.u) < 1e-7);

    // the trace reproduces the public margin helper
    CHECK(tr.margin == doctest::Approx(smallness_margin(data, tr.C0)).epsilon(1e-12));
}

TEST_CASE("manufactured forced solution is recovered") {
    GridPtr g = make_grid(3, 2.0 * std::numbers::pi, 16, 1.0 / 48, 1.0, 48,
                          TimeSpacing::Uniform);
    Manufactured mf(g, 0.05);
    ProblemData data(mf.u0, mf.F);
    SolutionTrace tr = picard_solve(data, 30, 1e-12);
    CHECK(tr.converged);
    SpaceTimeField err = tr.u;
    err -= mf.w;
    CHECK(err.l2l2() < 1e-4 * mf.w.l2l2());
}

TEST_CASE("large data comes back uncertified, not thrown") {
    GridPtr g = box2pi(16, 8);
    ProblemData data = single_mode_problem(g, 50.0);
    SolutionTrace tr = picard_solve(data, 12);
    CHECK_FALSE(tr.certified);
}

TEST_CASE("residual conventions") {
    GridPtr g = box2pi(16, 8);
    ProblemData data = single_mode_problem(g, 1e-3);
    SpaceTimeField zero(g, 3);
    // u = 0: unnormalized residual equals the data norm of the Picard seed
    CHECK(residual(data, zero) ==
          doctest::Approx(first_picard_term(data).l2l2()).epsilon(1e-12));
}

TEST_CASE("margin scaling and the split-forcing rule") {
    GridPtr g = box2pi(16, 8);
    ProblemData small = single_mode_problem(g, 1e-3);
    ProblemData big = single_mode_problem(g, 2e-3);
    const double m1 = smallness_margin(small, 1.0);
    const double m2 = smallness_margin(big, 1.0);
    CHECK(m1 > 0);
    CHECK(rel_diff(m2, 2.0 * m1) < 1e-10);
    CHECK(smallness_margin(small, 2.0) == doctest::Approx(2.0 * m1).epsilon(1e-12));

    // split rule collapses to the plain margin when F1 = 0 and the space
    // matches, and is additive in the two pieces
    SpaceTimeField zeroF(g, 9);
    CHECK(smallness_margin_split(small, zeroF, small.F, 6.0, 1.0) ==
          doctest::Approx(m1).epsilon(1e-12));
}
