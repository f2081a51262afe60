#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace nscrit;
using namespace testutil;

TEST_CASE("make_grid: basic construction and ladders") {
    GridPtr g3 = make_grid(3, 2.0 * std::numbers::pi, 16, 0.01, 4.0, 64,
                           TimeSpacing::Geometric);
    CHECK(g3->n_time() == 64);
    CHECK(g3->n_points() == 16 * 16 * 16);

    GridPtr g1 = make_grid(1, 2.0 * std::numbers::pi, 8, 0.1, 1.0, 4,
                           TimeSpacing::Uniform);
    CHECK(g1->time(0) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(g1->time(1) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(g1->time(2) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(g1->time(3) == doctest::Approx(1.0).epsilon(1e-14));

    GridPtr g2 = make_grid(2, 4.0 * std::numbers::pi, 32, 1e-4, 1.0, 128,
                           TimeSpacing::Geometric);
    const double ratio = std::pow(1e4, 1.0 / 127.0);
    for (int k = 0; k + 1 < 128; ++k)
        CHECK(g2->time(k + 1) / g2->time(k) ==
              doctest::Approx(ratio).epsilon(1e-10));
}

TEST_CASE("make_grid: invalid parameters") {
    CHECK_THROWS_AS(make_grid(3, 1.0, 12, 0.1, 1.0, 4, TimeSpacing::Uniform),
                    std::invalid_argument);  // not a power of two
    CHECK_THROWS_AS(make_grid(3, 1.0, 16, 0.0, 1.0, 4, TimeSpacing::Uniform),
                    std::invalid_argument);  // t_min <= 0
    CHECK_THROWS_AS(make_grid(3, 1.0, 16, 0.5, 0.5, 4, TimeSpacing::Uniform),
                    std::invalid_argument);  // t_max <= t_min
    CHECK_THROWS_AS(make_grid(4, 1.0, 16, 0.1, 1.0, 4, TimeSpacing::Uniform),
                    std::invalid_argument);  // dim out of range
}

TEST_CASE("cylinder_mask: coverage, definition, emptiness") {
    GridPtr grid = make_grid(3, 1.0, 8, 1.0 / 64, 1.0, 16, TimeSpacing::Geometric);
    const Grid& g = *grid;

    // region covering the whole grid
    Mask all = cylinder_mask(grid, CylinderSpec::q(2.0, {0, 0, 0}));
    CHECK(all.count() == g.n_time() * g.n_points());

    // R with T = t_max: direct definition check
    const std::array<double, 3> x{0.25, 0.5, 0.125};
    const double T = g.t_max();
    Mask r = cylinder_mask(grid, CylinderSpec::r(T, x));
    for (int t = 0; t < g.n_time(); ++t)
        for (std::int64_t i = 0; i < g.n_points(); ++i) {
            const bool in_t = g.time(t) > T / 2 && g.time(t) < T;
            const bool in_x = g.periodic_distance_point(i, x) <= std::sqrt(T);
            CHECK(r.get(t, i) == (in_t && in_x));
        }

    // sub-spacing centered cylinder with an off-lattice center
    Mask empty = cylinder_mask(
        grid, CylinderSpec::centered(g.time(3) * 1.0000001, {0.3, 0.7, 0.06},
                                     g.dx() / 4));
    CHECK(empty.count() == 0);
}

TEST_CASE("cylinder_mask: monotonicity and periodic translation") {
    GridPtr grid = make_grid(3, 1.0, 8, 1.0 / 64, 1.0, 12, TimeSpacing::Geometric);
    const std::array<double, 3> x{0.3, 0.7, 0.1};
    const double T = 0.3;
    Mask q = cylinder_mask(grid, CylinderSpec::q(T, x));
    Mask r = cylinder_mask(grid, CylinderSpec::r(T, x));
    Mask s = cylinder_mask(grid, CylinderSpec::s(T, x));
    CHECK(q.contains(r));
    CHECK(s.contains(r));

    const std::array<double, 3> xs{x[0] + 1.0, x[1] - 1.0, x[2]};
    Mask qs = cylinder_mask(grid, CylinderSpec::q(T, xs));
    CHECK(qs.count() == q.count());
    for (int t = 0; t < grid->n_time(); ++t)
        for (std::int64_t i = 0; i < grid->n_points(); ++i)
            REQUIRE(qs.get(t, i) == q.get(t, i));
}

TEST_CASE("dyadic partition: scales, disjoint cover, Parseval") {
    CHECK(dyadic_scale(2.0) == 0);
    CHECK(dyadic_scale(0.5) == 1);
    CHECK(dyadic_scale(1.0) == 0);

    GridPtr grid = make_grid(3, 1.0, 8, 1.0 / 128, 2.0, 20, TimeSpacing::Geometric);
    auto pieces = dyadic_partition(grid);
    std::int64_t total = 0;
    for (const auto& p : pieces) total += p.mask.count();
    CHECK(total == grid->n_time() * grid->n_points());

    // scale membership per sample
    for (const auto& p : pieces)
        for (int t = 0; t < grid->n_time(); ++t) {
            const double tt = grid->time(t);
            for (std::int64_t i = 0; i < grid->n_points(); ++i)
                if (p.mask.get(t, i))
                    REQUIRE(dyadic_scale(tt) == p.cell.j);
        }

    std::mt19937_64 rng(3);
    SpaceTimeField u = random_scalar_evolution(grid, rng, 3);
    const double whole = u.l2l2();
    double parts = 0;
    for (const auto& p : pieces) {
        const double piece = restrict_field(u, p.mask).l2l2();
        parts += piece * piece;
    }
    CHECK(rel_diff(parts, whole * whole) < 1e-12);
}

TEST_CASE("restrict: identity, empty, grid mismatch") {
    GridPtr grid = make_grid(2, 1.0, 8, 0.1, 1.0, 6, TimeSpacing::Uniform);
    std::mt19937_64 rng(9);
    SpaceTimeField u = random_scalar_evolution(grid, rng, 3);

    Mask full(grid);
    for (int t = 0; t < grid->n_time(); ++t)
        for (std::int64_t i = 0; i < grid->n_points(); ++i) full.set(t, i, true);
    CHECK(rel_l2l2(restrict_field(u, full), u) == 0.0);

    Mask none(grid);
    CHECK(restrict_field(u, none).l2l2() == 0.0);

    GridPtr other = make_grid(2, 1.0, 8, 0.1, 1.0, 7, TimeSpacing::Uniform);
    CHECK_THROWS_AS(restrict_field(u, Mask(other)), std::invalid_argument);
}

TEST_CASE("mask CSV export") {
    GridPtr grid = make_grid(1, 1.0, 8, 0.25, 1.0, 2, TimeSpacing::Uniform);
    Mask m(grid);
    m.set(0, 3, true);
    m.set(1, 0, true);
    std::string csv = mask_to_csv(m);
    CHECK(csv.find("0,3") != std::string::npos);
    CHECK(csv.find("1,0") != std::string::npos);
}
