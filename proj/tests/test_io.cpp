#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "nscrit/io.hpp"
#include "test_util.hpp"

using namespace nscrit;
using namespace testutil;

namespace {
struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/nscrit_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};
}  // namespace

TEST_CASE("NSF1 round trip is bit exact") {
    GridPtr g = make_grid(3, 1.5, 8, 0.01, 0.8, 6, TimeSpacing::Geometric);
    std::mt19937_64 rng(3);
    SpaceTimeField u = random_vector_evolution(g, rng, 3, false);
    TempFile f("roundtrip.nsf1");
    write_nsf1(f.path, u);
    SpaceTimeField v = read_nsf1(f.path);
    REQUIRE(v.grid()->same_as(*g));
    REQUIRE(v.components() == 3);
    CHECK(std::memcmp(u.values().data(), v.values().data(),
                      u.values().size() * sizeof(double)) == 0);
}

TEST_CASE("NSF1 rejects malformed files") {
    TempFile bad("bad_magic.nsf1");
    {
        std::ofstream out(bad.path, std::ios::binary);
        out << "NOPE\n{}";
    }
    CHECK_THROWS(read_nsf1(bad.path));

    GridPtr g = make_grid(2, 1.0, 8, 0.01, 0.5, 4, TimeSpacing::Uniform);
    SpaceTimeField u(g, 1);
    TempFile trunc("truncated.nsf1");
    write_nsf1(trunc.path, u);
    // chop off the last half of the payload
    std::ifstream in(trunc.path, std::ios::binary);
    std::string all((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
    in.close();
    {
        std::ofstream out(trunc.path, std::ios::binary | std::ios::trunc);
        out.write(all.data(), static_cast<std::streamsize>(all.size() / 2));
    }
    CHECK_THROWS(read_nsf1(trunc.path));

    CHECK_THROWS(read_nsf1("/tmp/nscrit_test_does_not_exist.nsf1"));
}

TEST_CASE("grid JSON round trip") {
    for (TimeSpacing sp : {TimeSpacing::Uniform, TimeSpacing::Geometric}) {
        GridPtr g = make_grid(3, 2.5, 16, 0.02, 1.2, 10, sp);
        GridPtr back = grid_from_json(grid_to_json(*g));
        CHECK(back->same_as(*g));
        for (int k = 0; k < g->n_time(); ++k)
            CHECK(back->time(k) == doctest::Approx(g->time(k)).epsilon(1e-14));
    }
    nlohmann::json j = grid_to_json(*make_grid(2, 1.0, 8, 0.01, 0.5, 4,
                                               TimeSpacing::Uniform));
    CHECK(j["spacing"] == "uniform");
    j["spacing"] = "exotic";
    CHECK_THROWS(grid_from_json(j));
}

TEST_CASE("report serialization carries the documented keys") {
    GridPtr g = make_grid(3, 1.0, 8, 1.0 / 64, 1.0, 8, TimeSpacing::Geometric);
    std::mt19937_64 rng(5);
    SpaceTimeField u = random_scalar_evolution(g, rng, 3);

    nlohmann::json n = report_to_json(norm_Y2(u));
    CHECK(n.contains("space"));
    CHECK(n.contains("value"));
    CHECK(n.contains("witness"));
    CHECK(n.contains("sampling"));
    CHECK(n["value"].get<double>() == doctest::Approx(norm_Y2(u).value));

    EstimateReport er = estimate_C0(g, NormSpace::YKT, NormParams{}, 2, 99);
    nlohmann::json e = report_to_json(er);
    CHECK(e.contains("operator"));
    CHECK(e.contains("ensemble_size"));
    CHECK(e.contains("grid"));
    CHECK(e["constants"].contains("mean"));
    CHECK(e["constants"].contains("max"));
    CHECK(e["constants"]["per_sample"].size() == 2);

    TrendReport tr = cx_kt_blowup({0.1, 0.05});
    nlohmann::json t = report_to_json(tr);
    CHECK(t.contains("case"));
    CHECK(t["sweep"].size() == 2);
    CHECK(t["fit"].contains("slope"));
    CHECK(t["fit"].contains("r2"));
}

TEST_CASE("solution trace serialization") {
    GridPtr g = make_grid(3, 2.0 * std::numbers::pi, 8, 1.0 / 64, 1.0, 6,
                          TimeSpacing::Geometric);
    ProblemData data(SpatialField(g, 3), SpaceTimeField(g, 9));
    SolutionTrace tr = picard_solve(data);
    nlohmann::json j = trace_to_json(tr);
    CHECK(j["certified"].get<bool>());
    CHECK(j.contains("increments"));
    CHECK(j.contains("margin"));
    CHECK(j.contains("data_norm"));
}
