#pragma once

#include <cstdint>
#include <random>

#include "nscrit/duhamel.hpp"

namespace nscrit {

// Seeded generators for random band-limited test fields. All spectra are
// supported in |n|_inf <= k_max; time dependence is a smooth random
// oscillation, so every sample is resolved on any grid with n_space > 2 k_max.
SpatialField random_scalar(const GridPtr& grid, std::mt19937_64& rng, int k_max);
SpatialField random_divfree(const GridPtr& grid, std::mt19937_64& rng, int k_max);
SpaceTimeField random_scalar_evolution(const GridPtr& grid, std::mt19937_64& rng,
                                       int k_max);
SpaceTimeField random_vector_evolution(const GridPtr& grid, std::mt19937_64& rng,
                                       int k_max, bool divergence_free);

// Empirical operator-constant statistics over a field ensemble.
struct EstimateReport {
    std::string op;
    int ensemble_size = 0;
    std::string grid_desc;
    std::vector<double> per_sample;
    double mean = 0;
    double max = 0;
    std::string witness;  // which sample attained the max
};

EstimateReport make_report(const std::string& op, const Grid& g,
                           std::vector<double> samples);

// sup ||B(u,v)||_Y / (||u||_Y ||v||_Y) over random divergence-free pairs
EstimateReport estimate_C0(const GridPtr& grid, NormSpace space,
                           const NormParams& par, int n_fields,
                           std::uint64_t seed);

// per-sample empirical constant of the pointwise kernel domination
EstimateReport estimate_kernel_domination(const GridPtr& grid, const Symbol& sigma,
                                          int n_fields, std::uint64_t seed);

// Carleson-bound ratios ||1_Q w_i|| / (T^{3/4} ||u||_KT ||v||_KT) for the
// three Koch-Tataru split pieces; returns one report per piece.
std::vector<EstimateReport> estimate_kt_carleson(const GridPtr& grid,
                                                 int n_fields,
                                                 std::uint64_t seed);

EstimateReport estimate_fefferman_phong(const GridPtr& grid, double beta,
                                        double p, int n_fields,
                                        std::uint64_t seed);

EstimateReport estimate_theo5(const GridPtr& grid, double q, int n_fields,
                              std::uint64_t seed);

// embedding constants of the chain Y_KT -> Y_KT,q -> M_2^{2,5}
EstimateReport estimate_embedding_yktq(const GridPtr& grid, double q,
                                       int n_fields, std::uint64_t seed);
EstimateReport estimate_embedding_morrey(const GridPtr& grid, double q,
                                         int n_fields, std::uint64_t seed);

}  // namespace nscrit
