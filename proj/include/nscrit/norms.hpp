#pragma once

#include <optional>
#include <string>

#include "nscrit/field.hpp"
#include "nscrit/spectral.hpp"

namespace nscrit {

// Where a discrete supremum was attained, plus the sampling density used,
// so the sup sampling can be audited.
struct NormReport {
    std::string space;
    double value = 0.0;
    // witness cylinder achieving the discrete supremum (when applicable)
    std::optional<CylinderSpec> witness;
    int witness_time_index = -1;     // for slice-type suprema
    std::string branch;              // for composite norms: which part attained
    // sampling metadata
    int n_T_samples = 0;
    int n_centers = 0;
    int n_radii = 0;
};

// Finite sample set for the (T, x, r) suprema: T and r dyadic, centers on a
// (possibly coarsened) sublattice.
struct NormSampling {
    std::vector<double> T_values;   // empty: dyadic from t_min to 4 t_max
    std::vector<double> radii;      // empty: dyadic from dx to L/2
    int center_stride = 1;          // stride of the witness-center lattice
    int outer_stride = 4;           // coarser outer lattice for nested sups
    std::vector<double> outer_T;    // outer T ladder for nested sups
};

NormSampling default_sampling(const Grid& g);

// sup_{T,x} T^{-3/4} || 1_{Q_{T,x}} u ||_{L2 L2}
NormReport norm_Y2(const SpaceTimeField& u, const NormSampling& s = {});

// sup_t sqrt(t) || u(t,.) ||_inf
NormReport norm_Z0(const SpaceTimeField& u);

// || . ||_{Y2} + sup sqrt(t) || . ||_inf
NormReport norm_YKT(const SpaceTimeField& u, const NormSampling& s = {});

// parabolic Morrey norm: sup over sampled (r,t,x) of
// r^{-e} ( int int_{(t-r^2,t+r^2) x B(x,r), s>0} |u|^p )^{1/p},
// e = (dim+2)(1/p - 1/lambda)
NormReport norm_morrey(const SpaceTimeField& u, double p, double lambda,
                       const NormSampling& s = {});

double morrey_exponent(int dim, double p, double lambda);

// max of the Y2 branch and the R-cylinder Morrey branch
// sup T^{1/2 - 5/(2q)} || 1_{R_{T,x}} u ||_{M_2^{2q/5, q}}
NormReport norm_YKTq(const SpaceTimeField& u, double q, const NormSampling& s = {});

// just the second branch (used by the dyadic band operators)
NormReport yktq_morrey_branch(const SpaceTimeField& u, double q,
                              const NormSampling& s = {});

// L2 in time of the l1 spectral mass of each slice
NormReport norm_L2A(const SpaceTimeField& u);

// weak-L2 in time of t -> ||u(t,.)||_inf
NormReport norm_L2wLinf(const SpaceTimeField& u);

// heat extension of u0 on the grid ladder, then the Y2 norm
NormReport norm_bmo_neg1(const SpatialField& u0, const GridPtr& grid,
                         const NormSampling& s = {});

enum class NormSpace { Y2, Z0, YKT, YKTq, Morrey, L2A, L2wLinf };

struct NormParams {
    double p = 2, lambda = 5, q = 6;
};

NormReport space_norm(const SpaceTimeField& u, NormSpace sp,
                      const NormParams& par = {}, const NormSampling& s = {});

std::optional<NormSpace> parse_space(const std::string& name);
std::string space_name(NormSpace sp);

namespace ref {
// direct-scan serial reference for the Y2 supremum (no FFT convolution)
NormReport norm_Y2_direct(const SpaceTimeField& u, const NormSampling& s = {});
// direct masked-sum Morrey evaluation
NormReport norm_morrey_direct(const SpaceTimeField& u, double p, double lambda,
                              const NormSampling& s = {});
}  // namespace ref

}  // namespace nscrit
