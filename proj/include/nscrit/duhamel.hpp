#pragma once

#include "nscrit/norms.hpp"
#include "nscrit/quadrature.hpp"
#include "nscrit/spectral.hpp"

namespace nscrit {

// L(F) = int_0^t e^{(t-s)Delta} P Div F ds for a tensor-valued F
// (component (j,k) at index j*dim+k). Output is divergence-free.
SpaceTimeField linear_force(const SpaceTimeField& F,
                            const QuadratureRule& rule = {});

// B_sigma(u,v) = int_0^t e^{(t-s)Delta} sigma(D)(uv) ds for scalar u, v;
// the product is dealiased by 3/2-rule zero padding.
SpaceTimeField bilinear_sigma(const Symbol& sigma, const SpaceTimeField& u,
                              const SpaceTimeField& v,
                              const QuadratureRule& rule = {});

// single output slice of B_sigma at grid time index t_index
SpatialField bilinear_sigma_at(const Symbol& sigma, const SpaceTimeField& u,
                               const SpaceTimeField& v, int t_index,
                               const QuadratureRule& rule = {});

// the vector bilinear map B(u,v) = int_0^t e^{(t-s)Delta} P Div (u x v) ds
SpaceTimeField bilinear_B(const SpaceTimeField& u, const SpaceTimeField& v,
                          const QuadratureRule& rule = {});

// dealiased tensor product (u x v)_{jk} = u_j v_k as a dim*dim field
SpaceTimeField tensor_outer(const SpaceTimeField& u, const SpaceTimeField& v);

// Empirical constant for the pointwise kernel domination
// |e^{(t-s)Delta} sigma(D)(uv)| <= C int (sqrt(t-s)+|x-y|)^{-(d+1)} |u||v| dy.
struct KernelDomination {
    double C_emp = 0.0;        // smallest C over the estimation sample
    double max_violation = 0;  // max LHS - C_emp*RHS over held-out pairs
    int n_pairs = 0;
};
KernelDomination kernel_domination_residual(const Symbol& sigma,
                                            const SpaceTimeField& u,
                                            const SpaceTimeField& v);

// Koch-Tataru three-way splitting of B_sigma(u,v) relative to Q_{10T,x}:
//   w1 = B_sigma(u, (1 - 1_{Q10}) v)
//   w2(t) = sigma(D) e^{t Delta} int_0^t 1_{Q10} u v ds
//   w3 = B_sigma(u, 1_{Q10} v) - w2
struct KTSplit {
    SpaceTimeField w1, w2, w3;
    Mask q10;
};
KTSplit kt_split(const Symbol& sigma, const SpaceTimeField& u,
                 const SpaceTimeField& v, double T,
                 const std::array<double, 3>& x,
                 const QuadratureRule& rule = {});

// Z_alpha(w) = int_0^t int (sqrt(t-s)+|x-y|)^{-(d+1+alpha)} |w| dy ds,
// kernel truncated at the periodic half box; FFT convolution in space.
SpaceTimeField riesz_potential(const SpaceTimeField& w, double alpha);

namespace ref {
// brute-force double-sum evaluation at one sample (oracle / serial reference)
double riesz_potential_direct(const SpaceTimeField& w, double alpha,
                              int t_index, std::int64_t x_index);
}  // namespace ref

// || int int (sqrt(t-s)+|x-y|)^{beta-(d+2)} |f g| ||_{L2L2}
//   / ( ||f||_{L2L2} ||g||_{Morrey p, (d+2)/beta} )
// empty optional when a denominator degenerates
std::optional<double> fefferman_phong_ratio(const SpaceTimeField& f,
                                            const SpaceTimeField& g_field,
                                            double beta, double p);

// Theorem-5-A operators on one dyadic time band:
//   W(t)  = int_0^t (e^{(t-s)Delta} - e^{t Delta}) (-Delta)^{(1+alpha)/2} (u v_j) ds
//   W*    = int_0^{t*} (e^{(t*-s)Delta} - e^{t* Delta}) (-Delta)^{alpha/2} (u v_j) ds,
// t* = 16 * 4^{-j}; for t > t*,  W(t) = (-Delta)^{1/2} e^{(t-t*)Delta} W*.
struct Theo5W {
    SpaceTimeField W;
    SpatialField Wstar;
    double t_star = 0;
    int band_j = 0;
};
Theo5W theo5_W(const SpaceTimeField& u, const SpaceTimeField& v_band, int band_j,
               double alpha, const QuadratureRule& rule = {});

// time-slice indices of the dyadic band 4^{-j} <= t < 4 * 4^{-j}
std::vector<int> band_slices(const Grid& g, int band_j);
std::vector<int> bands_present(const Grid& g);

// Theorem-5-B: U = sum_j U_j with the difference-semigroup kernel and
// multiplier |xi|; returns ||U|| and the ratio to
// ||v|| * sup_{T,x} T^{1/2-5/(2q)} ||1_{R_{T,x}} u||_{M_2^{2q/5,q}}.
struct Theo5U {
    SpaceTimeField U;
    double value = 0;          // ||U||_{L2L2}
    double denom = 0;
    double bound_ratio = 0;
    bool degenerate = false;
    double decomposition_defect = 0;  // || U - sum_j U_j ||
};
Theo5U theo5_U(const SpaceTimeField& u, const SpaceTimeField& v, double q,
               const NormSampling& sampling = {},
               const QuadratureRule& rule = {});

}  // namespace nscrit
