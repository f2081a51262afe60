#pragma once

#include <functional>

#include "nscrit/fft.hpp"
#include "nscrit/field.hpp"

namespace nscrit {

// Degree-homogeneous Fourier multiplier, given as a callable on frequency
// vectors. sigma(lambda xi) = lambda^degree sigma(xi) for lambda > 0.
struct Symbol {
    std::function<cplx(const std::array<double, 3>&)> eval;
    double degree = 1.0;
    std::string name;

    cplx operator()(const std::array<double, 3>& xi) const { return eval(xi); }
};

namespace symbols {
Symbol abs_xi();            // |xi|
Symbol deriv(int j);        // i xi_j  (d/dx_j)
Symbol component(int j);    // xi_j
// i (delta_{ik} xi_j - xi_i xi_j xi_k / |xi|^2): scalar piece of P Div
Symbol leray_div(int i, int j, int k);
}  // namespace symbols

// fill xi for flat spatial index s
std::array<double, 3> freq_vector(const Grid& g, std::int64_t s);

// multiplier e^{-t |xi|^2} per component; mean mode preserved
SpatialField heat(const SpatialField& u, double t);

// coefficient-wise multiplication by sigma(xi); zero frequency -> 0
SpatialField apply_symbol(const Symbol& sigma, const SpatialField& u);

// u_hat(xi) -> u_hat - xi (xi . u_hat)/|xi|^2; zero mode untouched
SpatialField leray(const SpatialField& u);

// multiplier |xi|^alpha; zero mode annihilated
SpatialField frac_laplacian(const SpatialField& u, double alpha);

// multiplier -i sgn(xi) on a 1-d grid
SpatialField hilbert_1d(const SpatialField& u);

// spectral solve of Delta grad p = grad((grad x grad) . (F - u x u));
// returns grad p with zero mode set to zero
SpatialField pressure_gradient(const SpatialField& F, const SpatialField& u);

// spectral divergence of a vector field
SpatialField divergence(const SpatialField& u);

// heat applied slice-by-slice with the slice's own time:
// (t_k, x) -> e^{t_k Delta} u0
SpaceTimeField heat_extension(const SpatialField& u0, const GridPtr& grid);

// dealiased pointwise product of scalar slices (3/2-rule zero padding)
SpatialField dealiased_product(const SpatialField& u, const SpatialField& v);
void dealias_product_raw(const Grid& g, const double* u, const double* v, double* out);

// subtract the mean of each component
void remove_mean(SpatialField& u);

}  // namespace nscrit
