#pragma once

#include <complex>
#include <vector>

#include "nscrit/grid.hpp"

namespace nscrit {

using cplx = std::complex<double>;

// FFTW-backed complex transforms on the grid's spatial lattice.
// Forward is normalized: coefficients c_xi with u(x) = sum c_xi e^{i xi.x}.
namespace fft {

// dims: per-axis sizes, slowest axis first is not required; we pass
// {n,..,n} with x fastest in memory (matching Grid::flatten).
void forward(int dim, int n, const double* in, cplx* out);
void forward_c(int dim, int n, const cplx* in, cplx* out);
void inverse(int dim, int n, const cplx* in, double* out);   // takes real part
void inverse_c(int dim, int n, const cplx* in, cplx* out);

std::vector<cplx> forward(const Grid& g, const double* in);
void inverse(const Grid& g, const std::vector<cplx>& in, double* out);

}  // namespace fft

}  // namespace nscrit
