#include "nscrit/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace nscrit {
namespace fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::vector<cplx> buf_in, buf_out;
};

std::mutex plan_mutex;

// one cached in-place c2c plan pair per (dim, n); FFTW planning is not
// thread-safe, execution with fftw_execute_dft is
PlanPair& plans_for(int dim, int n) {
    static std::map<std::pair<int, int>, PlanPair> cache;
    std::lock_guard<std::mutex> lk(plan_mutex);
    auto key = std::make_pair(dim, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    PlanPair p;
    std::int64_t total = 1;
    std::vector<int> dims(dim, n);
    for (int d = 0; d < dim; ++d) total *= n;
    p.buf_in.resize(total);
    p.buf_out.resize(total);
    auto* bi = reinterpret_cast<fftw_complex*>(p.buf_in.data());
    auto* bo = reinterpret_cast<fftw_complex*>(p.buf_out.data());
    // memory layout: x fastest; FFTW expects row-major (last index fastest),
    // so pass dims reversed -- all axes equal here, no-op but kept explicit
    p.fwd = fftw_plan_dft(dim, dims.data(), bi, bo, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft(dim, dims.data(), bi, bo, FFTW_BACKWARD, FFTW_ESTIMATE);
    auto res = cache.emplace(key, std::move(p));
    return res.first->second;
}

}  // namespace

void forward_c(int dim, int n, const cplx* in, cplx* out) {
    auto& p = plans_for(dim, n);
    std::int64_t total = 1;
    for (int d = 0; d < dim; ++d) total *= n;
    std::vector<cplx> tmp(in, in + total);
    fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out));
    double norm = 1.0 / static_cast<double>(total);
    for (std::int64_t i = 0; i < total; ++i) out[i] *= norm;
}

void forward(int dim, int n, const double* in, cplx* out) {
    std::int64_t total = 1;
    for (int d = 0; d < dim; ++d) total *= n;
    std::vector<cplx> tmp(total);
    for (std::int64_t i = 0; i < total; ++i) tmp[i] = in[i];
    forward_c(dim, n, tmp.data(), out);
}

void inverse_c(int dim, int n, const cplx* in, cplx* out) {
    auto& p = plans_for(dim, n);
    std::int64_t total = 1;
    for (int d = 0; d < dim; ++d) total *= n;
    std::vector<cplx> tmp(in, in + total);
    fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out));
}

void inverse(int dim, int n, const cplx* in, double* out) {
    std::int64_t total = 1;
    for (int d = 0; d < dim; ++d) total *= n;
    std::vector<cplx> tmp(total);
    inverse_c(dim, n, in, tmp.data());
    for (std::int64_t i = 0; i < total; ++i) out[i] = tmp[i].real();
}

std::vector<cplx> forward(const Grid& g, const double* in) {
    std::vector<cplx> out(g.n_points());
    forward(g.dim(), g.n_space(), in, out.data());
    return out;
}

void inverse(const Grid& g, const std::vector<cplx>& in, double* out) {
    inverse(g.dim(), g.n_space(), in.data(), out);
}

}  // namespace fft
}  // namespace nscrit
