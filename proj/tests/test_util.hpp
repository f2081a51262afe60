#pragma once

#include <cmath>
#include <numbers>

#include "nscrit/ensemble.hpp"

namespace testutil {

using namespace nscrit;

inline double rel_diff(double a, double b) {
    const double den = std::max(std::abs(a), std::abs(b));
    return den > 0 ? std::abs(a - b) / den : 0.0;
}

inline double rel_l2l2(const SpaceTimeField& a, const SpaceTimeField& b) {
    SpaceTimeField d = a;
    d -= b;
    const double den = std::max(a.l2l2(), b.l2l2());
    return den > 0 ? d.l2l2() / den : 0.0;
}

// scalar slice-constant-in-time single mode cos(k . x)
inline SpaceTimeField cos_mode(const GridPtr& grid, int axis, int k = 1) {
    const Grid& g = *grid;
    SpaceTimeField u(grid, 1);
    const double freq = 2.0 * std::numbers::pi * k / g.box_length();
    for (int t = 0; t < g.n_time(); ++t) {
        double* sl = u.slice(0, t);
        for (std::int64_t s = 0; s < g.n_points(); ++s) {
            auto idx = g.unflatten(s);
            sl[s] = std::cos(freq * idx[axis] * g.dx());
        }
    }
    return u;
}

inline SpatialField cos_slice(const GridPtr& grid, int axis, int k = 1) {
    return cos_mode(grid, axis, k).slice_field(0);
}

// lattice translation of every slice by the index vector shift
inline SpaceTimeField translate(const SpaceTimeField& u,
                                const std::array<int, 3>& shift) {
    const Grid& g = *u.grid();
    SpaceTimeField out(u.grid(), u.components());
    const int n = g.n_space();
    for (int c = 0; c < u.components(); ++c)
        for (int t = 0; t < g.n_time(); ++t) {
            const double* src = u.slice(c, t);
            double* dst = out.slice(c, t);
            for (std::int64_t s = 0; s < g.n_points(); ++s) {
                auto idx = g.unflatten(s);
                std::array<int, 3> to = idx;
                for (int d = 0; d < g.dim(); ++d)
                    to[d] = ((idx[d] + shift[d]) % n + n) % n;
                dst[g.flatten(to)] = src[s];
            }
        }
    return out;
}

// u_lambda(t, x) = lambda u(lambda^2 t, lambda x) for lambda = 2, from a grid
// whose time ladder is the lambda^2-scaled image of the source ladder
inline SpaceTimeField dilate2(const SpaceTimeField& u, const GridPtr& fine) {
    const Grid& gs = *u.grid();
    const Grid& gf = *fine;
    SpaceTimeField out(fine, u.components());
    const int n = gf.n_space();
    for (int c = 0; c < u.components(); ++c)
        for (int t = 0; t < gf.n_time(); ++t) {
            const double* src = u.slice(c, t);  // times align: 4 t_f = t_s
            double* dst = out.slice(c, t);
            for (std::int64_t s = 0; s < gf.n_points(); ++s) {
                auto idx = gf.unflatten(s);
                std::array<int, 3> from = idx;
                for (int d = 0; d < gs.dim(); ++d)
                    from[d] = (2 * idx[d]) % n;
                dst[s] = 2.0 * src[gs.flatten(from)];
            }
        }
    return out;
}

// divergence-free two-mode manufactured velocity
//   w = eps e^{-t} (sin x2, sin x3, 0)   (box length 2 pi)
// with the forcing tensor F realizing P Div F = (d_t - Delta) w + P Div(w w)
struct Manufactured {
    SpaceTimeField w;
    SpaceTimeField F;
    SpatialField u0;

    Manufactured(const GridPtr& grid, double eps)
        : w(grid, 3), F(grid, 9), u0(grid, 3) {
        const Grid& g = *grid;
        for (int t = 0; t < g.n_time(); ++t) {
            const double a = eps * std::exp(-g.time(t));
            double* w1 = w.slice(0, t);
            double* w2 = w.slice(1, t);
            for (std::int64_t s = 0; s < g.n_points(); ++s) {
                auto idx = g.unflatten(s);
                w1[s] = a * std::sin(idx[1] * g.dx());
                w2[s] = a * std::sin(idx[2] * g.dx());
            }
        }
        for (std::int64_t s = 0; s < g.n_points(); ++s) {
            auto idx = g.unflatten(s);
            u0.at(0, s) = eps * std::sin(idx[1] * g.dx());
            u0.at(1, s) = eps * std::sin(idx[2] * g.dx());
        }
        // (d_t - Delta) w = 0 for a = e^{-t} on unit-frequency modes, so the
        // defect forcing is purely the nonlinear flux h = P Div (w w)
        for (int t = 0; t < g.n_time(); ++t) {
            SpatialField slice(grid, 3);
            for (int c = 0; c < 3; ++c)
                std::copy(w.slice(c, t), w.slice(c, t) + g.n_points(),
                          slice.data(c));
            SpatialField h = nonlinear_flux(slice);
            std::array<std::vector<cplx>, 3> hh;
            for (int c = 0; c < 3; ++c) hh[c] = fft::forward(g, h.data(c));
            // F_jk with i xi_j F_jk = h_k: F_jk = -i xi_j h_k / |xi|^2
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    std::vector<cplx> c(g.n_points(), cplx(0, 0));
                    for (std::int64_t s = 1; s < g.n_points(); ++s) {
                        auto xi = freq_vector(g, s);
                        const double n2 =
                            xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                        if (n2 == 0) continue;
                        c[s] = cplx(0, -xi[j] / n2) * hh[k][s];
                    }
                    fft::inverse(g, c, F.slice(j * 3 + k, t));
                }
        }
    }

    static SpatialField nonlinear_flux(const SpatialField& v) {
        const GridPtr& grid = v.grid();
        const Grid& g = *grid;
        SpatialField div(grid, 3);
        for (int k = 0; k < 3; ++k) {
            std::vector<cplx> acc(g.n_points(), cplx(0, 0));
            for (int j = 0; j < 3; ++j) {
                std::vector<double> prod(g.n_points());
                for (std::int64_t s = 0; s < g.n_points(); ++s)
                    prod[s] = v.at(j, s) * v.at(k, s);
                auto ph = fft::forward(g, prod.data());
                for (std::int64_t s = 0; s < g.n_points(); ++s) {
                    auto xi = freq_vector(g, s);
                    acc[s] += cplx(0, xi[j]) * ph[s];
                }
            }
            fft::inverse(g, acc, div.data(k));
        }
        return leray(div);
    }
};

}  // namespace testutil
