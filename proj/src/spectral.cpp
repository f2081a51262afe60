#include "nscrit/spectral.hpp"

#include <cmath>

namespace nscrit {

namespace symbols {

Symbol abs_xi() {
    return {[](const std::array<double, 3>& xi) {
                return cplx(std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]), 0.0);
            },
            1.0, "abs"};
}

Symbol deriv(int j) {
    return {[j](const std::array<double, 3>& xi) { return cplx(0.0, xi[j]); }, 1.0,
            "d" + std::to_string(j)};
}

Symbol component(int j) {
    return {[j](const std::array<double, 3>& xi) { return cplx(xi[j], 0.0); }, 1.0,
            "xi" + std::to_string(j)};
}

Symbol leray_div(int i, int j, int k) {
    return {[i, j, k](const std::array<double, 3>& xi) {
                double n2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                double v = (i == k ? xi[j] : 0.0);
                if (n2 > 0) v -= xi[i] * xi[j] * xi[k] / n2;
                return cplx(0.0, v);
            },
            1.0,
            "pdiv" + std::to_string(i) + std::to_string(j) + std::to_string(k)};
}

}  // namespace symbols

std::array<double, 3> freq_vector(const Grid& g, std::int64_t s) {
    auto c = g.unflatten(s);
    std::array<double, 3> xi{0, 0, 0};
    for (int d = 0; d < g.dim(); ++d) xi[d] = g.freq(c[d]);
    return xi;
}

namespace {

template <class Fn>
SpatialField apply_multiplier(const SpatialField& u, Fn&& m) {
    const Grid& g = *u.grid();
    SpatialField out(u.grid(), u.components());
    for (int c = 0; c < u.components(); ++c) {
        auto coeffs = fft::forward(g, u.data(c));
        for (std::int64_t s = 0; s < g.n_points(); ++s)
            coeffs[s] *= m(freq_vector(g, s), s);
        fft::inverse(g, coeffs, out.data(c));
    }
    return out;
}

double norm2(const std::array<double, 3>& xi) {
    return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
}

}  // namespace

SpatialField heat(const SpatialField& u, double t) {
    if (t < 0) throw std::invalid_argument("heat: negative time");
    return apply_multiplier(u, [t](const std::array<double, 3>& xi, std::int64_t) {
        return cplx(std::exp(-t * norm2(xi)), 0.0);
    });
}

SpatialField apply_symbol(const Symbol& sigma, const SpatialField& u) {
    auto out = apply_multiplier(u, [&](const std::array<double, 3>& xi, std::int64_t s) {
        if (s == 0) return cplx(0.0, 0.0);
        cplx v = sigma(xi);
        if (std::isnan(v.real()) || std::isnan(v.imag()))
            throw std::runtime_error("apply_symbol: NaN in symbol evaluation");
        return v;
    });
    return out;
}

SpatialField leray(const SpatialField& u) {
    const Grid& g = *u.grid();
    if (u.components() != g.dim())
        throw std::invalid_argument("leray: vector field required");
    const int d = g.dim();
    std::vector<std::vector<cplx>> hat(d);
    for (int c = 0; c < d; ++c) hat[c] = fft::forward(g, u.data(c));
    for (std::int64_t s = 1; s < g.n_points(); ++s) {
        auto xi = freq_vector(g, s);
        double n2 = norm2(xi);
        if (n2 == 0) continue;
        cplx dot(0, 0);
        for (int c = 0; c < d; ++c) dot += xi[c] * hat[c][s];
        for (int c = 0; c < d; ++c) hat[c][s] -= xi[c] * dot / n2;
    }
    SpatialField out(u.grid(), d);
    for (int c = 0; c < d; ++c) fft::inverse(g, hat[c], out.data(c));
    return out;
}

SpatialField frac_laplacian(const SpatialField& u, double alpha) {
    return apply_multiplier(u, [alpha](const std::array<double, 3>& xi, std::int64_t s) {
        if (s == 0) return cplx(alpha == 0.0 ? 1.0 : 0.0, 0.0);
        double n = std::sqrt(norm2(xi));
        if (n == 0) return cplx(0.0, 0.0);
        return cplx(std::pow(n, alpha), 0.0);
    });
}

SpatialField hilbert_1d(const SpatialField& u) {
    if (u.grid()->dim() != 1)
        throw std::invalid_argument("hilbert_1d: 1-d grid required");
    return apply_multiplier(u, [](const std::array<double, 3>& xi, std::int64_t s) {
        if (s == 0 || xi[0] == 0) return cplx(0.0, 0.0);
        return cplx(0.0, xi[0] > 0 ? -1.0 : 1.0);
    });
}

SpatialField divergence(const SpatialField& u) {
    const Grid& g = *u.grid();
    if (u.components() != g.dim())
        throw std::invalid_argument("divergence: vector field required");
    SpatialField out(u.grid(), 1);
    std::vector<cplx> acc(g.n_points(), cplx(0, 0));
    for (int c = 0; c < g.dim(); ++c) {
        auto hat = fft::forward(g, u.data(c));
        for (std::int64_t s = 0; s < g.n_points(); ++s) {
            auto xi = freq_vector(g, s);
            acc[s] += cplx(0, xi[c]) * hat[s];
        }
    }
    fft::inverse(g, acc, out.data(0));
    return out;
}

SpatialField pressure_gradient(const SpatialField& F, const SpatialField& u) {
    const Grid& g = *u.grid();
    const int d = g.dim();
    if (u.components() != d)
        throw std::invalid_argument("pressure_gradient: u must be a vector field");
    if (F.components() != d * d)
        throw std::invalid_argument("pressure_gradient: F must be a dim x dim tensor");

    // G = F - u (x) u, component (j,k) stored at j*d + k
    SpatialField G(u.grid(), d * d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            for (std::int64_t s = 0; s < g.n_points(); ++s)
                G.at(j * d + k, s) = F.at(j * d + k, s) - u.at(j, s) * u.at(k, s);

    std::vector<std::vector<cplx>> Ghat(d * d);
    for (int c = 0; c < d * d; ++c) Ghat[c] = fft::forward(g, G.data(c));

    SpatialField out(u.grid(), d);
    std::vector<std::vector<cplx>> gp(d, std::vector<cplx>(g.n_points(), cplx(0, 0)));
    for (std::int64_t s = 1; s < g.n_points(); ++s) {
        auto xi = freq_vector(g, s);
        double n2 = norm2(xi);
        if (n2 == 0) continue;
        cplx contract(0, 0);  // (xi (x) xi) : G_hat
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                contract += xi[j] * xi[k] * Ghat[j * d + k][s];
        // grad p_hat = -i xi (xi (x) xi : G_hat)/|xi|^2
        for (int i = 0; i < d; ++i)
            gp[i][s] = cplx(0, -xi[i]) * contract / n2;
    }
    for (int i = 0; i < d; ++i) fft::inverse(g, gp[i], out.data(i));
    return out;
}

SpaceTimeField heat_extension(const SpatialField& u0, const GridPtr& grid) {
    SpaceTimeField out(grid, u0.components());
    for (int t = 0; t < grid->n_time(); ++t)
        out.set_slice(t, heat(u0, grid->time(t)));
    return out;
}

void dealias_product_raw(const Grid& g, const double* u, const double* v, double* out) {
    const int n = g.n_space();
    const int dim = g.dim();
    const int m = (3 * n) / 2;
    std::int64_t np = g.n_points();
    std::int64_t mp = 1;
    for (int d = 0; d < dim; ++d) mp *= m;

    std::vector<cplx> uh(np), vh(np);
    fft::forward(dim, n, u, uh.data());
    fft::forward(dim, n, v, vh.data());

    auto pad = [&](const std::vector<cplx>& h) {
        std::vector<cplx> big(mp, cplx(0, 0));
        for (std::int64_t s = 0; s < np; ++s) {
            auto c = g.unflatten(s);
            std::int64_t idx = 0;
            for (int d = dim - 1; d >= 0; --d) {
                int f = g.freq_index(c[d]);
                int i = (f >= 0) ? f : f + m;
                idx = idx * m + i;
            }
            big[idx] = h[s];
        }
        return big;
    };
    std::vector<cplx> ub = pad(uh), vb = pad(vh);
    std::vector<cplx> upx(mp), vpx(mp);
    fft::inverse_c(dim, m, ub.data(), upx.data());
    fft::inverse_c(dim, m, vb.data(), vpx.data());
    for (std::int64_t i = 0; i < mp; ++i) upx[i] *= vpx[i];
    std::vector<cplx> ph(mp);
    fft::forward_c(dim, m, upx.data(), ph.data());

    // truncate back to the n-lattice
    std::vector<cplx> small(np, cplx(0, 0));
    for (std::int64_t s = 0; s < np; ++s) {
        auto c = g.unflatten(s);
        std::int64_t idx = 0;
        for (int d = dim - 1; d >= 0; --d) {
            int f = g.freq_index(c[d]);
            int i = (f >= 0) ? f : f + m;
            idx = idx * m + i;
        }
        small[s] = ph[idx];
    }
    fft::inverse(dim, n, small.data(), out);
}

SpatialField dealiased_product(const SpatialField& u, const SpatialField& v) {
    if (!u.grid()->same_as(*v.grid()))
        throw std::invalid_argument("dealiased_product: grid mismatch");
    SpatialField out(u.grid(), 1);
    dealias_product_raw(*u.grid(), u.data(0), v.data(0), out.data(0));
    return out;
}

void remove_mean(SpatialField& u) {
    const std::int64_t np = u.grid()->n_points();
    for (int c = 0; c < u.components(); ++c) {
        double m = 0;
        for (std::int64_t i = 0; i < np; ++i) m += u.at(c, i);
        m /= static_cast<double>(np);
        for (std::int64_t i = 0; i < np; ++i) u.at(c, i) -= m;
    }
}

}  // namespace nscrit
