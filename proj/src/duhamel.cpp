#include "nscrit/duhamel.hpp"

#include <algorithm>
#include <cmath>

namespace nscrit {

namespace {

double norm2(const std::array<double, 3>& xi) {
    return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
}

// Exponential-integrator core: given spectral integrand slices ghat[t][xi],
// writes out_hat[t][xi] = sum over panels of the exact kernel moments with
// the integrand interpolated linearly per panel. The leading panel [0, t_0]
// extends the integrand by its first sample. kernel:
//   difference=false: e^{-lambda(t-s)}
//   difference=true : e^{-lambda(t-s)} - e^{-lambda t}
void etd_all_times(const Grid& g, const std::vector<std::vector<cplx>>& ghat,
                   bool difference, QuadScheme scheme,
                   std::vector<std::vector<cplx>>& out_hat) {
    const int nt = g.n_time();
    const std::int64_t np = g.n_points();
    out_hat.assign(nt, std::vector<cplx>(np));
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < np; ++s) {
        const double lambda = norm2(freq_vector(g, s));
        cplx S(0, 0);     // running int_0^{t_i} e^{-lambda(t_i - s)} g ds
        cplx P(0, 0);     // running plain int_0^{t_i} g ds
        for (int i = 0; i < nt; ++i) {
            const double b = g.time(i);
            const double a = (i == 0) ? 0.0 : g.time(i - 1);
            const cplx ga = (i == 0) ? ghat[0][s] : ghat[i - 1][s];
            const cplx gb = ghat[i][s];
            if (i > 0) S *= std::exp(-lambda * (b - a));
            if (scheme == QuadScheme::ProductSingular) {
                double w0, w1;
                exp_panel_weights(lambda, a, b, b, w0, w1);
                S += w0 * ga + w1 * gb;
            } else {
                S += exp_panel_mass(lambda, a, b, b) * 0.5 * (ga + gb);
            }
            P += (b - a) * 0.5 * (ga + gb);
            out_hat[i][s] = difference ? S - std::exp(-lambda * b) * P : S;
        }
    }
}

// same integral evaluated at a single output time t_eval >= last nonzero
// panel; panels run over grid times up to panel_end (inclusive index)
void etd_single_time(const Grid& g, const std::vector<std::vector<cplx>>& ghat,
                     double t_eval, int panel_end, bool difference,
                     QuadScheme scheme, std::vector<cplx>& out_hat) {
    const std::int64_t np = g.n_points();
    out_hat.assign(np, cplx(0, 0));
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < np; ++s) {
        const double lambda = norm2(freq_vector(g, s));
        cplx S(0, 0), P(0, 0);
        for (int i = 0; i <= panel_end; ++i) {
            const double b = g.time(i);
            const double a = (i == 0) ? 0.0 : g.time(i - 1);
            if (b > t_eval + 1e-15) break;
            const cplx ga = (i == 0) ? ghat[0][s] : ghat[i - 1][s];
            const cplx gb = ghat[i][s];
            if (scheme == QuadScheme::ProductSingular) {
                double w0, w1;
                exp_panel_weights(lambda, a, b, t_eval, w0, w1);
                S += w0 * ga + w1 * gb;
            } else {
                S += exp_panel_mass(lambda, a, b, t_eval) * 0.5 * (ga + gb);
            }
            P += (b - a) * 0.5 * (ga + gb);
        }
        out_hat[s] = difference ? S - std::exp(-lambda * t_eval) * P : S;
    }
}

std::vector<std::vector<cplx>> product_spectra(const SpaceTimeField& u,
                                               const SpaceTimeField& v,
                                               int cu = 0, int cv = 0) {
    const Grid& g = *u.grid();
    std::vector<std::vector<cplx>> out(g.n_time());
    std::vector<double> prod(g.n_points());
    for (int t = 0; t < g.n_time(); ++t) {
        dealias_product_raw(g, u.slice(cu, t), v.slice(cv, t), prod.data());
        out[t] = fft::forward(g, prod.data());
    }
    return out;
}

void check_same_grid(const SpaceTimeField& a, const SpaceTimeField& b,
                     const char* who) {
    if (!a.grid()->same_as(*b.grid()))
        throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

void check_finite(const SpaceTimeField& f, const char* who) {
    for (double v : f.values())
        if (!std::isfinite(v))
            throw std::runtime_error(std::string(who) + ": non-finite quadrature output");
}

// parabolic kernel slice (sqrt(tau) + |x|_per)^{-expo}, truncated at the
// periodic half box
std::vector<double> parabolic_kernel(const Grid& g, double tau, double expo,
                                     bool truncate_half_box) {
    std::vector<double> K(g.n_points());
    const std::array<double, 3> origin{0, 0, 0};
    const double rt = std::sqrt(std::max(tau, 0.0));
    const double rmax = g.box_length() / 2.0;
    for (std::int64_t s = 0; s < g.n_points(); ++s) {
        const double r = g.periodic_distance_point(s, origin);
        if (truncate_half_box && r > rmax) {
            K[s] = 0.0;
            continue;
        }
        K[s] = std::pow(rt + r, -expo);
    }
    return K;
}

}  // namespace

SpaceTimeField linear_force(const SpaceTimeField& F, const QuadratureRule& rule) {
    const Grid& g = *F.grid();
    const int d = g.dim();
    if (F.components() != d * d)
        throw std::invalid_argument("linear_force: tensor field required");
    const int nt = g.n_time();
    const std::int64_t np = g.n_points();

    // spectral integrand: ghat_i(s, xi) = P_{ik}(xi) i xi_j Fhat_{jk}(s, xi)
    std::vector<std::vector<std::vector<cplx>>> ghat(
        d, std::vector<std::vector<cplx>>(nt));
    for (int t = 0; t < nt; ++t) {
        std::vector<std::vector<cplx>> Fh(d * d);
        for (int c = 0; c < d * d; ++c) Fh[c] = fft::forward(g, F.slice(c, t));
        for (int i = 0; i < d; ++i) ghat[i][t].assign(np, cplx(0, 0));
        for (std::int64_t s = 1; s < np; ++s) {
            auto xi = freq_vector(g, s);
            const double n2 = norm2(xi);
            if (n2 == 0) continue;
            // div_k = i xi_j Fhat_{jk}
            std::array<cplx, 3> div{cplx(0, 0), cplx(0, 0), cplx(0, 0)};
            for (int k = 0; k < d; ++k)
                for (int j = 0; j < d; ++j)
                    div[k] += cplx(0, xi[j]) * Fh[j * d + k][s];
            cplx dot(0, 0);
            for (int k = 0; k < d; ++k) dot += xi[k] * div[k];
            for (int i = 0; i < d; ++i)
                ghat[i][t][s] = div[i] - xi[i] * dot / n2;
        }
    }

    SpaceTimeField out(F.grid(), d);
    for (int i = 0; i < d; ++i) {
        std::vector<std::vector<cplx>> oh;
        etd_all_times(g, ghat[i], false, rule.scheme, oh);
        for (int t = 0; t < nt; ++t) fft::inverse(g, oh[t], out.slice(i, t));
    }
    check_finite(out, "linear_force");
    return out;
}

SpaceTimeField bilinear_sigma(const Symbol& sigma, const SpaceTimeField& u,
                              const SpaceTimeField& v, const QuadratureRule& rule) {
    check_same_grid(u, v, "bilinear_sigma");
    const Grid& g = *u.grid();
    auto ghat = product_spectra(u, v);
    std::vector<std::vector<cplx>> oh;
    etd_all_times(g, ghat, false, rule.scheme, oh);
    SpaceTimeField out(u.grid(), 1);
    for (int t = 0; t < g.n_time(); ++t) {
        oh[t][0] = cplx(0, 0);
        for (std::int64_t s = 1; s < g.n_points(); ++s)
            oh[t][s] *= sigma(freq_vector(g, s));
        fft::inverse(g, oh[t], out.slice(0, t));
    }
    check_finite(out, "bilinear_sigma");
    return out;
}

SpatialField bilinear_sigma_at(const Symbol& sigma, const SpaceTimeField& u,
                               const SpaceTimeField& v, int t_index,
                               const QuadratureRule& rule) {
    check_same_grid(u, v, "bilinear_sigma_at");
    const Grid& g = *u.grid();
    auto ghat = product_spectra(u, v);
    std::vector<cplx> oh;
    etd_single_time(g, ghat, g.time(t_index), t_index, false, rule.scheme, oh);
    oh[0] = cplx(0, 0);
    for (std::int64_t s = 1; s < g.n_points(); ++s)
        oh[s] *= sigma(freq_vector(g, s));
    SpatialField out(u.grid(), 1);
    fft::inverse(g, oh, out.data(0));
    return out;
}

SpaceTimeField tensor_outer(const SpaceTimeField& u, const SpaceTimeField& v) {
    check_same_grid(u, v, "tensor_outer");
    const Grid& g = *u.grid();
    const int d = g.dim();
    SpaceTimeField out(u.grid(), d * d);
    std::vector<double> prod(g.n_points());
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            for (int t = 0; t < g.n_time(); ++t) {
                dealias_product_raw(g, u.slice(j, t), v.slice(k, t), prod.data());
                std::copy(prod.begin(), prod.end(), out.slice(j * d + k, t));
            }
    return out;
}

SpaceTimeField bilinear_B(const SpaceTimeField& u, const SpaceTimeField& v,
                          const QuadratureRule& rule) {
    check_same_grid(u, v, "bilinear_B");
    const Grid& g = *u.grid();
    const int d = g.dim();
    if (u.components() != d || v.components() != d)
        throw std::invalid_argument("bilinear_B: vector fields required");
    const int nt = g.n_time();
    const std::int64_t np = g.n_points();

    // assemble w_i = sum_{j,k} B_{i,j,k}(u_j, v_k) through the scalar symbol
    // family delta_{ik} d_j - Delta^{-1} d_i d_j d_k
    std::vector<std::vector<std::vector<cplx>>> ghat(
        d, std::vector<std::vector<cplx>>(nt, std::vector<cplx>(np, cplx(0, 0))));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            auto ph = product_spectra(u, v, j, k);
            for (int i = 0; i < d; ++i) {
                Symbol sym = symbols::leray_div(i, j, k);
                for (int t = 0; t < nt; ++t)
                    for (std::int64_t s = 1; s < np; ++s)
                        ghat[i][t][s] += sym(freq_vector(g, s)) * ph[t][s];
            }
        }

    SpaceTimeField out(u.grid(), d);
    for (int i = 0; i < d; ++i) {
        std::vector<std::vector<cplx>> oh;
        etd_all_times(g, ghat[i], false, rule.scheme, oh);
        for (int t = 0; t < nt; ++t) fft::inverse(g, oh[t], out.slice(i, t));
    }
    check_finite(out, "bilinear_B");
    return out;
}

KernelDomination kernel_domination_residual(const Symbol& sigma,
                                            const SpaceTimeField& u,
                                            const SpaceTimeField& v) {
    check_same_grid(u, v, "kernel_domination_residual");
    const Grid& g = *u.grid();
    const int nt = g.n_time();
    const std::int64_t np = g.n_points();
    const double expo = g.dim() + 1;

    // sampled (t, s) pairs, alternately assigned to estimation / held-out
    std::vector<std::pair<int, int>> est, held;
    std::vector<int> t_idx = {nt / 4, nt / 2, (3 * nt) / 4, nt - 1};
    int parity = 0;
    for (int ti : t_idx) {
        if (ti <= 0) continue;
        for (int frac = 1; frac <= 3; ++frac) {
            int si = (ti * frac) / 4;
            if (si >= ti) continue;
            ((parity++ % 2 == 0) ? est : held).push_back({ti, si});
        }
    }

    auto evaluate = [&](int ti, int si, std::vector<double>& lhs,
                        std::vector<double>& rhs) {
        const double t = g.time(ti), s = g.time(si);
        std::vector<double> prod(np);
        dealias_product_raw(g, u.slice(0, si), v.slice(0, si), prod.data());
        auto ph = fft::forward(g, prod.data());
        for (std::int64_t i = 1; i < np; ++i) {
            auto xi = freq_vector(g, i);
            ph[i] *= std::exp(-(t - s) * norm2(xi)) * sigma(xi);
        }
        ph[0] = cplx(0, 0);
        lhs.resize(np);
        fft::inverse(g, ph, lhs.data());

        std::vector<double> absprod(np);
        for (std::int64_t i = 0; i < np; ++i)
            absprod[i] = std::abs(u.at(0, si, i)) * std::abs(v.at(0, si, i));
        auto ah = fft::forward(g, absprod.data());
        auto K = parabolic_kernel(g, t - s, expo, false);
        auto Kh = fft::forward(g, K.data());
        for (std::int64_t i = 0; i < np; ++i) ah[i] *= Kh[i];
        rhs.resize(np);
        fft::inverse(g, ah, rhs.data());
        const double scale = static_cast<double>(np) * g.cell_volume();
        for (auto& r : rhs) r *= scale;
    };

    KernelDomination out;
    out.n_pairs = static_cast<int>(est.size() + held.size());
    std::vector<double> lhs, rhs;
    for (auto [ti, si] : est) {
        evaluate(ti, si, lhs, rhs);
        double rmax = 0;
        for (double r : rhs) rmax = std::max(rmax, r);
        if (rmax <= 0) continue;
        for (std::int64_t i = 0; i < np; ++i)
            if (rhs[i] > 1e-12 * rmax)
                out.C_emp = std::max(out.C_emp, std::abs(lhs[i]) / rhs[i]);
    }
    for (auto [ti, si] : held) {
        evaluate(ti, si, lhs, rhs);
        for (std::int64_t i = 0; i < np; ++i)
            out.max_violation =
                std::max(out.max_violation, std::abs(lhs[i]) - out.C_emp * rhs[i]);
    }
    return out;
}

KTSplit kt_split(const Symbol& sigma, const SpaceTimeField& u,
                 const SpaceTimeField& v, double T,
                 const std::array<double, 3>& x, const QuadratureRule& rule) {
    check_same_grid(u, v, "kt_split");
    const Grid& g = *u.grid();
    if (T <= 0 || T / 2 > g.t_max())
        throw std::invalid_argument("kt_split: T outside grid time range");
    Mask q10 = cylinder_mask(u.grid(), CylinderSpec::q(10.0 * T, x));
    SpaceTimeField v_in = restrict_field(v, q10);
    SpaceTimeField v_out = restrict_field(v, q10.complement());

    SpaceTimeField w1 = bilinear_sigma(sigma, u, v_out, rule);
    SpaceTimeField w3 = bilinear_sigma(sigma, u, v_in, rule);  // minus w2 below

    // w2(t) = sigma(D) e^{t Delta} int_0^t (1_{Q10} u v) ds, trapezoid in s
    const int nt = g.n_time();
    const std::int64_t np = g.n_points();
    SpaceTimeField w2(u.grid(), 1);
    std::vector<cplx> acc(np, cplx(0, 0));
    std::vector<cplx> prev(np, cplx(0, 0));
    std::vector<double> prod(np);
    for (int t = 0; t < nt; ++t) {
        dealias_product_raw(g, u.slice(0, t), v_in.slice(0, t), prod.data());
        auto cur = fft::forward(g, prod.data());
        const double b = g.time(t);
        const double a = (t == 0) ? 0.0 : g.time(t - 1);
        const auto& ga = (t == 0) ? cur : prev;
        for (std::int64_t s = 0; s < np; ++s)
            acc[s] += (b - a) * 0.5 * (ga[s] + cur[s]);
        std::vector<cplx> oh(np, cplx(0, 0));
        for (std::int64_t s = 1; s < np; ++s) {
            auto xi = freq_vector(g, s);
            oh[s] = sigma(xi) * std::exp(-b * norm2(xi)) * acc[s];
        }
        fft::inverse(g, oh, w2.slice(0, t));
        prev = cur;
    }
    w3 -= w2;
    return KTSplit{std::move(w1), std::move(w2), std::move(w3), std::move(q10)};
}

namespace {

SpaceTimeField riesz_potential_expo(const SpaceTimeField& w, double expo) {
    const Grid& g = *w.grid();
    if (w.components() != 1)
        throw std::invalid_argument("riesz_potential: scalar field required");
    const int nt = g.n_time();
    const std::int64_t np = g.n_points();

    std::vector<std::vector<cplx>> abs_hat(nt);
    for (int t = 0; t < nt; ++t) {
        std::vector<double> a(np);
        const double* sl = w.slice(0, t);
        for (std::int64_t i = 0; i < np; ++i) a[i] = std::abs(sl[i]);
        abs_hat[t] = fft::forward(g, a.data());
    }

    SpaceTimeField out(w.grid(), 1);
    const double scale = static_cast<double>(np) * g.cell_volume();
    for (int i = 0; i < nt; ++i) {
        const double ti = g.time(i);
        std::vector<double> acc(np, 0.0);
        for (int j = 0; j < i; ++j) {
            const double lo = (j == 0) ? 0.0 : 0.5 * (g.time(j - 1) + g.time(j));
            const double hi = (j == i - 1) ? ti : 0.5 * (g.time(j) + g.time(j + 1));
            const double wt = hi - lo;
            auto K = parabolic_kernel(g, ti - g.time(j), expo, true);
            auto Kh = fft::forward(g, K.data());
            std::vector<cplx> ph(np);
            for (std::int64_t s = 0; s < np; ++s) ph[s] = Kh[s] * abs_hat[j][s];
            std::vector<double> conv(np);
            fft::inverse(g, ph, conv.data());
            for (std::int64_t s = 0; s < np; ++s) acc[s] += wt * scale * conv[s];
        }
        std::copy(acc.begin(), acc.end(), out.slice(0, i));
    }
    return out;
}

}  // namespace

SpaceTimeField riesz_potential(const SpaceTimeField& w, double alpha) {
    if (!(alpha >= 0.0 && alpha < 2.5))
        throw std::invalid_argument("riesz_potential: alpha outside [0, 5/2)");
    return riesz_potential_expo(w, w.grid()->dim() + 1 + alpha);
}

namespace ref {

double riesz_potential_direct(const SpaceTimeField& w, double alpha,
                              int t_index, std::int64_t x_index) {
    const Grid& g = *w.grid();
    const double expo = g.dim() + 1 + alpha;
    const double ti = g.time(t_index);
    const double rmax = g.box_length() / 2.0;
    double acc = 0;
    for (int j = 0; j < t_index; ++j) {
        const double lo = (j == 0) ? 0.0 : 0.5 * (g.time(j - 1) + g.time(j));
        const double hi = (j == t_index - 1) ? ti : 0.5 * (g.time(j) + g.time(j + 1));
        const double wt = hi - lo;
        const double rt = std::sqrt(ti - g.time(j));
        double inner = 0;
        for (std::int64_t y = 0; y < g.n_points(); ++y) {
            const double r = g.periodic_distance(x_index, y);
            if (r > rmax) continue;
            inner += std::pow(rt + r, -expo) * std::abs(w.at(0, j, y));
        }
        acc += wt * inner * g.cell_volume();
    }
    return acc;
}

}  // namespace ref

std::optional<double> fefferman_phong_ratio(const SpaceTimeField& f,
                                            const SpaceTimeField& g_field,
                                            double beta, double p) {
    check_same_grid(f, g_field, "fefferman_phong_ratio");
    const Grid& g = *f.grid();
    const double D = g.dim() + 2;
    if (!(beta > 0 && beta < D / 2.0) || !(p > 2 && p < D / beta))
        throw std::invalid_argument("fefferman_phong_ratio: exponent range");

    const double fn = f.l2l2();
    NormReport gm = norm_morrey(g_field, p, D / beta);
    if (fn <= 0 || gm.value <= 0) return std::nullopt;

    // potential of |f g| with kernel exponent (d+2) - beta
    SpaceTimeField prod(f.grid(), 1);
    for (int t = 0; t < g.n_time(); ++t)
        for (std::int64_t i = 0; i < g.n_points(); ++i)
            prod.at(0, t, i) = std::abs(f.at(0, t, i) * g_field.at(0, t, i));
    SpaceTimeField pot = riesz_potential_expo(prod, D - beta);
    return pot.l2l2() / (fn * gm.value);
}

std::vector<int> band_slices(const Grid& g, int band_j) {
    std::vector<int> out;
    const double lo = std::pow(4.0, -band_j);
    for (int t = 0; t < g.n_time(); ++t) {
        const double tt = g.time(t);
        if (tt >= lo && tt < 4.0 * lo) out.push_back(t);
    }
    return out;
}

std::vector<int> bands_present(const Grid& g) {
    std::vector<int> out;
    for (int t = 0; t < g.n_time(); ++t) {
        int j = dyadic_scale(g.time(t));
        if (std::find(out.begin(), out.end(), j) == out.end()) out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Theo5W theo5_W(const SpaceTimeField& u, const SpaceTimeField& v_band, int band_j,
               double alpha, const QuadratureRule& rule) {
    check_same_grid(u, v_band, "theo5_W");
    const Grid& g = *u.grid();
    auto band = band_slices(g, band_j);
    // v must vanish off the band
    double off = 0, mx = v_band.max_abs();
    for (int t = 0; t < g.n_time(); ++t) {
        if (std::find(band.begin(), band.end(), t) != band.end()) continue;
        const double* sl = v_band.slice(0, t);
        for (std::int64_t i = 0; i < g.n_points(); ++i)
            off = std::max(off, std::abs(sl[i]));
    }
    if (mx > 0 && off > 1e-12 * mx)
        throw std::invalid_argument("theo5_W: v not supported on the dyadic band");

    auto ghat = product_spectra(u, v_band);
    const int nt = g.n_time();
    const std::int64_t np = g.n_points();

    Theo5W out{SpaceTimeField(u.grid(), 1), SpatialField(u.grid(), 1),
               16.0 * std::pow(4.0, -band_j), band_j};

    std::vector<std::vector<cplx>> oh;
    etd_all_times(g, ghat, true, rule.scheme, oh);
    for (int t = 0; t < nt; ++t) {
        oh[t][0] = cplx(0, 0);
        for (std::int64_t s = 1; s < np; ++s) {
            const double n = std::sqrt(norm2(freq_vector(g, s)));
            oh[t][s] *= std::pow(n, 1.0 + alpha);
        }
        fft::inverse(g, oh[t], out.W.slice(0, t));
    }

    // W* at t* = 16 4^{-j}: panels cover the band's support entirely
    int panel_end = band.empty() ? nt - 1 : std::min(band.back() + 1, nt - 1);
    std::vector<cplx> sh;
    etd_single_time(g, ghat, out.t_star, panel_end, true, rule.scheme, sh);
    sh[0] = cplx(0, 0);
    for (std::int64_t s = 1; s < np; ++s) {
        const double n = std::sqrt(norm2(freq_vector(g, s)));
        sh[s] *= std::pow(n, alpha);
    }
    fft::inverse(g, sh, out.Wstar.data(0));
    return out;
}

Theo5U theo5_U(const SpaceTimeField& u, const SpaceTimeField& v, double q,
               const NormSampling& sampling, const QuadratureRule& rule) {
    check_same_grid(u, v, "theo5_U");
    if (!(q > 5)) throw std::invalid_argument("theo5_U: q must exceed 5");
    const Grid& g = *u.grid();
    const int nt = g.n_time();
    const std::int64_t np = g.n_points();

    auto apply_sqrt_lap = [&](std::vector<std::vector<cplx>>& oh,
                              SpaceTimeField& dst) {
        for (int t = 0; t < nt; ++t) {
            oh[t][0] = cplx(0, 0);
            for (std::int64_t s = 1; s < np; ++s)
                oh[t][s] *= std::sqrt(norm2(freq_vector(g, s)));
            fft::inverse(g, oh[t], dst.slice(0, t));
        }
    };

    // direct route from the full v
    Theo5U out{SpaceTimeField(u.grid(), 1)};
    {
        auto ghat = product_spectra(u, v);
        std::vector<std::vector<cplx>> oh;
        etd_all_times(g, ghat, true, rule.scheme, oh);
        apply_sqrt_lap(oh, out.U);
    }

    // band decomposition route
    SpaceTimeField sumU(u.grid(), 1);
    for (int j : bands_present(g)) {
        auto band = band_slices(g, j);
        SpaceTimeField vj(u.grid(), 1);
        for (int t : band)
            std::copy(v.slice(0, t), v.slice(0, t) + np, vj.slice(0, t));
        auto ghat = product_spectra(u, vj);
        std::vector<std::vector<cplx>> oh;
        etd_all_times(g, ghat, true, rule.scheme, oh);
        SpaceTimeField Uj(u.grid(), 1);
        apply_sqrt_lap(oh, Uj);
        sumU += Uj;
    }
    sumU -= out.U;
    out.decomposition_defect = sumU.l2l2();

    out.value = out.U.l2l2();
    const double vn = v.l2l2();
    NormReport nq = norm_YKTq(u, q, sampling);
    out.denom = vn * nq.value;
    if (out.denom <= 0) {
        out.degenerate = true;
    } else {
        out.bound_ratio = out.value / out.denom;
    }
    return out;
}

}  // namespace nscrit
