#include "nscrit/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace nscrit {

namespace {

SpaceTimeField as_scalar(const SpaceTimeField& u) {
    if (u.components() == 1) return u;
    return magnitude(u);
}

std::vector<double> dyadic_ladder(double lo, double hi, double factor) {
    std::vector<double> out;
    for (double v = lo; v <= hi * (1 + 1e-12); v *= factor) out.push_back(v);
    return out;
}

// spectrum of the ball indicator 1_{|y|_per <= r}
std::vector<cplx> ball_spectrum(const Grid& g, double r) {
    std::vector<double> ind(g.n_points(), 0.0);
    const std::array<double, 3> origin{0, 0, 0};
    for (std::int64_t s = 0; s < g.n_points(); ++s)
        if (g.periodic_distance_point(s, origin) <= r) ind[s] = 1.0;
    return fft::forward(g, ind.data());
}

// conv_sum(x) = sum_y ball(x-y) f_hat-represented field: N^d * ifft(c * bhat)
std::vector<double> conv_from_spectra(const Grid& g, const std::vector<cplx>& c,
                                      const std::vector<cplx>& bhat) {
    std::vector<cplx> prod(g.n_points());
    for (std::int64_t s = 0; s < g.n_points(); ++s) prod[s] = c[s] * bhat[s];
    std::vector<double> out(g.n_points());
    fft::inverse(g, prod, out.data());
    const double scale = static_cast<double>(g.n_points());
    for (auto& v : out) v *= scale;
    return out;
}

double masked_p_mass(const SpaceTimeField& w, const Mask& m, double p) {
    const Grid& g = *w.grid();
    double acc = 0;
    for (int t = 0; t < g.n_time(); ++t) {
        const double* sl = w.slice(0, t);
        double s = 0;
        for (std::int64_t i = 0; i < g.n_points(); ++i)
            if (m.get(t, i)) s += std::pow(std::abs(sl[i]), p);
        acc += s * g.sample_weight(t);
    }
    return acc;
}

std::array<double, 3> lattice_point(const Grid& g, std::int64_t s) {
    auto c = g.unflatten(s);
    return {g.coord(c[0]), g.coord(c[1]), g.coord(c[2])};
}

}  // namespace

NormSampling default_sampling(const Grid& g) {
    NormSampling s;
    s.T_values = dyadic_ladder(g.t_min(), 4.0 * g.t_max(), 2.0);
    s.radii = dyadic_ladder(g.dx(), g.box_length() / 2.0, 2.0);
    s.center_stride = 1;
    s.outer_stride = std::max(1, g.n_space() / 4);
    s.outer_T = dyadic_ladder(g.t_min() * 2.0, 2.0 * g.t_max(), 4.0);
    return s;
}

double morrey_exponent(int dim, double p, double lambda) {
    return (dim + 2) * (1.0 / p - 1.0 / lambda);
}

NormReport norm_Y2(const SpaceTimeField& u, const NormSampling& s0) {
    const Grid& g = *u.grid();
    NormSampling s = s0;
    if (s.T_values.empty()) s = default_sampling(g);
    SpaceTimeField w = as_scalar(u);

    // spectra of |w|^2 slices
    std::vector<std::vector<cplx>> shat(g.n_time());
    for (int k = 0; k < g.n_time(); ++k) {
        std::vector<double> sq(g.n_points());
        const double* sl = w.slice(0, k);
        for (std::int64_t i = 0; i < g.n_points(); ++i) sq[i] = sl[i] * sl[i];
        shat[k] = fft::forward(g, sq.data());
    }

    std::vector<double> Ts = s.T_values;
    std::sort(Ts.begin(), Ts.end());
    std::vector<cplx> cum(g.n_points(), cplx(0, 0));
    int next_slice = 0;

    double best = 0;
    double best_T = Ts.empty() ? g.t_max() : Ts.front();
    std::int64_t best_x = 0;
    const double vol = g.cell_volume();
    for (double T : Ts) {
        while (next_slice < g.n_time() && g.time(next_slice) < T) {
            const double wk = g.time_weight(next_slice);
            for (std::int64_t i = 0; i < g.n_points(); ++i)
                cum[i] += wk * shat[next_slice][i];
            ++next_slice;
        }
        if (next_slice == 0) continue;
        auto bhat = ball_spectrum(g, std::sqrt(T));
        auto A = conv_from_spectra(g, cum, bhat);
        const double pref = std::pow(T, -0.75);
        for (std::int64_t x = 0; x < g.n_points(); ++x) {
            if (s.center_stride > 1) {
                auto c = g.unflatten(x);
                bool on_lattice = true;
                for (int d = 0; d < g.dim(); ++d)
                    if (c[d] % s.center_stride != 0) on_lattice = false;
                if (!on_lattice) continue;
            }
            double cand = pref * std::sqrt(std::max(0.0, A[x] * vol));
            if (cand > best) {
                best = cand;
                best_T = T;
                best_x = x;
            }
        }
    }

    NormReport rep;
    rep.space = "y2";
    rep.n_T_samples = static_cast<int>(Ts.size());
    rep.n_centers = static_cast<int>(g.n_points());
    if (best > 0) {
        CylinderSpec spec = CylinderSpec::q(best_T, lattice_point(g, best_x));
        Mask m = cylinder_mask(u.grid(), spec);
        rep.value = std::pow(best_T, -0.75) * w.l2l2_masked(m);
        rep.witness = spec;
    }
    return rep;
}

namespace ref {

NormReport norm_Y2_direct(const SpaceTimeField& u, const NormSampling& s0) {
    const Grid& g = *u.grid();
    NormSampling s = s0;
    if (s.T_values.empty()) s = default_sampling(g);
    SpaceTimeField w = as_scalar(u);
    NormReport rep;
    rep.space = "y2";
    rep.n_T_samples = static_cast<int>(s.T_values.size());
    for (double T : s.T_values) {
        for (std::int64_t x = 0; x < g.n_points(); ++x) {
            auto c = g.unflatten(x);
            bool on_lattice = true;
            for (int d = 0; d < g.dim(); ++d)
                if (c[d] % s.center_stride != 0) on_lattice = false;
            if (!on_lattice) continue;
            ++rep.n_centers;
            CylinderSpec spec = CylinderSpec::q(T, lattice_point(g, x));
            Mask m = cylinder_mask(u.grid(), spec);
            double v = std::pow(T, -0.75) * w.l2l2_masked(m);
            if (v > rep.value) {
                rep.value = v;
                rep.witness = spec;
            }
        }
    }
    return rep;
}

}  // namespace ref

NormReport norm_Z0(const SpaceTimeField& u) {
    const Grid& g = *u.grid();
    SpaceTimeField w = as_scalar(u);
    NormReport rep;
    rep.space = "z0";
    for (int k = 0; k < g.n_time(); ++k) {
        const double* sl = w.slice(0, k);
        double m = 0;
        for (std::int64_t i = 0; i < g.n_points(); ++i)
            m = std::max(m, std::abs(sl[i]));
        double v = std::sqrt(g.time(k)) * m;
        if (v > rep.value) {
            rep.value = v;
            rep.witness_time_index = k;
        }
    }
    return rep;
}

NormReport norm_YKT(const SpaceTimeField& u, const NormSampling& s) {
    NormReport a = norm_Y2(u, s);
    NormReport b = norm_Z0(u);
    NormReport rep;
    rep.space = "ykt";
    rep.value = a.value + b.value;
    rep.witness = a.witness;
    rep.witness_time_index = b.witness_time_index;
    rep.n_T_samples = a.n_T_samples;
    rep.n_centers = a.n_centers;
    return rep;
}

NormReport norm_morrey(const SpaceTimeField& u, double p, double lambda,
                       const NormSampling& s0) {
    const Grid& g = *u.grid();
    if (!(p >= 1) || !(lambda > 0))
        throw std::invalid_argument("norm_morrey: invalid exponents");
    NormSampling s = s0;
    if (s.radii.empty()) s = default_sampling(g);
    SpaceTimeField w = as_scalar(u);
    const double e = morrey_exponent(g.dim(), p, lambda);

    // spectra of |w|^p slices and time prefix sums
    std::vector<std::vector<cplx>> prefix(g.n_time() + 1,
                                          std::vector<cplx>(g.n_points(), cplx(0, 0)));
    for (int k = 0; k < g.n_time(); ++k) {
        std::vector<double> pw(g.n_points());
        const double* sl = w.slice(0, k);
        for (std::int64_t i = 0; i < g.n_points(); ++i)
            pw[i] = std::pow(std::abs(sl[i]), p);
        auto h = fft::forward(g, pw.data());
        const double wk = g.time_weight(k);
        for (std::int64_t i = 0; i < g.n_points(); ++i)
            prefix[k + 1][i] = prefix[k][i] + wk * h[i];
    }

    double best = 0;
    double best_r = 0, best_tc = 0;
    std::int64_t best_x = 0;
    const double vol = g.cell_volume();
    for (double r : s.radii) {
        auto bhat = ball_spectrum(g, r);
        const double r2 = r * r;
        // distinct (lo, hi) windows over candidate centers t_c = grid times
        std::map<std::pair<int, int>, double> seen;  // window -> a t_c
        for (int kc = 0; kc < g.n_time(); ++kc) {
            const double tc = g.time(kc);
            int lo = 0;
            while (lo < g.n_time() && !(g.time(lo) > tc - r2)) ++lo;
            int hi = lo;
            while (hi < g.n_time() && g.time(hi) < tc + r2) ++hi;
            if (hi <= lo) continue;
            seen.emplace(std::make_pair(lo, hi), tc);
        }
        std::map<int, std::vector<double>> conv_cache;
        auto conv_of = [&](int k) -> const std::vector<double>& {
            auto it = conv_cache.find(k);
            if (it == conv_cache.end())
                it = conv_cache.emplace(k, conv_from_spectra(g, prefix[k], bhat)).first;
            return it->second;
        };
        for (auto& [win, tc] : seen) {
            const auto& Dhi = conv_of(win.second);
            const auto& Dlo = conv_of(win.first);
            const double pref = std::pow(r, -e);
            for (std::int64_t x = 0; x < g.n_points(); ++x) {
                if (s.center_stride > 1) {
                    auto c = g.unflatten(x);
                    bool on_lattice = true;
                    for (int d = 0; d < g.dim(); ++d)
                        if (c[d] % s.center_stride != 0) on_lattice = false;
                    if (!on_lattice) continue;
                }
                double mass = (Dhi[x] - Dlo[x]) * vol;
                double cand = pref * std::pow(std::max(0.0, mass), 1.0 / p);
                if (cand > best) {
                    best = cand;
                    best_r = r;
                    best_tc = tc;
                    best_x = x;
                }
            }
        }
    }

    NormReport rep;
    rep.space = "morrey";
    rep.n_radii = static_cast<int>(s.radii.size());
    rep.n_centers = static_cast<int>(g.n_points());
    rep.n_T_samples = g.n_time();
    if (best > 0) {
        CylinderSpec spec = CylinderSpec::centered(best_tc, lattice_point(g, best_x), best_r);
        Mask m = cylinder_mask(u.grid(), spec);
        rep.value = std::pow(best_r, -e) * std::pow(masked_p_mass(w, m, p), 1.0 / p);
        rep.witness = spec;
    }
    return rep;
}

namespace ref {

NormReport norm_morrey_direct(const SpaceTimeField& u, double p, double lambda,
                              const NormSampling& s0) {
    const Grid& g = *u.grid();
    NormSampling s = s0;
    if (s.radii.empty()) s = default_sampling(g);
    SpaceTimeField w = as_scalar(u);
    const double e = morrey_exponent(g.dim(), p, lambda);
    NormReport rep;
    rep.space = "morrey";
    for (double r : s.radii) {
        for (int kc = 0; kc < g.n_time(); ++kc) {
            for (std::int64_t x = 0; x < g.n_points(); ++x) {
                auto c = g.unflatten(x);
                bool on_lattice = true;
                for (int d = 0; d < g.dim(); ++d)
                    if (c[d] % s.center_stride != 0) on_lattice = false;
                if (!on_lattice) continue;
                CylinderSpec spec =
                    CylinderSpec::centered(g.time(kc), lattice_point(g, x), r);
                Mask m = cylinder_mask(u.grid(), spec);
                double v = std::pow(r, -e) * std::pow(masked_p_mass(w, m, p), 1.0 / p);
                if (v > rep.value) {
                    rep.value = v;
                    rep.witness = spec;
                }
            }
        }
    }
    return rep;
}

}  // namespace ref

NormReport yktq_morrey_branch(const SpaceTimeField& u, double q,
                              const NormSampling& s0) {
    const Grid& g = *u.grid();
    if (!(q > 5)) throw std::invalid_argument("yktq: q must exceed 5");
    NormSampling s = s0;
    if (s.T_values.empty()) s = default_sampling(g);
    if (s.outer_T.empty()) s.outer_T = dyadic_ladder(g.t_min() * 2.0, 2.0 * g.t_max(), 4.0);
    SpaceTimeField w = as_scalar(u);
    const double texp = 0.5 - 5.0 / (2.0 * q);
    const double p = 2.0 * q / 5.0;

    if (s.radii.empty()) s.radii = default_sampling(g).radii;
    const double e = morrey_exponent(g.dim(), p, q);
    const double vol = g.cell_volume();

    // The sup runs over centered cylinders contained in some outer cylinder
    // (T/2, T) x B(x0, sqrt(T)) with x0 on the stride lattice.  On a contained
    // cylinder the restriction of w to the outer cylinder agrees with w, so
    // every candidate mass comes from one set of full-field convolutions.
    // distance to the outer-center lattice: the lattice is a product of
    // one-dimensional stride lattices, so the components decouple
    std::vector<double> axis_dist(g.n_space());
    for (int i = 0; i < g.n_space(); ++i) {
        double best = g.box_length();
        for (int j = 0; j < g.n_space(); j += s.outer_stride) {
            double diff = std::abs(g.coord(i) - g.coord(j));
            best = std::min(best, std::min(diff, g.box_length() - diff));
        }
        axis_dist[i] = best;
    }
    std::vector<double> lat_dist(g.n_points());
    for (std::int64_t x = 0; x < g.n_points(); ++x) {
        auto c = g.unflatten(x);
        double d2 = 0;
        for (int d = 0; d < g.dim(); ++d) d2 += axis_dist[c[d]] * axis_dist[c[d]];
        lat_dist[x] = std::sqrt(d2);
    }

    // spectra of |w|^p slices and time prefix sums, as in norm_morrey
    std::vector<std::vector<cplx>> prefix(g.n_time() + 1,
                                          std::vector<cplx>(g.n_points(), cplx(0, 0)));
    for (int k = 0; k < g.n_time(); ++k) {
        std::vector<double> pw(g.n_points());
        const double* sl = w.slice(0, k);
        for (std::int64_t i = 0; i < g.n_points(); ++i)
            pw[i] = std::pow(std::abs(sl[i]), p);
        auto h = fft::forward(g, pw.data());
        const double wk = g.time_weight(k);
        for (std::int64_t i = 0; i < g.n_points(); ++i)
            prefix[k + 1][i] = prefix[k][i] + wk * h[i];
    }

    NormReport rep;
    rep.space = "yktq.morrey";
    rep.n_T_samples = static_cast<int>(s.outer_T.size());
    std::int64_t lattice_count = 1;
    for (int d = 0; d < g.dim(); ++d)
        lattice_count *= (g.n_space() + s.outer_stride - 1) / s.outer_stride;
    rep.n_centers = static_cast<int>(lattice_count * s.outer_T.size());

    double best = 0, best_T = 0, best_r = 0;
    int best_kc = -1;
    std::int64_t best_x = 0;
    for (double r : s.radii) {
        const double r2 = r * r;
        bool admissible = false;
        for (double T : s.outer_T)
            if (4.0 * r2 <= T * (1 + 1e-12)) admissible = true;
        if (!admissible) continue;
        auto bhat = ball_spectrum(g, r);
        std::map<int, std::vector<double>> conv_cache;
        auto conv_of = [&](int k) -> const std::vector<double>& {
            auto it = conv_cache.find(k);
            if (it == conv_cache.end())
                it = conv_cache.emplace(k, conv_from_spectra(g, prefix[k], bhat)).first;
            return it->second;
        };
        for (int kc = 0; kc < g.n_time(); ++kc) {
            const double tc = g.time(kc);
            int lo = 0;
            while (lo < g.n_time() && !(g.time(lo) > tc - r2)) ++lo;
            int hi = lo;
            while (hi < g.n_time() && g.time(hi) < tc + r2) ++hi;
            if (hi <= lo) continue;
            const auto& Dhi = conv_of(hi);
            const auto& Dlo = conv_of(lo);
            const double pref = std::pow(r, -e);
            for (std::int64_t x = 0; x < g.n_points(); ++x) {
                const double mass = (Dhi[x] - Dlo[x]) * vol;
                if (mass <= 0) continue;
                // best admissible outer scale: containment in time and space
                double wgt = 0, tsel = 0;
                for (double T : s.outer_T) {
                    if (tc - r2 < T / 2 - 1e-12 * T) continue;
                    if (tc + r2 > T * (1 + 1e-12)) continue;
                    if (lat_dist[x] + r > std::sqrt(T) * (1 + 1e-12)) continue;
                    const double c = std::pow(T, texp);
                    if (c > wgt) { wgt = c; tsel = T; }
                }
                if (wgt <= 0) continue;
                const double v = wgt * pref * std::pow(mass, 1.0 / p);
                if (v > best) {
                    best = v;
                    best_T = tsel;
                    best_r = r;
                    best_kc = kc;
                    best_x = x;
                }
            }
        }
    }

    if (best > 0) {
        CylinderSpec inner = CylinderSpec::centered(g.time(best_kc),
                                                    lattice_point(g, best_x), best_r);
        Mask m = cylinder_mask(u.grid(), inner);
        rep.value = std::pow(best_T, texp) * std::pow(best_r, -e) *
                    std::pow(masked_p_mass(w, m, p), 1.0 / p);
        rep.witness = inner;
    }
    return rep;
}

NormReport norm_YKTq(const SpaceTimeField& u, double q, const NormSampling& s) {
    NormReport a = norm_Y2(u, s);
    NormReport b = yktq_morrey_branch(u, q, s);
    NormReport rep;
    rep.space = "yktq";
    if (a.value >= b.value) {
        rep.value = a.value;
        rep.witness = a.witness;
        rep.branch = "carleson";
    } else {
        rep.value = b.value;
        rep.witness = b.witness;
        rep.branch = "morrey";
    }
    rep.n_T_samples = a.n_T_samples;
    rep.n_centers = a.n_centers + b.n_centers;
    return rep;
}

NormReport norm_L2A(const SpaceTimeField& u) {
    const Grid& g = *u.grid();
    SpaceTimeField w = as_scalar(u);
    double acc = 0;
    double best_slice = 0;
    int best_k = -1;
    for (int k = 0; k < g.n_time(); ++k) {
        auto hat = fft::forward(g, w.slice(0, k));
        double mass = 0;
        for (auto& c : hat) mass += std::abs(c);
        acc += g.time_weight(k) * mass * mass;
        if (mass > best_slice) {
            best_slice = mass;
            best_k = k;
        }
    }
    NormReport rep;
    rep.space = "l2a";
    rep.value = std::sqrt(acc);
    rep.witness_time_index = best_k;
    return rep;
}

NormReport norm_L2wLinf(const SpaceTimeField& u) {
    const Grid& g = *u.grid();
    SpaceTimeField w = as_scalar(u);
    std::vector<double> sup(g.n_time());
    for (int k = 0; k < g.n_time(); ++k) {
        const double* sl = w.slice(0, k);
        double m = 0;
        for (std::int64_t i = 0; i < g.n_points(); ++i)
            m = std::max(m, std::abs(sl[i]));
        sup[k] = m;
    }
    // sup over attained levels lambda = sup[k] of lambda * meas{t: sup >= lambda}^{1/2}
    NormReport rep;
    rep.space = "l2winf";
    for (int k = 0; k < g.n_time(); ++k) {
        const double lam = sup[k];
        if (lam <= 0) continue;
        double meas = 0;
        for (int j = 0; j < g.n_time(); ++j)
            if (sup[j] >= lam) meas += g.time_weight(j);
        double v = lam * std::sqrt(meas);
        if (v > rep.value) {
            rep.value = v;
            rep.witness_time_index = k;
        }
    }
    return rep;
}

NormReport norm_bmo_neg1(const SpatialField& u0, const GridPtr& grid,
                         const NormSampling& s) {
    SpaceTimeField ext = heat_extension(u0, grid);
    NormReport rep = norm_Y2(ext, s);
    rep.space = "bmo-1";
    return rep;
}

NormReport space_norm(const SpaceTimeField& u, NormSpace sp,
                      const NormParams& par, const NormSampling& s) {
    switch (sp) {
        case NormSpace::Y2: return norm_Y2(u, s);
        case NormSpace::Z0: return norm_Z0(u);
        case NormSpace::YKT: return norm_YKT(u, s);
        case NormSpace::YKTq: return norm_YKTq(u, par.q, s);
        case NormSpace::Morrey: return norm_morrey(u, par.p, par.lambda, s);
        case NormSpace::L2A: return norm_L2A(u);
        case NormSpace::L2wLinf: return norm_L2wLinf(u);
    }
    throw std::logic_error("space_norm: bad selector");
}

std::optional<NormSpace> parse_space(const std::string& name) {
    if (name == "y2") return NormSpace::Y2;
    if (name == "z0") return NormSpace::Z0;
    if (name == "ykt") return NormSpace::YKT;
    if (name == "yktq") return NormSpace::YKTq;
    if (name == "morrey") return NormSpace::Morrey;
    if (name == "l2a") return NormSpace::L2A;
    if (name == "l2winf") return NormSpace::L2wLinf;
    return std::nullopt;
}

std::string space_name(NormSpace sp) {
    switch (sp) {
        case NormSpace::Y2: return "y2";
        case NormSpace::Z0: return "z0";
        case NormSpace::YKT: return "ykt";
        case NormSpace::YKTq: return "yktq";
        case NormSpace::Morrey: return "morrey";
        case NormSpace::L2A: return "l2a";
        case NormSpace::L2wLinf: return "l2winf";
    }
    return "?";
}

}  // namespace nscrit
