#include "nscrit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nscrit {

namespace {

void finish_fit(TrendReport& r) {
    r.fit = fit_line(r.abscissa, r.measured);
}

}  // namespace

TrendReport cx_y2_unbounded(const std::vector<double>& n_list, double box,
                            int n_space) {
    TrendReport r;
    r.case_id = "y2-unbounded";
    r.model = "c * ln(n) + b";
    GridPtr grid = make_grid(2, box, n_space, 0.5, 1.0, 2, TimeSpacing::Uniform);
    const double c0 = box / 2.0;
    for (double n : n_list) {
        if (n < 1) throw std::invalid_argument("cx_y2_unbounded: n >= 1 required");
        const double sigma = 1.0 / n;
        SpatialField phi(grid, 1);
        for (std::int64_t s = 0; s < grid->n_points(); ++s) {
            const double d = grid->periodic_distance_point(s, {c0, c0, 0.0});
            phi.at(0, s) = std::exp(-d * d / (2.0 * sigma * sigma)) /
                           (2.0 * std::numbers::pi * sigma * sigma);
        }
        SpatialField g = frac_laplacian(phi, -1.0);
        // squared L2 mass on the centered square (-1,1)^2
        double mass = 0;
        for (std::int64_t s = 0; s < grid->n_points(); ++s) {
            auto idx = grid->unflatten(s);
            bool inside = true;
            for (int d = 0; d < 2; ++d) {
                const double xd = idx[d] * grid->dx();
                double diff = std::abs(xd - c0);
                diff = std::min(diff, box - diff);
                if (diff > 1.0) inside = false;
            }
            if (inside) mass += g.at(0, s) * g.at(0, s);
        }
        r.sweep.push_back(n);
        r.measured.push_back(mass * grid->cell_volume());
        r.abscissa.push_back(std::log(n));
    }
    finish_fit(r);
    return r;
}

TrendReport cx_hilbert_L1(const std::vector<double>& R_list) {
    TrendReport r;
    r.case_id = "hilbert-l1";
    r.model = "c * ln(R) + b";
    for (double R : R_list) {
        if (R <= 1) throw std::invalid_argument("cx_hilbert_L1: R > 1 required");
        const double L = 4.0 * R;
        const int n = static_cast<int>(64.0 * L);
        GridPtr grid = make_grid(1, L, n, 0.5, 1.0, 2, TimeSpacing::Uniform);
        const double c0 = L / 2.0;
        SpatialField phi(grid, 1);
        double l1 = 0;
        for (std::int64_t s = 0; s < n; ++s) {
            const double d = s * grid->dx() - c0;
            phi.at(0, s) = std::exp(-d * d / 2.0);
            l1 += std::abs(phi.at(0, s));
        }
        SpatialField h = hilbert_1d(phi);
        double I = 0;
        for (std::int64_t s = 0; s < n; ++s)
            if (std::abs(s * grid->dx() - c0) <= R) I += std::abs(h.at(0, s));
        r.sweep.push_back(R);
        r.measured.push_back(I * grid->dx());
        r.abscissa.push_back(std::log(R));
        r.extras["phi_l1_R" + std::to_string(static_cast<int>(R))] =
            l1 * grid->dx();
    }
    finish_fit(r);
    return r;
}

TrendReport cx_kt_blowup(const std::vector<double>& delta_list) {
    TrendReport r;
    r.case_id = "kt-blowup";
    r.model = "c * (ln(1/(2 delta)))^{1/4} + b";
    // v = ln(2 - 2s) turns the integrand into |v|^{-3/4} exactly, leaving
    // only endpoint singularities at v = 0, which tanh-sinh absorbs
    auto f = [](double v) { return std::pow(v, -0.75); };
    double max_rich = 0;
    for (double delta : delta_list) {
        if (!(delta > 0 && delta < 0.25))
            throw std::invalid_argument("cx_kt_blowup: delta in (0, 1/4) required");
        auto eval = [&](int level) {
            return tanh_sinh(f, 0.0, std::log(2.0), level) +
                   tanh_sinh(f, 0.0, std::log(1.0 / (2.0 * delta)), level);
        };
        const double I = eval(9);
        max_rich = std::max(max_rich, std::abs(I - eval(8)) / I);
        r.sweep.push_back(delta);
        r.measured.push_back(I);
        r.abscissa.push_back(std::pow(std::log(1.0 / (2.0 * delta)), 0.25));
    }
    r.extras["richardson"] = max_rich;
    finish_fit(r);
    return r;
}

TrendReport cx_multiplier_gap(const std::vector<double>& eps_list) {
    TrendReport r;
    r.case_id = "multiplier-gap";
    r.model = "c * ln(1/eps) + b";

    // Gaussian-based bump theta on (0,1), ||theta||_2 = 1
    const double sg = 0.12;
    auto theta_raw = [&](double x) {
        if (x <= 0 || x >= 1) return 0.0;
        return std::exp(-(x - 0.5) * (x - 0.5) / (2.0 * sg * sg));
    };
    const double theta_l2 = std::sqrt(composite_gauss(
        [&](double x) { return theta_raw(x) * theta_raw(x); }, 0.0, 1.0, 16, 8));
    auto theta2 = [&](double x) {
        const double t = theta_raw(x) / theta_l2;
        return t * t;
    };

    auto J = [&](double eps, int refine) {
        // inner(t) = int_0^{min(t,eps)} (t-s)^{-1/2} eps^{-1} theta2(s/eps) ds,
        // de-singularized by s = t - tau^2
        auto inner = [&](double t) {
            const double lo = std::sqrt(std::max(t - eps, 0.0));
            const double hi = std::sqrt(t);
            return 2.0 / eps *
                   composite_gauss(
                       [&](double tau) { return theta2((t - tau * tau) / eps); },
                       lo, hi, 8 * refine, 8);
        };
        auto in2 = [&](double t) {
            const double v = inner(t);
            return v * v;
        };
        // outer integral split at eps; log substitution above eps
        double a = composite_gauss(in2, 0.0, eps, 8 * refine, 8);
        double b = composite_gauss(
            [&](double y) {
                const double t = std::exp(y);
                return in2(t) * t;
            },
            std::log(eps), 0.0, 16 * refine, 8);
        return a + b;
    };

    double max_rich = 0;
    for (double eps : eps_list) {
        if (!(eps > 0 && eps < 0.5))
            throw std::invalid_argument("cx_multiplier_gap: eps in (0, 1/2)");
        const double I = J(eps, 2);
        max_rich = std::max(max_rich, std::abs(I - J(eps, 1)) / I);
        r.sweep.push_back(eps);
        r.measured.push_back(I);
        r.abscissa.push_back(std::log(1.0 / eps));
    }
    r.extras["richardson"] = max_rich;
    r.extras["theta_l2"] = 1.0;  // enforced by construction
    finish_fit(r);
    return r;
}

TrendReport cx_ykt_obstruction(const std::vector<double>& delta_list,
                               int n_space, int n_time) {
    TrendReport r;
    r.case_id = "ykt-obstruction";
    r.model = "c * ln(1/delta) + b";
    for (double delta : delta_list)
        if (!(delta > 0 && delta < 1))
            throw std::invalid_argument("cx_ykt_obstruction: delta in (0,1)");

    const double delta_min =
        *std::min_element(delta_list.begin(), delta_list.end());
    const double L = 4.0 * std::numbers::pi;
    GridPtr grid = make_grid(3, L, n_space, 0.031, 1.0 - delta_min, n_time,
                             TimeSpacing::Uniform);
    const Grid& g = *grid;

    // time-shrinking profiles: u_hat(t, xi) = phi_hat(a xi),
    // v_hat(t, xi) = w(t) psi_hat(a xi'), a = sqrt(1-t), both spectra >= 0
    auto phi_hat = [](double rho2) {
        const double v = 1.0 - rho2;
        return v > 0 ? v * v : 0.0;
    };
    auto weight = [](double t) {
        return 1.0 / (std::sqrt(1.0 - t) *
                      std::pow(std::abs(std::log(2.0 - 2.0 * t)), 0.75));
    };
    SpaceTimeField u(grid, 1), v(grid, 1);
    std::vector<cplx> cu(g.n_points()), cv(g.n_points());
    for (int t = 0; t < g.n_time(); ++t) {
        const double a2 = 1.0 - g.time(t);
        const double w = weight(g.time(t));
        for (std::int64_t s = 0; s < g.n_points(); ++s) {
            auto xi = freq_vector(g, s);
            const double rho2 = a2 * (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
            const double perp2 = a2 * (xi[1] * xi[1] + xi[2] * xi[2]);
            cu[s] = cplx(phi_hat(rho2), 0);
            cv[s] = cplx((perp2 > 1.0 && perp2 < 4.0) ? w : 0.0, 0);
        }
        fft::inverse(g, cu, u.slice(0, t));
        fft::inverse(g, cv, v.slice(0, t));
    }

    SpaceTimeField B = bilinear_sigma(symbols::abs_xi(), u, v);

    // Fourier positivity of the computed output at the final slice
    auto bh = fft::forward(g, B.slice(0, g.n_time() - 1));
    double spec_min = 0, spec_max = 0, imag_max = 0;
    for (const auto& c : bh) {
        spec_min = std::min(spec_min, c.real());
        spec_max = std::max(spec_max, c.real());
        imag_max = std::max(imag_max, std::abs(c.imag()));
    }
    r.extras["spectral_min"] = spec_min;
    r.extras["spectral_max"] = spec_max;
    r.extras["spectral_imag_max"] = imag_max;

    std::vector<double> sorted(delta_list);
    std::sort(sorted.rbegin(), sorted.rend());
    for (double delta : sorted) {
        const double target = 1.0 - delta;
        int best = 0;
        for (int t = 1; t < g.n_time(); ++t)
            if (std::abs(g.time(t) - target) < std::abs(g.time(best) - target))
                best = t;
        double sup = 0;
        const double* sl = B.slice(0, best);
        for (std::int64_t i = 0; i < g.n_points(); ++i)
            sup = std::max(sup, std::abs(sl[i]));
        r.sweep.push_back(delta);
        r.measured.push_back(std::sqrt(g.time(best)) * sup);
        r.abscissa.push_back(std::log(1.0 / delta));
    }
    finish_fit(r);
    return r;
}

std::string trend_to_csv(const TrendReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "sweep,measured\n";
    for (std::size_t i = 0; i < r.sweep.size(); ++i)
        os << r.sweep[i] << "," << r.measured[i] << "\n";
    return os.str();
}

}  // namespace nscrit
