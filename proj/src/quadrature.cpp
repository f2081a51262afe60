#include "nscrit/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace nscrit {

void exp_panel_weights(double lambda, double a, double b, double t,
                       double& w0, double& w1) {
    const double h = b - a;
    const double tau = t - b;  // >= 0
    const double z = lambda * h;
    // A = int_0^h e^{-lambda(h-s)} ds, B = int_0^h e^{-lambda(h-s)} s ds
    double A, Bh;  // Bh = B/h
    if (z < 1e-5) {
        // series in z
        A = h * (1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0);
        Bh = h * (0.5 - z / 6.0 + z * z / 24.0 - z * z * z / 120.0);
    } else {
        const double e = std::exp(-z);
        A = (1.0 - e) / lambda;
        Bh = (h - A) / (lambda * h);
    }
    const double damp = std::exp(-lambda * tau);
    w1 = damp * Bh;
    w0 = damp * (A - Bh);
}

double exp_panel_mass(double lambda, double a, double b, double t) {
    const double h = b - a;
    const double z = lambda * h;
    double A;
    if (z < 1e-5) {
        A = h * (1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0);
    } else {
        A = (1.0 - std::exp(-z)) / lambda;
    }
    return std::exp(-lambda * (t - b)) * A;
}

void invsqrt_panel_weights(double a, double b, double t, double& w0, double& w1) {
    // int_a^b (t-s)^{-1/2} ds and int_a^b (t-s)^{-1/2} (s-a) ds, then
    // convert to hat-function weights
    const double h = b - a;
    const double ra = std::sqrt(t - a), rb = std::sqrt(t - b);
    const double m0 = 2.0 * (ra - rb);
    // int (t-s)^{-1/2} s ds = 2 sqrt(t-s)(s) ... do by parts with u = s:
    // int s (t-s)^{-1/2} ds = -2 s sqrt(t-s) + int 2 sqrt(t-s) ds
    //                       = -2 s sqrt(t-s) - (4/3)(t-s)^{3/2}
    auto F = [&](double s) {
        return -2.0 * s * std::sqrt(t - s) - (4.0 / 3.0) * std::pow(t - s, 1.5);
    };
    const double ms = F(b) - F(a);      // int s (t-s)^{-1/2}
    const double m1 = (ms - a * m0) / h;  // int (s-a)/h (t-s)^{-1/2}
    w1 = m1;
    w0 = m0 - m1;
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 int level) {
    // map (a,b) -> (-1,1), x = c + r*tanh(pi/2 sinh(u))
    const double r = 0.5 * (b - a);
    const double h = std::pow(2.0, -level);
    double sum = 0.0;
    const int nmax = static_cast<int>(6.0 / h);
    for (int k = -nmax; k <= nmax; ++k) {
        const double u = k * h;
        const double s = M_PI_2 * std::sinh(u);
        // distance to the nearer endpoint, evaluated without cancellation:
        // 1 -+ tanh(s) = 2 / (1 + exp(+-2s))
        const double d = 2.0 * r / (1.0 + std::exp(2.0 * std::abs(s)));
        const double xx = (k <= 0) ? a + d : b - d;
        if (xx <= a || xx >= b) continue;
        const double w = M_PI_2 * std::cosh(u) / std::pow(std::cosh(s), 2);
        const double v = f(xx);
        if (std::isfinite(v)) sum += w * v;
    }
    return sum * r * h;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton iteration from Chebyshev initial guess
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            double dp = n * (t * p0 - p1) / (t * t - 1.0);
            double dt = -p0 / dp;
            t += dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
        }
        double dp = n * (t * p0 - p1) / (t * t - 1.0);
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

double composite_gauss(const std::function<double(double)>& f, double a,
                       double b, int panels, int points) {
    std::vector<double> x, w;
    gauss_legendre(points, x, w);
    double sum = 0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (int i = 0; i < points; ++i) {
            const double xx = lo + 0.5 * h * (x[i] + 1.0);
            sum += 0.5 * h * w[i] * f(xx);
        }
    }
    return sum;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 matching points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit out;
    const double denom = n * sxx - sx * sx;
    out.slope = (n * sxy - sx * sy) / denom;
    out.intercept = (sy - out.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fit = out.intercept + out.slope * x[i];
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    out.r2 = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

}  // namespace nscrit
