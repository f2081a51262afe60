#pragma once

#include <map>

#include "nscrit/ensemble.hpp"

namespace nscrit {

struct ExperimentConfig {
    std::string case_id;
    std::vector<double> sweep;  // positive, strictly monotone
    std::string output_path;
};

// One divergence-trend measurement: the measured quantity per sweep value
// and a least-squares fit of measured against a transformed abscissa
// (ln n, ln R, (ln 1/(2 delta))^{1/4}, ln 1/eps).
struct TrendReport {
    std::string case_id;
    std::vector<double> sweep;
    std::vector<double> measured;
    std::vector<double> abscissa;
    std::string model;
    LineFit fit;
    std::map<std::string, double> extras;
};

// || (-Delta_2)^{-1/2} phi_n ||^2_{L2((-1,1)^2)} for Gaussian mollifiers of
// width 1/n; grows like c ln n
TrendReport cx_y2_unbounded(const std::vector<double>& n_list,
                            double box = 4.0, int n_space = 1024);

// I(R) = int_{-R}^{R} |H(phi_hat)| for an even Gaussian phi_hat with
// nonzero integral; grows like c ln R
TrendReport cx_hilbert_L1(const std::vector<double>& R_list);

// I(delta) = int_0^{1-delta} ds / ((1-s) |ln(2-2s)|^{3/4});
// exactly 4 ((ln 2)^{1/4} + (ln 1/(2 delta))^{1/4})
TrendReport cx_kt_blowup(const std::vector<double>& delta_list);

// J(eps) = int_0^1 ( int_0^t (t-s)^{-1/2} omega_eps^2(s) ds )^2 dt,
// omega_eps = eps^{-1/2} theta(./eps); grows like c ln(1/eps)
TrendReport cx_multiplier_gap(const std::vector<double>& eps_list);

// sqrt(t) ||B_{sigma0}(u, v)(t, .)||_inf at t = 1 - delta for the
// time-shrinking spectrally-positive profiles; nondecreasing as delta drops
TrendReport cx_ykt_obstruction(const std::vector<double>& delta_list,
                               int n_space = 64, int n_time = 48);

std::string trend_to_csv(const TrendReport& r);

}  // namespace nscrit
