#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nscrit {

enum class TimeSpacing { Uniform, Geometric };

// Discretization of (0,inf) x R^d as a finite time ladder over a periodic box
// [0,L)^d with n_space points per axis.
class Grid {
public:
    Grid(int dim, double box_length, int n_space, double t_min, double t_max,
         int n_time, TimeSpacing spacing);

    int dim() const { return dim_; }
    double box_length() const { return L_; }
    int n_space() const { return n_space_; }
    int n_time() const { return n_time_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    TimeSpacing spacing() const { return spacing_; }

    // number of spatial samples per slice (n_space^dim)
    std::int64_t n_points() const { return n_points_; }
    double dx() const { return L_ / n_space_; }
    double cell_volume() const { return std::pow(dx(), dim_); }

    double time(int k) const { return times_[k]; }
    const std::vector<double>& times() const { return times_; }
    // trapezoid weight of time sample k for integrals over (0, t_max]
    double time_weight(int k) const { return time_weights_[k]; }
    // quadrature weight of one sample (time_weight * cell_volume)
    double sample_weight(int k) const { return time_weights_[k] * cell_volume(); }

    // physical coordinate of lattice index i along one axis
    double coord(int i) const { return i * dx(); }
    // signed periodic displacement in [-L/2, L/2)
    double periodic_delta(double a, double b) const;
    // periodic distance between two flat spatial indices
    double periodic_distance(std::int64_t ia, std::int64_t ib) const;
    double periodic_distance_point(std::int64_t ia, const std::array<double, 3>& x) const;

    // lattice index helpers: flat <-> (x,y,z) with x fastest
    std::array<int, 3> unflatten(std::int64_t idx) const;
    std::int64_t flatten(const std::array<int, 3>& c) const;

    // integer frequency along one axis for FFT bin i: in [-n/2, n/2)
    int freq_index(int i) const {
        return (i <= n_space_ / 2 - 1) ? i : i - n_space_;
    }
    // physical frequency xi = 2*pi/L * n
    double freq(int i) const { return 2.0 * M_PI / L_ * freq_index(i); }

    bool same_as(const Grid& o) const;

private:
    int dim_;
    double L_;
    int n_space_;
    double t_min_, t_max_;
    int n_time_;
    TimeSpacing spacing_;
    std::int64_t n_points_;
    std::vector<double> times_;
    std::vector<double> time_weights_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int dim, double box_length, int n_space, double t_min,
                  double t_max, int n_time, TimeSpacing spacing);

enum class CylinderKind { Q, R, S, Centered };

// Descriptor of a parabolic region.
//   Q_{T,x} = {(t,y): 0 < t < T,   |x-y| <= sqrt(T)}
//   R_{T,x} = {(t,y): T/2 < t < T, |x-y| <= sqrt(T)}
//   S_{T,x} = {(t,y): T/4 < t < T, |x-y| <= sqrt(10 T)}
//   Centered: {(t,y): |t - t_center| < r^2, |x-y| <= r}, t > 0
struct CylinderSpec {
    CylinderKind kind = CylinderKind::Q;
    double T = 1.0;                      // for Q/R/S
    std::array<double, 3> center{0, 0, 0};
    double radius = 0.0;                 // for Centered
    double t_center = 0.0;               // for Centered

    static CylinderSpec q(double T, std::array<double, 3> x) {
        return {CylinderKind::Q, T, x, 0.0, 0.0};
    }
    static CylinderSpec r(double T, std::array<double, 3> x) {
        return {CylinderKind::R, T, x, 0.0, 0.0};
    }
    static CylinderSpec s(double T, std::array<double, 3> x) {
        return {CylinderKind::S, T, x, 0.0, 0.0};
    }
    static CylinderSpec centered(double t_center, std::array<double, 3> x, double r) {
        return {CylinderKind::Centered, 0.0, x, r, t_center};
    }
};

// Boolean mask over (time, space) samples of one grid.
class Mask {
public:
    explicit Mask(GridPtr grid, bool fill = false);

    const GridPtr& grid() const { return grid_; }
    bool get(int t, std::int64_t s) const { return sel_[idx(t, s)] != 0; }
    void set(int t, std::int64_t s, bool v) { sel_[idx(t, s)] = v ? 1 : 0; }
    std::int64_t count() const;
    bool empty() const { return count() == 0; }

    Mask complement() const;
    // true if this mask contains every sample of m
    bool contains(const Mask& m) const;

    const std::vector<std::uint8_t>& raw() const { return sel_; }

private:
    std::int64_t idx(int t, std::int64_t s) const {
        return static_cast<std::int64_t>(t) * grid_->n_points() + s;
    }
    GridPtr grid_;
    std::vector<std::uint8_t> sel_;
};

Mask cylinder_mask(const GridPtr& grid, const CylinderSpec& spec);

// Dyadic space-time cell of the partition of (0,inf) x R^d:
//   R_{j,k} = {1 <= 4^j t < 4,  2^j x - k in [0,1)^d}
//   Q_{j,k} = {0 <  4^j t < 16, 2^j x - k in [0,1)^d}
struct DyadicCell {
    int j = 0;
    std::array<int, 3> k{0, 0, 0};
    bool q_kind = false;  // false: R cell, true: Q cell
};

struct DyadicPiece {
    DyadicCell cell;
    Mask mask;
};

// Partition of all grid samples into R_{j,k} cells; every sample lands in
// exactly one piece.
std::vector<DyadicPiece> dyadic_partition(const GridPtr& grid);

// Unique scale index j with 1 <= 4^j t < 4.
int dyadic_scale(double t);

std::string mask_to_csv(const Mask& m);

}  // namespace nscrit
