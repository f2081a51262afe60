#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nscrit/grid.hpp"

namespace nscrit {

// One time slice: real samples, optionally with `components` stacked
// (1 scalar, dim vector, dim*dim tensor).
class SpatialField {
public:
    SpatialField(GridPtr grid, int components);

    const GridPtr& grid() const { return grid_; }
    int components() const { return comps_; }

    double* data(int c = 0) { return values_.data() + c * grid_->n_points(); }
    const double* data(int c = 0) const { return values_.data() + c * grid_->n_points(); }
    std::span<double> comp(int c) { return {data(c), static_cast<std::size_t>(grid_->n_points())}; }
    std::span<const double> comp(int c) const { return {data(c), static_cast<std::size_t>(grid_->n_points())}; }

    double& at(int c, std::int64_t s) { return values_[c * grid_->n_points() + s]; }
    double at(int c, std::int64_t s) const { return values_[c * grid_->n_points() + s]; }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    // discrete L2(dx) norm over all components
    double l2() const;
    double max_abs() const;

    SpatialField& operator+=(const SpatialField& o);
    SpatialField& operator-=(const SpatialField& o);
    SpatialField& operator*=(double c);

private:
    GridPtr grid_;
    int comps_;
    std::vector<double> values_;
};

// Sampled field on the full (time x box) grid, values indexed
// (component, time, space).
class SpaceTimeField {
public:
    SpaceTimeField(GridPtr grid, int components);

    const GridPtr& grid() const { return grid_; }
    int components() const { return comps_; }

    double* slice(int c, int t) {
        return values_.data() + (static_cast<std::int64_t>(c) * grid_->n_time() + t) * grid_->n_points();
    }
    const double* slice(int c, int t) const {
        return values_.data() + (static_cast<std::int64_t>(c) * grid_->n_time() + t) * grid_->n_points();
    }
    double& at(int c, int t, std::int64_t s) { return *(slice(c, t) + s); }
    double at(int c, int t, std::int64_t s) const { return *(slice(c, t) + s); }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    SpatialField slice_field(int t) const;
    void set_slice(int t, const SpatialField& f);

    // quadrature L2(dt dx) norm over all components
    double l2l2() const;
    double l2l2_masked(const Mask& m) const;
    double max_abs() const;

    SpaceTimeField& operator+=(const SpaceTimeField& o);
    SpaceTimeField& operator-=(const SpaceTimeField& o);
    SpaceTimeField& operator*=(double c);

private:
    GridPtr grid_;
    int comps_;
    std::vector<double> values_;
};

// field * indicator; zero outside the mask
SpaceTimeField restrict_field(const SpaceTimeField& u, const Mask& m);

// pointwise Euclidean magnitude across components
SpaceTimeField magnitude(const SpaceTimeField& u);
SpatialField magnitude(const SpatialField& u);

}  // namespace nscrit
