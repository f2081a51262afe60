#include "nscrit/field.hpp"

#include <algorithm>
#include <cmath>

namespace nscrit {

SpatialField::SpatialField(GridPtr grid, int components)
    : grid_(std::move(grid)),
      comps_(components),
      values_(static_cast<std::size_t>(components) * grid_->n_points(), 0.0) {}

double SpatialField::l2() const {
    double s = 0;
    for (double v : values_) s += v * v;
    return std::sqrt(s * grid_->cell_volume());
}

double SpatialField::max_abs() const {
    double m = 0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

SpatialField& SpatialField::operator+=(const SpatialField& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}
SpatialField& SpatialField::operator-=(const SpatialField& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}
SpatialField& SpatialField::operator*=(double c) {
    for (auto& v : values_) v *= c;
    return *this;
}

SpaceTimeField::SpaceTimeField(GridPtr grid, int components)
    : grid_(std::move(grid)),
      comps_(components),
      values_(static_cast<std::size_t>(components) * grid_->n_time() * grid_->n_points(), 0.0) {}

SpatialField SpaceTimeField::slice_field(int t) const {
    SpatialField f(grid_, comps_);
    for (int c = 0; c < comps_; ++c)
        std::copy(slice(c, t), slice(c, t) + grid_->n_points(), f.data(c));
    return f;
}

void SpaceTimeField::set_slice(int t, const SpatialField& f) {
    for (int c = 0; c < comps_; ++c)
        std::copy(f.data(c), f.data(c) + grid_->n_points(), slice(c, t));
}

double SpaceTimeField::l2l2() const {
    double acc = 0;
    const std::int64_t np = grid_->n_points();
    for (int c = 0; c < comps_; ++c)
        for (int t = 0; t < grid_->n_time(); ++t) {
            const double* p = slice(c, t);
            double s = 0;
            for (std::int64_t i = 0; i < np; ++i) s += p[i] * p[i];
            acc += s * grid_->sample_weight(t);
        }
    return std::sqrt(acc);
}

double SpaceTimeField::l2l2_masked(const Mask& m) const {
    double acc = 0;
    const std::int64_t np = grid_->n_points();
    for (int c = 0; c < comps_; ++c)
        for (int t = 0; t < grid_->n_time(); ++t) {
            const double* p = slice(c, t);
            double s = 0;
            for (std::int64_t i = 0; i < np; ++i)
                if (m.get(t, i)) s += p[i] * p[i];
            acc += s * grid_->sample_weight(t);
        }
    return std::sqrt(acc);
}

double SpaceTimeField::max_abs() const {
    double m = 0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

SpaceTimeField& SpaceTimeField::operator+=(const SpaceTimeField& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}
SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}
SpaceTimeField& SpaceTimeField::operator*=(double c) {
    for (auto& v : values_) v *= c;
    return *this;
}

SpaceTimeField restrict_field(const SpaceTimeField& u, const Mask& m) {
    if (!u.grid()->same_as(*m.grid()))
        throw std::invalid_argument("restrict_field: grid mismatch");
    SpaceTimeField out(u.grid(), u.components());
    const std::int64_t np = u.grid()->n_points();
    for (int c = 0; c < u.components(); ++c)
        for (int t = 0; t < u.grid()->n_time(); ++t) {
            const double* src = u.slice(c, t);
            double* dst = out.slice(c, t);
            for (std::int64_t i = 0; i < np; ++i)
                dst[i] = m.get(t, i) ? src[i] : 0.0;
        }
    return out;
}

SpaceTimeField magnitude(const SpaceTimeField& u) {
    SpaceTimeField out(u.grid(), 1);
    const std::int64_t np = u.grid()->n_points();
    for (int t = 0; t < u.grid()->n_time(); ++t) {
        double* dst = out.slice(0, t);
        for (std::int64_t i = 0; i < np; ++i) {
            double s = 0;
            for (int c = 0; c < u.components(); ++c) {
                double v = u.at(c, t, i);
                s += v * v;
            }
            dst[i] = std::sqrt(s);
        }
    }
    return out;
}

SpatialField magnitude(const SpatialField& u) {
    SpatialField out(u.grid(), 1);
    const std::int64_t np = u.grid()->n_points();
    for (std::int64_t i = 0; i < np; ++i) {
        double s = 0;
        for (int c = 0; c < u.components(); ++c) {
            double v = u.at(c, i);
            s += v * v;
        }
        out.at(0, i) = std::sqrt(s);
    }
    return out;
}

}  // namespace nscrit
