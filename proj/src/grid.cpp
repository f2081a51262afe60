#include "nscrit/grid.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace nscrit {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int dim, double box_length, int n_space, double t_min, double t_max,
           int n_time, TimeSpacing spacing)
    : dim_(dim),
      L_(box_length),
      n_space_(n_space),
      t_min_(t_min),
      t_max_(t_max),
      n_time_(n_time),
      spacing_(spacing) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("grid: dim must be 1, 2 or 3");
    if (!is_power_of_two(n_space)) throw std::invalid_argument("grid: n_space must be a power of two");
    if (!(box_length > 0)) throw std::invalid_argument("grid: box_length must be positive");
    if (!(t_min > 0)) throw std::invalid_argument("grid: t_min must be positive");
    if (!(t_max > t_min)) throw std::invalid_argument("grid: t_max must exceed t_min");
    if (n_time < 1) throw std::invalid_argument("grid: n_time must be >= 1");

    n_points_ = 1;
    for (int d = 0; d < dim_; ++d) n_points_ *= n_space_;

    times_.resize(n_time_);
    if (n_time_ == 1) {
        times_[0] = t_max_;
    } else if (spacing_ == TimeSpacing::Uniform) {
        double dt = (t_max_ - t_min_) / (n_time_ - 1);
        for (int k = 0; k < n_time_; ++k) times_[k] = t_min_ + k * dt;
    } else {
        double ratio = std::pow(t_max_ / t_min_, 1.0 / (n_time_ - 1));
        for (int k = 0; k < n_time_; ++k) times_[k] = t_min_ * std::pow(ratio, k);
        times_[n_time_ - 1] = t_max_;
    }

    // trapezoid weights on the ladder, extended to s=0 on the left
    time_weights_.assign(n_time_, 0.0);
    for (int k = 0; k < n_time_; ++k) {
        double lo = (k == 0) ? 0.0 : 0.5 * (times_[k - 1] + times_[k]);
        double hi = (k == n_time_ - 1) ? times_[k] : 0.5 * (times_[k] + times_[k + 1]);
        time_weights_[k] = hi - lo;
    }
}

double Grid::periodic_delta(double a, double b) const {
    double d = a - b;
    d -= L_ * std::round(d / L_);
    return d;
}

std::array<int, 3> Grid::unflatten(std::int64_t idx) const {
    std::array<int, 3> c{0, 0, 0};
    for (int d = 0; d < dim_; ++d) {
        c[d] = static_cast<int>(idx % n_space_);
        idx /= n_space_;
    }
    return c;
}

std::int64_t Grid::flatten(const std::array<int, 3>& c) const {
    std::int64_t idx = 0;
    for (int d = dim_ - 1; d >= 0; --d) {
        int i = ((c[d] % n_space_) + n_space_) % n_space_;
        idx = idx * n_space_ + i;
    }
    return idx;
}

double Grid::periodic_distance(std::int64_t ia, std::int64_t ib) const {
    auto a = unflatten(ia);
    auto b = unflatten(ib);
    double r2 = 0;
    for (int d = 0; d < dim_; ++d) {
        int diff = std::abs(a[d] - b[d]);
        diff = std::min(diff, n_space_ - diff);
        const double dd = diff * dx();
        r2 += dd * dd;
    }
    return std::sqrt(r2);
}

double Grid::periodic_distance_point(std::int64_t ia, const std::array<double, 3>& x) const {
    auto a = unflatten(ia);
    double r2 = 0;
    for (int d = 0; d < dim_; ++d) {
        // when the coordinate sits on the lattice, measure along integer
        // offsets; the resulting distance is then exactly invariant under
        // lattice translations, so points at distance == radius land on the
        // same side of a ball-membership test everywhere in the box
        const double pos = x[d] / dx();
        const double snapped = std::round(pos);
        double dd;
        if (std::abs(pos - snapped) < 1e-9) {
            const int k = static_cast<int>(
                (static_cast<std::int64_t>(snapped) % n_space_ + n_space_) %
                n_space_);
            int diff = std::abs(a[d] - k);
            diff = std::min(diff, n_space_ - diff);
            dd = diff * dx();
        } else {
            dd = periodic_delta(coord(a[d]), x[d]);
        }
        r2 += dd * dd;
    }
    return std::sqrt(r2);
}

bool Grid::same_as(const Grid& o) const {
    return dim_ == o.dim_ && L_ == o.L_ && n_space_ == o.n_space_ &&
           t_min_ == o.t_min_ && t_max_ == o.t_max_ && n_time_ == o.n_time_ &&
           spacing_ == o.spacing_;
}

GridPtr make_grid(int dim, double box_length, int n_space, double t_min,
                  double t_max, int n_time, TimeSpacing spacing) {
    return std::make_shared<Grid>(dim, box_length, n_space, t_min, t_max,
                                  n_time, spacing);
}

Mask::Mask(GridPtr grid, bool fill)
    : grid_(std::move(grid)),
      sel_(static_cast<std::size_t>(grid_->n_time()) * grid_->n_points(),
           fill ? 1 : 0) {}

std::int64_t Mask::count() const {
    std::int64_t c = 0;
    for (auto v : sel_) c += v;
    return c;
}

Mask Mask::complement() const {
    Mask out(grid_);
    for (std::size_t i = 0; i < sel_.size(); ++i) out.sel_[i] = sel_[i] ? 0 : 1;
    return out;
}

bool Mask::contains(const Mask& m) const {
    for (std::size_t i = 0; i < sel_.size(); ++i)
        if (m.sel_[i] && !sel_[i]) return false;
    return true;
}

Mask cylinder_mask(const GridPtr& grid, const CylinderSpec& spec) {
    Mask out(grid);
    double t_lo, t_hi, radius;
    switch (spec.kind) {
        case CylinderKind::Q:
            t_lo = 0.0; t_hi = spec.T; radius = std::sqrt(spec.T);
            break;
        case CylinderKind::R:
            t_lo = spec.T / 2; t_hi = spec.T; radius = std::sqrt(spec.T);
            break;
        case CylinderKind::S:
            t_lo = spec.T / 4; t_hi = spec.T; radius = std::sqrt(10.0 * spec.T);
            break;
        case CylinderKind::Centered:
            t_lo = spec.t_center - spec.radius * spec.radius;
            t_hi = spec.t_center + spec.radius * spec.radius;
            radius = spec.radius;
            break;
        default:
            throw std::invalid_argument("cylinder_mask: bad kind");
    }
    const std::int64_t np = grid->n_points();
    for (int k = 0; k < grid->n_time(); ++k) {
        double t = grid->time(k);
        if (!(t > t_lo && t < t_hi && t > 0)) continue;
        for (std::int64_t s = 0; s < np; ++s) {
            if (grid->periodic_distance_point(s, spec.center) <= radius)
                out.set(k, s, true);
        }
    }
    return out;
}

int dyadic_scale(double t) {
    // unique j with 1 <= 4^j t < 4
    int j = static_cast<int>(std::ceil(-std::log(t) / std::log(4.0) - 1e-12));
    while (std::pow(4.0, j) * t < 1.0) ++j;
    while (std::pow(4.0, j) * t >= 4.0) --j;
    return j;
}

std::vector<DyadicPiece> dyadic_partition(const GridPtr& grid) {
    const int nt = grid->n_time();
    const std::int64_t np = grid->n_points();
    std::vector<DyadicPiece> pieces;
    std::unordered_map<std::uint64_t, std::size_t> index;
    auto key_of = [](int j, const std::array<int, 3>& k) {
        auto enc = [](int v) { return static_cast<std::uint64_t>(v + 32768) & 0xffff; };
        return enc(j) | (enc(k[0]) << 16) | (enc(k[1]) << 32) | (enc(k[2]) << 48);
    };
    for (int ti = 0; ti < nt; ++ti) {
        double t = grid->time(ti);
        int j = dyadic_scale(t);
        double scale = std::pow(2.0, j);
        for (std::int64_t s = 0; s < np; ++s) {
            auto c = grid->unflatten(s);
            std::array<int, 3> k{0, 0, 0};
            for (int d = 0; d < grid->dim(); ++d)
                k[d] = static_cast<int>(std::floor(scale * grid->coord(c[d])));
            auto key = key_of(j, k);
            auto it = index.find(key);
            std::size_t pi;
            if (it == index.end()) {
                pi = pieces.size();
                index.emplace(key, pi);
                pieces.push_back({DyadicCell{j, k, false}, Mask(grid)});
            } else {
                pi = it->second;
            }
            pieces[pi].mask.set(ti, s, true);
        }
    }
    return pieces;
}

std::string mask_to_csv(const Mask& m) {
    std::ostringstream ss;
    ss << "time_index,space_index\n";
    const auto& g = *m.grid();
    for (int t = 0; t < g.n_time(); ++t)
        for (std::int64_t s = 0; s < g.n_points(); ++s)
            if (m.get(t, s)) ss << t << ',' << s << '\n';
    return ss.str();
}

}  // namespace nscrit
