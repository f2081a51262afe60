#include "nscrit/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "nscrit/ensemble.hpp"

namespace nscrit {

ProblemData::ProblemData(SpatialField u0_, SpaceTimeField F_)
    : u0(std::move(u0_)), F(std::move(F_)) {
    const Grid& g = *u0.grid();
    if (!g.same_as(*F.grid()))
        throw std::invalid_argument("ProblemData: u0 and F on different grids");
    if (u0.components() != g.dim())
        throw std::invalid_argument("ProblemData: u0 must have dim components");
    if (F.components() != g.dim() * g.dim())
        throw std::invalid_argument("ProblemData: F must have dim^2 components");
    const double un = u0.l2();
    if (un > 0 && divergence(u0).l2() > 1e-10 * un)
        throw std::invalid_argument("ProblemData: u0 is not divergence-free");
}

SpaceTimeField first_picard_term(const ProblemData& data,
                                 const QuadratureRule& rule) {
    SpaceTimeField out = heat_extension(data.u0, data.u0.grid());
    if (data.F.max_abs() > 0) out += linear_force(data.F, rule);
    return out;
}

double smallness_margin(const ProblemData& data, double C0,
                        const QuadratureRule& rule) {
    SpaceTimeField lin = heat_extension(data.u0, data.u0.grid());
    double n = space_norm(lin, data.space, data.params, data.sampling).value;
    if (data.F.max_abs() > 0) {
        SpaceTimeField lf = linear_force(data.F, rule);
        n += space_norm(lf, data.space, data.params, data.sampling).value;
    }
    return 4.0 * C0 * n;
}

double smallness_margin_split(const ProblemData& data, const SpaceTimeField& F1,
                              const SpaceTimeField& F2, double q, double C0,
                              const QuadratureRule& rule) {
    SpaceTimeField lin = heat_extension(data.u0, data.u0.grid());
    double n = space_norm(lin, data.space, data.params, data.sampling).value;
    if (F1.max_abs() > 0) {
        SpaceTimeField lf = linear_force(F1, rule);
        NormParams p1 = data.params;
        p1.q = q;
        n += space_norm(lf, NormSpace::YKTq, p1, data.sampling).value;
    }
    if (F2.max_abs() > 0) {
        SpaceTimeField lf = linear_force(F2, rule);
        n += space_norm(lf, data.space, data.params, data.sampling).value;
    }
    return 4.0 * C0 * n;
}

SolutionTrace picard_solve(const ProblemData& data, int max_iter, double tol,
                           const QuadratureRule& rule) {
    SpaceTimeField u0_term = first_picard_term(data, rule);

    SolutionTrace trace{u0_term};
    trace.data_norm =
        space_norm(u0_term, data.space, data.params, data.sampling).value;
    trace.C0 = data.C0 > 0
                   ? data.C0
                   : 2.0 * estimate_C0(data.F.grid(), data.space, data.params,
                                       3, 20260826)
                             .max;
    trace.margin = 4.0 * trace.C0 * trace.data_norm;

    SpaceTimeField u = u0_term;
    int growing = 0;
    double prev_inc = -1;
    bool diverged = false;
    for (int it = 0; it < max_iter; ++it) {
        SpaceTimeField next = u0_term;
        next -= bilinear_B(u, u, rule);
        SpaceTimeField diff = next;
        diff -= u;
        const double inc = diff.l2l2();
        trace.increments.push_back(inc);
        ++trace.iterates;
        u = std::move(next);
        if (inc < tol) {
            trace.converged = true;
            break;
        }
        if (prev_inc >= 0 && inc > prev_inc) {
            if (++growing >= 3) {
                diverged = true;
                break;
            }
        } else {
            growing = 0;
        }
        prev_inc = inc;
    }
    trace.u = std::move(u);
    trace.solution_norm =
        space_norm(trace.u, data.space, data.params, data.sampling).value;
    trace.bound_ok = trace.solution_norm <= 2.0 * trace.data_norm + 1e-14;

    // certification: smallness margin, convergence, geometric decay
    bool geometric = true;
    for (std::size_t i = 0; i + 1 < trace.increments.size(); ++i) {
        if (trace.increments[i] <= tol) continue;  // below the noise floor
        if (trace.increments[i + 1] >
            trace.margin * trace.increments[i] + 1e-14)
            geometric = false;
    }
    trace.certified = !diverged && trace.converged && trace.C0 > 0 &&
                      trace.margin < 1.0 && geometric && trace.bound_ok;
    return trace;
}

double residual(const ProblemData& data, const SpaceTimeField& u,
                const QuadratureRule& rule) {
    if (!u.grid()->same_as(*data.u0.grid()))
        throw std::invalid_argument("residual: u on a different grid");
    SpaceTimeField r = first_picard_term(data, rule);
    r -= u;
    const double un = u.l2l2();
    if (un > 0) r -= bilinear_B(u, u, rule);
    const double rn = r.l2l2();
    return un > 0 ? rn / un : rn;
}

}  // namespace nscrit
