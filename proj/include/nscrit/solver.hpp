#pragma once

#include "nscrit/duhamel.hpp"

namespace nscrit {

// Data for the mild-solution problem u = e^{t Delta} u0 + L(F) - B(u, u).
struct ProblemData {
    SpatialField u0;      // divergence-free initial velocity (dim components)
    SpaceTimeField F;     // forcing tensor (dim*dim components)
    NormSpace space = NormSpace::YKT;
    NormParams params;
    double C0 = 0;        // 0: estimate empirically (x2 safety factor)
    NormSampling sampling;

    ProblemData(SpatialField u0_, SpaceTimeField F_);
};

struct SolutionTrace {
    SpaceTimeField u;
    int iterates = 0;
    std::vector<double> increments;  // ||u^{n+1} - u^n||_{L2L2}
    bool certified = false;
    bool converged = false;
    double C0 = 0;
    double margin = 0;        // 4 C0 (||e^{t Delta} u0|| + ||L(F)||)
    double data_norm = 0;     // ||e^{t Delta} u0|| + ||L(F)|| in the space
    double solution_norm = 0;
    bool bound_ok = false;    // ||u|| <= 2 * data_norm
};

// Picard iteration u^{0} = e^{t Delta} u0 + L(F),
// u^{n+1} = u^{0} - B(u^n, u^n); stops when the L2L2 increment < tol.
// Three consecutive growing increments mark divergence: the trace comes
// back uncertified, without an exception.
SolutionTrace picard_solve(const ProblemData& data, int max_iter = 20,
                           double tol = 1e-10, const QuadratureRule& rule = {});

// || u - e^{t Delta} u0 - L(F) + B(u,u) ||_{L2L2} / ||u||_{L2L2}
// (unnormalized when u = 0)
double residual(const ProblemData& data, const SpaceTimeField& u,
                const QuadratureRule& rule = {});

// 4 C0 (||e^{t Delta} u0||_Y + ||L(F)||_Y) in the selected space
double smallness_margin(const ProblemData& data, double C0,
                        const QuadratureRule& rule = {});

// sum-space rule for split forcing F = F1 + F2: the F1 part is measured in
// Y_KT,q and the F2 part in the problem's own space.
double smallness_margin_split(const ProblemData& data, const SpaceTimeField& F1,
                              const SpaceTimeField& F2, double q, double C0,
                              const QuadratureRule& rule = {});

// L2L2 field of the first Picard term e^{t Delta} u0 + L(F)
SpaceTimeField first_picard_term(const ProblemData& data,
                                 const QuadratureRule& rule = {});

}  // namespace nscrit
