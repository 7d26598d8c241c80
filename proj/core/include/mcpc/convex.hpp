#pragma once

#include <limits>
#include <string_view>
#include <utility>
#include <vector>

#include "mcpc/errors.hpp"

namespace mcpc {

// log( sum_j c_j * exp(a_j . x) ) <= bound, with every c_j > 0.
struct LseConstraint {
    struct Term {
        double coeff = 1.0;                          // c_j, strictly positive
        std::vector<std::pair<int, double>> lin;     // sparse a_j
    };
    std::vector<Term> terms;
    double bound = 0.0;

    // Value of the log-sum-exp minus the bound (<= 0 when satisfied),
    // evaluated with max-shift so huge exponents cannot overflow.
    double violation(const std::vector<double>& x) const;
};

// Separable concave objective to maximize: a sum of
//   Linear        w * x[var]
//   LogLog1pExp   log( log(1 + eps + exp(x[var])) )
struct ObjectiveTerm {
    enum class Kind { Linear, LogLog1pExp };
    Kind kind = Kind::Linear;
    int var = 0;
    double weight = 1.0; // Linear only
    double eps = 1e-3;   // LogLog1pExp only
};

struct ConvexProgram {
    int num_vars = 0;
    std::vector<ObjectiveTerm> objective;
    std::vector<LseConstraint> constraints;
    std::vector<double> lower; // may be -inf; empty means all free
    std::vector<double> upper; // may be +inf; empty means all free

    void validate() const; // throws InputError on malformed programs

    double objective_value(const std::vector<double>& x) const;
};

enum class SolveStatus { Optimal, MaxIters, Infeasible };

std::string_view to_string(SolveStatus s);

struct SolverResult {
    std::vector<double> x;
    double objective_value = 0.0;
    double kkt_residual = std::numeric_limits<double>::infinity();
    SolveStatus status = SolveStatus::MaxIters;
    int iterations = 0; // total Newton steps, phase one included
};

struct SolveOptions {
    double kkt_tol = 1e-7;     // stationarity + complementarity target
    double feas_tol = 1e-9;    // constraint slack tolerance on exit checks
    double gap_tol = 5e-8;     // barrier duality-gap target (m / t)
    double barrier_mu = 20.0;  // outer multiplier on the barrier parameter
    double t_init = 1.0;
    int max_outer = 500;
    int max_newton_per_stage = 250;
    double newton_tol = 1e-16; // absolute floor on the squared Newton decrement
    std::vector<double> initial_point; // optional warm start (may be infeasible)
};

// Log-barrier interior-point method with damped Newton steps. Runs a
// phase-one search when the starting point is not strictly feasible. On
// Optimal the iterate is feasible and stationary within tolerance, which by
// convexity of the feasible set (and concavity of the objective on the
// relevant domain) is the global maximum.
SolverResult solve(const ConvexProgram& program, const SolveOptions& opts = {});

// f(x) = log(log(1 + eps + e^x)) and its first two derivatives, evaluated
// stably for any finite x.
double loglog1pexp(double eps, double x);
double loglog1pexp_d1(double eps, double x);
double loglog1pexp_d2(double eps, double x);

// Max central second difference of loglog1pexp over the grid (interior
// points). Nonpositive up to discretization error when the grid stays in
// the concave regime x >= 0.
double check_concavity(double eps, const std::vector<double>& grid);

// Max relative error between analytic gradients (objective and every
// constraint) and central finite differences with step 1e-6.
double gradient_check(const ConvexProgram& program, const std::vector<double>& x);

}  // namespace mcpc
