#pragma once

#include <utility>
#include <vector>

#include "mcpc/config.hpp"
#include "mcpc/sinr.hpp"
#include "mcpc/tensor.hpp"

namespace mcpc {

struct BisectionOptions {
    double t_low = 0.0;
    double t_high = -1.0;      // <= 0 means "auto": max_{l,k} M*rho*gamma
    double tolerance = 0.0;    // absolute bracket width target; 0 disables
    double rel_tolerance = 1e-6; // stop when width <= rel_tolerance * t_low
    int max_feasibility_iters = 10000;
    int max_bisections = 200;
};

struct FeasibilityResult {
    bool feasible = false;
    std::vector<double> eta; // minimal fixed point when feasible, L*K
    int iterations = 0;
};

// Minimal-power feasibility of "every UL SINR >= t" via the monotone
// interference fixed point from eta = 0. Infeasible as soon as any
// component exceeds 1 or the iteration fails to settle.
FeasibilityResult feasibility_ul(double t, const FadingTensor& beta,
                                 const ChannelStats& gamma,
                                 const NetworkConfig& cfg, int max_iters = 10000);

// DL variant; the budget check sum_k eta_{lk} <= 1 on the minimal fixed
// point is exact because minimality carries over to the per-cell sums.
FeasibilityResult feasibility_dl(double t, const FadingTensor& beta,
                                 const ChannelStats& gamma,
                                 const NetworkConfig& cfg, int max_iters = 10000);

struct NwMmfResult {
    PowerAllocation eta;
    double t_star = 0.0;
    int bisection_iterations = 0;
    std::vector<std::pair<double, bool>> feasibility_trace;
    double bracket_width = 0.0; // final t_infeasible - t_star
};

// Network-wide max-min SINR by bisection over the feasibility oracle.
NwMmfResult solve_nw_mmf(Direction dir, const FadingTensor& beta,
                         const ChannelStats& gamma, const NetworkConfig& cfg,
                         const BisectionOptions& opts = {});

}  // namespace mcpc
