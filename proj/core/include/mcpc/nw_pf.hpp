#pragma once

#include <vector>

#include "mcpc/config.hpp"
#include "mcpc/convex.hpp"
#include "mcpc/sinr.hpp"
#include "mcpc/tensor.hpp"

namespace mcpc {

struct NwPfResult {
    PowerAllocation eta;
    std::vector<double> t_per_user;    // L*K, linear; equals the achieved SINR
    double log_product_utility = 0.0;  // sum_{l,k} log t_{lk}
    SolverResult solver;
};

// Network-wide proportional fairness: maximize the product of all user
// SINRs, a geometric program solved in log variables. Throws InputError when
// any user has zero estimate variance (the utility is identically zero).
NwPfResult solve_ul_nw_pf(const FadingTensor& beta, const ChannelStats& gamma,
                          const NetworkConfig& cfg, const SolveOptions& opts = {});
NwPfResult solve_dl_nw_pf(const FadingTensor& beta, const ChannelStats& gamma,
                          const NetworkConfig& cfg, const SolveOptions& opts = {});
NwPfResult solve_nw_pf(Direction dir, const FadingTensor& beta,
                       const ChannelStats& gamma, const NetworkConfig& cfg,
                       const SolveOptions& opts = {});

}  // namespace mcpc
