#pragma once

#include <vector>

#include "mcpc/config.hpp"
#include "mcpc/convex.hpp"
#include "mcpc/sinr.hpp"
#include "mcpc/tensor.hpp"

namespace mcpc {

struct GmMmfResult {
    PowerAllocation eta;
    std::vector<double> t_per_cell; // L, linear SINR; equals min_k SINR of the cell
    double utility = 0.0;           // prod_l log2(1 + eps + t_l)
    SolverResult solver;
    bool regime_warning = false; // some t_bar < 0 at the first solution
    int restarts = 0;            // extra randomized solves that were run
    std::vector<int> zero_gamma_cells; // cells pinned at t_l = 0
};

// Geometric mean across cells of the per-cell max-min SINR, solved to global
// optimality through the log-domain convex reformulation.
GmMmfResult solve_ul_gm_mmf(const FadingTensor& beta, const ChannelStats& gamma,
                            const NetworkConfig& cfg, const SolveOptions& opts = {});
GmMmfResult solve_dl_gm_mmf(const FadingTensor& beta, const ChannelStats& gamma,
                            const NetworkConfig& cfg, const SolveOptions& opts = {});
GmMmfResult solve_gm_mmf(Direction dir, const FadingTensor& beta,
                         const ChannelStats& gamma, const NetworkConfig& cfg,
                         const SolveOptions& opts = {});

// prod_l log2(1 + eps + t_l) over every cell.
double gm_utility(const std::vector<double>& t_per_cell, double eps);

}  // namespace mcpc
