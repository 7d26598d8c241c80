#include "mcpc/nw_pf.hpp"

#include <cmath>
#include <string>

#include "scheme_builder.hpp"

namespace mcpc {

namespace {

NwPfResult solve_nw_pf_dir(Direction dir, const FadingTensor& beta,
                           const ChannelStats& gamma, const NetworkConfig& cfg,
                           const SolveOptions& opts) {
    detail::check_shapes(beta, gamma, cfg, "solve_nw_pf");
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < K; ++k)
            if (!(gamma.gamma(l, l, k) > 0.0))
                throw InputError("solve_nw_pf: user (" + std::to_string(l) + "," +
                                 std::to_string(k) +
                                 ") has zero estimate variance; the product utility "
                                 "is identically zero");

    std::vector<char> enabled(L, 1);
    auto sp = detail::build_sinr_program(dir, beta, gamma, cfg, true, enabled);
    for (int i = 0; i < L * K; ++i)
        sp.program.objective.push_back(
            {ObjectiveTerm::Kind::Linear, sp.t_var[i], 1.0, 0.0});

    SolveOptions solve_opts = opts;
    solve_opts.initial_point = detail::heuristic_start(sp, beta, gamma, cfg);
    SolverResult sol = solve(sp.program, solve_opts);

    NwPfResult result;
    result.solver = sol;
    bool have_best = false;
    double best_utility = 0.0;
    for (const auto& alloc : detail::candidate_allocations(sp, sol.x)) {
        SinrSeVector s = compute_sinr(beta, gamma, alloc, cfg);
        double u = 0.0;
        for (double v : s.sinr) u += std::log(v);
        if (!have_best || u > best_utility) {
            have_best = true;
            best_utility = u;
            result.eta = alloc;
            result.t_per_user = s.sinr; // SINR targets are tight at the optimum
        }
    }
    result.log_product_utility = best_utility;
    return result;
}

}  // namespace

NwPfResult solve_ul_nw_pf(const FadingTensor& beta, const ChannelStats& gamma,
                          const NetworkConfig& cfg, const SolveOptions& opts) {
    return solve_nw_pf_dir(Direction::UL, beta, gamma, cfg, opts);
}

NwPfResult solve_dl_nw_pf(const FadingTensor& beta, const ChannelStats& gamma,
                          const NetworkConfig& cfg, const SolveOptions& opts) {
    return solve_nw_pf_dir(Direction::DL, beta, gamma, cfg, opts);
}

NwPfResult solve_nw_pf(Direction dir, const FadingTensor& beta,
                       const ChannelStats& gamma, const NetworkConfig& cfg,
                       const SolveOptions& opts) {
    return solve_nw_pf_dir(dir, beta, gamma, cfg, opts);
}

}  // namespace mcpc
