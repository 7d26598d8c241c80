#include "mcpc/gm_mmf.hpp"

#include <algorithm>
#include <cmath>

#include "scheme_builder.hpp"

namespace mcpc {

double gm_utility(const std::vector<double>& t_per_cell, double eps) {
    double u = 1.0;
    for (double t : t_per_cell) u *= std::log2(1.0 + eps + t);
    return u;
}

namespace {

struct Candidate {
    PowerAllocation eta;
    SinrSeVector sinr_se;
    double utility;
};

Candidate evaluate(const PowerAllocation& alloc, const FadingTensor& beta,
                   const ChannelStats& gamma, const NetworkConfig& cfg) {
    Candidate c{alloc, compute_sinr(beta, gamma, alloc, cfg), 0.0};
    c.utility = gm_utility(c.sinr_se.per_cell_min_sinr, cfg.epsilon);
    return c;
}

GmMmfResult solve_gm_mmf_dir(Direction dir, const FadingTensor& beta,
                             const ChannelStats& gamma, const NetworkConfig& cfg,
                             const SolveOptions& opts) {
    detail::check_shapes(beta, gamma, cfg, "solve_gm_mmf");
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;

    GmMmfResult result;
    std::vector<char> enabled(L, 1);
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < K; ++k)
            if (!(gamma.gamma(l, l, k) > 0.0)) {
                // A zero estimate variance pins this cell's min SINR at zero;
                // its utility factor is the constant log2(1+eps) and its
                // users are plain interferers.
                enabled[l] = 0;
            }
    for (int l = 0; l < L; ++l)
        if (!enabled[l]) result.zero_gamma_cells.push_back(l);

    if (std::none_of(enabled.begin(), enabled.end(), [](char e) { return e; })) {
        PowerAllocation zero{std::vector<double>(static_cast<std::size_t>(L) * K, 0.0), dir};
        auto c = evaluate(zero, beta, gamma, cfg);
        result.eta = c.eta;
        result.t_per_cell = c.sinr_se.per_cell_min_sinr;
        result.utility = c.utility;
        result.solver.status = SolveStatus::Optimal;
        result.solver.kkt_residual = 0.0;
        return result;
    }

    auto sp = detail::build_sinr_program(dir, beta, gamma, cfg, false, enabled);
    for (int l = 0; l < L; ++l)
        if (sp.t_var[l] >= 0)
            sp.program.objective.push_back(
                {ObjectiveTerm::Kind::LogLog1pExp, sp.t_var[l], 1.0, cfg.epsilon});

    // The GM objective is flat in t_bar far below log(eps): a cold start can
    // strand weak cells in that valley. Warm-start from the max sum-log
    // per-cell-min problem (same constraints, linear objective, globally
    // concave), which lifts every cell to an achievable level first.
    SolverResult warm;
    {
        ConvexProgram aux = sp.program;
        aux.objective.clear();
        for (int l = 0; l < L; ++l)
            if (sp.t_var[l] >= 0)
                aux.objective.push_back(
                    {ObjectiveTerm::Kind::Linear, sp.t_var[l], 1.0, 0.0});
        SolveOptions aux_opts = opts;
        aux_opts.initial_point = detail::heuristic_start(sp, beta, gamma, cfg);
        warm = solve(aux, aux_opts);
    }

    // The objective pull on t_bar_l scales with t * f'(t_bar_l) while the
    // barrier pushes with O(1/slack); f' decays exponentially below log(eps),
    // so at a cold t_init weak cells slide off their constraints into the
    // flat region and never recover. Start instead from the aux allocation
    // with every target a uniform delta below its achieved SINR, and pick
    // t_init so that pull and push balance for the weakest cell right at the
    // start: each cell is then held at its constraint from the first stage.
    SolveOptions solve_opts = opts;
    if (warm.status == SolveStatus::Optimal) {
        const double delta = 0.01; // slack in t_bar units
        std::vector<double> start = warm.x;
        PowerAllocation eta_aux{{}, dir};
        eta_aux.eta.resize(static_cast<std::size_t>(L) * K);
        for (int j = 0; j < L * K; ++j) eta_aux.eta[j] = std::exp(warm.x[j]);
        SinrSeVector aux_sinr = compute_sinr(beta, gamma, eta_aux, cfg);
        double weakest_pull = std::numeric_limits<double>::infinity();
        for (int l = 0; l < L; ++l) {
            if (sp.t_var[l] < 0) continue;
            double tb = std::log(std::max(aux_sinr.per_cell_min_sinr[l], 1e-280));
            tb = std::max(tb - delta, detail::kTBarLower + 1.0);
            start[sp.t_var[l]] = tb;
            weakest_pull =
                std::min(weakest_pull, loglog1pexp_d1(cfg.epsilon, tb));
        }
        solve_opts.initial_point = std::move(start);
        int m = static_cast<int>(sp.program.constraints.size());
        for (int j = 0; j < sp.program.num_vars; ++j) {
            m += std::isfinite(sp.program.lower[j]) ? 1 : 0;
            m += std::isfinite(sp.program.upper[j]) ? 1 : 0;
        }
        double t_target = 1.02 * m / opts.gap_tol;
        if (weakest_pull > 0.0 && std::isfinite(weakest_pull))
            solve_opts.t_init = std::clamp(1.0 / (delta * weakest_pull),
                                           opts.t_init, 0.5 * t_target);
    } else {
        solve_opts.initial_point = detail::heuristic_start(sp, beta, gamma, cfg);
    }
    SolverResult sol = solve(sp.program, solve_opts);

    // Theorem-1 concavity holds for t_bar >= 0; below zero the objective has
    // a convex pocket, so re-verify from randomized starts and keep the best.
    bool warn = false;
    for (int l = 0; l < L; ++l)
        if (sp.t_var[l] >= 0 && sol.x[sp.t_var[l]] < 0.0) warn = true;
    result.regime_warning = warn;

    std::vector<SolverResult> solutions{sol};
    if (warn || sol.status != SolveStatus::Optimal) {
        for (int r = 0; r < 5; ++r) {
            SolveOptions ropts = opts;
            ropts.initial_point = detail::randomized_start(
                sp, beta, gamma, cfg, 0x9E3779B97F4A7C15ULL + 0x10001ULL * r);
            solutions.push_back(solve(sp.program, ropts));
            ++result.restarts;
        }
    }

    // Prefer converged solves: a thrashed one may stumble on a decent
    // allocation but its diagnostics are meaningless.
    bool any_optimal = false;
    for (const auto& s : solutions)
        any_optimal = any_optimal || s.status == SolveStatus::Optimal;
    bool have_best = false;
    Candidate best;
    for (const auto& s : solutions) {
        if (any_optimal && s.status != SolveStatus::Optimal) continue;
        for (const auto& alloc : detail::candidate_allocations(sp, s.x)) {
            Candidate c = evaluate(alloc, beta, gamma, cfg);
            if (!have_best || c.utility > best.utility) {
                best = std::move(c);
                have_best = true;
                result.solver = s;
            }
        }
    }

    result.eta = best.eta;
    result.t_per_cell = best.sinr_se.per_cell_min_sinr; // targets are tight at optimum
    result.utility = best.utility;
    return result;
}

}  // namespace

GmMmfResult solve_ul_gm_mmf(const FadingTensor& beta, const ChannelStats& gamma,
                            const NetworkConfig& cfg, const SolveOptions& opts) {
    return solve_gm_mmf_dir(Direction::UL, beta, gamma, cfg, opts);
}

GmMmfResult solve_dl_gm_mmf(const FadingTensor& beta, const ChannelStats& gamma,
                            const NetworkConfig& cfg, const SolveOptions& opts) {
    return solve_gm_mmf_dir(Direction::DL, beta, gamma, cfg, opts);
}

GmMmfResult solve_gm_mmf(Direction dir, const FadingTensor& beta,
                         const ChannelStats& gamma, const NetworkConfig& cfg,
                         const SolveOptions& opts) {
    return solve_gm_mmf_dir(dir, beta, gamma, cfg, opts);
}

}  // namespace mcpc
