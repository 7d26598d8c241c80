#include "mcpc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mcpc/channel.hpp"
#include "mcpc/drop.hpp"
#include "mcpc/errors.hpp"
#include "mcpc/gm_mmf.hpp"
#include "mcpc/nw_mmf.hpp"
#include "mcpc/nw_pf.hpp"
#include "mcpc/parallel.hpp"

namespace mcpc {

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::GM_MMF: return "gm_mmf";
        case Scheme::NW_MMF: return "nw_mmf";
        case Scheme::NW_PF: return "nw_pf";
    }
    return "unknown";
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "gm_mmf") return Scheme::GM_MMF;
    if (s == "nw_mmf") return Scheme::NW_MMF;
    if (s == "nw_pf") return Scheme::NW_PF;
    throw InputError("unknown scheme '" + s + "' (expected gm_mmf, nw_mmf or nw_pf)");
}

std::string sample_key(Scheme s, Direction d) {
    return to_string(s) + ":" + to_string(d);
}

SchemeResult run_scheme(Scheme scheme, Direction dir, const FadingTensor& beta,
                        const ChannelStats& gamma, const NetworkConfig& cfg) {
    SchemeResult out;
    try {
        switch (scheme) {
            case Scheme::GM_MMF: {
                auto r = solve_gm_mmf(dir, beta, gamma, cfg);
                out.ok = r.solver.status == SolveStatus::Optimal;
                if (!out.ok) out.error = std::string(to_string(r.solver.status));
                out.eta = r.eta;
                out.t_values = r.t_per_cell;
                out.utility = r.utility;
                out.solver_iterations = r.solver.iterations;
                out.regime_warning = r.regime_warning;
                break;
            }
            case Scheme::NW_MMF: {
                auto r = solve_nw_mmf(dir, beta, gamma, cfg);
                out.ok = true;
                out.eta = r.eta;
                out.t_values = {r.t_star};
                out.utility = r.t_star;
                out.solver_iterations = r.bisection_iterations;
                break;
            }
            case Scheme::NW_PF: {
                auto r = solve_nw_pf(dir, beta, gamma, cfg);
                out.ok = r.solver.status == SolveStatus::Optimal;
                if (!out.ok) out.error = std::string(to_string(r.solver.status));
                out.eta = r.eta;
                out.t_values = r.t_per_user;
                out.utility = r.log_product_utility;
                out.solver_iterations = r.solver.iterations;
                break;
            }
        }
        if (out.ok) out.sinr_se = compute_sinr(beta, gamma, out.eta, cfg);
    } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
    }
    return out;
}

CampaignReport run_campaign(const CampaignSpec& spec) {
    auto t0 = std::chrono::steady_clock::now();
    spec.cfg.validate();
    if (spec.num_drops < 1) throw InputError("run_campaign: num_drops must be >= 1");
    if (spec.schemes.empty()) throw InputError("run_campaign: schemes must be non-empty");
    if (spec.directions.empty())
        throw InputError("run_campaign: directions must be non-empty");

    struct DropOutcome {
        std::vector<SchemeResult> results; // aligned with (scheme, direction) pairs
        bool all_ok = false;
    };
    std::vector<std::pair<Scheme, Direction>> combos;
    for (Scheme s : spec.schemes)
        for (Direction d : spec.directions) combos.emplace_back(s, d);

    std::vector<DropOutcome> outcomes(spec.num_drops);
    parallel_for(spec.num_drops, spec.threads, [&](int i) {
        auto [drop, beta] = generate_drop(spec.cfg, spec.base_seed + i);
        ChannelStats gamma = compute_gamma(beta, spec.cfg);
        DropOutcome& oc = outcomes[i];
        oc.all_ok = true;
        oc.results.reserve(combos.size());
        for (auto [s, d] : combos) {
            oc.results.push_back(run_scheme(s, d, beta, gamma, spec.cfg));
            if (!oc.results.back().ok) oc.all_ok = false;
        }
    });

    CampaignReport report;
    report.cfg = spec.cfg;
    report.num_drops = spec.num_drops;
    report.base_seed = spec.base_seed;
    report.schemes = spec.schemes;
    report.directions = spec.directions;

    for (auto [s, d] : combos) {
        report.failure_counts[sample_key(s, d)] = 0;
        report.se_samples[sample_key(s, d)] = {};
        report.sinr_samples[sample_key(s, d)] = {};
        report.sum_se[sample_key(s, d)] = {};
    }

    // Aggregate sequentially in drop order so the report is a pure function
    // of the spec no matter how the parallel work was scheduled. A drop with
    // any failure is excluded from every aggregate to keep samples paired.
    for (int i = 0; i < spec.num_drops; ++i) {
        const DropOutcome& oc = outcomes[i];
        for (std::size_t c = 0; c < combos.size(); ++c)
            if (!oc.results[c].ok)
                ++report.failure_counts[sample_key(combos[c].first, combos[c].second)];
        if (!oc.all_ok) continue;
        report.included_drops.push_back(i);
        for (std::size_t c = 0; c < combos.size(); ++c) {
            const auto& key = sample_key(combos[c].first, combos[c].second);
            const auto& r = oc.results[c];
            auto& se = report.se_samples[key];
            auto& sinr = report.sinr_samples[key];
            se.insert(se.end(), r.sinr_se.se.begin(), r.sinr_se.se.end());
            sinr.insert(sinr.end(), r.sinr_se.sinr.begin(), r.sinr_se.sinr.end());
            report.sum_se[key].push_back(r.sinr_se.sum_se());
        }
    }

    for (Direction d : spec.directions)
        for (Scheme a : spec.schemes)
            for (Scheme b : spec.schemes) {
                if (a == b) continue;
                const auto& sa = report.se_samples[sample_key(a, d)];
                const auto& sb = report.se_samples[sample_key(b, d)];
                std::string key = to_string(a) + ">" + to_string(b) + ":" + to_string(d);
                report.win_pct[key] = sa.empty() ? 0.0 : win_percentage(sa, sb);
            }

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::vector<std::pair<double, double>> cdf_points(std::vector<double> samples) {
    if (samples.empty()) throw InputError("cdf_points: empty sample set");
    std::sort(samples.begin(), samples.end());
    std::vector<std::pair<double, double>> pts;
    pts.reserve(samples.size());
    const double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        pts.emplace_back(samples[i], static_cast<double>(i + 1) / n);
    return pts;
}

double quantile(std::vector<double> samples, double q) {
    if (samples.empty()) throw InputError("quantile: empty sample set");
    if (!(q > 0.0 && q <= 1.0)) throw InputError("quantile: q must be in (0, 1]");
    std::sort(samples.begin(), samples.end());
    auto idx = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(samples.size())) - 1.0);
    return samples[std::min(idx, samples.size() - 1)];
}

double win_percentage(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty())
        throw InputError("win_percentage: sample vectors must be non-empty and paired");
    std::size_t wins = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] - b[i] > 1e-9) ++wins;
    return 100.0 * static_cast<double>(wins) / static_cast<double>(a.size());
}

}  // namespace mcpc
