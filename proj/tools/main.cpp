// mcpc: multi-cell massive MIMO power-control workbench.
//
// Subcommands:
//   drop      write one fading realization as CSV
//   solve     run selected schemes on one drop and print per-user results
//   campaign  Monte-Carlo run; writes report.json, samples.csv, cdf.csv
//   compare   recompute pairwise win percentages from a stored report

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcpc/channel.hpp"
#include "mcpc/config_io.hpp"
#include "mcpc/drop.hpp"
#include "mcpc/errors.hpp"
#include "mcpc/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitSolverError = 2;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::uint64_t seed = 1;
};

mcpc::NetworkConfig load_config(const CommonArgs& args) {
    mcpc::NetworkConfig cfg = mcpc::parse_config_file(args.config_path);
    for (const auto& o : args.overrides) mcpc::apply_override(cfg, o);
    cfg.validate();
    return cfg;
}

std::vector<mcpc::Scheme> parse_schemes(const std::string& csv) {
    std::vector<mcpc::Scheme> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(mcpc::scheme_from_string(item));
    if (out.empty()) throw mcpc::InputError("no schemes selected");
    return out;
}

std::vector<mcpc::Direction> parse_directions(const std::string& csv) {
    std::vector<mcpc::Direction> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(mcpc::direction_from_string(item));
    if (out.empty()) throw mcpc::InputError("no directions selected");
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mcpc::InputError("cannot open output file '" + path + "'");
    out << contents;
}

int cmd_drop(const CommonArgs& args, const std::string& out_path) {
    auto cfg = load_config(args);
    auto [drop, beta] = mcpc::generate_drop(cfg, args.seed);
    auto gamma = mcpc::compute_gamma(beta, cfg);
    std::ostringstream csv;
    mcpc::write_drop_csv(csv, cfg, drop, beta, gamma);
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_file(out_path, csv.str());
    return kExitOk;
}

int cmd_solve(const CommonArgs& args, const std::string& schemes_csv,
              const std::string& dirs_csv) {
    auto cfg = load_config(args);
    auto schemes = parse_schemes(schemes_csv);
    auto dirs = parse_directions(dirs_csv);
    auto [drop, beta] = mcpc::generate_drop(cfg, args.seed);
    auto gamma = mcpc::compute_gamma(beta, cfg);

    bool any_failed = false;
    std::printf("scheme   direction  l   k   sinr            se\n");
    for (auto s : schemes) {
        for (auto d : dirs) {
            auto r = mcpc::run_scheme(s, d, beta, gamma, cfg);
            if (!r.ok) {
                any_failed = true;
                std::fprintf(stderr, "error: %s %s failed: %s\n",
                             mcpc::to_string(s).c_str(), mcpc::to_string(d).c_str(),
                             r.error.c_str());
                continue;
            }
            for (int l = 0; l < cfg.num_cells; ++l)
                for (int k = 0; k < cfg.users_per_cell; ++k) {
                    std::size_t i =
                        static_cast<std::size_t>(l) * cfg.users_per_cell + k;
                    std::printf("%-8s %-10s %-3d %-3d %-15.8g %-15.8g\n",
                                mcpc::to_string(s).c_str(), mcpc::to_string(d).c_str(),
                                l, k, r.sinr_se.sinr[i], r.sinr_se.se[i]);
                }
            std::printf("# %s %s: utility = %.10g, t =", mcpc::to_string(s).c_str(),
                        mcpc::to_string(d).c_str(), r.utility);
            for (double t : r.t_values) std::printf(" %.8g", t);
            std::printf(" (iterations %d%s)\n", r.solver_iterations,
                        r.regime_warning ? ", regime_warning" : "");
        }
    }
    return any_failed ? kExitSolverError : kExitOk;
}

int cmd_campaign(const CommonArgs& args, int drops, const std::string& schemes_csv,
                 const std::string& dirs_csv, int threads,
                 const std::string& out_dir) {
    mcpc::CampaignSpec spec;
    spec.cfg = load_config(args);
    spec.num_drops = drops;
    spec.base_seed = args.seed;
    spec.schemes = parse_schemes(schemes_csv);
    spec.directions = parse_directions(dirs_csv);
    spec.threads = threads;

    auto report = mcpc::run_campaign(spec);

    std::filesystem::create_directories(out_dir);
    auto path = [&](const char* name) {
        return (std::filesystem::path(out_dir) / name).string();
    };
    {
        std::ostringstream os;
        mcpc::write_report_json(os, report);
        write_file(path("report.json"), os.str());
    }
    {
        std::ostringstream os;
        mcpc::write_samples_csv(os, report);
        write_file(path("samples.csv"), os.str());
    }
    {
        std::ostringstream os;
        mcpc::write_cdf_csv(os, report);
        write_file(path("cdf.csv"), os.str());
    }

    std::fprintf(stderr, "campaign: %zu/%d drops usable, %.1f s\n",
                 report.included_drops.size(), report.num_drops,
                 report.elapsed_seconds);
    for (const auto& [key, count] : report.failure_counts)
        if (count > 0) std::fprintf(stderr, "  failures %s: %d\n", key.c_str(), count);
    for (const auto& [key, pct] : report.win_pct)
        std::printf("win %-20s %6.2f%%\n", key.c_str(), pct);
    return report.included_drops.empty() ? kExitSolverError : kExitOk;
}

int cmd_compare(const std::string& report_path) {
    std::ifstream in(report_path, std::ios::binary);
    if (!in) throw mcpc::InputError("cannot open report file '" + report_path + "'");
    auto report = mcpc::read_report_json(in);

    std::printf("pairwise percentage of user samples with strictly higher SE\n");
    std::printf("(recomputed from %zu paired samples per direction)\n\n",
                report.se_samples.empty()
                    ? std::size_t{0}
                    : report.se_samples.begin()->second.size());
    for (auto d : report.directions) {
        for (auto a : report.schemes) {
            for (auto b : report.schemes) {
                if (a == b) continue;
                const auto& sa = report.se_samples.at(mcpc::sample_key(a, d));
                const auto& sb = report.se_samples.at(mcpc::sample_key(b, d));
                double pct = sa.empty() ? 0.0 : mcpc::win_percentage(sa, sb);
                std::printf("%s beats %s (%s): %6.2f%%\n", mcpc::to_string(a).c_str(),
                            mcpc::to_string(b).c_str(), mcpc::to_string(d).c_str(),
                            pct);
            }
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-cell massive MIMO power-control workbench"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string out_path;
    std::string out_dir = "campaign_out";
    std::string schemes_csv = "gm_mmf,nw_mmf,nw_pf";
    std::string dirs_csv = "ul,dl";
    std::string report_path;
    int drops = 100;
    int threads = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "scenario config file")
            ->required();
        cmd->add_option("--set", common.overrides,
                        "config override key=value (repeatable)");
        cmd->add_option("--seed", common.seed, "base RNG seed");
    };

    auto* drop_cmd = app.add_subcommand("drop", "write one fading realization as CSV");
    add_common(drop_cmd);
    drop_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* solve_cmd =
        app.add_subcommand("solve", "solve selected schemes on a single drop");
    add_common(solve_cmd);
    solve_cmd->add_option("--schemes", schemes_csv, "comma list: gm_mmf,nw_mmf,nw_pf");
    solve_cmd->add_option("--dir,--dirs", dirs_csv, "comma list: ul,dl");

    auto* campaign_cmd = app.add_subcommand("campaign", "run a Monte-Carlo campaign");
    add_common(campaign_cmd);
    campaign_cmd->add_option("--drops", drops, "number of user drops")->required();
    campaign_cmd->add_option("--schemes", schemes_csv, "comma list of schemes");
    campaign_cmd->add_option("--dirs", dirs_csv, "comma list: ul,dl");
    campaign_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
    campaign_cmd->add_option("--out", out_dir, "output directory");

    auto* compare_cmd =
        app.add_subcommand("compare", "recompute win percentages from a report");
    compare_cmd->add_option("--report", report_path, "report.json path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (app.got_subcommand(drop_cmd)) return cmd_drop(common, out_path);
        if (app.got_subcommand(solve_cmd))
            return cmd_solve(common, schemes_csv, dirs_csv);
        if (app.got_subcommand(campaign_cmd))
            return cmd_campaign(common, drops, schemes_csv, dirs_csv, threads, out_dir);
        if (app.got_subcommand(compare_cmd)) return cmd_compare(report_path);
    } catch (const mcpc::SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitSolverError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    }
    return kExitInputError;
}
