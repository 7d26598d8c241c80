#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mcpc/config.hpp"
#include "mcpc/sinr.hpp"

namespace mcpc {

enum class Scheme { GM_MMF, NW_MMF, NW_PF };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct CampaignSpec {
    NetworkConfig cfg;
    int num_drops = 1;
    std::uint64_t base_seed = 1;
    std::vector<Scheme> schemes = {Scheme::GM_MMF, Scheme::NW_MMF, Scheme::NW_PF};
    std::vector<Direction> directions = {Direction::UL, Direction::DL};
    int threads = 0; // 0 = hardware concurrency
};

// Outcome of one scheme/direction on one drop.
struct SchemeResult {
    bool ok = false;
    std::string error;
    PowerAllocation eta;
    SinrSeVector sinr_se;
    std::vector<double> t_values; // per cell (GM/NW-MMF) or per user (NW-PF)
    double utility = 0.0;         // scheme's own objective at the allocation
    int solver_iterations = 0;
    bool regime_warning = false;
};

// Flat sample arrays aligned by (included drop, l, k) across all scheme/
// direction pairs, so per-user comparisons stay paired.
struct CampaignReport {
    NetworkConfig cfg;
    int num_drops = 0;
    std::uint64_t base_seed = 0;
    std::vector<Scheme> schemes;
    std::vector<Direction> directions;

    std::vector<int> included_drops;        // drop indices kept in the samples
    std::map<std::string, int> failure_counts; // key "scheme:dir"

    std::map<std::string, std::vector<double>> se_samples;   // key "scheme:dir"
    std::map<std::string, std::vector<double>> sinr_samples; // key "scheme:dir"
    std::map<std::string, std::vector<double>> sum_se;       // per included drop

    // "a>b:dir" -> percentage of paired user samples where a strictly
    // beats b (ties within 1e-9 count for neither side).
    std::map<std::string, double> win_pct;

    // Wall-clock diagnostics; deliberately not serialized so reports stay
    // byte-identical across runs.
    double elapsed_seconds = 0.0;

    int users_per_drop() const { return cfg.num_cells * cfg.users_per_cell; }
};

std::string sample_key(Scheme s, Direction d);

// Runs one scheme on one fading realization; exceptions and non-optimal
// solver exits are reported through ok/error rather than thrown.
SchemeResult run_scheme(Scheme scheme, Direction dir, const FadingTensor& beta,
                        const ChannelStats& gamma, const NetworkConfig& cfg);

// Runs the Monte-Carlo campaign; drop i uses seed base_seed + i and every
// scheme sees the identical fading realization. Drops where any requested
// scheme fails are excluded from every aggregate. Pure function of the spec.
CampaignReport run_campaign(const CampaignSpec& spec);

// Empirical CDF: sorted values with cumulative fractions (i+1)/N.
std::vector<std::pair<double, double>> cdf_points(std::vector<double> samples);

// Smallest sample whose cumulative fraction reaches q, q in (0, 1].
double quantile(std::vector<double> samples, double q);

// Win percentage of a over b with the 1e-9 tie band, in percent.
double win_percentage(const std::vector<double>& a, const std::vector<double>& b);

// Serialization. JSON holds the full report (minus timing); CSVs are the
// flat per-user samples and the CDF export.
void write_report_json(std::ostream& os, const CampaignReport& report);
CampaignReport read_report_json(std::istream& is);
void write_samples_csv(std::ostream& os, const CampaignReport& report);
void write_cdf_csv(std::ostream& os, const CampaignReport& report);

}  // namespace mcpc
