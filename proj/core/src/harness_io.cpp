#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "config_fields.hpp"
#include "mcpc/errors.hpp"
#include "mcpc/harness.hpp"

namespace mcpc {

namespace {

using nlohmann::json;

json cfg_to_json(const NetworkConfig& cfg) {
    json j;
    detail::visit_config_fields(cfg, [&](const char* name, const auto& field) {
        j[name] = field;
    });
    j["pilot_reuse_sets"] = cfg.pilot_reuse_sets; // empty array = reuse one
    return j;
}

NetworkConfig cfg_from_json(const json& j) {
    NetworkConfig cfg;
    detail::visit_config_fields(cfg, [&](const char* name, auto& field) {
        if (j.contains(name)) field = j.at(name).get<std::decay_t<decltype(field)>>();
    });
    if (j.contains("pilot_reuse_sets"))
        cfg.pilot_reuse_sets = j.at("pilot_reuse_sets").get<std::vector<std::vector<int>>>();
    cfg.validate();
    return cfg;
}

}  // namespace

void write_report_json(std::ostream& os, const CampaignReport& report) {
    json j;
    j["format"] = "mcpc-campaign-report-v1";
    j["config"] = cfg_to_json(report.cfg);
    j["num_drops"] = report.num_drops;
    j["base_seed"] = report.base_seed;
    json schemes = json::array();
    for (Scheme s : report.schemes) schemes.push_back(to_string(s));
    j["schemes"] = schemes;
    json dirs = json::array();
    for (Direction d : report.directions) dirs.push_back(to_string(d));
    j["directions"] = dirs;
    j["included_drops"] = report.included_drops;
    j["failures"] = report.failure_counts;
    json samples;
    for (const auto& [key, se] : report.se_samples) {
        samples[key]["se"] = se;
        samples[key]["sinr"] = report.sinr_samples.at(key);
    }
    j["samples"] = samples;
    j["sum_se"] = report.sum_se;
    j["win_pct"] = report.win_pct;
    // Wall-clock timing is intentionally left out: the file must be
    // byte-identical for identical specs.
    os << j.dump(1) << "\n";
}

CampaignReport read_report_json(std::istream& is) {
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw InputError(std::string("cannot parse report JSON: ") + e.what());
    }
    if (!j.contains("format") || j["format"] != "mcpc-campaign-report-v1")
        throw InputError("report JSON: unknown or missing format tag");

    CampaignReport report;
    report.cfg = cfg_from_json(j.at("config"));
    report.num_drops = j.at("num_drops").get<int>();
    report.base_seed = j.at("base_seed").get<std::uint64_t>();
    for (const auto& s : j.at("schemes"))
        report.schemes.push_back(scheme_from_string(s.get<std::string>()));
    for (const auto& d : j.at("directions"))
        report.directions.push_back(direction_from_string(d.get<std::string>()));
    report.included_drops = j.at("included_drops").get<std::vector<int>>();
    report.failure_counts = j.at("failures").get<std::map<std::string, int>>();
    for (const auto& [key, s] : j.at("samples").items()) {
        report.se_samples[key] = s.at("se").get<std::vector<double>>();
        report.sinr_samples[key] = s.at("sinr").get<std::vector<double>>();
    }
    report.sum_se = j.at("sum_se").get<std::map<std::string, std::vector<double>>>();
    report.win_pct = j.at("win_pct").get<std::map<std::string, double>>();
    return report;
}

void write_samples_csv(std::ostream& os, const CampaignReport& report) {
    os << "drop,scheme,direction,l,k,sinr,se\n";
    const int L = report.cfg.num_cells;
    const int K = report.cfg.users_per_cell;
    char buf[192];
    for (std::size_t di = 0; di < report.included_drops.size(); ++di) {
        for (Scheme s : report.schemes) {
            for (Direction d : report.directions) {
                const auto& key = sample_key(s, d);
                const auto& se = report.se_samples.at(key);
                const auto& sinr = report.sinr_samples.at(key);
                for (int l = 0; l < L; ++l)
                    for (int k = 0; k < K; ++k) {
                        std::size_t idx = di * L * K + l * K + k;
                        std::snprintf(buf, sizeof(buf), "%d,%s,%s,%d,%d,%.12g,%.12g\n",
                                      report.included_drops[di], to_string(s).c_str(),
                                      to_string(d).c_str(), l, k, sinr[idx], se[idx]);
                        os << buf;
                    }
            }
        }
    }
}

void write_cdf_csv(std::ostream& os, const CampaignReport& report) {
    os << "scheme,direction,se,cdf\n";
    char buf[128];
    for (Scheme s : report.schemes) {
        for (Direction d : report.directions) {
            const auto& se = report.se_samples.at(sample_key(s, d));
            if (se.empty()) continue;
            for (const auto& [value, frac] : cdf_points(se)) {
                std::snprintf(buf, sizeof(buf), "%s,%s,%.12g,%.12g\n",
                              to_string(s).c_str(), to_string(d).c_str(), value, frac);
                os << buf;
            }
        }
    }
}

}  // namespace mcpc
