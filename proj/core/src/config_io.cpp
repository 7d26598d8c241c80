#include "mcpc/config_io.hpp"

#include <cctype>
#include <climits>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "config_fields.hpp"

namespace mcpc {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

int parse_int(const std::string& value, const std::string& key) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse integer from '" +
                          value + "'");
    }
    if (pos != value.size() || v < INT_MIN || v > INT_MAX)
        throw ConfigError("config key '" + key + "': cannot parse integer from '" +
                          value + "'");
    return static_cast<int>(v);
}

double parse_double(const std::string& value, const std::string& key) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse number from '" +
                          value + "'");
    }
    if (pos != value.size())
        throw ConfigError("config key '" + key + "': cannot parse number from '" +
                          value + "'");
    return v;
}

// "all" or pipe-separated groups of comma-separated zero-based cell indices,
// e.g. "0,1,2|3,4,5".
std::vector<std::vector<int>> parse_pilot_sets(const std::string& value) {
    if (trim(value) == "all") return {};
    std::vector<std::vector<int>> sets;
    std::stringstream groups(value);
    std::string group;
    while (std::getline(groups, group, '|')) {
        std::vector<int> cells;
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ','))
            cells.push_back(parse_int(trim(item), "pilot_reuse_sets"));
        if (cells.empty())
            throw ConfigError("config key 'pilot_reuse_sets': empty group in '" +
                              value + "'");
        sets.push_back(std::move(cells));
    }
    if (sets.empty())
        throw ConfigError("config key 'pilot_reuse_sets': no groups in '" + value + "'");
    return sets;
}

void set_field(NetworkConfig& cfg, const std::string& key, const std::string& value,
               const std::string& origin) {
    if (key == "pilot_reuse_sets") {
        cfg.pilot_reuse_sets = parse_pilot_sets(value);
        return;
    }
    bool found = false;
    detail::visit_config_fields(cfg, [&](const char* name, auto& field) {
        if (found || key != name) return;
        found = true;
        using T = std::decay_t<decltype(field)>;
        if constexpr (std::is_same_v<T, int>)
            field = parse_int(value, key);
        else if constexpr (std::is_same_v<T, double>)
            field = parse_double(value, key);
        else
            field = value;
    });
    if (!found)
        throw ConfigError(origin + ": unknown config key '" + key + "'");
}

}  // namespace

void apply_override(NetworkConfig& cfg, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override '" + assignment + "' is not of the form key=value");
    std::string key = trim(assignment.substr(0, eq));
    std::string value = trim(assignment.substr(eq + 1));
    if (key.empty())
        throw ConfigError("override '" + assignment + "' has an empty key");
    set_field(cfg, key, value, "override");
}

NetworkConfig parse_config_string(const std::string& text, const std::string& origin) {
    NetworkConfig cfg;
    std::stringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        set_field(cfg, key, value, origin + ":" + std::to_string(lineno));
    }
    cfg.validate();
    return cfg;
}

NetworkConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_string(buf.str(), path);
}

std::string serialize_config(const NetworkConfig& cfg) {
    std::ostringstream out;
    char buf[64];
    detail::visit_config_fields(cfg, [&](const char* name, const auto& field) {
        using T = std::decay_t<decltype(field)>;
        if constexpr (std::is_same_v<T, int>) {
            out << name << " = " << field << "\n";
        } else if constexpr (std::is_same_v<T, double>) {
            std::snprintf(buf, sizeof(buf), "%.17g", field);
            out << name << " = " << buf << "\n";
        } else {
            out << name << " = " << field << "\n";
        }
    });
    out << "pilot_reuse_sets = ";
    if (cfg.pilot_reuse_sets.empty()) {
        out << "all";
    } else {
        for (std::size_t s = 0; s < cfg.pilot_reuse_sets.size(); ++s) {
            if (s) out << "|";
            for (std::size_t i = 0; i < cfg.pilot_reuse_sets[s].size(); ++i) {
                if (i) out << ",";
                out << cfg.pilot_reuse_sets[s][i];
            }
        }
    }
    out << "\n";
    return out.str();
}

}  // namespace mcpc
