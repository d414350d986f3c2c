/*
 * Copyright 2026 the hetperf authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hetperf/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hetperf/csv.hpp"
#include "hetperf/static_analysis.hpp"

namespace hetperf {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double_value(const std::string& origin, int line, const std::string& v) {
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last)
        fail(origin, line, "expected a number, got '" + v + "'");
    return out;
}

std::int64_t parse_int_value(const std::string& origin, int line, const std::string& v) {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        fail(origin, line, "expected an integer, got '" + v + "'");
    return out;
}

bool parse_bool_value(const std::string& origin, int line, const std::string& v) {
    if (v == "true")
        return true;
    if (v == "false")
        return false;
    fail(origin, line, "expected true/false, got '" + v + "'");
}

std::vector<double> parse_list_value(const std::string& origin, int line,
                                     const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double_value(origin, line, trim(item)));
    if (out.empty())
        fail(origin, line, "expected a comma-separated list of numbers");
    return out;
}

using Setter = std::function<void(Config&, const std::string& origin, int line,
                                  const std::string& value)>;

#define DOUBLE_KEY(field)                                                     \
    [](Config& c, const std::string& o, int l, const std::string& v) {        \
        c.field = parse_double_value(o, l, v);                                \
    }
#define INT_KEY(field)                                                        \
    [](Config& c, const std::string& o, int l, const std::string& v) {        \
        c.field = static_cast<decltype(c.field)>(parse_int_value(o, l, v));   \
    }

const std::map<std::string, std::map<std::string, Setter>>& key_table() {
    static const std::map<std::string, std::map<std::string, Setter>> table = {
        {"network",
         {
             {"delta_km", DOUBLE_KEY(delta_km)},
             {"cell_radius_km",
              [](Config& c, const std::string& o, int l, const std::string& v) {
                  c.cell_radius_km = v == "auto" ? 0.0 : parse_double_value(o, l, v);
              }},
             {"macro_power_dbm", DOUBLE_KEY(macro_power_dbm)},
             {"macro_antenna_gain_db", DOUBLE_KEY(macro_antenna_gain_db)},
             {"macro_pathloss_const_db", DOUBLE_KEY(macro_pathloss_const_db)},
             {"macro_pathloss_slope_db_per_decade",
              DOUBLE_KEY(macro_pathloss_slope_db_per_decade)},
             {"alpha", DOUBLE_KEY(alpha)},
             {"noise_figure_db", DOUBLE_KEY(noise_figure_db)},
             {"noise_power_dbm",
              [](Config& c, const std::string& o, int l, const std::string& v) {
                  c.noise_power_dbm = v == "auto"
                                          ? std::numeric_limits<double>::quiet_NaN()
                                          : parse_double_value(o, l, v);
              }},
             {"omega_mode",
              [](Config& c, const std::string& o, int l, const std::string& v) {
                  if (v != "printed" && v != "calibrated")
                      fail(o, l, "omega_mode must be printed or calibrated");
                  c.omega_mode = v;
              }},
         }},
        {"hotspot",
         {
             {"r_h_km", DOUBLE_KEY(r_h_km)},
             {"theta_h_pi", DOUBLE_KEY(theta_h_pi)},
             {"spread_km", DOUBLE_KEY(spread_km)},
         }},
        {"small_cell",
         {
             {"enabled",
              [](Config& c, const std::string& o, int l, const std::string& v) {
                  c.small_cell_enabled = parse_bool_value(o, l, v);
              }},
             {"power_dbm", DOUBLE_KEY(small_power_dbm)},
             {"antenna_gain_db", DOUBLE_KEY(small_antenna_gain_db)},
             {"pathloss_const_db", DOUBLE_KEY(small_pathloss_const_db)},
             {"pathloss_slope_db_per_decade",
              DOUBLE_KEY(small_pathloss_slope_db_per_decade)},
             {"r_s_km", DOUBLE_KEY(r_s_km)},
             {"theta_s_pi", DOUBLE_KEY(theta_s_pi)},
         }},
        {"link",
         {
             {"k1", DOUBLE_KEY(k1)},
             {"k2", DOUBLE_KEY(k2)},
             {"bandwidth_mhz", DOUBLE_KEY(bandwidth_mhz)},
             {"eta0_mbps", DOUBLE_KEY(eta0_mbps)},
         }},
        {"traffic",
         {
             {"lambda_tot", DOUBLE_KEY(lambda_tot)},
             {"file_size_mbit", DOUBLE_KEY(file_size_mbit)},
             {"classes_macro", INT_KEY(classes_macro)},
             {"classes_small", INT_KEY(classes_small)},
             {"rate_rule",
              [](Config& c, const std::string& o, int l, const std::string& v) {
                  if (v != "mean" && v != "max")
                      fail(o, l, "rate_rule must be mean or max");
                  c.rate_rule = v;
              }},
         }},
        {"sweep",
         {
             {"r_h_min_km", DOUBLE_KEY(r_h_min_km)},
             {"r_h_max_km", DOUBLE_KEY(r_h_max_km)},
             {"r_h_steps", INT_KEY(r_h_steps)},
             {"offsets_m",
              [](Config& c, const std::string& o, int l, const std::string& v) {
                  c.offsets_m = parse_list_value(o, l, v);
              }},
             {"lambda_min", DOUBLE_KEY(lambda_min)},
             {"lambda_max", DOUBLE_KEY(lambda_max)},
             {"lambda_steps", INT_KEY(lambda_steps)},
             {"ccdf_levels", INT_KEY(ccdf_levels)},
             {"ccdf_level_min_mbps", DOUBLE_KEY(ccdf_level_min_mbps)},
         }},
        {"sim",
         {
             {"seed", INT_KEY(seed)},
             {"events", INT_KEY(events)},
             {"warmup_events",
              [](Config& c, const std::string& o, int l, const std::string& v) {
                  c.warmup_events = v == "auto" ? -1 : parse_int_value(o, l, v);
              }},
             {"replications", INT_KEY(replications)},
             {"guard_max_flows", INT_KEY(guard_max_flows)},
             {"mc_samples", INT_KEY(mc_samples)},
         }},
    };
    return table;
}

#undef DOUBLE_KEY
#undef INT_KEY

}  // namespace

bool Config::operator==(const Config& other) const {
    return serialize_config(*this) == serialize_config(other);
}

void Config::validate() const {
    auto bad = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    if (!(delta_km > 0.0))
        bad("delta_km must be > 0");
    if (!(macro_pathloss_slope_db_per_decade > 20.0))
        bad("macro pathloss slope must exceed 20 dB/decade (b > 1)");
    if (small_cell_enabled && !(small_pathloss_slope_db_per_decade > 20.0))
        bad("small-cell pathloss slope must exceed 20 dB/decade (b > 1)");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        bad("alpha must be in [0, 1]");
    if (!(spread_km > 0.0))
        bad("hotspot spread_km must be > 0");
    if (!(file_size_mbit > 0.0))
        bad("file_size_mbit must be > 0");
    if (classes_macro < 1 || classes_small < 1)
        bad("class counts must be >= 1");
    if (ccdf_levels < 2)
        bad("ccdf_levels must be >= 2");
    if (!(ccdf_level_min_mbps > 0.0) || !(ccdf_level_min_mbps < eta0_mbps))
        bad("ccdf_level_min_mbps must be in (0, eta0)");
    if (r_h_steps < 1 || lambda_steps < 1)
        bad("sweep steps must be >= 1");
    if (events <= 0 || replications < 1 || guard_max_flows <= 0 || mc_samples < 1)
        bad("sim block values out of range");
    const double macro_eff =
        macro_power_dbm + macro_antenna_gain_db - macro_pathloss_const_db;
    const double small_eff =
        small_power_dbm + small_antenna_gain_db - small_pathloss_const_db;
    if (small_cell_enabled && small_eff > macro_eff)
        bad("small-cell effective power exceeds the macro one (kappa > 1)");
}

Config parse_config(const std::string& text, const std::string& origin) {
    Config cfg;
    std::set<std::pair<std::string, std::string>> seen;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty() || line[0] == ';')
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(origin, line_no, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (key_table().find(section) == key_table().end())
                fail(origin, line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(origin, line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            fail(origin, line_no, "key '" + key + "' outside any section");
        const auto& sec = key_table().at(section);
        const auto it = sec.find(key);
        if (it == sec.end())
            fail(origin, line_no, "unknown key '" + key + "' in [" + section + "]");
        if (!seen.insert({section, key}).second)
            fail(origin, line_no, "duplicate key '" + key + "' in [" + section + "]");
        it->second(cfg, origin, line_no, value);
    }
    cfg.validate();
    return cfg;
}

Config load_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        // run manifest: use the embedded resolved configuration and seed
        try {
            const auto manifest = nlohmann::json::parse(text);
            Config cfg = parse_config(manifest.at("config").get<std::string>(),
                                      path + " (embedded config)");
            if (manifest.contains("seed"))
                cfg.seed = manifest.at("seed").get<std::uint64_t>();
            return cfg;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("cannot read manifest " + path + ": " + e.what());
        }
    }
    return parse_config(text, path);
}

std::string serialize_config(const Config& cfg) {
    using csvio::format_double;
    using csvio::format_int;
    std::string out;
    auto kv = [&out](const std::string& k, const std::string& v) {
        out += k;
        out += " = ";
        out += v;
        out.push_back('\n');
    };
    out += "[network]\n";
    kv("delta_km", format_double(cfg.delta_km));
    kv("cell_radius_km",
       cfg.cell_radius_km > 0.0 ? format_double(cfg.cell_radius_km) : "auto");
    kv("macro_power_dbm", format_double(cfg.macro_power_dbm));
    kv("macro_antenna_gain_db", format_double(cfg.macro_antenna_gain_db));
    kv("macro_pathloss_const_db", format_double(cfg.macro_pathloss_const_db));
    kv("macro_pathloss_slope_db_per_decade",
       format_double(cfg.macro_pathloss_slope_db_per_decade));
    kv("alpha", format_double(cfg.alpha));
    kv("noise_figure_db", format_double(cfg.noise_figure_db));
    kv("noise_power_dbm",
       std::isnan(cfg.noise_power_dbm) ? "auto" : format_double(cfg.noise_power_dbm));
    kv("omega_mode", cfg.omega_mode);
    out += "\n[hotspot]\n";
    kv("r_h_km", format_double(cfg.r_h_km));
    kv("theta_h_pi", format_double(cfg.theta_h_pi));
    kv("spread_km", format_double(cfg.spread_km));
    out += "\n[small_cell]\n";
    kv("enabled", cfg.small_cell_enabled ? "true" : "false");
    kv("power_dbm", format_double(cfg.small_power_dbm));
    kv("antenna_gain_db", format_double(cfg.small_antenna_gain_db));
    kv("pathloss_const_db", format_double(cfg.small_pathloss_const_db));
    kv("pathloss_slope_db_per_decade",
       format_double(cfg.small_pathloss_slope_db_per_decade));
    kv("r_s_km", format_double(cfg.r_s_km));
    kv("theta_s_pi", format_double(cfg.theta_s_pi));
    out += "\n[link]\n";
    kv("k1", format_double(cfg.k1));
    kv("k2", format_double(cfg.k2));
    kv("bandwidth_mhz", format_double(cfg.bandwidth_mhz));
    kv("eta0_mbps", format_double(cfg.eta0_mbps));
    out += "\n[traffic]\n";
    kv("lambda_tot", format_double(cfg.lambda_tot));
    kv("file_size_mbit", format_double(cfg.file_size_mbit));
    kv("classes_macro", format_int(cfg.classes_macro));
    kv("classes_small", format_int(cfg.classes_small));
    kv("rate_rule", cfg.rate_rule);
    out += "\n[sweep]\n";
    kv("r_h_min_km", format_double(cfg.r_h_min_km));
    kv("r_h_max_km", format_double(cfg.r_h_max_km));
    kv("r_h_steps", format_int(cfg.r_h_steps));
    {
        std::string list;
        for (std::size_t i = 0; i < cfg.offsets_m.size(); ++i) {
            if (i)
                list += ",";
            list += format_double(cfg.offsets_m[i]);
        }
        kv("offsets_m", list);
    }
    kv("lambda_min", format_double(cfg.lambda_min));
    kv("lambda_max", format_double(cfg.lambda_max));
    kv("lambda_steps", format_int(cfg.lambda_steps));
    kv("ccdf_levels", format_int(cfg.ccdf_levels));
    kv("ccdf_level_min_mbps", format_double(cfg.ccdf_level_min_mbps));
    out += "\n[sim]\n";
    kv("seed", format_int(static_cast<std::int64_t>(cfg.seed)));
    kv("events", format_int(cfg.events));
    kv("warmup_events",
       cfg.warmup_events < 0 ? "auto" : format_int(cfg.warmup_events));
    kv("replications", format_int(cfg.replications));
    kv("guard_max_flows", format_int(cfg.guard_max_flows));
    kv("mc_samples", format_int(cfg.mc_samples));
    return out;
}

Config reference_preset() {
    return Config{};
}

namespace {

Scenario scenario_common(const Config& cfg) {
    cfg.validate();
    Scenario sc;
    sc.inter_site_km = cfg.delta_km;
    sc.cell_radius_km = cfg.cell_radius_km;
    const double macro_eff =
        cfg.macro_power_dbm + cfg.macro_antenna_gain_db - cfg.macro_pathloss_const_db;
    sc.macro_power_mw = std::pow(10.0, macro_eff / 10.0);
    sc.half_exponent = cfg.macro_pathloss_slope_db_per_decade / 20.0;
    sc.interferer_load = cfg.alpha;
    if (std::isnan(cfg.noise_power_dbm)) {
        const double thermal_dbm =
            -174.0 + 10.0 * std::log10(cfg.bandwidth_mhz * 1e6) + cfg.noise_figure_db;
        sc.noise_power_mw = std::pow(10.0, thermal_dbm / 10.0);
    } else {
        sc.noise_power_mw = std::pow(10.0, cfg.noise_power_dbm / 10.0);
    }
    sc.hotspot.radius_km = cfg.r_h_km;
    sc.hotspot.theta_rad = cfg.theta_h_pi * kPi;
    sc.hotspot.spread_km = cfg.spread_km;
    sc.link.k1 = cfg.k1;
    sc.link.k2 = cfg.k2;
    sc.link.bandwidth_mhz = cfg.bandwidth_mhz;
    sc.link.eta0_mbps = cfg.eta0_mbps;
    sc.omega_mode =
        cfg.omega_mode == "calibrated" ? OmegaMode::Calibrated : OmegaMode::Printed;
    return sc;
}

SmallCell small_cell_common(const Config& cfg) {
    SmallCell cell;
    const double macro_eff =
        cfg.macro_power_dbm + cfg.macro_antenna_gain_db - cfg.macro_pathloss_const_db;
    const double small_eff =
        cfg.small_power_dbm + cfg.small_antenna_gain_db - cfg.small_pathloss_const_db;
    cell.power_ratio = std::pow(10.0, (small_eff - macro_eff) / 10.0);
    if (cfg.small_pathloss_slope_db_per_decade !=
        cfg.macro_pathloss_slope_db_per_decade)
        cell.half_exponent = cfg.small_pathloss_slope_db_per_decade / 20.0;
    return cell;
}

}  // namespace

Scenario base_scenario(const Config& cfg) {
    Scenario sc = scenario_common(cfg);
    if (cfg.small_cell_enabled) {
        SmallCell cell = small_cell_common(cfg);
        cell.radius_km = cfg.r_s_km;
        cell.theta_rad = cfg.theta_s_pi * kPi;
        sc.small_cell = cell;
    }
    sc.validate();
    return sc;
}

Scenario baseline_scenario(const Config& cfg) {
    Scenario sc = scenario_common(cfg);
    sc.validate();
    return sc;
}

Scenario offset_scenario(const Config& cfg, double offset_m) {
    Scenario sc = scenario_common(cfg);
    if (!cfg.small_cell_enabled)
        throw ConfigError("offset scenario requested with the small cell disabled");
    SmallCell cell = small_cell_common(cfg);
    cell.radius_km = cfg.r_h_km + offset_m / 1000.0;
    cell.theta_rad = cfg.theta_h_pi * kPi;
    sc.small_cell = cell;
    sc.validate();
    return sc;
}

std::vector<double> ccdf_level_grid(const Config& cfg) {
    return log_level_grid(cfg.ccdf_level_min_mbps, cfg.eta0_mbps, cfg.ccdf_levels);
}

}  // namespace hetperf
