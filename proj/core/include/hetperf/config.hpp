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

#ifndef HETPERF_CONFIG_HPP
#define HETPERF_CONFIG_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetperf/network_model.hpp"

namespace hetperf {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Full run configuration. Defaults encode the reference parameter set
/// (1 km hexagonal grid, 46/30 dBm macro/small powers, 20 MHz, 2 Mbit
/// flows, hotspot at cell edge). Angles are configured in units of pi.
struct Config {
    // [network]
    double delta_km = 1.0;
    double cell_radius_km = 0.0;  // 0 = equal-area disk radius
    double macro_power_dbm = 46.0;
    double macro_antenna_gain_db = 18.0;
    double macro_pathloss_const_db = 151.0;
    double macro_pathloss_slope_db_per_decade = 37.6;
    double alpha = 1.0;
    double noise_figure_db = 9.0;
    double noise_power_dbm =
        std::numeric_limits<double>::quiet_NaN();  // NaN = thermal + NF
    std::string omega_mode = "printed";            // printed | calibrated

    // [hotspot]
    double r_h_km = 0.5;
    double theta_h_pi = 1.0 / 3.0;
    double spread_km = 0.2;

    // [small_cell]
    bool small_cell_enabled = true;
    double small_power_dbm = 30.0;
    double small_antenna_gain_db = 6.0;
    double small_pathloss_const_db = 148.0;
    // The closed-form analytics require this to equal the macro slope;
    // a different value restricts the run to the Monte-Carlo paths.
    double small_pathloss_slope_db_per_decade = 37.6;
    double r_s_km = 0.5;
    double theta_s_pi = 1.0 / 3.0;

    // [link]
    double k1 = 0.85;
    double k2 = 1.9;
    double bandwidth_mhz = 20.0;
    double eta0_mbps = 98.0;

    // [traffic]
    double lambda_tot = 1.0;
    double file_size_mbit = 2.0;
    int classes_macro = 10;
    int classes_small = 10;
    std::string rate_rule = "mean";  // mean | max

    // [sweep]
    double r_h_min_km = 0.05;
    double r_h_max_km = 0.5;
    int r_h_steps = 10;
    std::vector<double> offsets_m = {0.0, 60.0, 120.0};
    double lambda_min = 0.25;
    double lambda_max = 2.0;
    int lambda_steps = 8;
    int ccdf_levels = 200;
    double ccdf_level_min_mbps = 0.1;

    // [sim]
    std::uint64_t seed = 12345;
    std::int64_t events = 1000000;
    std::int64_t warmup_events = -1;  // -1 = 20% of events
    int replications = 10;
    std::int64_t guard_max_flows = 200000;
    std::int64_t mc_samples = 1000000;

    // NaN-tolerant equality ("auto" sentinel fields compare equal);
    // implemented as canonical-serialization equality
    bool operator==(const Config& other) const;

    /// Range/consistency checks beyond per-key parsing.
    void validate() const;
};

/// Parse configuration text (INI-style sections). Unknown sections or
/// keys, duplicates, and malformed values raise ConfigError with
/// origin:line positions.
Config parse_config(const std::string& text, const std::string& origin = "<string>");

/// Load a config from an INI file, or from a run manifest (JSON) whose
/// embedded resolved config and seed are used.
Config load_config_file(const std::string& path);

/// Canonical serialization; parse_config(serialize_config(c)) == c.
std::string serialize_config(const Config& cfg);

/// The shipped reference preset (identical to a default-constructed
/// Config).
Config reference_preset();

/// Scenario with the small cell as configured (disabled => macro only).
Scenario base_scenario(const Config& cfg);

/// Scenario with the small cell removed.
Scenario baseline_scenario(const Config& cfg);

/// Scenario with the small cell displaced radially by `offset_m` meters
/// from the hotspot center (theta_s = theta_h).
Scenario offset_scenario(const Config& cfg, double offset_m);

/// Level grid for CCDF evaluation from the config.
std::vector<double> ccdf_level_grid(const Config& cfg);

}  // namespace hetperf

#endif  // HETPERF_CONFIG_HPP
