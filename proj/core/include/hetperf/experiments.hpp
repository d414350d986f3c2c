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

#ifndef HETPERF_EXPERIMENTS_HPP
#define HETPERF_EXPERIMENTS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hetperf/config.hpp"
#include "hetperf/csv.hpp"
#include "hetperf/dynamic_analytics.hpp"
#include "hetperf/flow_classes.hpp"
#include "hetperf/simulator.hpp"
#include "hetperf/static_analysis.hpp"

namespace hetperf {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct RunOptions {
    std::filesystem::path out_dir = "out";
    std::optional<std::uint64_t> seed;  // overrides the config seed
    bool simulate = false;
    int jobs = 1;
    bool plots = false;
};

struct RunResult {
    std::vector<std::string> files;  // relative to out_dir, manifest included
    std::vector<std::string> warnings;
};

/// Curve/class/report serializations (the stable CSV schemas).
csvio::Table ccdf_to_table(const CcdfCurve& curve);
csvio::Table classes_to_table(const FlowClassSet& classes);
csvio::Table perf_to_table(const PerfReport& report);
csvio::Table sim_stats_to_table(const SimStats& stats);

/// Build the flow-class inputs of the dynamic model for one scenario
/// (closed-form curves discretized into quantile classes).
FlowClassSet classes_for_scenario(const Config& cfg, const Scenario& sc);

/// Throughput CCDFs of the benchmark and every positioning offset.
RunResult cmd_static_ccdf(const Config& cfg, const RunOptions& opts);

/// Static mean peak throughput versus the hotspot radius for the baseline
/// and every positioning offset.
RunResult cmd_sweep_hotspot(const Config& cfg, const RunOptions& opts);

/// Traffic shares absorbed by each cell versus the positioning offset.
RunResult cmd_absorption(const Config& cfg, const RunOptions& opts);

/// Flow-level sweep over the total arrival intensity: loads, mean flow
/// counts and both throughput definitions, optionally validated by
/// simulation.
RunResult cmd_dynamic(const Config& cfg, const RunOptions& opts);

// ----------------------------------------------------------------------
// validation suite

struct ValidateOptions {
    // Negative-control hook: scales the closed-form lattice constant so a
    // corrupted value demonstrably fails the interference check.
    double omega_scale = 1.0;
    // Reduced sizes for quick runs (0 = use the config values).
    std::int64_t mc_samples_override = 0;
    std::int64_t sim_events_override = 0;
};

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string details;
};

struct ValidationReport {
    bool all_pass = false;
    std::vector<ValidationCheck> checks;
};

/// Oracle suites: closed-form interference vs lattice, CCDFs vs Monte
/// Carlo, loads vs fixed point vs simulation, class extraction vs the
/// position oracle. Writes validation.json into out_dir.
ValidationReport cmd_validate(const Config& cfg, const RunOptions& opts,
                              const ValidateOptions& vopts = {});

std::string validation_to_json(const ValidationReport& report);

}  // namespace hetperf

#endif  // HETPERF_EXPERIMENTS_HPP
