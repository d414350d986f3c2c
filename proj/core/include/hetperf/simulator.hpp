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

#ifndef HETPERF_SIMULATOR_HPP
#define HETPERF_SIMULATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hetperf/dynamic_analytics.hpp"

namespace hetperf {

struct SimConfig {
    std::uint64_t seed = 1;
    std::int64_t warmup_events = 0;
    std::int64_t measured_events = 1000000;
    int replications = 10;
    std::int64_t guard_max_flows = 1000000;  // abort threshold on |n| + |n~|

    void validate() const;
};

/// CTMC state: per-class flow counts in both cells.
struct SimState {
    double clock_s = 0.0;
    std::vector<int> macro;
    std::vector<int> small;
};

/// One outgoing transition of the CTMC.
struct Transition {
    CellTag cell;
    bool arrival;  // false = departure
    int cls;
    double rate;
};

/// All non-null transitions out of `state`: class arrivals at their
/// Poisson rates and, for every non-empty class, processor-sharing
/// departures at n_k * eta_k(state) / (|n| * sigma0) where eta_k switches
/// on whether the peer cell is busy.
std::vector<Transition> transition_rates(const SimState& state,
                                         const TrafficModel& traffic);

struct MetricEstimate {
    double mean = 0.0;
    double ci95_halfwidth = 0.0;
};

struct CellSimStats {
    MetricEstimate busy_fraction;          // load estimate
    MetricEstimate total_flows;            // time-averaged |n|
    std::vector<MetricEstimate> class_flows;
    std::vector<double> rep_busy;          // per-replication values
    std::vector<double> rep_total;
    // conservation counters summed over replications (warmup included)
    std::vector<std::int64_t> arrivals;
    std::vector<std::int64_t> departures;
    std::vector<std::int64_t> final_counts;
};

struct SimStats {
    CellSimStats macro;
    CellSimStats small;
    int replications = 0;
    std::int64_t events_per_replication = 0;
    double measured_time_s = 0.0;  // summed over replications
    bool unstable = false;
    std::string instability_note;
};

/// Event-driven simulation of the coupled two-cell multi-class PS system.
/// Deterministic for a fixed seed; replications use independent
/// seed-derived streams. When the state guard trips the run stops and
/// `unstable` is set.
SimStats run_simulation(const TrafficModel& traffic, const SimConfig& config);

}  // namespace hetperf

#endif  // HETPERF_SIMULATOR_HPP
