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

#ifndef HETPERF_DYNAMIC_ANALYTICS_HPP
#define HETPERF_DYNAMIC_ANALYTICS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "hetperf/flow_classes.hpp"

namespace hetperf {

/// Offered traffic for the coupled two-cell multi-class PS system.
struct TrafficModel {
    double lambda_tot = 0.0;   // flows/s over the whole system
    double sigma0_mbit = 2.0;  // mean flow size
    FlowClassSet classes;

    void validate() const;
};

/// Raised when the offered traffic has no stationary regime.
class StabilityError : public std::runtime_error {
public:
    explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

struct ArrivalRates {
    std::vector<double> macro;  // lambda_k
    std::vector<double> small;  // lambda-tilde_l
};

/// Per-class Poisson intensities: the total intensity split by coverage
/// share and class proportions.
ArrivalRates arrival_split(const TrafficModel& traffic);

struct CellLoads {
    double rho_macro = 0.0;
    double rho_small = 0.0;
    double p0_macro = 1.0;  // 1 - rho
    double p0_small = 1.0;
};

/// Closed-form loads of the coupled system. Also checks the fixed-point
/// identities the closed form was derived from (residual < 1e-12) and
/// throws StabilityError naming the violated condition when the system
/// is unstable.
CellLoads solve_loads(const TrafficModel& traffic);

/// Fixed-point iteration for the same loads (damped, from zero). Used as
/// an independent oracle for solve_loads.
CellLoads solve_loads_fixed_point(const TrafficModel& traffic,
                                  double damping = 0.5, double tol = 1e-13,
                                  int max_iter = 100000);

/// Stationary probability of the state (n, n_small) under the decoupled
/// product-form approximation; non-integer factorials are evaluated as
/// Gamma(x+1) in log space.
double stationary_prob(const std::vector<int>& n_macro,
                       const std::vector<int>& n_small,
                       const CellLoads& loads, const TrafficModel& traffic);

/// Total stationary mass over all states with |n| <= max_total and
/// |n_small| <= max_total (normalization diagnostic; the approximate form
/// does not integrate to 1 in general). Cost grows combinatorially with
/// the class counts; intended for small systems.
double stationary_normalization(const TrafficModel& traffic,
                                const CellLoads& loads, int max_total);

struct SubClass {
    double lambda = 0.0;
    double rate_mbps = 0.0;
};

/// The 2K/2L-class ordinary PS model obtained by splitting every class
/// into a peer-idle and a peer-busy subclass with Bernoulli weights
/// (1-rho_peer, rho_peer). Its total load per cell equals the coupled
/// load.
struct ExpandedModel {
    std::vector<SubClass> macro;
    std::vector<SubClass> small;
    double rho_macro = 0.0;
    double rho_small = 0.0;
};

ExpandedModel expanded_decoupled_model(const TrafficModel& traffic,
                                       const CellLoads& loads);

struct MeanFlows {
    std::vector<double> macro;  // N_k
    std::vector<double> small;  // N-tilde_l
    double macro_total = 0.0;
    double small_total = 0.0;
};

MeanFlows mean_flows(const TrafficModel& traffic, const CellLoads& loads);

struct ClassPerf {
    double lambda = 0.0;
    double n_mean = 0.0;
    double sojourn_s = 0.0;
    double v_mixture_mbps = 0.0;  // linear interference mixture
    double v_little_mbps = 0.0;   // sigma0 / sojourn (Little's law)
};

struct PerfReport {
    std::vector<ClassPerf> macro;
    std::vector<ClassPerf> small;
    // arrival-rate-weighted aggregates per cell
    double macro_v_mixture_mbps = 0.0;
    double macro_v_little_mbps = 0.0;
    double small_v_mixture_mbps = 0.0;
    double small_v_little_mbps = 0.0;
};

/// Both stationary-throughput definitions per class plus sojourn times.
/// The two definitions disagree (linear vs harmonic mixing of the two
/// interference states); both are reported.
PerfReport class_throughput(const TrafficModel& traffic, const CellLoads& loads);

}  // namespace hetperf

#endif  // HETPERF_DYNAMIC_ANALYTICS_HPP
