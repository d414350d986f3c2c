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

#ifndef HETPERF_FLOW_CLASSES_HPP
#define HETPERF_FLOW_CLASSES_HPP

#include <optional>
#include <string>
#include <vector>

#include "hetperf/static_analysis.hpp"

namespace hetperf {

enum class RateRule { Mean, Max };

/// One radio-condition class: population share and the two peak rates
/// (peer cell idle / peer cell busy).
struct FlowClass {
    double p = 0.0;
    double rate_no_peer_mbps = 0.0;
    double rate_with_peer_mbps = 0.0;
};

struct FlowClassSet {
    std::vector<FlowClass> macro;  // sorted by rate, increasing
    std::vector<FlowClass> small;
    CoverageSplit split;
    std::vector<std::string> warnings;
};

/// The two curves of one cell under both interference regimes.
struct CcdfPair {
    CcdfCurve no_peer;
    CcdfCurve with_peer;
};

/// Discretize the curves into equal-probability quantile classes of the
/// with-peer rate; the no-peer rate of a class is read at the same
/// quantile positions of the no-peer curve. Adjacent bins with identical
/// rates (the cap atom) are merged.
FlowClassSet extract_classes(const CcdfPair& macro_curves,
                             const std::optional<CcdfPair>& small_curves,
                             int macro_classes, int small_classes,
                             RateRule rule, const CoverageSplit& split);

/// Position-sampling oracle for extract_classes: draws positions, computes
/// both rates per position, bins each cell's samples into with-peer-rate
/// quantiles and averages within bins. Deterministic per seed.
FlowClassSet monte_carlo_classes(const Scenario& sc, int macro_classes,
                                 int small_classes, std::int64_t n_samples,
                                 std::uint64_t seed,
                                 RateRule rule = RateRule::Mean, int jobs = 1);

}  // namespace hetperf

#endif  // HETPERF_FLOW_CLASSES_HPP
