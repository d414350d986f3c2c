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

#ifndef HETPERF_STATIC_ANALYSIS_HPP
#define HETPERF_STATIC_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "hetperf/network_model.hpp"

namespace hetperf {

struct CcdfPoint {
    double level_mbps;
    double prob;
    double stderr_est;  // NaN for closed-form curves
};

/// Sampled complementary CDF of the per-position peak throughput for one
/// cell under one interference regime. Probabilities are non-increasing in
/// the level and identically zero above the link cap eta0.
struct CcdfCurve {
    CellTag cell = CellTag::Macro;
    Regime regime = Regime::WithPeer;
    std::vector<CcdfPoint> points;

    /// Curve value at an arbitrary level: 1 at 0+, linear interpolation on
    /// the grid, the last grid probability up to eta0, 0 beyond.
    double value_at(double level_mbps, double eta0_mbps) const;
};

/// Hotspot-measure mass served by each cell over the studied disk.
struct CoverageSplit {
    double macro_mass = 0.0;  // S
    double small_mass = 0.0;  // S~
    double total() const { return macro_mass + small_mass; }
};

struct MeanPeak {
    double macro_mbps = 0.0;
    double small_mbps = 0.0;
    double overall_mbps = 0.0;
};

/// n log-spaced levels over [lmin, lmax] (last point exactly lmax).
std::vector<double> log_level_grid(double lmin, double lmax, int n);

/// Hotspot mass of the macro / small association regions (Definition-2
/// normalizers).
CoverageSplit coverage_split(const Scenario& sc);

/// Share of hotspot traffic mass served by the small cell, S~/(S+S~).
double absorption_coefficient(const Scenario& sc);

/// Throughput CCDF of a macro-only deployment (closed form: radial Bessel
/// integral). Ignores any configured small cell; this is the benchmark
/// scenario curve for the same hotspot.
double ccdf_macro_only(double level_mbps, const Scenario& sc);

/// Throughput CCDF of the macrocell with a deployed small cell.
/// WithPeer is the full expression (small-cell interference active);
/// WithoutPeer keeps the association split but removes the small-cell
/// interference term (used for flow-class extraction).
double ccdf_macro_with_sc(double level_mbps, const Scenario& sc,
                          Regime regime = Regime::WithPeer);

/// Throughput CCDF of the small cell. WithoutPeer removes the macro
/// contribution from the interference.
double ccdf_small(double level_mbps, const Scenario& sc, Regime regime);

/// Hotspot-weighted mean of the per-position peak throughput with both
/// cells active, per serving cell and combined.
MeanPeak mean_peak_throughput(const Scenario& sc);

/// Closed-form curve over a level grid. CellTag::Macro + WithPeer is the
/// full macro expression; Macro + WithoutPeer the interference-free macro
/// variant (equals the macro-only curve when no small cell is active).
CcdfCurve ccdf_curve(const Scenario& sc, CellTag cell, Regime regime,
                     const std::vector<double>& levels);

/// Proposition-style macro-only benchmark curve on a grid.
CcdfCurve ccdf_curve_macro_only(const Scenario& sc, const std::vector<double>& levels);

/// One sampled UE position: serving cell and its peak rate under both
/// interference regimes.
struct PeakRateSample {
    CellTag cell;
    double rate_no_peer_mbps;
    double rate_with_peer_mbps;
};

struct PeakRateSampleSet {
    std::vector<PeakRateSample> samples;  // accepted draws, in draw order
    std::int64_t draws = 0;               // total Gaussian draws
};

/// Draw n positions from the hotspot Gaussian, keep those inside the disk
/// of radius R, and evaluate both peak rates at each. Deterministic per
/// seed; shards merge by index so the result is independent of `jobs`.
PeakRateSampleSet sample_peak_rates(const Scenario& sc, std::int64_t n_samples,
                                    std::uint64_t seed, int jobs = 1);

/// Monte-Carlo estimate of the throughput CCDFs and the coverage split.
struct McCcdf {
    CcdfCurve macro_with_peer;
    CcdfCurve macro_without_peer;
    std::optional<CcdfCurve> small_with_peer;
    std::optional<CcdfCurve> small_without_peer;
    CoverageSplit split;
    std::int64_t draws = 0;
    std::int64_t macro_count = 0;
    std::int64_t small_count = 0;
};

McCcdf monte_carlo_ccdf(const Scenario& sc, std::int64_t n_samples,
                        std::uint64_t seed, const std::vector<double>& levels,
                        int jobs = 1);

}  // namespace hetperf

#endif  // HETPERF_STATIC_ANALYSIS_HPP
