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

#include "hetperf/flow_classes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hetperf {

namespace {

// A CCDF curve viewed as a rate distribution: piecewise-linear between the
// grid points, a virtual segment from (0, 1) down to the first point, and
// an atom at the last level carrying the remaining probability (the link
// cap collects positive mass there).
struct RateDistribution {
    std::vector<double> level;  // l_0 = 0 prepended
    std::vector<double> ccdf;   // q_0 = 1 prepended
    double atom_level = 0.0;
    double atom_mass = 0.0;

    explicit RateDistribution(const CcdfCurve& curve) {
        if (curve.points.empty())
            throw std::invalid_argument("extract_classes: empty CCDF curve");
        level.push_back(0.0);
        ccdf.push_back(1.0);
        double prev_q = 1.0;
        for (const auto& pt : curve.points) {
            const double q = std::clamp(pt.prob, 0.0, prev_q);
            level.push_back(pt.level_mbps);
            ccdf.push_back(q);
            prev_q = q;
        }
        atom_level = level.back();
        atom_mass = ccdf.back();
    }

    // level at CCDF value q (quantile read, q in [0, 1])
    double level_at_ccdf(double q) const {
        if (q <= atom_mass)
            return atom_level;
        for (std::size_t i = level.size() - 1; i > 0; --i) {
            const double q_hi = ccdf[i - 1];
            const double q_lo = ccdf[i];
            if (q <= q_hi && q >= q_lo) {
                if (q_hi == q_lo)
                    return level[i];
                const double t = (q_hi - q) / (q_hi - q_lo);
                return level[i - 1] + t * (level[i] - level[i - 1]);
            }
        }
        return level.back();
    }

    // mean rate conditioned on the CCDF slice q in [q_lo, q_hi]
    double mean_over_slice(double q_lo, double q_hi) const {
        if (!(q_hi > q_lo))
            return level_at_ccdf(q_lo);
        double mass = 0.0;
        double acc = 0.0;
        // atom part
        const double atom_hi = std::min(q_hi, atom_mass);
        if (atom_hi > q_lo) {
            const double m = atom_hi - std::max(q_lo, 0.0);
            mass += m;
            acc += m * atom_level;
        }
        // piecewise-linear part
        for (std::size_t i = 1; i < level.size(); ++i) {
            const double seg_hi = ccdf[i - 1];
            const double seg_lo = ccdf[i];
            if (seg_hi == seg_lo)
                continue;
            const double lo = std::max(seg_lo, std::max(q_lo, atom_mass));
            const double hi = std::min(seg_hi, q_hi);
            if (hi <= lo)
                continue;
            auto lvl = [&](double q) {
                const double t = (seg_hi - q) / (seg_hi - seg_lo);
                return level[i - 1] + t * (level[i] - level[i - 1]);
            };
            const double m = hi - lo;
            mass += m;
            acc += m * 0.5 * (lvl(lo) + lvl(hi));
        }
        return mass > 0.0 ? acc / mass : level_at_ccdf(q_lo);
    }
};

std::vector<FlowClass> classes_from_curves(const CcdfPair& curves, int n_classes,
                                           RateRule rule,
                                           std::vector<std::string>& warnings,
                                           const char* cell_name) {
    if (n_classes < 1)
        throw std::invalid_argument("extract_classes: class count must be >= 1");
    RateDistribution with_peer(curves.with_peer);
    RateDistribution no_peer(curves.no_peer);

    std::vector<FlowClass> classes;
    classes.reserve(static_cast<std::size_t>(n_classes));
    for (int k = 0; k < n_classes; ++k) {
        // class k covers CDF quantiles [k/K, (k+1)/K], i.e. CCDF values
        // [1-(k+1)/K, 1-k/K]
        const double q_hi = 1.0 - static_cast<double>(k) / n_classes;
        const double q_lo = 1.0 - static_cast<double>(k + 1) / n_classes;
        FlowClass c;
        c.p = 1.0 / n_classes;
        if (rule == RateRule::Mean) {
            c.rate_with_peer_mbps = with_peer.mean_over_slice(q_lo, q_hi);
            c.rate_no_peer_mbps = no_peer.mean_over_slice(q_lo, q_hi);
        } else {
            c.rate_with_peer_mbps = with_peer.level_at_ccdf(q_lo);
            c.rate_no_peer_mbps = no_peer.level_at_ccdf(q_lo);
        }
        classes.push_back(c);
    }

    // merge adjacent bins whose rates coincide (cap atom spanning several
    // quantile bins); drop nothing else
    std::vector<FlowClass> merged;
    int merges = 0;
    for (const auto& c : classes) {
        if (!merged.empty()) {
            auto& last = merged.back();
            const double tol = 1e-9;
            if (std::fabs(last.rate_with_peer_mbps - c.rate_with_peer_mbps) <=
                    tol * std::max(1.0, c.rate_with_peer_mbps) &&
                std::fabs(last.rate_no_peer_mbps - c.rate_no_peer_mbps) <=
                    tol * std::max(1.0, c.rate_no_peer_mbps)) {
                last.p += c.p;
                ++merges;
                continue;
            }
        }
        merged.push_back(c);
    }
    if (merges > 0)
        warnings.push_back(std::string(cell_name) + ": merged " +
                           std::to_string(merges) +
                           " quantile bins with identical rates");
    for (auto& c : merged) {
        if (c.rate_with_peer_mbps <= 0.0 || c.rate_no_peer_mbps <= 0.0) {
            warnings.push_back(std::string(cell_name) +
                               ": clamped a zero class rate");
            c.rate_with_peer_mbps = std::max(c.rate_with_peer_mbps, 1e-9);
            c.rate_no_peer_mbps = std::max(c.rate_no_peer_mbps, 1e-9);
        }
    }
    return merged;
}

std::vector<FlowClass> classes_from_samples(std::vector<PeakRateSample>& samples,
                                            int n_classes, RateRule rule,
                                            std::vector<std::string>& warnings,
                                            const char* cell_name) {
    std::vector<FlowClass> classes;
    const std::size_t n = samples.size();
    if (n == 0)
        return classes;
    std::sort(samples.begin(), samples.end(),
              [](const PeakRateSample& a, const PeakRateSample& b) {
                  if (a.rate_with_peer_mbps != b.rate_with_peer_mbps)
                      return a.rate_with_peer_mbps < b.rate_with_peer_mbps;
                  return a.rate_no_peer_mbps < b.rate_no_peer_mbps;
              });
    for (int k = 0; k < n_classes; ++k) {
        const std::size_t lo = n * static_cast<std::size_t>(k) / n_classes;
        const std::size_t hi = n * static_cast<std::size_t>(k + 1) / n_classes;
        if (hi <= lo) {
            warnings.push_back(std::string(cell_name) + ": empty quantile bin removed");
            continue;
        }
        FlowClass c;
        c.p = static_cast<double>(hi - lo) / static_cast<double>(n);
        if (rule == RateRule::Mean) {
            double s1 = 0.0, s0 = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                s1 += samples[i].rate_with_peer_mbps;
                s0 += samples[i].rate_no_peer_mbps;
            }
            c.rate_with_peer_mbps = s1 / static_cast<double>(hi - lo);
            c.rate_no_peer_mbps = s0 / static_cast<double>(hi - lo);
        } else {
            double m1 = 0.0, m0 = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                m1 = std::max(m1, samples[i].rate_with_peer_mbps);
                m0 = std::max(m0, samples[i].rate_no_peer_mbps);
            }
            c.rate_with_peer_mbps = m1;
            c.rate_no_peer_mbps = m0;
        }
        classes.push_back(c);
    }
    // same atom-merge rule as the curve-based extraction
    std::vector<FlowClass> merged;
    int merges = 0;
    for (const auto& c : classes) {
        if (!merged.empty()) {
            auto& last = merged.back();
            const double tol = 1e-9;
            if (std::fabs(last.rate_with_peer_mbps - c.rate_with_peer_mbps) <=
                    tol * std::max(1.0, c.rate_with_peer_mbps) &&
                std::fabs(last.rate_no_peer_mbps - c.rate_no_peer_mbps) <=
                    tol * std::max(1.0, c.rate_no_peer_mbps)) {
                last.p += c.p;
                ++merges;
                continue;
            }
        }
        merged.push_back(c);
    }
    if (merges > 0)
        warnings.push_back(std::string(cell_name) + ": merged " +
                           std::to_string(merges) +
                           " quantile bins with identical rates");
    return merged;
}

}  // namespace

FlowClassSet extract_classes(const CcdfPair& macro_curves,
                             const std::optional<CcdfPair>& small_curves,
                             int macro_classes, int small_classes,
                             RateRule rule, const CoverageSplit& split) {
    FlowClassSet set;
    set.split = split;
    set.macro = classes_from_curves(macro_curves, macro_classes, rule,
                                    set.warnings, "macro");
    if (small_curves)
        set.small = classes_from_curves(*small_curves, small_classes, rule,
                                        set.warnings, "small");
    return set;
}

FlowClassSet monte_carlo_classes(const Scenario& sc, int macro_classes,
                                 int small_classes, std::int64_t n_samples,
                                 std::uint64_t seed, RateRule rule, int jobs) {
    if (macro_classes < 1 || small_classes < 1)
        throw std::invalid_argument("monte_carlo_classes: class counts must be >= 1");
    PeakRateSampleSet sampled = sample_peak_rates(sc, n_samples, seed, jobs);
    if (sampled.samples.empty())
        throw std::runtime_error("monte_carlo_classes: no samples inside the disk");

    std::vector<PeakRateSample> macro, small;
    for (const auto& s : sampled.samples)
        (s.cell == CellTag::Macro ? macro : small).push_back(s);

    FlowClassSet set;
    set.split.macro_mass = static_cast<double>(macro.size()) / sampled.draws;
    set.split.small_mass = static_cast<double>(small.size()) / sampled.draws;
    set.macro = classes_from_samples(macro, macro_classes, rule, set.warnings, "macro");
    if (sc.has_active_small_cell())
        set.small = classes_from_samples(small, small_classes, rule, set.warnings, "small");
    return set;
}

}  // namespace hetperf
