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

#ifndef HETPERF_NETWORK_MODEL_HPP
#define HETPERF_NETWORK_MODEL_HPP

#include <optional>
#include <vector>

#include "hetperf/link_layer.hpp"

namespace hetperf {

enum class CellTag { Macro, Small };

/// Interference regime for the small cell (and for macro-side class
/// extraction): WithPeer keeps the other cell's downlink active,
/// WithoutPeer removes it.
enum class Regime { WithPeer, WithoutPeer };

/// Source for the lattice constant omega(b) in the closed-form
/// interference factor. Printed is the zeta-product expression;
/// Calibrated replaces it by a truncated hexagonal lattice sum.
enum class OmegaMode { Printed, Calibrated };

struct SmallCell {
    double radius_km = 0.0;    // R_s, distance from the macro site
    double theta_rad = 0.0;    // theta_s
    double power_ratio = 0.0;  // kappa = P_s / P, effective powers
    // Optional separate half pathloss exponent for the small-cell link.
    // Only the Monte-Carlo paths accept a value different from the macro
    // one; the closed forms require a common exponent.
    std::optional<double> half_exponent;
};

struct Hotspot {
    double radius_km = 0.5;   // R_h
    double theta_rad = 0.0;   // theta_h
    double spread_km = 0.2;   // A, Gaussian std dev
};

/// Immutable description of one network + traffic geometry. Distances in
/// km, powers in linear mW with antenna gains and pathloss constants
/// already folded in (so received power at distance d is P * d^{-2b}).
struct Scenario {
    double inter_site_km = 1.0;        // delta
    double cell_radius_km = 0.0;       // R; <= 0 means "equal-area default"
    double macro_power_mw = 1.0;       // P
    double half_exponent = 1.88;       // b (2b is the pathloss exponent)
    double interferer_load = 1.0;      // alpha in [0, 1]
    double noise_power_mw = 0.0;       // P_N
    std::optional<SmallCell> small_cell;
    Hotspot hotspot;
    LinkCurve link;
    OmegaMode omega_mode = OmegaMode::Printed;
    double omega_scale = 1.0;          // validation hook; leave at 1

    /// Effective cell radius: configured value, or delta*sqrt(sqrt(3)/(2pi))
    /// (disk with the same area as the hexagon) when unset.
    double radius() const;

    /// Half exponent of the small-cell link (falls back to the macro one).
    double small_half_exponent() const;

    /// True when the small cell exists with power_ratio > 0.
    bool has_active_small_cell() const;

    /// Throws std::invalid_argument when any invariant is violated.
    void validate() const;

    /// Throws when the small-cell exponent differs from the macro one;
    /// the closed-form analytics call this before evaluating anything.
    void require_common_exponent() const;
};

/// Distance from the point (r, theta) to the small cell. Requires a
/// configured small cell.
double small_cell_distance(double r, double theta, const Scenario& sc);

/// Hotspot measure density per dr dtheta (Gaussian around the hotspot
/// center times the radial Jacobian).
double traffic_density(double r, double theta, const Scenario& sc);

/// RSRP-based association; ties go to the macrocell.
CellTag associate(double r, double theta, const Scenario& sc);

/// omega(b) = 3^{-b} zeta(b) (zeta(b,1/3) - zeta(b,2/3)).
double omega_printed(double b);

/// Truncated hexagonal lattice sum (1/6) sum_{sites within rings}
/// |site|^{-2b} in units of delta; converges to omega_printed as
/// rings grows.
double omega_calibrated(double b, int rings = 30);

/// The omega value a scenario actually uses (mode + test-hook scale).
double omega_in_effect(const Scenario& sc);

/// Closed-form macro-network interference-plus-noise factor g(r), valid
/// for 0 <= r < delta. Strictly increasing in r when alpha > 0 or
/// noise > 0.
double g_factor(double r, const Scenario& sc);

/// Hexagonal lattice oracle for g: explicit sum over interfering sites
/// within `rings` rings around the origin (origin site excluded).
double g_bruteforce(double r, double theta, int rings, const Scenario& sc);

/// Inverse of g on [0, R], saturating: returns R for y > g(R).
double g_inverse(double y, const Scenario& sc);

/// SINR of a macro-served user at (r, theta); includes the small-cell
/// interference term when a small cell is active.
double sinr_macro(double r, double theta, const Scenario& sc);

/// SINR of a small-cell-served user at (r, theta). WithoutPeer removes
/// the serving macro's contribution from the interference.
double sinr_small(double r, double theta, const Scenario& sc,
                  Regime regime = Regime::WithPeer);

/// Interfering macro site positions (km) within `rings` hexagonal rings.
std::vector<std::pair<double, double>> hex_sites(int rings, double delta_km);

/// Precomputed closed-form g for hot paths: caches omega and the scenario
/// constants so repeated evaluations avoid the zeta computations.
class GFactorModel {
public:
    explicit GFactorModel(const Scenario& sc);

    double operator()(double r) const;
    /// Saturating inverse on [0, R] (returns R when y > g(R)).
    double inverse(double y) const;
    double at_cell_edge() const { return g_edge_; }
    double omega() const { return omega_; }

private:
    double delta_;
    double two_b_;
    double bracket_const_;   // omega - 1
    double curvature_;       // (1 - b)^2
    double six_alpha_;
    double noise_over_power_;
    double radius_;
    double g_edge_;
    double omega_;
};

}  // namespace hetperf

#endif  // HETPERF_NETWORK_MODEL_HPP
