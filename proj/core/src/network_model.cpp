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

#include "hetperf/network_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hetperf/numerics.hpp"

namespace hetperf {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double Scenario::radius() const {
    if (cell_radius_km > 0.0)
        return cell_radius_km;
    // Disk with the same area as the hexagonal cell of side delta/sqrt(3).
    return inter_site_km * std::sqrt(std::sqrt(3.0) / (2.0 * kPi));
}

double Scenario::small_half_exponent() const {
    if (small_cell && small_cell->half_exponent)
        return *small_cell->half_exponent;
    return half_exponent;
}

bool Scenario::has_active_small_cell() const {
    return small_cell.has_value() && small_cell->power_ratio > 0.0;
}

void Scenario::validate() const {
    if (!(inter_site_km > 0.0))
        throw std::invalid_argument("Scenario: inter-site distance must be > 0");
    const double R = radius();
    if (!(R > 0.0) || !(R < inter_site_km))
        throw std::invalid_argument("Scenario: cell radius must satisfy 0 < R < delta");
    if (!(macro_power_mw > 0.0))
        throw std::invalid_argument("Scenario: macro power must be > 0");
    if (!(half_exponent > 1.0))
        throw std::invalid_argument("Scenario: half exponent b must be > 1");
    if (!(interferer_load >= 0.0) || !(interferer_load <= 1.0))
        throw std::invalid_argument("Scenario: interferer load alpha must be in [0, 1]");
    if (!(noise_power_mw >= 0.0))
        throw std::invalid_argument("Scenario: noise power must be >= 0");
    if (!(hotspot.spread_km > 0.0))
        throw std::invalid_argument("Scenario: hotspot spread A must be > 0");
    if (!(hotspot.radius_km >= 0.0) || !(hotspot.radius_km < R))
        throw std::invalid_argument("Scenario: hotspot center must satisfy 0 <= R_h < R");
    if (small_cell) {
        if (!(small_cell->radius_km >= 0.0) || !(small_cell->radius_km < inter_site_km))
            throw std::invalid_argument("Scenario: small-cell radius must satisfy 0 <= R_s < delta");
        if (!(small_cell->power_ratio >= 0.0) || !(small_cell->power_ratio <= 1.0))
            throw std::invalid_argument("Scenario: power ratio kappa must be in [0, 1]");
        if (small_cell->half_exponent && !(*small_cell->half_exponent > 1.0))
            throw std::invalid_argument("Scenario: small-cell half exponent must be > 1");
    }
    if (!(omega_scale > 0.0))
        throw std::invalid_argument("Scenario: omega scale must be > 0");
    link.validate();
}

void Scenario::require_common_exponent() const {
    if (small_cell && small_cell->half_exponent &&
        *small_cell->half_exponent != half_exponent)
        throw std::invalid_argument(
            "closed-form analytics need a common pathloss exponent for both cells; "
            "the separate small-cell exponent is Monte-Carlo only");
}

double small_cell_distance(double r, double theta, const Scenario& sc) {
    if (!sc.small_cell)
        throw std::invalid_argument("small_cell_distance: no small cell configured");
    const double rs = sc.small_cell->radius_km;
    const double d2 = r * r + rs * rs -
                      2.0 * r * rs * std::cos(theta - sc.small_cell->theta_rad);
    return std::sqrt(std::max(d2, 0.0));
}

double traffic_density(double r, double theta, const Scenario& sc) {
    if (r < 0.0)
        throw std::domain_error("traffic_density: r must be >= 0");
    const double a2 = sc.hotspot.spread_km * sc.hotspot.spread_km;
    const double rh = sc.hotspot.radius_km;
    const double d2 = r * r + rh * rh - 2.0 * r * rh * std::cos(theta - sc.hotspot.theta_rad);
    return std::exp(-d2 / (2.0 * a2)) * r / (2.0 * kPi * a2);
}

CellTag associate(double r, double theta, const Scenario& sc) {
    if (!sc.has_active_small_cell())
        return CellTag::Macro;
    const double d = small_cell_distance(r, theta, sc);
    if (d == 0.0 && r == 0.0)
        return CellTag::Macro;  // degenerate co-location, tie to macro
    const double small_rx = sc.small_cell->power_ratio *
                            std::pow(d, -2.0 * sc.small_half_exponent());
    const double macro_rx = std::pow(r, -2.0 * sc.half_exponent);
    return small_rx > macro_rx ? CellTag::Small : CellTag::Macro;
}

double omega_printed(double b) {
    using numerics::hurwitz_zeta;
    using numerics::riemann_zeta;
    return std::pow(3.0, -b) * riemann_zeta(b) *
           (hurwitz_zeta(b, 1.0 / 3.0) - hurwitz_zeta(b, 2.0 / 3.0));
}

std::vector<std::pair<double, double>> hex_sites(int rings, double delta_km) {
    if (rings < 1)
        throw std::invalid_argument("hex_sites: rings must be >= 1");
    std::vector<std::pair<double, double>> sites;
    sites.reserve(static_cast<std::size_t>(3 * rings * (rings + 1)));
    for (int p = -rings; p <= rings; ++p) {
        for (int q = -rings; q <= rings; ++q) {
            const int ring = std::max({std::abs(p), std::abs(q), std::abs(p + q)});
            if (ring == 0 || ring > rings)
                continue;
            // basis vectors 1 and e^{i pi/3}
            sites.emplace_back(delta_km * (p + 0.5 * q),
                               delta_km * (0.5 * std::sqrt(3.0) * q));
        }
    }
    return sites;
}

double omega_calibrated(double b, int rings) {
    if (rings < 1)
        throw std::invalid_argument("omega_calibrated: rings must be >= 1");
    // sum over the integer quadratic form p^2 + pq + q^2 (squared site
    // distance in units of delta)
    double sum = 0.0;
    for (int p = -rings; p <= rings; ++p) {
        for (int q = -rings; q <= rings; ++q) {
            const int ring = std::max({std::abs(p), std::abs(q), std::abs(p + q)});
            if (ring == 0 || ring > rings)
                continue;
            const double norm2 = static_cast<double>(p) * p +
                                 static_cast<double>(p) * q +
                                 static_cast<double>(q) * q;
            sum += std::pow(norm2, -b);
        }
    }
    return sum / 6.0;
}

double omega_in_effect(const Scenario& sc) {
    const double base = sc.omega_mode == OmegaMode::Printed
                            ? omega_printed(sc.half_exponent)
                            : omega_calibrated(sc.half_exponent);
    return base * sc.omega_scale;
}

GFactorModel::GFactorModel(const Scenario& sc)
    : delta_(sc.inter_site_km),
      two_b_(2.0 * sc.half_exponent),
      bracket_const_(0.0),
      curvature_((1.0 - sc.half_exponent) * (1.0 - sc.half_exponent)),
      six_alpha_(6.0 * sc.interferer_load),
      noise_over_power_(sc.noise_power_mw / sc.macro_power_mw),
      radius_(sc.radius()) {
    omega_ = omega_in_effect(sc);
    bracket_const_ = omega_ - 1.0;
    g_edge_ = (*this)(radius_);
}

double GFactorModel::operator()(double r) const {
    if (r < 0.0 || r >= delta_)
        throw std::domain_error("g_factor: requires 0 <= r < delta");
    if (r == 0.0)
        return 0.0;
    const double u = r / delta_;
    const double u2 = u * u;
    const double u_pow = std::pow(u, two_b_);
    const double bracket =
        (1.0 + curvature_ * u2) / std::pow(1.0 - u2, two_b_ - 1.0) + bracket_const_;
    return six_alpha_ * u_pow * bracket +
           noise_over_power_ * std::pow(r, two_b_);
}

double GFactorModel::inverse(double y) const {
    if (!(y >= 0.0))
        throw std::domain_error("g_inverse: requires y >= 0");
    if (y == 0.0)
        return 0.0;
    if (y >= g_edge_)
        return radius_;  // saturating clamp
    return numerics::invert_monotone([this](double r) { return (*this)(r); },
                                     y, 0.0, radius_, radius_ * 1e-13);
}

double g_factor(double r, const Scenario& sc) {
    return GFactorModel(sc)(r);
}

double g_inverse(double y, const Scenario& sc) {
    return GFactorModel(sc).inverse(y);
}

double g_bruteforce(double r, double theta, int rings, const Scenario& sc) {
    if (r < 0.0 || r >= sc.inter_site_km)
        throw std::domain_error("g_bruteforce: requires 0 <= r < delta");
    if (r == 0.0)
        return 0.0;
    const double x = r * std::cos(theta);
    const double y = r * std::sin(theta);
    double interference = 0.0;
    for (const auto& [sx, sy] : hex_sites(rings, sc.inter_site_km)) {
        const double d2 = (x - sx) * (x - sx) + (y - sy) * (y - sy);
        interference += std::pow(d2, -sc.half_exponent);
    }
    return std::pow(r, 2.0 * sc.half_exponent) *
           (sc.interferer_load * interference +
            sc.noise_power_mw / sc.macro_power_mw);
}

double sinr_macro(double r, double theta, const Scenario& sc) {
    const double g = g_factor(r, sc);
    double interference = g;
    if (sc.has_active_small_cell()) {
        const double d = small_cell_distance(r, theta, sc);
        if (d == 0.0)
            return 0.0;  // co-located with the small cell: infinite interference
        if (r > 0.0)
            interference += sc.small_cell->power_ratio *
                            std::pow(d, -2.0 * sc.small_half_exponent()) *
                            std::pow(r, 2.0 * sc.half_exponent);
    }
    if (interference == 0.0)
        return std::numeric_limits<double>::infinity();
    return 1.0 / interference;
}

double sinr_small(double r, double theta, const Scenario& sc, Regime regime) {
    if (!sc.small_cell)
        throw std::invalid_argument("sinr_small: no small cell configured");
    if (r == 0.0)
        return 0.0;  // at the macro site the serving-macro power diverges
    const double g = g_factor(r, sc);
    const double denom = regime == Regime::WithPeer ? g + 1.0 : g;
    const double d = small_cell_distance(r, theta, sc);
    const double rx_ratio = sc.small_cell->power_ratio *
                            std::pow(d, -2.0 * sc.small_half_exponent()) *
                            std::pow(r, 2.0 * sc.half_exponent);
    if (denom == 0.0)
        return rx_ratio == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return rx_ratio / denom;
}

}  // namespace hetperf
