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

#include "hetperf/static_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "hetperf/numerics.hpp"
#include "hetperf/random.hpp"

namespace hetperf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

using numerics::QuadratureSpec;

const QuadratureSpec kInnerSpec{1e-12, 1e-10, 100000};
const QuadratureSpec kOuterSpec{1e-10, 1e-8, 400000};

// Cached per-scenario quantities for the closed-form integrals. The
// angular thresholds g1/g2/g3 express the association and rate conditions
// as arcs cos(theta - theta_s) <=> c, which keeps every integrand handed
// to the quadrature piecewise smooth.
struct Ctx {
    explicit Ctx(const Scenario& scenario)
        : sc(scenario), g(scenario) {
        scenario.validate();
        radius = scenario.radius();
        a2 = scenario.hotspot.spread_km * scenario.hotspot.spread_km;
        rh = scenario.hotspot.radius_km;
        theta_h = scenario.hotspot.theta_rad;
        b = scenario.half_exponent;
        small_active = scenario.has_active_small_cell();
        if (small_active) {
            rs = scenario.small_cell->radius_km;
            theta_s = scenario.small_cell->theta_rad;
            kappa = scenario.small_cell->power_ratio;
            kappa_pow = std::pow(kappa, 1.0 / b);
        }
    }

    const Scenario& sc;
    GFactorModel g;
    double radius = 0.0;
    double a2 = 0.0;
    double rh = 0.0, theta_h = 0.0;
    double b = 0.0;
    bool small_active = false;
    double rs = 0.0, theta_s = 0.0, kappa = 0.0, kappa_pow = 0.0;

    // radial weight and tilt of the angular Gaussian factor
    double prefactor(double r) const {
        return r * std::exp(-(r * r + rh * rh) / (2.0 * a2)) / (2.0 * kPi * a2);
    }
    double tilt(double r) const { return r * rh / a2; }

    // full-circle hotspot mass at radius r (per dr)
    double ring_mass(double r) const {
        if (r <= 0.0)
            return 0.0;
        return 2.0 * kPi * prefactor(r) * numerics::bessel_i0(tilt(r));
    }

    // hotspot density at angle offset phi = theta - theta_s (per dr dphi)
    double density_at_offset(double pref, double k, double phi) const {
        return pref * std::exp(k * std::cos(theta_s + phi - theta_h));
    }

    // mass of { theta : cos(theta - theta_s) <= c } at radius r
    double arc_mass_le(double r, double c) const {
        if (r <= 0.0 || c <= -1.0)
            return 0.0;
        if (c >= 1.0)
            return ring_mass(r);
        const double beta = std::acos(c);
        const double pref = prefactor(r);
        const double k = tilt(r);
        auto f = [&](double phi) { return density_at_offset(pref, k, phi); };
        return numerics::integrate_1d(f, beta, 2.0 * kPi - beta, kInnerSpec).value;
    }

    double arc_mass_ge(double r, double c) const {
        if (r <= 0.0 || c >= 1.0)
            return 0.0;
        if (c <= -1.0)
            return ring_mass(r);
        return ring_mass(r) - arc_mass_le(r, c);
    }

    // integral of value(cos phi) * density over { c_lo < cos phi < c_hi }
    double band_integral(double r, double c_lo, double c_hi,
                         const std::function<double(double)>& value) const {
        if (r <= 0.0)
            return 0.0;
        const double a = std::max(c_lo, -1.0);
        const double bnd = std::min(c_hi, 1.0);
        if (!(bnd > a))
            return 0.0;
        const double beta_hi = std::acos(bnd);  // smaller angle
        const double beta_lo = std::acos(a);    // larger angle
        const double pref = prefactor(r);
        const double k = tilt(r);
        auto f = [&](double phi) {
            return value(std::cos(phi)) * density_at_offset(pref, k, phi);
        };
        double total = numerics::integrate_1d(f, beta_hi, beta_lo, kInnerSpec).value;
        total += numerics::integrate_1d(f, 2.0 * kPi - beta_lo,
                                        2.0 * kPi - beta_hi, kInnerSpec).value;
        return total;
    }

    // association threshold: macro iff cos(theta - theta_s) <= g1(r)
    double g1(double r) const {
        if (r <= 0.0 || rs <= 0.0)
            return kInf;
        return (rs * rs + r * r * (1.0 - kappa_pow)) / (2.0 * r * rs);
    }

    // macro rate threshold at psi_l: served rate >= l iff cos <= g2
    double g2(double r, double psi_l) const {
        if (r <= 0.0 || rs <= 0.0)
            return kInf;
        const double margin = psi_l - g(r);
        if (margin <= 0.0)
            return -kInf;
        return (rs * rs + r * r -
                kappa_pow * std::pow(margin, -1.0 / b) * r * r) /
               (2.0 * r * rs);
    }

    // small rate threshold at psi_l: served rate >= l iff cos >= g3;
    // peer = 1 keeps the macro interference, peer = 0 removes it
    double g3(double r, double psi_l, double peer) const {
        if (r <= 0.0)
            return kInf;
        if (rs <= 0.0)
            return kInf;
        const double denom = g(r) + peer;
        const double scaled = std::pow(psi_l * kappa, 1.0 / b) *
                              std::pow(denom, -1.0 / b);
        return (rs * rs + r * r - scaled * r * r) / (2.0 * r * rs);
    }
};

// Radii in (lo, hi) where c(r) crosses -1 or +1; the arcs saturate there
// and the radial integrand has a kink.
void add_threshold_crossings(const std::function<double(double)>& c,
                             double lo, double hi, std::vector<double>& out) {
    if (!(hi > lo))
        return;
    const int scan = 160;
    const double step = (hi - lo) / scan;
    double prev_x = lo + 0.5 * step;  // stay off endpoints (c may be inf at 0)
    double prev_v = c(prev_x);
    for (int i = 1; i < scan; ++i) {
        const double x = lo + (i + 0.5) * step;
        const double v = c(x);
        for (double target : {-1.0, 1.0}) {
            const double a = prev_v - target;
            const double bval = v - target;
            if (std::isnan(a) || std::isnan(bval))
                continue;
            if ((a < 0.0 && bval > 0.0) || (a > 0.0 && bval < 0.0)) {
                double xlo = prev_x, xhi = x;
                for (int it = 0; it < 60 && (xhi - xlo) > 1e-14 * (hi - lo); ++it) {
                    const double mid = 0.5 * (xlo + xhi);
                    const double m = c(mid) - target;
                    if (std::isnan(m))
                        break;
                    if ((m < 0.0) == (a < 0.0))
                        xlo = mid;
                    else
                        xhi = mid;
                }
                out.push_back(0.5 * (xlo + xhi));
            }
        }
        prev_x = x;
        prev_v = v;
    }
}

double integrate_segments(const std::function<double(double)>& f,
                          std::vector<double> pts, double lo, double hi) {
    if (!(hi > lo))
        return 0.0;
    pts.push_back(lo);
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double a = std::clamp(pts[i], lo, hi);
        double bnd = std::clamp(pts[i + 1], lo, hi);
        if (bnd - a < 1e-15 * (hi - lo))
            continue;
        total += numerics::integrate_1d(f, a, bnd, kOuterSpec).value;
    }
    return total;
}

double disk_mass(const Ctx& ctx) {
    return numerics::integrate_1d([&](double r) { return ctx.ring_mass(r); },
                                  0.0, ctx.radius, kOuterSpec).value;
}

CoverageSplit coverage_split_impl(const Ctx& ctx) {
    CoverageSplit split;
    const double total = disk_mass(ctx);
    if (!ctx.small_active) {
        split.macro_mass = total;
        return split;
    }
    auto c1 = [&](double r) { return ctx.g1(r); };
    std::vector<double> pts;
    add_threshold_crossings(c1, 0.0, ctx.radius, pts);
    split.small_mass = integrate_segments(
        [&](double r) { return ctx.arc_mass_ge(r, ctx.g1(r)); }, pts, 0.0, ctx.radius);
    split.small_mass = std::clamp(split.small_mass, 0.0, total);
    split.macro_mass = total - split.small_mass;
    return split;
}

double ccdf_macro_only_impl(const Ctx& ctx, double level, double mass_total) {
    if (level > ctx.sc.link.eta0_mbps)
        return 0.0;
    const double psi_l = psi(level, ctx.sc.link);
    const double lam = ctx.g.inverse(psi_l);
    if (lam <= 0.0)
        return 0.0;
    const double num = numerics::integrate_1d(
        [&](double r) { return ctx.ring_mass(r); }, 0.0, lam, kOuterSpec).value;
    return std::clamp(num / mass_total, 0.0, 1.0);
}

double ccdf_macro_with_sc_impl(const Ctx& ctx, double level, Regime regime,
                               const CoverageSplit& split) {
    if (level > ctx.sc.link.eta0_mbps)
        return 0.0;
    const double psi_l = psi(level, ctx.sc.link);
    const double lam = ctx.g.inverse(psi_l);
    if (lam <= 0.0)
        return 0.0;
    if (split.macro_mass <= 0.0)
        return 0.0;

    double num = 0.0;
    if (regime == Regime::WithoutPeer) {
        // association kept, small-cell interference removed: the rate
        // condition is radial only
        auto c1 = [&](double r) { return ctx.g1(r); };
        std::vector<double> pts;
        add_threshold_crossings(c1, 0.0, lam, pts);
        num = integrate_segments(
            [&](double r) { return ctx.arc_mass_le(r, ctx.g1(r)); }, pts, 0.0, lam);
    } else {
        const double lam0 =
            psi_l > 1.0 ? std::min(ctx.g.inverse(psi_l - 1.0), lam) : 0.0;
        if (lam0 > 0.0) {
            auto c1 = [&](double r) { return ctx.g1(r); };
            std::vector<double> pts;
            add_threshold_crossings(c1, 0.0, lam0, pts);
            num += integrate_segments(
                [&](double r) { return ctx.arc_mass_le(r, ctx.g1(r)); }, pts, 0.0, lam0);
        }
        if (lam > lam0) {
            auto c2 = [&](double r) { return ctx.g2(r, psi_l); };
            std::vector<double> pts;
            add_threshold_crossings(c2, lam0, lam, pts);
            num += integrate_segments(
                [&](double r) { return ctx.arc_mass_le(r, ctx.g2(r, psi_l)); },
                pts, lam0, lam);
        }
    }
    return std::clamp(num / split.macro_mass, 0.0, 1.0);
}

double ccdf_small_impl(const Ctx& ctx, double level, Regime regime,
                       const CoverageSplit& split) {
    if (level > ctx.sc.link.eta0_mbps)
        return 0.0;
    if (split.small_mass <= 0.0)
        return 0.0;
    const double psi_l = psi(level, ctx.sc.link);
    const double peer = regime == Regime::WithPeer ? 1.0 : 0.0;
    // switch radius where the association arc overtakes the rate arc:
    // g(r) = psi - 1 with the peer active, g(r) = psi without it
    const double split_y = regime == Regime::WithPeer ? psi_l - 1.0 : psi_l;
    const double lam_split = split_y > 0.0 ? ctx.g.inverse(split_y) : 0.0;

    double num = 0.0;
    if (lam_split > 0.0) {
        auto c1 = [&](double r) { return ctx.g1(r); };
        std::vector<double> pts;
        add_threshold_crossings(c1, 0.0, lam_split, pts);
        num += integrate_segments(
            [&](double r) { return ctx.arc_mass_ge(r, ctx.g1(r)); }, pts, 0.0, lam_split);
    }
    if (ctx.radius > lam_split) {
        auto c3 = [&](double r) { return ctx.g3(r, psi_l, peer); };
        std::vector<double> pts;
        add_threshold_crossings(c3, lam_split, ctx.radius, pts);
        num += integrate_segments(
            [&](double r) { return ctx.arc_mass_ge(r, ctx.g3(r, psi_l, peer)); },
            pts, lam_split, ctx.radius);
    }
    return std::clamp(num / split.small_mass, 0.0, 1.0);
}

MeanPeak mean_peak_impl(const Ctx& ctx) {
    const LinkCurve& link = ctx.sc.link;
    const double eta0 = link.eta0_mbps;
    const double psi_cap = psi(eta0, link);
    const double lam_cap = ctx.g.inverse(psi_cap);
    MeanPeak out;

    if (!ctx.small_active) {
        const double total = disk_mass(ctx);
        double acc = 0.0;
        if (lam_cap > 0.0)
            acc += eta0 * numerics::integrate_1d(
                              [&](double r) { return ctx.ring_mass(r); },
                              0.0, lam_cap, kOuterSpec).value;
        if (ctx.radius > lam_cap)
            acc += numerics::integrate_1d(
                       [&](double r) {
                           const double snr = 1.0 / ctx.g(r);
                           return throughput_of_sinr(snr, link) * ctx.ring_mass(r);
                       },
                       lam_cap, ctx.radius, kOuterSpec).value;
        out.macro_mbps = total > 0.0 ? acc / total : 0.0;
        out.small_mbps = 0.0;
        out.overall_mbps = out.macro_mbps;
        return out;
    }

    const CoverageSplit split = coverage_split_impl(ctx);
    const double two_b = 2.0 * ctx.b;

    // macro-served expectation (cap where cos <= g2(r, psi_cap))
    auto c_cap_m = [&](double r) { return ctx.g2(r, psi_cap); };
    auto c1 = [&](double r) { return ctx.g1(r); };
    auto macro_integrand = [&](double r) {
        const double gv = ctx.g(r);
        const double a1 = ctx.g1(r);
        const double cap = ctx.g2(r, psi_cap);
        const double capped = ctx.arc_mass_le(r, std::min(a1, cap));
        const double r_pow = std::pow(r, two_b);
        auto value = [&](double cosphi) {
            const double d2 = r * r + ctx.rs * ctx.rs - 2.0 * r * ctx.rs * cosphi;
            const double interf = ctx.kappa * std::pow(d2, -ctx.b) * r_pow;
            return throughput_of_sinr(1.0 / (gv + interf), link);
        };
        const double uncapped = ctx.band_integral(r, cap, a1, value);
        return eta0 * capped + uncapped;
    };
    std::vector<double> pts_m{lam_cap};
    add_threshold_crossings(c1, 0.0, ctx.radius, pts_m);
    add_threshold_crossings(c_cap_m, 0.0, ctx.radius, pts_m);
    const double macro_acc = integrate_segments(macro_integrand, pts_m, 0.0, ctx.radius);

    // small-served expectation (cap where cos >= g3(r, psi_cap))
    auto c_cap_s = [&](double r) { return ctx.g3(r, psi_cap, 1.0); };
    auto small_integrand = [&](double r) {
        const double gv = ctx.g(r);
        const double a1 = ctx.g1(r);
        const double cap = ctx.g3(r, psi_cap, 1.0);
        const double capped = ctx.arc_mass_ge(r, std::max(a1, cap));
        const double r_pow = std::pow(r, two_b);
        auto value = [&](double cosphi) {
            const double d2 = r * r + ctx.rs * ctx.rs - 2.0 * r * ctx.rs * cosphi;
            const double snr = ctx.kappa * std::pow(d2, -ctx.b) * r_pow / (gv + 1.0);
            return throughput_of_sinr(snr, link);
        };
        const double uncapped = ctx.band_integral(r, a1, cap, value);
        return eta0 * capped + uncapped;
    };
    std::vector<double> pts_s;
    add_threshold_crossings(c1, 0.0, ctx.radius, pts_s);
    add_threshold_crossings(c_cap_s, 0.0, ctx.radius, pts_s);
    const double small_acc = integrate_segments(small_integrand, pts_s, 0.0, ctx.radius);

    out.macro_mbps = split.macro_mass > 0.0 ? macro_acc / split.macro_mass : 0.0;
    out.small_mbps = split.small_mass > 0.0 ? small_acc / split.small_mass : 0.0;
    const double total = split.total();
    out.overall_mbps = total > 0.0 ? (macro_acc + small_acc) / total : 0.0;
    return out;
}

void enforce_monotone(CcdfCurve& curve) {
    double prev = 1.0;
    for (auto& p : curve.points) {
        p.prob = std::clamp(p.prob, 0.0, prev);
        prev = p.prob;
    }
}

}  // namespace

double CcdfCurve::value_at(double level_mbps, double eta0_mbps) const {
    if (level_mbps > eta0_mbps || points.empty())
        return 0.0;
    if (level_mbps <= 0.0)
        return 1.0;
    if (level_mbps <= points.front().level_mbps) {
        const double l1 = points.front().level_mbps;
        return 1.0 + (points.front().prob - 1.0) * (level_mbps / l1);
    }
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (level_mbps <= points[i + 1].level_mbps) {
            const double l0 = points[i].level_mbps, l1 = points[i + 1].level_mbps;
            const double t = (level_mbps - l0) / (l1 - l0);
            return points[i].prob + t * (points[i + 1].prob - points[i].prob);
        }
    }
    return points.back().prob;  // flat up to eta0 (atom at the cap)
}

std::vector<double> log_level_grid(double lmin, double lmax, int n) {
    if (!(lmin > 0.0) || !(lmax > lmin) || n < 2)
        throw std::invalid_argument("log_level_grid: need 0 < lmin < lmax and n >= 2");
    std::vector<double> levels(n);
    const double ratio = lmax / lmin;
    for (int i = 0; i < n; ++i)
        levels[i] = lmin * std::pow(ratio, static_cast<double>(i) / (n - 1));
    levels.back() = lmax;
    return levels;
}

CoverageSplit coverage_split(const Scenario& sc) {
    if (sc.has_active_small_cell())
        sc.require_common_exponent();
    return coverage_split_impl(Ctx(sc));
}

double absorption_coefficient(const Scenario& sc) {
    const CoverageSplit split = coverage_split(sc);
    const double total = split.total();
    return total > 0.0 ? split.small_mass / total : 0.0;
}

double ccdf_macro_only(double level_mbps, const Scenario& sc) {
    if (!(level_mbps > 0.0))
        throw std::domain_error("ccdf_macro_only: level must be > 0");
    Ctx ctx(sc);
    return ccdf_macro_only_impl(ctx, level_mbps, disk_mass(ctx));
}

double ccdf_macro_with_sc(double level_mbps, const Scenario& sc, Regime regime) {
    if (!(level_mbps > 0.0))
        throw std::domain_error("ccdf_macro_with_sc: level must be > 0");
    if (!sc.has_active_small_cell())
        return ccdf_macro_only(level_mbps, sc);
    sc.require_common_exponent();
    Ctx ctx(sc);
    return ccdf_macro_with_sc_impl(ctx, level_mbps, regime, coverage_split_impl(ctx));
}

double ccdf_small(double level_mbps, const Scenario& sc, Regime regime) {
    if (!(level_mbps > 0.0))
        throw std::domain_error("ccdf_small: level must be > 0");
    if (!sc.has_active_small_cell())
        throw std::invalid_argument("ccdf_small: requires a small cell with kappa > 0");
    sc.require_common_exponent();
    Ctx ctx(sc);
    return ccdf_small_impl(ctx, level_mbps, regime, coverage_split_impl(ctx));
}

MeanPeak mean_peak_throughput(const Scenario& sc) {
    if (sc.has_active_small_cell())
        sc.require_common_exponent();
    return mean_peak_impl(Ctx(sc));
}

CcdfCurve ccdf_curve(const Scenario& sc, CellTag cell, Regime regime,
                     const std::vector<double>& levels) {
    if (cell == CellTag::Small && !sc.has_active_small_cell())
        throw std::invalid_argument("ccdf_curve: no active small cell");
    if (sc.has_active_small_cell())
        sc.require_common_exponent();
    Ctx ctx(sc);
    CcdfCurve curve;
    curve.cell = cell;
    curve.regime = regime;
    curve.points.reserve(levels.size());
    if (!sc.has_active_small_cell()) {
        const double total = disk_mass(ctx);
        for (double l : levels)
            curve.points.push_back({l, ccdf_macro_only_impl(ctx, l, total), kNan});
    } else {
        const CoverageSplit split = coverage_split_impl(ctx);
        for (double l : levels) {
            const double p = cell == CellTag::Macro
                                 ? ccdf_macro_with_sc_impl(ctx, l, regime, split)
                                 : ccdf_small_impl(ctx, l, regime, split);
            curve.points.push_back({l, p, kNan});
        }
    }
    enforce_monotone(curve);
    return curve;
}

CcdfCurve ccdf_curve_macro_only(const Scenario& sc, const std::vector<double>& levels) {
    Ctx ctx(sc);
    CcdfCurve curve;
    curve.cell = CellTag::Macro;
    curve.regime = Regime::WithoutPeer;
    const double total = disk_mass(ctx);
    curve.points.reserve(levels.size());
    for (double l : levels)
        curve.points.push_back({l, ccdf_macro_only_impl(ctx, l, total), kNan});
    enforce_monotone(curve);
    return curve;
}

PeakRateSampleSet sample_peak_rates(const Scenario& sc, std::int64_t n_samples,
                                    std::uint64_t seed, int jobs) {
    sc.validate();
    if (n_samples < 1)
        throw std::invalid_argument("sample_peak_rates: n_samples must be >= 1");
    jobs = std::clamp(jobs, 1, 64);

    // Shard layout is fixed by n alone so the output does not depend on
    // the worker count.
    const int shards = static_cast<int>(std::min<std::int64_t>(64, n_samples));
    std::vector<std::int64_t> shard_n(shards, n_samples / shards);
    for (int i = 0; i < n_samples % shards; ++i)
        ++shard_n[i];

    const double radius = sc.radius();
    const double spread = sc.hotspot.spread_km;
    const double cx = sc.hotspot.radius_km * std::cos(sc.hotspot.theta_rad);
    const double cy = sc.hotspot.radius_km * std::sin(sc.hotspot.theta_rad);
    const bool active = sc.has_active_small_cell();
    const double b = sc.half_exponent;
    const double bs = sc.small_half_exponent();
    const double kappa = active ? sc.small_cell->power_ratio : 0.0;
    const double sx = active ? sc.small_cell->radius_km * std::cos(sc.small_cell->theta_rad) : 0.0;
    const double sy = active ? sc.small_cell->radius_km * std::sin(sc.small_cell->theta_rad) : 0.0;

    std::vector<std::vector<PeakRateSample>> shard_samples(shards);
    auto worker = [&](int shard) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(shard)));
        GFactorModel g(sc);
        auto& out = shard_samples[shard];
        out.reserve(static_cast<std::size_t>(shard_n[shard]));
        for (std::int64_t i = 0; i < shard_n[shard]; ++i) {
            const double x = cx + spread * rng.gaussian();
            const double y = cy + spread * rng.gaussian();
            const double r2 = x * x + y * y;
            const double r = std::sqrt(r2);
            if (r > radius)
                continue;
            const double gv = r > 0.0 ? g(r) : 0.0;
            const double r_pow = std::pow(r2, b);  // r^{2b}
            PeakRateSample s{};
            if (active) {
                const double d2 = (x - sx) * (x - sx) + (y - sy) * (y - sy);
                const double small_rx = kappa * std::pow(d2, -bs);
                const double macro_rx = r2 > 0.0 ? std::pow(r2, -b) : kInf;
                if (small_rx > macro_rx) {
                    s.cell = CellTag::Small;
                    const double rx_ratio = small_rx * r_pow;
                    const double snr1 = rx_ratio / (gv + 1.0);
                    const double snr0 = gv > 0.0 ? rx_ratio / gv : kInf;
                    s.rate_with_peer_mbps = throughput_of_sinr(snr1, sc.link);
                    s.rate_no_peer_mbps = throughput_of_sinr(snr0, sc.link);
                } else {
                    s.cell = CellTag::Macro;
                    const double interf = gv + small_rx * r_pow;
                    const double snr1 = interf > 0.0 ? 1.0 / interf : kInf;
                    const double snr0 = gv > 0.0 ? 1.0 / gv : kInf;
                    s.rate_with_peer_mbps = throughput_of_sinr(snr1, sc.link);
                    s.rate_no_peer_mbps = throughput_of_sinr(snr0, sc.link);
                }
            } else {
                s.cell = CellTag::Macro;
                const double snr = gv > 0.0 ? 1.0 / gv : kInf;
                s.rate_with_peer_mbps = throughput_of_sinr(snr, sc.link);
                s.rate_no_peer_mbps = s.rate_with_peer_mbps;
            }
            out.push_back(s);
        }
    };

    if (jobs == 1) {
        for (int i = 0; i < shards; ++i)
            worker(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&, t] {
                for (int i = t; i < shards; i += jobs)
                    worker(i);
            });
        for (auto& th : pool)
            th.join();
    }

    PeakRateSampleSet set;
    set.draws = n_samples;
    std::size_t total = 0;
    for (const auto& v : shard_samples)
        total += v.size();
    set.samples.reserve(total);
    for (const auto& v : shard_samples)
        set.samples.insert(set.samples.end(), v.begin(), v.end());
    return set;
}

namespace {

CcdfCurve mc_curve(CellTag cell, Regime regime, std::vector<double> rates,
                   const std::vector<double>& levels) {
    std::sort(rates.begin(), rates.end());
    CcdfCurve curve;
    curve.cell = cell;
    curve.regime = regime;
    const double n = static_cast<double>(rates.size());
    curve.points.reserve(levels.size());
    for (double l : levels) {
        const auto it = std::lower_bound(rates.begin(), rates.end(), l);
        const double count = static_cast<double>(rates.end() - it);
        const double p = n > 0.0 ? count / n : 0.0;
        const double se = n > 0.0 ? std::sqrt(p * (1.0 - p) / n) : 0.0;
        curve.points.push_back({l, p, se});
    }
    return curve;
}

}  // namespace

McCcdf monte_carlo_ccdf(const Scenario& sc, std::int64_t n_samples,
                        std::uint64_t seed, const std::vector<double>& levels,
                        int jobs) {
    PeakRateSampleSet set = sample_peak_rates(sc, n_samples, seed, jobs);
    if (set.samples.empty())
        throw std::runtime_error(
            "monte_carlo_ccdf: no draws landed inside the studied disk "
            "(hotspot degenerate or outside the cell)");

    std::vector<double> macro1, macro0, small1, small0;
    for (const auto& s : set.samples) {
        if (s.cell == CellTag::Macro) {
            macro1.push_back(s.rate_with_peer_mbps);
            macro0.push_back(s.rate_no_peer_mbps);
        } else {
            small1.push_back(s.rate_with_peer_mbps);
            small0.push_back(s.rate_no_peer_mbps);
        }
    }

    McCcdf out;
    out.draws = set.draws;
    out.macro_count = static_cast<std::int64_t>(macro1.size());
    out.small_count = static_cast<std::int64_t>(small1.size());
    out.split.macro_mass = static_cast<double>(out.macro_count) / set.draws;
    out.split.small_mass = static_cast<double>(out.small_count) / set.draws;
    out.macro_with_peer = mc_curve(CellTag::Macro, Regime::WithPeer,
                                   std::move(macro1), levels);
    out.macro_without_peer = mc_curve(CellTag::Macro, Regime::WithoutPeer,
                                      std::move(macro0), levels);
    if (sc.has_active_small_cell()) {
        out.small_with_peer = mc_curve(CellTag::Small, Regime::WithPeer,
                                       std::move(small1), levels);
        out.small_without_peer = mc_curve(CellTag::Small, Regime::WithoutPeer,
                                          std::move(small0), levels);
    }
    return out;
}

}  // namespace hetperf
