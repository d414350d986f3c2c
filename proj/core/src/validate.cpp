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

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "hetperf/experiments.hpp"
#include "hetperf/random.hpp"
#include "output_tracker.hpp"

namespace hetperf {

namespace {

using csvio::format_double;

// Worst-angle relative disagreement between the closed-form interference
// factor and the lattice sum at the probe radii.
double g_factor_error(const Scenario& sc, int rings,
                      const std::vector<double>& radii_frac) {
    const GFactorModel g(sc);
    double worst = 0.0;
    for (double frac : radii_frac) {
        const double r = frac * sc.inter_site_km;
        const double closed = g(r);
        for (int i = 0; i < 8; ++i) {
            // one sextant covers the lattice symmetry
            const double theta = i * (3.14159265358979323846 / 3.0) / 8.0;
            const double brute = g_bruteforce(r, theta, rings, sc);
            if (brute > 0.0)
                worst = std::max(worst, std::fabs(closed - brute) / brute);
        }
    }
    return worst;
}

struct CurveAgreement {
    int points = 0;
    int within = 0;
    double worst_sigma = 0.0;
    double fraction() const {
        return points > 0 ? static_cast<double>(within) / points : 1.0;
    }
};

// Fraction of grid points where the closed form falls within 3 standard
// errors of the Monte-Carlo estimate. A one-count floor keeps the check
// meaningful at probabilities 0 and 1 where the binomial "se" collapses.
CurveAgreement compare_curves(const CcdfCurve& closed, const CcdfCurve& mc,
                              std::int64_t n_cell) {
    CurveAgreement agg;
    for (std::size_t i = 0; i < closed.points.size() && i < mc.points.size(); ++i) {
        const double p_mc = mc.points[i].prob;
        const double se = std::max(mc.points[i].stderr_est,
                                   n_cell > 0 ? 1.0 / static_cast<double>(n_cell) : 1.0);
        const double sigma = std::fabs(closed.points[i].prob - p_mc) / se;
        agg.worst_sigma = std::max(agg.worst_sigma, sigma);
        ++agg.points;
        if (sigma <= 3.0)
            ++agg.within;
    }
    return agg;
}

TrafficModel single_class_model(double a_idle, double a_busy, double a_idle_s,
                                double a_busy_s) {
    // unit rates; per-cell arrival rates chosen so lambda*sigma0/eta
    // equals the requested offered work
    FlowClassSet classes;
    classes.split = {0.5, 0.5};
    classes.macro.push_back({1.0, 1.0 / a_idle, 1.0 / a_busy});
    classes.small.push_back({1.0, 1.0 / a_idle_s, 1.0 / a_busy_s});
    TrafficModel traffic;
    traffic.lambda_tot = 2.0;  // each cell receives lambda = 1
    traffic.sigma0_mbit = 1.0;
    traffic.classes = classes;
    return traffic;
}

}  // namespace

std::string validation_to_json(const ValidationReport& report) {
    nlohmann::ordered_json j;
    j["all_pass"] = report.all_pass;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["measured"] = c.measured;
        e["threshold"] = c.threshold;
        e["details"] = c.details;
        checks.push_back(e);
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

ValidationReport cmd_validate(const Config& cfg, const RunOptions& opts,
                              const ValidateOptions& vopts) {
    const std::uint64_t seed = opts.seed.value_or(cfg.seed);
    ValidationReport report;
    auto add = [&report](const std::string& name, double measured, double threshold,
                         bool pass, const std::string& details) {
        report.checks.push_back({name, pass, measured, threshold, details});
    };

    const std::int64_t mc_n =
        vopts.mc_samples_override > 0 ? vopts.mc_samples_override : cfg.mc_samples;
    const std::int64_t sim_events =
        vopts.sim_events_override > 0 ? vopts.sim_events_override : cfg.events;

    // ---- interference factor: closed form vs hexagonal lattice --------
    const std::vector<double> probe_fracs{0.1, 0.2, 0.3, 0.37};
    {
        Scenario printed = baseline_scenario(cfg);
        printed.omega_mode = OmegaMode::Printed;
        printed.omega_scale = vopts.omega_scale;
        const double err = g_factor_error(printed, 30, probe_fracs);
        add("g_closed_vs_lattice_printed", err, 0.05, err <= 0.05,
            "worst relative error over r/delta in {0.1,0.2,0.3,0.37}, 8 angles, "
            "30 rings; omega_scale=" + format_double(vopts.omega_scale));

        Scenario calibrated = baseline_scenario(cfg);
        calibrated.omega_mode = OmegaMode::Calibrated;
        const double err_cal = g_factor_error(calibrated, 30, probe_fracs);
        add("g_closed_vs_lattice_calibrated", err_cal, 0.05, err_cal <= 0.05,
            "lattice-calibrated constant, same probes");

        const double w_printed = omega_printed(printed.half_exponent);
        const double w_cal = omega_calibrated(printed.half_exponent, 30);
        add("omega_printed_vs_calibrated",
            std::fabs(w_printed - w_cal) / w_cal, 0.01,
            std::fabs(w_printed - w_cal) / w_cal <= 0.01,
            "printed=" + format_double(w_printed) +
                " calibrated(30 rings)=" + format_double(w_cal));
    }

    // ---- static CCDFs: closed forms vs Monte Carlo ---------------------
    {
        const std::vector<double> levels = log_level_grid(0.5, cfg.eta0_mbps, 50);
        // benchmark scenario
        {
            const Scenario sc = baseline_scenario(cfg);
            const McCcdf mc = monte_carlo_ccdf(sc, mc_n, derive_seed(seed, 11), levels);
            const CurveAgreement agg = compare_curves(
                ccdf_curve_macro_only(sc, levels), mc.macro_with_peer, mc.macro_count);
            add("ccdf_macro_only_vs_mc", agg.fraction(), 0.95, agg.fraction() >= 0.95,
                "fraction of 50 levels within 3 se; worst deviation " +
                    format_double(agg.worst_sigma) + " se at " +
                    csvio::format_int(mc_n) + " draws");
        }
        if (cfg.small_cell_enabled) {
            for (std::size_t oi = 0; oi < cfg.offsets_m.size(); ++oi) {
                const double o = cfg.offsets_m[oi];
                Scenario sc;
                try {
                    sc = offset_scenario(cfg, o);
                } catch (const std::exception&) {
                    continue;
                }
                const std::string tag = "offset" + format_double(o) + "m";
                const McCcdf mc =
                    monte_carlo_ccdf(sc, mc_n, derive_seed(seed, 20 + oi), levels);
                const CurveAgreement macro = compare_curves(
                    ccdf_curve(sc, CellTag::Macro, Regime::WithPeer, levels),
                    mc.macro_with_peer, mc.macro_count);
                add("ccdf_macro_vs_mc_" + tag, macro.fraction(), 0.95,
                    macro.fraction() >= 0.95,
                    "worst deviation " + format_double(macro.worst_sigma) + " se");
                const CurveAgreement small1 = compare_curves(
                    ccdf_curve(sc, CellTag::Small, Regime::WithPeer, levels),
                    *mc.small_with_peer, mc.small_count);
                add("ccdf_small_with_peer_vs_mc_" + tag, small1.fraction(), 0.95,
                    small1.fraction() >= 0.95,
                    "worst deviation " + format_double(small1.worst_sigma) + " se");
                const CurveAgreement small0 = compare_curves(
                    ccdf_curve(sc, CellTag::Small, Regime::WithoutPeer, levels),
                    *mc.small_without_peer, mc.small_count);
                add("ccdf_small_no_peer_vs_mc_" + tag, small0.fraction(), 0.95,
                    small0.fraction() >= 0.95,
                    "worst deviation " + format_double(small0.worst_sigma) + " se");
            }
        }
    }

    // ---- cap: CCDF identically zero above eta0 -------------------------
    {
        double worst = 0.0;
        const Scenario base = baseline_scenario(cfg);
        worst = std::max(worst, ccdf_macro_only(cfg.eta0_mbps * 1.0001, base));
        worst = std::max(worst, ccdf_macro_only(cfg.eta0_mbps + 1.0, base));
        if (cfg.small_cell_enabled) {
            const Scenario sc = offset_scenario(cfg, 0.0);
            worst = std::max(worst, ccdf_macro_with_sc(cfg.eta0_mbps + 1.0, sc));
            worst = std::max(worst,
                             ccdf_small(cfg.eta0_mbps + 1.0, sc, Regime::WithPeer));
            worst = std::max(worst,
                             ccdf_small(cfg.eta0_mbps + 1.0, sc, Regime::WithoutPeer));
        }
        add("ccdf_zero_above_cap", worst, 0.0, worst == 0.0,
            "levels above eta0 = " + format_double(cfg.eta0_mbps) + " Mbps");
    }

    // ---- loads: closed form vs fixed point ------------------------------
    {
        Rng rng(derive_seed(seed, 99));
        double worst = 0.0;
        int tested = 0;
        while (tested < 100) {
            FlowClassSet classes;
            classes.split = {rng.uniform(0.2, 0.8), 0.0};
            classes.split.small_mass = 1.0 - classes.split.macro_mass;
            const int nk = 1 + static_cast<int>(rng.uniform01() * 4);
            const int nl = 1 + static_cast<int>(rng.uniform01() * 4);
            auto make = [&](int n, std::vector<FlowClass>& out) {
                double left = 1.0;
                for (int i = 0; i < n; ++i) {
                    const double p = i + 1 == n ? left : left * rng.uniform(0.2, 0.8);
                    left -= i + 1 == n ? 0.0 : p;
                    const double idle = rng.uniform(5.0, 90.0);
                    out.push_back({p, idle, idle * rng.uniform(0.3, 1.0)});
                }
                std::sort(out.begin(), out.end(),
                          [](const FlowClass& a, const FlowClass& b) {
                              return a.rate_with_peer_mbps < b.rate_with_peer_mbps;
                          });
            };
            make(nk, classes.macro);
            make(nl, classes.small);
            TrafficModel traffic{rng.uniform(0.1, 3.0), 2.0, classes};
            CellLoads closed;
            try {
                closed = solve_loads(traffic);
                if (closed.rho_macro > 0.95 || closed.rho_small > 0.95)
                    continue;  // keep to clearly stable instances
            } catch (const StabilityError&) {
                continue;
            }
            const CellLoads fp = solve_loads_fixed_point(traffic);
            worst = std::max({worst, std::fabs(closed.rho_macro - fp.rho_macro),
                              std::fabs(closed.rho_small - fp.rho_small)});
            ++tested;
        }
        add("loads_closed_vs_fixed_point", worst, 1e-10, worst <= 1e-10,
            "100 random stable instances");
    }
    {
        // hand-checked single-class instance
        const TrafficModel traffic = single_class_model(0.2, 0.4, 0.3, 0.5);
        const CellLoads loads = solve_loads(traffic);
        const double err = std::max(std::fabs(loads.rho_macro - 0.26 / 0.96),
                                    std::fabs(loads.rho_small - 0.34 / 0.96));
        add("loads_single_class_value", err, 1e-12, err <= 1e-12,
            "expected rho = 0.26/0.96, rho_small = 0.34/0.96");

        // stationary distribution diagnostics (approximate form)
        const double p00 = stationary_prob({0}, {0}, loads, traffic);
        const double exact = (1.0 - loads.rho_macro) * (1.0 - loads.rho_small);
        add("stationary_empty_state", std::fabs(p00 - exact), 1e-12,
            std::fabs(p00 - exact) <= 1e-12, "pi(0,0) = (1-rho)(1-rho~)");
        const double mass = stationary_normalization(traffic, loads, 40);
        add("stationary_normalization_diagnostic", mass, 0.0, mass > 0.0,
            "truncated mass (|n|,|n~| <= 40) of the approximate product form; "
            "reported, not asserted to equal 1");
    }

    // ---- M/M/1-PS sanity -------------------------------------------------
    {
        FlowClassSet classes;
        classes.split = {1.0, 0.0};
        classes.macro.push_back({1.0, 10.0, 10.0});
        TrafficModel traffic{2.5, 2.0, classes};  // rho = 2.5*2/10 = 0.5
        SimConfig sim_cfg;
        sim_cfg.seed = derive_seed(seed, 7);
        sim_cfg.measured_events = sim_events;
        sim_cfg.warmup_events = sim_events / 5;
        sim_cfg.replications = cfg.replications;
        sim_cfg.guard_max_flows = cfg.guard_max_flows;
        const SimStats stats = run_simulation(traffic, sim_cfg);
        const double err = std::fabs(stats.macro.total_flows.mean - 1.0);
        const double ci = stats.macro.total_flows.ci95_halfwidth;
        add("mm1_ps_mean_count", err, ci, err <= ci,
            "mean flows at rho=0.5, expected 1.0 within the 95% CI (" +
                format_double(stats.macro.total_flows.mean) + " +/- " +
                format_double(ci) + ")");
    }

    // ---- analytics vs simulation across a load sweep ---------------------
    if (cfg.small_cell_enabled) {
        const Scenario sc = offset_scenario(cfg, 0.0);
        Config cfg_classes = cfg;
        const FlowClassSet classes = classes_for_scenario(cfg_classes, sc);
        // find lambda with macro load 0.8
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 60; ++i) {
            TrafficModel probe{hi, cfg.file_size_mbit, classes};
            bool ok = false;
            try {
                ok = solve_loads(probe).rho_macro < 0.8;
            } catch (const StabilityError&) {
                ok = false;
            }
            if (!ok)
                break;
            hi *= 2.0;
        }
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + hi);
            TrafficModel probe{mid, cfg.file_size_mbit, classes};
            bool below = false;
            try {
                below = solve_loads(probe).rho_macro < 0.8;
            } catch (const StabilityError&) {
                below = false;
            }
            (below ? lo : hi) = mid;
        }
        const double lambda_08 = lo;
        double worst_busy = 0.0, worst_flows = 0.0;
        std::string detail;
        for (double frac : {0.25, 0.5, 0.75, 1.0}) {
            TrafficModel traffic{frac * lambda_08, cfg.file_size_mbit, classes};
            const CellLoads loads = solve_loads(traffic);
            const MeanFlows flows = mean_flows(traffic, loads);
            SimConfig sim_cfg;
            sim_cfg.seed = derive_seed(seed, 300 + static_cast<std::uint64_t>(frac * 100));
            sim_cfg.measured_events = sim_events;
            sim_cfg.warmup_events = sim_events / 5;
            sim_cfg.replications = cfg.replications;
            sim_cfg.guard_max_flows = cfg.guard_max_flows;
            const SimStats stats = run_simulation(traffic, sim_cfg);
            if (stats.unstable)
                continue;
            worst_busy = std::max(
                {worst_busy,
                 std::fabs(stats.macro.busy_fraction.mean - loads.rho_macro) /
                     loads.rho_macro,
                 std::fabs(stats.small.busy_fraction.mean - loads.rho_small) /
                     loads.rho_small});
            worst_flows = std::max(
                {worst_flows,
                 std::fabs(stats.macro.total_flows.mean - flows.macro_total) /
                     flows.macro_total,
                 std::fabs(stats.small.total_flows.mean - flows.small_total) /
                     flows.small_total});
        }
        add("loads_analytic_vs_simulated", worst_busy, 0.10, worst_busy <= 0.10,
            "worst relative busy-fraction error over the sweep up to rho=0.8 "
            "(lambda=" + format_double(lambda_08) + ")");
        add("flows_analytic_vs_simulated", worst_flows, 0.10, worst_flows <= 0.10,
            "worst relative mean-flow-count error over the same sweep");
    }

    // ---- class extraction vs position oracle ------------------------------
    if (cfg.small_cell_enabled) {
        const Scenario sc = offset_scenario(cfg, 0.0);
        const FlowClassSet curves = classes_for_scenario(cfg, sc);
        const FlowClassSet oracle = monte_carlo_classes(
            sc, cfg.classes_macro, cfg.classes_small, mc_n, derive_seed(seed, 55),
            cfg.rate_rule == "max" ? RateRule::Max : RateRule::Mean);
        double worst = 0.0;
        bool structure_ok = curves.macro.size() == oracle.macro.size() &&
                            curves.small.size() == oracle.small.size();
        if (structure_ok) {
            for (std::size_t i = 0; i < curves.macro.size(); ++i) {
                worst = std::max(worst,
                                 std::fabs(curves.macro[i].rate_with_peer_mbps -
                                           oracle.macro[i].rate_with_peer_mbps) /
                                     oracle.macro[i].rate_with_peer_mbps);
                worst = std::max(worst,
                                 std::fabs(curves.macro[i].rate_no_peer_mbps -
                                           oracle.macro[i].rate_no_peer_mbps) /
                                     oracle.macro[i].rate_no_peer_mbps);
            }
            for (std::size_t i = 0; i < curves.small.size(); ++i) {
                worst = std::max(worst,
                                 std::fabs(curves.small[i].rate_with_peer_mbps -
                                           oracle.small[i].rate_with_peer_mbps) /
                                     oracle.small[i].rate_with_peer_mbps);
                worst = std::max(worst,
                                 std::fabs(curves.small[i].rate_no_peer_mbps -
                                           oracle.small[i].rate_no_peer_mbps) /
                                     oracle.small[i].rate_no_peer_mbps);
            }
        }
        add("class_extraction_vs_oracle", worst, 0.05, structure_ok && worst <= 0.05,
            structure_ok ? "worst per-class rate disagreement"
                         : "class counts differ between methods");
    }

    report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                  [](const ValidationCheck& c) { return c.pass; });

    internal::OutputTracker tracker(opts, cfg, "validate", seed);
    tracker.write_text("validation.json", validation_to_json(report));
    tracker.finish({});
    return report;
}

}  // namespace hetperf
