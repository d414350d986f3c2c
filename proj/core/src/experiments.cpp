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

#include "hetperf/experiments.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

#include "hetperf/random.hpp"
#include "output_tracker.hpp"

namespace hetperf {

namespace {

using csvio::format_double;
using csvio::format_int;
using csvio::Table;

std::string offset_tag(double offset_m) {
    std::string s = format_double(offset_m);
    return "off" + s + "m";
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        out.push_back(lo);
        return out;
    }
    for (int i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * i / (n - 1));
    return out;
}

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn) {
    jobs = std::clamp(jobs, 1, 64);
    if (jobs == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<std::size_t>(count, jobs));
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = static_cast<std::size_t>(t); i < count;
                 i += static_cast<std::size_t>(workers)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace

Table ccdf_to_table(const CcdfCurve& curve) {
    Table t;
    t.header = {"level_mbps", "prob", "stderr"};
    t.rows.reserve(curve.points.size());
    for (const auto& p : curve.points)
        t.rows.push_back({format_double(p.level_mbps), format_double(p.prob),
                          format_double(p.stderr_est)});
    return t;
}

Table classes_to_table(const FlowClassSet& classes) {
    Table t;
    t.header = {"cell", "class", "p", "rate_no_peer_mbps", "rate_with_peer_mbps"};
    auto emit = [&t](const std::vector<FlowClass>& list, const char* cell) {
        for (std::size_t i = 0; i < list.size(); ++i)
            t.rows.push_back({cell, format_int(static_cast<std::int64_t>(i + 1)),
                              format_double(list[i].p),
                              format_double(list[i].rate_no_peer_mbps),
                              format_double(list[i].rate_with_peer_mbps)});
    };
    emit(classes.macro, "macro");
    emit(classes.small, "small");
    return t;
}

Table perf_to_table(const PerfReport& report) {
    Table t;
    t.header = {"cell", "class", "lambda", "N_mean", "sojourn_s",
                "v_mixture_mbps", "v_little_mbps"};
    auto emit = [&t](const std::vector<ClassPerf>& list, const char* cell) {
        for (std::size_t i = 0; i < list.size(); ++i)
            t.rows.push_back({cell, format_int(static_cast<std::int64_t>(i + 1)),
                              format_double(list[i].lambda),
                              format_double(list[i].n_mean),
                              format_double(list[i].sojourn_s),
                              format_double(list[i].v_mixture_mbps),
                              format_double(list[i].v_little_mbps)});
    };
    emit(report.macro, "macro");
    emit(report.small, "small");
    return t;
}

Table sim_stats_to_table(const SimStats& stats) {
    Table t;
    t.header = {"cell", "metric", "mean", "ci95_halfwidth", "replications"};
    const std::string reps = format_int(stats.replications);
    auto emit = [&](const CellSimStats& cell, const char* name) {
        t.rows.push_back({name, "busy_fraction", format_double(cell.busy_fraction.mean),
                          format_double(cell.busy_fraction.ci95_halfwidth), reps});
        t.rows.push_back({name, "mean_flows", format_double(cell.total_flows.mean),
                          format_double(cell.total_flows.ci95_halfwidth), reps});
        for (std::size_t k = 0; k < cell.class_flows.size(); ++k)
            t.rows.push_back({name,
                              "mean_flows_class_" + format_int(static_cast<std::int64_t>(k + 1)),
                              format_double(cell.class_flows[k].mean),
                              format_double(cell.class_flows[k].ci95_halfwidth), reps});
    };
    emit(stats.macro, "macro");
    emit(stats.small, "small");
    return t;
}

FlowClassSet classes_for_scenario(const Config& cfg, const Scenario& sc) {
    const std::vector<double> levels = ccdf_level_grid(cfg);
    const RateRule rule = cfg.rate_rule == "max" ? RateRule::Max : RateRule::Mean;
    const CoverageSplit split = coverage_split(sc);
    if (!sc.has_active_small_cell()) {
        CcdfPair macro{ccdf_curve_macro_only(sc, levels),
                       ccdf_curve_macro_only(sc, levels)};
        return extract_classes(macro, std::nullopt, cfg.classes_macro,
                               cfg.classes_small, rule, split);
    }
    CcdfPair macro{ccdf_curve(sc, CellTag::Macro, Regime::WithoutPeer, levels),
                   ccdf_curve(sc, CellTag::Macro, Regime::WithPeer, levels)};
    CcdfPair small{ccdf_curve(sc, CellTag::Small, Regime::WithoutPeer, levels),
                   ccdf_curve(sc, CellTag::Small, Regime::WithPeer, levels)};
    return extract_classes(macro, small, cfg.classes_macro, cfg.classes_small,
                           rule, split);
}

RunResult cmd_static_ccdf(const Config& cfg, const RunOptions& opts) {
    const std::uint64_t seed = opts.seed.value_or(cfg.seed);
    internal::OutputTracker out(opts, cfg, "static-ccdf", seed);
    std::vector<std::string> warnings;
    const std::vector<double> levels = ccdf_level_grid(cfg);

    struct CurveJob {
        std::string file;
        Scenario scenario;
        CellTag cell;
        Regime regime;
        bool macro_only = false;
        CcdfCurve curve;
    };
    std::vector<CurveJob> jobs_list;
    jobs_list.push_back({"ccdf_macro_baseline.csv", baseline_scenario(cfg),
                         CellTag::Macro, Regime::WithoutPeer, true, {}});
    std::vector<std::pair<double, Scenario>> offset_scenarios;
    if (cfg.small_cell_enabled) {
        for (double o : cfg.offsets_m) {
            Scenario sc;
            try {
                sc = offset_scenario(cfg, o);
            } catch (const std::exception& e) {
                warnings.push_back("offset " + format_double(o) +
                                   " m skipped: " + e.what());
                continue;
            }
            offset_scenarios.emplace_back(o, sc);
            const std::string tag = offset_tag(o);
            jobs_list.push_back({"ccdf_macro_" + tag + ".csv", sc, CellTag::Macro,
                                 Regime::WithPeer, false, {}});
            jobs_list.push_back({"ccdf_macro_no_peer_" + tag + ".csv", sc,
                                 CellTag::Macro, Regime::WithoutPeer, false, {}});
            jobs_list.push_back({"ccdf_small_with_peer_" + tag + ".csv", sc,
                                 CellTag::Small, Regime::WithPeer, false, {}});
            jobs_list.push_back({"ccdf_small_no_peer_" + tag + ".csv", sc,
                                 CellTag::Small, Regime::WithoutPeer, false, {}});
        }
    }
    parallel_for(jobs_list.size(), opts.jobs, [&](std::size_t i) {
        CurveJob& job = jobs_list[i];
        job.curve = job.macro_only
                        ? ccdf_curve_macro_only(job.scenario, levels)
                        : ccdf_curve(job.scenario, job.cell, job.regime, levels);
    });
    for (const auto& job : jobs_list)
        out.write_table(job.file, ccdf_to_table(job.curve), job.file);

    if (opts.simulate) {
        // Monte-Carlo counterparts of every curve family
        const McCcdf base = monte_carlo_ccdf(baseline_scenario(cfg), cfg.mc_samples,
                                             derive_seed(seed, 1000), levels, opts.jobs);
        out.write_table("mc_ccdf_macro_baseline.csv", ccdf_to_table(base.macro_with_peer));
        for (std::size_t i = 0; i < offset_scenarios.size(); ++i) {
            const auto& [o, sc] = offset_scenarios[i];
            const std::string tag = offset_tag(o);
            const McCcdf mc = monte_carlo_ccdf(sc, cfg.mc_samples,
                                               derive_seed(seed, 1001 + i), levels,
                                               opts.jobs);
            out.write_table("mc_ccdf_macro_" + tag + ".csv",
                            ccdf_to_table(mc.macro_with_peer));
            out.write_table("mc_ccdf_macro_no_peer_" + tag + ".csv",
                            ccdf_to_table(mc.macro_without_peer));
            if (mc.small_with_peer) {
                out.write_table("mc_ccdf_small_with_peer_" + tag + ".csv",
                                ccdf_to_table(*mc.small_with_peer));
                out.write_table("mc_ccdf_small_no_peer_" + tag + ".csv",
                                ccdf_to_table(*mc.small_without_peer));
            }
        }
    }
    return out.finish(std::move(warnings));
}

RunResult cmd_sweep_hotspot(const Config& cfg, const RunOptions& opts) {
    const std::uint64_t seed = opts.seed.value_or(cfg.seed);
    internal::OutputTracker out(opts, cfg, "sweep-hotspot", seed);
    std::vector<std::string> warnings;

    const double radius = baseline_scenario(cfg).radius();
    std::vector<double> r_grid;
    for (double r : linspace(cfg.r_h_min_km, cfg.r_h_max_km, cfg.r_h_steps)) {
        if (r >= radius) {
            warnings.push_back("r_h = " + format_double(r) +
                               " km >= cell radius, row skipped");
            continue;
        }
        r_grid.push_back(r);
    }

    Table t;
    t.header = {"r_h_km", "baseline_mbps"};
    std::vector<double> offsets;
    if (cfg.small_cell_enabled) {
        for (double o : cfg.offsets_m) {
            offsets.push_back(o);
            const std::string tag = offset_tag(o);
            t.header.push_back("overall_" + tag + "_mbps");
            t.header.push_back("macro_" + tag + "_mbps");
            t.header.push_back("small_" + tag + "_mbps");
        }
    }

    struct Row {
        double r_h;
        double baseline;
        std::vector<std::optional<MeanPeak>> per_offset;
    };
    std::vector<Row> rows(r_grid.size());
    std::mutex warn_mutex;
    parallel_for(r_grid.size(), opts.jobs, [&](std::size_t i) {
        Config point_cfg = cfg;
        point_cfg.r_h_km = r_grid[i];
        Row row;
        row.r_h = r_grid[i];
        row.baseline = mean_peak_throughput(baseline_scenario(point_cfg)).overall_mbps;
        for (double o : offsets) {
            try {
                row.per_offset.push_back(
                    mean_peak_throughput(offset_scenario(point_cfg, o)));
            } catch (const std::exception& e) {
                row.per_offset.push_back(std::nullopt);
                std::lock_guard<std::mutex> lock(warn_mutex);
                warnings.push_back("r_h = " + format_double(r_grid[i]) + ", offset " +
                                   format_double(o) + " m skipped: " + e.what());
            }
        }
        rows[i] = std::move(row);
    });

    for (const auto& row : rows) {
        std::vector<std::string> cells{format_double(row.r_h),
                                       format_double(row.baseline)};
        for (const auto& mp : row.per_offset) {
            if (mp) {
                cells.push_back(format_double(mp->overall_mbps));
                cells.push_back(format_double(mp->macro_mbps));
                cells.push_back(format_double(mp->small_mbps));
            } else {
                cells.insert(cells.end(), {"", "", ""});
            }
        }
        t.rows.push_back(std::move(cells));
    }
    out.write_table("sweep_hotspot.csv", t, "mean peak throughput vs hotspot radius");
    return out.finish(std::move(warnings));
}

RunResult cmd_absorption(const Config& cfg, const RunOptions& opts) {
    const std::uint64_t seed = opts.seed.value_or(cfg.seed);
    internal::OutputTracker out(opts, cfg, "absorption", seed);
    std::vector<std::string> warnings;
    if (!cfg.small_cell_enabled)
        warnings.push_back("small cell disabled: absorption is identically 0");

    Table t;
    t.header = {"offset_m", "small_share", "macro_share", "macro_mass", "small_mass"};
    std::vector<std::vector<std::string>> rows(cfg.offsets_m.size());
    std::mutex warn_mutex;
    parallel_for(cfg.offsets_m.size(), opts.jobs, [&](std::size_t i) {
        const double o = cfg.offsets_m[i];
        try {
            const Scenario sc = cfg.small_cell_enabled ? offset_scenario(cfg, o)
                                                       : baseline_scenario(cfg);
            const CoverageSplit split = coverage_split(sc);
            const double total = split.total();
            const double share = total > 0.0 ? split.small_mass / total : 0.0;
            rows[i] = {format_double(o), format_double(share),
                       format_double(1.0 - share), format_double(split.macro_mass),
                       format_double(split.small_mass)};
        } catch (const std::exception& e) {
            rows[i] = {format_double(o), "", "", "", ""};
            std::lock_guard<std::mutex> lock(warn_mutex);
            warnings.push_back("offset " + format_double(o) + " m skipped: " + e.what());
        }
    });
    t.rows = std::move(rows);
    out.write_table("absorption.csv", t, "traffic shares vs positioning offset");
    return out.finish(std::move(warnings));
}

RunResult cmd_dynamic(const Config& cfg, const RunOptions& opts) {
    const std::uint64_t seed = opts.seed.value_or(cfg.seed);
    internal::OutputTracker out(opts, cfg, "dynamic", seed);
    std::vector<std::string> warnings;

    struct ScenarioSlot {
        std::string tag;
        Scenario scenario;
        bool has_small = false;
        FlowClassSet classes;
    };
    std::vector<ScenarioSlot> slots;
    slots.push_back({"baseline", baseline_scenario(cfg), false, {}});
    if (cfg.small_cell_enabled) {
        for (double o : cfg.offsets_m) {
            try {
                slots.push_back({offset_tag(o), offset_scenario(cfg, o), true, {}});
            } catch (const std::exception& e) {
                warnings.push_back("offset " + format_double(o) +
                                   " m skipped: " + e.what());
            }
        }
    }
    parallel_for(slots.size(), opts.jobs, [&](std::size_t i) {
        slots[i].classes = classes_for_scenario(cfg, slots[i].scenario);
    });
    for (const auto& slot : slots) {
        for (const auto& w : slot.classes.warnings)
            warnings.push_back(slot.tag + ": " + w);
        out.write_table("classes_" + slot.tag + ".csv",
                        classes_to_table(slot.classes));
    }

    const std::vector<double> lambdas =
        linspace(cfg.lambda_min, cfg.lambda_max, cfg.lambda_steps);

    struct PointResult {
        bool stable = false;
        CellLoads loads;
        MeanFlows flows;
        PerfReport perf;
        std::optional<SimStats> sim;
    };
    std::vector<std::vector<PointResult>> grid(
        lambdas.size(), std::vector<PointResult>(slots.size()));

    parallel_for(lambdas.size() * slots.size(), opts.jobs, [&](std::size_t idx) {
        const std::size_t li = idx / slots.size();
        const std::size_t si = idx % slots.size();
        PointResult& pt = grid[li][si];
        TrafficModel traffic{lambdas[li], cfg.file_size_mbit, slots[si].classes};
        try {
            pt.loads = solve_loads(traffic);
            pt.flows = mean_flows(traffic, pt.loads);
            pt.perf = class_throughput(traffic, pt.loads);
            pt.stable = true;
        } catch (const StabilityError&) {
            pt.stable = false;
        }
        if (opts.simulate && traffic.lambda_tot > 0.0) {
            SimConfig sim_cfg;
            sim_cfg.seed = derive_seed(derive_seed(seed, si), li);
            sim_cfg.measured_events = cfg.events;
            sim_cfg.warmup_events =
                cfg.warmup_events >= 0 ? cfg.warmup_events : cfg.events / 5;
            sim_cfg.replications = cfg.replications;
            sim_cfg.guard_max_flows = cfg.guard_max_flows;
            pt.sim = run_simulation(traffic, sim_cfg);
        }
    });

    // loads file
    {
        Table t;
        t.header = {"lambda_tot"};
        for (const auto& slot : slots) {
            t.header.push_back("rho_macro_" + slot.tag);
            if (slot.has_small)
                t.header.push_back("rho_small_" + slot.tag);
            t.header.push_back("stable_" + slot.tag);
            if (opts.simulate) {
                t.header.push_back("sim_busy_macro_" + slot.tag);
                t.header.push_back("sim_busy_macro_ci_" + slot.tag);
                if (slot.has_small) {
                    t.header.push_back("sim_busy_small_" + slot.tag);
                    t.header.push_back("sim_busy_small_ci_" + slot.tag);
                }
            }
        }
        for (std::size_t li = 0; li < lambdas.size(); ++li) {
            std::vector<std::string> row{format_double(lambdas[li])};
            for (std::size_t si = 0; si < slots.size(); ++si) {
                const PointResult& pt = grid[li][si];
                row.push_back(pt.stable ? format_double(pt.loads.rho_macro) : "");
                if (slots[si].has_small)
                    row.push_back(pt.stable ? format_double(pt.loads.rho_small) : "");
                row.push_back(pt.stable ? "1" : "0");
                if (opts.simulate) {
                    if (pt.sim && !pt.sim->unstable) {
                        row.push_back(format_double(pt.sim->macro.busy_fraction.mean));
                        row.push_back(
                            format_double(pt.sim->macro.busy_fraction.ci95_halfwidth));
                        if (slots[si].has_small) {
                            row.push_back(format_double(pt.sim->small.busy_fraction.mean));
                            row.push_back(
                                format_double(pt.sim->small.busy_fraction.ci95_halfwidth));
                        }
                    } else {
                        row.insert(row.end(), slots[si].has_small ? 4 : 2, "");
                    }
                }
            }
            t.rows.push_back(std::move(row));
        }
        out.write_table("dynamic_loads.csv", t, "cell loads vs arrival intensity");
    }

    // mean flow counts file
    {
        Table t;
        t.header = {"lambda_tot"};
        for (const auto& slot : slots) {
            t.header.push_back("n_macro_" + slot.tag);
            if (slot.has_small)
                t.header.push_back("n_small_" + slot.tag);
            if (opts.simulate) {
                t.header.push_back("sim_n_macro_" + slot.tag);
                t.header.push_back("sim_n_macro_ci_" + slot.tag);
                if (slot.has_small) {
                    t.header.push_back("sim_n_small_" + slot.tag);
                    t.header.push_back("sim_n_small_ci_" + slot.tag);
                }
            }
        }
        for (std::size_t li = 0; li < lambdas.size(); ++li) {
            std::vector<std::string> row{format_double(lambdas[li])};
            for (std::size_t si = 0; si < slots.size(); ++si) {
                const PointResult& pt = grid[li][si];
                row.push_back(pt.stable ? format_double(pt.flows.macro_total) : "");
                if (slots[si].has_small)
                    row.push_back(pt.stable ? format_double(pt.flows.small_total) : "");
                if (opts.simulate) {
                    if (pt.sim && !pt.sim->unstable) {
                        row.push_back(format_double(pt.sim->macro.total_flows.mean));
                        row.push_back(
                            format_double(pt.sim->macro.total_flows.ci95_halfwidth));
                        if (slots[si].has_small) {
                            row.push_back(format_double(pt.sim->small.total_flows.mean));
                            row.push_back(
                                format_double(pt.sim->small.total_flows.ci95_halfwidth));
                        }
                    } else {
                        row.insert(row.end(), slots[si].has_small ? 4 : 2, "");
                    }
                }
            }
            t.rows.push_back(std::move(row));
        }
        out.write_table("dynamic_flows.csv", t, "mean flow counts vs arrival intensity");
    }

    // throughput file (both stationary-throughput definitions)
    {
        Table t;
        t.header = {"lambda_tot"};
        for (const auto& slot : slots) {
            t.header.push_back("v_mixture_macro_" + slot.tag);
            t.header.push_back("v_little_macro_" + slot.tag);
            if (slot.has_small) {
                t.header.push_back("v_mixture_small_" + slot.tag);
                t.header.push_back("v_little_small_" + slot.tag);
            }
        }
        for (std::size_t li = 0; li < lambdas.size(); ++li) {
            std::vector<std::string> row{format_double(lambdas[li])};
            for (std::size_t si = 0; si < slots.size(); ++si) {
                const PointResult& pt = grid[li][si];
                row.push_back(pt.stable ? format_double(pt.perf.macro_v_mixture_mbps) : "");
                row.push_back(pt.stable ? format_double(pt.perf.macro_v_little_mbps) : "");
                if (slots[si].has_small) {
                    row.push_back(pt.stable ? format_double(pt.perf.small_v_mixture_mbps)
                                            : "");
                    row.push_back(pt.stable ? format_double(pt.perf.small_v_little_mbps)
                                            : "");
                }
            }
            t.rows.push_back(std::move(row));
        }
        out.write_table("dynamic_throughput.csv", t,
                        "flow throughput vs arrival intensity");
    }

    // per-class reports (and simulation stats) at the configured lambda_tot
    for (std::size_t si = 0; si < slots.size(); ++si) {
        TrafficModel traffic{cfg.lambda_tot, cfg.file_size_mbit, slots[si].classes};
        try {
            const CellLoads loads = solve_loads(traffic);
            out.write_table("perf_classes_" + slots[si].tag + ".csv",
                            perf_to_table(class_throughput(traffic, loads)));
        } catch (const StabilityError& e) {
            warnings.push_back("perf report at lambda_tot skipped (" + slots[si].tag +
                               "): " + e.what());
        }
        if (opts.simulate && cfg.lambda_tot > 0.0) {
            SimConfig sim_cfg;
            sim_cfg.seed = derive_seed(seed, 5000 + si);
            sim_cfg.measured_events = cfg.events;
            sim_cfg.warmup_events =
                cfg.warmup_events >= 0 ? cfg.warmup_events : cfg.events / 5;
            sim_cfg.replications = cfg.replications;
            sim_cfg.guard_max_flows = cfg.guard_max_flows;
            const SimStats stats = run_simulation(traffic, sim_cfg);
            if (stats.unstable)
                warnings.push_back("simulation at lambda_tot unstable (" +
                                   slots[si].tag + "): " + stats.instability_note);
            out.write_table("sim_stats_" + slots[si].tag + ".csv",
                            sim_stats_to_table(stats));
        }
    }
    return out.finish(std::move(warnings));
}

}  // namespace hetperf
