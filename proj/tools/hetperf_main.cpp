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

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hetperf/experiments.hpp"

namespace {

struct CliCommon {
    std::string config_path;
    std::string out_dir = "out";
    std::int64_t seed = -1;
    bool simulate = false;
    int jobs = 1;
    bool plots = false;
};

void add_common(CLI::App* cmd, CliCommon& common) {
    cmd->add_option("--config", common.config_path,
                    "configuration file (INI) or a previous run manifest (JSON); "
                    "defaults to the built-in reference preset");
    cmd->add_option("--out", common.out_dir, "output directory");
    cmd->add_option("--seed", common.seed, "seed override for stochastic outputs");
    cmd->add_flag("--simulate", common.simulate,
                  "also run the event simulator / Monte-Carlo counterparts");
    cmd->add_option("--jobs", common.jobs, "worker threads for sweeps and sampling");
    cmd->add_flag("--plots", common.plots, "write an SVG line chart per CSV");
}

hetperf::Config load(const CliCommon& common) {
    if (common.config_path.empty())
        return hetperf::reference_preset();
    return hetperf::load_config_file(common.config_path);
}

hetperf::RunOptions options(const CliCommon& common) {
    hetperf::RunOptions opts;
    opts.out_dir = common.out_dir;
    if (common.seed >= 0)
        opts.seed = static_cast<std::uint64_t>(common.seed);
    opts.simulate = common.simulate;
    opts.jobs = common.jobs;
    opts.plots = common.plots;
    return opts;
}

void report(const hetperf::RunResult& result, const std::string& out_dir) {
    for (const auto& w : result.warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    std::printf("wrote %zu files to %s\n", result.files.size(), out_dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hetperf - small-cell placement performance toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", hetperf::kArtifactVersion);

    CliCommon common;
    double omega_scale = 1.0;

    CLI::App* static_ccdf = app.add_subcommand(
        "static-ccdf", "throughput CCDFs for the benchmark and offset deployments");
    add_common(static_ccdf, common);
    CLI::App* sweep = app.add_subcommand(
        "sweep-hotspot", "mean peak throughput vs hotspot radius");
    add_common(sweep, common);
    CLI::App* absorption = app.add_subcommand(
        "absorption", "traffic shares absorbed by each cell vs positioning offset");
    add_common(absorption, common);
    CLI::App* dynamic = app.add_subcommand(
        "dynamic", "flow-level loads, mean flows and throughputs vs arrival intensity");
    add_common(dynamic, common);
    CLI::App* validate = app.add_subcommand(
        "validate", "oracle suites: closed forms vs lattice / Monte Carlo / simulation");
    add_common(validate, common);
    validate
        ->add_option("--omega-scale", omega_scale,
                     "scale the lattice constant (negative-control test hook)")
        ->group("");  // hidden

    CLI11_PARSE(app, argc, argv);

    try {
        const hetperf::Config cfg = load(common);
        const hetperf::RunOptions opts = options(common);
        if (static_ccdf->parsed()) {
            report(hetperf::cmd_static_ccdf(cfg, opts), common.out_dir);
        } else if (sweep->parsed()) {
            report(hetperf::cmd_sweep_hotspot(cfg, opts), common.out_dir);
        } else if (absorption->parsed()) {
            report(hetperf::cmd_absorption(cfg, opts), common.out_dir);
        } else if (dynamic->parsed()) {
            report(hetperf::cmd_dynamic(cfg, opts), common.out_dir);
        } else if (validate->parsed()) {
            hetperf::ValidateOptions vopts;
            vopts.omega_scale = omega_scale;
            const hetperf::ValidationReport rep = hetperf::cmd_validate(cfg, opts, vopts);
            for (const auto& c : rep.checks)
                std::printf("[%s] %s (measured %.6g, threshold %.6g)\n",
                            c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                            c.threshold);
            if (!rep.all_pass) {
                std::fprintf(stderr, "validation failed\n");
                return 3;
            }
            std::printf("validation passed (%zu checks)\n", rep.checks.size());
        }
    } catch (const hetperf::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
