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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hetperf/experiments.hpp"

using namespace hetperf;
namespace fs = std::filesystem;

namespace {

// small problem sizes so the command suite stays fast
Config quick_config() {
    Config cfg = reference_preset();
    cfg.ccdf_levels = 24;
    cfg.offsets_m = {0.0, 120.0};
    cfg.r_h_steps = 4;
    cfg.r_h_min_km = 0.1;
    cfg.r_h_max_km = 0.5;
    cfg.lambda_steps = 4;
    cfg.lambda_min = 0.25;
    cfg.lambda_max = 1.0;
    cfg.classes_macro = 5;
    cfg.classes_small = 5;
    cfg.mc_samples = 20000;
    cfg.events = 30000;
    cfg.replications = 3;
    return cfg;
}

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("hetperf_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE_MESSAGE(f.good(), "missing " << p.string());
    return std::string((std::istreambuf_iterator<char>(f)),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("static-ccdf writes the expected file set") {
    const Config cfg = quick_config();
    RunOptions opts;
    opts.out_dir = temp_dir("static");
    const RunResult res = cmd_static_ccdf(cfg, opts);
    CHECK(fs::exists(opts.out_dir / "manifest.json"));
    CHECK(fs::exists(opts.out_dir / "resolved.ini"));
    CHECK(fs::exists(opts.out_dir / "ccdf_macro_baseline.csv"));
    CHECK(fs::exists(opts.out_dir / "ccdf_macro_off0m.csv"));
    CHECK(fs::exists(opts.out_dir / "ccdf_small_with_peer_off120m.csv"));
    CHECK(fs::exists(opts.out_dir / "ccdf_small_no_peer_off0m.csv"));
    const std::string header = slurp(opts.out_dir / "ccdf_macro_off0m.csv");
    CHECK(header.rfind("level_mbps,prob,stderr\n", 0) == 0);
    CHECK(res.files.size() >= 10);

    // scenario-1 config: no small-cell files at all
    Config no_sc = cfg;
    no_sc.small_cell_enabled = false;
    RunOptions opts2;
    opts2.out_dir = temp_dir("static_nosc");
    cmd_static_ccdf(no_sc, opts2);
    CHECK(fs::exists(opts2.out_dir / "ccdf_macro_baseline.csv"));
    CHECK_FALSE(fs::exists(opts2.out_dir / "ccdf_small_with_peer_off0m.csv"));
}

TEST_CASE("analytic outputs are byte-identical across reruns") {
    const Config cfg = quick_config();
    RunOptions a, b;
    a.out_dir = temp_dir("rerun_a");
    b.out_dir = temp_dir("rerun_b");
    a.jobs = 1;
    b.jobs = 3;  // worker count must not affect the bytes
    cmd_static_ccdf(cfg, a);
    cmd_static_ccdf(cfg, b);
    for (const auto& entry : fs::directory_iterator(a.out_dir)) {
        const std::string name = entry.path().filename().string();
        if (name == "manifest.json")
            continue;  // carries a timestamp
        CHECK_MESSAGE(slurp(entry.path()) == slurp(b.out_dir / name), name);
    }
}

TEST_CASE("simulation outputs are byte-identical given the same seed") {
    Config cfg = quick_config();
    cfg.lambda_steps = 2;
    cfg.offsets_m = {0.0};
    RunOptions a, b;
    a.out_dir = temp_dir("sim_a");
    b.out_dir = temp_dir("sim_b");
    a.simulate = b.simulate = true;
    a.seed = b.seed = 31415;
    cmd_dynamic(cfg, a);
    cmd_dynamic(cfg, b);
    for (const auto& entry : fs::directory_iterator(a.out_dir)) {
        const std::string name = entry.path().filename().string();
        if (name == "manifest.json")
            continue;
        CHECK_MESSAGE(slurp(entry.path()) == slurp(b.out_dir / name), name);
    }
    // a different seed must change the simulated columns
    RunOptions c;
    c.out_dir = temp_dir("sim_c");
    c.simulate = true;
    c.seed = 31416;
    cmd_dynamic(cfg, c);
    CHECK(slurp(a.out_dir / "dynamic_loads.csv") !=
          slurp(c.out_dir / "dynamic_loads.csv"));
}

TEST_CASE("manifest lists every output with its checksum") {
    const Config cfg = quick_config();
    RunOptions opts;
    opts.out_dir = temp_dir("manifest");
    const RunResult res = cmd_absorption(cfg, opts);
    const std::string manifest = slurp(opts.out_dir / "manifest.json");
    for (const auto& f : res.files) {
        if (f == "manifest.json")
            continue;
        CHECK_MESSAGE(manifest.find("\"" + f + "\"") != std::string::npos, f);
        const auto checksum =
            csvio::hex64(csvio::fnv1a64_file(opts.out_dir / f));
        CHECK_MESSAGE(manifest.find(checksum) != std::string::npos,
                      f << " checksum " << checksum);
    }
}

TEST_CASE("rerun from a manifest reproduces the outputs") {
    const Config cfg = quick_config();
    RunOptions first;
    first.out_dir = temp_dir("from_manifest_a");
    first.seed = 777;
    cmd_static_ccdf(cfg, first);

    const Config reloaded =
        load_config_file((first.out_dir / "manifest.json").string());
    CHECK(reloaded.seed == 777);
    RunOptions second;
    second.out_dir = temp_dir("from_manifest_b");
    cmd_static_ccdf(reloaded, second);
    CHECK(slurp(first.out_dir / "ccdf_macro_off0m.csv") ==
          slurp(second.out_dir / "ccdf_macro_off0m.csv"));
    CHECK(slurp(first.out_dir / "resolved.ini") ==
          slurp(second.out_dir / "resolved.ini"));
}

TEST_CASE("sweep-hotspot orderings around the measured deployment region") {
    Config cfg = quick_config();
    cfg.r_h_steps = 3;
    cfg.r_h_min_km = 0.1;
    cfg.r_h_max_km = 0.5;
    cfg.offsets_m = {0.0};
    RunOptions opts;
    opts.out_dir = temp_dir("sweep");
    const RunResult res = cmd_sweep_hotspot(cfg, opts);
    (void)res;
    const std::string csv = slurp(opts.out_dir / "sweep_hotspot.csv");
    // header + 3 rows
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.rfind("r_h_km,baseline_mbps,overall_off0m_mbps,", 0) == 0);
}

TEST_CASE("empty sweep range yields a header-only file") {
    Config cfg = quick_config();
    cfg.r_h_min_km = 0.9;  // beyond the cell radius: every row skipped
    cfg.r_h_max_km = 0.95;
    cfg.r_h_steps = 2;
    RunOptions opts;
    opts.out_dir = temp_dir("sweep_empty");
    const RunResult res = cmd_sweep_hotspot(cfg, opts);
    CHECK(res.warnings.size() == 2);
    const std::string csv = slurp(opts.out_dir / "sweep_hotspot.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
}

TEST_CASE("absorption decreases with the positioning offset") {
    Config cfg = quick_config();
    cfg.offsets_m = {0.0, 60.0, 120.0};
    RunOptions opts;
    opts.out_dir = temp_dir("absorption");
    cmd_absorption(cfg, opts);
    const std::string csv = slurp(opts.out_dir / "absorption.csv");
    std::vector<double> shares;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        shares.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    REQUIRE(shares.size() == 3);
    CHECK(shares[0] > shares[1]);
    CHECK(shares[1] > shares[2]);
}

TEST_CASE("dynamic: baseline load dominates the offloaded one") {
    Config cfg = quick_config();
    cfg.offsets_m = {0.0};
    RunOptions opts;
    opts.out_dir = temp_dir("dynamic");
    const RunResult res = cmd_dynamic(cfg, opts);
    (void)res;
    CHECK(fs::exists(opts.out_dir / "classes_baseline.csv"));
    CHECK(fs::exists(opts.out_dir / "classes_off0m.csv"));
    CHECK(fs::exists(opts.out_dir / "perf_classes_off0m.csv"));
    const std::string csv = slurp(opts.out_dir / "dynamic_loads.csv");
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line ==
          "lambda_tot,rho_macro_baseline,stable_baseline,rho_macro_off0m,"
          "rho_small_off0m,stable_off0m");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        REQUIRE(cells.size() == 6);
        if (cells[2] == "1" && cells[5] == "1") {
            CHECK(std::stod(cells[3]) < std::stod(cells[1]));
            // the offloaded small cell carries less load than the macro
            // for this edge-hotspot deployment
            CHECK(std::stod(cells[4]) < std::stod(cells[3]));
        }
    }
    CHECK(rows == cfg.lambda_steps);
}

TEST_CASE("plots are emitted on demand") {
    Config cfg = quick_config();
    cfg.offsets_m = {0.0};
    RunOptions opts;
    opts.out_dir = temp_dir("plots");
    opts.plots = true;
    cmd_absorption(cfg, opts);
    CHECK(fs::exists(opts.out_dir / "absorption.svg"));
    const std::string svg = slurp(opts.out_dir / "absorption.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("validation negative control: corrupted lattice constant fails") {
    Config cfg = quick_config();
    cfg.mc_samples = 5000;
    cfg.events = 5000;
    cfg.replications = 2;
    RunOptions opts;
    opts.out_dir = temp_dir("validate_neg");
    ValidateOptions vopts;
    vopts.omega_scale = 0.5;
    vopts.mc_samples_override = 5000;
    vopts.sim_events_override = 5000;
    const ValidationReport rep = cmd_validate(cfg, opts, vopts);
    CHECK_FALSE(rep.all_pass);
    bool g_failed = false;
    for (const auto& c : rep.checks)
        if (c.name == "g_closed_vs_lattice_printed")
            g_failed = !c.pass;
    CHECK(g_failed);
    CHECK(fs::exists(opts.out_dir / "validation.json"));
    const std::string json = slurp(opts.out_dir / "validation.json");
    CHECK(json.find("\"all_pass\": false") != std::string::npos);
}

TEST_CASE("validation json schema is stable") {
    Config cfg = quick_config();
    RunOptions opts;
    opts.out_dir = temp_dir("validate_schema");
    ValidateOptions vopts;
    vopts.mc_samples_override = 4000;
    vopts.sim_events_override = 4000;
    const ValidationReport rep = cmd_validate(cfg, opts, vopts);
    const std::string json = validation_to_json(rep);
    for (const char* key : {"\"all_pass\"", "\"checks\"", "\"name\"", "\"pass\"",
                            "\"measured\"", "\"threshold\"", "\"details\""})
        CHECK(json.find(key) != std::string::npos);
}
