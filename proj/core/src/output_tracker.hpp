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

// Internal helper (not installed): collects the output files of one
// command run and writes the run manifest.

#ifndef HETPERF_SRC_OUTPUT_TRACKER_HPP
#define HETPERF_SRC_OUTPUT_TRACKER_HPP

#include <ctime>
#include <string>
#include <vector>

#include <json.hpp>

#include "hetperf/experiments.hpp"
#include "hetperf/plot.hpp"

namespace hetperf {
namespace internal {

inline std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class OutputTracker {
public:
    OutputTracker(const RunOptions& opts, const Config& cfg, std::string command,
                  std::uint64_t seed)
        : opts_(opts), cfg_(cfg), command_(std::move(command)), seed_(seed) {
        cfg_.seed = seed;  // echo the effective seed so reruns reproduce it
        std::filesystem::create_directories(opts.out_dir);
        write_text("resolved.ini", serialize_config(cfg_));
    }

    void write_text(const std::string& name, const std::string& content) {
        csvio::write_file(opts_.out_dir / name, content);
        files_.push_back(name);
    }

    void write_table(const std::string& name, const csvio::Table& table,
                     const std::string& plot_title = "") {
        csvio::write_csv(opts_.out_dir / name, table);
        files_.push_back(name);
        if (opts_.plots) {
            const std::string svg_name = name.substr(0, name.rfind('.')) + ".svg";
            csvio::write_file(opts_.out_dir / svg_name,
                              svg_line_chart(table, plot_title.empty() ? name : plot_title));
            files_.push_back(svg_name);
        }
    }

    RunResult finish(std::vector<std::string> warnings) {
        nlohmann::ordered_json manifest;
        manifest["tool"] = "hetperf";
        manifest["version"] = kArtifactVersion;
        manifest["command"] = command_;
        manifest["created_utc"] = utc_now();
        manifest["seed"] = seed_;
        manifest["jobs"] = opts_.jobs;
        manifest["simulate"] = opts_.simulate;
        manifest["config"] = serialize_config(cfg_);
        auto outputs = nlohmann::ordered_json::array();
        for (const auto& f : files_) {
            nlohmann::ordered_json entry;
            entry["file"] = f;
            entry["fnv1a64"] = csvio::hex64(csvio::fnv1a64_file(opts_.out_dir / f));
            outputs.push_back(entry);
        }
        manifest["outputs"] = outputs;
        csvio::write_file(opts_.out_dir / "manifest.json", manifest.dump(2) + "\n");

        RunResult result;
        result.files = files_;
        result.files.push_back("manifest.json");
        result.warnings = std::move(warnings);
        return result;
    }

private:
    const RunOptions& opts_;
    Config cfg_;
    std::string command_;
    std::uint64_t seed_;
    std::vector<std::string> files_;
};

}  // namespace internal
}  // namespace hetperf

#endif  // HETPERF_SRC_OUTPUT_TRACKER_HPP
