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

#ifndef HETPERF_CSV_HPP
#define HETPERF_CSV_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hetperf {
namespace csvio {

/// Shortest round-trip decimal form, '.' separator, locale-independent.
/// NaN renders as the empty string (blank CSV cell).
std::string format_double(double v);
std::string format_int(std::int64_t v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string to_string(const Table& table);
void write_file(const std::filesystem::path& path, const std::string& content);
void write_csv(const std::filesystem::path& path, const Table& table);

/// FNV-1a 64-bit over raw bytes; used for output checksums in manifests.
std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string hex64(std::uint64_t v);

}  // namespace csvio
}  // namespace hetperf

#endif  // HETPERF_CSV_HPP
