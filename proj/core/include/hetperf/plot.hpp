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

#ifndef HETPERF_PLOT_HPP
#define HETPERF_PLOT_HPP

#include <string>

#include "hetperf/csv.hpp"

namespace hetperf {

// Convenience line chart of a CSV table (first column = x axis, every
// numeric column a series). Returns an SVG document.
std::string svg_line_chart(const csvio::Table& table, const std::string& title);

}  // namespace hetperf

#endif  // HETPERF_PLOT_HPP
