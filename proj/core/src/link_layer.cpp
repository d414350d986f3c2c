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

#include "hetperf/link_layer.hpp"

#include <cmath>
#include <stdexcept>

namespace hetperf {

void LinkCurve::validate() const {
    if (!(k1 > 0.0) || !(k2 > 0.0) || !(bandwidth_mhz > 0.0) || !(eta0_mbps > 0.0))
        throw std::invalid_argument("LinkCurve: all fields must be strictly positive");
}

double throughput_of_sinr(double sinr, const LinkCurve& curve) {
    if (std::isnan(sinr) || sinr < 0.0)
        throw std::domain_error("throughput_of_sinr: SINR must be >= 0");
    if (std::isinf(sinr))
        return curve.eta0_mbps;
    const double shannon = curve.k1 * curve.bandwidth_mhz * std::log1p(curve.k2 * sinr);
    return std::min(shannon, curve.eta0_mbps);
}

double psi(double level_mbps, const LinkCurve& curve) {
    if (!(level_mbps > 0.0))
        throw std::domain_error("psi: level must be > 0 (psi diverges at 0)");
    if (level_mbps > curve.eta0_mbps)
        throw std::domain_error("psi: level above the eta0 cap (CCDF is identically 0 there)");
    return curve.k2 / std::expm1(level_mbps / (curve.k1 * curve.bandwidth_mhz));
}

double saturation_sinr(const LinkCurve& curve) {
    return std::expm1(curve.eta0_mbps / (curve.k1 * curve.bandwidth_mhz)) / curve.k2;
}

}  // namespace hetperf
