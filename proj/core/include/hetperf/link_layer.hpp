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

#ifndef HETPERF_LINK_LAYER_HPP
#define HETPERF_LINK_LAYER_HPP

namespace hetperf {

/// Modified Shannon link curve: throughput = min(K1*W*ln(1 + K2*sinr), eta0).
/// Defaults are a UE category 3 fit at 20 MHz.
struct LinkCurve {
    double k1 = 0.85;
    double k2 = 1.9;
    double bandwidth_mhz = 20.0;
    double eta0_mbps = 98.0;

    void validate() const;  // throws std::invalid_argument
};

/// Peak user throughput in Mbps for a linear SINR >= 0.
double throughput_of_sinr(double sinr, const LinkCurve& curve);

/// Threshold transform psi(l) = K2 / (exp(l/(K1*W)) - 1) for 0 < l <= eta0.
/// For any sinr > 0: throughput_of_sinr(sinr) >= l  <=>  1/sinr <= psi(l).
double psi(double level_mbps, const LinkCurve& curve);

/// SINR at which the curve saturates: throughput_of_sinr(x) == eta0 exactly
/// for all x >= saturation_sinr(curve).
double saturation_sinr(const LinkCurve& curve);

}  // namespace hetperf

#endif  // HETPERF_LINK_LAYER_HPP
