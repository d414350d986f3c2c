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

#ifndef HETPERF_NUMERICS_HPP
#define HETPERF_NUMERICS_HPP

#include <cstdint>
#include <functional>

namespace hetperf {
namespace numerics {

/// Tolerances and budget for the adaptive quadrature routines.
struct QuadratureSpec {
    double abs_tol = 1e-9;
    double rel_tol = 1e-7;
    std::int64_t max_subdivisions = 1000000;

    void validate() const;  // throws std::invalid_argument on bad fields
};

/// Outcome of a 1-D integration. `converged == false` means the subdivision
/// budget ran out; `value` is still the best available estimate and
/// `error_bound` its estimated absolute error.
struct IntegralResult {
    double value = 0.0;
    double error_bound = 0.0;
    bool converged = true;
    std::int64_t subdivisions = 0;
};

/// Modified Bessel function of the first kind, order zero.
/// Power series sum; relative error below 1e-12 for x <= 50.
double bessel_i0(double x);

/// Hurwitz zeta sum_{n>=0} (n+a)^{-s} for s > 1, a > 0.
/// Direct summation plus Euler-Maclaurin tail; relative error <= 1e-10
/// for s in (1, 5].
double hurwitz_zeta(double s, double a);

/// Riemann zeta for s > 1 (hurwitz_zeta with a = 1).
double riemann_zeta(double s);

/// Natural log of Gamma(x) for x > 0, Lanczos approximation.
double log_gamma(double x);

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [lo, hi].
/// Deterministic for fixed inputs. Never throws on budget exhaustion;
/// inspect `converged`.
IntegralResult integrate_1d(const std::function<double(double)>& f,
                            double lo, double hi,
                            const QuadratureSpec& spec = QuadratureSpec{});

/// Invert an increasing function by bisection: returns x in [lo, hi] with
/// f(x) ~= y, final bracket width <= tol. Throws std::out_of_range when y
/// lies outside [f(lo), f(hi)].
double invert_monotone(const std::function<double(double)>& f,
                       double y, double lo, double hi, double tol);

}  // namespace numerics
}  // namespace hetperf

#endif  // HETPERF_NUMERICS_HPP
