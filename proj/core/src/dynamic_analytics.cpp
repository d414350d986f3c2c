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

#include "hetperf/dynamic_analytics.hpp"

#include <cmath>
#include <functional>

#include "hetperf/numerics.hpp"

namespace hetperf {

namespace {

void check_class(const FlowClass& c, const char* cell) {
    if (!(c.p > 0.0) || !(c.p <= 1.0))
        throw std::invalid_argument(std::string("TrafficModel: bad class share in ") + cell);
    if (!(c.rate_with_peer_mbps > 0.0) ||
        !(c.rate_no_peer_mbps >= c.rate_with_peer_mbps))
        throw std::invalid_argument(
            std::string("TrafficModel: class rates must satisfy no_peer >= with_peer > 0 in ") + cell);
}

// per-class offered work a = lambda * sigma0 / rate for both regimes
struct Work {
    double idle_sum = 0.0;   // sum lambda_k sigma0 / eta_{k,0}
    double busy_sum = 0.0;   // sum lambda_k sigma0 / eta_{k,1}
    double delta() const { return busy_sum - idle_sum; }
};

Work offered_work(const std::vector<FlowClass>& classes,
                  const std::vector<double>& lambdas, double sigma0) {
    Work w;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        w.idle_sum += lambdas[i] * sigma0 / classes[i].rate_no_peer_mbps;
        w.busy_sum += lambdas[i] * sigma0 / classes[i].rate_with_peer_mbps;
    }
    return w;
}

}  // namespace

void TrafficModel::validate() const {
    if (!(lambda_tot >= 0.0))
        throw std::invalid_argument("TrafficModel: lambda_tot must be >= 0");
    if (!(sigma0_mbit > 0.0))
        throw std::invalid_argument("TrafficModel: sigma0 must be > 0");
    double sum = 0.0;
    for (const auto& c : classes.macro) {
        check_class(c, "macro");
        sum += c.p;
    }
    if (!classes.macro.empty() && std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("TrafficModel: macro class shares must sum to 1");
    sum = 0.0;
    for (const auto& c : classes.small) {
        check_class(c, "small");
        sum += c.p;
    }
    if (!classes.small.empty() && std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("TrafficModel: small class shares must sum to 1");
    if (classes.split.macro_mass < 0.0 || classes.split.small_mass < 0.0)
        throw std::invalid_argument("TrafficModel: negative coverage mass");
}

ArrivalRates arrival_split(const TrafficModel& traffic) {
    traffic.validate();
    ArrivalRates rates;
    const double total = traffic.classes.split.total();
    const double macro_share =
        total > 0.0 ? traffic.classes.split.macro_mass / total
                    : (traffic.classes.small.empty() ? 1.0 : 0.0);
    const double small_share = total > 0.0 ? traffic.classes.split.small_mass / total : 0.0;
    rates.macro.reserve(traffic.classes.macro.size());
    for (const auto& c : traffic.classes.macro)
        rates.macro.push_back(traffic.lambda_tot * macro_share * c.p);
    rates.small.reserve(traffic.classes.small.size());
    for (const auto& c : traffic.classes.small)
        rates.small.push_back(traffic.lambda_tot * small_share * c.p);
    return rates;
}

CellLoads solve_loads(const TrafficModel& traffic) {
    const ArrivalRates rates = arrival_split(traffic);
    const Work wm = offered_work(traffic.classes.macro, rates.macro, traffic.sigma0_mbit);
    const Work ws = offered_work(traffic.classes.small, rates.small, traffic.sigma0_mbit);

    const double denom = 1.0 - wm.delta() * ws.delta();
    if (!(denom > 0.0))
        throw StabilityError("unstable: coupling denominator 1 - D*D_tilde <= 0");
    const double rho = (wm.idle_sum + wm.delta() * ws.idle_sum) / denom;
    const double rho_s = (ws.idle_sum + ws.delta() * wm.idle_sum) / denom;
    if (!(rho < 1.0))
        throw StabilityError("unstable: macro load >= 1");
    if (!(rho_s < 1.0))
        throw StabilityError("unstable: small-cell load >= 1");

    // the closed form must satisfy the mutual fixed-point identities
    const double res_m = rho - (wm.idle_sum + rho_s * wm.delta());
    const double res_s = rho_s - (ws.idle_sum + rho * ws.delta());
    if (std::fabs(res_m) > 1e-12 || std::fabs(res_s) > 1e-12)
        throw std::logic_error("solve_loads: fixed-point residual exceeds 1e-12");

    CellLoads loads;
    loads.rho_macro = rho;
    loads.rho_small = rho_s;
    loads.p0_macro = 1.0 - rho;
    loads.p0_small = 1.0 - rho_s;
    return loads;
}

CellLoads solve_loads_fixed_point(const TrafficModel& traffic, double damping,
                                  double tol, int max_iter) {
    const ArrivalRates rates = arrival_split(traffic);
    const Work wm = offered_work(traffic.classes.macro, rates.macro, traffic.sigma0_mbit);
    const Work ws = offered_work(traffic.classes.small, rates.small, traffic.sigma0_mbit);
    double rho = 0.0, rho_s = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        const double next_m = wm.idle_sum + rho_s * wm.delta();
        const double next_s = ws.idle_sum + next_m * ws.delta();
        const double new_m = (1.0 - damping) * next_m + damping * rho;
        const double new_s = (1.0 - damping) * next_s + damping * rho_s;
        const double res = std::fabs(new_m - rho) + std::fabs(new_s - rho_s);
        rho = new_m;
        rho_s = new_s;
        if (res < tol)
            break;
        if (rho > 10.0 || rho_s > 10.0)
            throw StabilityError("unstable: fixed-point iteration diverges");
    }
    if (!(rho < 1.0) || !(rho_s < 1.0))
        throw StabilityError("unstable: fixed-point load >= 1");
    CellLoads loads;
    loads.rho_macro = rho;
    loads.rho_small = rho_s;
    loads.p0_macro = 1.0 - rho;
    loads.p0_small = 1.0 - rho_s;
    return loads;
}

double stationary_prob(const std::vector<int>& n_macro,
                       const std::vector<int>& n_small,
                       const CellLoads& loads, const TrafficModel& traffic) {
    const ArrivalRates rates = arrival_split(traffic);
    if (n_macro.size() != traffic.classes.macro.size() ||
        n_small.size() != traffic.classes.small.size())
        throw std::invalid_argument("stationary_prob: state size mismatch");
    if (!(loads.rho_macro < 1.0) || !(loads.rho_small < 1.0))
        throw StabilityError("stationary_prob: requires a stable system");

    using numerics::log_gamma;
    const double rho = loads.rho_macro;
    const double rho_s = loads.rho_small;
    const double sigma0 = traffic.sigma0_mbit;

    auto cell_term = [](const std::vector<int>& n,
                        const std::vector<FlowClass>& classes,
                        const std::vector<double>& lambda, double sigma,
                        double peer_busy) {
        long long total = 0;
        double log_p = 0.0;
        for (std::size_t k = 0; k < n.size(); ++k) {
            if (n[k] < 0)
                throw std::invalid_argument("stationary_prob: negative count");
            if (n[k] == 0)
                continue;
            total += n[k];
            const double nk = static_cast<double>(n[k]);
            log_p -= log_gamma(peer_busy * nk + 1.0);
            log_p -= log_gamma((1.0 - peer_busy) * nk + 1.0);
            log_p += nk * std::log(lambda[k] * sigma);
            log_p -= (1.0 - peer_busy) * nk * std::log(classes[k].rate_no_peer_mbps);
            log_p -= peer_busy * nk * std::log(classes[k].rate_with_peer_mbps);
        }
        log_p += log_gamma(static_cast<double>(total) + 1.0);
        return log_p;
    };

    double log_p = std::log(1.0 - rho) + std::log(1.0 - rho_s);
    log_p += cell_term(n_macro, traffic.classes.macro, rates.macro, sigma0, rho_s);
    log_p += cell_term(n_small, traffic.classes.small, rates.small, sigma0, rho);
    return std::exp(log_p);
}

double stationary_normalization(const TrafficModel& traffic,
                                const CellLoads& loads, int max_total) {
    std::vector<int> n(traffic.classes.macro.size(), 0);
    std::vector<int> ns(traffic.classes.small.size(), 0);

    double mass = 0.0;
    std::function<void(std::size_t, int)> enum_small = [&](std::size_t idx, int left) {
        if (idx == ns.size()) {
            mass += stationary_prob(n, ns, loads, traffic);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            ns[idx] = v;
            enum_small(idx + 1, left - v);
        }
        ns[idx] = 0;
    };
    std::function<void(std::size_t, int)> enum_macro = [&](std::size_t idx, int left) {
        if (idx == n.size()) {
            enum_small(0, max_total);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            n[idx] = v;
            enum_macro(idx + 1, left - v);
        }
        n[idx] = 0;
    };
    if (n.empty())
        enum_small(0, max_total);
    else
        enum_macro(0, max_total);
    return mass;
}

ExpandedModel expanded_decoupled_model(const TrafficModel& traffic,
                                       const CellLoads& loads) {
    const ArrivalRates rates = arrival_split(traffic);
    ExpandedModel model;
    auto expand = [&](const std::vector<FlowClass>& classes,
                      const std::vector<double>& lambda, double peer_busy,
                      std::vector<SubClass>& out) {
        double rho = 0.0;
        for (std::size_t k = 0; k < classes.size(); ++k) {
            out.push_back({lambda[k] * (1.0 - peer_busy), classes[k].rate_no_peer_mbps});
            out.push_back({lambda[k] * peer_busy, classes[k].rate_with_peer_mbps});
            rho += out[out.size() - 2].lambda * traffic.sigma0_mbit /
                   out[out.size() - 2].rate_mbps;
            rho += out.back().lambda * traffic.sigma0_mbit / out.back().rate_mbps;
        }
        return rho;
    };
    model.rho_macro = expand(traffic.classes.macro, rates.macro,
                             loads.rho_small, model.macro);
    model.rho_small = expand(traffic.classes.small, rates.small,
                             loads.rho_macro, model.small);
    return model;
}

MeanFlows mean_flows(const TrafficModel& traffic, const CellLoads& loads) {
    if (!(loads.rho_macro < 1.0) || !(loads.rho_small < 1.0))
        throw StabilityError("mean_flows: requires a stable system");
    const ArrivalRates rates = arrival_split(traffic);
    MeanFlows flows;
    const double sigma0 = traffic.sigma0_mbit;
    flows.macro.reserve(traffic.classes.macro.size());
    for (std::size_t k = 0; k < traffic.classes.macro.size(); ++k) {
        const auto& c = traffic.classes.macro[k];
        const double n = (loads.rho_small * rates.macro[k] * sigma0 / c.rate_with_peer_mbps +
                          (1.0 - loads.rho_small) * rates.macro[k] * sigma0 / c.rate_no_peer_mbps) /
                         (1.0 - loads.rho_macro);
        flows.macro.push_back(n);
        flows.macro_total += n;
    }
    flows.small.reserve(traffic.classes.small.size());
    for (std::size_t l = 0; l < traffic.classes.small.size(); ++l) {
        const auto& c = traffic.classes.small[l];
        const double n = (loads.rho_macro * rates.small[l] * sigma0 / c.rate_with_peer_mbps +
                          (1.0 - loads.rho_macro) * rates.small[l] * sigma0 / c.rate_no_peer_mbps) /
                         (1.0 - loads.rho_small);
        flows.small.push_back(n);
        flows.small_total += n;
    }
    return flows;
}

PerfReport class_throughput(const TrafficModel& traffic, const CellLoads& loads) {
    if (!(loads.rho_macro < 1.0) || !(loads.rho_small < 1.0))
        throw StabilityError("class_throughput: requires a stable system");
    const ArrivalRates rates = arrival_split(traffic);
    const MeanFlows flows = mean_flows(traffic, loads);
    const double sigma0 = traffic.sigma0_mbit;

    PerfReport report;
    auto fill = [&](const std::vector<FlowClass>& classes,
                    const std::vector<double>& lambda,
                    const std::vector<double>& n_mean, double own_rho,
                    double peer_rho, std::vector<ClassPerf>& out,
                    double& agg_mixture, double& agg_little) {
        double weight = 0.0;
        for (std::size_t k = 0; k < classes.size(); ++k) {
            ClassPerf perf;
            perf.lambda = lambda[k];
            perf.n_mean = n_mean[k];
            // sojourn written lambda-free so the lambda -> 0 limit is exact
            perf.sojourn_s = sigma0 *
                             (peer_rho / classes[k].rate_with_peer_mbps +
                              (1.0 - peer_rho) / classes[k].rate_no_peer_mbps) /
                             (1.0 - own_rho);
            perf.v_mixture_mbps = (1.0 - own_rho) *
                                  (peer_rho * classes[k].rate_with_peer_mbps +
                                   (1.0 - peer_rho) * classes[k].rate_no_peer_mbps);
            perf.v_little_mbps = sigma0 / perf.sojourn_s;
            out.push_back(perf);
            agg_mixture += classes[k].p * perf.v_mixture_mbps;
            agg_little += classes[k].p * perf.v_little_mbps;
            weight += classes[k].p;
        }
        if (weight > 0.0) {
            agg_mixture /= weight;
            agg_little /= weight;
        }
    };
    fill(traffic.classes.macro, rates.macro, flows.macro, loads.rho_macro,
         loads.rho_small, report.macro, report.macro_v_mixture_mbps,
         report.macro_v_little_mbps);
    fill(traffic.classes.small, rates.small, flows.small, loads.rho_small,
         loads.rho_macro, report.small, report.small_v_mixture_mbps,
         report.small_v_little_mbps);
    return report;
}

}  // namespace hetperf
