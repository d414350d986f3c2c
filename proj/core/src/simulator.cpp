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

#include "hetperf/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hetperf/random.hpp"

namespace hetperf {

void SimConfig::validate() const {
    if (warmup_events < 0)
        throw std::invalid_argument("SimConfig: warmup_events must be >= 0");
    if (measured_events <= 0)
        throw std::invalid_argument("SimConfig: measured_events must be > 0");
    if (replications < 1)
        throw std::invalid_argument("SimConfig: replications must be >= 1");
    if (guard_max_flows <= 0)
        throw std::invalid_argument("SimConfig: guard_max_flows must be > 0");
}

std::vector<Transition> transition_rates(const SimState& state,
                                         const TrafficModel& traffic) {
    const ArrivalRates rates = arrival_split(traffic);
    if (state.macro.size() != traffic.classes.macro.size() ||
        state.small.size() != traffic.classes.small.size())
        throw std::invalid_argument("transition_rates: state size mismatch");

    std::vector<Transition> out;
    const long long total_macro = std::accumulate(state.macro.begin(), state.macro.end(), 0ll);
    const long long total_small = std::accumulate(state.small.begin(), state.small.end(), 0ll);

    for (std::size_t k = 0; k < state.macro.size(); ++k)
        if (rates.macro[k] > 0.0)
            out.push_back({CellTag::Macro, true, static_cast<int>(k), rates.macro[k]});
    for (std::size_t l = 0; l < state.small.size(); ++l)
        if (rates.small[l] > 0.0)
            out.push_back({CellTag::Small, true, static_cast<int>(l), rates.small[l]});

    for (std::size_t k = 0; k < state.macro.size(); ++k) {
        if (state.macro[k] <= 0)
            continue;
        const auto& c = traffic.classes.macro[k];
        const double eta = total_small == 0 ? c.rate_no_peer_mbps : c.rate_with_peer_mbps;
        const double rate = state.macro[k] * eta /
                            (static_cast<double>(total_macro) * traffic.sigma0_mbit);
        out.push_back({CellTag::Macro, false, static_cast<int>(k), rate});
    }
    for (std::size_t l = 0; l < state.small.size(); ++l) {
        if (state.small[l] <= 0)
            continue;
        const auto& c = traffic.classes.small[l];
        const double eta = total_macro == 0 ? c.rate_no_peer_mbps : c.rate_with_peer_mbps;
        const double rate = state.small[l] * eta /
                            (static_cast<double>(total_small) * traffic.sigma0_mbit);
        out.push_back({CellTag::Small, false, static_cast<int>(l), rate});
    }
    return out;
}

namespace {

// one cell's running counters inside the event loop
struct CellRun {
    std::vector<int> counts;
    long long total = 0;
    double idle_weighted = 0.0;   // sum n_k * eta_{k,0}
    double busy_weighted = 0.0;   // sum n_k * eta_{k,1}
    // time accumulators (measurement window)
    double busy_time = 0.0;
    double flow_time = 0.0;       // integral of |n| dt
    std::vector<double> class_time;  // integral of n_k dt, lazily flushed
    std::vector<double> last_flush;
    std::vector<std::int64_t> arrivals;
    std::vector<std::int64_t> departures;

    explicit CellRun(std::size_t n_classes)
        : counts(n_classes, 0),
          class_time(n_classes, 0.0),
          last_flush(n_classes, 0.0),
          arrivals(n_classes, 0),
          departures(n_classes, 0) {}

    void flush_class(std::size_t k, double now) {
        class_time[k] += counts[k] * (now - last_flush[k]);
        last_flush[k] = now;
    }
    void flush_all(double now) {
        for (std::size_t k = 0; k < counts.size(); ++k)
            flush_class(k, now);
    }
    void reset_measurement(double now) {
        busy_time = 0.0;
        flow_time = 0.0;
        std::fill(class_time.begin(), class_time.end(), 0.0);
        std::fill(last_flush.begin(), last_flush.end(), now);
    }
};

struct RepResult {
    double busy_macro = 0.0, busy_small = 0.0;
    double flows_macro = 0.0, flows_small = 0.0;
    std::vector<double> class_macro, class_small;
    double measured_time = 0.0;
    bool aborted = false;
    std::string note;
};

MetricEstimate estimate(const std::vector<double>& values) {
    MetricEstimate est;
    const std::size_t n = values.size();
    if (n == 0)
        return est;
    est.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (n > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - est.mean) * (v - est.mean);
        const double sd = std::sqrt(ss / (n - 1));
        est.ci95_halfwidth = 1.959963984540054 * sd / std::sqrt(static_cast<double>(n));
    }
    return est;
}

}  // namespace

namespace {

// Canonical processing order: sorted by the class signature so that
// permuting the input labels permutes the outputs but leaves the event
// trajectory (and therefore every statistic) bit-identical.
std::vector<std::size_t> canonical_order(const std::vector<FlowClass>& classes) {
    std::vector<std::size_t> order(classes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         const FlowClass& x = classes[a];
                         const FlowClass& y = classes[b];
                         if (x.rate_with_peer_mbps != y.rate_with_peer_mbps)
                             return x.rate_with_peer_mbps < y.rate_with_peer_mbps;
                         if (x.rate_no_peer_mbps != y.rate_no_peer_mbps)
                             return x.rate_no_peer_mbps < y.rate_no_peer_mbps;
                         return x.p < y.p;
                     });
    return order;
}

}  // namespace

SimStats run_simulation(const TrafficModel& input_traffic, const SimConfig& config) {
    input_traffic.validate();
    config.validate();

    // run internally in canonical class order; outputs are mapped back
    const std::vector<std::size_t> macro_order =
        canonical_order(input_traffic.classes.macro);
    const std::vector<std::size_t> small_order =
        canonical_order(input_traffic.classes.small);
    TrafficModel traffic = input_traffic;
    const ArrivalRates input_rates = arrival_split(input_traffic);
    ArrivalRates rates;
    for (std::size_t j = 0; j < macro_order.size(); ++j) {
        traffic.classes.macro[j] = input_traffic.classes.macro[macro_order[j]];
        rates.macro.push_back(input_rates.macro[macro_order[j]]);
    }
    for (std::size_t j = 0; j < small_order.size(); ++j) {
        traffic.classes.small[j] = input_traffic.classes.small[small_order[j]];
        rates.small.push_back(input_rates.small[small_order[j]]);
    }
    const std::size_t nk = traffic.classes.macro.size();
    const std::size_t nl = traffic.classes.small.size();
    const double sigma0 = traffic.sigma0_mbit;
    const double lambda_macro = std::accumulate(rates.macro.begin(), rates.macro.end(), 0.0);
    const double lambda_small = std::accumulate(rates.small.begin(), rates.small.end(), 0.0);

    SimStats stats;
    stats.replications = config.replications;
    stats.events_per_replication = config.measured_events;
    stats.macro.arrivals.assign(nk, 0);
    stats.macro.departures.assign(nk, 0);
    stats.macro.final_counts.assign(nk, 0);
    stats.small.arrivals.assign(nl, 0);
    stats.small.departures.assign(nl, 0);
    stats.small.final_counts.assign(nl, 0);

    std::vector<RepResult> reps;
    reps.reserve(static_cast<std::size_t>(config.replications));

    for (int rep = 0; rep < config.replications; ++rep) {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(rep)));
        CellRun macro(nk), small(nl);
        RepResult result;
        result.class_macro.assign(nk, 0.0);
        result.class_small.assign(nl, 0.0);

        double now = 0.0;
        double measure_start = 0.0;
        bool measuring = config.warmup_events == 0;
        const std::int64_t total_events = config.warmup_events + config.measured_events;

        for (std::int64_t ev = 0; ev < total_events; ++ev) {
            if (ev == config.warmup_events && !measuring) {
                measuring = true;
                measure_start = now;
                macro.reset_measurement(now);
                small.reset_measurement(now);
            }
            const double dep_macro =
                macro.total > 0
                    ? (small.total == 0 ? macro.idle_weighted : macro.busy_weighted) /
                          (static_cast<double>(macro.total) * sigma0)
                    : 0.0;
            const double dep_small =
                small.total > 0
                    ? (macro.total == 0 ? small.idle_weighted : small.busy_weighted) /
                          (static_cast<double>(small.total) * sigma0)
                    : 0.0;
            const double total_rate = lambda_macro + lambda_small + dep_macro + dep_small;
            if (total_rate <= 0.0) {
                result.aborted = true;
                result.note = "no transitions possible (zero arrival rates)";
                break;
            }
            const double dt = rng.exponential(total_rate);
            if (measuring) {
                if (macro.total > 0) {
                    macro.busy_time += dt;
                    macro.flow_time += macro.total * dt;
                }
                if (small.total > 0) {
                    small.busy_time += dt;
                    small.flow_time += small.total * dt;
                }
            }
            now += dt;

            double u = rng.uniform01() * total_rate;
            CellRun* cell = nullptr;
            bool arrival = false;
            std::size_t cls = 0;
            const std::vector<FlowClass>* classes = nullptr;
            if (u < lambda_macro) {
                cell = &macro;
                arrival = true;
                for (cls = 0; cls + 1 < nk; ++cls) {
                    if (u < rates.macro[cls])
                        break;
                    u -= rates.macro[cls];
                }
            } else if (u < lambda_macro + lambda_small) {
                u -= lambda_macro;
                cell = &small;
                arrival = true;
                for (cls = 0; cls + 1 < nl; ++cls) {
                    if (u < rates.small[cls])
                        break;
                    u -= rates.small[cls];
                }
            } else if (u < lambda_macro + lambda_small + dep_macro) {
                u -= lambda_macro + lambda_small;
                cell = &macro;
                classes = &traffic.classes.macro;
                const bool peer_busy = small.total > 0;
                u *= static_cast<double>(macro.total) * sigma0;  // compare on n_k * eta scale
                for (cls = 0; cls + 1 < nk; ++cls) {
                    const auto& c = (*classes)[cls];
                    const double w = macro.counts[cls] *
                                     (peer_busy ? c.rate_with_peer_mbps : c.rate_no_peer_mbps);
                    if (u < w)
                        break;
                    u -= w;
                }
            } else {
                u -= lambda_macro + lambda_small + dep_macro;
                cell = &small;
                classes = &traffic.classes.small;
                const bool peer_busy = macro.total > 0;
                u *= static_cast<double>(small.total) * sigma0;
                for (cls = 0; cls + 1 < nl; ++cls) {
                    const auto& c = (*classes)[cls];
                    const double w = small.counts[cls] *
                                     (peer_busy ? c.rate_with_peer_mbps : c.rate_no_peer_mbps);
                    if (u < w)
                        break;
                    u -= w;
                }
            }

            const std::vector<FlowClass>& cc =
                cell == &macro ? traffic.classes.macro : traffic.classes.small;
            if (measuring)
                cell->flush_class(cls, now);
            else
                cell->last_flush[cls] = now;
            if (arrival) {
                ++cell->counts[cls];
                ++cell->total;
                ++cell->arrivals[cls];
                cell->idle_weighted += cc[cls].rate_no_peer_mbps;
                cell->busy_weighted += cc[cls].rate_with_peer_mbps;
            } else {
                if (cell->counts[cls] <= 0) {
                    // selection landed on an empty class; numerically
                    // impossible unless rates degenerate
                    --ev;
                    continue;
                }
                --cell->counts[cls];
                --cell->total;
                ++cell->departures[cls];
                cell->idle_weighted -= cc[cls].rate_no_peer_mbps;
                cell->busy_weighted -= cc[cls].rate_with_peer_mbps;
            }
            if (macro.total + small.total > config.guard_max_flows) {
                result.aborted = true;
                result.note = "state guard exceeded (offered load appears unstable)";
                break;
            }
        }

        macro.flush_all(now);
        small.flush_all(now);
        result.measured_time = now - measure_start;
        if (!result.aborted && result.measured_time > 0.0) {
            result.busy_macro = macro.busy_time / result.measured_time;
            result.busy_small = small.busy_time / result.measured_time;
            result.flows_macro = macro.flow_time / result.measured_time;
            result.flows_small = small.flow_time / result.measured_time;
            for (std::size_t k = 0; k < nk; ++k)
                result.class_macro[k] = macro.class_time[k] / result.measured_time;
            for (std::size_t l = 0; l < nl; ++l)
                result.class_small[l] = small.class_time[l] / result.measured_time;
        }
        for (std::size_t k = 0; k < nk; ++k) {
            stats.macro.arrivals[macro_order[k]] += macro.arrivals[k];
            stats.macro.departures[macro_order[k]] += macro.departures[k];
            stats.macro.final_counts[macro_order[k]] += macro.counts[k];
        }
        for (std::size_t l = 0; l < nl; ++l) {
            stats.small.arrivals[small_order[l]] += small.arrivals[l];
            stats.small.departures[small_order[l]] += small.departures[l];
            stats.small.final_counts[small_order[l]] += small.counts[l];
        }
        if (result.aborted) {
            stats.unstable = true;
            stats.instability_note =
                "replication " + std::to_string(rep) + ": " + result.note;
            break;
        }
        stats.measured_time_s += result.measured_time;
        reps.push_back(std::move(result));
    }

    auto collect = [&](auto proj) {
        std::vector<double> v;
        v.reserve(reps.size());
        for (const auto& r : reps)
            v.push_back(proj(r));
        return v;
    };
    stats.macro.rep_busy = collect([](const RepResult& r) { return r.busy_macro; });
    stats.small.rep_busy = collect([](const RepResult& r) { return r.busy_small; });
    stats.macro.rep_total = collect([](const RepResult& r) { return r.flows_macro; });
    stats.small.rep_total = collect([](const RepResult& r) { return r.flows_small; });
    stats.macro.busy_fraction = estimate(stats.macro.rep_busy);
    stats.small.busy_fraction = estimate(stats.small.rep_busy);
    stats.macro.total_flows = estimate(stats.macro.rep_total);
    stats.small.total_flows = estimate(stats.small.rep_total);
    stats.macro.class_flows.resize(nk);
    for (std::size_t k = 0; k < nk; ++k)
        stats.macro.class_flows[macro_order[k]] =
            estimate(collect([k](const RepResult& r) { return r.class_macro[k]; }));
    stats.small.class_flows.resize(nl);
    for (std::size_t l = 0; l < nl; ++l)
        stats.small.class_flows[small_order[l]] =
            estimate(collect([l](const RepResult& r) { return r.class_small[l]; }));
    return stats;
}

}  // namespace hetperf
