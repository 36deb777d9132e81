// SPDX-License-Identifier: Apache-2.0
//
// vfdm - Vandermonde-subspace frequency division multiplexing simulator
// Copyright (C) 2026 The vfdm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "vfdm/simulator.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "vfdm/errors.hpp"
#include "vfdm/link_optimizer.hpp"
#include "vfdm/signal_model.hpp"

namespace vfdm
{
    // ---- names -------------------------------------------------------------

    std::string to_string(Mode m)
    {
        switch (m)
        {
        case Mode::perfect_csi:
            return "perfect_csi";
        case Mode::estimated_csi:
            return "estimated_csi";
        case Mode::baseline_partition:
            return "baseline_partition";
        }
        return "?";
    }

    std::string to_string(Axis a)
    {
        return a == Axis::snr_db ? "snr_db" : "tau_over_T";
    }

    std::string to_string(Metric m)
    {
        switch (m)
        {
        case Metric::secondary:
            return "secondary";
        case Metric::primary:
            return "primary";
        case Metric::sum:
            return "sum";
        case Metric::leakage:
            return "leakage";
        }
        return "?";
    }

    std::string to_string(PartitionPower p)
    {
        return p == PartitionPower::per_carrier ? "per_carrier" : "per_block";
    }

    Mode mode_from_string(const std::string &s)
    {
        for (Mode m : {Mode::perfect_csi, Mode::estimated_csi, Mode::baseline_partition})
            if (to_string(m) == s)
                return m;
        throw std::invalid_argument("unknown mode '" + s + "' (perfect_csi, estimated_csi, baseline_partition)");
    }

    Metric metric_from_string(const std::string &s)
    {
        for (Metric m : {Metric::secondary, Metric::primary, Metric::sum, Metric::leakage})
            if (to_string(m) == s)
                return m;
        throw std::invalid_argument("unknown metric '" + s + "' (secondary, primary, sum, leakage)");
    }

    PartitionPower partition_power_from_string(const std::string &s)
    {
        if (s == "per_carrier")
            return PartitionPower::per_carrier;
        if (s == "per_block")
            return PartitionPower::per_block;
        throw std::invalid_argument("unknown partition power rule '" + s + "' (per_carrier, per_block)");
    }

    double TrialRecord::metric(Metric m) const
    {
        switch (m)
        {
        case Metric::secondary:
            return rate_secondary;
        case Metric::primary:
            return rate_primary;
        case Metric::sum:
            return sum_rate;
        case Metric::leakage:
            return leakage_total;
        }
        return 0.0;
    }

    // ---- trials --------------------------------------------------------------

    namespace
    {
        TrialRecord evaluate_vfdm_with(const ChannelSet &channels, const CMatrix &E, const OverallSecondaryChannel &H22,
                                       const ScenarioParams &params)
        {
            const InterferenceCovariance s_eta = interference_covariance(channels.h12, params);
            const EquivalentChannel eq = equivalent_channel(H22, s_eta);
            const RVector q = stream_weights(E, eq.V);
            const auto &lam = eq.eigenvalues;
            const std::span<const double> lam_span(lam.data(), static_cast<std::size_t>(lam.size()));
            const PowerAllocation alloc =
                waterfill(lam_span, {q.data(), static_cast<std::size_t>(q.size())}, params.block_length() * params.P2);

            TrialRecord r;
            r.snr_db = params.snr_db();
            r.rate_secondary = secondary_rate(alloc, lam_span, params.N, params.L);
            r.rate_primary = primary_rate(channels.h11, params);
            r.sum_rate = r.rate_primary + r.rate_secondary;
            r.leakage_total = 0.0; // E is built from the true h21
            return r;
        }
    }

    TrialRecord evaluate_vfdm(const ChannelSet &channels, const CMatrix &E, const ScenarioParams &params)
    {
        params.validate();
        return evaluate_vfdm_with(channels, E, secondary_channel(channels.h22, E), params);
    }

    std::pair<std::vector<int>, std::vector<int>> partition_carriers(int N)
    {
        if (N < 4 || N % 4 != 0)
            throw std::invalid_argument("partitioned baseline needs N divisible by 4 (got " + std::to_string(N) + ")");
        std::vector<int> primary, secondary;
        for (int k = 0; k < N; ++k)
            (k % 4 == 3 ? secondary : primary).push_back(k);
        return {primary, secondary};
    }

    TrialRecord evaluate_partition(const ChannelSet &channels, const ScenarioParams &params, PartitionPower power)
    {
        params.validate();
        const auto [prim, sec] = partition_carriers(params.N);
        const double M = params.block_length();
        const double prim_share = power == PartitionPower::per_carrier ? double(prim.size()) / params.N : 1.0;
        const double sec_share = power == PartitionPower::per_carrier ? double(sec.size()) / params.N : 1.0;

        const CVector H11 = overall_diagonal(channels.h11, params.N, ChannelRole::H11).diag;
        const CVector H22 = overall_diagonal(channels.h22, params.N, ChannelRole::H11).diag;

        TrialRecord r;
        r.snr_db = params.snr_db();
        r.rate_primary = carrier_waterfill_objective(H11, prim, params.sigma2, M * params.P1 * prim_share) / M;
        r.rate_secondary = carrier_waterfill_objective(H22, sec, params.sigma2, M * params.P2 * sec_share) / M;
        r.sum_rate = r.rate_primary + r.rate_secondary;
        return r;
    }

    TrialRecord run_vfdm_trial(const ScenarioParams &params, Rng &rng, PrecoderMethod method)
    {
        params.validate();
        const ChannelSet ch = draw_channels(rng, params.L);
        const Precoder E = build_precoder(ch.h21, params.N, method);
        return evaluate_vfdm(ch, E.E, params);
    }

    TrialRecord run_partition_trial(const ScenarioParams &params, Rng &rng, PartitionPower power)
    {
        params.validate();
        partition_carriers(params.N);
        const ChannelSet ch = draw_channels(rng, params.L);
        return evaluate_partition(ch, params, power);
    }

    TrialRecord run_estimated_csi_trial(const ScenarioParams &params, const TrainingSchedule &schedule, Rng &rng,
                                        const ProtocolOptions &options)
    {
        params.validate();
        schedule.validate(params.N, params.L);
        const ChannelSet ch = draw_channels(rng, params.L);
        const EffectiveRates e = effective_rates(schedule, ch, params, rng, options);
        TrialRecord r;
        r.snr_db = params.snr_db();
        r.rate_primary = e.primary;
        r.rate_secondary = e.secondary;
        r.sum_rate = r.rate_primary + r.rate_secondary;
        r.leakage_total = e.leakage_total;
        return r;
    }

    // ---- sweeps ----------------------------------------------------------------

    ScenarioParams Scenario::params_at(std::size_t x_index) const
    {
        const double snr = axis == Axis::snr_db ? x.at(x_index) : snr_db;
        ScenarioParams p = ScenarioParams::at_snr_db(N, L, snr, alpha);
        p.P1 = P1;
        p.P2 = P2;
        p.sigma2 = P1 * std::pow(10.0, -snr / 10.0);
        return p;
    }

    void Scenario::validate() const
    {
        if (name.empty())
            throw std::invalid_argument("scenario needs a name");
        if (x.empty())
            throw std::invalid_argument("scenario '" + name + "': x grid is empty");
        if (metrics.empty())
            throw std::invalid_argument("scenario '" + name + "': no metrics requested");
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            if (!std::isfinite(x[i]))
                throw std::invalid_argument("scenario '" + name + "': non-finite grid value");
            params_at(i).validate();
        }
        if (P1 <= 0.0)
            throw std::invalid_argument("scenario '" + name + "': P1 must be > 0 to define the SNR");
        if (mode == Mode::baseline_partition)
            partition_carriers(N);
        if (mode == Mode::estimated_csi)
        {
            if (axis != Axis::tau_fraction)
                throw std::invalid_argument("scenario '" + name + "': estimated_csi sweeps run over tau/T");
            for (double f : x)
                TrainingSchedule::from_fraction(coherence_time, f).validate(N, L);
        }
        else if (axis != Axis::snr_db)
            throw std::invalid_argument("scenario '" + name + "': tau/T axis requires estimated_csi mode");
        if (!(training_noise_scale >= 0.0))
            throw std::invalid_argument("scenario '" + name + "': training_noise_scale must be >= 0");
    }

    void Experiment::validate() const
    {
        if (trials < 1)
            throw std::invalid_argument("trials must be >= 1");
        if (workers < 1)
            throw std::invalid_argument("workers must be >= 1");
        if (scenarios.empty())
            throw std::invalid_argument("experiment has no scenarios");
        for (const Scenario &s : scenarios)
            s.validate();
    }

    std::pair<double, double> mean_and_stderr(const std::vector<double> &values)
    {
        const auto n = values.size();
        if (n == 0)
            return {0.0, 0.0};
        double mean = 0.0;
        for (double v : values)
            mean += v;
        mean /= static_cast<double>(n);
        if (n == 1)
            return {mean, 0.0};
        double ss = 0.0;
        for (double v : values)
            ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        return {mean, sd / std::sqrt(static_cast<double>(n))};
    }

    namespace
    {
        using Clock = std::chrono::steady_clock;

        double seconds_since(Clock::time_point t0)
        {
            return std::chrono::duration<double>(Clock::now() - t0).count();
        }

        // One trial of one scenario at every grid point; records[x].
        void run_scenario_trial(const Scenario &s, std::uint64_t master, int trial, std::vector<TrialRecord> &records,
                                std::vector<double> &seconds)
        {
            const std::uint64_t key = mix_keys({master, s.stream_id, static_cast<std::uint64_t>(trial)});
            Rng rng(key);
            const ChannelSet ch = draw_channels(rng, s.L);
            const std::size_t nx = s.x.size();

            switch (s.mode)
            {
            case Mode::perfect_csi: {
                const auto t0 = Clock::now();
                const Precoder E = build_precoder(ch.h21, s.N, s.precoder);
                const OverallSecondaryChannel H22 = secondary_channel(ch.h22, E.E);
                const double shared = seconds_since(t0) / static_cast<double>(nx);
                for (std::size_t i = 0; i < nx; ++i)
                {
                    const auto t1 = Clock::now();
                    records[i] = evaluate_vfdm_with(ch, E.E, H22, s.params_at(i));
                    seconds[i] += shared + seconds_since(t1);
                }
                break;
            }
            case Mode::baseline_partition:
                for (std::size_t i = 0; i < nx; ++i)
                {
                    const auto t1 = Clock::now();
                    records[i] = evaluate_partition(ch, s.params_at(i), s.partition_power);
                    seconds[i] += seconds_since(t1);
                }
                break;
            case Mode::estimated_csi: {
                ProtocolOptions opts;
                opts.precoder = s.precoder;
                opts.training_noise_scale = s.training_noise_scale;
                for (std::size_t i = 0; i < nx; ++i)
                {
                    const auto t1 = Clock::now();
                    const ScenarioParams p = s.params_at(i);
                    const TrainingSchedule sched = TrainingSchedule::from_fraction(s.coherence_time, s.x[i]);
                    Rng noise = substream({master, s.stream_id, static_cast<std::uint64_t>(trial), i + 1});
                    const EffectiveRates e = effective_rates(sched, ch, p, noise, opts);
                    TrialRecord r;
                    r.snr_db = p.snr_db();
                    r.rate_primary = e.primary;
                    r.rate_secondary = e.secondary;
                    r.sum_rate = e.primary + e.secondary;
                    r.leakage_total = e.leakage_total;
                    records[i] = r;
                    seconds[i] += seconds_since(t1);
                }
                break;
            }
            }
            for (TrialRecord &r : records)
                r.seed_trial = key;
        }
    }

    SweepResult sweep(const Experiment &experiment, const std::function<void(const std::string &)> &progress)
    {
        experiment.validate();
        SweepResult result;

        for (const Scenario &s : experiment.scenarios)
        {
            const std::size_t nx = s.x.size();
            const auto trials = static_cast<std::size_t>(experiment.trials);
            std::vector<std::vector<TrialRecord>> records(trials, std::vector<TrialRecord>(nx));
            std::vector<std::vector<double>> seconds(trials, std::vector<double>(nx, 0.0));

            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            auto worker = [&]() {
                for (;;)
                {
                    const std::size_t t = next.fetch_add(1);
                    if (t >= trials)
                        return;
                    try
                    {
                        run_scenario_trial(s, experiment.master_seed, static_cast<int>(t), records[t], seconds[t]);
                    }
                    catch (...)
                    {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                        next.store(trials);
                        return;
                    }
                }
            };

            const auto nworkers = std::min<std::size_t>(static_cast<std::size_t>(experiment.workers), trials);
            if (nworkers <= 1)
                worker();
            else
            {
                std::vector<std::thread> pool;
                for (std::size_t w = 0; w < nworkers; ++w)
                    pool.emplace_back(worker);
                for (auto &th : pool)
                    th.join();
            }
            if (failure)
                std::rethrow_exception(failure);

            // deterministic reduction in trial order
            std::vector<double> secs(nx, 0.0);
            for (std::size_t t = 0; t < trials; ++t)
                for (std::size_t i = 0; i < nx; ++i)
                    secs[i] += seconds[t][i];
            result.seconds_per_point.push_back(std::move(secs));

            for (Metric m : s.metrics)
            {
                AggregateCurve c;
                c.name = s.name + "_" + to_string(m);
                c.x_label = to_string(s.axis);
                c.x = s.x;
                c.trials = experiment.trials;
                std::vector<double> values(trials);
                for (std::size_t i = 0; i < nx; ++i)
                {
                    for (std::size_t t = 0; t < trials; ++t)
                        values[t] = records[t][i].metric(m);
                    const auto [mean, se] = mean_and_stderr(values);
                    c.mean.push_back(mean);
                    c.stderr_.push_back(se);
                }
                result.curves.push_back(std::move(c));
            }
            if (progress)
                progress(s.name);
        }
        return result;
    }
}
