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

#pragma once

// Monte Carlo experiment engine.
//
// A Scenario fixes the link parameters and an x grid (SNR in dB, or the
// training fraction tau/T). Every trial draws one channel set from a
// substream keyed by (master seed, scenario stream id, trial) and evaluates
// it at all grid points, so curves are smooth in x (common random numbers)
// and results never depend on how trials are spread over workers.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vfdm/estimation.hpp"
#include "vfdm/precoder.hpp"
#include "vfdm/rng.hpp"
#include "vfdm/types.hpp"

namespace vfdm
{
    enum class Mode
    {
        perfect_csi,
        estimated_csi,
        baseline_partition
    };

    enum class Axis
    {
        snr_db,
        tau_fraction
    };

    enum class Metric
    {
        secondary,
        primary,
        sum,
        leakage
    };

    // How the 3/4 | 1/4 partitioned pair splits power.
    enum class PartitionPower
    {
        per_carrier, // budget (N + L) P * (carriers used / N): unchanged power per carrier
        per_block    // full (N + L) P budget concentrated on the carriers used
    };

    std::string to_string(Mode m);
    std::string to_string(Axis a);
    std::string to_string(Metric m);
    std::string to_string(PartitionPower p);
    Mode mode_from_string(const std::string &s);
    Metric metric_from_string(const std::string &s);
    PartitionPower partition_power_from_string(const std::string &s);

    struct TrialRecord
    {
        double snr_db = 0.0;
        double rate_secondary = 0.0;
        double rate_primary = 0.0;
        double sum_rate = 0.0;
        double leakage_total = 0.0;
        std::uint64_t seed_trial = 0;

        double metric(Metric m) const;
    };

    // ---- single trials -------------------------------------------------------

    // Draws h11, h12, h21, h22, builds E and evaluates both links with perfect CSI.
    TrialRecord run_vfdm_trial(const ScenarioParams &params, Rng &rng, PrecoderMethod method = PrecoderMethod::svd);

    // Reference pair: primary on 3N/4 carriers, secondary OFDM on the other N/4
    // (every fourth carrier), no cross interference. Requires N divisible by 4.
    TrialRecord run_partition_trial(const ScenarioParams &params, Rng &rng,
                                    PartitionPower power = PartitionPower::per_carrier);

    // Full estimation protocol; rates include the prelog (T - tau) / T.
    TrialRecord run_estimated_csi_trial(const ScenarioParams &params, const TrainingSchedule &schedule, Rng &rng,
                                        const ProtocolOptions &options = {});

    // Evaluation on fixed draws; the trial runners above are thin wrappers.
    TrialRecord evaluate_vfdm(const ChannelSet &channels, const CMatrix &E, const ScenarioParams &params);
    TrialRecord evaluate_partition(const ChannelSet &channels, const ScenarioParams &params, PartitionPower power);

    // Carrier split of the reference pair: {primary carriers, secondary carriers}.
    std::pair<std::vector<int>, std::vector<int>> partition_carriers(int N);

    // ---- sweeps ----------------------------------------------------------------

    struct Scenario
    {
        std::string name;
        Mode mode = Mode::perfect_csi;
        int N = 64;
        int L = 16;
        double alpha = 0.0;
        double P1 = 1.0;
        double P2 = 1.0;
        Axis axis = Axis::snr_db;
        std::vector<double> x;          // SNR in dB or tau / T
        double snr_db = 10.0;           // fixed SNR on a tau_fraction axis
        int coherence_time = 6400;      // T on a tau_fraction axis
        std::vector<Metric> metrics{Metric::secondary};
        PrecoderMethod precoder = PrecoderMethod::svd;
        PartitionPower partition_power = PartitionPower::per_carrier;
        double training_noise_scale = 1.0;
        std::uint64_t stream_id = 0;    // scenarios sharing an id (and L) see the same channels

        ScenarioParams params_at(std::size_t x_index) const;
        void validate() const;
    };

    struct Experiment
    {
        std::string name;
        std::vector<Scenario> scenarios;
        int trials = 2000;
        std::uint64_t master_seed = 1;
        int workers = 1;

        void validate() const;
    };

    struct AggregateCurve
    {
        std::string name; // "<scenario>_<metric>"
        std::string x_label;
        std::vector<double> x;
        std::vector<double> mean;
        std::vector<double> stderr_;
        int trials = 0;
    };

    struct SweepResult
    {
        std::vector<AggregateCurve> curves;
        // summed evaluation time per scenario and grid point, seconds
        std::vector<std::vector<double>> seconds_per_point;
    };

    // Mean and standard error (sample std / sqrt(n)) of the given values.
    std::pair<double, double> mean_and_stderr(const std::vector<double> &values);

    // Runs every scenario. Output depends only on the experiment, never on
    // the worker count.
    SweepResult sweep(const Experiment &experiment,
                      const std::function<void(const std::string &)> &progress = {});
}
