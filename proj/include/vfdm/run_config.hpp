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

// Batch configuration: JSON documents and named presets that expand into
// simulator experiments.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vfdm/precoder.hpp"
#include "vfdm/simulator.hpp"

namespace vfdm
{
    struct RunConfig
    {
        std::string experiment = "fig2"; // fig2, fig3, fig45, fig78 or custom
        int N = 64;
        std::vector<int> L{16};
        std::vector<double> alpha{0.0};
        std::vector<double> snr_db;       // SNR grid, or fixed SNRs on a tau/T sweep
        std::vector<double> tau_fraction; // tau/T grid for estimated_csi
        int coherence_time = 6400;
        double P1 = 1.0;
        double P2 = 1.0;
        int trials = 2000;
        std::uint64_t seed = 1;
        std::string out_dir = "results";
        int workers = 1;
        Mode mode = Mode::perfect_csi;    // custom experiments only
        std::vector<Metric> metrics;      // custom experiments only; empty = mode default
        PrecoderMethod precoder = PrecoderMethod::svd;
        PartitionPower partition_power = PartitionPower::per_carrier;
        double training_noise_scale = 1.0;

        // Unknown keys and similar non-fatal findings.
        std::vector<std::string> warnings;

        // Checks every scenario invariant; throws std::invalid_argument.
        void validate() const;
        nlohmann::json to_json() const;
    };

    const std::vector<std::string> &preset_names();

    // Defaults for a named experiment (throws on unknown names).
    RunConfig preset_config(const std::string &name);

    // Reads a JSON object; preset defaults for its "experiment" are applied
    // first and explicit keys override them.
    RunConfig parse_config_json(const nlohmann::json &doc);
    RunConfig parse_config(const std::filesystem::path &path);

    Experiment build_experiment(const RunConfig &config);
}
