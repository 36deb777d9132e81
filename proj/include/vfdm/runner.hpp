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

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "vfdm/run_config.hpp"
#include "vfdm/simulator.hpp"

namespace vfdm
{
    inline constexpr const char *tool_version = "1.0.0";

    struct RunOutput
    {
        std::vector<std::filesystem::path> csv_files;
        std::filesystem::path manifest;
        SweepResult result;
    };

    // CSV text for one curve: header "x,mean_rate_bps_hz,stderr,trials", LF endings.
    // Throws std::runtime_error if any value is not finite.
    std::string format_curve_csv(const AggregateCurve &curve);

    std::filesystem::path manifest_path(const RunConfig &config);

    // Runs the experiment and writes one CSV per curve into config.out_dir,
    // then the manifest. The manifest is written last (via rename), so its
    // presence marks a complete run; any stale manifest is removed first.
    RunOutput run(const RunConfig &config, const std::function<void(const std::string &)> &progress = {});
}
