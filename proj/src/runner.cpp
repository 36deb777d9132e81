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

#include "vfdm/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "vfdm/kernels.hpp"

namespace vfdm
{
    namespace fs = std::filesystem;
    using nlohmann::json;

    namespace
    {
        void write_atomic(const fs::path &path, const std::string &content)
        {
            const fs::path tmp = path.string() + ".tmp";
            {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                if (!out)
                    throw std::runtime_error("cannot write '" + tmp.string() + "'");
                out << content;
                out.flush();
                if (!out)
                    throw std::runtime_error("write failed for '" + tmp.string() + "'");
            }
            std::error_code ec;
            fs::rename(tmp, path, ec);
            if (ec)
                throw std::runtime_error("cannot move '" + tmp.string() + "' into place: " + ec.message());
        }

        std::string utc_timestamp()
        {
            const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            std::tm tm{};
            gmtime_r(&now, &tm);
            char buf[32];
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
            return buf;
        }
    }

    std::string format_curve_csv(const AggregateCurve &curve)
    {
        std::string s = "x,mean_rate_bps_hz,stderr,trials\n";
        char line[128];
        for (std::size_t i = 0; i < curve.x.size(); ++i)
        {
            if (!std::isfinite(curve.x[i]) || !std::isfinite(curve.mean[i]) || !std::isfinite(curve.stderr_[i]))
                throw std::runtime_error("curve '" + curve.name + "' has a non-finite value at point " +
                                         std::to_string(i));
            std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%d\n", curve.x[i], curve.mean[i], curve.stderr_[i],
                          curve.trials);
            s += line;
        }
        return s;
    }

    fs::path manifest_path(const RunConfig &config)
    {
        return fs::path(config.out_dir) / (config.experiment + "_manifest.json");
    }

    RunOutput run(const RunConfig &config, const std::function<void(const std::string &)> &progress)
    {
        config.validate();
        const Experiment ex = build_experiment(config);

        const fs::path out_dir(config.out_dir);
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec)
            throw std::runtime_error("cannot create output directory '" + out_dir.string() + "': " + ec.message());

        RunOutput output;
        output.manifest = manifest_path(config);
        fs::remove(output.manifest, ec);

        const auto t0 = std::chrono::steady_clock::now();
        output.result = sweep(ex, progress);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        json outputs = json::array();
        for (const AggregateCurve &c : output.result.curves)
        {
            const fs::path file = out_dir / (config.experiment + "_" + c.name + ".csv");
            write_atomic(file, format_curve_csv(c));
            output.csv_files.push_back(file);
            outputs.push_back({{"curve", c.name}, {"file", file.filename().string()}, {"x", c.x_label},
                               {"points", c.x.size()}, {"trials", c.trials}});
        }

        json timing = json::object();
        for (std::size_t s = 0; s < ex.scenarios.size(); ++s)
            timing[ex.scenarios[s].name] = output.result.seconds_per_point[s];

        const int M = config.N + config.L.front();
        json manifest{
            {"tool", "vfdm_sim"},
            {"version", tool_version},
            {"timestamp", utc_timestamp()},
            {"config", config.to_json()},
            {"kernel_isa", kernels::isa_name(kernels::active_isa())},
            {"snr_definition", "SNR_dB = 10 log10(P1 / sigma2); powers are per symbol"},
            {"power", {{"per_symbol_P1", config.P1},
                       {"per_block_P1", M * config.P1},
                       {"per_symbol_P2", config.P2},
                       {"per_block_P2", M * config.P2},
                       {"block_length_first_L", M}}},
            {"outputs", outputs},
            {"seconds_per_grid_point", timing},
            {"wall_clock_seconds", wall},
            {"warnings", config.warnings},
            {"complete", true}};
        write_atomic(output.manifest, manifest.dump(2) + "\n");
        return output;
    }
}
