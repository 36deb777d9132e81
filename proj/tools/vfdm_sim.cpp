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

// vfdm_sim: batch front-end for the Monte Carlo experiments.
//
//   vfdm_sim --preset fig2 --trials 500 --out results
//   vfdm_sim --config my_run.json --workers 4

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "vfdm/kernels.hpp"
#include "vfdm/run_config.hpp"
#include "vfdm/runner.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"VFDM link-level Monte Carlo simulator"};

    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<std::string> out;
    std::optional<int> workers;
    bool scalar = false;
    bool quiet = false;

    auto *cfg_opt = app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    std::string preset_help = "Named experiment:";
    for (const auto &p : vfdm::preset_names())
        preset_help += " " + p;
    app.add_option("--preset", preset, preset_help)->excludes(cfg_opt);
    app.add_option("--seed", seed, "Master seed");
    app.add_option("--trials", trials, "Trials per grid point")->check(CLI::PositiveNumber);
    app.add_option("--out", out, "Output directory");
    app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--scalar-kernels", scalar, "Force the scalar reference kernels");
    app.add_flag("-q,--quiet", quiet, "No progress output");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (scalar)
            vfdm::kernels::set_isa(vfdm::kernels::Isa::scalar);

        vfdm::RunConfig config;
        if (!config_path.empty())
            config = vfdm::parse_config(config_path);
        else if (!preset.empty())
            config = vfdm::preset_config(preset);
        else
        {
            std::cerr << "error: one of --config or --preset is required\n";
            return 2;
        }
        if (seed)
            config.seed = *seed;
        if (trials)
            config.trials = *trials;
        if (out)
            config.out_dir = *out;
        if (workers)
            config.workers = *workers;
        config.validate();

        for (const auto &w : config.warnings)
            std::cerr << "warning: " << w << "\n";

        auto progress = [&](const std::string &scenario) {
            if (!quiet)
                std::cerr << "  done: " << scenario << "\n";
        };
        const vfdm::RunOutput result = vfdm::run(config, progress);
        if (!quiet)
        {
            for (const auto &f : result.csv_files)
                std::cout << f.string() << "\n";
            std::cout << result.manifest.string() << "\n";
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
