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

#include "vfdm/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vfdm
{
    using nlohmann::json;

    namespace
    {
        std::vector<double> grid(double from, double to, double step)
        {
            std::vector<double> g;
            const int n = static_cast<int>(std::floor((to - from) / step + 1e-9));
            for (int i = 0; i <= n; ++i)
                g.push_back(from + step * i);
            return g;
        }

        const std::vector<double> default_tau_grid{0.025, 0.03, 0.04, 0.05, 0.0625, 0.075,
                                                   0.1,   0.125, 0.15, 0.2, 0.25,   0.3};

        std::string format_value(double v)
        {
            std::ostringstream os;
            os << v;
            return os.str();
        }

        [[noreturn]] void field_error(const std::string &field, const std::string &expected)
        {
            throw std::invalid_argument("config field '" + field + "': expected " + expected);
        }

        int get_int(const json &v, const std::string &field)
        {
            if (!v.is_number_integer())
                field_error(field, "an integer");
            return v.get<int>();
        }

        double get_double(const json &v, const std::string &field)
        {
            if (!v.is_number())
                field_error(field, "a number");
            return v.get<double>();
        }

        std::string get_string(const json &v, const std::string &field)
        {
            if (!v.is_string())
                field_error(field, "a string");
            return v.get<std::string>();
        }

        template <typename T, typename Get>
        std::vector<T> get_list(const json &v, const std::string &field, Get get)
        {
            std::vector<T> out;
            if (v.is_array())
            {
                for (const json &e : v)
                    out.push_back(get(e, field));
                if (out.empty())
                    field_error(field, "a non-empty list");
            }
            else
                out.push_back(get(v, field));
            return out;
        }
    }

    const std::vector<std::string> &preset_names()
    {
        static const std::vector<std::string> names{"fig2", "fig3", "fig45", "fig78", "custom"};
        return names;
    }

    RunConfig preset_config(const std::string &name)
    {
        RunConfig c;
        c.experiment = name;
        if (name == "fig2")
        {
            c.L = {8, 16, 32};
            c.alpha = {0.0};
            c.snr_db = grid(0.0, 30.0, 3.0);
        }
        else if (name == "fig3")
        {
            c.L = {16};
            c.alpha = {0.0, 0.1, 0.5, 1.0};
            c.snr_db = grid(0.0, 40.0, 5.0);
        }
        else if (name == "fig45")
        {
            c.L = {16};
            c.alpha = {0.0, 1.0};
            c.snr_db = grid(0.0, 30.0, 2.0);
        }
        else if (name == "fig78")
        {
            c.L = {16};
            c.alpha = {0.0};
            c.snr_db = {0.0, 10.0, 20.0};
            c.tau_fraction = default_tau_grid;
            c.mode = Mode::estimated_csi;
        }
        else if (name == "custom")
        {
            c.snr_db = grid(0.0, 30.0, 3.0);
        }
        else
            throw std::invalid_argument("unknown experiment '" + name + "'");
        return c;
    }

    RunConfig parse_config_json(const json &doc)
    {
        if (!doc.is_object())
            throw std::invalid_argument("config must be a JSON object");

        const std::string name = doc.contains("experiment") ? get_string(doc["experiment"], "experiment") : "custom";
        RunConfig c = preset_config(name);

        for (const auto &[key, v] : doc.items())
        {
            if (key == "experiment")
                continue;
            else if (key == "N")
                c.N = get_int(v, key);
            else if (key == "L")
                c.L = get_list<int>(v, key, get_int);
            else if (key == "alpha")
                c.alpha = get_list<double>(v, key, get_double);
            else if (key == "snr_db")
                c.snr_db = get_list<double>(v, key, get_double);
            else if (key == "tau_fraction")
                c.tau_fraction = v.is_array() && v.empty() ? std::vector<double>{} : get_list<double>(v, key, get_double);
            else if (key == "coherence_time")
                c.coherence_time = get_int(v, key);
            else if (key == "P1")
                c.P1 = get_double(v, key);
            else if (key == "P2")
                c.P2 = get_double(v, key);
            else if (key == "trials")
                c.trials = get_int(v, key);
            else if (key == "seed")
            {
                if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
                    field_error(key, "a non-negative integer");
                c.seed = v.get<std::uint64_t>();
            }
            else if (key == "out")
                c.out_dir = get_string(v, key);
            else if (key == "workers")
                c.workers = get_int(v, key);
            else if (key == "mode")
                c.mode = mode_from_string(get_string(v, key));
            else if (key == "metrics")
            {
                c.metrics.clear();
                if (v.is_array() && v.empty()) // mode default, as echoed in manifests
                    continue;
                for (const std::string &m : get_list<std::string>(v, key, get_string))
                    c.metrics.push_back(metric_from_string(m));
            }
            else if (key == "precoder")
                c.precoder = precoder_method_from_string(get_string(v, key));
            else if (key == "partition_power")
                c.partition_power = partition_power_from_string(get_string(v, key));
            else if (key == "training_noise_scale")
                c.training_noise_scale = get_double(v, key);
            else
                c.warnings.push_back("unknown config key '" + key + "' ignored");
        }
        c.validate();
        return c;
    }

    RunConfig parse_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open config file '" + path.string() + "'");
        json doc;
        try
        {
            doc = json::parse(in);
        }
        catch (const json::parse_error &e)
        {
            throw std::invalid_argument("config '" + path.string() + "' is not valid JSON: " + e.what());
        }
        return parse_config_json(doc);
    }

    void RunConfig::validate() const
    {
        if (trials < 1)
            throw std::invalid_argument("trials must be >= 1");
        if (workers < 1)
            throw std::invalid_argument("workers must be >= 1");
        if (out_dir.empty())
            throw std::invalid_argument("output directory must not be empty");
        for (int l : L)
        {
            ScenarioParams p;
            p.N = N;
            p.L = l;
            p.P1 = P1;
            p.P2 = P2;
            p.validate();
        }
        for (double a : alpha)
        {
            ScenarioParams p;
            p.N = N;
            p.L = L.front();
            p.alpha = a;
            p.validate();
        }
        build_experiment(*this).validate();
    }

    json RunConfig::to_json() const
    {
        json metrics_json = json::array();
        for (Metric m : metrics)
            metrics_json.push_back(to_string(m));
        return json{{"experiment", experiment},
                    {"N", N},
                    {"L", L},
                    {"alpha", alpha},
                    {"snr_db", snr_db},
                    {"tau_fraction", tau_fraction},
                    {"coherence_time", coherence_time},
                    {"P1", P1},
                    {"P2", P2},
                    {"trials", trials},
                    {"seed", seed},
                    {"out", out_dir},
                    {"workers", workers},
                    {"mode", to_string(mode)},
                    {"metrics", metrics_json},
                    {"precoder", to_string(precoder)},
                    {"partition_power", to_string(partition_power)},
                    {"training_noise_scale", training_noise_scale}};
    }

    Experiment build_experiment(const RunConfig &c)
    {
        Experiment ex;
        ex.name = c.experiment;
        ex.trials = c.trials;
        ex.master_seed = c.seed;
        ex.workers = c.workers;

        auto base = [&](const std::string &name, int L, double alpha) {
            Scenario s;
            s.name = name;
            s.N = c.N;
            s.L = L;
            s.alpha = alpha;
            s.P1 = c.P1;
            s.P2 = c.P2;
            s.x = c.snr_db;
            s.precoder = c.precoder;
            s.partition_power = c.partition_power;
            s.training_noise_scale = c.training_noise_scale;
            s.coherence_time = c.coherence_time;
            return s;
        };

        if (c.experiment == "fig2")
        {
            for (std::size_t i = 0; i < c.L.size(); ++i)
            {
                Scenario s = base("L" + std::to_string(c.L[i]), c.L[i], c.alpha.front());
                s.stream_id = i;
                ex.scenarios.push_back(s);
            }
        }
        else if (c.experiment == "fig3")
        {
            // one channel stream for every alpha: curves differ only by interference
            for (double a : c.alpha)
                ex.scenarios.push_back(base("alpha_" + format_value(a), c.L.front(), a));
        }
        else if (c.experiment == "fig45")
        {
            for (double a : c.alpha)
            {
                Scenario s = base("vfdm_alpha_" + format_value(a), c.L.front(), a);
                s.metrics = {Metric::secondary, Metric::primary, Metric::sum};
                ex.scenarios.push_back(s);
            }
            Scenario ref = base("reference", c.L.front(), 0.0);
            ref.mode = Mode::baseline_partition;
            ref.metrics = {Metric::secondary, Metric::primary, Metric::sum};
            ex.scenarios.push_back(ref);
        }
        else if (c.experiment == "fig78" || (c.experiment == "custom" && c.mode == Mode::estimated_csi))
        {
            std::uint64_t id = 0;
            for (int L : c.L)
                for (double a : c.alpha)
                    for (double snr : c.snr_db)
                    {
                        std::string name = "snr_" + format_value(snr) + "dB";
                        if (c.L.size() > 1)
                            name = "L" + std::to_string(L) + "_" + name;
                        if (c.alpha.size() > 1 || a != 0.0)
                            name += "_alpha_" + format_value(a);
                        Scenario s = base(name, L, a);
                        s.mode = Mode::estimated_csi;
                        s.axis = Axis::tau_fraction;
                        s.snr_db = snr;
                        s.x = c.tau_fraction.empty() ? default_tau_grid : c.tau_fraction;
                        s.metrics = c.metrics.empty() ? std::vector<Metric>{Metric::primary, Metric::secondary} : c.metrics;
                        s.stream_id = id++;
                        ex.scenarios.push_back(s);
                    }
        }
        else if (c.experiment == "custom")
        {
            std::uint64_t id = 0;
            for (int L : c.L)
            {
                for (double a : c.alpha)
                {
                    const std::string prefix = c.mode == Mode::baseline_partition ? "reference" : "vfdm";
                    Scenario s = base(prefix + "_L" + std::to_string(L) + "_alpha_" + format_value(a), L, a);
                    s.mode = c.mode;
                    s.stream_id = id;
                    if (!c.metrics.empty())
                        s.metrics = c.metrics;
                    else if (c.mode == Mode::baseline_partition)
                        s.metrics = {Metric::secondary, Metric::primary, Metric::sum};
                    ex.scenarios.push_back(s);
                }
                ++id;
            }
        }
        else
            throw std::invalid_argument("unknown experiment '" + c.experiment + "'");
        return ex;
    }
}
