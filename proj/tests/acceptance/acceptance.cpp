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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "test_support.hpp"
#include "vfdm/estimation.hpp"
#include "vfdm/link_optimizer.hpp"
#include "vfdm/precoder.hpp"
#include "vfdm/run_config.hpp"
#include "vfdm/runner.hpp"
#include "vfdm/signal_model.hpp"
#include "vfdm/simulator.hpp"

using namespace vfdm;
using namespace vfdm::testing;
namespace fs = std::filesystem;

namespace tol
{
    // 1
    constexpr int c1_draws = 1000;
    constexpr double c1_residual_ratio = 1e-10;
    constexpr double c1_orthonormality = 1e-10;
    constexpr double c1_seconds = 30.0;
    // 2
    constexpr int c2_draws = 200;
    constexpr double c2_angle = 1e-6;
    // 3
    constexpr int c3_instances = 500;
    constexpr int c3_grid_units = 1000; // step 1e-3 of the budget
    constexpr double c3_objective = 1e-3;
    constexpr double c3_kkt = 1e-9;
    // 4
    constexpr int c4_trials = 2000;
    constexpr double c4_min_snr = 10.0;
    constexpr double c4_gap_se = 2.0;
    constexpr double c4_seconds = 600.0;
    // 5
    constexpr int c5_trials = 2000;
    constexpr double c5_saturated_gain = 0.05;
    constexpr double c5_open_gain = 0.3;
    // 6
    constexpr int c6_trials = 2000;
    constexpr double c6_snr = 20.0;
    constexpr double c6_min_gain = 0.2;
    constexpr double c6_claim_lo = 0.5 * 0.5; // 0.5 - 50 %
    constexpr double c6_claim_hi = 1.0 * 1.5; // 1.0 + 50 %
    // 7
    constexpr int c7_draws = 40;
    constexpr double c7_rate = 1e-9;
    constexpr double c7_leakage = 1e-16;
    // 8
    constexpr int c8_trials = 10000;
    constexpr double c8_slope = 0.10;
    // 9
    constexpr int c9_trials = 400;
    constexpr double c9_argmax = 0.1;
    constexpr double c9_unimodal_se = 1.0;
    // 10
    constexpr int c10_trials = 12;
}

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    std::string fmt(const char *f, double v)
    {
        char b[64];
        std::snprintf(b, sizeof b, f, v);
        return b;
    }

    int workers()
    {
        return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }

    const AggregateCurve &curve(const SweepResult &r, const std::string &name)
    {
        for (const auto &c : r.curves)
            if (c.name == name)
                return c;
        throw std::runtime_error("missing curve " + name);
    }

    std::size_t index_of(const std::vector<double> &x, double v)
    {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (std::abs(x[i] - v) < 1e-9)
                return i;
        throw std::runtime_error("grid point missing");
    }

    double seconds_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    Outcome orthogonality_suite()
    {
        const int N = 64, L = 16;
        Rng rng(mix_keys({1001}));
        double worst_ratio = 0.0, worst_orth = 0.0;
        const auto t0 = std::chrono::steady_clock::now();
        for (int d = 0; d < tol::c1_draws; ++d)
        {
            const ChannelTaps h = draw_channel(rng, L);
            const Precoder p = build_precoder(h, N, PrecoderMethod::svd);
            const CMatrix T = make_toeplitz(h, N).matrix;
            const double ratio = (dft_matrix(N) * T * p.E).norm() / T.norm();
            worst_ratio = std::max(worst_ratio, ratio);
            worst_orth = std::max(worst_orth, (p.E.adjoint() * p.E - CMatrix::Identity(L, L)).norm());
        }
        const double secs = seconds_since(t0);
        return {worst_ratio < tol::c1_residual_ratio && worst_orth < tol::c1_orthonormality && secs < tol::c1_seconds,
                "max ||F T E||/||T|| = " + fmt("%.2e", worst_ratio) + ", max ||E^H E - I|| = " +
                    fmt("%.2e", worst_orth) + ", " + fmt("%.1f", secs) + " s"};
    }

    Outcome construction_equivalence()
    {
        Rng rng(mix_keys({1002}));
        std::uniform_int_distribution<int> Ld(1, 4);
        double worst = 0.0;
        for (int d = 0; d < tol::c2_draws; ++d)
        {
            const int L = Ld(rng);
            const int N = std::uniform_int_distribution<int>(std::max(2, L), 16)(rng);
            const ChannelTaps h = draw_channel(rng, L);
            const Precoder a = build_precoder(h, N, PrecoderMethod::svd);
            const Precoder b = build_precoder(h, N, PrecoderMethod::roots_gram_schmidt);
            worst = std::max(worst, max_principal_angle(a.E, b.E));
        }
        return {worst < tol::c2_angle, "max principal angle " + fmt("%.2e", worst) + " rad over " +
                                           std::to_string(tol::c2_draws) + " draws"};
    }

    Outcome waterfill_oracle()
    {
        Rng rng(mix_keys({1003}));
        std::uniform_real_distribution<double> U(0.0, 1.0);
        double worst_gap = 0.0, worst_kkt = 0.0;
        for (int t = 0; t < tol::c3_instances; ++t)
        {
            const std::size_t n = 1 + t % 4;
            std::vector<double> lam(n), q(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                lam[i] = std::pow(10.0, 4.0 * U(rng) - 2.0);
                q[i] = 0.25 + 1.75 * U(rng);
            }
            const double budget = std::pow(10.0, 2.0 * U(rng) - 1.0);
            const PowerAllocation a = waterfill(lam, q, budget);

            const double grid = grid_waterfill_optimum(lam, q, budget, tol::c3_grid_units);
            worst_gap = std::max(worst_gap, std::abs(a.objective - grid));
            if (a.objective < grid - 1e-12) // the exact optimum can never lose to a grid point
                worst_gap = std::max(worst_gap, 1.0);

            double used = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                used += a.d[i] * q[i];
                if (a.d[i] > 0.0)
                    worst_kkt = std::max(worst_kkt, std::abs(a.d[i] - (a.mu / q[i] - 1.0 / lam[i])));
                else
                    worst_kkt = std::max(worst_kkt, std::max(0.0, a.mu / q[i] - 1.0 / lam[i]));
                worst_kkt = std::max(worst_kkt, std::max(0.0, -a.d[i]));
            }
            worst_kkt = std::max(worst_kkt, std::abs(used - budget));
        }
        return {worst_gap < tol::c3_objective && worst_kkt < tol::c3_kkt,
                "max |objective - grid optimum| = " + fmt("%.2e", worst_gap) + ", max KKT violation " +
                    fmt("%.2e", worst_kkt)};
    }

    Outcome fig2_ordering()
    {
        RunConfig c = preset_config("fig2");
        c.trials = tol::c4_trials;
        c.workers = workers();
        const auto t0 = std::chrono::steady_clock::now();
        const SweepResult r = sweep(build_experiment(c));
        const double secs = seconds_since(t0);
        const auto &r8 = curve(r, "L8_secondary"), &r16 = curve(r, "L16_secondary"), &r32 = curve(r, "L32_secondary");
        bool ok = secs < tol::c4_seconds;
        double min_z = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < r8.x.size(); ++i)
        {
            if (r8.x[i] < tol::c4_min_snr)
                continue;
            const double z1 = (r32.mean[i] - r16.mean[i]) / std::hypot(r32.stderr_[i], r16.stderr_[i]);
            const double z2 = (r16.mean[i] - r8.mean[i]) / std::hypot(r16.stderr_[i], r8.stderr_[i]);
            min_z = std::min({min_z, z1, z2});
        }
        ok = ok && min_z > tol::c4_gap_se;
        const std::size_t i30 = index_of(r8.x, 30.0);
        return {ok, "smallest gap " + fmt("%.1f", min_z) + " SE; at 30 dB L8/L16/L32 = " + fmt("%.3f", r8.mean[i30]) +
                        "/" + fmt("%.3f", r16.mean[i30]) + "/" + fmt("%.3f", r32.mean[i30]) + " bps/Hz; " +
                        fmt("%.0f", secs) + " s"};
    }

    Outcome fig3_saturation()
    {
        RunConfig c = preset_config("fig3");
        c.alpha = {0.0, 1.0};
        c.snr_db = {30.0, 40.0};
        c.trials = tol::c5_trials;
        c.workers = workers();
        const SweepResult r = sweep(build_experiment(c));
        const auto &a0 = curve(r, "alpha_0_secondary"), &a1 = curve(r, "alpha_1_secondary");
        const double g0 = a0.mean[1] - a0.mean[0], g1 = a1.mean[1] - a1.mean[0];
        return {g1 < tol::c5_saturated_gain && g0 > tol::c5_open_gain,
                "gain 30->40 dB: alpha=1 " + fmt("%.4f", g1) + ", alpha=0 " + fmt("%.4f", g0) + " bps/Hz"};
    }

    Outcome fig45_comparison()
    {
        RunConfig c = preset_config("fig45");
        c.trials = tol::c6_trials;
        c.workers = workers();
        const SweepResult r = sweep(build_experiment(c));
        const auto &v1 = curve(r, "vfdm_alpha_1_sum"), &v0 = curve(r, "vfdm_alpha_0_sum"), &ref = curve(r, "reference_sum");
        const std::size_t i20 = index_of(ref.x, tol::c6_snr);
        const double gain20 = v1.mean[i20] - ref.mean[i20];

        double best1 = -1e9, best0 = -1e9, at1 = 0, at0 = 0;
        for (std::size_t i = 0; i < ref.x.size(); ++i)
        {
            if (v1.mean[i] - ref.mean[i] > best1)
                best1 = v1.mean[i] - ref.mean[i], at1 = ref.x[i];
            if (v0.mean[i] - ref.mean[i] > best0)
                best0 = v0.mean[i] - ref.mean[i], at0 = ref.x[i];
        }
        const bool in_band = best1 >= tol::c6_claim_lo && best1 <= tol::c6_claim_hi;
        return {gain20 >= tol::c6_min_gain,
                "sum gain at 20 dB (alpha=1) " + fmt("%.3f", gain20) + " bps/Hz; max gain alpha=1 " +
                    fmt("%.3f", best1) + " at " + fmt("%.0f", at1) + " dB (" +
                    (in_band ? "inside" : "outside") + " the 0.5-1 +/-50% band), alpha=0 " + fmt("%.3f", best0) +
                    " at " + fmt("%.0f", at0) + " dB"};
    }

    Outcome estimation_round_trip()
    {
        Rng rng(mix_keys({1007}));
        double worst_rate = 0.0, worst_leak = 0.0;
        ProtocolOptions o;
        o.training_noise_scale = 0.0;
        for (int d = 0; d < tol::c7_draws; ++d)
        {
            const ChannelSet ch = draw_channels(rng, 16);
            const CMatrix E = build_precoder(ch.h21, 64, PrecoderMethod::svd).E;
            for (double alpha : {0.0, 1.0})
                for (double snr : {0.0, 10.0, 20.0})
                {
                    const ScenarioParams p = ScenarioParams::at_snr_db(64, 16, snr, alpha);
                    const EffectiveRates e = effective_rates(TrainingSchedule{6400, 80, 80}, ch, p, rng, o);
                    const TrialRecord perfect = evaluate_vfdm(ch, E, p);
                    worst_rate = std::max({worst_rate, std::abs(e.primary_inlog - perfect.rate_primary),
                                           std::abs(e.secondary_inlog - perfect.rate_secondary)});
                    worst_leak = std::max(worst_leak, e.h21.residual_leakage.maxCoeff());
                }
        }
        return {worst_rate < tol::c7_rate && worst_leak < tol::c7_leakage,
                "max rate difference (before prelog) " + fmt("%.2e", worst_rate) +
                    " bps/Hz, max per-carrier leakage " + fmt("%.2e", worst_leak)};
    }

    Outcome ls_scaling()
    {
        ScenarioParams p;
        p.sigma2 = 1.0;
        Rng rng(mix_keys({1008}));
        std::vector<double> lx, ly;
        std::string detail = "per-tap error variance (measured/theory):";
        for (int tau : {80, 160, 320})
        {
            const PilotBlock psi = make_pilots(p.N, p.L, tau, PilotFamily::primary);
            double acc = 0.0;
            for (int t = 0; t < tol::c8_trials; ++t)
            {
                const ChannelTaps h = draw_channel(rng, p.L);
                const ChannelTaps est = estimate_uplink_h21(uplink_observation(h, psi, p.N, p.sigma2, rng), psi, p);
                acc += (est.values() - h.values()).squaredNorm();
            }
            const double v = acc / tol::c8_trials / (p.L + 1);
            detail += " " + std::to_string(tau) + ":" + fmt("%.3f", v / (p.sigma2 / (std::sqrt(64.0) * tau)));
            lx.push_back(std::log(double(tau)));
            ly.push_back(std::log(v));
        }
        const double slope = regression_slope(lx, ly);
        return {std::abs(slope + 1.0) < tol::c8_slope,
                "log-log slope " + fmt("%.4f", slope) + " (law -1); " + detail};
    }

    bool unimodal(const AggregateCurve &c, double se_factor)
    {
        const auto top = std::max_element(c.mean.begin(), c.mean.end()) - c.mean.begin();
        for (long i = 1; i <= top; ++i)
            if (c.mean[i] < c.mean[i - 1] - se_factor * c.stderr_[i])
                return false;
        for (std::size_t i = top + 1; i < c.mean.size(); ++i)
            if (c.mean[i] > c.mean[i - 1] + se_factor * c.stderr_[i])
                return false;
        return true;
    }

    double argmax_x(const AggregateCurve &c)
    {
        return c.x[std::max_element(c.mean.begin(), c.mean.end()) - c.mean.begin()];
    }

    Outcome fig78_training()
    {
        RunConfig c = preset_config("fig78");
        c.trials = tol::c9_trials;
        c.workers = workers();
        const SweepResult r = sweep(build_experiment(c));
        const auto &s10 = curve(r, "snr_10dB_secondary");
        const double p0 = argmax_x(curve(r, "snr_0dB_primary")), p10 = argmax_x(curve(r, "snr_10dB_primary")),
                     p20 = argmax_x(curve(r, "snr_20dB_primary"));
        const bool uni = unimodal(s10, tol::c9_unimodal_se);
        const double s_arg = argmax_x(s10);
        return {uni && s_arg <= tol::c9_argmax && p20 < p0 && p10 <= p0 && p20 <= p10,
                std::string("secondary at 10 dB ") + (uni ? "unimodal" : "NOT unimodal") + ", argmax tau/T " +
                    fmt("%.4g", s_arg) + "; primary argmax 0/10/20 dB = " + fmt("%.4g", p0) + "/" +
                    fmt("%.4g", p10) + "/" + fmt("%.4g", p20)};
    }

    std::map<std::string, std::string> csv_bytes(const fs::path &dir)
    {
        std::map<std::string, std::string> out;
        for (const auto &e : fs::directory_iterator(dir))
            if (e.path().extension() == ".csv")
            {
                std::ifstream in(e.path(), std::ios::binary);
                std::stringstream ss;
                ss << in.rdbuf();
                out[e.path().filename().string()] = ss.str();
            }
        return out;
    }

    Outcome determinism()
    {
        const fs::path root = fs::temp_directory_path() / "vfdm_acceptance_determinism";
        fs::remove_all(root);
        std::size_t files = 0;
        for (const std::string &preset : {"fig2", "fig3", "fig45", "fig78"})
        {
            std::map<std::string, std::string> first;
            for (int w : {1, 3, 8})
            {
                RunConfig c = preset_config(preset);
                c.trials = tol::c10_trials;
                c.seed = 20260101;
                c.workers = w;
                c.out_dir = (root / (preset + "_w" + std::to_string(w))).string();
                run(c);
                auto bytes = csv_bytes(c.out_dir);
                if (w == 1)
                {
                    first = std::move(bytes);
                    files += first.size();
                }
                else if (bytes != first)
                    return {false, preset + ": CSV bytes differ between 1 and " + std::to_string(w) + " workers"};
            }
        }
        fs::remove_all(root);
        return {true, std::to_string(files) + " CSVs byte-identical for 1, 3 and 8 workers on every preset"};
    }
}

int main(int argc, char **argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"orthogonality suite", orthogonality_suite},
        {"construction equivalence", construction_equivalence},
        {"water-filling oracle", waterfill_oracle},
        {"rate vs SNR ordering in L", fig2_ordering},
        {"interference-limited saturation", fig3_saturation},
        {"sum rate vs partitioned reference", fig45_comparison},
        {"noiseless estimation round trip", estimation_round_trip},
        {"LS error scaling", ls_scaling},
        {"training fraction trade-off", fig78_training},
        {"determinism across workers", determinism},
    };

    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));

    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k)
    {
        const int id = static_cast<int>(k) + 1;
        if (!only.empty() && !only.count(id))
            continue;
        Outcome o;
        try
        {
            o = criteria[k].second();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("criterion %2d %s  %-36s %s\n", id, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
