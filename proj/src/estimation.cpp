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

#include "vfdm/estimation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>

#include "vfdm/errors.hpp"
#include "vfdm/kernels.hpp"
#include "vfdm/signal_model.hpp"

namespace vfdm
{
    void TrainingSchedule::validate(int N, int L) const
    {
        const int need = N + L;
        if (tau_u < need || tau_d < need)
            throw InsufficientTraining("pilot durations must be >= N + L = " + std::to_string(need) +
                                       " (got tau_u=" + std::to_string(tau_u) + ", tau_d=" + std::to_string(tau_d) +
                                       ")");
        if (tau() >= T)
            throw InsufficientTraining("training tau=" + std::to_string(tau()) + " must be shorter than T=" +
                                       std::to_string(T));
    }

    TrainingSchedule TrainingSchedule::from_fraction(int T, double tau_over_T)
    {
        if (T < 1 || !(tau_over_T > 0.0 && tau_over_T < 1.0))
            throw std::invalid_argument("from_fraction: need T >= 1 and 0 < tau/T < 1");
        const int tau = static_cast<int>(std::lround(tau_over_T * T));
        TrainingSchedule s;
        s.T = T;
        s.tau_u = tau / 2;
        s.tau_d = tau - s.tau_u;
        return s;
    }

    PilotBlock make_pilots(int N, int L, int tau, PilotFamily family)
    {
        if (N < 1 || L < 1)
            throw std::invalid_argument("make_pilots: need N, L >= 1");
        if (tau < N + L)
            throw InsufficientTraining("tau=" + std::to_string(tau) + " cannot hold two disjoint pilot families (need >= " +
                                       std::to_string(N + L) + ")");
        const int rows = family == PilotFamily::primary ? N : L;
        const int first = family == PilotFamily::primary ? 0 : N;
        const double amp = std::pow(static_cast<double>(N), -0.25);

        PilotBlock p{CRowMatrix(rows, tau), family};
        for (int j = 0; j < rows; ++j)
        {
            const long r = first + j;
            for (int t = 0; t < tau; ++t)
            {
                const long rt = (r * t) % tau;
                p.psi(j, t) = std::polar(amp, 2.0 * std::numbers::pi * static_cast<double>(rt) / tau);
            }
        }
        return p;
    }

    namespace
    {
        std::span<const cplx> row_span(const CRowMatrix &M, Eigen::Index r)
        {
            return {M.data() + r * M.cols(), static_cast<std::size_t>(M.cols())};
        }

        void add_noise(CRowMatrix &Y, double noise_var, Rng &rng)
        {
            if (noise_var <= 0.0)
                return;
            std::normal_distribution<double> g(0.0, 1.0);
            const double s = std::sqrt(0.5 * noise_var);
            cplx *p = Y.data();
            for (Eigen::Index i = 0; i < Y.size(); ++i)
            {
                const double re = g(rng);
                const double im = g(rng);
                p[i] += cplx(s * re, s * im);
            }
        }
    }

    CMatrix ls_estimate(const CRowMatrix &Y, const PilotBlock &pilots, int N)
    {
        const auto tau = pilots.psi.cols();
        if (Y.cols() != tau)
            throw std::invalid_argument("ls_estimate: observation and pilots differ in length");
        const double scale = std::sqrt(static_cast<double>(N)) / static_cast<double>(tau);
        CMatrix H(Y.rows(), pilots.psi.rows());
        for (Eigen::Index k = 0; k < Y.rows(); ++k)
            for (Eigen::Index j = 0; j < pilots.psi.rows(); ++j)
                H(k, j) = scale * kernels::dotc(row_span(pilots.psi, j), row_span(Y, k));
        return H;
    }

    CVector ls_estimate_diagonal(const CRowMatrix &Y, const PilotBlock &pilots, int N)
    {
        const auto tau = pilots.psi.cols();
        if (Y.cols() != tau || Y.rows() != pilots.psi.rows())
            throw std::invalid_argument("ls_estimate_diagonal: observation must be N x tau like the pilots");
        const double scale = std::sqrt(static_cast<double>(N)) / static_cast<double>(tau);
        CVector d(Y.rows());
        for (Eigen::Index k = 0; k < Y.rows(); ++k)
            d[k] = scale * kernels::dotc(row_span(pilots.psi, k), row_span(Y, k));
        return d;
    }

    ChannelTaps taps_from_diagonal(const CVector &diag, int L)
    {
        const auto N = static_cast<int>(diag.size());
        if (L < 1 || L >= N + 1)
            throw std::invalid_argument("taps_from_diagonal: need 1 <= L <= N");
        CVector h(L + 1);
        for (int l = 0; l <= L; ++l)
        {
            cplx acc = 0.0;
            for (int k = 0; k < N; ++k)
            {
                const long kl = (static_cast<long>(k) * l) % N;
                acc += diag[k] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(kl) / N);
            }
            h[l] = acc / static_cast<double>(N);
        }
        return ChannelTaps(std::move(h));
    }

    ChannelTaps taps_from_diagonal_literal(const CVector &diag, int L)
    {
        const auto N = static_cast<int>(diag.size());
        if (L < 1 || L >= N + 1)
            throw std::invalid_argument("taps_from_diagonal_literal: need 1 <= L <= N");
        CVector h(L + 1);
        const double scale = 1.0 / std::sqrt(static_cast<double>(N));
        for (int k = 0; k <= L; ++k)
        {
            const long kk = (static_cast<long>(k) * k) % N;
            h[k] = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(kk) / N) * diag[k];
        }
        return ChannelTaps(std::move(h));
    }

    CRowMatrix uplink_observation(const ChannelTaps &h21, const PilotBlock &psi1, int N, double noise_var, Rng &rng)
    {
        if (psi1.psi.rows() != N)
            throw std::invalid_argument("uplink_observation: Psi1 must have N rows");
        const CVector H = overall_diagonal(h21, N, ChannelRole::H21_prime).diag;
        CRowMatrix Y = H.asDiagonal() * psi1.psi;
        add_noise(Y, noise_var, rng);
        return Y;
    }

    CRowMatrix downlink_observation(const CMatrix &H22, const PilotBlock &psi2, const CVector *interference_diag,
                                    const PilotBlock *psi1, double noise_var, Rng &rng)
    {
        if (H22.cols() != psi2.psi.rows())
            throw std::invalid_argument("downlink_observation: H22 columns must match Psi2 rows");
        CRowMatrix Y = H22 * psi2.psi;
        if (interference_diag && psi1)
        {
            if (psi1->psi.cols() != psi2.psi.cols() || interference_diag->size() != H22.rows() ||
                psi1->psi.rows() != H22.rows())
                throw std::invalid_argument("downlink_observation: interfering pilots have the wrong shape");
            Y += interference_diag->asDiagonal() * psi1->psi;
        }
        add_noise(Y, noise_var, rng);
        return Y;
    }

    ChannelTaps estimate_uplink_h21(const CRowMatrix &Y2u, const PilotBlock &psi1, const ScenarioParams &params)
    {
        if (Y2u.rows() != params.N)
            throw std::invalid_argument("estimate_uplink_h21: Y2u must have N rows");
        return taps_from_diagonal(ls_estimate_diagonal(Y2u, psi1, params.N), params.L);
    }

    CMatrix estimate_downlink_h22(const CRowMatrix &Y2d, const PilotBlock &psi2, const ScenarioParams &params)
    {
        if (Y2d.rows() != params.N || psi2.psi.rows() != params.L)
            throw std::invalid_argument("estimate_downlink_h22: need an N x tau observation and L pilot streams");
        return ls_estimate(Y2d, psi2, params.N);
    }

    RVector residual_leakage(const ChannelTaps &h21_true, const CMatrix &E_hat, std::span<const double> stream_powers)
    {
        if (static_cast<Eigen::Index>(stream_powers.size()) != E_hat.cols())
            throw std::invalid_argument("residual_leakage: one power per precoder column required");
        const int N = static_cast<int>(E_hat.rows()) - h21_true.memory();
        const CMatrix H21 = dft_matrix(N) * toeplitz_apply(h21_true, N, E_hat);
        RVector leak = RVector::Zero(N);
        for (Eigen::Index j = 0; j < H21.cols(); ++j)
            leak += stream_powers[static_cast<std::size_t>(j)] * H21.col(j).cwiseAbs2();
        return leak;
    }

    RVector residual_leakage(const ChannelTaps &h21_true, const CMatrix &E_hat, double P2)
    {
        const std::vector<double> p(static_cast<std::size_t>(E_hat.cols()), P2);
        return residual_leakage(h21_true, E_hat, p);
    }

    double ls_error_variance(int N, int tau, double noise_var)
    {
        return std::sqrt(static_cast<double>(N)) * noise_var / static_cast<double>(tau);
    }

    namespace
    {
        double log2_det_hpd(const CMatrix &M)
        {
            Eigen::LLT<CMatrix> llt(M);
            if (llt.info() != Eigen::Success)
                throw std::runtime_error("log-det of a non positive-definite matrix");
            double s = 0.0;
            const auto &Lf = llt.matrixLLT();
            for (Eigen::Index i = 0; i < M.rows(); ++i)
                s += 2.0 * std::log2(Lf(i, i).real());
            return s;
        }
    }

    EffectiveRates effective_rates(const TrainingSchedule &schedule, const ChannelSet &channels,
                                   const ScenarioParams &params, Rng &noise_rng, const ProtocolOptions &options)
    {
        params.validate();
        schedule.validate(params.N, params.L);
        if (!(options.training_noise_scale >= 0.0))
            throw std::invalid_argument("training_noise_scale must be >= 0");

        const int N = params.N;
        const int L = params.L;
        const int M = params.block_length();
        const double train_var = params.sigma2 * options.training_noise_scale;

        const PilotBlock psi1_u = make_pilots(N, L, schedule.tau_u, PilotFamily::primary);
        const PilotBlock psi1_d = make_pilots(N, L, schedule.tau_d, PilotFamily::primary);
        const PilotBlock psi2_d = make_pilots(N, L, schedule.tau_d, PilotFamily::secondary);

        EffectiveRates out;

        // ---- uplink: RX1 -> TX2 (overheard) and RX1 -> TX1 ----------------
        const CRowMatrix Y2u = uplink_observation(channels.h21, psi1_u, N, train_var, noise_rng);
        out.h21.estimated_taps = estimate_uplink_h21(Y2u, psi1_u, params);
        out.h21.error_energy = (out.h21.estimated_taps.values() - channels.h21.values()).squaredNorm();
        const Precoder E_hat = build_precoder(out.h21.estimated_taps, N, options.precoder);

        const CRowMatrix Y1u = uplink_observation(channels.h11, psi1_u, N, train_var, noise_rng);
        const CVector H11_tx = ls_estimate_diagonal(Y1u, psi1_u, N);

        // ---- downlink: TX1 sends Psi1, TX2 sends E^ Psi2 at the same time ---
        const OverallSecondaryChannel H22 = secondary_channel(channels.h22, E_hat.E);
        const CVector H12 = params.alpha * overall_diagonal(channels.h12, N, ChannelRole::H12).diag;
        const CRowMatrix Y2d = downlink_observation(H22.matrix, psi2_d, &H12, &psi1_d, train_var, noise_rng);
        const CMatrix H22_hat = estimate_downlink_h22(Y2d, psi2_d, params);
        out.h22_error_energy = (H22_hat - H22.matrix).squaredNorm();

        const CVector H11 = overall_diagonal(channels.h11, N, ChannelRole::H11).diag;
        const CMatrix H21 = secondary_channel(channels.h21, E_hat.E).matrix; // leaks onto RX1 while it trains
        const CRowMatrix Y1d = downlink_observation(H21, psi2_d, &H11, &psi1_d, train_var, noise_rng);
        const CVector H11_rx = ls_estimate_diagonal(Y1d, psi1_d, N);

        // ---- secondary: water-fill on the estimate, evaluate with error as noise
        const InterferenceCovariance s_eta = interference_covariance(channels.h12, params);
        const EquivalentChannel eq = equivalent_channel(OverallSecondaryChannel{H22_hat}, s_eta);
        const RVector q = stream_weights(E_hat.E, eq.V);
        const PowerAllocation alloc =
            waterfill({eq.eigenvalues.data(), static_cast<std::size_t>(eq.eigenvalues.size())},
                      {q.data(), static_cast<std::size_t>(q.size())}, M * params.P2);

        const double var_e2 = ls_error_variance(N, schedule.tau_d, train_var);
        const double tr_s2 = alloc.d.sum();
        const RVector s_eff = s_eta.diag.array() + var_e2 * tr_s2;
        const CMatrix B = s_eff.cwiseSqrt().cwiseInverse().asDiagonal() * H22_hat * eq.V *
                          alloc.d.cwiseSqrt().asDiagonal();
        const CMatrix gram = CMatrix::Identity(L, L) + B.adjoint() * B;
        out.secondary_inlog = log2_det_hpd(gram) / M;

        // ---- leakage at RX1 from the secondary data phase ----------------------
        const CMatrix E_streams = E_hat.E * eq.V;
        out.h21.residual_leakage =
            residual_leakage(channels.h21, E_streams, {alloc.d.data(), static_cast<std::size_t>(alloc.d.size())});
        out.leakage_total = out.h21.residual_leakage.sum();

        // ---- primary: TX allocates on its uplink estimate, RX decodes with its own
        std::vector<double> gains(static_cast<std::size_t>(N));
        for (int k = 0; k < N; ++k)
            gains[static_cast<std::size_t>(k)] = std::norm(H11_tx[k]) / params.sigma2;
        const std::vector<double> ones(gains.size(), 1.0);
        const PowerAllocation p1 = waterfill(gains, ones, M * params.P1);

        const double var_e1 = ls_error_variance(N, schedule.tau_d, train_var);
        double r1 = 0.0;
        for (int k = 0; k < N; ++k)
        {
            const double pk = p1.d[k];
            const double denom = params.sigma2 + pk * var_e1 + out.h21.residual_leakage[k];
            r1 += std::log2(1.0 + std::norm(H11_rx[k]) * pk / denom);
        }
        out.primary_inlog = r1 / M;

        out.prelog = schedule.prelog();
        out.primary = out.prelog * out.primary_inlog;
        out.secondary = out.prelog * out.secondary_inlog;
        return out;
    }
}
