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

// Least-squares channel estimation protocol for the secondary system.
//
// Uplink (tau_u symbols): the primary receiver sends pilots Psi1; the
// secondary transmitter overhears them through h21 and forms
//   H21'^ = (sqrt(N) / tau_u) Y2u Psi1^H,
// converts the diagonal to taps and builds E from them.
// Downlink (tau_d symbols): the secondary transmitter sends precoded pilots
// E Psi2 while the primary transmitter sends Psi1 again; since
// Psi1 Psi2^H = 0 the two estimates do not disturb each other and the
// secondary receiver forms H22^ = (sqrt(N) / tau_d) Y2d Psi2^H.
// Data then flows for T - tau symbols.

#include <optional>

#include "vfdm/link_optimizer.hpp"
#include "vfdm/precoder.hpp"
#include "vfdm/rng.hpp"
#include "vfdm/types.hpp"

namespace vfdm
{
    struct TrainingSchedule
    {
        int T = 6400;   // coherence time, symbols
        int tau_u = 80; // uplink pilots
        int tau_d = 80; // downlink pilots

        int tau() const { return tau_u + tau_d; }
        double prelog() const { return static_cast<double>(T - tau()) / static_cast<double>(T); }

        // tau_u, tau_d >= N + L and tau < T; throws InsufficientTraining.
        void validate(int N, int L) const;

        // Splits round(fraction * T) evenly between uplink and downlink.
        static TrainingSchedule from_fraction(int T, double tau_over_T);
    };

    enum class PilotFamily
    {
        primary,  // Psi1: N rows
        secondary // Psi2: L rows
    };

    // Rows of a tau-point Fourier basis scaled so that Psi Psi^H = (tau / sqrt(N)) I,
    // which makes (sqrt(N) / tau) Y Psi^H an exact identity at zero noise.
    // Psi1 takes basis rows 0 .. N-1 and Psi2 rows N .. N+L-1, so Psi1 Psi2^H = 0.
    struct PilotBlock
    {
        CRowMatrix psi;
        PilotFamily family = PilotFamily::primary;
    };

    PilotBlock make_pilots(int N, int L, int tau, PilotFamily family);

    struct EstimationResult
    {
        ChannelTaps estimated_taps;
        double error_energy = 0.0;  // ||h^ - h||^2
        RVector residual_leakage;   // per-carrier power at the primary receiver
    };

    // (sqrt(N) / tau) Y Psi^H, full matrix: rows of Y against rows of Psi.
    CMatrix ls_estimate(const CRowMatrix &Y, const PilotBlock &pilots, int N);

    // Diagonal of the LS estimate only (the overheard link is diagonal).
    CVector ls_estimate_diagonal(const CRowMatrix &Y, const PilotBlock &pilots, int N);

    // Taps from the N diagonal values of F T(h) A F^-1: inverse DFT, first L + 1 outputs.
    ChannelTaps taps_from_diagonal(const CVector &diag, int L);

    // Literal [F^-1 diag(H')]_{k,k}; does not recover taps, kept for comparison.
    ChannelTaps taps_from_diagonal_literal(const CVector &diag, int L);

    // Y2u = H21' Psi1 + noise (frequency domain, N x tau_u).
    CRowMatrix uplink_observation(const ChannelTaps &h21, const PilotBlock &psi1, int N, double noise_var, Rng &rng);

    // Y2d = H22 Psi2 + alpha H12' Psi1 + noise. H22 is N x L, Psi1 may be absent.
    CRowMatrix downlink_observation(const CMatrix &H22, const PilotBlock &psi2, const CVector *interference_diag,
                                    const PilotBlock *psi1, double noise_var, Rng &rng);

    // Uplink estimate of h21 from Y2u.
    ChannelTaps estimate_uplink_h21(const CRowMatrix &Y2u, const PilotBlock &psi1, const ScenarioParams &params);

    // Downlink estimate of the precoded secondary channel H22 (N x L).
    CMatrix estimate_downlink_h22(const CRowMatrix &Y2d, const PilotBlock &psi2, const ScenarioParams &params);

    // leakage_k = [H21 S2 H21^H]_{kk} with H21 = F T(h21_true) E_hat and S2 = diag(stream_powers).
    RVector residual_leakage(const ChannelTaps &h21_true, const CMatrix &E_hat, std::span<const double> stream_powers);

    // Same with every stream at power P2.
    RVector residual_leakage(const ChannelTaps &h21_true, const CMatrix &E_hat, double P2);

    struct ProtocolOptions
    {
        // Training noise variance is sigma2 * training_noise_scale; 0 gives noiseless training.
        double training_noise_scale = 1.0;
        PrecoderMethod precoder = PrecoderMethod::svd;
    };

    struct EffectiveRates
    {
        double primary = 0.0;          // prelog * primary_inlog
        double secondary = 0.0;        // prelog * secondary_inlog
        double primary_inlog = 0.0;
        double secondary_inlog = 0.0;
        double prelog = 0.0;
        double leakage_total = 0.0;    // sum over carriers
        EstimationResult h21;          // uplink estimate with leakage
        double h22_error_energy = 0.0; // ||H22^ - H22||_F^2
    };

    // One full protocol run on a fixed channel draw. Training noise is drawn
    // from noise_rng.
    //
    // Rates use the estimated quantities and count the estimation error as
    // Gaussian noise: the primary sees sigma2 + p_k var_e + leakage_k on
    // carrier k, the secondary sees S_eta + var_e tr(S2) I, where var_e is
    // the per-entry LS error variance of the respective estimate.
    EffectiveRates effective_rates(const TrainingSchedule &schedule, const ChannelSet &channels,
                                   const ScenarioParams &params, Rng &noise_rng, const ProtocolOptions &options = {});

    // Per-entry LS error variance (sqrt(N) / tau) noise_var.
    double ls_error_variance(int N, int tau, double noise_var);
}
