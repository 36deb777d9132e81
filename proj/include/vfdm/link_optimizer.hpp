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

// Interference covariance, equivalent channel and weighted water-filling for
// the secondary link, plus the primary's classical water-filling rate.
//
// Rates are spectral efficiencies in bps/Hz normalized by the block length
// N + L, for both links.

#include <span>

#include "vfdm/precoder.hpp"
#include "vfdm/types.hpp"

namespace vfdm
{
    // Diagonal of S_eta = alpha^2 H12 S1 H12^H + sigma2 I with S1 = P1 I.
    struct InterferenceCovariance
    {
        RVector diag;
    };

    struct EquivalentChannel
    {
        CMatrix G;                // S_eta^-1/2 H22, N x L
        CMatrix U;                // N x r left singular vectors
        RVector singular_values;  // descending
        CMatrix V;                // L x L right singular vectors
        RVector eigenvalues;      // of G^H G, descending (singular values squared)
    };

    struct PowerAllocation
    {
        RVector d;       // per-stream powers
        double mu = 0.0; // water level
        RVector q_diag;  // diag of V_G^H E^H E V_G
        double objective = 0.0; // sum_i log2(1 + d_i lambda_i)
    };

    InterferenceCovariance interference_covariance(const ChannelTaps &h12, const ScenarioParams &params);

    // H22 = F T(h22) E.
    OverallSecondaryChannel secondary_channel(const ChannelTaps &h22, const CMatrix &E);

    // G = S_eta^-1/2 H22 (per-carrier whitening) and its SVD.
    EquivalentChannel equivalent_channel(const OverallSecondaryChannel &H22, const InterferenceCovariance &s_eta);

    // diag(V_G^H E^H E V_G). Throws UnsupportedPrecoder when the off-diagonal
    // part is not negligible, since the scalar water-filling problem then no
    // longer matches the matrix one.
    RVector stream_weights(const CMatrix &E, const CMatrix &V_G);

    // d_i = [mu / q_i - 1 / lambda_i]_+ with sum_i d_i q_i = budget.
    // Exact: active sets are scanned in decreasing lambda_i / q_i order.
    PowerAllocation waterfill(std::span<const double> eigenvalues, std::span<const double> q_diag, double budget);

    // Sum of log2(1 + d_i lambda_i) over the streams.
    double allocation_objective(std::span<const double> d, std::span<const double> eigenvalues);

    // R = (1 / (N + L)) sum_i log2(1 + d_i lambda_i).
    double secondary_rate(const PowerAllocation &alloc, std::span<const double> eigenvalues, int N, int L);

    // Primary water-filling over N carriers with gains |H11_k|^2 / (sigma2 + leakage_k),
    // budget (N + L) P1, normalized by N + L. Empty leakage means none.
    double primary_rate(const ChannelTaps &h11, const ScenarioParams &params, std::span<const double> leakage = {});

    // Water-filling over a subset of carriers with a given budget; used by the
    // partitioned baseline. Returns the sum of log2 terms (not normalized).
    double carrier_waterfill_objective(const CVector &diag, std::span<const int> carriers, double sigma2, double budget);

    struct SecondaryLink
    {
        OverallSecondaryChannel H22;
        EquivalentChannel equivalent;
        PowerAllocation allocation;
        double rate = 0.0;
    };

    // Full secondary chain for a given precoder: H22, G, water-filling, rate.
    SecondaryLink optimize_secondary(const ChannelTaps &h22, const CMatrix &E, const InterferenceCovariance &s_eta,
                                     const ScenarioParams &params);
}
