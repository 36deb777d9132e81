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

// Channel types and the deterministic linear operators of the two-link
// block transmission model:
//
//   y1 = F (T(h11) x1 + T(h21) x2 + n1)
//   y2 = F (T(h22) x2 + alpha T(h12) x1 + n2)
//
// with x1 = A F^-1 s1 (OFDM with cyclic prefix) and x2 = E s2.

#include "vfdm/rng.hpp"
#include "vfdm/types.hpp"

namespace vfdm
{
    // N x (N + L) banded Toeplitz matrix built from h. Rejects L < 1 and N < 1.
    ToeplitzOperator make_toeplitz(const ChannelTaps &h, int N);

    // T(h) x without forming the matrix. x has N + L entries, the result N.
    CVector toeplitz_apply(const ChannelTaps &h, int N, const CVector &x);

    // T(h) M column by column; M has N + L rows.
    CMatrix toeplitz_apply(const ChannelTaps &h, int N, const CMatrix &M);

    // Unitary DFT, [F]_{k,l} = exp(-i 2 pi k l / N) / sqrt(N).
    CMatrix dft_matrix(int N);

    // (N + L) x N 0/1 matrix that places the last L entries of its input in front.
    RMatrix cyclic_prefix_matrix(int N, int L);

    // A v without forming A.
    CVector add_cyclic_prefix(const CVector &v, int L);

    // Diagonal of F T(h) A F^-1: the unnormalized DFT of the zero-padded taps.
    OverallDiagonalChannel overall_diagonal(const ChannelTaps &h, int N, ChannelRole role = ChannelRole::H11);

    // Taps i.i.d. CN(0, 1 / (L + 1)).
    ChannelTaps draw_channel(Rng &rng, int L);

    // h11, h12, h21, h22 drawn in that order.
    ChannelSet draw_channels(Rng &rng, int L);

    // n i.i.d. CN(0, variance) samples.
    CVector draw_noise(Rng &rng, int n, double variance);

    // x1 = A F^-1 s1.
    CVector ofdm_transmit(const CVector &s1, int L);

    // Primary receiver: y1 = F (T(h11) x1 + T(h21) x2 + n1), where x1 = A F^-1 s1
    // and x2 is the already precoded secondary block (E s2). n1 is time domain.
    SymbolBlock receive_primary(const SymbolBlock &s1, const SymbolBlock &x2, const ChannelSet &channels,
                                const ScenarioParams &params, const SymbolBlock &n1);

    // Secondary receiver: y2 = F (T(h22) x2 + alpha T(h12) x1 + n2).
    SymbolBlock receive_secondary(const SymbolBlock &s1, const SymbolBlock &x2, const ChannelSet &channels,
                                  const ScenarioParams &params, const SymbolBlock &n2);
}
