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

#include "vfdm/signal_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "vfdm/kernels.hpp"

namespace vfdm
{
    // ---- ScenarioParams / ChannelTaps ------------------------------------

    void ScenarioParams::validate() const
    {
        if (N < 1)
            throw std::invalid_argument("N must be >= 1 (got " + std::to_string(N) + ")");
        if (L < 1 || L > N)
            throw std::invalid_argument("L must satisfy 1 <= L <= N (got L=" + std::to_string(L) +
                                        ", N=" + std::to_string(N) + ")");
        if (!(P1 >= 0.0) || !(P2 >= 0.0))
            throw std::invalid_argument("P1 and P2 must be >= 0");
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
            throw std::invalid_argument("sigma2 must be positive and finite");
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw std::invalid_argument("alpha must lie in [0, 1]");
    }

    ScenarioParams ScenarioParams::at_snr_db(int N, int L, double snr_db, double alpha)
    {
        ScenarioParams p;
        p.N = N;
        p.L = L;
        p.alpha = alpha;
        p.sigma2 = std::pow(10.0, -snr_db / 10.0);
        return p;
    }

    double ScenarioParams::snr_db() const
    {
        return 10.0 * std::log10(P1 / sigma2);
    }

    ChannelTaps::ChannelTaps(CVector taps) : taps_(std::move(taps))
    {
        if (taps_.size() < 2)
            throw std::invalid_argument("channel needs at least two taps (L >= 1)");
    }

    std::string to_string(ChannelRole role)
    {
        switch (role)
        {
        case ChannelRole::H11:
            return "H11";
        case ChannelRole::H12:
            return "H12";
        case ChannelRole::H21_prime:
            return "H21'";
        }
        return "?";
    }

    // ---- operators ---------------------------------------------------------

    namespace
    {
        void check_dims(const ChannelTaps &h, int N)
        {
            if (N < 1)
                throw std::invalid_argument("N must be >= 1");
            if (h.memory() < 1)
                throw std::invalid_argument("channel memory L must be >= 1");
        }

        CVector reversed(const ChannelTaps &h)
        {
            return h.values().reverse();
        }
    }

    ToeplitzOperator make_toeplitz(const ChannelTaps &h, int N)
    {
        check_dims(h, N);
        const int L = h.memory();
        ToeplitzOperator op{CMatrix::Zero(N, N + L)};
        for (int r = 0; r < N; ++r)
            for (int j = 0; j <= L; ++j)
                op.matrix(r, r + j) = h[L - j];
        return op;
    }

    CVector toeplitz_apply(const ChannelTaps &h, int N, const CVector &x)
    {
        check_dims(h, N);
        const int L = h.memory();
        if (x.size() != N + L)
            throw std::invalid_argument("toeplitz_apply: input must have N + L entries");

        const CVector rev = reversed(h);
        const std::span<const cplx> taps(rev.data(), static_cast<std::size_t>(L + 1));
        CVector y(N);
        for (int r = 0; r < N; ++r)
            y[r] = kernels::dotu(taps, std::span<const cplx>(x.data() + r, static_cast<std::size_t>(L + 1)));
        return y;
    }

    CMatrix toeplitz_apply(const ChannelTaps &h, int N, const CMatrix &M)
    {
        check_dims(h, N);
        if (M.rows() != N + h.memory())
            throw std::invalid_argument("toeplitz_apply: operand must have N + L rows");
        CMatrix out(N, M.cols());
        for (Eigen::Index c = 0; c < M.cols(); ++c)
            out.col(c) = toeplitz_apply(h, N, CVector(M.col(c)));
        return out;
    }

    CMatrix dft_matrix(int N)
    {
        if (N < 1)
            throw std::invalid_argument("dft_matrix: N must be >= 1");
        CMatrix F(N, N);
        const double scale = 1.0 / std::sqrt(static_cast<double>(N));
        for (int k = 0; k < N; ++k)
            for (int l = 0; l < N; ++l)
            {
                // reduce k*l mod N first so the angle stays small
                const long kl = (static_cast<long>(k) * l) % N;
                F(k, l) = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>(kl) / N);
            }
        return F;
    }

    RMatrix cyclic_prefix_matrix(int N, int L)
    {
        if (N < 1 || L < 1 || L > N)
            throw std::invalid_argument("cyclic_prefix_matrix: need 1 <= L <= N");
        RMatrix A = RMatrix::Zero(N + L, N);
        for (int r = 0; r < L; ++r)
            A(r, N - L + r) = 1.0;
        for (int r = 0; r < N; ++r)
            A(L + r, r) = 1.0;
        return A;
    }

    CVector add_cyclic_prefix(const CVector &v, int L)
    {
        const auto N = static_cast<int>(v.size());
        if (L < 1 || L > N)
            throw std::invalid_argument("add_cyclic_prefix: need 1 <= L <= N");
        CVector x(N + L);
        x.head(L) = v.tail(L);
        x.tail(N) = v;
        return x;
    }

    OverallDiagonalChannel overall_diagonal(const ChannelTaps &h, int N, ChannelRole role)
    {
        check_dims(h, N);
        if (h.memory() > N)
            throw std::invalid_argument("overall_diagonal: L must not exceed N");
        OverallDiagonalChannel out{CVector::Zero(N), role};
        for (int k = 0; k < N; ++k)
        {
            cplx acc = 0.0;
            for (int l = 0; l < h.size(); ++l)
            {
                const long kl = (static_cast<long>(k) * l) % N;
                acc += h[l] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(kl) / N);
            }
            out.diag[k] = acc;
        }
        return out;
    }

    // ---- random generation -------------------------------------------------

    ChannelTaps draw_channel(Rng &rng, int L)
    {
        if (L < 1)
            throw std::invalid_argument("draw_channel: L must be >= 1");
        return ChannelTaps(draw_noise(rng, L + 1, 1.0 / (L + 1)));
    }

    ChannelSet draw_channels(Rng &rng, int L)
    {
        ChannelSet set;
        set.h11 = draw_channel(rng, L);
        set.h12 = draw_channel(rng, L);
        set.h21 = draw_channel(rng, L);
        set.h22 = draw_channel(rng, L);
        return set;
    }

    CVector draw_noise(Rng &rng, int n, double variance)
    {
        std::normal_distribution<double> g(0.0, 1.0);
        const double s = std::sqrt(0.5 * variance);
        CVector v(n);
        for (int i = 0; i < n; ++i)
        {
            const double re = g(rng);
            const double im = g(rng);
            v[i] = {s * re, s * im};
        }
        return v;
    }

    // ---- received signals --------------------------------------------------

    CVector ofdm_transmit(const CVector &s1, int L)
    {
        const auto N = static_cast<int>(s1.size());
        const CMatrix F = dft_matrix(N);
        return add_cyclic_prefix(F.adjoint() * s1, L);
    }

    namespace
    {
        void check_receive(const SymbolBlock &s1, const SymbolBlock &x2, const ChannelSet &ch,
                           const ScenarioParams &p, const SymbolBlock &noise)
        {
            p.validate();
            if (s1.size() != p.N || noise.size() != p.N)
                throw std::invalid_argument("receive: s1 and noise must have N entries");
            if (x2.size() != p.block_length())
                throw std::invalid_argument("receive: x2 must have N + L entries");
            for (const ChannelTaps *h : {&ch.h11, &ch.h12, &ch.h21, &ch.h22})
                if (h->memory() != p.L)
                    throw std::invalid_argument("receive: channel memory does not match L");
        }
    }

    SymbolBlock receive_primary(const SymbolBlock &s1, const SymbolBlock &x2, const ChannelSet &channels,
                                const ScenarioParams &params, const SymbolBlock &n1)
    {
        check_receive(s1, x2, channels, params, n1);
        const CVector x1 = ofdm_transmit(s1, params.L);
        const CVector t = toeplitz_apply(channels.h11, params.N, x1) + toeplitz_apply(channels.h21, params.N, x2) + n1;
        return dft_matrix(params.N) * t;
    }

    SymbolBlock receive_secondary(const SymbolBlock &s1, const SymbolBlock &x2, const ChannelSet &channels,
                                  const ScenarioParams &params, const SymbolBlock &n2)
    {
        check_receive(s1, x2, channels, params, n2);
        const CVector x1 = ofdm_transmit(s1, params.L);
        const CVector t = toeplitz_apply(channels.h22, params.N, x2) +
                          params.alpha * toeplitz_apply(channels.h12, params.N, x1) + n2;
        return dft_matrix(params.N) * t;
    }
}
