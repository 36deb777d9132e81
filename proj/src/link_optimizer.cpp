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

#include "vfdm/link_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "vfdm/errors.hpp"
#include "vfdm/kernels.hpp"
#include "vfdm/signal_model.hpp"

namespace vfdm
{
    InterferenceCovariance interference_covariance(const ChannelTaps &h12, const ScenarioParams &params)
    {
        params.validate();
        const OverallDiagonalChannel H12 = overall_diagonal(h12, params.N, ChannelRole::H12);
        InterferenceCovariance s{RVector(params.N)};
        kernels::scaled_power({H12.diag.data(), static_cast<std::size_t>(params.N)},
                              params.alpha * params.alpha * params.P1, params.sigma2,
                              {s.diag.data(), static_cast<std::size_t>(params.N)});
        return s;
    }

    OverallSecondaryChannel secondary_channel(const ChannelTaps &h22, const CMatrix &E)
    {
        const int N = static_cast<int>(E.rows()) - h22.memory();
        if (N < 1)
            throw std::invalid_argument("secondary_channel: precoder row count must be N + L");
        return {dft_matrix(N) * toeplitz_apply(h22, N, E)};
    }

    EquivalentChannel equivalent_channel(const OverallSecondaryChannel &H22, const InterferenceCovariance &s_eta)
    {
        if (H22.matrix.rows() != s_eta.diag.size())
            throw std::invalid_argument("equivalent_channel: H22 rows and S_eta size differ");
        if ((s_eta.diag.array() <= 0.0).any())
            throw std::invalid_argument("equivalent_channel: S_eta must be positive definite");

        EquivalentChannel eq;
        eq.G = s_eta.diag.cwiseSqrt().cwiseInverse().asDiagonal() * H22.matrix;
        // tall G: SVD of the L x L R factor, U mapped back through Q
        if (eq.G.rows() > eq.G.cols())
        {
            const Eigen::HouseholderQR<CMatrix> qr(eq.G);
            const Eigen::Index n = eq.G.cols();
            const CMatrix R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
            Eigen::JacobiSVD<CMatrix> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
            eq.U = qr.householderQ() * (CMatrix(eq.G.rows(), n) << svd.matrixU(), CMatrix::Zero(eq.G.rows() - n, n)).finished();
            eq.V = svd.matrixV();
            eq.singular_values = svd.singularValues();
            eq.eigenvalues = eq.singular_values.cwiseAbs2();
            return eq;
        }
        Eigen::JacobiSVD<CMatrix> svd(eq.G, Eigen::ComputeThinU | Eigen::ComputeFullV);
        eq.U = svd.matrixU();
        eq.V = svd.matrixV();
        eq.singular_values = svd.singularValues();
        eq.eigenvalues = eq.singular_values.cwiseAbs2();
        return eq;
    }

    RVector stream_weights(const CMatrix &E, const CMatrix &V_G)
    {
        const CMatrix Q = V_G.adjoint() * (E.adjoint() * E) * V_G;
        const RVector q = Q.diagonal().real();
        const CMatrix off = Q - CMatrix(Q.diagonal().asDiagonal());
        if (off.norm() > 1e-8 * std::max(1.0, q.cwiseAbs().maxCoeff()))
            throw UnsupportedPrecoder("precoder is not orthogonal: V_G^H E^H E V_G has off-diagonal terms");
        if ((q.array() <= 0.0).any())
            throw UnsupportedPrecoder("precoder has a zero-norm stream");
        return q;
    }

    PowerAllocation waterfill(std::span<const double> eigenvalues, std::span<const double> q_diag, double budget)
    {
        const std::size_t n = eigenvalues.size();
        if (q_diag.size() != n)
            throw std::invalid_argument("waterfill: eigenvalue and weight counts differ");
        if (!(budget >= 0.0) || !std::isfinite(budget))
            throw std::invalid_argument("waterfill: budget must be finite and >= 0");
        for (std::size_t i = 0; i < n; ++i)
        {
            if (!(eigenvalues[i] >= 0.0) || !std::isfinite(eigenvalues[i]))
                throw std::invalid_argument("waterfill: eigenvalues must be finite and >= 0");
            if (!(q_diag[i] > 0.0))
                throw std::invalid_argument("waterfill: stream weights must be > 0");
        }

        PowerAllocation out;
        out.d = RVector::Zero(static_cast<Eigen::Index>(n));
        out.q_diag = Eigen::Map<const RVector>(q_diag.data(), static_cast<Eigen::Index>(n));

        // stream i turns on once mu exceeds q_i / lambda_i
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < n; ++i)
            if (eigenvalues[i] > 0.0)
                order.push_back(i);
        if (budget == 0.0 || order.empty())
            return out;

        auto threshold = [&](std::size_t i) { return q_diag[i] / eigenvalues[i]; };
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return threshold(a) < threshold(b); });

        // largest k whose level clears the k-th threshold
        double sum_thr = 0.0;
        double mu = 0.0;
        std::size_t active = 0;
        for (std::size_t k = 0; k < order.size(); ++k)
        {
            const double s = sum_thr + threshold(order[k]);
            const double level = (budget + s) / static_cast<double>(k + 1);
            if (level <= threshold(order[k]))
                break;
            sum_thr = s;
            mu = level;
            active = k + 1;
        }

        for (std::size_t k = 0; k < active; ++k)
        {
            const std::size_t i = order[k];
            out.d[static_cast<Eigen::Index>(i)] = std::max(0.0, mu / q_diag[i] - 1.0 / eigenvalues[i]);
        }
        out.mu = mu;
        out.objective = allocation_objective({out.d.data(), n}, eigenvalues);
        return out;
    }

    double allocation_objective(std::span<const double> d, std::span<const double> eigenvalues)
    {
        if (d.size() != eigenvalues.size())
            throw std::invalid_argument("allocation_objective: size mismatch");
        double s = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i)
            s += std::log2(1.0 + d[i] * eigenvalues[i]);
        return s;
    }

    double secondary_rate(const PowerAllocation &alloc, std::span<const double> eigenvalues, int N, int L)
    {
        if (N < 1 || L < 1)
            throw std::invalid_argument("secondary_rate: need N, L >= 1");
        return allocation_objective({alloc.d.data(), static_cast<std::size_t>(alloc.d.size())}, eigenvalues) /
               static_cast<double>(N + L);
    }

    double primary_rate(const ChannelTaps &h11, const ScenarioParams &params, std::span<const double> leakage)
    {
        params.validate();
        if (!leakage.empty() && leakage.size() != static_cast<std::size_t>(params.N))
            throw std::invalid_argument("primary_rate: leakage must have N entries");
        const OverallDiagonalChannel H11 = overall_diagonal(h11, params.N, ChannelRole::H11);
        std::vector<double> gains(static_cast<std::size_t>(params.N));
        for (int k = 0; k < params.N; ++k)
        {
            const double interference = leakage.empty() ? 0.0 : leakage[static_cast<std::size_t>(k)];
            gains[static_cast<std::size_t>(k)] = std::norm(H11.diag[k]) / (params.sigma2 + interference);
        }
        const std::vector<double> ones(gains.size(), 1.0);
        const PowerAllocation a = waterfill(gains, ones, params.block_length() * params.P1);
        return a.objective / static_cast<double>(params.block_length());
    }

    double carrier_waterfill_objective(const CVector &diag, std::span<const int> carriers, double sigma2, double budget)
    {
        std::vector<double> gains;
        gains.reserve(carriers.size());
        for (int k : carriers)
        {
            if (k < 0 || k >= diag.size())
                throw std::invalid_argument("carrier_waterfill_objective: carrier index out of range");
            gains.push_back(std::norm(diag[k]) / sigma2);
        }
        const std::vector<double> ones(gains.size(), 1.0);
        return waterfill(gains, ones, budget).objective;
    }

    SecondaryLink optimize_secondary(const ChannelTaps &h22, const CMatrix &E, const InterferenceCovariance &s_eta,
                                     const ScenarioParams &params)
    {
        SecondaryLink link;
        link.H22 = secondary_channel(h22, E);
        link.equivalent = equivalent_channel(link.H22, s_eta);
        const RVector q = stream_weights(E, link.equivalent.V);
        const auto &lam = link.equivalent.eigenvalues;
        link.allocation = waterfill({lam.data(), static_cast<std::size_t>(lam.size())},
                                    {q.data(), static_cast<std::size_t>(q.size())},
                                    params.block_length() * params.P2);
        link.rate = secondary_rate(link.allocation, {lam.data(), static_cast<std::size_t>(lam.size())}, params.N,
                                   params.L);
        return link;
    }
}
