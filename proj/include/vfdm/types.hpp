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

#include <complex>
#include <cstdint>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace vfdm
{
    using cplx = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using RVector = Eigen::VectorXd;
    using CMatrix = Eigen::MatrixXcd;
    using RMatrix = Eigen::MatrixXd;

    // Row-major storage keeps pilot/observation rows contiguous for the kernels.
    using CRowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    // Time- or frequency-domain complex block (s1, s2, x1, x2, y1, y2, noise).
    using SymbolBlock = CVector;

    // Link parameters shared by every operation. Powers are linear and per symbol.
    struct ScenarioParams
    {
        int N = 64;           // carriers (block length without prefix)
        int L = 16;           // channel memory, taps = L + 1
        double P1 = 1.0;      // primary transmit power per symbol
        double P2 = 1.0;      // secondary transmit power per symbol
        double sigma2 = 1.0;  // noise variance
        double alpha = 0.0;   // primary-to-secondary interference weight
        std::uint64_t seed = 0;

        int block_length() const { return N + L; }

        // Throws std::invalid_argument naming the violated field.
        void validate() const;

        // Unit powers, sigma2 = 10^(-snr_db/10).
        static ScenarioParams at_snr_db(int N, int L, double snr_db, double alpha = 0.0);
        double snr_db() const;
    };

    // The L + 1 taps h_0 ... h_L of one frequency-selective link.
    class ChannelTaps
    {
      public:
        ChannelTaps() = default;
        explicit ChannelTaps(CVector taps);

        int memory() const { return static_cast<int>(taps_.size()) - 1; }
        int size() const { return static_cast<int>(taps_.size()); }
        const CVector &values() const { return taps_; }
        cplx operator[](int i) const { return taps_[i]; }
        std::span<const cplx> span() const { return {taps_.data(), static_cast<std::size_t>(taps_.size())}; }

        double energy() const { return taps_.squaredNorm(); }
        ChannelTaps scaled(cplx a) const { return ChannelTaps(CVector(taps_ * a)); }

      private:
        CVector taps_;
    };

    // N x (N + L) banded operator: row r holds h_L ... h_0 starting at column r.
    struct ToeplitzOperator
    {
        CMatrix matrix;
    };

    enum class ChannelRole
    {
        H11,
        H12,
        H21_prime
    };

    // Diagonal of F T(h) A F^-1 for a link whose transmitter uses a cyclic prefix.
    struct OverallDiagonalChannel
    {
        CVector diag;
        ChannelRole role = ChannelRole::H11;
    };

    // H22 = F T(h22) E, N x L.
    struct OverallSecondaryChannel
    {
        CMatrix matrix;
    };

    // The four links of the cognitive interference channel, (ij) = transmitter i to receiver j.
    struct ChannelSet
    {
        ChannelTaps h11, h12, h21, h22;
    };

    std::string to_string(ChannelRole role);
}
