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

// Null-space precoders for the secondary transmitter.
//
// E spans the null-space of T(h21), so the secondary block x2 = E s2 never
// reaches the primary receiver. Two constructions are provided:
//
//  * roots + Gram-Schmidt: the L roots a_l of S(z) = sum_i h_i z^(L-i) give
//    Vandermonde columns [1, a_l, ..., a_l^(N+L-1)] with T(h21) V = 0, and a
//    QR factorization V = E Gamma^-1 orthonormalizes them. Only numerically
//    meaningful for small N + L or roots close to the unit circle.
//  * SVD: the last L right singular vectors of T(h21). Default.

#include <optional>
#include <string>

#include "vfdm/types.hpp"

namespace vfdm
{
    struct NullSpaceRoots
    {
        CVector roots;
    };

    struct VandermondeBasis
    {
        CMatrix matrix; // (N + L) x L
    };

    enum class PrecoderMethod
    {
        roots_gram_schmidt,
        svd
    };

    std::string to_string(PrecoderMethod m);
    PrecoderMethod precoder_method_from_string(const std::string &s);

    struct Precoder
    {
        CMatrix E;                     // (N + L) x L, orthonormal columns
        std::optional<CMatrix> gamma;  // E = V Gamma (roots route only)
        PrecoderMethod method = PrecoderMethod::svd;
        std::optional<double> residual; // ||T(h21) E||_F once known
    };

    // Roots of S(z) from companion-matrix eigenvalues, Newton-polished and
    // verified against |S(a)| <= 1e-8 max|h| max(1,|a|)^L.
    // Throws DegenerateChannel when |h_0| < 1e-12 (degree-deficient polynomial)
    // or when a root fails verification.
    NullSpaceRoots polynomial_roots(const ChannelTaps &h21);

    // Column l is the geometric progression of a_l up to power N + L - 1.
    VandermondeBasis vandermonde_basis(const NullSpaceRoots &roots, int N);

    // E = V Gamma for an arbitrary coefficient matrix (the general precoder family).
    CMatrix combine_basis(const VandermondeBasis &V, const CMatrix &gamma);

    // Gram-Schmidt (two-pass modified) QR of V: V = E R, Gamma = R^-1.
    // Throws NumericalRankLoss when a column falls below the numerical-rank
    // threshold (N + L) eps times the norm of the original column.
    Precoder orthonormalize(const VandermondeBasis &V);

    // Last L right singular vectors of T(h21).
    Precoder svd_nullspace(const ChannelTaps &h21, int N);

    // Builds E with the requested route and records its residual.
    Precoder build_precoder(const ChannelTaps &h21, int N, PrecoderMethod method);

    // ||F T(h21) E||_F; F is unitary so this equals ||T(h21) E||_F.
    double verify_orthogonality(const CMatrix &E, const ChannelTaps &h21);

    // 2-norm condition number sigma_max / sigma_min.
    double condition_number(const CMatrix &M);
}
