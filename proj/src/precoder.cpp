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

#include "vfdm/precoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "vfdm/errors.hpp"
#include "vfdm/kernels.hpp"
#include "vfdm/signal_model.hpp"

namespace vfdm
{
    std::string to_string(PrecoderMethod m)
    {
        return m == PrecoderMethod::svd ? "svd" : "roots_gram_schmidt";
    }

    PrecoderMethod precoder_method_from_string(const std::string &s)
    {
        if (s == "svd")
            return PrecoderMethod::svd;
        if (s == "roots_gram_schmidt" || s == "gram_schmidt" || s == "vandermonde")
            return PrecoderMethod::roots_gram_schmidt;
        throw std::invalid_argument("unknown precoder method '" + s + "' (expected svd or roots_gram_schmidt)");
    }

    namespace
    {
        // S(z) and S'(z) by Horner; coefficients h_0 (leading) ... h_L.
        std::pair<cplx, cplx> eval_poly(const ChannelTaps &h, cplx z)
        {
            cplx p = h[0], dp = 0.0;
            for (int i = 1; i < h.size(); ++i)
            {
                dp = dp * z + p;
                p = p * z + h[i];
            }
            return {p, dp};
        }

        std::span<cplx> col_span(CMatrix &M, Eigen::Index c)
        {
            return {M.col(c).data(), static_cast<std::size_t>(M.rows())};
        }
    }

    NullSpaceRoots polynomial_roots(const ChannelTaps &h21)
    {
        const int L = h21.memory();
        const double hmax = h21.values().cwiseAbs().maxCoeff();
        if (std::abs(h21[0]) < 1e-12)
            throw DegenerateChannel("leading tap h_0 is numerically zero; S(z) has degree < L");

        // companion matrix of the monic polynomial z^L + (h_1/h_0) z^(L-1) + ... + h_L/h_0
        CMatrix C = CMatrix::Zero(L, L);
        for (int j = 0; j < L; ++j)
            C(0, j) = -h21[j + 1] / h21[0];
        for (int i = 1; i < L; ++i)
            C(i, i - 1) = 1.0;

        Eigen::ComplexEigenSolver<CMatrix> es(C, false);
        if (es.info() != Eigen::Success)
            throw DegenerateChannel("companion eigenvalue iteration did not converge");

        NullSpaceRoots out{es.eigenvalues()};
        for (int l = 0; l < L; ++l)
        {
            cplx &a = out.roots[l];
            for (int it = 0; it < 3; ++it)
            {
                const auto [p, dp] = eval_poly(h21, a);
                if (std::abs(dp) == 0.0)
                    break;
                const cplx step = p / dp;
                if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                    break;
                a -= step;
                if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(a)))
                    break;
            }
            const double tol = 1e-8 * hmax * std::pow(std::max(1.0, std::abs(a)), L);
            if (std::abs(eval_poly(h21, a).first) > tol)
                throw DegenerateChannel("root " + std::to_string(l) + " of S(z) failed verification");
        }
        return out;
    }

    VandermondeBasis vandermonde_basis(const NullSpaceRoots &roots, int N)
    {
        const auto L = static_cast<int>(roots.roots.size());
        if (N < 1 || L < 1)
            throw std::invalid_argument("vandermonde_basis: need N >= 1 and at least one root");
        VandermondeBasis V{CMatrix(N + L, L)};
        for (int l = 0; l < L; ++l)
        {
            cplx p = 1.0;
            for (int r = 0; r < N + L; ++r)
            {
                V.matrix(r, l) = p;
                p *= roots.roots[l];
            }
        }
        return V;
    }

    CMatrix combine_basis(const VandermondeBasis &V, const CMatrix &gamma)
    {
        if (gamma.rows() != V.matrix.cols())
            throw std::invalid_argument("combine_basis: Gamma must have L rows");
        return V.matrix * gamma;
    }

    Precoder orthonormalize(const VandermondeBasis &V)
    {
        const CMatrix &A = V.matrix;
        const auto m = A.rows();
        const auto n = A.cols();
        if (n < 1 || m < n)
            throw std::invalid_argument("orthonormalize: need a tall matrix with at least one column");

        // Vandermonde columns can differ in norm by many orders of magnitude;
        // scaling a column leaves the span alone, so each column is judged
        // against its own norm (the global rule applied to the equilibrated V).
        const double rel = static_cast<double>(m) * std::numeric_limits<double>::epsilon();

        CMatrix Q = A;
        CMatrix R = CMatrix::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
        {
            // two passes of modified Gram-Schmidt against the accepted columns
            for (int pass = 0; pass < 2; ++pass)
            {
                for (Eigen::Index i = 0; i < j; ++i)
                {
                    const cplx r = kernels::dotc(col_span(Q, i), col_span(Q, j));
                    R(i, j) += r;
                    kernels::axpy(-r, col_span(Q, i), col_span(Q, j));
                }
            }
            const double nrm = std::sqrt(kernels::norm_sq(col_span(Q, j)));
            if (!(nrm > rel * A.col(j).norm()) || !std::isfinite(nrm))
                throw NumericalRankLoss("Vandermonde basis is numerically rank deficient", static_cast<int>(j),
                                        static_cast<int>(n));
            R(j, j) = nrm;
            Q.col(j) /= nrm;
        }

        Precoder p;
        p.E = std::move(Q);
        p.gamma = R.triangularView<Eigen::Upper>().solve(CMatrix::Identity(n, n));
        p.method = PrecoderMethod::roots_gram_schmidt;
        return p;
    }

    Precoder svd_nullspace(const ChannelTaps &h21, int N)
    {
        const int L = h21.memory();
        const CMatrix T = make_toeplitz(h21, N).matrix;
        Eigen::BDCSVD<CMatrix> svd(T, Eigen::ComputeFullV);
        // singular values are sorted descending; V columns N .. N+L-1 span the null-space
        Precoder p;
        p.E = svd.matrixV().rightCols(L);
        p.method = PrecoderMethod::svd;
        return p;
    }

    Precoder build_precoder(const ChannelTaps &h21, int N, PrecoderMethod method)
    {
        Precoder p = method == PrecoderMethod::svd ? svd_nullspace(h21, N)
                                                   : orthonormalize(vandermonde_basis(polynomial_roots(h21), N));
        p.residual = verify_orthogonality(p.E, h21);
        return p;
    }

    double verify_orthogonality(const CMatrix &E, const ChannelTaps &h21)
    {
        const int N = static_cast<int>(E.rows()) - h21.memory();
        if (N < 1)
            throw std::invalid_argument("verify_orthogonality: E has too few rows for this channel");
        return toeplitz_apply(h21, N, E).norm();
    }

    double condition_number(const CMatrix &M)
    {
        Eigen::JacobiSVD<CMatrix> svd(M);
        const auto &s = svd.singularValues();
        if (s.size() == 0)
            return 0.0;
        const double smin = s[s.size() - 1];
        return smin > 0.0 ? s[0] / smin : std::numeric_limits<double>::infinity();
    }
}
