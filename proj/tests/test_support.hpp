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

// Independent reference computations shared by the unit tests and the
// acceptance binary. Written straight from the definitions, no shortcuts.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "vfdm/rng.hpp"
#include "vfdm/types.hpp"

namespace vfdm::testing
{
    inline CVector random_cvector(Rng &rng, int n, double var = 1.0)
    {
        CVector v(n);
        for (int i = 0; i < n; ++i)
            v[i] = draw_cn(rng, var);
        return v;
    }

    inline CMatrix random_cmatrix(Rng &rng, int r, int c)
    {
        CMatrix M(r, c);
        for (int j = 0; j < c; ++j)
            M.col(j) = random_cvector(rng, r);
        return M;
    }

    inline ChannelTaps random_taps(Rng &rng, int L)
    {
        return ChannelTaps(random_cvector(rng, L + 1, 1.0 / (L + 1)));
    }

    // Full linear convolution c[n] = sum_l h[l] x[n - l].
    inline CVector linear_convolution(const CVector &h, const CVector &x)
    {
        CVector c = CVector::Zero(h.size() + x.size() - 1);
        for (Eigen::Index n = 0; n < c.size(); ++n)
            for (Eigen::Index l = 0; l < h.size(); ++l)
                if (n - l >= 0 && n - l < x.size())
                    c[n] += h[l] * x[n - l];
        return c;
    }

    // Outputs that see a complete window: the N entries starting at index L.
    inline CVector valid_convolution(const CVector &h, const CVector &x)
    {
        const auto L = h.size() - 1;
        return linear_convolution(h, x).segment(L, x.size() - L);
    }

    inline CVector naive_dft(const CVector &x)
    {
        const auto N = x.size();
        CVector X(N);
        for (Eigen::Index k = 0; k < N; ++k)
        {
            cplx acc = 0.0;
            for (Eigen::Index n = 0; n < N; ++n)
                acc += x[n] * std::exp(cplx(0.0, -2.0 * std::numbers::pi * double(k * n) / double(N)));
            X[k] = acc;
        }
        return X;
    }

    // Largest principal angle between span(A) and span(B) (orthonormal columns),
    // from the sines: singular values of (I - A A^H) B. Accurate for tiny angles.
    inline double max_principal_angle(const CMatrix &A, const CMatrix &B)
    {
        const CMatrix R = B - A * (A.adjoint() * B);
        Eigen::JacobiSVD<CMatrix> svd(R);
        const double s = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
        return std::asin(std::min(1.0, s));
    }

    inline int numerical_rank(const CMatrix &M)
    {
        Eigen::JacobiSVD<CMatrix> svd(M);
        const auto &s = svd.singularValues();
        if (s.size() == 0)
            return 0;
        const double tol = std::max(M.rows(), M.cols()) * std::numeric_limits<double>::epsilon() * s[0];
        return static_cast<int>((s.array() > tol).count());
    }

    inline double wf_objective(const std::vector<double> &d, const std::vector<double> &lambda)
    {
        double s = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i)
            s += std::log2(1.0 + d[i] * lambda[i]);
        return s;
    }

    // Exhaustive optimum of sum_i log2(1 + d_i lambda_i) subject to
    // sum_i d_i q_i = budget over the grid d_i q_i / budget in {0, 1/K, ..., 1}.
    // Max-plus dynamic programming over the units of budget, which visits
    // every grid allocation without listing them one by one.
    inline double grid_waterfill_optimum(const std::vector<double> &lambda, const std::vector<double> &q,
                                         double budget, int K)
    {
        const double neg = -std::numeric_limits<double>::infinity();
        std::vector<double> best(static_cast<std::size_t>(K) + 1, neg);
        best[0] = 0.0;
        for (std::size_t i = 0; i < lambda.size(); ++i)
        {
            std::vector<double> gain(static_cast<std::size_t>(K) + 1);
            for (int u = 0; u <= K; ++u)
                gain[u] = std::log2(1.0 + (budget * u / K / q[i]) * lambda[i]);
            std::vector<double> next(static_cast<std::size_t>(K) + 1, neg);
            for (int used = 0; used <= K; ++used)
            {
                if (best[used] == neg)
                    continue;
                for (int u = 0; used + u <= K; ++u)
                    next[used + u] = std::max(next[used + u], best[used] + gain[u]);
            }
            best.swap(next);
        }
        return best[static_cast<std::size_t>(K)];
    }

    // Exact optimum for small problems: every active set S gets the
    // stationary point of the face {d_i = 0, i not in S}; infeasible faces
    // are skipped and the best feasible one is the global optimum of the
    // concave problem.
    inline double enumerated_waterfill_optimum(const std::vector<double> &lambda, const std::vector<double> &q,
                                               double budget)
    {
        const std::size_t n = lambda.size();
        double best = 0.0;
        for (unsigned mask = 1; mask < (1u << n); ++mask)
        {
            double sum_thr = 0.0, sum_q = 0.0;
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i))
                {
                    if (lambda[i] <= 0.0)
                        ok = false;
                    else
                        sum_thr += q[i] / lambda[i];
                    sum_q += 1.0;
                }
            if (!ok)
                continue;
            const double mu = (budget + sum_thr) / sum_q;
            std::vector<double> d(n, 0.0);
            for (std::size_t i = 0; i < n && ok; ++i)
                if (mask & (1u << i))
                {
                    d[i] = mu / q[i] - 1.0 / lambda[i];
                    ok = d[i] >= -1e-14;
                }
            if (ok)
                best = std::max(best, wf_objective(d, lambda));
        }
        return best;
    }

    // Least-squares slope of y against x.
    inline double regression_slope(const std::vector<double> &x, const std::vector<double> &y)
    {
        const double n = static_cast<double>(x.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            sx += x[i];
            sy += y[i];
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
}
