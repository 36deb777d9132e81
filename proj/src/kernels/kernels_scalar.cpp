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

#include "kernel_variants.hpp"

namespace vfdm::kernels::detail
{
    namespace
    {
        cplx dotu_scalar(const cplx *a, const cplx *b, std::size_t n)
        {
            double re = 0.0, im = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
                im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
            }
            return {re, im};
        }

        cplx dotc_scalar(const cplx *a, const cplx *b, std::size_t n)
        {
            double re = 0.0, im = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
                im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
            }
            return {re, im};
        }

        void axpy_scalar(cplx alpha, const cplx *x, cplx *y, std::size_t n)
        {
            const double ar = alpha.real(), ai = alpha.imag();
            for (std::size_t i = 0; i < n; ++i)
            {
                const double xr = x[i].real(), xi = x[i].imag();
                y[i] = {y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr};
            }
        }

        double norm_sq_scalar(const cplx *x, std::size_t n)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
            return s;
        }

        void scaled_power_scalar(const cplx *x, double scale, double offset, double *out, std::size_t n)
        {
            for (std::size_t i = 0; i < n; ++i)
                out[i] = scale * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag()) + offset;
        }
    }

    const KernelTable scalar_table{dotu_scalar, dotc_scalar, axpy_scalar, norm_sq_scalar, scaled_power_scalar};
}
