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

// Data-parallel inner loops over interleaved complex<double> buffers.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2/FMA variant. The variant is picked once at startup from
// CPUID; VFDM_ISA=scalar in the environment or set_isa() forces the reference
// path. Variants agree to rounding (summation order differs), which the
// equivalence tests bound.

#include <complex>
#include <span>

namespace vfdm::kernels
{
    using cplx = std::complex<double>;

    enum class Isa
    {
        scalar,
        avx2
    };

    struct KernelTable
    {
        // sum a_i * b_i
        cplx (*dotu)(const cplx *a, const cplx *b, std::size_t n);
        // sum conj(a_i) * b_i
        cplx (*dotc)(const cplx *a, const cplx *b, std::size_t n);
        // y += alpha * x
        void (*axpy)(cplx alpha, const cplx *x, cplx *y, std::size_t n);
        // sum |x_i|^2
        double (*norm_sq)(const cplx *x, std::size_t n);
        // out_i = scale * |x_i|^2 + offset
        void (*scaled_power)(const cplx *x, double scale, double offset, double *out, std::size_t n);
    };

    bool isa_supported(Isa isa);
    const char *isa_name(Isa isa);

    Isa active_isa();
    void set_isa(Isa isa); // throws std::invalid_argument when unsupported

    // Direct access to one variant; used by the equivalence tests.
    const KernelTable &table(Isa isa);

    cplx dotu(std::span<const cplx> a, std::span<const cplx> b);
    cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
    void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
    double norm_sq(std::span<const cplx> x);
    void scaled_power(std::span<const cplx> x, double scale, double offset, std::span<double> out);
}
