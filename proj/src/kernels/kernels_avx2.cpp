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

// Compiled with -mavx2 -mfma; only reached after a CPUID check.
// One __m256d holds two interleaved complex values [re0 im0 re1 im1].

#include <immintrin.h>

#include "kernel_variants.hpp"

namespace vfdm::kernels::detail
{
    namespace
    {
        inline const double *raw(const cplx *p) { return reinterpret_cast<const double *>(p); }
        inline double *raw(cplx *p) { return reinterpret_cast<double *>(p); }

        // [x0 x1 x2 x3] -> x0 - x1 + x2 - x3 and x0 + x1 + x2 + x3
        inline double sum_even_minus_odd(__m256d v)
        {
            alignas(32) double t[4];
            _mm256_store_pd(t, v);
            return (t[0] - t[1]) + (t[2] - t[3]);
        }
        inline double sum_all(__m256d v)
        {
            const __m128d lo = _mm256_castpd256_pd128(v);
            const __m128d hi = _mm256_extractf128_pd(v, 1);
            const __m128d s = _mm_add_pd(lo, hi);
            return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
        }

        cplx dotu_avx2(const cplx *a, const cplx *b, std::size_t n)
        {
            __m256d prod = _mm256_setzero_pd(); // ar*br, ai*bi
            __m256d cross = _mm256_setzero_pd(); // ar*bi, ai*br
            __m256d prod2 = _mm256_setzero_pd();
            __m256d cross2 = _mm256_setzero_pd();
            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
            {
                const __m256d va = _mm256_loadu_pd(raw(a + i));
                const __m256d vb = _mm256_loadu_pd(raw(b + i));
                const __m256d va2 = _mm256_loadu_pd(raw(a + i + 2));
                const __m256d vb2 = _mm256_loadu_pd(raw(b + i + 2));
                prod = _mm256_fmadd_pd(va, vb, prod);
                cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), cross);
                prod2 = _mm256_fmadd_pd(va2, vb2, prod2);
                cross2 = _mm256_fmadd_pd(va2, _mm256_permute_pd(vb2, 0b0101), cross2);
            }
            for (; i + 2 <= n; i += 2)
            {
                const __m256d va = _mm256_loadu_pd(raw(a + i));
                const __m256d vb = _mm256_loadu_pd(raw(b + i));
                prod = _mm256_fmadd_pd(va, vb, prod);
                cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), cross);
            }
            prod = _mm256_add_pd(prod, prod2);
            cross = _mm256_add_pd(cross, cross2);
            double re = sum_even_minus_odd(prod);
            double im = sum_all(cross);
            for (; i < n; ++i)
            {
                re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
                im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
            }
            return {re, im};
        }

        cplx dotc_avx2(const cplx *a, const cplx *b, std::size_t n)
        {
            __m256d prod = _mm256_setzero_pd();  // ar*br, ai*bi
            __m256d cross = _mm256_setzero_pd(); // ar*bi, ai*br
            __m256d prod2 = _mm256_setzero_pd();
            __m256d cross2 = _mm256_setzero_pd();
            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
            {
                const __m256d va = _mm256_loadu_pd(raw(a + i));
                const __m256d vb = _mm256_loadu_pd(raw(b + i));
                const __m256d va2 = _mm256_loadu_pd(raw(a + i + 2));
                const __m256d vb2 = _mm256_loadu_pd(raw(b + i + 2));
                prod = _mm256_fmadd_pd(va, vb, prod);
                cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), cross);
                prod2 = _mm256_fmadd_pd(va2, vb2, prod2);
                cross2 = _mm256_fmadd_pd(va2, _mm256_permute_pd(vb2, 0b0101), cross2);
            }
            for (; i + 2 <= n; i += 2)
            {
                const __m256d va = _mm256_loadu_pd(raw(a + i));
                const __m256d vb = _mm256_loadu_pd(raw(b + i));
                prod = _mm256_fmadd_pd(va, vb, prod);
                cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), cross);
            }
            prod = _mm256_add_pd(prod, prod2);
            cross = _mm256_add_pd(cross, cross2);
            double re = sum_all(prod);
            double im = sum_even_minus_odd(cross);
            for (; i < n; ++i)
            {
                re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
                im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
            }
            return {re, im};
        }

        void axpy_avx2(cplx alpha, const cplx *x, cplx *y, std::size_t n)
        {
            const __m256d ar = _mm256_set1_pd(alpha.real());
            const __m256d ai = _mm256_set1_pd(alpha.imag());
            std::size_t i = 0;
            for (; i + 2 <= n; i += 2)
            {
                const __m256d vx = _mm256_loadu_pd(raw(x + i));
                const __m256d vy = _mm256_loadu_pd(raw(y + i));
                // [ai*xi, ai*xr]
                const __m256d t = _mm256_mul_pd(ai, _mm256_permute_pd(vx, 0b0101));
                // even: ar*xr - ai*xi, odd: ar*xi + ai*xr
                const __m256d ax = _mm256_fmaddsub_pd(ar, vx, t);
                _mm256_storeu_pd(raw(y + i), _mm256_add_pd(vy, ax));
            }
            for (; i < n; ++i)
                y[i] += alpha * x[i];
        }

        double norm_sq_avx2(const cplx *x, std::size_t n)
        {
            __m256d acc = _mm256_setzero_pd();
            __m256d acc2 = _mm256_setzero_pd();
            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
            {
                const __m256d v = _mm256_loadu_pd(raw(x + i));
                const __m256d v2 = _mm256_loadu_pd(raw(x + i + 2));
                acc = _mm256_fmadd_pd(v, v, acc);
                acc2 = _mm256_fmadd_pd(v2, v2, acc2);
            }
            for (; i + 2 <= n; i += 2)
            {
                const __m256d v = _mm256_loadu_pd(raw(x + i));
                acc = _mm256_fmadd_pd(v, v, acc);
            }
            double s = sum_all(_mm256_add_pd(acc, acc2));
            for (; i < n; ++i)
                s += std::norm(x[i]);
            return s;
        }

        void scaled_power_avx2(const cplx *x, double scale, double offset, double *out, std::size_t n)
        {
            const __m256d vs = _mm256_set1_pd(scale);
            const __m256d vo = _mm256_set1_pd(offset);
            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
            {
                const __m256d a = _mm256_loadu_pd(raw(x + i));     // x0 x1
                const __m256d b = _mm256_loadu_pd(raw(x + i + 2)); // x2 x3
                // hadd -> |x0|^2 |x2|^2 |x1|^2 |x3|^2
                const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
                const __m256d p = _mm256_permute4x64_pd(h, 0b11011000);
                _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vs, p, vo));
            }
            for (; i < n; ++i)
                out[i] = scale * std::norm(x[i]) + offset;
        }
    }

    const KernelTable avx2_table{dotu_avx2, dotc_avx2, axpy_avx2, norm_sq_avx2, scaled_power_avx2};
}
