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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "kernel_variants.hpp"

namespace vfdm::kernels
{
    namespace
    {
        bool cpu_has_avx2()
        {
#if defined(VFDM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        }

        Isa detect()
        {
            if (const char *env = std::getenv("VFDM_ISA"); env && std::string_view(env) == "scalar")
                return Isa::scalar;
            return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
        }

        std::atomic<const KernelTable *> &current()
        {
            static std::atomic<const KernelTable *> active{&table(detect())};
            return active;
        }

        const KernelTable &kt() { return *current().load(std::memory_order_relaxed); }

        void check_same_size(std::size_t a, std::size_t b, const char *who)
        {
            if (a != b)
                throw std::invalid_argument(std::string(who) + ": operand lengths differ");
        }
    }

    bool isa_supported(Isa isa)
    {
        switch (isa)
        {
        case Isa::scalar:
            return true;
        case Isa::avx2:
            return cpu_has_avx2();
        }
        return false;
    }

    const char *isa_name(Isa isa)
    {
        return isa == Isa::avx2 ? "avx2" : "scalar";
    }

    const KernelTable &table(Isa isa)
    {
#if defined(VFDM_HAVE_AVX2)
        if (isa == Isa::avx2 && cpu_has_avx2())
            return detail::avx2_table;
#endif
        if (isa != Isa::scalar)
            throw std::invalid_argument(std::string("kernel variant not available: ") + isa_name(isa));
        return detail::scalar_table;
    }

    Isa active_isa()
    {
        return &kt() == &detail::scalar_table ? Isa::scalar : Isa::avx2;
    }

    void set_isa(Isa isa)
    {
        current().store(&table(isa), std::memory_order_relaxed);
    }

    cplx dotu(std::span<const cplx> a, std::span<const cplx> b)
    {
        check_same_size(a.size(), b.size(), "dotu");
        return kt().dotu(a.data(), b.data(), a.size());
    }

    cplx dotc(std::span<const cplx> a, std::span<const cplx> b)
    {
        check_same_size(a.size(), b.size(), "dotc");
        return kt().dotc(a.data(), b.data(), a.size());
    }

    void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y)
    {
        check_same_size(x.size(), y.size(), "axpy");
        kt().axpy(alpha, x.data(), y.data(), x.size());
    }

    double norm_sq(std::span<const cplx> x)
    {
        return kt().norm_sq(x.data(), x.size());
    }

    void scaled_power(std::span<const cplx> x, double scale, double offset, std::span<double> out)
    {
        check_same_size(x.size(), out.size(), "scaled_power");
        kt().scaled_power(x.data(), scale, offset, out.data(), x.size());
    }
}
