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

#include <cstdint>
#include <initializer_list>
#include <random>

#include "vfdm/types.hpp"

namespace vfdm
{
    using Rng = std::mt19937_64;

    // SplitMix64 finalizer folded over the keys. Used to derive independent
    // substreams from (master seed, grid index, trial index, ...) so results do
    // not depend on which worker runs a trial.
    inline std::uint64_t mix_keys(std::initializer_list<std::uint64_t> keys)
    {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        for (std::uint64_t k : keys)
        {
            std::uint64_t z = h ^ (k + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2));
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            h = z ^ (z >> 31);
        }
        return h;
    }

    inline Rng substream(std::initializer_list<std::uint64_t> keys)
    {
        return Rng(mix_keys(keys));
    }

    // Circularly symmetric complex Gaussian with E|z|^2 = variance.
    inline cplx draw_cn(Rng &rng, double variance)
    {
        std::normal_distribution<double> g(0.0, 1.0);
        const double s = std::sqrt(0.5 * variance);
        const double re = g(rng);
        const double im = g(rng);
        return {s * re, s * im};
    }
}
