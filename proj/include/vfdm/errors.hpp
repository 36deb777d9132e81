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

#include <stdexcept>
#include <string>

namespace vfdm
{
    // Argument and dimension errors are reported with std::invalid_argument.
    // The types below flag numerical conditions the caller may want to handle.

    class DegenerateChannel : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    class NumericalRankLoss : public std::runtime_error
    {
      public:
        NumericalRankLoss(const std::string &what, int achieved_rank, int expected_rank)
            : std::runtime_error(what), rank_(achieved_rank), expected_(expected_rank) {}

        int rank() const { return rank_; }
        int expected_rank() const { return expected_; }

      private:
        int rank_;
        int expected_;
    };

    class UnsupportedPrecoder : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    class InsufficientTraining : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };
}
