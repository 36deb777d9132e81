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

#include <catch_amalgamated.hpp>

#include "test_support.hpp"
#include "vfdm/precoder.hpp"
#include "vfdm/signal_model.hpp"

using namespace vfdm;
using namespace vfdm::testing;

TEST_CASE("toeplitz: two taps, N = 2", "[signal_model]")
{
    const cplx h0(1.0, 2.0), h1(-0.5, 0.25);
    const CMatrix T = make_toeplitz(ChannelTaps(CVector{{h0, h1}}), 2).matrix;
    REQUIRE(T.rows() == 2);
    REQUIRE(T.cols() == 3);
    CHECK(T(0, 0) == h1);
    CHECK(T(0, 1) == h0);
    CHECK(T(0, 2) == cplx(0));
    CHECK(T(1, 0) == cplx(0));
    CHECK(T(1, 1) == h1);
    CHECK(T(1, 2) == h0);
}

TEST_CASE("toeplitz: h = [1, 0] is a pure delay", "[signal_model]")
{
    const CMatrix T = make_toeplitz(ChannelTaps(CVector{{1.0, 0.0}}), 3).matrix;
    CMatrix expect = CMatrix::Zero(3, 4);
    for (int r = 0; r < 3; ++r)
        expect(r, r + 1) = 1.0;
    CHECK(T == expect);
}

TEST_CASE("toeplitz: impulse response and convolution oracle", "[signal_model]")
{
    Rng rng(3);
    const int N = 8, L = 3;
    const ChannelTaps h = random_taps(rng, L);
    const CMatrix T = make_toeplitz(h, N).matrix;

    for (int p = 0; p < N + L; ++p)
    {
        CVector e = CVector::Zero(N + L);
        e[p] = 1.0;
        const CVector y = T * e;
        const CVector oracle = valid_convolution(h.values(), e);
        CHECK((y - oracle).norm() < 1e-12);
        // column p holds the taps reversed, windowed to rows p-L .. p
        for (int r = 0; r < N; ++r)
        {
            const int j = p - r;
            const cplx want = (j >= 0 && j <= L) ? h[L - j] : cplx(0);
            CHECK(y[r] == want);
        }
    }

    for (int trial = 0; trial < 20; ++trial)
    {
        const ChannelTaps g = random_taps(rng, L);
        const CVector x = random_cvector(rng, N + L);
        const CVector oracle = valid_convolution(g.values(), x);
        CHECK((make_toeplitz(g, N).matrix * x - oracle).norm() < 1e-12);
        CHECK((toeplitz_apply(g, N, x) - oracle).norm() < 1e-12);
    }
}

TEST_CASE("toeplitz: invalid shapes are rejected", "[signal_model]")
{
    CHECK_THROWS_AS(ChannelTaps(CVector{{1.0}}), std::invalid_argument);
    const ChannelTaps h(CVector{{1.0, 2.0}});
    CHECK_THROWS_AS(make_toeplitz(h, 0), std::invalid_argument);
    CHECK_THROWS_AS(toeplitz_apply(h, 4, CVector(4)), std::invalid_argument);
}

TEST_CASE("dft: small sizes and unitarity", "[signal_model]")
{
    const CMatrix F1 = dft_matrix(1);
    CHECK(F1.rows() == 1);
    CHECK(std::abs(F1(0, 0) - 1.0) < 1e-15);

    const CMatrix F2 = dft_matrix(2);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(F2(0, 0) - s) < 1e-15);
    CHECK(std::abs(F2(0, 1) - s) < 1e-15);
    CHECK(std::abs(F2(1, 0) - s) < 1e-15);
    CHECK(std::abs(F2(1, 1) + s) < 1e-15);

    for (int N : {3, 8, 16, 64, 80})
    {
        const CMatrix F = dft_matrix(N);
        CHECK((F * F.adjoint() - CMatrix::Identity(N, N)).norm() < 1e-12);
    }
    CHECK_THROWS_AS(dft_matrix(0), std::invalid_argument);
}

TEST_CASE("cyclic prefix matrix", "[signal_model]")
{
    const RMatrix A = cyclic_prefix_matrix(2, 1);
    CVector v(2);
    v << cplx(1, 1), cplx(2, -1);
    const CVector Av = A.cast<cplx>() * v;
    REQUIRE(Av.size() == 3);
    CHECK(Av[0] == v[1]);
    CHECK(Av[1] == v[0]);
    CHECK(Av[2] == v[1]);

    const RMatrix A2 = cyclic_prefix_matrix(16, 5);
    for (Eigen::Index r = 0; r < A2.rows(); ++r)
    {
        CHECK(A2.row(r).sum() == 1.0);
        CHECK((A2.row(r).array() == 0.0 || A2.row(r).array() == 1.0).all());
    }
    CVector w(16);
    Rng rng(4);
    w = random_cvector(rng, 16);
    CHECK((add_cyclic_prefix(w, 5) - A2.cast<cplx>() * w).norm() == 0.0);

    CHECK_THROWS_AS(cyclic_prefix_matrix(4, 5), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_prefix_matrix(4, 0), std::invalid_argument);
}

TEST_CASE("circulant diagonalization: F T A F^-1 is diagonal", "[signal_model]")
{
    Rng rng(5);
    for (auto [N, L] : {std::pair{4, 2}, std::pair{8, 2}, std::pair{16, 4}, std::pair{64, 16}})
    {
        const ChannelTaps h = random_taps(rng, L);
        const CMatrix F = dft_matrix(N);
        const CMatrix P = F * make_toeplitz(h, N).matrix * cyclic_prefix_matrix(N, L).cast<cplx>() * F.adjoint();
        const double dmax = P.diagonal().cwiseAbs().maxCoeff();
        const CMatrix off = P - CMatrix(P.diagonal().asDiagonal());
        CHECK(off.cwiseAbs().maxCoeff() < 1e-10 * dmax);
    }
}

TEST_CASE("overall diagonal equals the DFT of the zero-padded taps", "[signal_model]")
{
    const int N = 8, L = 2;
    CVector id = CVector::Zero(L + 1);
    id[0] = 1.0;
    const CVector ones = overall_diagonal(ChannelTaps(id), N).diag;
    CHECK((ones - CVector::Ones(N)).norm() < 1e-14);

    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial)
    {
        const ChannelTaps h = random_taps(rng, L);
        const CVector d = overall_diagonal(h, N).diag;

        CVector padded = CVector::Zero(N);
        padded.head(L + 1) = h.values();
        CHECK((d - naive_dft(padded)).norm() < 1e-12);

        const CMatrix F = dft_matrix(N);
        const CMatrix P = F * make_toeplitz(h, N).matrix * cyclic_prefix_matrix(N, L).cast<cplx>() * F.adjoint();
        CHECK((d - P.diagonal()).norm() < 1e-12);

        const cplx a(0.7, -2.0);
        CHECK((overall_diagonal(h.scaled(a), N).diag - a * d).norm() < 1e-12);
    }
}

TEST_CASE("channel draws: moments and determinism", "[signal_model]")
{
    const int L = 4, draws = 100000;
    Rng rng(7);
    double energy = 0.0;
    std::vector<double> tap_var(L + 1, 0.0);
    for (int i = 0; i < draws; ++i)
    {
        const ChannelTaps h = draw_channel(rng, L);
        REQUIRE(h.size() == L + 1);
        energy += h.energy();
        for (int l = 0; l <= L; ++l)
            tap_var[l] += std::norm(h[l]);
    }
    energy /= draws;
    CHECK(energy > 0.99);
    CHECK(energy < 1.01);
    for (double v : tap_var)
        CHECK(std::abs(v / draws - 1.0 / (L + 1)) < 0.02 / (L + 1));

    Rng a(42), b(42);
    CHECK(draw_channel(a, 16).values() == draw_channel(b, 16).values());
    const ChannelSet s1 = draw_channels(a, 8), s2 = draw_channels(b, 8);
    CHECK(s1.h11.values() == s2.h11.values());
    CHECK(s1.h22.values() == s2.h22.values());
    CHECK_THROWS_AS(draw_channel(a, 0), std::invalid_argument);
}

TEST_CASE("noise draws have the requested variance", "[signal_model]")
{
    Rng rng(8);
    const CVector n = draw_noise(rng, 200000, 0.3);
    CHECK(n.squaredNorm() / n.size() == Catch::Approx(0.3).epsilon(0.02));
    CHECK(std::abs(n.mean()) < 0.01);
}

TEST_CASE("receivers: identity channel and zero secondary gives y1 = s1", "[signal_model]")
{
    ScenarioParams p;
    p.N = 16;
    p.L = 3;
    CVector unit = CVector::Zero(p.L + 1);
    unit[0] = 1.0;
    ChannelSet ch{ChannelTaps(unit), ChannelTaps(unit), ChannelTaps(unit), ChannelTaps(unit)};
    Rng rng(9);
    const CVector s1 = random_cvector(rng, p.N);
    const CVector y1 = receive_primary(s1, CVector::Zero(p.N + p.L), ch, p, CVector::Zero(p.N));
    CHECK((y1 - s1).norm() < 1e-12);

    CHECK_THROWS_AS(receive_primary(s1, CVector::Zero(p.N), ch, p, CVector::Zero(p.N)), std::invalid_argument);
    CHECK_THROWS_AS(receive_primary(s1, CVector::Zero(p.N + p.L), ch, p, CVector::Zero(p.N + 1)),
                    std::invalid_argument);
}

TEST_CASE("receivers: precoded secondary block does not reach the primary", "[signal_model]")
{
    ScenarioParams p;
    Rng rng(10);
    const ChannelSet ch = draw_channels(rng, p.L);
    const Precoder E = build_precoder(ch.h21, p.N, PrecoderMethod::svd);
    const CVector s1 = random_cvector(rng, p.N);
    const CVector s2 = random_cvector(rng, p.L);
    const CVector zero = CVector::Zero(p.N);
    const CVector with = receive_primary(s1, E.E * s2, ch, p, zero);
    const CVector without = receive_primary(s1, CVector::Zero(p.N + p.L), ch, p, zero);
    CHECK((with - without).norm() < 1e-8);

    // the same block without precoding does leak
    const CVector raw = random_cvector(rng, p.N + p.L);
    CHECK((receive_primary(s1, raw, ch, p, zero) - without).norm() > 1e-2);
}

TEST_CASE("receivers: alpha = 0 makes y2 independent of s1", "[signal_model]")
{
    ScenarioParams p;
    p.alpha = 0.0;
    Rng rng(11);
    const ChannelSet ch = draw_channels(rng, p.L);
    const CVector x2 = random_cvector(rng, p.N + p.L);
    const CVector n2 = random_cvector(rng, p.N, 0.1);
    const CVector a = receive_secondary(random_cvector(rng, p.N), x2, ch, p, n2);
    const CVector b = receive_secondary(random_cvector(rng, p.N), x2, ch, p, n2);
    CHECK((a - b).norm() == 0.0);

    p.alpha = 1.0;
    const CVector c = receive_secondary(random_cvector(rng, p.N), x2, ch, p, n2);
    CHECK((c - a).norm() > 1e-3);
}

TEST_CASE("receivers follow the operator equations", "[signal_model]")
{
    ScenarioParams p;
    p.N = 8;
    p.L = 2;
    p.alpha = 0.5;
    Rng rng(12);
    const ChannelSet ch = draw_channels(rng, p.L);
    const CVector s1 = random_cvector(rng, p.N), x2 = random_cvector(rng, p.N + p.L);
    const CVector n1 = random_cvector(rng, p.N, 0.1), n2 = random_cvector(rng, p.N, 0.1);
    const CMatrix F = dft_matrix(p.N);
    const CMatrix A = cyclic_prefix_matrix(p.N, p.L).cast<cplx>();
    const CVector x1 = A * F.adjoint() * s1;
    CHECK((ofdm_transmit(s1, p.L) - x1).norm() < 1e-12);

    const CVector y1 =
        F * (make_toeplitz(ch.h11, p.N).matrix * x1 + make_toeplitz(ch.h21, p.N).matrix * x2 + n1);
    const CVector y2 =
        F * (make_toeplitz(ch.h22, p.N).matrix * x2 + p.alpha * make_toeplitz(ch.h12, p.N).matrix * x1 + n2);
    CHECK((receive_primary(s1, x2, ch, p, n1) - y1).norm() < 1e-12);
    CHECK((receive_secondary(s1, x2, ch, p, n2) - y2).norm() < 1e-12);
}

TEST_CASE("scenario parameter validation", "[signal_model]")
{
    ScenarioParams p;
    CHECK_NOTHROW(p.validate());
    p.L = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.L = 65;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ScenarioParams{};
    p.sigma2 = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ScenarioParams{};
    p.alpha = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    const ScenarioParams q = ScenarioParams::at_snr_db(64, 16, 20.0, 1.0);
    CHECK(q.sigma2 == Catch::Approx(0.01));
    CHECK(q.snr_db() == Catch::Approx(20.0));
    CHECK(q.block_length() == 80);
}
