// Copyright 2026 The secprec Authors
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

#include <doctest.h>

#include <cmath>

#include "secprec/channel.hpp"
#include "secprec/errors.hpp"
#include "secprec/rng.hpp"

using namespace secprec;

TEST_CASE("hermitian_sqrt examples")
{
    CHECK(hermitian_sqrt(CMatrix::Identity(5, 5)).isApprox(CMatrix::Identity(5, 5), 1e-14));

    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const CMatrix s = hermitian_sqrt(d);
    CHECK(std::abs(s(0, 0) - 2.0) < 1e-14);
    CHECK(std::abs(s(1, 1) - 3.0) < 1e-14);
    CHECK(std::abs(s(0, 1)) < 1e-14);

    const CMatrix r = build_correlation_matrix(CorrelationModel::toeplitz_exponential(0.5), 3);
    const CMatrix root = hermitian_sqrt(r);
    CHECK((root * root - r).norm() / r.norm() < 1e-10);
    CHECK((root - root.adjoint()).norm() < 1e-12);
}

TEST_CASE("hermitian_sqrt rejects invalid input and clamps round-off")
{
    CMatrix asym = CMatrix::Identity(2, 2);
    asym(0, 1) = 1e-6;
    CHECK_THROWS_AS(hermitian_sqrt(asym), InvalidArgument);

    CMatrix negative = CMatrix::Identity(2, 2);
    negative(1, 1) = -1e-6;
    CHECK_THROWS_AS(hermitian_sqrt(negative), InvalidArgument);

    CMatrix tiny = CMatrix::Identity(2, 2);
    tiny(1, 1) = -1e-12;
    const CMatrix s = hermitian_sqrt(tiny);
    CHECK(std::abs(s(1, 1)) == 0.0);
}

TEST_CASE("SystemDims")
{
    CHECK(SystemDims(64, 32).beta() == 0.5);
    CHECK_THROWS_AS(SystemDims(0, 3), InvalidArgument);
    CHECK_THROWS_AS(SystemDims(3, 0), InvalidArgument);
}

TEST_CASE("sample_channel is deterministic in the seed")
{
    const auto model = CorrelationModel::toeplitz_exponential(0.5);
    const auto a = sample_channel(SystemDims(8, 6), model, 42);
    const auto b = sample_channel(SystemDims(8, 6), model, 42);
    const auto c = sample_channel(SystemDims(8, 6), model, 43);
    CHECK(a.h.rows() == 6);
    CHECK(a.h.cols() == 8);
    CHECK(a.h == b.h);
    CHECK(a.h != c.h);
    CHECK(a.h.allFinite());
}

TEST_CASE("identity correlation leaves the white channel unchanged")
{
    const SystemDims dims(12, 7);
    CHECK(sample_channel(dims, CorrelationModel::identity(), 5).h == sample_white_channel(dims, 5));
}

TEST_CASE("white entries are CN(0,1) with independent real and imaginary parts")
{
    GaussianSource source(99);
    const int n = 200000;
    double re2 = 0.0;
    double im2 = 0.0;
    double cross = 0.0;
    double mean_re = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto z = source.complex_normal();
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
        cross += z.real() * z.imag();
        mean_re += z.real();
    }
    CHECK(std::abs(re2 / n - 0.5) < 0.01);
    CHECK(std::abs(im2 / n - 0.5) < 0.01);
    CHECK(std::abs(cross / n) < 0.01);
    CHECK(std::abs(mean_re / n) < 0.01);

    GaussianSource u(3);
    for (int i = 0; i < 10000; ++i) {
        const double x = u.uniform_open();
        REQUIRE(x > 0.0);
        REQUIRE(x < 1.0);
    }
}

TEST_CASE("sample_channel statistics at M = K = 256")
{
    const SystemDims dims(256, 256);
    const CMatrix white = sample_channel(dims, CorrelationModel::identity(), 2024).h;
    const double mean_power = white.cwiseAbs2().mean();
    CHECK(mean_power >= 0.95);
    CHECK(mean_power <= 1.05);

    const CMatrix h = sample_channel(dims, CorrelationModel::toeplitz_exponential(0.5), 2024).h;
    const CMatrix cov = h.adjoint() * h / 256.0;
    CHECK(std::abs(cov(0, 1).real() - 0.5) < 0.1);
}

TEST_CASE("averaged column covariance converges to R")
{
    const SystemDims dims(128, 128);
    const auto model = CorrelationModel::toeplitz_exponential(0.5);
    CMatrix acc = CMatrix::Zero(128, 128);
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
        const CMatrix h = sample_channel(dims, model, 1000 + s).h;
        acc.noalias() += h.adjoint() * h;
    }
    acc /= 128.0 * seeds;
    const CMatrix r = build_correlation_matrix(model, 128);
    CHECK((acc - r).cwiseAbs().maxCoeff() < 0.05);
}
