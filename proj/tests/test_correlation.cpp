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
#include <random>

#include "secprec/correlation.hpp"
#include "secprec/errors.hpp"
#include "test_util.hpp"

using namespace secprec;

TEST_CASE("build_correlation_matrix examples")
{
    CHECK(build_correlation_matrix(CorrelationModel::identity(), 4).isApprox(CMatrix::Identity(4, 4)));
    CHECK(build_correlation_matrix(CorrelationModel::toeplitz_exponential(0.0), 8).isApprox(CMatrix::Identity(8, 8)));

    const CMatrix r = build_correlation_matrix(CorrelationModel::toeplitz_exponential(0.5), 3);
    Eigen::Matrix3d want;
    want << 1, .5, .25, .5, 1, .5, .25, .5, 1;
    CHECK((r - want.cast<std::complex<double>>()).norm() < 1e-15);
    CHECK((r - r.adjoint()).norm() == 0.0);
}

TEST_CASE("correlation model validation")
{
    CHECK_THROWS_AS(CorrelationModel::toeplitz_exponential(1.0), InvalidArgument);
    CHECK_THROWS_AS(CorrelationModel::toeplitz_exponential(-0.1), InvalidArgument);

    CMatrix bad = CMatrix::Identity(3, 3);
    bad(0, 1) = 0.3;
    CHECK_THROWS_AS(CorrelationModel::explicit_matrix(bad), InvalidArgument);
    CHECK_THROWS_AS(CorrelationModel::explicit_matrix(1.5 * CMatrix::Identity(3, 3)), InvalidArgument);

    CMatrix singular = CMatrix::Ones(2, 2);
    CHECK_THROWS_AS(CorrelationModel::explicit_matrix(singular), InvalidArgument);

    const auto model = CorrelationModel::explicit_matrix(1.05 * CMatrix::Identity(3, 3));
    CHECK(std::abs(model.matrix().trace().real() / 3.0 - 1.0) < 1e-9);
    CHECK_THROWS_AS(build_correlation_matrix(model, 4), InvalidArgument);

    CHECK_THROWS_AS(CorrelationModel::explicit_spectrum({{0.0, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(CorrelationModel::explicit_spectrum({{1.0, 0.5}, {2.0, 0.4}}), InvalidArgument);

    QuadratureSettings q;
    q.node_count = 1;
    CHECK_THROWS_AS(q.validate(), InvalidArgument);
}

TEST_CASE("spectral_expectation examples")
{
    CHECK(spectral_expectation(CorrelationModel::identity(), [](double t) { return t; }) == 1.0);

    // Geometric series sum_k nu^{2|k|} for E[T^2].
    const double nu = 0.5;
    double series = 1.0;
    for (int k = 1; k < 200; ++k)
        series += 2.0 * std::pow(nu, 2 * k);
    const auto toeplitz = CorrelationModel::toeplitz_exponential(nu);
    CHECK(std::abs(spectral_expectation(toeplitz, [](double t) { return t * t; }) - series) < 1e-12);
    CHECK(std::abs(spectral_expectation(toeplitz, [](double t) { return 1.0 / t; }) - 5.0 / 3.0) < 1e-12);
}

TEST_CASE("spectral measures are probability distributions with unit mean")
{
    std::vector<CorrelationModel> models{CorrelationModel::identity(),
                                         CorrelationModel::explicit_spectrum({{0.5, 0.25}, {1.0, 0.5}, {1.5, 0.25}}),
                                         CorrelationModel::explicit_matrix(
                                             build_correlation_matrix(CorrelationModel::toeplitz_exponential(0.3), 16))};
    for (double nu : {0.0, 0.1, 0.5, 0.9, 0.99})
        models.push_back(CorrelationModel::toeplitz_exponential(nu));

    for (const auto& model : models) {
        CAPTURE(model.describe());
        CHECK(std::abs(spectral_expectation(model, [](double) { return 1.0; }) - 1.0) < 1e-10);
        if (model.kind() == CorrelationKind::ToeplitzExponential)
            CHECK(std::abs(spectral_expectation(model, [](double t) { return t; }) - 1.0) < 1e-8);
    }
}

TEST_CASE("moment_e_ij point-mass models")
{
    const double xi = 0.3;
    const double eta = 0.7;
    const double beta = 0.8;
    for (const auto& model : {CorrelationModel::identity(), CorrelationModel::toeplitz_exponential(0.0)}) {
        for (int i = 1; i <= 3; ++i) {
            for (int j = 1; j <= 3; ++j) {
                const double want = std::pow(xi * (1.0 + eta) + beta, -j);
                CHECK(std::abs(moment_e_ij(model, i, j, xi, eta, beta) - want) <= 1e-15 * want);
            }
        }
    }
}

TEST_CASE("moment_e_ij matches a 10^6 node trapezoid reference")
{
    const double nu = 0.3;
    const double xi = 0.1;
    const double eta = 1.0;
    const double beta = 1.0;
    const double a = xi * (1.0 + eta);
    const double reference =
        test::toeplitz_midpoint(nu, 1'000'000, [&](double t) { return t / ((a + beta * t) * (a + beta * t)); });
    const double got = moment_e_ij(CorrelationModel::toeplitz_exponential(nu), 1, 2, xi, eta, beta);
    CHECK(std::abs(got - reference) < 1e-8);
    CHECK(got > 0.0);
}

TEST_CASE("moments are decreasing in xi for fixed eta")
{
    const auto model = CorrelationModel::toeplitz_exponential(0.6);
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            double prev = moment_e_ij(model, i, j, 1e-3, 0.5, 1.0);
            for (double xi : {1e-2, 0.1, 1.0, 10.0}) {
                const double cur = moment_e_ij(model, i, j, xi, 0.5, 1.0);
                CHECK(cur < prev);
                prev = cur;
            }
        }
    }
}

TEST_CASE("doubling the node count changes moments by less than 1e-9")
{
    QuadratureSettings coarse;
    QuadratureSettings fine;
    fine.node_count = 2 * coarse.node_count;
    for (double nu : {0.1, 0.5, 0.9}) {
        const auto model = CorrelationModel::toeplitz_exponential(nu);
        for (double xi : {0.01, 0.3, 10.0}) {
            for (int i = 1; i <= 3; ++i) {
                for (int j = 2; j <= 3; ++j) {
                    const double a = moment_e_ij(model, i, j, xi, 0.8, 1.0, coarse);
                    const double b = moment_e_ij(model, i, j, xi, 0.8, 1.0, fine);
                    CHECK(std::abs(a - b) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("quadrature schemes agree")
{
    const auto model = CorrelationModel::toeplitz_exponential(0.5);
    QuadratureSettings uniform;
    uniform.scheme = QuadratureScheme::UniformAngle;
    const double gl = moment_e_ij(model, 2, 3, 0.2, 0.9, 0.8);
    CHECK(std::abs(moment_e_ij(model, 2, 3, 0.2, 0.9, 0.8, uniform) - gl) < 1e-12);

    // Finite Toeplitz eigenvalues approach the symbol density slowly, O(1/n).
    QuadratureSettings discrete;
    discrete.scheme = QuadratureScheme::DiscreteSpectrumSum;
    discrete.node_count = 256;
    CHECK(std::abs(moment_e_ij(model, 2, 3, 0.2, 0.9, 0.8, discrete) - gl) < 1e-2 * gl);
}

TEST_CASE("explicit matrix spectrum equals the spectrum built from its eigenvalues")
{
    std::mt19937_64 gen(11);
    const int m = 256;
    const CMatrix g = test::random_complex(m, m, gen);
    CMatrix r = g * g.adjoint() / m + 0.1 * CMatrix::Identity(m, m);
    r /= r.trace().real() / m;
    r = 0.5 * (r + r.adjoint()).eval();

    const auto from_matrix = CorrelationModel::explicit_matrix(r);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(from_matrix.matrix());
    std::vector<SpectrumPoint> points;
    for (int i = 0; i < m; ++i)
        points.push_back({eig.eigenvalues()(i), 1.0 / m});
    const auto from_spectrum = CorrelationModel::explicit_spectrum(points);

    auto f = [](double t) { return std::log1p(t) / (0.2 + t); };
    CHECK(spectral_expectation(from_matrix, f) == spectral_expectation(from_spectrum, f));
}
