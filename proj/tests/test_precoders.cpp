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

#include "secprec/errors.hpp"
#include "secprec/precoders.hpp"
#include "test_util.hpp"

using namespace secprec;

namespace {

CMatrix scalar(std::complex<double> v)
{
    CMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

double column_misalignment(const CMatrix& a, const CMatrix& b)
{
    double worst = 0.0;
    for (int k = 0; k < a.cols(); ++k) {
        const CVector x = a.col(k).normalized();
        const CVector y = b.col(k).normalized();
        worst = std::max(worst, (x - y).norm());
    }
    return worst;
}

}  // namespace

TEST_CASE("rci scalar example")
{
    const auto p = rci_precoder(scalar(1.0), 1.0);
    CHECK(std::abs(p.w(0, 0) - 0.5) < 1e-15);
    CHECK(p.gamma == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.kind == PrecoderKind::Rci);
    CHECK_THROWS_AS(rci_precoder(scalar(1.0), 0.0), InvalidArgument);
    CHECK_THROWS_AS(rci_precoder(scalar(1.0), -1.0), InvalidArgument);
}

TEST_CASE("rci gamma equals the precoder Frobenius norm")
{
    std::mt19937_64 gen(1);
    std::uniform_int_distribution<int> dim(1, 12);
    std::uniform_real_distribution<double> log_xi(-4.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const CMatrix h = test::random_complex(dim(gen), dim(gen), gen);
        const auto p = rci_precoder(h, std::pow(10.0, log_xi(gen)));
        CHECK(std::abs(p.w.squaredNorm() - p.gamma) <= 1e-10 * p.gamma);
    }
}

TEST_CASE("rci matches a direct solve")
{
    std::mt19937_64 gen(2);
    const CMatrix h = test::random_complex(4, 8, gen);
    const double xi = 0.1;
    const CMatrix gram = h * h.adjoint() + xi * 8.0 * CMatrix::Identity(4, 4);
    const CMatrix x = gram.fullPivLu().solve(h);
    CHECK((rci_precoder(h, xi).w - x.adjoint()).norm() < 1e-10);
}

TEST_CASE("zf precoder")
{
    std::mt19937_64 gen(3);
    const CMatrix h = test::random_complex(4, 8, gen);
    const auto p = zf_precoder(h);
    CHECK((h * p.w - CMatrix::Identity(4, 4)).norm() < 1e-9);
    CHECK(std::abs(p.w.squaredNorm() - p.gamma) < 1e-12);

    const auto s = zf_precoder(scalar(2.0));
    CHECK(std::abs(s.w(0, 0) - 0.5) < 1e-15);
    CHECK(s.gamma == doctest::Approx(0.25));

    // K > M: left inverse.
    const CMatrix tall = test::random_complex(8, 4, gen);
    const auto left = zf_precoder(tall);
    CHECK(left.w.rows() == 4);
    CHECK(left.w.cols() == 8);
    CHECK((left.w * tall - CMatrix::Identity(4, 4)).norm() < 1e-9);

    CMatrix rank_deficient = test::random_complex(3, 6, gen);
    rank_deficient.row(2) = rank_deficient.row(0);
    CHECK_THROWS_AS(zf_precoder(rank_deficient), SingularChannel);
}

TEST_CASE("sub precoder")
{
    const auto s = sub_precoder(scalar(3.0));
    CHECK(std::abs(s.w(0, 0) - 3.0) < 1e-15);
    CHECK(s.gamma == doctest::Approx(9.0));

    std::mt19937_64 gen(4);
    const CMatrix h = test::random_complex(5, 9, gen);
    double sum = 0.0;
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j)
            sum += std::norm(h(i, j));
    CHECK(std::abs(sub_precoder(h).gamma - sum) < 1e-10);
    CHECK(sub_precoder(h).w == h.adjoint());
    CHECK_THROWS_AS(sub_precoder(CMatrix::Zero(2, 3)), InvalidArgument);
}

TEST_CASE("rci limits")
{
    std::mt19937_64 gen(5);
    const CMatrix h = test::random_complex(6, 10, gen);

    const double big = 1e6;
    const CMatrix scaled = rci_precoder(h, big).w * (big * 10.0);
    CHECK((scaled - h.adjoint()).norm() / h.norm() < 1e-3);

    CHECK(column_misalignment(rci_precoder(h, 1e-8).w, zf_precoder(h).w) < 1e-3);
    CHECK(column_misalignment(rci_precoder(h, 1e8).w, h.adjoint()) < 1e-3);
}
