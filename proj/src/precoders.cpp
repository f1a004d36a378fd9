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

#include "secprec/precoders.hpp"

#include <cmath>
#include <sstream>

#include "secprec/errors.hpp"

namespace secprec {

std::string PrecoderOutput::describe() const
{
    std::ostringstream out;
    switch (kind) {
        case PrecoderKind::Rci:
            out << "RCI(xi=" << xi << ")";
            break;
        case PrecoderKind::ZeroForcing:
            out << "ZF";
            break;
        case PrecoderKind::SingleUserBeamforming:
            out << "SUB";
            break;
    }
    return out.str();
}

namespace {

void check_channel(const CMatrix& h)
{
    require(h.rows() >= 1 && h.cols() >= 1, "precoder: channel matrix is empty");
    require(h.allFinite(), "precoder: channel matrix has non-finite entries");
}

// Inverse-apply a Hermitian positive definite Gram matrix, refusing
// numerically singular ones.
CMatrix solve_gram(const CMatrix& gram, const CMatrix& rhs)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > 1e12)
        throw SingularChannel("zf_precoder: Gram matrix is rank deficient (condition number above 1e12)");
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success)
        throw SingularChannel("zf_precoder: Cholesky factorization failed");
    return llt.solve(rhs);
}

}  // namespace

PrecoderOutput rci_precoder(const CMatrix& h, double xi)
{
    check_channel(h);
    require(xi > 0.0 && std::isfinite(xi), "rci_precoder: xi must be positive");
    const auto m = h.cols();
    const double load = xi * static_cast<double>(m);

    // (H H^H + xi M I)^{-1} H, then W = that^H since the Gram matrix is Hermitian.
    CMatrix gram_k = h * h.adjoint();
    gram_k.diagonal().array() += load;
    Eigen::LLT<CMatrix> llt_k(gram_k);
    PrecoderOutput out;
    out.w = llt_k.solve(h).adjoint();

    // gamma through the M x M form: ||H (H^H H + xi M I)^{-1}||_F^2.
    CMatrix gram_m = h.adjoint() * h;
    gram_m.diagonal().array() += load;
    Eigen::LLT<CMatrix> llt_m(gram_m);
    const CMatrix y = llt_m.solve(h.adjoint());
    out.gamma = y.squaredNorm();
    out.kind = PrecoderKind::Rci;
    out.xi = xi;
    return out;
}

PrecoderOutput zf_precoder(const CMatrix& h)
{
    check_channel(h);
    PrecoderOutput out;
    if (h.rows() <= h.cols())
        out.w = solve_gram(h * h.adjoint(), h).adjoint();
    else
        out.w = solve_gram(h.adjoint() * h, h.adjoint());
    out.gamma = out.w.squaredNorm();
    out.kind = PrecoderKind::ZeroForcing;
    return out;
}

PrecoderOutput sub_precoder(const CMatrix& h)
{
    check_channel(h);
    PrecoderOutput out;
    out.w = h.adjoint();
    out.gamma = h.squaredNorm();
    require(out.gamma > 0.0, "sub_precoder: channel matrix is all zero");
    out.kind = PrecoderKind::SingleUserBeamforming;
    return out;
}

}  // namespace secprec
