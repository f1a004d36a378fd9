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

#include "secprec/channel.hpp"

#include "secprec/errors.hpp"
#include "secprec/rng.hpp"

namespace secprec {

SystemDims::SystemDims(int antennas, int users)
    : m(antennas)
    , k(users)
{
    require(m >= 1 && k >= 1, "SystemDims: M and K must be positive");
}

CMatrix hermitian_sqrt(const CMatrix& r)
{
    require(r.rows() == r.cols() && r.rows() >= 1, "hermitian_sqrt: matrix must be square");
    const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
    require((r - r.adjoint()).cwiseAbs().maxCoeff() <= 1e-8 * scale, "hermitian_sqrt: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(r);
    Eigen::VectorXd lambda = eig.eigenvalues();
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        require(lambda[i] >= -1e-10, "hermitian_sqrt: matrix has a negative eigenvalue");
        lambda[i] = lambda[i] < 0.0 ? 0.0 : std::sqrt(lambda[i]);
    }
    const CMatrix& v = eig.eigenvectors();
    CMatrix s = v * lambda.asDiagonal() * v.adjoint();
    return 0.5 * (s + s.adjoint());
}

CMatrix sample_white_channel(const SystemDims& dims, std::uint64_t seed)
{
    GaussianSource source(seed);
    CMatrix h(dims.k, dims.m);
    for (int row = 0; row < dims.k; ++row)
        for (int col = 0; col < dims.m; ++col)
            h(row, col) = source.complex_normal();
    return h;
}

ChannelRealization sample_channel(const SystemDims& dims, const CorrelationModel& model, std::uint64_t seed)
{
    ChannelRealization out{sample_white_channel(dims, seed), dims, seed, model};
    const bool white = model.kind() == CorrelationKind::Identity ||
                       (model.kind() == CorrelationKind::ToeplitzExponential && model.nu() == 0.0);
    if (!white)
        out.h = out.h * hermitian_sqrt(build_correlation_matrix(model, dims.m));
    return out;
}

}  // namespace secprec
