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

#pragma once

#include <cstdint>

#include "secprec/correlation.hpp"

namespace secprec {

struct SystemDims {
    int m = 1;  // transmit antennas
    int k = 1;  // single-antenna users

    SystemDims() = default;
    SystemDims(int antennas, int users);

    double beta() const { return static_cast<double>(k) / static_cast<double>(m); }
};

/// One block-fading draw H = H_w R^{1/2}, K x M.
struct ChannelRealization {
    CMatrix h;
    SystemDims dims;
    std::uint64_t seed = 0;
    CorrelationModel model = CorrelationModel::identity();
};

/// Principal square root of a Hermitian PSD matrix by eigendecomposition.
/// Eigenvalues in [-1e-10, 0) are clamped to zero; anything more negative,
/// or asymmetry beyond 1e-8, is an error.
CMatrix hermitian_sqrt(const CMatrix& r);

/// K x M matrix of i.i.d. CN(0,1) entries, filled row by row.
CMatrix sample_white_channel(const SystemDims& dims, std::uint64_t seed);

ChannelRealization sample_channel(const SystemDims& dims, const CorrelationModel& model, std::uint64_t seed);

}  // namespace secprec
