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

#include <string>

#include "secprec/correlation.hpp"

namespace secprec {

enum class PrecoderKind { Rci, ZeroForcing, SingleUserBeamforming };

/// Unnormalized precoder W (M x K, column k serves user k) with its power
/// normalization gamma = Tr(W W^H) kept separate. The transmitted vector is
/// x = W u / sqrt(gamma).
struct PrecoderOutput {
    CMatrix w;
    double gamma = 0.0;
    PrecoderKind kind = PrecoderKind::Rci;
    double xi = 0.0;  // RCI only

    std::string describe() const;
};

/// W = H^H (H H^H + xi M I_K)^{-1}; gamma = Tr{H^H H (H^H H + xi M I_M)^{-2}}.
PrecoderOutput rci_precoder(const CMatrix& h, double xi);

/// Right inverse H^H (H H^H)^{-1} for K <= M, left inverse (H^H H)^{-1} H^H
/// otherwise. Throws SingularChannel when the Gram matrix condition number
/// exceeds 1e12.
PrecoderOutput zf_precoder(const CMatrix& h);

/// Matched filter W = H^H.
PrecoderOutput sub_precoder(const CMatrix& h);

}  // namespace secprec
