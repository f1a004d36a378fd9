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

#include <complex>
#include <cstdint>
#include <random>

namespace secprec {

/// Seeded source of circularly-symmetric complex Gaussians.
///
/// Stream "mt64-bm/1": the 64-bit seed is passed through one splitmix64
/// step and used to seed std::mt19937_64 (whose output sequence is fixed by
/// the C++ standard). Uniforms on the open interval (0, 1) are built from
/// the top 53 bits as (u + 0.5) * 2^-53, and Box-Muller turns each pair into
/// one CN(0, 1) sample with real and imaginary variance 1/2.
class GaussianSource {
 public:
    static constexpr const char* kStreamName = "mt64-bm/1";

    explicit GaussianSource(std::uint64_t seed);

    double uniform_open();
    std::complex<double> complex_normal();

 private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace secprec
