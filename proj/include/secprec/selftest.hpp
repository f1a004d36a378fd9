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
#include <vector>

namespace secprec {

inline constexpr const char* kVersion = "0.1.0";

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;  // worst observed deviation
    double tolerance = 0.0;
};

/// Small embedded invariant suite: white-channel closed form against the
/// generic moment path, the Toeplitz closed-form moment ratio against
/// quadrature, and the analytic xi-derivative against finite differences.
std::vector<CheckResult> run_selftest();

}  // namespace secprec
