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

#include "secprec/selftest.hpp"

#include <algorithm>
#include <cmath>

#include "secprec/asymptotics.hpp"
#include "secprec/optimizer.hpp"

namespace secprec {

std::vector<CheckResult> run_selftest()
{
    std::vector<CheckResult> results;

    {
        CheckResult c{"white-channel closed form", true, 0.0, 1e-8};
        const auto white = SpectralMeasure::of(CorrelationModel::identity());
        for (double beta : {0.5, 1.0, 2.0})
            for (double xi : {0.05, 0.3, 2.0})
                for (double rho : {1.0, 10.0, 100.0}) {
                    const double generic = rci_large_system_rate(white, beta, xi, rho).rate;
                    const double closed = uncorrelated_closed_form(beta, xi, rho);
                    c.residual = std::max(c.residual, std::abs(generic - closed));
                }
        c.passed = c.residual < c.tolerance;
        results.push_back(c);
    }

    {
        CheckResult c{"toeplitz closed-form ratio", true, 0.0, 1e-6};
        for (double nu : {0.2, 0.5, 0.8}) {
            const auto measure = SpectralMeasure::of(CorrelationModel::toeplitz_exponential(nu));
            for (double xi : {0.05, 1.0})
                for (double rho : {1.0, 100.0}) {
                    const double generic = rci_large_system_rate(measure, 1.0, xi, rho).rate;
                    const double closed = toeplitz_exponential_rate(nu, 1.0, xi, rho);
                    c.residual = std::max(c.residual, std::abs(generic - closed));
                }
        }
        c.passed = c.residual < c.tolerance;
        results.push_back(c);
    }

    {
        CheckResult c{"xi-derivative vs finite differences", true, 0.0, 1e-4};
        const auto measure = SpectralMeasure::of(CorrelationModel::toeplitz_exponential(0.5));
        for (double xi : {0.005, 0.02, 0.1}) {
            const DerivativeBundle d = rate_derivative_wrt_xi(measure, 1.0, 10.0, xi);
            const double h = 1e-5 * xi;
            const double fd = (rci_large_system_rate(measure, 1.0, xi + h, 10.0).log_ratio -
                               rci_large_system_rate(measure, 1.0, xi - h, 10.0).log_ratio) /
                              (2.0 * h);
            c.residual = std::max(c.residual, std::abs(d.derivative - fd) / std::abs(fd));
        }
        c.passed = c.residual < c.tolerance;
        results.push_back(c);
    }

    {
        CheckResult c{"eta at beta=1, xi=1 (golden ratio)", true, 0.0, 1e-10};
        const double eta = solve_eta(CorrelationModel::identity(), 1.0, 1.0);
        c.residual = std::abs(eta - (std::sqrt(5.0) - 1.0) / 2.0);
        c.passed = c.residual < c.tolerance;
        results.push_back(c);
    }
    return results;
}

}  // namespace secprec
