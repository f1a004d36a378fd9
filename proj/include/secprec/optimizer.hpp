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

#include <optional>
#include <string>

#include "secprec/asymptotics.hpp"

namespace secprec {

enum class XiMethod { FixedPoint, DerivativeBisection, GoldenSection };

std::string to_string(XiMethod method);

struct XiSolution {
    double xi = 0.0;
    double residual = 0.0;  // meaning depends on method, see optimal_xi_large_system
    XiMethod method = XiMethod::FixedPoint;
    int iterations = 0;
    double rate = 0.0;            // objective at xi
    bool converged = false;
    bool boundary_warning = false;  // no interior stationary point; xi is a bracket endpoint
    bool flat_objective = false;    // objective constant over the bracket
};

/// Derivative of the large-system rate with respect to xi and the auxiliary
/// quantities it is assembled from.
struct DerivativeBundle {
    double eta = 0.0;
    double eta_prime = 0.0;
    MomentTable moments;
    double e12_prime = 0.0;
    double e22_prime = 0.0;
    double moment_cross = 0.0;  // E12' E22 - E22' E12
    double chi = 0.0;           // (1 + eta)^2 E12
    double z = 0.0;
    double psi = 0.0;
    double phi = 0.0;
    double lambda_c = 0.0;
    double log_ratio = 0.0;
    double derivative = 0.0;
    bool clamped = false;  // rate clamped at zero; derivative reported as 0
};

struct XiBracket {
    double lo = 1e-6;
    double hi = 1e3;
};

DerivativeBundle rate_derivative_wrt_xi(const SpectralMeasure& measure, double beta, double rho, double xi,
                                        const FixedPointSettings& s = {});
DerivativeBundle rate_derivative_wrt_xi(const CorrelationModel& model, double beta, double rho, double xi,
                                        const FixedPointSettings& s = {}, const QuadratureSettings& q = {});

/// Right-hand side of the stationarity fixed point
/// xi = beta ((eta^2 - 1) E12 - rho E22) / (2 rho eta (1 + eta) E12).
double optimal_xi_map(const SpectralMeasure& measure, double beta, double rho, double xi,
                      const FixedPointSettings& s = {});

/// Regularization maximizing the large-system secrecy rate.
///
/// Tries the damped fixed point first (xi0 = beta/rho, damping 0.5, the
/// iterate halved whenever the map turns non-positive) and accepts it when
/// it dominates a coarse log grid over the bracket. Failing that, the sign
/// changes of dR/dxi on the grid are refined by bisection in log xi and the
/// best candidate is kept; golden-section on R itself is the last resort. residual is |xi - map(xi)| for the fixed point, |dR/dxi|
/// for derivative bisection, and the final log-bracket width for golden
/// section.
XiSolution optimal_xi_large_system(const SpectralMeasure& measure, double beta, double rho,
                                   const FixedPointSettings& s = {}, XiBracket bracket = {});
XiSolution optimal_xi_large_system(const CorrelationModel& model, double beta, double rho,
                                   const FixedPointSettings& s = {}, const QuadratureSettings& q = {},
                                   XiBracket bracket = {});

/// Per-realization xi maximizing the RCI secrecy sum-rate: a 41-point log
/// grid locates the peak, golden-section on log xi refines it to relative
/// width 1e-4. The best point evaluated (including `hint`, if given and in
/// the bracket) is returned.
XiSolution optimal_xi_finite(const CMatrix& h, double rho, XiBracket bracket = {},
                             std::optional<double> hint = std::nullopt);

}  // namespace secprec
