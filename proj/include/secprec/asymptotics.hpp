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

struct FixedPointSettings {
    double tolerance = 1e-12;
    int max_iterations = 10000;
    double damping = 1.0;  // in (0, 1]

    void validate() const;
};

struct EtaSolution {
    double eta = 0.0;
    double residual = 0.0;  // |eta - F(eta)|
    int iterations = 0;
    bool used_bisection = false;
};

/// Solves eta = E[T (1 + eta) / (xi (1 + eta) + beta T)].
///
/// Plain (optionally damped) iteration from eta = 1; falls back to bisection
/// on eta - F(eta) over [0, max(10, 2 E[T]) / xi] when the iterates oscillate
/// or contract too slowly to finish within max_iterations. The root is finished with Newton steps, using
/// F'(eta) = beta E_22. The stopping test is relative to max(1, eta).
EtaSolution solve_eta(const SpectralMeasure& measure, double beta, double xi, const FixedPointSettings& s = {});
double solve_eta(const CorrelationModel& model, double beta, double xi, const FixedPointSettings& s = {},
                 const QuadratureSettings& q = {});

/// Large-system RCI quantities at one operating point.
struct DeterministicEquivalent {
    double eta = 0.0;
    MomentTable moments;
    double a_limit = 0.0;      // eta
    double b_limit = 0.0;      // beta E22 / (1 - beta E22)
    double gamma_limit = 0.0;  // beta E12 / (1 - beta E22)
    double eta_prime = 0.0;    // d eta / d xi
    double log_ratio = 0.0;    // rate before the {.}^+ clamp
    double rate = 0.0;
    double beta = 0.0;
    double xi = 0.0;
    double rho = 0.0;
    int eta_iterations = 0;
};

DeterministicEquivalent rci_large_system_rate(const SpectralMeasure& measure, double beta, double xi, double rho,
                                              const FixedPointSettings& s = {});
DeterministicEquivalent rci_large_system_rate(const CorrelationModel& model, double beta, double xi, double rho,
                                              const FixedPointSettings& s = {}, const QuadratureSettings& q = {});

/// Closed-form eta for R = I.
double uncorrelated_eta(double beta, double xi);
/// Large-system RCI secrecy rate for R = I in closed form.
double uncorrelated_closed_form(double beta, double xi, double rho);

/// ZF: beta < 1 solves chi = beta / E[T / (1 + chi T)]; beta > 1 uses
/// gamma0 = (beta - 1) / E[1/T]. beta == 1 throws DomainError.
double zf_large_system_rate(const SpectralMeasure& measure, double beta, double rho, const FixedPointSettings& s = {});
double zf_large_system_rate(const CorrelationModel& model, double beta, double rho, const FixedPointSettings& s = {},
                            const QuadratureSettings& q = {});

double sub_large_system_rate(const SpectralMeasure& measure, double beta, double rho);
double sub_large_system_rate(const CorrelationModel& model, double beta, double rho, const QuadratureSettings& q = {});

/// Ratio E22/E12 in closed form for the Toeplitz-exponential law.
double toeplitz_moment_ratio(double nu, double beta, double xi, double eta);

/// Large-system rate under Toeplitz-exponential correlation, using the
/// closed-form moment ratio; eta is still solved numerically.
double toeplitz_exponential_rate(double nu, double beta, double xi, double rho, const FixedPointSettings& s = {},
                                 const QuadratureSettings& q = {});

}  // namespace secprec
