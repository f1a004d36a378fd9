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

#include <vector>

#include "secprec/precoders.hpp"

namespace secprec {

/// Per-user secrecy rates for one channel realization, in bits/s/Hz, with
/// the terms they were computed from.
struct SecrecyReport {
    std::vector<double> per_user_rates;
    double sum_rate = 0.0;
    std::vector<double> signal_terms;        // rho |h_k^H w_k|^2
    std::vector<double> interference_terms;  // rho sum_{j != k} |h_k^H w_j|^2
    std::vector<double> leakage_terms;       // (rho / gamma) ||H_{-k} w_k||^2
    double rho = 0.0;
    double gamma = 0.0;
};

/// A_k, B_k of the leakage-form rewrite for one user.
struct LeakageFormQuantities {
    double a = 0.0;
    double b = 0.0;
    double gamma = 0.0;
};

struct LeakageFormResult {
    SecrecyReport report;
    std::vector<LeakageFormQuantities> quantities;
};

double positive_part(double x);

/// {log2[(1 + signal / (gamma + interference)) / (1 + leakage)]}^+.
double secrecy_rate_from_terms(double signal, double interference, double leakage, double gamma);

/// Worst-case secrecy rates: the eavesdropper on message k is the coalition
/// of all other K-1 users, combining noiselessly and cancelling interference.
SecrecyReport per_user_secrecy_rates(const CMatrix& h, const PrecoderOutput& precoder, double rho);

/// Same rates computed through A_k = h_k^H Q_k h_k and
/// B_k = h_k^H Q_k H_{-k}^H H_{-k} Q_k h_k on the white channel, with
/// Q_k = (H_{-k}^H H_{-k} + M xi R^{-1})^{-1}. gamma is the RCI power
/// normalization of H = H_w R^{1/2}.
LeakageFormResult secrecy_rates_leakage_form(const CMatrix& h_white, const CMatrix& r, double xi, double rho);

/// Literal per-user normalization Tr{H_w Q_k R^{-1} Q_k H_w^H}; differs from
/// the RCI gamma at finite size because Q_k omits user k. Diagnostic only.
double leakage_form_gamma_per_user(const CMatrix& h_white, const CMatrix& r, double xi, int user);

/// Sum of RCI secrecy rates for a given xi.
double rci_secrecy_sum_rate(const CMatrix& h, double xi, double rho);

}  // namespace secprec
