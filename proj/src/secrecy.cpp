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

#include "secprec/secrecy.hpp"

#include <cmath>
#include <numeric>

#include "secprec/channel.hpp"
#include "secprec/errors.hpp"

namespace secprec {

double positive_part(double x)
{
    return x > 0.0 ? x : 0.0;
}

double secrecy_rate_from_terms(double signal, double interference, double leakage, double gamma)
{
    return positive_part(std::log2((1.0 + signal / (gamma + interference)) / (1.0 + leakage)));
}

SecrecyReport per_user_secrecy_rates(const CMatrix& h, const PrecoderOutput& precoder, double rho)
{
    require(rho > 0.0 && std::isfinite(rho), "per_user_secrecy_rates: rho must be positive");
    require(precoder.gamma > 0.0, "per_user_secrecy_rates: gamma must be positive");
    require(precoder.w.rows() == h.cols() && precoder.w.cols() == h.rows(),
            "per_user_secrecy_rates: precoder does not match the channel dimensions");

    const auto k_users = static_cast<int>(h.rows());
    // cross(k, j) = h_k^H w_j
    const Eigen::MatrixXd power = (h * precoder.w).cwiseAbs2();
    const double gamma = precoder.gamma;

    SecrecyReport report;
    report.rho = rho;
    report.gamma = gamma;
    report.per_user_rates.resize(k_users);
    report.signal_terms.resize(k_users);
    report.interference_terms.resize(k_users);
    report.leakage_terms.resize(k_users);
    for (int k = 0; k < k_users; ++k) {
        const double own = power(k, k);
        const double interference = power.row(k).sum() - own;
        const double leaked = power.col(k).sum() - own;
        report.signal_terms[k] = rho * own;
        report.interference_terms[k] = rho * interference;
        report.leakage_terms[k] = rho / gamma * leaked;
        report.per_user_rates[k] = secrecy_rate_from_terms(report.signal_terms[k], report.interference_terms[k],
                                                           report.leakage_terms[k], gamma);
    }
    report.sum_rate = std::accumulate(report.per_user_rates.begin(), report.per_user_rates.end(), 0.0);
    return report;
}

namespace {

CMatrix remove_row(const CMatrix& h, int row)
{
    CMatrix out(h.rows() - 1, h.cols());
    out.topRows(row) = h.topRows(row);
    out.bottomRows(h.rows() - 1 - row) = h.bottomRows(h.rows() - 1 - row);
    return out;
}

CMatrix inverse_correlation(const CMatrix& r)
{
    Eigen::LLT<CMatrix> llt(r);
    if (llt.info() != Eigen::Success)
        throw InvalidArgument("leakage form: R is singular or not positive definite");
    return llt.solve(CMatrix::Identity(r.rows(), r.cols()));
}

// Cholesky of H_{-k}^H H_{-k} + M xi R^{-1}.
Eigen::LLT<CMatrix> factor_q(const CMatrix& h_white, const CMatrix& r_inv, double xi, int user)
{
    const CMatrix others = remove_row(h_white, user);
    CMatrix g = others.adjoint() * others + static_cast<double>(h_white.cols()) * xi * r_inv;
    Eigen::LLT<CMatrix> llt(g);
    if (llt.info() != Eigen::Success)
        throw InvalidArgument("leakage form: Q_k is ill-conditioned");
    return llt;
}

void check_leakage_inputs(const CMatrix& h_white, const CMatrix& r, double xi)
{
    require(xi > 0.0, "leakage form: xi must be positive");
    require(r.rows() == r.cols() && r.rows() == h_white.cols(), "leakage form: R must be M x M");
    require(h_white.allFinite(), "leakage form: channel has non-finite entries");
}

}  // namespace

LeakageFormResult secrecy_rates_leakage_form(const CMatrix& h_white, const CMatrix& r, double xi, double rho)
{
    check_leakage_inputs(h_white, r, xi);
    require(rho > 0.0, "leakage form: rho must be positive");
    const CMatrix r_inv = inverse_correlation(r);
    const double gamma = rci_precoder(h_white * hermitian_sqrt(r), xi).gamma;

    const auto k_users = static_cast<int>(h_white.rows());
    LeakageFormResult result;
    SecrecyReport& report = result.report;
    report.rho = rho;
    report.gamma = gamma;
    report.per_user_rates.resize(k_users);
    report.signal_terms.resize(k_users);
    report.interference_terms.resize(k_users);
    report.leakage_terms.resize(k_users);
    result.quantities.resize(k_users);

    for (int k = 0; k < k_users; ++k) {
        const CVector hk = h_white.row(k).adjoint();
        const CVector qh = factor_q(h_white, r_inv, xi, k).solve(hk);
        const double a = hk.dot(qh).real();
        const double b = (remove_row(h_white, k) * qh).squaredNorm();
        result.quantities[k] = {a, b, gamma};

        const double one_a2 = (1.0 + a) * (1.0 + a);
        report.signal_terms[k] = rho * a * a / one_a2;
        report.interference_terms[k] = rho * b / one_a2;
        report.leakage_terms[k] = rho * b / (gamma * one_a2);
        const double gain = 1.0 + rho * a * a / (rho * b + gamma * one_a2);
        const double loss = 1.0 + rho * b / (gamma * one_a2);
        report.per_user_rates[k] = positive_part(std::log2(gain / loss));
    }
    report.sum_rate = std::accumulate(report.per_user_rates.begin(), report.per_user_rates.end(), 0.0);
    return result;
}

double leakage_form_gamma_per_user(const CMatrix& h_white, const CMatrix& r, double xi, int user)
{
    check_leakage_inputs(h_white, r, xi);
    require(user >= 0 && user < h_white.rows(), "leakage form: user index out of range");
    const CMatrix r_inv = inverse_correlation(r);
    const auto llt = factor_q(h_white, r_inv, xi, user);
    // Q_k H_w^H, then Tr{H_w Q_k R^{-1} Q_k H_w^H}
    const CMatrix qh = llt.solve(h_white.adjoint());
    return (qh.adjoint() * r_inv * qh).trace().real();
}

double rci_secrecy_sum_rate(const CMatrix& h, double xi, double rho)
{
    return per_user_secrecy_rates(h, rci_precoder(h, xi), rho).sum_rate;
}

}  // namespace secprec
