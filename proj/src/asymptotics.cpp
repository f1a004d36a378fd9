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

#include "secprec/asymptotics.hpp"

#include <cmath>

#include "secprec/errors.hpp"
#include "secprec/secrecy.hpp"

namespace secprec {

void FixedPointSettings::validate() const
{
    require(tolerance > 0.0, "FixedPointSettings: tolerance must be positive");
    require(max_iterations >= 1, "FixedPointSettings: max_iterations must be at least 1");
    require(damping > 0.0 && damping <= 1.0, "FixedPointSettings: damping must lie in (0, 1]");
}

namespace {

struct EtaMap {
    const SpectralMeasure& measure;
    double beta;
    double xi;

    // F(eta) and F'(eta) = beta E22 in one pass.
    std::pair<double, double> operator()(double eta) const
    {
        const double a = xi * (1.0 + eta);
        double e11 = 0.0;
        double e22 = 0.0;
        const auto points = measure.points();
        const auto weights = measure.weights();
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double t = points[i];
            const double ratio = t / (a + beta * t);
            e11 += weights[i] * ratio;
            e22 += weights[i] * ratio * ratio;
        }
        return {(1.0 + eta) * e11, beta * e22};
    }
};

double newton_polish(const EtaMap& map, double eta)
{
    for (int step = 0; step < 3; ++step) {
        const auto [f, df] = map(eta);
        const double residual = eta - f;
        const double next = eta - residual / (1.0 - df);
        if (!(next >= 0.0) || !std::isfinite(next))
            break;
        const auto [f_next, df_next] = map(next);
        if (std::abs(next - f_next) >= std::abs(residual))
            break;
        eta = next;
    }
    return eta;
}

}  // namespace

EtaSolution solve_eta(const SpectralMeasure& measure, double beta, double xi, const FixedPointSettings& s)
{
    require(xi > 0.0 && std::isfinite(xi), "solve_eta: xi must be positive");
    require(beta > 0.0 && std::isfinite(beta), "solve_eta: beta must be positive");
    s.validate();
    const EtaMap map{measure, beta, xi};
    auto converged = [&](double eta, double f) { return std::abs(eta - f) <= s.tolerance * std::max(1.0, eta); };

    EtaSolution out;
    double eta = 1.0;
    double prev_step = 0.0;
    int alternations = 0;
    bool done = false;
    for (int n = 0; n < s.max_iterations; ++n) {
        const double f = map(eta).first;
        out.iterations = n + 1;
        if (converged(eta, f)) {
            done = true;
            break;
        }
        const double step = s.damping * (f - eta);
        // Oscillation: successive steps flip sign without shrinking.
        if (prev_step != 0.0 && step * prev_step < 0.0 && std::abs(step) >= std::abs(prev_step))
            ++alternations;
        else
            alternations = 0;
        if (alternations >= 5)
            break;
        // Stall: at the observed contraction rate the budget would run out.
        if (n >= 50 && prev_step != 0.0) {
            const double rate = std::abs(step / prev_step);
            const double needed = s.tolerance * std::max(1.0, eta) / std::abs(step);
            if (rate >= 1.0 || std::log(needed) / std::log(rate) > s.max_iterations - n)
                break;
        }
        prev_step = step;
        eta += step;
    }

    if (!done) {
        out.used_bisection = true;
        const double mean_t = measure.expect([](double t) { return t; });
        double lo = 0.0;
        double hi = std::max(10.0, 2.0 * mean_t) / xi;
        for (int n = 0; n < 400 && hi - lo > 1e-16 * std::max(1.0, hi); ++n) {
            const double mid = 0.5 * (lo + hi);
            if (mid - map(mid).first < 0.0)
                lo = mid;
            else
                hi = mid;
            ++out.iterations;
        }
        eta = 0.5 * (lo + hi);
    }

    eta = newton_polish(map, eta);
    out.eta = eta;
    out.residual = std::abs(eta - map(eta).first);
    if (out.residual > s.tolerance * std::max(1.0, eta))
        throw ConvergenceError("solve_eta: fixed point did not converge (beta=" + std::to_string(beta) +
                               ", xi=" + std::to_string(xi) + ")");
    return out;
}

double solve_eta(const CorrelationModel& model, double beta, double xi, const FixedPointSettings& s,
                 const QuadratureSettings& q)
{
    return solve_eta(SpectralMeasure::of(model, q), beta, xi, s).eta;
}

namespace {

// log2 of the large-system rate argument given eta and the moment ratio
// E22/E12 (which is all the formula depends on besides eta).
double rci_log_ratio(double eta, double ratio, double beta, double xi, double rho)
{
    const double one_eta2 = (1.0 + eta) * (1.0 + eta);
    const double gain = 1.0 + eta * (rho * ratio + xi * rho / beta * one_eta2) / (rho * ratio + one_eta2);
    const double loss = 1.0 + rho * ratio / one_eta2;
    return std::log2(gain / loss);
}

}  // namespace

DeterministicEquivalent rci_large_system_rate(const SpectralMeasure& measure, double beta, double xi, double rho,
                                              const FixedPointSettings& s)
{
    require(rho > 0.0 && std::isfinite(rho), "rci_large_system_rate: rho must be positive");
    const EtaSolution eta = solve_eta(measure, beta, xi, s);

    DeterministicEquivalent out;
    out.beta = beta;
    out.xi = xi;
    out.rho = rho;
    out.eta = eta.eta;
    out.eta_iterations = eta.iterations;
    out.moments = moment_table(measure, xi, eta.eta, beta);
    const double e12 = out.moments.e12;
    const double e22 = out.moments.e22;
    const double slack = 1.0 - beta * e22;
    if (!(slack > 0.0))
        throw DomainError("rci_large_system_rate: beta * E22 >= 1, the leakage limit is undefined");

    const double one_eta2 = (1.0 + eta.eta) * (1.0 + eta.eta);
    out.a_limit = eta.eta;
    out.b_limit = beta * e22 / slack;
    out.eta_prime = -one_eta2 * e12 / slack;
    out.gamma_limit = -beta / one_eta2 * out.eta_prime;
    out.log_ratio = rci_log_ratio(eta.eta, e22 / e12, beta, xi, rho);
    out.rate = positive_part(out.log_ratio);
    return out;
}

DeterministicEquivalent rci_large_system_rate(const CorrelationModel& model, double beta, double xi, double rho,
                                              const FixedPointSettings& s, const QuadratureSettings& q)
{
    return rci_large_system_rate(SpectralMeasure::of(model, q), beta, xi, rho, s);
}

double uncorrelated_eta(double beta, double xi)
{
    require(xi > 0.0 && beta > 0.0, "uncorrelated_eta: need xi > 0 and beta > 0");
    const double d = (1.0 - beta) / xi;
    return 0.5 * (std::sqrt(d * d + 2.0 * (1.0 + beta) / xi + 1.0) + d - 1.0);
}

double uncorrelated_closed_form(double beta, double xi, double rho)
{
    require(rho > 0.0, "uncorrelated_closed_form: rho must be positive");
    const double g = uncorrelated_eta(beta, xi);
    const double one_g2 = (1.0 + g) * (1.0 + g);
    const double gain = 1.0 + g * (rho + rho * xi / beta * one_g2) / (rho + one_g2);
    const double loss = 1.0 + rho / one_g2;
    return positive_part(std::log2(gain / loss));
}

double zf_large_system_rate(const SpectralMeasure& measure, double beta, double rho, const FixedPointSettings& s)
{
    require(beta > 0.0 && rho > 0.0, "zf_large_system_rate: need beta > 0 and rho > 0");
    s.validate();
    if (beta == 1.0)
        throw DomainError("zf_large_system_rate: ZF undefined at beta=1");
    if (beta > 1.0) {
        const double mean_inv = measure.expect([](double t) { return 1.0 / t; });
        const double gamma0 = (beta - 1.0) / mean_inv;
        const double gain = 1.0 + rho / (rho * (beta - 1.0) + beta * beta * gamma0);
        const double loss = 1.0 + rho * (beta - 1.0) / (gamma0 * beta * beta);
        return positive_part(std::log2(gain / loss));
    }
    // chi E[T / (1 + chi T)] rises monotonically from 0 to 1.
    auto excess = [&](double chi) { return chi * measure.expect([&](double t) { return t / (1.0 + chi * t); }) - beta; };
    double lo = 0.0;
    double hi = 1.0;
    while (excess(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300)
            throw ConvergenceError("zf_large_system_rate: could not bracket chi");
    }
    for (int n = 0; n < 400 && hi - lo > s.tolerance * 1e-3 * std::max(1.0, hi); ++n) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    const double chi = 0.5 * (lo + hi);
    return std::log2(1.0 + rho / chi);
}

double zf_large_system_rate(const CorrelationModel& model, double beta, double rho, const FixedPointSettings& s,
                            const QuadratureSettings& q)
{
    return zf_large_system_rate(SpectralMeasure::of(model, q), beta, rho, s);
}

double sub_large_system_rate(const SpectralMeasure& measure, double beta, double rho)
{
    require(beta > 0.0 && rho > 0.0, "sub_large_system_rate: need beta > 0 and rho > 0");
    const double m1 = measure.expect([](double t) { return t; });
    const double m2 = measure.expect([](double t) { return t * t; });
    const double gain = 1.0 + rho * m1 * m1 / (beta * (rho * m2 + m1));
    const double loss = 1.0 + rho * m2 / m1;
    return positive_part(std::log2(gain / loss));
}

double sub_large_system_rate(const CorrelationModel& model, double beta, double rho, const QuadratureSettings& q)
{
    return sub_large_system_rate(SpectralMeasure::of(model, q), beta, rho);
}

double toeplitz_moment_ratio(double nu, double beta, double xi, double eta)
{
    const double a = xi * (1.0 + eta);
    const double nu2 = nu * nu;
    return (a * (1.0 + nu2) + beta * (1.0 - nu2)) / (a * (1.0 - nu2) + beta * (1.0 + nu2));
}

double toeplitz_exponential_rate(double nu, double beta, double xi, double rho, const FixedPointSettings& s,
                                 const QuadratureSettings& q)
{
    require(rho > 0.0, "toeplitz_exponential_rate: rho must be positive");
    const auto model = CorrelationModel::toeplitz_exponential(nu);
    const double eta = solve_eta(model, beta, xi, s, q);
    const double c = toeplitz_moment_ratio(nu, beta, xi, eta);
    return positive_part(rci_log_ratio(eta, c, beta, xi, rho));
}

}  // namespace secprec
