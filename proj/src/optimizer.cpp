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

#include "secprec/optimizer.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "secprec/errors.hpp"
#include "secprec/secrecy.hpp"

namespace secprec {

std::string to_string(XiMethod method)
{
    switch (method) {
        case XiMethod::FixedPoint:
            return "fixed-point";
        case XiMethod::DerivativeBisection:
            return "derivative-bisection";
        case XiMethod::GoldenSection:
            return "golden-section";
    }
    return "unknown";
}

DerivativeBundle rate_derivative_wrt_xi(const SpectralMeasure& measure, double beta, double rho, double xi,
                                        const FixedPointSettings& s)
{
    const DeterministicEquivalent de = rci_large_system_rate(measure, beta, xi, rho, s);
    const MomentTable& m = de.moments;
    const double eta = de.eta;
    const double one_eta = 1.0 + eta;

    DerivativeBundle d;
    d.eta = eta;
    d.moments = m;
    d.eta_prime = de.eta_prime;
    d.log_ratio = de.log_ratio;
    const double da = one_eta + xi * d.eta_prime;  // d/dxi of xi (1 + eta)
    d.e12_prime = -2.0 * da * m.e13;
    d.e22_prime = -2.0 * da * m.e23;
    d.moment_cross = -2.0 * beta * da * (m.e13 * m.e33 - m.e23 * m.e23);
    d.chi = one_eta * one_eta * m.e12;
    d.z = (beta * m.e22 + xi * d.chi) * (rho * m.e22 + d.chi);
    d.psi = (beta * m.e22 + xi * d.chi) / (rho * m.e22 + d.chi);
    d.lambda_c = (2.0 * d.eta_prime * one_eta * m.e12 * m.e22 + one_eta * one_eta * d.moment_cross) / d.eta_prime;
    d.phi = rho * rho * d.psi * eta * d.lambda_c / (beta * d.z);

    if (de.log_ratio <= 0.0) {
        d.clamped = true;
        d.derivative = 0.0;
        return d;
    }
    const double scale = d.eta_prime / (std::exp2(de.log_ratio) * rho * d.chi * d.chi * beta *
                                        std::pow(1.0 + rho * m.e22 / d.chi, 2) * std::log(2.0));
    d.derivative = scale * (d.phi * (rho * xi - beta) * (d.chi * d.chi + rho * d.chi * m.e22) * beta +
                            rho * rho * d.lambda_c * (beta + rho * eta * d.psi));
    return d;
}

DerivativeBundle rate_derivative_wrt_xi(const CorrelationModel& model, double beta, double rho, double xi,
                                        const FixedPointSettings& s, const QuadratureSettings& q)
{
    return rate_derivative_wrt_xi(SpectralMeasure::of(model, q), beta, rho, xi, s);
}

double optimal_xi_map(const SpectralMeasure& measure, double beta, double rho, double xi, const FixedPointSettings& s)
{
    const double eta = solve_eta(measure, beta, xi, s).eta;
    const MomentTable m = moment_table(measure, xi, eta, beta);
    return beta * ((eta * eta - 1.0) * m.e12 - rho * m.e22) / (2.0 * rho * eta * (1.0 + eta) * m.e12);
}

namespace {

constexpr int kScanPoints = 121;

struct Golden {
    double x = 0.0;
    double value = 0.0;
    double width = 0.0;
    int evaluations = 0;
};

// Maximizes f on [lo, hi]; returns the best point evaluated.
Golden golden_section_max(const std::function<double(double)>& f, double lo, double hi, double width_tol)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    Golden best{x1, f1, hi - lo, 2};
    if (f2 > best.value)
        best = {x2, f2, hi - lo, 2};
    while (hi - lo > width_tol && best.evaluations < 500) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
            if (f1 > best.value) {
                best.x = x1;
                best.value = f1;
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
            if (f2 > best.value) {
                best.x = x2;
                best.value = f2;
            }
        }
        ++best.evaluations;
    }
    best.width = hi - lo;
    return best;
}

std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> grid(n);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int i = 0; i < n; ++i)
        grid[i] = std::exp(a + (b - a) * i / (n - 1));
    return grid;
}

}  // namespace

XiSolution optimal_xi_large_system(const SpectralMeasure& measure, double beta, double rho,
                                   const FixedPointSettings& s, XiBracket bracket)
{
    require(beta > 0.0 && rho > 0.0, "optimal_xi_large_system: need beta > 0 and rho > 0");
    require(bracket.lo > 0.0 && bracket.lo < bracket.hi, "optimal_xi_large_system: invalid bracket");
    s.validate();
    auto rate = [&](double xi) { return rci_large_system_rate(measure, beta, xi, rho, s).rate; };

    const std::vector<double> grid = log_grid(bracket.lo, bracket.hi, kScanPoints);
    std::vector<double> grid_rates(grid.size());
    std::size_t grid_best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid_rates[i] = rate(grid[i]);
        if (grid_rates[i] > grid_rates[grid_best])
            grid_best = i;
    }
    const double grid_max = grid_rates[grid_best];

    // Damped fixed point from the no-secrecy optimum.
    {
        double xi = beta / rho;
        int iterations = 0;
        bool ok = false;
        for (; iterations < std::min(s.max_iterations, 2000); ++iterations) {
            if (!(xi >= bracket.lo && xi <= bracket.hi))
                break;
            const double target = optimal_xi_map(measure, beta, rho, xi, s);
            if (!std::isfinite(target))
                break;
            // A non-positive image means xi sits above the admissible
            // region; step back toward small xi where the map is positive.
            if (target <= 0.0) {
                xi *= 0.5;
                continue;
            }
            const double next = 0.5 * xi + 0.5 * target;
            if (std::abs(next - xi) <= 1e-13 * xi) {
                xi = next;
                ok = true;
                ++iterations;
                break;
            }
            xi = next;
        }
        if (ok && xi >= bracket.lo && xi <= bracket.hi) {
            XiSolution sol;
            sol.xi = xi;
            sol.rate = rate(xi);
            if (sol.rate > 0.0 && sol.rate >= grid_max - 1e-12) {
                sol.method = XiMethod::FixedPoint;
                sol.residual = std::abs(xi - optimal_xi_map(measure, beta, rho, xi, s));
                sol.iterations = iterations;
                sol.converged = true;
                return sol;
            }
        }
    }

    // Sign scan of dR/dxi; each + to - crossing brackets a local maximum.
    auto derivative = [&](double xi) { return rate_derivative_wrt_xi(measure, beta, rho, xi, s).derivative; };
    XiSolution best;
    bool have_candidate = false;
    int iterations = 0;
    double prev = derivative(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = derivative(grid[i]);
        if (prev > 0.0 && cur < 0.0) {
            double lo = std::log(grid[i - 1]);
            double hi = std::log(grid[i]);
            while (hi - lo > 1e-13) {
                const double mid = 0.5 * (lo + hi);
                (derivative(std::exp(mid)) > 0.0 ? lo : hi) = mid;
                ++iterations;
            }
            const double xi = std::exp(0.5 * (lo + hi));
            const double r = rate(xi);
            if (!have_candidate || r > best.rate) {
                best.xi = xi;
                best.rate = r;
                best.residual = std::abs(derivative(xi));
                have_candidate = true;
            }
        }
        prev = cur;
    }
    if (have_candidate && best.rate > 0.0 && best.rate >= grid_max - 1e-12) {
        best.method = XiMethod::DerivativeBisection;
        best.iterations = iterations;
        best.converged = true;
        return best;
    }

    // Golden section around the best grid point.
    const std::size_t lo_i = grid_best == 0 ? 0 : grid_best - 1;
    const std::size_t hi_i = std::min(grid.size() - 1, grid_best + 1);
    const Golden g =
        golden_section_max([&](double x) { return rate(std::exp(x)); }, std::log(grid[lo_i]), std::log(grid[hi_i]), 1e-10);
    XiSolution sol;
    sol.method = XiMethod::GoldenSection;
    sol.iterations = g.evaluations;
    sol.residual = g.width;
    if (g.value >= grid_max) {
        sol.xi = std::exp(g.x);
        sol.rate = g.value;
    } else {
        sol.xi = grid[grid_best];
        sol.rate = grid_max;
    }
    // A maximizer pinned at the bracket edge (or a rate that is zero
    // everywhere) is not a stationary point.
    const double edge_tol = 1e-6;
    const bool at_edge = std::abs(std::log(sol.xi / bracket.lo)) < edge_tol ||
                         std::abs(std::log(sol.xi / bracket.hi)) < edge_tol || grid_best == 0 ||
                         grid_best == grid.size() - 1;
    if (grid_max <= 0.0) {
        sol.xi = bracket.hi;
        sol.rate = 0.0;
        sol.boundary_warning = true;
        sol.flat_objective = true;
    } else if (at_edge) {
        sol.xi = grid_best == 0 ? bracket.lo : grid_best == grid.size() - 1 ? bracket.hi : sol.xi;
        sol.rate = rate(sol.xi);
        sol.boundary_warning = true;
    } else {
        sol.converged = true;
    }
    return sol;
}

XiSolution optimal_xi_large_system(const CorrelationModel& model, double beta, double rho,
                                   const FixedPointSettings& s, const QuadratureSettings& q, XiBracket bracket)
{
    return optimal_xi_large_system(SpectralMeasure::of(model, q), beta, rho, s, bracket);
}

XiSolution optimal_xi_finite(const CMatrix& h, double rho, XiBracket bracket, std::optional<double> hint)
{
    require(bracket.lo > 0.0 && bracket.lo < bracket.hi, "optimal_xi_finite: invalid bracket");
    require(rho > 0.0, "optimal_xi_finite: rho must be positive");
    auto objective = [&](double log_xi) { return rci_secrecy_sum_rate(h, std::exp(log_xi), rho); };

    constexpr int kGrid = 41;
    const std::vector<double> grid = log_grid(bracket.lo, bracket.hi, kGrid);
    std::vector<double> values(kGrid);
    std::size_t best_i = 0;
    double lowest = 0.0;
    for (int i = 0; i < kGrid; ++i) {
        values[i] = objective(std::log(grid[i]));
        if (values[i] > values[best_i])
            best_i = i;
        lowest = i == 0 ? values[i] : std::min(lowest, values[i]);
    }

    XiSolution sol;
    sol.method = XiMethod::GoldenSection;
    sol.xi = grid[best_i];
    sol.rate = values[best_i];
    sol.iterations = kGrid;

    if (values[best_i] - lowest <= 1e-12 * std::max(1.0, std::abs(values[best_i]))) {
        sol.flat_objective = true;
        sol.converged = true;
        if (hint && *hint >= bracket.lo && *hint <= bracket.hi)
            sol.xi = *hint;
        sol.rate = objective(std::log(sol.xi));
        return sol;
    }

    const std::size_t lo_i = best_i == 0 ? 0 : best_i - 1;
    const std::size_t hi_i = std::min<std::size_t>(kGrid - 1, best_i + 1);
    const Golden g = golden_section_max(objective, std::log(grid[lo_i]), std::log(grid[hi_i]), std::log1p(1e-4));
    sol.iterations += g.evaluations;
    sol.residual = g.width;
    sol.converged = true;
    if (g.value > sol.rate) {
        sol.xi = std::exp(g.x);
        sol.rate = g.value;
    }
    if (hint && *hint >= bracket.lo && *hint <= bracket.hi) {
        const double at_hint = objective(std::log(*hint));
        ++sol.iterations;
        if (at_hint > sol.rate) {
            sol.xi = *hint;
            sol.rate = at_hint;
        }
    }
    sol.boundary_warning = best_i == 0 || best_i == kGrid - 1;
    return sol;
}

}  // namespace secprec
