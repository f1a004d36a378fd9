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

#include "secprec/correlation.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "secprec/errors.hpp"
#include "secprec/quadrature.hpp"

namespace secprec {

CorrelationModel CorrelationModel::identity()
{
    return CorrelationModel{};
}

CorrelationModel CorrelationModel::toeplitz_exponential(double nu)
{
    // nu = 1 would make R rank one.
    require(std::isfinite(nu) && nu >= 0.0 && nu < 1.0, "toeplitz_exponential: nu must lie in [0, 1)");
    CorrelationModel model;
    model.kind_ = CorrelationKind::ToeplitzExponential;
    model.nu_ = nu;
    return model;
}

CorrelationModel CorrelationModel::explicit_matrix(const CMatrix& r)
{
    require(r.rows() >= 1 && r.rows() == r.cols(), "explicit_matrix: R must be square and non-empty");
    require(r.allFinite(), "explicit_matrix: R has non-finite entries");
    const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
    require((r - r.adjoint()).cwiseAbs().maxCoeff() <= 1e-8 * scale, "explicit_matrix: R is not Hermitian");

    const auto m = static_cast<double>(r.rows());
    const double mean_diag = r.diagonal().real().sum() / m;
    require(std::abs(mean_diag - 1.0) <= 0.1,
            "explicit_matrix: Tr(R)/M deviates from 1 by more than 10%");

    CMatrix normalized = 0.5 * (r + r.adjoint()) / mean_diag;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(normalized, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    require(lambda.minCoeff() > 0.0, "explicit_matrix: R must be positive definite");

    CorrelationModel model;
    model.kind_ = CorrelationKind::ExplicitMatrix;
    model.matrix_ = std::move(normalized);
    model.spectrum_.reserve(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        model.spectrum_.push_back({lambda[i], 1.0 / m});
    return model;
}

CorrelationModel CorrelationModel::explicit_spectrum(std::vector<SpectrumPoint> points)
{
    require(!points.empty(), "explicit_spectrum: at least one point is required");
    double total = 0.0;
    for (const auto& p : points) {
        require(std::isfinite(p.eigenvalue) && p.eigenvalue > 0.0,
                "explicit_spectrum: eigenvalues must be strictly positive");
        require(std::isfinite(p.weight) && p.weight >= 0.0, "explicit_spectrum: weights must be nonnegative");
        total += p.weight;
    }
    require(std::abs(total - 1.0) <= 1e-12, "explicit_spectrum: weights must sum to 1");
    CorrelationModel model;
    model.kind_ = CorrelationKind::ExplicitSpectrum;
    model.spectrum_ = std::move(points);
    return model;
}

const CMatrix& CorrelationModel::matrix() const
{
    require(kind_ == CorrelationKind::ExplicitMatrix, "CorrelationModel: no stored matrix for this kind");
    return matrix_;
}

const std::vector<SpectrumPoint>& CorrelationModel::spectrum() const
{
    require(kind_ == CorrelationKind::ExplicitMatrix || kind_ == CorrelationKind::ExplicitSpectrum,
            "CorrelationModel: no stored spectrum for this kind");
    return spectrum_;
}

std::string CorrelationModel::describe() const
{
    std::ostringstream out;
    switch (kind_) {
        case CorrelationKind::Identity:
            out << "identity";
            break;
        case CorrelationKind::ToeplitzExponential:
            out << "toeplitz_exp(nu=" << nu_ << ")";
            break;
        case CorrelationKind::ExplicitMatrix:
            out << "matrix(M=" << matrix_.rows() << ")";
            break;
        case CorrelationKind::ExplicitSpectrum:
            out << "spectrum(points=" << spectrum_.size() << ")";
            break;
    }
    return out.str();
}

void QuadratureSettings::validate() const
{
    require(node_count >= 2, "QuadratureSettings: node_count must be at least 2");
}

CMatrix build_correlation_matrix(const CorrelationModel& model, int m)
{
    require(m >= 1, "build_correlation_matrix: M must be positive");
    switch (model.kind()) {
        case CorrelationKind::Identity:
            return CMatrix::Identity(m, m);
        case CorrelationKind::ToeplitzExponential: {
            CMatrix r(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    r(i, j) = std::pow(model.nu(), std::abs(i - j));
            return r;
        }
        case CorrelationKind::ExplicitMatrix:
            require(model.matrix().rows() == m, "build_correlation_matrix: explicit matrix dimension mismatch");
            return model.matrix();
        case CorrelationKind::ExplicitSpectrum:
            break;
    }
    throw InvalidArgument("build_correlation_matrix: a bare spectrum does not define a matrix");
}

SpectralMeasure::SpectralMeasure(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points))
    , weights_(std::move(weights))
{
    require(!points_.empty() && points_.size() == weights_.size(), "SpectralMeasure: size mismatch");
}

namespace {

double toeplitz_symbol(double nu, double omega)
{
    return (1.0 - nu * nu) / (1.0 - 2.0 * nu * std::cos(omega) + nu * nu);
}

SpectralMeasure toeplitz_measure(double nu, const QuadratureSettings& q)
{
    const int n = q.node_count;
    std::vector<double> points(n);
    std::vector<double> weights(n);
    switch (q.scheme) {
        case QuadratureScheme::UniformAngle:
            for (int i = 0; i < n; ++i) {
                points[i] = toeplitz_symbol(nu, std::numbers::pi * (i + 0.5) / n);
                weights[i] = 1.0 / n;
            }
            break;
        case QuadratureScheme::GaussLegendreAngle: {
            const QuadratureRule& rule = gauss_legendre(n);
            for (int i = 0; i < n; ++i) {
                points[i] = toeplitz_symbol(nu, 0.5 * std::numbers::pi * (rule.nodes[i] + 1.0));
                weights[i] = 0.5 * rule.weights[i];
            }
            break;
        }
        case QuadratureScheme::DiscreteSpectrumSum: {
            const CMatrix r = build_correlation_matrix(CorrelationModel::toeplitz_exponential(nu), n);
            Eigen::SelfAdjointEigenSolver<CMatrix> eig(r, Eigen::EigenvaluesOnly);
            for (int i = 0; i < n; ++i) {
                points[i] = eig.eigenvalues()[i];
                weights[i] = 1.0 / n;
            }
            break;
        }
    }
    // Normalize so the measure has unit mass up to rounding of the sum.
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (double& w : weights)
        w /= total;
    return SpectralMeasure(std::move(points), std::move(weights));
}

SpectralMeasure from_points(const std::vector<SpectrumPoint>& spectrum)
{
    std::vector<double> points;
    std::vector<double> weights;
    points.reserve(spectrum.size());
    weights.reserve(spectrum.size());
    for (const auto& p : spectrum) {
        points.push_back(p.eigenvalue);
        weights.push_back(p.weight);
    }
    return SpectralMeasure(std::move(points), std::move(weights));
}

}  // namespace

SpectralMeasure SpectralMeasure::of(const CorrelationModel& model, const QuadratureSettings& q)
{
    q.validate();
    switch (model.kind()) {
        case CorrelationKind::Identity:
            return SpectralMeasure({1.0}, {1.0});
        case CorrelationKind::ToeplitzExponential:
            // nu = 0 is the identity; use the exact point mass.
            if (model.nu() == 0.0)
                return SpectralMeasure({1.0}, {1.0});
            return toeplitz_measure(model.nu(), q);
        case CorrelationKind::ExplicitMatrix:
        case CorrelationKind::ExplicitSpectrum:
            return from_points(model.spectrum());
    }
    throw InvalidArgument("SpectralMeasure: unknown correlation kind");
}

double spectral_expectation(const CorrelationModel& model, const std::function<double(double)>& f,
                            const QuadratureSettings& q)
{
    return SpectralMeasure::of(model, q).expect(f);
}

double moment_e_ij(const SpectralMeasure& measure, int i, int j, double xi, double eta, double beta)
{
    require(i >= 1 && i <= 3 && j >= 1 && j <= 3, "moment_e_ij: indices must lie in {1,2,3}");
    require(xi > 0.0 && beta > 0.0 && eta >= 0.0, "moment_e_ij: need xi > 0, beta > 0, eta >= 0");
    const double a = xi * (1.0 + eta);
    return measure.expect([&](double t) { return std::pow(t, i) / std::pow(a + beta * t, j); });
}

double moment_e_ij(const CorrelationModel& model, int i, int j, double xi, double eta, double beta,
                   const QuadratureSettings& q)
{
    return moment_e_ij(SpectralMeasure::of(model, q), i, j, xi, eta, beta);
}

MomentTable moment_table(const SpectralMeasure& measure, double xi, double eta, double beta)
{
    require(xi > 0.0 && beta > 0.0 && eta >= 0.0, "moment_table: need xi > 0, beta > 0, eta >= 0");
    const double a = xi * (1.0 + eta);
    MomentTable m;
    const auto points = measure.points();
    const auto weights = measure.weights();
    for (std::size_t k = 0; k < points.size(); ++k) {
        const double t = points[k];
        const double inv = 1.0 / (a + beta * t);
        const double w = weights[k];
        const double t_inv2 = t * inv * inv;
        const double t_inv3 = t_inv2 * inv;
        m.e12 += w * t_inv2;
        m.e22 += w * t * t_inv2;
        m.e13 += w * t_inv3;
        m.e23 += w * t * t_inv3;
        m.e33 += w * t * t * t_inv3;
    }
    return m;
}

}  // namespace secprec
