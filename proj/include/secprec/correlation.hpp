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

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace secprec {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class CorrelationKind { Identity, ToeplitzExponential, ExplicitMatrix, ExplicitSpectrum };

struct SpectrumPoint {
    double eigenvalue;
    double weight;
};

/// Transmit-side correlation R shared by every user.
///
/// Instances are validated on construction and immutable afterwards. An
/// explicit matrix is rescaled so that Tr(R)/M = 1 (unit average channel
/// gain); inputs whose trace is off by more than 10% are rejected rather
/// than silently rescaled.
class CorrelationModel {
 public:
    static CorrelationModel identity();
    /// r_ij = nu^|i-j|, 0 <= nu < 1.
    static CorrelationModel toeplitz_exponential(double nu);
    static CorrelationModel explicit_matrix(const CMatrix& r);
    /// Discrete limiting eigenvalue law; weights must sum to one.
    static CorrelationModel explicit_spectrum(std::vector<SpectrumPoint> points);

    CorrelationKind kind() const { return kind_; }
    /// Correlation coefficient; zero for anything but ToeplitzExponential.
    double nu() const { return nu_; }
    /// Normalized matrix (ExplicitMatrix only).
    const CMatrix& matrix() const;
    /// Eigenvalue law (ExplicitMatrix and ExplicitSpectrum only).
    const std::vector<SpectrumPoint>& spectrum() const;
    std::string describe() const;

 private:
    CorrelationModel() = default;

    CorrelationKind kind_ = CorrelationKind::Identity;
    double nu_ = 0.0;
    CMatrix matrix_;
    std::vector<SpectrumPoint> spectrum_;
};

enum class QuadratureScheme {
    UniformAngle,        // midpoint rule on the Toeplitz symbol angle
    GaussLegendreAngle,  // Gauss-Legendre on the same angle
    DiscreteSpectrumSum  // eigenvalues of a node_count x node_count matrix
};

struct QuadratureSettings {
    int node_count = 2048;
    QuadratureScheme scheme = QuadratureScheme::GaussLegendreAngle;

    void validate() const;
};

CMatrix build_correlation_matrix(const CorrelationModel& model, int m);

/// Discretized eigenvalue distribution: expectations become weighted sums.
///
/// For the Toeplitz-exponential model the limiting law is represented
/// through the Szego symbol t(w) = (1 - nu^2) / (1 - 2 nu cos w + nu^2) with
/// w uniform on [0, 2 pi); by symmetry only [0, pi] is sampled.
class SpectralMeasure {
 public:
    SpectralMeasure(std::vector<double> points, std::vector<double> weights);

    static SpectralMeasure of(const CorrelationModel& model, const QuadratureSettings& q = {});

    std::span<const double> points() const { return points_; }
    std::span<const double> weights() const { return weights_; }
    std::size_t size() const { return points_.size(); }

    template <class F>
    double expect(F&& f) const
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i)
            sum += weights_[i] * f(points_[i]);
        return sum;
    }

 private:
    std::vector<double> points_;
    std::vector<double> weights_;
};

double spectral_expectation(const CorrelationModel& model, const std::function<double(double)>& f,
                            const QuadratureSettings& q = {});

/// E_ij = E[T^i / (xi (1 + eta) + beta T)^j] for i in {1,2,3}, j in {1,2,3}.
double moment_e_ij(const SpectralMeasure& measure, int i, int j, double xi, double eta, double beta);
double moment_e_ij(const CorrelationModel& model, int i, int j, double xi, double eta, double beta,
                   const QuadratureSettings& q = {});

/// The moments the rate and its xi-derivative need, from one pass.
struct MomentTable {
    double e12 = 0.0;
    double e22 = 0.0;
    double e13 = 0.0;
    double e23 = 0.0;
    double e33 = 0.0;
};

MomentTable moment_table(const SpectralMeasure& measure, double xi, double eta, double beta);

}  // namespace secprec
