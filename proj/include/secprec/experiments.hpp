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

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "secprec/asymptotics.hpp"
#include "secprec/channel.hpp"
#include "secprec/optimizer.hpp"
#include "secprec/records.hpp"

namespace secprec {

double db_to_linear(double db);

enum class XiPolicyKind { LargeSystemOptimal, PerRealizationOptimal, Fixed };

struct XiPolicy {
    XiPolicyKind kind = XiPolicyKind::LargeSystemOptimal;
    double value = 0.0;  // Fixed only

    std::string name() const;
    static XiPolicy parse(const std::string& text);
};

struct ExperimentConfig {
    std::vector<SystemDims> dims_list;
    CorrelationModel model = CorrelationModel::toeplitz_exponential(0.5);
    std::vector<double> rho_db_grid;
    XiPolicy xi_policy;
    int trials = 100;
    std::uint64_t base_seed = 1;
    std::string output_path;
    bool ergodic_gamma = false;  // average gamma over trials before computing rates
    int threads = 1;
    FixedPointSettings solver;
    QuadratureSettings quadrature;
    XiBracket bracket;

    void validate() const;
};

/// Seed of trial `index` under `base`: base XOR index.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

/// Runs fn(0..count-1) on up to `threads` workers. fn must write only to
/// its own index.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

/// Monte Carlo RCI secrecy rates vs the deterministic equivalent.
///
/// For every (dims, rho) pair: one "fig1" record per trial followed by one
/// "fig1-mean" aggregate row whose flags carry the trial count, the
/// standard error of the per-antenna sum rate and the number of failed
/// trials. Failures annotate rows instead of aborting the sweep.
std::vector<TrialRecord> ergodic_rate_sweep(const ExperimentConfig& cfg);

struct LossPoint {
    double nu = 0.0;
    double rho_db = 0.0;
    double loss = 0.0;
    double rate_correlated = 0.0;
    double rate_uncorrelated = 0.0;
    double xi_correlated = 0.0;
    double xi_uncorrelated = 0.0;
    bool undefined = false;  // uncorrelated rate is zero
};

/// (R_uncorr - R_corr) / R_uncorr, each at its own optimal xi.
std::vector<LossPoint> relative_loss_curve(double beta, const std::vector<double>& rho_db_grid,
                                           const std::vector<double>& nu_grid, const FixedPointSettings& s = {},
                                           const QuadratureSettings& q = {});
std::vector<TrialRecord> loss_records(double beta, const std::vector<LossPoint>& points);

struct CcdfSettings {
    std::vector<int> m_list{8, 16, 32};
    double beta = 1.0;
    double rho_db = 10.0;
    double nu = 0.5;
    int trials = 500;
    std::uint64_t base_seed = 7;
    int threads = 1;
    FixedPointSettings solver;
    QuadratureSettings quadrature;
    XiBracket bracket;
};

struct CcdfCurve {
    int m = 0;
    int k = 0;
    double xi_large_system = 0.0;
    double deterministic_rate = 0.0;
    std::vector<double> gaps;                       // sorted ascending
    std::vector<std::pair<double, double>> points;  // (gap, P(G > gap)); starts at (0, 1)
    double mean_gap = 0.0;
    int excluded = 0;
    std::vector<TrialRecord> records;  // per trial, then a "fig3-mean" row
};

/// Normalized loss from using the large-system xi instead of the
/// per-realization optimum: gap = (R_s(xi*) - R_s(xi_ls)) / R_s(xi*).
std::vector<CcdfCurve> ccdf_xi_gap(const CcdfSettings& settings);

std::string ccdf_to_csv(const std::vector<CcdfCurve>& curves);

}  // namespace secprec
