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

#include "secprec/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>
#include <thread>

#include "secprec/errors.hpp"
#include "secprec/precoders.hpp"
#include "secprec/secrecy.hpp"

namespace secprec {

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

std::string XiPolicy::name() const
{
    switch (kind) {
        case XiPolicyKind::LargeSystemOptimal:
            return "large-system-optimal";
        case XiPolicyKind::PerRealizationOptimal:
            return "per-realization-optimal";
        case XiPolicyKind::Fixed:
            return "fixed(" + format_double(value) + ")";
    }
    return "unknown";
}

XiPolicy XiPolicy::parse(const std::string& text)
{
    if (text == "large-system-optimal" || text == "large")
        return {XiPolicyKind::LargeSystemOptimal, 0.0};
    if (text == "per-realization-optimal" || text == "per-realization")
        return {XiPolicyKind::PerRealizationOptimal, 0.0};
    std::string number = text;
    if (number.rfind("fixed(", 0) == 0 && number.back() == ')')
        number = number.substr(6, number.size() - 7);
    else if (number.rfind("fixed:", 0) == 0)
        number = number.substr(6);
    try {
        std::size_t used = 0;
        const double v = std::stod(number, &used);
        if (used == number.size() && v > 0.0)
            return {XiPolicyKind::Fixed, v};
    } catch (const std::exception&) {
    }
    throw InvalidArgument("xi policy: expected large-system-optimal, per-realization-optimal or a positive value, got '" +
                          text + "'");
}

void ExperimentConfig::validate() const
{
    require(!dims_list.empty(), "ExperimentConfig: dims_list is empty");
    require(!rho_db_grid.empty(), "ExperimentConfig: rho grid is empty");
    require(trials >= 1, "ExperimentConfig: trials must be at least 1");
    require(threads >= 1, "ExperimentConfig: threads must be at least 1");
    require(!(ergodic_gamma && xi_policy.kind == XiPolicyKind::PerRealizationOptimal),
            "ExperimentConfig: ergodic gamma needs a xi shared by all trials");
    for (double db : rho_db_grid)
        require(std::isfinite(db), "ExperimentConfig: rho grid has a non-finite entry");
    solver.validate();
    quadrature.validate();
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index)
{
    return base ^ index;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn)
{
    const int workers = std::max(1, std::min(threads, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = next++; i < count; i = next++)
                    fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

namespace {

std::string error_flag(const std::exception& e)
{
    return std::string("error=") + e.what();
}

void append_flag(std::string& flags, const std::string& flag)
{
    if (!flags.empty())
        flags += ';';
    flags += flag;
}

struct TrialOutcome {
    double xi = 0.0;
    double sum_rate = 0.0;
    double gamma = 0.0;
    bool failed = false;
    std::string flags;
};

}  // namespace

std::vector<TrialRecord> ergodic_rate_sweep(const ExperimentConfig& cfg)
{
    cfg.validate();
    const SpectralMeasure measure = SpectralMeasure::of(cfg.model, cfg.quadrature);
    std::vector<TrialRecord> records;

    for (const SystemDims& dims : cfg.dims_list) {
        const double beta = dims.beta();
        for (double rho_db : cfg.rho_db_grid) {
            const double rho = db_to_linear(rho_db);
            std::string setup_flags;

            // Reference xi: the shared xi of the policy, or the large-system
            // optimum (warm start and deterministic reference) otherwise.
            std::optional<double> shared_xi;
            double reference_xi = cfg.xi_policy.value;
            try {
                if (cfg.xi_policy.kind != XiPolicyKind::Fixed) {
                    const XiSolution sol = optimal_xi_large_system(measure, beta, rho, cfg.solver, cfg.bracket);
                    reference_xi = sol.xi;
                    append_flag(setup_flags, "xi_method=" + to_string(sol.method));
                    if (sol.boundary_warning)
                        append_flag(setup_flags, "xi_boundary");
                }
                if (cfg.xi_policy.kind != XiPolicyKind::PerRealizationOptimal)
                    shared_xi = reference_xi;
            } catch (const Error& e) {
                append_flag(setup_flags, error_flag(e));
            }

            double deterministic = 0.0;
            bool have_deterministic = false;
            if (reference_xi > 0.0) {
                try {
                    deterministic = rci_large_system_rate(measure, beta, reference_xi, rho, cfg.solver).rate;
                    have_deterministic = true;
                } catch (const Error& e) {
                    append_flag(setup_flags, error_flag(e));
                }
            }

            std::vector<TrialOutcome> outcomes(cfg.trials);
            const bool setup_failed = cfg.xi_policy.kind != XiPolicyKind::PerRealizationOptimal && !shared_xi;

            std::optional<double> ergodic_gamma;
            if (cfg.ergodic_gamma && !setup_failed) {
                std::vector<double> gammas(cfg.trials, 0.0);
                parallel_for(cfg.trials, cfg.threads, [&](int t) {
                    const auto ch = sample_channel(dims, cfg.model, trial_seed(cfg.base_seed, t));
                    gammas[t] = rci_precoder(ch.h, *shared_xi).gamma;
                });
                ergodic_gamma = std::accumulate(gammas.begin(), gammas.end(), 0.0) / cfg.trials;
            }

            parallel_for(cfg.trials, cfg.threads, [&](int t) {
                TrialOutcome& out = outcomes[t];
                if (setup_failed) {
                    out.failed = true;
                    out.flags = "setup_failed";
                    return;
                }
                try {
                    const auto ch = sample_channel(dims, cfg.model, trial_seed(cfg.base_seed, t));
                    if (shared_xi) {
                        out.xi = *shared_xi;
                    } else {
                        out.xi = optimal_xi_finite(ch.h, rho, cfg.bracket,
                                                   reference_xi > 0.0 ? std::optional(reference_xi) : std::nullopt)
                                     .xi;
                    }
                    PrecoderOutput p = rci_precoder(ch.h, out.xi);
                    out.gamma = p.gamma;
                    if (ergodic_gamma) {
                        p.gamma = *ergodic_gamma;
                        out.flags = "ergodic_gamma";
                    }
                    out.sum_rate = per_user_secrecy_rates(ch.h, p, rho).sum_rate;
                } catch (const Error& e) {
                    out.failed = true;
                    out.flags = error_flag(e);
                }
            });

            double sum_antenna = 0.0;
            double sum_sq_antenna = 0.0;
            int used = 0;
            for (int t = 0; t < cfg.trials; ++t) {
                const TrialOutcome& out = outcomes[t];
                TrialRecord r;
                r.experiment = "fig1";
                r.m = dims.m;
                r.k = dims.k;
                r.beta = beta;
                r.nu = cfg.model.nu();
                r.rho_db = rho_db;
                r.xi_policy = cfg.xi_policy.name();
                r.xi_used = out.xi;
                r.seed = trial_seed(cfg.base_seed, t);
                r.per_antenna_sum_rate = out.sum_rate / dims.m;
                r.per_user_mean_rate = out.sum_rate / dims.k;
                r.deterministic_rate = deterministic;
                r.flags = out.flags;
                if (have_deterministic && deterministic > 0.0)
                    r.gap = std::abs(r.per_user_mean_rate - deterministic) / deterministic;
                if (!out.failed) {
                    sum_antenna += r.per_antenna_sum_rate;
                    sum_sq_antenna += r.per_antenna_sum_rate * r.per_antenna_sum_rate;
                    ++used;
                }
                records.push_back(std::move(r));
            }

            TrialRecord agg;
            agg.experiment = "fig1-mean";
            agg.m = dims.m;
            agg.k = dims.k;
            agg.beta = beta;
            agg.nu = cfg.model.nu();
            agg.rho_db = rho_db;
            agg.xi_policy = cfg.xi_policy.name();
            agg.xi_used = reference_xi;
            agg.seed = cfg.base_seed;
            agg.deterministic_rate = deterministic;
            double se = 0.0;
            if (used > 0) {
                const double mean = sum_antenna / used;
                agg.per_antenna_sum_rate = mean;
                agg.per_user_mean_rate = mean * dims.m / dims.k;
                if (used > 1) {
                    const double var = std::max(0.0, (sum_sq_antenna - used * mean * mean) / (used - 1));
                    se = std::sqrt(var / used);
                }
                if (have_deterministic && deterministic > 0.0)
                    agg.gap = std::abs(agg.per_user_mean_rate - deterministic) / deterministic;
            }
            agg.flags = "trials=" + std::to_string(used) + ";se=" + format_double(se) +
                        ";excluded=" + std::to_string(cfg.trials - used);
            if (!setup_flags.empty())
                agg.flags += ";" + setup_flags;
            records.push_back(std::move(agg));
        }
    }
    return records;
}

std::vector<LossPoint> relative_loss_curve(double beta, const std::vector<double>& rho_db_grid,
                                           const std::vector<double>& nu_grid, const FixedPointSettings& s,
                                           const QuadratureSettings& q)
{
    require(beta > 0.0, "relative_loss_curve: beta must be positive");
    std::vector<LossPoint> points;
    const SpectralMeasure white = SpectralMeasure::of(CorrelationModel::identity(), q);
    for (double rho_db : rho_db_grid) {
        const double rho = db_to_linear(rho_db);
        const XiSolution uncorrelated = optimal_xi_large_system(white, beta, rho, s);
        const double reference = uncorrelated_closed_form(beta, uncorrelated.xi, rho);
        for (double nu : nu_grid) {
            const SpectralMeasure measure = SpectralMeasure::of(CorrelationModel::toeplitz_exponential(nu), q);
            const XiSolution correlated = optimal_xi_large_system(measure, beta, rho, s);
            LossPoint p;
            p.nu = nu;
            p.rho_db = rho_db;
            p.xi_uncorrelated = uncorrelated.xi;
            p.xi_correlated = correlated.xi;
            p.rate_uncorrelated = reference;
            p.rate_correlated = rci_large_system_rate(measure, beta, correlated.xi, rho, s).rate;
            if (reference > 0.0)
                p.loss = (reference - p.rate_correlated) / reference;
            else
                p.undefined = true;
            points.push_back(p);
        }
    }
    return points;
}

std::vector<TrialRecord> loss_records(double beta, const std::vector<LossPoint>& points)
{
    std::vector<TrialRecord> records;
    records.reserve(points.size());
    for (const LossPoint& p : points) {
        TrialRecord r;
        r.experiment = "fig2";
        r.beta = beta;
        r.nu = p.nu;
        r.rho_db = p.rho_db;
        r.xi_policy = "large-system-optimal";
        r.xi_used = p.xi_correlated;
        r.per_antenna_sum_rate = beta * p.rate_correlated;
        r.per_user_mean_rate = p.rate_uncorrelated;
        r.deterministic_rate = p.rate_correlated;
        r.gap = p.loss;
        r.flags = "xi_uncorrelated=" + format_double(p.xi_uncorrelated);
        if (p.undefined)
            r.flags += ";loss_undefined";
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<CcdfCurve> ccdf_xi_gap(const CcdfSettings& settings)
{
    require(!settings.m_list.empty(), "ccdf_xi_gap: M list is empty");
    require(settings.trials >= 1, "ccdf_xi_gap: trials must be at least 1");
    require(settings.beta > 0.0, "ccdf_xi_gap: beta must be positive");
    const auto model = CorrelationModel::toeplitz_exponential(settings.nu);
    const SpectralMeasure measure = SpectralMeasure::of(model, settings.quadrature);
    const double rho = db_to_linear(settings.rho_db);
    const XiSolution large = optimal_xi_large_system(measure, settings.beta, rho, settings.solver, settings.bracket);
    const double deterministic = rci_large_system_rate(measure, settings.beta, large.xi, rho, settings.solver).rate;

    std::vector<CcdfCurve> curves;
    for (int m : settings.m_list) {
        const int k = std::max(1, static_cast<int>(std::lround(settings.beta * m)));
        const SystemDims dims(m, k);
        CcdfCurve curve;
        curve.m = m;
        curve.k = k;
        curve.xi_large_system = large.xi;
        curve.deterministic_rate = deterministic;

        struct Outcome {
            double xi_star = 0.0;
            double best = 0.0;
            double at_large = 0.0;
        };
        std::vector<Outcome> outcomes(settings.trials);
        parallel_for(settings.trials, settings.threads, [&](int t) {
            const auto ch = sample_channel(dims, model, trial_seed(settings.base_seed, t));
            const XiSolution fin = optimal_xi_finite(ch.h, rho, settings.bracket, large.xi);
            outcomes[t] = {fin.xi, fin.rate, rci_secrecy_sum_rate(ch.h, large.xi, rho)};
        });

        double gap_sum = 0.0;
        for (int t = 0; t < settings.trials; ++t) {
            const Outcome& o = outcomes[t];
            TrialRecord r;
            r.experiment = "fig3";
            r.m = m;
            r.k = k;
            r.beta = dims.beta();
            r.nu = settings.nu;
            r.rho_db = settings.rho_db;
            r.xi_policy = "per-realization-optimal";
            r.xi_used = o.xi_star;
            r.seed = trial_seed(settings.base_seed, t);
            r.per_antenna_sum_rate = o.best / m;
            r.per_user_mean_rate = o.best / k;
            r.deterministic_rate = deterministic;
            r.flags = "rate_large_xi=" + format_double(o.at_large);
            if (o.best > 0.0) {
                r.gap = (o.best - o.at_large) / o.best;
                curve.gaps.push_back(r.gap);
                gap_sum += r.gap;
            } else {
                r.flags += ";excluded";
                ++curve.excluded;
            }
            curve.records.push_back(std::move(r));
        }

        std::sort(curve.gaps.begin(), curve.gaps.end());
        const auto n = static_cast<double>(curve.gaps.size());
        curve.points.emplace_back(0.0, 1.0);
        for (std::size_t i = 0; i < curve.gaps.size(); ++i) {
            // Last of a run of ties carries P(G > g).
            if (i + 1 < curve.gaps.size() && curve.gaps[i + 1] == curve.gaps[i])
                continue;
            curve.points.emplace_back(curve.gaps[i], (n - static_cast<double>(i + 1)) / n);
        }
        curve.mean_gap = curve.gaps.empty() ? 0.0 : gap_sum / n;

        TrialRecord agg;
        agg.experiment = "fig3-mean";
        agg.m = m;
        agg.k = k;
        agg.beta = dims.beta();
        agg.nu = settings.nu;
        agg.rho_db = settings.rho_db;
        agg.xi_policy = "large-system-optimal";
        agg.xi_used = large.xi;
        agg.seed = settings.base_seed;
        agg.deterministic_rate = deterministic;
        agg.gap = curve.mean_gap;
        agg.flags = "trials=" + std::to_string(curve.gaps.size()) + ";excluded=" + std::to_string(curve.excluded) +
                    ";xi_method=" + to_string(large.method);
        curve.records.push_back(std::move(agg));
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::string ccdf_to_csv(const std::vector<CcdfCurve>& curves)
{
    std::string out = "M,gap,ccdf\n";
    for (const auto& c : curves)
        for (const auto& [gap, prob] : c.points)
            out += std::to_string(c.m) + ',' + format_double(gap) + ',' + format_double(prob) + '\n';
    return out;
}

}  // namespace secprec
