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

#include "secprec/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "secprec/asymptotics.hpp"
#include "secprec/channel.hpp"
#include "secprec/errors.hpp"
#include "secprec/experiments.hpp"
#include "secprec/optimizer.hpp"
#include "secprec/precoders.hpp"
#include "secprec/records.hpp"
#include "secprec/rng.hpp"
#include "secprec/secrecy.hpp"
#include "secprec/selftest.hpp"

namespace secprec {

namespace {

using json = nlohmann::json;

// Validation failure attributable to one flag / config key.
class FlagError : public InvalidArgument {
 public:
    FlagError(const std::string& flag, const std::string& message)
        : InvalidArgument(flag + ": " + message)
    {
    }
};

json snr_grid()
{
    json grid = json::array();
    for (int i = 0; i <= 12; ++i)
        grid.push_back(-5.0 + 2.5 * i);
    return grid;
}

// All defaults live here; `--show-config` prints the merged result.
json defaults_for(const std::string& sub)
{
    json d = {{"M", json::array({8})},
              {"K", json::array()},
              {"beta", json::array({1.0})},
              {"nu", json::array({0.5})},
              {"correlation", nullptr},
              {"xi", nullptr},
              {"xi_policy", "large-system-optimal"},
              {"rho_db", json::array({10.0})},
              {"seed", 1},
              {"trials", 100},
              {"threads", 1},
              {"out", sub + ".csv"},
              {"precoder", "rci"},
              {"ergodic_gamma", false},
              {"finite", false},
              {"xi_bracket", json::array({1e-6, 1e3})},
              {"solver", {{"tolerance", 1e-12}, {"max_iterations", 10000}, {"damping", 1.0}}},
              {"quadrature", {{"nodes", 2048}, {"scheme", "gauss-legendre"}}}};
    if (sub == "fig1") {
        d["M"] = json::array({64});
        d["beta"] = json::array({0.5, 1.0, 2.0});
        d["rho_db"] = snr_grid();
    } else if (sub == "fig2") {
        d["beta"] = json::array({0.8});
        d["nu"] = json::array({0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
        d["rho_db"] = snr_grid();
    } else if (sub == "fig3") {
        d["M"] = json::array({8, 16, 32});
        d["trials"] = 500;
        d["seed"] = 7;
    }
    return d;
}

json as_list(const json& v)
{
    if (v.is_array())
        return v;
    return json::array({v});
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        items.push_back(item);
    return items;
}

json parse_number_list(const std::string& flag, const std::string& text, bool integers)
{
    json list = json::array();
    for (const auto& item : split_list(text)) {
        try {
            std::size_t used = 0;
            if (integers) {
                const long long v = std::stoll(item, &used);
                if (used == item.size()) {
                    list.push_back(v);
                    continue;
                }
            } else {
                const double v = std::stod(item, &used);
                if (used == item.size()) {
                    list.push_back(v);
                    continue;
                }
            }
        } catch (const std::exception&) {
        }
        throw FlagError(flag, "malformed value '" + item + "'");
    }
    if (list.empty())
        throw FlagError(flag, "expected at least one value");
    return list;
}

template <class T>
T get_as(const json& cfg, const std::string& key, const std::string& flag)
{
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw FlagError(flag, "has the wrong type in the configuration");
    }
}

template <class T>
std::vector<T> get_list(const json& cfg, const std::string& key, const std::string& flag)
{
    return get_as<std::vector<T>>(json{{key, as_list(cfg.at(key))}}, key, flag);
}

CorrelationModel parse_correlation(const json& j)
{
    const std::string flag = "correlation";
    if (!j.is_object() || !j.contains("kind"))
        throw FlagError(flag, "expected an object with a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity")
        return CorrelationModel::identity();
    if (kind == "toeplitz_exp") {
        const double nu = j.value("nu", 0.0);
        if (!(nu >= 0.0 && nu < 1.0))
            throw FlagError(flag, "nu must lie in [0, 1)");
        return CorrelationModel::toeplitz_exponential(nu);
    }
    if (kind == "spectrum") {
        std::vector<SpectrumPoint> points;
        for (const auto& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2)
                throw FlagError(flag, "spectrum points must be [eigenvalue, weight] pairs");
            points.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        return CorrelationModel::explicit_spectrum(std::move(points));
    }
    throw FlagError(flag, "unknown kind '" + kind + "'");
}

// Typed view of the merged configuration.
struct Settings {
    json merged;
    std::vector<int> m;
    std::vector<int> k;
    std::vector<double> beta;
    std::vector<double> nu;
    std::optional<CorrelationModel> correlation;
    std::optional<double> xi;
    XiPolicy xi_policy;
    std::vector<double> rho_db;
    std::uint64_t seed = 1;
    int trials = 1;
    int threads = 1;
    std::string out;
    std::string precoder;
    bool ergodic_gamma = false;
    bool finite = false;
    XiBracket bracket;
    FixedPointSettings solver;
    QuadratureSettings quadrature;

    CorrelationModel model_for(double nu_value) const
    {
        if (correlation)
            return *correlation;
        return CorrelationModel::toeplitz_exponential(nu_value);
    }
    CorrelationModel model() const { return model_for(single(nu, "--nu")); }

    template <class T>
    static T single(const std::vector<T>& values, const std::string& flag)
    {
        if (values.size() != 1)
            throw FlagError(flag, "expects exactly one value for this subcommand");
        return values.front();
    }
};

Settings typed_settings(const json& cfg)
{
    Settings s;
    s.merged = cfg;
    s.m = get_list<int>(cfg, "M", "--M");
    s.k = get_list<int>(cfg, "K", "--K");
    s.beta = get_list<double>(cfg, "beta", "--beta");
    s.nu = get_list<double>(cfg, "nu", "--nu");
    s.rho_db = get_list<double>(cfg, "rho_db", "--rho-db");
    for (int v : s.m)
        if (v < 1)
            throw FlagError("--M", "must be a positive integer");
    for (int v : s.k)
        if (v < 1)
            throw FlagError("--K", "must be a positive integer");
    for (double v : s.beta)
        if (!(v > 0.0) || !std::isfinite(v))
            throw FlagError("--beta", "must be positive");
    for (double v : s.nu)
        if (!(v >= 0.0 && v < 1.0))
            throw FlagError("--nu", "must lie in [0, 1)");
    for (double v : s.rho_db)
        if (!std::isfinite(v))
            throw FlagError("--rho-db", "must be finite");
    if (s.m.empty())
        throw FlagError("--M", "expected at least one value");
    if (s.beta.empty())
        throw FlagError("--beta", "expected at least one value");
    if (s.nu.empty())
        throw FlagError("--nu", "expected at least one value");
    if (s.rho_db.empty())
        throw FlagError("--rho-db", "expected at least one value");

    if (!cfg.at("correlation").is_null())
        s.correlation = parse_correlation(cfg.at("correlation"));
    if (!cfg.at("xi").is_null()) {
        s.xi = get_as<double>(cfg, "xi", "--xi");
        if (!(*s.xi > 0.0) || !std::isfinite(*s.xi))
            throw FlagError("--xi", "must be positive");
    }
    try {
        s.xi_policy = XiPolicy::parse(get_as<std::string>(cfg, "xi_policy", "xi_policy"));
    } catch (const FlagError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw FlagError("xi_policy", e.what());
    }
    if (s.xi)
        s.xi_policy = {XiPolicyKind::Fixed, *s.xi};

    const auto seed = get_as<long long>(cfg, "seed", "--seed");
    if (seed < 0)
        throw FlagError("--seed", "must be nonnegative");
    s.seed = static_cast<std::uint64_t>(seed);
    s.trials = get_as<int>(cfg, "trials", "--trials");
    if (s.trials < 1)
        throw FlagError("--trials", "must be at least 1");
    s.threads = get_as<int>(cfg, "threads", "--threads");
    if (s.threads < 1)
        throw FlagError("--threads", "must be at least 1");
    s.out = get_as<std::string>(cfg, "out", "--out");
    if (s.out.empty())
        throw FlagError("--out", "must not be empty");
    s.precoder = get_as<std::string>(cfg, "precoder", "--precoder");
    if (s.precoder != "rci" && s.precoder != "zf" && s.precoder != "sub")
        throw FlagError("--precoder", "must be one of rci, zf, sub");
    s.ergodic_gamma = get_as<bool>(cfg, "ergodic_gamma", "ergodic_gamma");
    s.finite = get_as<bool>(cfg, "finite", "--finite");

    const auto bracket = get_as<std::vector<double>>(cfg, "xi_bracket", "xi_bracket");
    if (bracket.size() != 2 || !(bracket[0] > 0.0) || !(bracket[0] < bracket[1]))
        throw FlagError("xi_bracket", "expected [lo, hi] with 0 < lo < hi");
    s.bracket = {bracket[0], bracket[1]};

    const json& solver = cfg.at("solver");
    s.solver.tolerance = solver.value("tolerance", 1e-12);
    s.solver.max_iterations = solver.value("max_iterations", 10000);
    s.solver.damping = solver.value("damping", 1.0);
    try {
        s.solver.validate();
    } catch (const InvalidArgument& e) {
        throw FlagError("solver", e.what());
    }
    const json& quad = cfg.at("quadrature");
    s.quadrature.node_count = quad.value("nodes", 2048);
    const std::string scheme = quad.value("scheme", "gauss-legendre");
    if (scheme == "gauss-legendre")
        s.quadrature.scheme = QuadratureScheme::GaussLegendreAngle;
    else if (scheme == "uniform-angle")
        s.quadrature.scheme = QuadratureScheme::UniformAngle;
    else if (scheme == "discrete-spectrum")
        s.quadrature.scheme = QuadratureScheme::DiscreteSpectrumSum;
    else
        throw FlagError("quadrature", "scheme must be gauss-legendre, uniform-angle or discrete-spectrum");
    if (s.quadrature.node_count < 2)
        throw FlagError("quadrature", "nodes must be at least 2");
    return s;
}

std::string fmt(double v)
{
    std::ostringstream o;
    o.precision(12);
    o << v;
    return o.str();
}

void line(std::ostream& out, const std::string& key, const std::string& value)
{
    out << key;
    for (std::size_t i = key.size(); i < 22; ++i)
        out << ' ';
    out << value << '\n';
}

void line(std::ostream& out, const std::string& key, double value)
{
    line(out, key, fmt(value));
}

SystemDims single_dims(const Settings& s)
{
    const int m = Settings::single(s.m, "--M");
    int k = 0;
    if (!s.k.empty())
        k = Settings::single(s.k, "--K");
    else
        k = std::max(1, static_cast<int>(std::lround(Settings::single(s.beta, "--beta") * m)));
    return SystemDims(m, k);
}

std::vector<SystemDims> dims_grid(const Settings& s)
{
    std::vector<SystemDims> dims;
    for (int m : s.m) {
        if (!s.k.empty()) {
            for (int k : s.k)
                dims.emplace_back(m, k);
        } else {
            for (double beta : s.beta)
                dims.emplace_back(m, std::max(1, static_cast<int>(std::lround(beta * m))));
        }
    }
    return dims;
}

// Beta for the large-system subcommands: K/M when --K is set, else --beta.
double single_beta(const Settings& s)
{
    if (!s.k.empty())
        return static_cast<double>(Settings::single(s.k, "--K")) / Settings::single(s.m, "--M");
    return Settings::single(s.beta, "--beta");
}

void write_sidecar(const std::string& path, const std::string& experiment, const Settings& s, double seconds)
{
    json meta = {{"experiment", experiment},
                 {"config", s.merged},
                 {"solver",
                  {{"tolerance", s.solver.tolerance},
                   {"max_iterations", s.solver.max_iterations},
                   {"damping", s.solver.damping}}},
                 {"rng", GaussianSource::kStreamName},
                 {"seed_mixing", "trial seed = base_seed XOR trial index"},
                 {"version", kVersion},
                 {"wall_clock_seconds", seconds}};
    write_text_file(path, meta.dump(2) + "\n");
}

std::string sibling_path(const std::string& path, const std::string& suffix)
{
    const auto dot = path.rfind('.');
    const auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

double elapsed_seconds(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_rate(const Settings& s, std::ostream& out)
{
    const SystemDims dims = single_dims(s);
    const auto model = s.model();
    const double rho_db = Settings::single(s.rho_db, "--rho-db");
    const double rho = db_to_linear(rho_db);
    const ChannelRealization ch = sample_channel(dims, model, s.seed);

    PrecoderOutput p;
    std::string xi_source = "flag";
    if (s.precoder == "zf") {
        p = zf_precoder(ch.h);
    } else if (s.precoder == "sub") {
        p = sub_precoder(ch.h);
    } else {
        double xi = 0.0;
        if (s.xi) {
            xi = *s.xi;
        } else {
            xi = optimal_xi_large_system(model, dims.beta(), rho, s.solver, s.quadrature, s.bracket).xi;
            xi_source = "large-system-optimal";
        }
        p = rci_precoder(ch.h, xi);
    }
    const SecrecyReport report = per_user_secrecy_rates(ch.h, p, rho);

    line(out, "M", std::to_string(dims.m));
    line(out, "K", std::to_string(dims.k));
    line(out, "beta", dims.beta());
    line(out, "correlation", model.describe());
    line(out, "rho_db", rho_db);
    line(out, "seed", std::to_string(s.seed));
    line(out, "precoder", p.describe());
    if (p.kind == PrecoderKind::Rci)
        line(out, "xi_source", xi_source);
    line(out, "gamma", p.gamma);
    out << "user  signal            interference      leakage           rate\n";
    for (int k = 0; k < dims.k; ++k) {
        std::ostringstream row;
        row.precision(10);
        row << k;
        std::string text = row.str();
        text.resize(6, ' ');
        for (double v : {report.signal_terms[k], report.interference_terms[k], report.leakage_terms[k],
                         report.per_user_rates[k]}) {
            std::string cell = fmt(v);
            cell.resize(18, ' ');
            text += cell;
        }
        while (!text.empty() && text.back() == ' ')
            text.pop_back();
        out << text << '\n';
    }
    line(out, "sum_rate", report.sum_rate);
    line(out, "per_antenna_sum_rate", report.sum_rate / dims.m);
    return kExitOk;
}

int cmd_asymptotic(const Settings& s, std::ostream& out)
{
    const auto model = s.model();
    const double beta = single_beta(s);
    const double rho_db = Settings::single(s.rho_db, "--rho-db");
    const double rho = db_to_linear(rho_db);
    const auto measure = SpectralMeasure::of(model, s.quadrature);
    double xi = 0.0;
    if (s.xi)
        xi = *s.xi;
    else
        xi = optimal_xi_large_system(measure, beta, rho, s.solver, s.bracket).xi;
    const DeterministicEquivalent de = rci_large_system_rate(measure, beta, xi, rho, s.solver);

    line(out, "correlation", model.describe());
    line(out, "beta", beta);
    line(out, "xi", xi);
    line(out, "rho_db", rho_db);
    line(out, "eta", de.eta);
    line(out, "E12", de.moments.e12);
    line(out, "E22", de.moments.e22);
    line(out, "E13", de.moments.e13);
    line(out, "E23", de.moments.e23);
    line(out, "E33", de.moments.e33);
    line(out, "A_limit", de.a_limit);
    line(out, "B_limit", de.b_limit);
    line(out, "gamma_limit", de.gamma_limit);
    line(out, "deta_dxi", de.eta_prime);
    line(out, "rate", de.rate);
    line(out, "per_antenna_rate", beta * de.rate);
    try {
        line(out, "zf_rate", zf_large_system_rate(measure, beta, rho, s.solver));
    } catch (const DomainError& e) {
        line(out, "zf_rate", std::string("undefined (") + e.what() + ")");
    }
    line(out, "sub_rate", sub_large_system_rate(measure, beta, rho));
    return kExitOk;
}

int cmd_optimize_xi(const Settings& s, std::ostream& out)
{
    const auto model = s.model();
    const double rho_db = Settings::single(s.rho_db, "--rho-db");
    const double rho = db_to_linear(rho_db);
    double beta = single_beta(s);
    std::optional<SystemDims> dims;
    if (s.finite) {
        dims = single_dims(s);
        beta = dims->beta();
    }
    const XiSolution sol = optimal_xi_large_system(model, beta, rho, s.solver, s.quadrature, s.bracket);
    line(out, "correlation", model.describe());
    line(out, "beta", beta);
    line(out, "rho_db", rho_db);
    line(out, "method", to_string(sol.method));
    line(out, "xi", sol.xi);
    line(out, "rate", sol.rate);
    line(out, "residual", sol.residual);
    line(out, "iterations", std::to_string(sol.iterations));
    line(out, "converged", sol.converged ? "true" : "false");
    line(out, "boundary_warning", sol.boundary_warning ? "true" : "false");
    line(out, "no_secrecy_xi", beta / rho);
    if (dims) {
        const ChannelRealization ch = sample_channel(*dims, model, s.seed);
        const XiSolution fin = optimal_xi_finite(ch.h, rho, s.bracket, sol.xi);
        line(out, "M", std::to_string(dims->m));
        line(out, "K", std::to_string(dims->k));
        line(out, "seed", std::to_string(s.seed));
        line(out, "finite_xi", fin.xi);
        line(out, "finite_sum_rate", fin.rate);
        line(out, "sum_rate_at_xi", rci_secrecy_sum_rate(ch.h, sol.xi, rho));
        line(out, "flat_objective", fin.flat_objective ? "true" : "false");
    }
    if (!sol.converged)
        return sol.boundary_warning ? kExitOk : kExitNoConvergence;
    return kExitOk;
}

int cmd_fig1(const Settings& s, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.dims_list = dims_grid(s);
    cfg.model = s.model();
    cfg.rho_db_grid = s.rho_db;
    cfg.xi_policy = s.xi_policy;
    cfg.trials = s.trials;
    cfg.base_seed = s.seed;
    cfg.output_path = s.out;
    cfg.ergodic_gamma = s.ergodic_gamma;
    cfg.threads = s.threads;
    cfg.solver = s.solver;
    cfg.quadrature = s.quadrature;
    cfg.bracket = s.bracket;
    const auto records = ergodic_rate_sweep(cfg);
    write_records(records, s.out);
    write_sidecar(s.out + ".json", "fig1", s, elapsed_seconds(start));

    out << "M     K     rho_db    sim_Rs/M          se                KR/M\n";
    for (const auto& r : records) {
        if (r.experiment != "fig1-mean")
            continue;
        std::string row = std::to_string(r.m);
        row.resize(6, ' ');
        std::string k = std::to_string(r.k);
        k.resize(6, ' ');
        std::string db = fmt(r.rho_db);
        db.resize(10, ' ');
        std::string mean = fmt(r.per_antenna_sum_rate);
        mean.resize(18, ' ');
        std::string se = r.flags.substr(r.flags.find("se=") + 3);
        se = se.substr(0, se.find(';'));
        se = fmt(std::stod(se));
        se.resize(18, ' ');
        out << row << k << db << mean << se << fmt(r.beta * r.deterministic_rate) << '\n';
    }
    out << "wrote " << s.out << '\n';
    return kExitOk;
}

int cmd_fig2(const Settings& s, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    const double beta = Settings::single(s.beta, "--beta");
    const auto points = relative_loss_curve(beta, s.rho_db, s.nu, s.solver, s.quadrature);
    write_records(loss_records(beta, points), s.out);
    write_sidecar(s.out + ".json", "fig2", s, elapsed_seconds(start));
    out << "nu    rho_db    loss\n";
    for (const auto& p : points) {
        std::string nu = fmt(p.nu);
        nu.resize(6, ' ');
        std::string db = fmt(p.rho_db);
        db.resize(10, ' ');
        out << nu << db << (p.undefined ? std::string("undefined") : fmt(p.loss)) << '\n';
    }
    out << "wrote " << s.out << '\n';
    return kExitOk;
}

int cmd_fig3(const Settings& s, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    CcdfSettings cs;
    cs.m_list = s.m;
    cs.beta = Settings::single(s.beta, "--beta");
    cs.rho_db = Settings::single(s.rho_db, "--rho-db");
    cs.nu = Settings::single(s.nu, "--nu");
    cs.trials = s.trials;
    cs.base_seed = s.seed;
    cs.threads = s.threads;
    cs.solver = s.solver;
    cs.quadrature = s.quadrature;
    cs.bracket = s.bracket;
    const auto curves = ccdf_xi_gap(cs);
    std::vector<TrialRecord> records;
    for (const auto& c : curves)
        records.insert(records.end(), c.records.begin(), c.records.end());
    write_records(records, s.out);
    const std::string ccdf_path = sibling_path(s.out, "_ccdf");
    write_text_file(ccdf_path, ccdf_to_csv(curves));
    write_sidecar(s.out + ".json", "fig3", s, elapsed_seconds(start));

    out << "M     K     xi_large          mean_gap          excluded\n";
    for (const auto& c : curves) {
        std::string m = std::to_string(c.m);
        m.resize(6, ' ');
        std::string k = std::to_string(c.k);
        k.resize(6, ' ');
        std::string xi = fmt(c.xi_large_system);
        xi.resize(18, ' ');
        std::string gap = fmt(c.mean_gap);
        gap.resize(18, ' ');
        out << m << k << xi << gap << c.excluded << '\n';
    }
    out << "wrote " << s.out << " and " << ccdf_path << '\n';
    return kExitOk;
}

int cmd_selftest(std::ostream& out)
{
    bool all = true;
    for (const auto& c : run_selftest()) {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  residual=" << fmt(c.residual)
            << "  tolerance=" << fmt(c.tolerance) << '\n';
        all = all && c.passed;
    }
    out << (all ? "selftest passed\n" : "selftest FAILED\n");
    return all ? kExitOk : kExitInvalid;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Secrecy-rate analysis of linear precoders under transmit correlation", "secprec"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string m_text, k_text, beta_text, nu_text, rho_text, policy_text, precoder_text, out_path, config_path;
    double xi = 0.0;
    long long seed = 0;
    int trials = 0;
    int threads = 0;
    bool show_config = false;
    bool ergodic_gamma = false;
    bool finite = false;

    auto* o_m = app.add_option("--M", m_text, "Transmit antennas (comma list for fig1/fig3)");
    auto* o_k = app.add_option("--K", k_text, "Users (comma list for fig1)");
    auto* o_beta = app.add_option("--beta", beta_text, "Load K/M (comma list for fig1)");
    auto* o_nu = app.add_option("--nu", nu_text, "Toeplitz-exponential coefficient (comma list for fig2)");
    auto* o_xi = app.add_option("--xi", xi, "Regularization; omit for the large-system optimum");
    auto* o_rho = app.add_option("--rho-db", rho_text, "SNR in dB (comma list for fig1/fig2)");
    auto* o_seed = app.add_option("--seed", seed, "Base seed");
    auto* o_trials = app.add_option("--trials", trials, "Monte Carlo trials");
    auto* o_threads = app.add_option("--threads", threads, "Worker threads");
    auto* o_out = app.add_option("--out", out_path, "Output CSV path");
    auto* o_policy = app.add_option("--xi-policy", policy_text,
                                    "large-system-optimal | per-realization-optimal | <fixed xi>");
    auto* o_precoder = app.add_option("--precoder", precoder_text, "rate: rci | zf | sub");
    auto* o_ergodic = app.add_flag("--ergodic-gamma", ergodic_gamma, "fig1: average gamma over trials");
    auto* o_finite = app.add_flag("--finite", finite, "optimize-xi: also search xi for one channel draw");
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_flag("--show-config", show_config, "Print the merged configuration and exit");

    const std::vector<std::string> names = {"rate", "asymptotic", "optimize-xi", "fig1", "fig2", "fig3", "selftest"};
    const std::vector<std::string> help = {
        "Secrecy rates of one seeded channel realization",
        "Large-system deterministic equivalent",
        "Optimal regularization (large-system, optionally per realization)",
        "Monte Carlo ergodic rate vs deterministic equivalent",
        "Relative secrecy-rate loss vs correlation",
        "CCDF of the xi-optimization gap",
        "Run the embedded invariant checks"};
    for (std::size_t i = 0; i < names.size(); ++i)
        app.add_subcommand(names[i], help[i]);

    if (!args.empty() && !args.front().starts_with('-') &&
        std::find(names.begin(), names.end(), args.front()) == names.end()) {
        err << "error: unknown subcommand '" << args.front() << "'\n";
        return kExitInvalid;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "selftest")
        return cmd_selftest(out);

    try {
        json cfg = defaults_for(sub);
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in)
                throw FlagError("--config", "cannot open '" + config_path + "'");
            json file;
            try {
                in >> file;
            } catch (const json::exception& e) {
                throw FlagError("--config", std::string("invalid JSON: ") + e.what());
            }
            if (!file.is_object())
                throw FlagError("--config", "top level must be an object");
            for (auto it = file.begin(); it != file.end(); ++it) {
                if (!cfg.contains(it.key()))
                    throw FlagError("--config", "unknown key '" + it.key() + "'");
                if (it.value().is_object() && cfg[it.key()].is_object())
                    cfg[it.key()].merge_patch(it.value());
                else
                    cfg[it.key()] = it.value();
            }
        }
        if (o_m->count())
            cfg["M"] = parse_number_list("--M", m_text, true);
        if (o_k->count())
            cfg["K"] = parse_number_list("--K", k_text, true);
        if (o_beta->count())
            cfg["beta"] = parse_number_list("--beta", beta_text, false);
        if (o_nu->count()) {
            cfg["nu"] = parse_number_list("--nu", nu_text, false);
            cfg["correlation"] = nullptr;
        }
        if (o_xi->count())
            cfg["xi"] = xi;
        if (o_rho->count())
            cfg["rho_db"] = parse_number_list("--rho-db", rho_text, false);
        if (o_seed->count())
            cfg["seed"] = seed;
        if (o_trials->count())
            cfg["trials"] = trials;
        if (o_threads->count())
            cfg["threads"] = threads;
        if (o_out->count())
            cfg["out"] = out_path;
        if (o_policy->count())
            cfg["xi_policy"] = policy_text;
        if (o_precoder->count())
            cfg["precoder"] = precoder_text;
        if (o_ergodic->count())
            cfg["ergodic_gamma"] = ergodic_gamma;
        if (o_finite->count())
            cfg["finite"] = finite;

        if (show_config) {
            out << cfg.dump(2) << '\n';
            return kExitOk;
        }
        const Settings s = typed_settings(cfg);
        if (sub == "rate")
            return cmd_rate(s, out);
        if (sub == "asymptotic")
            return cmd_asymptotic(s, out);
        if (sub == "optimize-xi")
            return cmd_optimize_xi(s, out);
        if (sub == "fig1")
            return cmd_fig1(s, out);
        if (sub == "fig2")
            return cmd_fig2(s, out);
        if (sub == "fig3")
            return cmd_fig3(s, out);
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNoConvergence;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    err << "error: unknown subcommand '" << sub << "'\n";
    return kExitInvalid;
}

}  // namespace secprec
