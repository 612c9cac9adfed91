// run.cpp

#include "wqed/run.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "wqed/ddesolver.hpp"
#include "wqed/dynamics.hpp"
#include "wqed/errors.hpp"
#include "wqed/lambert.hpp"
#include "wqed/observables.hpp"

namespace wqed {
namespace {

constexpr const char* kLibraryVersion = "1.0.0";

// ---------------------------------------------------------------- parsing

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse '" + v + "' as a number");
    }
    if (pos != v.size() || !std::isfinite(x))
        throw ConfigError("config key '" + key + "': cannot parse '" + v + "' as a number");
    return x;
}

int parse_int(const std::string& key, const std::string& v) {
    size_t pos = 0;
    int x;
    try {
        x = std::stoi(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse '" + v + "' as an integer");
    }
    if (pos != v.size())
        throw ConfigError("config key '" + key + "': cannot parse '" + v + "' as an integer");
    return x;
}

Scenario parse_scenario(const std::string& v) {
    if (v == "amplitude") return Scenario::Amplitude;
    if (v == "intensity") return Scenario::Intensity;
    if (v == "cooperativity") return Scenario::Cooperativity;
    if (v == "nonmarkovianity") return Scenario::NonMarkovianity;
    if (v == "entropy") return Scenario::Entropy;
    if (v == "critical_scan") return Scenario::CriticalScan;
    if (v == "rate_scan") return Scenario::RateScan;
    if (v == "validate") return Scenario::Validate;
    throw ConfigError("config key 'scenario': unknown value '" + v + "'");
}

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Amplitude: return "amplitude";
        case Scenario::Intensity: return "intensity";
        case Scenario::Cooperativity: return "cooperativity";
        case Scenario::NonMarkovianity: return "nonmarkovianity";
        case Scenario::Entropy: return "entropy";
        case Scenario::CriticalScan: return "critical_scan";
        case Scenario::RateScan: return "rate_scan";
        case Scenario::Validate: return "validate";
    }
    return "?";
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(trim(tok));
    return out;
}

// ------------------------------------------------------------- artifacts

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct Emitter {
    std::filesystem::path dir;
    std::vector<RunManifest::FileEntry> files;

    void write(const std::string& name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw IoError("cannot open " + (dir / name).string() + " for writing");
        out << content;
        if (!out) throw IoError("write failed for " + (dir / name).string());
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016llx",
                      (unsigned long long)fnv1a64(content));
        files.push_back({name, content.size(), hex});
    }
};

// CSV body from columns of equal length.
std::string csv(const std::vector<std::pair<std::string, const Eigen::ArrayXd*>>& cols) {
    std::string out;
    for (size_t c = 0; c < cols.size(); ++c)
        out += (c ? "," : "") + cols[c].first;
    out += "\n";
    const long n = cols.front().second->size();
    for (long i = 0; i < n; ++i) {
        for (size_t c = 0; c < cols.size(); ++c) {
            if (c) out += ",";
            out += fmt((*cols[c].second)[i]);
        }
        out += "\n";
    }
    return out;
}

// Index-parallel map over [0, n) with a deterministic output layout.
void parallel_for(int threads, long n, const std::function<void(long)>& body) {
    if (threads <= 0) threads = (int)std::thread::hardware_concurrency();
    threads = (int)std::max<long>(1, std::min<long>(threads, n));
    if (threads == 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (long i = next++; i < n; i = next++) body(i);
        });
    for (auto& th : pool) th.join();
}

GeneralInitialState initial_state(const RunConfig& cfg) {
    if (cfg.general_state) return {cfg.theta, cfg.phi};
    return {cfg.parity == Parity::Sup ? 0.0 : std::numbers::pi / 2, 0.0};
}

// ------------------------------------------------------------- scenarios

void amplitude_file(Emitter& em, const RunConfig& cfg, const std::string& label,
                    const std::string& token) {
    const Eigen::ArrayXd tau =
        Eigen::ArrayXd::LinSpaced(cfg.tau_points, 0.0, cfg.tau_max);
    if (token == "independent") {
        const Eigen::ArrayXd re = (-0.5 * tau).exp() / std::numbers::sqrt2;
        const Eigen::ArrayXd im = Eigen::ArrayXd::Zero(tau.size());
        const Eigen::ArrayXd ab = re * re;
        em.write("amplitude_" + label + ".csv",
                 csv({{"tau", &tau}, {"re_c", &re}, {"im_c", &im}, {"abs2_c", &ab}}));
        return;
    }
    const double eta = token == "critical" ? critical_separation(cfg.beta)
                                           : parse_double("eta_list", token);
    const ModelParams params{cfg.gamma, cfg.beta, eta, cfg.winding};
    params.validate();
    std::vector<SolverChoice> solvers;
    if (cfg.solver == SolverChoice::All)
        solvers = {SolverChoice::BranchSum, SolverChoice::Series, SolverChoice::DDE};
    else
        solvers = {cfg.solver};
    for (SolverChoice s : solvers) {
        std::string suffix = cfg.solver == SolverChoice::All
                                 ? (s == SolverChoice::BranchSum ? "_branch"
                                    : s == SolverChoice::Series  ? "_series"
                                                                 : "_dde")
                                 : "";
        Eigen::ArrayXd t, re, im;
        if (s == SolverChoice::DDE) {
            const auto trace =
                integrate_dde(params, initial_state(cfg), cfg.tau_max, cfg.step_hint);
            t = trace.tau;
            re = trace.c1.real();
            im = trace.c1.imag();
        } else {
            const auto trace = eta == 0.0 ? amplitude_markovian(params, cfg.parity, tau)
                               : s == SolverChoice::Series
                                   ? amplitude_series(params, cfg.parity, tau)
                                   : amplitude_branch_sum(params, cfg.parity, tau,
                                                          cfg.n_max);
            t = trace.tau;
            re = trace.c.real();
            im = trace.c.imag();
        }
        const Eigen::ArrayXd ab = re * re + im * im;
        em.write("amplitude_" + label + suffix + ".csv",
                 csv({{"tau", &t}, {"re_c", &re}, {"im_c", &im}, {"abs2_c", &ab}}));
    }
}

void run_amplitude(Emitter& em, const RunConfig& cfg, RunManifest& man) {
    if (cfg.general_state && cfg.solver != SolverChoice::DDE)
        throw ConfigError("config key 'state': general states need solver = dde");
    for (const std::string& token : split_list(cfg.eta_list)) {
        std::string label = token;
        std::replace(label.begin(), label.end(), '.', 'p');
        amplitude_file(em, cfg, label, token);
    }
    man.diagnostics["eta_critical"] = critical_separation(cfg.beta);
}

void run_intensity(Emitter& em, const RunConfig& cfg, RunManifest& man) {
    const ModelParams params{cfg.gamma, cfg.beta, cfg.eta, cfg.winding};
    params.validate();
    const Eigen::ArrayXd xi =
        Eigen::ArrayXd::LinSpaced(cfg.xi_points, cfg.xi_min, cfg.xi_max);
    const Eigen::ArrayXd tau =
        Eigen::ArrayXd::LinSpaced(cfg.tau_points, 0.0, cfg.tau_max);
    for (Parity par : {Parity::Sup, Parity::Sub}) {
        const FieldGrid g = intensity_map(params, par, xi, tau, cfg.n_max, cfg.field_mode);
        const long n = xi.size() * tau.size();
        Eigen::ArrayXd cx(n), ct(n), ci(n);
        for (long i = 0; i < xi.size(); ++i)
            for (long j = 0; j < tau.size(); ++j) {
                const long k = i * tau.size() + j;
                cx[k] = xi[i];
                ct[k] = tau[j];
                ci[k] = g.intensity(i, j);
            }
        const char* tag = par == Parity::Sup ? "sup" : "sub";
        em.write(std::string("intensity_") + tag + ".csv",
                 csv({{"xi", &cx}, {"tau", &ct}, {"intensity", &ci}}));
        man.diagnostics[std::string("max_intensity_") + tag] = ci.maxCoeff();
    }
}

void run_cooperativity(Emitter& em, const RunConfig& cfg, RunManifest& man) {
    const Eigen::ArrayXd etas =
        Eigen::ArrayXd::LinSpaced(cfg.eta_points, cfg.eta_min, cfg.eta_max);
    for (Parity par : {Parity::Sup, Parity::Sub}) {
        Eigen::ArrayXd c(etas.size());
        parallel_for(cfg.threads, etas.size(), [&](long i) {
            c[i] = cooperativity({cfg.gamma, cfg.beta, etas[i], cfg.winding}, par,
                                 cfg.n_max)
                       .value;
        });
        const char* tag = par == Parity::Sup ? "sup" : "sub";
        em.write(std::string("cooperativity_") + tag + ".csv",
                 csv({{"eta", &etas}, {"value", &c}}));
        man.diagnostics[std::string("cooperativity_") + tag + "_last"] = c.tail(1)[0];
    }
}

void run_nonmarkovianity(Emitter& em, const RunConfig& cfg, RunManifest& man) {
    const ModelParams params{cfg.gamma, cfg.beta, cfg.eta, cfg.winding};
    params.validate();
    // Cumulative backflow of the subradiant coherence 2|c_sub|^2 vs time.
    const Eigen::ArrayXd tau =
        Eigen::ArrayXd::LinSpaced(cfg.tau_points, 0.0, cfg.tau_max);
    const auto trace = params.eta <= 1e-7
                           ? amplitude_markovian(params, Parity::Sub, tau)
                           : amplitude_branch_sum(params, Parity::Sub, tau, cfg.n_max);
    const Eigen::ArrayXd coh = 2.0 * trace.c.abs2();
    Eigen::ArrayXd cum(tau.size());
    cum[0] = 0.0;
    for (long i = 1; i < tau.size(); ++i)
        cum[i] = cum[i - 1] + std::max(0.0, coh[i] - coh[i - 1]);
    em.write("nonmarkovianity.csv", csv({{"tau", &tau}, {"value", &cum}}));

    const auto n = non_markovianity(params, 0.0, cfg.theta_samples);
    nlohmann::json j{{"name", "NonMarkovianity"},
                     {"value", n.value},
                     {"metadata", n.metadata}};
    em.write("nonmarkovianity.json", j.dump(2) + "\n");
    man.diagnostics["non_markovianity"] = n.value;
    man.diagnostics["argmax_theta"] = n.metadata.at("argmax_theta");
}

void run_entropy(Emitter& em, const RunConfig& cfg, RunManifest& man) {
    const ModelParams params{cfg.gamma, cfg.beta, cfg.eta, cfg.winding};
    params.validate();
    const Eigen::ArrayXd tau =
        Eigen::ArrayXd::LinSpaced(cfg.tau_points, 0.0, cfg.tau_max);
    const Eigen::ArrayXd s = linear_entropy_trace(params, cfg.parity, tau);
    em.write("entropy.csv", csv({{"tau", &tau}, {"value", &s}}));

    const Eigen::ArrayXd etas =
        Eigen::ArrayXd::LinSpaced(cfg.eta_points, cfg.eta_min, cfg.eta_max);
    Eigen::ArrayXd steady(etas.size());
    for (long i = 0; i < etas.size(); ++i) {
        const double p =
            subradiant_steady_population({cfg.gamma, cfg.beta, etas[i], cfg.winding});
        steady[i] = 4.0 * p * (1.0 - 2.0 * p);
    }
    em.write("entropy_steady.csv", csv({{"eta", &etas}, {"value", &steady}}));

    const double opt = optimal_bic_delay();
    nlohmann::json j{{"name", "BICOverlap"}, {"optimal_delay", opt}};
    em.write("bic_delay.json", j.dump(2) + "\n");
    man.diagnostics["optimal_bic_delay"] = opt;
}

void run_critical_scan(Emitter& em, const RunConfig& cfg, RunManifest& man) {
    const Eigen::ArrayXd etas =
        Eigen::ArrayXd::LinSpaced(cfg.eta_points, cfg.eta_min, cfg.eta_max);
    Eigen::ArrayXd rate(etas.size());
    for (long i = 0; i < etas.size(); ++i)
        rate[i] =
            instantaneous_rate({cfg.gamma, cfg.beta, etas[i], cfg.winding}).value;
    em.write("critical_scan.csv", csv({{"eta", &etas}, {"value", &rate}}));
    man.diagnostics["eta_critical"] = critical_separation(cfg.beta);
}

void run_rate_scan(Emitter& em, const RunConfig& cfg, RunManifest& man) {
    const Eigen::ArrayXd betas =
        Eigen::ArrayXd::LinSpaced(cfg.beta_points, cfg.beta_min, cfg.beta_max);
    Eigen::ArrayXd etac(betas.size()), gmax(betas.size());
    for (long i = 0; i < betas.size(); ++i) {
        etac[i] = critical_separation(betas[i]);
        gmax[i] = max_instantaneous_rate(betas[i]);
    }
    em.write("rate_scan.csv", csv({{"beta", &betas}, {"eta", &etac}, {"value", &gmax}}));
    man.diagnostics["gamma_max_at_beta_1"] = max_instantaneous_rate(1.0);
}

void run_validate(Emitter& em, RunManifest& man) {
    man.validation = validate_suite();
    man.validation_passed = true;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : man.validation) {
        man.validation_passed = man.validation_passed && r.pass;
        arr.push_back({{"name", r.name},
                       {"delta", r.delta},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
    }
    em.write("validation.json", arr.dump(2) + "\n");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (size_t hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "scenario") {
            cfg.scenario = parse_scenario(val);
        } else if (key == "gamma") {
            cfg.gamma = parse_double(key, val);
            if (!(cfg.gamma > 0.0)) throw ConfigError("config key 'gamma': must be > 0");
        } else if (key == "beta") {
            cfg.beta = parse_double(key, val);
            if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0))
                throw ConfigError("config key 'beta': must be in [0,1]");
        } else if (key == "eta") {
            cfg.eta = parse_double(key, val);
            if (!(cfg.eta >= 0.0)) throw ConfigError("config key 'eta': must be >= 0");
        } else if (key == "winding") {
            cfg.winding = parse_int(key, val);
            if (cfg.winding < 0) throw ConfigError("config key 'winding': must be >= 0");
        } else if (key == "parity") {
            if (val == "sup") cfg.parity = Parity::Sup;
            else if (val == "sub") cfg.parity = Parity::Sub;
            else throw ConfigError("config key 'parity': expected sup or sub");
        } else if (key == "state") {
            if (val == "parity") cfg.general_state = false;
            else if (val == "general") cfg.general_state = true;
            else throw ConfigError("config key 'state': expected parity or general");
        } else if (key == "theta") {
            cfg.theta = parse_double(key, val);
        } else if (key == "phi") {
            cfg.phi = parse_double(key, val);
        } else if (key == "solver") {
            if (val == "branch_sum") cfg.solver = SolverChoice::BranchSum;
            else if (val == "series") cfg.solver = SolverChoice::Series;
            else if (val == "dde") cfg.solver = SolverChoice::DDE;
            else if (val == "all") cfg.solver = SolverChoice::All;
            else throw ConfigError("config key 'solver': expected branch_sum, series, dde, or all");
        } else if (key == "tau_max") {
            cfg.tau_max = parse_double(key, val);
            if (!(cfg.tau_max > 0.0)) throw ConfigError("config key 'tau_max': must be > 0");
        } else if (key == "tau_points") {
            cfg.tau_points = parse_int(key, val);
            if (cfg.tau_points < 2) throw ConfigError("config key 'tau_points': must be >= 2");
        } else if (key == "xi_min") {
            cfg.xi_min = parse_double(key, val);
        } else if (key == "xi_max") {
            cfg.xi_max = parse_double(key, val);
        } else if (key == "xi_points") {
            cfg.xi_points = parse_int(key, val);
            if (cfg.xi_points < 2) throw ConfigError("config key 'xi_points': must be >= 2");
        } else if (key == "eta_min") {
            cfg.eta_min = parse_double(key, val);
            if (!(cfg.eta_min >= 0.0)) throw ConfigError("config key 'eta_min': must be >= 0");
        } else if (key == "eta_max") {
            cfg.eta_max = parse_double(key, val);
        } else if (key == "eta_points") {
            cfg.eta_points = parse_int(key, val);
            if (cfg.eta_points < 2) throw ConfigError("config key 'eta_points': must be >= 2");
        } else if (key == "beta_min") {
            cfg.beta_min = parse_double(key, val);
            if (!(cfg.beta_min >= 0.0)) throw ConfigError("config key 'beta_min': must be >= 0");
        } else if (key == "beta_max") {
            cfg.beta_max = parse_double(key, val);
            if (!(cfg.beta_max <= 1.0)) throw ConfigError("config key 'beta_max': must be <= 1");
        } else if (key == "beta_points") {
            cfg.beta_points = parse_int(key, val);
            if (cfg.beta_points < 2) throw ConfigError("config key 'beta_points': must be >= 2");
        } else if (key == "eta_list") {
            cfg.eta_list = val;
        } else if (key == "field_mode") {
            if (val == "envelope") cfg.field_mode = FieldMode::Envelope;
            else if (val == "full_fringe") cfg.field_mode = FieldMode::FullFringe;
            else throw ConfigError("config key 'field_mode': expected envelope or full_fringe");
        } else if (key == "step_hint") {
            cfg.step_hint = parse_double(key, val);
            if (!(cfg.step_hint > 0.0)) throw ConfigError("config key 'step_hint': must be > 0");
        } else if (key == "theta_samples") {
            cfg.theta_samples = parse_int(key, val);
            if (cfg.theta_samples < 1)
                throw ConfigError("config key 'theta_samples': must be >= 1");
        } else if (key == "n_max") {
            cfg.n_max = parse_int(key, val);
            if (cfg.n_max < 0) throw ConfigError("config key 'n_max': must be >= 0");
        } else if (key == "tolerance") {
            cfg.tolerance = parse_double(key, val);
            if (!(cfg.tolerance > 0.0)) throw ConfigError("config key 'tolerance': must be > 0");
        } else if (key == "output_dir") {
            if (val.empty()) throw ConfigError("config key 'output_dir': must not be empty");
            cfg.output_dir = val;
        } else if (key == "threads") {
            cfg.threads = parse_int(key, val);
            if (cfg.threads < 0) throw ConfigError("config key 'threads': must be >= 0");
        } else {
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" +
                              key + "'");
        }
    }
    if (!(cfg.xi_min < cfg.xi_max))
        throw ConfigError("config key 'xi_min': must be < xi_max");
    if (!(cfg.eta_min <= cfg.eta_max))
        throw ConfigError("config key 'eta_min': must be <= eta_max");
    if (!(cfg.beta_min <= cfg.beta_max))
        throw ConfigError("config key 'beta_min': must be <= beta_max");
    for (const std::string& tok : split_list(cfg.eta_list))
        if (tok != "critical" && tok != "independent" &&
            !(parse_double("eta_list", tok) >= 0.0))
            throw ConfigError("config key 'eta_list': eta must be >= 0");
    return cfg;
}

std::string render(const RunConfig& c) {
    std::string out;
    auto kv = [&out](const char* k, const std::string& v) {
        out += std::string(k) + " = " + v + "\n";
    };
    kv("scenario", scenario_name(c.scenario));
    kv("gamma", fmt(c.gamma));
    kv("beta", fmt(c.beta));
    kv("eta", fmt(c.eta));
    kv("winding", std::to_string(c.winding));
    kv("parity", c.parity == Parity::Sup ? "sup" : "sub");
    kv("state", c.general_state ? "general" : "parity");
    kv("theta", fmt(c.theta));
    kv("phi", fmt(c.phi));
    kv("solver", c.solver == SolverChoice::BranchSum ? "branch_sum"
                 : c.solver == SolverChoice::Series  ? "series"
                 : c.solver == SolverChoice::DDE     ? "dde"
                                                     : "all");
    kv("tau_max", fmt(c.tau_max));
    kv("tau_points", std::to_string(c.tau_points));
    kv("xi_min", fmt(c.xi_min));
    kv("xi_max", fmt(c.xi_max));
    kv("xi_points", std::to_string(c.xi_points));
    kv("eta_min", fmt(c.eta_min));
    kv("eta_max", fmt(c.eta_max));
    kv("eta_points", std::to_string(c.eta_points));
    kv("beta_min", fmt(c.beta_min));
    kv("beta_max", fmt(c.beta_max));
    kv("beta_points", std::to_string(c.beta_points));
    kv("eta_list", c.eta_list);
    kv("field_mode", c.field_mode == FieldMode::Envelope ? "envelope" : "full_fringe");
    kv("step_hint", fmt(c.step_hint));
    kv("theta_samples", std::to_string(c.theta_samples));
    kv("n_max", std::to_string(c.n_max));
    kv("tolerance", fmt(c.tolerance));
    kv("output_dir", c.output_dir);
    kv("threads", std::to_string(c.threads));
    return out;
}

RunManifest run(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunManifest man;
    man.config_text = render(cfg);
    man.library_version = kLibraryVersion;

    Emitter em{cfg.output_dir, {}};
    std::error_code ec;
    std::filesystem::create_directories(em.dir, ec);
    if (ec) throw IoError("cannot create output_dir " + em.dir.string());
    {
        // Probe writability before any computation.
        const auto probe = em.dir / ".write_probe";
        std::ofstream p(probe);
        if (!(p << "ok")) throw IoError("output_dir " + em.dir.string() + " not writable");
        p.close();
        std::filesystem::remove(probe, ec);
    }

    switch (cfg.scenario) {
        case Scenario::Amplitude: run_amplitude(em, cfg, man); break;
        case Scenario::Intensity: run_intensity(em, cfg, man); break;
        case Scenario::Cooperativity: run_cooperativity(em, cfg, man); break;
        case Scenario::NonMarkovianity: run_nonmarkovianity(em, cfg, man); break;
        case Scenario::Entropy: run_entropy(em, cfg, man); break;
        case Scenario::CriticalScan: run_critical_scan(em, cfg, man); break;
        case Scenario::RateScan: run_rate_scan(em, cfg, man); break;
        case Scenario::Validate: run_validate(em, man); break;
    }

    man.files = em.files;
    man.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::json j;
    j["schema_version"] = 1;
    j["library_version"] = man.library_version;
    j["config"] = man.config_text;
    j["wall_time_s"] = man.wall_time_s;
    j["diagnostics"] = man.diagnostics;
    j["files"] = nlohmann::json::array();
    for (const auto& f : man.files)
        j["files"].push_back({{"name", f.name}, {"bytes", f.bytes}, {"fnv1a64", f.fnv1a64}});
    if (cfg.scenario == Scenario::Validate) {
        j["validation_passed"] = man.validation_passed;
    }
    std::ofstream out(em.dir / "run_manifest.json", std::ios::binary);
    if (!(out << j.dump(2) << "\n"))
        throw IoError("write failed for " + (em.dir / "run_manifest.json").string());
    return man;
}

std::vector<ValidationResult> validate_suite() {
    std::vector<ValidationResult> out;
    auto check = [&out](const std::string& name, double delta, double tol) {
        out.push_back({name, delta, tol, std::isfinite(delta) && delta <= tol});
    };

    // Lambert identity on random branches and arguments.
    {
        std::mt19937 rng(20260823u);
        std::uniform_real_distribution<double> uni(-30.0, 30.0);
        std::uniform_int_distribution<int> branch(-3, 3);
        double worst = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const std::complex<double> z(uni(rng), uni(rng));
            if (std::abs(z) < 1e-6) continue;
            const auto w = lambert_w(branch(rng), z);
            worst = std::max(worst,
                             std::abs(w * std::exp(w) - z) / std::max(1.0, std::abs(z)));
        }
        check("lambert_identity", worst, 1e-12);
    }

    check("critical_separation", std::abs(critical_separation(1.0) - 0.556929085522148),
          1e-9);
    check("max_instantaneous_rate",
          std::abs(max_instantaneous_rate(1.0) - 4.59112147666862), 1e-6);
    check("rate_2gamma_beta", std::abs(max_instantaneous_rate(std::exp(-2.0)) - 2.0),
          1e-6);

    // Subradiant plateau 2|c|^2 -> (1+eta/2)^-2.
    {
        Eigen::ArrayXd t(1);
        t[0] = 40.0;
        const auto tr = amplitude_branch_sum({1.0, 1.0, 1.0, 1}, Parity::Sub, t);
        check("subradiant_plateau", std::abs(2.0 * std::norm(tr.c[0]) - 4.0 / 9.0), 1e-4);
    }

    // Cross-solver triangle: branch sum vs series vs DDE.
    {
        const Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(41, 0.0, 10.0);
        double worst = 0.0;
        struct Case {
            double beta, eta;
            Parity par;
        };
        for (const Case& c : {Case{1.0, 0.5, Parity::Sup}, Case{1.0, 1.0, Parity::Sub},
                              Case{0.5, 1.3, Parity::Sup}, Case{0.7, 0.8, Parity::Sub}}) {
            const ModelParams p{1.0, c.beta, c.eta, 1};
            const auto b = amplitude_branch_sum(p, c.par, tau);
            const auto s = amplitude_series(p, c.par, tau);
            const GeneralInitialState init{
                c.par == Parity::Sup ? 0.0 : std::numbers::pi / 2, 0.0};
            const auto d = integrate_dde(p, init, 10.0, c.eta / 64);
            worst = std::max(worst, (b.c - s.c).abs().maxCoeff());
            // Compare the DDE against the branch sum on every 32nd DDE node.
            const long stride = 32;
            Eigen::ArrayXd sub(d.tau.size() / stride + 1);
            for (long i = 0; i < sub.size(); ++i) sub[i] = d.tau[i * stride];
            const auto bd = amplitude_branch_sum(p, c.par, sub);
            for (long i = 0; i < sub.size(); ++i)
                worst = std::max(worst, std::abs(d.c1[i * stride] - bd.c[i]));
        }
        check("solver_triangle", worst, 1e-6);
    }

    // Dicke limit of the DDE at eta = 1e-9.
    {
        double worst = 0.0;
        for (double beta : {0.5, 1.0})
            for (Parity par : {Parity::Sup, Parity::Sub}) {
                const GeneralInitialState init{
                    par == Parity::Sup ? 0.0 : std::numbers::pi / 2, 0.0};
                const auto d = integrate_dde({1.0, beta, 1e-9, 1}, init, 5.0, 1e-3);
                const double rate = 1.0 + parity_sign(par) * beta;
                for (long i = 0; i < d.tau.size(); ++i)
                    worst = std::max(
                        worst, std::abs(d.c1[i] - std::exp(-0.5 * rate * d.tau[i]) /
                                                      std::numbers::sqrt2));
            }
        check("dicke_limit", worst, 1e-6);
    }

    // Emitter + guided-field unitarity at beta = 1.
    {
        double worst = 0.0;
        for (double eta : {0.5, 1.5})
            for (Parity par : {Parity::Sup, Parity::Sub}) {
                const ModelParams p{1.0, 1.0, eta, 1};
                Eigen::ArrayXd t(1);
                t[0] = 20.0;
                const auto tr = amplitude_branch_sum(p, par, t);
                const double total =
                    guided_norm(p, par, 20.0) + 2.0 * std::norm(tr.c[0]);
                worst = std::max(worst, std::abs(total - 1.0));
            }
        check("unitarity_budget", worst, 1e-3);
    }

    // Cooperativity closed form vs quadrature.
    {
        const ModelParams p{1.0, 0.5, 1.0, 1};
        const double closed = cooperativity(p, Parity::Sup).value;
        const double quad =
            guided_norm(p, Parity::Sup, std::numeric_limits<double>::infinity()) /
            (1.0 - p.beta);
        check("cooperativity_quadrature", std::abs(closed - quad),
              1e-3 * std::max(1.0, closed));
    }

    check("bic_delay", std::abs(optimal_bic_delay() - 2.0 * (std::numbers::sqrt2 - 1.0)),
          1e-9);
    return out;
}

}  // namespace wqed
