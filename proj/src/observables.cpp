// observables.cpp

#include "wqed/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wqed/dynamics.hpp"
#include "wqed/errors.hpp"

namespace wqed {
namespace {

using Cd = std::complex<double>;

// Double branch sum over modes with |n| <= half the table, then the full
// table, so the caller can read off a tail estimate.
double coop_partial(const std::vector<BranchMode>& modes, Parity parity, double eta,
                    int n_cap) {
    const double pm = parity_sign(parity);
    Cd sum = 0.0;
    for (const auto& mn : modes) {
        if (std::abs(mn.n) > n_cap) continue;
        const Cd en = std::exp(-0.5 * eta * mn.rate);
        for (const auto& mm : modes) {
            if (std::abs(mm.n) > n_cap) continue;
            const Cd em = std::exp(-0.5 * eta * std::conj(mm.rate));
            sum += mn.residue * std::conj(mm.residue) / (mn.rate + std::conj(mm.rate)) *
                   (2.0 + pm * (en + em));
        }
    }
    return sum.real();
}

// (c_sup, c_sub) amplitude pair on a grid, routing eta ~ 0 to the Dicke
// closed form.
std::pair<Eigen::ArrayXcd, Eigen::ArrayXcd> parity_pair(const ModelParams& params,
                                                        const Eigen::ArrayXd& grid) {
    if (params.eta <= 1e-7) {
        return {amplitude_markovian(params, Parity::Sup, grid).c,
                amplitude_markovian(params, Parity::Sub, grid).c};
    }
    return {amplitude_branch_sum(params, Parity::Sup, grid).c,
            amplitude_branch_sum(params, Parity::Sub, grid).c};
}

// Parity-dephased l1 coherence 2[cos^2|c_sup|^2 + sin^2|c_sub|^2] at a
// single time, for the refinement passes.
double coherence_at(const ModelParams& params, double theta, double tau) {
    Eigen::ArrayXd one(1);
    one[0] = tau;
    auto [cs, cb] = parity_pair(params, one);
    const double ct = std::cos(theta), st = std::sin(theta);
    return 2.0 * (ct * ct * std::norm(cs[0]) + st * st * std::norm(cb[0]));
}

// Centered finite-difference derivative of the coherence.
double coherence_slope(const ModelParams& params, double theta, double tau) {
    const double h = 1e-3;
    const double lo = std::max(0.0, tau - h);
    return (coherence_at(params, theta, tau + h) - coherence_at(params, theta, lo)) /
           (tau + h - lo);
}

}  // namespace

ObservableScalar cooperativity(const ModelParams& params, Parity parity, int n_max) {
    params.validate();
    ObservableScalar out{ObservableName::Cooperativity, 0.0, params, {}};
    if (params.beta == 0.0) return out;  // no guided emission at all
    if (params.beta == 1.0)
        throw DivergentError("cooperativity: gamma_3D = 0 at beta = 1, C diverges");
    const double pref = params.beta / (1.0 - params.beta);
    if (params.eta == 0.0) {
        // Coincident emitters: cos(kd/2) = 1, sin(kd/2) = 0.
        out.value = parity == Parity::Sup ? 2.0 * pref : 0.0;
        return out;
    }
    // The truncated double sum converges like 1/N (increments halve on each
    // doubling of the branch cap), so one Richardson step removes the tail.
    const int n = n_max > 0 ? std::max(4, n_max) : 400;
    const auto modes = branch_modes(params, parity, n);
    const double quarter = coop_partial(modes, parity, params.eta, n / 4);
    const double half = coop_partial(modes, parity, params.eta, n / 2);
    const double full = coop_partial(modes, parity, params.eta, n);
    const double extrap = 2.0 * full - half;
    const double check = 2.0 * half - quarter;  // same extrapolation, coarser
    if (std::abs(extrap - check) > 1e-4 * std::max(1.0, std::abs(extrap)))
        throw TruncationNotConverged("cooperativity: branch cap " + std::to_string(n) +
                                     " insufficient");
    out.value = pref * extrap;
    out.metadata["rows"] = n;
    out.metadata["tail_estimate"] = pref * std::abs(extrap - check);
    return out;
}

CoherenceTrace coherence_trace(const ModelParams& params, const GeneralInitialState& state,
                               const Eigen::ArrayXd& tau_grid) {
    params.validate();
    auto [cs, cb] = parity_pair(params, tau_grid);
    const double ct = std::cos(state.theta), st = std::sin(state.theta);
    const Cd ph = std::exp(Cd(0, state.phi));
    CoherenceTrace trace;
    trace.tau_grid = tau_grid;
    const Eigen::ArrayXcd c1 = ct * cs + ph * st * cb;
    const Eigen::ArrayXcd c2 = ct * cs - ph * st * cb;
    trace.coherence = 2.0 * c1.abs() * c2.abs();
    trace.sm_expression = 2.0 * (ct * ct * cs.abs2() - st * st * cb.abs2());
    trace.state = state;
    trace.params = params;
    return trace;
}

ObservableScalar non_markovianity(const ModelParams& params, double tau_max,
                                  int theta_samples) {
    params.validate();
    if (theta_samples < 1) throw ConfigError("non_markovianity: theta_samples must be >= 1");
    if (tau_max == 0.0) tau_max = 50.0 * std::max(1.0, params.eta);
    if (!(tau_max > 0.0)) throw ConfigError("non_markovianity: tau_max must be > 0");

    // Sample grid: uniform base plus the delay kinks at tau = j eta, where
    // the coherence derivative can jump.
    std::vector<double> nodes;
    const int base = 2001;
    for (int i = 0; i < base; ++i) nodes.push_back(tau_max * i / (base - 1));
    if (params.eta > tau_max / 2048)
        for (double k = params.eta; k < tau_max; k += params.eta) nodes.push_back(k);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    Eigen::ArrayXd grid = Eigen::Map<Eigen::ArrayXd>(nodes.data(), (long)nodes.size());

    auto [cs, cb] = parity_pair(params, grid);
    const double settled = std::abs(cs.tail(1)[0] * std::conj(cs.tail(1)[0]));
    const double plateau = subradiant_steady_population(params);
    const double sub_residual = std::abs(std::norm(cb.tail(1)[0]) - plateau);
    if (settled > 1e-6 || sub_residual > 1e-6)
        throw ConfigError("non_markovianity: trace not settled by tau_max = " +
                          std::to_string(tau_max));

    double best = 0.0, best_theta = 0.0;
    for (int s = 0; s < theta_samples; ++s) {
        const double theta = theta_samples == 1
                                 ? std::numbers::pi / 2
                                 : std::numbers::pi / 2 * s / (theta_samples - 1);
        const double ct = std::cos(theta), st = std::sin(theta);
        const Eigen::ArrayXd coh = 2.0 * (ct * ct * cs.abs2() + st * st * cb.abs2());

        // Locate the extremum bracketing each rise, refine by bisection on
        // the finite-difference slope, and add up the refined rises.
        double n_meas = 0.0;
        long i = 0;
        const long m = grid.size();
        while (i + 1 < m) {
            if (coh[i + 1] <= coh[i]) {
                ++i;
                continue;
            }
            long j = i;
            while (j + 1 < m && coh[j + 1] > coh[j]) ++j;
            double lo = grid[i];  // local minimum in [grid[i-1], grid[i+1]]
            if (i > 0) {
                double a = grid[i - 1], b = grid[i + 1];
                for (int it = 0; it < 40 && b - a > 1e-8; ++it) {
                    const double mid = 0.5 * (a + b);
                    (coherence_slope(params, theta, mid) < 0.0 ? a : b) = mid;
                }
                lo = 0.5 * (a + b);
            }
            double hi = grid[j];  // local maximum in [grid[j-1], grid[j+1]]
            if (j + 1 < m) {
                double a = grid[j - 1], b = grid[j + 1];
                for (int it = 0; it < 40 && b - a > 1e-8; ++it) {
                    const double mid = 0.5 * (a + b);
                    (coherence_slope(params, theta, mid) > 0.0 ? a : b) = mid;
                }
                hi = 0.5 * (a + b);
            }
            n_meas += std::max(0.0, coherence_at(params, theta, hi) -
                                        coherence_at(params, theta, lo));
            i = j + 1;
        }
        if (n_meas > best) {
            best = n_meas;
            best_theta = theta;
        }
    }

    ObservableScalar out{ObservableName::NonMarkovianity, best, params, {}};
    out.metadata["argmax_theta"] = best_theta;
    out.metadata["tau_max"] = tau_max;
    out.metadata["theta_samples"] = theta_samples;
    return out;
}

Eigen::ArrayXd linear_entropy_trace(const ModelParams& params, Parity parity,
                                    const Eigen::ArrayXd& tau_grid) {
    params.validate();
    const auto trace = params.eta <= 1e-7 ? amplitude_markovian(params, parity, tau_grid)
                                          : amplitude_branch_sum(params, parity, tau_grid);
    const Eigen::ArrayXd p = trace.c.abs2();
    // Clamp rounding spill at the S = 0 and S = 1/2 boundary cases.
    return (4.0 * p * (1.0 - 2.0 * p)).max(0.0).min(0.5);
}

double optimal_bic_delay() {
    const double analytic = 2.0 * (std::numbers::sqrt2 - 1.0);
    // Scan the steady-state entropy S(eta) = 4p(1-2p), p = 1/(2(1+eta/2)^2).
    double best = 0.0, arg = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double eta = 2.0 * i / 20000;
        const double p = 0.5 / ((1.0 + 0.5 * eta) * (1.0 + 0.5 * eta));
        const double s = 4.0 * p * (1.0 - 2.0 * p);
        if (s > best) {
            best = s;
            arg = eta;
        }
    }
    if (std::abs(arg - analytic) > 1e-3)
        throw ComputeError("optimal_bic_delay: scan maximizer disagrees with 2(sqrt(2)-1)");
    return analytic;
}

}  // namespace wqed
