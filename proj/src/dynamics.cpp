// dynamics.cpp

#include "wqed/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "wqed/errors.hpp"
#include "wqed/lambert.hpp"
#include "modes.hpp"

namespace wqed {
namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

void check_grid(const Eigen::ArrayXd& tau) {
    if (tau.size() == 0) throw DomainError("tau_grid must be non-empty");
    if (tau[0] < 0.0) throw DomainError("tau_grid must be non-negative");
    for (Eigen::Index i = 1; i < tau.size(); ++i)
        if (!(tau[i] >= tau[i - 1])) throw DomainError("tau_grid must be ascending");
    if (!tau.isFinite().all()) throw DomainError("tau_grid must be finite");
}

}  // namespace

std::vector<BranchMode> branch_modes(const ModelParams& params, Parity parity, int n_max) {
    if (n_max < 0) throw DomainError("branch_modes: n_max must be >= 0");
    detail::ModeTable table(params, parity);
    std::vector<BranchMode> modes;
    modes.reserve(2 * n_max + 1);
    for (int n = -n_max; n <= n_max; ++n) {
        const detail::Cd w = table.w_branch(n);
        modes.push_back({n, table.residue_of(w), table.rate_of(w)});
    }
    return modes;
}

AmplitudeTrace amplitude_branch_sum(const ModelParams& params, Parity parity,
                                    const Eigen::ArrayXd& tau_grid, int n_max) {
    check_grid(tau_grid);
    if (!(params.eta > 0.0))
        throw DomainError("amplitude_branch_sum: eta = 0 has no branch structure; "
                          "use amplitude_markovian");
    AmplitudeTrace trace;
    trace.tau = tau_grid;
    trace.c.resize(tau_grid.size());
    trace.source = SolverSource::BranchSum;
    trace.params = params;
    trace.parity = parity;

    if (params.beta == 0.0) {
        // single pole at s = -gamma/2, no feedback
        trace.c = (-0.5 * tau_grid).exp().cast<detail::Cd>() * kInvSqrt2;
        trace.rows_used = 1;
        trace.residue_sum_defect = 0.0;
        return trace;
    }

    detail::ModeTable table(params, parity);
    int rows_max = 0;
    for (Eigen::Index i = 0; i < tau_grid.size(); ++i) {
        if (tau_grid[i] == 0.0) {
            // jump point of the inverse Laplace transform: take the
            // right-sided limit (the physical initial condition)
            trace.c[i] = kInvSqrt2;
            continue;
        }
        int rows = 0;
        trace.c[i] = kInvSqrt2 * table.mode_sum(tau_grid[i], n_max, &rows);
        rows_max = std::max(rows_max, rows);
    }
    // Residue completeness diagnostic: the mode series at tau = 0 sums to the
    // Abel mean 1/2, not to c(0+) sqrt(2) = 1.
    trace.residue_sum_defect = std::abs(table.residue_sum(n_max) - 0.5);
    trace.rows_used = rows_max;
    return trace;
}

AmplitudeTrace amplitude_series(const ModelParams& params, Parity parity,
                                const Eigen::ArrayXd& tau_grid) {
    check_grid(tau_grid);
    params.validate();
    if (!(params.eta > 0.0))
        throw DomainError("amplitude_series: series degenerates at eta = 0; "
                          "use amplitude_markovian");
    AmplitudeTrace trace;
    trace.tau = tau_grid;
    trace.c.resize(tau_grid.size());
    trace.source = SolverSource::Series;
    trace.params = params;
    trace.parity = parity;

    // Upper sign (superradiant) carries (-beta)^j.
    const double sgn = parity == Parity::Sup ? -1.0 : 1.0;
    const double lbeta = params.beta > 0.0 ? std::log(params.beta) : 0.0;
    for (Eigen::Index i = 0; i < tau_grid.size(); ++i) {
        const double tau = tau_grid[i];
        double sum = std::exp(-0.5 * tau);  // j = 0 round trip
        if (params.beta > 0.0) {
            const int jmax = (int)std::floor(tau / params.eta);
            for (int j = 1; j <= jmax; ++j) {
                const double x = 0.5 * (tau - j * params.eta);
                if (x <= 0.0) continue;  // Theta(0) term vanishes for j >= 1
                // (±beta)^j x^j e^{-x} / j! via logs for stability
                const double mag = std::exp(j * std::log(x) + j * lbeta - std::lgamma(j + 1.0) - x);
                sum += (j % 2 == 0 ? 1.0 : sgn) * mag;
            }
        }
        trace.c[i] = kInvSqrt2 * sum;
    }
    return trace;
}

AmplitudeTrace amplitude_markovian(const ModelParams& params, Parity parity,
                                   const Eigen::ArrayXd& tau_grid) {
    check_grid(tau_grid);
    params.validate();
    AmplitudeTrace trace;
    trace.tau = tau_grid;
    const double rate = 1.0 + parity_sign(parity) * params.beta;
    trace.c = (-0.5 * rate * tau_grid).exp().cast<detail::Cd>() * kInvSqrt2;
    trace.source = SolverSource::Markovian;
    trace.params = params;
    trace.parity = parity;
    return trace;
}

double critical_separation(double beta) {
    if (!(beta > 0.0)) throw DomainError("critical_separation: beta must be > 0");
    return 2.0 * lambert_w_real(0, 1.0 / (std::numbers::e * beta));
}

InstantaneousRate instantaneous_rate(const ModelParams& params) {
    params.validate();
    if (!(params.eta > 0.0)) throw DomainError("instantaneous_rate: requires eta > 0");
    if (!(params.beta > 0.0)) throw DomainError("instantaneous_rate: requires beta > 0");
    const double a = -0.5 * params.eta * params.beta * std::exp(0.5 * params.eta);
    const auto w = lambert_w(0, a);
    return {1.0 - w.real() / (0.5 * params.eta), std::abs(w.imag()) > 1e-10};
}

double max_instantaneous_rate(double beta) {
    if (!(beta > 0.0 && beta <= 1.0))
        throw DomainError("max_instantaneous_rate: beta must be in (0, 1]");
    // 1 - W_0(-1/e)/W_0(1/(e beta)) with W_0(-1/e) = -1
    return 1.0 + 1.0 / lambert_w_real(0, 1.0 / (std::numbers::e * beta));
}

double effective_rate_small_eta(const ModelParams& params, Parity parity) {
    params.validate();
    const int s = parity_sign(parity);
    const double denom = 1.0 - s * params.beta * params.eta / 2.0;
    if (!(denom > 0.0))
        throw DomainError("effective_rate_small_eta: 1 - beta*eta/2 must be positive");
    return (1.0 + s * params.beta) / denom;
}

double subradiant_steady_population(const ModelParams& params) {
    params.validate();
    if (params.beta < 1.0) return 0.0;  // any loss drains the excitation
    const double f = 1.0 + 0.5 * params.eta;
    return 1.0 / (2.0 * f * f);
}

double bic_overlap(const ModelParams& params) {
    params.validate();
    if (params.beta != 1.0) throw DomainError("bic_overlap: defined for beta = 1");
    return 1.0 / (1.0 + 0.5 * params.eta);
}

}  // namespace wqed
