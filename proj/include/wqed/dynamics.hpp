// dynamics.hpp — Analytic emitter dynamics: branch-mode sums, round-trip
// series, Markovian limit, and the decay-rate observables

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wqed/model.hpp"

namespace wqed {

// All Lambert-W poles with |row index| <= n_max: branches n in [-n_max, n_max].
// Requires eta > 0; propagates lambert errors (e.g. beta = 0).
std::vector<BranchMode> branch_modes(const ModelParams& params, Parity parity, int n_max);

// c(tau) = (1/sqrt(2)) sum_n alpha_n exp(-gamma_n tau/2), with resummed
// branch-row tails.
// n_max = 0 lets the library pick the truncation; a positive n_max is a hard
// row cap (TruncationNotConverged if insufficient).  Requires eta > 0.
AmplitudeTrace amplitude_branch_sum(const ModelParams& params, Parity parity,
                                    const Eigen::ArrayXd& tau_grid, int n_max = 0);

// Exact finite round-trip series; j counts photon round trips.
AmplitudeTrace amplitude_series(const ModelParams& params, Parity parity,
                                const Eigen::ArrayXd& tau_grid);

// Coincident-emitter (eta = 0) Dicke limit c = exp(-(1 +/- beta) tau/2)/sqrt(2).
AmplitudeTrace amplitude_markovian(const ModelParams& params, Parity parity,
                                   const Eigen::ArrayXd& tau_grid);

// eta_c = 2 W_0(1/(e beta)); onset of oscillatory superradiant decay.
double critical_separation(double beta);

struct InstantaneousRate {
    double value;      // Re gamma_inst / gamma
    bool oscillatory;  // eta > eta_c: principal-branch rate is complex
};

// gamma_inst/gamma = 1 - W_0(-(eta/2) beta e^{eta/2})/(eta/2).
InstantaneousRate instantaneous_rate(const ModelParams& params);

// Maximum of the above over eta, attained at eta = eta_c.
double max_instantaneous_rate(double beta);

// First order in eta: (1 +/- beta)/(1 -/+ beta eta/2).
double effective_rate_small_eta(const ModelParams& params, Parity parity);

// Per-emitter steady excitation for a subradiant start: 1/(2(1+eta/2)^2) at
// beta = 1, zero otherwise.
double subradiant_steady_population(const ModelParams& params);

// |<Psi(inf)|Psi_BIC>|^2 = 1/(1+eta/2) (beta = 1, subradiant start).
double bic_overlap(const ModelParams& params);

}  // namespace wqed
