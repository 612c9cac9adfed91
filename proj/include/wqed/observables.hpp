// observables.hpp — Derived scalar observables: cooperativity, l1-coherence
// non-Markovianity, and emitter–field linear entropy

#pragma once

#include <map>
#include <string>

#include <Eigen/Dense>

#include "wqed/model.hpp"

namespace wqed {

enum class ObservableName { Cooperativity, NonMarkovianity, LinearEntropy, BICOverlap };

struct ObservableScalar {
    ObservableName name{ObservableName::Cooperativity};
    double value{0.0};
    ModelParams params;
    // Truncation / quadrature diagnostics (rows used, tail estimates, argmax
    // angles), keyed by short names.
    std::map<std::string, double> metadata;
};

struct CoherenceTrace {
    Eigen::ArrayXd tau_grid;
    Eigen::ArrayXd coherence;     // l1 norm 2|c_1||c_2|, >= 0
    Eigen::ArrayXd sm_expression; // 2[cos^2(theta)|c_sup|^2 - sin^2(theta)|c_sub|^2]
    GeneralInitialState state;
    ModelParams params;
};

// C = beta/(1-beta) sum_{m,n} alpha_n alpha_m^* / (gamma_n + gamma_m^*)
//     * [2 +/- (e^{-eta gamma_n/2} + e^{-eta gamma_m^*/2})]
// (+ superradiant, - subradiant).  Closed double branch sum; beta = 0 returns
// 0, beta = 1 raises DivergentError (gamma_3D = 0).  n_max = 0 picks the
// default truncation; the relative tail estimate goes in metadata.
ObservableScalar cooperativity(const ModelParams& params, Parity parity, int n_max = 0);

// l1 coherence of the reduced two-emitter state along the evolution of
// |Psi(0)> = cos(theta)|sup> + e^{i phi} sin(theta)|sub>.  The only nonzero
// off-diagonals are the eg/ge pair, so the norm is 2|c_1||c_2|.  The SM's
// general-theta display (a difference of squares, which can go negative) is
// reported alongside for comparison.
CoherenceTrace coherence_trace(const ModelParams& params, const GeneralInitialState& state,
                               const Eigen::ArrayXd& tau_grid);

// N = max_theta of the integral of dC/dtau over the regions where the
// coherence grows.  The scanned family is the parity-dephased l1 norm
// C_theta = 2[cos^2(theta)|c_sup|^2 + sin^2(theta)|c_sub|^2], which reduces
// to 2|c|^2 at the parity endpoints and is monotone for eta = 0 at every
// beta, so revivals of the collective populations are what gets counted.
// tau_max = 0 selects the default 50*max(1, eta); raises ConfigError when
// the trace has not settled by tau_max (plateau subtracted first).
// Metadata records the argmax theta.
ObservableScalar non_markovianity(const ModelParams& params, double tau_max = 0.0,
                                  int theta_samples = 9);

// S(tau) = 4|c|^2 (1 - 2|c|^2) for a parity initial state; in [0, 1/2].
Eigen::ArrayXd linear_entropy_trace(const ModelParams& params, Parity parity,
                                    const Eigen::ArrayXd& tau_grid);

// The delay maximizing the steady-state linear entropy of the subradiant
// beta = 1 state: eta* = 2(sqrt(2)-1), cross-checked by a numeric scan.
double optimal_bic_delay();

}  // namespace wqed
