// ddesolver.hpp — Method-of-steps RK4 integration of the delay equation of
// motion; the model-independent oracle for arbitrary phase and initial state

#pragma once

#include <optional>

#include <Eigen/Dense>

#include "wqed/model.hpp"

namespace wqed {

// Integrates
//   dc_m/dtau = -(1/2)[c_m(tau) + beta e^{i phi} c_n(tau - eta) Theta(tau - eta)]
// on a uniform grid whose step exactly divides eta, so delayed lookups hit
// grid nodes.  phase overrides the default phi = 2*pi*winding.  History for
// tau < 0 is identically zero.
// Errors: ConfigError (tau_max <= 0, step_hint <= 0), StepTooLarge (step
// hint coarser than eta/4).
PairTrace integrate_dde(const ModelParams& params, const GeneralInitialState& init,
                        double tau_max, double step_hint,
                        std::optional<double> phase = std::nullopt);

// Empirical convergence order from Richardson halving on [0, 4 eta]; the
// derivative kink at tau = eta limits the global order to ~4 from below.
// Returns 4 for beta = 0 (no delay term, integrator is plain RK4).
double convergence_order(const ModelParams& params, const GeneralInitialState& init);

}  // namespace wqed
