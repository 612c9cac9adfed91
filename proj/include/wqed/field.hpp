// field.hpp — Guided-field spectral amplitudes, norm quadrature, and
// space-time intensity maps from the closed-form light-cone expressions

#pragma once

#include <Eigen/Dense>

#include "wqed/model.hpp"

namespace wqed {

struct SpectralAmplitude {
    Eigen::ArrayXd detuning_grid;  // (omega - omega_0)/gamma
    Eigen::ArrayXcd a_values;      // right-moving mode amplitude c_a
    Eigen::ArrayXcd b_values;      // left-moving; = a (sup) or -a (sub)
    double tau{0.0};               // may be +inf (static spectrum)
    ModelParams params;
    Parity parity{Parity::Sup};
};

enum class FieldMode { Envelope, FullFringe };

struct FieldGrid {
    Eigen::ArrayXd xi_grid;     // positions xi = gamma x / v_g
    Eigen::ArrayXd tau_grid;
    Eigen::MatrixXd intensity;  // (xi index, tau index), >= 0
    FieldMode mode{FieldMode::Envelope};
    ModelParams params;
    Parity parity{Parity::Sup};
};

// Closed-form branch-sum spectral amplitudes at time tau (tau = +inf gives
// the emitted-spectrum limit).  Form factor cos(kd/2) for superradiant,
// sin(kd/2) for subradiant, kd/2 = pi p + eta Delta/2.  n_max = 0 selects
// the library default truncation.
SpectralAmplitude spectral_amplitudes(const ModelParams& params, Parity parity,
                                      double tau, const Eigen::ArrayXd& detuning_grid,
                                      int n_max = 0);

// Integral of |c_a|^2 + |c_b|^2 over detuning (the guided emission
// probability up to time tau; tau may be +inf).  Uniform trapezoid for the
// superradiant integrand; half-step-offset midpoint grid for the subradiant
// one, which takes the principal value across the zero-rate pole at
// Delta = 0.  Cutoff and point count double until stable to 1e-5.
double guided_norm(const ModelParams& params, Parity parity, double tau,
                   int n_max = 0, double quadrature_cutoff = 50.0,
                   int quadrature_points = 20001);

// Normalized intensity I(xi, tau) from the four light-cone terms per branch
// mode.  Envelope drops the optical carrier within each propagation
// direction (the Fig.-4 rendering); FullFringe keeps carriers
// exp(-i w0 (tau -/+ tau_i)) with w0/gamma = 2 pi p / eta.
FieldGrid intensity_map(const ModelParams& params, Parity parity,
                        const Eigen::ArrayXd& xi_grid, const Eigen::ArrayXd& tau_grid,
                        int n_max = 0, FieldMode mode = FieldMode::Envelope);

}  // namespace wqed
