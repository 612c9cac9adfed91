// model.hpp — Physical configuration and trace containers

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "wqed/errors.hpp"

namespace wqed {

using Complex = std::complex<double>;

// Dimensionless convention: times are tau = gamma*t, rates are in units of
// gamma, positions are xi = gamma*x/v_g.  gamma itself is carried only for
// unit conversions at the interface.
struct ModelParams {
    double gamma{1.0};   // total spontaneous emission rate (sets the scale)
    double beta{1.0};    // coupling efficiency gamma_1D/gamma, in [0,1]
    double eta{0.5};     // separation d*gamma/v_g (feedback delay)
    int winding{1};      // p in phi_p = 2*pi*p (propagation phase)

    double gamma_1d() const { return beta * gamma; }
    double gamma_3d() const { return (1.0 - beta) * gamma; }
    // Carrier frequency over gamma, pinned by omega_0*d/v_g = 2*pi*p.
    double carrier_ratio() const {
        if (eta <= 0.0) throw DomainError("carrier_ratio: requires eta > 0");
        return 2.0 * std::numbers::pi * winding / eta;
    }

    void validate() const {
        if (!(gamma > 0.0)) throw DomainError("ModelParams: gamma must be > 0");
        if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("ModelParams: beta must be in [0,1]");
        if (!(eta >= 0.0)) throw DomainError("ModelParams: eta must be >= 0");
        if (winding < 0) throw DomainError("ModelParams: winding must be >= 0");
    }
};

enum class Parity { Sup, Sub };

inline int parity_sign(Parity p) { return p == Parity::Sup ? +1 : -1; }

// Bloch angles of a single-excitation initial state
// |Psi> = cos(theta)|sup> + e^{i phi} sin(theta)|sub>.
struct GeneralInitialState {
    double theta{0.0};  // 0 = superradiant, pi/2 = subradiant
    double phi{0.0};

    Complex c1() const {
        return (std::cos(theta) + std::exp(Complex(0, phi)) * std::sin(theta)) / std::sqrt(2.0);
    }
    Complex c2() const {
        return (std::cos(theta) - std::exp(Complex(0, phi)) * std::sin(theta)) / std::sqrt(2.0);
    }
};

// One Lambert-W pole of the Laplace-domain amplitude.
struct BranchMode {
    int n{0};
    Complex residue;  // alpha_n
    Complex rate;     // gamma_n / gamma
};

enum class SolverSource { BranchSum, Series, DDE, Markovian };

struct AmplitudeTrace {
    Eigen::ArrayXd tau;    // ascending dimensionless times
    Eigen::ArrayXcd c;     // emitter amplitude c(tau)
    SolverSource source{SolverSource::BranchSum};
    ModelParams params;
    Parity parity{Parity::Sup};
    // Diagnostics (branch sum only): |sum of residues - 1/2| at convergence
    // and the number of branch rows consumed.  Note the residue series sums
    // to 1/2, the Abel mean of c(0-)=0 and c(0+)=1/sqrt(2).
    double residue_sum_defect{0.0};
    int rows_used{0};
};

struct PairTrace {
    Eigen::ArrayXd tau;
    Eigen::ArrayXcd c1, c2;
    ModelParams params;
    GeneralInitialState init;
    double phase{0.0};  // propagation phase actually used
};

}  // namespace wqed
