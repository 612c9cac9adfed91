// ddesolver.cpp

#include "wqed/ddesolver.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "wqed/errors.hpp"

namespace wqed {
namespace {

using Cd = std::complex<double>;

struct State {
    Cd c1, c2;
};

State operator+(State a, State b) { return {a.c1 + b.c1, a.c2 + b.c2}; }
State operator*(double s, State a) { return {s * a.c1, s * a.c2}; }

// Right-hand side with the delayed pair already looked up.
State rhs(State y, State delayed, double beta, Cd eiphi) {
    return {-0.5 * (y.c1 + beta * eiphi * delayed.c2),
            -0.5 * (y.c2 + beta * eiphi * delayed.c1)};
}

// Cubic Lagrange value halfway between nodes j and j+1 of `nodes`, with the
// stencil clamped to [seg_lo, seg_hi] so it never straddles a light-cone
// kink (kinks sit at node indices that are multiples of m).
State midpoint(const std::vector<State>& nodes, int j, int seg_lo, int seg_hi) {
    static constexpr double wc[4] = {-1.0 / 16, 9.0 / 16, 9.0 / 16, -1.0 / 16};
    static constexpr double wl[4] = {5.0 / 16, 15.0 / 16, -5.0 / 16, 1.0 / 16};
    static constexpr double wr[4] = {1.0 / 16, -5.0 / 16, 15.0 / 16, 5.0 / 16};
    const double* w = wc;
    int base = j - 1;
    if (base < seg_lo) {
        base = j;
        w = wl;
    } else if (base + 3 > seg_hi) {
        base = j - 2;
        w = wr;
    }
    State out{Cd(0), Cd(0)};
    for (int k = 0; k < 4; ++k) out = out + w[k] * nodes[base + k];
    return out;
}

PairTrace dicke_ode(const ModelParams& params, const GeneralInitialState& init,
                    double tau_max, double step_hint, double phi) {
    // eta ~ 0: the delayed argument coincides with the current one
    const int n = std::max(1, (int)std::ceil(tau_max / step_hint));
    const double h = tau_max / n;
    const Cd eiphi = std::exp(Cd(0, phi));
    PairTrace trace;
    trace.tau = Eigen::ArrayXd::LinSpaced(n + 1, 0.0, tau_max);
    trace.c1.resize(n + 1);
    trace.c2.resize(n + 1);
    trace.params = params;
    trace.init = init;
    trace.phase = phi;
    State y{init.c1(), init.c2()};
    trace.c1[0] = y.c1;
    trace.c2[0] = y.c2;
    for (int i = 0; i < n; ++i) {
        const State k1 = rhs(y, y, params.beta, eiphi);
        const State y2 = y + (0.5 * h) * k1;
        const State k2 = rhs(y2, y2, params.beta, eiphi);
        const State y3 = y + (0.5 * h) * k2;
        const State k3 = rhs(y3, y3, params.beta, eiphi);
        const State y4 = y + h * k3;
        const State k4 = rhs(y4, y4, params.beta, eiphi);
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        trace.c1[i + 1] = y.c1;
        trace.c2[i + 1] = y.c2;
    }
    return trace;
}

}  // namespace

PairTrace integrate_dde(const ModelParams& params, const GeneralInitialState& init,
                        double tau_max, double step_hint,
                        std::optional<double> phase) {
    params.validate();
    if (!(tau_max > 0.0)) throw ConfigError("integrate_dde: tau_max must be > 0");
    if (!(step_hint > 0.0)) throw ConfigError("integrate_dde: step_hint must be > 0");
    const double phi = phase.value_or(2.0 * std::numbers::pi * params.winding);
    if (params.eta <= 1e-7)  // delay unresolvable in double-step arithmetic
        return dicke_ode(params, init, tau_max, step_hint, phi);

    const int m = (int)std::ceil(params.eta / step_hint);
    if (m < 4)
        throw StepTooLarge("integrate_dde: step hint " + std::to_string(step_hint) +
                           " coarser than eta/4; the delay must be resolved");
    const double h = params.eta / m;
    const int n = (int)std::ceil(tau_max / h - 1e-9);
    const Cd eiphi = std::exp(Cd(0, phi));
    const double beta = params.beta;

    std::vector<State> y(n + 1);
    y[0] = {init.c1(), init.c2()};
    const State zero{Cd(0), Cd(0)};
    for (int i = 0; i < n; ++i) {
        if (i < m) {
            // before the light cone: no feedback anywhere in this step
            const State k1 = rhs(y[i], zero, beta, eiphi);
            const State k2 = rhs(y[i] + (0.5 * h) * k1, zero, beta, eiphi);
            const State k3 = rhs(y[i] + (0.5 * h) * k2, zero, beta, eiphi);
            const State k4 = rhs(y[i] + h * k3, zero, beta, eiphi);
            y[i + 1] = y[i] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            continue;
        }
        const int j = i - m;  // delayed node for the step start
        const int seg_lo = (j / m) * m;
        const State dmid = midpoint(y, j, seg_lo, seg_lo + m);
        const State k1 = rhs(y[i], y[j], beta, eiphi);
        const State k2 = rhs(y[i] + (0.5 * h) * k1, dmid, beta, eiphi);
        const State k3 = rhs(y[i] + (0.5 * h) * k2, dmid, beta, eiphi);
        const State k4 = rhs(y[i] + h * k3, y[j + 1], beta, eiphi);
        y[i + 1] = y[i] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    PairTrace trace;
    trace.tau = Eigen::ArrayXd::LinSpaced(n + 1, 0.0, n * h);
    trace.c1.resize(n + 1);
    trace.c2.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        trace.c1[i] = y[i].c1;
        trace.c2[i] = y[i].c2;
    }
    trace.params = params;
    trace.init = init;
    trace.phase = phi;
    return trace;
}

double convergence_order(const ModelParams& params, const GeneralInitialState& init) {
    params.validate();
    if (!(params.eta > 0.0)) throw DomainError("convergence_order: requires eta > 0");
    if (params.beta == 0.0) return 4.0;  // no delay term: plain RK4 on an exponential
    const double tau_max = 4.0 * params.eta;
    const Cd ch = integrate_dde(params, init, tau_max, params.eta / 16).c1.tail(1)[0];
    const Cd ch2 = integrate_dde(params, init, tau_max, params.eta / 32).c1.tail(1)[0];
    const Cd ch4 = integrate_dde(params, init, tau_max, params.eta / 64).c1.tail(1)[0];
    return std::log2(std::abs(ch - ch2) / std::abs(ch2 - ch4));
}

}  // namespace wqed
