// field.cpp

#include "wqed/field.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "wqed/errors.hpp"
#include "modes.hpp"

namespace wqed {
namespace {

using Cd = std::complex<double>;
constexpr Cd kI{0.0, 1.0};

void check_ascending(const Eigen::ArrayXd& g, const char* name) {
    if (g.size() == 0) throw DomainError(std::string(name) + " must be non-empty");
    if (!g.isFinite().all()) throw DomainError(std::string(name) + " must be finite");
    for (Eigen::Index i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) throw DomainError(std::string(name) + " must be ascending");
}

// One branch mode's contribution to c_a over the detuning grid:
//   alpha * ff(Delta) * (exp((i Delta - rate/2) tau) - 1)/(i Delta - rate/2),
// with the exponential dropped at tau = inf (Riemann-Lebesgue static limit).
void add_mode(Eigen::ArrayXcd& acc, const Eigen::ArrayXd& delta, const Eigen::ArrayXcd& ff,
              Cd alpha, Cd rate, double tau) {
    const Eigen::ArrayXcd denom = kI * delta - 0.5 * rate;
    if (std::isinf(tau)) {
        acc -= alpha * ff / denom;
        return;
    }
    Eigen::ArrayXcd val = ((denom * tau).exp() - 1.0) / denom;
    if (std::abs(rate) < 1e-9) {
        // zero-rate mode: the denominator crosses 0 at Delta = 0
        for (Eigen::Index i = 0; i < denom.size(); ++i)
            if (std::abs(denom[i]) * std::max(1.0, tau) < 1e-4) {
                const Cd x = denom[i] * tau;
                val[i] = tau * (1.0 + 0.5 * x + x * x / 6.0);
            }
    }
    acc += alpha * ff * val;
}

// integral_x^inf sin(t)/t dt
double si_complement(double x) {
    if (x < 20.0) {
        double term = x, si = x;
        for (int k = 1; k <= 60; ++k) {
            term *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
            si += term / (2.0 * k + 1.0);
            if (std::abs(term) < 1e-18 * std::abs(si)) break;
        }
        return 0.5 * std::numbers::pi - si;
    }
    const double x2 = x * x;
    const double f = (1.0 - 2.0 / x2 + 24.0 / (x2 * x2)) / x;
    const double g = (1.0 - 6.0 / x2 + 120.0 / (x2 * x2)) / x2;
    return f * std::cos(x) + g * std::sin(x);
}

// integral_c^inf cos(a Delta)/Delta^2 dDelta, a >= 0
double tail_J(double a, double c) {
    if (a == 0.0) return 1.0 / c;
    return std::cos(a * c) / c - a * si_complement(a * c);
}

}  // namespace

SpectralAmplitude spectral_amplitudes(const ModelParams& params, Parity parity,
                                      double tau, const Eigen::ArrayXd& detuning_grid,
                                      int n_max) {
    params.validate();
    check_ascending(detuning_grid, "detuning_grid");
    if (!(tau >= 0.0)) throw DomainError("spectral_amplitudes: tau must be >= 0");

    SpectralAmplitude out;
    out.detuning_grid = detuning_grid;
    out.tau = tau;
    out.params = params;
    out.parity = parity;
    out.a_values = Eigen::ArrayXcd::Zero(detuning_grid.size());

    const double half_eta = 0.5 * params.eta;
    const double pp = std::numbers::pi * params.winding;
    // kd/2 = pi p + eta Delta / 2
    Eigen::ArrayXcd ff(detuning_grid.size());
    if (parity == Parity::Sup)
        ff = (pp + half_eta * detuning_grid).cos().cast<Cd>();
    else
        ff = (pp + half_eta * detuning_grid).sin().cast<Cd>();

    const Cd pref = -kI * std::sqrt(params.beta / (2.0 * std::numbers::pi));
    if (params.beta > 0.0) {
        if (params.eta == 0.0) {
            // Markovian limit: single collective mode (subradiant form factor
            // sin(pi p) vanishes identically)
            if (parity == Parity::Sup)
                add_mode(out.a_values, detuning_grid, ff, Cd(1.0),
                         Cd(1.0 + params.beta), tau);
        } else {
            detail::ModeTable table(params, parity);
            const int N = n_max > 0 ? n_max : 250;
            if (parity == Parity::Sup) {
                add_mode(out.a_values, detuning_grid, ff, table.residue_of(table.w_branch(0)),
                         table.rate_of(table.w_branch(0)), tau);
                add_mode(out.a_values, detuning_grid, ff, table.residue_of(table.w_branch(-1)),
                         table.rate_of(table.w_branch(-1)), tau);
            } else {
                add_mode(out.a_values, detuning_grid, ff, table.residue_of(table.w_branch(0)),
                         table.rate_of(table.w_branch(0)), tau);
            }
            Eigen::ArrayXcd pair = Eigen::ArrayXcd::Zero(detuning_grid.size());
            for (int j = 1; j <= N; ++j) {
                const int mirror = parity == Parity::Sup ? -j - 1 : -j;
                pair.setZero();
                add_mode(pair, detuning_grid, ff, table.residue_of(table.w_branch(j)),
                         table.rate_of(table.w_branch(j)), tau);
                add_mode(pair, detuning_grid, ff, table.residue_of(table.w_branch(mirror)),
                         table.rate_of(table.w_branch(mirror)), tau);
                out.a_values += pair;
            }
            // pair terms fall off like 1/j^2: integral tail estimate
            out.a_values += double(N) * pair;
        }
        out.a_values *= pref;
    }
    out.b_values = parity == Parity::Sup ? out.a_values : (-out.a_values).eval();
    return out;
}

double guided_norm(const ModelParams& params, Parity parity, double tau,
                   int n_max, double quadrature_cutoff, int quadrature_points) {
    params.validate();
    if (!(params.eta > 0.0)) throw DomainError("guided_norm: requires eta > 0");
    if (!(tau >= 0.0)) throw DomainError("guided_norm: tau must be >= 0");
    if (!(quadrature_cutoff > 0.0) || quadrature_points < 3)
        throw DomainError("guided_norm: bad quadrature request");
    if (params.beta == 0.0 || tau == 0.0) return 0.0;

    const bool pv = parity == Parity::Sub;  // midpoint grid skips Delta = 0
    const bool zero_mode = parity == Parity::Sub && params.beta == 1.0 && std::isinf(tau);
    const double half_eta = 0.5 * params.eta;
    const double pp = std::numbers::pi * params.winding;

    // Asymptotic tail data: |c_a|^2 -> (beta/2pi) ff^2 |e^{i Delta tau} F - S|^2
    // / Delta^2, the boundary terms of integrating the finite-time Fourier
    // transform by parts: F = F(tau) (the mode sum) and S = F(0) = 1;
    // ff^2 = (1 - pm cos(eta Delta))/2.
    detail::ModeTable table(params, parity);
    const double alpha0 = 1.0 / (1.0 + half_eta);  // zero-rate residue (sub, beta=1)
    const double Ftau = std::isinf(tau) ? 0.0 : table.mode_sum(tau);
    const double S = 1.0;
    const double A = Ftau * Ftau + S * S + (zero_mode ? alpha0 * alpha0 : 0.0);
    const double B = std::isinf(tau) ? 0.0 : 2.0 * Ftau * S;
    const double pm = parity == Parity::Sub ? 1.0 : -1.0;

    auto integrate = [&](double cutoff, int points) {
        if (pv && points % 2) ++points;  // keep nodes symmetric off Delta = 0
        Eigen::ArrayXd delta(points);
        Eigen::ArrayXd weight(points);
        if (pv) {
            const double step = 2.0 * cutoff / points;
            for (int k = 0; k < points; ++k) delta[k] = -cutoff + (k + 0.5) * step;
            weight.setConstant(step);
        } else {
            delta = Eigen::ArrayXd::LinSpaced(points, -cutoff, cutoff);
            const double step = 2.0 * cutoff / (points - 1);
            weight.setConstant(step);
            weight[0] = weight[points - 1] = 0.5 * step;
        }
        auto amp = spectral_amplitudes(params, parity, tau, delta, n_max);
        Eigen::ArrayXd integrand = 2.0 * amp.a_values.abs2();
        if (zero_mode) {
            // surviving diagonal of the zero-rate mode's exp(i Delta tau)/(i Delta)
            const double alpha0 = 1.0 / (1.0 + half_eta);
            const Eigen::ArrayXd ff = (pp + half_eta * delta).sin();
            integrand += 2.0 * (params.beta / (2.0 * std::numbers::pi)) *
                         (alpha0 * ff / delta).square();
        }
        // analytic tail of the asymptotic model beyond the cutoff (the odd
        // 1/Delta^3 corrections cancel between the two sides)
        const double tt = std::isinf(tau) ? 0.0 : tau;
        const double tail =
            2.0 * (params.beta / std::numbers::pi) *
            (0.5 * A * tail_J(0.0, cutoff) - 0.5 * pm * A * tail_J(params.eta, cutoff) -
             0.5 * B * tail_J(tt, cutoff) +
             0.25 * pm * B *
                 (tail_J(params.eta + tt, cutoff) + tail_J(std::abs(params.eta - tt), cutoff)));
        return (integrand * weight).sum() + tail;
    };

    double cutoff = quadrature_cutoff;
    int points = quadrature_points;
    for (int round = 0; round < 3; ++round) {
        const double r0 = integrate(cutoff, points);
        const double r_res = integrate(cutoff, 2 * points - 1);
        const double r_cut = integrate(2.0 * cutoff, 2 * points - 1);
        // residual drift per doubling is the next-order (1/Delta^3) tail,
        // ~1e-5 at the default cutoff; accept at 5e-5
        const double tol = 5e-5 * std::max(1.0, std::abs(r0));
        if (std::abs(r_res - r0) <= tol && std::abs(r_cut - r0) <= tol) return r_cut;
        cutoff *= 2.0;
        points = 2 * points - 1;
    }
    throw QuadratureNotConverged("guided_norm: doubling cutoff/points did not stabilize");
}

FieldGrid intensity_map(const ModelParams& params, Parity parity,
                        const Eigen::ArrayXd& xi_grid, const Eigen::ArrayXd& tau_grid,
                        int n_max, FieldMode mode) {
    params.validate();
    if (!(params.eta > 0.0)) throw DomainError("intensity_map: requires eta > 0");
    check_ascending(xi_grid, "xi_grid");
    check_ascending(tau_grid, "tau_grid");
    if (tau_grid[0] < 0.0) throw DomainError("tau_grid must be non-negative");

    FieldGrid out;
    out.xi_grid = xi_grid;
    out.tau_grid = tau_grid;
    out.mode = mode;
    out.params = params;
    out.parity = parity;
    out.intensity = Eigen::MatrixXd::Zero(xi_grid.size(), tau_grid.size());
    if (params.beta == 0.0) return out;

    detail::ModeTable table(params, parity);
    // F(u) = sum_n alpha_n exp(-rate_n u / 2) = sqrt(2) c(u); the light-cone
    // sums are this one function at shifted retarded times
    std::unordered_map<long long, double> memo;
    auto F = [&](double u) {
        long long key;
        static_assert(sizeof(key) == sizeof(u));
        std::memcpy(&key, &u, sizeof(key));
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const double v = table.mode_sum(u, n_max);
        memo.emplace(key, v);
        return v;
    };

    const double half_eta = 0.5 * params.eta;
    const double w0 = 2.0 * std::numbers::pi * params.winding / params.eta;
    const double sigma2 = parity == Parity::Sup ? 1.0 : -1.0;  // emitter-2 source sign
    const bool fringe = mode == FieldMode::FullFringe;

    for (Eigen::Index ix = 0; ix < xi_grid.size(); ++ix) {
        const double d1 = xi_grid[ix] + half_eta;  // distance from emitter at -eta/2
        const double d2 = xi_grid[ix] - half_eta;
        for (Eigen::Index it = 0; it < tau_grid.size(); ++it) {
            const double tau = tau_grid[it];
            Cd right(0.0), left(0.0);
            if (d1 > 0.0 && tau >= d1)
                right += F(tau - d1) * (fringe ? std::polar(1.0, w0 * d1) : Cd(1.0));
            if (d2 > 0.0 && tau >= d2)
                right += sigma2 * F(tau - d2) * (fringe ? std::polar(1.0, w0 * d2) : Cd(1.0));
            if (d1 < 0.0 && tau >= -d1)
                left += F(tau + d1) * (fringe ? std::polar(1.0, -w0 * d1) : Cd(1.0));
            if (d2 < 0.0 && tau >= -d2)
                left += sigma2 * F(tau + d2) * (fringe ? std::polar(1.0, -w0 * d2) : Cd(1.0));
            const double I = fringe ? std::norm(right + left)
                                    : std::norm(right) + std::norm(left);
            out.intensity(ix, it) = 0.25 * params.beta * I;
        }
    }
    return out;
}

}  // namespace wqed
