// lambert.cpp — Halley iteration with branch-aware initial guesses

#include "wqed/lambert.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "wqed/errors.hpp"

namespace wqed {
namespace {

using Cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
constexpr double kInvE = 1.0 / std::numbers::e;
constexpr int kMaxIter = 50;

// Halley's method on f(w) = w e^w - z.  Returns nullopt if it fails to
// settle within kMaxIter steps.
std::optional<Cd> halley(Cd z, Cd w) {
    Cd best = w;
    double best_f = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxIter; ++it) {
        const Cd ew = std::exp(w);
        const Cd f = w * ew - z;
        if (std::abs(f) < best_f) {
            best_f = std::abs(f);
            best = w;
        }
        Cd denom = ew * (w + 1.0);
        const Cd two_wp1 = 2.0 * (w + 1.0);
        if (std::abs(two_wp1) > 1e-12) denom -= (w + 2.0) * f / two_wp1;
        if (denom == Cd(0.0)) break;
        const Cd dw = f / denom;
        w -= dw;
        if (std::abs(dw) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) {
            const Cd f2 = w * std::exp(w) - z;
            if (std::abs(f2) < best_f) {
                best_f = std::abs(f2);
                best = w;
            }
            break;
        }
    }
    if (!std::isfinite(best_f)) return std::nullopt;
    return best;
}

// Achievable residual degrades with |Im w| (argument reduction in exp).
bool residual_ok(Cd z, Cd w) {
    return std::abs(w * std::exp(w) - z) <=
           std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z)) *
               (64.0 + 8.0 * std::abs(w));
}

// Branch membership via the unwinding relation
//   w + Log(w) = Log(z) + 2*pi*i*n,
// which identifies W_n for every branch; the single exception is W_{-1} on
// its real segment z in (-1/e, 0), where the principal logs conspire to give
// n = 0 (handled by the caller through the real path).
bool on_branch(int n, Cd z, Cd w) {
    if (w == Cd(0.0)) return n == 0;
    const double k = (w + std::log(w) - std::log(z)).imag() / (2.0 * kPi);
    return std::abs(k - n) < 0.25;
}

Cd branch_point_series(Cd p) {
    // W = -1 + p - p^2/3 + 11/72 p^3 - 43/540 p^4, p = ±sqrt(2(e z + 1))
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * 43.0 / 540.0)));
}

// Contractive prefix for the log-form fixed point w = L1 - log(w); stabilizes
// the starting point onto the wanted sheet before Halley takes over.
Cd log_iterated_guess(Cd L1) {
    Cd w = L1 - std::log(L1);
    for (int i = 0; i < 12; ++i) {
        const Cd next = L1 - std::log(w);
        if (std::abs(next - w) < 1e-3 * std::abs(next)) { w = next; break; }
        w = next;
    }
    return w;
}

}  // namespace

Cd lambert_w(int n, Cd z) {
    if (!(std::isfinite(z.real()) && std::isfinite(z.imag())))
        throw DomainError("lambert_w: z must be finite");
    if (z == Cd(0.0)) {
        if (n == 0) return Cd(0.0);
        throw InvalidBranch("lambert_w: branch " + std::to_string(n) + " is singular at z = 0");
    }
    // Branch point: W_0 and W_{-1} meet at -1/e.
    if (std::abs(z + kInvE) < 1e-12 && (n == 0 || n == -1)) return Cd(-1.0);
    // Real segment [-1/e, 0): both real roots carry unwinding number 0, so
    // the branch test below cannot separate W_0 from W_{-1}; use the real
    // path, which distinguishes them by w >= -1 vs w <= -1.
    if ((n == 0 || n == -1) && z.imag() == 0.0 && z.real() < 0.0 &&
        z.real() >= -kInvE - 1e-15)
        return Cd(lambert_w_real(n, z.real()), 0.0);

    const Cd L1 = std::log(z) + Cd(0.0, 2.0 * kPi * n);

    // Candidate initial guesses, most specific first.
    Cd guesses[6];
    int ng = 0;
    if (n == 0 && std::abs(z) < 0.05) {
        guesses[ng++] = z * (1.0 + z * (-1.0 + z * (1.5 - z * (8.0 / 3.0))));
    }
    if ((n == 0 || n == -1 || n == 1) && std::abs(z + kInvE) < 0.25) {
        const Cd p = std::sqrt(2.0 * (kE * z + 1.0));
        guesses[ng++] = branch_point_series(n == 0 ? p : -p);
        guesses[ng++] = branch_point_series(n == 0 ? -p : p);
    }
    if (std::abs(L1) > 2.0) guesses[ng++] = log_iterated_guess(L1);
    if (n == 0) guesses[ng++] = std::log(1.0 + z);  // wide-basin principal guess
    {
        const Cd L2 = std::log(L1);
        guesses[ng++] = L1 - L2 + L2 / L1 + L2 * (L2 - 2.0) / (2.0 * L1 * L1);
    }

    Cd last(0.0);
    for (int i = 0; i < ng; ++i) {
        if (!(std::isfinite(guesses[i].real()) && std::isfinite(guesses[i].imag()))) continue;
        auto w = halley(z, guesses[i]);
        if (!w) continue;
        last = *w;
        if (residual_ok(z, *w) && on_branch(n, z, *w)) return *w;
    }
    throw NonConvergence("lambert_w: no converged root on branch n = " + std::to_string(n),
                         last);
}

double lambert_w_real(int n, double x) {
    if (n != 0 && n != -1)
        throw DomainError("lambert_w_real: branch must be 0 or -1");
    if (!std::isfinite(x)) throw DomainError("lambert_w_real: x must be finite");
    if (n == 0 && x < -kInvE - 1e-15)
        throw DomainError("lambert_w_real: branch 0 requires x >= -1/e");
    if (n == -1 && !(x >= -kInvE - 1e-15 && x < 0.0))
        throw DomainError("lambert_w_real: branch -1 requires -1/e <= x < 0");
    if (std::abs(x + kInvE) < 1e-12) return -1.0;
    if (x == 0.0) return 0.0;

    // Real initial guess per region, then real Halley.
    double w;
    if (x < -kInvE + 0.11) {
        const double pr = std::sqrt(2.0 * (kE * x + 1.0));
        w = branch_point_series(n == 0 ? pr : -pr).real();
    } else if (n == -1) {
        const double l1 = std::log(-x);
        w = l1 - std::log(-l1);
    } else if (x < 4.0) {
        w = std::log1p(x);  // wide-basin principal guess; the asymptotic
                            // form breaks down while log(x) is small
    } else {
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        w = l1 - l2 + (l1 > 0.0 ? l2 / l1 : 0.0);
    }
    double best_w = w, best_f = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxIter; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (std::abs(f) < best_f) {
            best_f = std::abs(f);
            best_w = w;
        }
        if (f == 0.0) return w;
        double denom = ew * (w + 1.0);
        const double t = 2.0 * (w + 1.0);
        if (std::abs(t) > 1e-12) denom -= (w + 2.0) * f / t;
        const double dw = f / denom;
        w -= dw;
        if (std::abs(dw) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(w))
            return w;
    }
    // Near the branch point the step noise floor exceeds the ulp criterion;
    // settle for the best iterate if its residual is at rounding scale.
    if (best_f <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)) *
                      (64.0 + 8.0 * std::abs(best_w)))
        return best_w;
    throw NonConvergence("lambert_w_real: iteration stalled", Cd(best_w, 0.0));
}

}  // namespace wqed
