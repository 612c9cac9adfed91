// modes.hpp — shared branch-mode machinery (internal to the library)
//
// Characteristic roots of the delayed amplitude equation live on Lambert-W
// branches of the single real argument a = -(+/-)(eta/2) beta e^{eta/2}.
// Branches pair up into complex-conjugate rows:
//   sup: row 0 = {W_0, W_-1}, row j>=1 = {W_j, W_-j-1} = {W_j, conj(W_j)}
//   sub: row 0 = {W_0},       row j>=1 = {W_j, W_-j}   = {W_j, conj(W_j)}
// so every row contribution is real.  The slowly convergent row series is
// resummed against its known asymptotic phase: iterated Abel summation by
// parts away from the light-cone kinks, an Euler-Maclaurin tail on the
// continuous-branch interpolant near them.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "wqed/errors.hpp"
#include "wqed/lambert.hpp"
#include "wqed/model.hpp"

namespace wqed::detail {

using Cd = std::complex<double>;

struct ModeTable {
    ModelParams p;
    Parity parity;
    double a;              // Lambert argument
    bool sub_zero_exact;   // beta = 1 subradiant: W_0 = eta/2 identically
    bool confluent;        // sup row 0 near the W_0/W_-1 collision at -1/e
    Cd q2;                 // q^2 = 2(1 + e a) for the confluent expansion

    ModeTable(const ModelParams& params, Parity par) : p(params), parity(par) {
        p.validate();
        if (!(p.eta > 0.0)) throw DomainError("branch modes: require eta > 0");
        if (!(p.beta > 0.0)) throw DomainError("branch modes: require beta > 0");
        const double s = parity == Parity::Sup ? -1.0 : 1.0;
        a = s * 0.5 * p.eta * p.beta * std::exp(0.5 * p.eta);
        sub_zero_exact = parity == Parity::Sub && p.beta == 1.0;
        q2 = 2.0 * (1.0 + std::numbers::e * a);
        confluent = parity == Parity::Sup && std::abs(std::sqrt(q2)) < 0.03;
    }

    Cd w_branch(int n) const {
        if (sub_zero_exact && n == 0) return Cd(0.5 * p.eta);
        if (n >= 0) {
            auto& cache = wpos_;
            while ((int)cache.size() <= n) cache.push_back(lambert_w((int)cache.size(), Cd(a)));
            return cache[n];
        }
        auto& cache = wneg_;
        const int k = -n - 1;
        while ((int)cache.size() <= k)
            cache.push_back(lambert_w(-(int)cache.size() - 1, Cd(a)));
        return cache[k];
    }

    Cd rate_of(Cd w) const { return 1.0 - 2.0 * w / p.eta; }
    static Cd residue_of(Cd w) { return 1.0 / (1.0 + w); }

    // Upper-half term alpha_n exp(-rate_n tau/2) for row index j >= 1.
    Cd upper_term(int j, double tau) const {
        const Cd w = w_branch(j);
        return residue_of(w) * std::exp(-0.5 * rate_of(w) * tau);
    }

    double row0(double tau) const {
        if (parity == Parity::Sub) {
            if (sub_zero_exact) return 1.0 / (1.0 + 0.5 * p.eta);
            const Cd w = w_branch(0);
            return (residue_of(w) * std::exp(-0.5 * rate_of(w) * tau)).real();
        }
        if (confluent) return confluent_row0(tau);
        const Cd w0 = w_branch(0), wm1 = w_branch(-1);
        return (residue_of(w0) * std::exp(-0.5 * rate_of(w0) * tau) +
                residue_of(wm1) * std::exp(-0.5 * rate_of(wm1) * tau))
            .real();
    }

    // Combined W_0/W_-1 contribution from the branch-point expansion
    // W = -1 ± q + c2 q^2 ± c3 q^3 + c4 q^4 + O(q^5); the pair sum is even
    // in q and stays finite through the residue collision at eta = eta_c.
    double confluent_row0(double tau) const {
        constexpr double c2 = -1.0 / 3.0, c3 = 11.0 / 72.0, c4 = -43.0 / 540.0;
        constexpr double D = 2.0 * c2 * c3 - c2 * c2 * c2 - c4;
        const double A = tau / p.eta;
        const Cd E0 = -0.5 * tau * (1.0 + 2.0 / p.eta);
        const Cd q = std::sqrt(q2);
        const Cd x = A * q + (A * c3) * q * q2;
        const Cd pre = std::exp(E0 + (A * c2) * q2);
        const Cd val = pre * (2.0 * (A + A * c3 * q2) * sinhc(x) * (1.0 + (c2 * c2 - c3) * q2) +
                              2.0 * (-c2 + D * q2) * std::cosh(x));
        return val.real();
    }

    static Cd sinhc(Cd x) {
        if (std::abs(x) < 1e-4) {
            const Cd x2 = x * x;
            return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
        }
        return std::sinh(x) / x;
    }

    // sum_n alpha_n exp(-gamma_n tau/2) over all branches (real).
    // max_rows == 0 selects the library default.
    //
    // Row terms behave asymptotically like j^{-1-tau/eta} z^j with
    // z = exp(2 pi i tau/eta).  Away from z = 1 the tail is resummed by
    // iterated Abel summation by parts against the known phase; near z = 1
    // (tau close to a light-cone multiple) the series is effectively
    // monotone and a Levin u-transform extrapolates it instead.
    double mode_sum(double tau, int max_rows = 0, int* rows_used = nullptr) const {
        // Independence window: before the first round trip the mode series
        // resums exactly to the bare exponential, and its terms decay too
        // slowly (~ j^{-1-tau/eta}) for reliable acceleration.
        if (tau <= p.eta) {
            if (rows_used) *rows_used = 1;
            return std::exp(-0.5 * tau);
        }
        const double nu = tau / p.eta;
        const double frac = nu - std::floor(nu);
        if (std::min(frac, 1.0 - frac) >= 0.004)
            return sum_by_parts(tau, frac, max_rows, rows_used);
        return sum_euler_maclaurin(tau, max_rows, rows_used);
    }

    double sum_by_parts(double tau, double frac, int max_rows, int* rows_used) const {
        constexpr int K = 8;  // rounds of summation by parts
        const double s = 1.0 + tau / p.eta;
        const Cd z = std::polar(1.0, 2.0 * std::numbers::pi * frac);
        const Cd om = 1.0 - z;
        int N = std::clamp((int)std::ceil(6.0 * s / std::abs(om)), 80, 3000);
        if (max_rows > 0) {
            if (max_rows < N + K)
                throw TruncationNotConverged("branch sum: n_max too small for requested tau (need " +
                                             std::to_string(N + K) + " rows)");
        }
        const double r0 = row0(tau);
        Cd sum(0.0);
        for (int j = 1; j < N; ++j) {
            const Cd t = upper_term(j, tau);
            sum += t;
            if (std::abs(t) < 1e-30 * (1.0 + std::abs(sum))) {
                if (rows_used) *rows_used = j;
                return r0 + 2.0 * sum.real();
            }
        }
        // forward differences of the de-phased terms u_j = t_j z^{-j}
        Cd d[K + 1];
        for (int m = 0; m <= K; ++m)
            d[m] = upper_term(N + m, tau) *
                   std::polar(1.0, -2.0 * std::numbers::pi * frac * (N + m));
        Cd dN[K + 1];
        dN[0] = d[0];
        for (int k = 1; k <= K; ++k) {
            for (int m = 0; m <= K - k; ++m) d[m] = d[m + 1] - d[m];
            dN[k] = d[0];
        }
        // tail = sum_k (z/(1-z))^k d_k z^N/(1-z); the differences bottom out
        // at the roundoff floor of the de-phased terms (argument reduction in
        // exp at large Im W), after which the (1/(1-z))^k amplification makes
        // the terms grow -- truncate at the minimal term, asymptotic style.
        Cd tail(0.0);
        Cd fac = std::polar(1.0, 2.0 * std::numbers::pi * frac * N) / om;
        double prev_mag = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= K; ++k) {
            const Cd g = fac * dN[k];
            if (std::abs(g) > prev_mag) break;
            tail += g;
            prev_mag = std::abs(g);
            fac *= z / om;
        }
        if (rows_used) *rows_used = N + K;
        return r0 + 2.0 * (sum + tail).real();
    }

    // De-aliased continuous-row interpolant: g(x) solves the continuous
    // unwinding relation w + Log w = Log a + 2 pi i x and carries the phase
    // 2 pi (nu - m) x with m the nearest integer to nu, so g(j) = t_j at
    // integers while g(x) varies slowly in between (near-kink regime only).
    struct RowCont {
        double tau, eta;
        int m;     // alias integer
        Cd loga;

        Cd solve_w(double x, Cd seed) const {
            const Cd target = loga + Cd(0.0, 2.0 * std::numbers::pi * x);
            Cd w = seed;
            for (int it = 0; it < 60; ++it) {
                const Cd dw = (w + std::log(w) - target) * w / (w + 1.0);
                w -= dw;
                if (std::abs(dw) <= 1e-14 * std::abs(w)) break;
            }
            return w;
        }
        Cd seed_at(double x) const {
            const Cd L = loga + Cd(0.0, 2.0 * std::numbers::pi * x);
            return L - std::log(L);
        }
        Cd g_of(Cd w, double x) const {
            return std::exp(-0.5 * tau + (tau / eta) * w -
                            Cd(0.0, 2.0 * std::numbers::pi * m * x)) /
                   (1.0 + w);
        }
        // logarithmic derivative g'/g, using dw/dx = 2 pi i w/(1+w)
        Cd psi_of(Cd w) const {
            const Cd wp = Cd(0.0, 2.0 * std::numbers::pi) * w / (1.0 + w);
            return (tau / eta) * wp - Cd(0.0, 2.0 * std::numbers::pi * m) - wp / (1.0 + w);
        }
    };

    // Near-kink tail: Euler-Maclaurin on g(x).  The quadrature runs until
    // either the oscillation dominates (|phi| x large, remainder handled by
    // the stationary-ratio resummation -g/psi/(1-r)) or the far tail is
    // negligible.
    double sum_euler_maclaurin(double tau, int max_rows, int* rows_used) const {
        const int N = 300;
        if (max_rows > 0 && max_rows < N + 20)
            throw TruncationNotConverged(
                "branch sum: n_max too small for requested tau (need " +
                std::to_string(N + 20) + " rows)");
        const double r0 = row0(tau);
        Cd sum(0.0);
        for (int j = 1; j < N; ++j) {
            const Cd t = upper_term(j, tau);
            sum += t;
            if (std::abs(t) < 1e-30 * (1.0 + std::abs(sum))) {
                if (rows_used) *rows_used = j;
                return r0 + 2.0 * sum.real();
            }
        }
        const double nu = tau / p.eta;
        const double s = 1.0 + nu;
        RowCont rc{tau, p.eta, (int)std::lround(nu), std::log(Cd(a))};
        const double aphi = 2.0 * std::numbers::pi * std::abs(nu - rc.m);

        Cd w = rc.solve_w(N, rc.seed_at(N));
        const Cd gN = rc.g_of(w, N);
        const Cd psiN = rc.psi_of(w);

        // Gauss-Legendre 10-point nodes/weights on [-1, 1]
        static const double gx[5] = {0.1488743389816312, 0.4333953941292472,
                                     0.6794095682990244, 0.8650633666889845,
                                     0.9739065285171717};
        static const double gw[5] = {0.2955242247147529, 0.2692667193099963,
                                     0.2190863625159820, 0.1494513491505806,
                                     0.0666713443086881};
        Cd I(0.0);
        double x = N;
        Cd far(0.0);
        for (int panel = 0; panel < 4000; ++panel) {
            const Cd gx_end = rc.g_of(w, x);
            const Cd psix = rc.psi_of(w);
            far = -gx_end / psix;
            if (aphi * x >= 40.0 * s || std::abs(far) <= 3e-8) break;
            const double h =
                std::min(x * std::min(0.25, 2.0 / s),
                         0.5 / std::max(aphi, 1e-12));
            const double mid = x + 0.5 * h;
            for (int q = 0; q < 5; ++q) {
                for (double sgn : {-1.0, 1.0}) {
                    const double xq = mid + sgn * 0.5 * h * gx[q];
                    w = rc.solve_w(xq, w);
                    I += 0.5 * h * gw[q] * rc.g_of(w, xq);
                }
            }
            x += h;
            w = rc.solve_w(x, w);
        }
        // geometric resummation of the repeated integration by parts:
        // int_X^inf g = -g/psi * 1/(1 - r), r = psi'/psi^2 (exact for a pure
        // power law, where r = 1/s)
        {
            const Cd wp = rc.solve_w(x + 1.0, w);
            const Cd wm = rc.solve_w(x - 1.0, w);
            const Cd dpsi = 0.5 * (rc.psi_of(wp) - rc.psi_of(wm));
            const Cd psix = rc.psi_of(rc.solve_w(x, w));
            const Cd r = dpsi / (psix * psix);
            if (std::abs(r) < 0.9) far /= (1.0 - r);
        }
        const Cd tail = I + far + 0.5 * gN - psiN * gN / 12.0;
        if (rows_used) *rows_used = N;
        return r0 + 2.0 * (sum + tail).real();
    }

    // sum_n alpha_n over all branches (Abel mean of the tau = 0 jump; the
    // limit is 1/2).  Uses the absolutely convergent real row series
    // 2 Re alpha_j ~ log(j)/j^2.
    double residue_sum(int max_rows = 0) const {
        const int cap = max_rows > 0 ? max_rows : 1500;
        double r0;
        if (parity == Parity::Sub) {
            r0 = sub_zero_exact ? 1.0 / (1.0 + 0.5 * p.eta) : residue_of(w_branch(0)).real();
        } else if (confluent) {
            r0 = confluent_row0(0.0);
        } else {
            r0 = (residue_of(w_branch(0)) + residue_of(w_branch(-1))).real();
        }
        double plain = 0.0;
        double t = 0.0;
        int j = 1;
        for (; j <= cap; ++j) {
            t = 2.0 * residue_of(w_branch(j)).real();
            plain += t;
            if (std::abs(t) < 1e-30) return r0 + plain;
        }
        // integral tail estimate for terms ~ log(j)/j^2
        const double lj = std::log((double)j);
        return r0 + plain + t * j * (1.0 + 1.0 / lj);
    }

private:
    mutable std::vector<Cd> wpos_, wneg_;
};

}  // namespace wqed::detail
