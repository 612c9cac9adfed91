// acceptance.cpp — the twelve acceptance criteria, one PASS/FAIL line each

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "wqed/ddesolver.hpp"
#include "wqed/dynamics.hpp"
#include "wqed/field.hpp"
#include "wqed/lambert.hpp"
#include "wqed/observables.hpp"

using namespace wqed;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok, double measured) {
    std::printf("%s  %2d %-24s (measured %.3e)\n", ok ? "PASS" : "FAIL", idx, name,
                measured);
    if (!ok) ++failures;
}

Eigen::ArrayXd symmetric_grid(int half, double step) {
    Eigen::ArrayXd xi(2 * half + 1);
    for (int i = 0; i <= 2 * half; ++i) xi[i] = (i - half) * step;
    return xi;
}

void criterion_1() {
    const double d = std::abs(critical_separation(1.0) - 0.556929085522148);
    report(1, "critical_separation", d <= 1e-4, d);
}

void criterion_2() {
    const double d1 = std::abs(max_instantaneous_rate(1.0) - 4.591);
    // Solve max_instantaneous_rate(beta) = 2 by bisection; expect 1/e^2.
    double lo = 0.05, hi = 0.4;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (max_instantaneous_rate(mid) < 2.0 ? lo : hi) = mid;
    }
    const double d2 = std::abs(0.5 * (lo + hi) - std::exp(-2.0));
    report(2, "max_instantaneous_rate", d1 <= 1e-3 && d2 <= 1e-4, std::max(d1, d2));
}

void criterion_3() {
    Eigen::ArrayXd t(1);
    t[0] = 40.0;
    const auto tr = amplitude_branch_sum({1.0, 1.0, 1.0, 1}, Parity::Sub, t);
    const double d = std::abs(2.0 * std::norm(tr.c[0]) - 4.0 / 9.0);
    report(3, "subradiant_plateau", d <= 1e-4, d);
}

void criterion_4() {
    const Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(101, 0.0, 10.0);
    double worst = 0.0;
    for (double beta : {0.3, 0.7, 1.0})
        for (int ei = 0; ei < 5; ++ei)
            for (Parity par : {Parity::Sup, Parity::Sub}) {
                const double etas[5] = {0.1, 0.5, critical_separation(beta), 1.5, 3.0};
                const ModelParams p{1.0, beta, etas[ei], 1};
                const auto b = amplitude_branch_sum(p, par, tau);
                const auto s = amplitude_series(p, par, tau);
                worst = std::max(worst, (b.c - s.c).abs().maxCoeff());
                const GeneralInitialState init{
                    par == Parity::Sup ? 0.0 : std::numbers::pi / 2, 0.0};
                const auto d = integrate_dde(p, init, 10.0, etas[ei] / 64);
                Eigen::ArrayXd sub(d.tau.size() / 32 + 1);
                for (long i = 0; i < sub.size(); ++i) sub[i] = d.tau[i * 32];
                const auto bd = amplitude_branch_sum(p, par, sub);
                for (long i = 0; i < sub.size(); ++i)
                    worst = std::max(worst, std::abs(d.c1[i * 32] - bd.c[i]));
            }
    report(4, "oracle_triangle", worst <= 1e-6, worst);
}

void criterion_5() {
    double worst = 0.0;
    for (double beta : {0.5, 1.0})
        for (Parity par : {Parity::Sup, Parity::Sub}) {
            const GeneralInitialState init{par == Parity::Sup ? 0.0 : std::numbers::pi / 2,
                                           0.0};
            const auto d = integrate_dde({1.0, beta, 1e-9, 1}, init, 5.0, 1e-3);
            const double rate = 1.0 + parity_sign(par) * beta;
            for (long i = 0; i < d.tau.size(); ++i)
                worst = std::max(worst, std::abs(d.c1[i] -
                                                 std::exp(-0.5 * rate * d.tau[i]) /
                                                     std::numbers::sqrt2));
        }
    report(5, "dicke_limits", worst <= 1e-6, worst);
}

void criterion_6() {
    double worst = 0.0;
    for (double eta : {0.5, 1.5})
        for (Parity par : {Parity::Sup, Parity::Sub}) {
            const ModelParams p{1.0, 1.0, eta, 1};
            Eigen::ArrayXd t(1);
            t[0] = 20.0;
            const auto tr = amplitude_branch_sum(p, par, t);
            const double total = guided_norm(p, par, 20.0) + 2.0 * std::norm(tr.c[0]);
            worst = std::max(worst, std::abs(total - 1.0));
        }
    report(6, "unitarity_budget", worst <= 1e-3, worst);
}

void criterion_7() {
    const double etac = critical_separation(1.0);
    const Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(801, 0.0, 8.0);
    const auto below =
        amplitude_branch_sum({1.0, 1.0, 0.8 * etac, 1}, Parity::Sup, tau);
    const auto above =
        amplitude_branch_sum({1.0, 1.0, 1.2 * etac, 1}, Parity::Sup, tau);
    const Eigen::ArrayXd pb = below.c.abs2(), pa = above.c.abs2();
    bool monotone = true;
    int minima = 0;
    for (long i = 1; i < tau.size(); ++i)
        if (pb[i] > pb[i - 1] + 1e-12) monotone = false;
    for (long i = 1; i + 1 < tau.size(); ++i)
        if (pa[i] < pa[i - 1] && pa[i] < pa[i + 1] && pa[i] > 1e-12) ++minima;
    report(7, "oscillation_onset", monotone && minima >= 1, minima);
}

void criterion_8() {
    const ModelParams p{1.0, 1.0, 0.5, 1};
    const Eigen::ArrayXd xi = symmetric_grid(200, 0.01);  // 401 points on [-2, 2]
    const Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(400, 0.0, 6.0);
    double causality = 0.0, asym = 0.0;
    for (Parity par : {Parity::Sup, Parity::Sub}) {
        const auto g = intensity_map(p, par, xi, tau);
        for (long i = 0; i < xi.size(); ++i)
            for (long j = 0; j < tau.size(); ++j) {
                if (std::abs(xi[i]) - 0.25 > tau[j])
                    causality = std::max(causality, g.intensity(i, j));
                if (par == Parity::Sup)
                    asym = std::max(asym, std::abs(g.intensity(i, j) -
                                                   g.intensity(xi.size() - 1 - i, j)));
            }
        if (par == Parity::Sub) {
            const double peak = g.intensity.maxCoeff();
            const double exterior = std::max(g.intensity(0, tau.size() - 1),
                                             g.intensity(xi.size() - 1, tau.size() - 1));
            const double interior = g.intensity(200, tau.size() - 1);
            report(8, "field_maps",
                   causality == 0.0 && asym <= 1e-12 && exterior <= 1e-3 * peak &&
                       interior > 1e-2 * peak,
                   exterior / peak);
        }
    }
}

void criterion_9() {
    bool ok = true;
    double prev_sup = 1e30, prev_sub = -1.0;
    for (int i = 0; i < 25; ++i) {
        const double eta = 0.01 + (2.0 - 0.01) * i / 24.0;
        const double s = cooperativity({1.0, 0.5, eta, 1}, Parity::Sup).value;
        const double b = cooperativity({1.0, 0.5, eta, 1}, Parity::Sub).value;
        ok = ok && s < prev_sup && b > prev_sub;
        prev_sup = s;
        prev_sub = b;
    }
    double quad_dev = 0.0;
    for (Parity par : {Parity::Sup, Parity::Sub}) {
        const ModelParams p{1.0, 0.5, 1.0, 1};
        const double closed = cooperativity(p, par).value;
        const double quad =
            guided_norm(p, par, std::numeric_limits<double>::infinity()) / 0.5;
        quad_dev = std::max(quad_dev, std::abs(closed - quad) / std::max(1.0, closed));
    }
    report(9, "cooperativity_trend", ok && quad_dev <= 1e-3, quad_dev);
}

void criterion_10() {
    const double small = non_markovianity({1.0, 1.0, 1e-3, 1}).value;
    const auto n1 = non_markovianity({1.0, 1.0, 1.0, 1});
    report(10, "non_markovianity",
           small <= 1e-3 && n1.value > 0.0 &&
               std::abs(n1.metadata.at("argmax_theta") - std::numbers::pi / 2) <= 1e-12,
           n1.value);
}

void criterion_11() {
    const double star = optimal_bic_delay();  // scan-confirmed internally
    const double d = std::abs(star - 0.8284);
    report(11, "bic_optimum", d <= 1e-3, d);
}

void criterion_12() {
    std::mt19937 rng(515u);
    std::uniform_real_distribution<double> uni(-40.0, 40.0);
    std::uniform_int_distribution<int> branch(-5, 5);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const std::complex<double> z(uni(rng), uni(rng));
        if (std::abs(z) < 1e-8) continue;
        const auto w = lambert_w(branch(rng), z);
        worst = std::max(worst,
                         std::abs(w * std::exp(w) - z) / std::max(1.0, std::abs(z)));
    }
    report(12, "lambert_engine", worst <= 1e-12, worst);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    return failures ? 1 : 0;
}
