// test_field.cpp — spectral amplitudes, guided-norm quadrature, intensity maps

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "wqed/dynamics.hpp"
#include "wqed/errors.hpp"
#include "wqed/field.hpp"

using namespace wqed;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

// Mirror-exact symmetric position grid (LinSpaced endpoints are not
// bit-symmetric, which flips light-cone gates right at the wavefront).
Eigen::ArrayXd symmetric_grid(int half, double step) {
    Eigen::ArrayXd xi(2 * half + 1);
    for (int i = 0; i <= 2 * half; ++i) xi[i] = (i - half) * step;
    return xi;
}
}  // namespace

TEST_CASE("spectral amplitude structure") {
    const Eigen::ArrayXd det = Eigen::ArrayXd::LinSpaced(41, -10.0, 10.0);
    const ModelParams p{1.0, 1.0, 0.8, 1};
    const auto sup = spectral_amplitudes(p, Parity::Sup, 3.0, det);
    const auto sub = spectral_amplitudes(p, Parity::Sub, 3.0, det);
    CHECK((sup.b_values - sup.a_values).abs().maxCoeff() <= 1e-15);
    CHECK((sub.b_values + sub.a_values).abs().maxCoeff() <= 1e-15);
    // beta = 0 radiates nothing into the guide.
    const auto none = spectral_amplitudes({1.0, 0.0, 0.8, 1}, Parity::Sup, 3.0, det);
    CHECK(none.a_values.abs().maxCoeff() == 0.0);
    // Coincident subradiant pair is perfectly dark.
    const auto dark = spectral_amplitudes({1.0, 0.7, 0.0, 1}, Parity::Sub, 3.0, det);
    CHECK(dark.a_values.abs().maxCoeff() == 0.0);
}

TEST_CASE("guided norm closed-form anchors") {
    const ModelParams p{1.0, 1.0, 1.0, 1};
    // Independence window: only uncorrelated emission has left the pair.
    CHECK(guided_norm(p, Parity::Sup, 0.7) == doctest::Approx(1.0 - std::exp(-0.7)).epsilon(1e-4));
    // All of a beta = 1 superradiant excitation ends up in the guide.
    CHECK(guided_norm(p, Parity::Sup, kInf) == doctest::Approx(1.0).epsilon(1e-5));
    // Subradiant steady state retains 2/(2(1+1/2)^2) = 4/9: emitted 5/9.
    CHECK(guided_norm(p, Parity::Sub, kInf) == doctest::Approx(5.0 / 9.0).epsilon(1e-5));
}

TEST_CASE("emitter-field unitarity budget") {
    for (double eta : {0.5, 1.5})
        for (Parity par : {Parity::Sup, Parity::Sub}) {
            const ModelParams p{1.0, 1.0, eta, 1};
            Eigen::ArrayXd t(1);
            t[0] = 20.0;
            const auto tr = amplitude_branch_sum(p, par, t);
            const double total = guided_norm(p, par, 20.0) + 2.0 * std::norm(tr.c[0]);
            CHECK(std::abs(total - 1.0) <= 1e-3);
        }
}

TEST_CASE("intensity map causality and symmetry") {
    const ModelParams p{1.0, 1.0, 0.5, 1};
    const Eigen::ArrayXd xi = symmetric_grid(100, 0.02);  // [-2, 2]
    const Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(121, 0.0, 6.0);
    for (Parity par : {Parity::Sup, Parity::Sub}) {
        const auto g = intensity_map(p, par, xi, tau);
        for (long i = 0; i < xi.size(); ++i)
            for (long j = 0; j < tau.size(); ++j) {
                // Exactly zero outside both light cones.
                if (std::abs(xi[i]) - 0.25 > tau[j]) CHECK(g.intensity(i, j) == 0.0);
                // Exact mirror symmetry on a mirror-exact grid.
                CHECK(g.intensity(i, j) ==
                      doctest::Approx(g.intensity(xi.size() - 1 - i, j)).epsilon(1e-12));
                CHECK(g.intensity(i, j) >= 0.0);
            }
    }
}

TEST_CASE("subradiant extinction outside, plateau inside") {
    const ModelParams p{1.0, 1.0, 0.5, 1};
    const Eigen::ArrayXd xi = symmetric_grid(100, 0.02);
    const Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(121, 0.0, 6.0);
    const auto g = intensity_map(p, Parity::Sub, xi, tau);
    const double peak = g.intensity.maxCoeff();
    CHECK(peak > 0.0);
    // tau = 6 at |xi| = 2: the destructive exterior.
    CHECK(g.intensity(0, 120) <= 1e-3 * peak);
    CHECK(g.intensity(200, 120) <= 1e-3 * peak);
    // Interior trapped light persists between the emitters.
    CHECK(g.intensity(100, 120) > 0.01 * peak);
}

TEST_CASE("full-fringe mode bounds the envelope") {
    const ModelParams p{1.0, 1.0, 0.5, 1};
    const Eigen::ArrayXd xi = symmetric_grid(40, 0.05);
    const Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(49, 0.0, 4.0);
    const auto env = intensity_map(p, Parity::Sup, xi, tau, 0, FieldMode::Envelope);
    const auto ful = intensity_map(p, Parity::Sup, xi, tau, 0, FieldMode::FullFringe);
    // |R + L|^2 <= 2(|R|^2 + |L|^2).
    CHECK((ful.intensity - 2.0 * env.intensity).maxCoeff() <= 1e-12);
}

TEST_CASE("quadrature argument validation") {
    const ModelParams p{1.0, 1.0, 0.5, 1};
    Eigen::ArrayXd bad(3);
    bad << 0.0, 1.0, 0.5;
    Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(5, 0.0, 2.0);
    CHECK_THROWS_AS((void)intensity_map(p, Parity::Sup, bad, tau), DomainError);
    CHECK_THROWS_AS((void)spectral_amplitudes(p, Parity::Sup, -1.0, tau), DomainError);
}
