// test_observables.cpp — cooperativity, non-Markovianity, linear entropy

#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "wqed/dynamics.hpp"
#include "wqed/errors.hpp"
#include "wqed/field.hpp"
#include "wqed/observables.hpp"

using namespace wqed;

TEST_CASE("cooperativity closed form vs quadrature") {
    for (double beta : {0.3, 0.7})
        for (Parity par : {Parity::Sup, Parity::Sub}) {
            const ModelParams p{1.0, beta, 1.0, 1};
            const double closed = cooperativity(p, par).value;
            const double quad =
                guided_norm(p, par, std::numeric_limits<double>::infinity()) /
                (1.0 - beta);
            CHECK(std::abs(closed - quad) <= 1e-3 * std::max(1.0, closed));
        }
}

TEST_CASE("cooperativity limits and trend") {
    CHECK(cooperativity({1.0, 0.0, 1.0, 1}, Parity::Sup).value == 0.0);
    CHECK(cooperativity({1.0, 0.5, 0.0, 1}, Parity::Sup).value ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cooperativity({1.0, 0.5, 0.0, 1}, Parity::Sub).value == 0.0);
    CHECK_THROWS_AS((void)cooperativity({1.0, 1.0, 1.0, 1}, Parity::Sup),
                    DivergentError);
    double prev_sup = 1e30, prev_sub = -1.0;
    for (double eta : {0.2, 0.6, 1.0, 1.4, 1.8}) {
        const double s = cooperativity({1.0, 0.5, eta, 1}, Parity::Sup).value;
        const double b = cooperativity({1.0, 0.5, eta, 1}, Parity::Sub).value;
        CHECK(s < prev_sup);
        CHECK(b > prev_sub);
        prev_sup = s;
        prev_sub = b;
    }
}

TEST_CASE("coherence trace matches the dynamics definitionally") {
    const ModelParams p{1.0, 1.0, 1.0, 1};
    const Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(81, 0.0, 40.0);
    for (Parity par : {Parity::Sup, Parity::Sub}) {
        const GeneralInitialState st{par == Parity::Sup ? 0.0 : std::numbers::pi / 2,
                                     0.0};
        const auto ct = coherence_trace(p, st, tau);
        const auto tr = amplitude_branch_sum(p, par, tau);
        CHECK((ct.coherence - 2.0 * tr.c.abs2()).abs().maxCoeff() <= 1e-10);
        CHECK(ct.coherence[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ct.coherence.minCoeff() >= 0.0);
    }
    // Subradiant plateau 2|c|^2 -> (1+eta/2)^-2 = 4/9.
    const auto sub = coherence_trace(p, {std::numbers::pi / 2, 0.0}, tau);
    CHECK(sub.coherence.tail(1)[0] == doctest::Approx(4.0 / 9.0).epsilon(1e-5));
}

TEST_CASE("coherence trace Dicke exponential") {
    const Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(21, 0.0, 3.0);
    const auto ct = coherence_trace({1.0, 1.0, 0.0, 1}, {0.0, 0.0}, tau);
    for (long i = 0; i < tau.size(); ++i)
        CHECK(ct.coherence[i] == doctest::Approx(std::exp(-2.0 * tau[i])).epsilon(1e-10));
}

TEST_CASE("non-Markovianity vanishes in the Markov limit") {
    CHECK(non_markovianity({1.0, 1.0, 0.0, 1}).value == 0.0);
    CHECK(non_markovianity({1.0, 1.0, 1e-3, 1}).value <= 1e-3);
}

TEST_CASE("non-Markovianity is maximal for the subradiant state") {
    const auto n = non_markovianity({1.0, 1.0, 1.0, 1});
    CHECK(n.value > 0.0);
    CHECK(n.metadata.at("argmax_theta") ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    CHECK_THROWS_AS((void)non_markovianity({1.0, 1.0, 1.0, 1}, 2.0), ConfigError);
}

TEST_CASE("linear entropy bounds and anchors") {
    const Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(101, 0.0, 40.0);
    const double etastar = 2.0 * (std::numbers::sqrt2 - 1.0);
    const auto s = linear_entropy_trace({1.0, 1.0, etastar, 1}, Parity::Sub, tau);
    CHECK(s[0] == doctest::Approx(0.0));
    CHECK(s.minCoeff() >= 0.0);
    CHECK(s.maxCoeff() <= 0.5);
    CHECK(s.tail(1)[0] == doctest::Approx(0.5).epsilon(1e-8));
    // Superradiant decay at beta = 1 empties the pair: S -> 0.
    const auto ssup = linear_entropy_trace({1.0, 1.0, 1.0, 1}, Parity::Sup, tau);
    CHECK(ssup.tail(1)[0] <= 1e-8);
}

TEST_CASE("optimal BIC delay") {
    CHECK(optimal_bic_delay() ==
          doctest::Approx(2.0 * (std::numbers::sqrt2 - 1.0)).epsilon(1e-12));
    // Local maximum: the steady entropy is strictly lower 0.05 away.
    auto steady = [](double eta) {
        const double pp = 0.5 / ((1.0 + 0.5 * eta) * (1.0 + 0.5 * eta));
        return 4.0 * pp * (1.0 - 2.0 * pp);
    };
    const double star = optimal_bic_delay();
    CHECK(steady(star) > steady(star - 0.05));
    CHECK(steady(star) > steady(star + 0.05));
}
