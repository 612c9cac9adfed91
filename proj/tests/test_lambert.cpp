// test_lambert.cpp — all-branch Lambert W engine

#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "wqed/errors.hpp"
#include "wqed/lambert.hpp"

using wqed::lambert_w;
using wqed::lambert_w_real;
using Cd = std::complex<double>;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
double residual(int n, Cd z) {
    const Cd w = lambert_w(n, z);
    return std::abs(w * std::exp(w) - z) / std::max(1.0, std::abs(z));
}
}  // namespace

TEST_CASE("frozen oracle values") {
    CHECK(lambert_w_real(0, std::exp(-1.0)) == doctest::Approx(0.278464542761074).epsilon(1e-13));
    CHECK(lambert_w_real(-1, -0.1) == doctest::Approx(-3.577152063957297).epsilon(1e-13));
    CHECK(lambert_w_real(0, 1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-13));
    CHECK(lambert_w_real(0, -std::exp(-1.0)) == doctest::Approx(-1.0));
    CHECK(lambert_w_real(-1, -std::exp(-1.0)) == doctest::Approx(-1.0));
}

TEST_CASE("defining identity on random branches and arguments") {
    std::mt19937 rng(917u);
    std::uniform_real_distribution<double> uni(-40.0, 40.0);
    std::uniform_int_distribution<int> branch(-5, 5);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Cd z(uni(rng), uni(rng));
        if (std::abs(z) < 1e-8) continue;
        worst = std::max(worst, residual(branch(rng), z));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("branch band membership") {
    std::mt19937 rng(411u);
    std::uniform_real_distribution<double> uni(-20.0, 20.0);
    for (int n = -4; n <= 4; ++n)
        for (int i = 0; i < 200; ++i) {
            const Cd z(uni(rng), uni(rng));
            if (std::abs(z) < 1e-6) continue;
            const Cd w = lambert_w(n, z);
            // Unwinding test: w + log w must come back to Log z + 2 pi i n.
            const double k =
                (std::imag(w) + std::arg(w) - std::arg(z)) / (2.0 * kPi) + 0.0;
            CHECK(std::abs(k - n) < 0.5);
        }
}

TEST_CASE("conjugate symmetry") {
    std::mt19937 rng(75u);
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const Cd z(uni(rng), uni(rng));
        if (std::abs(z.imag()) < 1e-8) continue;
        for (int n : {-2, -1, 0, 1}) {
            const Cd a = lambert_w(n, std::conj(z));
            const Cd b = std::conj(lambert_w(-n, z));
            CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("real path agrees with complex path") {
    for (double x : {-0.367, -0.36, -0.2, -0.05, 0.1, 0.5, 1.0, 2.5, 10.0, 1e4}) {
        const double w = lambert_w_real(0, x);
        const Cd wc = lambert_w(0, Cd(x, 0.0));
        CHECK(wc.imag() == 0.0);
        CHECK(w == doctest::Approx(wc.real()).epsilon(1e-12));
    }
    for (double x : {-0.3678, -0.3, -0.1, -1e-3, -1e-8}) {
        const double w = lambert_w_real(-1, x);
        const Cd wc = lambert_w(-1, Cd(x, 0.0));
        CHECK(wc.imag() == 0.0);
        CHECK(w == doctest::Approx(wc.real()).epsilon(1e-12));
        CHECK(w <= -1.0);
    }
}

TEST_CASE("domain and branch errors") {
    CHECK_THROWS_AS((void)lambert_w(1, Cd(0.0, 0.0)), wqed::InvalidBranch);
    CHECK(lambert_w(0, Cd(0.0, 0.0)) == Cd(0.0, 0.0));
    CHECK_THROWS_AS((void)lambert_w_real(2, 1.0), wqed::DomainError);
    CHECK_THROWS_AS((void)lambert_w_real(0, -1.0), wqed::DomainError);
    CHECK_THROWS_AS((void)lambert_w_real(-1, 0.5), wqed::DomainError);
    CHECK_THROWS_AS((void)lambert_w_real(-1, -0.5), wqed::DomainError);
}
