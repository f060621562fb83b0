#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "eurkit/entropy.hpp"
#include "eurkit/errors.hpp"

using namespace eurkit;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("Shannon of a uniform distribution is ln n") {
    for (std::size_t n : {1u, 2u, 8u, 1000u}) {
        const auto p = make_exact_distribution(std::vector<double>(n, 1.0 / n));
        CHECK(shannon(p).value == doctest::Approx(std::log(static_cast<double>(n))).epsilon(1e-14));
        CHECK(renyi(p, 3.0).value == doctest::Approx(std::log(static_cast<double>(n))).epsilon(1e-13));
    }
}

TEST_CASE("zero probabilities contribute nothing") {
    const auto p = make_exact_distribution({0.5, 0.0, 0.5});
    CHECK(shannon(p).value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("Renyi reduces to Shannon and orders monotonically") {
    const auto p = make_exact_distribution({0.5, 0.25, 0.125, 0.125});
    const double h = shannon(p).value;
    CHECK(renyi(p, 1.0).value == doctest::Approx(h).epsilon(1e-15));
    CHECK(renyi(p, 1.0 + 1e-7).value == doctest::Approx(h).epsilon(1e-6));
    CHECK(renyi(p, 0.7).value > h);
    CHECK(renyi(p, 2.0).value < h);
    // Collision entropy.
    CHECK(renyi(p, 2.0).value == doctest::Approx(-std::log(0.25 + 0.0625 + 2 * 0.015625)).epsilon(1e-14));
}

TEST_CASE("Renyi entropy is additive on product distributions") {
    const std::vector<double> p{0.1, 0.6, 0.3}, q{0.2, 0.2, 0.5, 0.1};
    std::vector<double> pq;
    for (double a : p)
        for (double b : q) pq.push_back(a * b);
    for (double alpha : {0.6, 1.0, 2.0, 5.0}) {
        const double lhs = renyi(make_exact_distribution(pq), alpha).value;
        const double rhs = renyi(make_exact_distribution(p), alpha).value + renyi(make_exact_distribution(q), alpha).value;
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("symmetrized entropy") {
    const auto p = make_exact_distribution({0.7, 0.2, 0.1});
    CHECK(symmetrized(p, 0.0).value == doctest::Approx(shannon(p).value).epsilon(1e-15));
    const double s = 0.5;
    const double expect = 0.5 * (renyi(p, 1.0 / (1.0 - s)).value + renyi(p, 1.0 / (1.0 + s)).value);
    CHECK(symmetrized(p, s).value == doctest::Approx(expect).epsilon(1e-15));
    try {
        symmetrized(p, 1.0);
        FAIL("expected InvalidS");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidS);
    }
}

TEST_CASE("entropy in bits") {
    const auto p = make_exact_distribution({0.25, 0.25, 0.25, 0.25});
    CHECK(shannon(p).bits() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("invalid orders are rejected") {
    const auto p = make_exact_distribution({0.5, 0.5});
    CHECK_THROWS_AS(renyi(p, 0.0), Error);
    CHECK_THROWS_AS(renyi(p, -1.0), Error);
}

TEST_CASE("continuous entropies of a Gaussian") {
    const double sigma = 1.3;
    const auto rho = position_density(gaussian_state(sigma, 0.0, 0.0, balanced_grid(4096)));
    CHECK(continuous_shannon(rho).value == doctest::Approx(0.5 * std::log(2 * kPi * std::exp(1.0) * sigma * sigma)).epsilon(1e-10));
    // Reference length shifts by ln L.
    CHECK(continuous_shannon(rho, 2.0).value == doctest::Approx(continuous_shannon(rho).value - std::log(2.0)).epsilon(1e-13));
    // int rho^a = (2 pi sigma^2)^((1-a)/2) a^(-1/2).
    const double a = 2.5;
    const double integral = std::pow(2 * kPi * sigma * sigma, (1 - a) / 2) / std::sqrt(a);
    CHECK(power_integral(rho, a) == doctest::Approx(integral).epsilon(1e-10));
    CHECK(continuous_renyi(rho, a).value == doctest::Approx(std::log(integral) / (1 - a)).epsilon(1e-10));
}

TEST_CASE("fine bins approach the continuous entropy") {
    const auto rho = position_density(gaussian_state(1.0, 0.0, 0.0, balanced_grid(4096)));
    const double d = 0.05;
    const double h = shannon(bin_position(rho, d)).value;
    CHECK(h + std::log(d) == doctest::Approx(continuous_shannon(rho).value).epsilon(1e-3));
}

TEST_CASE("box position entropy at bin width a is ln 2 with edge bins") {
    const auto psi = box_state(1.0, box_default_grid(1.0));
    const auto q = bin_position(position_density(psi), 1.0, BinAlignment::edge);
    CHECK(shannon(q).value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}
