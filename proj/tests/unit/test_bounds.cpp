#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eurkit/bounds.hpp"
#include "eurkit/errors.hpp"
#include "eurkit/measure.hpp"
#include "eurkit/entropy.hpp"

using namespace eurkit;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("conjugate exponents") {
    CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(conjugate_exponent(1.0) == 1.0);
    CHECK(is_conjugate_pair(4.0, 4.0 / 7.0));
    CHECK_FALSE(is_conjugate_pair(2.0, 2.0));
    CHECK(code_of([] { require_conjugate(2.0, 0.7); }) == ErrorCode::NotConjugate);
}

TEST_CASE("Renyi log term is smooth through alpha = 1") {
    CHECK(renyi_log_term(1.0) == -1.0);
    CHECK(renyi_log_term(1.0 + 1e-6) == doctest::Approx(std::log(1.0 + 1e-6) / (-1e-6)).epsilon(1e-10));
    CHECK(renyi_log_term(3.0) == doctest::Approx(std::log(3.0) / -2.0).epsilon(1e-15));
}

TEST_CASE("binned Shannon bound") {
    CHECK(bound_shannon_binned(1.0, 2 * kPi) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-15));
    CHECK(std::abs(bound_shannon_binned(2.0, kPi) - 0.306852819440055) < 1e-12);
    // Coarse bins make the bound negative.
    CHECK(bound_shannon_binned(4.0, 2 * kPi) < 0.0);
}

TEST_CASE("binned Renyi bound") {
    const double a = 2.0, b = 2.0 / 3.0;
    const double expect = -0.5 * (std::log(a) / (1 - a) + std::log(b) / (1 - b)) - std::log(2.0);
    CHECK(bound_renyi_binned(a, b, 1.0, 2 * kPi) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(bound_renyi_binned(1.0, 1.0, 1.0, 2 * kPi) == doctest::Approx(bound_shannon_binned(1.0, 2 * kPi)).epsilon(1e-15));
    CHECK(code_of([] { bound_renyi_binned(2.0, 2.0, 1.0, 1.0); }) == ErrorCode::NotConjugate);
}

TEST_CASE("symmetrized bound equals the conjugate Renyi bound") {
    for (double s : {0.0, 0.2, 0.5, 0.9}) {
        const double a = 1.0 / (1.0 - s), b = 1.0 / (1.0 + s);
        CHECK(bound_symmetrized_binned(s, 1.3, 2.0) == doctest::Approx(bound_renyi_binned(a, b, 1.3, 2.0)).epsilon(1e-13));
    }
    // s = 0.5 value written out.
    CHECK(bound_symmetrized_binned(0.5, 1.0, 2 * kPi) ==
          doctest::Approx(0.5 * std::log(0.75) + 2.0 * std::atanh(0.5) - std::log(2.0)).epsilon(1e-14));
    CHECK(code_of([] { bound_symmetrized_binned(1.0, 1.0, 1.0); }) == ErrorCode::InvalidS);
}

TEST_CASE("continuous bounds") {
    CHECK(bound_continuous(1.0, 1.0) == doctest::Approx(1.0 + std::log(kPi)).epsilon(1e-15));
    const double a = 2.0, b = 2.0 / 3.0;
    const double expect = -0.5 * (std::log(a / kPi) / (1 - a) + std::log(b / kPi) / (1 - b));
    CHECK(bound_continuous(a, b) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(bound_continuous_rescaled(1.0) == doctest::Approx(1.0 + std::log(kPi)).epsilon(1e-15));
}

TEST_CASE("Babenko-Beckner constant") {
    CHECK(bb_constant(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    const double a = 2.0, b = 2.0 / 3.0;
    CHECK(bb_constant(a, b) == doctest::Approx(std::pow(a / kPi, -1 / (2 * a)) * std::pow(b / kPi, 1 / (2 * b))).epsilon(1e-15));
}

TEST_CASE("Deutsch and Maassen-Uffink bounds") {
    const double c = 1.0 / std::sqrt(2.0);
    CHECK(bound_deutsch(c) == doctest::Approx(-2.0 * std::log((1.0 + c) / 2.0)).epsilon(1e-15));
    CHECK(std::abs(bound_deutsch(c) - 0.316694) < 1e-6);
    CHECK(bound_maassen_uffink(c) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(bound_maassen_uffink(c) >= bound_deutsch(c));
    CHECK(code_of([] { bound_deutsch(0.3, 4); }) == ErrorCode::InvalidOverlap);
    CHECK(code_of([] { bound_maassen_uffink(1.2); }) == ErrorCode::InvalidOverlap);
    CHECK(bound_maassen_uffink(1.0) == 0.0);
}

TEST_CASE("overlap of the DFT pair") {
    const auto set = dft_basis(5);
    CHECK(overlap_C_B(set.bases[0], set.bases[1]) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("angle bound") {
    CHECK(bound_angle(16) == doctest::Approx(std::log(16.0)).epsilon(1e-15));
    CHECK_THROWS_AS(bound_angle(0), Error);
}

TEST_CASE("MUB sum bounds") {
    CHECK(bound_mub_sum(4, 3, MubVariant::pairwise) == doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-15));
    CHECK(bound_mub_sum(4, 3, MubVariant::sanchez) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(bound_mub_sum(3, 3, MubVariant::refined) == doctest::Approx(3.0 * std::log(9.0 / 5.0)).epsilon(1e-15));
    CHECK(code_of([] { bound_mub_sum(3, 3, MubVariant::sanchez); }) == ErrorCode::VariantInapplicable);
    const auto best = best_mub_bound(4, 3);
    CHECK(best.value >= bound_mub_sum(4, 3, MubVariant::pairwise));
    CHECK(parse_mub_variant(mub_variant_name(MubVariant::refined)) == MubVariant::refined);
}

TEST_CASE("log-Sobolev right-hand side saturates on Gaussians") {
    for (double sigma : {0.6, 1.0, 1.7}) {
        const auto rho = position_density(gaussian_state(sigma, 0.3, 0.0, balanced_grid(4096)));
        const auto ls = log_sobolev_rhs(rho);
        CHECK(ls.fisher == doctest::Approx(1.0 / (sigma * sigma)).epsilon(1e-6));
        CHECK(ls.rhs == doctest::Approx(continuous_shannon(rho).value).epsilon(1e-6));
    }
    const auto box = position_density(box_state(1.0, box_default_grid(1.0)));
    CHECK(code_of([&] { log_sobolev_rhs(box); }) == ErrorCode::SupportBoundary);
}

TEST_CASE("inverse log-Sobolev and refined Heisenberg") {
    const double sigma = 1.4;
    const double gauss_s = 0.5 * std::log(2 * kPi * std::exp(1.0) * sigma * sigma);
    CHECK(inverse_log_sobolev_rhs(sigma, 1.0, Side::position) == doctest::Approx(gauss_s).epsilon(1e-15));
    CHECK(inverse_log_sobolev_rhs(sigma, 2.0, Side::momentum) ==
          doctest::Approx(gauss_s - std::log(2.0)).epsilon(1e-15));
    CHECK(refined_heisenberg(1.0 + std::log(kPi)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(parse_side("momentum") == Side::momentum);
}

TEST_CASE("Deutsch minimizer") {
    const auto a = basis_state(3, 0);
    FiniteState b{{{0.0, 0.0}, {0.0, std::sqrt(0.5)}, {std::sqrt(0.5), 0.0}}};
    const auto m = deutsch_minimizer(a, b);
    CHECK(m.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
    // Equal weight on both directions.
    cplx oa = 0.0, ob = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        oa += std::conj(a.amplitudes[i]) * m.amplitudes[i];
        ob += std::conj(b.amplitudes[i]) * m.amplitudes[i];
    }
    CHECK(std::abs(oa) == doctest::Approx(std::abs(ob)).epsilon(1e-14));
    CHECK(code_of([&] { deutsch_minimizer(a, a); }) == ErrorCode::DegenerateParallel);
    CHECK(deutsch_q(0.5, 0.25) == doctest::Approx(std::log(8.0)).epsilon(1e-15));
}
