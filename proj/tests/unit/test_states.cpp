#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eurkit/errors.hpp"
#include "eurkit/measure.hpp"
#include "eurkit/states.hpp"

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

TEST_CASE("normalize rescales and refuses zero vectors") {
    FiniteState s{{{3.0, 0.0}, {0.0, 4.0}}};
    const auto n = normalize(s);
    CHECK(n.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(n.amplitudes[0] - cplx(0.6, 0.0)) < 1e-15);
    FiniteState z{{0.0, 0.0}};
    CHECK(code_of([&] { normalize(z); }) == ErrorCode::ZeroNorm);
}

TEST_CASE("validation catches a wrong norm") {
    FiniteState s{{{0.5, 0.0}, {0.5, 0.0}}};
    CHECK(code_of([&] { s.validate(); }) == ErrorCode::NotNormalized);
}

TEST_CASE("box state: unit norm, jumps at +-a") {
    const double a = 1.5;
    const auto psi = box_state(a, box_default_grid(a));
    CHECK(psi.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(psi.breakpoints.size() == 2);
    const auto rho = position_density(psi);
    CHECK(mean(rho) == doctest::Approx(0.0).epsilon(1e-12));
    // sigma of the uniform density on [-a, a] is a / sqrt(3).
    CHECK(std_dev(rho) == doctest::Approx(a / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("gaussian state moments") {
    const auto psi = gaussian_state(0.8, 0.5, 1.2, balanced_grid(4096));
    const auto rho = position_density(psi);
    CHECK(mean(rho) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std_dev(rho) == doctest::Approx(0.8).epsilon(1e-10));
}

TEST_CASE("gaussian outside the grid is rejected") {
    CHECK_THROWS_AS(gaussian_state(1.0, 200.0, 0.0, balanced_grid(1024)), Error);
}

TEST_CASE("example I variance matches L^2 (N - 1/N + 1/12)") {
    for (long N : {2L, 10L, 100L}) {
        const double L = 0.7;
        const auto rho = example1_density(L, N, example1_default_grid(L, N));
        const double expect = L * std::sqrt(N - 1.0 / N + 1.0 / 12.0);
        CHECK(std_dev(rho) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("example II variances") {
    const double L = 2.0;
    const auto a = example2_density(Example2Case::A, L, example2_default_grid(L));
    const auto b = example2_density(Example2Case::B, L, example2_default_grid(L));
    CHECK(std_dev(a) == doctest::Approx(L / std::sqrt(12.0)).epsilon(1e-13));
    CHECK(std_dev(b) == doctest::Approx(std::sqrt(7.0 / 4.0) * L / std::sqrt(12.0)).epsilon(1e-13));
}

TEST_CASE("Hermite functions are orthonormal") {
    const std::size_t K = 12;
    const double h = 0.01;
    std::vector<std::vector<double>> g(K, std::vector<double>(K, 0.0));
    for (double x = -15.0; x <= 15.0; x += h) {
        const auto phi = hermite_functions(K, x);
        for (std::size_t i = 0; i < K; ++i)
            for (std::size_t j = 0; j < K; ++j) g[i][j] += h * phi[i] * phi[j];
    }
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < K; ++j) CHECK(g[i][j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
    // phi_0 closed form.
    CHECK(hermite_functions(1, 0.3)[0] == doctest::Approx(std::pow(kPi, -0.25) * std::exp(-0.045)).epsilon(1e-15));
}

TEST_CASE("trial streams are reproducible and independent") {
    auto a = trial_rng(7, 3);
    auto b = trial_rng(7, 3);
    auto c = trial_rng(7, 4);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
}

TEST_CASE("random ensembles produce valid states") {
    for (auto kind : {EnsembleKind::finite_haar, EnsembleKind::grid_smooth, EnsembleKind::circle_window,
                      EnsembleKind::mixture}) {
        RandomEnsembleSpec spec;
        spec.kind = kind;
        spec.seed = 11;
        for (std::uint64_t i = 0; i < 3; ++i) {
            const auto s = random_state(spec, i);
            std::visit([](const auto& st) { CHECK_NOTHROW(st.validate()); }, s);
        }
        CHECK(parse_ensemble_kind(ensemble_kind_name(kind)) == kind);
    }
}

TEST_CASE("ensemble settings validation") {
    RandomEnsembleSpec spec;
    spec.dim = 0;
    CHECK_THROWS_AS(spec.validate(), Error);
    CHECK_THROWS_AS(parse_ensemble_kind("nope"), Error);
}

TEST_CASE("mixture densities have unit mass") {
    RandomEnsembleSpec spec;
    spec.kind = EnsembleKind::mixture;
    spec.seed = 5;
    const auto m = std::get<MixtureState>(random_state(spec, 0));
    const auto [x, k] = mixture_density(m);
    CHECK(x.mass() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(k.mass() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("circle and finite constructors") {
    CHECK(angular_eigenstate(-3).coefficient(-3) == cplx(1.0, 0.0));
    CHECK(angular_eigenstate(-3).coefficient(2) == cplx(0.0, 0.0));
    CHECK(uniform_state(5).norm_squared() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(basis_state(3, 3), Error);
}
