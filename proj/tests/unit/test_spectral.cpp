#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "eurkit/errors.hpp"
#include "eurkit/spectral.hpp"

using namespace eurkit;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: Maclaurin series of Si in 50-digit arithmetic.
double si_oracle(double xd) {
    using F = boost::multiprecision::cpp_bin_float_50;
    const F x = xd;
    F term = x;  // x^(2n+1) / (2n+1)!
    F sum = 0;
    for (int n = 0; n < 400; ++n) {
        sum += term / (2 * n + 1);
        term *= -x * x / F((2 * n + 2) * (2 * n + 3));
        if (abs(term) < F(1e-45)) break;
    }
    return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("sine integral matches a high-precision series") {
    for (double x : {1e-6, 0.3, 1.0, 2.5, 3.14159, 7.0, 12.5, 20.0, 33.0, 49.9, 50.1}) {
        CHECK(sine_integral(x) == doctest::Approx(si_oracle(x)).epsilon(1e-14));
        CHECK(sine_integral(-x) == doctest::Approx(-si_oracle(x)).epsilon(1e-14));
    }
    CHECK(sine_integral(kPi) == doctest::Approx(1.851937052).epsilon(1e-9));
    CHECK(sine_integral(0.0) == 0.0);
}

TEST_CASE("sine integral complement keeps relative precision far out") {
    // pi/2 - Si(x) ~ cos(x)/x (1 - 2/x^2) + sin(x)/x^2 (1 - 6/x^2).
    for (double x : {200.0, 1e4, 2.5e7}) {
        const double approx = std::cos(x) / x * (1.0 - 2.0 / (x * x)) + std::sin(x) / (x * x) * (1.0 - 6.0 / (x * x));
        CHECK(sine_integral_complement(x) == doctest::Approx(approx).epsilon(1e-8));
    }
    CHECK(sine_integral_complement(40.0) == doctest::Approx(kPi / 2 - si_oracle(40.0)).epsilon(1e-12));
}

TEST_CASE("Fourier transform of a Gaussian is a Gaussian") {
    const GridSpec g = balanced_grid(2048);
    const double sigma = 0.9, x0 = 0.4, k0 = -0.7;
    const auto psi = gaussian_state(sigma, x0, k0, g);
    const auto t = fourier_transform(psi);
    const double sk = 1.0 / (2.0 * sigma);
    double err = 0.0;
    for (std::size_t j = 0; j < t.grid.n; ++j) {
        const double k = t.grid.x(j);
        // |psi~(k)| = (2 pi sk^2)^(-1/4) exp(-(k - k0)^2 / (4 sk^2)).
        const double mag = std::pow(2.0 * kPi * sk * sk, -0.25) * std::exp(-(k - k0) * (k - k0) / (4 * sk * sk));
        err = std::max(err, std::abs(std::abs(t.values[j]) - mag));
    }
    CHECK(err < 1e-12);
    // Phase: psi~(k) carries exp(-i k x0).
    const std::size_t j0 = t.grid.n / 2 + 3;
    const double k = t.grid.x(j0);
    const cplx ratio = t.values[j0] / std::abs(t.values[j0]);
    CHECK(std::abs(ratio - std::exp(cplx(0.0, -(k - k0) * x0 - 0.0 * k))) < 1e-10);
}

TEST_CASE("inverse transform recovers the state") {
    const GridSpec g = balanced_grid(1024, 0.3);
    const auto psi = gaussian_state(1.1, 0.2, 0.5, g);
    const auto back = inverse_fourier_transform(fourier_transform(psi), g);
    double err = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) err = std::max(err, std::abs(back.values[i] - psi.values[i]));
    CHECK(err < 1e-13);
}

TEST_CASE("Hermite functions are eigenfunctions of the transform") {
    const GridSpec g = balanced_grid(2048);
    for (std::size_t n : {1u, 2u, 5u}) {
        GridWavefunction psi{g, std::vector<cplx>(g.n), {}};
        for (std::size_t i = 0; i < g.n; ++i) psi.values[i] = hermite_functions(n + 1, g.x(i))[n];
        const auto t = fourier_transform(psi);
        const cplx phase = std::pow(cplx(0.0, -1.0), static_cast<int>(n));
        double err = 0.0;
        for (std::size_t j = 0; j < t.grid.n; ++j) {
            err = std::max(err, std::abs(t.values[j] - phase * hermite_functions(n + 1, t.grid.x(j))[n]));
        }
        CHECK(err < 1e-12);
    }
}

TEST_CASE("box transform matches the closed form") {
    const double a = 1.0;
    const auto psi = box_state(a, GridSpec::make(-32.0, 64.0 / 65536.0, 65536));
    const auto t = fourier_transform(psi);
    for (std::size_t j : {t.grid.n / 2, t.grid.n / 2 + 100, t.grid.n / 2 + 2000}) {
        const double k = t.grid.x(j);
        CHECK(std::abs(t.values[j]) == doctest::Approx(std::abs(box_transform_closed_form(a, k))).epsilon(2e-3));
    }
    CHECK(box_transform_closed_form(a, 0.0) == doctest::Approx(std::sqrt(a / kPi)).epsilon(1e-15));
}

TEST_CASE("continuous_dft rejects non-conjugate grids") {
    const GridSpec g = balanced_grid(64);
    std::vector<cplx> v(64, 1.0);
    CHECK_THROWS_AS(continuous_dft(v, g, GridSpec::make(0.0, 1.0, 64), -1), Error);
    CHECK_NOTHROW(continuous_dft(v, g, conjugate_grid(g), -1));
}

TEST_CASE("circle coefficients round trip and undersampling") {
    CircleState s{-2, {{0.5, 0.0}, {0.0, 0.5}, {0.5, 0.0}, {0.0, 0.0}, {0.0, -0.5}}};
    const auto samples = synthesize_circle(s, 32);
    const auto back = circle_coefficients(samples, -2, 2);
    for (int m = -2; m <= 2; ++m) CHECK(std::abs(back.coefficient(m) - s.coefficient(m)) < 1e-14);
    const auto few = synthesize_circle(s, 6);
    CHECK_THROWS_AS(circle_coefficients(few, -2, 2), Error);
}

TEST_CASE("DFT and MUB constructions") {
    for (std::size_t d : {2u, 3u, 5u, 7u, 11u}) {
        const auto set = mub_prime(d);
        CHECK(set.bases.size() == d + 1);
        CHECK(set.mutually_unbiased);
        for (const auto& b : set.bases) CHECK(is_unitary(b, 1e-12));
        for (std::size_t p = 0; p < set.bases.size(); ++p) {
            for (std::size_t q = p + 1; q < set.bases.size(); ++q) {
                const Matrix o = set.bases[p].adjoint() * set.bases[q];
                CHECK((o.cwiseAbs2().array() - 1.0 / static_cast<double>(d)).abs().maxCoeff() < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(mub_prime(6), Error);
    CHECK_THROWS_AS(mub_prime(103), Error);
    CHECK(is_unitary(dft_matrix(8)));
    CHECK(std::abs(dft_matrix(4)(1, 1) - cplx(0.0, 0.5)) < 1e-15);
}

TEST_CASE("Haar unitaries are unitary and reproducible") {
    std::mt19937_64 a(9), b(9);
    const auto u = haar_unitary(6, a);
    CHECK(is_unitary(u, 1e-12));
    CHECK((u - haar_unitary(6, b)).norm() == 0.0);
    CHECK(unitarity_residual(Matrix::Constant(2, 2, 1.0)) > 0.5);
}
