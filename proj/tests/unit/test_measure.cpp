#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "eurkit/errors.hpp"
#include "eurkit/measure.hpp"

using namespace eurkit;

namespace {

constexpr double kPi = std::numbers::pi;
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

// |psi~(k)|^2 for the box of half-width a.
double box_rho_k(double a, double k) {
    if (k == 0.0) return a / kPi;
    const double s = std::sin(a * k);
    return s * s / (kPi * a * k * k);
}

}  // namespace

TEST_CASE("box momentum bins agree with direct quadrature") {
    const double a = 1.0;
    for (long j : {0L, 1L, -1L, 4L, 37L}) {
        const double lo = (2.0 * j - 1.0) * kPi / a, hi = (2.0 * j + 1.0) * kPi / a;
        const double direct = GK::integrate([&](double k) { return box_rho_k(a, k); }, lo, hi, 20, 1e-15);
        CHECK(box_momentum_bin(j) == doctest::Approx(direct).epsilon(1e-12));
    }
    CHECK(box_momentum_bin(3) == box_momentum_bin(-3));
}

TEST_CASE("box momentum distribution accounts for all mass") {
    const auto p = box_momentum_distribution(2.0, 100000);
    CHECK(p.total() + p.tail_mass == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p.tail_mass == doctest::Approx(2.0 / (kPi * kPi * (4.0 * 100000 + 2.0))).epsilon(1e-4));
    CHECK(p.bin_width == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("gaussian position bins match erf differences") {
    const double sigma = 0.7;
    const auto psi = gaussian_state(sigma, 0.0, 0.0, balanced_grid(4096));
    const auto rho = position_density(psi);
    const double d = 0.5;
    const auto c = bin_position(rho, d, BinAlignment::centered);
    const auto e = bin_position(rho, d, BinAlignment::edge);
    auto cdf = [&](double x) { return 0.5 * std::erfc(-x / (sigma * std::sqrt(2.0))); };
    // Bin edges fall between nodes; the interpolant there is sixth order.
    for (const auto& b : c.entries) {
        CHECK(std::abs(b.probability - (cdf((b.index + 0.5) * d) - cdf((b.index - 0.5) * d))) < 2e-8);
    }
    for (const auto& b : e.entries) {
        CHECK(std::abs(b.probability - (cdf((b.index + 1.0) * d) - cdf(b.index * d))) < 2e-8);
    }
    CHECK(c.total() + c.tail_mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.tail_mass <= 1e-12);
}

TEST_CASE("bins narrower than the grid spacing are refused") {
    const auto psi = gaussian_state(1.0, 0.0, 0.0, balanced_grid(1024));
    const auto rho = position_density(psi);
    try {
        bin_position(rho, rho.grid().dx / 2.0);
        FAIL("expected BinTooFine");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BinTooFine);
    }
}

TEST_CASE("angle bins agree with direct integration") {
    RandomEnsembleSpec spec;
    spec.kind = EnsembleKind::circle_window;
    spec.m_window = 4;
    spec.seed = 3;
    const auto psi = std::get<CircleState>(random_state(spec, 0));
    auto density = [&](double phi) {
        cplx v = 0.0;
        for (int m = psi.m_min; m <= psi.m_max(); ++m) v += psi.coefficient(m) * std::exp(cplx(0.0, m * phi));
        return std::norm(v) / (2.0 * kPi);
    };
    for (int n_bins : {1, 3, 8}) {
        const auto q = bin_angle(psi, n_bins);
        REQUIRE(q.entries.size() == static_cast<std::size_t>(n_bins));
        const double dphi = 2.0 * kPi / n_bins;
        for (int n = 0; n < n_bins; ++n) {
            const double direct = GK::integrate(density, n * dphi, (n + 1) * dphi, 15, 1e-15);
            CHECK(q.entries[n].probability == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("finite probabilities and the exact flag") {
    const auto p = finite_probabilities(uniform_state(4), dft_matrix(4));
    CHECK(p.exact_count);
    CHECK(p.entries[0].probability == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.entries[1].probability < 1e-28);
    CHECK_THROWS_AS(finite_probabilities(uniform_state(3), dft_matrix(4)), Error);
}

TEST_CASE("binned standard deviation uses bin centers") {
    BinnedDistribution p;
    p.bin_width = 2.0;
    p.entries = {{-1, 0.5}, {1, 0.5}};
    CHECK(std_dev(p) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("std-dev diagnostic flags heavy tails") {
    const auto g = gaussian_state(1.0, 0.0, 0.0, balanced_grid(4096));
    CHECK(std_dev_diagnostic(momentum_density(g)).converged);
    const auto box = box_state(1.0, box_default_grid(1.0));
    CHECK_FALSE(std_dev_diagnostic(momentum_density(box)).converged);
}

TEST_CASE("sphere band masses match closed forms") {
    for (double d : {0.1, 1.0, 3.0}) {
        const double h = d / 2.0;
        CHECK(sphere_bin(0, d) == doctest::Approx(std::sin(h)).epsilon(1e-13));
        const double s = std::sin(h);
        CHECK(sphere_bin(1, d) == doctest::Approx(1.5 * (s - s * s * s / 3.0)).epsilon(1e-13));
    }
    CHECK(sphere_bin(5, kPi) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(sphere_bin(1, 0.0), Error);
}

TEST_CASE("sphere bins of Y_00 are uniform in solid angle") {
    const int nt = 4, np = 3;
    const auto q = sphere_bins({{0, 0, {1.0, 0.0}}}, nt, np);
    CHECK(q.total() == doctest::Approx(1.0).epsilon(1e-13));
    const double dt = kPi / nt;
    for (const auto& b : q.entries) {
        const double expect = (std::cos(b.i * dt) - std::cos((b.i + 1) * dt)) / 2.0 / np;
        CHECK(b.probability == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("sphere bins of a superposition sum to one") {
    const auto q = sphere_bins({{2, 1, {0.6, 0.0}}, {3, -2, {0.0, 0.8}}}, 6, 5);
    CHECK(q.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("alignment names round trip") {
    CHECK(parse_bin_alignment("edge") == BinAlignment::edge);
    CHECK(bin_alignment_name(BinAlignment::centered) == "centered");
    CHECK_THROWS_AS(parse_bin_alignment("left"), Error);
}
