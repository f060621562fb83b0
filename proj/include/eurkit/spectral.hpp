#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "eurkit/states.hpp"

namespace eurkit {

// Continuous Fourier transform psi~(k) = (2 pi)^(-1/2) int dx e^{-ikx} psi(x),
// evaluated at the points of conjugate_grid(psi.grid) by a Riemann sum carried
// out with an FFT plus the x_min / k_min phase factors.
GridWavefunction fourier_transform(const GridWavefunction& psi);

// psi(x) = (2 pi)^(-1/2) int dk e^{ikx} psi~(k) on `position_grid`, whose
// conjugate grid must match psi_tilde.grid.
GridWavefunction inverse_fourier_transform(const GridWavefunction& psi_tilde,
                                           const GridSpec& position_grid);

// out_m = d_in (2 pi)^(-1/2) sum_j exp(sign * i * y_m * x_j) in_j, where x_j runs
// over `in_grid` and y_m over `out_grid`. Requires in.dx * out.dx * n = 2 pi.
std::vector<cplx> continuous_dft(std::span<const cplx> values, const GridSpec& in_grid,
                                 const GridSpec& out_grid, int sign);

DensityGrid momentum_density(const GridWavefunction& psi);

// sqrt(1/(pi a)) sin(a k)/k, with limit sqrt(a/pi) at k = 0.
double box_transform_closed_form(double a, double k);

// c_m = (2 pi)^(-1/2) int_0^{2pi} dphi e^{-i m phi} psi(phi) from uniform
// samples phi_s = 2 pi s / S. Throws Undersampled if S < 2 (m_max - m_min).
CircleState circle_coefficients(std::span<const cplx> samples, int m_min, int m_max);

// psi(phi_s) at phi_s = 2 pi s / count.
std::vector<cplx> synthesize_circle(const CircleState& state, std::size_t count);

using Matrix = Eigen::MatrixXcd;

// Columns of each matrix are the basis vectors.
struct UnitaryBasisSet {
    std::size_t dim = 0;
    std::vector<Matrix> bases;
    bool mutually_unbiased = false;

    void validate() const;
};

double unitarity_residual(const Matrix& u);
bool is_unitary(const Matrix& u, double tol = 1e-12);

Matrix dft_matrix(std::size_t n);
// {identity, DFT}; f_kl = N^(-1/2) exp(2 pi i k l / N).
UnitaryBasisSet dft_basis(std::size_t n);

bool is_prime(std::size_t n);
// D + 1 mutually unbiased bases for prime D <= 101: the computational basis
// and vectors D^(-1/2) exp(2 pi i (j k + m k^2)/D), m = 0..D-1 (for D = 2 the
// quadratic phase is i^(m k^2)).
UnitaryBasisSet mub_prime(std::size_t dim);

Matrix haar_unitary(std::size_t dim, std::mt19937_64& rng);

// Si(x) = int_0^x sin(t)/t dt. Adaptive Gauss-Kronrod for |x| < 50, the
// auxiliary-function asymptotic series beyond.
double sine_integral(double x);
// pi/2 - Si(x) for x > 0; accurate to full relative precision for large x.
double sine_integral_complement(double x);

}  // namespace eurkit
