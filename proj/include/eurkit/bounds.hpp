#pragma once

#include <cstddef>
#include <string>

#include "eurkit/spectral.hpp"
#include "eurkit/states.hpp"

namespace eurkit {

// Conjugate Renyi exponents satisfy 1/alpha + 1/beta = 2 with alpha, beta > 1/2.
constexpr double kConjugateTolerance = 1e-12;

bool is_conjugate_pair(double alpha, double beta, double tol = kConjugateTolerance);
// beta = alpha / (2 alpha - 1); alpha = 1 maps to 1.
double conjugate_exponent(double alpha);
void require_conjugate(double alpha, double beta);

// ln(alpha) / (1 - alpha), with the value -1 at alpha = 1.
double renyi_log_term(double alpha);

// n(alpha, beta) = (alpha/pi)^(-1/(2 alpha)) (beta/pi)^(1/(2 beta)).
double bb_constant(double alpha, double beta);

// Binned bounds in wave-vector units: delta_x delta_p / h = delta_x delta_k / (2 pi).
double bound_shannon_binned(double delta_x, double delta_k);
double bound_renyi_binned(double alpha, double beta, double delta_x, double delta_k);
double bound_symmetrized_binned(double s, double delta_x, double delta_k);

// -1/2 [ln(alpha/pi)/(1-alpha) + ln(beta/pi)/(1-beta)]; 1 + ln pi at alpha = beta = 1.
double bound_continuous(double alpha, double beta);
// Shannon bound for a wavefunction rescaled to norm `norm`: N^2 (1 + ln pi - 4 ln N).
double bound_continuous_rescaled(double norm);

// dim = 0 skips the C_B >= 1/sqrt(D) domain check.
double bound_deutsch(double c_b, std::size_t dim = 0);
double bound_maassen_uffink(double c_b, std::size_t dim = 0);

// sup |<a_i|b_j>| over the columns of a and b.
double overlap_C_B(const Matrix& a, const Matrix& b);

double bound_angle(int n_bins);

enum class MubVariant { pairwise, sanchez, refined };

std::string mub_variant_name(MubVariant v);
MubVariant parse_mub_variant(const std::string& name);

// pairwise (M/2) ln D; sanchez (D+1) ln((D+1)/2), only for M = D+1;
// refined M ln(M D / (M + D - 1)).
double bound_mub_sum(std::size_t m, std::size_t d, MubVariant variant);

struct MubBound {
    double value = 0.0;
    MubVariant variant = MubVariant::pairwise;
};

// Largest applicable bound of the three.
MubBound best_mub_bound(std::size_t m, std::size_t d);

struct LogSobolevResult {
    double rhs = 0.0;
    double fisher = 0.0;          // int rho'^2 / rho
    double excluded_mass = 0.0;   // mass at points with rho <= 1e-12
};

// 1/2 (1 + ln 2 pi) - 1/2 ln(L^2 int rho'^2 / rho), rho' by five-point centered
// differences. Throws SupportBoundary for densities with declared jumps.
LogSobolevResult log_sobolev_rhs(const DensityGrid& rho, double L = 1.0);

enum class Side { position, momentum };

std::string side_name(Side s);
Side parse_side(const std::string& name);

// Upper bound on S: 1/2 (1 + ln 2 pi) + ln(L sigma) for position,
// + ln(sigma / L) for momentum.
double inverse_log_sobolev_rhs(double sigma, double L, Side side);

// 1/2 exp(S_sum - 1 - ln pi).
double refined_heisenberg(double s_sum);

// (|a> + e^{-i arg<a|b>} |b>) / sqrt(2 (1 + |<a|b>|)).
FiniteState deutsch_minimizer(const FiniteState& a, const FiniteState& b);

// Q = -ln q - ln p.
double deutsch_q(double q, double p);

}  // namespace eurkit
