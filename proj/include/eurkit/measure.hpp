#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "eurkit/spectral.hpp"
#include "eurkit/states.hpp"

namespace eurkit {

// Where bin i sits relative to the origin: centered on i*delta, or starting
// at i*delta (left edge).
enum class BinAlignment { centered, edge };

std::string bin_alignment_name(BinAlignment a);
BinAlignment parse_bin_alignment(const std::string& name);

struct BinEntry {
    long index = 0;
    double probability = 0.0;
};

struct BinnedDistribution {
    static constexpr double kSumTolerance = 1e-9;
    static constexpr double kTailThreshold = 1e-12;

    double bin_width = 0.0;  // 0 for exact-count distributions
    BinAlignment alignment = BinAlignment::centered;
    bool exact_count = false;
    std::vector<BinEntry> entries;
    double tail_mass = 0.0;

    std::vector<double> probabilities() const;
    double total() const;
    // Center of bin `index` (bin_width must be > 0).
    double center(long index) const;

    // Non-negative probabilities, Sum p + tail = 1 within kSumTolerance.
    void validate() const;
};

// Distribution over 0..n-1 from raw probabilities (exact-count flag set).
BinnedDistribution make_exact_distribution(std::vector<double> probabilities);

// q_i = integral of rho over bin i. Bins covering the support are enumerated;
// end bins whose cumulative mass stays below 1e-12 are folded into tail_mass.
BinnedDistribution bin_position(const DensityGrid& rho, double delta_x,
                                BinAlignment align = BinAlignment::centered);
BinnedDistribution bin_momentum(const DensityGrid& rho_k, double delta_k,
                                BinAlignment align = BinAlignment::centered);

// p_j = (Si((4j+2) pi) - Si((4j-2) pi)) / pi for the box state with
// delta_k = 2 pi / a; independent of a.
double box_momentum_bin(long j);
// p_j for |j| <= j_max; the exact remainder 2 (pi/2 - Si((4 j_max + 2) pi)) / pi
// is recorded as tail_mass.
BinnedDistribution box_momentum_distribution(double a, long j_max = 1000000);

// q_n = integral of |psi(phi)|^2 over [n dphi, (n+1) dphi), dphi = 2 pi / N.
BinnedDistribution bin_angle(const CircleState& psi, int n_bins);

// |<b_i|psi>|^2 for the columns b_i of `basis`.
BinnedDistribution finite_probabilities(const FiniteState& state, const Matrix& basis);

double mean(const DensityGrid& rho);
double std_dev(const DensityGrid& rho);
// Spread of the bin centers weighted by the bin probabilities.
double std_dev(const BinnedDistribution& p);

// Standard deviation over the whole grid and over its central half. A
// relative change above 1% means the second moment is not converged on
// this grid (heavy tails such as the box-state momentum density).
struct StdDevDiagnostic {
    double sigma = 0.0;
    double sigma_half_range = 0.0;
    double relative_change = 0.0;
    bool converged = true;
};

StdDevDiagnostic std_dev_diagnostic(const DensityGrid& rho);

// Mass of the normalized |Y_l^l|^2 = N sin^(2l) theta inside the equatorial
// band |theta - pi/2| <= d_theta / 2.
double sphere_bin(int l, double d_theta);

// psi(theta, phi) = sum c Y_l^m(theta, phi).
struct SphereTerm {
    int l = 0;
    int m = 0;
    std::complex<double> c{1.0, 0.0};
};

struct SphereBin {
    int i = 0;
    int j = 0;
    double probability = 0.0;
};

struct SphereBinnedDistribution {
    double d_theta = 0.0;
    double d_phi = 0.0;
    std::vector<SphereBin> entries;

    double total() const;
};

// q_ij over theta bins [i d_theta, (i+1) d_theta) and phi bins
// [j d_phi, (j+1) d_phi), with the sin(theta) measure.
SphereBinnedDistribution sphere_bins(const std::vector<SphereTerm>& terms, int n_theta, int n_phi);

}  // namespace eurkit
