#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eurkit/grid.hpp"

namespace eurkit {

using cplx = std::complex<double>;

// psi(x) sampled on a uniform grid. Breakpoints mark jump discontinuities
// (box-like states) so that densities integrate exactly across them.
struct GridWavefunction {
    static constexpr double kNormTolerance = 1e-9;

    GridSpec grid;
    std::vector<cplx> values;
    std::vector<double> breakpoints;

    // Integral of |psi|^2 with the breakpoint-aware quadrature.
    double norm_squared() const;
    void validate() const;
};

struct FiniteState {
    static constexpr double kNormTolerance = 1e-12;

    std::vector<cplx> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double norm_squared() const;
    void validate() const;
};

// Fourier coefficients c_m, m = m_min .. m_min + size - 1, of a function on
// the circle: psi(phi) = (2 pi)^(-1/2) sum_m c_m exp(i m phi).
struct CircleState {
    static constexpr double kNormTolerance = 1e-12;

    int m_min = 0;
    std::vector<cplx> coefficients;

    int m_max() const { return m_min + static_cast<int>(coefficients.size()) - 1; }
    cplx coefficient(int m) const;
    double norm_squared() const;
    void validate() const;
};

struct MixtureState {
    static constexpr double kWeightTolerance = 1e-12;

    std::vector<double> weights;
    std::vector<GridWavefunction> components;

    const GridSpec& grid() const { return components.front().grid; }
    void validate() const;
};

using AnyState = std::variant<GridWavefunction, FiniteState, CircleState, MixtureState>;

std::string state_kind_name(const AnyState& state);

// Rescale to unit norm. Throws ZeroNorm when the norm is below 1e-300.
GridWavefunction normalize(const GridWavefunction& psi);
FiniteState normalize(const FiniteState& psi);
CircleState normalize(const CircleState& psi);

DensityGrid position_density(const GridWavefunction& psi);

// Uniform wavefunction 1/sqrt(2a) on [-a, a] with breakpoints at +-a. Grid
// points at -a hold the left limit (0), points at +a the interior value.
GridWavefunction box_state(double a, const GridSpec& grid);
// Default grid for box_state: [-32a, 32a) with 2^20 points; +-a on grid points.
GridSpec box_default_grid(double a);

// Gaussian with |psi|^2 = N(x0, sigma_x^2) and mean wave vector k0.
GridWavefunction gaussian_state(double sigma_x, double x0, double k0, const GridSpec& grid);

// Piecewise-constant density 1/L on A = [L(N + 1/N), L(N + 1)] and on
// B = [0, L/N] (B has length L/N and sits a distance NL below A).
DensityGrid example1_density(double L, long N, const GridSpec& grid);
GridSpec example1_default_grid(double L, long N);

enum class Example2Case { A, B };
// Case A: 1/L on [0, L]. Case B: 2/L on [0, L/4] and [3L/4, L].
DensityGrid example2_density(Example2Case which, double L, const GridSpec& grid);
GridSpec example2_default_grid(double L);

FiniteState basis_state(std::size_t dim, std::size_t index);
FiniteState uniform_state(std::size_t dim);
CircleState angular_eigenstate(int m);

// Orthonormal Hermite functions phi_0..phi_{count-1} at x.
std::vector<double> hermite_functions(std::size_t count, double x);

enum class EnsembleKind { finite_haar, grid_smooth, circle_window, mixture };

std::string ensemble_kind_name(EnsembleKind kind);
EnsembleKind parse_ensemble_kind(const std::string& name);

struct RandomEnsembleSpec {
    EnsembleKind kind = EnsembleKind::finite_haar;
    std::size_t dim = 4;                           // finite-haar
    std::size_t grid_points = kDefaultGridPoints;  // grid-smooth, mixture
    double smoothness = 8.0;                       // grid-smooth: ceil() modes
    int m_window = 6;                              // circle-window: m in [-W, W]
    std::size_t components = 3;                    // mixture
    std::uint64_t seed = 0;

    void validate() const;
};

// Independent generator for trial `index` of the stream `seed`.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

// Parameters behind one grid-smooth draw:
//   psi(x) = exp(i k0 x) s^(-1/2) sum_n c_n phi_n((x - x0)/s), then normalized.
struct SmoothDraw {
    double scale = 1.0;
    double x0 = 0.0;
    double k0 = 0.0;
    std::vector<cplx> coefficients;
};

SmoothDraw draw_smooth_parameters(const RandomEnsembleSpec& spec, std::uint64_t index);

// Half-width of the momentum band, around k0, holding all but a negligible
// fraction of a grid-smooth draw with `modes` modes.
double smooth_momentum_band(std::size_t modes);

AnyState random_state(const RandomEnsembleSpec& spec, std::uint64_t index);

// rho_mix = sum w_i |psi_i|^2 and rho~_mix = sum w_i |psi~_i|^2.
std::pair<DensityGrid, DensityGrid> mixture_density(const MixtureState& mix);

}  // namespace eurkit
