#include "eurkit/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eurkit/errors.hpp"
#include "eurkit/spectral.hpp"

namespace eurkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroNorm = 1e-300;

std::vector<double> abs_squared(const std::vector<cplx>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::norm(v[i]);
    return out;
}

double sum_abs_squared(const std::vector<cplx>& v) {
    PairwiseAccumulator acc;
    for (const auto& z : v) acc.add(std::norm(z));
    return acc.result();
}

void check_norm(double n2, double tol, const char* what) {
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > tol) {
        std::ostringstream os;
        os.precision(12);
        os << what << " norm^2 = " << n2 << ", expected 1 within " << tol;
        fail(ErrorCode::NotNormalized, os.str());
    }
}

void require_covers(const GridSpec& grid, double lo, double hi, const char* what) {
    if (!grid.covers(lo, hi)) {
        std::ostringstream os;
        os.precision(12);
        os << what << " needs [" << lo << ", " << hi << "] but the grid spans [" << grid.x_min
           << ", " << grid.x_last() << "]";
        fail(ErrorCode::GridTooNarrow, os.str());
    }
}

// Left-limit sampling of piecewise-constant densities: x belongs to (lo, hi].
std::vector<double> sample_pieces(const GridSpec& grid, const std::vector<ConstantPiece>& pieces) {
    std::vector<double> values(grid.n, 0.0);
    const double eps = 1e-9 * grid.dx;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        for (const auto& p : pieces) {
            if (x > p.lo + eps && x <= p.hi + eps) values[i] += p.value;
        }
    }
    return values;
}

DensityGrid piecewise_density(const GridSpec& grid, std::vector<ConstantPiece> pieces) {
    std::vector<double> breaks;
    for (const auto& p : pieces) {
        breaks.push_back(p.lo);
        breaks.push_back(p.hi);
    }
    auto values = sample_pieces(grid, pieces);
    return DensityGrid(grid, std::move(values), std::move(breaks), std::move(pieces));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

cplx complex_normal(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t smooth_modes(double smoothness) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(smoothness)));
}

}  // namespace

double GridWavefunction::norm_squared() const {
    return SampledFunction(grid, abs_squared(values), breakpoints)
        .integrate([](double, double r) { return r; });
}

void GridWavefunction::validate() const {
    grid.validate();
    if (values.size() != grid.n) fail(ErrorCode::InvalidState, "value count does not match grid");
    for (const auto& z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            fail(ErrorCode::InvalidState, "non-finite amplitude");
        }
    }
    check_norm(norm_squared(), kNormTolerance, "grid wavefunction");
}

double FiniteState::norm_squared() const { return sum_abs_squared(amplitudes); }

void FiniteState::validate() const {
    if (amplitudes.empty()) fail(ErrorCode::InvalidState, "finite state needs dim >= 1");
    check_norm(norm_squared(), kNormTolerance, "finite state");
}

cplx CircleState::coefficient(int m) const {
    if (m < m_min || m > m_max()) return {0.0, 0.0};
    return coefficients[static_cast<std::size_t>(m - m_min)];
}

double CircleState::norm_squared() const { return sum_abs_squared(coefficients); }

void CircleState::validate() const {
    if (coefficients.empty()) fail(ErrorCode::InvalidState, "circle state needs m_min <= m_max");
    check_norm(norm_squared(), kNormTolerance, "circle state");
}

void MixtureState::validate() const {
    if (components.empty() || weights.size() != components.size()) {
        fail(ErrorCode::InvalidState, "mixture needs one positive weight per component");
    }
    PairwiseAccumulator acc;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) fail(ErrorCode::InvalidState, "mixture weight <= 0");
        acc.add(w);
    }
    if (std::abs(acc.result() - 1.0) > kWeightTolerance) {
        fail(ErrorCode::NotNormalized, "mixture weights do not sum to 1");
    }
    for (const auto& c : components) {
        c.validate();
        if (!c.grid.same_as(components.front().grid)) {
            fail(ErrorCode::GridMismatch, "mixture components must share one grid");
        }
    }
}

std::string state_kind_name(const AnyState& state) {
    switch (state.index()) {
        case 0: return "grid";
        case 1: return "finite";
        case 2: return "circle";
        default: return "mixture";
    }
}

GridWavefunction normalize(const GridWavefunction& psi) {
    const double n2 = psi.norm_squared();
    if (!(n2 >= kZeroNorm)) fail(ErrorCode::ZeroNorm, "cannot normalize a zero-norm state");
    GridWavefunction out = psi;
    const double s = 1.0 / std::sqrt(n2);
    for (auto& z : out.values) z *= s;
    return out;
}

FiniteState normalize(const FiniteState& psi) {
    const double n2 = psi.norm_squared();
    if (!(n2 >= kZeroNorm)) fail(ErrorCode::ZeroNorm, "cannot normalize a zero-norm state");
    FiniteState out = psi;
    const double s = 1.0 / std::sqrt(n2);
    for (auto& z : out.amplitudes) z *= s;
    return out;
}

CircleState normalize(const CircleState& psi) {
    const double n2 = psi.norm_squared();
    if (!(n2 >= kZeroNorm)) fail(ErrorCode::ZeroNorm, "cannot normalize a zero-norm state");
    CircleState out = psi;
    const double s = 1.0 / std::sqrt(n2);
    for (auto& z : out.coefficients) z *= s;
    return out;
}

DensityGrid position_density(const GridWavefunction& psi) {
    return DensityGrid(psi.grid, abs_squared(psi.values), psi.breakpoints);
}

GridWavefunction box_state(double a, const GridSpec& grid) {
    if (!(a > 0.0)) fail(ErrorCode::InvalidState, "box half-width must be positive");
    grid.validate();
    require_covers(grid, -a, a, "box state");
    GridWavefunction psi{grid, std::vector<cplx>(grid.n, 0.0), {-a, a}};
    const double c = 1.0 / std::sqrt(2.0 * a);
    const double eps = 1e-9 * grid.dx;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        if (x > -a + eps && x <= a + eps) psi.values[i] = c;
    }
    psi = normalize(psi);
    psi.validate();
    return psi;
}

GridSpec box_default_grid(double a) {
    constexpr std::size_t n = std::size_t{1} << 20;
    return GridSpec::make(-32.0 * a, 64.0 * a / static_cast<double>(n), n);
}

GridWavefunction gaussian_state(double sigma_x, double x0, double k0, const GridSpec& grid) {
    if (!(sigma_x > 0.0)) fail(ErrorCode::InvalidState, "sigma must be positive");
    grid.validate();
    require_covers(grid, x0 - 6.0 * sigma_x, x0 + 6.0 * sigma_x, "gaussian state");
    GridWavefunction psi{grid, std::vector<cplx>(grid.n), {}};
    const double amp = std::pow(2.0 * kPi * sigma_x * sigma_x, -0.25);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        const double u = (x - x0) / sigma_x;
        psi.values[i] = amp * std::exp(-0.25 * u * u) * std::polar(1.0, k0 * x);
    }
    psi = normalize(psi);
    psi.validate();
    return psi;
}

DensityGrid example1_density(double L, long N, const GridSpec& grid) {
    if (!(L > 0.0) || N < 2) fail(ErrorCode::InvalidState, "example I needs L > 0 and N >= 2");
    const double n = static_cast<double>(N);
    const double a_lo = L * (n + 1.0 / n);
    const double a_hi = L * (n + 1.0);
    require_covers(grid, 0.0, a_hi, "example I density");
    return piecewise_density(grid, {{0.0, L / n, 1.0 / L}, {a_lo, a_hi, 1.0 / L}});
}

GridSpec example1_default_grid(double L, long N) {
    const double dx = L / 4.0;
    const double span = L * (static_cast<double>(N) + 1.0) + 2.0 * L;
    std::size_t n = 2;
    while (static_cast<double>(n) * dx < span) n *= 2;
    return GridSpec::make(-L, dx, n);
}

DensityGrid example2_density(Example2Case which, double L, const GridSpec& grid) {
    if (!(L > 0.0)) fail(ErrorCode::InvalidState, "L must be positive");
    require_covers(grid, 0.0, L, "example II density");
    if (which == Example2Case::A) return piecewise_density(grid, {{0.0, L, 1.0 / L}});
    return piecewise_density(grid, {{0.0, 0.25 * L, 2.0 / L}, {0.75 * L, L, 2.0 / L}});
}

GridSpec example2_default_grid(double L) { return GridSpec::make(-L, L / 256.0, 1024); }

FiniteState basis_state(std::size_t dim, std::size_t index) {
    if (dim == 0 || index >= dim) fail(ErrorCode::InvalidState, "basis index out of range");
    FiniteState s{std::vector<cplx>(dim, 0.0)};
    s.amplitudes[index] = 1.0;
    return s;
}

FiniteState uniform_state(std::size_t dim) {
    if (dim == 0) fail(ErrorCode::InvalidState, "finite state needs dim >= 1");
    return FiniteState{std::vector<cplx>(dim, 1.0 / std::sqrt(static_cast<double>(dim)))};
}

CircleState angular_eigenstate(int m) { return CircleState{m, {cplx(1.0, 0.0)}}; }

std::vector<double> hermite_functions(std::size_t count, double x) {
    std::vector<double> phi(count);
    if (count == 0) return phi;
    phi[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (count > 1) phi[1] = std::sqrt(2.0) * x * phi[0];
    for (std::size_t n = 1; n + 1 < count; ++n) {
        const double nn = static_cast<double>(n);
        phi[n + 1] = std::sqrt(2.0 / (nn + 1.0)) * x * phi[n] - std::sqrt(nn / (nn + 1.0)) * phi[n - 1];
    }
    return phi;
}

std::string ensemble_kind_name(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::finite_haar: return "finite-haar";
        case EnsembleKind::grid_smooth: return "grid-smooth";
        case EnsembleKind::circle_window: return "circle-window";
        case EnsembleKind::mixture: return "mixture";
    }
    return "?";
}

EnsembleKind parse_ensemble_kind(const std::string& name) {
    for (auto k : {EnsembleKind::finite_haar, EnsembleKind::grid_smooth,
                   EnsembleKind::circle_window, EnsembleKind::mixture}) {
        if (ensemble_kind_name(k) == name) return k;
    }
    fail(ErrorCode::InvalidSpec, "unknown ensemble kind '" + name + "'");
}

double smooth_momentum_band(std::size_t modes) {
    return (std::sqrt(2.0 * static_cast<double>(modes) + 1.0) + 5.0) / 0.7 + 1.0;
}

void RandomEnsembleSpec::validate() const {
    switch (kind) {
        case EnsembleKind::finite_haar:
            if (dim < 1) fail(ErrorCode::InvalidSpec, "finite-haar needs dim >= 1");
            break;
        case EnsembleKind::grid_smooth: {
            if (!(smoothness >= 0.0) || !std::isfinite(smoothness)) {
                fail(ErrorCode::InvalidSpec, "smoothness must be finite and >= 0");
            }
            if (grid_points < 2 || !is_power_of_two(grid_points)) {
                fail(ErrorCode::InvalidSpec, "grid points must be a power of two >= 2");
            }
            // Both the position and momentum bands must fit the balanced grid.
            const double half = 0.5 * balanced_grid(grid_points).extent();
            const double band = smooth_momentum_band(smooth_modes(smoothness));
            if (band + 1.0 > half) {
                fail(ErrorCode::InvalidSpec, "grid too small for the requested smoothness");
            }
            break;
        }
        case EnsembleKind::circle_window:
            if (m_window < 0) fail(ErrorCode::InvalidSpec, "m window must be >= 0");
            break;
        case EnsembleKind::mixture:
            if (components < 1) fail(ErrorCode::InvalidSpec, "mixture needs >= 1 component");
            if (grid_points < 2 || !is_power_of_two(grid_points)) {
                fail(ErrorCode::InvalidSpec, "grid points must be a power of two >= 2");
            }
            // Widest component: sigma 2 at |x0| = 3 (x) and sigma_k 1 at |k0| = 2 (k).
            if (0.5 * balanced_grid(grid_points).extent() < 3.0 + 12.0 + 1.0) {
                fail(ErrorCode::InvalidSpec, "grid too small for mixture components");
            }
            break;
    }
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t a = splitmix64(seed);
    const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

SmoothDraw draw_smooth_parameters(const RandomEnsembleSpec& spec, std::uint64_t index) {
    auto rng = trial_rng(spec.seed, index);
    SmoothDraw d;
    d.scale = uniform(rng, 0.7, 1.4);
    d.x0 = uniform(rng, -1.0, 1.0);
    d.k0 = uniform(rng, -1.0, 1.0);
    d.coefficients.resize(smooth_modes(spec.smoothness));
    for (auto& c : d.coefficients) c = complex_normal(rng);
    return d;
}

AnyState random_state(const RandomEnsembleSpec& spec, std::uint64_t index) {
    spec.validate();
    switch (spec.kind) {
        case EnsembleKind::finite_haar: {
            auto rng = trial_rng(spec.seed, index);
            FiniteState s{std::vector<cplx>(spec.dim)};
            for (auto& z : s.amplitudes) z = complex_normal(rng);
            return normalize(s);
        }
        case EnsembleKind::grid_smooth: {
            const SmoothDraw d = draw_smooth_parameters(spec, index);
            const GridSpec grid = balanced_grid(spec.grid_points);
            GridWavefunction psi{grid, std::vector<cplx>(grid.n), {}};
            const double amp = 1.0 / std::sqrt(d.scale);
            for (std::size_t i = 0; i < grid.n; ++i) {
                const double x = grid.x(i);
                const auto phi = hermite_functions(d.coefficients.size(), (x - d.x0) / d.scale);
                cplx acc = 0.0;
                for (std::size_t m = 0; m < phi.size(); ++m) acc += d.coefficients[m] * phi[m];
                psi.values[i] = amp * acc * std::polar(1.0, d.k0 * x);
            }
            return normalize(psi);
        }
        case EnsembleKind::circle_window: {
            auto rng = trial_rng(spec.seed, index);
            CircleState s{-spec.m_window, std::vector<cplx>(2 * spec.m_window + 1)};
            for (auto& z : s.coefficients) z = complex_normal(rng);
            return normalize(s);
        }
        case EnsembleKind::mixture: {
            auto rng = trial_rng(spec.seed, index);
            const GridSpec grid = balanced_grid(spec.grid_points);
            MixtureState mix;
            PairwiseAccumulator total;
            for (std::size_t c = 0; c < spec.components; ++c) {
                const double sigma = uniform(rng, 0.5, 2.0);
                const double x0 = uniform(rng, -3.0, 3.0);
                const double k0 = uniform(rng, -2.0, 2.0);
                const double w = uniform(rng, 0.1, 1.0);
                mix.components.push_back(gaussian_state(sigma, x0, k0, grid));
                mix.weights.push_back(w);
                total.add(w);
            }
            const double t = total.result();
            for (auto& w : mix.weights) w /= t;
            mix.validate();
            return mix;
        }
    }
    fail(ErrorCode::InvalidSpec, "unknown ensemble kind");
}

std::pair<DensityGrid, DensityGrid> mixture_density(const MixtureState& mix) {
    mix.validate();
    const GridSpec& grid = mix.grid();
    std::vector<double> rho(grid.n, 0.0);
    std::vector<double> breaks;
    std::vector<double> rho_k;
    GridSpec kgrid;
    for (std::size_t c = 0; c < mix.components.size(); ++c) {
        const auto& psi = mix.components[c];
        const double w = mix.weights[c];
        for (std::size_t i = 0; i < grid.n; ++i) rho[i] += w * std::norm(psi.values[i]);
        breaks.insert(breaks.end(), psi.breakpoints.begin(), psi.breakpoints.end());
        const auto phi = fourier_transform(psi);
        if (rho_k.empty()) {
            rho_k.assign(grid.n, 0.0);
            kgrid = phi.grid;
        }
        for (std::size_t i = 0; i < grid.n; ++i) rho_k[i] += w * std::norm(phi.values[i]);
    }
    return {DensityGrid(grid, std::move(rho), std::move(breaks)),
            DensityGrid(kgrid, std::move(rho_k))};
}

}  // namespace eurkit
