#include "eurkit/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fftw3.h>

#include "eurkit/errors.hpp"

namespace eurkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Plans are created once per (size, sign) and executed on caller-owned
// arrays through the new-array interface, which is thread safe.
fftw_plan plan_for(std::size_t n, int sign) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<cplx> scratch_in(n), scratch_out(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n),
                                   reinterpret_cast<fftw_complex*>(scratch_in.data()),
                                   reinterpret_cast<fftw_complex*>(scratch_out.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, p);
    return p;
}

// out_k = sum_j in_j exp(sign * 2 pi i j k / n).
std::vector<cplx> fft(std::vector<cplx> in, int sign) {
    std::vector<cplx> out(in.size());
    fftw_execute_dft(plan_for(in.size(), sign), reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

// exp(i * 2 pi * q * j / n) with the integer part of q reduced exactly mod n.
cplx grid_phase(double q, std::size_t j, std::size_t n) {
    const double qi = std::round(q);
    const double qf = q - qi;
    const auto nn = static_cast<long long>(n);
    long long r = (static_cast<long long>(qi) % nn) * static_cast<long long>(j % n) % nn;
    if (r < 0) r += nn;
    const double turns = static_cast<double>(r) / static_cast<double>(n) +
                         qf * static_cast<double>(j) / static_cast<double>(n);
    return std::polar(1.0, kTwoPi * turns);
}

double si_series(double x) {
    const double x2 = x * x;
    double term = x;  // (-1)^n x^(2n+1) / (2n+1)!
    double sum = x;
    for (int n = 1; n < 60; ++n) {
        term *= -x2 / ((2.0 * n) * (2.0 * n + 1.0));
        const double add = term / (2.0 * n + 1.0);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// f(x) cos x + g(x) sin x = pi/2 - Si(x), asymptotic series for large x.
double si_tail_asymptotic(double x) {
    const double inv2 = 1.0 / (x * x);
    double f = 0.0, g = 0.0;
    double tf = 1.0 / x;     // (2n)! / x^(2n+1)
    double tg = inv2;        // (2n+1)! / x^(2n+2)
    double last = std::abs(tf) + std::abs(tg);
    for (int n = 0; n < 40; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        f += sgn * tf;
        g += sgn * tg;
        const double nf = tf * (2.0 * n + 1.0) * (2.0 * n + 2.0) * inv2;
        const double ng = tg * (2.0 * n + 2.0) * (2.0 * n + 3.0) * inv2;
        const double next = std::abs(nf) + std::abs(ng);
        if (next >= last || next < 1e-19 * std::abs(f)) break;
        tf = nf;
        tg = ng;
        last = next;
    }
    return f * std::cos(x) + g * std::sin(x);
}

constexpr double kSiSwitch = 50.0;

double si_quadrature(double x) {
    auto sinc = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
    // Split at multiples of pi so each panel holds one lobe.
    const int panels = static_cast<int>(std::ceil(x / kPi));
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = p * kPi;
        const double hi = std::min(x, (p + 1) * kPi);
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(sinc, lo, hi, 10,
                                                                             1e-15);
    }
    return total;
}

}  // namespace

std::vector<cplx> continuous_dft(std::span<const cplx> values, const GridSpec& in_grid,
                                 const GridSpec& out_grid, int sign) {
    const std::size_t n = in_grid.n;
    if (values.size() != n || out_grid.n != n) {
        fail(ErrorCode::GridMismatch, "transform input/output sizes differ");
    }
    const double prod = in_grid.dx * out_grid.dx * static_cast<double>(n);
    if (std::abs(prod - kTwoPi) > 1e-10 * kTwoPi) {
        fail(ErrorCode::GridMismatch, "grids are not conjugate (dx * dk * n != 2 pi)");
    }
    const int s = sign >= 0 ? 1 : -1;
    // y0 x_j = 2 pi (y0 / dy) j / n ; y_m x0 = y0 x0 + 2 pi m (x0 / dx) / n.
    const double q_in = out_grid.x_min / out_grid.dx;
    const double q_out = in_grid.x_min / in_grid.dx;
    std::vector<cplx> work(n);
    for (std::size_t j = 0; j < n; ++j) {
        cplx ph = grid_phase(q_in, j, n);
        if (s < 0) ph = std::conj(ph);
        work[j] = values[j] * ph;
    }
    auto out = fft(std::move(work), s < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    const double scale = in_grid.dx / std::sqrt(kTwoPi);
    const cplx base = std::polar(scale, s * out_grid.x_min * in_grid.x_min);
    for (std::size_t m = 0; m < n; ++m) {
        cplx ph = grid_phase(q_out, m, n);
        if (s < 0) ph = std::conj(ph);
        out[m] *= base * ph;
    }
    return out;
}

GridWavefunction fourier_transform(const GridWavefunction& psi) {
    const GridSpec k = conjugate_grid(psi.grid);
    return GridWavefunction{k, continuous_dft(psi.values, psi.grid, k, -1), {}};
}

GridWavefunction inverse_fourier_transform(const GridWavefunction& psi_tilde,
                                           const GridSpec& position_grid) {
    if (!conjugate_grid(position_grid).same_as(psi_tilde.grid)) {
        fail(ErrorCode::GridMismatch, "momentum grid is not conjugate to the position grid");
    }
    return GridWavefunction{position_grid,
                            continuous_dft(psi_tilde.values, psi_tilde.grid, position_grid, +1),
                            {}};
}

DensityGrid momentum_density(const GridWavefunction& psi) {
    const auto phi = fourier_transform(psi);
    std::vector<double> rho(phi.values.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(phi.values[i]);
    return DensityGrid(phi.grid, std::move(rho));
}

double box_transform_closed_form(double a, double k) {
    if (!(a > 0.0)) fail(ErrorCode::InvalidState, "box half-width must be positive");
    if (std::abs(a * k) < 1e-8) {
        const double u = a * k;
        return std::sqrt(a / kPi) * (1.0 - u * u / 6.0);
    }
    return std::sqrt(1.0 / (kPi * a)) * std::sin(a * k) / k;
}

CircleState circle_coefficients(std::span<const cplx> samples, int m_min, int m_max) {
    if (m_max < m_min) fail(ErrorCode::InvalidState, "m_min must not exceed m_max");
    const std::size_t s = samples.size();
    const auto width = static_cast<std::size_t>(m_max - m_min);
    if (s == 0 || s < 2 * width || s <= width) {
        std::ostringstream os;
        os << s << " samples cannot resolve m in [" << m_min << ", " << m_max << "]";
        fail(ErrorCode::Undersampled, os.str());
    }
    auto spec = fft(std::vector<cplx>(samples.begin(), samples.end()), FFTW_FORWARD);
    const double scale = std::sqrt(kTwoPi) / static_cast<double>(s);
    CircleState out{m_min, std::vector<cplx>(width + 1)};
    const auto ss = static_cast<long>(s);
    for (int m = m_min; m <= m_max; ++m) {
        long idx = static_cast<long>(m) % ss;
        if (idx < 0) idx += ss;
        out.coefficients[static_cast<std::size_t>(m - m_min)] = scale * spec[static_cast<std::size_t>(idx)];
    }
    return out;
}

std::vector<cplx> synthesize_circle(const CircleState& state, std::size_t count) {
    std::vector<cplx> out(count);
    const double norm = 1.0 / std::sqrt(kTwoPi);
    for (std::size_t s = 0; s < count; ++s) {
        cplx acc = 0.0;
        for (int m = state.m_min; m <= state.m_max(); ++m) {
            acc += state.coefficient(m) * grid_phase(static_cast<double>(m), s, count);
        }
        out[s] = norm * acc;
    }
    return out;
}

double unitarity_residual(const Matrix& u) {
    if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
    const Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

bool is_unitary(const Matrix& u, double tol) { return unitarity_residual(u) <= tol; }

void UnitaryBasisSet::validate() const {
    if (dim == 0 || bases.empty()) fail(ErrorCode::InvalidState, "empty basis set");
    for (const auto& b : bases) {
        if (static_cast<std::size_t>(b.rows()) != dim || static_cast<std::size_t>(b.cols()) != dim) {
            fail(ErrorCode::DimensionMismatch, "basis matrix has the wrong dimension");
        }
        if (!is_unitary(b, 1e-12)) fail(ErrorCode::NotUnitary, "basis matrix is not unitary");
    }
    if (!mutually_unbiased) return;
    const double target = 1.0 / static_cast<double>(dim);
    for (std::size_t m = 0; m < bases.size(); ++m) {
        for (std::size_t n = m + 1; n < bases.size(); ++n) {
            const Matrix g = bases[m].adjoint() * bases[n];
            const double dev = (g.cwiseAbs2().array() - target).abs().maxCoeff();
            if (dev > 1e-10) fail(ErrorCode::InvalidState, "bases flagged unbiased are not");
        }
    }
}

Matrix dft_matrix(std::size_t n) {
    if (n == 0) fail(ErrorCode::InvalidState, "dimension must be >= 1");
    Matrix f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            f(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
                s * grid_phase(static_cast<double>(k), l, n);
        }
    }
    return f;
}

UnitaryBasisSet dft_basis(std::size_t n) {
    const auto dn = static_cast<Eigen::Index>(n);
    UnitaryBasisSet set{n, {Matrix::Identity(dn, dn), dft_matrix(n)}, true};
    return set;
}

bool is_prime(std::size_t n) {
    if (n < 2) return false;
    for (std::size_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

UnitaryBasisSet mub_prime(std::size_t dim) {
    if (!is_prime(dim)) {
        std::ostringstream os;
        os << dim << " is not prime";
        fail(ErrorCode::NotPrime, os.str());
    }
    if (dim > 101) fail(ErrorCode::InvalidSpec, "mub_prime supports D <= 101");
    const auto d = static_cast<Eigen::Index>(dim);
    UnitaryBasisSet set{dim, {Matrix::Identity(d, d)}, true};
    const double s = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t m = 0; m < dim; ++m) {
        Matrix b(d, d);
        for (std::size_t k = 0; k < dim; ++k) {
            for (std::size_t j = 0; j < dim; ++j) {
                cplx ph;
                if (dim == 2) {
                    // (-1)^(jk) i^(m k^2)
                    ph = grid_phase(static_cast<double>(j * k), 1, 2) *
                         grid_phase(static_cast<double>(m * k * k), 1, 4);
                } else {
                    ph = grid_phase(static_cast<double>((j * k + m * k * k) % dim), 1, dim);
                }
                b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = s * ph;
            }
        }
        set.bases.push_back(std::move(b));
    }
    return set;
}

Matrix haar_unitary(std::size_t dim, std::mt19937_64& rng) {
    if (dim == 0) fail(ErrorCode::InvalidState, "dimension must be >= 1");
    const auto d = static_cast<Eigen::Index>(dim);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix z(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(r, c) = cplx(re, im);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR();
    for (Eigen::Index c = 0; c < d; ++c) {
        const cplx rc = r(c, c);
        const double a = std::abs(rc);
        q.col(c) *= (a > 0.0) ? rc / a : cplx(1.0, 0.0);
    }
    return q;
}

double sine_integral(double x) {
    if (x < 0.0) return -sine_integral(-x);
    if (x == 0.0) return 0.0;
    if (x <= 1.0) return si_series(x);
    if (x < kSiSwitch) return si_quadrature(x);
    return kPi / 2.0 - si_tail_asymptotic(x);
}

double sine_integral_complement(double x) {
    if (x >= kSiSwitch) return si_tail_asymptotic(x);
    return kPi / 2.0 - sine_integral(x);
}

}  // namespace eurkit
