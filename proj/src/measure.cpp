#include "eurkit/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "eurkit/errors.hpp"

namespace eurkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxBins = 5e7;

double edge_shift(BinAlignment a) { return a == BinAlignment::centered ? 0.5 : 0.0; }

BinnedDistribution bin_density(const DensityGrid& rho, double delta, BinAlignment align,
                               const char* axis) {
    const GridSpec& grid = rho.grid();
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        fail(ErrorCode::InvalidState, std::string(axis) + " bin width must be positive");
    }
    if (delta < grid.dx * (1.0 - 1e-12)) {
        std::ostringstream os;
        os.precision(12);
        os << axis << " bin width " << delta << " is below the grid spacing " << grid.dx;
        fail(ErrorCode::BinTooFine, os.str());
    }
    double lo = grid.x_min;
    double hi = grid.x_last();
    if (rho.is_piecewise_constant()) {
        lo = rho.samples().pieces().front().lo;
        hi = lo;
        for (const auto& p : rho.samples().pieces()) {
            lo = std::min(lo, p.lo);
            hi = std::max(hi, p.hi);
        }
    }
    const double s = edge_shift(align);
    const double first = std::floor(lo / delta + s);
    const double last = std::floor(hi / delta + s);
    if (last - first + 1.0 > kMaxBins) {
        fail(ErrorCode::TailNotConverged, "support needs more bins than the enumeration budget");
    }
    const auto i_first = static_cast<long>(first);
    const auto i_last = static_cast<long>(last);

    auto identity = [](double, double r) { return r; };
    std::vector<BinEntry> all;
    all.reserve(static_cast<std::size_t>(i_last - i_first + 1));
    for (long i = i_first; i <= i_last; ++i) {
        const double a = (static_cast<double>(i) - s) * delta;
        const double b = (static_cast<double>(i) + 1.0 - s) * delta;
        all.push_back({i, std::max(0.0, rho.integrate(identity, a, b))});
    }

    // Fold negligible end bins into the tail.
    const double budget = 0.5 * BinnedDistribution::kTailThreshold;
    std::size_t front = 0, back = all.size();
    double front_mass = 0.0, back_mass = 0.0;
    while (front < back && front_mass + all[front].probability <= budget) {
        front_mass += all[front].probability;
        ++front;
    }
    while (back > front && back_mass + all[back - 1].probability <= budget) {
        back_mass += all[back - 1].probability;
        --back;
    }

    BinnedDistribution out;
    out.bin_width = delta;
    out.alignment = align;
    out.entries.assign(all.begin() + static_cast<long>(front), all.begin() + static_cast<long>(back));
    out.tail_mass = front_mass + back_mass;
    out.validate();
    return out;
}

double variance_about(const DensityGrid& rho, double mu, double a, double b) {
    return rho.integrate([mu](double x, double r) { return (x - mu) * (x - mu) * r; }, a, b);
}

cplx ylm(int l, int m, double theta, double phi) {
    const int am = std::abs(m);
    if (am > l) return 0.0;
    const cplx y = std::sph_legendre(static_cast<unsigned>(l), static_cast<unsigned>(am), theta) *
                   std::polar(1.0, am * phi);
    if (m >= 0) return y;
    return ((am % 2) ? -1.0 : 1.0) * std::conj(y);
}

}  // namespace

std::string bin_alignment_name(BinAlignment a) {
    return a == BinAlignment::centered ? "centered" : "edge";
}

BinAlignment parse_bin_alignment(const std::string& name) {
    if (name == "centered") return BinAlignment::centered;
    if (name == "edge") return BinAlignment::edge;
    fail(ErrorCode::InvalidSpec, "unknown bin alignment '" + name + "'");
}

std::vector<double> BinnedDistribution::probabilities() const {
    std::vector<double> p(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) p[i] = entries[i].probability;
    return p;
}

double BinnedDistribution::total() const {
    PairwiseAccumulator acc;
    for (const auto& e : entries) acc.add(e.probability);
    return acc.result();
}

double BinnedDistribution::center(long index) const {
    const double s = alignment == BinAlignment::centered ? 0.0 : 0.5;
    return (static_cast<double>(index) + s) * bin_width;
}

void BinnedDistribution::validate() const {
    for (const auto& e : entries) {
        if (!(e.probability >= 0.0) || !std::isfinite(e.probability)) {
            fail(ErrorCode::InvalidState, "negative or non-finite bin probability");
        }
    }
    if (!(tail_mass >= 0.0)) fail(ErrorCode::InvalidState, "negative tail mass");
    const double sum = total() + tail_mass;
    if (std::abs(sum - 1.0) > kSumTolerance) {
        std::ostringstream os;
        os.precision(15);
        os << "bin probabilities plus tail sum to " << sum;
        fail(ErrorCode::NotNormalized, os.str());
    }
}

BinnedDistribution make_exact_distribution(std::vector<double> probabilities) {
    BinnedDistribution out;
    out.exact_count = true;
    out.entries.reserve(probabilities.size());
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        out.entries.push_back({static_cast<long>(i), probabilities[i]});
    }
    out.validate();
    return out;
}

BinnedDistribution bin_position(const DensityGrid& rho, double delta_x, BinAlignment align) {
    return bin_density(rho, delta_x, align, "position");
}

BinnedDistribution bin_momentum(const DensityGrid& rho_k, double delta_k, BinAlignment align) {
    return bin_density(rho_k, delta_k, align, "momentum");
}

double box_momentum_bin(long j) {
    if (j < 0) j = -j;
    if (j == 0) return 2.0 * sine_integral(2.0 * kPi) / kPi;
    const double a = (4.0 * static_cast<double>(j) - 2.0) * kPi;
    const double b = (4.0 * static_cast<double>(j) + 2.0) * kPi;
    // Si(b) - Si(a) = (pi/2 - Si(a)) - (pi/2 - Si(b)) avoids cancellation.
    return (sine_integral_complement(a) - sine_integral_complement(b)) / kPi;
}

BinnedDistribution box_momentum_distribution(double a, long j_max) {
    if (!(a > 0.0)) fail(ErrorCode::InvalidState, "box half-width must be positive");
    if (j_max < 0) fail(ErrorCode::InvalidSpec, "j_max must be >= 0");
    std::vector<double> half(static_cast<std::size_t>(j_max) + 1);
    for (long j = 0; j <= j_max; ++j) half[static_cast<std::size_t>(j)] = box_momentum_bin(j);
    BinnedDistribution out;
    out.bin_width = kTwoPi / a;
    out.alignment = BinAlignment::centered;
    out.entries.reserve(2 * half.size() - 1);
    for (long j = -j_max; j <= j_max; ++j) {
        out.entries.push_back({j, half[static_cast<std::size_t>(std::abs(j))]});
    }
    out.tail_mass =
        2.0 * sine_integral_complement((4.0 * static_cast<double>(j_max) + 2.0) * kPi) / kPi;
    out.validate();
    return out;
}

BinnedDistribution bin_angle(const CircleState& psi, int n_bins) {
    if (n_bins < 1) fail(ErrorCode::InvalidSpec, "need at least one angle bin");
    psi.validate();
    // |psi|^2 = (2 pi)^-1 sum_d a_d e^{i d phi}, a_d = sum_m c_{m+d} conj(c_m).
    const int width = psi.m_max() - psi.m_min;
    std::vector<cplx> a(static_cast<std::size_t>(2 * width + 1), 0.0);
    for (int d = -width; d <= width; ++d) {
        cplx acc = 0.0;
        for (int m = psi.m_min; m <= psi.m_max(); ++m) {
            acc += psi.coefficient(m + d) * std::conj(psi.coefficient(m));
        }
        a[static_cast<std::size_t>(d + width)] = acc;
    }
    const double dphi = kTwoPi / n_bins;
    std::vector<double> q(static_cast<std::size_t>(n_bins));
    for (int n = 0; n < n_bins; ++n) {
        const double lo = n * dphi;
        const double hi = (n + 1) * dphi;
        PairwiseAccumulator acc;
        acc.add(a[static_cast<std::size_t>(width)].real() * dphi);
        for (int d = 1; d <= width; ++d) {
            // d and -d terms combine to 2 Re[a_d (e^{i d hi} - e^{i d lo}) / (i d)].
            const cplx diff = std::polar(1.0, d * hi) - std::polar(1.0, d * lo);
            acc.add(2.0 * (a[static_cast<std::size_t>(d + width)] * diff / cplx(0.0, d)).real());
        }
        q[static_cast<std::size_t>(n)] = std::max(0.0, acc.result() / kTwoPi);
    }
    auto out = make_exact_distribution(std::move(q));
    out.exact_count = false;
    out.bin_width = dphi;
    out.alignment = BinAlignment::edge;
    return out;
}

BinnedDistribution finite_probabilities(const FiniteState& state, const Matrix& basis) {
    if (static_cast<std::size_t>(basis.rows()) != state.dim() || basis.rows() != basis.cols()) {
        fail(ErrorCode::DimensionMismatch, "basis and state dimensions differ");
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(state.dim()));
    for (std::size_t i = 0; i < state.dim(); ++i) v(static_cast<Eigen::Index>(i)) = state.amplitudes[i];
    const Eigen::VectorXcd amps = basis.adjoint() * v;
    std::vector<double> p(state.dim());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amps(static_cast<Eigen::Index>(i)));
    return make_exact_distribution(std::move(p));
}

double mean(const DensityGrid& rho) {
    return rho.integrate([](double x, double r) { return x * r; });
}

double std_dev(const DensityGrid& rho) {
    const double mu = mean(rho);
    return std::sqrt(variance_about(rho, mu, -std::numeric_limits<double>::infinity(),
                                    std::numeric_limits<double>::infinity()));
}

double std_dev(const BinnedDistribution& p) {
    if (p.exact_count || !(p.bin_width > 0.0)) {
        fail(ErrorCode::InvalidState, "standard deviation needs bins with positions");
    }
    PairwiseAccumulator m1, m2;
    for (const auto& e : p.entries) m1.add(e.probability * p.center(e.index));
    const double total = p.total();
    const double mu = m1.result() / total;
    for (const auto& e : p.entries) {
        const double d = p.center(e.index) - mu;
        m2.add(e.probability * d * d);
    }
    return std::sqrt(m2.result() / total);
}

StdDevDiagnostic std_dev_diagnostic(const DensityGrid& rho) {
    StdDevDiagnostic out;
    out.sigma = std_dev(rho);
    const GridSpec& g = rho.grid();
    const double c = g.x_min + 0.5 * g.extent();
    const double a = c - 0.25 * g.extent();
    const double b = c + 0.25 * g.extent();
    const double mass = rho.integrate([](double, double r) { return r; }, a, b);
    if (mass > 0.0) {
        const double mu = rho.integrate([](double x, double r) { return x * r; }, a, b) / mass;
        out.sigma_half_range = std::sqrt(variance_about(rho, mu, a, b) / mass);
    }
    out.relative_change = out.sigma > 0.0
                              ? std::abs(out.sigma - out.sigma_half_range) / out.sigma
                              : 0.0;
    out.converged = out.relative_change <= 0.01;
    return out;
}

double sphere_bin(int l, double d_theta) {
    if (l < 0) fail(ErrorCode::InvalidSpec, "l must be >= 0");
    if (!(d_theta > 0.0) || d_theta > kPi * (1.0 + 1e-15)) {
        fail(ErrorCode::InvalidSpec, "d_theta must lie in (0, pi]");
    }
    const double power = 2.0 * l + 1.0;
    auto f = [power](double t) { return std::pow(std::sin(t), power); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double half = 0.5 * std::min(d_theta, kPi);
    // Symmetric about pi/2: integrate one side.
    const double band = GK::integrate(f, 0.5 * kPi - half, 0.5 * kPi, 15, 1e-14);
    const double whole = GK::integrate(f, 0.0, 0.5 * kPi, 15, 1e-14);
    return band / whole;
}

double SphereBinnedDistribution::total() const {
    PairwiseAccumulator acc;
    for (const auto& e : entries) acc.add(e.probability);
    return acc.result();
}

SphereBinnedDistribution sphere_bins(const std::vector<SphereTerm>& terms, int n_theta, int n_phi) {
    if (terms.empty() || n_theta < 1 || n_phi < 1) {
        fail(ErrorCode::InvalidSpec, "sphere binning needs terms and positive bin counts");
    }
    double norm2 = 0.0;
    for (const auto& t : terms) {
        if (t.l < 0 || std::abs(t.m) > t.l) fail(ErrorCode::InvalidState, "need |m| <= l");
        norm2 += std::norm(t.c);
    }
    if (!(norm2 > 1e-300)) fail(ErrorCode::ZeroNorm, "sphere state has zero norm");

    auto density = [&](double theta, double phi) {
        cplx v = 0.0;
        for (const auto& t : terms) v += t.c * ylm(t.l, t.m, theta, phi);
        return std::norm(v) / norm2;
    };
    using G = boost::math::quadrature::gauss<double, 30>;
    SphereBinnedDistribution out;
    out.d_theta = kPi / n_theta;
    out.d_phi = kTwoPi / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        for (int j = 0; j < n_phi; ++j) {
            const double p0 = j * out.d_phi;
            const double p1 = (j + 1) * out.d_phi;
            const double q = G::integrate(
                [&](double theta) {
                    return std::sin(theta) *
                           G::integrate([&](double phi) { return density(theta, phi); }, p0, p1);
                },
                i * out.d_theta, (i + 1) * out.d_theta);
            out.entries.push_back({i, j, q});
        }
    }
    return out;
}

}  // namespace eurkit
