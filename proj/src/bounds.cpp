#include "eurkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eurkit/errors.hpp"

namespace eurkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

double cell_term(double delta_x, double delta_k) {
    if (!(delta_x > 0.0) || !(delta_k > 0.0)) {
        fail(ErrorCode::InvalidSpec, "bin widths must be positive");
    }
    return std::log(delta_x * delta_k / kTwoPi);
}

void check_overlap(double c_b, std::size_t dim) {
    const double lo = dim > 0 ? 1.0 / std::sqrt(static_cast<double>(dim)) : 0.0;
    if (!(c_b > 0.0) || c_b > 1.0 + 1e-12 || c_b < lo - 1e-12) {
        std::ostringstream os;
        os.precision(12);
        os << "C_B = " << c_b << " outside (" << lo << ", 1]";
        fail(ErrorCode::InvalidOverlap, os.str());
    }
}

}  // namespace

bool is_conjugate_pair(double alpha, double beta, double tol) {
    return alpha > 0.5 && beta > 0.5 && std::abs(1.0 / alpha + 1.0 / beta - 2.0) <= tol;
}

double conjugate_exponent(double alpha) {
    if (!(alpha > 0.5) || !std::isfinite(alpha)) {
        std::ostringstream os;
        os << "alpha must exceed 1/2 to have a conjugate, got " << alpha;
        fail(ErrorCode::NotConjugate, os.str());
    }
    return alpha / (2.0 * alpha - 1.0);
}

void require_conjugate(double alpha, double beta) {
    if (!is_conjugate_pair(alpha, beta)) {
        std::ostringstream os;
        os.precision(15);
        os << "alpha = " << alpha << ", beta = " << beta << " violate 1/alpha + 1/beta = 2";
        fail(ErrorCode::NotConjugate, os.str());
    }
}

double renyi_log_term(double alpha) {
    if (!(alpha > 0.0)) fail(ErrorCode::InvalidAlpha, "alpha must be positive");
    const double u = alpha - 1.0;
    if (std::abs(u) < 1e-4) return -(1.0 - u / 2.0 + u * u / 3.0 - u * u * u / 4.0);
    return std::log1p(u) / -u;
}

double bb_constant(double alpha, double beta) {
    require_conjugate(alpha, beta);
    return std::pow(alpha / kPi, -1.0 / (2.0 * alpha)) * std::pow(beta / kPi, 1.0 / (2.0 * beta));
}

double bound_shannon_binned(double delta_x, double delta_k) {
    return 1.0 - kLn2 - cell_term(delta_x, delta_k);
}

double bound_renyi_binned(double alpha, double beta, double delta_x, double delta_k) {
    require_conjugate(alpha, beta);
    return -0.5 * (renyi_log_term(alpha) + renyi_log_term(beta)) - kLn2 -
           cell_term(delta_x, delta_k);
}

double bound_symmetrized_binned(double s, double delta_x, double delta_k) {
    if (!(s >= 0.0) || !(s < 1.0)) {
        std::ostringstream os;
        os << "s must lie in [0, 1), got " << s;
        fail(ErrorCode::InvalidS, os.str());
    }
    const double ratio = s == 0.0 ? 1.0 : std::atanh(s) / s;
    return 0.5 * std::log1p(-s * s) + ratio - kLn2 - cell_term(delta_x, delta_k);
}

double bound_continuous(double alpha, double beta) {
    require_conjugate(alpha, beta);
    return std::log(kPi) - 0.5 * (renyi_log_term(alpha) + renyi_log_term(beta));
}

double bound_continuous_rescaled(double norm) {
    if (!(norm > 0.0)) fail(ErrorCode::ZeroNorm, "norm must be positive");
    return norm * norm * (1.0 + std::log(kPi) - 4.0 * std::log(norm));
}

double bound_deutsch(double c_b, std::size_t dim) {
    check_overlap(c_b, dim);
    return -2.0 * std::log((1.0 + std::min(c_b, 1.0)) / 2.0);
}

double bound_maassen_uffink(double c_b, std::size_t dim) {
    check_overlap(c_b, dim);
    return -2.0 * std::log(std::min(c_b, 1.0));
}

double overlap_C_B(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        fail(ErrorCode::DimensionMismatch, "bases must be square matrices of one dimension");
    }
    return (a.adjoint() * b).cwiseAbs().maxCoeff();
}

double bound_angle(int n_bins) {
    if (n_bins < 1) fail(ErrorCode::InvalidSpec, "need at least one angle bin");
    return std::log(static_cast<double>(n_bins));
}

std::string mub_variant_name(MubVariant v) {
    switch (v) {
        case MubVariant::pairwise: return "pairwise";
        case MubVariant::sanchez: return "sanchez";
        case MubVariant::refined: return "refined";
    }
    return "?";
}

MubVariant parse_mub_variant(const std::string& name) {
    for (auto v : {MubVariant::pairwise, MubVariant::sanchez, MubVariant::refined}) {
        if (mub_variant_name(v) == name) return v;
    }
    fail(ErrorCode::InvalidSpec, "unknown MUB bound variant '" + name + "'");
}

double bound_mub_sum(std::size_t m, std::size_t d, MubVariant variant) {
    if (m < 2 || d < 2) fail(ErrorCode::VariantInapplicable, "MUB sums need M >= 2 and D >= 2");
    const double M = static_cast<double>(m);
    const double D = static_cast<double>(d);
    switch (variant) {
        case MubVariant::pairwise: return 0.5 * M * std::log(D);
        case MubVariant::sanchez:
            if (m != d + 1) {
                std::ostringstream os;
                os << "the sanchez bound needs M = D + 1, got M = " << m << ", D = " << d;
                fail(ErrorCode::VariantInapplicable, os.str());
            }
            return (D + 1.0) * std::log((D + 1.0) / 2.0);
        case MubVariant::refined: return M * std::log(M * D / (M + D - 1.0));
    }
    fail(ErrorCode::InvalidSpec, "unknown MUB variant");
}

MubBound best_mub_bound(std::size_t m, std::size_t d) {
    MubBound best{bound_mub_sum(m, d, MubVariant::pairwise), MubVariant::pairwise};
    const double refined = bound_mub_sum(m, d, MubVariant::refined);
    if (refined > best.value) best = {refined, MubVariant::refined};
    if (m == d + 1) {
        const double s = bound_mub_sum(m, d, MubVariant::sanchez);
        if (s > best.value) best = {s, MubVariant::sanchez};
    }
    return best;
}

LogSobolevResult log_sobolev_rhs(const DensityGrid& rho, double L) {
    if (!(L > 0.0)) fail(ErrorCode::InvalidSpec, "reference length must be > 0");
    if (rho.is_piecewise_constant() || !rho.samples().breakpoints().empty()) {
        fail(ErrorCode::SupportBoundary,
             "density has jump discontinuities; its derivative is undefined");
    }
    const GridSpec& g = rho.grid();
    const auto& r = rho.values();
    const std::size_t n = g.n;
    constexpr double kFloor = 1e-12;
    std::vector<double> integrand(n, 0.0);
    PairwiseAccumulator excluded;
    for (std::size_t i = 0; i < n; ++i) {
        if (r[i] <= kFloor) {
            excluded.add(r[i] * g.dx);
            continue;
        }
        auto at = [&](long j) -> double {
            return (j < 0 || j >= static_cast<long>(n)) ? 0.0 : r[static_cast<std::size_t>(j)];
        };
        const long li = static_cast<long>(i);
        const double d = (-at(li + 2) + 8.0 * at(li + 1) - 8.0 * at(li - 1) + at(li - 2)) /
                         (12.0 * g.dx);
        integrand[i] = d * d / r[i];
    }
    LogSobolevResult out;
    out.fisher = SampledFunction(g, std::move(integrand)).integrate([](double, double v) {
        return v;
    });
    out.excluded_mass = excluded.result();
    out.rhs = 0.5 * (1.0 + std::log(kTwoPi)) - 0.5 * std::log(L * L * out.fisher);
    return out;
}

std::string side_name(Side s) { return s == Side::position ? "position" : "momentum"; }

Side parse_side(const std::string& name) {
    if (name == "position" || name == "x") return Side::position;
    if (name == "momentum" || name == "k") return Side::momentum;
    fail(ErrorCode::InvalidSpec, "unknown side '" + name + "'");
}

double inverse_log_sobolev_rhs(double sigma, double L, Side side) {
    if (!(sigma > 0.0) || !(L > 0.0)) fail(ErrorCode::InvalidSpec, "sigma and L must be > 0");
    const double base = 0.5 * (1.0 + std::log(kTwoPi));
    return side == Side::position ? base + std::log(L * sigma) : base + std::log(sigma / L);
}

double refined_heisenberg(double s_sum) { return 0.5 * std::exp(s_sum - 1.0 - std::log(kPi)); }

FiniteState deutsch_minimizer(const FiniteState& a, const FiniteState& b) {
    if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "vectors of different dimension");
    a.validate();
    b.validate();
    cplx ov = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) ov += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    const double m = std::abs(ov);
    if (m >= 1.0 - 1e-12) {
        fail(ErrorCode::DegenerateParallel, "vectors are parallel; the minimizer is undefined");
    }
    const cplx phase = m > 0.0 ? std::conj(ov) / m : cplx(1.0, 0.0);
    const double scale = 1.0 / std::sqrt(2.0 * (1.0 + m));
    FiniteState out{std::vector<cplx>(a.dim())};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out.amplitudes[i] = scale * (a.amplitudes[i] + phase * b.amplitudes[i]);
    }
    return out;
}

double deutsch_q(double q, double p) {
    if (!(q > 0.0) || !(p > 0.0)) return std::numeric_limits<double>::infinity();
    return -std::log(q) - std::log(p);
}

}  // namespace eurkit
