// Quadrature over sampled functions with declared breakpoints.
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eurkit/errors.hpp"
#include "eurkit/grid.hpp"

namespace eurkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Three-point Gauss-Legendre, exact for the quintic interpolant.
constexpr double kGaussNodes[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr double kGaussWeights[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

// Lagrange stencil for off-node values (quintic).
constexpr std::size_t kInterpolationPoints = 6;

double simpson(double u, double v, double gu, double gm, double gv) {
    return (v - u) / 6.0 * (gu + 4.0 * gm + gv);
}

}  // namespace

double SampledFunction::interpolate(const Segment& seg, double x) const {
    if (seg.count == 0) return 0.0;
    const long m = static_cast<long>(std::min<std::size_t>(kInterpolationPoints, seg.count));
    const double t = (x - grid_.x_min) / grid_.dx;
    long base = static_cast<long>(std::floor(t)) - (m - 1) / 2;
    const long lo = static_cast<long>(seg.first);
    const long hi = static_cast<long>(seg.first + seg.count) - m;
    base = std::clamp(base, lo, hi);

    double result = 0.0;
    for (long j = 0; j < m; ++j) {
        double w = 1.0;
        const double tj = static_cast<double>(base + j);
        for (long l = 0; l < m; ++l) {
            if (l == j) continue;
            w *= (t - static_cast<double>(base + l)) / (tj - static_cast<double>(base + l));
        }
        result += w * values_[static_cast<std::size_t>(base + j)];
    }
    return result;
}

double SampledFunction::value_at(const Segment& seg, double x) const {
    const double t = (x - grid_.x_min) / grid_.dx;
    const double r = std::round(t);
    if (std::abs(t - r) < 1e-9 && r >= static_cast<double>(seg.first) &&
        r < static_cast<double>(seg.first + seg.count)) {
        return values_[static_cast<std::size_t>(r)];
    }
    return interpolate(seg, x);
}

double SampledFunction::integrate_segment(const Segment& seg, const Integrand& g, double a,
                                          double b) const {
    const double lo = std::max(a, seg.lo);
    const double hi = std::min(b, seg.hi);
    if (!(hi > lo) || seg.count == 0) return 0.0;

    // Exact integral of the piecewise Lagrange interpolant of the integrand
    // samples g(x_i, f_i). One interpolant serves every sub-range, so bins add
    // up to the whole segment, and interior weights are uniform (spectrally
    // accurate for integrands that decay inside the segment).
    const double x0 = grid_.x_min;
    const double dx = grid_.dx;
    const long first = static_cast<long>(seg.first);
    const long last = first + static_cast<long>(seg.count) - 1;
    const long m = static_cast<long>(std::min<std::size_t>(kInterpolationPoints, seg.count));
    auto stencil = [&](double t) {
        return std::clamp(static_cast<long>(std::floor(t)) - (m - 1) / 2, first, last + 1 - m);
    };

    // Cells [x_i, x_{i+1}] touched by (lo, hi), slivers past the end nodes included.
    const long c_lo = std::clamp(static_cast<long>(std::floor((lo - x0) / dx)), first - 1, last);
    const long c_hi = std::clamp(static_cast<long>(std::ceil((hi - x0) / dx)) - 1, first - 1, last);
    const long s_lo = stencil(static_cast<double>(c_lo) + 0.5);
    const long s_hi = stencil(static_cast<double>(c_hi) + 0.5) + m - 1;
    std::vector<double> gs(static_cast<std::size_t>(s_hi - s_lo + 1));
    for (long i = s_lo; i <= s_hi; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        gs[static_cast<std::size_t>(i - s_lo)] = g(grid_.x(idx), values_[idx]);
    }

    // Integral over [u, v] of the interpolant on stencil `base`, in units of dx.
    auto cell_weights = [&](long base, double u, double v, double* w) {
        std::fill(w, w + m, 0.0);
        for (std::size_t q = 0; q < 3; ++q) {
            const double t = (0.5 * (u + v) + 0.5 * (v - u) * kGaussNodes[q] - x0) / dx;
            for (long j = 0; j < m; ++j) {
                double lj = 1.0;
                for (long l = 0; l < m; ++l) {
                    if (l != j) lj *= (t - static_cast<double>(base + l)) / static_cast<double>(j - l);
                }
                w[j] += 0.5 * kGaussWeights[q] * lj * (v - u) / dx;
            }
        }
    };
    // Full cells only depend on the cell's offset inside its stencil.
    double full[kInterpolationPoints][kInterpolationPoints];
    bool have_full[kInterpolationPoints] = {};

    PairwiseAccumulator acc;
    for (long c = c_lo; c <= c_hi; ++c) {
        const double cu = x0 + static_cast<double>(c) * dx;
        const double u = std::max(lo, cu);
        const double v = std::min(hi, cu + dx);
        if (!(v > u)) continue;
        const long base = stencil(static_cast<double>(c) + 0.5);
        const auto off = static_cast<std::size_t>(c - base + 1);
        double partial[kInterpolationPoints];
        const double* w = partial;
        if (u == cu && v == cu + dx && off < kInterpolationPoints) {
            if (!have_full[off]) {
                cell_weights(base, cu, cu + dx, full[off]);
                have_full[off] = true;
            }
            w = full[off];
        } else {
            cell_weights(base, u, v, partial);
        }
        double cell = 0.0;
        for (long j = 0; j < m; ++j) cell += w[j] * gs[static_cast<std::size_t>(base + j - s_lo)];
        acc.add(dx * cell);
    }
    return acc.result();
}

double SampledFunction::integrate_pieces(const Integrand& g, double a, double b) const {
    PairwiseAccumulator acc;
    for (const auto& p : pieces_) {
        const double lo = std::max(a, p.lo);
        const double hi = std::min(b, p.hi);
        if (!(hi > lo)) continue;
        acc.add(simpson(lo, hi, g(lo, p.value), g(0.5 * (lo + hi), p.value), g(hi, p.value)));
    }
    return acc.result();
}

double SampledFunction::integrate(const Integrand& g, double a, double b) const {
    if (!(b > a)) return 0.0;
    if (!pieces_.empty()) return integrate_pieces(g, a, b);
    PairwiseAccumulator acc;
    for (const auto& seg : segments_) {
        if (seg.hi <= a || seg.lo >= b) continue;
        acc.add(integrate_segment(seg, g, a, b));
    }
    return acc.result();
}

double SampledFunction::integrate(const Integrand& g) const { return integrate(g, -kInf, kInf); }

double SampledFunction::evaluate(double x) const {
    if (!pieces_.empty()) {
        for (const auto& p : pieces_) {
            if (x > p.lo && x <= p.hi) return p.value;
        }
        return 0.0;
    }
    if (x < grid_.x_min || x > grid_.x_last()) return 0.0;
    for (std::size_t k = 0; k < segments_.size(); ++k) {
        const auto& seg = segments_[k];
        if ((k == 0 && x >= seg.lo && x <= seg.hi) || (x > seg.lo && x <= seg.hi)) {
            return value_at(seg, x);
        }
    }
    return 0.0;
}

DensityGrid::DensityGrid(SampledFunction samples) : samples_(std::move(samples)) {
    for (double v : samples_.values()) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            fail(ErrorCode::InvalidState, "density has a negative or non-finite sample");
        }
    }
    for (const auto& p : samples_.pieces()) {
        if (!(p.value >= 0.0)) fail(ErrorCode::InvalidState, "density piece is negative");
    }
    const double m = mass();
    if (std::abs(m - 1.0) > kMassTolerance) {
        std::ostringstream os;
        os.precision(12);
        os << "density mass " << m << " differs from 1 by more than " << kMassTolerance;
        fail(ErrorCode::NotNormalized, os.str());
    }
}

DensityGrid::DensityGrid(GridSpec grid, std::vector<double> values,
                         std::vector<double> breakpoints, std::vector<ConstantPiece> pieces)
    : DensityGrid(SampledFunction(grid, std::move(values), std::move(breakpoints),
                                  std::move(pieces))) {}

double DensityGrid::mass() const {
    return samples_.integrate([](double, double rho) { return rho; });
}

}  // namespace eurkit
