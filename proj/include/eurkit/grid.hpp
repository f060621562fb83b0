#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace eurkit {

// Uniform grid x_i = x_min + i*dx, i = 0..n-1, n a power of two.
struct GridSpec {
    double x_min = 0.0;
    double dx = 1.0;
    std::size_t n = 0;

    static GridSpec make(double x_min, double dx, std::size_t n);

    double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
    double x_last() const { return x(n - 1); }
    double extent() const { return static_cast<double>(n) * dx; }
    bool covers(double lo, double hi) const;
    bool same_as(const GridSpec& other) const;

    void validate() const;
};

constexpr std::size_t kDefaultGridPoints = 4096;

// Grid with dx == dk = sqrt(2*pi/n), centred on `center`. Position and
// momentum resolutions are balanced, which keeps Gaussians of width ~1
// well sampled on both sides of the transform.
GridSpec balanced_grid(std::size_t n = kDefaultGridPoints, double center = 0.0);

// Grid conjugate under the continuous Fourier transform: dk = 2*pi/(n*dx),
// k_min = -(n/2)*dk so that k = 0 is a grid point.
GridSpec conjugate_grid(const GridSpec& grid);

bool is_power_of_two(std::size_t n);

// Constant density on [lo, hi).
struct ConstantPiece {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
};

// Fixed-order pairwise (cascade) summation; the result depends only on the
// order of the added terms.
class PairwiseAccumulator {
public:
    void add(double v);
    double result() const;

private:
    double partial_[64] = {};
    std::uint64_t occupied_ = 0;
};

double pairwise_sum(std::span<const double> values);

// Real samples on a grid, plus the information needed to integrate them:
//  - breakpoints: declared jump locations. A grid point that coincides with a
//    breakpoint holds the left-limit value. Interpolation never crosses a
//    breakpoint.
//  - pieces: when non-empty, the function is exactly piecewise constant and
//    integrals are evaluated from the pieces; the samples are for display.
// Outside [x_0, x_{n-1}] the function is zero.
class SampledFunction {
public:
    using Integrand = std::function<double(double x, double value)>;

    SampledFunction() = default;
    SampledFunction(GridSpec grid, std::vector<double> values,
                    std::vector<double> breakpoints = {},
                    std::vector<ConstantPiece> pieces = {});

    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<ConstantPiece>& pieces() const { return pieces_; }
    bool is_piecewise_constant() const { return !pieces_.empty(); }

    // Integral of g(x, f(x)) over [a, b]: the samples g(x_i, f_i) of each
    // smooth segment are joined by a local quintic interpolant which is
    // integrated exactly. Sub-ranges therefore add up to the whole, and
    // quintic integrands are exact.
    double integrate(const Integrand& g, double a, double b) const;
    double integrate(const Integrand& g) const;

    // Value of the interpolant at x (right-continuous at breakpoints is not
    // guaranteed; x exactly at a breakpoint returns the left limit).
    double evaluate(double x) const;

    double riemann_sum() const;

private:
    struct Segment {
        double lo;
        double hi;
        std::size_t first;  // grid points in (lo, hi] (first segment: [lo, hi])
        std::size_t count;
    };

    double interpolate(const Segment& seg, double x) const;
    double value_at(const Segment& seg, double x) const;
    double integrate_segment(const Segment& seg, const Integrand& g, double a, double b) const;
    double integrate_pieces(const Integrand& g, double a, double b) const;
    void build_segments();

    GridSpec grid_;
    std::vector<double> values_;
    std::vector<double> breakpoints_;
    std::vector<ConstantPiece> pieces_;
    std::vector<Segment> segments_;
};

// Probability density on a grid: values >= 0 and unit mass (by the
// quadrature of SampledFunction) within 1e-9.
class DensityGrid {
public:
    static constexpr double kMassTolerance = 1e-9;

    DensityGrid() = default;
    explicit DensityGrid(SampledFunction samples);
    DensityGrid(GridSpec grid, std::vector<double> values, std::vector<double> breakpoints = {},
                std::vector<ConstantPiece> pieces = {});

    const GridSpec& grid() const { return samples_.grid(); }
    const std::vector<double>& values() const { return samples_.values(); }
    const SampledFunction& samples() const { return samples_; }
    bool is_piecewise_constant() const { return samples_.is_piecewise_constant(); }

    double integrate(const SampledFunction::Integrand& g, double a, double b) const {
        return samples_.integrate(g, a, b);
    }
    double integrate(const SampledFunction::Integrand& g) const { return samples_.integrate(g); }
    double mass() const;

private:
    SampledFunction samples_;
};

}  // namespace eurkit
