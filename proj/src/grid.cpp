#include "eurkit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eurkit/errors.hpp"

namespace eurkit {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

GridSpec GridSpec::make(double x_min, double dx, std::size_t n) {
    GridSpec g{x_min, dx, n};
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (!(dx > 0.0) || !std::isfinite(dx)) {
        fail(ErrorCode::InvalidGrid, "dx must be positive and finite");
    }
    if (n < 2 || !is_power_of_two(n)) {
        std::ostringstream os;
        os << "point count must be a power of two >= 2, got " << n;
        fail(ErrorCode::InvalidGrid, os.str());
    }
    if (!std::isfinite(x_min) || !std::isfinite(x_min + extent())) {
        fail(ErrorCode::InvalidGrid, "grid extent is not representable");
    }
}

bool GridSpec::covers(double lo, double hi) const {
    const double slack = 1e-9 * dx;
    return lo >= x_min - slack && hi <= x_last() + slack;
}

bool GridSpec::same_as(const GridSpec& other) const {
    return n == other.n && std::abs(dx - other.dx) <= 1e-12 * dx &&
           std::abs(x_min - other.x_min) <= 1e-9 * dx;
}

GridSpec balanced_grid(std::size_t n, double center) {
    const double dx = std::sqrt(2.0 * std::numbers::pi / static_cast<double>(n));
    return GridSpec::make(center - static_cast<double>(n / 2) * dx, dx, n);
}

GridSpec conjugate_grid(const GridSpec& grid) {
    grid.validate();
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(grid.n) * grid.dx);
    return GridSpec::make(-static_cast<double>(grid.n / 2) * dk, dk, grid.n);
}

void PairwiseAccumulator::add(double v) {
    int level = 0;
    while (occupied_ & (std::uint64_t{1} << level)) {
        v = partial_[level] + v;
        occupied_ &= ~(std::uint64_t{1} << level);
        ++level;
    }
    partial_[level] = v;
    occupied_ |= std::uint64_t{1} << level;
}

double PairwiseAccumulator::result() const {
    double total = 0.0;
    for (int level = 0; level < 64; ++level) {
        if (occupied_ & (std::uint64_t{1} << level)) total += partial_[level];
    }
    return total;
}

double pairwise_sum(std::span<const double> values) {
    PairwiseAccumulator acc;
    for (double v : values) acc.add(v);
    return acc.result();
}

SampledFunction::SampledFunction(GridSpec grid, std::vector<double> values,
                                 std::vector<double> breakpoints,
                                 std::vector<ConstantPiece> pieces)
    : grid_(grid), values_(std::move(values)), breakpoints_(std::move(breakpoints)),
      pieces_(std::move(pieces)) {
    grid_.validate();
    if (values_.size() != grid_.n) {
        fail(ErrorCode::InvalidState, "sample count does not match grid size");
    }
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
    std::sort(pieces_.begin(), pieces_.end(),
              [](const ConstantPiece& a, const ConstantPiece& b) { return a.lo < b.lo; });
    for (const auto& p : pieces_) {
        if (!(p.hi >= p.lo)) fail(ErrorCode::InvalidState, "piece with hi < lo");
    }
    build_segments();
}

void SampledFunction::build_segments() {
    const double x0 = grid_.x_min;
    const double x_last = grid_.x_last();
    // Index of the last grid point <= b (left-limit convention).
    auto last_index_at_or_below = [&](double b) -> long {
        const double t = (b - x0) / grid_.dx;
        const double r = std::round(t);
        if (std::abs(t - r) < 1e-9) return static_cast<long>(r);
        return static_cast<long>(std::floor(t));
    };

    std::vector<double> bounds{x0};
    for (double b : breakpoints_) {
        if (b > x0 && b < x_last) bounds.push_back(b);
    }
    bounds.push_back(x_last);

    segments_.clear();
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        const long first = (k == 0) ? 0 : last_index_at_or_below(bounds[k]) + 1;
        const long last = std::min<long>(last_index_at_or_below(bounds[k + 1]),
                                         static_cast<long>(grid_.n) - 1);
        const long count = std::max<long>(0, last - first + 1);
        segments_.push_back(Segment{bounds[k], bounds[k + 1], static_cast<std::size_t>(first),
                                    static_cast<std::size_t>(count)});
    }
}

double SampledFunction::riemann_sum() const {
    PairwiseAccumulator acc;
    for (double v : values_) acc.add(v * grid_.dx);
    return acc.result();
}

}  // namespace eurkit
