#include "eurkit/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eurkit/errors.hpp"

namespace eurkit {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        std::ostringstream os;
        os << "alpha must be positive and finite, got " << alpha;
        fail(ErrorCode::InvalidAlpha, os.str());
    }
}

void check_length(double L) {
    if (!(L > 0.0) || !std::isfinite(L)) fail(ErrorCode::InvalidSpec, "reference length must be > 0");
}

}  // namespace

std::string entropy_kind_name(EntropyKind kind) {
    switch (kind) {
        case EntropyKind::shannon: return "shannon";
        case EntropyKind::renyi: return "renyi";
        case EntropyKind::symmetrized: return "symmetrized";
        case EntropyKind::continuous_shannon: return "continuous-shannon";
        case EntropyKind::continuous_renyi: return "continuous-renyi";
    }
    return "?";
}

double EntropyValue::bits() const { return value / std::numbers::ln2; }

double shannon_sum(std::span<const double> p) {
    PairwiseAccumulator acc;
    for (double v : p) {
        if (v > kProbabilityFloor) acc.add(-v * std::log(v));
    }
    return acc.result();
}

double renyi_sum(std::span<const double> p, double alpha) {
    check_alpha(alpha);
    if (std::abs(alpha - 1.0) < kAlphaOneWindow) return shannon_sum(p);
    double pmax = 0.0;
    for (double v : p) pmax = std::max(pmax, v);
    if (!(pmax > kProbabilityFloor)) fail(ErrorCode::InvalidState, "empty distribution");
    PairwiseAccumulator acc;
    for (double v : p) {
        if (v > kProbabilityFloor) acc.add(std::pow(v / pmax, alpha));
    }
    return (alpha * std::log(pmax) + std::log(acc.result())) / (1.0 - alpha);
}

EntropyValue shannon(const BinnedDistribution& p) {
    const auto probs = p.probabilities();
    return {shannon_sum(probs), EntropyKind::shannon, 1.0, 0.0};
}

EntropyValue renyi(const BinnedDistribution& p, double alpha) {
    const auto probs = p.probabilities();
    return {renyi_sum(probs, alpha), EntropyKind::renyi, alpha, 0.0};
}

EntropyValue symmetrized(const BinnedDistribution& p, double s) {
    if (!(s >= 0.0) || !(s < 1.0)) {
        std::ostringstream os;
        os << "s must lie in [0, 1), got " << s;
        fail(ErrorCode::InvalidS, os.str());
    }
    const auto probs = p.probabilities();
    if (s == 0.0) return {shannon_sum(probs), EntropyKind::symmetrized, 0.0, 0.0};
    const double v = 0.5 * (renyi_sum(probs, 1.0 / (1.0 - s)) + renyi_sum(probs, 1.0 / (1.0 + s)));
    return {v, EntropyKind::symmetrized, s, 0.0};
}

EntropyValue continuous_shannon(const DensityGrid& rho, double L) {
    check_length(L);
    const double v = rho.integrate([L](double, double r) {
        return r > kProbabilityFloor ? -r * std::log(r * L) : 0.0;
    });
    return {v, EntropyKind::continuous_shannon, 1.0, L};
}

double power_integral(const DensityGrid& rho, double alpha) {
    check_alpha(alpha);
    return rho.integrate([alpha](double, double r) {
        return r > kProbabilityFloor ? std::pow(r, alpha) : 0.0;
    });
}

EntropyValue continuous_renyi(const DensityGrid& rho, double alpha, double L) {
    check_alpha(alpha);
    check_length(L);
    if (std::abs(alpha - 1.0) < kAlphaOneWindow) {
        auto v = continuous_shannon(rho, L);
        v.kind = EntropyKind::continuous_renyi;
        return v;
    }
    const double v = (std::log(power_integral(rho, alpha)) + (alpha - 1.0) * std::log(L)) /
                     (1.0 - alpha);
    return {v, EntropyKind::continuous_renyi, alpha, L};
}

}  // namespace eurkit
