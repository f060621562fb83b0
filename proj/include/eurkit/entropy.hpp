#pragma once

#include <span>
#include <string>

#include "eurkit/measure.hpp"

namespace eurkit {

enum class EntropyKind { shannon, renyi, symmetrized, continuous_shannon, continuous_renyi };

std::string entropy_kind_name(EntropyKind kind);

// Entropies are in nats.
struct EntropyValue {
    double value = 0.0;
    EntropyKind kind = EntropyKind::shannon;
    double parameter = 1.0;         // alpha (renyi kinds) or s (symmetrized)
    double reference_length = 0.0;  // L for continuous kinds

    double bits() const;
};

// |alpha - 1| below this selects the Shannon branch.
constexpr double kAlphaOneWindow = 1e-9;
// Probabilities below this count as exact zeros.
constexpr double kProbabilityFloor = 1e-300;

double shannon_sum(std::span<const double> p);
// (1 - alpha)^-1 ln sum p^alpha, scaled by the largest p for stability.
double renyi_sum(std::span<const double> p, double alpha);

EntropyValue shannon(const BinnedDistribution& p);
EntropyValue renyi(const BinnedDistribution& p, double alpha);
// (1/2)(H_{1/(1-s)} + H_{1/(1+s)}); s = 0 gives Shannon.
EntropyValue symmetrized(const BinnedDistribution& p, double s);

// -int rho ln(rho L).
EntropyValue continuous_shannon(const DensityGrid& rho, double L = 1.0);
// (1 - alpha)^-1 ln(L^(alpha-1) int rho^alpha).
EntropyValue continuous_renyi(const DensityGrid& rho, double alpha, double L = 1.0);

// int rho^alpha over the density's support.
double power_integral(const DensityGrid& rho, double alpha);

}  // namespace eurkit
