#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eurkit/verify.hpp"

namespace eurkit {

// Parameterized state families searched by the prober.
//   gaussian: (sigma, x0, k0), squashed into [0.5, 2] x [-3, 3] x [-2, 2]
//             on a balanced 8192-point grid.
//   finite:   2D reals -> D complex amplitudes, normalized.
//   circle:   2(2W+1) reals -> coefficients for m in [-W, W], normalized.
enum class ProbeFamily { gaussian, finite, circle };

std::string probe_family_name(ProbeFamily f);
ProbeFamily parse_probe_family(const std::string& name);

struct OptimizerConfig {
    std::size_t restarts = 4;
    std::size_t max_evals = 600;  // per restart
    std::uint64_t seed = 0;
    double tol = 1e-10;            // simplex size at convergence
    double initial_step = 0.5;
};

struct ProbeFamilySpec {
    ProbeFamily family = ProbeFamily::gaussian;
    std::size_t dim = 3;   // finite
    int m_window = 2;      // circle
    std::size_t grid_points = 8192;
};

std::size_t probe_parameter_count(const ProbeFamilySpec& family);
AnyState probe_state(const ProbeFamilySpec& family, const std::vector<double>& params);

enum class ProbeStatus { converged, budget_exceeded };

struct ProbeResult {
    RelationSpec relation;
    ProbeFamilySpec family;
    double best_lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;  // oriented margin at the best point
    std::vector<double> best_params;
    std::size_t evaluations = 0;
    std::size_t best_restart = 0;
    ProbeStatus status = ProbeStatus::converged;
    bool violation = false;  // gap < -tol
};

// Minimizes the margin of `relation` over the family with Nelder-Mead
// simplex restarts. Restart r starts from a point drawn from
// trial_rng(seed, r); restarts may run on `threads` workers and are reduced in
// restart order.
ProbeResult probe_tightness(const RelationSpec& relation, const ProbeFamilySpec& family,
                            const OptimizerConfig& optimizer, unsigned threads = 1);

}  // namespace eurkit
