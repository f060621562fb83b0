#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eurkit/entropy.hpp"
#include "eurkit/relations.hpp"

namespace eurkit {

// at_least: lhs >= rhs, margin = lhs - rhs. at_most: lhs <= rhs, margin =
// rhs - lhs. equal: margin = -|lhs - rhs|. Satisfied iff margin >= -tol.
enum class Sense { at_least, at_most, equal };

std::string sense_name(Sense s);

struct SubCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double tol = 0.0;
    Sense sense = Sense::at_least;
    bool satisfied = false;
};

struct BoundReport {
    RelationSpec relation;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool satisfied = false;  // main inequality and every sub-check
    double tol = 1e-7;
    Sense sense = Sense::at_least;
    std::string state_descriptor;
    std::vector<std::pair<std::string, double>> diagnostics;
    std::vector<SubCheck> sub_checks;

    void add_diagnostic(const std::string& key, double value);
    // NaN when absent.
    double diagnostic(const std::string& key) const;
    void add_sub_check(const std::string& name, double lhs, double rhs, Sense sense, double tol);
};

double oriented_margin(double lhs, double rhs, Sense sense);

BoundReport make_report(const RelationSpec& relation, double lhs, double rhs, Sense sense,
                        std::string descriptor);

std::string describe(const AnyState& state);

// The two bases of a finite-dimensional relation, as column matrices.
std::pair<Matrix, Matrix> basis_pair(const RelationSpec& relation, std::size_t dim);

// Evaluates one relation on one state. Throws IncompatibleState when the
// state type does not fit the relation.
BoundReport check(const AnyState& state, const RelationSpec& relation,
                  const std::string& descriptor = "");
BoundReport check_finite(const FiniteState& state, const RelationSpec& relation, const Matrix& a,
                         const Matrix& b, const std::string& descriptor = "");

// Binned and continuous relations on a bare position density need the
// momentum side too, so only the pure-position quantities are offered here.
BoundReport check_density(const DensityGrid& rho, const RelationSpec& relation,
                          const std::string& descriptor);

struct StressSummary {
    RelationSpec relation;
    RandomEnsembleSpec ensemble;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::size_t errors = 0;
    double min_margin = 0.0;
    std::uint64_t argmin_index = 0;
    std::string argmin_descriptor;
    std::vector<std::string> error_messages;  // first few, by trial index
};

// check() over random_state(ensemble, i), i = 0..trials-1. Trials run on
// `threads` workers; the reduction is in index order, so the summary does not
// depend on the thread count.
StressSummary stress(const RelationSpec& relation, const RandomEnsembleSpec& ensemble,
                     std::size_t trials, unsigned threads = 1);

struct SaturationRow {
    std::string family;
    BoundReport report;
    double family_tol = 0.0;
    bool passed = false;  // |margin| <= family_tol
};

std::vector<SaturationRow> saturation_suite();

// (int rho^alpha)^(1/alpha) <= n(alpha, beta) (int rho~^beta)^(1/beta), alpha >= 1.
// Mixtures add the Minkowski steps and the per-component inequality as sub-checks.
BoundReport babenko_beckner_check(const GridWavefunction& psi, double alpha);
BoundReport babenko_beckner_check(const MixtureState& mix, double alpha);

// c^(1/mu) ||x||_mu <= c^(1/nu) ||T x||_nu, 1/mu + 1/nu = 1, c = max |t_ji|.
BoundReport riesz_check(const Matrix& t, const std::vector<cplx>& x, double nu);

// (a) H^(x) + H^(k) = -sum f_ij ln f_ij with f_ij = q_i p_j.
// (b) |f| = |f~| where f(x, k) = <x|rho|k> and f~ its two-dimensional
//     transform, on grids of at most kPhaseSpaceMaxPoints points.
constexpr std::size_t kPhaseSpaceMaxPoints = 1024;
BoundReport phase_space_check(const AnyState& state, const RelationSpec& relation);

// H^(a) + H^(b) = sum q_i p_j Q_ij, and every Q_ij >= -2 ln((1 + C_B)/2).
BoundReport deutsch_identity_check(const FiniteState& state, const Matrix& a, const Matrix& b);

}  // namespace eurkit
