#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "eurkit/bounds.hpp"
#include "eurkit/measure.hpp"

namespace eurkit {

enum class RelationId {
    shannon_binned,
    renyi_binned,
    symmetrized_binned,
    shannon_continuous,
    renyi_continuous,
    deutsch,
    maassen_uffink,
    renyi_finite,
    angle_momentum,
    mub_sum_pairwise,
    mub_sum_sanchez,
    mub_sum_refined,
    log_sobolev,
    inverse_log_sobolev,
    refined_heisenberg,
    babenko_beckner,
    mixed_babenko_beckner,
    riesz,
};

std::string relation_name(RelationId id);
RelationId parse_relation(const std::string& name);
const std::vector<RelationId>& all_relations();

// Where the two bases of a finite-dimensional relation come from.
enum class BasisChoice { dft, mub, random_haar, explicit_pair };

std::string basis_choice_name(BasisChoice b);
BasisChoice parse_basis_choice(const std::string& name);

struct RelationSpec {
    RelationId id = RelationId::shannon_binned;

    double alpha = 1.0;
    double beta = 1.0;
    double s = 0.0;
    double delta_x = 1.0;
    double delta_k = 2.0 * std::numbers::pi;
    double L = 1.0;
    double nu = 2.0;  // riesz
    int n_bins = 8;   // angle bins, delta_phi = 2 pi / n_bins
    std::size_t mub_count = 0;  // M; 0 means D + 1 for the mub sums
    BinAlignment align_x = BinAlignment::edge;  // box and example supports start at bin edges
    BinAlignment align_k = BinAlignment::centered;
    BasisChoice basis = BasisChoice::dft;
    std::size_t basis_a = 0;  // indices into the basis set (mub choice)
    std::size_t basis_b = 1;
    std::uint64_t basis_seed = 0;  // random_haar choice
    Side side = Side::position;
    double tol = 1e-7;

    double delta_phi() const { return 2.0 * std::numbers::pi / n_bins; }
    // Throws InvalidSpec / NotConjugate / InvalidS / InvalidAlpha.
    void validate() const;
};

double default_tolerance(RelationId id);

// RelationSpec with the relation's default tolerance.
RelationSpec make_relation(RelationId id);
// alpha with its conjugate beta filled in.
RelationSpec make_relation(RelationId id, double alpha);

struct ParameterInfo {
    std::string name;
    std::string description;
};

// Parameters that affect the relation, for enumeration by front ends.
std::vector<ParameterInfo> relation_parameters(RelationId id);

bool uses_alpha(RelationId id);

}  // namespace eurkit
