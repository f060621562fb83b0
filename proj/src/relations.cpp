#include "eurkit/relations.hpp"

#include <cmath>
#include <sstream>

#include "eurkit/errors.hpp"

namespace eurkit {

std::string relation_name(RelationId id) {
    switch (id) {
        case RelationId::shannon_binned: return "shannon-binned";
        case RelationId::renyi_binned: return "renyi-binned";
        case RelationId::symmetrized_binned: return "symmetrized-binned";
        case RelationId::shannon_continuous: return "shannon-continuous";
        case RelationId::renyi_continuous: return "renyi-continuous";
        case RelationId::deutsch: return "deutsch";
        case RelationId::maassen_uffink: return "maassen-uffink";
        case RelationId::renyi_finite: return "renyi-finite";
        case RelationId::angle_momentum: return "angle-momentum";
        case RelationId::mub_sum_pairwise: return "mub-sum-pairwise";
        case RelationId::mub_sum_sanchez: return "mub-sum-sanchez";
        case RelationId::mub_sum_refined: return "mub-sum-refined";
        case RelationId::log_sobolev: return "log-sobolev";
        case RelationId::inverse_log_sobolev: return "inverse-log-sobolev";
        case RelationId::refined_heisenberg: return "refined-heisenberg";
        case RelationId::babenko_beckner: return "babenko-beckner";
        case RelationId::mixed_babenko_beckner: return "mixed-babenko-beckner";
        case RelationId::riesz: return "riesz";
    }
    return "?";
}

const std::vector<RelationId>& all_relations() {
    static const std::vector<RelationId> ids{
        RelationId::shannon_binned,     RelationId::renyi_binned,
        RelationId::symmetrized_binned, RelationId::shannon_continuous,
        RelationId::renyi_continuous,   RelationId::deutsch,
        RelationId::maassen_uffink,     RelationId::renyi_finite,
        RelationId::angle_momentum,     RelationId::mub_sum_pairwise,
        RelationId::mub_sum_sanchez,    RelationId::mub_sum_refined,
        RelationId::log_sobolev,        RelationId::inverse_log_sobolev,
        RelationId::refined_heisenberg, RelationId::babenko_beckner,
        RelationId::mixed_babenko_beckner, RelationId::riesz,
    };
    return ids;
}

RelationId parse_relation(const std::string& name) {
    for (auto id : all_relations()) {
        if (relation_name(id) == name) return id;
    }
    fail(ErrorCode::InvalidSpec, "unknown relation '" + name + "'");
}

std::string basis_choice_name(BasisChoice b) {
    switch (b) {
        case BasisChoice::dft: return "dft";
        case BasisChoice::mub: return "mub";
        case BasisChoice::random_haar: return "random-haar";
        case BasisChoice::explicit_pair: return "explicit";
    }
    return "?";
}

BasisChoice parse_basis_choice(const std::string& name) {
    for (auto b : {BasisChoice::dft, BasisChoice::mub, BasisChoice::random_haar,
                   BasisChoice::explicit_pair}) {
        if (basis_choice_name(b) == name) return b;
    }
    fail(ErrorCode::InvalidSpec, "unknown basis choice '" + name + "'");
}

double default_tolerance(RelationId id) {
    switch (id) {
        case RelationId::shannon_continuous:
        case RelationId::renyi_continuous:
        case RelationId::inverse_log_sobolev:
        case RelationId::refined_heisenberg:
        case RelationId::babenko_beckner:
        case RelationId::mixed_babenko_beckner:
            return 1e-5;
        case RelationId::log_sobolev:
            return 5e-4;
        default:
            return 1e-7;
    }
}

bool uses_alpha(RelationId id) {
    switch (id) {
        case RelationId::renyi_binned:
        case RelationId::renyi_continuous:
        case RelationId::renyi_finite:
        case RelationId::angle_momentum:
        case RelationId::babenko_beckner:
        case RelationId::mixed_babenko_beckner:
            return true;
        default:
            return false;
    }
}

RelationSpec make_relation(RelationId id) {
    RelationSpec r;
    r.id = id;
    r.tol = default_tolerance(id);
    return r;
}

RelationSpec make_relation(RelationId id, double alpha) {
    RelationSpec r = make_relation(id);
    r.alpha = alpha;
    r.beta = conjugate_exponent(alpha);
    return r;
}

void RelationSpec::validate() const {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            fail(ErrorCode::InvalidSpec, std::string(what) + " must be positive and finite");
        }
    };
    if (!(tol >= 0.0) || !std::isfinite(tol)) fail(ErrorCode::InvalidSpec, "tolerance must be >= 0");
    switch (id) {
        case RelationId::shannon_binned:
            positive(delta_x, "delta_x");
            positive(delta_k, "delta_k");
            break;
        case RelationId::renyi_binned:
            positive(delta_x, "delta_x");
            positive(delta_k, "delta_k");
            require_conjugate(alpha, beta);
            break;
        case RelationId::symmetrized_binned:
            positive(delta_x, "delta_x");
            positive(delta_k, "delta_k");
            if (!(s >= 0.0) || !(s < 1.0)) fail(ErrorCode::InvalidS, "s must lie in [0, 1)");
            break;
        case RelationId::shannon_continuous:
        case RelationId::log_sobolev:
        case RelationId::inverse_log_sobolev:
        case RelationId::refined_heisenberg:
            positive(L, "L");
            break;
        case RelationId::renyi_continuous:
            positive(L, "L");
            require_conjugate(alpha, beta);
            break;
        case RelationId::renyi_finite:
            require_conjugate(alpha, beta);
            break;
        case RelationId::babenko_beckner:
        case RelationId::mixed_babenko_beckner:
            require_conjugate(alpha, beta);
            if (alpha < 1.0) {
                fail(ErrorCode::InvalidAlpha, "the norm inequality needs alpha >= 1 on the position side");
            }
            break;
        case RelationId::angle_momentum:
            if (n_bins < 1) fail(ErrorCode::InvalidSpec, "need at least one angle bin");
            require_conjugate(alpha, beta);
            break;
        case RelationId::riesz:
            if (!(nu >= 1.0) || !(nu <= 2.0)) fail(ErrorCode::InvalidSpec, "nu must lie in [1, 2]");
            break;
        case RelationId::mub_sum_sanchez:
        case RelationId::mub_sum_pairwise:
        case RelationId::mub_sum_refined:
            if (mub_count == 1) fail(ErrorCode::InvalidSpec, "need M >= 2 bases");
            break;
        case RelationId::deutsch:
        case RelationId::maassen_uffink:
            break;
    }
    if (basis_a == basis_b) fail(ErrorCode::InvalidSpec, "the two bases must differ");
}

std::vector<ParameterInfo> relation_parameters(RelationId id) {
    const ParameterInfo dx{"delta_x", "position bin width"};
    const ParameterInfo dk{"delta_k", "momentum bin width"};
    const ParameterInfo ax{"align_x", "position bin alignment (centered|edge)"};
    const ParameterInfo ak{"align_k", "momentum bin alignment (centered|edge)"};
    const ParameterInfo al{"alpha", "Renyi order on the first side"};
    const ParameterInfo be{"beta", "conjugate order, 1/alpha + 1/beta = 2"};
    const ParameterInfo L{"L", "reference length"};
    const ParameterInfo basis{"basis", "basis pair (dft|mub|random-haar|explicit)"};
    switch (id) {
        case RelationId::shannon_binned: return {dx, dk, ax, ak};
        case RelationId::renyi_binned: return {al, be, dx, dk, ax, ak};
        case RelationId::symmetrized_binned: return {{"s", "symmetrization parameter in [0, 1)"}, dx, dk, ax, ak};
        case RelationId::shannon_continuous: return {L};
        case RelationId::renyi_continuous: return {al, be, L};
        case RelationId::deutsch:
        case RelationId::maassen_uffink: return {basis};
        case RelationId::renyi_finite: return {al, be, basis};
        case RelationId::angle_momentum: return {{"n_bins", "angle bins N, delta_phi = 2 pi / N"}, al, be};
        case RelationId::mub_sum_pairwise:
        case RelationId::mub_sum_sanchez:
        case RelationId::mub_sum_refined: return {{"mub_count", "number of bases M (default D + 1)"}};
        case RelationId::log_sobolev: return {L, {"side", "position|momentum"}};
        case RelationId::inverse_log_sobolev: return {L, {"side", "position|momentum"}};
        case RelationId::refined_heisenberg: return {L};
        case RelationId::babenko_beckner:
        case RelationId::mixed_babenko_beckner: return {al, be};
        case RelationId::riesz: return {{"nu", "norm exponent in [1, 2]"}, basis};
    }
    return {};
}

}  // namespace eurkit
