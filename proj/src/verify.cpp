#include "eurkit/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "eurkit/errors.hpp"

namespace eurkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Densities {
    DensityGrid x;
    DensityGrid k;
};

Densities densities_of(const AnyState& state, RelationId id) {
    if (const auto* psi = std::get_if<GridWavefunction>(&state)) {
        return {position_density(*psi), momentum_density(*psi)};
    }
    if (const auto* mix = std::get_if<MixtureState>(&state)) {
        auto [x, k] = mixture_density(*mix);
        return {std::move(x), std::move(k)};
    }
    fail(ErrorCode::IncompatibleState, relation_name(id) + " needs a grid or mixture state, got " +
                                           state_kind_name(state));
}

const FiniteState& need_finite(const AnyState& state, RelationId id) {
    if (const auto* f = std::get_if<FiniteState>(&state)) return *f;
    fail(ErrorCode::IncompatibleState,
         relation_name(id) + " needs a finite state, got " + state_kind_name(state));
}

double p_norm(const Eigen::VectorXcd& v, double p) {
    if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
    PairwiseAccumulator acc;
    for (Eigen::Index i = 0; i < v.size(); ++i) acc.add(std::pow(std::abs(v(i)), p));
    return std::pow(acc.result(), 1.0 / p);
}

Eigen::VectorXcd to_vector(const std::vector<cplx>& v) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

BoundReport check_binned(const Densities& d, const RelationSpec& rel, const std::string& desc) {
    const auto bx = bin_position(d.x, rel.delta_x, rel.align_x);
    const auto bk = bin_momentum(d.k, rel.delta_k, rel.align_k);
    double hx = 0.0, hk = 0.0, rhs = 0.0;
    switch (rel.id) {
        case RelationId::shannon_binned:
            hx = shannon(bx).value;
            hk = shannon(bk).value;
            rhs = bound_shannon_binned(rel.delta_x, rel.delta_k);
            break;
        case RelationId::renyi_binned:
            hx = renyi(bx, rel.alpha).value;
            hk = renyi(bk, rel.beta).value;
            rhs = bound_renyi_binned(rel.alpha, rel.beta, rel.delta_x, rel.delta_k);
            break;
        default:
            hx = symmetrized(bx, rel.s).value;
            hk = symmetrized(bk, rel.s).value;
            rhs = bound_symmetrized_binned(rel.s, rel.delta_x, rel.delta_k);
            break;
    }
    auto r = make_report(rel, hx + hk, rhs, Sense::at_least, desc);
    r.add_diagnostic("H_x", hx);
    r.add_diagnostic("H_k", hk);
    r.add_diagnostic("tail_mass_x", bx.tail_mass);
    r.add_diagnostic("tail_mass_k", bk.tail_mass);
    return r;
}

BoundReport check_continuous(const Densities& d, const RelationSpec& rel, const std::string& desc) {
    double sx = 0.0, sk = 0.0, rhs = 0.0;
    if (rel.id == RelationId::shannon_continuous) {
        sx = continuous_shannon(d.x, rel.L).value;
        sk = continuous_shannon(d.k, 1.0 / rel.L).value;
        rhs = bound_continuous(1.0, 1.0);
    } else {
        sx = continuous_renyi(d.x, rel.alpha, rel.L).value;
        sk = continuous_renyi(d.k, rel.beta, 1.0 / rel.L).value;
        rhs = bound_continuous(rel.alpha, rel.beta);
    }
    auto r = make_report(rel, sx + sk, rhs, Sense::at_least, desc);
    r.add_diagnostic("S_x", sx);
    r.add_diagnostic("S_k", sk);
    r.add_diagnostic("mass_x", d.x.mass());
    r.add_diagnostic("mass_k", d.k.mass());
    return r;
}

BoundReport check_log_sobolev(const Densities& d, const RelationSpec& rel, const std::string& desc) {
    const bool pos = rel.side == Side::position;
    const DensityGrid& rho = pos ? d.x : d.k;
    const double ref = pos ? rel.L : 1.0 / rel.L;
    const double s = continuous_shannon(rho, ref).value;
    if (rel.id == RelationId::log_sobolev) {
        const auto ls = log_sobolev_rhs(rho, ref);
        auto r = make_report(rel, s, ls.rhs, Sense::at_least, desc);
        r.add_diagnostic("fisher_information", ls.fisher);
        r.add_diagnostic("excluded_mass", ls.excluded_mass);
        return r;
    }
    const auto diag = std_dev_diagnostic(rho);
    auto r = make_report(rel, s, inverse_log_sobolev_rhs(diag.sigma, rel.L, rel.side), Sense::at_most,
                         desc);
    r.add_diagnostic("sigma", diag.sigma);
    r.add_diagnostic("sigma_converged", diag.converged ? 1.0 : 0.0);
    return r;
}

BoundReport check_refined_heisenberg(const Densities& d, const RelationSpec& rel,
                                     const std::string& desc) {
    const auto dx = std_dev_diagnostic(d.x);
    const auto dk = std_dev_diagnostic(d.k);
    const double sx = continuous_shannon(d.x, rel.L).value;
    const double sk = continuous_shannon(d.k, 1.0 / rel.L).value;
    const double bound = refined_heisenberg(sx + sk);
    auto r = make_report(rel, dx.sigma * dk.sigma, bound, Sense::at_least, desc);
    r.add_sub_check("entropy-term-at-least-half", bound, 0.5, Sense::at_least, rel.tol);
    r.add_diagnostic("sigma_x", dx.sigma);
    r.add_diagnostic("sigma_k", dk.sigma);
    r.add_diagnostic("S_sum", sx + sk);
    r.add_diagnostic("sigma_converged", (dx.converged && dk.converged) ? 1.0 : 0.0);
    return r;
}

BoundReport check_angle(const CircleState& psi, const RelationSpec& rel, const std::string& desc) {
    const auto q = bin_angle(psi, rel.n_bins);
    std::vector<double> pm(psi.coefficients.size());
    for (std::size_t i = 0; i < pm.size(); ++i) pm[i] = std::norm(psi.coefficients[i]);
    const auto p = make_exact_distribution(std::move(pm));
    const double hphi = renyi(q, rel.alpha).value;
    const double hm = renyi(p, rel.beta).value;
    auto r = make_report(rel, hphi + hm, bound_angle(rel.n_bins), Sense::at_least, desc);
    r.add_diagnostic("H_phi", hphi);
    r.add_diagnostic("H_m", hm);
    return r;
}

BoundReport check_mub_sum(const FiniteState& psi, const RelationSpec& rel, const std::string& desc) {
    psi.validate();
    const std::size_t d = psi.dim();
    const auto set = mub_prime(d);
    const std::size_t m = rel.mub_count == 0 ? d + 1 : rel.mub_count;
    if (m > set.bases.size()) {
        std::ostringstream os;
        os << "only " << set.bases.size() << " mutually unbiased bases exist for D = " << d;
        fail(ErrorCode::InvalidSpec, os.str());
    }
    MubVariant v = MubVariant::pairwise;
    if (rel.id == RelationId::mub_sum_sanchez) v = MubVariant::sanchez;
    if (rel.id == RelationId::mub_sum_refined) v = MubVariant::refined;
    const double rhs = bound_mub_sum(m, d, v);
    PairwiseAccumulator acc;
    for (std::size_t b = 0; b < m; ++b) acc.add(shannon(finite_probabilities(psi, set.bases[b])).value);
    auto r = make_report(rel, acc.result(), rhs, Sense::at_least, desc);
    r.add_diagnostic("M", static_cast<double>(m));
    r.add_diagnostic("D", static_cast<double>(d));
    return r;
}

}  // namespace

std::string sense_name(Sense s) {
    switch (s) {
        case Sense::at_least: return "at_least";
        case Sense::at_most: return "at_most";
        case Sense::equal: return "equal";
    }
    return "?";
}

double oriented_margin(double lhs, double rhs, Sense sense) {
    switch (sense) {
        case Sense::at_least: return lhs - rhs;
        case Sense::at_most: return rhs - lhs;
        case Sense::equal: return -std::abs(lhs - rhs);
    }
    return kNaN;
}

void BoundReport::add_diagnostic(const std::string& key, double value) {
    diagnostics.emplace_back(key, value);
}

double BoundReport::diagnostic(const std::string& key) const {
    for (const auto& [k, v] : diagnostics) {
        if (k == key) return v;
    }
    return kNaN;
}

void BoundReport::add_sub_check(const std::string& name, double l, double r, Sense s, double t) {
    SubCheck c{name, l, r, oriented_margin(l, r, s), t, s, false};
    c.satisfied = c.margin >= -t;
    satisfied = satisfied && c.satisfied;
    sub_checks.push_back(std::move(c));
}

BoundReport make_report(const RelationSpec& relation, double lhs, double rhs, Sense sense,
                        std::string descriptor) {
    BoundReport r;
    r.relation = relation;
    r.lhs = lhs;
    r.rhs = rhs;
    r.sense = sense;
    r.tol = relation.tol;
    r.margin = oriented_margin(lhs, rhs, sense);
    r.satisfied = r.margin >= -r.tol;
    r.state_descriptor = std::move(descriptor);
    return r;
}

std::string describe(const AnyState& state) {
    std::ostringstream os;
    os.precision(12);
    if (const auto* g = std::get_if<GridWavefunction>(&state)) {
        os << "grid n=" << g->grid.n << " x_min=" << g->grid.x_min << " dx=" << g->grid.dx;
    } else if (const auto* f = std::get_if<FiniteState>(&state)) {
        os << "finite D=" << f->dim();
    } else if (const auto* c = std::get_if<CircleState>(&state)) {
        os << "circle m=[" << c->m_min << "," << c->m_max() << "]";
    } else if (const auto* m = std::get_if<MixtureState>(&state)) {
        os << "mixture components=" << m->components.size() << " n=" << m->grid().n;
    }
    return os.str();
}

std::pair<Matrix, Matrix> basis_pair(const RelationSpec& relation, std::size_t dim) {
    switch (relation.basis) {
        case BasisChoice::dft: {
            auto set = dft_basis(dim);
            return {set.bases[0], set.bases[1]};
        }
        case BasisChoice::mub: {
            auto set = mub_prime(dim);
            if (relation.basis_a >= set.bases.size() || relation.basis_b >= set.bases.size()) {
                fail(ErrorCode::InvalidSpec, "basis index beyond the MUB set");
            }
            return {set.bases[relation.basis_a], set.bases[relation.basis_b]};
        }
        case BasisChoice::random_haar: {
            auto rng = trial_rng(relation.basis_seed, 0);
            const auto d = static_cast<Eigen::Index>(dim);
            return {Matrix::Identity(d, d), haar_unitary(dim, rng)};
        }
        case BasisChoice::explicit_pair:
            break;
    }
    fail(ErrorCode::InvalidSpec, "explicit bases must be passed to check_finite");
}

BoundReport check_finite(const FiniteState& state, const RelationSpec& rel, const Matrix& a,
                         const Matrix& b, const std::string& descriptor) {
    rel.validate();
    state.validate();
    const std::string desc = descriptor.empty() ? describe(AnyState{state}) : descriptor;
    if (!is_unitary(a, 1e-10) || !is_unitary(b, 1e-10)) {
        fail(ErrorCode::NotUnitary, "basis matrices must be unitary");
    }
    const double c_b = overlap_C_B(a, b);
    if (rel.id == RelationId::riesz) {
        const Matrix t = b.adjoint() * a;
        const Eigen::VectorXcd x = a.adjoint() * to_vector(state.amplitudes);
        std::vector<cplx> xv(x.data(), x.data() + x.size());
        auto r = riesz_check(t, xv, rel.nu);
        r.relation = rel;
        r.tol = rel.tol;
        r.satisfied = r.margin >= -r.tol;
        r.state_descriptor = desc;
        return r;
    }
    const auto pa = finite_probabilities(state, a);
    const auto pb = finite_probabilities(state, b);
    double ha = 0.0, hb = 0.0, rhs = 0.0;
    switch (rel.id) {
        case RelationId::deutsch:
            ha = shannon(pa).value;
            hb = shannon(pb).value;
            rhs = bound_deutsch(c_b, state.dim());
            break;
        case RelationId::maassen_uffink:
            ha = shannon(pa).value;
            hb = shannon(pb).value;
            rhs = bound_maassen_uffink(c_b, state.dim());
            break;
        case RelationId::renyi_finite:
            ha = renyi(pa, rel.alpha).value;
            hb = renyi(pb, rel.beta).value;
            rhs = bound_maassen_uffink(c_b, state.dim());
            break;
        default:
            fail(ErrorCode::IncompatibleState,
                 relation_name(rel.id) + " is not a two-basis relation");
    }
    auto r = make_report(rel, ha + hb, rhs, Sense::at_least, desc);
    r.add_diagnostic("H_a", ha);
    r.add_diagnostic("H_b", hb);
    r.add_diagnostic("C_B", c_b);
    return r;
}

BoundReport check(const AnyState& state, const RelationSpec& rel, const std::string& descriptor) {
    rel.validate();
    const std::string desc = descriptor.empty() ? describe(state) : descriptor;
    switch (rel.id) {
        case RelationId::shannon_binned:
        case RelationId::renyi_binned:
        case RelationId::symmetrized_binned:
            return check_binned(densities_of(state, rel.id), rel, desc);
        case RelationId::shannon_continuous:
        case RelationId::renyi_continuous:
            return check_continuous(densities_of(state, rel.id), rel, desc);
        case RelationId::log_sobolev:
        case RelationId::inverse_log_sobolev:
            return check_log_sobolev(densities_of(state, rel.id), rel, desc);
        case RelationId::refined_heisenberg:
            return check_refined_heisenberg(densities_of(state, rel.id), rel, desc);
        case RelationId::deutsch:
        case RelationId::maassen_uffink:
        case RelationId::renyi_finite:
        case RelationId::riesz: {
            const auto& f = need_finite(state, rel.id);
            auto [a, b] = basis_pair(rel, f.dim());
            return check_finite(f, rel, a, b, desc);
        }
        case RelationId::mub_sum_pairwise:
        case RelationId::mub_sum_sanchez:
        case RelationId::mub_sum_refined:
            return check_mub_sum(need_finite(state, rel.id), rel, desc);
        case RelationId::angle_momentum: {
            const auto* c = std::get_if<CircleState>(&state);
            if (!c) {
                fail(ErrorCode::IncompatibleState,
                     "angle-momentum needs a circle state, got " + state_kind_name(state));
            }
            return check_angle(*c, rel, desc);
        }
        case RelationId::babenko_beckner: {
            BoundReport r;
            if (const auto* g = std::get_if<GridWavefunction>(&state)) {
                r = babenko_beckner_check(*g, rel.alpha);
            } else if (const auto* m = std::get_if<MixtureState>(&state)) {
                r = babenko_beckner_check(*m, rel.alpha);
            } else {
                fail(ErrorCode::IncompatibleState,
                     "babenko-beckner needs a grid or mixture state, got " + state_kind_name(state));
            }
            r.relation = rel;
            r.tol = rel.tol;
            r.satisfied = r.margin >= -r.tol;
            for (auto& sc : r.sub_checks) {
                sc.tol = rel.tol;
                sc.satisfied = sc.margin >= -sc.tol;
                r.satisfied = r.satisfied && sc.satisfied;
            }
            r.state_descriptor = desc;
            return r;
        }
        case RelationId::mixed_babenko_beckner: {
            const auto* m = std::get_if<MixtureState>(&state);
            if (!m) {
                fail(ErrorCode::IncompatibleState,
                     "mixed-babenko-beckner needs a mixture state, got " + state_kind_name(state));
            }
            auto r = babenko_beckner_check(*m, rel.alpha);
            r.relation = rel;
            r.tol = rel.tol;
            r.satisfied = r.margin >= -r.tol;
            for (auto& sc : r.sub_checks) {
                sc.tol = rel.tol;
                sc.satisfied = sc.margin >= -sc.tol;
                r.satisfied = r.satisfied && sc.satisfied;
            }
            r.state_descriptor = desc;
            return r;
        }
    }
    fail(ErrorCode::InvalidSpec, "unhandled relation");
}

BoundReport check_density(const DensityGrid& rho, const RelationSpec& rel,
                          const std::string& descriptor) {
    rel.validate();
    if (rel.side != Side::position ||
        (rel.id != RelationId::log_sobolev && rel.id != RelationId::inverse_log_sobolev)) {
        fail(ErrorCode::IncompatibleState,
             relation_name(rel.id) + " needs a wavefunction; a bare position density only "
                                     "supports the position-side log-Sobolev relations");
    }
    const double s = continuous_shannon(rho, rel.L).value;
    if (rel.id == RelationId::log_sobolev) {
        const auto ls = log_sobolev_rhs(rho, rel.L);
        auto r = make_report(rel, s, ls.rhs, Sense::at_least, descriptor);
        r.add_diagnostic("fisher_information", ls.fisher);
        return r;
    }
    const double sigma = std_dev(rho);
    auto r = make_report(rel, s, inverse_log_sobolev_rhs(sigma, rel.L, Side::position),
                         Sense::at_most, descriptor);
    r.add_diagnostic("sigma", sigma);
    return r;
}

StressSummary stress(const RelationSpec& relation, const RandomEnsembleSpec& ensemble,
                     std::size_t trials, unsigned threads) {
    if (trials < 1) fail(ErrorCode::InvalidSpec, "need at least one trial");
    relation.validate();
    ensemble.validate();

    struct Outcome {
        bool ok = false;
        double margin = 0.0;
        bool satisfied = true;
        std::string descriptor;
        std::string error;
    };
    std::vector<Outcome> out(trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= trials) return;
            Outcome& o = out[i];
            std::ostringstream desc;
            desc << ensemble_kind_name(ensemble.kind) << " seed=" << ensemble.seed << " index=" << i;
            o.descriptor = desc.str();
            try {
                const auto state = random_state(ensemble, i);
                const auto r = check(state, relation, o.descriptor);
                o.ok = true;
                o.margin = r.margin;
                o.satisfied = r.satisfied;
                for (const auto& sc : r.sub_checks) o.margin = std::min(o.margin, sc.margin);
            } catch (const std::exception& e) {
                o.error = e.what();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    StressSummary s;
    s.relation = relation;
    s.ensemble = ensemble;
    s.trials = trials;
    s.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trials; ++i) {
        const auto& o = out[i];
        if (!o.ok) {
            ++s.errors;
            if (s.error_messages.size() < 10) s.error_messages.push_back(o.descriptor + ": " + o.error);
            continue;
        }
        if (!o.satisfied) ++s.violations;
        if (o.margin < s.min_margin) {
            s.min_margin = o.margin;
            s.argmin_index = i;
            s.argmin_descriptor = o.descriptor;
        }
    }
    return s;
}

std::vector<SaturationRow> saturation_suite() {
    std::vector<SaturationRow> rows;
    auto add = [&rows](std::string family, BoundReport r, double tol) {
        const bool passed = std::abs(r.margin) <= tol && r.satisfied;
        rows.push_back({std::move(family), std::move(r), tol, passed});
    };

    const GridSpec grid = balanced_grid();
    const AnyState gauss = gaussian_state(1.0, 0.0, 0.0, grid);
    const std::string gdesc = "gaussian sigma=1";
    add("gaussian", check(gauss, make_relation(RelationId::shannon_continuous), gdesc), 1e-5);
    add("gaussian", check(gauss, make_relation(RelationId::renyi_continuous, 2.0), gdesc), 1e-5);
    for (double a : {1.25, 2.0, 4.0}) {
        add("gaussian", check(gauss, make_relation(RelationId::babenko_beckner, a), gdesc), 1e-5);
    }
    add("gaussian", check(gauss, make_relation(RelationId::refined_heisenberg), gdesc), 1e-5);
    for (Side side : {Side::position, Side::momentum}) {
        auto rel = make_relation(RelationId::inverse_log_sobolev);
        rel.side = side;
        add("gaussian", check(gauss, rel, gdesc), 1e-5);
        auto ls = make_relation(RelationId::log_sobolev);
        ls.side = side;
        add("gaussian", check(gauss, ls, gdesc), 5e-4);
    }

    for (std::size_t d : {2u, 3u, 5u, 7u}) {
        const auto f = dft_matrix(d);
        for (std::size_t col = 0; col < d; ++col) {
            FiniteState v{std::vector<cplx>(d)};
            for (std::size_t i = 0; i < d; ++i) {
                v.amplitudes[i] = f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col));
            }
            std::ostringstream desc;
            desc << "dft basis vector D=" << d << " index=" << col;
            add("dft-basis-vector", check(v, make_relation(RelationId::maassen_uffink), desc.str()),
                1e-12);
            add("dft-basis-vector", check(v, make_relation(RelationId::renyi_finite, 2.0), desc.str()),
                1e-12);
        }
    }

    for (int n : {2, 8, 16}) {
        for (int m : {0, 3, -5}) {
            auto rel = make_relation(RelationId::angle_momentum);
            rel.n_bins = n;
            std::ostringstream desc;
            desc << "angular eigenstate m=" << m;
            add("angular-eigenstate", check(angular_eigenstate(m), rel, desc.str()), 1e-12);
        }
    }
    return rows;
}

BoundReport babenko_beckner_check(const GridWavefunction& psi, double alpha) {
    auto rel = make_relation(RelationId::babenko_beckner, alpha);
    rel.validate();
    const auto rho = position_density(psi);
    const auto rho_k = momentum_density(psi);
    const double lhs = std::pow(power_integral(rho, rel.alpha), 1.0 / rel.alpha);
    const double rhs = bb_constant(rel.alpha, rel.beta) *
                       std::pow(power_integral(rho_k, rel.beta), 1.0 / rel.beta);
    auto r = make_report(rel, lhs, rhs, Sense::at_most, describe(AnyState{psi}));
    r.add_diagnostic("beta", rel.beta);
    r.add_diagnostic("n_alpha_beta", bb_constant(rel.alpha, rel.beta));
    return r;
}

BoundReport babenko_beckner_check(const MixtureState& mix, double alpha) {
    auto rel = make_relation(RelationId::mixed_babenko_beckner, alpha);
    rel.validate();
    const double a = rel.alpha;
    const double b = rel.beta;
    const double n_ab = bb_constant(a, b);
    const auto [rho, rho_k] = mixture_density(mix);
    const double lhs = std::pow(power_integral(rho, a), 1.0 / a);
    const double nk_mix = std::pow(power_integral(rho_k, b), 1.0 / b);
    auto r = make_report(rel, lhs, n_ab * nk_mix, Sense::at_most, describe(AnyState{mix}));

    PairwiseAccumulator sum_x, sum_k;
    for (std::size_t i = 0; i < mix.components.size(); ++i) {
        const auto& psi = mix.components[i];
        const double nx = std::pow(power_integral(position_density(psi), a), 1.0 / a);
        const double nk = std::pow(power_integral(momentum_density(psi), b), 1.0 / b);
        sum_x.add(mix.weights[i] * nx);
        sum_k.add(mix.weights[i] * nk);
        r.add_sub_check("component-" + std::to_string(i), nx, n_ab * nk, Sense::at_most, rel.tol);
    }
    r.add_sub_check("minkowski-position", lhs, sum_x.result(), Sense::at_most, rel.tol);
    r.add_sub_check("minkowski-momentum", sum_k.result(), nk_mix, Sense::at_most, rel.tol);
    r.add_diagnostic("beta", b);
    r.add_diagnostic("n_alpha_beta", n_ab);
    return r;
}

BoundReport riesz_check(const Matrix& t, const std::vector<cplx>& x, double nu) {
    auto rel = make_relation(RelationId::riesz);
    rel.nu = nu;
    rel.validate();
    if (static_cast<std::size_t>(t.cols()) != x.size() || t.rows() != t.cols()) {
        fail(ErrorCode::DimensionMismatch, "matrix and vector dimensions differ");
    }
    if (!is_unitary(t, 1e-10)) fail(ErrorCode::NotUnitary, "T must be unitary");
    const double mu = nu == 1.0 ? std::numeric_limits<double>::infinity() : nu / (nu - 1.0);
    const double c = t.cwiseAbs().maxCoeff();
    const Eigen::VectorXcd xv = to_vector(x);
    const Eigen::VectorXcd tx = t * xv;
    const double inv_mu = std::isinf(mu) ? 0.0 : 1.0 / mu;
    const double lhs = std::pow(c, inv_mu) * p_norm(xv, mu);
    const double rhs = std::pow(c, 1.0 / nu) * p_norm(tx, nu);
    std::ostringstream desc;
    desc << "vector D=" << x.size();
    auto r = make_report(rel, lhs, rhs, Sense::at_most, desc.str());
    r.add_diagnostic("mu", mu);
    r.add_diagnostic("c", c);
    return r;
}

BoundReport phase_space_check(const AnyState& state, const RelationSpec& relation) {
    std::vector<const GridWavefunction*> comps;
    std::vector<double> weights;
    if (const auto* g = std::get_if<GridWavefunction>(&state)) {
        comps.push_back(g);
        weights.push_back(1.0);
    } else if (const auto* m = std::get_if<MixtureState>(&state)) {
        m->validate();
        for (std::size_t i = 0; i < m->components.size(); ++i) {
            comps.push_back(&m->components[i]);
            weights.push_back(m->weights[i]);
        }
    } else {
        fail(ErrorCode::IncompatibleState,
             "phase-space check needs a grid or mixture state, got " + state_kind_name(state));
    }
    const GridSpec xg = comps.front()->grid;
    const std::size_t n = xg.n;
    if (n > kPhaseSpaceMaxPoints) {
        std::ostringstream os;
        os << "phase-space check is limited to " << kPhaseSpaceMaxPoints << " grid points, got " << n;
        fail(ErrorCode::InvalidSpec, os.str());
    }
    for (const auto* c : comps) {
        if (!c->grid.same_as(xg)) fail(ErrorCode::GridMismatch, "components on different grids");
    }
    const GridSpec kg = conjugate_grid(xg);

    // (a) compact-sum identity.
    const Densities d = densities_of(state, RelationId::shannon_binned);
    const auto bx = bin_position(d.x, relation.delta_x, relation.align_x);
    const auto bk = bin_momentum(d.k, relation.delta_k, relation.align_k);
    const double h_sum = shannon(bx).value + shannon(bk).value;
    PairwiseAccumulator acc;
    for (const auto& qi : bx.entries) {
        for (const auto& pj : bk.entries) {
            const double f = qi.probability * pj.probability;
            if (f > kProbabilityFloor) acc.add(-f * std::log(f));
        }
    }
    RelationSpec rel = relation;
    rel.id = RelationId::shannon_binned;
    rel.tol = 1e-10;
    auto r = make_report(rel, h_sum, acc.result(), Sense::equal, describe(state));

    // (b) f(x_a, k_b) = sum w psi(x_a) conj(psi~(k_b)).
    std::vector<std::vector<cplx>> tilde;
    for (const auto* c : comps) tilde.push_back(fourier_transform(*c).values);
    std::vector<cplx> f(n * n, 0.0);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (std::size_t a = 0; a < n; ++a) {
            const cplx pa = weights[c] * comps[c]->values[a];
            for (std::size_t b = 0; b < n; ++b) f[a * n + b] += pa * std::conj(tilde[c][b]);
        }
    }
    // f~(lambda, mu) = (2 pi)^-1 int dx e^{-i lambda x} int dk e^{-i k mu} f(x, k).
    std::vector<cplx> g(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        const std::span<const cplx> row(&f[a * n], n);
        const auto t = continuous_dft(row, kg, xg, -1);
        std::copy(t.begin(), t.end(), g.begin() + static_cast<long>(a * n));
    }
    std::vector<cplx> col(n);
    double sup_diff = 0.0, sup_f = 0.0;
    for (std::size_t mu = 0; mu < n; ++mu) {
        for (std::size_t a = 0; a < n; ++a) col[a] = g[a * n + mu];
        const auto t = continuous_dft(col, xg, kg, -1);  // t[lambda]
        for (std::size_t lam = 0; lam < n; ++lam) {
            const double lhs = std::abs(t[lam]);
            const double rhs = std::abs(f[mu * n + lam]);
            sup_diff = std::max(sup_diff, std::abs(lhs - rhs));
            sup_f = std::max(sup_f, rhs);
        }
    }
    r.add_sub_check("abs-f-equals-abs-f-tilde", sup_diff, 0.0, Sense::equal, 1e-6);
    r.add_diagnostic("sup_abs_f", sup_f);
    r.add_diagnostic("tail_mass_x", bx.tail_mass);
    r.add_diagnostic("tail_mass_k", bk.tail_mass);
    return r;
}

BoundReport deutsch_identity_check(const FiniteState& state, const Matrix& a, const Matrix& b) {
    state.validate();
    const auto pa = finite_probabilities(state, a).probabilities();
    const auto pb = finite_probabilities(state, b).probabilities();
    const double h = shannon_sum(pa) + shannon_sum(pb);
    PairwiseAccumulator acc;
    double min_q = std::numeric_limits<double>::infinity();
    for (double q : pa) {
        for (double p : pb) {
            if (q * p <= kProbabilityFloor) continue;
            const double qq = deutsch_q(q, p);
            acc.add(q * p * qq);
            min_q = std::min(min_q, qq);
        }
    }
    auto rel = make_relation(RelationId::deutsch);
    rel.tol = 1e-10;
    auto r = make_report(rel, h, acc.result(), Sense::equal, describe(AnyState{state}));
    const double c_b = overlap_C_B(a, b);
    r.add_sub_check("min-Q-at-least-deutsch", min_q, bound_deutsch(c_b, state.dim()),
                    Sense::at_least, 1e-10);
    r.add_diagnostic("C_B", c_b);
    r.add_diagnostic("min_Q", min_q);
    return r;
}

}  // namespace eurkit
