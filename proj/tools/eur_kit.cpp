// eur-kit: command-line front end for the eurkit library.
//
// Exit codes: 0 all satisfied, 1 usage or runtime error, 2 inequality violated.

#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eurkit/errors.hpp"
#include "eurkit/io.hpp"

namespace {

using namespace eurkit;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

struct Options {
    std::string state;
    std::string relation;
    std::string kind = "shannon";
    std::optional<double> alpha;
    std::optional<double> beta;
    double s = 0.0;
    std::optional<double> bin_x;
    std::optional<double> bin_k;
    double L = 1.0;
    double nu = 2.0;
    int bins = 8;
    std::size_t mub_count = 0;
    std::string side = "position";
    std::string align_x = "edge";
    std::string align_k = "centered";
    std::string basis = "dft";
    std::size_t basis_a = 0;
    std::size_t basis_b = 1;
    std::uint64_t basis_seed = 0;
    std::optional<double> tol;

    std::size_t dim = 4;
    std::size_t trials = 1000;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::string ensemble;
    double smoothness = 8.0;
    int window = 6;
    std::size_t components = 3;
    std::size_t grid_points = kDefaultGridPoints;

    std::string family = "gaussian";
    std::size_t restarts = 4;
    std::size_t max_evals = 600;

    std::string output;
    std::string format = "json";
    std::string plot_data;
};

using PlotRows = std::vector<std::pair<std::string, double>>;

std::uint64_t resolve_seed(const Options& o) {
    if (o.seed) return *o.seed;
    if (const char* env = std::getenv("EURKIT_SEED")) {
        try {
            std::size_t pos = 0;
            const auto v = std::stoull(env, &pos);
            if (pos == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        fail(ErrorCode::ParseError, std::string("EURKIT_SEED='") + env + "' is not an unsigned integer");
    }
    return 0;
}

RelationSpec relation_from(const Options& o) {
    if (o.relation.empty()) fail(ErrorCode::InvalidSpec, "--relation is required");
    RelationSpec r = make_relation(parse_relation(o.relation));
    if (o.alpha) {
        r.alpha = *o.alpha;
        r.beta = o.beta ? *o.beta : conjugate_exponent(*o.alpha);
    } else if (o.beta) {
        r.beta = *o.beta;
        r.alpha = conjugate_exponent(*o.beta);
    }
    r.s = o.s;
    if (o.bin_x) r.delta_x = *o.bin_x;
    if (o.bin_k) r.delta_k = *o.bin_k;
    r.L = o.L;
    r.nu = o.nu;
    r.n_bins = o.bins;
    r.mub_count = o.mub_count;
    r.side = parse_side(o.side);
    r.align_x = parse_bin_alignment(o.align_x);
    r.align_k = parse_bin_alignment(o.align_k);
    r.basis = parse_basis_choice(o.basis);
    r.basis_a = o.basis_a;
    r.basis_b = o.basis_b;
    r.basis_seed = o.basis_seed;
    if (o.tol) r.tol = *o.tol;
    r.validate();
    return r;
}

void emit(const Options& o, const std::string& json_text, const std::string& csv_text) {
    const std::string& text = o.format == "csv" ? csv_text : json_text;
    if (o.output.empty()) {
        std::cout << text;
    } else {
        write_text_file(o.output, text);
    }
}

void emit_plot(const Options& o, const PlotRows& rows) {
    if (o.plot_data.empty()) return;
    std::ostringstream os;
    os << "parameter,value\n";
    for (const auto& [k, v] : rows) os << k << ',' << format_number(v) << '\n';
    write_text_file(o.plot_data, os.str());
}

void emit_plot(const Options& o, const std::vector<std::pair<double, double>>& points) {
    if (!o.plot_data.empty()) write_text_file(o.plot_data, plot_csv(points));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- state ----------------------------------------------------------------

int cmd_state(const Options& o) {
    const auto src = parse_state_arg(o.state);
    if (!src.state) {
        fail(ErrorCode::IncompatibleState, "'" + src.descriptor + "' is a bare density and has no state file form");
    }
    const Json j = state_to_json(*src.state);
    std::ostringstream csv;
    csv << "kind,descriptor\n" << state_kind_name(*src.state) << ',' << src.descriptor << '\n';
    emit(o, dump(j), csv.str());
    return kExitOk;
}

// ---- entropy --------------------------------------------------------------

BinnedDistribution distribution_for(const StateSource& src, const Options& o, Side side) {
    const auto ax = parse_bin_alignment(o.align_x);
    const auto ak = parse_bin_alignment(o.align_k);
    if (src.density) {
        if (side != Side::position) {
            fail(ErrorCode::IncompatibleState, "a bare position density has no momentum side");
        }
        return bin_position(*src.density, o.bin_x.value_or(1.0), ax);
    }
    const AnyState& st = *src.state;
    if (const auto* f = std::get_if<FiniteState>(&st)) {
        const auto d = static_cast<Eigen::Index>(f->dim());
        const Matrix basis = side == Side::position ? Matrix(Matrix::Identity(d, d)) : dft_matrix(f->dim());
        return finite_probabilities(*f, basis);
    }
    if (const auto* c = std::get_if<CircleState>(&st)) {
        if (side == Side::position) return bin_angle(*c, o.bins);
        std::vector<double> p(c->coefficients.size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(c->coefficients[i]);
        return make_exact_distribution(std::move(p));
    }
    DensityGrid rho;
    if (const auto* g = std::get_if<GridWavefunction>(&st)) {
        rho = side == Side::position ? position_density(*g) : momentum_density(*g);
    } else {
        auto [x, k] = mixture_density(std::get<MixtureState>(st));
        rho = side == Side::position ? std::move(x) : std::move(k);
    }
    return side == Side::position ? bin_position(rho, o.bin_x.value_or(1.0), ax)
                                  : bin_momentum(rho, o.bin_k.value_or(2.0 * std::numbers::pi), ak);
}

DensityGrid continuous_density_for(const StateSource& src, Side side) {
    if (src.density) {
        if (side != Side::position) {
            fail(ErrorCode::IncompatibleState, "a bare position density has no momentum side");
        }
        return *src.density;
    }
    const AnyState& st = *src.state;
    if (const auto* g = std::get_if<GridWavefunction>(&st)) {
        return side == Side::position ? position_density(*g) : momentum_density(*g);
    }
    if (const auto* m = std::get_if<MixtureState>(&st)) {
        auto [x, k] = mixture_density(*m);
        return side == Side::position ? std::move(x) : std::move(k);
    }
    fail(ErrorCode::IncompatibleState, "continuous entropies need a grid or mixture state");
}

int cmd_entropy(const Options& o) {
    const auto src = parse_state_arg(o.state);
    const Side side = parse_side(o.side);
    const double alpha = o.alpha.value_or(1.0);
    EntropyValue e;
    std::optional<BinnedDistribution> dist;
    if (o.kind == "shannon" || o.kind == "renyi" || o.kind == "symmetrized") {
        dist = distribution_for(src, o, side);
        if (o.kind == "shannon") e = shannon(*dist);
        else if (o.kind == "renyi") e = renyi(*dist, alpha);
        else e = symmetrized(*dist, o.s);
    } else if (o.kind == "continuous-shannon" || o.kind == "continuous-renyi") {
        const auto rho = continuous_density_for(src, side);
        const double ref = side == Side::position ? o.L : 1.0 / o.L;
        e = o.kind == "continuous-shannon" ? continuous_shannon(rho, ref) : continuous_renyi(rho, alpha, ref);
    } else {
        fail(ErrorCode::InvalidSpec, "unknown entropy kind '" + o.kind +
                                         "' (shannon|renyi|symmetrized|continuous-shannon|continuous-renyi)");
    }
    Json j = to_json(e);
    j["side"] = side_name(side);
    j["state"] = src.descriptor;
    if (dist) j["tail_mass"] = round_sig(dist->tail_mass);
    std::ostringstream csv;
    csv << "kind,side,value\n" << entropy_kind_name(e.kind) << ',' << side_name(side) << ','
        << format_number(e.value) << '\n';
    emit(o, dump(j), csv.str());

    if (dist) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& b : dist->entries) {
            pts.emplace_back(dist->exact_count ? static_cast<double>(b.index) : dist->center(b.index),
                             b.probability);
        }
        emit_plot(o, pts);
    }
    return kExitOk;
}

// ---- bound ----------------------------------------------------------------

double bound_value(const RelationSpec& r, const Options& o, Json& extra) {
    switch (r.id) {
        case RelationId::shannon_binned: return bound_shannon_binned(r.delta_x, r.delta_k);
        case RelationId::renyi_binned: return bound_renyi_binned(r.alpha, r.beta, r.delta_x, r.delta_k);
        case RelationId::symmetrized_binned: return bound_symmetrized_binned(r.s, r.delta_x, r.delta_k);
        case RelationId::shannon_continuous: return bound_continuous(1.0, 1.0);
        case RelationId::renyi_continuous: return bound_continuous(r.alpha, r.beta);
        case RelationId::angle_momentum: return bound_angle(r.n_bins);
        case RelationId::babenko_beckner:
        case RelationId::mixed_babenko_beckner: return bb_constant(r.alpha, r.beta);
        case RelationId::deutsch:
        case RelationId::maassen_uffink:
        case RelationId::renyi_finite: {
            auto [a, b] = basis_pair(r, o.dim);
            const double c = overlap_C_B(a, b);
            extra["C_B"] = round_sig(c);
            return r.id == RelationId::deutsch ? bound_deutsch(c, o.dim) : bound_maassen_uffink(c, o.dim);
        }
        case RelationId::mub_sum_pairwise:
        case RelationId::mub_sum_sanchez:
        case RelationId::mub_sum_refined: {
            const std::size_t m = r.mub_count == 0 ? o.dim + 1 : r.mub_count;
            const MubVariant v = r.id == RelationId::mub_sum_pairwise  ? MubVariant::pairwise
                                 : r.id == RelationId::mub_sum_sanchez ? MubVariant::sanchez
                                                                       : MubVariant::refined;
            extra["M"] = m;
            extra["D"] = o.dim;
            return bound_mub_sum(m, o.dim, v);
        }
        case RelationId::log_sobolev:
        case RelationId::inverse_log_sobolev:
        case RelationId::refined_heisenberg:
        case RelationId::riesz:
            break;
    }
    fail(ErrorCode::IncompatibleState,
         relation_name(r.id) + " has a state-dependent right-hand side; use 'check'");
}

int cmd_bound(const Options& o) {
    const auto r = relation_from(o);
    Json extra = Json::object();
    const double v = bound_value(r, o, extra);
    Json j = {{"relation", to_json(r)}, {"rhs", round_sig(v)}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    std::ostringstream csv;
    csv << "relation,rhs\n" << relation_name(r.id) << ',' << format_number(v) << '\n';
    emit(o, dump(j), csv.str());

    if (!o.plot_data.empty()) {
        // Sweep the natural parameter of the relation.
        std::vector<std::pair<double, double>> pts;
        RelationSpec sweep = r;
        Json unused;
        if (uses_alpha(r.id)) {
            const double lo = r.id == RelationId::babenko_beckner || r.id == RelationId::mixed_babenko_beckner
                                  ? 1.0 : 0.55;
            for (int i = 0; i <= 100; ++i) {
                sweep.alpha = lo + (5.0 - lo) * i / 100.0;
                sweep.beta = conjugate_exponent(sweep.alpha);
                pts.emplace_back(sweep.alpha, bound_value(sweep, o, unused));
            }
        } else if (r.id == RelationId::shannon_binned || r.id == RelationId::symmetrized_binned) {
            for (int i = 1; i <= 100; ++i) {
                sweep.delta_x = r.delta_x * i / 25.0;
                pts.emplace_back(sweep.delta_x * sweep.delta_k / (2.0 * std::numbers::pi),
                                 bound_value(sweep, o, unused));
            }
        } else {
            pts.emplace_back(0.0, v);
        }
        emit_plot(o, pts);
    }
    return kExitOk;
}

// ---- check ----------------------------------------------------------------

PlotRows report_rows(const BoundReport& r) {
    PlotRows rows{{"lhs", r.lhs}, {"rhs", r.rhs}, {"margin", r.margin}};
    for (const auto& d : r.diagnostics) rows.push_back(d);
    for (const auto& sc : r.sub_checks) rows.emplace_back(sc.name + ".margin", sc.margin);
    return rows;
}

int cmd_check(const Options& o) {
    const auto src = parse_state_arg(o.state);
    auto r = relation_from(o);
    BoundReport rep = src.density ? check_density(*src.density, r, src.descriptor)
                                  : check(*src.state, r, src.descriptor);
    emit(o, dump(to_json(rep)), reports_csv({rep}));
    emit_plot(o, report_rows(rep));
    return rep.satisfied ? kExitOk : kExitViolation;
}

// ---- stress ---------------------------------------------------------------

EnsembleKind default_ensemble(RelationId id) {
    switch (id) {
        case RelationId::deutsch:
        case RelationId::maassen_uffink:
        case RelationId::renyi_finite:
        case RelationId::riesz:
        case RelationId::mub_sum_pairwise:
        case RelationId::mub_sum_sanchez:
        case RelationId::mub_sum_refined: return EnsembleKind::finite_haar;
        case RelationId::angle_momentum: return EnsembleKind::circle_window;
        case RelationId::babenko_beckner:
        case RelationId::mixed_babenko_beckner: return EnsembleKind::mixture;
        default: return EnsembleKind::grid_smooth;
    }
}

int cmd_stress(const Options& o) {
    const auto r = relation_from(o);
    RandomEnsembleSpec e;
    e.kind = o.ensemble.empty() ? default_ensemble(r.id) : parse_ensemble_kind(o.ensemble);
    e.dim = o.dim;
    e.grid_points = o.grid_points;
    e.smoothness = o.smoothness;
    e.m_window = o.window;
    e.components = o.components;
    e.seed = resolve_seed(o);
    const auto s = stress(r, e, o.trials, o.threads);
    std::ostringstream csv;
    csv << "relation,ensemble,trials,violations,errors,min_margin\n"
        << relation_name(r.id) << ',' << ensemble_kind_name(e.kind) << ',' << s.trials << ','
        << s.violations << ',' << s.errors << ',' << format_number(s.min_margin) << '\n';
    emit(o, dump(to_json(s)), csv.str());
    emit_plot(o, PlotRows{{"trials", static_cast<double>(s.trials)},
                          {"violations", static_cast<double>(s.violations)},
                          {"errors", static_cast<double>(s.errors)},
                          {"min_margin", s.min_margin}});
    for (const auto& m : s.error_messages) std::cerr << "trial error: " << m << '\n';
    if (s.violations > 0) return kExitViolation;
    return s.errors > 0 ? kExitError : kExitOk;
}

// ---- probe ----------------------------------------------------------------

int cmd_probe(const Options& o) {
    const auto r = relation_from(o);
    ProbeFamilySpec f;
    f.family = parse_probe_family(o.family);
    f.dim = o.dim;
    f.m_window = o.window;
    if (o.grid_points != kDefaultGridPoints) f.grid_points = o.grid_points;
    OptimizerConfig cfg;
    cfg.restarts = o.restarts;
    cfg.max_evals = o.max_evals;
    cfg.seed = resolve_seed(o);
    const auto p = probe_tightness(r, f, cfg, o.threads);
    std::ostringstream csv;
    csv << "relation,family,best_lhs,rhs,gap,evaluations,status\n"
        << relation_name(r.id) << ',' << probe_family_name(f.family) << ',' << format_number(p.best_lhs)
        << ',' << format_number(p.rhs) << ',' << format_number(p.gap) << ',' << p.evaluations << ','
        << (p.status == ProbeStatus::converged ? "converged" : "budget-exceeded") << '\n';
    emit(o, dump(to_json(p)), csv.str());
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < p.best_params.size(); ++i) pts.emplace_back(static_cast<double>(i), p.best_params[i]);
    emit_plot(o, pts);
    if (p.status == ProbeStatus::budget_exceeded) {
        std::cerr << "note: evaluation budget exhausted before the simplex converged; best-so-far reported\n";
    }
    return p.violation ? kExitViolation : kExitOk;
}

// ---- suite ----------------------------------------------------------------

int cmd_suite(const Options& o) {
    const auto rows = saturation_suite();
    Json j = Json::array();
    std::vector<BoundReport> reports;
    std::vector<std::pair<double, double>> pts;
    bool all = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        j.push_back(to_json(rows[i]));
        reports.push_back(rows[i].report);
        pts.emplace_back(static_cast<double>(i), rows[i].report.margin);
        all = all && rows[i].passed;
    }
    emit(o, dump(j), reports_csv(reports));
    emit_plot(o, pts);
    return all ? kExitOk : kExitViolation;
}

// ---- relations ------------------------------------------------------------

int cmd_relations(const Options& o) {
    Json j = Json::array();
    std::ostringstream csv;
    csv << "relation,parameters\n";
    for (auto id : all_relations()) {
        Json params = Json::array();
        csv << relation_name(id) << ',';
        bool first = true;
        for (const auto& p : relation_parameters(id)) {
            params.push_back({{"name", p.name}, {"description", p.description}});
            csv << (first ? "" : ";") << p.name;
            first = false;
        }
        csv << '\n';
        j.push_back({{"relation", relation_name(id)},
                     {"default_tol", default_tolerance(id)},
                     {"parameters", params}});
    }
    emit(o, dump(j), csv.str());
    return kExitOk;
}

void add_relation_flags(CLI::App* c, Options& o) {
    c->add_option("--relation,-r", o.relation, "relation id (see 'relations')")->required();
    c->add_option("--alpha", o.alpha, "Renyi order; beta defaults to the conjugate");
    c->add_option("--beta", o.beta, "conjugate order");
    c->add_option("--s", o.s, "symmetrization parameter in [0, 1)");
    c->add_option("--bin-x", o.bin_x, "position bin width");
    c->add_option("--bin-k", o.bin_k, "wave-vector bin width");
    c->add_option("--L", o.L, "reference length");
    c->add_option("--nu", o.nu, "riesz norm exponent");
    c->add_option("--bins", o.bins, "angle bins N");
    c->add_option("--mub-count", o.mub_count, "number of bases M (0: D + 1)");
    c->add_option("--side", o.side, "position|momentum");
    c->add_option("--align-x", o.align_x, "position bins: centered|edge");
    c->add_option("--align-k", o.align_k, "momentum bins: centered|edge");
    c->add_option("--basis", o.basis, "dft|mub|random-haar");
    c->add_option("--basis-a", o.basis_a, "first basis index (mub)");
    c->add_option("--basis-b", o.basis_b, "second basis index (mub)");
    c->add_option("--basis-seed", o.basis_seed, "seed of the random-haar basis");
    c->add_option("--tol", o.tol, "margin tolerance");
}

void add_output_flags(CLI::App* c, Options& o) {
    c->add_option("--output,-o", o.output, "write the result here instead of stdout");
    c->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--plot-data", o.plot_data, "write two-column CSV (parameter,value)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eur-kit: entropic uncertainty relations toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* st = app.add_subcommand("state", "build a state and print it as JSON");
    st->add_option("--state", o.state, "named:NAME,key=value,... or a state file")->required();
    add_output_flags(st, o);

    auto* en = app.add_subcommand("entropy", "entropy of a state's distribution");
    en->add_option("--state", o.state, "named:NAME,key=value,... or a state file")->required();
    en->add_option("--kind", o.kind, "shannon|renyi|symmetrized|continuous-shannon|continuous-renyi");
    en->add_option("--alpha", o.alpha, "Renyi order");
    en->add_option("--s", o.s, "symmetrization parameter");
    en->add_option("--bin-x", o.bin_x, "position bin width (default 1)");
    en->add_option("--bin-k", o.bin_k, "wave-vector bin width (default 2 pi)");
    en->add_option("--bins", o.bins, "angle bins for circle states");
    en->add_option("--L", o.L, "reference length for continuous entropies");
    en->add_option("--side", o.side, "position|momentum");
    en->add_option("--align-x", o.align_x, "centered|edge");
    en->add_option("--align-k", o.align_k, "centered|edge");
    add_output_flags(en, o);

    auto* bo = app.add_subcommand("bound", "evaluate a state-independent bound");
    add_relation_flags(bo, o);
    bo->add_option("--dim", o.dim, "Hilbert-space dimension for finite relations");
    add_output_flags(bo, o);

    auto* ch = app.add_subcommand("check", "check one relation on one state");
    ch->add_option("--state", o.state, "named:NAME,key=value,... or a state file")->required();
    add_relation_flags(ch, o);
    add_output_flags(ch, o);

    auto* sr = app.add_subcommand("stress", "check a relation on seeded random states");
    add_relation_flags(sr, o);
    sr->add_option("--ensemble", o.ensemble, "finite-haar|grid-smooth|circle-window|mixture");
    sr->add_option("--dim", o.dim, "dimension (finite-haar)");
    sr->add_option("--trials", o.trials, "number of trials");
    sr->add_option("--seed", o.seed, "master seed (fallback: EURKIT_SEED)");
    sr->add_option("--threads", o.threads, "worker threads");
    sr->add_option("--smoothness", o.smoothness, "Hermite modes (grid-smooth)");
    sr->add_option("--window", o.window, "m window W (circle-window)");
    sr->add_option("--components", o.components, "mixture components");
    sr->add_option("--grid-points", o.grid_points, "grid size (grid-smooth, mixture)");
    add_output_flags(sr, o);

    auto* pr = app.add_subcommand("probe", "search a state family for the smallest margin");
    add_relation_flags(pr, o);
    pr->add_option("--family", o.family, "gaussian|finite|circle");
    pr->add_option("--dim", o.dim, "dimension (finite family)");
    pr->add_option("--window", o.window, "m window W (circle family)");
    pr->add_option("--restarts", o.restarts, "simplex restarts");
    pr->add_option("--max-evals", o.max_evals, "evaluations per restart");
    pr->add_option("--seed", o.seed, "master seed (fallback: EURKIT_SEED)");
    pr->add_option("--threads", o.threads, "worker threads");
    pr->add_option("--grid-points", o.grid_points, "grid size (gaussian family)");
    add_output_flags(pr, o);

    auto* su = app.add_subcommand("suite", "run the saturation suite");
    add_output_flags(su, o);

    auto* rl = app.add_subcommand("relations", "list relations and their parameters");
    add_output_flags(rl, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (st->parsed()) return cmd_state(o);
        if (en->parsed()) return cmd_entropy(o);
        if (bo->parsed()) return cmd_bound(o);
        if (ch->parsed()) return cmd_check(o);
        if (sr->parsed()) return cmd_stress(o);
        if (pr->parsed()) return cmd_probe(o);
        if (su->parsed()) return cmd_suite(o);
        if (rl->parsed()) return cmd_relations(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
