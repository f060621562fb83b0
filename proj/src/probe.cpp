#include "eurkit/probe.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "eurkit/errors.hpp"

namespace eurkit {

namespace {

constexpr double kPenalty = 1e10;

double squash(double p, double lo, double hi) { return lo + 0.5 * (hi - lo) * (1.0 + std::tanh(p)); }

struct Objective {
    const RelationSpec* relation;
    const ProbeFamilySpec* family;
    std::size_t evals = 0;
    double best = std::numeric_limits<double>::infinity();
    double best_lhs = 0.0;
    double best_rhs = 0.0;
    std::vector<double> best_params;
};

double evaluate(const gsl_vector* v, void* ctx) {
    auto* obj = static_cast<Objective*>(ctx);
    ++obj->evals;
    std::vector<double> p(v->size);
    for (std::size_t i = 0; i < v->size; ++i) p[i] = gsl_vector_get(v, i);
    try {
        const auto r = check(probe_state(*obj->family, p), *obj->relation, "probe");
        double m = r.margin;
        for (const auto& sc : r.sub_checks) m = std::min(m, sc.margin);
        if (m < obj->best) {
            obj->best = m;
            obj->best_lhs = r.lhs;
            obj->best_rhs = r.rhs;
            obj->best_params = p;
        }
        return m;
    } catch (const std::exception&) {
        return kPenalty;
    }
}

struct RestartResult {
    Objective obj;
    bool converged = false;
};

RestartResult run_restart(const RelationSpec& relation, const ProbeFamilySpec& family,
                          const OptimizerConfig& cfg, std::size_t restart) {
    RestartResult out{Objective{&relation, &family, 0, std::numeric_limits<double>::infinity(), 0.0,
                                0.0, {}},
                      false};
    const std::size_t n = probe_parameter_count(family);
    auto rng = trial_rng(cfg.seed, restart);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    gsl_vector* x = gsl_vector_alloc(n);
    gsl_vector* step = gsl_vector_alloc(n);
    for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x, i, u(rng));
    gsl_vector_set_all(step, cfg.initial_step);

    gsl_multimin_function fn{&evaluate, n, &out.obj};
    gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
    gsl_multimin_fminimizer_set(s, &fn, x, step);
    while (out.obj.evals < cfg.max_evals) {
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), cfg.tol) == GSL_SUCCESS) {
            out.converged = true;
            break;
        }
    }
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(step);
    gsl_vector_free(x);
    return out;
}

}  // namespace

std::string probe_family_name(ProbeFamily f) {
    switch (f) {
        case ProbeFamily::gaussian: return "gaussian";
        case ProbeFamily::finite: return "finite";
        case ProbeFamily::circle: return "circle";
    }
    return "?";
}

ProbeFamily parse_probe_family(const std::string& name) {
    for (auto f : {ProbeFamily::gaussian, ProbeFamily::finite, ProbeFamily::circle}) {
        if (probe_family_name(f) == name) return f;
    }
    fail(ErrorCode::InvalidSpec, "unknown probe family '" + name + "'");
}

std::size_t probe_parameter_count(const ProbeFamilySpec& family) {
    switch (family.family) {
        case ProbeFamily::gaussian: return 3;
        case ProbeFamily::finite: return 2 * family.dim;
        case ProbeFamily::circle: return 2 * static_cast<std::size_t>(2 * family.m_window + 1);
    }
    return 0;
}

AnyState probe_state(const ProbeFamilySpec& family, const std::vector<double>& p) {
    if (p.size() != probe_parameter_count(family)) {
        fail(ErrorCode::InvalidSpec, "wrong number of family parameters");
    }
    switch (family.family) {
        case ProbeFamily::gaussian:
            return gaussian_state(squash(p[0], 0.5, 2.0), squash(p[1], -3.0, 3.0),
                                  squash(p[2], -2.0, 2.0), balanced_grid(family.grid_points));
        case ProbeFamily::finite: {
            FiniteState s{std::vector<cplx>(family.dim)};
            for (std::size_t i = 0; i < family.dim; ++i) s.amplitudes[i] = {p[2 * i], p[2 * i + 1]};
            return normalize(s);
        }
        case ProbeFamily::circle: {
            CircleState s{-family.m_window, std::vector<cplx>(2 * family.m_window + 1)};
            for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
                s.coefficients[i] = {p[2 * i], p[2 * i + 1]};
            }
            return normalize(s);
        }
    }
    fail(ErrorCode::InvalidSpec, "unknown probe family");
}

ProbeResult probe_tightness(const RelationSpec& relation, const ProbeFamilySpec& family,
                            const OptimizerConfig& cfg, unsigned threads) {
    relation.validate();
    if (cfg.restarts < 1 || cfg.max_evals < 1) {
        fail(ErrorCode::InvalidSpec, "optimizer needs at least one restart and one evaluation");
    }
    gsl_set_error_handler_off();
    std::vector<RestartResult> results(cfg.restarts);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= cfg.restarts) return;
            results[r] = run_restart(relation, family, cfg, r);
        }
    };
    const unsigned n_threads =
        std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfg.restarts)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ProbeResult out;
    out.relation = relation;
    out.family = family;
    out.gap = std::numeric_limits<double>::infinity();
    bool any_converged = false;
    for (std::size_t r = 0; r < results.size(); ++r) {
        const auto& o = results[r].obj;
        out.evaluations += o.evals;
        any_converged = any_converged || results[r].converged;
        if (o.best < out.gap) {
            out.gap = o.best;
            out.best_lhs = o.best_lhs;
            out.rhs = o.best_rhs;
            out.best_params = o.best_params;
            out.best_restart = r;
        }
    }
    if (out.best_params.empty()) {
        fail(ErrorCode::InvalidState, "no probe evaluation produced a valid state");
    }
    out.status = any_converged ? ProbeStatus::converged : ProbeStatus::budget_exceeded;
    out.violation = out.gap < -relation.tol;
    return out;
}

}  // namespace eurkit
