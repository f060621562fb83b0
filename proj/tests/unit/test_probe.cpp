#include <doctest.h>

#include <cmath>
#include <limits>

#include "eurkit/errors.hpp"
#include "eurkit/probe.hpp"

using namespace eurkit;

TEST_CASE("family parameter counts and states") {
    ProbeFamilySpec g;
    CHECK(probe_parameter_count(g) == 3);
    ProbeFamilySpec f{ProbeFamily::finite, 4};
    CHECK(probe_parameter_count(f) == 8);
    ProbeFamilySpec c{ProbeFamily::circle, 3, 2};
    CHECK(probe_parameter_count(c) == 10);
    const auto s = probe_state(f, {1, 0, 0, 0, 0, 0, 0, 0});
    CHECK(std::get<FiniteState>(s).amplitudes[0] == cplx(1.0, 0.0));
    CHECK_THROWS_AS(probe_state(f, {1.0}), Error);
    CHECK(parse_probe_family("circle") == ProbeFamily::circle);
}

TEST_CASE("probe is deterministic for a seed and independent of threads") {
    OptimizerConfig cfg;
    cfg.seed = 5;
    cfg.restarts = 3;
    cfg.max_evals = 150;
    ProbeFamilySpec f{ProbeFamily::finite, 3};
    const auto rel = make_relation(RelationId::maassen_uffink);
    const auto a = probe_tightness(rel, f, cfg, 1);
    const auto b = probe_tightness(rel, f, cfg, 3);
    CHECK(a.gap == b.gap);
    CHECK(a.best_params == b.best_params);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("Renyi finite relation is tight at MUB basis vectors") {
    auto rel = make_relation(RelationId::renyi_finite, 2.0);
    rel.basis = BasisChoice::mub;
    OptimizerConfig cfg;
    cfg.seed = 1;
    const auto p = probe_tightness(rel, {ProbeFamily::finite, 3}, cfg);
    CHECK(p.gap < 1e-6);
    CHECK_FALSE(p.violation);
}

TEST_CASE("continuous Shannon relation is tight over Gaussians") {
    OptimizerConfig cfg;
    cfg.seed = 1;
    cfg.restarts = 1;
    cfg.max_evals = 40;
    ProbeFamilySpec g;
    g.grid_points = 4096;
    const auto p = probe_tightness(make_relation(RelationId::shannon_continuous), g, cfg);
    CHECK(std::abs(p.gap) < 1e-5);
}

TEST_CASE("binned Shannon probe does at least as well as a grid scan") {
    const auto rel = make_relation(RelationId::shannon_binned);
    ProbeFamilySpec g;
    g.grid_points = 4096;
    double scan_min = std::numeric_limits<double>::infinity();
    const int n = 7;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                auto u = [n](int t) { return -3.0 + 6.0 * t / (n - 1); };
                const auto r = check(probe_state(g, {u(i), u(j), u(k)}), rel);
                scan_min = std::min(scan_min, r.margin);
            }
    OptimizerConfig cfg;
    cfg.seed = 1;
    const auto p = probe_tightness(rel, g, cfg);
    MESSAGE("scan minimum margin " << scan_min << ", probe gap " << p.gap);
    CHECK(p.gap <= scan_min + 1e-9);
    CHECK(p.gap > 0.0);
}

TEST_CASE("invalid optimizer configuration") {
    OptimizerConfig cfg;
    cfg.restarts = 0;
    CHECK_THROWS_AS(probe_tightness(make_relation(RelationId::deutsch), {ProbeFamily::finite, 2}, cfg), Error);
}
