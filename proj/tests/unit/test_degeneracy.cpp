#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "../support/oracles.hpp"
#include "mixsing/degeneracy.hpp"
#include "mixsing/parser.hpp"
#include "mixsing/torus_search.hpp"

using namespace mixsing;
using mixsing::testing::torus_grid_minimum;

namespace {

const char* kConvenient = "~z2^4 + z1*z2^2 + z1^2*~z1";
const char* kQuadratic = "z1*~z1 - z2*~z2 + 0.5i*(z1^2 + ~z1^2 + z2^2 + ~z2^2)";

SearchConfig quick_config() {
    SearchConfig cfg;
    cfg.multistarts = 64;
    cfg.grid_per_dim = 8;
    return cfg;
}

}  // namespace

TEST(MonomialRule, Examples) {
    EXPECT_EQ(monomial_rule(parse_mixed("z1^2*~z1", 1)).status, FaceStatus::proven_nondegenerate);
    const auto m = monomial_rule(parse_mixed("z1*~z1", 1));
    EXPECT_EQ(m.status, FaceStatus::proven_degenerate);
    EXPECT_EQ(m.lambda, Complex(1, 0));
    const Complex c(1, 2);
    const auto f = parse_mixed("(1+2i)*z1^2*~z1^2*z2*~z2", 2);
    const auto v = monomial_rule(f);
    EXPECT_EQ(v.status, FaceStatus::proven_degenerate);
    EXPECT_NEAR(std::abs(v.lambda - std::conj(c) / c), 0.0, 1e-15);
    EXPECT_LT(torus_grid_minimum(f, 50, 4), 1e-9);
    EXPECT_THROW(monomial_rule(parse_mixed("z1 + z2", 2)), std::invalid_argument);
}

TEST(MonomialRule, PhaseInvariance) {
    // The residual of a monomial only depends on the moduli; this is what lets the
    // grid oracle below use few phases.
    const auto f = parse_mixed("(0.3-1i)*z1^3*~z1*~z2^2", 2);
    for (int k = 0; k < 20; ++k) {
        const ComplexVector a{std::polar(0.7, 0.0), std::polar(1.9, 0.0)};
        const ComplexVector b{std::polar(0.7, 0.37 * k), std::polar(1.9, -1.1 * k)};
        EXPECT_NEAR(criticality_residual(f, a), criticality_residual(f, b), 1e-12);
    }
}

TEST(MonomialRule, AgreesWithTorusGrid) {
    int checked = 0;
    for (int n = 1; n <= 2; ++n) {
        const int combos = 1 << (4 * n);  // each of ν_i, μ_i in 0..3
        for (int code = 1; code < combos; ++code) {
            Exponents nu(n), mu(n);
            int c = code;
            for (int i = 0; i < n; ++i) {
                nu[i] = c & 3;
                c >>= 2;
                mu[i] = c & 3;
                c >>= 2;
            }
            const auto f = MixedPolynomial::monomial(n, Complex(0.6, -0.8), nu, mu);
            const auto rule = monomial_rule(f).status;
            const double grid = torus_grid_minimum(f, 64, n == 1 ? 64 : 3);
            if (rule == FaceStatus::proven_degenerate)
                EXPECT_LT(grid, 1e-6) << to_string(f);
            else
                EXPECT_GT(grid, 1e-6) << to_string(f);
            ++checked;
        }
    }
    EXPECT_EQ(checked, 15 + 255);
}

TEST(Search, NondegenerateEdges) {
    SearchConfig cfg;
    auto v = search_torus_critical_points(parse_mixed("~z2^4 + z1*z2^2", 2), cfg, WeightVector({2, 1}));
    EXPECT_EQ(v.status, FaceStatus::no_critical_point_found);
    EXPECT_GT(v.min_residual_seen, cfg.tol_floor);
    EXPECT_FALSE(v.low_margin);
    v = search_torus_critical_points(parse_mixed("~z1^2*z2^3 + z1^3*~z2^2", 2), cfg);
    EXPECT_EQ(v.status, FaceStatus::no_critical_point_found);
    EXPECT_GT(v.min_residual_seen, cfg.tol_floor);
}

TEST(Search, ModulusEliminationOracle) {
    // For z̄₁²z₂³ + z₁³z̄₂² the modulus equations read 3r₁ = 2r₂ and 3r₂ = 2r₁
    // after cancelling common factors; no positive solution exists, so a dense
    // grid must stay bounded away from zero too.
    const auto f = parse_mixed("~z1^2*z2^3 + z1^3*~z2^2", 2);
    EXPECT_GT(torus_grid_minimum(f, 24, 24), 1e-3);
}

TEST(Search, FindsEverywhereCriticalMonomial) {
    SearchConfig cfg = quick_config();
    cfg.use_monomial_rule = false;
    const auto v = search_torus_critical_points(parse_mixed("z1*~z1", 1), cfg);
    ASSERT_EQ(v.status, FaceStatus::critical_point_found);
    ASSERT_TRUE(v.witness);
    EXPECT_LT(v.witness->residual, 1e-9);
    EXPECT_NEAR(std::abs(v.witness->lambda - Complex(1, 0)), 0.0, 1e-8);
    EXPECT_GE(std::abs(v.witness->z[0]), cfg.r_min * (1 - 1e-12));
    EXPECT_LE(std::abs(v.witness->z[0]), cfg.r_max * (1 + 1e-12));
    // Witness invariant: the λ-equation holds to the residual's scale.
    EXPECT_LT(v.witness->lambda_residual, 1e-8);
}

TEST(Search, FindsIsolatedCriticalOrbit) {
    // g = |z₁|² − |z₂|² and h = Re(z₁² + z₂²): dg ∥ dh exactly when z₁ is real and
    // z₂ imaginary (or the other way round), a thin subset of the torus.
    const auto f = parse_mixed(kQuadratic, 2);
    const auto v = search_torus_critical_points(f, quick_config(), WeightVector({1, 1}));
    ASSERT_EQ(v.status, FaceStatus::critical_point_found);
    const auto& z = v.witness->z;
    const double a = std::abs(std::sin(std::arg(z[0]))), b = std::abs(std::cos(std::arg(z[1])));
    const double c = std::abs(std::cos(std::arg(z[0]))), d = std::abs(std::sin(std::arg(z[1])));
    EXPECT_LT(std::min(std::max(a, b), std::max(c, d)), 1e-6);
}

TEST(Search, WeightedScalingReaccepts) {
    const auto f = parse_mixed(kQuadratic, 2);
    SearchConfig cfg = quick_config();
    const auto v = search_torus_critical_points(f, cfg, WeightVector({1, 1}));
    ASSERT_EQ(v.status, FaceStatus::critical_point_found);
    const auto& z = v.witness->z;
    const TorusObjective obj(f, IndexSet::full(2));
    for (double t : {0.5, 2.0}) {
        ComplexVector zt{t * z[0], t * z[1]};
        RefineOptions opt;
        const auto r = refine_critical(obj, TorusObjective::coordinates(zt), opt);
        EXPECT_LT(r.value, cfg.tol_accept) << t;
    }
}

TEST(Search, DeterministicAcrossPolicies) {
    const auto f = parse_mixed(kQuadratic, 2);
    SearchConfig a = quick_config();
    a.seed = 42;
    SearchConfig b = a;
    a.policy = ExecPolicy::serial;
    b.policy = ExecPolicy::parallel;
    const auto va = search_torus_critical_points(f, a, WeightVector({1, 1}));
    const auto vb = search_torus_critical_points(f, b, WeightVector({1, 1}));
    EXPECT_EQ(va.status, vb.status);
    EXPECT_EQ(std::memcmp(&va.min_residual_seen, &vb.min_residual_seen, sizeof(double)), 0);
    ASSERT_EQ(va.witness.has_value(), vb.witness.has_value());
    if (va.witness) {
        for (int i = 0; i < 2; ++i) {
            EXPECT_EQ(va.witness->z[i].real(), vb.witness->z[i].real());
            EXPECT_EQ(va.witness->z[i].imag(), vb.witness->z[i].imag());
        }
    }
    SearchConfig c = a;
    c.seed = 43;
    const auto vc = search_torus_critical_points(f, c, WeightVector({1, 1}));
    EXPECT_EQ(vc.status, va.status);
}

TEST(Search, InvalidConfig) {
    SearchConfig cfg;
    cfg.r_min = 0;
    EXPECT_THROW(search_torus_critical_points(parse_mixed("z1", 1), cfg), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.tol_accept = 1e-2;
    EXPECT_THROW(search_torus_critical_points(parse_mixed("z1", 1), cfg), std::invalid_argument);
}

TEST(StrongNondegeneracy, ConvenientExample) {
    const auto report = check_strong_nondegeneracy(parse_mixed(kConvenient, 2), SearchConfig{});
    ASSERT_EQ(report.faces.size(), 5u);
    EXPECT_TRUE(report.passes);
    int proven = 0, searched = 0;
    for (const auto& v : report.faces) {
        if (v.face.dim == 0) {
            EXPECT_EQ(v.status, FaceStatus::proven_nondegenerate);
            ++proven;
        } else {
            EXPECT_EQ(v.status, FaceStatus::no_critical_point_found);
            EXPECT_GT(v.min_residual_seen, 1e-3);
            EXPECT_GE(v.starts, 512);
            ++searched;
        }
    }
    EXPECT_EQ(proven, 3);
    EXPECT_EQ(searched, 2);
}

TEST(StrongNondegeneracy, FamilyMember) {
    const auto report = check_strong_nondegeneracy(parse_mixed("~z1^2*z2^3 + z1^3*~z2^2 + 0.5*z1^2*z2^4", 2),
                                                   SearchConfig{});
    EXPECT_TRUE(report.passes);
    EXPECT_EQ(report.faces.size(), 3u);
}

TEST(StrongNondegeneracy, SumOfSquaredModuliFails) {
    const auto report = check_strong_nondegeneracy(parse_mixed("z1*~z1 + z2*~z2", 2), quick_config());
    EXPECT_FALSE(report.passes);
    EXPECT_EQ(report.worst, FaceStatus::proven_degenerate);
    EXPECT_EQ(report.faces[0].status, FaceStatus::proven_degenerate);
}

TEST(StrongNondegeneracy, RestrictionStability) {
    for (const char* text : {kConvenient, "~z1^2*z2^3 + z1^3*~z2^2 + 0.5*z1^2*z2^4", "z1^3 + z2^2 + z1*~z2^2"}) {
        const auto f = parse_mixed(text, 2);
        const SearchConfig cfg = quick_config();
        ASSERT_TRUE(check_strong_nondegeneracy(f, cfg).passes) << text;
        for (const auto I : classify_subspaces(f).nonvanishing) {
            if (I.empty()) continue;
            const auto g = compact_variables(restrict_to(f, I), I);
            EXPECT_TRUE(check_strong_nondegeneracy(g, cfg).passes) << text << " on " << I.to_string();
        }
    }
}
