#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>
#include <set>

#include "mixsing/family.hpp"
#include "mixsing/parser.hpp"
#include "../support/random_poly.hpp"

using namespace mixsing;

namespace {

const char* kPhaseFamily = "~z1^2*z2^3 + z1^3*~z2^2 + t*z1^2*z2^4";
const char* kShiftedFamily = "~z1^2*z2^3 + z1^3*~z2^2 + (1+t)*z1^3*~z2^3";
const char* kConvenient = "~z2^4 + z1*z2^2 + z1^2*~z1";
const char* kHoloConvenient = "z1^2 + z2^3 + t*z1*z2^2";

std::set<LatticePoint> support(const MixedPolynomial& f) {
    std::set<LatticePoint> out;
    for (const auto& [key, c] : f.terms()) out.insert(key.support_point());
    return out;
}

AdmissibilityConfig small_config() {
    AdmissibilityConfig cfg;
    cfg.sampling.rings = 2;
    cfg.sampling.angles_per_ring = 4;
    cfg.search.multistarts = 128;
    cfg.smoothness_samples = 100;
    return cfg;
}

}  // namespace

TEST(FamilyPolynomial, ParseAndPrint) {
    const auto F = parse_family(kPhaseFamily, 2);
    EXPECT_EQ(F.n(), 2);
    EXPECT_EQ(F.t_degree(), 1);
    EXPECT_FALSE(F.is_holomorphic());
    EXPECT_EQ(parse_family(to_string(F), 2), F);
    EXPECT_EQ(to_string(parse_family("t^2*z1", 1)), "1*t^2*z1");
    EXPECT_THROW(parse_family("~t*z1", 1), ParseError);
    const auto G = parse_family(kShiftedFamily, 2);
    const auto poly = G.coefficient_poly(MonomialKey{{3, 0}, {0, 3}});
    ASSERT_EQ(poly.size(), 2u);
    EXPECT_EQ(poly[0], Complex(1, 0));
    EXPECT_EQ(poly[1], Complex(1, 0));
    EXPECT_TRUE(parse_family(kHoloConvenient, 2).is_holomorphic());
}

TEST(FamilyPolynomial, Specialize) {
    const auto F = parse_family(kPhaseFamily, 2);
    EXPECT_EQ(specialize(F, 0.0), parse_mixed("~z1^2*z2^3 + z1^3*~z2^2", 2));
    EXPECT_EQ(specialize(F, 0.0).size(), 2u);
    EXPECT_EQ(specialize(F, Complex(0, 2)), parse_mixed("~z1^2*z2^3 + z1^3*~z2^2 + 2i*z1^2*z2^4", 2));
    EXPECT_EQ(specialize(parse_family(kShiftedFamily, 2), -1.0).size(), 2u);
    const auto f = parse_mixed(kConvenient, 2);
    const auto C = FamilyPolynomial::constant(f);
    for (Complex t : {Complex(0, 0), Complex(0.3, -0.2), Complex(5, 1)}) EXPECT_EQ(specialize(C, t), f);
}

TEST(Sampling, DefaultPolicy) {
    TSamplingPolicy p;
    const auto ts = p.samples();
    ASSERT_EQ(ts.size(), 33u);
    EXPECT_EQ(ts.front(), Complex(0, 0));
    EXPECT_EQ(ts.back(), std::polar(0.9, 2.0 * std::numbers::pi * 7 / 8));
    for (std::size_t i = 1; i < ts.size(); ++i) EXPECT_LE(std::abs(ts[i - 1]), std::abs(ts[i]) * (1 + 1e-15));
    p.t_max = 0;
    EXPECT_THROW(p.samples(), std::invalid_argument);
}

TEST(Sampling, NestedWhenScaledByPowersOfTwo) {
    TSamplingPolicy small, large;
    small.t_max = 0.45;
    small.rings = 3;
    large.t_max = 0.9;
    large.rings = 4;
    const auto a = small.samples(), b = large.samples();
    for (Complex t : a)
        EXPECT_TRUE(std::any_of(b.begin(), b.end(), [&](Complex u) { return std::abs(u - t) == 0.0; })) << t;
}

TEST(Constancy, Examples) {
    const TSamplingPolicy p;
    EXPECT_TRUE(check_newton_constancy(parse_family(kPhaseFamily, 2), p).constant);
    EXPECT_TRUE(check_newton_constancy(parse_family(kShiftedFamily, 2), p).constant);
    // (1,1) lies in (1,0) + R^2_+, so adding t·z1z2 does not move Γ₊.
    EXPECT_TRUE(check_newton_constancy(parse_family("z1 + t*z1*z2", 2), p).constant);
    const auto r = check_newton_constancy(parse_family("z1 + t*z2", 2), p);
    EXPECT_FALSE(r.constant);
    ASSERT_TRUE(r.offending_t);
    EXPECT_NE(*r.offending_t, Complex(0, 0));
    ASSERT_FALSE(r.diagnostics.empty());
    EXPECT_NE(r.diagnostics.front().find("vertex set"), std::string::npos);
    // A vertex coefficient vanishing at a sampled t = −1.
    TSamplingPolicy wide;
    wide.t_max = 1.0;
    const auto v = check_newton_constancy(parse_family("(1+t)*z1 + z2", 2), wide);
    EXPECT_FALSE(v.constant);
    ASSERT_TRUE(v.offending_t);
    EXPECT_NEAR(std::abs(*v.offending_t - Complex(-1, 0)), 0.0, 1e-12);
    // The interior monomial z1^3 ~z2^3 dropping out at t = −1 leaves Γ₊ alone.
    EXPECT_TRUE(check_newton_constancy(parse_family(kShiftedFamily, 2), wide).constant);
}

TEST(Admissibility, PhaseFamily) {
    const auto F = parse_family(kPhaseFamily, 2);
    auto cfg = small_config();
    const auto ok = check_admissibility(F, 1.0, cfg);
    EXPECT_EQ(ok.verdict, AdmissibilityVerdict::numerically_admissible) << ok.reason;
    EXPECT_TRUE(ok.uniform_tame);
    EXPECT_NEAR(ok.min_r_nc, 1.0 / 0.9, 0.05 / 0.9);
    ASSERT_TRUE(ok.smoothness);
    EXPECT_TRUE(ok.smoothness->passed);
    EXPECT_FALSE(ok.tameness_skipped);
    for (const auto& m : ok.per_t) {
        EXPECT_TRUE(m.nondegeneracy.passes);
        if (std::abs(m.t) > 0) EXPECT_NEAR(m.r_nc, 1.0 / std::abs(m.t), 0.05 / std::abs(m.t)) << m.t;
    }
    const auto bad = check_admissibility(F, 2.0, cfg);
    EXPECT_EQ(bad.verdict, AdmissibilityVerdict::failed);
    EXPECT_FALSE(bad.uniform_tame);
    EXPECT_NE(bad.reason.find("r_nc"), std::string::npos);
    EXPECT_THROW(check_admissibility(F, 0.0, cfg), std::invalid_argument);
}

TEST(Admissibility, ShiftedCoefficientFamily) {
    const auto rep = check_admissibility(parse_family(kShiftedFamily, 2), 1.0, small_config());
    EXPECT_TRUE(rep.constancy.constant);
    EXPECT_EQ(rep.verdict, AdmissibilityVerdict::numerically_admissible) << rep.reason;
}

TEST(Admissibility, ConvenientFastPath) {
    const auto rep = check_admissibility(FamilyPolynomial::constant(parse_mixed(kConvenient, 2)), 0.5, small_config());
    EXPECT_TRUE(rep.tameness_skipped);
    EXPECT_EQ(rep.min_r_nc, kInfiniteRadius);
    EXPECT_EQ(rep.verdict, AdmissibilityVerdict::numerically_admissible) << rep.reason;
}

TEST(Admissibility, DegenerateMemberFails) {
    const auto rep = check_admissibility(parse_family("z1*~z1 + t*z2^3", 2), 0.5, small_config());
    EXPECT_EQ(rep.verdict, AdmissibilityVerdict::failed);
}

TEST(Admissibility, MonotoneInTMax) {
    // r_nc(f_t) = 1/|t|, so ρ = 1.5 holds on |t| ≤ 0.45 but not on |t| ≤ 0.9.
    const auto F = parse_family(kPhaseFamily, 2);
    auto cfg = small_config();
    cfg.sampling.t_max = 0.45;
    cfg.sampling.rings = 1;
    const auto narrow = check_admissibility(F, 1.5, cfg);
    cfg.sampling.t_max = 0.9;
    cfg.sampling.rings = 2;
    const auto wide = check_admissibility(F, 1.5, cfg);
    EXPECT_EQ(narrow.verdict, AdmissibilityVerdict::numerically_admissible) << narrow.reason;
    EXPECT_EQ(wide.verdict, AdmissibilityVerdict::failed);
}

TEST(Strata, Examples) {
    auto names = [](const FamilyPolynomial& F) {
        std::vector<std::string> out;
        for (const auto& s : enumerate_strata(F)) out.push_back(to_string(s));
        return out;
    };
    EXPECT_EQ(names(parse_family(kPhaseFamily, 2)),
              (std::vector<std::string>{"A_{1,2}", "B_{1,2}", "C_{}", "C_{1}", "C_{2}"}));
    EXPECT_EQ(names(FamilyPolynomial::constant(parse_mixed(kConvenient, 2))),
              (std::vector<std::string>{"A_{1}", "B_{1}", "A_{2}", "B_{2}", "A_{1,2}", "B_{1,2}", "C_{}"}));
    EXPECT_EQ(names(parse_family("z1", 1)), (std::vector<std::string>{"A_{1}", "B_{1}", "C_{}"}));
    const auto strata = enumerate_strata(parse_family(kPhaseFamily, 2));
    EXPECT_EQ(std::count_if(strata.begin(), strata.end(), [](const auto& s) { return s.t_axis; }), 1);
}

TEST(Covering, Examples) {
    CoveringSpec spec{{2}, {1}, 3};
    EXPECT_EQ(pullback_covering(parse_mixed("z1^2", 1), spec), parse_mixed("z1^4*~z1^2", 1));
    CoveringSpec spec2{{2, 2}, {1, 1}, 3};
    EXPECT_EQ(pullback_covering(parse_mixed("z1^2 + z2^3", 2), spec2), parse_mixed("z1^4*~z1^2 + z2^6*~z2^3", 2));
    const auto F = parse_family(kHoloConvenient, 2);
    EXPECT_EQ(pullback_covering(F, CoveringSpec{{1, 1}, {0, 0}, 1}), F);
    EXPECT_EQ(to_string(pullback_covering(F, spec2)), to_string(parse_family("z1^4*~z1^2 + z2^6*~z2^3 + t*z1^2*~z1*z2^4*~z2^2", 2)));
}

TEST(Covering, Validation) {
    const auto f = parse_mixed("z1 + z2", 2);
    EXPECT_THROW(pullback_covering(f, CoveringSpec{{1, 1}, {1, 0}, 2}), std::invalid_argument);  // ν₁ = μ₁
    EXPECT_THROW(pullback_covering(f, CoveringSpec{{2, 1}, {1, 1}, 3}), std::invalid_argument);  // ν₂ + μ₂ ≠ δ
    EXPECT_THROW(pullback_covering(f, CoveringSpec{{0, 0}, {0, 0}, 0}), std::invalid_argument);
    EXPECT_THROW(pullback_covering(f, CoveringSpec{{2}, {1}, 3}), std::invalid_argument);
    EXPECT_THROW(pullback_covering(parse_mixed("z1*~z2", 2), CoveringSpec{{2, 2}, {1, 1}, 3}), std::invalid_argument);
    EXPECT_THROW(pullback_covering(parse_family(kPhaseFamily, 2), CoveringSpec{{2, 2}, {1, 1}, 3}), std::invalid_argument);
}

TEST(Covering, SupportScalesByDelta) {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 20; ++k) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const auto f = mixsing::testing::random_poly(rng, n, 5, 4, true);
        const int delta = 1 + static_cast<int>(rng() % 5);
        CoveringSpec spec;
        spec.delta = delta;
        for (int i = 0; i < n; ++i) {
            // μ < δ/2 guarantees ν > μ.
            const int mu = static_cast<int>(rng() % ((delta + 1) / 2));
            spec.mu.push_back(mu);
            spec.nu.push_back(delta - mu);
        }
        const auto g = pullback_covering(f, spec);
        std::set<LatticePoint> scaled;
        for (auto p : support(f)) {
            for (int& x : p) x *= delta;
            scaled.insert(p);
        }
        EXPECT_EQ(support(g), scaled) << to_string(f);
    }
}

TEST(Covering, PreservesVanishingSubspaces) {
    const CoveringSpec spec{{2, 2}, {1, 1}, 3};
    for (const char* text : {"z1^2 + z2^3 + z1*z2^2", "z1^2*z2 + z1*z2^3", "z1^3*z2^2 + z2^5"}) {
        const auto f = parse_mixed(text, 2);
        EXPECT_EQ(classify_subspaces(pullback_covering(f, spec)).vanishing, classify_subspaces(f).vanishing) << text;
    }
}

TEST(Covering, PullbackStaysAdmissible) {
    const auto F = parse_family(kHoloConvenient, 2);
    const auto cfg = small_config();
    const auto base = check_admissibility(F, 0.9, cfg);
    ASSERT_EQ(base.verdict, AdmissibilityVerdict::numerically_admissible) << base.reason;
    const auto G = pullback_covering(F, CoveringSpec{{2, 2}, {1, 1}, 3});
    const auto rep = check_admissibility(G, 0.9, cfg);
    EXPECT_EQ(rep.verdict, AdmissibilityVerdict::numerically_admissible) << rep.reason;
    EXPECT_TRUE(rep.tameness_skipped);
}
