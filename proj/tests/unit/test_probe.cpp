#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "../support/random_poly.hpp"
#include "mixsing/parser.hpp"
#include "mixsing/probe.hpp"

using namespace mixsing;

namespace {

const double kPi = std::numbers::pi;
const char* kPhaseFamily = "~z1^2*z2^3 + z1^3*~z2^2 + t*z1^2*z2^4";

Arc make_arc(SeriesTerms t, std::vector<SeriesTerms> z) {
    Arc a;
    a.t = std::move(t);
    a.z = std::move(z);
    return a;
}

const StratumDescriptor kTAxis{StratumKind::C, IndexSet{}, true};

}  // namespace

TEST(Whitney, PhaseFamilyPairPasses) {
    const auto F = parse_family(kPhaseFamily, 2);
    const Arc p = make_arc({{1, 1.0}}, {{}, {}});
    const Arc q = make_arc({}, {{{1, 1.0}}, {{1, std::polar(1.0, kPi / 5)}}});
    const auto r = check_whitney_b(F, p, q, ProbeConfig{});
    EXPECT_EQ(r.verdict, ProbeVerdict::pass) << r.note;
    EXPECT_LT(r.containment_residual, 1e-3);
    ASSERT_FALSE(r.numeric.empty());
    EXPECT_EQ(r.numeric.back().first, 20);
    EXPECT_LT(r.numeric.back().second, 1e-3);
    EXPECT_TRUE(r.decreasing);
    // ℓ_∞ ∝ q − p = (−s, s, s e^{iπ/5}).
    ASSERT_EQ(r.limit_direction.size(), 3u);
    EXPECT_NEAR(std::abs(r.limit_direction[0]), 1.0 / std::sqrt(3.0), 1e-12);
}

TEST(Whitney, SmoothCurvePasses) {
    const auto F = parse_family("z2 - z1^2", 2);
    const Arc p = make_arc({{1, 1.0}}, {{}, {}});
    const Arc q = make_arc({{1, 1.0}}, {{{1, 1.0}}, {{2, 1.0}}});
    const auto r = check_whitney_b(F, p, q, ProbeConfig{});
    EXPECT_EQ(r.verdict, ProbeVerdict::pass) << r.note;
}

TEST(Whitney, PerturbedLimitFails) {
    const auto F = parse_family(kPhaseFamily, 2);
    const Arc p = make_arc({{1, 1.0}}, {{}, {}});
    const Arc q = make_arc({}, {{{1, 1.0}}, {{1, std::polar(1.0, kPi / 5)}}});
    ProbeConfig cfg;
    cfg.perturb_limits = [](ComplexVector& lg, ComplexVector& lh) {
        std::fill(lg.begin(), lg.end(), Complex(0, 0));
        std::fill(lh.begin(), lh.end(), Complex(0, 0));
        lg[0] = 1.0;
        lh[0] = Complex(0, 1);
    };
    const auto r = check_whitney_b(F, p, q, cfg);
    EXPECT_EQ(r.verdict, ProbeVerdict::fail);
    EXPECT_GE(r.containment_residual, 1e-3);
}

TEST(Whitney, CuspFamilyFails) {
    // V(z2² − z1³ − t²z1²) along q = (s, −s², 0): tangents stay vertical while ℓ_∞ is the t-axis.
    const auto F = parse_family("z2^2 - z1^3 - t^2*z1^2", 2);
    const auto r = check_whitney_b(F, make_arc({{1, 1.0}}, {{}, {}}), make_arc({{1, 1.0}}, {{{2, -1.0}}, {}}), ProbeConfig{});
    EXPECT_EQ(r.verdict, ProbeVerdict::fail);
    EXPECT_NEAR(r.containment_residual, 1.0, 1e-9);
}

TEST(Whitney, ArcOffVarietyThrows) {
    const auto F = parse_family(kPhaseFamily, 2);
    EXPECT_THROW(check_whitney_b(F, make_arc({{1, 1.0}}, {{}, {}}), make_arc({}, {{{1, 1.0}}, {{1, 1.0}}}), ProbeConfig{}),
                 std::invalid_argument);
}

TEST(Thom, PhaseFamilyDiagonalPasses) {
    const auto F = parse_family(kPhaseFamily, 2);
    const auto r = check_thom_af(F, make_arc({{1, 1.0}}, {{{1, 1.0}}, {{1, 1.0}}}), kTAxis, ProbeConfig{});
    EXPECT_EQ(r.verdict, ProbeVerdict::pass) << r.note;
    EXPECT_LT(r.containment_residual, 1e-3);
    EXPECT_TRUE(r.decreasing);
}

TEST(Thom, SubmersionPasses) {
    const auto F = parse_family("z1", 2);
    const auto r = check_thom_af(F, make_arc({{1, 1.0}}, {{{1, 1.0}}, {{1, 2.0}}}), kTAxis, ProbeConfig{});
    EXPECT_EQ(r.verdict, ProbeVerdict::pass) << r.note;
    EXPECT_LT(r.containment_residual, 1e-12);
}

TEST(Thom, Failures) {
    // Along t = −3s², z1 = s the fibres of z1³ + t z1 turn vertical.
    const auto F = parse_family("z1^3 + t*z1", 1);
    const auto r = check_thom_af(F, make_arc({{2, -3.0}}, {{{1, 1.0}}}), kTAxis, ProbeConfig{});
    EXPECT_EQ(r.verdict, ProbeVerdict::fail);

    ProbeConfig cfg;
    cfg.perturb_limits = [](ComplexVector& lg, ComplexVector& lh) {
        std::fill(lg.begin(), lg.end(), Complex(0, 0));
        std::fill(lh.begin(), lh.end(), Complex(0, 0));
        lg[0] = 1.0;
        lh[0] = Complex(0, 1);
    };
    const auto G = parse_family(kPhaseFamily, 2);
    EXPECT_EQ(check_thom_af(G, make_arc({{1, 1.0}}, {{{1, 1.0}}, {{1, 1.0}}}), kTAxis, cfg).verdict, ProbeVerdict::fail);
}

TEST(Thom, ArcThroughCriticalLocusThrows) {
    const auto F = parse_family("z1*~z1 - z2*~z2", 2);
    EXPECT_THROW(check_thom_af(F, make_arc({{1, 1.0}}, {{{1, 1.0}}, {{1, 1.0}}}), kTAxis, ProbeConfig{}), std::invalid_argument);
}

TEST(ProbeConfig, Validation) {
    ProbeConfig cfg;
    cfg.tol = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = ProbeConfig{};
    cfg.k_min = 12;
    cfg.k_max = 8;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Sphere, Examples) {
    const ComplexVector a{0.0, 1.0};
    EXPECT_NEAR(sphere_transversality_residual(parse_mixed("z1", 2), a), 1.0, 1e-15);
    const ComplexVector b{1.0, 0.0};
    EXPECT_NEAR(sphere_transversality_residual(parse_mixed("z1 - 1", 2), b), 0.0, 1e-15);
    const ComplexVector c{0.1, 0.1 * std::polar(1.0, kPi / 5)};
    EXPECT_GT(sphere_transversality_residual(parse_mixed("~z1^2*z2^3 + z1^3*~z2^2", 2), c), 1e-3);
    EXPECT_THROW(sphere_transversality_residual(parse_mixed("z1", 2), b), std::invalid_argument);
    EXPECT_THROW(sphere_transversality_residual(parse_mixed("z1^2", 2), a), std::invalid_argument);
}

TEST(Euler, Examples) {
    const ComplexVector one{1.0, 1.0};
    EXPECT_LT(euler_residual(parse_mixed("z1*z2^2", 2), WeightVector({2, 1}), one), 1e-15);
    std::mt19937_64 rng(5);
    const auto z = mixsing::testing::random_point(rng, 2);
    EXPECT_LT(euler_residual(parse_mixed("~z1^2*z2^3 + z1^3*~z2^2", 2), WeightVector({1, 1}), z), 1e-12);
    EXPECT_THROW(euler_residual(parse_mixed("z1 + z2^2", 2), WeightVector({1, 1}), one), std::invalid_argument);
}

TEST(Euler, RandomHomogeneous) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        std::vector<long long> w(n);
        for (auto& wi : w) wi = 1 + static_cast<long long>(rng() % 3);
        const long long d = 6 + static_cast<long long>(rng() % 6);
        MixedPolynomial f(n);
        // Rejection-sample exponent vectors of weighted degree d.
        for (int tries = 0; tries < 2000 && f.size() < 4; ++tries) {
            Exponents nu(n), mu(n);
            long long deg = 0;
            for (int i = 0; i < n; ++i) {
                nu[i] = static_cast<int>(rng() % 7);
                mu[i] = static_cast<int>(rng() % 7);
                deg += w[i] * (nu[i] + mu[i]);
            }
            if (deg == d) f.add_term(mixsing::testing::random_complex(rng), nu, mu);
        }
        if (f.size() == 0) continue;
        const auto z = mixsing::testing::random_point(rng, n);
        EXPECT_LT(euler_residual(f, WeightVector(w), z), 1e-10) << to_string(f);
    }
}

TEST(Spotcheck, PhaseFamilySmooth) {
    const auto F = parse_family(kPhaseFamily, 2);
    const auto r = spotcheck_regularity(F, SpotMode::smoothness, SpotRegion{}, SpotcheckConfig{});
    EXPECT_EQ(r.found, 200);
    EXPECT_GT(r.min_crit, 1e-4);
    EXPECT_GT(r.min_sphere, 1e-5);
    EXPECT_FALSE(r.counterexample_candidate);
}

TEST(Spotcheck, PhaseFamilyNearbyFibres) {
    const auto F = parse_family(kPhaseFamily, 2);
    const auto r = spotcheck_regularity(F, SpotMode::nearby_fibres, SpotRegion{}, SpotcheckConfig{});
    EXPECT_EQ(r.found, 200);
    EXPECT_GT(r.min_crit, 1e-5);
    EXPECT_GT(r.min_sphere, 1e-5);
    EXPECT_FALSE(r.counterexample_candidate);
    ASSERT_TRUE(r.worst_crit);
    EXPECT_NEAR(std::abs(r.worst_crit->eta), 1e-3, 1e-15);
}

TEST(Spotcheck, CriticalControlsAreFlagged) {
    const auto a = spotcheck_regularity(parse_family("z1*~z1 - z2*~z2", 2), SpotMode::smoothness, SpotRegion{}, SpotcheckConfig{});
    EXPECT_GT(a.found, 0);
    EXPECT_LT(a.min_crit, 1e-8);
    EXPECT_TRUE(a.counterexample_candidate);
    const auto b = spotcheck_regularity(parse_family("(z1*~z1)^2", 1), SpotMode::nearby_fibres, SpotRegion{}, SpotcheckConfig{});
    EXPECT_GT(b.found, 0);
    EXPECT_LT(b.min_crit, 1e-8);
    EXPECT_TRUE(b.counterexample_candidate);
}

TEST(Spotcheck, SerialMatchesParallel) {
    const auto F = parse_family(kPhaseFamily, 2);
    SpotcheckConfig cfg;
    cfg.samples = 40;
    cfg.policy = ExecPolicy::serial;
    const auto a = spotcheck_regularity(F, SpotMode::smoothness, SpotRegion{}, cfg);
    cfg.policy = ExecPolicy::parallel;
    const auto b = spotcheck_regularity(F, SpotMode::smoothness, SpotRegion{}, cfg);
    EXPECT_EQ(a.found, b.found);
    EXPECT_EQ(a.min_crit, b.min_crit);
    EXPECT_EQ(a.min_sphere, b.min_sphere);
}

TEST(Spotcheck, Validation) {
    SpotcheckConfig cfg;
    cfg.samples = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    SpotRegion bad;
    bad.radius = -1;
    EXPECT_THROW(spotcheck_regularity(parse_family(kPhaseFamily, 2), SpotMode::smoothness, bad, SpotcheckConfig{}),
                 std::invalid_argument);
}
