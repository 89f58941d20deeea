#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "../support/oracles.hpp"
#include "../support/random_poly.hpp"
#include "mixsing/mixedpoly.hpp"
#include "mixsing/parser.hpp"

using namespace mixsing;
using mixsing::testing::random_point;
using mixsing::testing::random_poly;
using mixsing::testing::finite_difference_gradient;
using mixsing::testing::lambda_grid_oracle;
using mixsing::testing::svd_ratio_oracle;

namespace {

const char* kEssentialFace = "z1^2*z2^2*~z2 + z1*~z1^2*z2^2 + z1^6";

}  // namespace

TEST(Parse, ThreeTermExample) {
    const auto f = parse_mixed(kEssentialFace, 2);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f.coefficient({{2, 2}, {0, 1}}), Complex(1, 0));
    EXPECT_EQ(f.coefficient({{1, 2}, {2, 0}}), Complex(1, 0));
    EXPECT_EQ(f.coefficient({{6, 0}, {0, 0}}), Complex(1, 0));
}

TEST(Parse, CancellationGivesEmpty) { EXPECT_TRUE(parse_mixed("z1 - z1", 1).is_zero()); }

TEST(Parse, ComplexLiteral) {
    const auto f = parse_mixed("(2+0i)*z1^2*z2^4", 2);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f.coefficient({{2, 4}, {0, 0}}), Complex(2, 0));
}

TEST(Parse, ImaginaryUnitAndPowersOfSums) {
    const auto f = parse_mixed("i*z1 + (1-2i)*~z1 + (z1 + z2)^2", 2);
    EXPECT_EQ(f.coefficient({{1, 0}, {0, 0}}), Complex(0, 1));
    EXPECT_EQ(f.coefficient({{0, 0}, {1, 0}}), Complex(1, -2));
    EXPECT_EQ(f.coefficient({{1, 1}, {0, 0}}), Complex(2, 0));
}

TEST(Parse, Errors) {
    EXPECT_THROW(parse_mixed("2z1", 1), ParseError);
    EXPECT_THROW(parse_mixed("z1 z2", 2), ParseError);
    EXPECT_THROW(parse_mixed("z3", 2), ParseError);
    EXPECT_THROW(parse_mixed("z1^", 1), ParseError);
    EXPECT_THROW(parse_mixed("z1^99999999", 1), ParseError);
    EXPECT_THROW(parse_mixed("(z1^1048576)^2", 1), ParseError);
    EXPECT_THROW(parse_mixed("t*z1", 1), ParseError);
    EXPECT_THROW(parse_polynomial("~t*z1", 1, true), ParseError);
    EXPECT_THROW(parse_mixed("z1 + ", 1), ParseError);
    try {
        parse_mixed("z1 + * z2", 2);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 5u);
    }
}

TEST(Parse, FamilyParameterIsVariableZero) {
    const auto F = parse_polynomial("~z1^2*z2^3 + t*z1^2*z2^4", 2, true);
    EXPECT_EQ(F.dim(), 3);
    EXPECT_EQ(F.coefficient({{1, 2, 4}, {0, 0, 0}}), Complex(1, 0));
}

TEST(Parse, RoundTripRandom) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 4;
        const auto f = random_poly(rng, n, 6, 6);
        EXPECT_EQ(parse_mixed(to_string(f), n), f) << to_string(f);
    }
}

TEST(Evaluate, Examples) {
    const auto f = parse_mixed(kEssentialFace, 2);
    EXPECT_EQ(evaluate(f, ComplexVector{1, 1}), Complex(3, 0));
    EXPECT_EQ(evaluate(f, ComplexVector{0, {5, 2}}), Complex(0, 0));
    EXPECT_NEAR(std::abs(evaluate(parse_mixed("z1*~z1", 1), ComplexVector{{0, 3}}) - Complex(9, 0)), 0.0, 1e-14);
    EXPECT_THROW(evaluate(f, ComplexVector{1}), std::invalid_argument);
}

TEST(Evaluate, ConjugationSymmetry) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 3;
        const auto f = random_poly(rng, n, 6, 5);
        const auto z = random_point(rng, n);
        const Complex a = evaluate(conj(f), z);
        const Complex b = std::conj(evaluate(f, z));
        EXPECT_LE(std::abs(a - b), 1e-12 * (1 + std::abs(b)));
    }
}

TEST(Evaluate, RealAndImaginaryPartsAreReal) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 3;
        const auto f = random_poly(rng, n, 6, 5);
        const auto z = random_point(rng, n);
        const Complex g = evaluate(real_part(f), z);
        const Complex h = evaluate(imag_part(f), z);
        const Complex v = evaluate(f, z);
        const double scale = 1 + std::abs(v);
        EXPECT_LE(std::abs(g.imag()), 1e-12 * scale);
        EXPECT_LE(std::abs(h.imag()), 1e-12 * scale);
        EXPECT_LE(std::abs(Complex(g.real(), h.real()) - v), 1e-12 * scale);
    }
}

TEST(Wirtinger, PowerRuleExamples) {
    auto g = wirtinger_gradient(parse_mixed("z1^2*~z1", 1), ComplexVector{1});
    EXPECT_EQ(g.dz[0], Complex(2, 0));
    EXPECT_EQ(g.dzbar[0], Complex(1, 0));
    g = wirtinger_gradient(parse_mixed("z1*z2^2", 2), ComplexVector{1, 1});
    EXPECT_EQ(g.dz[0], Complex(1, 0));
    EXPECT_EQ(g.dz[1], Complex(2, 0));
    EXPECT_EQ(g.dzbar[0], Complex(0, 0));
    EXPECT_EQ(g.dzbar[1], Complex(0, 0));
}

TEST(Wirtinger, AgreesWithFiniteDifferences) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 3;
        const auto f = random_poly(rng, n, 6, 5);
        const auto z = random_point(rng, n, 0.7);
        const auto exact = wirtinger_gradient(f, z);
        const auto fd = finite_difference_gradient(f, z, 1e-6);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += std::norm(exact.dz[i] - fd.dz[i]) + std::norm(exact.dzbar[i] - fd.dzbar[i]);
            den += std::norm(exact.dz[i]) + std::norm(exact.dzbar[i]);
        }
        EXPECT_LT(std::sqrt(num / std::max(den, 1e-300)), 1e-6) << to_string(f);
    }
}

TEST(Wirtinger, RealFunctionsSatisfyConjugateSymmetry) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 3;
        const auto f = random_poly(rng, n, 6, 5);
        const auto z = random_point(rng, n);
        for (const auto& k : {real_part(f), imag_part(f)}) {
            const auto g = wirtinger_gradient(k, z);
            for (int i = 0; i < n; ++i)
                EXPECT_LE(std::abs(std::conj(g.dz[i]) - g.dzbar[i]), 1e-10 * (1 + std::abs(g.dzbar[i])));
        }
    }
}

TEST(Criticality, Examples) {
    EXPECT_EQ(criticality_residual(parse_mixed("z1*~z1 - 1", 1), ComplexVector{1}), 0.0);
    EXPECT_NEAR(criticality_residual(parse_mixed("z1", 2), ComplexVector{0, 1}), 1.0, 1e-15);
    const auto f = parse_mixed("~z1^2*z2^3 + z1^3*~z2^2", 2);
    const ComplexVector one{1, 1};
    EXPECT_GT(criticality_residual(f, one), 1e-2);
    EXPECT_GT(lambda_grid_oracle(wirtinger_gradient(f, one), 10000), 1e-2);
}

TEST(Criticality, ClosedFormMatchesSvd) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 4;
        const auto f = random_poly(rng, n, 6, 5);
        const auto z = random_point(rng, n);
        const auto rows = real_gradient_rows(wirtinger_gradient(f, z), IndexSet::full(n));
        EXPECT_NEAR(sigma_ratio(rows.dg, rows.dh), svd_ratio_oracle(rows), 1e-10);
    }
}

TEST(Criticality, SigmaAndLambdaFitClassify) {
    // Random points (generic, away from critical sets) and points on
    // everywhere-critical functions must land in the same class under both tests.
    std::mt19937_64 rng(10);
    int critical = 0, regular = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 3;
        MixedPolynomial f(n);
        if (trial % 2 == 0) {
            // |z|^2-type real functions (times a unit) are critical everywhere.
            const auto k = real_part(random_poly(rng, n, 4, 4));
            f = k * std::polar(1.0, 0.3 * trial);
        } else {
            f = random_poly(rng, n, 6, 5);
        }
        const auto z = random_point(rng, n);
        const auto grad = wirtinger_gradient(f, z);
        const double sig = criticality_residual(f, z);
        const double lam = lambda_fit(grad, IndexSet::full(n)).residual;
        const double grid = lambda_grid_oracle(grad, 10000);
        const bool a = sig < 1e-8, b = lam < 1e-8;
        const bool a_far = sig > 1e-4, b_far = lam > 1e-4;
        EXPECT_TRUE((a && b) || (a_far && b_far)) << sig << " " << lam << " " << to_string(f);
        EXPECT_GE(grid + 1e-12, lam);
        if (a) ++critical;
        if (a_far) ++regular;
    }
    EXPECT_GT(critical, 50);
    EXPECT_GT(regular, 50);
}

TEST(Restrict, Examples) {
    const auto f = parse_mixed(kEssentialFace, 2);
    EXPECT_EQ(restrict_to(f, IndexSet::of({0})), parse_mixed("z1^6", 2));
    EXPECT_TRUE(restrict_to(f, IndexSet::of({1})).is_zero());
    EXPECT_EQ(restrict_to(f, IndexSet::full(2)), f);
    EXPECT_EQ(compact_variables(restrict_to(f, IndexSet::of({0})), IndexSet::of({0})), parse_mixed("z1^6", 1));
}

TEST(RadialDegree, Examples) {
    const MixedMonomial m{1.0, {2, 2}, {0, 1}};
    EXPECT_EQ(radial_degree(m, WeightVector({1, 1})), 5);
    EXPECT_EQ(radial_degree(m, WeightVector({1, 0})), 2);
    EXPECT_EQ(radial_degree(m, WeightVector({0, 1})), 3);
    EXPECT_THROW(WeightVector({0, 0}), std::invalid_argument);
    EXPECT_THROW(WeightVector({1, -1}), std::invalid_argument);
}
