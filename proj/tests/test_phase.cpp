#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "solenoid/phase.hpp"
#include "solenoid/theta_fraction.hpp"

using namespace solenoid;

namespace {

Rat rr(long n, long d = 1) { return Rat(n, d); }

PhaseExponent random_exponent(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-12, 12), den(1, 8);
    return PhaseExponent(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
}

TEST(PhaseExponent, AddAndScaleSpecValues) {
    const PhaseExponent x(rr(1, 4), rr(1, 4), rr(0));
    const PhaseExponent y(rr(3, 4), rr(0), rr(0));
    const PhaseExponent sum = phase_add(x, y);
    EXPECT_EQ(sum, PhaseExponent(rr(0), rr(1, 4), rr(0)));

    EXPECT_TRUE(phase_scale(rr(0), PhaseExponent(rr(2, 3), rr(-5, 7), rr(1, 2))).is_trivial());

    const PhaseExponent h(rr(0), rr(1, 2), rr(0));
    EXPECT_EQ(phase_add(h, h), PhaseExponent(rr(0), rr(1), rr(0)));
}

TEST(PhaseExponent, TrivialitySpecValues) {
    EXPECT_TRUE(phase_is_trivial(PhaseExponent(rr(0), rr(0), rr(0))));
    EXPECT_TRUE(phase_is_trivial(PhaseExponent(rr(1), rr(0), rr(0))));
    EXPECT_FALSE(phase_is_trivial(PhaseExponent(rr(0), rr(1, 4), rr(-1, 4))));
}

TEST(PhaseExponent, EvalSpecValues) {
    const Complex minus_one = phase_eval(PhaseExponent(rr(1, 2), rr(0), rr(0)), 0.7312);
    EXPECT_NEAR(std::abs(minus_one - Complex(-1, 0)), 0.0, 1e-12);

    // e^{2 pi i theta} at theta = 1/4 is i
    const Complex i_val = phase_eval(PhaseExponent(rr(0), rr(1), rr(0)), 0.25);
    EXPECT_NEAR(std::abs(i_val - Complex(0, 1)), 0.0, 1e-12);

    // e^{2 pi i / theta} at theta = 2 is e^{i pi} = -1
    const Complex inv_val = phase_eval(PhaseExponent(rr(0), rr(0), rr(1)), 2.0);
    EXPECT_NEAR(std::abs(inv_val - Complex(-1, 0)), 0.0, 1e-12);

    EXPECT_THROW(phase_eval(PhaseExponent(rr(0), rr(0), rr(1)), 0.0), std::domain_error);
}

TEST(PhaseExponent, GroupLawAndEvalHomomorphism) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> thetas(0.05, 0.95);
    for (int i = 0; i < 200; ++i) {
        const auto x = random_exponent(rng);
        const auto y = random_exponent(rng);
        const auto z = random_exponent(rng);
        EXPECT_EQ(phase_add(x, y), phase_add(y, x));
        EXPECT_EQ(phase_add(phase_add(x, y), z), phase_add(x, phase_add(y, z)));
        EXPECT_TRUE(phase_add(x, -x).is_trivial());
        const double t = thetas(rng);
        EXPECT_NEAR(std::abs(phase_eval(phase_add(x, y), t) - phase_eval(x, t) * phase_eval(y, t)), 0.0, 1e-12);
    }
}

TEST(PhaseExponent, TrivialEvaluatesToOne) {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> thetas(0.05, 0.95);
    const PhaseExponent x(rr(7), rr(0), rr(0));
    ASSERT_TRUE(phase_is_trivial(x));
    for (int i = 0; i < 10; ++i)
        EXPECT_NEAR(std::abs(phase_eval(x, thetas(rng)) - Complex(1, 0)), 0.0, 1e-12);
}

TEST(ScalarQSqrtP, ConjugateProductIdentity) {
    std::mt19937_64 rng(107);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
    for (long p : {2L, 3L, 5L}) {
        for (int i = 0; i < 100; ++i) {
            const Rat u(num(rng), den(rng)), v(num(rng), den(rng));
            const ScalarQSqrtP s(Prime(p), u, v);
            const ScalarQSqrtP sbar(Prime(p), u, -v);
            const ScalarQSqrtP prod = s * sbar;
            EXPECT_EQ(prod.u, u * u - Rat(p) * v * v);
            EXPECT_EQ(prod.v, Rat(0));
        }
    }
}

TEST(ScalarQSqrtP, SqrtPowers) {
    const Prime two(2);
    EXPECT_EQ(ScalarQSqrtP::sqrt_p_pow(two, 0), ScalarQSqrtP(two, 1));
    EXPECT_EQ(ScalarQSqrtP::sqrt_p_pow(two, 2), ScalarQSqrtP(two, 2));
    EXPECT_EQ(ScalarQSqrtP::sqrt_p_pow(two, 3), ScalarQSqrtP(two, 0, 2));
    // sqrt(p)^k * sqrt(p)^{-k} = 1
    for (long k = -5; k <= 5; ++k) {
        const auto prod = ScalarQSqrtP::sqrt_p_pow(two, k) * ScalarQSqrtP::sqrt_p_pow(two, -k);
        EXPECT_EQ(prod, ScalarQSqrtP::one(two));
    }
}

TEST(PhasePolynomial, NormalizationIdempotentAndRingLaws) {
    std::mt19937_64 rng(109);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4), len(1, 3);
    const Prime p(2);
    auto random_poly = [&] {
        std::vector<PhasePolynomial::Term> terms;
        const long n = len(rng);
        for (long i = 0; i < n; ++i)
            terms.push_back({ScalarQSqrtP(p, Rat(num(rng), den(rng)), Rat(num(rng), den(rng))),
                             random_exponent(rng)});
        return PhasePolynomial(std::move(terms));
    };
    for (int i = 0; i < 100; ++i) {
        const auto a = random_poly();
        const auto b = random_poly();
        const auto c = random_poly();
        EXPECT_EQ(PhasePolynomial(a.terms()), a);  // renormalization is a no-op
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(PhasePolynomial, ConjMatchesNumericConjugate) {
    std::mt19937_64 rng(113);
    const Prime p(3);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    for (int i = 0; i < 50; ++i) {
        PhasePolynomial poly({{ScalarQSqrtP(p, Rat(num(rng), den(rng))), random_exponent(rng)},
                              {ScalarQSqrtP(p, Rat(num(rng), den(rng)), Rat(1, 2)), random_exponent(rng)}});
        const double t = 0.61803;
        EXPECT_NEAR(std::abs(poly.conj().eval(t) - std::conj(poly.eval(t))), 0.0, 1e-12);
    }
}

TEST(ThetaRationalFunction, SpecReductions) {
    const auto theta = ThetaRationalFunction::theta();
    const auto one = ThetaRationalFunction::constant(Rat(1));

    // beta/(4 beta + 1) with beta = -(theta+1)/(4 theta) reduces to (theta+1)/4
    const auto beta = ThetaRationalFunction::constant(Rat(-1)) * (theta + one) /
                      (ThetaRationalFunction::constant(Rat(4)) * theta);
    const auto mapped = beta / (ThetaRationalFunction::constant(Rat(4)) * beta + one);
    const auto expected = (theta + one) / ThetaRationalFunction::constant(Rat(4));
    EXPECT_EQ(mapped, expected);

    const auto f = (theta + one) * (theta + one) / ThetaRationalFunction::constant(Rat(7));
    EXPECT_EQ(f / f, one);

    // (theta^2 - 1)/(theta - 1) = theta + 1
    const auto num = theta * theta - one;
    const auto den = theta - one;
    EXPECT_EQ(num / den, theta + one);
}

TEST(ThetaRationalFunction, Mod1ComparisonAgainstExponent) {
    const auto theta = ThetaRationalFunction::theta();
    const auto one = ThetaRationalFunction::constant(Rat(1));
    // theta + 1 equals exponent (0, 1, 0) modulo 1
    EXPECT_TRUE((theta + one).equals_mod1(PhaseExponent(Rat(0), Rat(1), Rat(0))));
    // but not exponent (1/2, 1, 0)
    EXPECT_FALSE((theta + one).equals_mod1(PhaseExponent(Rat(1, 2), Rat(1), Rat(0))));
    // 1/theta is not a polynomial target
    EXPECT_FALSE((one / theta).equals_mod1(PhaseExponent(Rat(0), Rat(0), Rat(1))));
    EXPECT_THROW(one / (theta - theta), std::domain_error);
}

}  // namespace
