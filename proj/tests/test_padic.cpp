#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "solenoid/padic.hpp"

using namespace solenoid;

namespace {

// Independent valuation oracle: strip factors of p from numerator and
// denominator separately by repeated division.
long vp_oracle(long p, long num, long den_exp) {
    if (num == 0) throw std::logic_error("vp_oracle: zero");
    long v = -den_exp;
    long n = std::abs(num);
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// Independent fractional-part oracle: emit p-adic digits of k/p^n for the
// negative exponents, one long-division step at a time.
Rat frac_oracle(long p, long k, long n) {
    Rat result(0);
    Int val(k);
    for (long i = n; i > 0; --i) {
        // digit at exponent -i is val mod p after clearing lower digits
        const Int digit = mod_floor(val, p);
        result += Rat(digit, int_pow(p, static_cast<unsigned long>(i)));
        val = (val - digit) / p;
    }
    return result;
}

PAdicRational make(long p, long num, long e) { return PAdicRational(Prime(p), num, e); }

TEST(PAdicRational, CanonicalForm) {
    const auto r = make(2, 12, 2);  // 12/4 = 3
    EXPECT_EQ(r.numerator(), 3);
    EXPECT_EQ(r.denom_exp(), 0);
    const auto z = make(5, 0, 3);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.denom_exp(), 0);
}

TEST(PAdicRational, ArithmeticClosedAndCanonical) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> nums(-60, 60), exps(0, 4);
    for (int i = 0; i < 300; ++i) {
        const auto a = make(3, nums(rng), exps(rng));
        const auto b = make(3, nums(rng), exps(rng));
        for (const auto& r : {a + b, a - b, a * b, -a}) {
            if (r.denom_exp() > 0) EXPECT_NE(r.numerator() % 3, 0);
        }
        EXPECT_EQ((a + b).to_rat(), a.to_rat() + b.to_rat());
        EXPECT_EQ((a - b).to_rat(), a.to_rat() - b.to_rat());
        EXPECT_EQ((a * b).to_rat(), a.to_rat() * b.to_rat());
    }
}

TEST(Valuation, SpecValues) {
    EXPECT_EQ(vp(make(2, 1, 0)), 0);
    EXPECT_FALSE(vp(make(3, 0, 0)).has_value());
    // v_2(3/4) = -2, frozen from the repeated-division oracle
    EXPECT_EQ(vp_oracle(2, 3, 2), -2);
    EXPECT_EQ(vp(make(2, 3, 2)), -2);
}

TEST(Valuation, MatchesOracleOnRandomInputs) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> nums(-200, 200), exps(0, 5);
    for (long p : {2L, 3L, 5L}) {
        for (int i = 0; i < 200; ++i) {
            long num = nums(rng);
            if (num == 0) continue;
            const long e = exps(rng);
            EXPECT_EQ(vp(make(p, num, e)), vp_oracle(p, num, e)) << p << " " << num << " " << e;
        }
    }
}

TEST(FracP, SpecValues) {
    EXPECT_EQ(frac_p(make(2, 5, 0)).to_rat(), Rat(0));
    // frozen from the digit-expansion oracle
    EXPECT_EQ(frac_oracle(2, 15, 3), Rat(7, 8));
    EXPECT_EQ(frac_p(make(2, 15, 3)).to_rat(), Rat(7, 8));
    EXPECT_EQ(frac_oracle(2, -1, 1), Rat(1, 2));
    EXPECT_EQ(frac_p(make(2, -1, 1)).to_rat(), Rat(1, 2));
}

TEST(FracP, PostconditionsAndOracle) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> nums(-500, 500), exps(0, 6);
    for (long p : {2L, 3L}) {
        for (int i = 0; i < 300; ++i) {
            const long num = nums(rng), e = exps(rng);
            const auto r = make(p, num, e);
            const auto f = frac_p(r);
            EXPECT_GE(f.to_rat(), 0);
            EXPECT_LT(f.to_rat(), 1);
            EXPECT_TRUE(vp_at_least(r - f, 0));
            EXPECT_LE(f.denom_exp(), r.denom_exp());
            EXPECT_EQ(f.to_rat(), frac_oracle(p, num, e));
        }
    }
}

TEST(FracP, AdditiveModOne) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> nums(-500, 500), exps(0, 6);
    for (int i = 0; i < 300; ++i) {
        const auto r = make(3, nums(rng), exps(rng));
        const auto s = make(3, nums(rng), exps(rng));
        const Rat lhs = frac_mod1(frac_p(r + s).to_rat());
        const Rat rhs = frac_mod1(frac_p(r).to_rat() + frac_p(s).to_rat());
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(Ball, CanonicalizeSpecValues) {
    const auto b1 = ball_canonicalize(make(2, 15, 3), 0);
    EXPECT_EQ(b1.center.to_rat(), Rat(7, 8));
    EXPECT_EQ(b1.scale, 0);
    const auto b2 = ball_canonicalize(make(5, 0, 0), 3);
    EXPECT_EQ(b2.center.to_rat(), Rat(0));
    const auto b3 = ball_canonicalize(make(3, 10, 1), 1);
    EXPECT_EQ(b3.center.to_rat(), Rat(1, 3));
}

TEST(Ball, CanonicalizePreservesTheCoset) {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<long> nums(-500, 500), exps(0, 4), scales(-3, 4);
    for (long p : {2L, 3L}) {
        for (int i = 0; i < 300; ++i) {
            const auto c = make(p, nums(rng), exps(rng));
            const long j = scales(rng);
            const auto b = ball_canonicalize(c, j);
            EXPECT_TRUE(vp_at_least(b.center - c, j));
            // canonical center digits sit below the scale: 0 <= c p^a < p^{a+j}
            if (!b.center.is_zero()) {
                const long a = b.center.denom_exp();
                EXPECT_GE(b.center.numerator(), 0);
                EXPECT_LT(Rat(b.center.numerator()), Rat(int_pow(p, static_cast<unsigned long>(a + j))));
            }
            // idempotent
            EXPECT_EQ(ball_canonicalize(b.center, j), b);
        }
    }
}

TEST(Ball, RelationSpecValues) {
    const Prime two(2), three(3);
    const Ball zp{PAdicRational::zero(two), 0};
    const Ball pzp{PAdicRational::zero(two), 1};
    EXPECT_EQ(ball_relation(pzp, zp), BallRelation::b1_inside_b2);
    EXPECT_EQ(ball_relation(ball_canonicalize(make(2, 1, 1), 0), zp), BallRelation::disjoint);
    EXPECT_EQ(ball_relation(ball_canonicalize(make(3, 1, 0), 2), ball_canonicalize(make(3, 10, 0), 2)),
              BallRelation::equal);
}

TEST(Ball, MembershipMatchesRelationOnFinePoints) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> nums(-300, 300), exps(0, 3), scales(-2, 3);
    for (int i = 0; i < 200; ++i) {
        const auto point = make(2, nums(rng), exps(rng));
        const auto b = ball_canonicalize(make(2, nums(rng), exps(rng)), scales(rng));
        const bool member = ball_contains(b, point);
        // degenerate ball around the point at a very fine scale
        const Ball fine = ball_canonicalize(point, b.scale + 40);
        const auto rel = ball_relation(fine, b);
        EXPECT_EQ(member, rel == BallRelation::b1_inside_b2 || rel == BallRelation::equal);
    }
}

TEST(Ball, RefinePartitions) {
    const Ball zp2{PAdicRational::zero(Prime(2)), 0};
    const auto halves = ball_refine(zp2, 1);
    ASSERT_EQ(halves.size(), 2u);
    EXPECT_EQ(halves[0].center.to_rat(), Rat(0));
    EXPECT_EQ(halves[1].center.to_rat(), Rat(1));

    const Ball zp3{PAdicRational::zero(Prime(3)), 0};
    EXPECT_EQ(ball_refine(zp3, 1).size(), 3u);

    const auto quarters = ball_refine(ball_canonicalize(make(2, 1, 1), 0), 2);
    ASSERT_EQ(quarters.size(), 4u);
    std::vector<Rat> centers;
    for (const auto& b : quarters) centers.push_back(b.center.to_rat());
    std::sort(centers.begin(), centers.end());
    EXPECT_EQ(centers, (std::vector<Rat>{Rat(1, 2), Rat(3, 2), Rat(5, 2), Rat(7, 2)}));

    EXPECT_THROW(ball_refine(zp2, -1), std::invalid_argument);
}

TEST(Ball, RefinePropertyPairwiseDisjointWithMatchingMeasure) {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<long> nums(-100, 100), exps(0, 3), scales(-2, 2), deltas(0, 3);
    for (long p : {2L, 3L}) {
        for (int i = 0; i < 60; ++i) {
            const auto b = ball_canonicalize(make(p, nums(rng), exps(rng)), scales(rng));
            const long fine = b.scale + deltas(rng);
            const auto parts = ball_refine(b, fine);
            Rat total(0);
            for (size_t x = 0; x < parts.size(); ++x) {
                total += parts[x].measure();
                EXPECT_TRUE(ball_contains(b, parts[x].center));
                for (size_t y = x + 1; y < parts.size(); ++y)
                    EXPECT_EQ(ball_relation(parts[x], parts[y]), BallRelation::disjoint);
            }
            EXPECT_EQ(total, b.measure());
        }
    }
}

TEST(CharIntegral, SpecValues) {
    const Prime two(2);
    const Ball zp{PAdicRational::zero(two), 0};
    const auto full = char_integral(zp, PAdicRational::zero(two));
    EXPECT_EQ(full.magnitude, Rat(1));
    EXPECT_EQ(full.exponent_mod1, Rat(0));

    const auto cancelled = char_integral(zp, make(2, 1, 1));
    EXPECT_TRUE(cancelled.is_zero());

    const Ball fine{PAdicRational::zero(two), 3};
    const auto small = char_integral(fine, make(2, 1, 3));
    EXPECT_EQ(small.magnitude, Rat(1, 8));
    EXPECT_EQ(small.exponent_mod1, Rat(0));
}

TEST(CharIntegral, MatchesRiemannSumOracle) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> nums(-50, 50), exps(0, 3), scales(-2, 2);
    const double tau = 2.0 * std::numbers::pi;
    for (long p : {2L, 3L}) {
        for (int i = 0; i < 120; ++i) {
            const auto b = ball_canonicalize(make(p, nums(rng), exps(rng)), scales(rng));
            const auto x = make(p, nums(rng), exps(rng));
            const auto got = char_integral(b, x);
            // Riemann sum over a refinement fine enough that the character is
            // constant on each part.
            const auto v = vp(x);
            const long fine = v.has_value() ? std::max(b.scale, -*v) + 1 : b.scale;
            std::complex<double> sum(0, 0);
            for (const auto& part : ball_refine(b, fine)) {
                const double phase = tau * to_double(frac_p(part.center * x).to_rat());
                sum += to_double(part.measure()) * std::complex<double>(std::cos(phase), std::sin(phase));
            }
            std::complex<double> closed(0, 0);
            if (!got.is_zero()) {
                const double phase = tau * to_double(got.exponent_mod1);
                closed = to_double(got.magnitude) * std::complex<double>(std::cos(phase), std::sin(phase));
            }
            EXPECT_NEAR(std::abs(sum - closed), 0.0, 1e-12);
        }
    }
}

}  // namespace
