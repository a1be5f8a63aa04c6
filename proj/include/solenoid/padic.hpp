#pragma once

#include <algorithm>
#include <compare>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "solenoid/rational.hpp"

namespace solenoid {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// The prime is fixed per computation context; every value carries it so that
// independent contexts (e.g. p=2 and p=3 suites) can coexist in one process.
struct Prime {
    long value = 2;

    Prime() = default;
    explicit Prime(long p) : value(p) {
        if (!is_prime(p)) throw std::invalid_argument("Prime: " + std::to_string(p) + " is not prime");
    }
    friend bool operator==(const Prime&, const Prime&) = default;
};

inline void require_same_prime(const Prime& a, const Prime& b) {
    if (a.value != b.value) throw std::logic_error("mixed p-adic contexts");
}

// Element of Z[1/p]: numerator / p^denom_exp.
// Canonical form: denom_exp == 0 or p does not divide numerator.
class PAdicRational {
public:
    PAdicRational() = default;
    PAdicRational(Prime p, Int numerator, long denom_exp = 0) : p_(p) {
        if (denom_exp < 0) throw std::invalid_argument("PAdicRational: negative denom_exp");
        num_ = std::move(numerator);
        exp_ = denom_exp;
        canonicalize();
    }

    static PAdicRational zero(Prime p) { return PAdicRational(p, 0, 0); }

    // Accepts any rational whose denominator is a power of p.
    static PAdicRational from_rat(Prime p, const Rat& r) {
        Int den = denominator(r);
        long e = 0;
        while (den > 1) {
            if (den % p.value != 0)
                throw std::invalid_argument("from_rat: denominator not a power of p");
            den /= p.value;
            ++e;
        }
        return PAdicRational(p, numerator(r), e);
    }

    const Int& numerator() const { return num_; }
    long denom_exp() const { return exp_; }
    Prime prime() const { return p_; }

    bool is_zero() const { return num_ == 0; }

    Rat to_rat() const { return Rat(num_, int_pow(p_.value, static_cast<unsigned long>(exp_))); }

    PAdicRational operator-() const { return PAdicRational(p_, -num_, exp_); }

    friend PAdicRational operator+(const PAdicRational& a, const PAdicRational& b) {
        require_same_prime(a.p_, b.p_);
        const long e = std::max(a.exp_, b.exp_);
        const Int na = a.num_ * int_pow(a.p_.value, static_cast<unsigned long>(e - a.exp_));
        const Int nb = b.num_ * int_pow(b.p_.value, static_cast<unsigned long>(e - b.exp_));
        return PAdicRational(a.p_, na + nb, e);
    }
    friend PAdicRational operator-(const PAdicRational& a, const PAdicRational& b) { return a + (-b); }
    friend PAdicRational operator*(const PAdicRational& a, const PAdicRational& b) {
        require_same_prime(a.p_, b.p_);
        return PAdicRational(a.p_, a.num_ * b.num_, a.exp_ + b.exp_);
    }

    friend bool operator==(const PAdicRational& a, const PAdicRational& b) {
        return a.p_.value == b.p_.value && a.exp_ == b.exp_ && a.num_ == b.num_;
    }

    // Deterministic order: (denom_exp, numerator).
    friend std::strong_ordering operator<=>(const PAdicRational& a, const PAdicRational& b) {
        require_same_prime(a.p_, b.p_);
        if (a.exp_ != b.exp_) return a.exp_ <=> b.exp_;
        if (a.num_ < b.num_) return std::strong_ordering::less;
        if (a.num_ > b.num_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    void canonicalize() {
        if (num_ == 0) {
            exp_ = 0;
            return;
        }
        while (exp_ > 0 && num_ % p_.value == 0) {
            num_ /= p_.value;
            --exp_;
        }
    }

    Prime p_{};
    Int num_ = 0;
    long exp_ = 0;
};

// p-adic valuation; empty optional encodes v_p(0) = +infinity.
inline std::optional<long> vp(const PAdicRational& r) {
    if (r.is_zero()) return std::nullopt;
    if (r.denom_exp() > 0) return -r.denom_exp();
    long v = 0;
    Int n = r.numerator();
    while (n % r.prime().value == 0) {
        n /= r.prime().value;
        ++v;
    }
    return v;
}

inline bool vp_at_least(const PAdicRational& r, long bound) {
    const auto v = vp(r);
    return !v.has_value() || *v >= bound;
}

// {r}_p = (k mod p^n)/p^n for r = k/p^n, representative in [0, p^n).
// This is the sum of the negative-power digits of the p-adic expansion,
// so frac_p(-1/2) = 1/2 at p=2.
inline PAdicRational frac_p(const PAdicRational& r) {
    if (r.denom_exp() == 0) return PAdicRational::zero(r.prime());
    const Int modulus = int_pow(r.prime().value, static_cast<unsigned long>(r.denom_exp()));
    return PAdicRational(r.prime(), mod_floor(r.numerator(), modulus), r.denom_exp());
}

// The coset center + p^scale Z_p. Canonical center has all p-adic digits on
// exponents < scale; equal balls then compare equal field-wise.
struct Ball {
    PAdicRational center;
    long scale = 0;

    Prime prime() const { return center.prime(); }
    Rat measure() const {
        return scale >= 0 ? Rat(1, int_pow(prime().value, static_cast<unsigned long>(scale)))
                          : Rat(int_pow(prime().value, static_cast<unsigned long>(-scale)), 1);
    }
    friend bool operator==(const Ball&, const Ball&) = default;
    friend std::strong_ordering operator<=>(const Ball& a, const Ball& b) {
        if (a.scale != b.scale) return a.scale <=> b.scale;
        return a.center <=> b.center;
    }
};

inline Ball ball_canonicalize(const PAdicRational& center, long scale) {
    const long a = center.denom_exp();
    if (scale + a <= 0) return Ball{PAdicRational::zero(center.prime()), scale};
    const Int modulus = int_pow(center.prime().value, static_cast<unsigned long>(scale + a));
    return Ball{PAdicRational(center.prime(), mod_floor(center.numerator(), modulus), a), scale};
}

inline bool ball_contains(const Ball& b, const PAdicRational& point) {
    return vp_at_least(point - b.center, b.scale);
}

enum class BallRelation { equal, disjoint, b1_inside_b2, b2_inside_b1 };

// Ultrametric trichotomy: two balls are nested or disjoint, never partial.
inline BallRelation ball_relation(const Ball& b1, const Ball& b2) {
    require_same_prime(b1.prime(), b2.prime());
    const long coarse = std::min(b1.scale, b2.scale);
    if (!vp_at_least(b1.center - b2.center, coarse)) return BallRelation::disjoint;
    if (b1.scale == b2.scale) return BallRelation::equal;
    return b1.scale > b2.scale ? BallRelation::b1_inside_b2 : BallRelation::b2_inside_b1;
}

// Partition of b into p^(finer_scale - scale) disjoint canonical balls.
inline std::vector<Ball> ball_refine(const Ball& b, long finer_scale) {
    if (finer_scale < b.scale) throw std::invalid_argument("ball_refine: coarser target scale");
    const long steps = finer_scale - b.scale;
    if (steps > 60) throw std::invalid_argument("ball_refine: refinement too deep");
    const Int count = int_pow(b.prime().value, static_cast<unsigned long>(steps));
    const Rat step = b.scale >= 0 ? Rat(1, int_pow(b.prime().value, static_cast<unsigned long>(b.scale)))
                                  : Rat(int_pow(b.prime().value, static_cast<unsigned long>(-b.scale)), 1);
    std::vector<Ball> out;
    out.reserve(static_cast<size_t>(count));
    for (Int i = 0; i < count; ++i) {
        const PAdicRational offset = PAdicRational::from_rat(b.prime(), Rat(i, 1) * step);
        out.push_back(ball_canonicalize(b.center + offset, finer_scale));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Exact value of \int_B e^{2 pi i {q x}_p} dq: the character is a constant
// e^{2 pi i {c x}_p} on B when v_p(x) >= -scale, and the integral cancels to
// zero otherwise (full sum of p-th roots of unity on a subgroup).
struct CharIntegral {
    Rat magnitude;       // 0 or measure(B)
    Rat exponent_mod1;   // phase exponent, meaningful only when magnitude != 0
    bool is_zero() const { return magnitude == 0; }
};

inline CharIntegral char_integral(const Ball& b, const PAdicRational& x) {
    if (!vp_at_least(x, -b.scale)) return CharIntegral{Rat(0), Rat(0)};
    return CharIntegral{b.measure(), frac_p(b.center * x).to_rat()};
}

}  // namespace solenoid
