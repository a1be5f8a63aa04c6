#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <compare>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "solenoid/padic.hpp"
#include "solenoid/rational.hpp"

namespace solenoid {

using Complex = std::complex<double>;

// Exponent of a unit phase e^{2 pi i (a + b theta + c/theta + d theta^2)}
// with theta treated as a formal symbol. Only the rational coordinate is
// defined mod 1; canonical form keeps it in [0,1). Exact equality of
// exponents is sound for every theta at once. The theta^2 coordinate only
// arises from modulation cross-terms on the real line; multiplier values
// never populate it.
struct PhaseExponent {
    Rat a;         // rational part, canonical in [0,1)
    Rat theta;     // coefficient of theta
    Rat inv;       // coefficient of 1/theta
    Rat theta_sq;  // coefficient of theta^2

    PhaseExponent() : a(0), theta(0), inv(0), theta_sq(0) {}
    PhaseExponent(Rat a_, Rat b_, Rat c_, Rat d_ = Rat(0))
        : a(frac_mod1(a_)), theta(std::move(b_)), inv(std::move(c_)), theta_sq(std::move(d_)) {}

    bool is_trivial() const { return a == 0 && theta == 0 && inv == 0 && theta_sq == 0; }

    friend PhaseExponent operator+(const PhaseExponent& x, const PhaseExponent& y) {
        return PhaseExponent(x.a + y.a, x.theta + y.theta, x.inv + y.inv, x.theta_sq + y.theta_sq);
    }
    friend PhaseExponent operator-(const PhaseExponent& x, const PhaseExponent& y) {
        return PhaseExponent(x.a - y.a, x.theta - y.theta, x.inv - y.inv, x.theta_sq - y.theta_sq);
    }
    PhaseExponent operator-() const { return PhaseExponent(-a, -theta, -inv, -theta_sq); }

    friend bool operator==(const PhaseExponent&, const PhaseExponent&) = default;

    friend std::strong_ordering operator<=>(const PhaseExponent& x, const PhaseExponent& y) {
        auto cmp = [](const Rat& u, const Rat& v) {
            if (u < v) return std::strong_ordering::less;
            if (v < u) return std::strong_ordering::greater;
            return std::strong_ordering::equal;
        };
        if (auto c = cmp(x.a, y.a); c != 0) return c;
        if (auto c = cmp(x.theta, y.theta); c != 0) return c;
        if (auto c = cmp(x.inv, y.inv); c != 0) return c;
        return cmp(x.theta_sq, y.theta_sq);
    }

    Complex eval(double theta_value) const {
        if (theta_value == 0.0) throw std::domain_error("PhaseExponent::eval: theta must be nonzero");
        const double arg = 2.0 * std::numbers::pi *
                           (to_double(a) + to_double(theta) * theta_value + to_double(inv) / theta_value +
                            to_double(theta_sq) * theta_value * theta_value);
        return Complex(std::cos(arg), std::sin(arg));
    }

    // Wire format "a/b;c/d;e/f" (rational; theta; 1/theta), extended by a
    // fourth fraction only when the theta^2 coordinate is nonzero.
    std::string str() const {
        std::string s = frac_str(a) + ";" + frac_str(theta) + ";" + frac_str(inv);
        if (theta_sq != 0) s += ";" + frac_str(theta_sq);
        return s;
    }
};

inline PhaseExponent phase_add(const PhaseExponent& x, const PhaseExponent& y) { return x + y; }
inline PhaseExponent phase_scale(const Rat& q, const PhaseExponent& x) {
    return PhaseExponent(q * x.a, q * x.theta, q * x.inv, q * x.theta_sq);
}
inline bool phase_is_trivial(const PhaseExponent& x) { return x.is_trivial(); }
inline Complex phase_eval(const PhaseExponent& x, double theta_value) { return x.eval(theta_value); }

// u + v sqrt(p), exact.
struct ScalarQSqrtP {
    Rat u;
    Rat v;
    Prime p;

    ScalarQSqrtP() : u(0), v(0) {}
    ScalarQSqrtP(Prime prime, Rat u_, Rat v_ = Rat(0)) : u(std::move(u_)), v(std::move(v_)), p(prime) {}

    static ScalarQSqrtP one(Prime prime) { return ScalarQSqrtP(prime, 1); }
    // sqrt(p)^k for k >= 0; negative k divides by the positive value p^{k/2}.
    static ScalarQSqrtP sqrt_p_pow(Prime prime, long k) {
        const bool neg = k < 0;
        const unsigned long n = static_cast<unsigned long>(neg ? -k : k);
        Rat whole(int_pow(prime.value, n / 2));
        ScalarQSqrtP r = (n % 2 == 0) ? ScalarQSqrtP(prime, whole) : ScalarQSqrtP(prime, 0, whole);
        if (!neg) return r;
        // 1/(p^{m} sqrt(p)^{e}) with e in {0,1}: rationalize by sqrt(p)/p.
        if (r.v == 0) return ScalarQSqrtP(prime, Rat(1) / r.u);
        return ScalarQSqrtP(prime, 0, Rat(1) / (r.v * prime.value));
    }

    bool is_zero() const { return u == 0 && v == 0; }

    friend ScalarQSqrtP operator+(const ScalarQSqrtP& x, const ScalarQSqrtP& y) {
        require_same_prime(x.p, y.p);
        return ScalarQSqrtP(x.p, x.u + y.u, x.v + y.v);
    }
    friend ScalarQSqrtP operator-(const ScalarQSqrtP& x, const ScalarQSqrtP& y) {
        require_same_prime(x.p, y.p);
        return ScalarQSqrtP(x.p, x.u - y.u, x.v - y.v);
    }
    ScalarQSqrtP operator-() const { return ScalarQSqrtP(p, -u, -v); }
    friend ScalarQSqrtP operator*(const ScalarQSqrtP& x, const ScalarQSqrtP& y) {
        require_same_prime(x.p, y.p);
        return ScalarQSqrtP(x.p, x.u * y.u + Rat(x.p.value) * x.v * y.v, x.u * y.v + x.v * y.u);
    }

    friend bool operator==(const ScalarQSqrtP& x, const ScalarQSqrtP& y) {
        return x.p.value == y.p.value && x.u == y.u && x.v == y.v;
    }

    double eval() const { return to_double(u) + to_double(v) * std::sqrt(static_cast<double>(p.value)); }
};

// Finite Q[sqrt(p)]-linear combination of formal phases. Terms are kept
// sorted by exponent with zero coefficients dropped, so equality is
// structural.
class PhasePolynomial {
public:
    struct Term {
        ScalarQSqrtP coeff;
        PhaseExponent exponent;
    };

    PhasePolynomial() = default;
    explicit PhasePolynomial(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

    static PhasePolynomial zero() { return PhasePolynomial(); }
    static PhasePolynomial one(Prime p) { return unit_phase(p, PhaseExponent()); }
    static PhasePolynomial unit_phase(Prime p, const PhaseExponent& e) {
        return PhasePolynomial({Term{ScalarQSqrtP::one(p), e}});
    }
    static PhasePolynomial scalar(const ScalarQSqrtP& s) { return PhasePolynomial({Term{s, PhaseExponent()}}); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend PhasePolynomial operator+(const PhasePolynomial& x, const PhasePolynomial& y) {
        std::vector<Term> t = x.terms_;
        t.insert(t.end(), y.terms_.begin(), y.terms_.end());
        return PhasePolynomial(std::move(t));
    }
    friend PhasePolynomial operator-(const PhasePolynomial& x, const PhasePolynomial& y) { return x + (-y); }
    PhasePolynomial operator-() const {
        std::vector<Term> t = terms_;
        for (auto& term : t) term.coeff = -term.coeff;
        return PhasePolynomial(std::move(t));
    }
    friend PhasePolynomial operator*(const PhasePolynomial& x, const PhasePolynomial& y) {
        std::vector<Term> t;
        t.reserve(x.terms_.size() * y.terms_.size());
        for (const auto& a : x.terms_)
            for (const auto& b : y.terms_) t.push_back(Term{a.coeff * b.coeff, a.exponent + b.exponent});
        return PhasePolynomial(std::move(t));
    }

    PhasePolynomial scaled(const Rat& q) const {
        std::vector<Term> t = terms_;
        for (auto& term : t) term.coeff = ScalarQSqrtP(term.coeff.p, term.coeff.u * q, term.coeff.v * q);
        return PhasePolynomial(std::move(t));
    }

    // Complex conjugate: coefficients are real, so only exponents flip.
    PhasePolynomial conj() const {
        std::vector<Term> t = terms_;
        for (auto& term : t) term.exponent = -term.exponent;
        return PhasePolynomial(std::move(t));
    }

    friend bool operator==(const PhasePolynomial& x, const PhasePolynomial& y) {
        if (x.terms_.size() != y.terms_.size()) return false;
        for (size_t i = 0; i < x.terms_.size(); ++i)
            if (!(x.terms_[i].coeff == y.terms_[i].coeff) || !(x.terms_[i].exponent == y.terms_[i].exponent))
                return false;
        return true;
    }

    Complex eval(double theta_value) const {
        Complex z(0, 0);
        for (const auto& t : terms_) z += t.coeff.eval() * t.exponent.eval(theta_value);
        return z;
    }

private:
    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
        std::vector<Term> merged;
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().exponent == t.exponent)
                merged.back().coeff = merged.back().coeff + t.coeff;
            else
                merged.push_back(std::move(t));
        }
        std::erase_if(merged, [](const Term& t) { return t.coeff.is_zero(); });
        terms_ = std::move(merged);
    }

    std::vector<Term> terms_;
};

// q0 + q1 theta + qm1 / theta with exact rational coefficients. Translation
// amounts on the real line stay in Q + Q theta; frequencies can pick up a
// 1/theta component through the right module action.
struct ThetaLinear {
    Rat q0;
    Rat q1;
    Rat qm1;

    ThetaLinear() : q0(0), q1(0), qm1(0) {}
    ThetaLinear(Rat c0, Rat c1, Rat cm1 = Rat(0)) : q0(std::move(c0)), q1(std::move(c1)), qm1(std::move(cm1)) {}

    static ThetaLinear rational(Rat c) { return ThetaLinear(std::move(c), 0); }
    static ThetaLinear theta_times(Rat c) { return ThetaLinear(0, std::move(c)); }
    static ThetaLinear inv_theta_times(Rat c) { return ThetaLinear(0, 0, std::move(c)); }

    bool is_zero() const { return q0 == 0 && q1 == 0 && qm1 == 0; }

    friend ThetaLinear operator+(const ThetaLinear& x, const ThetaLinear& y) {
        return ThetaLinear(x.q0 + y.q0, x.q1 + y.q1, x.qm1 + y.qm1);
    }
    friend ThetaLinear operator-(const ThetaLinear& x, const ThetaLinear& y) {
        return ThetaLinear(x.q0 - y.q0, x.q1 - y.q1, x.qm1 - y.qm1);
    }
    ThetaLinear operator-() const { return ThetaLinear(-q0, -q1, -qm1); }
    friend ThetaLinear operator*(const Rat& c, const ThetaLinear& x) {
        return ThetaLinear(c * x.q0, c * x.q1, c * x.qm1);
    }

    friend bool operator==(const ThetaLinear&, const ThetaLinear&) = default;
    friend std::strong_ordering operator<=>(const ThetaLinear& x, const ThetaLinear& y) {
        auto cmp = [](const Rat& u, const Rat& v) {
            if (u < v) return std::strong_ordering::less;
            if (v < u) return std::strong_ordering::greater;
            return std::strong_ordering::equal;
        };
        if (auto c = cmp(x.q0, y.q0); c != 0) return c;
        if (auto c = cmp(x.q1, y.q1); c != 0) return c;
        return cmp(x.qm1, y.qm1);
    }

    double eval(double theta_value) const {
        return to_double(q0) + to_double(q1) * theta_value + to_double(qm1) / theta_value;
    }
};

// Product of two theta-linear values as a phase exponent. The values this
// library multiplies never carry 1/theta on both sides, so theta^{-2} cannot
// be represented and is rejected.
inline PhaseExponent theta_product_exponent(const ThetaLinear& x, const ThetaLinear& y) {
    if (x.qm1 != 0 && y.qm1 != 0)
        throw std::domain_error("theta_product_exponent: theta^-2 term not representable");
    const Rat rational = x.q0 * y.q0 + x.q1 * y.qm1 + x.qm1 * y.q1;
    const Rat theta = x.q0 * y.q1 + x.q1 * y.q0;
    const Rat inv = x.q0 * y.qm1 + x.qm1 * y.q0;
    const Rat theta_sq = x.q1 * y.q1;
    return PhaseExponent(rational, theta, inv, theta_sq);
}

}  // namespace solenoid
