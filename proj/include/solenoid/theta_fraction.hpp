#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "solenoid/phase.hpp"
#include "solenoid/rational.hpp"

namespace solenoid {

// Dense polynomial over Q in the formal variable theta, ascending powers,
// trailing zeros trimmed.
class ThetaPolynomial {
public:
    ThetaPolynomial() = default;
    ThetaPolynomial(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }
    explicit ThetaPolynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static ThetaPolynomial constant(Rat v) { return ThetaPolynomial({std::move(v)}); }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    friend ThetaPolynomial operator+(const ThetaPolynomial& a, const ThetaPolynomial& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return ThetaPolynomial(std::move(c));
    }
    friend ThetaPolynomial operator-(const ThetaPolynomial& a, const ThetaPolynomial& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return ThetaPolynomial(std::move(c));
    }
    friend ThetaPolynomial operator*(const ThetaPolynomial& a, const ThetaPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return ThetaPolynomial(std::move(c));
    }

    ThetaPolynomial scaled(const Rat& q) const {
        std::vector<Rat> c = c_;
        for (auto& v : c) v *= q;
        return ThetaPolynomial(std::move(c));
    }

    friend bool operator==(const ThetaPolynomial&, const ThetaPolynomial&) = default;

    static std::pair<ThetaPolynomial, ThetaPolynomial> divmod(const ThetaPolynomial& a, const ThetaPolynomial& b) {
        if (b.is_zero()) throw std::domain_error("ThetaPolynomial: division by zero polynomial");
        std::vector<Rat> rem = a.c_;
        std::vector<Rat> quot(rem.size() > b.c_.size() ? rem.size() - b.c_.size() + 1 : 1, Rat(0));
        while (rem.size() >= b.c_.size() && !(rem.size() == 1 && rem[0] == 0)) {
            const size_t shift = rem.size() - b.c_.size();
            const Rat factor = rem.back() / b.c_.back();
            quot[shift] = factor;
            for (size_t i = 0; i < b.c_.size(); ++i) rem[shift + i] -= factor * b.c_[i];
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
            if (rem.empty()) break;
        }
        return {ThetaPolynomial(std::move(quot)), ThetaPolynomial(std::move(rem))};
    }

    // Monic gcd via Euclid.
    static ThetaPolynomial gcd(ThetaPolynomial a, ThetaPolynomial b) {
        while (!b.is_zero()) {
            auto [q, r] = divmod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a.scaled(Rat(1) / a.leading());
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

// Rational function in formal theta, gcd-reduced with monic denominator.
class ThetaRationalFunction {
public:
    ThetaRationalFunction() : num_(), den_(ThetaPolynomial::constant(1)) {}
    ThetaRationalFunction(ThetaPolynomial num, ThetaPolynomial den) : num_(std::move(num)), den_(std::move(den)) {
        reduce();
    }

    static ThetaRationalFunction constant(Rat v) {
        return ThetaRationalFunction(ThetaPolynomial::constant(std::move(v)), ThetaPolynomial::constant(1));
    }
    static ThetaRationalFunction theta() {
        return ThetaRationalFunction(ThetaPolynomial({Rat(0), Rat(1)}), ThetaPolynomial::constant(1));
    }

    const ThetaPolynomial& numerator() const { return num_; }
    const ThetaPolynomial& denominator() const { return den_; }

    friend ThetaRationalFunction operator+(const ThetaRationalFunction& a, const ThetaRationalFunction& b) {
        return ThetaRationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend ThetaRationalFunction operator-(const ThetaRationalFunction& a, const ThetaRationalFunction& b) {
        return ThetaRationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend ThetaRationalFunction operator*(const ThetaRationalFunction& a, const ThetaRationalFunction& b) {
        return ThetaRationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend ThetaRationalFunction operator/(const ThetaRationalFunction& a, const ThetaRationalFunction& b) {
        if (b.num_.is_zero()) throw std::domain_error("ThetaRationalFunction: division by zero");
        return ThetaRationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const ThetaRationalFunction&, const ThetaRationalFunction&) = default;

    bool is_integer_constant() const {
        if (num_.is_zero()) return true;
        return num_.degree() == 0 && den_.degree() == 0 && is_integer(num_.coeff(0));
    }

    // Whether this function differs from a + b theta (the evaluable part of a
    // PhaseExponent) by an integer constant, i.e. represents the same phase
    // for every theta. Exponents with 1/theta or theta^2 coordinates are not
    // comparable against a rational function in theta alone.
    bool equals_mod1(const PhaseExponent& target) const {
        if (target.inv != 0 || target.theta_sq != 0) return false;
        const ThetaRationalFunction linear(ThetaPolynomial({target.a, target.theta}),
                                           ThetaPolynomial::constant(1));
        return (*this - linear).is_integer_constant();
    }

private:
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("ThetaRationalFunction: zero denominator");
        const ThetaPolynomial g = ThetaPolynomial::gcd(num_, den_);
        if (!g.is_zero() && g.degree() >= 1) {
            num_ = ThetaPolynomial::divmod(num_, g).first;
            den_ = ThetaPolynomial::divmod(den_, g).first;
        }
        const Rat lead = den_.leading();
        num_ = num_.scaled(Rat(1) / lead);
        den_ = den_.scaled(Rat(1) / lead);
    }

    ThetaPolynomial num_;
    ThetaPolynomial den_;
};

inline ThetaRationalFunction theta_fraction_reduce(const ThetaRationalFunction& f) {
    return ThetaRationalFunction(f.numerator(), f.denominator());
}

}  // namespace solenoid
