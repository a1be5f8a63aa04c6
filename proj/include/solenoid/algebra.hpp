#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "solenoid/padic.hpp"
#include "solenoid/phase.hpp"
#include "solenoid/theta_fraction.hpp"

namespace solenoid {

// Element of Gamma = (Z[1/p])^2.
struct GammaElement {
    PAdicRational r1;
    PAdicRational r2;

    Prime prime() const { return r1.prime(); }

    static GammaElement zero(Prime p) { return {PAdicRational::zero(p), PAdicRational::zero(p)}; }

    friend GammaElement operator+(const GammaElement& a, const GammaElement& b) {
        return {a.r1 + b.r1, a.r2 + b.r2};
    }
    friend GammaElement operator-(const GammaElement& a, const GammaElement& b) {
        return {a.r1 - b.r1, a.r2 - b.r2};
    }
    GammaElement operator-() const { return {-r1, -r2}; }

    friend bool operator==(const GammaElement&, const GammaElement&) = default;
    friend std::strong_ordering operator<=>(const GammaElement& a, const GammaElement& b) {
        if (auto c = a.r1 <=> b.r1; c != 0) return c;
        return a.r2 <=> b.r2;
    }
};

// A point of the p-solenoid: alpha_0 with a digit stream m_j generating
// successors through alpha_{j+1} = (alpha_j + m_j)/p, which is the direction
// compatible with z_{n+1}^p = z_n. The theta family alpha_j = (theta+1)/p^j
// is kept formal so that exact identities hold for every theta.
class AlphaSequence {
public:
    static AlphaSequence theta_family(Prime p) { return AlphaSequence(p); }

    // Digit stream cycles when shorter than the requested index; an empty
    // stream extends by zeros.
    static AlphaSequence explicit_stream(Prime p, Rat alpha0, std::vector<long> digits) {
        AlphaSequence a(p);
        a.theta_family_ = false;
        a.alpha0_ = frac_mod1(alpha0);
        for (long d : digits)
            if (d < 0 || d >= p.value) throw std::invalid_argument("AlphaSequence: digit out of range");
        a.digits_ = std::move(digits);
        return a;
    }

    Prime prime() const { return p_; }
    bool is_theta_family() const { return theta_family_; }

    // Exponent of e^{2 pi i alpha_j}.
    PhaseExponent exponent_at(long j) const {
        const Rat inv_pj(1, int_pow(p_.value, static_cast<unsigned long>(j)));
        if (theta_family_) return PhaseExponent(inv_pj, inv_pj, 0);
        Rat a = alpha0_;
        for (long i = 0; i < j; ++i) a = (a + Rat(digit(i))) / p_.value;
        return PhaseExponent(a, 0, 0);
    }

    // p * alpha_{j+1} = alpha_j (mod 1) for all materialized indices.
    bool validate(long depth) const {
        for (long j = 0; j < depth; ++j) {
            const PhaseExponent lhs = phase_scale(Rat(p_.value), exponent_at(j + 1));
            if (!(lhs == exponent_at(j))) return false;
        }
        return true;
    }

    friend bool operator==(const AlphaSequence& a, const AlphaSequence& b) {
        return a.p_.value == b.p_.value && a.theta_family_ == b.theta_family_ && a.alpha0_ == b.alpha0_ &&
               a.digits_ == b.digits_;
    }

private:
    explicit AlphaSequence(Prime p) : p_(p), alpha0_(0) {}
    long digit(long i) const {
        if (digits_.empty()) return 0;
        return digits_[static_cast<size_t>(i) % digits_.size()];
    }

    Prime p_;
    bool theta_family_ = true;
    Rat alpha0_;
    std::vector<long> digits_;
};

// Psi_alpha(gamma1, gamma2) = e^{2 pi i alpha_{k1+k4} j1 j4}, computed from
// the canonical representations j1/p^{k1} and j4/p^{k4}. The Xi_p law makes
// the value independent of the chosen representation.
inline PhaseExponent psi_alpha(const AlphaSequence& alpha, const GammaElement& g1, const GammaElement& g2) {
    require_same_prime(alpha.prime(), g1.prime());
    require_same_prime(alpha.prime(), g2.prime());
    const long k = g1.r1.denom_exp() + g2.r2.denom_exp();
    return phase_scale(Rat(g1.r1.numerator() * g2.r2.numerator()), alpha.exponent_at(k));
}

enum class Side { D, Dperp };

// A point of the embedded lattice, parametrized by Gamma coordinates.
//
// Side D embeds as ((iota(r1), theta r1), (iota(r2), r2)). Side Dperp embeds
// as ((iota(r1), -r1), (iota(r2), -r2/theta)): this is the annihilator of D
// under the symmetrized Heisenberg multiplier, and restricting the conjugate
// multiplier to it gives e^{-2 pi i (1/theta + 1) r1 r4}.
struct DPoint {
    PAdicRational r1;
    PAdicRational r2;
    Side side = Side::D;

    Prime prime() const { return r1.prime(); }
    GammaElement gamma() const { return {r1, r2}; }

    static DPoint zero(Prime p, Side s) { return {PAdicRational::zero(p), PAdicRational::zero(p), s}; }

    friend DPoint operator+(const DPoint& a, const DPoint& b) {
        if (a.side != b.side) throw std::invalid_argument("DPoint: mixed sides");
        return {a.r1 + b.r1, a.r2 + b.r2, a.side};
    }
    DPoint operator-() const { return {-r1, -r2, side}; }
    friend bool operator==(const DPoint&, const DPoint&) = default;
};

// Embedded coordinates in (Q_p x R)^2; the real slots are theta-linear.
struct EmbeddedPoint {
    PAdicRational q1;
    ThetaLinear t1;
    PAdicRational q2;
    ThetaLinear t2;
};

inline EmbeddedPoint embed(const DPoint& d) {
    if (d.side == Side::D)
        return {d.r1, ThetaLinear::theta_times(d.r1.to_rat()), d.r2, ThetaLinear::rational(d.r2.to_rat())};
    return {d.r1, ThetaLinear::rational(-d.r1.to_rat()), d.r2, ThetaLinear::inv_theta_times(-d.r2.to_rat())};
}

// Heisenberg multiplier on M x M^ with M = Q_p x R:
// eta((m,s),(n,t)) = <m, t> = e^{2 pi i {q1 q4}_p} e^{2 pi i t1 t4}.
inline PhaseExponent heisenberg_eta(const EmbeddedPoint& x, const EmbeddedPoint& y) {
    const PhaseExponent real_part = theta_product_exponent(x.t1, y.t2);
    return PhaseExponent(frac_p(x.q1 * y.q2).to_rat(), 0, 0) + real_part;
}

// Symmetrized multiplier rho(x,y) = eta(x,y) conj(eta(y,x)).
inline PhaseExponent heisenberg_rho(const EmbeddedPoint& x, const EmbeddedPoint& y) {
    return heisenberg_eta(x, y) - heisenberg_eta(y, x);
}

// Multiplier restricted to one side: eta on D reduces to (theta+1) r1 r4,
// the conjugate multiplier on Dperp to -(1/theta + 1) r1 r4.
inline PhaseExponent eta(const DPoint& x, const DPoint& y) {
    if (x.side != y.side) throw std::invalid_argument("eta: multiplier mismatch (mixed sides)");
    const PhaseExponent raw = heisenberg_eta(embed(x), embed(y));
    return x.side == Side::D ? raw : -raw;
}

// Tag identifying which twisted convolution an element lives in.
class Multiplier {
public:
    enum class Kind { psi_alpha, eta_d, eta_dperp };

    static Multiplier make_psi_alpha(AlphaSequence alpha) {
        Multiplier m(alpha.prime(), Kind::psi_alpha);
        m.alpha_ = std::move(alpha);
        return m;
    }
    static Multiplier make_eta_d(Prime p) { return Multiplier(p, Kind::eta_d); }
    static Multiplier make_eta_dperp(Prime p) { return Multiplier(p, Kind::eta_dperp); }

    Prime prime() const { return p_; }
    Kind kind() const { return kind_; }

    PhaseExponent value(const GammaElement& g1, const GammaElement& g2) const {
        switch (kind_) {
            case Kind::psi_alpha:
                return psi_alpha(*alpha_, g1, g2);
            case Kind::eta_d:
                return eta(DPoint{g1.r1, g1.r2, Side::D}, DPoint{g2.r1, g2.r2, Side::D});
            case Kind::eta_dperp:
                return eta(DPoint{g1.r1, g1.r2, Side::Dperp}, DPoint{g2.r1, g2.r2, Side::Dperp});
        }
        throw std::logic_error("Multiplier: bad kind");
    }

    friend bool operator==(const Multiplier& a, const Multiplier& b) {
        if (a.p_.value != b.p_.value || a.kind_ != b.kind_) return false;
        if (a.kind_ != Kind::psi_alpha) return true;
        return *a.alpha_ == *b.alpha_;
    }

private:
    Multiplier(Prime p, Kind k) : p_(p), kind_(k) {}
    Prime p_;
    Kind kind_;
    std::optional<AlphaSequence> alpha_;
};

// sigma(x,y) sigma(x+y,z) = sigma(y,z) sigma(x,y+z), exact on exponents.
inline bool cocycle_check(const Multiplier& sigma, const GammaElement& x, const GammaElement& y,
                          const GammaElement& z) {
    const PhaseExponent lhs = sigma.value(x, y) + sigma.value(x + y, z);
    const PhaseExponent rhs = sigma.value(y, z) + sigma.value(x, y + z);
    return lhs == rhs;
}

// Finitely supported element of the twisted group algebra.
class AlgebraElement {
public:
    using Support = std::map<GammaElement, PhasePolynomial>;

    explicit AlgebraElement(Multiplier tag) : tag_(std::move(tag)) {}

    static AlgebraElement delta(const Multiplier& tag, const GammaElement& g,
                                PhasePolynomial coeff) {
        AlgebraElement e(tag);
        e.add_term(g, std::move(coeff));
        return e;
    }
    static AlgebraElement delta(const Multiplier& tag, const GammaElement& g) {
        return delta(tag, g, PhasePolynomial::one(tag.prime()));
    }
    static AlgebraElement unit(const Multiplier& tag) {
        return delta(tag, GammaElement::zero(tag.prime()));
    }
    static AlgebraElement zero(Multiplier tag) { return AlgebraElement(std::move(tag)); }

    const Multiplier& multiplier() const { return tag_; }
    const Support& support() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t support_size() const { return terms_.size(); }

    PhasePolynomial coeff_at(const GammaElement& g) const {
        const auto it = terms_.find(g);
        return it == terms_.end() ? PhasePolynomial::zero() : it->second;
    }

    void add_term(const GammaElement& g, PhasePolynomial c) { accumulate(g, c); }

    friend AlgebraElement operator+(const AlgebraElement& f, const AlgebraElement& g) {
        f.require_compatible(g);
        AlgebraElement out = f;
        for (const auto& [gamma, c] : g.terms_) out.accumulate(gamma, c);
        return out;
    }

    AlgebraElement scaled(const PhasePolynomial& s) const {
        AlgebraElement out(tag_);
        for (const auto& [gamma, c] : terms_) out.accumulate(gamma, c * s);
        return out;
    }

    AlgebraElement scaled_phase(const PhaseExponent& e) const {
        return scaled(PhasePolynomial::unit_phase(tag_.prime(), e));
    }

    friend bool operator==(const AlgebraElement& f, const AlgebraElement& g) {
        return f.tag_ == g.tag_ && f.terms_ == g.terms_;
    }

    // Numeric l^1 norm at a concrete theta; upper bound for the C*-norm.
    double l1_norm(double theta_value) const {
        double s = 0;
        for (const auto& [gamma, c] : terms_) s += std::abs(c.eval(theta_value));
        return s;
    }

private:
    void require_compatible(const AlgebraElement& other) const {
        if (!(tag_ == other.tag_))
            throw std::invalid_argument("AlgebraElement: multiplier mismatch");
    }
    void accumulate(const GammaElement& g, const PhasePolynomial& c) {
        auto it = terms_.find(g);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(g, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    friend AlgebraElement convolve(const AlgebraElement&, const AlgebraElement&);
    friend AlgebraElement involution(const AlgebraElement&);

    Multiplier tag_;
    Support terms_;
};

// (f * g)(gamma) = sum f(gamma1) g(gamma - gamma1) sigma(gamma1, gamma - gamma1).
inline AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g) {
    f.require_compatible(g);
    AlgebraElement out(f.tag_);
    const Prime p = f.tag_.prime();
    for (const auto& [g1, c1] : f.terms_)
        for (const auto& [g2, c2] : g.terms_) {
            const PhasePolynomial phase = PhasePolynomial::unit_phase(p, f.tag_.value(g1, g2));
            out.accumulate(g1 + g2, c1 * c2 * phase);
        }
    return out;
}

// f*(gamma) = conj(sigma(gamma, -gamma) f(-gamma)).
inline AlgebraElement involution(const AlgebraElement& f) {
    AlgebraElement out(f.tag_);
    const Prime p = f.tag_.prime();
    for (const auto& [g0, c0] : f.terms_) {
        const GammaElement g = -g0;
        const PhasePolynomial phase = PhasePolynomial::unit_phase(p, -f.tag_.value(g, g0));
        out.accumulate(g, c0.conj() * phase);
    }
    return out;
}

inline AlgebraElement convolve_power(const AlgebraElement& f, long n) {
    if (n < 1) throw std::invalid_argument("convolve_power: n must be positive");
    AlgebraElement acc = f;
    for (long i = 1; i < n; ++i) acc = convolve(acc, f);
    return acc;
}

enum class GeneratorKind { U, V };

// U_{alpha,j} = delta at ((iota(1/p^j), theta/p^j), (0,0));
// V_{alpha,j} = delta at ((0,0), (iota(1/p^j), 1/p^j)); both in the
// eta-algebra on D.
inline AlgebraElement generator_delta(Prime p, long level, GeneratorKind which) {
    if (level < 0) throw std::invalid_argument("generator_delta: negative level");
    const PAdicRational step(p, 1, level);
    const PAdicRational zero = PAdicRational::zero(p);
    const GammaElement g = which == GeneratorKind::U ? GammaElement{step, zero} : GammaElement{zero, step};
    return AlgebraElement::delta(Multiplier::make_eta_d(p), g);
}

// Fraction identity behind the stage-wise Morita equivalence: with
// beta_{2j} = -(theta+1)/(p^{2j} theta), the Moebius action through
// [[1,0],[p^{2j},1]] returns alpha_{2j} = (theta+1)/p^{2j} modulo 1.
inline bool morita_fraction_check(Prime p, long j, const Rat& perturbation = Rat(0)) {
    const Rat p2j(int_pow(p.value, static_cast<unsigned long>(2 * j)));
    const ThetaRationalFunction theta = ThetaRationalFunction::theta();
    const ThetaRationalFunction one = ThetaRationalFunction::constant(1);
    ThetaRationalFunction beta =
        ThetaRationalFunction::constant(-1) * (theta + one) / (ThetaRationalFunction::constant(p2j) * theta);
    if (perturbation != 0) beta = beta + ThetaRationalFunction::constant(perturbation);
    const ThetaRationalFunction mapped = beta / (ThetaRationalFunction::constant(p2j) * beta + one);
    const PhaseExponent alpha_2j(Rat(1) / p2j, Rat(1) / p2j, 0);
    return mapped.equals_mod1(alpha_2j);
}

}  // namespace solenoid
