#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "solenoid/padic.hpp"
#include "solenoid/phase.hpp"
#include "solenoid/quadrature.hpp"

namespace solenoid {

// ---------------------------------------------------------------------------
// Bruhat-Schwartz test functions on Q_p: finite combinations of disjoint
// canonical balls with PhasePolynomial coefficients.
//
// Normal form: refine to a common scale, merge equal balls, drop zeros, then
// re-merge every complete family of p siblings carrying the same coefficient.
// The final coarsening step makes the representation independent of the
// construction path, so structural equality decides function equality.
// ---------------------------------------------------------------------------
class TestFunctionQp {
public:
    struct Piece {
        Ball ball;
        PhasePolynomial coeff;
    };

    TestFunctionQp() = default;
    explicit TestFunctionQp(std::vector<Piece> pieces) : pieces_(std::move(pieces)) { normalize(); }

    static TestFunctionQp indicator(const Ball& b, const PhasePolynomial& c) {
        return TestFunctionQp({Piece{b, c}});
    }
    static TestFunctionQp indicator(const Ball& b) {
        return indicator(b, PhasePolynomial::one(b.prime()));
    }

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool is_zero() const { return pieces_.empty(); }

    friend TestFunctionQp operator+(const TestFunctionQp& f, const TestFunctionQp& g) {
        std::vector<Piece> all = f.pieces_;
        all.insert(all.end(), g.pieces_.begin(), g.pieces_.end());
        return TestFunctionQp(std::move(all));
    }
    friend TestFunctionQp operator-(const TestFunctionQp& f, const TestFunctionQp& g) {
        return f + g.negated();
    }

    TestFunctionQp scaled(const PhasePolynomial& s) const {
        std::vector<Piece> out = pieces_;
        for (auto& p : out) p.coeff = p.coeff * s;
        return TestFunctionQp(std::move(out));
    }

    TestFunctionQp negated() const {
        std::vector<Piece> out = pieces_;
        for (auto& p : out) p.coeff = -p.coeff;
        return TestFunctionQp(std::move(out));
    }

    friend bool operator==(const TestFunctionQp& f, const TestFunctionQp& g) {
        if (f.pieces_.size() != g.pieces_.size()) return false;
        for (size_t i = 0; i < f.pieces_.size(); ++i)
            if (!(f.pieces_[i].ball == g.pieces_[i].ball) || !(f.pieces_[i].coeff == g.pieces_[i].coeff))
                return false;
        return true;
    }

    Prime prime() const {
        if (pieces_.empty()) throw std::logic_error("TestFunctionQp: prime of empty function");
        return pieces_.front().ball.prime();
    }

    PhasePolynomial value_at(const PAdicRational& q) const {
        for (const auto& p : pieces_)
            if (ball_contains(p.ball, q)) return p.coeff;
        return PhasePolynomial::zero();
    }

private:
    void normalize() {
        std::erase_if(pieces_, [](const Piece& p) { return p.coeff.is_zero(); });
        if (pieces_.empty()) return;
        long s = pieces_.front().ball.scale;
        for (const auto& p : pieces_) s = std::max(s, p.ball.scale);
        std::map<Ball, PhasePolynomial> merged;
        for (const auto& p : pieces_)
            for (const Ball& child : ball_refine(p.ball, s)) {
                auto it = merged.find(child);
                if (it == merged.end())
                    merged.emplace(child, p.coeff);
                else
                    it->second = it->second + p.coeff;
            }
        std::erase_if(merged, [](const auto& kv) { return kv.second.is_zero(); });
        coarsen(merged);
        pieces_.clear();
        pieces_.reserve(merged.size());
        for (auto& [b, c] : merged) pieces_.push_back(Piece{b, std::move(c)});
    }

    static void coarsen(std::map<Ball, PhasePolynomial>& balls) {
        bool changed = true;
        while (changed) {
            changed = false;
            std::map<Ball, std::vector<const Ball*>> families;
            for (const auto& [b, c] : balls)
                families[ball_canonicalize(b.center, b.scale - 1)].push_back(&b);
            for (const auto& [parent, children] : families) {
                const long p = parent.prime().value;
                if (static_cast<long>(children.size()) != p) continue;
                bool same_scale = true;
                for (const Ball* ch : children) same_scale &= (ch->scale == parent.scale + 1);
                if (!same_scale) continue;
                const PhasePolynomial& c0 = balls.at(*children.front());
                bool equal = true;
                for (const Ball* ch : children) equal &= (balls.at(*ch) == c0);
                if (!equal) continue;
                PhasePolynomial c = c0;
                for (const Ball* ch : children) balls.erase(*ch);
                balls.emplace(parent, std::move(c));
                changed = true;
                break;  // family map holds dangling pointers now; rebuild
            }
        }
    }

    std::vector<Piece> pieces_;
};

// Translation q -> q + iota(r): supports shift by -r.
inline TestFunctionQp tf_translate(const TestFunctionQp& f, const PAdicRational& r) {
    std::vector<TestFunctionQp::Piece> out;
    out.reserve(f.pieces().size());
    for (const auto& p : f.pieces())
        out.push_back({ball_canonicalize(p.ball.center - r, p.ball.scale), p.coeff});
    return TestFunctionQp(std::move(out));
}

// Multiplication by the character q -> e^{2 pi i {q x}_p}: each ball is
// refined until the character is constant on it.
inline TestFunctionQp tf_mul_char(const TestFunctionQp& f, const PAdicRational& x) {
    const auto v = vp(x);
    std::vector<TestFunctionQp::Piece> out;
    for (const auto& p : f.pieces()) {
        const long target = v.has_value() ? std::max(p.ball.scale, -*v) : p.ball.scale;
        for (const Ball& child : ball_refine(p.ball, target)) {
            const PhaseExponent phase(frac_p(child.center * x).to_rat(), 0, 0);
            out.push_back({child, p.coeff * PhasePolynomial::unit_phase(x.prime(), phase)});
        }
    }
    return TestFunctionQp(std::move(out));
}

// f -> f(p^{-1} q): Ball(c, j) becomes Ball(pc, j+1); integral scales by 1/p.
inline TestFunctionQp tf_dilate(const TestFunctionQp& f) {
    std::vector<TestFunctionQp::Piece> out;
    out.reserve(f.pieces().size());
    for (const auto& p : f.pieces()) {
        const PAdicRational scaled_center =
            p.ball.center * PAdicRational(p.ball.prime(), p.ball.prime().value, 0);
        out.push_back({ball_canonicalize(scaled_center, p.ball.scale + 1), p.coeff});
    }
    return TestFunctionQp(std::move(out));
}

inline PhasePolynomial tf_integrate(const TestFunctionQp& f) {
    PhasePolynomial total = PhasePolynomial::zero();
    for (const auto& p : f.pieces()) total = total + p.coeff.scaled(p.ball.measure());
    return total;
}

// Coefficients of f over the depth-j Haar space spanned by the p^{2j}
// indicators of iota(m/p^j) + p^j Z_p, or nullopt when f falls outside it.
inline std::optional<std::vector<PhasePolynomial>> mrs_express(Prime p, const TestFunctionQp& f, long j) {
    if (j < 0) throw std::invalid_argument("mrs_express: negative depth");
    const Int dim = int_pow(p.value, static_cast<unsigned long>(2 * j));
    if (f.is_zero()) return std::vector<PhasePolynomial>(static_cast<size_t>(dim), PhasePolynomial::zero());
    require_same_prime(p, f.prime());
    std::vector<PhasePolynomial> coeffs(static_cast<size_t>(dim), PhasePolynomial::zero());

    long s = j;
    for (const auto& piece : f.pieces()) s = std::max(s, piece.ball.scale);

    // Gather at the working scale s >= j, then require constancy on each
    // scale-j basis ball.
    std::map<Ball, PhasePolynomial> fine;
    for (const auto& piece : f.pieces())
        for (const Ball& child : ball_refine(piece.ball, s)) fine.emplace(child, piece.coeff);

    const Int children_per_ball = int_pow(p.value, static_cast<unsigned long>(s - j));
    std::map<Ball, std::pair<PhasePolynomial, Int>> per_parent;
    for (const auto& [b, c] : fine) {
        const Ball parent = ball_canonicalize(b.center, j);
        auto it = per_parent.find(parent);
        if (it == per_parent.end())
            per_parent.emplace(parent, std::make_pair(c, Int(1)));
        else {
            if (!(it->second.first == c)) return std::nullopt;  // not constant on the basis ball
            ++it->second.second;
        }
    }

    for (const auto& [parent, cc] : per_parent) {
        if (cc.second != children_per_ball) return std::nullopt;  // partially covered ball
        // Basis balls have centers m/p^j with 0 <= m < p^{2j}.
        if (parent.center.denom_exp() > j) return std::nullopt;
        const Rat m = parent.center.to_rat() * Rat(int_pow(p.value, static_cast<unsigned long>(j)));
        if (!is_integer(m) || m < 0 || Rat(dim) <= m) return std::nullopt;
        coeffs[static_cast<size_t>(numerator(m).convert_to<long>())] = cc.first;
    }
    return coeffs;
}

inline TestFunctionQp mrs_reconstruct(Prime p, const std::vector<PhasePolynomial>& coeffs, long j) {
    std::vector<TestFunctionQp::Piece> pieces;
    for (size_t m = 0; m < coeffs.size(); ++m) {
        if (coeffs[m].is_zero()) continue;
        pieces.push_back({ball_canonicalize(PAdicRational(p, Int(m), j), j), coeffs[m]});
    }
    return TestFunctionQp(std::move(pieces));
}

// ---------------------------------------------------------------------------
// Gabor atoms on R: coeff * e^{-pi a (t - mu)^2} * e^{2 pi i omega t} with
// exact width, theta-linear center and frequency. The Gaussian class stands
// in for smooth compactly supported windows; it is closed under every
// transformation the module actions need and all pairing integrals have
// closed forms.
// ---------------------------------------------------------------------------
struct GaborAtom {
    PhasePolynomial coeff;
    Rat width;
    ThetaLinear center;
    ThetaLinear frequency;

    friend bool operator==(const GaborAtom&, const GaborAtom&) = default;
};

inline GaborAtom unit_gaussian(Prime p) {
    return GaborAtom{PhasePolynomial::one(p), Rat(1), ThetaLinear(), ThetaLinear()};
}

class RealFunction {
public:
    RealFunction() = default;
    explicit RealFunction(std::vector<GaborAtom> atoms) : atoms_(std::move(atoms)) { normalize(); }

    static RealFunction single(GaborAtom a) { return RealFunction({std::move(a)}); }

    const std::vector<GaborAtom>& atoms() const { return atoms_; }
    bool is_zero() const { return atoms_.empty(); }

    friend RealFunction operator+(const RealFunction& f, const RealFunction& g) {
        std::vector<GaborAtom> all = f.atoms_;
        all.insert(all.end(), g.atoms_.begin(), g.atoms_.end());
        return RealFunction(std::move(all));
    }

    RealFunction scaled(const PhasePolynomial& s) const {
        std::vector<GaborAtom> out = atoms_;
        for (auto& a : out) a.coeff = a.coeff * s;
        return RealFunction(std::move(out));
    }

    // f(t) -> f(t + s); picks up the exact cross phase e^{2 pi i omega s}.
    RealFunction translated(const ThetaLinear& s) const {
        std::vector<GaborAtom> out = atoms_;
        for (auto& a : out) {
            a.coeff = a.coeff * PhasePolynomial::unit_phase(coeff_prime(a), theta_product_exponent(a.frequency, s));
            a.center = a.center - s;
        }
        return RealFunction(std::move(out));
    }

    // f(t) -> e^{2 pi i v t} f(t).
    RealFunction modulated(const ThetaLinear& v) const {
        std::vector<GaborAtom> out = atoms_;
        for (auto& a : out) a.frequency = a.frequency + v;
        return RealFunction(std::move(out));
    }

    // f(t) -> f(t / sigma) for rational sigma > 0.
    RealFunction dilated(const Rat& sigma) const {
        if (sigma <= 0) throw std::invalid_argument("RealFunction::dilated: factor must be positive");
        std::vector<GaborAtom> out = atoms_;
        const Rat inv = Rat(1) / sigma;
        for (auto& a : out) {
            a.width = a.width * inv * inv;
            a.center = sigma * a.center;
            a.frequency = inv * a.frequency;
        }
        return RealFunction(std::move(out));
    }

    friend bool operator==(const RealFunction& f, const RealFunction& g) {
        if (f.atoms_.size() != g.atoms_.size()) return false;
        for (size_t i = 0; i < f.atoms_.size(); ++i)
            if (!(f.atoms_[i] == g.atoms_[i])) return false;
        return true;
    }

    Complex eval(double t, double theta_value) const {
        Complex z(0, 0);
        for (const auto& a : atoms_) {
            const double d = t - a.center.eval(theta_value);
            const double gauss = std::exp(-std::numbers::pi * to_double(a.width) * d * d);
            const double arg = 2.0 * std::numbers::pi * a.frequency.eval(theta_value) * t;
            z += a.coeff.eval(theta_value) * gauss * Complex(std::cos(arg), std::sin(arg));
        }
        return z;
    }

private:
    static Prime coeff_prime(const GaborAtom& a) {
        if (a.coeff.is_zero()) return Prime(2);
        return a.coeff.terms().front().coeff.p;
    }
    static std::strong_ordering key_cmp(const GaborAtom& x, const GaborAtom& y) {
        auto cmp = [](const Rat& u, const Rat& v) {
            if (u < v) return std::strong_ordering::less;
            if (v < u) return std::strong_ordering::greater;
            return std::strong_ordering::equal;
        };
        if (auto c = cmp(x.width, y.width); c != 0) return c;
        if (auto c = x.center <=> y.center; c != 0) return c;
        return x.frequency <=> y.frequency;
    }
    void normalize() {
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const GaborAtom& a, const GaborAtom& b) { return key_cmp(a, b) < 0; });
        std::vector<GaborAtom> merged;
        for (auto& a : atoms_) {
            if (!merged.empty() && key_cmp(merged.back(), a) == 0)
                merged.back().coeff = merged.back().coeff + a.coeff;
            else
                merged.push_back(std::move(a));
        }
        std::erase_if(merged, [](const GaborAtom& a) { return a.coeff.is_zero(); });
        atoms_ = std::move(merged);
    }

    std::vector<GaborAtom> atoms_;
};

// Combined structural transform, applied as dilate, then shift, then
// modulate: result(t) = e^{2 pi i v t} g((t + s)/sigma).
inline RealFunction atom_transform(const RealFunction& g, const ThetaLinear& shift, const ThetaLinear& modulate,
                                   const Rat& dilate) {
    return g.dilated(dilate).translated(shift).modulated(modulate);
}

// ---------------------------------------------------------------------------
// Pairing integral I = \int e^{-2 pi i v t} A1(t) conj(A2(t + s)) dt for a
// pair of unit-coefficient atoms. The parameters stay exact; only the final
// evaluation at a concrete theta produces floating point.
// ---------------------------------------------------------------------------
struct OverlapSpec {
    Rat width1;
    ThetaLinear center1, freq1;
    Rat width2;
    ThetaLinear center2, freq2;
    ThetaLinear shift;  // s
    ThetaLinear freq;   // v

    friend bool operator==(const OverlapSpec&, const OverlapSpec&) = default;
    friend std::strong_ordering operator<=>(const OverlapSpec& x, const OverlapSpec& y) {
        auto cmp = [](const Rat& u, const Rat& v) {
            if (u < v) return std::strong_ordering::less;
            if (v < u) return std::strong_ordering::greater;
            return std::strong_ordering::equal;
        };
        if (auto c = cmp(x.width1, y.width1); c != 0) return c;
        if (auto c = x.center1 <=> y.center1; c != 0) return c;
        if (auto c = x.freq1 <=> y.freq1; c != 0) return c;
        if (auto c = cmp(x.width2, y.width2); c != 0) return c;
        if (auto c = x.center2 <=> y.center2; c != 0) return c;
        if (auto c = x.freq2 <=> y.freq2; c != 0) return c;
        if (auto c = x.shift <=> y.shift; c != 0) return c;
        return x.freq <=> y.freq;
    }
};

inline OverlapSpec make_overlap_spec(const GaborAtom& g1, const GaborAtom& g2, const ThetaLinear& shift,
                                     const ThetaLinear& freq) {
    return OverlapSpec{g1.width, g1.center, g1.frequency, g2.width, g2.center, g2.frequency, shift, freq};
}

// Closed form via Gaussian completion of squares:
//   I = e^{-2 pi i w2 s} A^{-1/2} e^{-pi a1 a2 (mu1-mu2')^2 / A}
//       e^{-pi nu^2 / A} e^{2 pi i nu m}
// with mu2' = mu2 - s, nu = w1 - w2 - v, A = a1 + a2,
// m = (a1 mu1 + a2 mu2')/A.
inline Complex overlap_value(const OverlapSpec& o, double theta_value) {
    const double a1 = to_double(o.width1);
    const double a2 = to_double(o.width2);
    const double s = o.shift.eval(theta_value);
    const double mu1 = o.center1.eval(theta_value);
    const double mu2p = o.center2.eval(theta_value) - s;
    const double w1 = o.freq1.eval(theta_value);
    const double w2 = o.freq2.eval(theta_value);
    const double v = o.freq.eval(theta_value);
    const double A = a1 + a2;
    const double nu = w1 - w2 - v;
    const double m = (a1 * mu1 + a2 * mu2p) / A;
    const double delta = mu1 - mu2p;
    const double pi = std::numbers::pi;
    const double mag = std::exp(-pi * a1 * a2 * delta * delta / A) * std::exp(-pi * nu * nu / A) / std::sqrt(A);
    const double arg = 2.0 * pi * (nu * m - w2 * s);
    return mag * Complex(std::cos(arg), std::sin(arg));
}

// Independent numeric route for the same integral.
inline Complex overlap_value_quadrature(const OverlapSpec& o, double theta_value, double tol = 1e-10) {
    const double a1 = to_double(o.width1);
    const double a2 = to_double(o.width2);
    const double s = o.shift.eval(theta_value);
    const double mu1 = o.center1.eval(theta_value);
    const double mu2p = o.center2.eval(theta_value) - s;
    const double w1 = o.freq1.eval(theta_value);
    const double w2 = o.freq2.eval(theta_value);
    const double v = o.freq.eval(theta_value);
    const double pi = std::numbers::pi;
    const double A = a1 + a2;
    const double m = (a1 * mu1 + a2 * mu2p) / A;
    const double half_width = std::sqrt(std::log(1e22) / (pi * A)) + 1.0;
    const auto integrand = [&](double t) {
        const double g = std::exp(-pi * (a1 * (t - mu1) * (t - mu1) + a2 * (t - mu2p) * (t - mu2p)));
        const double arg = 2.0 * pi * ((w1 - w2 - v) * t - w2 * s);
        return g * Complex(std::cos(arg), std::sin(arg));
    };
    return quadrature::integrate(integrand, m - half_width, m + half_width, tol);
}

inline Complex overlap_integral(const GaborAtom& g1, const GaborAtom& g2, const ThetaLinear& shift,
                                const Rat& freq, double theta_value) {
    const Complex unit = overlap_value(make_overlap_spec(g1, g2, shift, ThetaLinear::rational(freq)), theta_value);
    return g1.coeff.eval(theta_value) * std::conj(g2.coeff.eval(theta_value)) * unit;
}

inline Complex overlap_integral_quadrature(const GaborAtom& g1, const GaborAtom& g2, const ThetaLinear& shift,
                                           const Rat& freq, double theta_value, double tol = 1e-10) {
    const Complex unit =
        overlap_value_quadrature(make_overlap_spec(g1, g2, shift, ThetaLinear::rational(freq)), theta_value, tol);
    return g1.coeff.eval(theta_value) * std::conj(g2.coeff.eval(theta_value)) * unit;
}

}  // namespace solenoid
