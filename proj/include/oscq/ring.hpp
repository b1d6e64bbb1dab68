#pragma once

// Exact coefficient arithmetic: multivariate polynomials over the rationals
// in a declared set of deformation parameters.  The reserved parameter `s`
// stands for a square root of x*z and is reduced via s^2 -> x*z, so the ring
// stays polynomial.  Derived parameters (used for the few fractions the
// deformations need) carry product constraints that are checked at numeric
// evaluation time.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oscq/errors.hpp"

namespace oscq {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exponent vector over the ring's parameters, same length as the parameter list.
using ExpVec = std::vector<std::uint8_t>;

// Multiplicative constraint prod(lhs) == prod(rhs), each side a list of
// (parameter index, exponent).  Checked when coefficients are evaluated.
struct ProductConstraint {
    std::vector<std::pair<int, int>> lhs;
    std::vector<std::pair<int, int>> rhs;
    std::string label;
    // When set, the constraint is also used as a canonicalizing rewrite
    // lhs -> rhs on monomials, so coefficients differing by the constraint
    // compare equal.
    bool reduce = false;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Coefficient;

class Ring : public std::enable_shared_from_this<Ring> {
public:
    static RingPtr make(std::vector<std::string> names,
                        std::vector<ProductConstraint> constraints = {}) {
        auto ring = std::shared_ptr<Ring>(new Ring());
        ring->names_ = std::move(names);
        for (std::size_t i = 0; i < ring->names_.size(); ++i) {
            for (std::size_t j = i + 1; j < ring->names_.size(); ++j)
                if (ring->names_[i] == ring->names_[j])
                    throw DuplicateParameter("duplicate parameter: " + ring->names_[i]);
        }
        ring->s_ = ring->index_of("s");
        ring->x_ = ring->index_of("x");
        ring->z_ = ring->index_of("z");
        if (ring->s_ >= 0) {
            if (ring->x_ < 0 || ring->z_ < 0)
                throw UnboundParameter("parameter s requires x and z in the ring");
            ring->constraints_.push_back(
                {{{ring->s_, 2}}, {{ring->x_, 1}, {ring->z_, 1}}, "s^2 = x*z"});
        }
        for (auto& c : constraints) ring->constraints_.push_back(std::move(c));
        return ring;
    }

    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        return -1;
    }
    int require(const std::string& name) const {
        int i = index_of(name);
        if (i < 0) throw UnboundParameter("parameter not in ring: " + name);
        return i;
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& names() const { return names_; }
    int s_index() const { return s_; }
    int x_index() const { return x_; }
    int z_index() const { return z_; }
    const std::vector<ProductConstraint>& constraints() const { return constraints_; }

    // Factories are defined after Coefficient.
    Coefficient zero() const;
    Coefficient one() const;
    Coefficient rational(const Rational& r) const;
    Coefficient param(const std::string& name) const;

private:
    Ring() = default;
    std::vector<std::string> names_;
    int s_ = -1, x_ = -1, z_ = -1;
    std::vector<ProductConstraint> constraints_;
};

// Numeric assignment used by Coefficient::eval.
using Assignment = std::map<std::string, double>;

class Coefficient {
public:
    Coefficient() = default;
    explicit Coefficient(RingPtr ring) : ring_(std::move(ring)) {}

    const RingPtr& ring() const { return ring_; }
    const std::map<ExpVec, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_rational() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 && is_constant_exp(terms_.begin()->first);
    }
    Rational rational_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_rational()) throw Error("coefficient is not a rational constant");
        return terms_.begin()->second;
    }

    void add_term(ExpVec e, Rational c) {
        if (c == 0) return;
        reduce_s(e);
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Coefficient operator-() const {
        Coefficient r(ring_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    Coefficient& operator+=(const Coefficient& o) {
        check_ring(o);
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Coefficient& operator-=(const Coefficient& o) {
        check_ring(o);
        for (auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }

    friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
        a.check_ring(b);
        Coefficient r(a.ring_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                ExpVec e(ea);
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = static_cast<std::uint8_t>(e[i] + eb[i]);
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }
    Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }

    friend Coefficient operator*(const Coefficient& a, const Rational& r) {
        Coefficient out(a.ring_);
        if (r == 0) return out;
        for (auto& [e, c] : a.terms_) out.terms_.emplace(e, c * r);
        return out;
    }
    friend Coefficient operator*(const Rational& r, const Coefficient& a) { return a * r; }

    Coefficient pow(unsigned n) const {
        Coefficient r = ring_->one();
        Coefficient base = *this;
        while (n) {
            if (n & 1u) r = r * base;
            base = base * base;
            n >>= 1u;
        }
        return r;
    }

    bool operator==(const Coefficient& o) const { return terms_ == o.terms_; }
    bool operator!=(const Coefficient& o) const { return !(*this == o); }
    bool operator<(const Coefficient& o) const { return terms_ < o.terms_; }

    // Exact numeric substitution.  Every parameter occurring in the
    // coefficient must be assigned; ring constraints whose parameters are all
    // assigned are validated to 1e-12 relative tolerance.
    double eval(const Assignment& assign) const {
        std::vector<std::optional<double>> v(ring_->size());
        for (auto& [name, val] : assign) {
            int i = ring_->index_of(name);
            if (i >= 0) v[static_cast<std::size_t>(i)] = val;
        }
        check_constraints(v);
        double total = 0.0;
        for (auto& [e, c] : terms_) {
            double t = static_cast<double>(c);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!v[i])
                    throw UnboundParameter("unassigned parameter: " + ring_->name(static_cast<int>(i)));
                t *= std::pow(*v[i], static_cast<double>(e[i]));
            }
            total += t;
        }
        return total;
    }

    // Ring homomorphism: map each parameter to a coefficient of the target
    // ring.  Parameters not in `images` may only occur with exponent zero.
    Coefficient substitute(const RingPtr& target,
                           const std::map<std::string, Coefficient>& images) const {
        std::vector<std::optional<Coefficient>> img(ring_->size());
        for (auto& [name, image] : images) {
            int i = ring_->index_of(name);
            if (i >= 0) img[static_cast<std::size_t>(i)] = image;
        }
        Coefficient out(target);
        for (auto& [e, c] : terms_) {
            Coefficient t = target->rational(c);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!img[i])
                    throw UnboundParameter("no image for parameter: " + ring_->name(static_cast<int>(i)));
                t = t * img[i]->pow(e[i]);
            }
            out += t;
        }
        return out;
    }

    // Exact polynomial division; throws NotDivisible if the divisor does not
    // divide this coefficient.
    Coefficient divide_exact(const Coefficient& divisor) const {
        check_ring(divisor);
        if (divisor.is_zero()) throw NotDivisible("division by zero coefficient");
        Coefficient rem = *this;
        Coefficient quot(ring_);
        auto [de, dc] = divisor.leading();
        while (!rem.is_zero()) {
            auto [re, rc] = rem.leading();
            ExpVec q(re.size());
            for (std::size_t i = 0; i < re.size(); ++i) {
                if (re[i] < de[i]) throw NotDivisible("inexact polynomial division");
                q[i] = static_cast<std::uint8_t>(re[i] - de[i]);
            }
            Coefficient m(ring_);
            m.terms_.emplace(q, rc / dc);
            quot += m;
            rem -= m * divisor;
        }
        return quot;
    }

    // gcd of all rational coefficients, signed by the leading term.
    Rational content() const {
        if (terms_.empty()) return Rational(0);
        BigInt num_gcd = 0, den_lcm = 1;
        for (auto& [e, c] : terms_) {
            num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(c));
            den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c));
        }
        Rational g(num_gcd, den_lcm);
        if (leading().second < 0) g = -g;
        return g;
    }

    // Componentwise minimum of all exponent vectors (the common monomial factor).
    ExpVec exponent_gcd() const {
        ExpVec g(ring_->size(), 0);
        bool first = true;
        for (auto& [e, c] : terms_) {
            if (first) {
                g = e;
                first = false;
            } else {
                for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], e[i]);
            }
        }
        return g;
    }

    void divide_monomial(const ExpVec& m) {
        std::map<ExpVec, Rational> out;
        for (auto& [e, c] : terms_) {
            ExpVec r(e);
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (r[i] < m[i]) throw NotDivisible("monomial does not divide term");
                r[i] = static_cast<std::uint8_t>(r[i] - m[i]);
            }
            out.emplace(std::move(r), c);
        }
        terms_ = std::move(out);
    }

    // Leading term under graded-lex order (used by division and sign rules).
    std::pair<ExpVec, Rational> leading() const {
        if (terms_.empty()) throw Error("leading term of zero");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (grlex_less(best->first, it->first)) best = it;
        return {best->first, best->second};
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : terms_) {
            Rational ac = c < 0 ? Rational(-c) : c;
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            bool printed = false;
            if (ac != 1 || is_constant_exp(e)) {
                os << ac;
                printed = true;
            }
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (printed) os << "*";
                os << ring_->name(static_cast<int>(i));
                if (e[i] > 1) os << "^" << static_cast<int>(e[i]);
                printed = true;
            }
        }
        return os.str();
    }

    static bool grlex_less(const ExpVec& a, const ExpVec& b) {
        int da = 0, db = 0;
        for (auto v : a) da += v;
        for (auto v : b) db += v;
        if (da != db) return da < db;
        return a < b;
    }

private:
    static bool is_constant_exp(const ExpVec& e) {
        return std::all_of(e.begin(), e.end(), [](std::uint8_t v) { return v == 0; });
    }

    void check_ring(const Coefficient& o) const {
        if (ring_ != o.ring_) throw Error("coefficients from different rings");
    }

    void reduce_s(ExpVec& e) {
        for (auto& c : ring_->constraints()) {
            if (!c.reduce) continue;
            for (;;) {
                bool applies = true;
                for (auto& [i, p] : c.lhs)
                    if (e[static_cast<std::size_t>(i)] < p) {
                        applies = false;
                        break;
                    }
                if (!applies) break;
                for (auto& [i, p] : c.lhs)
                    e[static_cast<std::size_t>(i)] =
                        static_cast<std::uint8_t>(e[static_cast<std::size_t>(i)] - p);
                for (auto& [i, p] : c.rhs)
                    e[static_cast<std::size_t>(i)] =
                        static_cast<std::uint8_t>(e[static_cast<std::size_t>(i)] + p);
            }
        }
        int s = ring_->s_index();
        if (s < 0) return;
        auto& se = e[static_cast<std::size_t>(s)];
        if (se < 2) return;
        std::uint8_t pairs = static_cast<std::uint8_t>(se / 2);
        se = static_cast<std::uint8_t>(se % 2);
        e[static_cast<std::size_t>(ring_->x_index())] =
            static_cast<std::uint8_t>(e[static_cast<std::size_t>(ring_->x_index())] + pairs);
        e[static_cast<std::size_t>(ring_->z_index())] =
            static_cast<std::uint8_t>(e[static_cast<std::size_t>(ring_->z_index())] + pairs);
    }

    void check_constraints(const std::vector<std::optional<double>>& v) const {
        for (auto& c : ring_->constraints()) {
            bool all = true;
            double lhs = 1.0, rhs = 1.0;
            for (auto& [i, p] : c.lhs) {
                if (!v[static_cast<std::size_t>(i)]) { all = false; break; }
                lhs *= std::pow(*v[static_cast<std::size_t>(i)], p);
            }
            if (all)
                for (auto& [i, p] : c.rhs) {
                    if (!v[static_cast<std::size_t>(i)]) { all = false; break; }
                    rhs *= std::pow(*v[static_cast<std::size_t>(i)], p);
                }
            if (!all) continue;
            double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            if (std::abs(lhs - rhs) > 1e-12 * scale) {
                if (c.label == "s^2 = x*z")
                    throw InconsistentRoot("assignment violates " + c.label);
                throw ConstraintViolation("assignment violates " + c.label);
            }
        }
    }

    RingPtr ring_;
    std::map<ExpVec, Rational> terms_;
};

inline Coefficient Ring::zero() const { return Coefficient(shared_from_this()); }

inline Coefficient Ring::rational(const Rational& r) const {
    Coefficient c(shared_from_this());
    c.add_term(ExpVec(size(), 0), r);
    return c;
}

inline Coefficient Ring::one() const { return rational(Rational(1)); }

inline Coefficient Ring::param(const std::string& name) const {
    int i = require(name);
    Coefficient c(shared_from_this());
    ExpVec e(size(), 0);
    e[static_cast<std::size_t>(i)] = 1;
    c.add_term(std::move(e), Rational(1));
    return c;
}

// Primitive part: divide out the rational content and the common monomial
// factor, leaving the leading rational coefficient positive.  Applied across
// a family of coefficients (one relation) in rmatrix.hpp.
inline void make_primitive(std::vector<Coefficient*>& coeffs) {
    Rational g = 0;
    bool any = false;
    ExpVec mono;
    for (auto* c : coeffs) {
        if (c->is_zero()) continue;
        Rational rc = c->content();
        if (rc < 0) rc = -rc;
        if (!any) {
            g = rc;
            mono = c->exponent_gcd();
            any = true;
        } else {
            BigInt n = boost::multiprecision::gcd(boost::multiprecision::numerator(g) *
                                                      boost::multiprecision::denominator(rc),
                                                  boost::multiprecision::numerator(rc) *
                                                      boost::multiprecision::denominator(g));
            BigInt d = boost::multiprecision::denominator(g) *
                       boost::multiprecision::denominator(rc);
            g = Rational(n, d);
            ExpVec eg = c->exponent_gcd();
            for (std::size_t i = 0; i < mono.size(); ++i) mono[i] = std::min(mono[i], eg[i]);
        }
    }
    if (!any) return;
    Rational inv = Rational(1) / g;
    for (auto* c : coeffs) {
        if (c->is_zero()) continue;
        *c = *c * inv;
        c->divide_monomial(mono);
    }
}

} // namespace oscq
