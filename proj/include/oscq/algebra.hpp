#pragma once

// Graded noncommutative algebra on the nine generators {1, alpha, beta,
// gamma, eta, a, b, c, d}.  Words are normal-ordered into the canonical form
// beta^k eta^l alpha^m gamma^n b^r a^s d^t c^u by a pluggable quadratic
// rewrite system.  A free (relation-less) layer is kept alongside, since the
// defining relations themselves are derived in the free algebra.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "oscq/ring.hpp"

namespace oscq {

// Generators in canonical precedence order.
enum class Gen : std::uint8_t { Beta = 0, Eta, Alpha, Gamma, B, A, D, C };

inline constexpr int kNumGen = 8;

inline constexpr const char* kGenName[kNumGen] = {"beta", "eta",  "alpha", "gamma",
                                                  "b",    "a",    "d",     "c"};

inline constexpr bool kGenOdd[kNumGen] = {false, false, true, true,
                                          false, false, false, false};

// Fermionic block holds the Greek generators, bosonic block the Roman ones.
inline bool is_fermionic(Gen g) { return static_cast<int>(g) < 4; }
inline bool is_odd(Gen g) { return kGenOdd[static_cast<int>(g)]; }

inline int gen_index(Gen g) { return static_cast<int>(g); }

inline std::optional<Gen> gen_from_name(const std::string& n) {
    for (int i = 0; i < kNumGen; ++i)
        if (n == kGenName[i]) return static_cast<Gen>(i);
    return std::nullopt;
}

using Word = std::vector<Gen>;

// Weights making every bundled relation a strictly decreasing rewrite:
// out-of-order swaps keep the weight and lower the inversion count, while
// every other replacement monomial has strictly smaller weight.
inline constexpr int kGenWeight[kNumGen] = {9, 1, 5, 3, 9, 5, 1, 3};

inline long word_weight(const Word& w) {
    long t = 0;
    for (Gen g : w) t += kGenWeight[gen_index(g)];
    return t;
}

inline int word_inversions(const Word& w) {
    int inv = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (gen_index(w[i]) > gen_index(w[j])) ++inv;
    return inv;
}

// Strict total order used to orient rewrite rules and pick leading words.
inline bool word_less(const Word& a, const Word& b) {
    long wa = word_weight(a), wb = word_weight(b);
    if (wa != wb) return wa < wb;
    if (a.size() != b.size()) return a.size() < b.size();
    int ia = word_inversions(a), ib = word_inversions(b);
    if (ia != ib) return ia < ib;
    return a < b;
}

// Canonical monomial: exponent array in generator precedence order.
struct Monomial {
    std::array<std::uint16_t, kNumGen> e{};

    static Monomial unit() { return Monomial{}; }
    static Monomial of(Gen g, std::uint16_t p = 1) {
        Monomial m;
        m.e[static_cast<std::size_t>(gen_index(g))] = p;
        return m;
    }

    std::uint16_t exp(Gen g) const { return e[static_cast<std::size_t>(gen_index(g))]; }
    int degree() const {
        int d = 0;
        for (auto v : e) d += v;
        return d;
    }
    int parity() const { return (exp(Gen::Alpha) + exp(Gen::Gamma)) % 2; }
    bool is_unit() const { return degree() == 0; }

    Word word() const {
        Word w;
        for (int g = 0; g < kNumGen; ++g)
            for (int k = 0; k < e[static_cast<std::size_t>(g)]; ++k)
                w.push_back(static_cast<Gen>(g));
        return w;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial m;
        for (int i = 0; i < kNumGen; ++i)
            m.e[static_cast<std::size_t>(i)] =
                static_cast<std::uint16_t>(e[static_cast<std::size_t>(i)] +
                                           o.e[static_cast<std::size_t>(i)]);
        return m;
    }

    auto operator<=>(const Monomial&) const = default;

    std::string str() const {
        if (is_unit()) return "1";
        std::ostringstream os;
        bool first = true;
        for (int g = 0; g < kNumGen; ++g) {
            auto v = e[static_cast<std::size_t>(g)];
            if (v == 0) continue;
            if (!first) os << "*";
            os << kGenName[g];
            if (v > 1) os << "^" << v;
            first = false;
        }
        return os.str();
    }
};

// Finite Coefficient-weighted sum of canonical monomials.
class AlgebraElement {
public:
    AlgebraElement() = default;
    explicit AlgebraElement(RingPtr ring) : ring_(std::move(ring)) {}

    static AlgebraElement unit(const RingPtr& ring) {
        AlgebraElement e(ring);
        e.add(Monomial::unit(), ring->one());
        return e;
    }
    static AlgebraElement generator(const RingPtr& ring, Gen g) {
        AlgebraElement e(ring);
        e.add(Monomial::of(g), ring->one());
        return e;
    }

    const RingPtr& ring() const { return ring_; }
    const std::map<Monomial, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Monomial& m, const Coefficient& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    AlgebraElement operator-() const {
        AlgebraElement r(ring_);
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    AlgebraElement& operator+=(const AlgebraElement& o) {
        for (auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    AlgebraElement& operator-=(const AlgebraElement& o) {
        for (auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }

    friend AlgebraElement operator*(const Coefficient& c, const AlgebraElement& e) {
        AlgebraElement r(e.ring_);
        for (auto& [m, w] : e.terms_) r.add(m, c * w);
        return r;
    }

    bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : terms_) {
            std::string cs = c.str();
            bool neg = cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
                       cs.find(" - ") == std::string::npos;
            bool compound = cs.find(" + ") != std::string::npos ||
                            cs.find(" - ") != std::string::npos;
            if (first) {
                first = false;
                if (neg) {
                    os << "-";
                    cs = cs.substr(1);
                }
            } else if (neg) {
                os << " - ";
                cs = cs.substr(1);
            } else {
                os << " + ";
            }
            if (compound) {
                os << "(" << cs << ")";
                if (!m.is_unit()) os << "*" << m.str();
            } else if (m.is_unit()) {
                os << cs;
            } else if (cs == "1") {
                os << m.str();
            } else {
                os << cs << "*" << m.str();
            }
        }
        return os.str();
    }

private:
    RingPtr ring_;
    std::map<Monomial, Coefficient> terms_;
};

// Element of the free algebra: Coefficient-weighted sum of arbitrary words.
class FreeElement {
public:
    FreeElement() = default;
    explicit FreeElement(RingPtr ring) : ring_(std::move(ring)) {}

    const RingPtr& ring() const { return ring_; }
    const std::map<Word, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Word& w, const Coefficient& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    FreeElement& operator+=(const FreeElement& o) {
        for (auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    FreeElement& operator-=(const FreeElement& o) {
        for (auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }

    friend FreeElement operator*(const FreeElement& a, const FreeElement& b) {
        FreeElement r(a.ring_);
        for (auto& [wa, ca] : a.terms_)
            for (auto& [wb, cb] : b.terms_) {
                Word w(wa);
                w.insert(w.end(), wb.begin(), wb.end());
                r.add(w, ca * cb);
            }
        return r;
    }

    // Leading word under the rewrite term order.
    std::pair<Word, Coefficient> leading() const {
        if (terms_.empty()) throw Error("leading word of zero element");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (word_less(best->first, it->first)) best = it;
        return {best->first, best->second};
    }

private:
    RingPtr ring_;
    std::map<Word, Coefficient> terms_;
};

// True if the two-letter word g1 g2 must be rewritten: out of canonical
// order, or a square of an odd generator.
inline bool needs_rewrite(Gen g1, Gen g2) {
    if (gen_index(g1) > gen_index(g2)) return true;
    return g1 == g2 && is_odd(g1);
}

class RewriteSystem {
public:
    explicit RewriteSystem(RingPtr ring) : ring_(std::move(ring)) {}

    const RingPtr& ring() const { return ring_; }

    void set_rule(Gen g1, Gen g2, AlgebraElement replacement) {
        if (!needs_rewrite(g1, g2))
            throw IncompatibleRelation(std::string("word ") + kGenName[gen_index(g1)] + " " +
                                       kGenName[gen_index(g2)] + " is already canonical");
        Word lhs{g1, g2};
        for (auto& [m, c] : replacement.terms()) {
            Word w = m.word();
            if (!word_less(w, lhs))
                throw IncompatibleRelation("replacement for " + std::string(kGenName[gen_index(g1)]) +
                                           "*" + kGenName[gen_index(g2)] +
                                           " contains non-decreasing monomial " + m.str());
        }
        rules_[gen_index(g1)][gen_index(g2)] = std::move(replacement);
    }

    bool has_rule(Gen g1, Gen g2) const {
        return rules_[gen_index(g1)][gen_index(g2)].has_value();
    }
    const AlgebraElement& rule(Gen g1, Gen g2) const {
        auto& r = rules_[gen_index(g1)][gen_index(g2)];
        if (!r)
            throw IncompleteRewriteSystem(std::string("no rule for ") + kGenName[gen_index(g1)] +
                                          "*" + kGenName[gen_index(g2)]);
        return *r;
    }

    bool is_closed() const {
        for (int i = 0; i < kNumGen; ++i)
            for (int j = 0; j < kNumGen; ++j)
                if (needs_rewrite(static_cast<Gen>(i), static_cast<Gen>(j)) && !rules_[i][j])
                    return false;
        return true;
    }

    // Build from a set of free-algebra relations, each understood as "= 0"
    // with words of length at most two.  Rules are oriented by the term
    // order and installed smallest-leading-word first, so each right-hand
    // side can be normalized by already-installed rules.
    static RewriteSystem from_relations(const RingPtr& ring,
                                        const std::vector<FreeElement>& relations);

    // Line-oriented serialization "g1*g2 = <element>".
    std::string serialize() const {
        std::ostringstream os;
        for (int i = 0; i < kNumGen; ++i)
            for (int j = 0; j < kNumGen; ++j)
                if (rules_[i][j])
                    os << kGenName[i] << "*" << kGenName[j] << " = " << rules_[i][j]->str()
                       << "\n";
        return os.str();
    }

private:
    RingPtr ring_;
    std::array<std::array<std::optional<AlgebraElement>, kNumGen>, kNumGen> rules_{};
};

// Canonical form of a word in the quotient algebra.
inline AlgebraElement normal_order(const Word& word, const RewriteSystem& rs) {
    AlgebraElement out(rs.ring());
    std::vector<std::pair<Word, Coefficient>> work;
    work.emplace_back(word, rs.ring()->one());
    std::size_t steps = 0;
    while (!work.empty()) {
        if (++steps > 20'000'000) throw Error("normal_order: step limit exceeded");
        auto [w, coeff] = std::move(work.back());
        work.pop_back();
        std::size_t pos = w.size();
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (needs_rewrite(w[i], w[i + 1]) &&
                // an odd square with no reduction rule (the undeformed
                // commutative case) is already canonical
                (w[i] != w[i + 1] || rs.has_rule(w[i], w[i + 1]))) {
                pos = i;
                break;
            }
        if (pos == w.size()) {
            Monomial m;
            for (Gen g : w)
                m.e[static_cast<std::size_t>(gen_index(g))] =
                    static_cast<std::uint16_t>(m.e[static_cast<std::size_t>(gen_index(g))] + 1);
            out.add(m, coeff);
            continue;
        }
        const AlgebraElement& rep = rs.rule(w[pos], w[pos + 1]);
        for (auto& [m, c] : rep.terms()) {
            Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
            Word mid = m.word();
            nw.insert(nw.end(), mid.begin(), mid.end());
            nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(pos) + 2, w.end());
            work.emplace_back(std::move(nw), coeff * c);
        }
    }
    return out;
}

inline AlgebraElement multiply(const AlgebraElement& e1, const AlgebraElement& e2,
                               const RewriteSystem& rs) {
    AlgebraElement out(e1.ring());
    for (auto& [m1, c1] : e1.terms())
        for (auto& [m2, c2] : e2.terms()) {
            Word w = m1.word();
            Word w2 = m2.word();
            w.insert(w.end(), w2.begin(), w2.end());
            AlgebraElement no = normal_order(w, rs);
            Coefficient c = c1 * c2;
            for (auto& [m, cc] : no.terms()) out.add(m, c * cc);
        }
    return out;
}

inline AlgebraElement normalize_free(const FreeElement& e, const RewriteSystem& rs) {
    AlgebraElement out(e.ring());
    for (auto& [w, c] : e.terms()) {
        AlgebraElement no = normal_order(w, rs);
        for (auto& [m, cc] : no.terms()) out.add(m, c * cc);
    }
    return out;
}

inline RewriteSystem RewriteSystem::from_relations(const RingPtr& ring,
                                                   const std::vector<FreeElement>& relations) {
    struct Pending {
        Word lead;
        Coefficient lead_coeff;
        FreeElement rest;
    };
    std::vector<Pending> pending;
    for (auto& rel : relations) {
        if (rel.is_zero()) continue;
        auto [lead, lc] = rel.leading();
        if (lead.size() != 2 || !needs_rewrite(lead[0], lead[1]))
            throw IncompatibleRelation("relation does not lead with a rewritable pair: " +
                                       [&] {
                                           std::string s;
                                           for (Gen g : lead) s += std::string(kGenName[gen_index(g)]) + " ";
                                           return s;
                                       }());
        FreeElement rest(ring);
        for (auto& [w, c] : rel.terms())
            if (w != lead) rest.add(w, c);
        pending.push_back({lead, lc, std::move(rest)});
    }
    std::sort(pending.begin(), pending.end(),
              [](const Pending& a, const Pending& b) { return word_less(a.lead, b.lead); });

    RewriteSystem rs(ring);
    std::vector<const Pending*> duplicates;
    for (auto& p : pending) {
        // Relations that repeat an installed leading word, or that lead with
        // a non-invertible (parameter-dependent) coefficient, are deferred:
        // they must be consequences of the installed rules.
        if (rs.has_rule(p.lead[0], p.lead[1]) || !p.lead_coeff.is_rational() ||
            p.lead_coeff.rational_value() == 0) {
            duplicates.push_back(&p);
            continue;
        }
        Rational inv = Rational(-1) / p.lead_coeff.rational_value();
        AlgebraElement rhs(ring);
        for (auto& [w, c] : p.rest.terms()) {
            AlgebraElement no = normal_order(w, rs);
            Coefficient scaled = c * inv;
            for (auto& [m, cc] : no.terms()) rhs.add(m, scaled * cc);
        }
        rs.set_rule(p.lead[0], p.lead[1], std::move(rhs));
    }
    for (auto* p : duplicates) {
        FreeElement full = p->rest;
        full.add(p->lead, p->lead_coeff);
        if (!normalize_free(full, rs).is_zero())
            throw IncompatibleRelation("relations with shared leading word are inconsistent");
    }
    // Every input relation must hold in the constructed quotient.
    for (auto& rel : relations)
        if (!normalize_free(rel, rs).is_zero())
            throw IncompatibleRelation("relation does not reduce to zero in the quotient");
    return rs;
}

// Element of the tensor square with plain componentwise multiplication.
class TensorElement {
public:
    TensorElement() = default;
    explicit TensorElement(RingPtr ring) : ring_(std::move(ring)) {}

    static TensorElement simple(const RingPtr& ring, const Monomial& u, const Monomial& v,
                                const Coefficient& c) {
        TensorElement t(ring);
        t.add(u, v, c);
        return t;
    }

    const RingPtr& ring() const { return ring_; }
    const std::map<std::pair<Monomial, Monomial>, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Monomial& u, const Monomial& v, const Coefficient& c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(u, v);
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TensorElement& operator+=(const TensorElement& o) {
        for (auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }
    TensorElement& operator-=(const TensorElement& o) {
        for (auto& [k, c] : o.terms_) add(k.first, k.second, -c);
        return *this;
    }
    friend TensorElement operator*(const Coefficient& c, const TensorElement& t) {
        TensorElement r(t.ring_);
        for (auto& [k, w] : t.terms_) r.add(k.first, k.second, c * w);
        return r;
    }
    bool operator==(const TensorElement& o) const { return terms_ == o.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [k, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")*" << k.first.str() << "(x)" << k.second.str();
        }
        return os.str();
    }

private:
    RingPtr ring_;
    std::map<std::pair<Monomial, Monomial>, Coefficient> terms_;
};

inline TensorElement tensor_multiply(const TensorElement& t1, const TensorElement& t2,
                                     const RewriteSystem& rs) {
    TensorElement out(t1.ring());
    for (auto& [k1, c1] : t1.terms())
        for (auto& [k2, c2] : t2.terms()) {
            Word wu = k1.first.word(), wv = k1.second.word();
            Word wu2 = k2.first.word(), wv2 = k2.second.word();
            wu.insert(wu.end(), wu2.begin(), wu2.end());
            wv.insert(wv.end(), wv2.begin(), wv2.end());
            AlgebraElement nu = normal_order(wu, rs);
            AlgebraElement nv = normal_order(wv, rs);
            Coefficient c = c1 * c2;
            for (auto& [mu, cu] : nu.terms())
                for (auto& [mv, cv] : nv.terms()) out.add(mu, mv, c * cu * cv);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Classical (undeformed) derivation check: the eight first-order differential
// operators acting on the commutative polynomial algebra in the generators,
// and their commutator table.

struct DerivationReport {
    bool pass = true;
    std::vector<std::string> failures;
};

namespace detail {

// Commutative polynomial in the eight generators.
using CPoly = std::map<Monomial, Coefficient>;

inline void cpoly_add(CPoly& p, const Monomial& m, const Coefficient& c) {
    if (c.is_zero()) return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

// Derivation given by its value on each generator.
struct Derivation {
    RingPtr ring;
    std::array<CPoly, kNumGen> image;

    CPoly apply(const CPoly& p) const {
        CPoly out;
        for (auto& [m, c] : p) {
            for (int g = 0; g < kNumGen; ++g) {
                auto exp = m.e[static_cast<std::size_t>(g)];
                if (exp == 0 || image[static_cast<std::size_t>(g)].empty()) continue;
                Monomial reduced = m;
                reduced.e[static_cast<std::size_t>(g)] = static_cast<std::uint16_t>(exp - 1);
                Coefficient factor = c * ring->rational(Rational(exp));
                for (auto& [gm, gc] : image[static_cast<std::size_t>(g)])
                    cpoly_add(out, reduced * gm, factor * gc);
            }
        }
        return out;
    }
};

} // namespace detail

// Verifies the undeformed symmetry: X1..X4 acting on the Greek generators,
// their tilded twins on the Roman ones, with the expected commutator table
// ([X1,X3]=X2, [X4,X1]=-X1, [X4,X3]=X3, tilded mirror, all else zero).
inline DerivationReport classical_derivation_check(const RingPtr& ring) {
    using detail::CPoly;
    using detail::Derivation;
    auto mono_poly = [&](Gen g) {
        CPoly p;
        detail::cpoly_add(p, Monomial::of(g), ring->one());
        return p;
    };
    auto set_image = [&](Derivation& d, Gen slot, CPoly value) {
        d.image[static_cast<std::size_t>(gen_index(slot))] = std::move(value);
    };
    std::array<Derivation, 8> X;
    for (auto& d : X) d.ring = ring;
    set_image(X[0], Gen::Alpha, {{Monomial::unit(), ring->one()}});       // X1 = d/d(alpha)
    set_image(X[1], Gen::Beta, {{Monomial::unit(), ring->one()}});        // X2 = d/d(beta)
    set_image(X[2], Gen::Beta, mono_poly(Gen::Alpha));                    // X3 = alpha d/d(beta)
    set_image(X[2], Gen::Gamma, mono_poly(Gen::Eta));                     //    + eta d/d(gamma)
    set_image(X[3], Gen::Eta, mono_poly(Gen::Eta));                       // X4 = eta d/d(eta)
    set_image(X[3], Gen::Alpha, mono_poly(Gen::Alpha));                   //    + alpha d/d(alpha)
    set_image(X[4], Gen::A, {{Monomial::unit(), ring->one()}});           // tilded copies
    set_image(X[5], Gen::B, {{Monomial::unit(), ring->one()}});
    set_image(X[6], Gen::B, mono_poly(Gen::A));
    set_image(X[6], Gen::C, mono_poly(Gen::D));
    set_image(X[7], Gen::D, mono_poly(Gen::D));
    set_image(X[7], Gen::A, mono_poly(Gen::A));

    // expected[i][j] = list of (index, scalar) with [X_i, X_j] = sum scalar*X_index
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> expected;
    expected[{0, 2}] = {{1, 1}};
    expected[{3, 0}] = {{0, -1}};
    expected[{3, 2}] = {{2, 1}};
    expected[{4, 6}] = {{5, 1}};
    expected[{7, 4}] = {{4, -1}};
    expected[{7, 6}] = {{6, 1}};

    DerivationReport report;
    auto cpoly_eq = [](const CPoly& a, const CPoly& b) { return a == b; };
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            if (i == j) continue;
            std::vector<std::pair<int, int>> want;
            if (auto it = expected.find({i, j}); it != expected.end()) want = it->second;
            if (auto it = expected.find({j, i}); it != expected.end())
                for (auto& [k, s] : it->second) want.emplace_back(k, -s);
            for (int g = 0; g < kNumGen; ++g) {
                CPoly test = mono_poly(static_cast<Gen>(g));
                CPoly lhs = X[static_cast<std::size_t>(i)].apply(
                    X[static_cast<std::size_t>(j)].apply(test));
                CPoly sub = X[static_cast<std::size_t>(j)].apply(
                    X[static_cast<std::size_t>(i)].apply(test));
                for (auto& [m, c] : sub) detail::cpoly_add(lhs, m, -c);
                CPoly rhs;
                for (auto& [k, s] : want)
                    for (auto& [m, c] :
                         X[static_cast<std::size_t>(k)].apply(test))
                        detail::cpoly_add(rhs, m, ring->rational(Rational(s)) * c);
                if (!cpoly_eq(lhs, rhs)) {
                    report.pass = false;
                    report.failures.push_back("[X" + std::to_string(i + 1) + ",X" +
                                              std::to_string(j + 1) + "] on " + kGenName[g]);
                }
            }
        }
    return report;
}

} // namespace oscq
