#pragma once

// Coproduct on the quantum supergroup algebra, duality pairing with the
// eight dual generators, and verification that the dual algebra satisfies
// the deformed superalgebra relations.

#include <oscq/rmatrix.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oscq {

// ---------------------------------------------------------------------------
// Dual generators.  A and C are odd; everything else is even.

enum class DualGen { A = 0, B, C, H, At, Bt, Ct, Ht };

inline constexpr const char* kDualName[8] = {"A", "B", "C", "H", "A~", "B~", "C~", "H~"};

inline int dual_index(DualGen v) { return static_cast<int>(v); }
inline bool dual_odd(DualGen v) { return v == DualGen::A || v == DualGen::C; }
inline bool dual_tilded(DualGen v) { return dual_index(v) >= 4; }

using DualWord = std::vector<DualGen>;

inline std::string dual_word_str(const DualWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (auto v : w) {
        if (!s.empty()) s += "*";
        s += kDualName[dual_index(v)];
    }
    return s;
}

// ---------------------------------------------------------------------------
// Coproduct.  Defined on generators by
//   Δβ = 1⊗β + β⊗1 + α⊗γ        Δb = 1⊗b + b⊗1 + a⊗c
//   Δα = 1⊗α + α⊗η              Δa = 1⊗a + a⊗d
//   Δγ = η⊗γ + γ⊗1              Δc = d⊗c + c⊗1
//   Δη = η⊗η                    Δd = d⊗d
// and extended multiplicatively; each tensor slot is kept normal-ordered
// with the active family's rewrite system.

inline TensorElement generator_coproduct(const RingPtr& ring, Gen g) {
    TensorElement t(ring);
    auto u = Monomial::unit();
    auto m = [](Gen h) { return Monomial::of(h); };
    const Coefficient one = ring->one();
    switch (g) {
    case Gen::Beta:
        t.add(u, m(Gen::Beta), one);
        t.add(m(Gen::Beta), u, one);
        t.add(m(Gen::Alpha), m(Gen::Gamma), one);
        break;
    case Gen::Eta:
        t.add(m(Gen::Eta), m(Gen::Eta), one);
        break;
    case Gen::Alpha:
        t.add(u, m(Gen::Alpha), one);
        t.add(m(Gen::Alpha), m(Gen::Eta), one);
        break;
    case Gen::Gamma:
        t.add(m(Gen::Eta), m(Gen::Gamma), one);
        t.add(m(Gen::Gamma), u, one);
        break;
    case Gen::B:
        t.add(u, m(Gen::B), one);
        t.add(m(Gen::B), u, one);
        t.add(m(Gen::A), m(Gen::C), one);
        break;
    case Gen::A:
        t.add(u, m(Gen::A), one);
        t.add(m(Gen::A), m(Gen::D), one);
        break;
    case Gen::C:
        t.add(m(Gen::D), m(Gen::C), one);
        t.add(m(Gen::C), u, one);
        break;
    case Gen::D:
        t.add(m(Gen::D), m(Gen::D), one);
        break;
    }
    return t;
}

class Coproduct {
public:
    explicit Coproduct(const RewriteSystem& rs) : rs_(&rs), ring_(rs.ring()) {
        for (int g = 0; g < kNumGen; ++g)
            gen_[static_cast<std::size_t>(g)] = generator_coproduct(ring_, static_cast<Gen>(g));
    }

    const RingPtr& ring() const { return ring_; }
    const RewriteSystem& rewrite() const { return *rs_; }

    const TensorElement& monomial(const Monomial& m) const {
        auto it = cache_.find(m);
        if (it != cache_.end()) return it->second;
        TensorElement t(ring_);
        if (m.is_unit()) {
            t.add(Monomial::unit(), Monomial::unit(), ring_->one());
        } else {
            // peel off the highest-index generator so the remaining word
            // stays canonical
            int g = kNumGen - 1;
            while (m.e[static_cast<std::size_t>(g)] == 0) --g;
            Monomial rest = m;
            --rest.e[static_cast<std::size_t>(g)];
            t = tensor_multiply(monomial(rest), gen_[static_cast<std::size_t>(g)], *rs_);
        }
        return cache_.emplace(m, std::move(t)).first->second;
    }

    TensorElement apply(const AlgebraElement& e) const {
        TensorElement t(ring_);
        for (auto& [m, c] : e.terms()) t += c * monomial(m);
        return t;
    }

private:
    const RewriteSystem* rs_;
    RingPtr ring_;
    std::array<TensorElement, kNumGen> gen_;
    mutable std::map<Monomial, TensorElement> cache_;
};

// ---------------------------------------------------------------------------
// n-fold coproducts, as sparse sums of monomial slot vectors.

using MultiTensor = std::map<std::vector<Monomial>, Coefficient>;

inline MultiTensor expand_slot(const Coproduct& cop, const MultiTensor& t, std::size_t slot) {
    MultiTensor out;
    for (auto& [slots, c] : t) {
        for (auto& [pr, d] : cop.monomial(slots[slot]).terms()) {
            std::vector<Monomial> next;
            next.reserve(slots.size() + 1);
            next.insert(next.end(), slots.begin(), slots.begin() + static_cast<long>(slot));
            next.push_back(pr.first);
            next.push_back(pr.second);
            next.insert(next.end(), slots.begin() + static_cast<long>(slot) + 1, slots.end());
            Coefficient v = c * d;
            auto it = out.find(next);
            if (it == out.end()) {
                out.emplace(std::move(next), std::move(v));
            } else {
                it->second += v;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

inline MultiTensor iterated_coproduct(const Coproduct& cop, const AlgebraElement& e, int n) {
    MultiTensor t;
    for (auto& [m, c] : e.terms()) t.emplace(std::vector<Monomial>{m}, c);
    for (int k = 1; k < n; ++k) t = expand_slot(cop, t, static_cast<std::size_t>(k - 1));
    return t;
}

// Counit: evaluation at β=α=γ=0, η=1, b=a=c=0, d=1.
inline bool counit_nonzero(const Monomial& m) {
    return m.exp(Gen::Beta) == 0 && m.exp(Gen::Alpha) == 0 && m.exp(Gen::Gamma) == 0 &&
           m.exp(Gen::B) == 0 && m.exp(Gen::A) == 0 && m.exp(Gen::C) == 0;
}

inline Coefficient counit(const AlgebraElement& e) {
    Coefficient c = e.ring()->zero();
    for (auto& [m, v] : e.terms())
        if (counit_nonzero(m)) c += v;
    return c;
}

// Collapse one tensor slot with the counit; with slot 0 this sends
// Σ c · u⊗v to Σ c ε(u) (η,d powers of u dropped) · v.
inline AlgebraElement counit_slot(const TensorElement& t, int slot) {
    AlgebraElement out(t.ring());
    for (auto& [pr, c] : t.terms()) {
        const Monomial& collapsed = slot == 0 ? pr.first : pr.second;
        const Monomial& kept = slot == 0 ? pr.second : pr.first;
        if (counit_nonzero(collapsed)) out.add(kept, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Duality pairing.  With 𝒫 = β^k η^l α^m γ^n b^r a^s d^t c^u:
//   (A,𝒫) = δ_{k0} δ_{m1} δ_{n0} δ_{r0} δ_{s0} δ_{u0}
//   (B,𝒫) = δ_{k1} δ_{m0} δ_{n0} δ_{r0} δ_{s0} δ_{u0}
//   (C,𝒫) = δ_{k0} δ_{m0} δ_{n1} δ_{r0} δ_{s0} δ_{u0}
//   (H,𝒫) = l δ_{k0} δ_{m0} δ_{n0} δ_{r0} δ_{s0} δ_{u0}
// and the tilded mirror with (b,a,c,d) in place of (β,α,γ,η); l and t are
// unconstrained throughout.

inline Rational pair_generator(DualGen v, const Monomial& m) {
    const int k = m.exp(Gen::Beta), l = m.exp(Gen::Eta), fm = m.exp(Gen::Alpha),
              n = m.exp(Gen::Gamma), r = m.exp(Gen::B), s = m.exp(Gen::A), t = m.exp(Gen::D),
              u = m.exp(Gen::C);
    const bool bosonic_trivial = r == 0 && s == 0 && u == 0;
    const bool fermionic_trivial = k == 0 && fm == 0 && n == 0;
    switch (v) {
    case DualGen::A: return (k == 0 && fm == 1 && n == 0 && bosonic_trivial) ? 1 : 0;
    case DualGen::B: return (k == 1 && fm == 0 && n == 0 && bosonic_trivial) ? 1 : 0;
    case DualGen::C: return (k == 0 && fm == 0 && n == 1 && bosonic_trivial) ? 1 : 0;
    case DualGen::H: return (fermionic_trivial && bosonic_trivial) ? Rational(l) : 0;
    case DualGen::At: return (r == 0 && s == 1 && u == 0 && fermionic_trivial) ? 1 : 0;
    case DualGen::Bt: return (r == 1 && s == 0 && u == 0 && fermionic_trivial) ? 1 : 0;
    case DualGen::Ct: return (r == 0 && s == 0 && u == 1 && fermionic_trivial) ? 1 : 0;
    case DualGen::Ht: return (fermionic_trivial && bosonic_trivial) ? Rational(t) : 0;
    }
    return 0;
}

class DualPairing {
public:
    explicit DualPairing(const Coproduct& cop) : cop_(&cop), ring_(cop.ring()) {}

    // (V₁⋯V_k, 𝒫), via (VW, 𝒫) = (V⊗W, Δ𝒫) applied recursively.
    Coefficient word(const DualWord& w, const Monomial& m) const {
        if (w.empty()) {
            return counit_nonzero(m) ? ring_->one() : ring_->zero();
        }
        if (w.size() == 1) return ring_->rational(pair_generator(w[0], m));
        auto key = std::make_pair(w, m);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Coefficient acc = ring_->zero();
        DualWord rest(w.begin() + 1, w.end());
        for (auto& [pr, c] : cop_->monomial(m).terms()) {
            Rational f = pair_generator(w[0], pr.first);
            if (f == 0) continue;
            Coefficient tail = word(rest, pr.second);
            if (tail.is_zero()) continue;
            acc += c * f * tail;
        }
        return cache_.emplace(std::move(key), std::move(acc)).first->second;
    }

    Coefficient word(const DualWord& w, const AlgebraElement& e) const {
        Coefficient acc = ring_->zero();
        for (auto& [m, c] : e.terms()) acc += c * word(w, m);
        return acc;
    }

    // [V,W] or, when both letters are odd, {V,W}.
    Coefficient supercommutator(DualGen v, DualGen w, const Monomial& m) const {
        Coefficient first = word({v, w}, m);
        Coefficient second = word({w, v}, m);
        return dual_odd(v) && dual_odd(w) ? first + second : first - second;
    }

    const Coproduct& coproduct() const { return *cop_; }
    const RingPtr& ring() const { return ring_; }

private:
    const Coproduct* cop_;
    RingPtr ring_;
    mutable std::map<std::pair<DualWord, Monomial>, Coefficient> cache_;
};

// ---------------------------------------------------------------------------
// Formal power series in one even dual generator (B or B̃), with exact
// Coefficient-valued series coefficients and an optional single-letter
// factor on either side.  Since (B^j, 𝒫) vanishes once j exceeds the degree
// of 𝒫, truncating at K ≥ deg 𝒫 is exact.

struct SeriesExpression {
    DualGen variable = DualGen::B;
    std::optional<DualGen> left;
    std::optional<DualGen> right;
    std::function<Coefficient(int)> coeff;  // coefficient of variable^n, n ≥ 0
};

inline Coefficient pair_series(const DualPairing& pairing, const SeriesExpression& se,
                               const AlgebraElement& e, int K) {
    int deg = 0;
    for (auto& [m, c] : e.terms()) deg = std::max(deg, m.degree());
    if (K < deg)
        throw TruncationTooSmall("series truncation order " + std::to_string(K) +
                                 " is below element degree " + std::to_string(deg));
    Coefficient acc = pairing.ring()->zero();
    for (int n = 0; n <= K; ++n) {
        Coefficient c = se.coeff(n);
        if (c.is_zero()) continue;
        DualWord w;
        if (se.left) w.push_back(*se.left);
        w.insert(w.end(), static_cast<std::size_t>(n), se.variable);
        if (se.right) w.push_back(*se.right);
        acc += c * pairing.word(w, e);
    }
    return acc;
}

inline Rational factorial(int n) {
    Rational f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// ---------------------------------------------------------------------------
// The deformed dual relations.  For the fermionic block (parameters x, z):
//   {A,C} = sinh(2√(xz) B)/(2√(xz))
//   A²    = (1 − cosh(2√(xz) B))/(4z)
//   C²    = (1 − cosh(2√(xz) B))/(4x)
//   [H,A] = −½ A (1 + cosh(2√(xz) B)) − x sinh(2√(xz) B)/(2√(xz)) C
//   [H,C] = +½ C (1 + cosh(2√(xz) B)) + z sinh(2√(xz) B)/(2√(xz)) A
// and for the bosonic block (parameters p, q, ρ, τ):
//   [Ã,C̃] = (e^{(p+q)B̃} − 1)/(p + q)
//   [H̃,Ã] = −Ã + ρ Σ_{n≥1} d_n(p,q) B̃^n
//   [H̃,C̃] = +C̃ − τ Σ_{n≥1} d_n(q,p) B̃^n
// All series coefficients are polynomial in the parameters; apparent
// divisions cancel and are carried out exactly.

struct DualParams {
    Coefficient x, z, p, q, rho, tau;
};

inline DualParams dual_params(const std::string& family, const RingPtr& ring) {
    auto zero = ring->zero();
    if (family == "FB-NONDEF") return {zero, zero, zero, zero, zero, zero};
    if (family != "I-II-A" && family != "I-II-B" && family != "I-II-C")
        throw ConfigError("dual verification is not defined for family " + family);
    Coefficient x = ring->param("x"), z = ring->param("z"), p = ring->param("p");
    if (family == "I-II-A")
        return {x, z, p, ring->param("q"), ring->param("rho"), ring->param("tau")};
    if (family == "I-II-B") return {x, z, p, -p, ring->param("rho"), ring->param("tau")};
    if (family == "I-II-C") return {x, z, p, -p, zero, zero};
    throw ConfigError("dual verification is not defined for family " + family);
}

// d_n(p,q) = (Σ_{j=1}^n C(n,j) p^{n−j} q^{j−1} − p^{n−1}) / (n! (p+q)),
// an exact polynomial division carried out over generic p, q and then
// specialized to the family's parameter values.
inline std::vector<Coefficient> bosonic_cartan_series(const RingPtr& target, const Coefficient& P,
                                                      const Coefficient& Q, int K) {
    auto generic = Ring::make({"p", "q"});
    Coefficient p = generic->param("p"), q = generic->param("q");
    std::vector<Coefficient> d(static_cast<std::size_t>(K) + 1, target->zero());
    for (int n = 1; n <= K; ++n) {
        Coefficient cn = generic->zero();
        Rational binom = 1;
        for (int j = 1; j <= n; ++j) {
            binom = binom * (n - j + 1) / j;
            cn += (p.pow(static_cast<unsigned>(n - j)) * q.pow(static_cast<unsigned>(j - 1))) *
                  binom;
        }
        cn -= p.pow(static_cast<unsigned>(n - 1));
        if (cn.is_zero()) continue;
        cn = cn * (Rational(1) / factorial(n));
        Coefficient dn = cn.divide_exact(p + q);
        d[static_cast<std::size_t>(n)] = dn.substitute(target, {{"p", P}, {"q", Q}});
    }
    return d;
}

struct DualRelation {
    std::string name;
    // LHS as a pairing of a two-letter super-commutator or square
    DualGen v, w;
    bool square = false;  // plain word v·w instead of a super-commutator
    std::vector<SeriesExpression> rhs;
};

inline std::vector<DualRelation> dual_relations(const DualParams& par, const RingPtr& ring,
                                                int K) {
    const Coefficient xz = par.x * par.z;
    auto pow4xz = [xz, ring](int n) {
        Coefficient c = ring->rational(Rational(BigInt(1) << (2 * n)));  // 4^n
        return c * xz.pow(static_cast<unsigned>(n));
    };

    SeriesExpression sinh_series{DualGen::B, {}, {}, [=](int j) {
                                     if (j % 2 == 0) return ring->zero();
                                     int n = (j - 1) / 2;
                                     return pow4xz(n) * (Rational(1) / factorial(j));
                                 }};
    // (1 − cosh)/(4z) = −Σ_{n≥1} 4^{n−1} x^n z^{n−1} B^{2n}/(2n)!
    auto sq_series = [&](const Coefficient& num, const Coefficient& den_partner) {
        return SeriesExpression{DualGen::B, {}, {}, [=](int j) {
                                    if (j == 0 || j % 2 == 1) return ring->zero();
                                    int n = j / 2;
                                    Coefficient c = ring->rational(
                                        Rational(BigInt(1) << (2 * (n - 1))));  // 4^{n−1}
                                    return -(c * num.pow(static_cast<unsigned>(n)) *
                                             den_partner.pow(static_cast<unsigned>(n - 1))) *
                                           (Rational(1) / factorial(j));
                                }};
    };
    auto half_cosh = [&](DualGen letter, bool positive) {
        Rational sign = positive ? 1 : -1;
        return SeriesExpression{DualGen::B, letter, {}, [=](int j) {
                                    if (j == 0) return ring->rational(sign);
                                    if (j % 2 == 1) return ring->zero();
                                    int n = j / 2;
                                    return pow4xz(n) * (sign / (2 * factorial(j)));
                                }};
    };
    auto sinh_times = [&](const Coefficient& scale, DualGen letter) {
        return SeriesExpression{DualGen::B, {}, letter, [=](int j) {
                                    if (j % 2 == 0) return ring->zero();
                                    int n = (j - 1) / 2;
                                    return scale * pow4xz(n) * (Rational(1) / factorial(j));
                                }};
    };

    const Coefficient pq = par.p + par.q;
    SeriesExpression exp_series{DualGen::Bt, {}, {}, [=](int n) {
                                    if (n == 0) return ring->zero();
                                    return pq.pow(static_cast<unsigned>(n - 1)) *
                                           (Rational(1) / factorial(n));
                                }};
    auto dpq = bosonic_cartan_series(ring, par.p, par.q, K);
    auto dqp = bosonic_cartan_series(ring, par.q, par.p, K);
    auto cartan_rhs = [ring, K](DualGen letter, Rational sign, const Coefficient& scale,
                                std::vector<Coefficient> d) {
        SeriesExpression lead{DualGen::Bt, letter, {}, [=](int n) {
                                  return n == 0 ? ring->rational(sign) : ring->zero();
                              }};
        SeriesExpression tail{DualGen::Bt, {}, {}, [=](int n) {
                                  if (n == 0 || n > K) return ring->zero();
                                  return scale * d[static_cast<std::size_t>(n)];
                              }};
        return std::vector<SeriesExpression>{lead, tail};
    };

    std::vector<DualRelation> rels;
    rels.push_back({"{A,C}", DualGen::A, DualGen::C, false, {sinh_series}});
    rels.push_back({"A^2", DualGen::A, DualGen::A, true, {sq_series(par.x, par.z)}});
    rels.push_back({"C^2", DualGen::C, DualGen::C, true, {sq_series(par.z, par.x)}});
    rels.push_back({"[H,A]",
                    DualGen::H,
                    DualGen::A,
                    false,
                    {half_cosh(DualGen::A, false), sinh_times(-par.x, DualGen::C)}});
    rels.push_back({"[H,C]",
                    DualGen::H,
                    DualGen::C,
                    false,
                    {half_cosh(DualGen::C, true), sinh_times(par.z, DualGen::A)}});
    rels.push_back({"[A~,C~]", DualGen::At, DualGen::Ct, false, {exp_series}});
    rels.push_back({"[H~,A~]", DualGen::Ht, DualGen::At, false,
                    cartan_rhs(DualGen::At, -1, par.rho, dpq)});
    rels.push_back({"[H~,C~]", DualGen::Ht, DualGen::Ct, false,
                    cartan_rhs(DualGen::Ct, 1, -par.tau, dqp)});
    return rels;
}

// ---------------------------------------------------------------------------
// Verification over the canonical monomial basis up to a degree bound.

struct DualVerifyReport {
    bool pass = true;
    int monomials_checked = 0;
    std::vector<std::string> violations;
};

inline std::vector<Monomial> monomial_basis(const RewriteSystem& rs, int max_degree) {
    std::array<int, kNumGen> cap{};
    for (int g = 0; g < kNumGen; ++g) {
        Gen gg = static_cast<Gen>(g);
        cap[static_cast<std::size_t>(g)] =
            needs_rewrite(gg, gg) && rs.has_rule(gg, gg) ? 1 : max_degree;
    }
    std::vector<Monomial> out;
    Monomial m;
    std::function<void(int, int)> rec = [&](int g, int left) {
        if (g == kNumGen) {
            out.push_back(m);
            return;
        }
        int hi = std::min(left, cap[static_cast<std::size_t>(g)]);
        for (int e = 0; e <= hi; ++e) {
            m.e[static_cast<std::size_t>(g)] = static_cast<std::uint16_t>(e);
            rec(g + 1, left - e);
        }
        m.e[static_cast<std::size_t>(g)] = 0;
    };
    rec(0, max_degree);
    return out;
}

inline DualVerifyReport verify_dual_relations(const std::string& family, int degree_bound) {
    RMatrix R = build_family(family);
    RewriteSystem rs = rewrite_system(R);
    Coproduct cop(rs);
    DualPairing pairing(cop);
    auto ring = R.ring();
    DualParams par = dual_params(family, ring);
    auto rels = dual_relations(par, ring, degree_bound);

    DualVerifyReport rep;
    auto fail = [&](const std::string& what) {
        rep.pass = false;
        rep.violations.push_back(what);
    };

    const DualGen untilded[] = {DualGen::A, DualGen::B, DualGen::C, DualGen::H};
    const DualGen tilded[] = {DualGen::At, DualGen::Bt, DualGen::Ct, DualGen::Ht};

    for (auto& m : monomial_basis(rs, degree_bound)) {
        ++rep.monomials_checked;
        AlgebraElement e(ring);
        e.add(m, ring->one());
        for (auto& rel : rels) {
            Coefficient lhs = rel.square ? pairing.word({rel.v, rel.w}, m)
                                         : pairing.supercommutator(rel.v, rel.w, m);
            Coefficient rhs = ring->zero();
            for (auto& se : rel.rhs) rhs += pair_series(pairing, se, e, degree_bound);
            if (lhs != rhs)
                fail(rel.name + " on " + m.str() + ": lhs " + lhs.str() + " vs rhs " + rhs.str());
        }
        for (auto v : untilded)
            for (auto w : tilded) {
                Coefficient c = pairing.supercommutator(v, w, m);
                if (!c.is_zero())
                    fail(std::string("[") + kDualName[dual_index(v)] + "," +
                         kDualName[dual_index(w)] + "] on " + m.str() + ": " + c.str());
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Coproduct expansion tables.  For fermionic-sector inputs the expansion
// splits into a parity-preserving part (α,γ exponents agree mod 2 across
// matching slots of the corresponding nondeformed term) and a
// parity-flipping part; for bosonic inputs the Λ table is the coefficient
// of b^k̃ a^l̃ d^m̃ ⊗ b^k′ a^l′ d^m′ c^j′.

struct CoproductExpansion {
    TensorElement tensor;
    TensorElement parity_preserving;
    TensorElement parity_flipping;

    Coefficient lambda(int kt, int lt, int mt, int kp, int lp, int mp, int jp) const {
        Monomial left, right;
        left.e[static_cast<std::size_t>(gen_index(Gen::B))] = static_cast<std::uint16_t>(kt);
        left.e[static_cast<std::size_t>(gen_index(Gen::A))] = static_cast<std::uint16_t>(lt);
        left.e[static_cast<std::size_t>(gen_index(Gen::D))] = static_cast<std::uint16_t>(mt);
        right.e[static_cast<std::size_t>(gen_index(Gen::B))] = static_cast<std::uint16_t>(kp);
        right.e[static_cast<std::size_t>(gen_index(Gen::A))] = static_cast<std::uint16_t>(lp);
        right.e[static_cast<std::size_t>(gen_index(Gen::D))] = static_cast<std::uint16_t>(mp);
        right.e[static_cast<std::size_t>(gen_index(Gen::C))] = static_cast<std::uint16_t>(jp);
        auto it = tensor.terms().find(std::make_pair(left, right));
        return it == tensor.terms().end() ? tensor.ring()->zero() : it->second;
    }
};

inline CoproductExpansion coproduct_expansion_tables(const Coproduct& cop, const Monomial& input) {
    CoproductExpansion ex;
    ex.tensor = cop.monomial(input);
    ex.parity_preserving = TensorElement(cop.ring());
    ex.parity_flipping = TensorElement(cop.ring());
    for (auto& [pr, c] : ex.tensor.terms()) {
        // a term is parity-preserving when the left slot carries even
        // fermionic parity (the α⊗γ insertions come in pairs)
        if (pr.first.parity() == 0)
            ex.parity_preserving.add(pr.first, pr.second, c);
        else
            ex.parity_flipping.add(pr.first, pr.second, c);
    }
    return ex;
}

// Sum identities for the Λ table of Δ(b^r), summed over the free d-powers:
//   Σ Λ^r_{0,0,m̃;0,1,m′,0} = Σ Λ^r_{0,1,m̃;0,0,m′,0} = 0
//   Σ Λ^r_{0,0,m̃;1,0,m′,0} = Σ Λ^r_{1,0,m̃;0,0,m′,0} = δ_{r1}
//   Σ Λ^r_{0,0,m̃;0,0,m′,1} = 0
//   Σ m̃ Λ^r_{0,0,m̃;0,0,m′,0} = Σ m′ Λ^r_{0,0,m̃;0,0,m′,0} = 0
struct LambdaReport {
    bool pass = true;
    std::vector<std::string> failures;
};

inline LambdaReport check_lambda_identities(const Coproduct& cop, int r_max) {
    LambdaReport rep;
    auto ring = cop.ring();
    auto fail = [&](int r, const std::string& what) {
        rep.pass = false;
        rep.failures.push_back("r=" + std::to_string(r) + ": " + what);
    };
    for (int r = 1; r <= r_max; ++r) {
        auto ex = coproduct_expansion_tables(cop, Monomial::of(Gen::B, static_cast<std::uint16_t>(r)));
        Coefficient s1 = ring->zero(), s2 = s1, s3 = s1, s4 = s1, s5 = s1, s6 = s1, s7 = s1;
        for (int mt = 0; mt <= r; ++mt)
            for (int mp = 0; mp <= r; ++mp) {
                s1 += ex.lambda(0, 0, mt, 0, 1, mp, 0);
                s2 += ex.lambda(0, 1, mt, 0, 0, mp, 0);
                s3 += ex.lambda(0, 0, mt, 1, 0, mp, 0);
                s4 += ex.lambda(1, 0, mt, 0, 0, mp, 0);
                s5 += ex.lambda(0, 0, mt, 0, 0, mp, 1);
                Coefficient base = ex.lambda(0, 0, mt, 0, 0, mp, 0);
                s6 += base * Rational(mt);
                s7 += base * Rational(mp);
            }
        Coefficient delta_r1 = r == 1 ? ring->one() : ring->zero();
        if (!s1.is_zero()) fail(r, "sum over a-right table is " + s1.str());
        if (!s2.is_zero()) fail(r, "sum over a-left table is " + s2.str());
        if (s3 != delta_r1) fail(r, "sum over b-right table is " + s3.str());
        if (s4 != delta_r1) fail(r, "sum over b-left table is " + s4.str());
        if (!s5.is_zero()) fail(r, "sum over c-right table is " + s5.str());
        if (!s6.is_zero()) fail(r, "d-weighted left sum is " + s6.str());
        if (!s7.is_zero()) fail(r, "d-weighted right sum is " + s7.str());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The coproduct must be an algebra homomorphism: for every rewrite rule
// g1 g2 → E it must hold that Δ(g1)Δ(g2) = Δ(E).

struct CompatReport {
    bool pass = true;
    std::vector<std::string> violations;
};

inline CompatReport verify_coproduct_compatibility(const RMatrix& R) {
    RewriteSystem rs = rewrite_system(R);
    Coproduct cop(rs);
    CompatReport rep;
    for (int i = 0; i < kNumGen; ++i)
        for (int j = 0; j < kNumGen; ++j) {
            Gen g1 = static_cast<Gen>(i), g2 = static_cast<Gen>(j);
            if (!rs.has_rule(g1, g2)) continue;
            TensorElement lhs = tensor_multiply(generator_coproduct(R.ring(), g1),
                                                generator_coproduct(R.ring(), g2), rs);
            TensorElement rhs = cop.apply(rs.rule(g1, g2));
            lhs -= rhs;
            if (!lhs.is_zero()) {
                rep.pass = false;
                rep.violations.push_back(std::string(kGenName[i]) + "*" + kGenName[j] + ": " +
                                         lhs.str());
            }
        }
    return rep;
}

} // namespace oscq
