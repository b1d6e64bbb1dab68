#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oscq/algebra.hpp"

using namespace oscq;

namespace {

FreeElement word_el(const RingPtr& r, const Word& w, const Coefficient& c) {
    FreeElement e(r);
    e.add(w, c);
    return e;
}

FreeElement commutator_rel(const RingPtr& r, Gen g1, Gen g2) {
    FreeElement e(r);
    e.add({g1, g2}, r->one());
    e.add({g2, g1}, -r->one());
    return e;
}

FreeElement anticommutator_rel(const RingPtr& r, Gen g1, Gen g2) {
    FreeElement e(r);
    e.add({g1, g2}, r->one());
    e.add({g2, g1}, r->one());
    return e;
}

// Hand-built deformed relation set: deformed fermionic sector
// ({alpha,eta}=0, alpha^2=(z/2)(1-eta^2), [alpha,beta]=z*gamma*eta, ...)
// direct-summed with the deformed bosonic sector ([a,b]=p*a+tau*(1-d),
// [b,c]=-q*c-rho*(1-d)), all cross relations commuting.
std::vector<FreeElement> deformed_relations(const RingPtr& r) {
    auto x = r->param("x");
    auto z = r->param("z");
    auto p = r->param("p");
    auto q = r->param("q");
    auto rho = r->param("rho");
    auto tau = r->param("tau");
    auto half = r->rational(Rational(1, 2));

    std::vector<FreeElement> rels;
    rels.push_back(anticommutator_rel(r, Gen::Alpha, Gen::Eta));
    rels.push_back(anticommutator_rel(r, Gen::Gamma, Gen::Eta));
    rels.push_back(commutator_rel(r, Gen::Gamma, Gen::Alpha));
    rels.push_back(commutator_rel(r, Gen::Eta, Gen::Beta));
    {
        FreeElement e(r);  // alpha*beta - beta*alpha - z*gamma*eta
        e.add({Gen::Alpha, Gen::Beta}, r->one());
        e.add({Gen::Beta, Gen::Alpha}, -r->one());
        e.add({Gen::Gamma, Gen::Eta}, -z);
        rels.push_back(e);
    }
    {
        FreeElement e(r);  // gamma*beta - beta*gamma - x*alpha*eta
        e.add({Gen::Gamma, Gen::Beta}, r->one());
        e.add({Gen::Beta, Gen::Gamma}, -r->one());
        e.add({Gen::Alpha, Gen::Eta}, -x);
        rels.push_back(e);
    }
    {
        FreeElement e(r);  // alpha^2 - (z/2)(1 - eta^2)
        e.add({Gen::Alpha, Gen::Alpha}, r->one());
        e.add({}, -(half * z));
        e.add({Gen::Eta, Gen::Eta}, half * z);
        rels.push_back(e);
    }
    {
        FreeElement e(r);  // gamma^2 - (x/2)(1 - eta^2)
        e.add({Gen::Gamma, Gen::Gamma}, r->one());
        e.add({}, -(half * x));
        e.add({Gen::Eta, Gen::Eta}, half * x);
        rels.push_back(e);
    }
    {
        FreeElement e(r);  // a*b - b*a - p*a - tau*(1 - d)
        e.add({Gen::A, Gen::B}, r->one());
        e.add({Gen::B, Gen::A}, -r->one());
        e.add({Gen::A}, -p);
        e.add({}, -tau);
        e.add({Gen::D}, tau);
        rels.push_back(e);
    }
    {
        FreeElement e(r);  // b*c - c*b + q*c + rho*(1 - d)
        e.add({Gen::B, Gen::C}, r->one());
        e.add({Gen::C, Gen::B}, -r->one());
        e.add({Gen::C}, q);
        e.add({}, rho);
        e.add({Gen::D}, -rho);
        rels.push_back(e);
    }
    rels.push_back(commutator_rel(r, Gen::D, Gen::A));
    rels.push_back(commutator_rel(r, Gen::C, Gen::A));
    rels.push_back(commutator_rel(r, Gen::C, Gen::D));
    rels.push_back(commutator_rel(r, Gen::D, Gen::B));
    for (Gen greek : {Gen::Beta, Gen::Eta, Gen::Alpha, Gen::Gamma})
        for (Gen roman : {Gen::B, Gen::A, Gen::D, Gen::C})
            rels.push_back(commutator_rel(r, roman, greek));
    return rels;
}

RingPtr test_ring() { return Ring::make({"x", "z", "s", "p", "q", "rho", "tau"}); }

Word random_word(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(0, kNumGen - 1);
    Word w(static_cast<std::size_t>(len(rng)));
    for (auto& g : w) g = static_cast<Gen>(gen(rng));
    return w;
}

} // namespace

TEST_CASE("rewrite system construction and closure") {
    auto r = test_ring();
    auto rs = RewriteSystem::from_relations(r, deformed_relations(r));
    CHECK(rs.is_closed());
    // every input relation reduces to zero
    for (auto& rel : deformed_relations(r)) CHECK(normalize_free(rel, rs).is_zero());
}

TEST_CASE("normal ordering matches the defining relations") {
    auto r = test_ring();
    auto rs = RewriteSystem::from_relations(r, deformed_relations(r));
    auto x = r->param("x");
    auto z = r->param("z");
    auto half = r->rational(Rational(1, 2));

    // alpha*beta = beta*alpha + z*gamma*eta = beta*alpha - z*eta*gamma
    auto ab = normal_order({Gen::Alpha, Gen::Beta}, rs);
    AlgebraElement want(r);
    want.add(Monomial::of(Gen::Beta) * Monomial::of(Gen::Alpha), r->one());
    want.add(Monomial::of(Gen::Eta) * Monomial::of(Gen::Gamma), -z);
    CHECK(ab == want);

    // beta*alpha is already canonical
    auto ba = normal_order({Gen::Beta, Gen::Alpha}, rs);
    AlgebraElement ba_want(r);
    ba_want.add(Monomial::of(Gen::Beta) * Monomial::of(Gen::Alpha), r->one());
    CHECK(ba == ba_want);

    // [alpha,beta] = z*gamma*eta as elements
    auto lhs = ab - ba;
    auto rhs = z * normal_order({Gen::Gamma, Gen::Eta}, rs);
    CHECK(lhs == rhs);

    // alpha*eta = -eta*alpha
    auto ae = normal_order({Gen::Alpha, Gen::Eta}, rs);
    AlgebraElement ae_want(r);
    ae_want.add(Monomial::of(Gen::Eta) * Monomial::of(Gen::Alpha), -r->one());
    CHECK(ae == ae_want);

    // alpha^2 = (z/2)(1 - eta^2)
    auto a2 = normal_order({Gen::Alpha, Gen::Alpha}, rs);
    AlgebraElement a2_want(r);
    a2_want.add(Monomial::unit(), half * z);
    a2_want.add(Monomial::of(Gen::Eta, 2), -(half * z));
    CHECK(a2 == a2_want);

    // gamma^2 = (x/2)(1 - eta^2)
    auto g2 = normal_order({Gen::Gamma, Gen::Gamma}, rs);
    AlgebraElement g2_want(r);
    g2_want.add(Monomial::unit(), half * x);
    g2_want.add(Monomial::of(Gen::Eta, 2), -(half * x));
    CHECK(g2 == g2_want);

    // empty word is the unit
    CHECK(normal_order({}, rs) == AlgebraElement::unit(r));
}

TEST_CASE("bosonic sector relations") {
    auto r = test_ring();
    auto rs = RewriteSystem::from_relations(r, deformed_relations(r));
    auto p = r->param("p");
    auto tau = r->param("tau");

    // [a,b] = p*a + tau*(1-d)
    auto com = normal_order({Gen::A, Gen::B}, rs) - normal_order({Gen::B, Gen::A}, rs);
    AlgebraElement want(r);
    want.add(Monomial::of(Gen::A), p);
    want.add(Monomial::unit(), tau);
    want.add(Monomial::of(Gen::D), -tau);
    CHECK(com == want);

    // (1-eta)(1+eta) = 1 - eta^2
    AlgebraElement one_minus(r), one_plus(r);
    one_minus.add(Monomial::unit(), r->one());
    one_minus.add(Monomial::of(Gen::Eta), -r->one());
    one_plus.add(Monomial::unit(), r->one());
    one_plus.add(Monomial::of(Gen::Eta), r->one());
    AlgebraElement want2(r);
    want2.add(Monomial::unit(), r->one());
    want2.add(Monomial::of(Gen::Eta, 2), -r->one());
    CHECK(multiply(one_minus, one_plus, rs) == want2);
}

TEST_CASE("incomplete system throws") {
    auto r = test_ring();
    RewriteSystem rs(r);
    CHECK_FALSE(rs.is_closed());
    CHECK_THROWS_AS(normal_order({Gen::Alpha, Gen::Beta}, rs), IncompleteRewriteSystem);
}

TEST_CASE("termination and parity on random words") {
    auto r = test_ring();
    auto rs = RewriteSystem::from_relations(r, deformed_relations(r));
    std::mt19937 rng(777);
    for (int it = 0; it < 500; ++it) {
        Word w = random_word(rng, 12);
        int parity = 0;
        for (Gen g : w) parity ^= is_odd(g) ? 1 : 0;
        auto e = normal_order(w, rs);
        for (auto& [m, c] : e.terms()) CHECK(m.parity() == parity);
    }
}

TEST_CASE("confluence under random splits") {
    auto r = test_ring();
    auto rs = RewriteSystem::from_relations(r, deformed_relations(r));
    std::mt19937 rng(31337);
    for (int it = 0; it < 2000; ++it) {
        Word w = random_word(rng, 10);
        std::uniform_int_distribution<std::size_t> split(0, w.size());
        std::size_t k = split(rng);
        Word pre(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        Word suf(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
        auto whole = normal_order(w, rs);
        auto glued = multiply(normal_order(pre, rs), normal_order(suf, rs), rs);
        CHECK(whole == glued);
    }
}

TEST_CASE("associativity on random elements") {
    auto r = test_ring();
    auto rs = RewriteSystem::from_relations(r, deformed_relations(r));
    std::mt19937 rng(4242);
    auto random_element = [&] {
        AlgebraElement e(r);
        std::uniform_int_distribution<int> nterms(1, 3), coef(-3, 3);
        int n = nterms(rng);
        for (int t = 0; t < n; ++t) {
            Word w = random_word(rng, 4);
            auto no = normal_order(w, rs);
            auto c = r->rational(Rational(coef(rng)));
            for (auto& [m, cc] : no.terms()) e.add(m, c * cc);
        }
        return e;
    };
    for (int it = 0; it < 300; ++it) {
        auto e1 = random_element(), e2 = random_element(), e3 = random_element();
        CHECK(multiply(multiply(e1, e2, rs), e3, rs) == multiply(e1, multiply(e2, e3, rs), rs));
    }
}

TEST_CASE("tensor multiplication") {
    auto r = test_ring();
    auto rs = RewriteSystem::from_relations(r, deformed_relations(r));
    auto x = r->param("x");

    // (1 (x) beta) * (alpha (x) gamma) = alpha (x) beta*gamma
    auto t1 = TensorElement::simple(r, Monomial::unit(), Monomial::of(Gen::Beta), r->one());
    auto t2 = TensorElement::simple(r, Monomial::of(Gen::Alpha), Monomial::of(Gen::Gamma),
                                    r->one());
    auto prod = tensor_multiply(t1, t2, rs);
    TensorElement want(r);
    want.add(Monomial::of(Gen::Alpha), Monomial::of(Gen::Beta) * Monomial::of(Gen::Gamma),
             r->one());
    CHECK(prod == want);

    // (eta (x) eta)^2 = eta^2 (x) eta^2
    auto he = TensorElement::simple(r, Monomial::of(Gen::Eta), Monomial::of(Gen::Eta),
                                    r->one());
    auto he2 = tensor_multiply(he, he, rs);
    TensorElement want2(r);
    want2.add(Monomial::of(Gen::Eta, 2), Monomial::of(Gen::Eta, 2), r->one());
    CHECK(he2 == want2);

    // slotwise rewriting: (1 (x) gamma) * (1 (x) beta) = 1 (x) (beta*gamma - x*eta*alpha)
    auto g = TensorElement::simple(r, Monomial::unit(), Monomial::of(Gen::Gamma), r->one());
    auto b = TensorElement::simple(r, Monomial::unit(), Monomial::of(Gen::Beta), r->one());
    auto gb = tensor_multiply(g, b, rs);
    TensorElement want3(r);
    want3.add(Monomial::unit(), Monomial::of(Gen::Beta) * Monomial::of(Gen::Gamma), r->one());
    want3.add(Monomial::unit(), Monomial::of(Gen::Eta) * Monomial::of(Gen::Alpha), -x);
    CHECK(gb == want3);
}

TEST_CASE("classical derivation table") {
    auto r = test_ring();
    auto report = classical_derivation_check(r);
    for (auto& f : report.failures) MESSAGE(f);
    CHECK(report.pass);
}

TEST_CASE("serialization round trip shape") {
    auto r = test_ring();
    auto rs = RewriteSystem::from_relations(r, deformed_relations(r));
    auto text = rs.serialize();
    CHECK(text.find("alpha*beta = ") != std::string::npos);
    CHECK(text.find("alpha*alpha = ") != std::string::npos);
    // 28 ordered pairs + 2 odd squares
    CHECK(std::count(text.begin(), text.end(), '\n') == 30);
}
