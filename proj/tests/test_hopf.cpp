#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <oscq/hopf.hpp>

#include <random>

using namespace oscq;

namespace {

struct Fixture {
    RMatrix R;
    RewriteSystem rs;
    Coproduct cop;
    DualPairing pairing;

    explicit Fixture(const std::string& family)
        : R(build_family(family)), rs(rewrite_system(R)), cop(rs), pairing(cop) {}

    AlgebraElement gen(Gen g) const { return AlgebraElement::generator(R.ring(), g); }
    AlgebraElement mono(const Monomial& m) const {
        AlgebraElement e(R.ring());
        e.add(m, R.ring()->one());
        return e;
    }
};

Monomial make_monomial(std::initializer_list<std::pair<Gen, int>> exps) {
    Monomial m;
    for (auto& [g, e] : exps)
        m.e[static_cast<std::size_t>(gen_index(g))] = static_cast<std::uint16_t>(e);
    return m;
}

} // namespace

TEST_CASE("generator coproducts") {
    Fixture f("I-II-A");
    auto ring = f.R.ring();

    TensorElement db(ring);
    db.add(Monomial::unit(), Monomial::of(Gen::Beta), ring->one());
    db.add(Monomial::of(Gen::Beta), Monomial::unit(), ring->one());
    db.add(Monomial::of(Gen::Alpha), Monomial::of(Gen::Gamma), ring->one());
    CHECK(f.cop.apply(f.gen(Gen::Beta)) == db);

    TensorElement dg(ring);
    dg.add(Monomial::of(Gen::Eta), Monomial::of(Gen::Gamma), ring->one());
    dg.add(Monomial::of(Gen::Gamma), Monomial::unit(), ring->one());
    CHECK(f.cop.apply(f.gen(Gen::Gamma)) == dg);

    TensorElement dbb(ring);
    dbb.add(Monomial::unit(), Monomial::of(Gen::B), ring->one());
    dbb.add(Monomial::of(Gen::B), Monomial::unit(), ring->one());
    dbb.add(Monomial::of(Gen::A), Monomial::of(Gen::C), ring->one());
    CHECK(f.cop.apply(f.gen(Gen::B)) == dbb);

    // grouplike powers
    for (int l = 1; l <= 5; ++l) {
        auto ml = Monomial::of(Gen::Eta, static_cast<std::uint16_t>(l));
        CHECK(f.cop.monomial(ml) == TensorElement::simple(ring, ml, ml, ring->one()));
        auto dt = Monomial::of(Gen::D, static_cast<std::uint16_t>(l));
        CHECK(f.cop.monomial(dt) == TensorElement::simple(ring, dt, dt, ring->one()));
    }
}

TEST_CASE("coproduct is compatible with every family's relations") {
    for (auto& fam : bundled_families()) {
        auto rep = verify_coproduct_compatibility(build_family(fam));
        INFO(fam);
        for (auto& v : rep.violations) INFO(v);
        CHECK(rep.pass);
    }
}

TEST_CASE("coassociativity") {
    std::mt19937 rng(4242);
    for (auto& fam : bundled_families()) {
        Fixture f(fam);
        auto basis = monomial_basis(f.rs, 4);
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        std::uniform_int_distribution<int> coeff(-3, 3);
        for (int trial = 0; trial < 10; ++trial) {
            AlgebraElement e(f.R.ring());
            for (int t = 0; t < 3; ++t)
                e.add(basis[pick(rng)], f.R.ring()->rational(coeff(rng)));
            MultiTensor d2;
            TensorElement de = f.cop.apply(e);
            for (auto& [pr, c] : de.terms())
                d2.emplace(std::vector<Monomial>{pr.first, pr.second}, c);
            INFO(fam);
            CHECK(expand_slot(f.cop, d2, 0) == expand_slot(f.cop, d2, 1));
        }
    }
}

TEST_CASE("iterated coproduct basics") {
    Fixture f("I-II-A");
    auto eta = f.gen(Gen::Eta);
    auto t3 = iterated_coproduct(f.cop, eta, 3);
    REQUIRE(t3.size() == 1);
    auto& [slots, c] = *t3.begin();
    CHECK(slots == std::vector<Monomial>(3, Monomial::of(Gen::Eta)));
    CHECK(c == f.R.ring()->one());

    CHECK(iterated_coproduct(f.cop, f.gen(Gen::Beta), 1).size() == 1);
}

TEST_CASE("counit recovers the element from either slot") {
    for (auto& fam : bundled_families()) {
        Fixture f(fam);
        for (auto& m : monomial_basis(f.rs, 3)) {
            auto e = f.mono(m);
            auto d = f.cop.apply(e);
            INFO(fam << " " << m.str());
            CHECK(counit_slot(d, 0) == e);
            CHECK(counit_slot(d, 1) == e);
        }
    }
}

TEST_CASE("generator pairings") {
    CHECK(pair_generator(DualGen::A, make_monomial({{Gen::Alpha, 1}, {Gen::Eta, 3}})) == 1);
    CHECK(pair_generator(DualGen::H, make_monomial({{Gen::Eta, 2}})) == 2);
    CHECK(pair_generator(DualGen::Ht, make_monomial({{Gen::D, 5}})) == 5);
    CHECK(pair_generator(DualGen::B, Monomial::of(Gen::Beta)) == 1);
    CHECK(pair_generator(DualGen::B, make_monomial({{Gen::Beta, 1}, {Gen::B, 1}})) == 0);
    CHECK(pair_generator(DualGen::At, make_monomial({{Gen::A, 1}, {Gen::D, 2}})) == 1);
    CHECK(pair_generator(DualGen::A, make_monomial({{Gen::Alpha, 1}, {Gen::A, 1}})) == 0);
    CHECK(pair_generator(DualGen::Ct, Monomial::of(Gen::C)) == 1);
}

TEST_CASE("word pairings under I-II-A") {
    Fixture f("I-II-A");
    auto ring = f.R.ring();
    auto beta = Monomial::of(Gen::Beta);

    CHECK(f.pairing.word({DualGen::B}, beta) == ring->one());
    CHECK(f.pairing.word({DualGen::A, DualGen::C}, beta) == ring->one());
    CHECK(f.pairing.word({DualGen::C, DualGen::A}, beta) == ring->zero());
    CHECK(f.pairing.word({DualGen::A, DualGen::A}, Monomial::of(Gen::Beta, 2)) ==
          -ring->param("x"));

    CHECK(f.pairing.supercommutator(DualGen::A, DualGen::C, beta) == ring->one());
    CHECK(f.pairing.supercommutator(DualGen::At, DualGen::Ct, Monomial::of(Gen::B)) ==
          ring->one());
}

TEST_CASE("series pairings") {
    Fixture f("I-II-A");
    auto ring = f.R.ring();
    auto par = dual_params("I-II-A", ring);
    auto rels = dual_relations(par, ring, 4);

    auto beta = f.gen(Gen::Beta);
    // {A,C} series on beta: only the linear term contributes
    auto& sinh_se = rels[0].rhs[0];
    CHECK(pair_series(f.pairing, sinh_se, beta, 3) == ring->one());
    CHECK(sinh_se.coeff(3) == ring->param("x") * ring->param("z") * Rational(4, 6));

    // A^2 series on beta^2
    AlgebraElement beta2(ring);
    beta2.add(Monomial::of(Gen::Beta, 2), ring->one());
    CHECK(pair_series(f.pairing, rels[1].rhs[0], beta2, 4) == -ring->param("x"));

    // bosonic exponential series on b
    CHECK(pair_series(f.pairing, rels[5].rhs[0], f.gen(Gen::B), 2) == ring->one());

    // exactness: raising the truncation order never changes the result
    CHECK(pair_series(f.pairing, sinh_se, beta2, 4) == pair_series(f.pairing, sinh_se, beta2, 9));

    CHECK_THROWS_AS(pair_series(f.pairing, sinh_se, beta2, 1), TruncationTooSmall);
}

TEST_CASE("dual relations hold for the supported families") {
    for (auto& fam : {"FB-NONDEF", "I-II-A", "I-II-B", "I-II-C"}) {
        auto rep = verify_dual_relations(fam, 4);
        INFO(fam);
        for (auto& v : rep.violations) INFO(v);
        CHECK(rep.pass);
        CHECK(rep.monomials_checked > 0);
    }
    CHECK_THROWS_AS(verify_dual_relations("IDENTITY", 4), ConfigError);
    CHECK_THROWS_AS(verify_dual_relations("I-II-D", 4), ConfigError);
}

TEST_CASE("nondeformed dual collapses to the plain oscillator relations") {
    Fixture f("FB-NONDEF");
    auto ring = f.R.ring();
    for (auto& m : monomial_basis(f.rs, 4)) {
        // {A,C} = B and [A~,C~] = B~
        CHECK(f.pairing.supercommutator(DualGen::A, DualGen::C, m) ==
              ring->rational(pair_generator(DualGen::B, m)));
        CHECK(f.pairing.supercommutator(DualGen::At, DualGen::Ct, m) ==
              ring->rational(pair_generator(DualGen::Bt, m)));
        CHECK(f.pairing.word({DualGen::A, DualGen::A}, m).is_zero());
        CHECK(f.pairing.word({DualGen::C, DualGen::C}, m).is_zero());
    }
}

TEST_CASE("sector separation") {
    Fixture f("I-II-A");
    auto ring = f.R.ring();
    const DualGen untilded[] = {DualGen::A, DualGen::B, DualGen::C, DualGen::H};
    const DualGen tilded[] = {DualGen::At, DualGen::Bt, DualGen::Ct, DualGen::Ht};
    for (auto& m : monomial_basis(f.rs, 5)) {
        Monomial fer, bos;
        for (auto g : {Gen::Beta, Gen::Eta, Gen::Alpha, Gen::Gamma})
            fer.e[static_cast<std::size_t>(gen_index(g))] = m.exp(g);
        for (auto g : {Gen::B, Gen::A, Gen::D, Gen::C})
            bos.e[static_cast<std::size_t>(gen_index(g))] = m.exp(g);
        bool bos_trivial = counit_nonzero(bos);
        bool fer_trivial = counit_nonzero(fer);
        for (auto v : untilded)
            for (auto w : untilded) {
                Coefficient whole = f.pairing.word({v, w}, m);
                Coefficient split = bos_trivial ? f.pairing.word({v, w}, fer) : ring->zero();
                INFO(m.str() << " " << kDualName[dual_index(v)] << kDualName[dual_index(w)]);
                CHECK(whole == split);
            }
        for (auto v : tilded)
            for (auto w : tilded) {
                Coefficient whole = f.pairing.word({v, w}, m);
                Coefficient split = fer_trivial ? f.pairing.word({v, w}, bos) : ring->zero();
                INFO(m.str() << " " << kDualName[dual_index(v)] << kDualName[dual_index(w)]);
                CHECK(whole == split);
            }
    }
}

TEST_CASE("coproduct expansion tables and lambda identities") {
    Fixture f("I-II-A");
    auto ring = f.R.ring();

    // Δγ splits into its two parity classes
    auto exg = coproduct_expansion_tables(f.cop, Monomial::of(Gen::Gamma));
    TensorElement expect(ring);
    expect.add(Monomial::of(Gen::Eta), Monomial::of(Gen::Gamma), ring->one());
    expect.add(Monomial::of(Gen::Gamma), Monomial::unit(), ring->one());
    CHECK(exg.tensor == expect);

    // Δβ: parity-preserving part 1⊗β + β⊗1, parity-flipping part α⊗γ
    auto exb = coproduct_expansion_tables(f.cop, Monomial::of(Gen::Beta));
    TensorElement gpart(ring), dpart(ring);
    gpart.add(Monomial::unit(), Monomial::of(Gen::Beta), ring->one());
    gpart.add(Monomial::of(Gen::Beta), Monomial::unit(), ring->one());
    dpart.add(Monomial::of(Gen::Alpha), Monomial::of(Gen::Gamma), ring->one());
    CHECK(exb.parity_preserving == gpart);
    CHECK(exb.parity_flipping == dpart);

    // Λ table for Δ(b): coefficient of b⊗1
    auto ex1 = coproduct_expansion_tables(f.cop, Monomial::of(Gen::B));
    CHECK(ex1.lambda(1, 0, 0, 0, 0, 0, 0) == ring->one());
    CHECK(ex1.lambda(0, 1, 0, 0, 0, 0, 1) == ring->one());

    for (auto& fam : bundled_families()) {
        Fixture g(fam);
        auto rep = check_lambda_identities(g.cop, 8);
        INFO(fam);
        for (auto& v : rep.failures) INFO(v);
        CHECK(rep.pass);
    }
}
