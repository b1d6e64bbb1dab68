#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oscq/ring.hpp"

using namespace oscq;

TEST_CASE("ring construction") {
    auto r = Ring::make({"x", "z", "s"});
    CHECK(r->size() == 3);
    CHECK(r->s_index() == 2);
    CHECK_THROWS_AS(Ring::make({"x", "x"}), DuplicateParameter);
    CHECK_THROWS_AS(Ring::make({"s"}), UnboundParameter);
    auto pq = Ring::make({"p", "q"});
    CHECK(pq->s_index() == -1);
    CHECK(pq->constraints().empty());
}

TEST_CASE("s reduction") {
    auto r = Ring::make({"x", "z", "s"});
    auto s = r->param("s");
    auto x = r->param("x");
    auto z = r->param("z");

    CHECK(s * s == x * z);
    CHECK(s.pow(3) == x * z * s);
    CHECK(s.pow(4) == x * x * z * z);
    CHECK((x * z - x * z).is_zero());
    // (s+1)(s-1) expands and reduces to x*z - 1
    auto lhs = (s + r->one()) * (s - r->one());
    auto rhs = x * z - r->one();
    CHECK(lhs == rhs);
    CHECK(lhs.eval({{"x", 4.0}, {"z", 1.0}, {"s", 2.0}}) == doctest::Approx(3.0));

    // s exponent never exceeds 1 after any arithmetic
    auto mess = (s + x).pow(5) * (s - z).pow(3);
    for (auto& [e, c] : mess.terms()) CHECK(e[2] <= 1);
}

TEST_CASE("evaluation") {
    auto r = Ring::make({"x", "z", "s"});
    auto x = r->param("x");
    auto z = r->param("z");
    auto s = r->param("s");

    CHECK((x * z).eval({{"x", 2.0}, {"z", 3.0}}) == doctest::Approx(6.0));
    CHECK(s.eval({{"x", 4.0}, {"z", 1.0}, {"s", -2.0}}) == doctest::Approx(-2.0));
    CHECK_THROWS_AS(s.eval({{"x", 4.0}, {"z", 1.0}, {"s", 3.0}}), InconsistentRoot);
    CHECK_THROWS_AS(x.eval({{"z", 1.0}}), UnboundParameter);
    // x alone evaluates even when s is unassigned
    CHECK(x.eval({{"x", 7.0}}) == doctest::Approx(7.0));
}

TEST_CASE("product constraints on derived parameters") {
    auto idx = [](const RingPtr& r, const std::string& n) { return r->require(n); };
    auto make = [&] {
        auto base = Ring::make({"p", "q", "rho", "tau", "sigma", "u1", "u2"});
        std::vector<ProductConstraint> cs;
        cs.push_back({{{idx(base, "u1"), 1}, {idx(base, "q"), 1}},
                      {{idx(base, "rho"), 1}, {idx(base, "sigma"), 1}},
                      "u1*q = rho*sigma"});
        return Ring::make(base->names(), cs);
    };
    auto r = make();
    auto u1 = r->param("u1");
    CHECK(u1.eval({{"u1", 6.0}, {"q", 2.0}, {"rho", 3.0}, {"sigma", 4.0}}) == doctest::Approx(6.0));
    CHECK_THROWS_AS(u1.eval({{"u1", 1.0}, {"q", 2.0}, {"rho", 3.0}, {"sigma", 4.0}}),
                    ConstraintViolation);
    // constraint skipped if a participant is unassigned and unused
    CHECK(r->param("p").eval({{"p", 5.0}}) == doctest::Approx(5.0));
}

TEST_CASE("eval is a homomorphism on random coefficients") {
    auto r = Ring::make({"x", "z", "s", "p"});
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> coef(-6, 6), expo(0, 3), nterms(1, 5);

    auto random_coeff = [&] {
        Coefficient c(r);
        int n = nterms(rng);
        for (int t = 0; t < n; ++t) {
            ExpVec e(4);
            for (auto& v : e) v = static_cast<std::uint8_t>(expo(rng));
            c.add_term(std::move(e), Rational(coef(rng)));
        }
        return c;
    };
    std::uniform_real_distribution<double> val(0.2, 2.0);
    for (int it = 0; it < 200; ++it) {
        auto c1 = random_coeff();
        auto c2 = random_coeff();
        double x = val(rng), z = val(rng), p = val(rng);
        double s = std::sqrt(x * z) * (it % 2 ? 1 : -1);
        Assignment a{{"x", x}, {"z", z}, {"s", s}, {"p", p}};
        double prod = (c1 * c2).eval(a);
        double sum = (c1 + c2).eval(a);
        double scale_p = std::max(1.0, std::abs(c1.eval(a) * c2.eval(a)));
        double scale_s = std::max(1.0, std::abs(c1.eval(a) + c2.eval(a)));
        CHECK(std::abs(prod - c1.eval(a) * c2.eval(a)) / scale_p < 1e-10);
        CHECK(std::abs(sum - (c1.eval(a) + c2.eval(a))) / scale_s < 1e-10);
    }
}

TEST_CASE("exact division") {
    auto r = Ring::make({"p", "q"});
    auto p = r->param("p");
    auto q = r->param("q");
    auto sum = p + q;
    auto prod = sum * (p * p - q + r->rational(Rational(3, 2)));
    CHECK(prod.divide_exact(sum) == p * p - q + r->rational(Rational(3, 2)));
    CHECK_THROWS_AS((p * p + q).divide_exact(sum), NotDivisible);
    // p^n - (-q)^n is divisible by p+q
    auto diff = p.pow(5) + q.pow(5);
    auto quot = diff.divide_exact(sum);
    CHECK(quot * sum == diff);
}

TEST_CASE("substitution homomorphism") {
    auto src = Ring::make({"p", "q"});
    auto dst = Ring::make({"x", "z", "s"});
    auto p = src->param("p");
    auto q = src->param("q");
    auto expr = p * p + Rational(2) * (p * q) + q * q;

    std::map<std::string, Coefficient> images{{"p", dst->param("s")}, {"q", dst->param("x")}};
    auto out = expr.substitute(dst, images);
    auto x = dst->param("x");
    auto z = dst->param("z");
    auto s = dst->param("s");
    CHECK(out == x * z + Rational(2) * (s * x) + x * x);

    CHECK_THROWS_AS(expr.substitute(dst, {{"p", dst->param("x")}}), UnboundParameter);
}

TEST_CASE("primitive normalization") {
    auto r = Ring::make({"p", "q"});
    auto p = r->param("p");
    auto q = r->param("q");
    auto c1 = Rational(-4) * (p * p * q);
    auto c2 = Rational(6) * (p * q * q);
    std::vector<Coefficient*> v{&c1, &c2};
    make_primitive(v);
    CHECK(c1 == Rational(-2) * p);
    CHECK(c2 == Rational(3) * q);
}

TEST_CASE("string form") {
    auto r = Ring::make({"x", "z", "s"});
    auto c = r->param("x") * r->param("x") - r->rational(Rational(1, 2)) * r->param("z") +
             r->one();
    CHECK(c.str() == "1 - 1/2*z + x^2");
    CHECK(r->zero().str() == "0");
    CHECK((-r->param("s")).str() == "-s");
}
