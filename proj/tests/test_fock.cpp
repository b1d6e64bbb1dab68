#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <oscq/fock.hpp>

#include <random>

using namespace oscq;

namespace {

RealizationSpec deformed_spec(RealizationFamily fam) {
    RealizationSpec s;
    s.family = fam;
    s.x = 0.8;
    s.z = 0.5;
    s.p = 0.6;
    s.q = 0.3;
    s.rho = 0.4;
    s.tau = 0.7;
    s.h0 = 0.3;
    s.a2 = {1.2, 0.4};
    s.c1 = {0.9, -0.3};
    s.c2 = {1.1, 0.2};
    s.sign = -1;
    return s;
}

} // namespace

TEST_CASE("scalar helpers") {
    CHECK(phi(0.0) == doctest::Approx(1.0));
    CHECK(phi(1.0) == doctest::Approx(std::exp(1.0) - 1.0));
    CHECK(phi(1e-9) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(phi_prime(0.0) == doctest::Approx(0.5));
    CHECK(phi_divided(0.4, 0.4) == doctest::Approx(phi_prime(0.4)).epsilon(1e-8));
    CHECK(phi_divided(0.4, -0.4) == doctest::Approx((phi(0.4) - phi(-0.4)) / 0.8));
    CHECK(std::abs(sinhc(Complex(0.0)) - 1.0) < 1e-15);
    CHECK(std::abs(sinhc(Complex(2.0)) - std::sinh(2.0) / 2.0) < 1e-15);
    CHECK(bosonic_omega(0.5, -0.5) == doctest::Approx(1.0));
    CHECK(tau_tilde(0.3, 0.2, 0.0) == 0.0);
    CHECK(rho_tilde(0.3, 0.2, 0.0) == 0.0);
    // p + q -> 0 is a removable singularity
    CHECK(tau_tilde(0.3, -0.3 + 1e-9, 1.0) ==
          doctest::Approx(tau_tilde(0.3, -0.3, 1.0)).epsilon(1e-6));
}

TEST_CASE("ladder operators") {
    FockSpace sp(12);
    auto ops = ladder_ops(sp);
    CHECK(sp.dim() == 24);
    CHECK(std::abs(ops.b_dag(sp.index(0, 1), sp.index(0, 0)) - 1.0) < 1e-15);
    CHECK(std::abs(ops.a(sp.index(4, 0), sp.index(5, 0)) - std::sqrt(5.0)) < 1e-15);
    CHECK((ops.b * ops.b).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ops.b * ops.b_dag + ops.b_dag * ops.b - ops.id).cwiseAbs().maxCoeff() < 1e-15);
    // canonical commutator holds away from the truncation edge
    CMat comm = ops.a * ops.a_dag - ops.a_dag * ops.a - ops.id;
    CHECK(comm.topLeftCorner(2 * (sp.n_boson - 1), 2 * (sp.n_boson - 1)).cwiseAbs().maxCoeff() <
          1e-13);
}

TEST_CASE("family names round-trip") {
    for (const char* name :
         {"HYPERBOLIC-DEFORMED", "ANTISYM", "APPB-1", "APPB-2", "APPB-3", "APPB-4"})
        CHECK(realization_family_name(realization_family_from_name(name)) == name);
    CHECK_THROWS_AS(realization_family_from_name("NOPE"), InvalidRealization);
}

TEST_CASE("invalid configurations throw") {
    CHECK_THROWS_AS(FockSpace(7), TruncationTooSmall);
    FockSpace sp(10);

    RealizationSpec s;
    s.family = RealizationFamily::Antisym;
    s.x = 0.0;
    CHECK_THROWS_AS(realization_coefficients(s), InvalidRealization);

    s = deformed_spec(RealizationFamily::AppB1);
    s.a2 = 0.0;
    CHECK_THROWS_AS(realization_coefficients(s), InvalidRealization);
    s = deformed_spec(RealizationFamily::AppB2);
    s.z = 0.0;
    CHECK_THROWS_AS(realization_coefficients(s), InvalidRealization);
    s = deformed_spec(RealizationFamily::AppB3);
    s.c1 = 0.0;
    CHECK_THROWS_AS(realization_coefficients(s), InvalidRealization);
    s = deformed_spec(RealizationFamily::AppB4);
    s.c2 = 0.0;
    CHECK_THROWS_AS(realization_coefficients(s), InvalidRealization);

    auto r = realize(deformed_spec(RealizationFamily::HyperbolicDeformed), sp);
    CHECK_THROWS_AS(check_relations(r, 1e-10, 10), TruncationTooSmall);
}

TEST_CASE("deformed relations hold in every family") {
    FockSpace sp(60);
    for (auto fam : {RealizationFamily::HyperbolicDeformed, RealizationFamily::Antisym,
                     RealizationFamily::AppB1, RealizationFamily::AppB2,
                     RealizationFamily::AppB3, RealizationFamily::AppB4}) {
        CAPTURE(realization_family_name(fam));
        auto rep = check_relations(realize(deformed_spec(fam), sp));
        CHECK(rep.pass);
        CHECK(rep.max_residual < 1e-12);
        CHECK(rep.entries.size() == 24);
    }
}

TEST_CASE("undeformed limit point") {
    FockSpace sp(40);
    RealizationSpec zero;
    auto r = realize(zero, sp);
    auto rep = check_relations(r);
    CHECK(rep.pass);
    auto ops = ladder_ops(sp);
    CHECK((r.A - ops.b).cwiseAbs().maxCoeff() == 0.0);
    CHECK((r.C - ops.b_dag).cwiseAbs().maxCoeff() == 0.0);
    CHECK((r.H - ops.b_dag * ops.b).cwiseAbs().maxCoeff() == 0.0);
    CHECK((r.At - ops.a).cwiseAbs().maxCoeff() == 0.0);
    CHECK((r.Ct - ops.a_dag).cwiseAbs().maxCoeff() == 0.0);
    CHECK((r.Ht - ops.a_dag * ops.a).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("deformation vanishes linearly") {
    FockSpace sp(30);
    auto ops = ladder_ops(sp);
    auto dist = [&](double eps) {
        RealizationSpec s = deformed_spec(RealizationFamily::HyperbolicDeformed);
        s.x *= eps;
        s.z *= eps;
        s.p *= eps;
        s.q *= eps;
        s.rho *= eps;
        s.tau *= eps;
        auto r = realize(s, sp);
        double d = (r.A - ops.b).cwiseAbs().maxCoeff();
        d = std::max(d, (r.C - ops.b_dag).cwiseAbs().maxCoeff());
        d = std::max(d, (r.H - ops.b_dag * ops.b).cwiseAbs().maxCoeff());
        d = std::max(d, (r.Ht - ops.a_dag * ops.a).cwiseAbs().maxCoeff());
        return d;
    };
    double d3 = dist(1e-3), d4 = dist(1e-4);
    CHECK(d3 < 1e-2);
    CHECK(d4 < 0.2 * d3);
}

TEST_CASE("truncation containment") {
    for (auto fam : {RealizationFamily::HyperbolicDeformed, RealizationFamily::AppB2}) {
        CAPTURE(realization_family_name(fam));
        auto spec = deformed_spec(fam);
        auto small = realize(spec, FockSpace(30));
        auto large = realize(spec, FockSpace(60));
        const int keep = small.space.dim();
        for (auto pick : {&Realization::A, &Realization::C, &Realization::H, &Realization::At,
                          &Realization::Ct, &Realization::Ht})
            CHECK(((small.*pick) - (large.*pick).topLeftCorner(keep, keep)).cwiseAbs().maxCoeff() <
                  1e-13);
        CHECK(check_relations(small).pass);
        CHECK(check_relations(large).pass);
    }
}

TEST_CASE("linear ansatz system residuals") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> pos(0.2, 1.5), any(-1.0, 1.0);
    for (auto fam : {RealizationFamily::HyperbolicDeformed, RealizationFamily::Antisym,
                     RealizationFamily::AppB1, RealizationFamily::AppB2,
                     RealizationFamily::AppB3, RealizationFamily::AppB4}) {
        CAPTURE(realization_family_name(fam));
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            RealizationSpec s;
            s.family = fam;
            s.x = pos(rng);
            s.z = pos(rng);
            s.h0 = any(rng);
            s.a2 = {any(rng) + 2.0, any(rng)};
            s.c1 = {any(rng) + 2.0, any(rng)};
            s.c2 = {any(rng) + 2.0, any(rng)};
            s.sign = fam == RealizationFamily::AppB4 ? -1 : (any(rng) > 0 ? 1 : -1);
            for (double v : appendixB_residual(s)) worst = std::max(worst, v);
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("APPB-4 solving branch recovers the two named realizations") {
    FockSpace sp(60);
    const double x = 0.8, z = 0.5;
    const Complex lam = std::sqrt(Complex(x * z));

    RealizationSpec s;
    s.family = RealizationFamily::AppB4;
    s.x = x;
    s.z = z;
    s.sign = -1;
    s.c2 = (std::cosh(lam) + 1.0) * std::sinh(lam) / (2.0 * lam);
    RealizationSpec hyp;
    hyp.family = RealizationFamily::HyperbolicDeformed;
    hyp.x = x;
    hyp.z = z;
    auto r1 = realize(s, sp), r2 = realize(hyp, sp);
    CHECK((r1.A - r2.A).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r1.C - r2.C).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r1.H - r2.H).cwiseAbs().maxCoeff() < 1e-12);

    s.c2 = (std::cosh(lam) + 1.0) / std::sqrt(Complex(2.0 * x));
    RealizationSpec anti;
    anti.family = RealizationFamily::Antisym;
    anti.x = x;
    anti.z = z;
    auto r3 = realize(s, sp), r4 = realize(anti, sp);
    CHECK((r3.A - r4.A).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r3.C - r4.C).cwiseAbs().maxCoeff() < 1e-12);

    // the other branch does not solve the defining system
    s.sign = 1;
    double worst = 0.0;
    for (double v : appendixB_residual(s)) worst = std::max(worst, v);
    CHECK(worst > 1e-3);
}

TEST_CASE("APPB-4 diagonal Hamiltonian") {
    FockSpace sp(20);
    auto s = deformed_spec(RealizationFamily::AppB4);
    auto r = realize(s, sp);
    auto ops = ladder_ops(sp);
    const Complex ch = std::cosh(std::sqrt(Complex(s.x * s.z)));
    CHECK((r.H - s.h0 * ops.id - ch * ops.b_dag * ops.b).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("antisymmetric realization at z = 0") {
    FockSpace sp(20);
    RealizationSpec s;
    s.family = RealizationFamily::Antisym;
    s.x = 0.5;
    s.z = 0.0;
    auto r = realize(s, sp);
    auto ops = ladder_ops(sp);
    CHECK((r.A - std::sqrt(0.25) * (ops.b - ops.b_dag)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((r.C - 2.0 * ops.b_dag).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(check_relations(r).pass);
}
