#pragma once

// Truncated Fock-superspace operators and the concrete realizations of the
// deformed oscillator superalgebra, with numerical relation checks.

#include <oscq/errors.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace oscq {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;

// ---------------------------------------------------------------------------
// Scalar helpers with removable singularities handled by series.

// (e^u - 1)/u
inline double phi(double u) {
    if (std::abs(u) < 1e-6) return 1.0 + u / 2.0 + u * u / 6.0;
    return std::expm1(u) / u;
}

// d/du (e^u - 1)/u = (e^u (u - 1) + 1)/u^2
inline double phi_prime(double u) {
    if (std::abs(u) < 1e-4) return 0.5 + u / 3.0 + u * u / 8.0;
    return (std::exp(u) * (u - 1.0) + 1.0) / (u * u);
}

// divided difference (phi(u) - phi(v))/(u - v)
inline double phi_divided(double u, double v) {
    if (std::abs(u - v) < 1e-6) return phi_prime((u + v) / 2.0);
    return (phi(u) - phi(v)) / (u - v);
}

inline Complex sinhc(Complex u) {
    if (std::abs(u) < 1e-6) return 1.0 + u * u / 6.0;
    return std::sinh(u) / u;
}

// omega = (e^{p+q} - 1)/(p + q)
inline double bosonic_omega(double p, double q) { return phi(p + q); }

// tau~ = (tau/sqrt(w)) e^q/(p+q) ((e^p-1)/p + (e^{-q}-1)/q)
// The bracket equals phi(p) - phi(-q), so the whole quotient is the divided
// difference of phi at (p, -q); this stays finite as p + q -> 0.
inline double tau_tilde(double p, double q, double tau) {
    return tau / std::sqrt(bosonic_omega(p, q)) * std::exp(q) * phi_divided(p, -q);
}

inline double rho_tilde(double p, double q, double rho) {
    return rho / std::sqrt(bosonic_omega(p, q)) * std::exp(p) * phi_divided(q, -p);
}

// ---------------------------------------------------------------------------
// Fock superspace: bosonic levels 0..N-1 times a two-dimensional fermionic
// factor; basis |n; j> at index 2n + j (j fastest).

struct FockSpace {
    int n_boson;

    explicit FockSpace(int N) : n_boson(N) {
        if (N < 8) throw TruncationTooSmall("boson truncation must be at least 8");
    }

    int dim() const { return 2 * n_boson; }
    int index(int n, int j) const { return 2 * n + j; }
};

struct LadderOps {
    CMat a, a_dag, b, b_dag, id;
};

inline LadderOps ladder_ops(const FockSpace& space) {
    const int d = space.dim();
    LadderOps ops{CMat::Zero(d, d), CMat::Zero(d, d), CMat::Zero(d, d), CMat::Zero(d, d),
                  CMat::Identity(d, d)};
    for (int n = 0; n < space.n_boson; ++n)
        for (int j = 0; j < 2; ++j) {
            if (n > 0) ops.a(space.index(n - 1, j), space.index(n, j)) = std::sqrt(double(n));
            if (n + 1 < space.n_boson)
                ops.a_dag(space.index(n + 1, j), space.index(n, j)) = std::sqrt(double(n + 1));
        }
    for (int n = 0; n < space.n_boson; ++n) {
        ops.b(space.index(n, 0), space.index(n, 1)) = 1.0;
        ops.b_dag(space.index(n, 1), space.index(n, 0)) = 1.0;
    }
    return ops;
}

// ---------------------------------------------------------------------------
// Realizations.

enum class RealizationFamily {
    HyperbolicDeformed,  // A a deformation of b, C of b†
    Antisym,             // A proportional to b - b†; needs x != 0
    AppB1,               // c1 = c2 = h3 = 0
    AppB2,               // a0 = c2 = 0
    AppB3,               // c0 = a2 = 0
    AppB4,               // a0 = c0 = 0
};

inline RealizationFamily realization_family_from_name(const std::string& name) {
    if (name == "HYPERBOLIC-DEFORMED") return RealizationFamily::HyperbolicDeformed;
    if (name == "ANTISYM") return RealizationFamily::Antisym;
    if (name == "APPB-1") return RealizationFamily::AppB1;
    if (name == "APPB-2") return RealizationFamily::AppB2;
    if (name == "APPB-3") return RealizationFamily::AppB3;
    if (name == "APPB-4") return RealizationFamily::AppB4;
    throw InvalidRealization("unknown realization family: " + name);
}

inline std::string realization_family_name(RealizationFamily f) {
    switch (f) {
    case RealizationFamily::HyperbolicDeformed: return "HYPERBOLIC-DEFORMED";
    case RealizationFamily::Antisym: return "ANTISYM";
    case RealizationFamily::AppB1: return "APPB-1";
    case RealizationFamily::AppB2: return "APPB-2";
    case RealizationFamily::AppB3: return "APPB-3";
    case RealizationFamily::AppB4: return "APPB-4";
    }
    return "?";
}

struct RealizationSpec {
    RealizationFamily family = RealizationFamily::HyperbolicDeformed;
    double x = 0, z = 0;
    double p = 0, q = 0, rho = 0, tau = 0;
    double h0 = 0;          // free constant shift of H in the APPB families
    Complex a2{1.0, 0.0};   // free coefficient, APPB-1/2 (must be nonzero)
    Complex c1{1.0, 0.0};   // free coefficient, APPB-3 (must be nonzero)
    Complex c2{1.0, 0.0};   // free coefficient, APPB-4 (must be nonzero)
    int sign = 1;           // ± branch where the solution family offers one
};

// Branch-consistent radicals: lambda = sqrt(xz), nu = sqrt(2z) and
// xi = sqrt(2x) chosen so that nu * xi = 2 lambda.
struct Radicals {
    Complex lambda, nu, xi;
};

inline Radicals radicals(double x, double z) {
    Radicals r;
    r.lambda = std::sqrt(Complex(x * z));
    r.nu = std::sqrt(Complex(2.0 * z));
    r.xi = std::abs(r.nu) > 1e-300 ? 2.0 * r.lambda / r.nu : std::sqrt(Complex(2.0 * x));
    return r;
}

// Coefficients of the linear ansatz A = a0 I + a1 b + a2 b† + a3 b†b (and
// likewise for C and H) for each solution family of the defining system.
struct LinearCoefficients {
    Complex a0{}, a1{}, a2{}, a3{};
    Complex c0{}, c1{}, c2{}, c3{};
    Complex h0{}, h1{}, h2{}, h3{};
};

inline LinearCoefficients realization_coefficients(const RealizationSpec& spec) {
    auto [lambda, nu, xi] = radicals(spec.x, spec.z);
    const Complex ch = std::cosh(lambda), sh = std::sinh(lambda);
    const Complex i{0.0, 1.0};
    const double sg = spec.sign >= 0 ? 1.0 : -1.0;
    LinearCoefficients k;
    k.h0 = spec.h0;

    switch (spec.family) {
    case RealizationFamily::HyperbolicDeformed:
        // A = b - (x/2) sinhc²λ b†,  C = (chλ+1) sinhcλ/2 b† - z sinhcλ/(chλ+1) b
        k.a1 = 1.0;
        k.a2 = -(spec.x / 2.0) * sinhc(lambda) * sinhc(lambda);
        k.c1 = -spec.z * sinhc(lambda) / (ch + 1.0);
        k.c2 = (ch + 1.0) * sinhc(lambda) / 2.0;
        k.h0 = 0.0;
        k.h3 = ch;
        break;
    case RealizationFamily::Antisym: {
        if (spec.x == 0.0)
            throw InvalidRealization("the antisymmetric realization requires x != 0");
        Complex s2x = std::abs(nu) > 1e-300 ? xi : std::sqrt(Complex(2.0 * spec.x));
        Complex amp = s2x / 2.0 * sinhc(lambda);  // sqrt(x/2) sinhcλ
        k.a1 = amp;
        k.a2 = -amp;
        k.c1 = -(ch - 1.0) / s2x;
        k.c2 = (ch + 1.0) / s2x;
        k.h0 = 0.0;
        k.h3 = ch;
        break;
    }
    case RealizationFamily::AppB1:
        if (spec.a2 == Complex(0.0)) throw InvalidRealization("APPB-1 requires a2 != 0");
        if (spec.z == 0.0) throw InvalidRealization("APPB-1 requires z != 0");
        k.a0 = sg * i * ch / nu;
        k.a1 = 1.0 / (2.0 * spec.z * spec.a2);
        k.a2 = spec.a2;
        k.a3 = -2.0 * k.a0;
        k.c0 = -sg * i * sh / xi;
        k.c3 = -2.0 * k.c0;
        k.h1 = -sg * i * ch / (2.0 * nu * spec.a2);
        k.h2 = sg * i * (nu / 2.0) * spec.a2 * ch;
        break;
    case RealizationFamily::AppB2:
        if (spec.a2 == Complex(0.0)) throw InvalidRealization("APPB-2 requires a2 != 0");
        if (spec.x == 0.0 || spec.z == 0.0)
            throw InvalidRealization("APPB-2 requires x != 0 and z != 0");
        k.a1 = -sh * sh / (2.0 * spec.z * spec.a2);  // (1 - cosh2λ)/(4z a2)
        k.a2 = spec.a2;
        k.c0 = -i * sh / xi;
        k.c1 = sh * ch / (lambda * spec.a2);  // sinh(2λ)/(2λ a2)
        k.c3 = -2.0 * k.c0;
        k.h1 = i * sh * sh * ch / (2.0 * spec.a2 * nu);
        k.h2 = i * spec.a2 * ch * nu / 2.0;
        k.h3 = -ch * ch;  // -(cosh3λ + 3 coshλ)/(4 coshλ)
        break;
    case RealizationFamily::AppB3:
        if (spec.c1 == Complex(0.0)) throw InvalidRealization("APPB-3 requires c1 != 0");
        if (spec.x == 0.0 || spec.z == 0.0)
            throw InvalidRealization("APPB-3 requires x != 0 and z != 0");
        k.a0 = sg * i * sh / nu;
        k.a1 = -2.0 * (2.0 * lambda / (nu * nu)) * spec.c1 * ch / sh;
        k.a3 = -2.0 * k.a0;
        k.c1 = spec.c1;
        k.c2 = -sh * sh / (2.0 * spec.x * spec.c1);
        k.h1 = -sg * i * (lambda / nu) * spec.c1 * ch;
        k.h2 = -sg * i * sh * sh * ch / (2.0 * xi * spec.c1);
        k.h3 = ch * ch;
        break;
    case RealizationFamily::AppB4:
        // Of the two sign rows only sign = -1 (a1 proportional to coshλ+1)
        // solves the full defining system; the residuals of the H-A and H-C
        // equations for the other row are proportional to (sign + 1).
        if (spec.c2 == Complex(0.0)) throw InvalidRealization("APPB-4 requires c2 != 0");
        if (spec.x == 0.0 || spec.z == 0.0)
            throw InvalidRealization("APPB-4 requires x != 0 and z != 0");
        k.a1 = (ch - sg) * sh / (2.0 * spec.c2 * lambda);
        k.a2 = -(2.0 * lambda / (nu * nu)) * spec.c2 * (ch + sg) / sh;
        k.c1 = -sh * sh / (2.0 * spec.x * spec.c2);
        k.c2 = spec.c2;
        k.h3 = ch;
        break;
    }
    return k;
}

struct Realization {
    FockSpace space;
    RealizationSpec spec;
    CMat A, B, C, H, At, Bt, Ct, Ht;
};

inline Realization realize(const RealizationSpec& spec, const FockSpace& space) {
    auto ops = ladder_ops(space);
    auto k = realization_coefficients(spec);
    Realization r{space, spec, {}, {}, {}, {}, {}, {}, {}, {}};
    const CMat num = ops.b_dag * ops.b;
    r.A = k.a0 * ops.id + k.a1 * ops.b + k.a2 * ops.b_dag + k.a3 * num;
    r.B = ops.id;
    r.C = k.c0 * ops.id + k.c1 * ops.b + k.c2 * ops.b_dag + k.c3 * num;
    r.H = k.h0 * ops.id + k.h1 * ops.b + k.h2 * ops.b_dag + k.h3 * num;

    const double w = bosonic_omega(spec.p, spec.q);
    const double sw = std::sqrt(w);
    const double tt = tau_tilde(spec.p, spec.q, spec.tau);
    const double rt = rho_tilde(spec.p, spec.q, spec.rho);
    r.At = sw * ops.a;
    r.Bt = ops.id;
    r.Ct = sw * ops.a_dag;
    r.Ht = ops.a_dag * ops.a + tt * ops.a - rt * ops.a_dag;
    return r;
}

// ---------------------------------------------------------------------------
// Relation checks.  Fermionic relations are exact on the whole space; the
// bosonic ones are checked on the band n <= N - 1 - safe_band, outside the
// reach of truncation artifacts.  With B = B~ = I the scalar functions on
// the right-hand sides collapse to multiples of the identity.

struct RelationReport {
    struct Entry {
        std::string name;
        double residual;
    };
    std::vector<Entry> entries;
    double max_residual = 0.0;
    bool pass = true;
};

namespace detail {

inline double band_norm(const CMat& m, const FockSpace& space, int safe_band) {
    const int keep = 2 * (space.n_boson - safe_band);
    if (keep <= 0) throw TruncationTooSmall("safe band exceeds the boson truncation");
    return m.topLeftCorner(keep, keep).cwiseAbs().maxCoeff();
}

} // namespace detail

inline RelationReport check_relations(const Realization& r, double tol = 1e-10,
                                      int safe_band = 5) {
    RelationReport rep;
    auto push = [&](const std::string& name, double resid) {
        rep.entries.push_back({name, resid});
        rep.max_residual = std::max(rep.max_residual, resid);
        if (resid > tol) rep.pass = false;
    };
    auto full = [](const CMat& m) { return m.cwiseAbs().maxCoeff(); };

    const auto& s = r.spec;
    const Complex lambda = std::sqrt(Complex(s.x * s.z));
    const Complex ch2 = std::cosh(2.0 * lambda);
    const Complex sc2 = sinhc(2.0 * lambda);  // sinh(2λ)/(2λ)
    const Complex sc1 = sinhc(lambda);
    const int d = r.space.dim();
    const CMat id = CMat::Identity(d, d);

    push("{A,C} - sinh(2s)/(2s) I", full(r.A * r.C + r.C * r.A - sc2 * id));
    push("A^2 + (x/2) sinhc(s)^2 I", full(r.A * r.A + (s.x / 2.0) * sc1 * sc1 * id));
    push("C^2 + (z/2) sinhc(s)^2 I", full(r.C * r.C + (s.z / 2.0) * sc1 * sc1 * id));
    push("[H,A] + (1+cosh 2s)/2 A + x sinh(2s)/(2s) C",
         full(r.H * r.A - r.A * r.H + 0.5 * (1.0 + ch2) * r.A + s.x * sc2 * r.C));
    push("[H,C] - (1+cosh 2s)/2 C - z sinh(2s)/(2s) A",
         full(r.H * r.C - r.C * r.H - 0.5 * (1.0 + ch2) * r.C - s.z * sc2 * r.A));

    const double w = bosonic_omega(s.p, s.q);
    const double sw = std::sqrt(w);
    const double tt = tau_tilde(s.p, s.q, s.tau);
    const double rt = rho_tilde(s.p, s.q, s.rho);
    auto band = [&](const CMat& m) { return detail::band_norm(m, r.space, safe_band); };
    push("[A~,C~] - w I", band(r.At * r.Ct - r.Ct * r.At - w * id));
    push("[H~,A~] + A~ - sqrt(w) rho~ I",
         band(r.Ht * r.At - r.At * r.Ht + r.At - sw * rt * id));
    push("[H~,C~] - C~ - sqrt(w) tau~ I",
         band(r.Ht * r.Ct - r.Ct * r.Ht - r.Ct - sw * tt * id));

    const CMat* fer[] = {&r.A, &r.B, &r.C, &r.H};
    const CMat* bos[] = {&r.At, &r.Bt, &r.Ct, &r.Ht};
    const char* fn[] = {"A", "B", "C", "H"};
    const char* bn[] = {"A~", "B~", "C~", "H~"};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            push(std::string("[") + fn[i] + "," + bn[j] + "]",
                 full((*fer[i]) * (*bos[j]) - (*bos[j]) * (*fer[i])));
    return rep;
}

// ---------------------------------------------------------------------------
// The defining algebraic system for the linear ansatz: eleven equations in
// the coefficients (a_i, c_i, h_i).  The radical combination
// sqrt(z/x) sinh(2s)/2 is evaluated as z sinhc(2s), which stays finite for
// all parameter values.

inline std::vector<double> appendixB_residual(const LinearCoefficients& k, double x, double z) {
    const Complex lambda = std::sqrt(Complex(x * z));
    const Complex ch2 = std::cosh(2.0 * lambda);
    const Complex sc2 = sinhc(2.0 * lambda);
    const Complex half_cosh = 0.5 * (1.0 + ch2);
    const Complex sq = (x / 2.0) * sinhc(lambda) * sinhc(lambda);  // -(1-cosh2s)/(4z)
    const Complex cq = (z / 2.0) * sinhc(lambda) * sinhc(lambda);
    const Complex zs = z * sc2;  // sqrt(z/x) sinh(2s)/2

    std::vector<Complex> resid = {
        k.a3 + 2.0 * k.a0,
        k.c3 + 2.0 * k.c0,
        k.a0 * k.a0 + k.a1 * k.a2 + sq,
        k.c0 * k.c0 + k.c1 * k.c2 + cq,
        2.0 * k.a0 * k.c0 + k.a1 * k.c2 + k.a2 * k.c1 - sc2,
        k.h1 * k.a2 - k.h2 * k.a1 + half_cosh * k.a0 + x * sc2 * k.c0,
        k.h3 * k.a1 + 2.0 * k.h1 * k.a0 - half_cosh * k.a1 - x * sc2 * k.c1,
        k.h3 * k.a2 + 2.0 * k.h2 * k.a0 + half_cosh * k.a2 + x * sc2 * k.c2,
        k.h1 * k.c2 - k.h2 * k.c1 - zs * k.a0 - half_cosh * k.c0,
        k.h3 * k.c1 + 2.0 * k.h1 * k.c0 + zs * k.a1 + half_cosh * k.c1,
        k.h3 * k.c2 + 2.0 * k.h2 * k.c0 - zs * k.a2 - half_cosh * k.c2,
    };
    std::vector<double> out;
    out.reserve(resid.size());
    for (auto& c : resid) out.push_back(std::abs(c));
    return out;
}

inline std::vector<double> appendixB_residual(const RealizationSpec& spec) {
    return appendixB_residual(realization_coefficients(spec), spec.x, spec.z);
}

} // namespace oscq
