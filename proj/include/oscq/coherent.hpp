#pragma once

// Deformed annihilation operators on the truncated Fock superspace, their
// coherent eigenstates (closed form and SVD kernel), displacement operators,
// the doubly degenerate oscillator Hamiltonian, and the pseudo-Hermitian
// similarity transform.

#include <oscq/fock.hpp>

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <string>
#include <vector>

namespace oscq {

using CVec = Eigen::VectorXcd;

enum class AnnihilatorVariant { Super, Iso };

struct AnnihilatorSpec {
    AnnihilatorVariant variant = AnnihilatorVariant::Super;
    double x = 0, z = 0;
    double omega = 1.0;
};

// shared scalar data of both variants; chi = i * g and kappa = chi^2, with
// g = sinh(sqrt(xz))/sqrt(2z) continued through z = 0 as sqrt(x/2) sinhc.
struct AnnihilatorScalars {
    Complex lambda, g, chi, kappa;
};

inline AnnihilatorScalars annihilator_scalars(double x, double z) {
    auto [lambda, nu, xi] = radicals(x, z);
    AnnihilatorScalars s;
    s.lambda = lambda;
    s.g = xi / 2.0 * sinhc(lambda);
    s.chi = Complex(0.0, 1.0) * s.g;
    s.kappa = s.chi * s.chi;
    return s;
}

inline CMat build_annihilator(const AnnihilatorSpec& spec, const FockSpace& space) {
    if (spec.omega <= 0.0) throw InvalidVariant("annihilator requires omega > 0");
    if (spec.variant == AnnihilatorVariant::Iso && spec.x == 0.0)
        throw InvalidVariant("the isospectral variant requires x != 0");
    auto ops = ladder_ops(space);
    auto s = annihilator_scalars(spec.x, spec.z);
    const double sw = std::sqrt(spec.omega);
    if (spec.variant == AnnihilatorVariant::Super)
        return sw * ops.a + ops.b + s.kappa * ops.b_dag;
    return sw * ops.a + s.g * (ops.b - ops.b_dag);
}

// D(alpha) = exp(alpha a† - conj(alpha) a) on the full superspace
inline CMat displacement(Complex alpha, const FockSpace& space) {
    auto ops = ladder_ops(space);
    CMat gen = alpha * ops.a_dag - std::conj(alpha) * ops.a;
    return gen.exp();
}

// Fraction of squared amplitude at boson levels n >= n_boson - safe_band.
inline double tail_mass(const CVec& v, const FockSpace& space, int safe_band) {
    const int keep = 2 * (space.n_boson - safe_band);
    double tail = 0.0, total = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        double m = std::norm(v[i]);
        total += m;
        if (i >= keep) tail += m;
    }
    return total > 0.0 ? tail / total : 0.0;
}

inline void require_amplitude_safe(const CVec& v, const FockSpace& space, int safe_band) {
    if (tail_mass(v, space, safe_band) > 1e-4)
        throw TruncationRisk("state amplitude mass reaches the truncation band");
}

struct CoherentStateResult {
    Complex Z;
    std::vector<CVec> states;       // normalized
    std::vector<double> residuals;  // ||A0 v - Z v|| per state
    std::vector<std::string> branch;
};

// Eigenstates of the deformed annihilator.  A displaced state D(alpha)|psi>
// with (A0 - sqrt(w) alpha) psi = Z psi is an eigenstate with eigenvalue Z:
// the fermionic 2x2 part b + kappa b† has eigenpairs (±chi, |0> ± chi|1>),
// and g(b - b†) has (∓i g, |0> ∓ i|1>).  At kappa = 0 the fermionic block is
// nilpotent and the second solution is the Aragone-Zypman state
// (|1;0> - sqrt(w)|0;1>)/sqrt(1+w) annihilated by sqrt(w) a + b.
inline CoherentStateResult coherent_closed_form(const AnnihilatorSpec& spec,
                                                const FockSpace& space, Complex Z,
                                                int safe_band = 5) {
    const CMat A0 = build_annihilator(spec, space);
    auto s = annihilator_scalars(spec.x, spec.z);
    const double sw = std::sqrt(spec.omega);
    const int d = space.dim();

    CoherentStateResult res;
    res.Z = Z;

    auto add_state = [&](Complex alpha, const CVec& seed, const std::string& label) {
        CVec v = displacement(alpha, space) * seed;
        v.normalize();
        require_amplitude_safe(v, space, safe_band);
        res.states.push_back(v);
        res.residuals.push_back((A0 * v - Z * v).norm());
        res.branch.push_back(label);
    };

    if (spec.variant == AnnihilatorVariant::Iso || s.kappa != Complex(0.0)) {
        // fermionic eigenpairs: b + kappa b† has (±chi, |0> ± chi|1>) while
        // g(b - b†) has (±i g, |0> ± i|1>); the eigenvalue ±chi is the same
        const Complex comp =
            spec.variant == AnnihilatorVariant::Iso ? Complex(0.0, 1.0) : s.chi;
        for (int sign : {-1, +1}) {
            CVec seed = CVec::Zero(d);
            seed[space.index(0, 0)] = 1.0;
            seed[space.index(0, 1)] = double(sign) * comp;
            seed.normalize();
            // fermionic eigenvalue is sign * chi, absorbed into the shift
            add_state((Z - double(sign) * s.chi) / sw, seed, sign < 0 ? "-" : "+");
        }
    } else {
        CVec seed = CVec::Zero(d);
        seed[space.index(0, 0)] = 1.0;
        add_state(Z / sw, seed, "-");
        CVec az = CVec::Zero(d);
        az[space.index(1, 0)] = 1.0;
        az[space.index(0, 1)] = -sw;
        az.normalize();
        add_state(Z / sw, az, "AZ");
    }
    return res;
}

// Independent oracle: the two right-singular vectors of A0 - Z I with the
// smallest singular values.  Both must be below null_tol and separated from
// the rest of the spectrum, otherwise the quasi-kernel is not 2-dimensional.
inline std::vector<CVec> coherent_numeric_kernel(const CMat& A0, Complex Z,
                                                 double null_tol = 1e-6) {
    const int d = int(A0.rows());
    CMat m = A0 - Z * CMat::Identity(d, d);
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv[d - 1] > null_tol || sv[d - 2] > null_tol)
        throw UnexpectedKernel("quasi-kernel dimension below 2");
    if (sv[d - 3] <= 100.0 * null_tol)
        throw UnexpectedKernel("quasi-kernel dimension above 2");
    return {svd.matrixV().col(d - 1), svd.matrixV().col(d - 2)};
}

// Principal angles between the spans of two sets of vectors.
inline std::vector<double> principal_angles(const std::vector<CVec>& u,
                                            const std::vector<CVec>& v) {
    auto pack = [](const std::vector<CVec>& cols) {
        CMat m(cols.at(0).size(), cols.size());
        for (size_t j = 0; j < cols.size(); ++j) m.col(j) = cols[j];
        Eigen::HouseholderQR<CMat> qr(m);
        CMat q = qr.householderQ() * CMat::Identity(m.rows(), m.cols());
        return q;
    };
    CMat overlap = pack(u).adjoint() * pack(v);
    Eigen::JacobiSVD<CMat> svd(overlap);
    std::vector<double> angles;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        angles.push_back(std::acos(std::clamp(svd.singularValues()[i], 0.0, 1.0)));
    return angles;
}

// ---------------------------------------------------------------------------
// The Hamiltonian H0 = A0† A0 for the isospectral variant: spectrum n·omega,
// each level twice, with A0 and A0† as ladder operators.

struct SpectrumReport {
    CMat H0;
    Eigen::VectorXd eigenvalues;      // ascending
    double max_level_deviation = 0;   // vs {0,0,w,w,...} up to n_max
    bool degeneracy_ok = true;        // clusters of size 2 below the cutoff
    double ladder_residual = 0;       // ||[H0,A0] + w A0|| and adjoint, band
    double ladder_state_residual = 0; // ||H0|E_n> - n w |E_n>|| for built states
    bool pass = true;
};

inline SpectrumReport hamiltonian_H0(const CMat& A0, double omega, const FockSpace& space,
                                     int safe_band = 5, int n_max = 10, double tol = 1e-9) {
    SpectrumReport rep;
    rep.H0 = A0.adjoint() * A0;
    Eigen::SelfAdjointEigenSolver<CMat> es(rep.H0);
    rep.eigenvalues = es.eigenvalues();

    for (int n = 0; n <= n_max; ++n)
        for (int k = 0; k < 2; ++k)
            rep.max_level_deviation = std::max(
                rep.max_level_deviation, std::abs(rep.eigenvalues[2 * n + k] - n * omega));

    const double cutoff = (space.n_boson - safe_band) * omega;
    int run = 1;
    for (int i = 1; i < rep.eigenvalues.size() && rep.eigenvalues[i] < cutoff; ++i) {
        if (rep.eigenvalues[i] - rep.eigenvalues[i - 1] < omega / 10.0)
            ++run;
        else {
            if (run != 2) rep.degeneracy_ok = false;
            run = 1;
        }
    }

    auto band = [&](const CMat& m) { return detail::band_norm(m, space, safe_band); };
    const CMat Ad = A0.adjoint();
    rep.ladder_residual = std::max(band(rep.H0 * A0 - A0 * rep.H0 + omega * A0),
                                   band(rep.H0 * Ad - Ad * rep.H0 - omega * Ad));

    // ladder-built eigenstates from the two Z = 0 ground states
    auto kernel = coherent_numeric_kernel(A0, 0.0);
    for (int col = 0; col < 2; ++col) {
        CVec v = kernel[col];
        for (int n = 0; n <= n_max; ++n) {
            rep.ladder_state_residual =
                std::max(rep.ladder_state_residual, (rep.H0 * v - (n * omega) * v).norm());
            v = (Ad * v).eval();
            v.normalize();
        }
    }

    rep.pass = rep.max_level_deviation <= tol && rep.degeneracy_ok &&
               rep.ladder_residual <= 1e-10 && rep.ladder_state_residual <= 1e-7;
    return rep;
}

// ---------------------------------------------------------------------------
// Displaced picture: the deformed displacement exp(alpha A0† - conj(alpha) A0)
// acting on the Z = 0 states is carried to the closed-form states by the
// fermionic rotation U = exp((2 Re Z g / w)(b - b†)).

struct DisplacedReport {
    std::vector<double> overlaps;            // |<Z~,∓| U |Z,∓>|
    std::vector<double> phase_aligned_diff;  // after aligning global phase
    bool pass = true;
};

inline DisplacedReport displaced_coherent_and_U(const AnnihilatorSpec& spec,
                                                const FockSpace& space, Complex Z,
                                                double tol = 1e-8) {
    if (spec.variant != AnnihilatorVariant::Iso)
        throw InvalidVariant("the displaced-picture check applies to the isospectral variant");
    const CMat A0 = build_annihilator(spec, space);
    auto s = annihilator_scalars(spec.x, spec.z);
    auto ops = ladder_ops(space);

    // with [A0, A0†] = w I the generator alpha A0† - conj(alpha) A0 shifts the
    // A0 eigenvalue by w alpha, so alpha = Z/w lands on eigenvalue Z; the 1/w
    // inside U is consistent exactly with this argument
    const Complex alpha = Z / spec.omega;
    CMat D_def = (alpha * A0.adjoint() - std::conj(alpha) * A0).exp();
    const double c = 2.0 * Z.real() * s.g.real() / spec.omega;
    CMat U = (c * (ops.b - ops.b_dag)).exp();

    auto at_zero = coherent_closed_form(spec, space, 0.0);
    auto at_Z = coherent_closed_form(spec, space, Z);

    DisplacedReport rep;
    for (size_t k = 0; k < at_zero.states.size(); ++k) {
        CVec lhs = U * at_Z.states[k];
        CVec rhs = D_def * at_zero.states[k];
        rhs.normalize();
        rep.overlaps.push_back(std::abs(lhs.dot(rhs)));
        int imax = 0;
        rhs.cwiseAbs().maxCoeff(&imax);
        Complex phase = lhs[imax] / rhs[imax];
        phase /= std::abs(phase);
        rep.phase_aligned_diff.push_back((lhs - phase * rhs).norm());
        if (rep.phase_aligned_diff.back() > tol) rep.pass = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Pseudo-Hermitian transform.  T is the scalar-normalized exp(tau~ a + rho~ a†)
// (the bare ordered product differs by the constant e^{tau~ rho~ / 2}, which
// drops out of every similarity quantity); unitary exactly when rho~ = -tau~.

struct PseudoHermitianBundle {
    double rho_t = 0, tau_t = 0, omega = 1;
    CMat T, T_inv, eta, H, A, At;
};

inline PseudoHermitianBundle pseudo_hermitian_transform(double rho_t, double tau_t,
                                                        const CMat& A0, const CMat& H0,
                                                        const FockSpace& space,
                                                        double omega) {
    auto ops = ladder_ops(space);
    PseudoHermitianBundle b;
    b.rho_t = rho_t;
    b.tau_t = tau_t;
    b.omega = omega;
    CMat gen = tau_t * ops.a + rho_t * ops.a_dag;
    b.T = gen.exp();
    b.T_inv = (-gen).exp();
    b.eta = b.T_inv.adjoint() * b.T_inv;
    b.H = b.T * H0 * b.T_inv;
    b.A = b.T * A0 * b.T_inv;
    b.At = b.T * A0.adjoint() * b.T_inv;
    return b;
}

struct PseudoHermitianReport {
    double canonical_residual = 0;      // ||[A,A~] - w I|| on the band
    double ladder_residual = 0;         // ||[H,A] + w A||, ||[H,A~] - w A~||
    double pseudo_hermiticity = 0;      // ||H† eta - eta H|| on the band
    double spectrum_deviation = 0;      // vs spectrum of H0, low levels
    double eta_hermiticity = 0;
    double eta_min_eigenvalue = 0;      // on the safe band
    double unitarity_defect = 0;        // ||T†T - I|| on the band
    bool pass = true;
};

// The similarity transform by T spreads truncation-edge artifacts a distance
// of roughly |rho~| sqrt(N) levels into the spectrum, so the conjugated
// commutator checks need a much wider safe band than the raw Fock relations.
inline PseudoHermitianReport check_pseudo_hermitian(const PseudoHermitianBundle& b,
                                                    const CMat& H0, const FockSpace& space,
                                                    int safe_band = 25, int n_max = 10,
                                                    double tol = 1e-8) {
    auto band = [&](const CMat& m) { return detail::band_norm(m, space, safe_band); };
    const int d = space.dim();
    const CMat id = CMat::Identity(d, d);

    PseudoHermitianReport rep;
    rep.canonical_residual = band(b.A * b.At - b.At * b.A - b.omega * id);
    rep.ladder_residual = std::max(band(b.H * b.A - b.A * b.H + b.omega * b.A),
                                   band(b.H * b.At - b.At * b.H - b.omega * b.At));
    rep.pseudo_hermiticity = band(b.H.adjoint() * b.eta - b.eta * b.H);
    rep.eta_hermiticity = (b.eta - b.eta.adjoint()).cwiseAbs().maxCoeff();
    rep.unitarity_defect = band(b.T.adjoint() * b.T - id);

    Eigen::ComplexEigenSolver<CMat> es(b.H);
    Eigen::SelfAdjointEigenSolver<CMat> es0(H0);
    std::vector<double> ev;
    for (int i = 0; i < d; ++i) ev.push_back(es.eigenvalues()[i].real());
    std::sort(ev.begin(), ev.end());
    for (int i = 0; i < 2 * (n_max + 1); ++i)
        rep.spectrum_deviation =
            std::max(rep.spectrum_deviation, std::abs(ev[i] - es0.eigenvalues()[i]));

    const int keep = 2 * (space.n_boson - safe_band);
    Eigen::SelfAdjointEigenSolver<CMat> eseta(b.eta.topLeftCorner(keep, keep));
    rep.eta_min_eigenvalue = eseta.eigenvalues().minCoeff();

    rep.pass = rep.canonical_residual <= 1e-8 && rep.ladder_residual <= 1e-8 &&
               rep.pseudo_hermiticity <= tol && rep.eta_hermiticity <= 1e-10 &&
               rep.spectrum_deviation <= 1e-7 * b.omega && rep.eta_min_eigenvalue > 0.0;
    return rep;
}

} // namespace oscq
