#pragma once

// Bridge between SU(2)-invariant symmetric bilinear forms on the real tangent
// space and real (2,0)-forms, plus the spectral machinery built on it:
// eigenvalue profiles with respect to a positive background, simultaneous
// diagonalization of a pair of real (2,0)-forms, and quaternionic
// Gram-Schmidt.
//
// Conventions in force here:
//   omega_L(x,y) = g(Lx, y)          Omega_g = omega_J + i omega_K
//   h(x,y)       = eta(x, J(ybar))   (linear in x, antilinear in y)
//   g(x,ybar)    = (1/2) Omega_g(x, J(ybar))
// and the flat metric is the identity matrix over the real coordinates
// (x_1, y_1, ..., x_{2n}, y_{2n}).

#include "quat_ops.hpp"

#include <Eigen/Dense>

#include <optional>
#include <set>
#include <vector>

namespace qf {

using Cd = std::complex<double>;

// symmetric real matrix over the real coordinate basis; index 2a = x_{a+1},
// 2a+1 = y_{a+1}
struct RealMetric {
    int n = 1;
    Matrix<ExactComplex> B;

    explicit RealMetric(int n_) : n(n_), B(4 * n_, 4 * n_) { check_n(n_); }
    RealMetric(int n_, Matrix<ExactComplex> B_) : n(n_), B(std::move(B_)) {
        check_n(n_);
        if (B.r != 4 * n || B.c != 4 * n) throw std::invalid_argument("metric has wrong size");
        for (int i = 0; i < B.r; ++i)
            for (int j = 0; j <= i; ++j) {
                if (!B.at(i, j).is_real()) throw std::invalid_argument("metric must be real");
                if (B.at(i, j) != B.at(j, i)) throw std::invalid_argument("metric must be symmetric");
            }
    }

    static RealMetric flat(int n) {
        return RealMetric(n, Matrix<ExactComplex>::identity(4 * n));
    }
};

template <class S>
Vec<S> real_basis_vec(int n, int r) {
    return (r & 1) ? Vec<S>::dy(n, r >> 1) : Vec<S>::dx(n, r >> 1);
}

// components of a (complex) vector over the real coordinate basis
template <class S>
std::vector<S> real_components(const Vec<S>& v) {
    int n = v.n;
    std::vector<S> out(std::size_t(4) * n);
    S half = ScalarOps<S>::from_rat(Rat(1, 2));
    S mhalf_i = -(ScalarOps<S>::imag_unit() * half);
    for (int a = 0; a < 2 * n; ++a) {
        out[2 * a] = half * (v.c[a] + v.c[2 * n + a]);
        out[2 * a + 1] = mhalf_i * (v.c[a] - v.c[2 * n + a]);
    }
    return out;
}

// complex-bilinear extension of the metric
template <class S>
S metric_bilinear(const RealMetric& g, const Vec<S>& u, const Vec<S>& v) {
    auto ur = real_components(u), vr = real_components(v);
    S acc = ScalarOps<S>::zero();
    for (int r = 0; r < 4 * g.n; ++r) {
        if (ScalarOps<S>::is_zero(ur[r])) continue;
        for (int s = 0; s < 4 * g.n; ++s) {
            const ExactComplex& b = g.B.at(r, s);
            if (b.is_zero()) continue;
            acc += ur[r] * vr[s] * ec_times(ScalarOps<S>::one(), b);
        }
    }
    return acc;
}

struct InvarianceViolation {
    Struct op;
    int r, s;  // real basis pair where g(L b_r, L b_s) != g(b_r, b_s)
};

inline Vec<ExactComplex> apply_struct_vec(Struct L, const Vec<ExactComplex>& v) {
    switch (L) {
        case Struct::I: return apply_I_vec(v);
        case Struct::J: return apply_J_vec(v);
        case Struct::K: return apply_K_vec(v);
    }
    throw std::logic_error("bad structure tag");
}

inline std::optional<InvarianceViolation> su2_violation(const RealMetric& g) {
    int n = g.n;
    std::vector<Vec<ExactComplex>> basis, im, jm, km;
    for (int r = 0; r < 4 * n; ++r) {
        basis.push_back(real_basis_vec<ExactComplex>(n, r));
        im.push_back(apply_I_vec(basis.back()));
        jm.push_back(apply_J_vec(basis.back()));
        km.push_back(apply_K_vec(basis.back()));
    }
    for (int r = 0; r < 4 * n; ++r)
        for (int s = r; s < 4 * n; ++s) {
            ExactComplex base = g.B.at(r, s);
            if (metric_bilinear(g, im[r], im[s]) != base)
                return InvarianceViolation{Struct::I, r, s};
            if (metric_bilinear(g, jm[r], jm[s]) != base)
                return InvarianceViolation{Struct::J, r, s};
            if (metric_bilinear(g, km[r], km[s]) != base)
                return InvarianceViolation{Struct::K, r, s};
        }
    return std::nullopt;
}

inline std::string struct_name(Struct L) {
    switch (L) {
        case Struct::I: return "I";
        case Struct::J: return "J";
        case Struct::K: return "K";
    }
    return "?";
}

// Omega_g = omega_J + i omega_K with omega_L(x,y) = g(Lx,y); flat metric
// maps to Omega with constant +1
inline Form<ExactComplex> form_from_metric(const RealMetric& g) {
    if (auto bad = su2_violation(g))
        throw std::invalid_argument("metric is not SU(2)-invariant: g(" + struct_name(bad->op) +
                                    " b" + std::to_string(bad->r) + ", " + struct_name(bad->op) +
                                    " b" + std::to_string(bad->s) + ") differs");
    int n = g.n;
    Form<ExactComplex> out(n);
    std::vector<Vec<ExactComplex>> frame;
    for (int gidx = 0; gidx < 4 * n; ++gidx) {
        Vec<ExactComplex> v(n);
        v.c[gidx] = ExactComplex(1);
        frame.push_back(v);
    }
    for (int a = 0; a < 4 * n; ++a)
        for (int b = a + 1; b < 4 * n; ++b) {
            ExactComplex val = metric_bilinear(g, apply_J_vec(frame[a]), frame[b]) +
                               ExactComplex::i() *
                                   metric_bilinear(g, apply_K_vec(frame[a]), frame[b]);
            if (val.is_zero()) continue;
            uint32_t m = (uint32_t(1) << a) | (uint32_t(1) << b);
            if (std::popcount(m & ((uint32_t(1) << (2 * n)) - 1)) != 2)
                throw std::logic_error("invariant metric produced a non-(2,0) component");
            out.add_term(m, val);
        }
    return out;
}

// H_ab = h(e_a, e_b) = eta(e_a, J ebar_b); Hermitian iff eta is rho-real
template <class S>
Matrix<S> herm_h_matrix(const Form<S>& eta) {
    int n = eta.n;
    Matrix<S> H(2 * n, 2 * n);
    for (int b = 0; b < 2 * n; ++b) {
        Vec<S> jb = apply_J_vec(Vec<S>::ebar(n, b));
        for (int a = 0; a < 2 * n; ++a) H.at(a, b) = eval(eta, {Vec<S>::e(n, a), jb});
    }
    return H;
}

// N_ab = -i eta(e_a, ebar_b); Hermitian iff the (1,1)-form eta is real
template <class S>
Matrix<S> herm_matrix_11(const Form<S>& eta) {
    int n = eta.n;
    Matrix<S> N(2 * n, 2 * n);
    S mi = -ScalarOps<S>::imag_unit();
    for (int a = 0; a < 2 * n; ++a)
        for (int b = 0; b < 2 * n; ++b)
            N.at(a, b) = mi * eval(eta, {Vec<S>::e(n, a), Vec<S>::ebar(n, b)});
    return N;
}

// G_ab = g(e_a, ebar_b) for the bilinear extension; flat gives I/2
inline Matrix<ExactComplex> gram_matrix(const RealMetric& g) {
    int n = g.n;
    Matrix<ExactComplex> G(2 * n, 2 * n);
    for (int a = 0; a < 2 * n; ++a)
        for (int b = 0; b < 2 * n; ++b)
            G.at(a, b) = metric_bilinear(g, Vec<ExactComplex>::e(n, a),
                                         Vec<ExactComplex>::ebar(n, b));
    return G;
}

inline bool is_positive_definite(const Matrix<ExactComplex>& H) {
    Inertia in = hermitian_inertia(H);
    return in.neg == 0 && in.zero == 0;
}

inline bool is_positive_semidefinite(const Matrix<ExactComplex>& H) {
    return hermitian_inertia(H).neg == 0;
}

// g(x, ybar) = (1/2) eta(x, J ybar), assembled over the real basis
inline RealMetric metric_from_form(const Form<ExactComplex>& eta) {
    if (!is_rho_real(eta)) throw std::invalid_argument("form is not real");
    if (!eta.is_zero() && !eta.pure_bidegree(2, 0))
        throw std::invalid_argument("metric_from_form needs a (2,0)-form");
    int n = eta.n;
    Matrix<ExactComplex> Hh = herm_h_matrix(eta);
    Matrix<ExactComplex> B(4 * n, 4 * n);
    for (int a = 0; a < 2 * n; ++a)
        for (int b = 0; b < 2 * n; ++b) {
            Rat re = Hh.at(a, b).re, im = Hh.at(a, b).im;
            B.at(2 * a, 2 * b) = ExactComplex(re);
            B.at(2 * a + 1, 2 * b + 1) = ExactComplex(re);
            B.at(2 * a, 2 * b + 1) = ExactComplex(im);
            B.at(2 * a + 1, 2 * b) = ExactComplex(-im);
        }
    return RealMetric(n, std::move(B));
}

// ---- exact pencil spectra ---------------------------------------------------

inline Eigen::MatrixXcd to_eigen(const Matrix<ExactComplex>& M) {
    Eigen::MatrixXcd out(M.r, M.c);
    for (int i = 0; i < M.r; ++i)
        for (int j = 0; j < M.c; ++j) out(i, j) = M.at(i, j).to_complex();
    return out;
}

// best rational approximation with bounded denominator (continued fractions)
inline Rat rat_approx(double x, const mpz_class& max_den) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    bool neg = x < 0;
    double v = neg ? -x : x;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 1e18) break;
        mpz_class a(fl);
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-14) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return Rat(0);
    Rat r(neg ? mpz_class(-p1) : p1, q1);
    r.canonicalize();
    return r;
}

inline ExactComplex eval_poly(const std::vector<ExactComplex>& c, const Rat& x) {
    ExactComplex acc;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * ExactComplex(x) + c[i];
    return acc;
}

// Spectrum of the Hermitian pencil (M, G) with G positive definite, as exact
// rationals with multiplicities. Floating guesses locate the eigenvalues;
// continued fractions propose rational values; each is verified as an exact
// root and its multiplicity read off the exact rank drop. Any irrational
// eigenvalue surfaces as a failure to account for the whole spectrum.
inline std::vector<std::pair<Rat, int>> exact_pencil_eigenvalues(const Matrix<ExactComplex>& M,
                                                                 const Matrix<ExactComplex>& G) {
    if (!is_hermitian(M)) throw std::invalid_argument("pencil numerator is not Hermitian");
    if (!is_hermitian(G) || !is_positive_definite(G))
        throw std::invalid_argument("pencil background is not positive definite");
    int d = M.r;
    auto Ginv = inverse(G);
    Matrix<ExactComplex> A = *Ginv * M;
    auto cp = char_poly(A);

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(to_eigen(M), to_eigen(G));
    if (ges.info() != Eigen::Success) throw std::runtime_error("float eigensolver failed");

    std::set<Rat> found;
    for (int i = 0; i < d; ++i) {
        double guess = ges.eigenvalues()(i);
        for (int bits : {20, 40, 60}) {
            Rat cand = rat_approx(guess, mpz_class(1) << bits);
            if (eval_poly(cp, cand).is_zero()) {
                found.insert(cand);
                break;
            }
        }
    }
    std::vector<std::pair<Rat, int>> out;
    int total = 0;
    for (const Rat& lam : found) {
        Matrix<ExactComplex> shifted = A - Matrix<ExactComplex>::identity(d).scaled(ExactComplex(lam));
        int mult = d - rank(shifted);
        out.emplace_back(lam, mult);
        total += mult;
    }
    if (total != d)
        throw std::domain_error("pencil spectrum does not split over the rationals; use float mode");
    return out;
}

inline std::vector<Rat> flatten_spectrum(const std::vector<std::pair<Rat, int>>& sp) {
    std::vector<Rat> out;
    for (auto& [lam, mult] : sp)
        for (int i = 0; i < mult; ++i) out.push_back(lam);
    return out;
}

// eigenvalues of a real (1,1)-form against a positive background; 2n entries
inline std::vector<Rat> eigenprofile_11(const Form<ExactComplex>& eta, const RealMetric& bg) {
    if (!eta.is_zero() && !(conjugate(eta) == eta))
        throw std::invalid_argument("(1,1)-form is not real");
    if (!eta.is_zero() && !eta.pure_bidegree(1, 1))
        throw std::invalid_argument("eigenprofile_11 needs a (1,1)-form");
    Matrix<ExactComplex> G = gram_matrix(bg);
    if (!is_positive_definite(G)) throw std::invalid_argument("background is not positive");
    Matrix<ExactComplex> N = eta.is_zero() ? Matrix<ExactComplex>(G.r, G.c)
                                           : herm_matrix_11(eta);
    return flatten_spectrum(exact_pencil_eigenvalues(N, G));
}

// quaternionic eigenvalues of a real (2,0)-form: n entries, each showing up
// twice in the underlying complex pencil
inline std::vector<Rat> eigenprofile_20(const Form<ExactComplex>& eta, const RealMetric& bg) {
    if (!is_rho_real(eta)) throw std::invalid_argument("(2,0)-form is not real");
    if (!eta.is_zero() && !eta.pure_bidegree(2, 0))
        throw std::invalid_argument("eigenprofile_20 needs a (2,0)-form");
    Matrix<ExactComplex> G = gram_matrix(bg);
    if (!is_positive_definite(G)) throw std::invalid_argument("background is not positive");
    int n = eta.n;
    Matrix<ExactComplex> Hg = eta.is_zero() ? Matrix<ExactComplex>(2 * n, 2 * n)
                                            : herm_h_matrix(eta).scaled(ExactComplex(Rat(1, 2)));
    auto sp = exact_pencil_eigenvalues(Hg, G);
    std::vector<Rat> out;
    for (auto& [lam, mult] : sp) {
        if (mult % 2) throw std::logic_error("quaternionic eigenvalue with odd multiplicity");
        for (int i = 0; i < mult / 2; ++i) out.push_back(lam);
    }
    return out;
}

// ---- simultaneous diagonalization -------------------------------------------

// sigma on coefficient vectors over e_1..e_2n
inline std::vector<ExactComplex> sigma_coeffs(const std::vector<ExactComplex>& c) {
    std::vector<ExactComplex> out(c.size());
    for (std::size_t a = 0; a < c.size(); ++a) {
        ExactComplex v = c[a].conj();
        out[a ^ 1] = (a & 1) ? -v : v;
    }
    return out;
}

inline ExactComplex h_pair(const Matrix<ExactComplex>& H, const std::vector<ExactComplex>& x,
                           const std::vector<ExactComplex>& y) {
    ExactComplex acc;
    for (int a = 0; a < H.r; ++a) {
        if (x[a].is_zero()) continue;
        for (int b = 0; b < H.c; ++b) acc += x[a] * y[b].conj() * H.at(a, b);
    }
    return acc;
}

struct QuatFrame {
    std::vector<Form<ExactComplex>> xi;  // n covectors of type (1,0)
    std::vector<Rat> alpha, beta;        // eta = sum alpha_i xi_i ^ J(conj xi_i), same for eta2
};

// frame in which both eta (strictly positive) and eta2 are diagonal; exact
// reconstruction is checked before returning
inline QuatFrame simultaneous_diagonalize(const Form<ExactComplex>& eta,
                                          const Form<ExactComplex>& eta2) {
    int n = eta.n;
    if (eta2.n != n) throw std::invalid_argument("mismatched spaces");
    if (!is_rho_real(eta) || !is_rho_real(eta2))
        throw std::invalid_argument("both forms must be real");
    if (!eta.pure_bidegree(2, 0) || (!eta2.is_zero() && !eta2.pure_bidegree(2, 0)))
        throw std::invalid_argument("simultaneous diagonalization needs (2,0)-forms");
    Matrix<ExactComplex> H = herm_h_matrix(eta);
    if (!is_positive_definite(H))
        throw std::invalid_argument("reference form is not strictly positive");
    Matrix<ExactComplex> H2 = eta2.is_zero() ? Matrix<ExactComplex>(2 * n, 2 * n)
                                             : herm_h_matrix(eta2);

    // v is a pencil vector iff (H2 - lam H)^T v = 0
    Matrix<ExactComplex> At = (*inverse(H.transpose())) * H2.transpose();
    auto cp = char_poly(At);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(to_eigen(H2), to_eigen(H));
    if (ges.info() != Eigen::Success) throw std::runtime_error("float eigensolver failed");
    std::set<Rat> lams;
    for (int i = 0; i < 2 * n; ++i) {
        double guess = ges.eigenvalues()(i);
        for (int bits : {20, 40, 60}) {
            Rat cand = rat_approx(guess, mpz_class(1) << bits);
            if (eval_poly(cp, cand).is_zero()) {
                lams.insert(cand);
                break;
            }
        }
    }

    std::vector<std::vector<ExactComplex>> us;
    int covered = 0;
    for (const Rat& lam : lams) {
        Matrix<ExactComplex> shifted =
            At - Matrix<ExactComplex>::identity(2 * n).scaled(ExactComplex(lam));
        auto space = kernel(shifted);
        covered += int(space.size());
        std::vector<std::vector<ExactComplex>> pairs;  // u, sigma u, u, sigma u, ...
        for (auto& w : space) {
            std::vector<ExactComplex> v = w;
            for (auto& p : pairs) {
                ExactComplex coef = h_pair(H, v, p) / h_pair(H, p, p);
                for (int a = 0; a < 2 * n; ++a) v[a] -= coef * p[a];
            }
            bool zero = true;
            for (auto& x : v) zero = zero && x.is_zero();
            if (zero) continue;
            pairs.push_back(v);
            pairs.push_back(sigma_coeffs(v));
            us.push_back(v);
        }
        if (pairs.size() != space.size())
            throw std::logic_error("eigenspace is not sigma-balanced");
    }
    if (covered != 2 * n)
        throw std::domain_error("pencil spectrum does not split over the rationals; use float mode");

    Matrix<ExactComplex> P(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        auto su = sigma_coeffs(us[i]);
        for (int a = 0; a < 2 * n; ++a) {
            P.at(a, 2 * i) = us[i][a];
            P.at(a, 2 * i + 1) = su[a];
        }
    }
    auto Pinv = inverse(P);
    if (!Pinv) throw std::logic_error("frame is singular");

    QuatFrame out;
    for (int i = 0; i < n; ++i) {
        Form<ExactComplex> xi(n);
        for (int a = 0; a < 2 * n; ++a) xi.add_term(uint32_t(1) << a, Pinv->at(2 * i, a));
        out.xi.push_back(xi);
        ExactComplex ha = h_pair(H, us[i], us[i]), hb = h_pair(H2, us[i], us[i]);
        if (!ha.is_real() || !hb.is_real()) throw std::logic_error("frame pairing not real");
        out.alpha.push_back(ha.re);
        out.beta.push_back(hb.re);
    }

    Form<ExactComplex> recon_a(n), recon_b(n);
    for (int i = 0; i < n; ++i) {
        Form<ExactComplex> blade = wedge(out.xi[i], apply_J(conjugate(out.xi[i])));
        recon_a += scale(blade, ExactComplex(out.alpha[i]));
        recon_b += scale(blade, ExactComplex(out.beta[i]));
    }
    if (!(recon_a == eta) || !(recon_b == eta2))
        throw std::logic_error("diagonal frame reconstruction failed");
    return out;
}

struct QuatFrameF {
    std::vector<Form<Cd>> xi;
    std::vector<double> alpha, beta;
    double residual = 0.0;
};

inline Cd h_pair_f(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& x,
                   const Eigen::VectorXcd& y) {
    return (x.transpose() * H * y.conjugate())(0);
}

inline Eigen::VectorXcd sigma_coeffs_f(const Eigen::VectorXcd& c) {
    Eigen::VectorXcd out(c.size());
    for (int a = 0; a < c.size(); ++a) {
        Cd v = std::conj(c(a));
        out(a ^ 1) = (a & 1) ? -v : v;
    }
    return out;
}

inline QuatFrameF simultaneous_diagonalize_float(const Form<Cd>& eta, const Form<Cd>& eta2,
                                                 double tol = 1e-10) {
    int n = eta.n;
    if (eta2.n != n) throw std::invalid_argument("mismatched spaces");
    Eigen::MatrixXcd H(2 * n, 2 * n), H2(2 * n, 2 * n);
    for (int b = 0; b < 2 * n; ++b) {
        Vec<Cd> jb = apply_J_vec(Vec<Cd>::ebar(n, b));
        for (int a = 0; a < 2 * n; ++a) {
            H(a, b) = eval(eta, {Vec<Cd>::e(n, a), jb});
            H2(a, b) = eval(eta2, {Vec<Cd>::e(n, a), jb});
        }
    }
    Eigen::LLT<Eigen::MatrixXcd> llt(H);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("reference form is not strictly positive");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(H2, H);
    if (ges.info() != Eigen::Success) throw std::runtime_error("float eigensolver failed");

    // pencil row-vectors are conjugates of the solver's eigenvectors
    double scale_ev = std::max(1.0, ges.eigenvalues().cwiseAbs().maxCoeff());
    std::vector<Eigen::VectorXcd> us;
    int i = 0;
    while (i < 2 * n) {
        int j = i;
        while (j + 1 < 2 * n &&
               std::abs(ges.eigenvalues()(j + 1) - ges.eigenvalues()(i)) < 1e-7 * scale_ev)
            ++j;
        std::vector<Eigen::VectorXcd> pairs;
        for (int k = i; k <= j; ++k) {
            Eigen::VectorXcd v = ges.eigenvectors().col(k).conjugate();
            for (auto& p : pairs) v -= (h_pair_f(H, v, p) / h_pair_f(H, p, p)) * p;
            if (v.norm() < 1e-8) continue;
            pairs.push_back(v);
            pairs.push_back(sigma_coeffs_f(v));
            us.push_back(v);
        }
        if (int(pairs.size()) != j - i + 1) throw std::runtime_error("sigma pairing failed");
        i = j + 1;
    }

    Eigen::MatrixXcd P(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        P.col(2 * k) = us[k];
        P.col(2 * k + 1) = sigma_coeffs_f(us[k]);
    }
    Eigen::MatrixXcd Pinv = P.inverse();

    QuatFrameF out;
    for (int k = 0; k < n; ++k) {
        Form<Cd> xi(n);
        for (int a = 0; a < 2 * n; ++a) {
            Cd c = Pinv(2 * k, a);
            if (std::abs(c) > 0) xi.add_term(uint32_t(1) << a, c);
        }
        out.xi.push_back(xi);
        out.alpha.push_back(h_pair_f(H, us[k], us[k]).real());
        out.beta.push_back(h_pair_f(H2, us[k], us[k]).real());
    }

    Form<Cd> recon_a(n), recon_b(n);
    for (int k = 0; k < n; ++k) {
        Form<Cd> blade = wedge(out.xi[k], apply_J(conjugate(out.xi[k])));
        recon_a += scale(blade, Cd(out.alpha[k], 0));
        recon_b += scale(blade, Cd(out.beta[k], 0));
    }
    double num = 0, den = 1e-300;
    auto acc = [&](const Form<Cd>& x, const Form<Cd>& ref) {
        Form<Cd> diff = x - ref;
        for (auto& kv : diff.terms) num = std::max(num, std::abs(kv.second));
        for (auto& kv : ref.terms) den = std::max(den, std::abs(kv.second));
    };
    acc(recon_a, eta);
    acc(recon_b, eta2);
    out.residual = num / std::max(1.0, den);
    if (out.residual > tol) throw std::runtime_error("diagonalization residual too large");
    return out;
}

// ---- frame changes ----------------------------------------------------------

// pullback along the linear map with matrix U on (1,0) vectors:
// dz_a -> sum_b U_ab dz_b and dzbar_a -> sum_b conj(U_ab) dzbar_b
template <class S>
Form<S> substitute_frame(const Form<S>& f, const Matrix<S>& U) {
    int n = f.n;
    if (U.r != 2 * n || U.c != 2 * n) throw std::invalid_argument("frame matrix has wrong size");
    std::vector<Form<S>> image;
    for (int g = 0; g < 4 * n; ++g) {
        Form<S> im(n);
        int a = g < 2 * n ? g : g - 2 * n;
        for (int b = 0; b < 2 * n; ++b) {
            S coef = g < 2 * n ? U.at(a, b) : ScalarOps<S>::conj(U.at(a, b));
            if (ScalarOps<S>::is_zero(coef)) continue;
            im.add_term(uint32_t(1) << (g < 2 * n ? b : 2 * n + b), coef);
        }
        image.push_back(im);
    }
    Form<S> out(n);
    for (auto& [mask, c] : f.terms) {
        Form<S> prod = Form<S>::unit(n);
        for (int g = 0; g < 4 * n; ++g)
            if (mask & (uint32_t(1) << g)) prod = wedge(prod, image[g]);
        out += scale(prod, c);
    }
    return out;
}

// random element of the rational quaternionic unitary group (commutes with
// sigma, preserves the flat metric, hence fixes omega_I and Omega)
inline Matrix<ExactComplex> random_sp_unitary(int n, Rng& rng, int steps = 4) {
    using EC = ExactComplex;
    const std::pair<Rat, Rat> pyth[] = {{Rat(3, 5), Rat(4, 5)}, {Rat(5, 13), Rat(12, 13)},
                                        {Rat(8, 17), Rat(15, 17)}};
    const EC phases[] = {EC(1), EC::i(), EC(-1), -EC::i()};
    Matrix<EC> U = Matrix<EC>::identity(2 * n);
    for (int s = 0; s < steps; ++s) {
        Matrix<EC> E = Matrix<EC>::identity(2 * n);
        auto [c, sn] = pyth[rng.uniform_int(0, 2)];
        EC phase = phases[rng.uniform_int(0, 3)];
        if (n == 1 || rng.uniform_int(0, 1) == 0) {
            // unit quaternion acting on one line
            int i = int(rng.uniform_int(0, n - 1));
            EC alpha = ec_times(phase, EC(c));
            EC beta = rng.uniform_int(0, 1) ? EC(sn) : ec_times(EC::i(), EC(sn));
            E.at(2 * i, 2 * i) = alpha;
            E.at(2 * i, 2 * i + 1) = -beta.conj();
            E.at(2 * i + 1, 2 * i) = beta;
            E.at(2 * i + 1, 2 * i + 1) = alpha.conj();
        } else {
            // complex Givens rotation mixing two lines
            int i = int(rng.uniform_int(0, n - 2));
            int j = int(rng.uniform_int(i + 1, n - 1));
            EC m00 = ec_times(phase, EC(c)), m01 = ec_times(phase, EC(sn));
            EC m10 = EC(-sn), m11 = EC(c);
            E.at(2 * i, 2 * i) = m00;
            E.at(2 * i, 2 * j) = m01;
            E.at(2 * j, 2 * i) = m10;
            E.at(2 * j, 2 * j) = m11;
            E.at(2 * i + 1, 2 * i + 1) = m00.conj();
            E.at(2 * i + 1, 2 * j + 1) = m01.conj();
            E.at(2 * j + 1, 2 * i + 1) = m10.conj();
            E.at(2 * j + 1, 2 * j + 1) = m11.conj();
        }
        U = E * U;
    }
    return U;
}

// ---- quaternionic Gram-Schmidt ----------------------------------------------

// rank of the quaternionic span: rows are the vectors and their sigma images
inline int quaternionic_rank(const std::vector<Vec<ExactComplex>>& vs) {
    if (vs.empty()) return 0;
    int n = vs[0].n;
    Matrix<ExactComplex> M(2 * int(vs.size()), 2 * n);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Vec<ExactComplex> sv = sigma(vs[i]);
        for (int a = 0; a < 2 * n; ++a) {
            M.at(2 * int(i), a) = vs[i].c[a];
            M.at(2 * int(i) + 1, a) = sv.c[a];
        }
    }
    return rank(M);
}

// y_k = x_k + quaternionic combination of y_1..y_{k-1} with
// h(y_k, y_i) = 0 and eta(y_i, y_k) = 0 for i < k
inline std::vector<Vec<ExactComplex>> quaternionic_gram_schmidt(
    const Form<ExactComplex>& eta, const std::vector<Vec<ExactComplex>>& xs) {
    int n = eta.n;
    if (!is_rho_real(eta) || !eta.pure_bidegree(2, 0))
        throw std::invalid_argument("Gram-Schmidt needs a real (2,0)-form");
    if (!is_positive_definite(herm_h_matrix(eta)))
        throw std::invalid_argument("form is not strictly positive");
    for (auto& x : xs) {
        if (x.n != n) throw std::invalid_argument("mismatched spaces");
        for (int a = 0; a < 2 * n; ++a)
            if (!x.c[2 * n + a].is_zero())
                throw std::invalid_argument("inputs must be (1,0) vectors");
    }

    auto h = [&](const Vec<ExactComplex>& x, const Vec<ExactComplex>& y) {
        return eval(eta, {x, apply_J_vec(conj_vec(y))});
    };
    std::vector<Vec<ExactComplex>> ys;
    for (auto& x : xs) {
        Vec<ExactComplex> y = x;
        for (auto& yi : ys) {
            ExactComplex hi = h(yi, yi);
            ExactComplex a = -(h(x, yi) / hi);
            ExactComplex b = -(eval(eta, {yi, x}) / hi);
            y += a * yi;
            y += b * sigma(yi);
        }
        if (y.is_zero())
            throw std::invalid_argument("inputs are quaternionically dependent");
        ys.push_back(y);
    }
    return ys;
}

}  // namespace qf
