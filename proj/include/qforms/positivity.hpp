#pragma once

// Positivity cones for real (2p,0)-forms and their (p,p)-side counterparts:
// weak/strong positivity verdicts with witnesses, the omega^q and Omega^q
// eigenvalue-sum criteria, and the transfer check between them.
//
// The q-sum criteria never extract individual eigenvalues: the sum of the q
// smallest eigenvalues of a Hermitian pencil (N, G) is >= 0 iff the q-th
// additive compound of G^{-1}N, made Hermitian again with the Gram minors of
// G, is positive semidefinite. That keeps the decision exact even when the
// spectrum is irrational.

#include "hermitian.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace qf {

struct Strategy {
    enum class Kind { Exact, Sampled, Descent };
    Kind kind = Kind::Exact;
    long samples = 0;
    uint64_t seed = 0;

    static Strategy exact() { return {Kind::Exact, 0, 0}; }
    static Strategy sampled(long k, uint64_t seed) { return {Kind::Sampled, k, seed}; }
    static Strategy descent(long k, uint64_t seed) { return {Kind::Descent, k, seed}; }
};

struct Verdict {
    enum class Kind { PositiveCertified, NegativeCertified, Unknown };
    Kind kind = Kind::Unknown;
    std::vector<Vec<ExactComplex>> witness;  // nonempty iff NegativeCertified
    long samples = 0;
    double best = 0.0;  // most negative value seen
    uint64_t seed = 0;
};

// eta(x_1, J(conj x_1), ..., x_p, J(conj x_p)); real for rho-real eta
inline ExactComplex weak_eval_20(const Form<ExactComplex>& eta,
                                 const std::vector<Vec<ExactComplex>>& xs) {
    std::vector<Vec<ExactComplex>> args;
    for (auto& x : xs) {
        args.push_back(x);
        args.push_back(apply_J_vec(conj_vec(x)));
    }
    ExactComplex v = eval(eta, args);
    if (!v.is_real()) throw std::logic_error("quaternionic evaluation is not real");
    return v;
}

// (-i)^p rho(x_1, conj x_1, ..., x_p, conj x_p); real for real rho
inline ExactComplex weak_eval_pp(const Form<ExactComplex>& rho,
                                 const std::vector<Vec<ExactComplex>>& xs) {
    std::vector<Vec<ExactComplex>> args;
    for (auto& x : xs) {
        args.push_back(x);
        args.push_back(conj_vec(x));
    }
    ExactComplex v = eval(rho, args);
    ExactComplex mi = -ExactComplex::i();
    for (std::size_t i = 0; i < xs.size(); ++i) v = v * mi;
    if (!v.is_real()) throw std::logic_error("(p,p) evaluation is not real");
    return v;
}

// Exact certificate for a Hermitian matrix: either nullopt (positive
// semidefinite) or a rational vector c with sum c_a conj(c_b) N_ab < 0,
// found by congruence elimination.
inline std::optional<std::vector<ExactComplex>> exact_negative_direction(
    Matrix<ExactComplex> N) {
    if (!is_hermitian(N)) throw std::domain_error("matrix is not Hermitian");
    int d = N.r;
    std::vector<std::vector<ExactComplex>> cols(d, std::vector<ExactComplex>(d));
    for (int j = 0; j < d; ++j) cols[j][j] = ExactComplex(1);
    std::vector<char> alive(d, 1);

    for (int round = 0; round <= d; ++round) {
        int pos = -1;
        for (int j = 0; j < d; ++j) {
            if (!alive[j]) continue;
            const Rat& dj = N.at(j, j).re;
            if (dj < 0) return cols[j];
            if (dj > 0 && pos < 0) pos = j;
        }
        if (pos < 0) {
            // all alive diagonals vanish; any off-diagonal entry yields a
            // negative two-dimensional direction
            for (int i = 0; i < d; ++i) {
                if (!alive[i]) continue;
                for (int j = i + 1; j < d; ++j) {
                    if (!alive[j] || N.at(i, j).is_zero()) continue;
                    ExactComplex w = -N.at(i, j);
                    std::vector<ExactComplex> c = cols[i];
                    for (int a = 0; a < d; ++a) c[a] += w * cols[j][a];
                    return c;
                }
            }
            return std::nullopt;
        }
        ExactComplex piv = N.at(pos, pos);
        std::vector<ExactComplex> t(d);
        for (int j = 0; j < d; ++j)
            if (alive[j] && j != pos) t[j] = N.at(j, pos) / piv;
        for (int j = 0; j < d; ++j) {
            if (!alive[j] || j == pos || t[j].is_zero()) continue;
            for (int a = 0; a < d; ++a) cols[j][a] -= t[j] * cols[pos][a];
        }
        for (int j = 0; j < d; ++j) {
            if (!alive[j] || j == pos) continue;
            for (int k = 0; k < d; ++k) {
                if (!alive[k] || k == pos) continue;
                N.at(j, k) = N.at(j, k) - t[j] * N.at(pos, k) -
                             t[k].conj() * N.at(j, pos) + t[j] * t[k].conj() * piv;
            }
        }
        alive[pos] = 0;
    }
    throw std::logic_error("congruence elimination did not terminate");
}

inline Vec<ExactComplex> vec_from_coeffs(int n, const std::vector<ExactComplex>& c) {
    Vec<ExactComplex> v(n);
    for (int a = 0; a < 2 * n && a < int(c.size()); ++a) v.c[a] = c[a];
    return v;
}

// ---- additive compounds -----------------------------------------------------

inline std::vector<uint32_t> masks_of_size(int d, int q) {
    std::vector<uint32_t> out;
    for (uint32_t m = 0; m < (uint32_t(1) << d); ++m)
        if (std::popcount(m) == q) out.push_back(m);
    return out;
}

inline int bit_pos(uint32_t mask, int i) {
    return std::popcount(mask & ((uint32_t(1) << i) - 1));
}

// derivation extension of A to the wedge basis indexed by masks
inline Matrix<ExactComplex> additive_compound(const Matrix<ExactComplex>& A,
                                              const std::vector<uint32_t>& masks) {
    int m = int(masks.size());
    Matrix<ExactComplex> out(m, m);
    for (int si = 0; si < m; ++si)
        for (int tj = 0; tj < m; ++tj) {
            uint32_t S = masks[si], T = masks[tj];
            if (S == T) {
                ExactComplex acc;
                for (int i = 0; i < A.r; ++i)
                    if (S & (uint32_t(1) << i)) acc += A.at(i, i);
                out.at(si, tj) = acc;
            } else if (std::popcount(S ^ T) == 2) {
                uint32_t x = S ^ T;
                int i = std::countr_zero(S & x), j = std::countr_zero(T & x);
                int sgn = ((bit_pos(S, i) + bit_pos(T, j)) & 1) ? -1 : 1;
                out.at(si, tj) = sgn < 0 ? -A.at(i, j) : A.at(i, j);
            }
        }
    return out;
}

// Gram minors det G[S|T]
inline Matrix<ExactComplex> gram_compound(const Matrix<ExactComplex>& G,
                                          const std::vector<uint32_t>& masks) {
    int m = int(masks.size());
    Matrix<ExactComplex> out(m, m);
    for (int si = 0; si < m; ++si)
        for (int tj = 0; tj < m; ++tj) {
            std::vector<int> rows, colsv;
            for (int i = 0; i < G.r; ++i) {
                if (masks[si] & (uint32_t(1) << i)) rows.push_back(i);
                if (masks[tj] & (uint32_t(1) << i)) colsv.push_back(i);
            }
            Matrix<ExactComplex> sub(int(rows.size()), int(colsv.size()));
            for (std::size_t a = 0; a < rows.size(); ++a)
                for (std::size_t b = 0; b < colsv.size(); ++b)
                    sub.at(int(a), int(b)) = G.at(rows[a], colsv[b]);
            out.at(si, tj) = det(sub);
        }
    return out;
}

// sum of the q smallest eigenvalues of the pencil (N, G) is >= 0?
inline bool min_eigensum_nonneg(const Matrix<ExactComplex>& N,
                                const Matrix<ExactComplex>& G, int q) {
    auto Ginv = inverse(G);
    if (!Ginv) throw std::invalid_argument("background is singular");
    Matrix<ExactComplex> A = *Ginv * N;
    auto masks = masks_of_size(N.r, q);
    Matrix<ExactComplex> M = gram_compound(G, masks) * additive_compound(A, masks);
    if (!is_hermitian(M)) throw std::logic_error("compound pencil lost Hermitian symmetry");
    return hermitian_inertia(M).neg == 0;
}

// sum of any q eigenvalues of eta against the background omega is >= 0
inline bool omega_q_positive(const Form<ExactComplex>& eta, int q,
                             const Form<ExactComplex>& omega) {
    int n = eta.n;
    if (q < 1 || q > 2 * n) throw std::invalid_argument("q out of range");
    if (!eta.is_zero() && !(conjugate(eta) == eta && eta.pure_bidegree(1, 1)))
        throw std::invalid_argument("eta must be a real (1,1)-form");
    if (!(conjugate(omega) == omega && omega.pure_bidegree(1, 1)))
        throw std::invalid_argument("background must be a real (1,1)-form");
    Matrix<ExactComplex> G = herm_matrix_11(omega);
    if (!is_positive_definite(G))
        throw std::invalid_argument("background form is not positive definite");
    Matrix<ExactComplex> N =
        eta.is_zero() ? Matrix<ExactComplex>(2 * n, 2 * n) : herm_matrix_11(eta);
    return min_eigensum_nonneg(N, G, q);
}

// sum of any q quaternionic eigenvalues of eta is >= 0 (flat background)
inline bool Omega_q_positive(const Form<ExactComplex>& eta, int q) {
    int n = eta.n;
    if (q < 1 || q > n) throw std::invalid_argument("q out of range");
    if (!is_rho_real(eta)) throw std::invalid_argument("eta must be a real (2,0)-form");
    if (!eta.is_zero() && !eta.pure_bidegree(2, 0))
        throw std::invalid_argument("eta must be a real (2,0)-form");
    Matrix<ExactComplex> H =
        eta.is_zero() ? Matrix<ExactComplex>(2 * n, 2 * n) : herm_h_matrix(eta);
    // each quaternionic eigenvalue appears twice in the complex pencil
    return min_eigensum_nonneg(H, Matrix<ExactComplex>::identity(2 * n), 2 * q);
}

// ---- weak positivity verdicts -----------------------------------------------

namespace detail {

inline Verdict negative_verdict(const Form<ExactComplex>& eta, bool quaternionic,
                                std::vector<Vec<ExactComplex>> xs, long samples,
                                uint64_t seed) {
    ExactComplex v = quaternionic ? weak_eval_20(eta, xs) : weak_eval_pp(eta, xs);
    if (!(v.re < 0)) throw std::logic_error("negative witness does not re-evaluate negative");
    Verdict out;
    out.kind = Verdict::Kind::NegativeCertified;
    out.witness = std::move(xs);
    out.samples = samples;
    out.best = v.to_complex().real();
    out.seed = seed;
    return out;
}

inline Verdict sampled_search(const Form<ExactComplex>& eta, int p, bool quaternionic,
                              long k, uint64_t seed) {
    int n = eta.n;
    Rng rng(seed, 0x77eaf00d);
    Verdict out;
    out.seed = seed;
    Rat best(0);
    for (long s = 0; s < k; ++s) {
        std::vector<Vec<ExactComplex>> xs;
        for (int i = 0; i < p; ++i) xs.push_back(random_vector_10(n, rng));
        ExactComplex v = quaternionic ? weak_eval_20(eta, xs) : weak_eval_pp(eta, xs);
        if (v.re < best) best = v.re;
        if (v.re < 0) return negative_verdict(eta, quaternionic, std::move(xs), s + 1, seed);
    }
    out.kind = Verdict::Kind::Unknown;
    out.samples = k;
    out.best = best.get_d();
    return out;
}

inline Verdict descent_search(const Form<ExactComplex>& eta, int p, bool quaternionic,
                              long k, uint64_t seed) {
    int n = eta.n;
    Form<Cd> f = to_float(eta);
    Rng rng(seed, 0xdecade);
    auto value = [&](const std::vector<Vec<Cd>>& xs) {
        std::vector<Vec<Cd>> args;
        for (auto& x : xs) {
            args.push_back(x);
            args.push_back(quaternionic ? apply_J_vec(conj_vec(x)) : conj_vec(x));
        }
        Cd v = eval(f, args);
        if (!quaternionic)
            for (int i = 0; i < p; ++i) v *= Cd(0, -1);
        return v.real();
    };
    auto random_tuple = [&]() {
        std::vector<Vec<Cd>> xs;
        for (int i = 0; i < p; ++i) {
            Vec<Cd> x(n);
            for (int a = 0; a < 2 * n; ++a) x.c[a] = Cd(rng.gauss(), rng.gauss());
            xs.push_back(x);
        }
        return xs;
    };

    std::vector<Vec<Cd>> cur = random_tuple();
    double curval = value(cur);
    long starts = std::max(1l, k / 8);
    for (long s = 1; s < starts; ++s) {
        auto cand = random_tuple();
        double cv = value(cand);
        if (cv < curval) {
            cur = cand;
            curval = cv;
        }
    }
    double step = 0.5;
    for (long it = 0; it < 4 * k; ++it) {
        int i = int(rng.uniform_int(0, p - 1));
        int a = int(rng.uniform_int(0, 2 * n - 1));
        auto cand = cur;
        cand[i].c[a] += Cd(step * rng.gauss(), step * rng.gauss());
        double cv = value(cand);
        if (cv < curval) {
            cur = cand;
            curval = cv;
        } else if (it % 64 == 63) {
            step = std::max(1e-4, step * 0.7);
        }
    }

    Verdict out;
    out.seed = seed;
    out.samples = k;
    out.best = curval;
    if (curval < -1e-9) {
        for (int bits : {16, 24, 40}) {
            std::vector<Vec<ExactComplex>> xs;
            for (auto& x : cur) {
                Vec<ExactComplex> xe(n);
                for (int a = 0; a < 2 * n; ++a)
                    xe.c[a] = ExactComplex(rat_approx(x.c[a].real(), mpz_class(1) << bits),
                                           rat_approx(x.c[a].imag(), mpz_class(1) << bits));
                xs.push_back(xe);
            }
            ExactComplex v = quaternionic ? weak_eval_20(eta, xs) : weak_eval_pp(eta, xs);
            if (v.re < 0) return negative_verdict(eta, quaternionic, std::move(xs), k, seed);
        }
    }
    out.kind = Verdict::Kind::Unknown;
    return out;
}

}  // namespace detail

inline Verdict weakly_positive_2p0(const Form<ExactComplex>& eta, const Strategy& st) {
    int n = eta.n;
    Verdict out;
    out.seed = st.seed;
    if (!is_rho_real(eta)) throw std::invalid_argument("eta must be a real (2p,0)-form");
    if (eta.is_zero()) {
        out.kind = Verdict::Kind::PositiveCertified;
        return out;
    }
    auto bd = eta.bidegree();
    if (bd.second != 0 || (bd.first & 1))
        throw std::invalid_argument("eta must be a real (2p,0)-form");
    int p = bd.first / 2;
    if (p < 1 || p > n) throw std::invalid_argument("degree out of range");

    if (st.kind == Strategy::Kind::Exact) {
        if (p == 1) {
            auto dir = exact_negative_direction(herm_h_matrix(eta));
            if (!dir) {
                out.kind = Verdict::Kind::PositiveCertified;
                return out;
            }
            return detail::negative_verdict(eta, true, {vec_from_coeffs(n, *dir)}, 0, st.seed);
        }
        if (p == n) {
            uint32_t holo = (uint32_t(1) << (2 * n)) - 1;  // dz_1...dz_2n
            auto it = eta.terms.find(holo);
            ExactComplex top = it == eta.terms.end() ? ExactComplex() : it->second;
            if (!top.is_real()) throw std::logic_error("top coefficient of a real form");
            if (top.re >= 0) {
                out.kind = Verdict::Kind::PositiveCertified;
                return out;
            }
            std::vector<Vec<ExactComplex>> xs;
            for (int i = 0; i < n; ++i) xs.push_back(Vec<ExactComplex>::e(n, 2 * i));
            return detail::negative_verdict(eta, true, std::move(xs), 0, st.seed);
        }
        throw std::invalid_argument("exact strategy only decides p = 1 or p = n");
    }
    if (st.kind == Strategy::Kind::Sampled)
        return detail::sampled_search(eta, p, true, st.samples, st.seed);
    return detail::descent_search(eta, p, true, st.samples, st.seed);
}

// weak positivity of eta - h * Omega^p / p!
inline Verdict strictly_positive_2p0(const Form<ExactComplex>& eta, const Rat& h,
                                     const Strategy& st) {
    if (!(h > 0)) throw std::invalid_argument("margin must be positive");
    int n = eta.n;
    if (eta.is_zero()) throw std::invalid_argument("zero form has no margin direction");
    int p = eta.bidegree().first / 2;
    mpz_class pf;
    mpz_fac_ui(pf.get_mpz_t(), static_cast<unsigned long>(p));
    Form<ExactComplex> ref = scale(wedge_pow(Omega_form(n), p), ExactComplex(Rat(h) / Rat(pf)));
    return weakly_positive_2p0(eta - ref, st);
}

inline Verdict weak_positive_pp(const Form<ExactComplex>& rho,
                                const Strategy& st = Strategy::sampled(512, 0x9797)) {
    int n = rho.n;
    Verdict out;
    out.seed = st.seed;
    if (!(conjugate(rho) == rho)) throw std::invalid_argument("rho must be real");
    if (rho.is_zero()) {
        out.kind = Verdict::Kind::PositiveCertified;
        return out;
    }
    auto bd = rho.bidegree();
    if (bd.first != bd.second) throw std::invalid_argument("rho must be a (p,p)-form");
    int p = bd.first;
    if (p < 1 || p > 2 * n) throw std::invalid_argument("degree out of range");

    if (p == 1) {
        auto dir = exact_negative_direction(herm_matrix_11(rho));
        if (!dir) {
            out.kind = Verdict::Kind::PositiveCertified;
            return out;
        }
        return detail::negative_verdict(rho, false, {vec_from_coeffs(n, *dir)}, 0, st.seed);
    }
    if (st.kind == Strategy::Kind::Exact)
        throw std::invalid_argument("exact strategy only decides p = 1");
    if (st.kind == Strategy::Kind::Sampled)
        return detail::sampled_search(rho, p, false, st.samples, st.seed);
    return detail::descent_search(rho, p, false, st.samples, st.seed);
}

// ---- strong positivity ------------------------------------------------------

// Phase-I simplex with Bland's rule: x >= 0 with A x = b, or nullopt
inline std::optional<std::vector<Rat>> nonnegative_solve(
    const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b) {
    int m = int(A.size());
    if (m == 0) return std::vector<Rat>{};
    int nc = int(A[0].size());
    int total = nc + m;
    std::vector<std::vector<Rat>> T(m, std::vector<Rat>(total + 1));
    for (int i = 0; i < m; ++i) {
        bool flip = b[i] < 0;
        for (int j = 0; j < nc; ++j) T[i][j] = flip ? Rat(-A[i][j]) : A[i][j];
        T[i][nc + i] = Rat(1);
        T[i][total] = flip ? Rat(-b[i]) : b[i];
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = nc + i;
    // phase-I objective: minimize the sum of artificials; z holds c_B B^{-1} A
    std::vector<Rat> z(total + 1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= total; ++j) z[j] += T[i][j];
    auto cost = [&](int j) { return j >= nc ? Rat(1) : Rat(0); };

    for (;;) {
        int enter = -1;
        for (int j = 0; j < total; ++j)
            if (z[j] - cost(j) > 0) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        Rat best_ratio;
        for (int i = 0; i < m; ++i) {
            if (!(T[i][enter] > 0)) continue;
            Rat ratio = T[i][total] / T[i][enter];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) throw std::logic_error("phase-I problem unbounded");
        Rat piv = T[leave][enter];
        for (int j = 0; j <= total; ++j) T[leave][j] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rat f = T[i][enter];
            for (int j = 0; j <= total; ++j) T[i][j] -= f * T[leave][j];
        }
        Rat fz = z[enter];
        for (int j = 0; j <= total; ++j) z[j] -= fz * T[leave][j];
        basis[leave] = enter;
    }
    for (int i = 0; i < m; ++i)
        if (basis[i] >= nc && T[i][total] != 0) return std::nullopt;
    std::vector<Rat> x(nc);
    for (int i = 0; i < m; ++i)
        if (basis[i] < nc) x[basis[i]] = T[i][total];
    return x;
}

inline Form<ExactComplex> random_blade_product(int n, int p, Rng& rng) {
    Form<ExactComplex> out = Form<ExactComplex>::unit(n);
    for (int i = 0; i < p; ++i) {
        Form<ExactComplex> xi(n);
        for (int a = 0; a < 2 * n; ++a) xi.add_term(uint32_t(1) << a, rng.small_complex());
        out = wedge(out, wedge(xi, apply_J(conjugate(xi))));
    }
    return out;
}

inline Verdict strongly_positive_2p0(const Form<ExactComplex>& eta, long samples = -1,
                                     uint64_t seed = 0x5712a6) {
    int n = eta.n;
    if (!is_rho_real(eta)) throw std::invalid_argument("eta must be a real (2p,0)-form");
    Verdict out;
    out.seed = seed;
    if (eta.is_zero()) {
        out.kind = Verdict::Kind::PositiveCertified;
        return out;
    }
    auto bd = eta.bidegree();
    if (bd.second != 0 || (bd.first & 1))
        throw std::invalid_argument("eta must be a real (2p,0)-form");
    int p = bd.first / 2;

    if (p == 1 || p == n) return weakly_positive_2p0(eta, Strategy::exact());

    Verdict weak = weakly_positive_2p0(eta, Strategy::sampled(1024, seed ^ 0x77));
    if (weak.kind == Verdict::Kind::NegativeCertified) return weak;

    // generator pool: canonical coordinate-line products plus random blades
    std::vector<Form<ExactComplex>> gens;
    for (uint32_t lines : masks_of_size(n, p)) {
        Form<ExactComplex> g = Form<ExactComplex>::unit(n);
        for (int i = 0; i < n; ++i)
            if (lines & (uint32_t(1) << i))
                g = wedge(g, wedge(Form<ExactComplex>::gen(n, 2 * i),
                                   Form<ExactComplex>::gen(n, 2 * i + 1)));
        gens.push_back(g);
    }
    Rng rng(seed, 0xb1ade5);
    long want = samples < 0 ? 64 * long(binom_rat(2 * n, 2 * p).get_num().get_si()) : samples;
    for (long s = 0; s < want; ++s) {
        Form<ExactComplex> g = random_blade_product(n, p, rng);
        if (!g.is_zero()) gens.push_back(g);
    }

    auto masks = masks_of_size(2 * n, 2 * p);
    std::vector<std::vector<Rat>> A(2 * masks.size(), std::vector<Rat>(gens.size()));
    std::vector<Rat> rhs(2 * masks.size());
    for (std::size_t mi = 0; mi < masks.size(); ++mi) {
        auto it = eta.terms.find(masks[mi]);
        if (it != eta.terms.end()) {
            rhs[2 * mi] = it->second.re;
            rhs[2 * mi + 1] = it->second.im;
        }
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            auto git = gens[gi].terms.find(masks[mi]);
            if (git != gens[gi].terms.end()) {
                A[2 * mi][gi] = git->second.re;
                A[2 * mi + 1][gi] = git->second.im;
            }
        }
    }
    auto sol = nonnegative_solve(A, rhs);
    out.samples = long(gens.size());
    if (sol) {
        Form<ExactComplex> recon(n);
        for (std::size_t gi = 0; gi < gens.size(); ++gi)
            if ((*sol)[gi] != 0) recon += scale(gens[gi], ExactComplex((*sol)[gi]));
        if (!(recon == eta)) throw std::logic_error("feasibility certificate failed to verify");
        out.kind = Verdict::Kind::PositiveCertified;
        return out;
    }
    out.kind = weak.kind;
    out.best = weak.best;
    return out;
}

// ---- transfer between the (1,1) and (2,0) sides -----------------------------

// tau(eta) = -i rproj(eta): real (2,0)-form whenever eta is a real (1,1)-form
inline Form<ExactComplex> tau_transfer(const Form<ExactComplex>& eta) {
    return scale(rproj(eta), -ExactComplex::i());
}

struct TransferReport {
    bool premise = false;
    bool conclusion = false;
    std::string status;  // confirmed | vacuous | violated
};

// omega^{2n-2p}-positivity of eta vs Omega^{n-p}-positivity of tau(eta)
inline TransferReport positivity_transfer_check(const Form<ExactComplex>& eta, int p) {
    int n = eta.n;
    if (p < 1 || p > n) throw std::invalid_argument("p out of range");
    if (!eta.is_zero() && !(conjugate(eta) == eta && eta.pure_bidegree(1, 1)))
        throw std::invalid_argument("eta must be a real (1,1)-form");
    TransferReport rep;
    rep.premise = (p == n) ? true : omega_q_positive(eta, 2 * n - 2 * p, omega_I(n));
    rep.conclusion = (p == n) ? true : Omega_q_positive(tau_transfer(eta), n - p);
    rep.status = !rep.premise ? "vacuous" : (rep.conclusion ? "confirmed" : "violated");
    return rep;
}

}  // namespace qf
