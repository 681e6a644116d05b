#pragma once

// Quaternionic structure on the exterior algebra: the action of I, J, K on
// covectors and forms, the su(2) weight decomposition driven by the Casimir
// element, and the maps rmap / rproj between (p+q,0)-forms taken with respect
// to J and (p,q)-forms taken with respect to I.
//
// Generator action:
//   I dz_k = i dz_k               I dzb_k = -i dzb_k
//   J dz_{2i-1} = dzb_{2i}        J dz_{2i} = -dzb_{2i-1}
//   J dzb_{2i-1} = dz_{2i}        J dzb_{2i} = -dz_{2i-1}
//   K = I o J
// extended multiplicatively to monomials (so L(a ^ b) = L(a) ^ L(b)); the
// coefficient functions of a form are untouched.

#include "form.hpp"
#include "linalg.hpp"
#include "vectors.hpp"

#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

namespace qf {

enum class Struct { I, J, K };

// image of generator slot g under L: (target slot, coefficient)
inline std::pair<int, ExactComplex> gen_image(Struct L, int n, int g) {
    int half = g < 2 * n ? 0 : 1;
    switch (L) {
        case Struct::I:
            return {g, half == 0 ? ExactComplex::i() : -ExactComplex::i()};
        case Struct::J:
            return {jv_partner(n, g), ExactComplex(jv_sign(g))};
        case Struct::K: {
            ExactComplex c = ExactComplex::i() * ExactComplex(jv_sign(g) * (half == 0 ? -1 : 1));
            return {jv_partner(n, g), c};
        }
    }
    throw std::logic_error("bad structure tag");
}

inline ExactComplex ec_times(const ExactComplex& s, const ExactComplex& c) { return s * c; }
inline std::complex<double> ec_times(const std::complex<double>& s, const ExactComplex& c) {
    return s * c.to_complex();
}

// multiplicative extension of L; a signed permutation of the generators, so
// monomials map to signed monomials
template <class S>
Form<S> apply_structure(Struct L, const Form<S>& f) {
    Form<S> out(f.n);
    for (auto& [m, c] : f.terms) {
        ExactComplex factor(1);
        std::vector<int> slots;
        uint32_t mm = m;
        while (mm) {
            int g = std::countr_zero(mm);
            mm &= mm - 1;
            auto [g2, cf] = gen_image(L, f.n, g);
            slots.push_back(g2);
            factor *= cf;
        }
        factor *= ExactComplex(sort_sign(slots));
        uint32_t m2 = 0;
        for (int g : slots) m2 |= uint32_t(1) << g;
        out.add_term(m2, ec_times(c, factor));
    }
    return out;
}

template <class S>
Form<S> apply_I(const Form<S>& f) {
    return apply_structure(Struct::I, f);
}
template <class S>
Form<S> apply_J(const Form<S>& f) {
    return apply_structure(Struct::J, f);
}
template <class S>
Form<S> apply_K(const Form<S>& f) {
    return apply_structure(Struct::K, f);
}

// J^{-1} = (-1)^k J on k-forms (termwise, so mixed degrees are fine)
template <class S>
Form<S> apply_J_inverse(const Form<S>& f) {
    Form<S> out = apply_J(f);
    Form<S> fixed(out.n);
    for (auto& [m, c] : out.terms)
        fixed.add_term(m, (std::popcount(m) & 1) ? -c : c);
    return fixed;
}

// rho(eta) = J(conj eta); an involution on even-degree forms, and the reality
// structure under which (2p,0)-forms are compared with real (p,p)-forms
template <class S>
Form<S> real_structure(const Form<S>& f) {
    return apply_J(conjugate(f));
}

template <class S>
bool is_rho_real(const Form<S>& f) {
    return real_structure(f) == f;
}

// ---- model forms of the flat structure --------------------------------------

inline Form<ExactComplex> omega_I(int n) {
    Form<ExactComplex> f(n);
    for (int k = 0; k < 2 * n; ++k)
        f.add_term((uint32_t(1) << k) | (uint32_t(1) << (2 * n + k)), ExactComplex(Rat(0), Rat(1, 2)));
    return f;
}

// Omega = omega_J + i omega_K = sum dz_{2i-1} ^ dz_{2i}
inline Form<ExactComplex> Omega_form(int n) {
    Form<ExactComplex> f(n);
    for (int i = 0; i < n; ++i)
        f.add_term((uint32_t(1) << (2 * i)) | (uint32_t(1) << (2 * i + 1)), ExactComplex(1));
    return f;
}

inline Form<ExactComplex> omega_J(int n) {
    Form<ExactComplex> om = Omega_form(n);
    return scale(om + conjugate(om), ExactComplex(Rat(1, 2)));
}

inline Form<ExactComplex> omega_K(int n) {
    Form<ExactComplex> om = Omega_form(n);
    return scale(om - conjugate(om), ExactComplex(Rat(0), Rat(-1, 2)));
}

// full ascending monomial dz_1..dz_{2n} ^ dzb_1..dzb_{2n}; equals 4^n times
// the real volume dx_1 ^ dy_1 ^ ... ^ dx_{2n} ^ dy_{2n}
inline Form<ExactComplex> vol_monomial(int n) {
    return Form<ExactComplex>::monomial(n, (uint32_t(1) << (4 * n)) - 1, ExactComplex(1));
}

// ---- su(2) weight machinery -------------------------------------------------

inline std::vector<int> admissible_weights(int n, int k) {
    std::vector<int> ws;
    int hi = std::min(k, 4 * n - k);
    for (int w = k % 2; w <= hi; w += 2) ws.push_back(w);
    return ws;
}

namespace detail {

inline std::vector<uint32_t> degree_basis(int n, int k) {
    std::vector<uint32_t> basis;
    for (uint32_t m = 0; m < (uint32_t(1) << (4 * n)); ++m)
        if (std::popcount(m) == k) basis.push_back(m);
    return basis;
}

inline Matrix<ExactComplex> derivation_matrix(Struct L, int n,
                                              const std::vector<uint32_t>& basis,
                                              const std::unordered_map<uint32_t, int>& index) {
    int d = int(basis.size());
    Matrix<ExactComplex> A(d, d);
    for (int j = 0; j < d; ++j) {
        std::vector<int> gs;
        uint32_t mm = basis[j];
        while (mm) {
            gs.push_back(std::countr_zero(mm));
            mm &= mm - 1;
        }
        for (std::size_t t = 0; t < gs.size(); ++t) {
            auto [g2, cf] = gen_image(L, n, gs[t]);
            bool dup = false;
            for (std::size_t u = 0; u < gs.size(); ++u)
                if (u != t && gs[u] == g2) dup = true;
            if (dup) continue;
            std::vector<int> gs2 = gs;
            gs2[t] = g2;
            int sgn = sort_sign(gs2);
            uint32_t m2 = 0;
            for (int g : gs2) m2 |= uint32_t(1) << g;
            A.at(index.at(m2), j) += ExactComplex(sgn) * cf;
        }
    }
    return A;
}

}  // namespace detail

// Per-(n,k) cache: monomial basis, the Casimir of the derivation action, and
// one projector per admissible weight (Lagrange interpolation in the Casimir,
// using that weight w contributes eigenvalue -w(w+2)). The construction is
// verified on build; a failure here would mean the eigenvalue table is wrong.
struct WeightCache {
    int n = 1, k = 0;
    std::vector<uint32_t> basis;
    std::unordered_map<uint32_t, int> index;
    Matrix<ExactComplex> AI, AJ, AK, casimir;
    std::vector<int> weights;
    std::map<int, Matrix<ExactComplex>> proj;

    WeightCache(int n_, int k_) : n(n_), k(k_) {
        basis = detail::degree_basis(n, k);
        for (int i = 0; i < int(basis.size()); ++i) index.emplace(basis[i], i);
        AI = detail::derivation_matrix(Struct::I, n, basis, index);
        AJ = detail::derivation_matrix(Struct::J, n, basis, index);
        AK = detail::derivation_matrix(Struct::K, n, basis, index);
        casimir = AI * AI + AJ * AJ + AK * AK;
        weights = admissible_weights(n, k);

        int d = int(basis.size());
        auto cw = [](int w) { return ExactComplex(Rat(-w * (w + 2))); };
        Matrix<ExactComplex> total(d, d);
        for (int w : weights) {
            Matrix<ExactComplex> P = Matrix<ExactComplex>::identity(d);
            for (int w2 : weights) {
                if (w2 == w) continue;
                Matrix<ExactComplex> shifted = casimir - Matrix<ExactComplex>::identity(d).scaled(cw(w2));
                P = shifted * P.scaled(ExactComplex(1) / (cw(w) - cw(w2)));
            }
            Matrix<ExactComplex> res = casimir * P - P.scaled(cw(w));
            if (!res.is_zero()) throw std::logic_error("weight projector: wrong eigenvalue");
            if (!(P * P == P)) throw std::logic_error("weight projector: not idempotent");
            proj.emplace(w, P);
            total = total + proj.at(w);
        }
        if (!(total == Matrix<ExactComplex>::identity(d)))
            throw std::logic_error("weight projectors do not resolve the identity");
    }
};

inline const WeightCache& weight_cache(int n, int k) {
    check_n(n);
    if (k < 0 || k > 4 * n) throw std::invalid_argument("degree out of range");
    static std::map<std::pair<int, int>, std::unique_ptr<WeightCache>> cache;
    auto it = cache.find({n, k});
    if (it == cache.end())
        it = cache.emplace(std::pair<int, int>{n, k}, std::make_unique<WeightCache>(n, k)).first;
    return *it->second;
}

template <class S>
Form<S> apply_rational_matrix(const Matrix<ExactComplex>& P, const Form<S>& f,
                              const WeightCache& wc) {
    Form<S> out(f.n);
    for (auto& [m, c] : f.terms) {
        int j = wc.index.at(m);
        for (int i = 0; i < P.r; ++i)
            if (!P.at(i, j).is_zero()) out.add_term(wc.basis[i], ec_times(c, P.at(i, j)));
    }
    return out;
}

template <class S>
std::map<int, Form<S>> weight_decompose(const Form<S>& f) {
    std::map<int, Form<S>> out;
    if (f.is_zero()) return out;
    const WeightCache& wc = weight_cache(f.n, f.degree());
    for (int w : wc.weights) {
        Form<S> part = apply_rational_matrix(wc.proj.at(w), f, wc);
        if (!part.is_zero()) out.emplace(w, std::move(part));
    }
    return out;
}

// projection onto the top-weight (w = k) part; only defined below the middle
// degree, where rmap lands
template <class S>
Form<S> plus_project(const Form<S>& f) {
    if (f.is_zero()) return f;
    int k = f.degree();
    if (k > 2 * f.n) throw std::domain_error("no top-weight projection above degree 2n");
    if (k == 0) return f;
    const WeightCache& wc = weight_cache(f.n, k);
    return apply_rational_matrix(wc.proj.at(k), f, wc);
}

// ---- rmap / rproj -----------------------------------------------------------

// pairwise swap 2i-1 <-> 2i inside the holomorphic index block
inline uint32_t jv_mask(uint32_t m) {
    return ((m & 0x55555555u) << 1) | ((m & 0xAAAAAAAAu) >> 1);
}

// rmap_{p,q}: (p+q,0)-forms (J-complex structure) -> weight-(p+q) part of
// (p,q)-forms (I-complex structure). The coefficient of dz_A ^ dzb_B in the
// unnormalized map is eta(e_A, J ebar_B); dividing by C(p+q,q) makes
// rproj o rmap the identity.
template <class S>
Form<S> rmap(int p, int q, const Form<S>& eta) {
    if (p < 0 || q < 0) throw std::invalid_argument("rmap needs p,q >= 0");
    int k = p + q;
    if (k > 2 * eta.n) throw std::invalid_argument("rmap degree exceeds 2n");
    Form<S> out(eta.n);
    if (eta.is_zero()) return out;
    if (!eta.pure_bidegree(k, 0)) throw std::invalid_argument("rmap needs a (p+q,0)-form");

    Rat inv_b = Rat(1) / binom_rat(k, q);
    for (auto& [m, c] : eta.terms) {
        std::vector<int> bits;
        uint32_t mm = m;
        while (mm) {
            bits.push_back(std::countr_zero(mm));
            mm &= mm - 1;
        }
        for (uint32_t sub = 0; sub < (uint32_t(1) << k); ++sub) {
            if (std::popcount(sub) != p) continue;
            std::vector<int> A, B;
            for (int t = 0; t < k; ++t)
                ((sub >> t) & 1 ? A : B).push_back(bits[t]);
            for (int& b : B) b ^= 1;  // bar indices
            std::sort(B.begin(), B.end());
            std::vector<int> ord = A;
            int s_prod = 1;
            for (int b : B) {
                ord.push_back(b ^ 1);
                if (b & 1) s_prod = -s_prod;
            }
            uint32_t key = 0;
            for (int a : A) key |= uint32_t(1) << a;
            for (int b : B) key |= uint32_t(1) << (2 * eta.n + b);
            Rat w = inv_b * (sort_sign(ord) * s_prod);
            out.add_term(key, ec_times(c, ExactComplex(w)));
        }
    }
    return out;
}

// rproj: substitute dzb_{2i-1} -> dz_{2i}, dzb_{2i} -> -dz_{2i-1} in each
// monomial; wedge-multiplicative, sends (p,q) to (p+q,0), and inverts rmap
// from the left
template <class S>
Form<S> rproj(const Form<S>& alpha) {
    int n2 = 2 * alpha.n;
    uint32_t lomask = (uint32_t(1) << n2) - 1;
    Form<S> out(alpha.n);
    for (auto& [m, c] : alpha.terms) {
        uint32_t A = m & lomask, Bm = m >> n2;
        uint32_t jvB = jv_mask(Bm);
        if (A & jvB) continue;
        std::vector<int> ord;
        uint32_t mm = A;
        while (mm) {
            ord.push_back(std::countr_zero(mm));
            mm &= mm - 1;
        }
        int s_prod = 1;
        mm = Bm;
        while (mm) {
            int b = std::countr_zero(mm);
            mm &= mm - 1;
            ord.push_back(b ^ 1);
            if (b & 1) s_prod = -s_prod;
        }
        out.add_term(A | jvB, ec_times(c, ExactComplex(sort_sign(ord) * s_prod)));
    }
    return out;
}

}  // namespace qf
