#pragma once

// Tangent vectors of the flat model and evaluation of forms on them. A vector
// stores 4n components over the complexified frame (e_1..e_2n, eb_1..eb_2n),
// the dual frame of the covector generators: dz_a(e_b) = delta_ab, and a
// k-form evaluates on k vectors as det[gen_i(v_j)] summed over terms — no
// factorial normalization.
//
// The complex structures act on vectors by
//   I e_k = i e_k, I eb_k = -i eb_k
//   J e_{2i-1} = eb_{2i},  J e_{2i} = -eb_{2i-1},
//   J eb_{2i-1} = e_{2i},  J eb_{2i} = -e_{2i-1}
// and K = I o J. The quaternionic conjugation is sigma(v) = J(conj(v)).

#include "form.hpp"
#include "linalg.hpp"
#include "rng.hpp"

#include <vector>

namespace qf {

template <class S>
struct Vec {
    int n = 1;
    std::vector<S> c;  // size 4n

    Vec() = default;
    explicit Vec(int n_) : n(n_), c(std::size_t(4) * n_, ScalarOps<S>::zero()) { check_n(n_); }

    static Vec basis(int n, int g) {
        Vec v(n);
        v.c[g] = ScalarOps<S>::one();
        return v;
    }
    static Vec e(int n, int a) { return basis(n, a); }            // a in [0,2n)
    static Vec ebar(int n, int a) { return basis(n, 2 * n + a); }  // a in [0,2n)

    // real coordinate vectors d/dx_a, d/dy_a (a in [0,2n))
    static Vec dx(int n, int a) {
        Vec v(n);
        v.c[a] = ScalarOps<S>::one();
        v.c[2 * n + a] = ScalarOps<S>::one();
        return v;
    }
    static Vec dy(int n, int a) {
        Vec v(n);
        v.c[a] = ScalarOps<S>::imag_unit();
        v.c[2 * n + a] = -ScalarOps<S>::imag_unit();
        return v;
    }

    bool is_zero() const {
        for (auto& x : c)
            if (!ScalarOps<S>::is_zero(x)) return false;
        return true;
    }

    Vec operator-() const {
        Vec r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    Vec& operator+=(const Vec& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(const S& s, Vec v) {
        for (auto& x : v.c) x = s * x;
        return v;
    }
    friend bool operator==(const Vec& a, const Vec& b) { return a.n == b.n && a.c == b.c; }
};

template <class S>
Vec<S> conj_vec(const Vec<S>& v) {
    Vec<S> r(v.n);
    for (int a = 0; a < 2 * v.n; ++a) {
        r.c[a] = ScalarOps<S>::conj(v.c[2 * v.n + a]);
        r.c[2 * v.n + a] = ScalarOps<S>::conj(v.c[a]);
    }
    return r;
}

// J table on frame indices: slot g goes to slot jv_slot(g) with sign
// jv_sign(g). Pairs (2i-1, 2i) swap within each half, crossing halves.
inline int jv_partner(int n, int g) {
    int half = g < 2 * n ? 0 : 1;
    int a = g - half * 2 * n;         // 0-based coordinate
    int b = (a & 1) ? a - 1 : a + 1;  // partner coordinate
    return (1 - half) * 2 * n + b;
}
inline int jv_sign(int g) { return (g & 1) ? -1 : 1; }  // second-of-pair picks up -1

template <class S>
Vec<S> apply_I_vec(const Vec<S>& v) {
    Vec<S> r(v.n);
    S i = ScalarOps<S>::imag_unit();
    for (int a = 0; a < 2 * v.n; ++a) {
        r.c[a] = i * v.c[a];
        r.c[2 * v.n + a] = -(i * v.c[2 * v.n + a]);
    }
    return r;
}

template <class S>
Vec<S> apply_J_vec(const Vec<S>& v) {
    Vec<S> r(v.n);
    for (int g = 0; g < 4 * v.n; ++g) {
        if (ScalarOps<S>::is_zero(v.c[g])) continue;
        S x = v.c[g];
        if (jv_sign(g) < 0) x = -x;
        r.c[jv_partner(v.n, g)] += x;
    }
    return r;
}

template <class S>
Vec<S> apply_K_vec(const Vec<S>& v) {
    return apply_I_vec(apply_J_vec(v));
}

template <class S>
Vec<S> sigma(const Vec<S>& v) {
    return apply_J_vec(conj_vec(v));
}

// det-convention evaluation: (xi_1 ^ ... ^ xi_k)(v_1, ..., v_k) = det[xi_i(v_j)].
template <class S>
S eval(const Form<S>& f, const std::vector<Vec<S>>& vs) {
    S acc = ScalarOps<S>::zero();
    for (auto& [mask, coeff] : f.terms) {
        int k = std::popcount(mask);
        if (std::size_t(k) != vs.size()) continue;  // wrong-arity terms evaluate to 0
        Matrix<S> m(k, k);
        int row = 0;
        uint32_t mm = mask;
        while (mm) {
            int g = std::countr_zero(mm);
            mm &= mm - 1;
            for (int j = 0; j < k; ++j) m.at(row, j) = vs[j].c[g];
            ++row;
        }
        acc += coeff * det(std::move(m));
    }
    return acc;
}

// random vector supported on the holomorphic half (e_1..e_2n)
inline Vec<ExactComplex> random_vector_10(int n, Rng& rng, long max_num = 5, long max_den = 3) {
    Vec<ExactComplex> v(n);
    for (int a = 0; a < 2 * n; ++a) v.c[a] = rng.small_complex(max_num, max_den);
    return v;
}

inline Vec<ExactComplex> random_vector(int n, Rng& rng, long max_num = 5, long max_den = 3) {
    Vec<ExactComplex> v(n);
    for (int g = 0; g < 4 * n; ++g) v.c[g] = rng.small_complex(max_num, max_den);
    return v;
}

}  // namespace qf
