#pragma once

// Sparse exterior algebra of flat H^n ~ C^{2n}, complexified. Generators are
// indexed 0..4n-1: g in [0,2n) is dz_{g+1}, g in [2n,4n) is the conjugate
// dzb_{g-2n+1}. A monomial is a bitmask over those slots, wedged in increasing
// index order; that ordering (dz_1 < ... < dz_2n < dzb_1 < ... < dzb_2n) is
// the canonical one every sign in the library is normalized to.

#include "scalars.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qf {

constexpr int MAX_N = 6;

struct Space {
    int n;
    explicit Space(int n_) : n(n_) {
        if (n < 1 || n > MAX_N) throw std::invalid_argument("quaternionic dimension out of range");
    }
    int gens() const { return 4 * n; }
};

inline void check_n(int n) {
    if (n < 1 || n > MAX_N) throw std::invalid_argument("quaternionic dimension out of range");
}

inline std::string gen_name(int n, int g) {
    if (g < 2 * n) return "z" + std::to_string(g + 1);
    return "zb" + std::to_string(g - 2 * n + 1);
}

inline int gen_index(int n, const std::string& name) {
    bool bar = name.size() > 1 && name[0] == 'z' && name[1] == 'b';
    std::size_t digits = bar ? 2 : 1;
    if (name.empty() || name[0] != 'z' || name.size() == digits)
        throw std::invalid_argument("unknown generator: " + name);
    int idx = 0;
    for (std::size_t i = digits; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9') throw std::invalid_argument("unknown generator: " + name);
        idx = idx * 10 + (name[i] - '0');
        if (idx > 4 * MAX_N) throw std::invalid_argument("generator index out of range: " + name);
    }
    if (idx < 1 || idx > 2 * n) throw std::invalid_argument("generator index out of range: " + name);
    return bar ? 2 * n + idx - 1 : idx - 1;
}

// Sign of merging two disjoint ascending monomials a, b into ascending order,
// with a's slots to the left of b's.
inline int merge_sign(uint32_t a, uint32_t b) {
    int inv = 0;
    uint32_t bb = b;
    while (bb) {
        int j = std::countr_zero(bb);
        bb &= bb - 1;
        inv += std::popcount(a >> (j + 1));
    }
    return (inv & 1) ? -1 : 1;
}

// Permutation sign sorting the list `idx` ascending (entries distinct).
inline int sort_sign(const std::vector<int>& idx) {
    int inv = 0;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
            if (idx[i] > idx[j]) ++inv;
    return (inv & 1) ? -1 : 1;
}

template <class S>
struct Form {
    int n = 1;
    std::map<uint32_t, S> terms;

    Form() = default;
    explicit Form(int n_) : n(n_) { check_n(n); }

    static Form zero(int n) { return Form(n); }
    static Form unit(int n) { return monomial(n, 0, ScalarOps<S>::one()); }
    static Form monomial(int n, uint32_t mask, const S& c) {
        Form f(n);
        f.add_term(mask, c);
        return f;
    }
    static Form gen(int n, int g) { return monomial(n, uint32_t(1) << g, ScalarOps<S>::one()); }

    bool is_zero() const { return terms.empty(); }

    void add_term(uint32_t mask, const S& c) {
        if (ScalarOps<S>::is_zero(c)) return;
        auto it = terms.find(mask);
        if (it == terms.end()) {
            terms.emplace(mask, c);
        } else {
            it->second += c;
            if (ScalarOps<S>::is_zero(it->second)) terms.erase(it);
        }
    }

    // Total degree; requires homogeneous content.
    int degree() const {
        int d = -1;
        for (auto& [m, c] : terms) {
            int k = std::popcount(m);
            if (d == -1) d = k;
            else if (d != k) throw std::domain_error("form is not homogeneous");
        }
        return d;  // -1 for the zero form
    }

    bool homogeneous() const {
        int d = -1;
        for (auto& [m, c] : terms) {
            int k = std::popcount(m);
            if (d == -1) d = k;
            else if (d != k) return false;
        }
        return true;
    }

    std::pair<int, int> term_bidegree(uint32_t mask) const {
        uint32_t lo = mask & ((uint32_t(1) << (2 * n)) - 1);
        return {std::popcount(lo), std::popcount(mask >> (2 * n))};
    }

    // (p,q) if every term agrees, else throws.
    std::pair<int, int> bidegree() const {
        std::pair<int, int> pq{-1, -1};
        for (auto& [m, c] : terms) {
            auto b = term_bidegree(m);
            if (pq.first == -1) pq = b;
            else if (pq != b) throw std::domain_error("form is not of pure bidegree");
        }
        return pq;
    }

    bool pure_bidegree(int p, int q) const {
        for (auto& [m, c] : terms)
            if (term_bidegree(m) != std::pair<int, int>{p, q}) return false;
        return true;
    }

    Form operator-() const {
        Form r(n);
        for (auto& [m, c] : terms) r.terms.emplace(m, -c);
        return r;
    }
    Form& operator+=(const Form& o) {
        if (n != o.n) throw std::invalid_argument("mismatched spaces");
        for (auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }
    Form& operator-=(const Form& o) {
        if (n != o.n) throw std::invalid_argument("mismatched spaces");
        for (auto& [m, c] : o.terms) add_term(m, -c);
        return *this;
    }
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend bool operator==(const Form& a, const Form& b) { return a.n == b.n && a.terms == b.terms; }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }
};

template <class S>
Form<S> scale(const Form<S>& a, const S& c) {
    Form<S> r(a.n);
    if (ScalarOps<S>::is_zero(c)) return r;
    for (auto& [m, co] : a.terms) r.add_term(m, co * c);
    return r;
}

template <class S>
Form<S> operator*(const S& c, const Form<S>& a) {
    return scale(a, c);
}

template <class S>
Form<S> wedge(const Form<S>& a, const Form<S>& b) {
    if (a.n != b.n) throw std::invalid_argument("mismatched spaces");
    Form<S> r(a.n);
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) {
            if (ma & mb) continue;
            S c = ca * cb;
            if (merge_sign(ma, mb) < 0) c = -c;
            r.add_term(ma | mb, c);
        }
    return r;
}

template <class S>
Form<S> wedge(const Form<S>& a, const Form<S>& b, const Form<S>& c) {
    return wedge(wedge(a, b), c);
}

template <class S>
Form<S> wedge_pow(const Form<S>& a, int k) {
    Form<S> r = Form<S>::unit(a.n);
    for (int i = 0; i < k; ++i) r = wedge(r, a);
    return r;
}

// Complex conjugation: swaps dz_k <-> dzb_k, conjugates coefficients. On a
// canonical (p,q)-monomial the half-swap costs the sign (-1)^{pq}.
template <class S>
Form<S> conjugate(const Form<S>& a) {
    uint32_t lomask = (uint32_t(1) << (2 * a.n)) - 1;
    Form<S> r(a.n);
    for (auto& [m, c] : a.terms) {
        uint32_t lo = m & lomask, hi = m >> (2 * a.n);
        uint32_t nm = (lo << (2 * a.n)) | hi;
        int p = std::popcount(lo), q = std::popcount(hi);
        S nc = ScalarOps<S>::conj(c);
        if ((p * q) & 1) nc = -nc;
        r.add_term(nm, nc);
    }
    return r;
}

template <class S>
std::map<std::pair<int, int>, Form<S>> bidegree_decompose(const Form<S>& a) {
    if (!a.homogeneous()) throw std::domain_error("bidegree decomposition needs homogeneous degree");
    std::map<std::pair<int, int>, Form<S>> out;
    for (auto& [m, c] : a.terms) {
        auto pq = a.term_bidegree(m);
        auto it = out.find(pq);
        if (it == out.end()) it = out.emplace(pq, Form<S>(a.n)).first;
        it->second.add_term(m, c);
    }
    return out;
}

template <class S>
Form<S> component(const Form<S>& a, int p, int q) {
    Form<S> r(a.n);
    for (auto& [m, c] : a.terms)
        if (a.term_bidegree(m) == std::pair<int, int>{p, q}) r.add_term(m, c);
    return r;
}

// Hermitian inner product; canonical monomials are orthogonal with
// |monomial|^2 = c1^degree, c1 = 2 (so dx, dy have unit norm). Conjugate-linear
// in the first slot.
template <class S>
S euclid_pairing(const Form<S>& a, const Form<S>& b) {
    if (a.n != b.n) throw std::invalid_argument("mismatched spaces");
    if (!a.is_zero() && !b.is_zero() && a.degree() != b.degree())
        throw std::invalid_argument("pairing needs equal degrees");
    S acc = ScalarOps<S>::zero();
    for (auto& [m, ca] : a.terms) {
        auto it = b.terms.find(m);
        if (it == b.terms.end()) continue;
        S v = ScalarOps<S>::conj(ca) * it->second;
        int k = std::popcount(m);
        acc += v * ScalarOps<S>::from_rat(Rat(int64_t(1) << k));
    }
    return acc;
}

template <class S>
S norm_sq(const Form<S>& a) {
    return euclid_pairing(a, a);
}

// Coefficient on the full top monomial dz_1...dz_2n ^ dzb_1...dzb_2n. The
// identification with a real volume is M_vol = 4^n * (dx_1^dy_1^...): callers
// that need a literal real-volume normalization multiply by 4^n themselves.
template <class S>
S top_coefficient(const Form<S>& a) {
    uint32_t full = (a.n >= 8) ? ~uint32_t(0) : ((uint32_t(1) << (4 * a.n)) - 1);
    auto it = a.terms.find(full);
    return it == a.terms.end() ? ScalarOps<S>::zero() : it->second;
}

template <class S>
Form<std::complex<double>> to_float(const Form<S>& a);

template <>
inline Form<std::complex<double>> to_float(const Form<ExactComplex>& a) {
    Form<std::complex<double>> r(a.n);
    for (auto& [m, c] : a.terms) r.add_term(m, c.to_complex());
    return r;
}

}  // namespace qf
