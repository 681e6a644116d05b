#pragma once

// Forms with polynomial coefficients and the differential operators acting on
// them. A PolyScalar is a polynomial in z_1..z_{2n}, zb_1..zb_{2n}; variable
// id 2a encodes z_{a+1}, id 2a+1 encodes zb_{a+1}, and a monomial is the
// sorted multiset of its variable ids.
//
// del_J := J o delbar o J^{-1} with J^{-1} = (-1)^deg J; J twists only the
// covector frame and leaves coefficient functions alone.

#include "quat_ops.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace qf {

using PolyKey = std::vector<int>;

struct PolyScalar {
    std::map<PolyKey, ExactComplex> t;

    PolyScalar() = default;
    PolyScalar(int v) {
        if (v) t[{}] = ExactComplex(v);
    }
    explicit PolyScalar(const ExactComplex& c) {
        if (!c.is_zero()) t[{}] = c;
    }

    static PolyScalar var(int id) {
        PolyScalar p;
        p.t[{id}] = ExactComplex(1);
        return p;
    }

    bool is_zero() const { return t.empty(); }

    void add(const PolyKey& k, const ExactComplex& c) {
        auto it = t.find(k);
        if (it == t.end()) {
            if (!c.is_zero()) t.emplace(k, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }

    PolyScalar operator-() const {
        PolyScalar r;
        for (auto& [k, c] : t) r.t.emplace(k, -c);
        return r;
    }
    PolyScalar& operator+=(const PolyScalar& o) {
        for (auto& [k, c] : o.t) add(k, c);
        return *this;
    }
    PolyScalar& operator-=(const PolyScalar& o) {
        for (auto& [k, c] : o.t) add(k, -c);
        return *this;
    }
    friend PolyScalar operator+(PolyScalar a, const PolyScalar& b) { return a += b; }
    friend PolyScalar operator-(PolyScalar a, const PolyScalar& b) { return a -= b; }
    friend PolyScalar operator*(const PolyScalar& a, const PolyScalar& b) {
        PolyScalar r;
        for (auto& [ka, ca] : a.t)
            for (auto& [kb, cb] : b.t) {
                PolyKey k = ka;
                k.insert(k.end(), kb.begin(), kb.end());
                std::sort(k.begin(), k.end());
                r.add(k, ca * cb);
            }
        return r;
    }
    PolyScalar& operator*=(const PolyScalar& o) { return *this = *this * o; }
    friend bool operator==(const PolyScalar& a, const PolyScalar& b) { return a.t == b.t; }
    friend bool operator!=(const PolyScalar& a, const PolyScalar& b) { return !(a == b); }

    PolyScalar conj() const {
        PolyScalar r;
        for (auto& [k, c] : t) {
            PolyKey k2 = k;
            for (int& v : k2) v ^= 1;
            std::sort(k2.begin(), k2.end());
            r.add(k2, c.conj());
        }
        return r;
    }

    std::complex<double> eval(const std::vector<std::complex<double>>& z) const {
        std::complex<double> acc = 0.0;
        for (auto& [k, c] : t) {
            std::complex<double> m = c.to_complex();
            for (int v : k) m *= (v & 1) ? std::conj(z[v >> 1]) : z[v >> 1];
            acc += m;
        }
        return acc;
    }
};

template <>
struct ScalarOps<PolyScalar> {
    static PolyScalar zero() { return PolyScalar(); }
    static PolyScalar one() { return PolyScalar(1); }
    static PolyScalar imag_unit() { return PolyScalar(ExactComplex::i()); }
    static PolyScalar conj(const PolyScalar& x) { return x.conj(); }
    static bool is_zero(const PolyScalar& x) { return x.is_zero(); }
    static PolyScalar from_rat(const Rat& r) { return PolyScalar(ExactComplex(r)); }
    static PolyScalar from_int(long v) { return PolyScalar(ExactComplex(Rat(v))); }
};

inline PolyScalar ec_times(const PolyScalar& s, const ExactComplex& c) {
    PolyScalar r;
    if (c.is_zero()) return r;
    for (auto& [k, sc] : s.t) r.t.emplace(k, sc * c);
    return r;
}

// coordinate polynomials, 0-based coordinate index
inline PolyScalar poly_z(int a) { return PolyScalar::var(2 * a); }
inline PolyScalar poly_zb(int a) { return PolyScalar::var(2 * a + 1); }

inline PolyScalar pdiff(const PolyScalar& p, int var) {
    PolyScalar r;
    for (auto& [k, c] : p.t) {
        int mult = 0;
        for (int v : k) mult += (v == var);
        if (!mult) continue;
        PolyKey k2 = k;
        k2.erase(std::find(k2.begin(), k2.end(), var));
        r.add(k2, c * ExactComplex(mult));
    }
    return r;
}

using PolyForm = Form<PolyScalar>;

inline PolyForm poly_form(int n, const PolyScalar& f) {
    PolyForm pf(n);
    pf.add_term(0, f);
    return pf;
}

inline PolyForm lift(const Form<ExactComplex>& a) {
    PolyForm pf(a.n);
    for (auto& [m, c] : a.terms) pf.add_term(m, PolyScalar(c));
    return pf;
}

inline Form<std::complex<double>> eval_form(const PolyForm& a,
                                            const std::vector<std::complex<double>>& z) {
    Form<std::complex<double>> r(a.n);
    for (auto& [m, c] : a.terms) r.add_term(m, c.eval(z));
    return r;
}

inline PolyForm del(const PolyForm& f) {
    PolyForm out(f.n);
    for (auto& [m, c] : f.terms)
        for (int k = 0; k < 2 * f.n; ++k) {
            if (m & (uint32_t(1) << k)) continue;
            PolyScalar d = pdiff(c, 2 * k);
            if (d.is_zero()) continue;
            int sgn = merge_sign(uint32_t(1) << k, m);
            out.add_term(m | (uint32_t(1) << k), sgn < 0 ? -d : d);
        }
    return out;
}

inline PolyForm delbar(const PolyForm& f) {
    PolyForm out(f.n);
    for (auto& [m, c] : f.terms)
        for (int k = 0; k < 2 * f.n; ++k) {
            uint32_t slot = uint32_t(1) << (2 * f.n + k);
            if (m & slot) continue;
            PolyScalar d = pdiff(c, 2 * k + 1);
            if (d.is_zero()) continue;
            int sgn = merge_sign(slot, m);
            out.add_term(m | slot, sgn < 0 ? -d : d);
        }
    return out;
}

inline PolyForm d(const PolyForm& f) { return del(f) + delbar(f); }

inline PolyForm del_J(const PolyForm& f) { return apply_J(delbar(apply_J_inverse(f))); }

// eta = del del_J phi for a real potential phi; a real (2,0)-form
inline PolyForm hkt_from_potential(int n, const PolyScalar& phi) {
    if (phi.conj() != phi) throw std::invalid_argument("potential must be real");
    return del(del_J(poly_form(n, phi)));
}

// Hodge components of the quaternionic Dolbeault differential on the
// top-weight subspace: d10 = Pi_+((da)^{p+1,q}), d01 = Pi_+((da)^{p,q+1})
inline std::pair<PolyForm, PolyForm> d_plus_components(const PolyForm& a) {
    if (a.is_zero()) return {a, a};
    auto [p, q] = a.bidegree();
    if (p + q >= 2 * a.n) throw std::domain_error("d_plus needs degree below 2n");
    if (!(plus_project(a) == a)) throw std::invalid_argument("d_plus needs a top-weight form");
    PolyForm da = d(a);
    return {plus_project(component(da, p + 1, q)), plus_project(component(da, p, q + 1))};
}

inline PolyForm d10(const PolyForm& a) { return d_plus_components(a).first; }
inline PolyForm d01(const PolyForm& a) { return d_plus_components(a).second; }

}  // namespace qf
