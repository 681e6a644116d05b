#pragma once

// Canonical-volume machinery on H^n: the form Phi = Omega^n, the pairing map
// V_{p,q} and its product formula, the constant lambda(n), and the Q / Q* /
// Xi / gamma apparatus used to compute it.

#include "positivity.hpp"

#include <map>
#include <set>
#include <vector>

namespace qf {

inline ExactComplex i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return ExactComplex(1);
        case 1: return ExactComplex::i();
        case 2: return ExactComplex(-1);
        default: return ExactComplex(Rat(0), Rat(-1));
    }
}

inline Form<ExactComplex> canonical_phi(int n) {
    return wedge_pow(Omega_form(n), n);
}

// W = omega_I^2 + omega_J^2 + omega_K^2 (equal to omega_I^2 + Omega ^ conj Omega)
inline Form<ExactComplex> q_form(int n) {
    return wedge(omega_I(n), omega_I(n)) + wedge(omega_J(n), omega_J(n)) +
           wedge(omega_K(n), omega_K(n));
}

inline Form<ExactComplex> q_operator(const Form<ExactComplex>& a) {
    return wedge(a, q_form(a.n));
}

// Euclidean-pairing adjoint of q_operator, monomial by monomial: the
// coefficient of b in q_star(a) is <b ^ W, a> / |b|^2.
inline Form<ExactComplex> q_star(const Form<ExactComplex>& a) {
    int n = a.n;
    Form<ExactComplex> W = q_form(n), out(n);
    std::set<int> degs;
    for (auto& [m, c] : a.terms) degs.insert(std::popcount(m));
    for (int k : degs) {
        if (k < 4) continue;
        Form<ExactComplex> ak(n);
        for (auto& [m, c] : a.terms)
            if (std::popcount(m) == k) ak.add_term(m, c);
        Rat norm2 = Rat(mpz_class(1) << (k - 4));
        for (uint32_t m : masks_of_size(4 * n, k - 4)) {
            Form<ExactComplex> b = Form<ExactComplex>::monomial(n, m, ExactComplex(1));
            ExactComplex v = euclid_pairing(wedge(b, W), ak);
            if (!v.is_zero()) out.add_term(m, v / ExactComplex(norm2));
        }
    }
    return out;
}

// Xi spans ker Q* inside the invariant (n,n)-slice; gamma is the coefficient
// of the canonical image against it.
struct XiGamma {
    Form<ExactComplex> xi;
    std::vector<Rat> coeffs;  // on omega_I^{n-2j} ^ (Omega ^ conj Omega)^j
    Rat gamma;
};

inline XiGamma xi_and_gamma(int n) {
    Form<ExactComplex> oo = wedge(Omega_form(n), conjugate(Omega_form(n)));
    std::vector<Form<ExactComplex>> S;
    for (int j = 0; 2 * j <= n; ++j)
        S.push_back(wedge(wedge_pow(omega_I(n), n - 2 * j), wedge_pow(oo, j)));
    int m = int(S.size());

    // the spanning forms must be independent for the kernel count to mean much
    {
        std::map<uint32_t, int> rowof;
        for (auto& f : S)
            for (auto& [msk, c] : f.terms) rowof.emplace(msk, int(rowof.size()));
        Matrix<ExactComplex> B(int(rowof.size()), m);
        for (int j = 0; j < m; ++j)
            for (auto& [msk, c] : S[j].terms) B.at(rowof.at(msk), j) = c;
        if (rank(B) != m) throw std::logic_error("invariant slice basis is degenerate");
    }

    std::vector<Form<ExactComplex>> QS;
    std::map<uint32_t, int> rowof;
    for (auto& f : S) {
        QS.push_back(q_star(f));
        for (auto& [msk, c] : QS.back().terms) rowof.emplace(msk, int(rowof.size()));
    }
    std::vector<std::vector<ExactComplex>> null;
    if (rowof.empty()) {
        if (m != 1) throw std::logic_error("q_star vanished on a multi-dimensional slice");
        null.push_back({ExactComplex(1)});
    } else {
        Matrix<ExactComplex> A(int(rowof.size()), m);
        for (int j = 0; j < m; ++j)
            for (auto& [msk, c] : QS[j].terms) A.at(rowof.at(msk), j) = c;
        null = kernel(A);
    }
    if (null.size() != 1) throw std::logic_error("ker Q* on the (n,n)-slice is not a line");

    XiGamma out;
    ExactComplex lead = null[0][0];
    if (lead.is_zero()) throw std::logic_error("kernel element misses the leading term");
    Form<ExactComplex> xi(n);
    for (int j = 0; j < m; ++j) {
        ExactComplex c = null[0][j] / lead;
        if (!c.is_real()) throw std::logic_error("kernel coefficient is not rational");
        out.coeffs.push_back(c.re);
        xi += scale(S[j], c);
    }
    out.xi = xi;

    ExactComplex num = euclid_pairing(wedge_pow(omega_I(n), n), xi);
    ExactComplex den = euclid_pairing(xi, xi);
    ExactComplex g = num / den;
    if (!g.is_real()) throw std::logic_error("gamma is not rational");
    out.gamma = g.re;
    return out;
}

// lambda as a ratio of top coefficients, with the canonical image taken in
// its real normalization i^n rmap(n,n,phi)
inline Rat lambda_from_phi(const Form<ExactComplex>& phi) {
    int n = phi.n;
    if (!phi.pure_bidegree(2 * n, 0) || phi.is_zero())
        throw std::invalid_argument("phi must be a nonzero (2n,0)-form");
    Form<ExactComplex> D = scale(rmap(n, n, phi), i_power(n));
    ExactComplex num = top_coefficient(wedge(phi, conjugate(phi)));
    ExactComplex den = top_coefficient(wedge(D, D));
    if (den.is_zero()) throw std::domain_error("canonical image squares to zero");
    ExactComplex r = num / den;
    if (!r.is_real()) throw std::logic_error("lambda is not rational");
    return r.re;
}

// V_{p,q}(eta): the unique (n+p, n+q)-form with V ^ alpha = eta ^ rproj(alpha)
// ^ conj(Phi) for every test monomial alpha of bidegree (n-p, n-q). The wedge
// pairing against the complementary bidegree is perfect, so the system is
// diagonal in the monomial basis.
inline Form<ExactComplex> vmap_via_pairing(int p, int q, const Form<ExactComplex>& eta) {
    int n = eta.n;
    if (p < 0 || q < 0 || p > n || q > n) throw std::invalid_argument("p,q out of range");
    if (!eta.is_zero() && !eta.pure_bidegree(p + q, 0))
        throw std::invalid_argument("eta must be a (p+q,0)-form");
    Form<ExactComplex> phibar = conjugate(canonical_phi(n));
    uint32_t full = (uint32_t(1) << (4 * n)) - 1;
    Form<ExactComplex> out(n);
    for (uint32_t lo : masks_of_size(2 * n, n - p))
        for (uint32_t hi : masks_of_size(2 * n, n - q)) {
            uint32_t ma = lo | (hi << (2 * n));
            Form<ExactComplex> alpha = Form<ExactComplex>::monomial(n, ma, ExactComplex(1));
            ExactComplex rhs =
                top_coefficient(wedge(wedge(eta, rproj(alpha)), phibar));
            uint32_t mv = full ^ ma;
            ExactComplex sgn = top_coefficient(
                wedge(Form<ExactComplex>::monomial(n, mv, ExactComplex(1)), alpha));
            if (sgn.is_zero()) throw std::logic_error("complementary pairing degenerated");
            if (!rhs.is_zero()) out.add_term(mv, rhs / sgn);
        }
    return out;
}

struct CanonicalData {
    int n = 1;
    Form<ExactComplex> phi{1};
    Form<ExactComplex> omegaI{1}, omegaJ{1}, omegaK{1};
    Form<ExactComplex> xi{1};
    std::vector<Rat> xi_coeffs;
    Rat gamma = 0;
    Rat lambda = 0;
    Form<ExactComplex> rnn_phi{1};  // rmap(n,n,phi)
    Form<ExactComplex> V00{1};
};

// built once per n; every consistency link between the pieces is re-verified
// during construction
inline const CanonicalData& canonical_data(int n) {
    static std::map<int, CanonicalData> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    CanonicalData cd;
    cd.n = n;
    cd.phi = canonical_phi(n);
    cd.omegaI = omega_I(n);
    cd.omegaJ = omega_J(n);
    cd.omegaK = omega_K(n);
    XiGamma xg = xi_and_gamma(n);
    cd.xi = xg.xi;
    cd.xi_coeffs = xg.coeffs;
    cd.gamma = xg.gamma;
    cd.rnn_phi = rmap(n, n, cd.phi);

    Form<ExactComplex> D = scale(cd.rnn_phi, i_power(n));
    if (!(D == scale(cd.xi, ExactComplex(cd.gamma))))
        throw std::logic_error("canonical image is not gamma Xi");

    cd.lambda = lambda_from_phi(cd.phi);
    if (!(cd.lambda > 0)) throw std::logic_error("lambda is not positive");

    cd.V00 = vmap_via_pairing(0, 0, Form<ExactComplex>::unit(n));
    // product formula at (0,0), with the convention constant (-1)^n
    ExactComplex c0 = ExactComplex(cd.lambda);
    if (n & 1) c0 = -c0;
    if (!(cd.V00 == scale(cd.rnn_phi, c0)))
        throw std::logic_error("V00 is not (-1)^n lambda rmap(n,n,phi)");

    auto [pos, _] = cache.emplace(n, std::move(cd));
    return pos->second;
}

inline Rat lambda_constant(int n, int max_n = 3) {
    if (n < 1 || n > max_n) throw std::invalid_argument("n out of the configured range");
    return canonical_data(n).lambda;
}

template <class S>
Form<S> vmap_with(int p, int q, const Form<S>& eta, const Form<S>& v00) {
    return wedge(rmap(p, q, eta), v00);
}

inline Form<ExactComplex> vmap(int p, int q, const Form<ExactComplex>& eta) {
    return vmap_with(p, q, eta, canonical_data(eta.n).V00);
}

}  // namespace qf
