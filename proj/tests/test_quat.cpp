#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qforms/quat_ops.hpp>

using namespace qf;

using EC = ExactComplex;
using F = Form<EC>;
using V = Vec<EC>;

namespace {

F random_pq_form(int n, int p, int q, Rng& rng, int terms = 4) {
    F f(n);
    for (int t = 0; t < terms; ++t) {
        uint32_t lo = 0, hi = 0;
        while (std::popcount(lo) < p) lo |= uint32_t(1) << rng.uniform_int(0, 2 * n - 1);
        while (std::popcount(hi) < q) hi |= uint32_t(1) << rng.uniform_int(0, 2 * n - 1);
        f.add_term(lo | (hi << (2 * n)), rng.small_complex());
    }
    return f;
}

F dz(int n, int k) { return F::gen(n, k - 1); }        // 1-based
F dzb(int n, int k) { return F::gen(n, 2 * n + k - 1); }

}  // namespace

TEST_CASE("structure action on generators") {
    int n = 2;
    CHECK(apply_I(dz(n, 1)) == scale(dz(n, 1), EC::i()));
    CHECK(apply_I(dzb(n, 1)) == scale(dzb(n, 1), -EC::i()));
    CHECK(apply_J(dz(n, 1)) == dzb(n, 2));
    CHECK(apply_J(dz(n, 2)) == -dzb(n, 1));
    CHECK(apply_J(dzb(n, 1)) == dz(n, 2));
    CHECK(apply_J(dzb(n, 2)) == -dz(n, 1));
    CHECK(apply_J(dz(n, 3)) == dzb(n, 4));
    CHECK(apply_K(dz(n, 1)) == scale(dzb(n, 2), -EC::i()));

    CHECK(apply_J(wedge(dz(n, 1), dz(n, 2))) == wedge(dzb(n, 1), dzb(n, 2)));
    CHECK(apply_I(wedge(dz(n, 1), dz(n, 2))) == scale(wedge(dz(n, 1), dz(n, 2)), EC(-1)));
}

TEST_CASE("structure action identities") {
    for (int n : {1, 2}) {
        Rng rng(21);
        for (int t = 0; t < 15; ++t) {
            int p = int(rng.uniform_int(0, 2)), q = int(rng.uniform_int(0, 2));
            F a = random_pq_form(n, p, q, rng);
            int sgn = ((p + q) % 2) ? -1 : 1;
            CHECK(apply_J(apply_J(a)) == scale(a, EC(sgn)));
            CHECK(apply_I(a) == [&] {
                int m = ((p - q) % 4 + 4) % 4;
                EC c(1);
                for (int i = 0; i < m; ++i) c *= EC::i();
                return scale(a, c);
            }());
            CHECK(apply_K(a) == apply_I(apply_J(a)));
            CHECK(apply_J(apply_J_inverse(a)) == a);
            CHECK(apply_J_inverse(apply_J(a)) == a);
            F b = random_pq_form(n, 1, 0, rng);
            CHECK(apply_J(wedge(a, b)) == wedge(apply_J(a), apply_J(b)));
        }
    }
}

TEST_CASE("real structure") {
    int n = 2;
    F Om = Omega_form(n);
    CHECK(is_rho_real(Om));
    CHECK(is_rho_real(omega_J(n)));
    CHECK(conjugate(omega_I(n)) == omega_I(n));
    CHECK(conjugate(omega_J(n)) == omega_J(n));
    CHECK(conjugate(omega_K(n)) == omega_K(n));
    CHECK(Om == omega_J(n) + scale(omega_K(n), EC::i()));

    Rng rng(22);
    for (int t = 0; t < 15; ++t) {
        F a = random_pq_form(n, 2, 0, rng);
        CHECK(real_structure(real_structure(a)) == a);
        F re = a + real_structure(a);
        F im = scale(a - real_structure(a), EC::i());
        CHECK(is_rho_real(re));
        CHECK(is_rho_real(im));
        CHECK(scale(re, EC(Rat(1, 2))) - scale(im, EC(Rat(0), Rat(1, 2))) == a);
    }
}

TEST_CASE("casimir on one-forms") {
    for (int n : {1, 2}) {
        const WeightCache& wc = weight_cache(n, 1);
        CHECK(wc.casimir == Matrix<EC>::identity(4 * n).scaled(EC(-3)));
        CHECK(wc.weights == std::vector<int>{1});
    }
}

TEST_CASE("derivation commutators") {
    for (auto [n, k] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
        const WeightCache& wc = weight_cache(n, k);
        CHECK(wc.AI * wc.AJ - wc.AJ * wc.AI == wc.AK.scaled(EC(2)));
        CHECK(wc.AJ * wc.AK - wc.AK * wc.AJ == wc.AI.scaled(EC(2)));
        CHECK(wc.AK * wc.AI - wc.AI * wc.AK == wc.AJ.scaled(EC(2)));
        // Casimir commutes with the action
        CHECK(wc.casimir * wc.AI == wc.AI * wc.casimir);
        CHECK(wc.casimir * wc.AJ == wc.AJ * wc.casimir);
    }
}

TEST_CASE("derivation of a two-form") {
    int n = 1;
    const WeightCache& wc = weight_cache(n, 2);
    F om = wedge(dz(n, 1), dz(n, 2));
    // A_I is i(p-q) on a (p,q)-monomial
    F ai(n);
    for (auto& [m, c] : om.terms) {
        int j = wc.index.at(m);
        for (int i = 0; i < int(wc.basis.size()); ++i)
            if (!wc.AI.at(i, j).is_zero()) ai.add_term(wc.basis[i], wc.AI.at(i, j) * c);
    }
    CHECK(ai == scale(om, EC(Rat(0), Rat(2))));
}

TEST_CASE("admissible weights and spectra") {
    auto expect = [](int n, int k, std::vector<int> want) {
        CHECK(admissible_weights(n, k) == want);
        // cache construction verifies the annihilating polynomial; occurrence
        // means each projector is nonzero
        const WeightCache& wc = weight_cache(n, k);
        for (int w : wc.weights) CHECK(rank(wc.proj.at(w)) > 0);
    };
    expect(1, 0, {0});
    expect(1, 1, {1});
    expect(1, 2, {0, 2});
    expect(1, 3, {1});
    expect(1, 4, {0});
    expect(2, 2, {0, 2});
    expect(2, 3, {1, 3});
    CHECK(admissible_weights(2, 4) == std::vector<int>{0, 2, 4});
    CHECK(admissible_weights(2, 5) == std::vector<int>{1, 3});
    CHECK(admissible_weights(2, 8) == std::vector<int>{0});
}

TEST_CASE("weight split of dz1^dzb1") {
    int n = 1;
    F a = wedge(dz(n, 1), dzb(n, 1));
    auto parts = weight_decompose(a);
    REQUIRE(parts.size() == 2);
    F S = wedge(dz(n, 1), dzb(n, 1)) + wedge(dz(n, 2), dzb(n, 2));
    F D = wedge(dz(n, 1), dzb(n, 1)) - wedge(dz(n, 2), dzb(n, 2));
    CHECK(parts.at(2) == scale(S, EC(Rat(1, 2))));
    CHECK(parts.at(0) == scale(D, EC(Rat(1, 2))));

    Rng rng(23);
    for (int t = 0; t < 10; ++t) {
        F r = random_pq_form(2, 1, 1, rng);
        auto ps = weight_decompose(r);
        F resum(2);
        for (auto& [w, part] : ps) {
            resum += part;
            CHECK(weight_decompose(part).size() == 1);
        }
        CHECK(resum == r);
    }
}

TEST_CASE("plus projection") {
    int n = 1;
    F a = wedge(dz(n, 1), dzb(n, 1));
    F S = wedge(dz(n, 1), dzb(n, 1)) + wedge(dz(n, 2), dzb(n, 2));
    CHECK(plus_project(a) == scale(S, EC(Rat(1, 2))));
    CHECK(plus_project(Omega_form(n)) == Omega_form(n));
    CHECK(plus_project(scale(S, EC(1))) == S);
    CHECK_THROWS_AS(plus_project(wedge(S, dz(n, 1))), std::domain_error);  // degree 3 > 2n

    // preserves bidegree
    Rng rng(24);
    for (int t = 0; t < 8; ++t) {
        F r = random_pq_form(2, 1, 1, rng) + random_pq_form(2, 2, 0, rng);
        F pp = plus_project(r);
        CHECK(component(pp, 1, 1) == plus_project(component(r, 1, 1)));
        CHECK(component(pp, 2, 0) == plus_project(component(r, 2, 0)));
    }
}

TEST_CASE("plus projection rank per bidegree") {
    // rank of the top-weight projector restricted to (p,q)-monomial columns
    auto block_rank = [](int n, int p, int q) {
        int k = p + q;
        const WeightCache& wc = weight_cache(n, k);
        const auto& P = wc.proj.at(k);
        std::vector<int> cols;
        for (int j = 0; j < int(wc.basis.size()); ++j) {
            uint32_t m = wc.basis[j];
            if (std::popcount(m & ((uint32_t(1) << (2 * n)) - 1)) == p) cols.push_back(j);
        }
        Matrix<EC> sub(P.r, int(cols.size()));
        for (int i = 0; i < P.r; ++i)
            for (int j = 0; j < int(cols.size()); ++j) sub.at(i, j) = P.at(i, cols[j]);
        return rank(sub);
    };
    CHECK(block_rank(1, 1, 1) == 1);
    CHECK(block_rank(1, 2, 0) == 1);
    CHECK(block_rank(2, 1, 1) == 6);
    CHECK(block_rank(2, 2, 0) == 6);
    CHECK(block_rank(2, 1, 0) == 4);
    CHECK(block_rank(2, 2, 2) == 1);
}

TEST_CASE("rmap basics") {
    int n = 1;
    F Om = Omega_form(n);
    F S = wedge(dz(n, 1), dzb(n, 1)) + wedge(dz(n, 2), dzb(n, 2));
    CHECK(rmap(1, 1, Om) == scale(S, EC(Rat(1, 2))));
    CHECK(rmap(1, 1, Om) == scale(omega_I(n), -EC::i()));
    CHECK(rmap(2, 0, Om) == Om);

    Rng rng(25);
    for (int t = 0; t < 10; ++t) {
        F a = random_pq_form(2, 2, 0, rng);
        CHECK(rmap(2, 0, a) == a);
        CHECK_THROWS_AS(rmap(1, 1, random_pq_form(2, 1, 1, rng)), std::invalid_argument);
    }
}

TEST_CASE("rproj inverts rmap") {
    for (int n : {1, 2}) {
        Rng rng(26);
        F om = omega_I(n);
        CHECK(rproj(om) == scale(Omega_form(n), EC::i()));
        for (int t = 0; t < 25; ++t) {
            int k = int(rng.uniform_int(1, 2 * n));
            int p = int(rng.uniform_int(0, k));
            F eta = random_pq_form(n, k, 0, rng);
            CHECK(rproj(rmap(p, k - p, eta)) == eta);
        }
    }
}

TEST_CASE("rmap o rproj is the plus projection") {
    for (int n : {1, 2}) {
        Rng rng(27);
        for (int t = 0; t < 20; ++t) {
            int k = int(rng.uniform_int(1, 2 * n));
            int p = int(rng.uniform_int(0, k));
            F alpha = random_pq_form(n, p, k - p, rng);
            CHECK(rmap(p, k - p, rproj(alpha)) == plus_project(alpha));
        }
    }
}

TEST_CASE("rmap conjugation rule") {
    // rmap(p,q, J(conj eta)) = (-1)^p conj(rmap(q,p, eta)); for even p+q the
    // sign equals (-1)^{pq}
    int n = 2;
    CHECK(rmap(1, 0, real_structure(F::gen(n, 0))) == F::gen(n, 1));
    CHECK(conjugate(rmap(0, 1, F::gen(n, 0))) == -F::gen(n, 1));
    Rng rng(28);
    for (int t = 0; t < 15; ++t) {
        int k = int(rng.uniform_int(1, 4));
        int p = int(rng.uniform_int(0, k));
        int q = k - p;
        F eta = random_pq_form(n, k, 0, rng);
        F lhs = rmap(p, q, real_structure(eta));
        F rhs = conjugate(rmap(q, p, eta));
        if (p & 1) rhs = -rhs;
        CHECK(lhs == rhs);
        if (k % 2 == 0) CHECK((p & 1) == ((p * q) & 1));
    }
}

TEST_CASE("rmap product rule") {
    // rmap(p,q, a^b) = sum over splits with hypergeometric weights
    int n = 2;
    Rng rng(29);
    for (int t = 0; t < 10; ++t) {
        int k1 = int(rng.uniform_int(1, 2)), k2 = int(rng.uniform_int(1, 2));
        int k = k1 + k2;
        F a = random_pq_form(n, k1, 0, rng, 2), b = random_pq_form(n, k2, 0, rng, 2);
        for (int p = 0; p <= k; ++p) {
            int q = k - p;
            F sum(n);
            Rat total(0);
            for (int p1 = std::max(0, p - k2); p1 <= std::min(p, k1); ++p1) {
                int q1 = k1 - p1, p2 = p - p1, q2 = k2 - p2;
                Rat w = binom_rat(k1, q1) * binom_rat(k2, q2) / binom_rat(k, q);
                total += w;
                sum += scale(wedge(rmap(p1, q1, a), rmap(p2, q2, b)), EC(w));
            }
            CHECK(total == 1);
            CHECK(rmap(p, q, wedge(a, b)) == sum);
        }
    }
}

TEST_CASE("rmap evaluation chain") {
    int n = 2;
    Rng rng(30);
    for (int t = 0; t < 12; ++t) {
        F eta = random_pq_form(n, 2, 0, rng);
        V x = random_vector_10(n, rng);
        // p = 1: eta(x, J xbar) = 2 * rmap(1,1,eta)(x, xbar)
        EC lhs = eval(eta, {x, apply_J_vec(conj_vec(x))});
        EC rhs = EC(2) * eval(rmap(1, 1, eta), {x, conj_vec(x)});
        CHECK(lhs == rhs);
    }
    for (int t = 0; t < 6; ++t) {
        F eta = random_pq_form(n, 4, 0, rng);
        V x1 = random_vector_10(n, rng), x2 = random_vector_10(n, rng);
        V y1 = apply_J_vec(conj_vec(x1)), y2 = apply_J_vec(conj_vec(x2));
        // p = 2: interleaved evaluation picks up (-1)^{p(p-1)/2} C(2p,p)
        EC lhs = eval(eta, {x1, y1, x2, y2});
        EC rhs = EC(-6) * eval(rmap(2, 2, eta), {x1, x2, conj_vec(x1), conj_vec(x2)});
        CHECK(lhs == rhs);
    }
}
