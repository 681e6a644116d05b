#pragma once

// Dense exact linear algebra over a field scalar (ExactComplex, Rat via
// wrapper, complex<double>). Sizes here are small (<= ~100); plain Gaussian
// elimination with first-nonzero pivoting is all we need.

#include "scalars.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qf {

template <class S>
struct Matrix {
    int r = 0, c = 0;
    std::vector<S> a;

    Matrix() = default;
    Matrix(int r_, int c_) : r(r_), c(c_), a(std::size_t(r_) * c_, ScalarOps<S>::zero()) {}

    S& at(int i, int j) { return a[std::size_t(i) * c + j]; }
    const S& at(int i, int j) const { return a[std::size_t(i) * c + j]; }

    static Matrix identity(int m) {
        Matrix I(m, m);
        for (int i = 0; i < m; ++i) I.at(i, i) = ScalarOps<S>::one();
        return I;
    }

    Matrix operator*(const Matrix& o) const {
        if (c != o.r) throw std::invalid_argument("matrix shape mismatch");
        Matrix out(r, o.c);
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < c; ++k) {
                const S& v = at(i, k);
                if (ScalarOps<S>::is_zero(v)) continue;
                for (int j = 0; j < o.c; ++j) out.at(i, j) += v * o.at(k, j);
            }
        return out;
    }
    Matrix operator+(const Matrix& o) const {
        Matrix out = *this;
        for (std::size_t i = 0; i < a.size(); ++i) out.a[i] += o.a[i];
        return out;
    }
    Matrix operator-(const Matrix& o) const {
        Matrix out = *this;
        for (std::size_t i = 0; i < a.size(); ++i) out.a[i] -= o.a[i];
        return out;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.r == y.r && x.c == y.c && x.a == y.a;
    }

    Matrix scaled(const S& s) const {
        Matrix out = *this;
        for (auto& v : out.a) v = v * s;
        return out;
    }

    Matrix transpose() const {
        Matrix out(c, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    Matrix conj_transpose() const {
        Matrix out(c, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) out.at(j, i) = ScalarOps<S>::conj(at(i, j));
        return out;
    }

    bool is_zero() const {
        for (auto& v : a)
            if (!ScalarOps<S>::is_zero(v)) return false;
        return true;
    }

    S trace() const {
        S t = ScalarOps<S>::zero();
        for (int i = 0; i < r; ++i) t += at(i, i);
        return t;
    }
};

// Row echelon in place; returns rank. Columns [0, cols) are eliminated;
// trailing columns (e.g. an augmented RHS) just follow along.
template <class S>
int row_reduce(Matrix<S>& m, int cols, std::vector<int>* pivot_cols = nullptr) {
    int rank = 0;
    for (int col = 0; col < cols && rank < m.r; ++col) {
        int piv = -1;
        for (int i = rank; i < m.r; ++i)
            if (!ScalarOps<S>::is_zero(m.at(i, col))) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < m.c; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        S inv = ScalarOps<S>::one() / m.at(rank, col);
        for (int j = 0; j < m.c; ++j) m.at(rank, j) = m.at(rank, j) * inv;
        for (int i = 0; i < m.r; ++i) {
            if (i == rank || ScalarOps<S>::is_zero(m.at(i, col))) continue;
            S f = m.at(i, col);
            for (int j = 0; j < m.c; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++rank;
    }
    return rank;
}

template <class S>
int rank(Matrix<S> m) {
    return row_reduce(m, m.c);
}

template <class S>
std::optional<std::vector<S>> solve(const Matrix<S>& A, const std::vector<S>& b) {
    Matrix<S> aug(A.r, A.c + 1);
    for (int i = 0; i < A.r; ++i) {
        for (int j = 0; j < A.c; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.c) = b[i];
    }
    std::vector<int> piv;
    int rk = row_reduce(aug, A.c, &piv);
    for (int i = rk; i < A.r; ++i)
        if (!ScalarOps<S>::is_zero(aug.at(i, A.c))) return std::nullopt;
    std::vector<S> x(A.c, ScalarOps<S>::zero());
    for (int i = 0; i < rk; ++i) x[piv[i]] = aug.at(i, A.c);
    return x;
}

template <class S>
std::vector<std::vector<S>> kernel(Matrix<S> A) {
    std::vector<int> piv;
    int rk = row_reduce(A, A.c, &piv);
    std::vector<bool> is_piv(A.c, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<std::vector<S>> basis;
    for (int j = 0; j < A.c; ++j) {
        if (is_piv[j]) continue;
        std::vector<S> v(A.c, ScalarOps<S>::zero());
        v[j] = ScalarOps<S>::one();
        for (int i = 0; i < rk; ++i) v[piv[i]] = -A.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& A) {
    if (A.r != A.c) throw std::invalid_argument("inverse needs a square matrix");
    Matrix<S> aug(A.r, 2 * A.c);
    for (int i = 0; i < A.r; ++i) {
        for (int j = 0; j < A.c; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.c + i) = ScalarOps<S>::one();
    }
    if (row_reduce(aug, A.c) != A.r) return std::nullopt;
    Matrix<S> inv(A.r, A.c);
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) inv.at(i, j) = aug.at(i, A.c + j);
    return inv;
}

template <class S>
S det(Matrix<S> m) {
    if (m.r != m.c) throw std::invalid_argument("det needs a square matrix");
    S d = ScalarOps<S>::one();
    for (int col = 0; col < m.c; ++col) {
        int piv = -1;
        for (int i = col; i < m.r; ++i)
            if (!ScalarOps<S>::is_zero(m.at(i, col))) {
                piv = i;
                break;
            }
        if (piv < 0) return ScalarOps<S>::zero();
        if (piv != col) {
            for (int j = 0; j < m.c; ++j) std::swap(m.at(piv, j), m.at(col, j));
            d = -d;
        }
        d = d * m.at(col, col);
        S inv = ScalarOps<S>::one() / m.at(col, col);
        for (int i = col + 1; i < m.r; ++i) {
            if (ScalarOps<S>::is_zero(m.at(i, col))) continue;
            S f = m.at(i, col) * inv;
            for (int j = col; j < m.c; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

// Characteristic polynomial of det(x*I - A), monic, returned as coefficients
// c[0..m] with c[i] the coefficient of x^i (Faddeev-LeVerrier).
template <class S>
std::vector<S> char_poly(const Matrix<S>& A) {
    if (A.r != A.c) throw std::invalid_argument("char_poly needs a square matrix");
    int m = A.r;
    std::vector<S> c(m + 1, ScalarOps<S>::zero());
    c[m] = ScalarOps<S>::one();
    Matrix<S> M = Matrix<S>::identity(m);
    for (int k = 1; k <= m; ++k) {
        Matrix<S> AM = A * M;
        S ck = -(AM.trace() * ScalarOps<S>::from_rat(Rat(1, k)));
        c[m - k] = ck;
        M = AM;
        for (int i = 0; i < m; ++i) M.at(i, i) += ck;
    }
    return c;
}

struct Inertia {
    int pos = 0, neg = 0, zero = 0;
};

// Exact inertia of a real-rooted monic rational polynomial (e.g. the
// characteristic polynomial of a Hermitian matrix): Descartes' rule is tight
// when all roots are real.
inline Inertia inertia_from_real_rooted(const std::vector<Rat>& coeff) {
    Inertia out;
    std::size_t z = 0;
    while (z < coeff.size() && coeff[z] == 0) ++z;
    out.zero = int(z);
    std::vector<int> signs;
    for (std::size_t i = z; i < coeff.size(); ++i) {
        if (coeff[i] == 0) continue;
        signs.push_back(coeff[i] > 0 ? 1 : -1);
    }
    int var = 0;
    for (std::size_t i = 1; i < signs.size(); ++i)
        if (signs[i] != signs[i - 1]) ++var;
    out.pos = var;
    out.neg = int(coeff.size()) - 1 - out.zero - out.pos;
    return out;
}

inline bool is_hermitian(const Matrix<ExactComplex>& H) {
    if (H.r != H.c) return false;
    for (int i = 0; i < H.r; ++i)
        for (int j = 0; j <= i; ++j)
            if (H.at(i, j) != H.at(j, i).conj()) return false;
    return true;
}

// Inertia of a Hermitian matrix with exact entries. Uses the fact that its
// characteristic polynomial has real coefficients and real roots.
inline Inertia hermitian_inertia(const Matrix<ExactComplex>& H) {
    if (!is_hermitian(H)) throw std::domain_error("matrix is not Hermitian");
    auto cp = char_poly(H);
    std::vector<Rat> rc(cp.size());
    for (std::size_t i = 0; i < cp.size(); ++i) rc[i] = cp[i].re;
    return inertia_from_real_rooted(rc);
}

}  // namespace qf
