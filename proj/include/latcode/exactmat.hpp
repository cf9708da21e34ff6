// Exact integer matrix kernel: canonical Hermite form, Smith form,
// fraction-free determinants and adjugates. Everything the lattice layer
// needs stays inside int64 entries with __int128 intermediates; overflow
// throws instead of wrapping.

#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcode {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 checked_narrow(i128 v, const char* where) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw std::overflow_error(std::string("integer overflow in ") + where);
    return static_cast<i64>(v);
}

struct IMat {
    int rows = 0, cols = 0;
    std::vector<i64> a;  // row-major

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, 0) {}

    i64& at(int r, int c) { return a[size_t(r) * cols + c]; }
    i64 at(int r, int c) const { return a[size_t(r) * cols + c]; }

    bool operator==(const IMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    static IMat identity(int n) {
        IMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
};

inline IMat imat_mul(const IMat& x, const IMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("imat_mul: shape mismatch");
    IMat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            i64 xv = x.at(i, k);
            if (!xv) continue;
            for (int j = 0; j < y.cols; ++j) {
                i128 acc = i128(z.at(i, j)) + i128(xv) * y.at(k, j);
                z.at(i, j) = checked_narrow(acc, "imat_mul");
            }
        }
    return z;
}

inline IMat imat_transpose(const IMat& x) {
    IMat t(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) t.at(j, i) = x.at(i, j);
    return t;
}

// Gram matrix B*B^T of the rows (no scaling applied).
inline IMat imat_gram(const IMat& b) { return imat_mul(b, imat_transpose(b)); }

// Row-canonical Hermite normal form of the row span. Zero rows dropped;
// result has positive pivots, zeros below each pivot, and entries above a
// pivot reduced into [0, pivot). Unique per row lattice, so equality of
// spans is equality of HNFs.
inline IMat hnf(IMat m) {
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        // eliminate column c below row r by gcd row operations
        while (true) {
            int piv = -1;
            for (int i = r; i < m.rows; ++i)
                if (m.at(i, c) != 0) { piv = i; break; }
            if (piv < 0) break;
            for (int j = 0; j < m.cols; ++j) std::swap(m.a[size_t(r) * m.cols + j], m.a[size_t(piv) * m.cols + j]);
            bool clean = true;
            for (int i = r + 1; i < m.rows; ++i) {
                if (m.at(i, c) == 0) continue;
                i64 q = m.at(i, c) / m.at(r, c);
                for (int j = 0; j < m.cols; ++j) {
                    i128 v = i128(m.at(i, j)) - i128(q) * m.at(r, j);
                    m.at(i, j) = checked_narrow(v, "hnf");
                }
                if (m.at(i, c) != 0) clean = false;  // remainder left, swap-min again
            }
            if (clean) break;
            // move the row with minimal nonzero |entry| up and repeat
            int best = r;
            for (int i = r; i < m.rows; ++i)
                if (m.at(i, c) != 0 && (m.at(best, c) == 0 || std::abs(m.at(i, c)) < std::abs(m.at(best, c)))) best = i;
            for (int j = 0; j < m.cols; ++j) std::swap(m.a[size_t(r) * m.cols + j], m.a[size_t(best) * m.cols + j]);
        }
        if (m.at(r, c) == 0) continue;
        if (m.at(r, c) < 0)
            for (int j = 0; j < m.cols; ++j) m.at(r, j) = -m.at(r, j);
        // reduce entries above the pivot into [0, pivot)
        for (int i = 0; i < r; ++i) {
            i64 q = m.at(i, c) / m.at(r, c);
            if (m.at(i, c) % m.at(r, c) < 0) --q;
            if (!q) continue;
            for (int j = 0; j < m.cols; ++j) {
                i128 v = i128(m.at(i, j)) - i128(q) * m.at(r, j);
                m.at(i, j) = checked_narrow(v, "hnf");
            }
        }
        ++r;
    }
    IMat out(r, m.cols);
    std::copy(m.a.begin(), m.a.begin() + size_t(r) * m.cols, out.a.begin());
    return out;
}

// Bareiss fraction-free determinant.
inline i128 det_exact(const IMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("det_exact: not square");
    int n = m.rows;
    if (n == 0) return 1;
    std::vector<i128> w(m.a.begin(), m.a.end());
    auto at = [&](int i, int j) -> i128& { return w[size_t(i) * n + j]; };
    i128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int s = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) { s = i; break; }
            if (s < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(s, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

// Adjugate via cofactor expansion with Bareiss minors: adj(M) * M = det(M) I.
inline std::vector<i128> adjugate(const IMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("adjugate: not square");
    int n = m.rows;
    std::vector<i128> adj(size_t(n) * n);
    IMat minor(n - 1, n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(mr, mc++) = m.at(r, c);
                }
                ++mr;
            }
            i128 cof = det_exact(minor);
            adj[size_t(j) * n + i] = ((i + j) & 1) ? -cof : cof;  // transposed
        }
    return adj;
}

// Smith normal form invariant factors d_1 | d_2 | ... The pivot is always
// the submatrix entry of smallest magnitude, which keeps the Euclidean
// reduction terminating with tame entry growth.
inline std::vector<i64> smith_invariants(const IMat& m0) {
    int rows = m0.rows, cols = m0.cols;
    std::vector<i128> w(m0.a.begin(), m0.a.end());
    auto at = [&](int i, int j) -> i128& { return w[size_t(i) * cols + j]; };
    auto guard = [&](i128 v) {
        if (v > (i128(1) << 100) || v < -(i128(1) << 100))
            throw std::overflow_error("integer overflow in snf");
        return v;
    };
    int n = std::min(rows, cols);
    std::vector<i64> inv;
    for (int top = 0; top < n; ++top) {
        while (true) {
            int pi = -1, pj = -1;
            i128 best = 0;
            for (int i = top; i < rows; ++i)
                for (int j = top; j < cols; ++j) {
                    i128 v = at(i, j) < 0 ? -at(i, j) : at(i, j);
                    if (v != 0 && (pi < 0 || v < best)) { best = v; pi = i; pj = j; }
                }
            if (pi < 0) { pi = pj = -1; break; }
            if (pi != top)
                for (int j = 0; j < cols; ++j) std::swap(at(top, j), at(pi, j));
            if (pj != top)
                for (int i = 0; i < rows; ++i) std::swap(at(i, top), at(i, pj));
            i128 piv = at(top, top);
            bool dirty = false;
            for (int i = top + 1; i < rows; ++i) {
                if (at(i, top) == 0) continue;
                i128 q = at(i, top) / piv;
                if (q)
                    for (int j = top; j < cols; ++j) at(i, j) = guard(at(i, j) - q * at(top, j));
                if (at(i, top) != 0) dirty = true;
            }
            for (int j = top + 1; j < cols; ++j) {
                if (at(top, j) == 0) continue;
                i128 q = at(top, j) / piv;
                if (q)
                    for (int i = top; i < rows; ++i) at(i, j) = guard(at(i, j) - q * at(i, top));
                if (at(top, j) != 0) dirty = true;
            }
            if (dirty) continue;  // a smaller entry appeared, re-pivot
            // pivot clears its row and column; enforce divisibility
            bool fixed = true;
            for (int i = top + 1; i < rows && fixed; ++i)
                for (int j = top + 1; j < cols && fixed; ++j)
                    if (at(i, j) % piv != 0) {
                        for (int jj = top; jj < cols; ++jj) at(top, jj) = guard(at(top, jj) + at(i, jj));
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (at(top, top) == 0) break;
        i128 piv = at(top, top) < 0 ? -at(top, top) : at(top, top);
        inv.push_back(checked_narrow(piv, "snf invariant"));
    }
    return inv;
}

}  // namespace latcode
