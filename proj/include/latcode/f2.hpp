// Packed F2 linear algebra on words of up to 64 bits.
//
// Rows of all code generator matrices are stored as uint64_t, coordinate i
// of a length-n vector living in bit i (coordinate 1 = least significant
// bit). Subspaces are kept in reduced row echelon form, which is unique,
// so subspace equality is rowwise equality.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace latcode {

using Word = std::uint64_t;

inline int weight(Word w) { return std::popcount(w); }
inline int parity(Word w) { return std::popcount(w) & 1; }

// Standard dot product <x,y> = sum x_i y_i over F2.
inline int f2_dot(Word x, Word y) { return parity(x & y); }

// Reduced row echelon form of a list of rows; returns the rank.
// Zero rows are dropped, rows end up sorted by pivot position.
inline int f2_rref(std::vector<Word>& rows, int cols) {
    int rank = 0;
    for (int c = 0; c < cols; ++c) {
        Word bit = Word{1} << c;
        int piv = -1;
        for (size_t r = rank; r < rows.size(); ++r)
            if (rows[r] & bit) { piv = static_cast<int>(r); break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (size_t r = 0; r < rows.size(); ++r)
            if (static_cast<int>(r) != rank && (rows[r] & bit)) rows[r] ^= rows[rank];
        ++rank;
    }
    rows.resize(rank);
    return rank;
}

// Span membership: reduce w against an RREF basis.
inline bool f2_in_span(const std::vector<Word>& rref, Word w) {
    for (Word row : rref) {
        Word piv = row & (~row + 1);  // lowest set bit = pivot
        if (w & piv) w ^= row;
    }
    return w == 0;
}

// Basis of {x : <x, row> = 0 for all rows}, returned in RREF.
inline std::vector<Word> f2_nullspace(std::vector<Word> rows, int cols) {
    f2_rref(rows, cols);
    std::vector<int> pivot_of_col(cols, -1);
    for (size_t r = 0; r < rows.size(); ++r) {
        int c = std::countr_zero(rows[r]);
        pivot_of_col[c] = static_cast<int>(r);
    }
    std::vector<Word> basis;
    for (int c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        // free column c: x_c = 1, pivot variables forced
        Word v = Word{1} << c;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (rows[r] & (Word{1} << c)) {
                int pc = std::countr_zero(rows[r]);
                v ^= Word{1} << pc;
            }
        }
        basis.push_back(v);
    }
    f2_rref(basis, cols);
    return basis;
}

// Enumerate every word of the span (2^rank of them, Gray-code order not
// guaranteed; starts with 0).
inline std::vector<Word> f2_span(const std::vector<Word>& basis) {
    if (basis.size() > 24) throw std::invalid_argument("f2_span: dimension too large");
    std::vector<Word> out(size_t{1} << basis.size(), 0);
    for (size_t i = 1; i < out.size(); ++i) {
        size_t low = i & (i - 1);
        out[i] = out[low] ^ basis[std::countr_zero(i)];
    }
    return out;
}

// Visit every subspace of F2^dim with rank in [rmin, rmax], one canonical
// RREF basis per subspace. dim is capped: the count grows like 2^(d^2/4).
inline void f2_enumerate_subspaces(int dim, int rmin, int rmax,
                                   const std::function<void(const std::vector<Word>&)>& visit) {
    if (dim > 12) throw std::invalid_argument("f2_enumerate_subspaces: dim > 12");
    rmax = std::min(rmax, dim);
    if (rmin <= 0) {
        std::vector<Word> empty;
        visit(empty);
        rmin = 1;
    }
    for (int r = rmin; r <= rmax; ++r) {
        // choose pivot columns p_0 < ... < p_{r-1}
        std::vector<int> piv(r);
        for (int i = 0; i < r; ++i) piv[i] = i;
        while (true) {
            // free cells: row i may have arbitrary bits in non-pivot columns > piv[i]
            std::vector<std::pair<int, int>> cells;  // (row, col)
            {
                std::vector<bool> is_piv(dim, false);
                for (int p : piv) is_piv[p] = true;
                for (int i = 0; i < r; ++i)
                    for (int c = piv[i] + 1; c < dim; ++c)
                        if (!is_piv[c]) cells.emplace_back(i, c);
            }
            std::vector<Word> rows(r);
            for (int i = 0; i < r; ++i) rows[i] = Word{1} << piv[i];
            size_t nfill = cells.size();
            for (size_t mask = 0;; ++mask) {
                if (mask) {
                    if (mask >> nfill) break;
                    // incremental: rebuild rows from mask
                    for (int i = 0; i < r; ++i) rows[i] = Word{1} << piv[i];
                    for (size_t b = 0; b < nfill; ++b)
                        if (mask & (size_t{1} << b))
                            rows[cells[b].first] |= Word{1} << cells[b].second;
                }
                visit(rows);
                if (nfill == 0) break;
            }
            // next pivot combination
            int k = r - 1;
            while (k >= 0 && piv[k] == dim - r + k) --k;
            if (k < 0) break;
            ++piv[k];
            for (int j = k + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
        }
    }
}

}  // namespace latcode
