// Kleinian codes: subgroups of K^n for the four-group K = {0,a,b,c}.
//
// A word is packed two bits per coordinate, symbol s_i in bits 2i..2i+1
// with 0 -> 00, a -> 01, b -> 10, c -> 11 (first component of the bit
// pair = bit 2i). The product table a.b = a.c = b.c = 1, x.x = 0 is the
// symplectic form x1*y2 + x2*y1 on bit pairs, so duality is an ordinary
// F2 nullspace computation on the 2n-bit flattening.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "f2.hpp"

namespace latcode {

constexpr int kMaxKleinianLength = 8;

struct KWord {
    int n = 0;
    Word flat = 0;

    int symbol(int i) const { return int((flat >> (2 * i)) & 3); }
    void set_symbol(int i, int s) {
        flat = (flat & ~(Word{3} << (2 * i))) | (Word(s) << (2 * i));
    }
};

inline int k_weight(Word flat) {
    constexpr Word lo = 0x5555555555555555ULL;
    Word nz = (flat & lo) | ((flat >> 1) & lo);
    return std::popcount(nz);
}

inline Word k_swap_pairs(Word flat) {
    constexpr Word lo = 0x5555555555555555ULL;
    return ((flat & lo) << 1) | ((flat >> 1) & lo);
}

// Symplectic product reproducing a.b = b.c = a.c = 1, x.x = 0.
inline int k_inner(const KWord& x, const KWord& y) {
    if (x.n != y.n) throw std::invalid_argument("k_inner: length mismatch");
    return f2_dot(x.flat, k_swap_pairs(y.flat));
}

struct KCode {
    int n = 0;
    std::vector<Word> basis;  // RREF over the 2n-bit flattening

    KCode() = default;
    KCode(int len, std::vector<Word> gens) : n(len), basis(std::move(gens)) {
        if (n < 1 || n > kMaxKleinianLength) throw std::invalid_argument("KCode: length out of range");
        f2_rref(basis, 2 * n);
    }

    int rank() const { return static_cast<int>(basis.size()); }
    bool operator==(const KCode& o) const { return n == o.n && basis == o.basis; }
    bool contains(Word w) const { return f2_in_span(basis, w); }
    std::vector<Word> words() const { return f2_span(basis); }

    bool is_even() const {
        for (Word w : words())
            if (k_weight(w) & 1) return false;
        return true;
    }
};

inline KCode k_dual(const KCode& k) {
    std::vector<Word> rows;
    rows.reserve(k.basis.size());
    for (Word b : k.basis) rows.push_back(k_swap_pairs(b));
    return KCode(k.n, f2_nullspace(std::move(rows), 2 * k.n));
}

inline bool k_is_self_dual(const KCode& k) {
    if (k.rank() != k.n) return false;
    for (size_t i = 0; i < k.basis.size(); ++i)
        for (size_t j = i; j < k.basis.size(); ++j)
            if (f2_dot(k.basis[i], k_swap_pairs(k.basis[j]))) return false;
    return true;
}

// c[m] = |K(m)| by full codeword enumeration.
inline std::vector<long long> k_weight_enumerator(const KCode& k) {
    std::vector<long long> c(k.n + 1, 0);
    for (Word w : k.words()) ++c[k_weight(w)];
    return c;
}

// The six symbol permutations of {a,b,c} as lookup tables fixing 0.
inline const std::array<std::array<int, 4>, 6>& k_symbol_perms() {
    static const std::array<std::array<int, 4>, 6> perms = {{
        {0, 1, 2, 3},  // id
        {0, 1, 3, 2},  // b<->c
        {0, 2, 1, 3},  // a<->b
        {0, 2, 3, 1},  // a->b->c->a
        {0, 3, 1, 2},  // a->c->b->a
        {0, 3, 2, 1},  // a<->c
    }};
    return perms;
}

struct KEquivalence {
    std::vector<int> coord;  // coordinate i of the source maps to coord[i] of the target
    std::vector<int> sym;    // index into k_symbol_perms(), applied at source coordinate i
};

inline Word k_apply(const KEquivalence& eq, Word flat, int n) {
    Word out = 0;
    for (int i = 0; i < n; ++i) {
        int s = int((flat >> (2 * i)) & 3);
        out |= Word(k_symbol_perms()[eq.sym[i]][s]) << (2 * eq.coord[i]);
    }
    return out;
}

inline KCode k_apply(const KEquivalence& eq, const KCode& k) {
    std::vector<Word> rows;
    rows.reserve(k.basis.size());
    for (Word b : k.basis) rows.push_back(k_apply(eq, b, k.n));
    return KCode(k.n, std::move(rows));
}

namespace detail {

// Per-coordinate invariant under symbol permutations: for every weight
// class, the count of words with symbol 0 there plus the sorted counts of
// the three nonzero symbols.
inline std::vector<int> k_coord_fingerprint(const std::vector<Word>& words, int n, int i) {
    std::vector<int> fp((n + 1) * 4, 0);
    for (Word w : words) {
        int wt = k_weight(w);
        int s = int((w >> (2 * i)) & 3);
        ++fp[wt * 4 + s];
    }
    for (int wt = 0; wt <= n; ++wt) std::sort(fp.begin() + wt * 4 + 1, fp.begin() + wt * 4 + 4);
    return fp;
}

struct KEquivSearch {
    int n;
    const std::vector<Word>* kwords;
    std::unordered_set<Word> jset;
    std::vector<std::vector<int>> fpk, fpj;
    std::vector<std::vector<Word>> decided_at;  // K-words whose support closes at coordinate i
    KEquivalence eq;
    std::vector<bool> used;
    bool found = false;

    bool consistent(int depth) {
        for (Word w : decided_at[depth])
            if (!jset.count(k_apply(eq, w, n))) return false;
        return true;
    }

    void rec(int depth) {
        if (found) return;
        if (depth == n) { found = true; return; }
        for (int j = 0; j < n && !found; ++j) {
            if (used[j] || fpk[depth] != fpj[j]) continue;
            used[j] = true;
            eq.coord[depth] = j;
            for (int g = 0; g < 6 && !found; ++g) {
                eq.sym[depth] = g;
                if (consistent(depth)) rec(depth + 1);
            }
            used[j] = false;
        }
    }
};

}  // namespace detail

// Equivalence witness search: coordinate permutation plus a symbol
// permutation per coordinate, by backtracking with fingerprint pruning.
inline std::optional<KEquivalence> k_equivalent(const KCode& k, const KCode& j) {
    if (k.n != j.n) throw std::invalid_argument("k_equivalent: length mismatch");
    if (k.rank() != j.rank()) return std::nullopt;
    auto kw = k.words();
    auto jw = j.words();
    detail::KEquivSearch s;
    s.n = k.n;
    s.kwords = &kw;
    s.jset.insert(jw.begin(), jw.end());
    for (int i = 0; i < k.n; ++i) {
        s.fpk.push_back(detail::k_coord_fingerprint(kw, k.n, i));
        s.fpj.push_back(detail::k_coord_fingerprint(jw, j.n, i));
    }
    {
        auto a = s.fpk, b = s.fpj;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    s.decided_at.resize(k.n);
    for (Word w : kw) {
        if (!w) continue;
        int last = 0;
        for (int i = 0; i < k.n; ++i)
            if ((w >> (2 * i)) & 3) last = i;
        s.decided_at[last].push_back(w);
    }
    s.eq.coord.assign(k.n, 0);
    s.eq.sym.assign(k.n, 0);
    s.used.assign(k.n, false);
    s.rec(0);
    if (!s.found) return std::nullopt;
    // re-verify before handing the witness out
    if (!(k_apply(s.eq, k) == j)) throw std::logic_error("k_equivalent: witness failed re-verification");
    return s.eq;
}

struct KPredicate {
    bool even = false;
    bool self_dual = false;
    std::optional<std::vector<long long>> enumerator;
};

// All equivalence classes of codes of length n <= 4 matching the
// predicate, one canonical representative each, in deterministic order.
inline std::vector<KCode> k_enumerate(int n, const KPredicate& pred) {
    if (n < 1 || n > 4) throw std::invalid_argument("k_enumerate: length must be <= 4");
    int rmin = 0, rmax = 2 * n;
    if (pred.self_dual) rmin = rmax = n;
    if (pred.enumerator) {
        long long total = 0;
        for (long long c : *pred.enumerator) total += c;
        int r = 0;
        while ((1LL << r) < total) ++r;
        if ((1LL << r) != total) return {};
        rmin = rmax = r;
    }
    std::vector<KCode> reps;
    std::vector<std::vector<long long>> rep_enum;
    f2_enumerate_subspaces(2 * n, rmin, rmax, [&](const std::vector<Word>& rows) {
        if (pred.self_dual) {
            if (static_cast<int>(rows.size()) != n) return;
            for (size_t i = 0; i < rows.size(); ++i)
                for (size_t j = i; j < rows.size(); ++j)
                    if (f2_dot(rows[i], k_swap_pairs(rows[j]))) return;
        }
        KCode cand(n, rows);
        auto we = k_weight_enumerator(cand);
        if (pred.even) {
            for (int m = 1; m <= n; m += 2)
                if (we[m]) return;
        }
        if (pred.enumerator && we != *pred.enumerator) return;
        for (size_t r = 0; r < reps.size(); ++r) {
            if (rep_enum[r] != we) continue;
            if (k_equivalent(cand, reps[r])) return;
        }
        reps.push_back(cand);
        rep_enum.push_back(we);
    });
    return reps;
}

// Fixed generator tables for the named codes.
inline KCode kcode_eps2() { return KCode(2, {0b0101, 0b1010}); }                 // (aa), (bb)
inline KCode kcode_eps2_sq() { return KCode(4, {0b0101, 0b1010, 0b01010000, 0b10100000}); }
inline KCode kcode_delta4plus() {
    // (aa00), (a0a0), (a00a), (bbbb)
    return KCode(4, {0b00000101, 0b00010001, 0b01000001, 0b10101010});
}

}  // namespace latcode
