// Doubly-even binary codes, the hat constructions from Kleinian codes,
// coset enumerators, permutation equivalence, self-dual embedding, and the
// constructive recovery of a Kleinian code from C and a coset.

#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "f2.hpp"
#include "kleinian.hpp"

namespace latcode {

constexpr int kMaxBinaryLength = 32;

struct BinCode {
    int n = 0;
    std::vector<Word> basis;  // RREF generator matrix

    BinCode() = default;
    BinCode(int len, std::vector<Word> gens) : n(len), basis(std::move(gens)) {
        if (n < 1 || n > kMaxBinaryLength) throw std::invalid_argument("BinCode: length out of range");
        f2_rref(basis, n);
    }

    int dim() const { return static_cast<int>(basis.size()); }
    bool operator==(const BinCode& o) const { return n == o.n && basis == o.basis; }
    bool contains(Word w) const { return f2_in_span(basis, w); }
    std::vector<Word> words() const {
        if (dim() > 24) throw std::invalid_argument("BinCode::words: code too large");
        return f2_span(basis);
    }
};

inline BinCode code_dual(const BinCode& c) { return BinCode(c.n, f2_nullspace(c.basis, c.n)); }

// Doubly-even iff every basis weight is 0 mod 4 and all pairwise products
// vanish (wt(x+y) = wt x + wt y - 2<x,y> makes that sufficient).
inline bool is_doubly_even(const BinCode& c) {
    for (size_t i = 0; i < c.basis.size(); ++i) {
        if (weight(c.basis[i]) % 4 != 0) return false;
        for (size_t j = i + 1; j < c.basis.size(); ++j)
            if (f2_dot(c.basis[i], c.basis[j])) return false;
    }
    return true;
}

inline bool is_self_dual(const BinCode& c) { return code_dual(c) == c; }

struct CosetLabel {
    BinCode code;
    Word rep = 0;

    CosetLabel(BinCode c, Word x) : code(std::move(c)) { rep = canonical(code, x); }

    // Lexicographic minimum of x + C for n <= 24, echelon reduction beyond.
    static Word canonical(const BinCode& c, Word x) {
        if (c.n <= 24 && c.dim() <= 24) {
            Word best = ~Word{0};
            for (Word w : c.words()) best = std::min(best, w ^ x);
            return best;
        }
        for (Word row : c.basis) {
            Word piv = row & (~row + 1);
            if (x & piv) x ^= row;
        }
        return x;
    }
};

inline std::vector<long long> coset_weight_enumerator(const BinCode& c, Word x) {
    std::vector<long long> out(c.n + 1, 0);
    for (Word w : c.words()) ++out[weight(w ^ x)];
    return out;
}

inline std::vector<long long> code_weight_enumerator(const BinCode& c) {
    return coset_weight_enumerator(c, 0);
}

// ---- the hat constructions -------------------------------------------------

// 0 -> 0000, a -> 1100, b -> 1010, c -> 0110, concatenated per coordinate.
inline Word hat_map(const KWord& w) {
    static constexpr Word kHat[4] = {0b0000, 0b0011, 0b0101, 0b0110};
    Word out = 0;
    for (int i = 0; i < w.n; ++i) out |= kHat[w.symbol(i)] << (4 * i);
    return out;
}

inline Word d4_block(int i) { return Word{0xF} << (4 * i); }

inline BinCode d4m_code(int m) {
    std::vector<Word> rows;
    for (int i = 0; i < m; ++i) rows.push_back(d4_block(i));
    return BinCode(4 * m, std::move(rows));
}

inline BinCode d4m0_code(int m) {
    std::vector<Word> rows;
    for (int i = 1; i < m; ++i) rows.push_back(d4_block(0) ^ d4_block(i));
    if (m == 1) return BinCode(4, {});
    return BinCode(4 * m, std::move(rows));
}

inline BinCode construction_a_code(const KCode& k) {
    std::vector<Word> rows;
    for (Word b : k.basis) rows.push_back(hat_map(KWord{k.n, b}));
    for (int i = 0; i < k.n; ++i) rows.push_back(d4_block(i));
    return BinCode(4 * k.n, std::move(rows));
}

inline BinCode construction_b_code(const KCode& k) {
    std::vector<Word> rows;
    for (Word b : k.basis) rows.push_back(hat_map(KWord{k.n, b}));
    for (int i = 1; i < k.n; ++i) rows.push_back(d4_block(0) ^ d4_block(i));
    return BinCode(4 * k.n, std::move(rows));
}

// Enumerator of C(K) computed by substitution instead of enumeration:
// zero coordinates contribute X^4 + Y^4, nonzero ones 2X^2Y^2. The
// construction-B variant adds (X^4 - Y^4)^m and halves. Homogeneous of
// degree 4m, indexed by X-degree.
inline std::vector<long long> substituted_enumerator_a(const KCode& k) {
    int m = k.n;
    std::vector<long long> out(4 * m + 1, 0);
    std::vector<long long> binom(m + 1, 0);
    auto kwe = k_weight_enumerator(k);
    for (int w = 0; w <= m; ++w) {
        if (!kwe[w]) continue;
        // (2X^2Y^2)^w (X^4+Y^4)^{m-w}
        long long b = 1;
        for (int j = 0; j <= m - w; ++j) {
            out[2 * w + 4 * j] += kwe[w] * (1LL << w) * b;
            b = b * (m - w - j) / (j + 1);
        }
    }
    return out;
}

// The correction term is (Y^4 - X^4)^m in these slots: the zero-codeword
// blocks contribute Y^4 with sign + and X^4 with sign -, every nonzero
// block cancels. (Checked against direct enumeration down at m = 1, where
// the two sign readings differ.)
inline std::vector<long long> substituted_enumerator_b(const KCode& k) {
    int m = k.n;
    auto out = substituted_enumerator_a(k);
    long long b = 1;
    for (int j = 0; j <= m; ++j) {
        long long sign = (j % 2 == 0) ? 1 : -1;
        out[4 * j] += sign * b;
        b = b * (m - j) / (j + 1);
    }
    for (auto& c : out) {
        if (c % 2 != 0) throw std::logic_error("substituted_enumerator_b: odd coefficient");
        c /= 2;
    }
    return out;
}

// ---- named codes -----------------------------------------------------------

inline BinCode bincode_e8() {
    return BinCode(8, {0x0F, 0x3C, 0xF0, 0x55});
}

inline BinCode bincode_e8_sq() {
    return BinCode(16, {0x0F, 0x3C, 0xF0, 0x55, 0x0F00, 0x3C00, 0xF000, 0x5500});
}

// d16+: seven weight-4 windows stepping by two, glued with the alternating
// weight-8 word. Indecomposable, so inequivalent to e8^2; the acceptance
// checks pin it against C(delta4+).
inline BinCode bincode_d16plus() {
    std::vector<Word> rows;
    for (int s = 0; s <= 12; s += 2) rows.push_back(Word{0xF} << s);
    rows.push_back(0x5555);
    return BinCode(16, std::move(rows));
}

// ---- permutation equivalence ----------------------------------------------

namespace detail {

inline std::vector<int> b_coord_fingerprint(const std::vector<Word>& words, int n, int i) {
    std::vector<int> fp(n + 1, 0);
    for (Word w : words)
        if (w & (Word{1} << i)) ++fp[weight(w)];
    return fp;
}

struct BEquivSearch {
    int n;
    std::unordered_set<Word> dset;
    std::vector<std::vector<int>> fpc, fpd;
    std::vector<int> order;                    // source coordinates, constraint-first
    std::vector<std::vector<Word>> decided_at; // C-words fully supported once order[d] is assigned
    std::vector<int> perm;                     // source coord -> target coord
    std::vector<bool> used;
    bool found = false;

    Word image(Word w) const {
        Word out = 0;
        while (w) {
            int i = std::countr_zero(w);
            w &= w - 1;
            out |= Word{1} << perm[i];
        }
        return out;
    }

    void rec(size_t depth) {
        if (found) return;
        if (depth == order.size()) { found = true; return; }
        int i = order[depth];
        for (int j = 0; j < n && !found; ++j) {
            if (used[j] || fpc[i] != fpd[j]) continue;
            used[j] = true;
            perm[i] = j;
            bool ok = true;
            for (Word w : decided_at[depth])
                if (!dset.count(image(w))) { ok = false; break; }
            if (ok) rec(depth + 1);
            used[j] = false;
        }
    }
};

}  // namespace detail

// Coordinate-permutation witness mapping C onto D, or nullopt. Exhaustive
// backtracking over assignments, pruned by weight-profile fingerprints and
// by membership of every fully-assigned codeword image.
inline std::optional<std::vector<int>> code_equivalent(const BinCode& c, const BinCode& d) {
    if (c.n != d.n) throw std::invalid_argument("code_equivalent: length mismatch");
    if (c.dim() != d.dim()) return std::nullopt;
    auto cw = c.words();
    auto dw = d.words();
    {
        auto we_c = code_weight_enumerator(c);
        if (we_c != code_weight_enumerator(d)) return std::nullopt;
    }
    detail::BEquivSearch s;
    s.n = c.n;
    s.dset.insert(dw.begin(), dw.end());
    for (int i = 0; i < c.n; ++i) {
        s.fpc.push_back(detail::b_coord_fingerprint(cw, c.n, i));
        s.fpd.push_back(detail::b_coord_fingerprint(dw, d.n, i));
    }
    {
        auto a = s.fpc, b = s.fpd;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    // assignment order: greedily close low-weight codewords early
    std::vector<Word> low;
    for (Word w : cw)
        if (w && weight(w) <= 8) low.push_back(w);
    std::vector<bool> placed(c.n, false);
    for (int step = 0; step < c.n; ++step) {
        int best = -1;
        long best_score = -1;
        for (int i = 0; i < c.n; ++i) {
            if (placed[i]) continue;
            long score = 0;
            for (Word w : low) {
                if (!(w & (Word{1} << i))) continue;
                int missing = 0;
                for (int j = 0; j < c.n; ++j)
                    if ((w & (Word{1} << j)) && !placed[j] && j != i) ++missing;
                score += (missing == 0) ? 1000 : 100 / (1 + missing);
            }
            if (score > best_score) { best_score = score; best = i; }
        }
        placed[best] = true;
        s.order.push_back(best);
    }
    s.decided_at.resize(c.n);
    {
        std::vector<int> pos(c.n);
        for (int d2 = 0; d2 < c.n; ++d2) pos[s.order[d2]] = d2;
        for (Word w : cw) {
            if (!w) continue;
            int last = 0;
            for (int i = 0; i < c.n; ++i)
                if (w & (Word{1} << i)) last = std::max(last, pos[i]);
            s.decided_at[last].push_back(w);
        }
    }
    s.perm.assign(c.n, 0);
    s.used.assign(c.n, false);
    s.rec(0);
    if (!s.found) return std::nullopt;
    std::vector<Word> mapped;
    for (Word b : c.basis) mapped.push_back(s.image(b));
    if (!(BinCode(c.n, mapped) == d)) throw std::logic_error("code_equivalent: witness failed re-verification");
    return s.perm;
}

inline BinCode apply_perm(const BinCode& c, const std::vector<int>& perm) {
    std::vector<Word> rows;
    for (Word b : c.basis) {
        Word out = 0;
        for (int i = 0; i < c.n; ++i)
            if (b & (Word{1} << i)) out |= Word{1} << perm[i];
        rows.push_back(out);
    }
    return BinCode(c.n, rows);
}

// ---- recovery of a Kleinian code -------------------------------------------

struct KRecovery {
    KCode code;
    std::vector<int> perm;  // coordinate permutation normalizing the frame to 4-blocks
};

namespace detail {

// Read a Kleinian symbol off an even-weight 4-bit block: the block or its
// complement must be one of the hat images.
inline int block_symbol(Word v) {
    switch (v & 0xF) {
        case 0b0000: case 0b1111: return 0;
        case 0b0011: case 0b1100: return 1;
        case 0b0101: case 0b1010: return 2;
        case 0b0110: case 0b1001: return 3;
        default: throw DefectError("recover_kleinian: odd-weight block after normalization");
    }
}

inline KCode extract_kleinian(const BinCode& c) {
    int m = c.n / 4;
    std::vector<Word> krows;
    for (Word b : c.basis) {
        Word k = 0;
        for (int i = 0; i < m; ++i) k |= Word(block_symbol(b >> (4 * i))) << (2 * i);
        krows.push_back(k);
    }
    return KCode(m, krows);
}

inline std::vector<int> perm_from_supports(const std::vector<Word>& frame, int n) {
    std::vector<int> perm(n, -1);
    int target = 0;
    for (Word u : frame) {
        Word w = u;
        while (w) {
            int i = std::countr_zero(w);
            w &= w - 1;
            perm[i] = target++;
        }
    }
    for (int i = 0; i < n; ++i)
        if (perm[i] < 0) throw DefectError("recover_kleinian: frame does not cover all coordinates");
    return perm;
}

}  // namespace detail

// Mode 2: C doubly-even, x in C-perp minus C. If the counting hypothesis
// |(x+C)(4)| >= n/4 + |C(4)| holds, greedily collect disjoint weight-4
// words of x+C (one exists at each stage), normalize them to the standard
// 4-blocks and read the Kleinian symbols; the result satisfies
// C' = ConstructionB(K) and C' + u1 = ConstructionA(K) exactly.
inline KRecovery recover_kleinian_coset(const BinCode& c, Word x) {
    if (!is_doubly_even(c)) throw std::invalid_argument("recover_kleinian: code not doubly-even");
    if (c.n % 4 != 0) throw std::invalid_argument("recover_kleinian: length not divisible by 4");
    if (c.contains(x)) throw std::invalid_argument("recover_kleinian: x lies in C");
    for (Word b : c.basis)
        if (f2_dot(b, x)) throw std::invalid_argument("recover_kleinian: x not in the dual of C");
    int m = c.n / 4;
    auto coset_we = coset_weight_enumerator(c, x);
    auto code_we = code_weight_enumerator(c);
    if (coset_we[4] < m + code_we[4])
        throw HypothesisViolation("recover_kleinian: |(x+C)(4)| >= n/4 + |C(4)| fails");

    std::vector<Word> coset4;
    for (Word w : c.words())
        if (weight(w ^ x) == 4) coset4.push_back(w ^ x);
    std::sort(coset4.begin(), coset4.end());

    std::vector<Word> frame;
    Word used = 0;
    for (int r = 0; r < m; ++r) {
        Word pick = 0;
        for (Word w : coset4)
            if (!(w & used)) { pick = w; break; }
        if (!pick) throw DefectError("recover_kleinian: no disjoint weight-4 word although hypothesis holds");
        frame.push_back(pick);
        used |= pick;
    }

    auto perm = detail::perm_from_supports(frame, c.n);
    BinCode cp = apply_perm(c, perm);
    KCode k = detail::extract_kleinian(cp);
    if (!(construction_b_code(k) == cp))
        throw DefectError("recover_kleinian: ConstructionB(K) mismatch");
    std::vector<Word> with_u1 = cp.basis;
    with_u1.push_back(d4_block(0));
    if (!(construction_a_code(k) == BinCode(c.n, with_u1)))
        throw DefectError("recover_kleinian: ConstructionA(K) mismatch");
    return {k, perm};
}

// Mode 1: if d4^m sits inside C up to coordinate permutation, return K
// with C ~ ConstructionA(K). Exact-cover backtracking over the weight-4
// codewords of C.
inline std::optional<KRecovery> recover_kleinian_full(const BinCode& c) {
    if (!is_doubly_even(c)) throw std::invalid_argument("recover_kleinian: code not doubly-even");
    if (c.n % 4 != 0) return std::nullopt;
    int m = c.n / 4;
    std::vector<Word> words4;
    for (Word w : c.words())
        if (weight(w) == 4) words4.push_back(w);
    std::sort(words4.begin(), words4.end());

    std::vector<Word> frame;
    std::function<bool(Word)> cover = [&](Word used) -> bool {
        if (static_cast<int>(frame.size()) == m) return true;
        int lowest = std::countr_zero(~used);
        for (Word w : words4) {
            if ((w & used) || !(w & (Word{1} << lowest))) continue;
            frame.push_back(w);
            if (cover(used | w)) return true;
            frame.pop_back();
        }
        return false;
    };
    if (!cover(0)) return std::nullopt;

    auto perm = detail::perm_from_supports(frame, c.n);
    BinCode cp = apply_perm(c, perm);
    KCode k = detail::extract_kleinian(cp);
    if (!(construction_a_code(k) == cp)) throw DefectError("recover_kleinian: ConstructionA(K) mismatch");
    return KRecovery{k, perm};
}

// ---- self-dual embedding ---------------------------------------------------

namespace detail {

inline std::vector<Word> coset_reps_sorted(const BinCode& sub, const BinCode& super) {
    std::vector<Word> reps;
    std::unordered_set<Word> seen;
    auto words = super.words();
    std::sort(words.begin(), words.end());
    for (Word w : words) {
        Word r = CosetLabel::canonical(sub, w);
        if (seen.insert(r).second) reps.push_back(r);
    }
    std::sort(reps.begin(), reps.end());
    return reps;
}

inline std::optional<BinCode> embed_self_dual_rec(const BinCode& c) {
    BinCode dual = code_dual(c);
    if (dual == c) return c;
    for (Word r : coset_reps_sorted(c, dual)) {
        if (r == 0 || weight(r) % 4 != 0) continue;
        std::vector<Word> rows = c.basis;
        rows.push_back(r);
        if (auto done = embed_self_dual_rec(BinCode(c.n, rows))) return done;
    }
    return std::nullopt;
}

}  // namespace detail

// Doubly-even self-dual code containing C (length 0 mod 8 guarantees one).
// Greedy adjunction in lexicographic coset-representative order, with
// backtracking on stall.
inline BinCode embed_self_dual(const BinCode& c) {
    if (!is_doubly_even(c)) throw std::invalid_argument("embed_self_dual: code not doubly-even");
    if (c.n % 8 != 0) throw std::invalid_argument("embed_self_dual: length not divisible by 8");
    auto done = detail::embed_self_dual_rec(c);
    if (!done) throw DefectError("embed_self_dual: exhausted although an extension must exist");
    return *done;
}

// All equivalence classes of doubly-even length-8 codes containing 1^8.
inline std::vector<BinCode> enumerate_doubly_even_containing_allones(int n) {
    if (n != 8) throw std::invalid_argument("enumerate_doubly_even_containing_allones: only n = 8");
    std::vector<BinCode> reps;
    f2_enumerate_subspaces(8, 1, 4, [&](const std::vector<Word>& rows) {
        for (Word r : rows)
            if (weight(r) % 4 != 0) return;
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = i + 1; j < rows.size(); ++j)
                if (f2_dot(rows[i], rows[j])) return;
        if (!f2_in_span(rows, 0xFF)) return;
        BinCode cand(8, rows);
        for (const BinCode& r : reps) {
            if (r.dim() != cand.dim()) continue;
            if (code_equivalent(cand, r)) return;
        }
        reps.push_back(cand);
    });
    std::sort(reps.begin(), reps.end(), [](const BinCode& a, const BinCode& b) { return a.dim() < b.dim(); });
    return reps;
}

}  // namespace latcode
