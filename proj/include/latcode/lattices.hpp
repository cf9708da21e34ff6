// Even lattices on a fixed integer grid: every vector is stored as integer
// coordinates in units alpha_i/8, where (alpha_i, alpha_j) = 2 delta_ij.
// True inner products are grid dot products divided by 32, so evenness,
// duality and determinants are pure integer computations. Bases are kept
// in canonical HNF; lattice equality is HNF equality.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "bincodes.hpp"
#include "errors.hpp"
#include "exactmat.hpp"
#include "qseries.hpp"

namespace latcode {

using Vec = std::vector<i64>;

inline i64 dot_grid(const Vec& u, const Vec& v) {
    i64 s = 0;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

struct Lattice {
    int n = 0;
    IMat basis;  // n x n, HNF, rows = basis vectors on the alpha/8 grid

    bool operator==(const Lattice& o) const { return n == o.n && basis == o.basis; }
};

inline Lattice make_lattice(const IMat& gens) {
    Lattice l;
    l.basis = hnf(gens);
    l.n = gens.cols;
    if (l.basis.rows != l.n) throw std::invalid_argument("make_lattice: generators do not have full rank");
    return l;
}

inline Vec basis_row(const Lattice& l, int i) {
    Vec v(l.n);
    for (int j = 0; j < l.n; ++j) v[j] = l.basis.at(i, j);
    return v;
}

// scaled Gram: SG = B B^T, true Gram = SG / 32
inline IMat sgram(const Lattice& l) { return imat_gram(l.basis); }

inline bool lat_integral(const Lattice& l) {
    IMat g = sgram(l);
    for (i64 v : g.a)
        if (v % 32 != 0) return false;
    return true;
}

inline bool lat_even(const Lattice& l) {
    IMat g = sgram(l);
    for (int i = 0; i < l.n; ++i) {
        if (g.at(i, i) % 64 != 0) return false;
        for (int j = 0; j < l.n; ++j)
            if (g.at(i, j) % 32 != 0) return false;
    }
    return true;
}

// det of the true Gram = det(B)^2 / 32^n; going through det(B) keeps the
// Bareiss intermediates within __int128 at rank 16
inline i128 lat_det_gram(const Lattice& l) {
    i128 db = det_exact(l.basis);
    if (db < 0) db = -db;
    if (db >= (i128(1) << 62)) throw std::overflow_error("lat_det_gram: determinant too large");
    i128 d = db * db;
    for (int i = 0; i < l.n; ++i) {
        if (d % 32 != 0) throw std::logic_error("lat_det_gram: non-integral determinant");
        d /= 32;
    }
    return d;
}

inline bool lat_unimodular(const Lattice& l) { return lat_even(l) && lat_det_gram(l) == 1; }

// membership by back-substitution against the HNF pivots
inline bool lat_contains(const Lattice& l, Vec v) {
    for (int i = 0; i < l.basis.rows; ++i) {
        int c = 0;
        while (c < l.n && l.basis.at(i, c) == 0) ++c;
        if (c == l.n) continue;
        if (v[c] % l.basis.at(i, c) != 0) continue;
        i64 q = v[c] / l.basis.at(i, c);
        if (q)
            for (int j = 0; j < l.n; ++j) v[j] -= q * l.basis.at(i, j);
    }
    for (i64 x : v)
        if (x) return false;
    return true;
}

// Canonical representative of v + L inside the HNF box. Rows are applied
// first to last: once v[pivot_i] is reduced into [0, pivot), later rows
// have zeros in that column and cannot disturb it.
inline Vec reduce_mod_lattice(const Lattice& l, Vec v) {
    for (int i = 0; i < l.basis.rows; ++i) {
        int c = 0;
        while (c < l.n && l.basis.at(i, c) == 0) ++c;
        i64 piv = l.basis.at(i, c);
        i64 q = v[c] / piv;
        if (v[c] % piv < 0) --q;
        if (q)
            for (int j = 0; j < l.n; ++j) v[j] -= q * l.basis.at(i, j);
    }
    return v;
}

// ---- constructions ----------------------------------------------------------

inline Lattice construction_a_lattice(const BinCode& c) {
    if (!is_doubly_even(c)) throw std::invalid_argument("construction_a_lattice: code not doubly-even");
    IMat g(c.n + c.dim(), c.n);
    for (int i = 0; i < c.n; ++i) g.at(i, i) = 8;
    for (int r = 0; r < c.dim(); ++r)
        for (int j = 0; j < c.n; ++j)
            if (c.basis[r] & (Word{1} << j)) g.at(c.n + r, j) = 4;
    return make_lattice(g);
}

inline Lattice construction_b_lattice(const BinCode& c) {
    if (!is_doubly_even(c)) throw std::invalid_argument("construction_b_lattice: code not doubly-even");
    IMat g(c.n + 1 + c.dim(), c.n);
    g.at(0, 0) = 16;
    for (int i = 1; i < c.n; ++i) {
        g.at(i, 0) = 8;
        g.at(i, i) = 8;
    }
    for (int r = 0; r < c.dim(); ++r)
        for (int j = 0; j < c.n; ++j)
            if (c.basis[r] & (Word{1} << j)) g.at(c.n + 1 + r, j) = 4;
    return make_lattice(g);
}

// sqrt2 scaling via the coordinate-pair similarity (x,y) -> (x+y, x-y),
// which doubles every norm while staying on the grid; rank must be even
inline Lattice scale_sqrt2(const Lattice& l) {
    if (l.n % 2 != 0) throw std::invalid_argument("scale_sqrt2: rank must be even");
    IMat g(l.n, l.n);
    for (int r = 0; r < l.n; ++r)
        for (int p = 0; p < l.n; p += 2) {
            g.at(r, p) = l.basis.at(r, p) + l.basis.at(r, p + 1);
            g.at(r, p + 1) = l.basis.at(r, p) - l.basis.at(r, p + 1);
        }
    return make_lattice(g);
}

inline Lattice direct_sum(const Lattice& a, const Lattice& b) {
    IMat g(a.n + b.n, a.n + b.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) g.at(i, j) = a.basis.at(i, j);
    for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) g.at(a.n + i, a.n + j) = b.basis.at(i, j);
    return make_lattice(g);
}

inline Lattice lattice_e8() { return construction_a_lattice(bincode_e8()); }

// ---- dual and discriminant --------------------------------------------------

// L* basis = 32 (B^T)^{-1}; entries must stay on the grid
inline Lattice dual_lattice(const Lattice& l) {
    auto adj = adjugate(imat_transpose(l.basis));
    i128 det = det_exact(l.basis);
    if (det < 0) det = -det;
    i128 sign = det_exact(l.basis) < 0 ? -1 : 1;
    IMat d(l.n, l.n);
    for (int i = 0; i < l.n; ++i)
        for (int j = 0; j < l.n; ++j) {
            i128 num = 32 * sign * adj[size_t(i) * l.n + j];
            if (num % det != 0)
                throw std::invalid_argument("dual_lattice: dual leaves the alpha/8 grid");
            d.at(i, j) = checked_narrow(num / det, "dual_lattice");
        }
    return make_lattice(d);
}

struct Discriminant {
    std::vector<i64> factors;  // nontrivial invariant factors of L*/L
    long long order = 1;
    bool elementary2 = true;
    int two_rank = 0;  // k with L*/L = Z_2^k when elementary
};

inline Discriminant discriminant_group(const Lattice& l) {
    if (!lat_integral(l)) throw std::invalid_argument("discriminant_group: lattice not integral");
    IMat g = sgram(l);
    for (auto& v : g.a) v /= 32;
    Discriminant d;
    for (i64 f : smith_invariants(g)) {
        if (f == 1) continue;
        d.factors.push_back(f);
        d.order = checked_narrow(i128(d.order) * f, "discriminant order");
        if (f != 2) d.elementary2 = false;
    }
    d.two_rank = d.elementary2 ? static_cast<int>(d.factors.size()) : 0;
    return d;
}

// ---- short vectors (Fincke-Pohst) -------------------------------------------

namespace detail {

inline void fp_guard(int n, i64 bound32) {
    i64 maxb = (n <= 8) ? 32 * 24 : (n <= 16) ? 32 * 8 : -1;
    if (maxb < 0 || bound32 > maxb)
        throw std::invalid_argument("short vectors: bound/rank beyond the desk-scale guard");
}

// callback(exact grid vector, exact norm32)
template <typename F>
void fp_enumerate(const Lattice& l, const Vec* shift, i64 bound32, F&& leaf) {
    int n = l.n;
    // Q(x) = sum_k q_kk (x_k + sum_{j>k} q_kj x_j)^2 for the scaled Gram
    std::vector<std::vector<double>> q(n, std::vector<double>(n));
    {
        IMat a = sgram(l);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) q[i][j] = double(a.at(i, j));
        for (int k = 0; k < n; ++k) {
            for (int i = k + 1; i < n; ++i) {
                double mu = q[i][k] / q[k][k];
                for (int j = k; j < n; ++j) q[i][j] -= mu * q[k][j];
            }
        }
        for (int k = 0; k < n; ++k)
            for (int j = k + 1; j < n; ++j) q[k][j] /= q[k][k];
    }
    // coset shift in coefficient space: t with t B = shift
    std::vector<double> t(n, 0.0);
    if (shift) {
        std::vector<std::vector<double>> b(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b[i][j] = double(l.basis.at(i, j));
        std::vector<double> rhs(shift->begin(), shift->end());
        // solve t * B = rhs by Gaussian elimination on B^T t^T = rhs^T
        std::vector<std::vector<double>> m(n, std::vector<double>(n + 1));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) m[i][j] = b[j][i];
            m[i][n] = rhs[i];
        }
        for (int c = 0; c < n; ++c) {
            int piv = c;
            for (int r = c + 1; r < n; ++r)
                if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
            std::swap(m[c], m[piv]);
            for (int r = 0; r < n; ++r) {
                if (r == c) continue;
                double f = m[r][c] / m[c][c];
                for (int j = c; j <= n; ++j) m[r][j] -= f * m[c][j];
            }
        }
        for (int i = 0; i < n; ++i) t[i] = m[i][n] / m[i][i];
    }

    const double C = double(bound32) + 0.25;
    std::vector<i64> x(n, 0);
    std::vector<double> center(n, 0.0), partial(n + 1, 0.0);
    std::vector<i64> xmax(n, 0);
    Vec v(n);

    int k = n - 1;
    bool descend = true;
    while (true) {
        if (descend) {
            // compute range at level k
            double c_k = t[k];
            for (int j = k + 1; j < n; ++j) c_k += q[k][j] * (double(x[j]) + t[j]);
            center[k] = c_k;
            double room = (C - partial[k + 1]) / q[k][k];
            if (room < 0) room = 0;
            double rad = std::sqrt(room) + 1e-9;
            x[k] = (i64)std::ceil(-c_k - rad);
            xmax[k] = (i64)std::floor(-c_k + rad);
        } else {
            ++x[k];
        }
        if (x[k] > xmax[k]) {
            ++k;
            if (k == n) break;
            descend = false;
            continue;
        }
        double y = double(x[k]) + center[k];
        partial[k] = partial[k + 1] + q[k][k] * y * y;
        if (partial[k] > C + 1e-6) { descend = false; continue; }
        if (k == 0) {
            for (int j = 0; j < n; ++j) {
                i64 s = shift ? (*shift)[j] : 0;
                for (int i = 0; i < n; ++i) s += x[i] * l.basis.at(i, j);
                v[j] = s;
            }
            i64 norm32 = dot_grid(v, v);
            if (norm32 <= bound32) leaf(v, norm32);
            descend = false;
            continue;
        }
        --k;
        descend = true;
    }
}

}  // namespace detail

inline std::map<i64, long long> counts_by_norm(const Lattice& l, const Vec* shift, i64 bound32) {
    detail::fp_guard(l.n, bound32);
    std::map<i64, long long> counts;
    detail::fp_enumerate(l, shift, bound32, [&](const Vec&, i64 norm32) { ++counts[norm32]; });
    return counts;
}

inline std::vector<Vec> short_vector_list(const Lattice& l, const Vec* shift, i64 bound32) {
    detail::fp_guard(l.n, bound32);
    std::vector<Vec> out;
    detail::fp_enumerate(l, shift, bound32, [&](const Vec& v, i64 norm32) {
        if (norm32 > 0) out.push_back(v);
    });
    std::sort(out.begin(), out.end());
    return out;
}

inline long long count_norm(const Lattice& l, i64 norm32) {
    auto c = counts_by_norm(l, nullptr, norm32);
    auto it = c.find(norm32);
    return it == c.end() ? 0 : it->second;
}

// ---- theta series -----------------------------------------------------------

namespace detail {

struct HnfTransform {
    IMat h;
    IMat u;  // u * input = h (u square unimodular)
};

inline HnfTransform hnf_with_transform(const IMat& in) {
    IMat m = in;
    IMat u = IMat::identity(in.rows);
    auto rowop_sub = [&](IMat& mm, int dst, int src, i64 q) {
        for (int j = 0; j < mm.cols; ++j)
            mm.at(dst, j) = checked_narrow(i128(mm.at(dst, j)) - i128(q) * mm.at(src, j), "hnf_with_transform");
    };
    auto swap_rows = [&](int a, int b) {
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
        for (int j = 0; j < u.cols; ++j) std::swap(u.at(a, j), u.at(b, j));
    };
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        while (true) {
            int piv = -1;
            for (int i = r; i < m.rows; ++i)
                if (m.at(i, c) != 0 && (piv < 0 || std::abs(m.at(i, c)) < std::abs(m.at(piv, c)))) piv = i;
            if (piv < 0) break;
            if (piv != r) swap_rows(r, piv);
            bool clean = true;
            for (int i = r + 1; i < m.rows; ++i) {
                if (m.at(i, c) == 0) continue;
                i64 q = m.at(i, c) / m.at(r, c);
                if (q) { rowop_sub(m, i, r, q); rowop_sub(u, i, r, q); }
                if (m.at(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (r < m.rows && m.at(r, c) != 0) {
            if (m.at(r, c) < 0) {
                for (int j = 0; j < m.cols; ++j) m.at(r, j) = -m.at(r, j);
                for (int j = 0; j < u.cols; ++j) u.at(r, j) = -u.at(r, j);
            }
            for (int i = 0; i < r; ++i) {
                i64 q = m.at(i, c) / m.at(r, c);
                if (m.at(i, c) % m.at(r, c) < 0) --q;
                if (q) { rowop_sub(m, i, r, q); rowop_sub(u, i, r, q); }
            }
            ++r;
        }
    }
    return {m, u};
}

// intersection of two row lattices of the same dimension
inline IMat lattice_intersection(const IMat& a, const IMat& b) {
    IMat stacked(a.rows + b.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) stacked.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < a.cols; ++j) stacked.at(a.rows + i, j) = b.at(i, j);
    auto ht = hnf_with_transform(stacked);
    std::vector<Vec> gens;
    for (int i = ht.h.rows - 1; i >= 0; --i) {
        bool zero = true;
        for (int j = 0; j < ht.h.cols; ++j)
            if (ht.h.at(i, j)) { zero = false; break; }
        if (!zero) break;
        Vec g(a.cols, 0);
        for (int k = 0; k < a.rows; ++k)
            for (int j = 0; j < a.cols; ++j)
                g[j] = checked_narrow(i128(g[j]) + i128(ht.u.at(i, k)) * a.at(k, j), "lattice_intersection");
        gens.push_back(g);
    }
    IMat out(static_cast<int>(gens.size()), a.cols);
    for (size_t i = 0; i < gens.size(); ++i)
        for (int j = 0; j < a.cols; ++j) out.at(static_cast<int>(i), j) = gens[i][j];
    return hnf(out);
}

// coset representatives of lat / sub by BFS closure, canonically reduced
inline std::vector<Vec> quotient_reps(const Lattice& lat, const Lattice& sub, size_t cap) {
    std::set<Vec> seen;
    std::vector<Vec> queue;
    Vec zero(lat.n, 0);
    seen.insert(zero);
    queue.push_back(zero);
    for (size_t head = 0; head < queue.size(); ++head) {
        for (int r = 0; r < lat.n; ++r) {
            Vec nxt = queue[head];
            for (int j = 0; j < lat.n; ++j) nxt[j] += lat.basis.at(r, j);
            nxt = reduce_mod_lattice(sub, nxt);
            if (seen.insert(nxt).second) {
                if (seen.size() > cap) throw std::invalid_argument("quotient_reps: index beyond guard");
                queue.push_back(nxt);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

// Exact count-by-norm for one coset r + 8K, where K <= Z^n contains 2Z^n
// and membership in K is cut out by parity functionals. Dynamic program
// over coordinates with the functional parities as state.
inline void coset_counts_dp(const Vec& r, const std::vector<Word>& funcs, i64 bound32,
                            std::vector<long long>& acc) {
    int n = static_cast<int>(r.size());
    int nf = static_cast<int>(funcs.size());
    size_t states = size_t{1} << nf;
    std::vector<std::vector<long long>> dp(states, std::vector<long long>(bound32 + 1, 0));
    dp[0][0] = 1;
    std::vector<std::vector<long long>> nxt(states, std::vector<long long>(bound32 + 1, 0));
    for (int i = 0; i < n; ++i) {
        for (auto& row : nxt) std::fill(row.begin(), row.end(), 0);
        Word fb = 0;
        for (int f = 0; f < nf; ++f)
            if (funcs[f] & (Word{1} << i)) fb |= Word{1} << f;
        for (int par = 0; par < 2; ++par) {
            size_t flip = par ? size_t(fb) : 0;
            // values (r_i + 8z)^2 over z of the given parity
            for (i64 z = -((i64)std::sqrt(double(bound32)) / 8 + 3);; ++z) {
                if ((((z % 2) + 2) % 2) != par) continue;
                i64 val = r[i] + 8 * z;
                i64 nv = val * val;
                if (val > 0 && nv > bound32) break;
                if (nv > bound32) continue;
                for (size_t s = 0; s < states; ++s) {
                    const auto& src = dp[s];
                    auto& dst = nxt[s ^ flip];
                    for (i64 m = 0; m + nv <= bound32; ++m)
                        if (src[size_t(m)]) dst[size_t(m + nv)] += src[size_t(m)];
                }
            }
        }
        dp.swap(nxt);
    }
    for (i64 m = 0; m <= bound32; ++m) acc[size_t(m)] += dp[0][size_t(m)];
}

struct ThetaProfileKey {
    std::vector<std::pair<i64, Word>> items;  // sorted (residue value, functional column)
    bool operator<(const ThetaProfileKey& o) const { return items < o.items; }
};

}  // namespace detail

// Exact theta counts to any precision via the coset-convolution backend;
// falls back to guarded enumeration when the lattice lacks the required
// congruence structure.
inline std::vector<long long> theta_counts(const Lattice& l, const Vec* shift, i64 bound32) {
    // M = L intersect 8Z^n, K = M/8 with 2Z^n <= K
    IMat eight(l.n, l.n);
    for (int i = 0; i < l.n; ++i) eight.at(i, i) = 8;
    IMat m = detail::lattice_intersection(l.basis, eight);
    bool dp_ok = (m.rows == l.n);
    std::vector<Word> funcs;
    Lattice msub;
    if (dp_ok) {
        msub.n = l.n;
        msub.basis = m;
        IMat k = m;
        for (auto& v : k.a) v /= 8;
        Lattice kl{l.n, hnf(k)};
        Vec e(l.n, 0);
        for (int i = 0; i < l.n && dp_ok; ++i) {
            e.assign(l.n, 0);
            e[i] = 2;
            if (!lat_contains(kl, e)) dp_ok = false;   // need 2Z^n <= K, i.e. 16Z^n <= M
        }
        if (dp_ok) {
            std::vector<Word> krows;
            for (int i = 0; i < kl.basis.rows; ++i) {
                Word w = 0;
                for (int j = 0; j < l.n; ++j)
                    if (kl.basis.at(i, j) & 1) w |= Word{1} << j;
                krows.push_back(w);
            }
            funcs = f2_nullspace(krows, l.n);
            if (funcs.size() > 6) dp_ok = false;
        }
    }
    if (!dp_ok) {
        auto c = counts_by_norm(l, shift, bound32);
        std::vector<long long> out(bound32 + 1, 0);
        for (auto& [k2, v] : c) out[size_t(k2)] = v;
        return out;
    }
    auto reps = detail::quotient_reps(l, msub, 4096);
    std::vector<long long> acc(bound32 + 1, 0);
    std::map<detail::ThetaProfileKey, std::vector<long long>> cache;
    for (const auto& rep : reps) {
        Vec r = rep;
        if (shift) {
            for (int j = 0; j < l.n; ++j) r[j] += (*shift)[j];
            r = reduce_mod_lattice(msub, r);
        }
        detail::ThetaProfileKey key;
        for (int i = 0; i < l.n; ++i) {
            Word col = 0;
            for (size_t f = 0; f < funcs.size(); ++f)
                if (funcs[f] & (Word{1} << i)) col |= Word{1} << f;
            i64 res = ((r[i] % 16) + 16) % 16;
            key.items.emplace_back(res, col);
        }
        std::sort(key.items.begin(), key.items.end());
        auto it = cache.find(key);
        if (it == cache.end()) {
            std::vector<long long> one(bound32 + 1, 0);
            Vec rr(l.n);
            std::vector<Word> fsorted(funcs.size(), 0);
            for (int i = 0; i < l.n; ++i) {
                rr[i] = key.items[i].first;
                for (size_t f = 0; f < funcs.size(); ++f)
                    if (key.items[i].second & (Word{1} << f)) fsorted[f] |= Word{1} << i;
            }
            detail::coset_counts_dp(rr, fsorted, bound32, one);
            it = cache.emplace(key, std::move(one)).first;
        }
        for (i64 m2 = 0; m2 <= bound32; ++m2) acc[size_t(m2)] += it->second[size_t(m2)];
    }
    return acc;
}

// Theta series of lambda + L with q-exponents (v,v)/2, truncated at q^N.
inline QSeries theta_series(const Lattice& l, const Vec* shift, int precision_q) {
    i64 bound32 = 64LL * precision_q;
    auto counts = theta_counts(l, shift, bound32);
    QSeries s = QSeries::zero(48LL * precision_q + 1);
    s.offset = 0;
    s.coeffs.assign(size_t(s.trunc), 0);
    for (i64 m = 0; m <= bound32; ++m) {
        if (!counts[size_t(m)]) continue;
        if ((3 * m) % 4 != 0) throw std::invalid_argument("theta_series: norm off the 1/48 exponent grid");
        long long e = 3 * m / 4;
        if (e < s.trunc) s.coeffs[size_t(e)] += counts[size_t(m)];
    }
    return s;
}

// ---- characters of the lattice VOA ------------------------------------------

inline QSeries ch_vl(const Lattice& l, int precision_q) {
    return qs_ch_full(theta_series(l, nullptr, precision_q), l.n);
}
inline QSeries ch_vl_plus(const Lattice& l, int precision_q) {
    return qs_ch_plus(theta_series(l, nullptr, precision_q), l.n);
}
inline QSeries ch_vl_minus(const Lattice& l, int precision_q) {
    return qs_ch_minus(theta_series(l, nullptr, precision_q), l.n);
}
inline QSeries ch_coset(const Lattice& l, const Vec& lambda, int precision_q) {
    if (lat_contains(l, lambda)) throw std::invalid_argument("ch_coset: lambda lies in L");
    return qs_ch_coset(theta_series(l, &lambda, precision_q), l.n);
}

// ---- isometry ---------------------------------------------------------------

namespace detail {

// smallest even norm bound whose vectors generate the lattice
inline i64 generation_bound(const Lattice& l) {
    for (i64 b : {64, 128, 192, 256}) {
        if (l.n > 16 || (l.n > 8 && b > 256)) break;
        auto sv = short_vector_list(l, nullptr, b);
        IMat g(static_cast<int>(sv.size()), l.n);
        for (size_t i = 0; i < sv.size(); ++i)
            for (int j = 0; j < l.n; ++j) g.at(static_cast<int>(i), j) = sv[i][j];
        IMat h = hnf(g);
        if (h.rows == l.n && Lattice{l.n, h} == l) return b;
    }
    throw std::invalid_argument("isometry: lattice not generated by short vectors within the guard");
}

struct IsoSearch {
    int n;
    std::vector<Vec> src;                 // search generators of L (span L exactly)
    std::vector<std::vector<i64>> srcdot; // pairwise grid dots
    std::vector<i64> srcnorm;
    // target short vectors bucketed by norm
    std::map<i64, std::vector<Vec>> tgt;
    // fast bitset candidates for the most common norm class
    i64 fast_norm = 0;
    std::vector<Vec>* fast_list = nullptr;
    std::unordered_map<i64, std::vector<std::vector<std::uint64_t>>> fast_bits;  // dot -> per-vector bitset

    std::vector<const Vec*> images;
    bool found = false;

    bool search(size_t depth) {
        if (found) return true;
        if (depth == src.size()) { found = true; return true; }
        i64 nrm = srcnorm[depth];
        auto it = tgt.find(nrm);
        if (it == tgt.end()) return false;
        auto& cand = it->second;
        if (nrm == fast_norm && depth > 0) {
            bool all_fast = true;
            for (size_t j = 0; j < depth && all_fast; ++j)
                if (srcnorm[j] != fast_norm) all_fast = false;
            if (all_fast) return search_bitset(depth, cand);
        }
        for (const Vec& w : cand) {
            bool ok = true;
            for (size_t j = 0; j < depth && ok; ++j)
                if (dot_grid(w, *images[j]) != srcdot[depth][j]) ok = false;
            if (!ok) continue;
            images.push_back(&w);
            if (search(depth + 1)) return true;
            images.pop_back();
        }
        return false;
    }

    bool search_bitset(size_t depth, std::vector<Vec>& cand) {
        size_t words = (cand.size() + 63) / 64;
        std::vector<std::uint64_t> live(words, ~std::uint64_t{0});
        if (cand.size() % 64)
            live[words - 1] = (std::uint64_t{1} << (cand.size() % 64)) - 1;
        for (size_t j = 0; j < depth; ++j) {
            size_t jidx = static_cast<size_t>(images[j] - cand.data());
            i64 need = srcdot[depth][j];
            auto itb = fast_bits.find(need);
            if (itb == fast_bits.end()) return false;
            const auto& bs = itb->second[jidx];
            for (size_t w = 0; w < words; ++w) live[w] &= bs[w];
        }
        for (size_t w = 0; w < words; ++w) {
            std::uint64_t bits = live[w];
            while (bits) {
                size_t idx = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                images.push_back(&cand[idx]);
                if (search(depth + 1)) return true;
                images.pop_back();
            }
        }
        return false;
    }
};

}  // namespace detail

inline bool verify_isometry(const Lattice& l, const Lattice& m, const IMat& t) {
    if (t.rows != l.n || t.cols != l.n) return false;
    IMat left = imat_mul(imat_mul(t, sgram(m)), imat_transpose(t));
    if (!(left == sgram(l))) return false;
    i128 d = det_exact(t);
    return d == 1 || d == -1;
}

// Backtracking isometry test: witness T with T Gram_M T^T = Gram_L mapping
// the HNF basis of L onto M, or nullopt after exhausting the search.
inline std::optional<IMat> lattice_isometric(const Lattice& l, const Lattice& m) {
    if (l.n != m.n) throw std::invalid_argument("lattice_isometric: rank mismatch");
    if (l.n > 16) throw std::invalid_argument("lattice_isometric: rank beyond guard");
    if (lat_det_gram(l) != lat_det_gram(m)) return std::nullopt;
    i64 bl = detail::generation_bound(l);
    i64 bm = detail::generation_bound(m);
    if (bl != bm) return std::nullopt;
    auto cl = counts_by_norm(l, nullptr, bl);
    auto cm = counts_by_norm(m, nullptr, bl);
    if (cl != cm) return std::nullopt;

    // "generators": short vectors of L accumulated until they span L exactly
    auto svl = short_vector_list(l, nullptr, bl);
    std::stable_sort(svl.begin(), svl.end(), [](const Vec& a, const Vec& b) {
        return dot_grid(a, a) < dot_grid(b, b);
    });
    detail::IsoSearch s;
    s.n = l.n;
    {
        std::vector<Vec> chosen;
        IMat cur(0, l.n);
        auto spans_l = [&](const IMat& h) { return h.rows == l.n && Lattice{l.n, h} == l; };
        IMat h = cur;
        while (!spans_l(h)) {
            // first vector not in the current span, preferring constraint-rich ones
            const Vec* pick = nullptr;
            Lattice part;
            bool have_part = (h.rows == l.n);
            if (have_part) part = Lattice{l.n, h};
            long best = -1;
            for (const Vec& v : svl) {
                bool inside;
                if (h.rows < l.n) {
                    IMat test(h.rows + 1, l.n);
                    for (int i = 0; i < h.rows; ++i)
                        for (int j = 0; j < l.n; ++j) test.at(i, j) = h.at(i, j);
                    for (int j = 0; j < l.n; ++j) test.at(h.rows, j) = v[j];
                    inside = (hnf(test).rows == h.rows);
                } else {
                    inside = lat_contains(part, v);
                }
                if (inside) continue;
                long score = 0;
                for (const Vec& c : chosen)
                    if (dot_grid(v, c) != 0) ++score;
                if (score > best) { best = score; pick = &v; }
                if (h.rows < l.n && best >= 0) break;  // early levels: first non-member is fine
            }
            if (!pick) throw DefectError("lattice_isometric: generators exhausted before spanning");
            chosen.push_back(*pick);
            IMat g(static_cast<int>(chosen.size()), l.n);
            for (size_t i = 0; i < chosen.size(); ++i)
                for (int j = 0; j < l.n; ++j) g.at(static_cast<int>(i), j) = chosen[i][j];
            h = hnf(g);
        }
        s.src = chosen;
    }
    size_t gens = s.src.size();
    s.srcnorm.resize(gens);
    s.srcdot.assign(gens, {});
    for (size_t i = 0; i < gens; ++i) {
        s.srcnorm[i] = dot_grid(s.src[i], s.src[i]);
        s.srcdot[i].resize(i);
        for (size_t j = 0; j < i; ++j) s.srcdot[i][j] = dot_grid(s.src[i], s.src[j]);
    }
    {
        auto svm = short_vector_list(m, nullptr, bl);
        for (auto& v : svm) s.tgt[dot_grid(v, v)].push_back(std::move(v));
    }
    // bitset acceleration for the dominant norm class
    {
        i64 bestn = 0;
        size_t bestc = 0;
        for (auto& [nrm, vecs] : s.tgt)
            if (vecs.size() > bestc) { bestc = vecs.size(); bestn = nrm; }
        if (bestc > 0 && bestc <= 4096) {
            s.fast_norm = bestn;
            auto& list = s.tgt[bestn];
            s.fast_list = &list;
            size_t words = (list.size() + 63) / 64;
            for (size_t a = 0; a < list.size(); ++a)
                for (size_t b = 0; b < list.size(); ++b) {
                    i64 d = dot_grid(list[a], list[b]);
                    auto& grids = s.fast_bits[d];
                    if (grids.empty()) grids.assign(list.size(), std::vector<std::uint64_t>(words, 0));
                    grids[a][b / 64] |= std::uint64_t{1} << (b % 64);
                }
        }
    }
    if (!s.search(0)) return std::nullopt;

    // assemble the witness: express B_L through the generators, push through
    // the images, then divide by B_M
    IMat gensrc(static_cast<int>(gens), l.n);
    for (size_t i = 0; i < gens; ++i)
        for (int j = 0; j < l.n; ++j) gensrc.at(static_cast<int>(i), j) = s.src[i][j];
    auto ht = detail::hnf_with_transform(gensrc);
    {
        IMat stripped(l.n, l.n);
        if (ht.h.rows < l.n) throw DefectError("lattice_isometric: generator HNF mismatch");
        for (int i = 0; i < l.n; ++i)
            for (int j = 0; j < l.n; ++j) stripped.at(i, j) = ht.h.at(i, j);
        if (!(stripped == l.basis)) throw DefectError("lattice_isometric: generator HNF mismatch");
    }
    IMat w(static_cast<int>(gens), l.n);
    for (size_t i = 0; i < gens; ++i)
        for (int j = 0; j < l.n; ++j) w.at(static_cast<int>(i), j) = (*s.images[i])[j];
    IMat un(l.n, static_cast<int>(gens));
    for (int i = 0; i < l.n; ++i)
        for (size_t j = 0; j < gens; ++j) un.at(i, static_cast<int>(j)) = ht.u.at(i, static_cast<int>(j));
    IMat mapped = imat_mul(un, w);  // images of B_L rows, grid coords
    // T = mapped * B_M^{-1}
    auto adj = adjugate(m.basis);
    i128 det = det_exact(m.basis);
    IMat t(l.n, l.n);
    for (int i = 0; i < l.n; ++i)
        for (int j = 0; j < l.n; ++j) {
            i128 acc = 0;
            for (int k = 0; k < l.n; ++k) acc += i128(mapped.at(i, k)) * adj[size_t(k) * l.n + j];
            if (acc % det != 0) throw DefectError("lattice_isometric: non-integral witness");
            t.at(i, j) = checked_narrow(acc / det, "lattice_isometric");
        }
    if (!verify_isometry(l, m, t)) throw DefectError("lattice_isometric: witness failed re-verification");
    return t;
}

// ---- the rho isomorphism -----------------------------------------------------

// Blockwise orthogonal map with rho(alpha_{4i}) = (alpha_{4i-3} + ... + alpha_{4i})/2
// and rho(alpha_j) = (-alpha_{4i-3} - alpha_{4i-2} - alpha_{4i-1} + alpha_{4i})/2 + alpha_j.
inline IMat rho_matrix(int m) {
    IMat r(4 * m, 4 * m);
    for (int b = 0; b < m; ++b) {
        int o = 4 * b;
        for (int j = 0; j < 3; ++j) {
            r.at(o + j, o + 0) = -4;
            r.at(o + j, o + 1) = -4;
            r.at(o + j, o + 2) = -4;
            r.at(o + j, o + 3) = 4;
            r.at(o + j, o + j) += 8;
        }
        for (int c = 0; c < 4; ++c) r.at(o + 3, o + c) = 4;
    }
    return r;
}

// v -> v R / den on the grid, exact
inline Lattice apply_grid_map(const Lattice& l, const IMat& r, i64 den) {
    IMat g(l.n, l.n);
    for (int i = 0; i < l.n; ++i)
        for (int j = 0; j < l.n; ++j) {
            i128 acc = 0;
            for (int k = 0; k < l.n; ++k) acc += i128(l.basis.at(i, k)) * r.at(k, j);
            if (acc % den != 0) throw std::invalid_argument("apply_grid_map: image leaves the grid");
            g.at(i, j) = checked_narrow(acc / den, "apply_grid_map");
        }
    return make_lattice(g);
}

// rho carries ConstructionA(C+(K)) onto ConstructionB(C(K)); returns the
// verified grid matrix.
inline IMat rho_isomorphism(const KCode& k) {
    if (!k.is_even()) throw std::invalid_argument("rho_isomorphism: Kleinian code not even");
    IMat r = rho_matrix(k.n);
    // orthogonality: R R^T = 64 I
    IMat rrt = imat_gram(r);
    for (int i = 0; i < r.rows; ++i)
        for (int j = 0; j < r.cols; ++j)
            if (rrt.at(i, j) != (i == j ? 64 : 0)) throw DefectError("rho_isomorphism: block not orthogonal");
    Lattice src = construction_a_lattice(construction_b_code(k));
    Lattice dst = construction_b_lattice(construction_a_code(k));
    Lattice img = apply_grid_map(src, r, 8);
    if (!(img == dst)) throw DefectError("rho_isomorphism: image lattice mismatch");
    return r;
}

// ---- detection of construction B ---------------------------------------------

struct DetectedB {
    BinCode code;
    IMat frame;  // rows beta_i, pairwise orthogonal norm-2 vectors of lambda+L
};

namespace detail {

struct FrameSearch {
    const std::vector<Vec>* cands;
    int n;
    std::vector<const Vec*> frame;
    long long budget = 20'000'000;
    std::function<bool(const std::vector<const Vec*>&)> accept;
    bool done = false;

    bool rec(size_t start_hint) {
        if (done) return true;
        if (--budget < 0) throw DefectError("detect_construction_b: search budget exhausted");
        if (static_cast<int>(frame.size()) == n) {
            if (accept(frame)) { done = true; return true; }
            return false;
        }
        // increasing-index frames suffice: a verifying frame stays verifying
        // under reordering, the recovered code is permuted along with it
        for (size_t i = start_hint; i < cands->size(); ++i) {
            const Vec& v = (*cands)[i];
            bool ok = true;
            for (const Vec* b : frame)
                if (dot_grid(v, *b) != 0) { ok = false; break; }
            if (!ok) continue;
            frame.push_back(&v);
            if (rec(i + 1)) return true;
            frame.pop_back();
        }
        return false;
    }
};

}  // namespace detail

// If |(lambda+L)(2)| >= 2n + |L(2)| holds, search the coset's norm-2
// vectors for an orthogonal frame that exhibits L as ConstructionB(C);
// both resulting identifications are re-verified exactly.
inline DetectedB detect_construction_b(const Lattice& l, const Vec& lambda) {
    if (!lat_even(l)) throw std::invalid_argument("detect_construction_b: lattice not even");
    if (lat_contains(l, lambda)) throw std::invalid_argument("detect_construction_b: lambda lies in L");
    Vec twol(lambda);
    for (auto& x : twol) x *= 2;
    if (!lat_contains(l, twol)) throw std::invalid_argument("detect_construction_b: 2 lambda not in L");
    for (int i = 0; i < l.n; ++i) {
        Vec row = basis_row(l, i);
        if (dot_grid(lambda, row) % 32 != 0)
            throw std::invalid_argument("detect_construction_b: lambda not in the dual");
    }
    long long coset2 = 0, lat2 = 0;
    {
        auto cc = counts_by_norm(l, &lambda, 64);
        auto lc = counts_by_norm(l, nullptr, 64);
        if (cc.count(64)) coset2 = cc[64];
        if (lc.count(64)) lat2 = lc[64];
    }
    if (coset2 < 2 * l.n + lat2)
        throw HypothesisViolation("detect_construction_b: |(lambda+L)(2)| >= 2n + |L(2)| fails");

    auto cands = short_vector_list(l, &lambda, 64);
    std::vector<Vec> norm2;
    for (auto& v : cands)
        if (dot_grid(v, v) == 64) norm2.push_back(v);

    std::optional<DetectedB> result;
    detail::FrameSearch fs;
    fs.cands = &norm2;
    fs.n = l.n;
    fs.accept = [&](const std::vector<const Vec*>& frame) {
        // frame coordinates: v'_j = (v . beta_j) / 8
        auto to_frame = [&](const Vec& v, Vec& out) {
            for (int j = 0; j < l.n; ++j) {
                i64 d = dot_grid(v, *frame[j]);
                if (d % 8 != 0) return false;
                out[j] = d / 8;
            }
            return true;
        };
        IMat g(l.n, l.n);
        Vec tmp(l.n);
        for (int i = 0; i < l.n; ++i) {
            if (!to_frame(basis_row(l, i), tmp)) return false;
            for (int j = 0; j < l.n; ++j) g.at(i, j) = tmp[j];
        }
        IMat h = hnf(g);
        if (h.rows != l.n) return false;
        std::vector<Word> rows;
        for (int i = 0; i < l.n; ++i) {
            Word w = 0;
            for (int j = 0; j < l.n; ++j) {
                if (h.at(i, j) % 4 != 0) return false;
                if ((h.at(i, j) / 4) & 1) w |= Word{1} << j;
            }
            rows.push_back(w);
        }
        BinCode c(l.n, rows);
        if (!is_doubly_even(c)) return false;
        Lattice lframe{l.n, h};
        if (!(construction_b_lattice(c) == lframe)) return false;
        Vec lam_f(l.n);
        if (!to_frame(lambda, lam_f)) return false;
        IMat ext(l.n + 1, l.n);
        for (int i = 0; i < l.n; ++i)
            for (int j = 0; j < l.n; ++j) ext.at(i, j) = h.at(i, j);
        for (int j = 0; j < l.n; ++j) ext.at(l.n, j) = lam_f[j];
        if (!(construction_a_lattice(c) == make_lattice(ext))) return false;
        IMat fmat(l.n, l.n);
        for (int i = 0; i < l.n; ++i)
            for (int j = 0; j < l.n; ++j) fmat.at(i, j) = (*frame[i])[j];
        result = DetectedB{c, fmat};
        return true;
    };
    if (!fs.rec(0) || !result)
        throw DefectError("detect_construction_b: no verifying frame although the hypothesis holds");
    return *result;
}

// ---- unimodular embedding and overlattices -----------------------------------

inline std::vector<Vec> disc_coset_reps(const Lattice& l, size_t cap = 4096) {
    return detail::quotient_reps(dual_lattice(l), l, cap);
}

namespace detail {

inline std::optional<Lattice> embed_unimodular_rec(const Lattice& l) {
    if (lat_det_gram(l) == 1) return l;
    auto reps = disc_coset_reps(l);
    std::sort(reps.begin(), reps.end(), [](const Vec& a, const Vec& b) {
        i64 na = dot_grid(a, a), nb = dot_grid(b, b);
        if (na != nb) return na < nb;
        return a < b;
    });
    for (const Vec& r : reps) {
        i64 nrm = dot_grid(r, r);
        if (nrm == 0 || nrm % 64 != 0) continue;
        IMat g(l.n + 1, l.n);
        for (int i = 0; i < l.n; ++i)
            for (int j = 0; j < l.n; ++j) g.at(i, j) = l.basis.at(i, j);
        for (int j = 0; j < l.n; ++j) g.at(l.n, j) = r[j];
        Lattice bigger = make_lattice(g);
        if (!lat_even(bigger)) continue;
        if (auto done = embed_unimodular_rec(bigger)) return done;
    }
    return std::nullopt;
}

}  // namespace detail

// Even unimodular overlattice; exists whenever rank = 0 mod 8 and sqrt2 L*
// is even. Greedy adjunction of even-norm dual classes with backtracking.
inline Lattice embed_unimodular(const Lattice& l) {
    if (l.n % 8 != 0) throw std::invalid_argument("embed_unimodular: rank not divisible by 8");
    if (!lat_even(l)) throw std::invalid_argument("embed_unimodular: lattice not even");
    if (!lat_even(scale_sqrt2(dual_lattice(l))))
        throw std::invalid_argument("embed_unimodular: sqrt2 L* not even");
    auto done = detail::embed_unimodular_rec(l);
    if (!done) throw DefectError("embed_unimodular: exhausted although an overlattice must exist");
    return *done;
}

// Equivalence classes of even lattices between L and L*, deduped by
// isometry. Requires an elementary abelian 2-group discriminant.
inline std::vector<Lattice> even_overlattices(const Lattice& l) {
    Discriminant d = discriminant_group(l);
    if (!d.elementary2 || d.order > 256)
        throw std::invalid_argument("even_overlattices: discriminant beyond guard");
    if (!lat_even(l)) throw std::invalid_argument("even_overlattices: lattice not even");
    auto reps = disc_coset_reps(l);
    // F2 basis of the discriminant group
    std::vector<Vec> basis;
    {
        std::set<Vec> span;
        span.insert(reduce_mod_lattice(l, Vec(l.n, 0)));
        for (const Vec& r : reps) {
            if (span.count(r)) continue;
            basis.push_back(r);
            std::set<Vec> grown = span;
            for (const Vec& s : span) {
                Vec t(l.n);
                for (int j = 0; j < l.n; ++j) t[j] = s[j] + r[j];
                grown.insert(reduce_mod_lattice(l, t));
            }
            span.swap(grown);
            if (span.size() == reps.size()) break;
        }
    }
    int k = static_cast<int>(basis.size());
    std::vector<Lattice> classes;
    std::vector<std::string> class_keys;
    std::set<std::vector<i64>> seen_bases;
    f2_enumerate_subspaces(k, 0, k, [&](const std::vector<Word>& rows) {
        // evenness needs every lift of even norm and pairwise integral
        // products; sums are then even automatically
        std::vector<Vec> lifts(rows.size(), Vec(l.n, 0));
        for (size_t r = 0; r < rows.size(); ++r)
            for (int b = 0; b < k; ++b)
                if (rows[r] & (Word{1} << b))
                    for (int j = 0; j < l.n; ++j) lifts[r][j] += basis[b][j];
        for (size_t r = 0; r < lifts.size(); ++r) {
            if (dot_grid(lifts[r], lifts[r]) % 64 != 0) return;
            for (size_t s2 = r + 1; s2 < lifts.size(); ++s2)
                if (dot_grid(lifts[r], lifts[s2]) % 32 != 0) return;
        }
        IMat g(l.n + static_cast<int>(rows.size()), l.n);
        for (int i = 0; i < l.n; ++i)
            for (int j = 0; j < l.n; ++j) g.at(i, j) = l.basis.at(i, j);
        for (size_t r = 0; r < rows.size(); ++r)
            for (int j = 0; j < l.n; ++j) g.at(l.n + static_cast<int>(r), j) = lifts[r][j];
        Lattice m = make_lattice(g);
        if (!seen_bases.insert(m.basis.a).second) return;
        if (!lat_even(m)) return;
        // invariant bucket: determinant, SNF, short counts
        std::string key;
        {
            i128 det = lat_det_gram(m);
            key += std::to_string((long long)det) + "|";
            for (i64 f : discriminant_group(m).factors) key += std::to_string(f) + ",";
            key += "|";
            auto cc = counts_by_norm(m, nullptr, 128);
            for (auto& [nn, c] : cc) key += std::to_string(nn) + ":" + std::to_string(c) + ",";
        }
        for (size_t i = 0; i < classes.size(); ++i) {
            if (class_keys[i] != key) continue;
            if (lattice_isometric(m, classes[i])) return;
        }
        classes.push_back(m);
        class_keys.push_back(key);
    });
    std::sort(classes.begin(), classes.end(), [](const Lattice& a, const Lattice& b) {
        i128 da = lat_det_gram(a), db = lat_det_gram(b);
        if (da != db) return da > db;
        return a.basis.a < b.basis.a;
    });
    return classes;
}

// Diagonal sign isometry; verified to preserve the lattice.
inline IMat epsilon_automorphism(const Lattice& l, Word c) {
    IMat r(l.n, l.n);
    for (int i = 0; i < l.n; ++i) r.at(i, i) = (c & (Word{1} << i)) ? -1 : 1;
    for (int i = 0; i < l.n; ++i) {
        Vec v = basis_row(l, i);
        for (int j = 0; j < l.n; ++j) v[j] *= r.at(j, j);
        if (!lat_contains(l, v))
            throw std::invalid_argument("epsilon_automorphism: sign pattern does not preserve the lattice");
    }
    return r;
}

}  // namespace latcode
