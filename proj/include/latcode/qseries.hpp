// Truncated formal q-series on the (1/48)Z exponent grid, with the eta and
// theta building blocks and the lattice-VOA character formulas.
//
// A series is a dense coefficient window [offset, trunc) in grid units
// (exponent e means q^{e/48}); terms below offset are identically zero and
// reads at or beyond trunc throw. Window length is preserved by products
// and quotients, so building every base series with the same precision
// keeps characters valid through q^N.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace latcode {

namespace qs_detail {
inline long long narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("QSeries: coefficient overflow");
    return static_cast<long long>(v);
}
}  // namespace qs_detail

struct QSeries {
    long long offset = 0;
    long long trunc = 0;                // exclusive validity bound, grid units
    std::vector<long long> coeffs;      // coeffs[i] belongs to exponent offset + i

    long long len() const { return trunc - offset; }

    long long at_grid(long long e) const {
        if (e < offset) return 0;
        if (e >= trunc) throw std::logic_error("QSeries: read beyond truncation");
        return coeffs[size_t(e - offset)];
    }

    // coefficient of q^{num/den}
    long long at_q(long long num, long long den = 1) const {
        if ((48 * num) % den != 0) throw std::invalid_argument("QSeries: exponent off the 1/48 grid");
        return at_grid(48 * num / den);
    }

    void trim() {
        size_t lead = 0;
        while (lead < coeffs.size() && coeffs[lead] == 0) ++lead;
        offset += static_cast<long long>(lead);
        coeffs.erase(coeffs.begin(), coeffs.begin() + lead);
    }

    static QSeries zero(long long trunc_grid) {
        QSeries s;
        s.offset = s.trunc = trunc_grid;
        return s;
    }

    static QSeries monomial(long long c, long long e_grid, long long trunc_grid) {
        QSeries s;
        s.offset = e_grid;
        s.trunc = trunc_grid;
        if (s.trunc <= s.offset) throw std::invalid_argument("QSeries: empty window");
        s.coeffs.assign(size_t(s.trunc - s.offset), 0);
        s.coeffs[0] = c;
        return s;
    }
};

inline QSeries qs_add(const QSeries& a, const QSeries& b, long long sign = 1) {
    QSeries s;
    s.offset = std::min(a.offset, b.offset);
    s.trunc = std::min(a.trunc, b.trunc);
    if (s.trunc < s.offset) s.trunc = s.offset;
    s.coeffs.assign(size_t(s.trunc - s.offset), 0);
    for (long long e = s.offset; e < s.trunc; ++e)
        s.coeffs[size_t(e - s.offset)] = (e >= a.offset ? a.at_grid(e) : 0) + sign * (e >= b.offset ? b.at_grid(e) : 0);
    return s;
}

inline QSeries qs_sub(const QSeries& a, const QSeries& b) { return qs_add(a, b, -1); }

inline QSeries qs_mul(const QSeries& a, const QSeries& b) {
    QSeries s;
    s.offset = a.offset + b.offset;
    long long lenm = std::min(a.len(), b.len());
    s.trunc = s.offset + lenm;
    std::vector<__int128> acc(size_t(lenm), 0);
    for (long long i = 0; i < a.len(); ++i) {
        long long av = a.coeffs[size_t(i)];
        if (!av) continue;
        long long jmax = std::min(b.len(), lenm - i);
        for (long long j = 0; j < jmax; ++j) acc[size_t(i + j)] += __int128(av) * b.coeffs[size_t(j)];
    }
    s.coeffs.resize(size_t(lenm));
    for (long long i = 0; i < lenm; ++i) s.coeffs[size_t(i)] = qs_detail::narrow(acc[size_t(i)]);
    return s;
}

// Long division; the divisor must start with coefficient +-1.
inline QSeries qs_div(const QSeries& a, const QSeries& b) {
    if (b.len() <= 0 || (b.coeffs[0] != 1 && b.coeffs[0] != -1))
        throw std::invalid_argument("qs_div: divisor leading coefficient must be a unit");
    QSeries q;
    q.offset = a.offset - b.offset;
    long long lenm = std::min(a.len(), b.len());
    q.trunc = q.offset + lenm;
    q.coeffs.assign(size_t(lenm), 0);
    long long lead = b.coeffs[0];
    for (long long i = 0; i < lenm; ++i) {
        __int128 acc = a.coeffs[size_t(i)];
        for (long long j = 1; j <= i && j < b.len(); ++j)
            acc -= __int128(q.coeffs[size_t(i - j)]) * b.coeffs[size_t(j)];
        q.coeffs[size_t(i)] = qs_detail::narrow(acc / lead);
    }
    return q;
}

inline QSeries qs_pow(const QSeries& a, int e) {
    if (e < 0) throw std::invalid_argument("qs_pow: negative exponent");
    QSeries r = QSeries::monomial(1, 0, a.len() > 0 ? a.len() : 1);
    for (int i = 0; i < e; ++i) r = qs_mul(r, a);
    return r;
}

inline QSeries qs_scale(QSeries a, long long c) {
    for (auto& v : a.coeffs) v *= c;
    return a;
}

// exact division by an integer, used for the halving in the characters
inline QSeries qs_div_int(QSeries a, long long d) {
    for (auto& v : a.coeffs) {
        if (v % d != 0) throw std::logic_error("qs_div_int: non-integral coefficient");
        v /= d;
    }
    return a;
}

// substitute q -> q^m for m in {2, 1/2} (half = true divides exponents)
inline QSeries qs_substitute(const QSeries& a, bool half) {
    QSeries s;
    if (!half) {
        s.offset = 2 * a.offset;
        s.trunc = 2 * a.trunc;
        s.coeffs.assign(size_t(s.trunc - s.offset), 0);
        for (long long i = 0; i < a.len(); ++i) s.coeffs[size_t(2 * i)] = a.coeffs[size_t(i)];
        return s;
    }
    QSeries t = a;
    t.trim();
    if (t.offset % 2 != 0) throw std::invalid_argument("qs_substitute: odd leading exponent");
    s.offset = t.offset / 2;
    s.trunc = s.offset + (t.len() + 1) / 2;
    s.coeffs.assign(size_t(s.trunc - s.offset), 0);
    for (long long i = 0; i < t.len(); ++i) {
        if ((t.offset + i) % 2 != 0) {
            if (t.coeffs[size_t(i)] != 0)
                throw std::invalid_argument("qs_substitute: odd exponent with nonzero coefficient");
            continue;
        }
        s.coeffs[size_t((t.offset + i) / 2 - s.offset)] = t.coeffs[size_t(i)];
    }
    return s;
}

// ---- eta and theta ----------------------------------------------------------

// eta at nome q^{m} with 2m in {1, 2, 4}: q^{m/24} prod (1 - q^{mi}).
// twice_m = 2m keeps the grid arithmetic integral for m = 1/2.
inline QSeries qs_eta(int twice_m, int precision_q) {
    if (twice_m != 1 && twice_m != 2 && twice_m != 4)
        throw std::invalid_argument("qs_eta: scale must be 1/2, 1 or 2");
    long long len = 48LL * precision_q + 1;
    QSeries s = QSeries::monomial(1, 0, len);
    long long step0 = 24LL * twice_m;
    for (long long i = 1; step0 * i < len; ++i) {
        long long st = step0 * i;
        for (long long j = len - 1; j >= st; --j) s.coeffs[size_t(j)] -= s.coeffs[size_t(j - st)];
    }
    s.offset += twice_m;  // q^{m/24} = grid exponent 2m
    s.trunc += twice_m;
    return s;
}

// theta_2 = sum q^{(i+1/2)^2}, theta_3 = sum q^{i^2}, theta_4 with signs
inline QSeries qs_theta_k(int k, int precision_q) {
    long long len = 48LL * precision_q + 1;
    QSeries s = QSeries::zero(len);
    s.offset = 0;
    s.coeffs.assign(size_t(len), 0);
    if (k == 3 || k == 4) {
        s.coeffs[0] = 1;
        for (long long i = 1; 48 * i * i < len; ++i)
            s.coeffs[size_t(48 * i * i)] = (k == 4 && (i & 1)) ? -2 : 2;
    } else if (k == 2) {
        for (long long i = 0; 12 * (2 * i + 1) * (2 * i + 1) < len; ++i)
            s.coeffs[size_t(12 * (2 * i + 1) * (2 * i + 1))] = 2;
    } else {
        throw std::invalid_argument("qs_theta_k: k must be 2, 3 or 4");
    }
    return s;
}

// ---- characters -------------------------------------------------------------

// ch V_L = Theta_L / eta^n
inline QSeries qs_ch_full(const QSeries& theta, int n) {
    int prec = static_cast<int>((theta.len() - 1) / 48);
    return qs_div(theta, qs_pow(qs_eta(2, prec), n));
}

// eta(q)^n / eta(q^2)^n, the alternating part of the fixed character
inline QSeries qs_eta_fixed_part(int n, int precision_q) {
    return qs_div(qs_pow(qs_eta(2, precision_q), n), qs_pow(qs_eta(4, precision_q), n));
}

inline QSeries qs_ch_plus(const QSeries& theta, int n) {
    int prec = static_cast<int>((theta.len() - 1) / 48);
    return qs_div_int(qs_add(qs_ch_full(theta, n), qs_eta_fixed_part(n, prec)), 2);
}

inline QSeries qs_ch_minus(const QSeries& theta, int n) {
    int prec = static_cast<int>((theta.len() - 1) / 48);
    return qs_div_int(qs_sub(qs_ch_full(theta, n), qs_eta_fixed_part(n, prec)), 2);
}

// ch V_{lambda+L}^{+-} = (1/2) Theta_{lambda+L} / eta^n, both signs equal
inline QSeries qs_ch_coset(const QSeries& theta_coset, int n) {
    QSeries doubled = qs_ch_full(theta_coset, n);
    return qs_div_int(doubled, 2);
}

// ch V_L^{T,+-} = (dimT/2) (eta^n/eta(q^{1/2})^n +- eta(q^2)^n eta(q^{1/2})^n / eta^{2n})
inline QSeries qs_ch_twisted(int n, long long dim_t, int sign, int precision_q) {
    if (dim_t < 1) throw std::invalid_argument("qs_ch_twisted: dim T must be positive");
    QSeries e1n = qs_pow(qs_eta(2, precision_q), n);
    QSeries ehn = qs_pow(qs_eta(1, precision_q), n);
    QSeries e2n = qs_pow(qs_eta(4, precision_q), n);
    QSeries a = qs_div(e1n, ehn);
    QSeries b = qs_div(qs_mul(e2n, ehn), qs_mul(e1n, e1n));
    QSeries comb = qs_add(a, b, sign >= 0 ? 1 : -1);
    return qs_div_int(qs_scale(comb, dim_t), 2);
}

// Theta by enumerator substitution: sum_m c[m] theta2^m theta3^{n-m}, with
// the construction-B variant (sum + theta4^n)/2.
inline QSeries qs_enumerator_theta(const std::vector<long long>& code_we, bool plus_variant, int precision_q) {
    int n = static_cast<int>(code_we.size()) - 1;
    QSeries t2 = qs_theta_k(2, precision_q);
    QSeries t3 = qs_theta_k(3, precision_q);
    QSeries acc = QSeries::zero(48LL * precision_q + 1);
    acc.offset = 0;
    acc.coeffs.assign(size_t(acc.trunc), 0);
    QSeries pow2 = QSeries::monomial(1, 0, 48LL * precision_q + 1);
    for (int m = 0; m <= n; ++m) {
        if (code_we[m]) {
            QSeries term = qs_mul(pow2, qs_pow(t3, n - m));
            acc = qs_add(acc, qs_scale(term, code_we[m]));
        }
        if (m < n) pow2 = qs_mul(pow2, t2);
    }
    if (!plus_variant) return acc;
    return qs_div_int(qs_add(acc, qs_pow(qs_theta_k(4, precision_q), n)), 2);
}

}  // namespace latcode
