// Text formats for codes and lattices, q-series printing, and the JSON
// shapes used for witnesses and verdicts.
//
// kleinian <n>      one generator per line over {0,a,b,c}
// binary <n>        generator rows as 0/1 strings
// lattice <n> <d>   n rows of n integers, coordinates in units alpha_i/d
//
// Printing always emits the canonical basis (RREF / HNF), so
// parse(print(x)) == x exactly.

#pragma once

#include <numeric>
#include <sstream>
#include <string>

#include <json.hpp>

#include "voamod.hpp"

namespace latcode {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
    int line;
    ParseError(int ln, const std::string& what)
        : std::runtime_error("line " + std::to_string(ln) + ": " + what), line(ln) {}
};

namespace detail {

inline std::vector<std::string> nonempty_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        out.push_back(line);
    }
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

}  // namespace detail

// ---- kleinian codes -----------------------------------------------------

inline KCode parse_kleinian(const std::string& text) {
    auto lines = detail::nonempty_lines(text);
    if (lines.empty()) throw ParseError(1, "empty input");
    std::istringstream hdr(lines[0]);
    std::string tag;
    int n = 0;
    hdr >> tag >> n;
    if (tag != "kleinian" || n < 1) throw ParseError(1, "expected header 'kleinian <n>'");
    std::vector<Word> gens;
    for (size_t i = 1; i < lines.size(); ++i) {
        const std::string& row = lines[i];
        if (row.empty()) throw ParseError(static_cast<int>(i + 1), "empty generator row");
        if (static_cast<int>(row.size()) != n)
            throw ParseError(static_cast<int>(i + 1), "generator length mismatch");
        Word w = 0;
        for (int j = 0; j < n; ++j) {
            int s;
            switch (row[j]) {
                case '0': s = 0; break;
                case 'a': s = 1; break;
                case 'b': s = 2; break;
                case 'c': s = 3; break;
                default: throw ParseError(static_cast<int>(i + 1), "symbol must be one of 0abc");
            }
            w |= Word(s) << (2 * j);
        }
        gens.push_back(w);
    }
    return KCode(n, gens);
}

inline std::string print_kleinian(const KCode& k) {
    std::ostringstream os;
    os << "kleinian " << k.n << "\n";
    for (Word b : k.basis) {
        for (int j = 0; j < k.n; ++j) os << "0abc"[(b >> (2 * j)) & 3];
        os << "\n";
    }
    return os.str();
}

// ---- binary codes ---------------------------------------------------------

inline BinCode parse_bincode(const std::string& text) {
    auto lines = detail::nonempty_lines(text);
    if (lines.empty()) throw ParseError(1, "empty input");
    std::istringstream hdr(lines[0]);
    std::string tag;
    int n = 0;
    hdr >> tag >> n;
    if (tag != "binary" || n < 1) throw ParseError(1, "expected header 'binary <n>'");
    std::vector<Word> gens;
    for (size_t i = 1; i < lines.size(); ++i) {
        const std::string& row = lines[i];
        if (static_cast<int>(row.size()) != n)
            throw ParseError(static_cast<int>(i + 1), "generator length mismatch");
        Word w = 0;
        for (int j = 0; j < n; ++j) {
            if (row[j] == '1') w |= Word{1} << j;
            else if (row[j] != '0') throw ParseError(static_cast<int>(i + 1), "bit must be 0 or 1");
        }
        gens.push_back(w);
    }
    return BinCode(n, gens);
}

inline std::string print_bincode(const BinCode& c) {
    std::ostringstream os;
    os << "binary " << c.n << "\n";
    for (Word b : c.basis) {
        for (int j = 0; j < c.n; ++j) os << (((b >> j) & 1) ? '1' : '0');
        os << "\n";
    }
    return os.str();
}

// ---- lattices -------------------------------------------------------------

inline Lattice parse_lattice(const std::string& text) {
    auto lines = detail::nonempty_lines(text);
    if (lines.empty()) throw ParseError(1, "empty input");
    std::istringstream hdr(lines[0]);
    std::string tag;
    int n = 0, d = 0;
    hdr >> tag >> n >> d;
    if (tag != "lattice" || n < 1) throw ParseError(1, "expected header 'lattice <n> <d>'");
    if (d != 1 && d != 2 && d != 4 && d != 8) throw ParseError(1, "denominator must be 1, 2, 4 or 8");
    if (static_cast<int>(lines.size()) != n + 1)
        throw ParseError(static_cast<int>(lines.size()), "expected exactly n basis rows");
    IMat g(n, n);
    for (int i = 0; i < n; ++i) {
        std::istringstream rs(lines[i + 1]);
        for (int j = 0; j < n; ++j) {
            long long v;
            if (!(rs >> v)) throw ParseError(i + 2, "expected n integers");
            g.at(i, j) = v * (8 / d);
        }
        long long extra;
        if (rs >> extra) throw ParseError(i + 2, "too many entries in row");
    }
    return make_lattice(g);
}

inline std::string print_lattice(const Lattice& l) {
    i64 g = 8;
    for (i64 v : l.basis.a) g = std::gcd(g, v < 0 ? -v : v);
    i64 d = 8 / g;
    std::ostringstream os;
    os << "lattice " << l.n << " " << d << "\n";
    for (int i = 0; i < l.n; ++i) {
        for (int j = 0; j < l.n; ++j) {
            if (j) os << " ";
            os << l.basis.at(i, j) / g;
        }
        os << "\n";
    }
    return os.str();
}

// ---- named constructors ----------------------------------------------------

inline std::optional<KCode> named_kleinian(const std::string& name) {
    if (name == "eps2") return kcode_eps2();
    if (name == "eps2^2") return kcode_eps2_sq();
    if (name == "delta4+" || name == "delta4plus") return kcode_delta4plus();
    return std::nullopt;
}

inline std::optional<BinCode> named_bincode(const std::string& name) {
    if (name == "e8") return bincode_e8();
    if (name == "e8^2") return bincode_e8_sq();
    if (name == "d16plus" || name == "d16+") return bincode_d16plus();
    auto tail_int = [](const std::string& s) -> std::optional<int> {
        if (s.empty()) return std::nullopt;
        for (char c : s)
            if (!isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        return std::stoi(s);
    };
    if (name.rfind("d4^", 0) == 0) {
        if (auto m = tail_int(name.substr(3)); m && *m >= 1 && *m <= 8) return d4m_code(*m);
    }
    if (name.rfind("(d4^", 0) == 0 && name.size() > 6 && name.substr(name.size() - 2) == ")0") {
        if (auto m = tail_int(name.substr(4, name.size() - 6)); m && *m >= 1 && *m <= 8) return d4m0_code(*m);
    }
    return std::nullopt;
}

// ---- q-series --------------------------------------------------------------

inline std::string print_qseries(const QSeries& s) {
    std::ostringstream os;
    for (long long e = s.offset; e < s.trunc; ++e) {
        long long c = s.at_grid(e);
        if (c == 0) continue;
        os << "q^{" << e << "/48}: " << c << "\n";
    }
    return os.str();
}

inline json qseries_json(const QSeries& s) {
    json arr = json::array();
    for (long long e = s.offset; e < s.trunc; ++e) {
        long long c = s.at_grid(e);
        if (c == 0) continue;
        arr.push_back({{"grid48", e}, {"coeff", c}});
    }
    return arr;
}

// ---- witnesses and verdicts --------------------------------------------------

inline std::string fnv1a_hex(const std::vector<i64>& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (i64 v : data) {
        std::uint64_t u = static_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            h ^= (u >> (8 * b)) & 0xFF;
            h *= 1099511628211ULL;
        }
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

inline json imat_json(const IMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
        rows.push_back(row);
    }
    return rows;
}

// isometry witness with the hash of T Gram_N T^T (= Gram_L when valid)
inline json witness_json(const Lattice& l, const Lattice& n, const IMat& t) {
    IMat check = imat_mul(imat_mul(t, sgram(n)), imat_transpose(t));
    json out;
    out["matrix"] = imat_json(t);
    out["gram_check_fnv1a"] = fnv1a_hex(check.a);
    out["verified"] = verify_isometry(l, n, t);
    return out;
}

inline json verdict_json(const Verdict& v, bool with_trace = false) {
    json out;
    out["outcome"] = verdict_name(v.outcome);
    json cert;
    if (v.witness) cert["isometry"] = imat_json(*v.witness);
    if (v.code) cert["code"] = print_bincode(*v.code);
    if (v.witness_left) cert["construction_a_isometry"] = imat_json(*v.witness_left);
    if (v.witness_right) cert["construction_b_isometry"] = imat_json(*v.witness_right);
    if (!v.invariant.empty()) cert["distinguishing_invariant"] = v.invariant;
    out["certificate"] = cert;
    out["invariants_checked"] = v.invariants_checked;
    if (with_trace) out["trace"] = v.trace;
    return out;
}

}  // namespace latcode
