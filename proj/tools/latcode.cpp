// Batch driver for the code/lattice/character verification library:
// parse code and lattice files, run individual operations, and execute the
// registered classification checks with JSON or text reports.
//
// Exit codes: 0 pass, 1 fail, 2 defect, 64 usage or malformed input.

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "latcode/checks.hpp"

using namespace latcode;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

KCode load_kleinian(const std::string& path) {
    if (auto named = named_kleinian(path)) return *named;
    return parse_kleinian(slurp(path));
}

BinCode load_bincode(const std::string& path) {
    if (auto named = named_bincode(path)) return *named;
    return parse_bincode(slurp(path));
}

Lattice load_lattice(const std::string& path) { return parse_lattice(slurp(path)); }

Word parse_bits(const std::string& s) {
    Word w = 0;
    for (size_t j = 0; j < s.size(); ++j) {
        if (s[j] == '1') w |= Word{1} << j;
        else if (s[j] != '0') throw std::invalid_argument("coset word must be a 0/1 string");
    }
    return w;
}

struct Options {
    std::string format = "text";
    int precision = 10;
    int jobs = 1;
    bool trace = false;
};

void emit(const Options& opt, const json& j, const std::string& text) {
    if (opt.format == "json") std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

int run_verify(const Options& opt, std::vector<std::string> ids, bool all, bool list) {
    if (list) {
        for (const auto& id : registered_check_ids()) std::cout << id << "\n";
        return 0;
    }
    if (all) ids = registered_check_ids();
    if (ids.empty()) {
        std::cerr << "verify: no check ids given (use --all or --list)\n";
        return 64;
    }
    for (const auto& id : ids)
        if (!check_registry().count(id)) {
            std::cerr << "verify: unknown check id: " << id << "\n";
            return 64;
        }
    std::vector<Report> reports(ids.size());
    if (opt.jobs > 1) {
        // bounded fan-out; reports stay in spec order
        std::vector<std::future<Report>> futs(ids.size());
        size_t window = static_cast<size_t>(opt.jobs);
        for (size_t start = 0; start < ids.size(); start += window) {
            size_t end = std::min(ids.size(), start + window);
            for (size_t i = start; i < end; ++i)
                futs[i] = std::async(std::launch::async, [&, i] {
                    CheckSpec spec{ids[i], opt.precision, opt.trace};
                    return run_check(spec);
                });
            for (size_t i = start; i < end; ++i) reports[i] = futs[i].get();
        }
    } else {
        for (size_t i = 0; i < ids.size(); ++i) {
            CheckSpec spec{ids[i], opt.precision, opt.trace};
            reports[i] = run_check(spec);
        }
    }
    bool any_fail = false, any_defect = false;
    json arr = json::array();
    for (const Report& r : reports) {
        if (r.status == "fail") any_fail = true;
        if (r.status == "defect") any_defect = true;
        if (opt.format == "json") {
            json item;
            item["id"] = r.id;
            item["status"] = r.status;
            item["wall_ms"] = r.ms;
            item["certificate"] = r.certificate;
            arr.push_back(item);
        } else {
            std::printf("%-6s %-22s (%.0f ms)\n", r.status.c_str(), r.id.c_str(), r.ms);
            if (r.status != "pass") std::cout << "       " << r.certificate.dump() << "\n";
        }
    }
    if (opt.format == "json") std::cout << arr.dump(2) << "\n";
    if (any_defect) return 2;
    return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"codes, lattices and characters: constructions, equivalences and certified checks"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--precision", opt.precision, "q-series precision (powers of q)")->check(CLI::Range(1, 40));
    app.add_option("--jobs", opt.jobs, "parallel checks in a verify batch")->check(CLI::Range(1, 64));
    app.add_flag("--trace", opt.trace, "include proof-path diagnostics in verdicts");

    // ---- codes ----
    auto* codes = app.add_subcommand("codes", "Kleinian and binary code operations");
    codes->require_subcommand(1);
    std::string file_a, file_b, coset_bits, name;

    auto* c_print = codes->add_subcommand("print", "parse and reprint canonically");
    c_print->add_option("file", file_a)->required();
    auto* c_dual = codes->add_subcommand("dual", "dual code");
    c_dual->add_option("file", file_a)->required();
    auto* c_enum = codes->add_subcommand("enumerator", "weight enumerator");
    c_enum->add_option("file", file_a)->required();
    auto* c_equiv = codes->add_subcommand("equivalent", "equivalence witness");
    c_equiv->add_option("file_a", file_a)->required();
    c_equiv->add_option("file_b", file_b)->required();
    auto* c_ca = codes->add_subcommand("construct-a", "binary code of a Kleinian code");
    c_ca->add_option("file", file_a)->required();
    auto* c_cb = codes->add_subcommand("construct-b", "index-2 binary code of a Kleinian code");
    c_cb->add_option("file", file_a)->required();
    auto* c_rec = codes->add_subcommand("recover", "recover a Kleinian code");
    c_rec->add_option("file", file_a)->required();
    c_rec->add_option("--coset", coset_bits, "coset representative as a 0/1 string");
    auto* c_embed = codes->add_subcommand("embed-self-dual", "doubly-even self-dual extension");
    c_embed->add_option("file", file_a)->required();
    auto* c_named = codes->add_subcommand("named", "emit a named code");
    c_named->add_option("name", name)->required();

    // ---- lattices ----
    auto* lats = app.add_subcommand("lattices", "even lattice operations");
    lats->require_subcommand(1);
    auto* l_print = lats->add_subcommand("print", "parse and reprint canonically");
    l_print->add_option("file", file_a)->required();
    auto* l_dual = lats->add_subcommand("dual", "dual lattice");
    l_dual->add_option("file", file_a)->required();
    auto* l_theta = lats->add_subcommand("theta", "theta series");
    l_theta->add_option("file", file_a)->required();
    std::string theta_coset;
    l_theta->add_option("--coset", theta_coset,
                        "coset shift, comma-separated integers in alpha/8 grid units");
    auto* l_disc = lats->add_subcommand("discriminant", "discriminant group");
    l_disc->add_option("file", file_a)->required();
    auto* l_iso = lats->add_subcommand("isometric", "isometry witness");
    l_iso->add_option("file_a", file_a)->required();
    l_iso->add_option("file_b", file_b)->required();
    auto* l_fa = lats->add_subcommand("from-code-a", "construction A of a binary code");
    l_fa->add_option("file", file_a)->required();
    auto* l_fb = lats->add_subcommand("from-code-b", "construction B of a binary code");
    l_fb->add_option("file", file_a)->required();
    auto* l_over = lats->add_subcommand("overlattices", "even overlattice classes");
    l_over->add_option("file", file_a)->required();
    auto* l_uni = lats->add_subcommand("embed-unimodular", "even unimodular overlattice");
    l_uni->add_option("file", file_a)->required();

    // ---- qseries ----
    auto* qs = app.add_subcommand("qseries", "eta, theta and character series");
    qs->require_subcommand(1);
    std::string scale = "1";
    int theta_k = 3;
    std::string variant = "full";
    auto* q_eta = qs->add_subcommand("eta", "Dedekind eta at nome q^s");
    q_eta->add_option("--scale", scale, "1/2, 1 or 2")->check(CLI::IsMember({"1/2", "1", "2"}));
    auto* q_tk = qs->add_subcommand("theta-k", "Jacobi theta constant");
    q_tk->add_option("--k", theta_k)->check(CLI::IsMember({2, 3, 4}));
    auto* q_ch = qs->add_subcommand("ch-vl", "character of the lattice algebra");
    q_ch->add_option("file", file_a)->required();
    q_ch->add_option("--variant", variant)->check(CLI::IsMember({"full", "plus", "minus"}));

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run registered classification checks");
    std::vector<std::string> ids;
    bool all = false, list = false;
    verify->add_option("ids", ids, "check ids");
    verify->add_flag("--all", all, "run every registered check");
    verify->add_flag("--list", list, "list registered check ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (verify->parsed()) return run_verify(opt, ids, all, list);

        if (c_print->parsed()) {
            std::string text = slurp(file_a);
            std::string out = text.rfind("kleinian", 0) == 0 ? print_kleinian(parse_kleinian(text))
                                                             : print_bincode(parse_bincode(text));
            emit(opt, json{{"code", out}}, out);
        } else if (c_dual->parsed()) {
            std::string text = slurp(file_a);
            std::string out = text.rfind("kleinian", 0) == 0 ? print_kleinian(k_dual(parse_kleinian(text)))
                                                             : print_bincode(code_dual(parse_bincode(text)));
            emit(opt, json{{"code", out}}, out);
        } else if (c_enum->parsed()) {
            std::string text = slurp(file_a);
            std::vector<long long> we;
            if (text.rfind("kleinian", 0) == 0) we = k_weight_enumerator(parse_kleinian(text));
            else we = code_weight_enumerator(parse_bincode(text));
            json j = we;
            std::ostringstream os;
            for (size_t m = 0; m < we.size(); ++m)
                if (we[m]) os << "w" << m << ": " << we[m] << "\n";
            emit(opt, j, os.str());
        } else if (c_equiv->parsed()) {
            std::string ta = slurp(file_a);
            if (ta.rfind("kleinian", 0) == 0) {
                auto w = k_equivalent(parse_kleinian(ta), load_kleinian(file_b));
                if (!w) { emit(opt, json{{"equivalent", false}}, "not equivalent\n"); return 1; }
                json j{{"equivalent", true}, {"coordinate_map", w->coord}, {"symbol_perms", w->sym}};
                emit(opt, j, "equivalent\n");
            } else {
                auto w = code_equivalent(parse_bincode(ta), load_bincode(file_b));
                if (!w) { emit(opt, json{{"equivalent", false}}, "not equivalent\n"); return 1; }
                json j{{"equivalent", true}, {"permutation", *w}};
                emit(opt, j, "equivalent\n");
            }
        } else if (c_ca->parsed() || c_cb->parsed()) {
            KCode k = load_kleinian(file_a);
            BinCode c = c_ca->parsed() ? construction_a_code(k) : construction_b_code(k);
            emit(opt, json{{"code", print_bincode(c)}}, print_bincode(c));
        } else if (c_rec->parsed()) {
            BinCode c = load_bincode(file_a);
            if (!coset_bits.empty() && static_cast<int>(coset_bits.size()) != c.n)
                throw std::invalid_argument("coset word length must match the code length");
            if (coset_bits.empty()) {
                auto r = recover_kleinian_full(c);
                if (!r) { emit(opt, json{{"recovered", false}}, "no 4-frame inside the code\n"); return 1; }
                json j{{"recovered", true}, {"kleinian", print_kleinian(r->code)}, {"permutation", r->perm}};
                emit(opt, j, print_kleinian(r->code));
            } else {
                KRecovery r = recover_kleinian_coset(c, parse_bits(coset_bits));
                json j{{"recovered", true}, {"kleinian", print_kleinian(r.code)}, {"permutation", r.perm}};
                emit(opt, j, print_kleinian(r.code));
            }
        } else if (c_embed->parsed()) {
            BinCode e = embed_self_dual(load_bincode(file_a));
            emit(opt, json{{"code", print_bincode(e)}}, print_bincode(e));
        } else if (c_named->parsed()) {
            if (auto k = named_kleinian(name)) emit(opt, json{{"code", print_kleinian(*k)}}, print_kleinian(*k));
            else if (auto b = named_bincode(name)) emit(opt, json{{"code", print_bincode(*b)}}, print_bincode(*b));
            else { std::cerr << "unknown named code: " << name << "\n"; return 64; }
        } else if (l_print->parsed()) {
            std::string out = print_lattice(load_lattice(file_a));
            emit(opt, json{{"lattice", out}}, out);
        } else if (l_dual->parsed()) {
            std::string out = print_lattice(dual_lattice(load_lattice(file_a)));
            emit(opt, json{{"lattice", out}}, out);
        } else if (l_theta->parsed()) {
            Lattice l = load_lattice(file_a);
            QSeries t;
            if (theta_coset.empty()) {
                t = theta_series(l, nullptr, opt.precision);
            } else {
                Vec shift;
                std::istringstream ss(theta_coset);
                std::string tok;
                while (std::getline(ss, tok, ',')) shift.push_back(std::stoll(tok));
                if (static_cast<int>(shift.size()) != l.n)
                    throw std::invalid_argument("coset shift needs one entry per coordinate");
                t = theta_series(l, &shift, opt.precision);
            }
            emit(opt, qseries_json(t), print_qseries(t));
        } else if (l_disc->parsed()) {
            Discriminant d = discriminant_group(load_lattice(file_a));
            json j{{"factors", d.factors}, {"order", d.order}, {"elementary_2", d.elementary2}};
            std::ostringstream os;
            os << "order " << d.order << ", factors";
            for (i64 f : d.factors) os << " " << f;
            os << "\n";
            emit(opt, j, os.str());
        } else if (l_iso->parsed()) {
            Lattice a = load_lattice(file_a), b = load_lattice(file_b);
            auto w = lattice_isometric(a, b);
            if (!w) { emit(opt, json{{"isometric", false}}, "not isometric\n"); return 1; }
            json j{{"isometric", true}, {"witness", witness_json(a, b, *w)}};
            emit(opt, j, "isometric\n");
        } else if (l_fa->parsed() || l_fb->parsed()) {
            BinCode c = load_bincode(file_a);
            Lattice l = l_fa->parsed() ? construction_a_lattice(c) : construction_b_lattice(c);
            emit(opt, json{{"lattice", print_lattice(l)}}, print_lattice(l));
        } else if (l_over->parsed()) {
            auto classes = even_overlattices(load_lattice(file_a));
            json arr = json::array();
            std::ostringstream os;
            for (const Lattice& m : classes) {
                Discriminant d = discriminant_group(m);
                arr.push_back({{"lattice", print_lattice(m)}, {"disc_order", d.order}});
                os << "class with discriminant order " << d.order << "\n" << print_lattice(m);
            }
            emit(opt, arr, os.str());
        } else if (l_uni->parsed()) {
            Lattice u = embed_unimodular(load_lattice(file_a));
            emit(opt, json{{"lattice", print_lattice(u)}}, print_lattice(u));
        } else if (q_eta->parsed()) {
            int twice_m = scale == "1/2" ? 1 : scale == "1" ? 2 : 4;
            QSeries e = qs_eta(twice_m, opt.precision);
            emit(opt, qseries_json(e), print_qseries(e));
        } else if (q_tk->parsed()) {
            QSeries t = qs_theta_k(theta_k, opt.precision);
            emit(opt, qseries_json(t), print_qseries(t));
        } else if (q_ch->parsed()) {
            Lattice l = load_lattice(file_a);
            QSeries ch = variant == "full"   ? ch_vl(l, opt.precision)
                         : variant == "plus" ? ch_vl_plus(l, opt.precision)
                                             : ch_vl_minus(l, opt.precision);
            emit(opt, qseries_json(ch), print_qseries(ch));
        }
        return 0;
    } catch (const DefectError& e) {
        std::cerr << "defect: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisViolation& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    }
}
