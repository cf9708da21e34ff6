#include <catch2/catch_amalgamated.hpp>

#include "latcode/bincodes.hpp"

using namespace latcode;

namespace {

// independent oracle: span enumeration by explicit subset XOR
std::vector<long long> oracle_enumerator(const std::vector<Word>& gens, int n) {
    std::vector<long long> c(n + 1, 0);
    for (size_t mask = 0; mask < (size_t{1} << gens.size()); ++mask) {
        Word w = 0;
        for (size_t b = 0; b < gens.size(); ++b)
            if (mask & (size_t{1} << b)) w ^= gens[b];
        ++c[weight(w)];
    }
    return c;
}

}  // namespace

TEST_CASE("hat map images") {
    KWord a{1, 0}; a.set_symbol(0, 1);
    REQUIRE(hat_map(a) == 0b0011);  // (1100) as a coordinate string
    KWord zero{1, 0};
    REQUIRE(hat_map(zero) == 0);
    KWord bc{2, 0}; bc.set_symbol(0, 2); bc.set_symbol(1, 3);
    REQUIRE(hat_map(bc) == 0b01100101);  // (10100110)
    // hat is a homomorphism: hat(a) + hat(b) = hat(c)
    KWord b{1, 0}; b.set_symbol(0, 2);
    KWord c{1, 0}; c.set_symbol(0, 3);
    REQUIRE((hat_map(a) ^ hat_map(b)) == hat_map(c));
}

TEST_CASE("construction A on eps2 is e8") {
    BinCode c = construction_a_code(kcode_eps2());
    REQUIRE(c.n == 8);
    REQUIRE(c.dim() == 4);
    auto we = oracle_enumerator(c.basis, 8);
    REQUIRE(we == std::vector<long long>{1, 0, 0, 0, 14, 0, 0, 0, 1});
    REQUIRE(code_weight_enumerator(c) == we);
    REQUIRE(is_doubly_even(c));
    REQUIRE(is_self_dual(c));
    REQUIRE(code_equivalent(c, bincode_e8()).has_value());
}

TEST_CASE("construction A on the zero code is d4^m") {
    KCode zero(3, {});
    REQUIRE(construction_a_code(zero) == d4m_code(3));
}

TEST_CASE("construction identities at length 16") {
    BinCode ce2sq = construction_a_code(kcode_eps2_sq());
    BinCode cd4 = construction_a_code(kcode_delta4plus());
    REQUIRE(code_equivalent(ce2sq, bincode_e8_sq()).has_value());
    REQUIRE(code_equivalent(cd4, bincode_d16plus()).has_value());
    REQUIRE(!code_equivalent(bincode_e8_sq(), bincode_d16plus()));

    BinCode bp1 = construction_b_code(kcode_eps2_sq());
    BinCode bp2 = construction_b_code(kcode_delta4plus());
    REQUIRE(bp1.dim() == 7);
    REQUIRE(bp1.n == 16);
    REQUIRE(code_equivalent(bp1, bp2).has_value());
}

TEST_CASE("construction B sits inside construction A with index 2") {
    for (const KCode& k : {kcode_eps2(), kcode_eps2_sq(), kcode_delta4plus()}) {
        BinCode a = construction_a_code(k);
        BinCode b = construction_b_code(k);
        REQUIRE(b.dim() + 1 == a.dim());
        for (Word w : b.basis) REQUIRE(a.contains(w));
        REQUIRE(is_doubly_even(a));
        REQUIRE(is_doubly_even(b));
    }
}

TEST_CASE("substituted enumerators match direct enumeration") {
    for (const KCode& k : {kcode_eps2(), kcode_eps2_sq(), kcode_delta4plus(), KCode(2, {})}) {
        REQUIRE(substituted_enumerator_a(k) == code_weight_enumerator(construction_a_code(k)));
        REQUIRE(substituted_enumerator_b(k) == code_weight_enumerator(construction_b_code(k)));
    }
}

TEST_CASE("equivalence at length 32") {
    BinCode base = d4m_code(8);
    std::vector<int> perm(32);
    for (int i = 0; i < 32; ++i) perm[i] = (7 * i + 3) % 32;
    BinCode scrambled = apply_perm(base, perm);
    auto w = code_equivalent(base, scrambled);
    REQUIRE(w.has_value());
    REQUIRE(apply_perm(base, *w) == scrambled);
}

TEST_CASE("dual, doubly-even, self-dual basics") {
    BinCode e8 = bincode_e8();
    REQUIRE(is_self_dual(e8));
    REQUIRE(is_doubly_even(d4m0_code(4)));
    BinCode c(6, {0b111111, 0b000011});
    REQUIRE(code_dual(code_dual(c)) == c);
    REQUIRE(c.dim() + code_dual(c).dim() == 6);
}

TEST_CASE("coset weight enumerators") {
    BinCode e8 = bincode_e8();
    REQUIRE(coset_weight_enumerator(e8, 0) == code_weight_enumerator(e8));

    // |((1^4 0^{n-4}) + C)(4)| = n/4 + |C(4)| for C of construction-B type
    for (const KCode& k : {kcode_eps2(), kcode_eps2_sq(), kcode_delta4plus()}) {
        BinCode c = construction_b_code(k);
        auto cw = coset_weight_enumerator(c, d4_block(0));
        REQUIRE(cw[4] == k.n + code_weight_enumerator(c)[4]);
    }

    // x in C gives the code's own enumerator
    REQUIRE(coset_weight_enumerator(e8, e8.basis[1]) == code_weight_enumerator(e8));
}

TEST_CASE("coset canonical representative") {
    BinCode e8 = bincode_e8();
    CosetLabel l(e8, e8.basis[0]);
    REQUIRE(l.rep == 0);
    CosetLabel m(e8, 0b1);
    REQUIRE(m.rep == CosetLabel::canonical(e8, 0b1 ^ e8.basis[2]));
}

TEST_CASE("recovery from a coset round-trips") {
    for (const KCode& k : {kcode_eps2(), kcode_eps2_sq(), kcode_delta4plus()}) {
        BinCode c = construction_b_code(k);
        KRecovery r = recover_kleinian_coset(c, d4_block(0));
        REQUIRE(r.code.n == k.n);
        REQUIRE(k_equivalent(r.code, k).has_value());
    }
}

TEST_CASE("recovery in full-frame mode round-trips") {
    for (const KCode& k : {kcode_eps2(), kcode_eps2_sq(), kcode_delta4plus()}) {
        BinCode c = construction_a_code(k);
        auto r = recover_kleinian_full(c);
        REQUIRE(r.has_value());
        REQUIRE(k_equivalent(r->code, k).has_value());
    }
    // no d4^m inside the even-weight span of 1^8... use a doubly-even code
    // with no weight-4 words at all
    BinCode thin(8, {0xFF});
    REQUIRE(!recover_kleinian_full(thin));
}

TEST_CASE("recovery preconditions on a self-dual code") {
    BinCode e8 = bincode_e8();
    // C-perp = C, so every admissible x lies in C: the precondition fails
    REQUIRE_THROWS_AS(recover_kleinian_coset(e8, e8.basis[0]), std::invalid_argument);
}

TEST_CASE("hypothesis violation is distinguished") {
    // C = (d4^2)0 = {0, 11111111}: dual contains plenty of words whose
    // coset has few weight-4 elements
    BinCode c(8, {0xFF});
    Word x = 0b00010001;  // in C-perp (meets 1^8 twice), not in C
    REQUIRE(!c.contains(x));
    auto cw = coset_weight_enumerator(c, x);
    REQUIRE(cw[4] < 2 + code_weight_enumerator(c)[4]);
    REQUIRE_THROWS_AS(recover_kleinian_coset(c, x), HypothesisViolation);
}

TEST_CASE("self-dual embedding") {
    BinCode span18(8, {0xFF});
    BinCode e = embed_self_dual(span18);
    REQUIRE(is_self_dual(e));
    REQUIRE(is_doubly_even(e));
    REQUIRE(e.contains(0xFF));
    REQUIRE(code_equivalent(e, bincode_e8()).has_value());

    REQUIRE(embed_self_dual(bincode_e8()) == bincode_e8());

    BinCode b = construction_b_code(kcode_eps2_sq());
    BinCode eb = embed_self_dual(b);
    REQUIRE(is_self_dual(eb));
    REQUIRE(is_doubly_even(eb));
    for (Word w : b.basis) REQUIRE(eb.contains(w));
    bool matches = code_equivalent(eb, bincode_e8_sq()).has_value() ||
                   code_equivalent(eb, bincode_d16plus()).has_value();
    REQUIRE(matches);
}

TEST_CASE("doubly-even length-8 codes containing the all-ones word") {
    auto classes = enumerate_doubly_even_containing_allones(8);
    REQUIRE(classes.size() == 4);
    for (int d = 0; d < 4; ++d) {
        REQUIRE(classes[d].dim() == d + 1);
        REQUIRE(classes[d].contains(0xFF));
    }
    REQUIRE(code_equivalent(classes[3], bincode_e8()).has_value());
}

TEST_CASE("|E(4)| = 28 for both doubly-even self-dual classes of length 16") {
    REQUIRE(code_weight_enumerator(bincode_e8_sq())[4] == 28);
    REQUIRE(code_weight_enumerator(bincode_d16plus())[4] == 28);
    REQUIRE(is_self_dual(bincode_e8_sq()));
    REQUIRE(is_self_dual(bincode_d16plus()));
    REQUIRE(is_doubly_even(bincode_e8_sq()));
    REQUIRE(is_doubly_even(bincode_d16plus()));
}
