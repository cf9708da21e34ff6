#include <catch2/catch_amalgamated.hpp>

#include "latcode/voamod.hpp"

using namespace latcode;

namespace {
Lattice gram2I(int n) { return construction_a_lattice(BinCode(n, {})); }
}  // namespace

TEST_CASE("census of E8") {
    Census c = module_census(lattice_e8());
    REQUIRE(c.labels.size() == 4);  // V+, V-, T+, T-
    REQUIRE(c.twisted_supported);
    REQUIRE(c.chi_count == 1);
    REQUIRE(c.dim_t == 16);
}

TEST_CASE("census of sqrt2 E8") {
    Census c = module_census(scale_sqrt2(lattice_e8()));
    long long split = 0, pair = 0, twisted = 0;
    for (const auto& m : c.labels) {
        if (m.variant == ModuleVariant::UntwistedSplit) ++split;
        if (m.variant == ModuleVariant::UntwistedPair) ++pair;
        if (m.variant == ModuleVariant::Twisted) ++twisted;
    }
    REQUIRE(split == 2 * 256);
    REQUIRE(pair == 0);  // 2 lambda in L for every dual class
    REQUIRE(c.twisted_supported);
    REQUIRE(c.chi_count == 256);
    REQUIRE(c.dim_t == 1);
    REQUIRE(twisted == 2 * 256);
}

TEST_CASE("untwisted pairs appear exactly when some mu avoids L/2") {
    // E8 + Z alpha: dual = E8 + Z alpha/2, all cosets split
    Lattice app = direct_sum(lattice_e8(), gram2I(1));
    Census c1 = module_census(app);
    for (const auto& m : c1.labels) REQUIRE(m.variant != ModuleVariant::UntwistedPair);

    // Gram 4I: discriminant Z4 x Z4 has classes with 2 mu not in L
    Lattice g4 = scale_sqrt2(gram2I(2));
    Census c2 = module_census(g4);
    long long pair = 0;
    for (const auto& m : c2.labels)
        if (m.variant == ModuleVariant::UntwistedPair) ++pair;
    REQUIRE(pair > 0);
    REQUIRE(!c2.twisted_supported);  // Z4 factors
}

TEST_CASE("simple currents") {
    Lattice s2 = scale_sqrt2(lattice_e8());
    REQUIRE(all_self_dual_simple_current(s2));
    Census c = module_census(scale_sqrt2(gram2I(2)));
    bool saw_pair = false;
    for (const auto& m : c.labels)
        if (m.variant == ModuleVariant::UntwistedPair) {
            REQUIRE(!is_simple_current(scale_sqrt2(gram2I(2)), m));
            saw_pair = true;
        }
    REQUIRE(saw_pair);

    // Gram diag(2,8): sqrt2 L* is not even
    IMat g(2, 2);
    g.at(0, 0) = 8;
    g.at(1, 1) = 16;
    Lattice mixed = make_lattice(g);
    REQUIRE(lat_even(mixed));
    REQUIRE(!all_self_dual_simple_current(mixed));
}

TEST_CASE("fusion groups") {
    FusionGroupInfo f8 = fusion_group(lattice_e8());
    REQUIRE(f8.k == 0);
    REQUIRE(f8.order == 4);

    FusionGroupInfo fs2 = fusion_group(scale_sqrt2(lattice_e8()));
    REQUIRE(fs2.k == 8);
    REQUIRE(fs2.order == 1024);

    FusionGroupInfo fbp = fusion_group(construction_b_lattice(bincode_e8()));
    REQUIRE(fbp.k == 2);
    REQUIRE(fbp.order == 16);

    IMat g(2, 2);
    g.at(0, 0) = 8;
    g.at(1, 1) = 16;
    REQUIRE_THROWS_AS(fusion_group(make_lattice(g)), std::invalid_argument);
}

TEST_CASE("lowest weights") {
    Lattice e8 = lattice_e8();
    Census c = module_census(e8);
    for (const auto& m : c.labels) {
        auto [num, den] = lowest_weight(e8, m);
        if (m.variant == ModuleVariant::UntwistedSplit)
            REQUIRE((m.sign > 0 ? num == 0 : (num == 1 && den == 1)));
        if (m.variant == ModuleVariant::Twisted) {
            if (m.sign > 0) REQUIRE((num == 1 && den == 2));  // n/16 at n = 8
            else REQUIRE((num == 1 && den == 1));             // n/16 + 1/2
        }
    }
    // alpha_1 coset of L+(e8) has lowest weight 1
    Lattice bp = construction_b_lattice(bincode_e8());
    ModuleLabel lab;
    lab.variant = ModuleVariant::UntwistedSplit;
    lab.coset = Vec(8, 0);
    lab.coset[0] = 8;
    auto [num, den] = lowest_weight(bp, lab);
    REQUIRE((num == 1 && den == 1));
}

TEST_CASE("characters dispatch and add up") {
    const int N = 6;
    Lattice e8 = lattice_e8();
    Census c = module_census(e8);
    QSeries sum = QSeries::zero(1);
    bool first = true;
    for (const auto& m : c.labels) {
        if (m.variant != ModuleVariant::UntwistedSplit) continue;
        QSeries ch = character_of(e8, m, N);
        if (first) { sum = ch; first = false; }
        else sum = qs_add(sum, ch);
    }
    QSeries full = ch_vl(e8, N);
    for (long long e = sum.offset; e < sum.trunc; ++e)
        REQUIRE(sum.at_grid(e) == (e >= full.offset ? full.at_grid(e) : 0));
}

TEST_CASE("classify plus pairs") {
    Lattice e8sq = direct_sum(lattice_e8(), lattice_e8());
    Lattice d16 = construction_a_lattice(bincode_d16plus());

    SECTION("the exceptional rank-16 pair") {
        Verdict v = classify_pair_plus(e8sq, d16, 6, true);
        REQUIRE(v.outcome == Verdict::Outcome::ExceptionalPair);
        bool saw_case_iv = false;
        for (const auto& t : v.trace)
            if (t.find("2^{9-k} - 32 = 480") != std::string::npos) saw_case_iv = true;
        REQUIRE(saw_case_iv);
    }

    SECTION("equal lattices are isomorphic with a verified witness") {
        Verdict v = classify_pair_plus(e8sq, e8sq, 4);
        REQUIRE(v.outcome == Verdict::Outcome::Isomorphic);
        REQUIRE(v.witness.has_value());
        REQUIRE(verify_isometry(e8sq, e8sq, *v.witness));
    }

    SECTION("theta-distinguished pair") {
        Lattice bp = construction_b_lattice(bincode_e8());
        Lattice s2 = scale_sqrt2(lattice_e8());
        Verdict v = classify_pair_plus(bp, s2, 4);
        REQUIRE(v.outcome == Verdict::Outcome::NotIsomorphic);
        REQUIRE(v.invariant.find("112 vs 0") != std::string::npos);
        // symmetric with transposed certificate
        Verdict w = classify_pair_plus(s2, bp, 4);
        REQUIRE(w.outcome == Verdict::Outcome::NotIsomorphic);
        REQUIRE(w.invariant.find("0 vs 112") != std::string::npos);
    }
}

TEST_CASE("classify mixed pairs") {
    SECTION("construction pair at rank 8") {
        Lattice la = lattice_e8();
        Lattice lb = construction_b_lattice(bincode_e8());
        Verdict v = classify_pair_mixed(la, lb, 4);
        REQUIRE(v.outcome == Verdict::Outcome::CodeLatticePair);
        REQUIRE(v.code.has_value());
        REQUIRE(code_equivalent(*v.code, bincode_e8()).has_value());
        REQUIRE(v.witness_left.has_value());
        REQUIRE(v.witness_right.has_value());
    }

    SECTION("E8 against itself is not a mixed pair") {
        Lattice e8 = lattice_e8();
        Verdict v = classify_pair_mixed(e8, e8, 4);
        REQUIRE(v.outcome == Verdict::Outcome::NotIsomorphic);
        REQUIRE(v.invariant.find("120") != std::string::npos);
        REQUIRE(v.invariant.find("248") != std::string::npos);
    }
}
