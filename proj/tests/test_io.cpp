#include <catch2/catch_amalgamated.hpp>

#include "latcode/io.hpp"

using namespace latcode;

TEST_CASE("kleinian text round-trip") {
    KCode eps2 = parse_kleinian("kleinian 2\naa\nbb\n");
    REQUIRE(eps2 == kcode_eps2());
    REQUIRE(parse_kleinian(print_kleinian(eps2)) == eps2);
    REQUIRE(parse_kleinian(print_kleinian(kcode_delta4plus())) == kcode_delta4plus());

    REQUIRE_THROWS_AS(parse_kleinian("kleinian 2\nax\n"), ParseError);
    REQUIRE_THROWS_AS(parse_kleinian("kleinian 2\naaa\n"), ParseError);
    REQUIRE_THROWS_AS(parse_kleinian("klein 2\n"), ParseError);
    REQUIRE_THROWS_AS(parse_kleinian(""), ParseError);
}

TEST_CASE("binary text round-trip") {
    BinCode e8 = parse_bincode("binary 8\n11110000\n00111100\n00001111\n10101010\n");
    REQUIRE(e8 == bincode_e8());
    REQUIRE(parse_bincode(print_bincode(bincode_d16plus())) == bincode_d16plus());
    REQUIRE_THROWS_AS(parse_bincode("binary 8\n1111\n"), ParseError);
    REQUIRE_THROWS_AS(parse_bincode("binary 8\n11110002\n"), ParseError);
}

TEST_CASE("lattice text round-trip") {
    Lattice e8 = lattice_e8();
    std::string txt = print_lattice(e8);
    REQUIRE(txt.substr(0, 11) == "lattice 8 2");
    REQUIRE(parse_lattice(txt) == e8);

    Lattice plain = construction_a_lattice(BinCode(3, {}));
    REQUIRE(print_lattice(plain).substr(0, 11) == "lattice 3 1");
    REQUIRE(parse_lattice(print_lattice(plain)) == plain);

    // denominator 4 appears for duals of construction-B lattices
    Lattice dualb = dual_lattice(construction_b_lattice(bincode_e8()));
    REQUIRE(parse_lattice(print_lattice(dualb)) == dualb);

    REQUIRE_THROWS_AS(parse_lattice("lattice 2 3\n1 0\n0 1\n"), ParseError);
    REQUIRE_THROWS_AS(parse_lattice("lattice 2 2\n1 0\n"), ParseError);
    REQUIRE_THROWS_AS(parse_lattice("lattice 2 2\n1 0 0\n0 1\n"), ParseError);
}

TEST_CASE("named constructors") {
    REQUIRE(named_bincode("e8").has_value());
    REQUIRE(named_bincode("e8^2")->n == 16);
    REQUIRE(named_bincode("d16plus")->dim() == 8);
    REQUIRE(*named_bincode("d4^3") == d4m_code(3));
    REQUIRE(*named_bincode("(d4^3)0") == d4m0_code(3));
    REQUIRE(!named_bincode("e9").has_value());
    REQUIRE(named_kleinian("eps2")->n == 2);
    REQUIRE(named_kleinian("delta4+")->rank() == 4);
}

TEST_CASE("qseries printing") {
    QSeries t3 = qs_theta_k(3, 2);
    std::string s = print_qseries(t3);
    REQUIRE(s.find("q^{0/48}: 1") != std::string::npos);
    REQUIRE(s.find("q^{48/48}: 2") != std::string::npos);
    json arr = qseries_json(t3);
    REQUIRE(arr[0]["grid48"] == 0);
    REQUIRE(arr[0]["coeff"] == 1);
}

TEST_CASE("witness and verdict json") {
    Lattice e8 = lattice_e8();
    auto t = lattice_isometric(e8, e8);
    REQUIRE(t.has_value());
    json w = witness_json(e8, e8, *t);
    REQUIRE(w["verified"] == true);
    REQUIRE(w["gram_check_fnv1a"] == fnv1a_hex(sgram(e8).a));

    Verdict v = classify_pair_plus(e8, e8, 4);
    json vj = verdict_json(v);
    REQUIRE(vj["outcome"] == "Isomorphic");
    REQUIRE(vj["certificate"].contains("isometry"));
}
