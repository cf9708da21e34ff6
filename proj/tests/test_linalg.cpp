#include <catch2/catch_amalgamated.hpp>

#include "latcode/exactmat.hpp"
#include "latcode/f2.hpp"

using namespace latcode;

TEST_CASE("rref canonicalizes spans") {
    std::vector<Word> a = {0b1101, 0b0110, 0b1011};
    std::vector<Word> b = {0b0110, 0b1101, 0b1011 ^ 0b0110};
    f2_rref(a, 4);
    f2_rref(b, 4);
    REQUIRE(a == b);
    auto c = a;
    f2_rref(c, 4);
    REQUIRE(c == a);  // idempotent
}

TEST_CASE("nullspace is the orthogonal complement") {
    std::vector<Word> rows = {0b1110, 0b0111};
    auto ns = f2_nullspace(rows, 4);
    REQUIRE(ns.size() == 2);
    for (Word v : f2_span(ns)) {
        REQUIRE(f2_dot(v, 0b1110) == 0);
        REQUIRE(f2_dot(v, 0b0111) == 0);
    }
    // dim + dim-perp = ambient
    std::vector<Word> r2 = rows;
    REQUIRE(f2_rref(r2, 4) + static_cast<int>(ns.size()) == 4);
}

TEST_CASE("subspace enumeration counts Galois numbers") {
    // number of subspaces of F2^d: 2, 5, 16, 67, 374 for d = 1..5
    const long expected[] = {2, 5, 16, 67, 374};
    for (int d = 1; d <= 5; ++d) {
        long count = 0;
        f2_enumerate_subspaces(d, 0, d, [&](const std::vector<Word>&) { ++count; });
        REQUIRE(count == expected[d - 1]);
    }
}

TEST_CASE("hnf is canonical for row spans") {
    IMat m(3, 3);
    long long rows[3][3] = {{4, 0, 0}, {0, 4, 0}, {2, 2, 2}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = rows[i][j];
    IMat h = hnf(m);
    // same lattice described by a different generating set
    IMat m2(4, 3);
    long long rows2[4][3] = {{2, 2, 2}, {4, 4, 0}, {6, 2, 2}, {0, 0, 4}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) m2.at(i, j) = rows2[i][j];
    REQUIRE(hnf(m2) == h);
    REQUIRE(hnf(h) == h);
    REQUIRE(h.rows == 3);
    // determinant of the span is preserved: 4*4*2 = 32
    REQUIRE(static_cast<long long>(det_exact(h)) == 32);
}

TEST_CASE("bareiss determinant") {
    IMat m(2, 2);
    m.at(0, 0) = 3; m.at(0, 1) = 7; m.at(1, 0) = 1; m.at(1, 1) = 5;
    REQUIRE(static_cast<long long>(det_exact(m)) == 8);
    REQUIRE(static_cast<long long>(det_exact(IMat::identity(6))) == 1);
}

TEST_CASE("adjugate solves against the determinant") {
    IMat m(3, 3);
    long long rows[3][3] = {{2, 1, 0}, {0, 3, 1}, {1, 0, 2}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = rows[i][j];
    auto adj = adjugate(m);
    i128 det = det_exact(m);
    // adj * m = det * I
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            i128 acc = 0;
            for (int k = 0; k < 3; ++k) acc += adj[size_t(i) * 3 + k] * m.at(k, j);
            REQUIRE(acc == (i == j ? det : 0));
        }
}

TEST_CASE("smith invariants") {
    IMat m(2, 2);
    m.at(0, 0) = 2; m.at(0, 1) = 0; m.at(1, 0) = 0; m.at(1, 1) = 4;
    auto inv = smith_invariants(m);
    REQUIRE(inv == std::vector<i64>{2, 4});

    IMat g(2, 2);  // [[2,1],[1,2]]: invariants 1, 3
    g.at(0, 0) = 2; g.at(0, 1) = 1; g.at(1, 0) = 1; g.at(1, 1) = 2;
    REQUIRE(smith_invariants(g) == std::vector<i64>{1, 3});

    IMat z(3, 3);
    z.at(0, 0) = 6; z.at(1, 1) = 10; z.at(2, 2) = 15;
    // diag(6,10,15) has invariants 1, 30, 30
    REQUIRE(smith_invariants(z) == std::vector<i64>{1, 30, 30});
}
