#include <catch2/catch_amalgamated.hpp>

#include "latcode/checks.hpp"

using namespace latcode;

TEST_CASE("randomized property suites pass") {
    Report r = run_check({"property-suites"});
    INFO(r.certificate.dump());
    REQUIRE(r.status == "pass");
    REQUIRE(r.certificate["lattices_checked"] == 200);
    REQUIRE(r.certificate["kleinian_checked"] == 200);
    REQUIRE(r.certificate["l2ele_applied"].get<long long>() > 0);
}

TEST_CASE("check registry basics") {
    REQUIRE_THROWS_AS(run_check({"bogus"}), std::invalid_argument);
    auto ids = registered_check_ids();
    REQUIRE(std::find(ids.begin(), ids.end(), "lemma-LHo1") != ids.end());
    REQUIRE(std::find(ids.begin(), ids.end(), "table2-row:VL+~VN+") != ids.end());

    Report r = run_check({"lemma-LC816"});
    INFO(r.certificate.dump());
    REQUIRE(r.status == "pass");
}

TEST_CASE("reports are deterministic") {
    Report a = run_check({"lemma-LHo1"});
    Report b = run_check({"lemma-LHo1"});
    REQUIRE(a.status == "pass");
    REQUIRE(a.certificate.dump() == b.certificate.dump());
}
