#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jackmap/textio.hpp"

using namespace jackmap;

namespace {
Partition P(std::vector<int> v) { return Partition(std::move(v)); }
}

TEST_CASE("partition parsing and printing") {
    CHECK(parse_partition("[3,2,1]") == P({3, 2, 1}));
    CHECK(parse_partition("[]") == P({}));
    CHECK(parse_partition(" [ 2 , 1 ] ") == P({2, 1}));
    CHECK(parse_partition("[1,3]") == P({3, 1}));  // sorted on construction
    CHECK(P({3, 2}).to_string() == "[3,2]");
    CHECK_THROWS(parse_partition("[1,)"));
    CHECK_THROWS(parse_partition("[1] junk"));
}

TEST_CASE("p-expression parsing") {
    CHECK(parse_pexpr("p[2]") == PExpr::p(P({2})));
    CHECK(parse_pexpr("2*p[2,1] - 1/2*p[1]") ==
          PExpr::p(P({2, 1})) * ScalarQb(2) - PExpr::p(P({1})) * ScalarQb::from_rat(Rat(1, 2)));
    CHECK(parse_pexpr("1") == PExpr::one());
    CHECK(parse_pexpr("p[] + p[1]") == PExpr::one() + PExpr::p(P({1})));
    CHECK(parse_pexpr("-p[1]") == PExpr::p(P({1})) * ScalarQb(-1));
    CHECK_THROWS(parse_pexpr(""));
    CHECK_THROWS(parse_pexpr("p[1] p[2]"));
}

TEST_CASE("scalar json round trip") {
    ScalarQb x = (ScalarQb::b() + ScalarQb(1)) / ScalarQb(2);
    nlohmann::ordered_json j = scalar_to_json(x);
    CHECK(j.dump() == "{\"num\":[1,1],\"den\":[2]}");
    CHECK(scalar_from_json(nlohmann::json::parse(j.dump())) == x);
    CHECK(scalar_to_json(ScalarQb(0))["num"].dump() == "[0]");
}

TEST_CASE("partition json") {
    CHECK(partition_to_json(P({3, 2})).dump() == "[3,2]");
    CHECK(partition_from_json(nlohmann::json::array()) == P({}));
    CHECK(partition_from_json(nlohmann::json({2, 1})) == P({2, 1}));
}

TEST_CASE("mseries json records") {
    MultiSeries s(3, MSCaps{2, 2, 2});
    s.add_term(MSKey{1, {P({1}), P({1}), P({1})}}, ScalarQb::b());
    s.add_term(MSKey{0, {P({}), P({}), P({})}}, ScalarQb(1));
    nlohmann::ordered_json arr = mseries_to_json(s);
    REQUIRE(arr.size() == 2);
    CHECK(arr[0].dump() ==
          R"({"t":0,"p":[],"q":[],"r":[],"coeff":{"num":[1],"den":[1]}})");
    CHECK(arr[1].dump() ==
          R"({"t":1,"p":[1],"q":[1],"r":[1],"coeff":{"num":[0,1],"den":[1]}})");
}

TEST_CASE("pexpr printing format") {
    PExpr f = PExpr::p(P({1, 1})) + PExpr::p(P({2})) * ScalarQb::alpha();
    CHECK(f.to_string() == "p[1,1] + (b+1)*p[2]");
}
