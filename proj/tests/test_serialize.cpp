#include "support.hpp"

#include <doctest.h>

using namespace vtest;

TEST_SUITE("serialize") {
  TEST_CASE("polynomial JSON round-trip") {
    std::mt19937 rng(47);
    for (int k = 0; k < 50; ++k) {
      LaurentPoly p = random_poly(rng, 3, 6, 3, 9);
      CHECK(poly_from_json(poly_to_json(p)) == normalize_unit(p));
    }
    LaurentPoly big = LaurentPoly::constant(1, mpz_class("123456789012345678901234567890")) + parse_poly("t", 1, {"t"});
    json j = poly_to_json(big);
    CHECK(j["terms"][0]["coef"].is_string());
    CHECK(poly_from_json(j) == normalize_unit(big));
    CHECK(poly_to_json(LaurentPoly(2)).dump() == R"({"vars":2,"terms":[]})");
    CHECK_THROWS_AS(poly_from_json(json::parse(R"({"vars":1,"terms":[{"exp":[1,2],"coef":1}]})")), ParseError);
    CHECK_THROWS_AS(poly_from_json(json::parse(R"({"terms":[]})")), ParseError);
  }

  TEST_CASE("torsion strings") {
    CHECK(torsion_string({}, 0) == "0");
    CHECK(torsion_string({}, 2) == "Z+Z");
    CHECK(torsion_string({2, 4}, 1) == "Z/2+Z/4+Z");
  }

  TEST_CASE("run record round-trip") {
    RunOptions opt;
    opt.verify = true;
    for (const std::string& s : {kM003, kFigureEight, kLayeredExample}) {
      RunRecord r = run_sig(parse_taut_sig(s), opt);
      CHECK_FALSE(r.error.has_value());
      REQUIRE(r.verify.has_value());
      CHECK(r.verify->pass);
      json j = to_json(r);
      for (const char* key : {"sig", "b1", "edge_orientable", "theta", "delta", "delta_hat", "sigma", "verify"})
        CHECK(j.contains(key));
      CHECK(run_record_from_json(json::parse(j.dump())) == r);
    }
    CensusEntry bad;
    bad.line = 3;
    bad.token = "bogus";
    bad.error = "invalid";
    RunRecord e = run_entry(bad, opt);
    CHECK(e.error.has_value());
    CHECK(e.error_kind == 1);
    CHECK(run_record_from_json(to_json(e)) == e);
  }

  TEST_CASE("batch output does not depend on the thread count") {
    std::vector<CensusEntry> entries;
    for (std::size_t i = 0; i < census().size(); i += 2903) entries.push_back(census()[i]);
    CensusEntry bad;
    bad.token = "bogus";
    bad.error = "invalid";
    entries.insert(entries.begin() + 5, bad);
    RunOptions opt;
    opt.verify = true;
    opt.timing = false;
    std::vector<std::string> one, four;
    BatchSummary s1 = run_batch(entries, opt, 1, [&](const RunRecord& r) { one.push_back(to_json(r).dump()); });
    BatchSummary s4 = run_batch(entries, opt, 4, [&](const RunRecord& r) { four.push_back(to_json(r).dump()); });
    CHECK(one == four);
    CHECK(s1.to_json() == s4.to_json());
    CHECK(s1.total == static_cast<long>(entries.size()));
    CHECK(s1.errors == 1);
    CHECK(s1.identity_fail == 0);
    CHECK(s1.edge_orientable + s1.not_edge_orientable == s1.total - s1.errors);
    CHECK(s1.cover_same_cusps + s1.cover_doubled_cusps + s1.cover_other_cusps == s1.not_edge_orientable);
  }
}
