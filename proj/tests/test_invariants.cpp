#include "support.hpp"

#include <doctest.h>

using namespace vtest;

namespace {

LaurentPoly T(const std::string& s) { return parse_poly(s, 1, {"t"}); }

std::vector<int> range_of(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_SUITE("invariants") {
  TEST_CASE("slot labels vanish for the zero cocycle") {
    Analysis a = analyze_sig(kLayeredExample);
    std::vector<std::vector<long>> zero(a.ts.table.num_faces(), std::vector<long>(2, 0));
    SlotLabels sl = slot_labels(a.ts, zero, 2);
    for (const auto& tet : sl.label)
      for (const auto& l : tet) CHECK(l == std::vector<long>{0, 0});
    for (const auto& tet : sl.ref_sign)
      for (int s : tet) CHECK((s == 1 || s == -1));
  }

  TEST_CASE("taut matrix columns") {
    Analysis a = analyze_sig(kLayeredExample);
    LaurentMatrix d = build_taut_matrix(a.ts, a.tracks, a.h1);
    CHECK(d.rows() == a.ts.table.num_edges());
    CHECK(d.cols() == a.ts.table.num_faces());
    auto one = d.eval_one();
    for (int f = 0; f < d.cols(); ++f) {
      long sum = 0, mass = 0;
      for (int e = 0; e < d.rows(); ++e) {
        sum += one[e][f];
        for (std::size_t k = 0; k < d.at(e, f).size(); ++k) mass += abs(d.at(e, f).coef(k).get_si());
      }
      CHECK(sum == -1);
      CHECK(mass == 3);
    }
  }

  TEST_CASE("Alexander matrix is a boundary at 1") {
    for (const std::string& s : {kM003, kFigureEight, kLayeredExample}) {
      Analysis a = analyze_sig(s);
      auto m = build_alexander_matrix(a.ts, a.h1).eval_one();
      for (int t = 0; t < a.ts.size(); ++t)
        for (std::size_t e = 0; e < m.size(); ++e) {
          long acc = 0;
          for (int f = 0; f < a.ts.table.num_faces(); ++f)
            acc += m[e][f] * ((a.ts.below(f).tet == t) - (a.ts.above(f).tet == t));
          CHECK(acc == 0);
        }
    }
  }

  TEST_CASE("fitting_gcd agrees with the exhaustive minor gcd") {
    std::mt19937 rng(29);
    int nontrivial = 0;
    for (int k = 0; k < 100; ++k) {
      int rows = 1 + rng() % 3, cols = rows + rng() % (7 - rows);
      LaurentMatrix m = random_matrix(rng, rows, cols, 2);
      LaurentPoly g = fitting_gcd(m);
      CHECK(normalize_unit(g) == normalize_unit(exhaustive_minor_gcd(m)));
      nontrivial += !g.is_unit();
    }
    CHECK(nontrivial > 10);
  }

  TEST_CASE("fitting_gcd on the m003 matrices") {
    Analysis a = analyze_sig(kM003);
    LaurentMatrix d = build_taut_matrix(a.ts, a.tracks, a.h1);
    LaurentMatrix al = build_alexander_matrix(a.ts, a.h1);
    CHECK(d.rows() == 2);
    CHECK(d.cols() == 4);
    CHECK(normalize_unit(fitting_gcd(d)) == normalize_unit(exhaustive_minor_gcd(d)));
    CHECK(normalize_unit(fitting_gcd(al)) == normalize_unit(exhaustive_minor_gcd(al)));
    CHECK(unit_equivalent(fitting_gcd(d), T("t^2 - 3*t + 1")));
    CHECK(unit_equivalent(fitting_gcd(al), T("t^2 + 3*t + 1")));
  }

  TEST_CASE("fitting_gcd edge cases") {
    CHECK(fitting_gcd(LaurentMatrix(0, 3, 1)) == LaurentPoly::constant(1, 1));
    CHECK_THROWS(fitting_gcd(LaurentMatrix(3, 2, 1)));
    LaurentMatrix z(2, 3, 1);
    CHECK(fitting_gcd(z).is_zero());
  }

  TEST_CASE("fitting_gcd ignores row negation and column order") {
    Analysis a = analyze_sig(kLayeredExample);
    LaurentMatrix d = build_taut_matrix(a.ts, a.tracks, a.h1);
    LaurentPoly g = normalize_unit(fitting_gcd(d));
    LaurentMatrix n = d;
    for (int j = 0; j < n.cols(); ++j) n.at(3, j) = -n.at(3, j);
    CHECK(normalize_unit(fitting_gcd(n)) == g);
    std::vector<int> cols = range_of(d.cols());
    std::reverse(cols.begin(), cols.end());
    CHECK(normalize_unit(fitting_gcd(d.submatrix(range_of(d.rows()), cols))) == g);
  }

  TEST_CASE("figure-eight polynomials") {
    Analysis a = analyze_sig(kFigureEight);
    PolyReport r = compute_polynomials(a);
    CHECK(r.edge_orientable);
    CHECK_FALSE(r.delta_hat.has_value());
    REQUIRE(r.sigma.has_value());
    CHECK(unit_equivalent(*r.delta, T("t^2 - 3*t + 1")));
    CHECK(unit_equivalent(*r.theta, twist(*r.delta, *r.sigma)));
    CHECK(unit_equivalent(fox_alexander(a), *r.delta));
    CHECK(std::abs(largest_real_root(*r.theta) - 2.6180339887) < 1e-4);
  }

  TEST_CASE("m003 polynomials") {
    PolyReport r = compute_polynomials(parse_taut_sig(kM003));
    CHECK_FALSE(r.edge_orientable);
    CHECK(r.edge_orientable_fab);
    CHECK(r.sigma == std::vector<int>{-1});
    CHECK(unit_equivalent(*r.theta, T("t^2 - 3*t + 1")));
    CHECK(unit_equivalent(*r.delta, T("t^2 + 3*t + 1")));
    REQUIRE(r.delta_hat.has_value());
    CHECK(unit_equivalent(*r.delta_hat, T("t^4 - 7*t^2 + 1")));
    CHECK(r.cover_cusps == 1);
    CHECK(verify_identities(r).all_pass());
  }

  TEST_CASE("Fox calculus agrees with the Alexander polynomial") {
    int checked = 0;
    for (std::size_t i = 0; i < 8000; i += 80) {
      const TautSig& sig = *census()[i].sig;
      if (sig.table.size() > 10) continue;
      Analysis a = analyze(sig.table, sig.angles);
      PolyReport r = compute_polynomials(a, {false, true, false});
      CHECK(unit_equivalent(fox_alexander(a), *r.delta));
      ++checked;
    }
    CHECK(checked >= 15);
  }

  TEST_CASE("both double-cover routes agree") {
    for (std::size_t i = 0; i < census().size(); i += 7919) {
      const TautSig& sig = *census()[i].sig;
      Analysis a = analyze(sig.table, sig.angles);
      if (a.eo.is_edge_orientable) continue;
      DoubleCoverData d = double_cover_data(a);
      CHECK(d.cover.connected);
      CHECK(normalize_unit(fitting_gcd(cover_alexander_matrix(a, d))) ==
            normalize_unit(fitting_gcd(cover_alexander_matrix_pullback(a, d))));
    }
  }

  TEST_CASE("identities on a census sample") {
    int hat = 0, twisted = 0;
    for (std::size_t i = 0; i < census().size(); i += 1741) {
      PolyReport r = compute_polynomials(*census()[i].sig);
      VerifyRecord v = verify_identities(r);
      CHECK(v.all_pass());
      hat += v.hat_product.has_value();
      twisted += v.twisted.has_value();
    }
    CHECK(hat > 0);
    CHECK(twisted > 0);
  }

  TEST_CASE("verify_identities detects a wrong polynomial") {
    PolyReport r = compute_polynomials(parse_taut_sig(kM003));
    r.theta = T("t^2 - 4*t + 1");
    VerifyRecord v = verify_identities(r);
    CHECK_FALSE(v.all_pass());
    REQUIRE(v.twisted.has_value());
    CHECK_FALSE(*v.twisted);
  }
}
