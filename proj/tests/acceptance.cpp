// Acceptance checks: one PASS/FAIL line per criterion.
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <thread>

using namespace vtest;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---- 1: printed 14-tetrahedron example --------------------------------------------------------------------------

const char* kPrintedTheta =
    "a^7*b - a^6*b^2 - a^5*b^3 + a^4*b^4 - a^6*b - 2*a^5*b^2 + 2*a^4*b^3 + 2*a^3*b^4 - a*b^6"
    " - a^6 + 2*a^4*b^2 + 2*a^3*b^3 - 2*a^2*b^4 - a*b^5 + a^3*b^2 - a^2*b^3 - a*b^4 + b^5";
const char* kPrintedDelta =
    "a^7*b + a^6*b^2 + a^5*b^3 + a^4*b^4 + a^6*b + 2*a^4*b^3 + 2*a^3*b^4 + 2*a^2*b^5 + a*b^6"
    " + a^6 + 2*a^5*b + 2*a^4*b^2 + 2*a^3*b^3 + a*b^5 + a^3*b^2 + a^2*b^3 + a*b^4 + b^5";

Outcome layered_example() {
  auto t0 = Clock::now();
  PolyReport r = compute_polynomials(parse_taut_sig(kLayeredExample), {true, true, false});
  LaurentPoly want_theta = normalize_unit(parse_poly(kPrintedTheta, 2, {"a", "b"}));
  LaurentPoly want_delta = normalize_unit(parse_poly(kPrintedDelta, 2, {"a", "b"}));
  bool sizes = want_theta.size() == 18 && want_delta.size() == 18 && r.b1 == 2;
  std::optional<IntMatrixRows> found;
  int theta_hits = 0, delta_hits = 0;
  for (int a = -3; a <= 3 && !found; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c)
        for (int d = -3; d <= 3; ++d) {
          if (std::abs(a * d - b * c) != 1) continue;
          IntMatrixRows m = {{a, b}, {c, d}};
          bool th = normalize_unit(specialize(*r.theta, m)) == want_theta;
          bool de = normalize_unit(specialize(*r.delta, m)) == want_delta;
          theta_hits += th;
          delta_hits += de;
          if (th && de && !found) found = m;
        }
  double secs = seconds_since(t0);
  Outcome o;
  o.pass = sizes && found && secs < 60;
  char buf[200];
  if (found)
    std::snprintf(buf, sizeof buf, "basis [[%ld,%ld],[%ld,%ld]] maps both polynomials onto the printed ones; %.2f s",
                  (*found)[0][0], (*found)[0][1], (*found)[1][0], (*found)[1][1], secs);
  else
    std::snprintf(buf, sizeof buf, "no common basis (theta matches %d, delta matches %d); %.2f s", theta_hits,
                  delta_hits, secs);
  o.detail = buf;
  return o;
}

// ---- 2: m003 double cover -----------------------------------------------------------------------

Outcome m003_cover() {
  auto t0 = Clock::now();
  Analysis a = analyze_sig(kM003);
  DoubleCover dc = build_double_cover(a.ts, a.eo.beta);
  Analysis c = analyze(dc.table, dc.angles);
  bool veering = is_veering_colouring(c.ts, derive_veering_colouring(c.ts));
  double secs = seconds_since(t0);
  Outcome o;
  o.pass = !a.eo.is_edge_orientable && dc.table.size() == 4 && dc.connected && veering && c.eo.is_edge_orientable &&
           secs < 1;
  o.detail = std::string("base EO=") + (a.eo.is_edge_orientable ? "yes" : "no") +
             ", cover tets=" + std::to_string(dc.table.size()) + ", connected=" + (dc.connected ? "yes" : "no") +
             ", veering=" + (veering ? "yes" : "no") + ", cover EO=" + (c.eo.is_edge_orientable ? "yes" : "no") +
             "; " + std::to_string(secs) + " s";
  return o;
}

// ---- 3: identities on a sample ------------------------------------------------------------------

Outcome identity_sample() {
  auto t0 = Clock::now();
  std::vector<CensusEntry> sample;
  for (std::size_t i = 0; i < census().size(); i += 435) sample.push_back(census()[i]);
  RunOptions opt;
  opt.verify = true;
  long twisted = 0, hat = 0, even = 0;
  std::vector<std::string> failures;
  BatchSummary s = run_batch(sample, opt, jobs(), [&](const RunRecord& r) {
    if (!r.verify) return;
    twisted += r.verify->twisted.has_value();
    hat += r.verify->hat_product.has_value();
    even += r.verify->even_torsion.has_value();
    if (!r.verify->pass) failures.push_back(r.sig);
  });
  double secs = seconds_since(t0);
  Outcome o;
  o.pass = s.total >= 200 && s.errors == 0 && s.identity_fail == 0 && secs < 600;
  o.detail = std::to_string(s.total) + " entries, " + std::to_string(s.errors) + " errors, " +
             std::to_string(s.identity_fail) + " failures (twisted " + std::to_string(twisted) + ", hat " +
             std::to_string(hat) + ", parity " + std::to_string(even) + " checked); " + std::to_string(secs) + " s";
  for (std::size_t i = 0; i < failures.size() && i < 5; ++i) o.detail += "\n    failed: " + failures[i];
  return o;
}

// ---- 4: census statistics -----------------------------------------------------------------------

Outcome census_statistics() {
  auto t0 = Clock::now();
  RunOptions opt;
  opt.polynomials = false;
  BatchSummary s = run_batch(census(), opt, jobs(), [](const RunRecord&) {});
  double secs = seconds_since(t0);
  Outcome o;
  o.pass = s.total == 87047 && s.errors == 0 && s.not_edge_orientable == 62536 && s.cover_same_cusps == 49637 &&
           s.cover_doubled_cusps == 5854;
  o.detail = std::to_string(s.not_edge_orientable) + "/" + std::to_string(s.total) + " not edge-orientable, " +
             std::to_string(s.cover_same_cusps) + " same-cusp covers, " + std::to_string(s.cover_doubled_cusps) +
             " doubled; " + std::to_string(secs) + " s";
  return o;
}

// ---- 5: oracles ---------------------------------------------------------------------------------

Outcome oracles() {
  std::mt19937 rng(2024);
  int fit_bad = 0, det_bad = 0, snf_bad = 0;
  for (int k = 0; k < 100; ++k) {
    int rows = 1 + rng() % 3, cols = rows + rng() % (7 - rows);
    LaurentMatrix m = random_matrix(rng, rows, cols, 2);
    if (normalize_unit(fitting_gcd(m)) != normalize_unit(exhaustive_minor_gcd(m))) ++fit_bad;
  }
  Analysis a = analyze_sig(kM003);
  for (const LaurentMatrix& m : {build_taut_matrix(a.ts, a.tracks, a.h1), build_alexander_matrix(a.ts, a.h1)}) {
    if (m.rows() != 2 || m.cols() != 4) ++fit_bad;
    if (normalize_unit(fitting_gcd(m)) != normalize_unit(exhaustive_minor_gcd(m))) ++fit_bad;
  }
  for (int k = 0; k < 100; ++k) {
    int n = 1 + rng() % 4;
    LaurentMatrix m = random_matrix(rng, n, n, 2);
    if (determinant(m) != cofactor_determinant(m)) ++det_bad;
  }
  for (int k = 0; k < 100; ++k) {
    int rows = 1 + rng() % 7, cols = 1 + rng() % 7;
    IntMatrix m = random_int_matrix(rng, rows, cols, 9);
    if (!check_snf(m, smith_normal_form(m))) ++snf_bad;
  }
  Outcome o;
  o.pass = fit_bad == 0 && det_bad == 0 && snf_bad == 0;
  o.detail = "mismatches: fitting " + std::to_string(fit_bad) + "/102, determinant " + std::to_string(det_bad) +
             "/100, SNF " + std::to_string(snf_bad) + "/100";
  return o;
}

// ---- 6: figure-eight ----------------------------------------------------------------------------

Outcome figure_eight() {
  Analysis a = analyze_sig(kFigureEight);
  PolyReport r = compute_polynomials(a, {true, true, false});
  LaurentPoly fox = fox_alexander(a);
  LaurentPoly want = parse_poly("t^2 - 3*t + 1", 1, {"t"});
  bool fox_ok = unit_equivalent(fox, want) && unit_equivalent(*r.delta, want);
  bool twisted = r.sigma && unit_equivalent(*r.theta, twist(*r.delta, *r.sigma));
  LaurentPoly spec = specialize(*r.theta, {{1}});
  double root = largest_real_root(spec);
  Outcome o;
  o.pass = fox_ok && twisted && std::abs(root - 2.6180) <= 1e-4;
  char buf[200];
  std::snprintf(buf, sizeof buf, "Fox %s, theta %s, sigma %s, largest root %.6f", fox.to_string().c_str(),
                r.theta->to_string().c_str(), r.sigma ? std::to_string((*r.sigma)[0]).c_str() : "none", root);
  o.detail = buf;
  return o;
}

// ---- 7: presentation invariance -----------------------------------------------------------------

Outcome presentation_invariance() {
  auto t0 = Clock::now();
  int entries = 0, bad = 0;
  std::string first_bad;
  std::mt19937 rng(77);
  for (std::size_t i = 0; i < census().size() && entries < 20; i += 4352) {
    const TautSig& sig = *census()[i].sig;
    Analysis a = analyze(sig.table, sig.angles);
    PolyReport ra = compute_polynomials(a, {true, true, false});
    ++entries;

    auto compare = [&](const Analysis& b, const FaceMap& fm, const char* what) {
      PolyReport rb = compute_polynomials(b, {true, true, false});
      IntMatrixRows t = transport(a, b, fm);
      bool ok = normalize_unit(specialize(*ra.theta, t)) == normalize_unit(*rb.theta) &&
                normalize_unit(specialize(*ra.delta, t)) == normalize_unit(*rb.delta);
      if (!ok) {
        ++bad;
        if (first_bad.empty()) first_bad = sig.text() + " (" + what + ")";
      }
    };

    std::vector<int> perm(a.ts.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto [pt, pa] = permute_tetrahedra(sig.table, sig.angles, perm);
    Analysis b = analyze(pt, pa);
    compare(b, permutation_map(a, b, perm), "permuted");

    compare(analyze(sig.table, sig.angles, {TreeRule::dfs, IncidenceRule::first}), identity_map(a), "dfs tree");
    compare(analyze(sig.table, sig.angles, {TreeRule::bfs, IncidenceRule::last}), identity_map(a), "incidence");
    compare(analyze(flip_coorientation(a.ts)), identity_map(a, -1), "flipped");
  }
  Outcome o;
  o.pass = entries == 20 && bad == 0;
  o.detail = std::to_string(entries) + " entries x 4 presentations, " + std::to_string(bad) + " mismatches; " +
             std::to_string(seconds_since(t0)) + " s";
  if (!first_bad.empty()) o.detail += "; first: " + first_bad;
  return o;
}

// ---- 8: filling -----------------------------------------------------------------------------------

Outcome filling_cross_route() {
  std::mt19937 rng(88);
  int pairs = 0, cross_bad = 0, div_bad = 0, label_bad = 0;
  std::map<std::string, int> cases;
  for (std::size_t i = 0; i < census().size() && pairs < 20; i += 409) {
    const TautSig& sig = *census()[i].sig;
    Analysis a = analyze(sig.table, sig.angles);
    if (!a.eo.sigma) continue;
    for (int attempt = 0; attempt < 6; ++attempt) {
      FillingSpec sp;
      sp.slopes.assign(a.cusps.size(), std::nullopt);
      if (a.h1.rank == 1 && a.cusps.size() == 1) {
        // the homological longitude is the only slope that keeps b1 = 1
        long p = a.cusps[0].image_free[0][0], q = a.cusps[0].image_free[1][0], g = std::gcd(p, q);
        if (g != 0) sp.slopes[0] = Slope{q / g, -p / g};
      } else {
        for (auto& s : sp.slopes) {
          if (rng() % 2) continue;
          long x, y;
          do {
            x = static_cast<long>(rng() % 11) - 5;
            y = static_cast<long>(rng() % 11) - 5;
          } while (std::gcd(x, y) != 1);
          s = Slope{x, y};
        }
      }
      if (sp.empty()) continue;
      FilledHomology fh = filled_homology(a.h1, a.cusps, sp);
      auto sN = vN_edge_orientable(a.eo, a.h1, fh);
      if (fh.s == 0 || !sN) continue;
      if (std::find(fh.core_trivial.begin(), fh.core_trivial.end(), true) != fh.core_trivial.end()) continue;
      PolyReport r = compute_polynomials(a, {true, true, false});
      LaurentPoly lhs = normalize_unit(specialise_under_filling(*r.theta, fh));
      LaurentPoly rhs = normalize_unit(twist(specialise_under_filling(*r.delta, fh), *sN));
      if (lhs != rhs) ++cross_bad;
      FilledPrediction p = predict_filled_alexander(*r.theta, fh, sN, a.h1.rank);
      if (!p.delta_N) ++div_bad;
      if (p.which != filling_case(a.h1.rank, fh.s, fh.boundary_empty)) ++label_bad;
      ++cases[case_label(p.which)];
      ++pairs;
      break;
    }
  }
  Outcome o;
  o.pass = pairs == 20 && cross_bad == 0 && div_bad == 0 && label_bad == 0;
  o.detail = std::to_string(pairs) + " pairs, cross-route mismatches " + std::to_string(cross_bad) +
             ", division failures " + std::to_string(div_bad) + ", label errors " + std::to_string(label_bad) + "; cases";
  for (const auto& [k, v] : cases) o.detail += " " + k + ":" + std::to_string(v);
  return o;
}

}  // namespace

// optional arguments: criterion numbers to run (default all)
int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, layered_example},    {2, m003_cover},     {3, identity_sample},         {4, census_statistics},
      {5, oracles},          {6, figure_eight},   {7, presentation_invariance}, {8, filling_cross_route},
  };
  int failed = 0;
  for (const auto& [n, run] : criteria) {
    if (!only.empty() && !only.count(n)) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
