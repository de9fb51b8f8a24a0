#pragma once

#include "veerpoly/batch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace vtest {

using namespace veerpoly;

inline std::string data_path(const std::string& name) { return std::string(VEERPOLY_DATA_DIR) + "/" + name; }

inline const std::string kFigureEight = "cPcbbbiht_12";
inline const std::string kM003 = "cPcbbbdxm_10";
inline const std::string kLayeredExample = "oLLLLLPwQQcccefgijlmkklnnnlnewbnetafobnkj_12001112122200";

struct CensusMeta {
  std::string sig;
  int cusps = 0;
  bool edge_orientable = false;
  std::string homology;
};

// columns: sig, ?, cusps, ?, ?, E/N, ?, ?, ?, homology, names
inline const std::vector<CensusMeta>& census_meta() {
  static const std::vector<CensusMeta> meta = [] {
    std::vector<CensusMeta> out;
    std::ifstream in(data_path("veering_census_with_data.txt"));
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ss(line);
      std::vector<std::string> col;
      std::string tok;
      while (ss >> tok) col.push_back(tok);
      if (col.size() < 10) continue;
      out.push_back({col[0], std::stoi(col[2]), col[5] == "E", col[9]});
    }
    return out;
  }();
  return meta;
}

inline const std::vector<CensusEntry>& census() {
  static const std::vector<CensusEntry> entries = load_census(data_path("veering_census.txt"));
  return entries;
}

inline Analysis analyze_sig(const std::string& text, const PresentationOptions& opt = {}) {
  TautSig s = parse_taut_sig(text);
  return analyze(s.table, s.angles, opt);
}

// ---- brute-force coorientations -------------------------------------------------------------

// Coorientations (one bit per face) for which every tetrahedron has its two top faces
// containing one pi-edge and its two bottom faces containing the other.
inline int count_taut_coorientations(const GluingTable& table, const TautAngleVector& angles) {
  int nf = table.num_faces();
  int count = 0;
  for (long mask = 0; mask < (1L << nf); ++mask) {
    bool ok = true;
    for (int t = 0; t < table.size() && ok; ++t) {
      std::vector<int> out;
      for (int i = 0; i < 4; ++i) {
        int f = table.face_index(t, i);
        const FaceSide& side0 = table.face(f)[0];
        bool t_below = (mask >> f & 1) ? !(side0.tet == t && side0.face == i) : (side0.tet == t && side0.face == i);
        if (t_below) out.push_back(i);
      }
      if (out.size() != 2) {
        ok = false;
        break;
      }
      // the two top faces are those opposite the endpoints of the bottom pi-edge
      int d = angles[t];
      auto ends = [](int e) { return std::vector<int>{kEdgeVertices[e][0], kEdgeVertices[e][1]}; };
      ok = out == ends(d) || out == ends(5 - d);
    }
    if (ok) ++count;
  }
  return count;
}

// ---- Fox calculus -------------------------------------------------------------------------------

// Fox matrix (relators x generators) of the dual-graph presentation of pi_1, abelianised
// through the cocycle; generators are the faces off the spanning tree.
inline LaurentMatrix fox_matrix(const Analysis& a) {
  const auto& h1 = a.h1;
  int g = h1.num_coords();
  int r = h1.rank;
  const GluingTable& tb = a.ts.table;
  LaurentMatrix m(tb.num_edges(), g, r);
  auto phi = [&](const std::vector<long>& v, int sign) {
    Exponent e(v.begin(), v.end());
    for (auto& x : e) x *= sign;
    return LaurentPoly::monomial(e);
  };
  for (int e = 0; e < tb.num_edges(); ++e) {
    std::vector<long> prefix(r, 0);
    for (const EdgeStep& s : tb.edge_cycle(e)) {
      int sign = a.ts.crossing_sign(s.tet, s.exit_vertex);
      int k = h1.gen_of_face[s.face];
      const auto& c = h1.cocycle[s.face];
      if (k >= 0) {
        if (sign > 0) {
          m.at(e, k) += phi(prefix, 1);
        } else {
          std::vector<long> p = prefix;
          for (int j = 0; j < r; ++j) p[j] -= c[j];
          m.at(e, k) -= phi(p, 1);
        }
      }
      for (int j = 0; j < r; ++j) prefix[j] += sign * c[j];
    }
  }
  return m;
}

// gcd of all (g-1)-minors of the Fox matrix
inline LaurentPoly fox_alexander(const Analysis& a) {
  LaurentMatrix m = fox_matrix(a);
  int rows = m.rows(), cols = m.cols(), k = cols - 1;
  LaurentPoly g(m.nvars());
  std::vector<int> rs(k), cs(k);
  std::vector<int> rsel(rows, 0), csel(cols, 0);
  std::fill(rsel.end() - k, rsel.end(), 1);
  do {
    rs.clear();
    for (int i = 0; i < rows; ++i)
      if (rsel[i]) rs.push_back(i);
    std::fill(csel.begin(), csel.end(), 0);
    std::fill(csel.end() - k, csel.end(), 1);
    do {
      cs.clear();
      for (int j = 0; j < cols; ++j)
        if (csel[j]) cs.push_back(j);
      g = gcd(g, determinant(m.submatrix(rs, cs)));
    } while (std::next_permutation(csel.begin(), csel.end()));
  } while (std::next_permutation(rsel.begin(), rsel.end()));
  return normalize_unit(g);
}

inline double eval_real(const LaurentPoly& p, double t) {
  double s = 0;
  for (std::size_t k = 0; k < p.size(); ++k) s += p.coef(k).get_d() * std::pow(t, p.exponent(k)[0]);
  return s;
}

// largest real root in (lo, hi) of a univariate Laurent polynomial, by sign scan and bisection
inline double largest_real_root(const LaurentPoly& p, double lo = 1e-6, double hi = 100.0) {
  const int steps = 200000;
  double best = std::nan("");
  double prev_t = lo, prev_v = eval_real(p, lo);
  for (int i = 1; i <= steps; ++i) {
    double t = lo + (hi - lo) * i / steps, v = eval_real(p, t);
    if ((prev_v <= 0 && v >= 0) || (prev_v >= 0 && v <= 0)) {
      double a = prev_t, b = t;
      for (int it = 0; it < 100; ++it) {
        double m = 0.5 * (a + b);
        if ((eval_real(p, a) <= 0) == (eval_real(p, m) <= 0))
          a = m;
        else
          b = m;
      }
      best = 0.5 * (a + b);
    }
    prev_t = t;
    prev_v = v;
  }
  return best;
}

// ---- presentation transport --------------------------------------------------------------------

// signed face correspondence from presentation A to presentation B
struct FaceMap {
  std::vector<int> face;
  std::vector<int> sign;
};

inline std::vector<long> map_cycle(const FaceMap& fm, const std::vector<long>& z, int nfaces) {
  std::vector<long> out(nfaces, 0);
  for (std::size_t f = 0; f < z.size(); ++f) out[fm.face[f]] += fm.sign[f] * z[f];
  return out;
}

// columns: images of A's H_M basis in B's H_M coordinates
inline IntMatrixRows transport(const Analysis& a, const Analysis& b, const FaceMap& fm) {
  int r = a.h1.rank;
  IntMatrixRows t(r, std::vector<long>(r, 0));
  for (int j = 0; j < r; ++j) {
    auto img = b.h1.free_part(map_cycle(fm, a.h1.free_basis_cycle(j), b.ts.table.num_faces()));
    for (int i = 0; i < r; ++i) t[i][j] = img[i];
  }
  return t;
}

inline FaceMap identity_map(const Analysis& a, int sign = 1) {
  FaceMap fm;
  for (int f = 0; f < a.ts.table.num_faces(); ++f) {
    fm.face.push_back(f);
    fm.sign.push_back(sign);
  }
  return fm;
}

inline FaceMap permutation_map(const Analysis& a, const Analysis& b, const std::vector<int>& perm) {
  FaceMap fm;
  for (int f = 0; f < a.ts.table.num_faces(); ++f) {
    const FaceSide& s = a.ts.below(f);
    int g = b.ts.table.face_index(perm[s.tet], s.face);
    const FaceSide& sb = b.ts.below(g);
    fm.face.push_back(g);
    fm.sign.push_back(sb.tet == perm[s.tet] && sb.face == s.face ? 1 : -1);
  }
  return fm;
}

// ---- random Laurent data ----------------------------------------------------------------------

inline LaurentPoly random_poly(std::mt19937& rng, int nvars, int max_terms, int exp_range, int coef_range) {
  std::uniform_int_distribution<int> nt(0, max_terms), ex(-exp_range, exp_range), cf(-coef_range, coef_range);
  LaurentPoly p(nvars);
  int n = nt(rng);
  for (int k = 0; k < n; ++k) {
    Exponent e(nvars);
    for (auto& x : e) x = ex(rng);
    int c = cf(rng);
    if (c != 0) p += LaurentPoly::monomial(e, c);
  }
  return p;
}

inline LaurentPoly random_unit(std::mt19937& rng, int nvars, int exp_range = 3) {
  std::uniform_int_distribution<int> ex(-exp_range, exp_range), sg(0, 1);
  Exponent e(nvars);
  for (auto& x : e) x = ex(rng);
  return LaurentPoly::monomial(e, sg(rng) ? 1 : -1);
}

// sparse matrix with a mix of units and short polynomials
inline LaurentMatrix random_matrix(std::mt19937& rng, int rows, int cols, int nvars, double unit_rate = 0.3) {
  LaurentMatrix m(rows, cols, nvars);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double x = u(rng);
      if (x < unit_rate)
        m.at(i, j) = random_unit(rng, nvars, 2);
      else if (x < 0.75)
        m.at(i, j) = random_poly(rng, nvars, 3, 2, 3);
    }
  return m;
}

inline IntMatrix random_int_matrix(std::mt19937& rng, int rows, int cols, int range, double zero_rate = 0.3) {
  IntMatrix m(rows, cols);
  std::uniform_int_distribution<int> v(-range, range);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (u(rng) >= zero_rate) m.at(i, j) = v(rng);
  return m;
}

inline bool is_unimodular(const IntMatrix& m) {
  mpz_class d = int_determinant(m);
  return d == 1 || d == -1;
}

// U A V = D with D in Smith form and U, V unimodular with the stored inverses
inline bool check_snf(const IntMatrix& a, const SNFResult& s) {
  if (!(s.U * a * s.V == s.D)) return false;
  if (!is_unimodular(s.U) || !is_unimodular(s.V)) return false;
  if (!(s.U * s.U_inv == IntMatrix::identity(a.rows()))) return false;
  if (!(s.V * s.V_inv == IntMatrix::identity(a.cols()))) return false;
  for (int i = 0; i < s.D.rows(); ++i)
    for (int j = 0; j < s.D.cols(); ++j)
      if (i != j && s.D.at(i, j) != 0) return false;
  int n = std::min(a.rows(), a.cols());
  for (int i = 0; i < n; ++i) {
    if (s.D.at(i, i) < 0) return false;
    if (i + 1 < n && s.D.at(i + 1, i + 1) != 0 && (s.D.at(i, i) == 0 || s.D.at(i + 1, i + 1) % s.D.at(i, i) != 0))
      return false;
    if (i < s.rank && s.D.at(i, i) == 0) return false;
    if (i >= s.rank && s.D.at(i, i) != 0) return false;
  }
  return true;
}

}  // namespace vtest
