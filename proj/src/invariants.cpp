#include "veerpoly/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace veerpoly {

SlotLabels slot_labels(const TautStructure& ts, const std::vector<std::vector<long>>& cocycle, int nvars,
                       IncidenceRule rule) {
  const GluingTable& tb = ts.table;
  SlotLabels out;
  out.label.resize(tb.size());
  out.ref_sign.resize(tb.size());
  for (int e = 0; e < tb.num_edges(); ++e) {
    const auto& cyc = tb.edge_cycle(e);
    int m = static_cast<int>(cyc.size());
    int k0 = rule == IncidenceRule::first ? 0 : m - 1;
    std::vector<long> L(nvars, 0);
    for (int step = 0; step < m; ++step) {
      const EdgeStep& s = cyc[(k0 + step) % m];
      out.label[s.tet][s.edge] = L;
      out.ref_sign[s.tet][s.edge] = s.ends[0] < s.ends[1] ? 1 : -1;
      int sg = ts.crossing_sign(s.tet, s.exit_vertex);
      for (int j = 0; j < nvars; ++j) L[j] -= sg * cocycle[s.face][j];
    }
    for (int j = 0; j < nvars; ++j) VEERPOLY_ASSERT(L[j] == 0, "cocycle does not vanish around an edge");
  }
  return out;
}

namespace {

std::vector<int> face_local_edges(int face) {
  std::vector<int> es;
  for (int e = 0; e < 6; ++e)
    if (kEdgeVertices[e][0] != face && kEdgeVertices[e][1] != face) es.push_back(e);
  return es;
}

LaurentPoly signed_monomial(const std::vector<long>& exp, int sign) {
  Exponent e(exp.begin(), exp.end());
  return LaurentPoly::monomial(e, sign);
}

}  // namespace

LaurentMatrix build_taut_matrix(const TautStructure& ts, const TrackData& tracks,
                                const std::vector<std::vector<long>>& cocycle, int nvars, IncidenceRule rule) {
  SlotLabels sl = slot_labels(ts, cocycle, nvars, rule);
  const GluingTable& tb = ts.table;
  LaurentMatrix m(tb.num_edges(), tb.num_faces(), nvars);
  for (int f = 0; f < tb.num_faces(); ++f) {
    const FaceSide& b = ts.below(f);
    for (int e : face_local_edges(b.face)) {
      int sign = e == tracks.upper_large[f] ? 1 : -1;
      m.at(tb.edge_class(b.tet, e), f) += signed_monomial(sl.label[b.tet][e], sign);
    }
  }
  return m;
}

LaurentMatrix build_taut_matrix(const TautStructure& ts, const TrackData& tracks, const H1Data& h1,
                                IncidenceRule rule) {
  return build_taut_matrix(ts, tracks, h1.cocycle, h1.rank, rule);
}

LaurentMatrix build_alexander_matrix(const TautStructure& ts, const std::vector<std::vector<long>>& cocycle,
                                     int nvars, IncidenceRule rule) {
  SlotLabels sl = slot_labels(ts, cocycle, nvars, rule);
  const GluingTable& tb = ts.table;
  LaurentMatrix m(tb.num_edges(), tb.num_faces(), nvars);
  for (int f = 0; f < tb.num_faces(); ++f) {
    const FaceSide& b = ts.below(f);
    int face_sign = b.face % 2 ? -1 : 1;
    std::vector<int> vs;
    for (int v = 0; v < 4; ++v)
      if (v != b.face) vs.push_back(v);
    for (int e : face_local_edges(b.face)) {
      int u = kEdgeVertices[e][0], w = kEdgeVertices[e][1];
      // boundary of [p q r] is [q r] - [p r] + [p q]
      int tri = (u == vs[0] && w == vs[2]) ? -1 : 1;
      int sign = face_sign * tri * sl.ref_sign[b.tet][e];
      m.at(tb.edge_class(b.tet, e), f) += signed_monomial(sl.label[b.tet][e], sign);
    }
  }
  return m;
}

LaurentMatrix build_alexander_matrix(const TautStructure& ts, const H1Data& h1, IncidenceRule rule) {
  return build_alexander_matrix(ts, h1.cocycle, h1.rank, rule);
}

namespace {

LaurentPoly monomial_inverse(const LaurentPoly& u) {
  Exponent e = u.exponent(0);
  for (auto& x : e) x = -x;
  return LaurentPoly::monomial(e, u.coef(0));
}

template <class F>
void for_each_combination(int n, int k, F&& f) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    if (!f(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Laplace expansion along the last row with memoised lower minors; key = column bitmask.
class MinorCache {
 public:
  MinorCache(const std::vector<std::vector<LaurentPoly>>& a, int nvars) : a_(a), nv_(nvars) {}

  LaurentPoly minor(std::uint64_t cols) {
    int j = __builtin_popcountll(cols);
    if (j == 0) return LaurentPoly::constant(nv_, 1);
    bool top = j == static_cast<int>(a_.size());
    if (!top) {
      auto it = memo_.find(cols);
      if (it != memo_.end()) return it->second;
    }
    LaurentPoly res(nv_);
    const auto& row = a_[j - 1];
    int pos = 0;
    for (std::uint64_t rest = cols; rest; rest &= rest - 1, ++pos) {
      int c = __builtin_ctzll(rest);
      if (row[c].is_zero()) continue;
      LaurentPoly sub = minor(cols & ~(std::uint64_t{1} << c));
      if (sub.is_zero()) continue;
      if ((j - 1 + pos) % 2)
        res -= row[c] * sub;
      else
        res += row[c] * sub;
    }
    if (!top) memo_.emplace(cols, res);
    return res;
  }

 private:
  const std::vector<std::vector<LaurentPoly>>& a_;
  int nv_;
  std::unordered_map<std::uint64_t, LaurentPoly> memo_;
};

LaurentPoly minor_gcd(const std::vector<std::vector<LaurentPoly>>& a, int nvars, long* count) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  LaurentPoly g(nvars);
  auto accept = [&](const LaurentPoly& d) {
    if (count) ++*count;
    if (d.is_zero()) return true;
    g = gcd(g, d);
    return !g.is_unit();
  };
  if (cols <= 64) {
    MinorCache cache(a, nvars);
    for_each_combination(cols, rows, [&](const std::vector<int>& cs) {
      std::uint64_t mask = 0;
      for (int c : cs) mask |= std::uint64_t{1} << c;
      return accept(cache.minor(mask));
    });
    return g;
  }
  for_each_combination(cols, rows, [&](const std::vector<int>& cs) {
    LaurentMatrix sub(rows, rows, nvars);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < rows; ++j) sub.at(i, j) = a[i][cs[j]];
    return accept(determinant(sub));
  });
  return g;
}

// column c is a unit multiple of column d
bool unit_multiple_column(const std::vector<std::vector<LaurentPoly>>& a, int c, int d) {
  std::optional<LaurentPoly> u;
  for (const auto& row : a) {
    if (row[c].is_zero() != row[d].is_zero()) return false;
    if (row[c].is_zero()) continue;
    if (!u) {
      if (row[c].size() != row[d].size()) return false;
      auto q = exact_div(row[c], row[d]);
      if (!q || !q->is_unit()) return false;
      u = *q;
    } else if (row[c] != *u * row[d]) {
      return false;
    }
  }
  return true;
}

}  // namespace

LaurentPoly exhaustive_minor_gcd(const LaurentMatrix& m) {
  if (m.rows() > m.cols()) throw std::invalid_argument("more rows than columns");
  if (m.rows() == 0) return LaurentPoly::constant(m.nvars(), 1);
  std::vector<std::vector<LaurentPoly>> a(m.rows(), std::vector<LaurentPoly>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
  LaurentPoly g(m.nvars());
  for_each_combination(m.cols(), m.rows(), [&](const std::vector<int>& cs) {
    LaurentMatrix sub(m.rows(), m.rows(), m.nvars());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.rows(); ++j) sub.at(i, j) = a[i][cs[j]];
    g = gcd(g, determinant(sub));
    return true;
  });
  return normalize_unit(g);
}

LaurentPoly fitting_gcd(const LaurentMatrix& m, FittingStats* stats) {
  if (m.rows() > m.cols()) throw std::invalid_argument("fitting_gcd: more rows than columns");
  int nv = m.nvars();
  std::vector<std::vector<LaurentPoly>> a(m.rows(), std::vector<LaurentPoly>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
  FittingStats st;
  mpz_class factor = 1;

  while (!a.empty()) {
    int rows = static_cast<int>(a.size()), cols = static_cast<int>(a[0].size());
    std::vector<int> row_nnz(rows, 0), col_nnz(cols, 0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (!a[i][j].is_zero()) {
          ++row_nnz[i];
          ++col_nnz[j];
        }
    int bi = -1, bj = -1;
    long best = 0;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        if (!a[i][j].is_unit()) continue;
        long cost = static_cast<long>(row_nnz[i] - 1) * (col_nnz[j] - 1);
        if (bi < 0 || cost < best) {
          bi = i;
          bj = j;
          best = cost;
        }
      }
    if (bi < 0) break;
    ++st.pivots;
    LaurentPoly uinv = monomial_inverse(a[bi][bj]);
    for (int l = 0; l < cols; ++l) {
      if (l == bj || a[bi][l].is_zero()) continue;
      LaurentPoly q = a[bi][l] * uinv;
      for (int k = 0; k < rows; ++k) {
        if (k == bi || a[k][bj].is_zero()) continue;
        a[k][l] -= q * a[k][bj];
      }
    }
    a.erase(a.begin() + bi);
    for (auto& row : a) row.erase(row.begin() + bj);
    // drop columns that became zero
    if (!a.empty()) {
      for (int j = static_cast<int>(a[0].size()) - 1; j >= 0; --j) {
        bool zero = true;
        for (auto& row : a)
          if (!row[j].is_zero()) zero = false;
        if (zero)
          for (auto& row : a) row.erase(row.begin() + j);
      }
    }
  }

  LaurentPoly result(nv);
  if (a.empty()) {
    result = LaurentPoly::constant(nv, 1);
  } else {
    int rows = static_cast<int>(a.size());
    // every maximal minor contains every row, so integer row contents factor out
    for (auto& row : a) {
      mpz_class c = 0;
      for (auto& x : row) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.content().get_mpz_t());
      if (c == 0) {
        factor = 0;
        break;
      }
      if (c != 1) {
        factor *= c;
        for (auto& x : row) x = *exact_div(x, LaurentPoly::constant(nv, c));
      }
    }
    // a column that is a unit multiple of another only contributes associate minors
    for (int c = static_cast<int>(a[0].size()) - 1; c > 0; --c)
      for (int d = 0; d < c; ++d)
        if (unit_multiple_column(a, c, d)) {
          for (auto& row : a) row.erase(row.begin() + c);
          break;
        }
    st.residual_rows = rows;
    st.residual_cols = static_cast<int>(a[0].size());
    if (factor != 0 && st.residual_cols >= rows) result = minor_gcd(a, nv, &st.minors);
  }
  if (stats) *stats = st;
  if (factor == 0) return LaurentPoly(nv);
  result *= factor;
  return normalize_unit(result);
}

Analysis analyze(const TautStructure& ts, const PresentationOptions& opt) {
  Analysis a;
  a.ts = ts;
  a.options = opt;
  a.tracks = build_tracks(a.ts);
  a.cx = build_chain_complex(a.ts);
  a.h1 = compute_H1(a.cx, opt.tree);
  a.eo = edge_orientation_data(a.ts, a.h1);
  a.cusps = vertex_links(a.ts, a.h1);
  return a;
}

Analysis analyze(const GluingTable& table, const TautAngleVector& angles, const PresentationOptions& opt) {
  return analyze(derive_coorientation(table, angles), opt);
}

namespace {

// cover face -> base face, with crossings in the same direction since the coorientation is lifted
std::vector<long> project_cycle(const TautStructure& base, const TautStructure& cov, const std::vector<long>& z) {
  int n = base.size();
  std::vector<long> out(base.table.num_faces(), 0);
  for (int g = 0; g < cov.table.num_faces(); ++g) {
    if (z[g] == 0) continue;
    const FaceSide& s = cov.below(g);
    out[base.table.face_index(s.tet % n, s.face)] += z[g];
  }
  return out;
}

}  // namespace

DoubleCoverData double_cover_data(const Analysis& a) {
  DoubleCoverData d;
  d.cover = build_double_cover(a.ts, a.eo.beta);
  d.ts = lift_taut_structure(a.ts, d.cover);
  VEERPOLY_ASSERT(is_valid_taut(d.ts), "lifted taut structure is invalid");
  if (!d.cover.connected) return d;
  ChainComplex ccx = build_chain_complex(d.ts);
  d.h1 = compute_H1(ccx, a.options.tree);
  int r = a.h1.rank, ro = d.h1.rank;
  d.pushforward.assign(r, std::vector<long>(ro, 0));
  for (int j = 0; j < ro; ++j) {
    std::vector<long> img = a.h1.evaluate_cocycle(project_cycle(a.ts, d.ts, d.h1.free_basis_cycle(j)));
    for (int i = 0; i < r; ++i) d.pushforward[i][j] = img[i];
  }
  return d;
}

LaurentMatrix cover_alexander_matrix(const Analysis& a, const DoubleCoverData& d) {
  LaurentMatrix m = build_alexander_matrix(d.ts, d.h1, a.options.incidence);
  return m.map_entries(d.pushforward);
}

LaurentMatrix cover_alexander_matrix_pullback(const Analysis& a, const DoubleCoverData& d) {
  int n = a.ts.size();
  std::vector<std::vector<long>> pulled(d.ts.table.num_faces());
  for (int g = 0; g < d.ts.table.num_faces(); ++g) {
    const FaceSide& s = d.ts.below(g);
    pulled[g] = a.h1.cocycle[a.ts.table.face_index(s.tet % n, s.face)];
  }
  return build_alexander_matrix(d.ts, pulled, a.h1.rank, a.options.incidence);
}

PolyReport compute_polynomials(const Analysis& a, const PolyRequest& req) {
  PolyReport r;
  r.b1 = a.h1.rank;
  r.torsion = a.h1.torsion;
  r.cusps = static_cast<int>(a.cusps.size());
  r.edge_orientable = a.eo.is_edge_orientable;
  r.sigma = a.eo.sigma;
  r.edge_orientable_fab = a.eo.sigma.has_value();
  if (req.taut) r.theta = fitting_gcd(build_taut_matrix(a.ts, a.tracks, a.h1, a.options.incidence));
  if (req.alex) r.delta = fitting_gcd(build_alexander_matrix(a.ts, a.h1, a.options.incidence));
  if (!r.edge_orientable) {
    DoubleCover cov = build_double_cover(a.ts, a.eo.beta);
    r.cover_cusps = cov.table.num_vertices();
  }
  if (req.hat && !r.edge_orientable) {
    DoubleCoverData d = double_cover_data(a);
    VEERPOLY_ASSERT(d.cover.connected, "double cover of a non-edge-orientable triangulation is disconnected");
    r.delta_hat = fitting_gcd(cover_alexander_matrix(a, d));
  }
  return r;
}

PolyReport compute_polynomials(const TautSig& sig, const PolyRequest& req) {
  return compute_polynomials(analyze(sig.table, sig.angles), req);
}

VerifyRecord verify_identities(const PolyReport& r) {
  VerifyRecord v;
  if (!r.theta || !r.delta) return v;
  LaurentPoly th = normalize_unit(*r.theta);
  if (r.sigma) v.twisted = th == normalize_unit(twist(*r.delta, *r.sigma));
  if (r.delta_hat) v.hat_product = normalize_unit(*r.delta_hat) == normalize_unit(*r.delta * *r.theta);
  int b = r.b1;
  for (long mask = 0; mask < (1L << b); ++mask) {
    std::vector<int> s(b);
    for (int j = 0; j < b; ++j) s[j] = (mask >> j) & 1 ? -1 : 1;
    if (th == normalize_unit(twist(*r.delta, s))) {
      v.sign_match = s;
      break;
    }
  }
  if (!v.sign_match) {
    mpz_class order = 1;
    for (const auto& d : r.torsion) order *= d;
    v.even_torsion = order % 2 == 0;
  }
  return v;
}

}  // namespace veerpoly
