#include "veerpoly/homology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace veerpoly {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows, int cols) {
  int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  IntMatrix m(static_cast<int>(rows.size()), c);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        if (o.at(k, j) != 0) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const mpz_class& x) { return x == 0; });
}

void IntMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::add_row(int i, int j, const mpz_class& q) {
  for (int k = 0; k < cols_; ++k)
    if (at(j, k) != 0) at(i, k) += q * at(j, k);
}

void IntMatrix::add_col(int i, int j, const mpz_class& q) {
  for (int k = 0; k < rows_; ++k)
    if (at(k, j) != 0) at(k, i) += q * at(k, j);
}

void IntMatrix::negate_row(int i) {
  for (int k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

namespace {

// D and the four transforms, kept in sync under elementary operations
struct SNFWork {
  IntMatrix D, U, Ui, V, Vi;

  void row_swap(int i, int j) {
    D.swap_rows(i, j);
    U.swap_rows(i, j);
    Ui.swap_cols(i, j);
  }
  void col_swap(int i, int j) {
    D.swap_cols(i, j);
    V.swap_cols(i, j);
    Vi.swap_rows(i, j);
  }
  // row i += q row j
  void row_add(int i, int j, const mpz_class& q) {
    D.add_row(i, j, q);
    U.add_row(i, j, q);
    Ui.add_col(j, i, -q);
  }
  void col_add(int i, int j, const mpz_class& q) {
    D.add_col(i, j, q);
    V.add_col(i, j, q);
    Vi.add_row(j, i, -q);
  }
  void row_negate(int i) {
    D.negate_row(i);
    U.negate_row(i);
    for (int k = 0; k < Ui.rows(); ++k) Ui.at(k, i) = -Ui.at(k, i);
  }
};

}  // namespace

SNFResult smith_normal_form(const IntMatrix& a) {
  int m = a.rows(), n = a.cols();
  SNFWork w{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n)};
  IntMatrix& D = w.D;
  int t = 0;
  for (; t < std::min(m, n); ++t) {
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (D.at(i, j) != 0 && (pi < 0 || abs(D.at(i, j)) < abs(D.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    while (true) {
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (D.at(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), D.at(i, t).get_mpz_t(), D.at(t, t).get_mpz_t());
        if (q != 0) w.row_add(i, t, -q);
        if (D.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (D.at(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), D.at(t, j).get_mpz_t(), D.at(t, t).get_mpz_t());
        if (q != 0) w.col_add(j, t, -q);
        if (D.at(t, j) != 0) clean = false;
      }
      if (!clean) {
        // bring the smallest remainder in row/column t to the pivot
        int bi = t, bj = t;
        for (int i = t + 1; i < m; ++i)
          if (D.at(i, t) != 0 && abs(D.at(i, t)) < abs(D.at(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (int j = t + 1; j < n; ++j)
          if (D.at(t, j) != 0 && abs(D.at(t, j)) < abs(D.at(bi, bj))) {
            bi = t;
            bj = j;
          }
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(D.at(i, j).get_mpz_t(), D.at(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      w.row_add(t, bad, 1);
    }
    if (D.at(t, t) < 0) w.row_negate(t);
  }
  SNFResult r;
  r.rank = t;
  for (int i = 0; i < std::min(m, n); ++i) r.diagonal.push_back(D.at(i, i));
  r.D = std::move(w.D);
  r.U = std::move(w.U);
  r.U_inv = std::move(w.Ui);
  r.V = std::move(w.V);
  r.V_inv = std::move(w.Vi);
  return r;
}

mpz_class int_determinant(const IntMatrix& a) {
  int n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return 1;
  IntMatrix m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    int p = k;
    while (p < n && m.at(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        mpz_class v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = v;
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

int rational_rank(const IntMatrix& a) {
  std::vector<std::vector<mpq_class>> m(a.rows(), std::vector<mpq_class>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m[i][j] = a.at(i, j);
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int p = r;
    while (p < a.rows() && m[p][c] == 0) ++p;
    if (p == a.rows()) continue;
    std::swap(m[p], m[r]);
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (int j = c; j < a.cols(); ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

ChainComplex build_chain_complex(const TautStructure& ts) {
  const GluingTable& tb = ts.table;
  ChainComplex cx;
  cx.n_tets = tb.size();
  cx.n_faces = tb.num_faces();
  cx.n_edges = tb.num_edges();
  cx.d_faces_to_tets = IntMatrix(cx.n_tets, cx.n_faces);
  cx.d_edges_to_faces = IntMatrix(cx.n_faces, cx.n_edges);
  for (int f = 0; f < cx.n_faces; ++f) {
    cx.face_below.push_back(ts.below(f).tet);
    cx.face_above.push_back(ts.above(f).tet);
    cx.d_faces_to_tets.at(ts.above(f).tet, f) += 1;
    cx.d_faces_to_tets.at(ts.below(f).tet, f) -= 1;
  }
  for (int e = 0; e < cx.n_edges; ++e)
    for (const auto& s : tb.edge_cycle(e)) cx.d_edges_to_faces.at(s.face, e) += ts.crossing_sign(s.tet, s.exit_vertex);
  return cx;
}

const mpz_class& H1Data::divisor(int i) const {
  static const mpz_class zero = 0;
  return i < snf.rank ? snf.diagonal[i] : zero;
}

std::vector<long> H1Data::face_loop(int f) const {
  std::vector<long> z(n_faces, 0);
  for (int k = 0; k < n_faces; ++k) z[k] = tet_path[face_below[f]][k] - tet_path[face_above[f]][k];
  z[f] += 1;
  return z;
}

std::vector<mpz_class> H1Data::coordinates(const std::vector<long>& face_cycle) const {
  int g = num_coords();
  std::vector<mpz_class> y(g);
  for (int i = 0; i < g; ++i)
    for (int k = 0; k < g; ++k) {
      long x = face_cycle[face_of_gen[k]];
      if (x != 0) y[i] += snf.U.at(i, k) * x;
    }
  return y;
}

std::vector<long> H1Data::free_part(const std::vector<long>& face_cycle) const {
  return evaluate_cocycle(face_cycle);
}

std::vector<long> H1Data::evaluate_cocycle(const std::vector<long>& face_cycle) const {
  std::vector<long> v(rank, 0);
  for (int f = 0; f < n_faces; ++f) {
    if (face_cycle[f] == 0) continue;
    for (int j = 0; j < rank; ++j) v[j] += face_cycle[f] * cocycle[f][j];
  }
  return v;
}

H1Data compute_H1(const ChainComplex& cx, TreeRule rule) {
  H1Data h;
  h.n_faces = cx.n_faces;
  h.n_tets = cx.n_tets;
  h.face_below = cx.face_below;
  h.face_above = cx.face_above;
  std::vector<std::vector<int>> incident(cx.n_tets);
  for (int f = 0; f < cx.n_faces; ++f) {
    incident[cx.face_below[f]].push_back(f);
    if (cx.face_above[f] != cx.face_below[f]) incident[cx.face_above[f]].push_back(f);
  }
  h.tree_face.assign(cx.n_faces, 0);
  h.tet_path.assign(cx.n_tets, std::vector<long>(cx.n_faces, 0));
  std::vector<int> seen(cx.n_tets, 0);
  seen[0] = 1;
  std::deque<int> work{0};
  int reached = 1;
  while (!work.empty()) {
    int t;
    if (rule == TreeRule::bfs) {
      t = work.front();
      work.pop_front();
    } else {
      t = work.back();
      work.pop_back();
    }
    std::vector<int> order = incident[t];
    if (rule == TreeRule::dfs) std::reverse(order.begin(), order.end());
    for (int f : order) {
      int u = cx.face_below[f] == t ? cx.face_above[f] : cx.face_below[f];
      if (seen[u]) continue;
      seen[u] = 1;
      ++reached;
      h.tree_face[f] = 1;
      h.tet_path[u] = h.tet_path[t];
      h.tet_path[u][f] += cx.face_below[f] == t ? 1 : -1;
      work.push_back(u);
    }
  }
  VEERPOLY_ASSERT(reached == cx.n_tets, "dual graph is disconnected");
  h.gen_of_face.assign(cx.n_faces, -1);
  for (int f = 0; f < cx.n_faces; ++f)
    if (!h.tree_face[f]) {
      h.gen_of_face[f] = static_cast<int>(h.face_of_gen.size());
      h.face_of_gen.push_back(f);
    }
  int g = static_cast<int>(h.face_of_gen.size());
  IntMatrix rel(g, cx.n_edges);
  for (int k = 0; k < g; ++k)
    for (int e = 0; e < cx.n_edges; ++e) rel.at(k, e) = cx.d_edges_to_faces.at(h.face_of_gen[k], e);
  h.snf = smith_normal_form(rel);
  h.first_free = h.snf.rank;
  h.rank = g - h.snf.rank;
  for (int i = 0; i < h.snf.rank; ++i)
    if (h.snf.diagonal[i] > 1) h.torsion.push_back(h.snf.diagonal[i]);
  std::vector<std::vector<long>> loops(g);
  for (int k = 0; k < g; ++k) loops[k] = h.face_loop(h.face_of_gen[k]);
  h.coord_cycles.assign(g, std::vector<long>(cx.n_faces, 0));
  for (int i = 0; i < g; ++i)
    for (int k = 0; k < g; ++k) {
      const mpz_class& c = h.snf.U_inv.at(k, i);
      if (c == 0) continue;
      VEERPOLY_ASSERT(c.fits_slong_p(), "SNF transform entry too large");
      long cl = c.get_si();
      for (int f = 0; f < cx.n_faces; ++f) h.coord_cycles[i][f] += cl * loops[k][f];
    }
  h.cocycle.assign(cx.n_faces, std::vector<long>(h.rank, 0));
  for (int f = 0; f < cx.n_faces; ++f) {
    int k = h.gen_of_face[f];
    if (k < 0) continue;
    for (int j = 0; j < h.rank; ++j) {
      const mpz_class& c = h.snf.U.at(h.first_free + j, k);
      VEERPOLY_ASSERT(c.fits_slong_p(), "SNF transform entry too large");
      h.cocycle[f][j] = c.get_si();
    }
  }
  return h;
}

std::vector<CuspData> vertex_links(const TautStructure& ts, const H1Data& h1) {
  const GluingTable& tb = ts.table;
  int n = tb.size();
  int nf = tb.num_faces();
  // link edge sides keyed (t, v, i): the edge of corner (t,v) lying on face i
  auto key = [](int t, int v, int i) { return (t * 4 + v) * 4 + i; };
  std::vector<int> pair_id(16 * n, -1);
  std::vector<int> canonical_side;
  std::vector<std::array<int, 3>> side_data;  // for canonical side: t, v, i
  std::vector<std::array<int, 3>> other_data;
  for (int t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v)
      for (int i = 0; i < 4; ++i) {
        if (i == v || pair_id[key(t, v, i)] >= 0) continue;
        const Gluing& g = tb.gluing(t, i);
        int id = static_cast<int>(canonical_side.size());
        pair_id[key(t, v, i)] = id;
        pair_id[key(g.tet, g.perm[v], g.perm[i])] = id;
        canonical_side.push_back(key(t, v, i));
        side_data.push_back({t, v, i});
        other_data.push_back({g.tet, g.perm[v], g.perm[i]});
      }
  auto crossing = [&](int t, int i, std::vector<long>& z, long mult) {
    z[tb.face_index(t, i)] += mult * ts.crossing_sign(t, i);
  };

  std::vector<CuspData> out(tb.num_vertices());
  for (int c = 0; c < tb.num_vertices(); ++c) out[c].vertex = c;
  for (int t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v) out[tb.vertex_class(t, v)].corners.push_back({t, v});

  for (auto& cd : out) {
    std::map<std::pair<int, int>, int> corner_idx;
    for (std::size_t k = 0; k < cd.corners.size(); ++k) corner_idx[cd.corners[k]] = static_cast<int>(k);
    int nc = static_cast<int>(cd.corners.size());
    std::vector<std::vector<long>> pot(nc, std::vector<long>(nf, 0));
    std::vector<int> seen(nc, 0);
    std::vector<int> tree_pair(canonical_side.size(), 0);
    seen[0] = 1;
    std::deque<int> q{0};
    while (!q.empty()) {
      int k = q.front();
      q.pop_front();
      auto [t, v] = cd.corners[k];
      for (int i = 0; i < 4; ++i) {
        if (i == v) continue;
        const Gluing& g = tb.gluing(t, i);
        int u = corner_idx.at({g.tet, g.perm[v]});
        if (seen[u]) continue;
        seen[u] = 1;
        tree_pair[pair_id[key(t, v, i)]] = 1;
        pot[u] = pot[k];
        crossing(t, i, pot[u], 1);
        q.push_back(u);
      }
    }
    for (int k = 0; k < nc; ++k) VEERPOLY_ASSERT(seen[k], "vertex link is disconnected");

    std::vector<int> gens;
    std::vector<int> gen_of_pair(canonical_side.size(), -1);
    std::set<int> pairs_here;
    for (auto [t, v] : cd.corners)
      for (int i = 0; i < 4; ++i)
        if (i != v) pairs_here.insert(pair_id[key(t, v, i)]);
    cd.n_link_edges = static_cast<int>(pairs_here.size());
    for (int p : pairs_here)
      if (!tree_pair[p]) {
        gen_of_pair[p] = static_cast<int>(gens.size());
        gens.push_back(p);
      }

    // one relation per edge end lying at this cusp
    std::vector<std::vector<long>> rels;
    for (int e = 0; e < tb.num_edges(); ++e)
      for (int end = 0; end < 2; ++end) {
        const auto& cyc = tb.edge_cycle(e);
        if (tb.vertex_class(cyc[0].tet, cyc[0].ends[end]) != cd.vertex) continue;
        std::vector<long> r(gens.size(), 0);
        for (const auto& s : cyc) {
          int p = pair_id[key(s.tet, s.ends[end], s.exit_vertex)];
          if (gen_of_pair[p] < 0) continue;
          r[gen_of_pair[p]] += canonical_side[p] == key(s.tet, s.ends[end], s.exit_vertex) ? 1 : -1;
        }
        rels.push_back(std::move(r));
      }
    cd.n_link_vertices = static_cast<int>(rels.size());
    if (cd.euler_characteristic() != 0) throw DomainError("vertex link is not a torus");

    IntMatrix rel(static_cast<int>(gens.size()), static_cast<int>(rels.size()));
    for (std::size_t j = 0; j < rels.size(); ++j)
      for (std::size_t k = 0; k < gens.size(); ++k) rel.at(static_cast<int>(k), static_cast<int>(j)) = rels[j][k];
    SNFResult snf = smith_normal_form(rel);
    for (int i = 0; i < snf.rank; ++i)
      if (snf.diagonal[i] != 1) throw DomainError("vertex link homology has torsion");
    if (static_cast<int>(gens.size()) - snf.rank != 2) throw DomainError("vertex link is not a torus");

    for (int b = 0; b < 2; ++b) {
      std::vector<long> z(nf, 0);
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const mpz_class& coef = snf.U_inv.at(static_cast<int>(k), snf.rank + b);
        if (coef == 0) continue;
        long cl = coef.get_si();
        int p = gens[k];
        auto [t, v, i] = side_data[p];
        auto [t2, v2, i2] = other_data[p];
        (void)i2;
        int from = corner_idx.at({t, v}), to = corner_idx.at({t2, v2});
        for (int f = 0; f < nf; ++f) z[f] += cl * (pot[from][f] - pot[to][f]);
        crossing(t, i, z, cl);
      }
      cd.basis_cycles[b] = z;
      cd.image_coords[b] = h1.coordinates(z);
      cd.image_free[b] = h1.free_part(z);
    }
  }
  return out;
}

}  // namespace veerpoly
