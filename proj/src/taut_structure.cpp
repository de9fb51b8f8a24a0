#include "veerpoly/taut_structure.hpp"

#include "veerpoly/homology.hpp"

#include <deque>

namespace veerpoly {

std::array<int, 4> TautStructure::equatorial_cycle(int t) const {
  int t1 = kEdgeVertices[top_edge[t]][0], t2 = kEdgeVertices[top_edge[t]][1];
  int b1 = kEdgeVertices[bottom_edge(t)][0], b2 = kEdgeVertices[bottom_edge(t)][1];
  return {edge_number(t1, b1), edge_number(b1, t2), edge_number(t2, b2), edge_number(b2, t1)};
}

static void fill_coorient(TautStructure& ts) {
  int nf = ts.table.num_faces();
  ts.coorient.assign(nf, 0);
  for (int f = 0; f < nf; ++f) {
    const auto& s = ts.table.face(f);
    bool top0 = ts.is_top_face(s[0].tet, s[0].face);
    bool top1 = ts.is_top_face(s[1].tet, s[1].face);
    VEERPOLY_ASSERT(top0 != top1, "face is top (or bottom) on both sides");
    ts.coorient[f] = top0 ? 0 : 1;
  }
}

TautStructure derive_coorientation(const GluingTable& table, const TautAngleVector& angles) {
  angles.validate(table);
  int n = table.size();
  TautStructure ts;
  ts.table = table;
  ts.angles = angles;
  ts.top_edge.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    if (ts.top_edge[s] >= 0) continue;
    ts.top_edge[s] = angles[s];
    std::deque<int> q{s};
    while (!q.empty()) {
      int t = q.front();
      q.pop_front();
      for (int f = 0; f < 4; ++f) {
        const Gluing& g = table.gluing(t, f);
        int u = g.tet, uf = g.perm[f];
        bool want_top = !ts.is_top_face(t, f);
        int cand = angles[u];
        int b = 5 - cand;
        bool cand_top = uf == kEdgeVertices[b][0] || uf == kEdgeVertices[b][1];
        int choice = cand_top == want_top ? cand : 5 - cand;
        if (ts.top_edge[u] < 0) {
          ts.top_edge[u] = choice;
          q.push_back(u);
        } else if (ts.top_edge[u] != choice) {
          throw DomainError("taut angle structure admits no transverse coorientation");
        }
      }
    }
  }
  fill_coorient(ts);
  return ts;
}

TautStructure flip_coorientation(const TautStructure& ts) {
  TautStructure r = ts;
  for (auto& e : r.top_edge) e = 5 - e;
  for (auto& c : r.coorient) c = 1 - c;
  return r;
}

bool is_valid_taut(const TautStructure& ts) {
  int n = ts.size();
  if (static_cast<int>(ts.top_edge.size()) != n) return false;
  for (int t = 0; t < n; ++t) {
    if (!ts.angles.is_pi(t, ts.top_edge[t])) return false;
    int tops = 0;
    for (int f = 0; f < 4; ++f) tops += ts.is_top_face(t, f);
    if (tops != 2) return false;
  }
  for (int f = 0; f < ts.table.num_faces(); ++f) {
    const auto& s = ts.table.face(f);
    if (ts.is_top_face(s[0].tet, s[0].face) == ts.is_top_face(s[1].tet, s[1].face)) return false;
    if (!ts.is_top_face(ts.below(f).tet, ts.below(f).face)) return false;
  }
  return true;
}

TrackData build_tracks(const TautStructure& ts) {
  int nf = ts.table.num_faces();
  TrackData td;
  td.upper_large.resize(nf);
  td.lower_large.resize(nf);
  for (int f = 0; f < nf; ++f) {
    const FaceSide& b = ts.below(f);
    const FaceSide& a = ts.above(f);
    Perm4 inv = ts.up_perm(f).inverse();
    int be = ts.bottom_edge(a.tet);
    td.upper_large[f] = edge_number(inv[kEdgeVertices[be][0]], inv[kEdgeVertices[be][1]]);
    td.lower_large[f] = ts.top_edge[b.tet];
    VEERPOLY_ASSERT(td.upper_large[f] != td.lower_large[f], "upper and lower large edges coincide");
  }
  return td;
}

EdgeColouring derive_veering_colouring(const TautStructure& ts) {
  int ne = ts.table.num_edges();
  std::vector<int> col(ne, -1);
  for (int t = 0; t < ts.size(); ++t) {
    int t1 = kEdgeVertices[ts.top_edge[t]][0], t2 = kEdgeVertices[ts.top_edge[t]][1];
    int b1 = kEdgeVertices[ts.bottom_edge(t)][0], b2 = kEdgeVertices[ts.bottom_edge(t)][1];
    int chir = Perm4(t1, t2, b1, b2).sign() > 0 ? 0 : 1;
    auto eq = ts.equatorial_cycle(t);
    // eq[0], eq[2] form one opposite pair, eq[1], eq[3] the other
    for (int k = 0; k < 4; ++k) {
      int e = ts.table.edge_class(t, eq[k]);
      int want = (k % 2 == 0) ? chir : 1 - chir;
      if (col[e] < 0) {
        col[e] = want;
      } else if (col[e] != want) {
        throw DomainError("transverse taut triangulation is not veering");
      }
    }
  }
  EdgeColouring out(ne);
  for (int e = 0; e < ne; ++e) out[e] = col[e] == 1 ? Colour::blue : Colour::red;
  return out;
}

bool is_veering_colouring(const TautStructure& ts, const EdgeColouring& c) {
  if (static_cast<int>(c.size()) != ts.table.num_edges()) return false;
  int global = -1;
  for (int t = 0; t < ts.size(); ++t) {
    int t1 = kEdgeVertices[ts.top_edge[t]][0], t2 = kEdgeVertices[ts.top_edge[t]][1];
    int b1 = kEdgeVertices[ts.bottom_edge(t)][0], b2 = kEdgeVertices[ts.bottom_edge(t)][1];
    int chir = Perm4(t1, t2, b1, b2).sign() > 0 ? 0 : 1;
    auto eq = ts.equatorial_cycle(t);
    auto colour = [&](int k) { return static_cast<int>(c[ts.table.edge_class(t, eq[k])]); };
    if (colour(0) != colour(2) || colour(1) != colour(3) || colour(0) == colour(1)) return false;
    int g = colour(0) ^ chir;
    if (global < 0) global = g;
    if (g != global) return false;
  }
  return true;
}

namespace {

// large edge of local face `face` of t, as a local edge of t
int large_local(const TautStructure& ts, const TrackData& tracks, Track tr, int t, int face) {
  int f = ts.table.face_index(t, face);
  bool top = ts.is_top_face(t, face);
  if (tr == Track::upper) {
    if (!top) return ts.bottom_edge(t);
    return tracks.upper_large[f];
  }
  if (top) return ts.top_edge[t];
  int e = tracks.lower_large[f];
  Perm4 p = ts.up_perm(f);
  return edge_number(p[kEdgeVertices[e][0]], p[kEdgeVertices[e][1]]);
}

// +1 if the edge is directed from u to v under orientation value o of local edge {u,v}
int directed(int o, int e, int u) { return kEdgeVertices[e][0] == u ? o : -o; }

}  // namespace

std::vector<std::array<int, 6>> tetrahedron_edge_orientations(const TautStructure& ts, const TrackData& tracks,
                                                              Track tr, const std::vector<int>& anchor) {
  int n = ts.size();
  std::vector<std::array<int, 6>> out(n);
  for (int t = 0; t < n; ++t) {
    std::array<int, 6> o{};
    int seed = tr == Track::upper ? ts.bottom_edge(t) : ts.top_edge[t];
    o[seed] = anchor.empty() ? 1 : anchor[t];
    std::array<int, 4> large;
    for (int f = 0; f < 4; ++f) large[f] = large_local(ts, tracks, tr, t, f);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int f = 0; f < 4; ++f) {
        int L = large[f];
        int x = kEdgeVertices[L][0], y = kEdgeVertices[L][1];
        int w = 6 - f - x - y;
        int ex = edge_number(x, w), ey = edge_number(y, w);
        // src -> apex -> sink with large edge src -> sink; find src from any known edge
        int src = -1;
        if (o[L]) {
          src = directed(o[L], L, x) > 0 ? x : y;
        } else if (o[ex]) {
          src = directed(o[ex], ex, x) > 0 ? x : y;
        } else if (o[ey]) {
          src = directed(o[ey], ey, y) > 0 ? y : x;
        }
        if (src < 0) continue;
        int snk = src == x ? y : x;
        auto set = [&](int a, int b) {
          int e = edge_number(a, b);
          int v = kEdgeVertices[e][0] == a ? 1 : -1;
          if (o[e] == 0) {
            o[e] = v;
            changed = true;
          } else if (o[e] != v) {
            throw InvariantError("track orientation incoherent inside a tetrahedron");
          }
        };
        set(src, snk);
        set(src, w);
        set(w, snk);
      }
    }
    for (int e = 0; e < 6; ++e) VEERPOLY_ASSERT(o[e] != 0, "track orientation left an edge unset");
    out[t] = o;
  }
  return out;
}

std::vector<int> compute_beta(const TautStructure& ts, const TrackData& tracks, Track tr,
                              const std::vector<int>& anchor) {
  auto orient = tetrahedron_edge_orientations(ts, tracks, tr, anchor);
  int nf = ts.table.num_faces();
  std::vector<int> beta(nf);
  for (int f = 0; f < nf; ++f) {
    const FaceSide& b = ts.below(f);
    const FaceSide& a = ts.above(f);
    Perm4 p = ts.up_perm(f);
    int agree = 0;
    for (int e = 0; e < 6; ++e) {
      int u = kEdgeVertices[e][0], v = kEdgeVertices[e][1];
      if (u == b.face || v == b.face) continue;
      int pu = p[u], pv = p[v];
      int ea = edge_number(pu, pv);
      // direction u->v on the below side vs p(u)->p(v) on the above side
      int db = orient[b.tet][e];
      int da = directed(orient[a.tet][ea], ea, pu);
      if (db == da) ++agree;
    }
    if (agree == 3) {
      beta[f] = 0;
    } else if (agree == 0) {
      beta[f] = 1;
    } else {
      throw InvariantError("edge orientations agree on only part of a face");
    }
  }
  return beta;
}

bool beta_is_coboundary(const TautStructure& ts, const std::vector<int>& beta) {
  int n = ts.size();
  std::vector<int> phi(n, -1);
  for (int s = 0; s < n; ++s) {
    if (phi[s] >= 0) continue;
    phi[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int t = q.front();
      q.pop_front();
      for (int i = 0; i < 4; ++i) {
        int f = ts.table.face_index(t, i);
        int u = ts.table.gluing(t, i).tet;
        int want = phi[t] ^ beta[f];
        if (phi[u] < 0) {
          phi[u] = want;
          q.push_back(u);
        } else if (phi[u] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

int EdgeOrientationData::omega(const std::vector<long>& face_cycle) const {
  long s = 0;
  for (std::size_t f = 0; f < face_cycle.size(); ++f)
    if (beta[f]) s += face_cycle[f];
  return static_cast<int>(((s % 2) + 2) % 2);
}

EdgeOrientationData edge_orientation_data(const TautStructure& ts, const H1Data& h1, Track tr) {
  EdgeOrientationData out;
  TrackData tracks = build_tracks(ts);
  out.beta = compute_beta(ts, tracks, tr);
  bool all_zero = true;
  for (int i = 0; i < h1.num_coords(); ++i) {
    int bit = out.omega(h1.coord_cycles[i]);
    const mpz_class& d = h1.divisor(i);
    if (d != 0 && d % 2 == 1) VEERPOLY_ASSERT(bit == 0, "omega nonzero on a coordinate of odd order");
    if (d > 1) out.omega_torsion.push_back(bit);
    if (d == 0) out.omega_free.push_back(bit);
    if (bit) all_zero = false;
  }
  out.is_edge_orientable = all_zero;
  VEERPOLY_ASSERT(all_zero == beta_is_coboundary(ts, out.beta), "omega and beta holonomy disagree");
  bool kills_torsion = true;
  for (int b : out.omega_torsion)
    if (b) kills_torsion = false;
  if (kills_torsion) {
    std::vector<int> s;
    for (int b : out.omega_free) s.push_back(b ? -1 : 1);
    out.sigma = s;
  }
  return out;
}

DoubleCover build_double_cover(const TautStructure& ts, const std::vector<int>& beta) {
  int n = ts.size();
  std::vector<std::array<Gluing, 4>> glu(2 * n);
  for (int f = 0; f < ts.table.num_faces(); ++f) {
    const FaceSide& b = ts.below(f);
    const FaceSide& a = ts.above(f);
    Perm4 p = ts.up_perm(f);
    for (int sheet = 0; sheet < 2; ++sheet) {
      int tb = b.tet + sheet * n;
      int ta = a.tet + (sheet ^ beta[f]) * n;
      glu[tb][b.face] = Gluing{ta, p};
      glu[ta][a.face] = Gluing{tb, p.inverse()};
    }
  }
  std::vector<int> digits(2 * n);
  for (int t = 0; t < 2 * n; ++t) digits[t] = ts.angles[t % n];
  DoubleCover out;
  out.table = GluingTable(std::move(glu));
  out.angles = TautAngleVector(std::move(digits));
  out.angles.validate(out.table);
  out.connected = out.table.num_components() == 1;
  out.base_size = n;
  VEERPOLY_ASSERT(out.connected != beta_is_coboundary(ts, beta), "double cover connectivity disagrees with beta");
  return out;
}

DoubleCover build_double_cover(const TautStructure& ts) {
  return build_double_cover(ts, compute_beta(ts, build_tracks(ts)));
}

TautStructure lift_taut_structure(const TautStructure& base, const DoubleCover& cover) {
  TautStructure ts;
  ts.table = cover.table;
  ts.angles = cover.angles;
  int n = base.size();
  ts.top_edge.resize(2 * n);
  for (int t = 0; t < 2 * n; ++t) ts.top_edge[t] = base.top_edge[t % n];
  fill_coorient(ts);
  return ts;
}

}  // namespace veerpoly
