#include "veerpoly/census_io.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

namespace veerpoly {

Perm4 Perm4::inverse() const {
  Perm4 r;
  for (int i = 0; i < 4; ++i) r.img_[img_[i]] = static_cast<uint8_t>(i);
  return r;
}

Perm4 Perm4::operator*(const Perm4& q) const {
  Perm4 r;
  for (int i = 0; i < 4; ++i) r.img_[i] = img_[q.img_[i]];
  return r;
}

int Perm4::sign() const {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (img_[i] > img_[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

bool Perm4::valid() const {
  unsigned seen = 0;
  for (auto v : img_) {
    if (v > 3) return false;
    seen |= 1u << v;
  }
  return seen == 0xF;
}

static const std::array<Perm4, 24>& ordered_table() {
  static const std::array<Perm4, 24> table = [] {
    std::array<Perm4, 24> t;
    std::array<int, 4> a = {0, 1, 2, 3};
    int k = 0;
    do {
      t[k++] = Perm4(a[0], a[1], a[2], a[3]);
    } while (std::next_permutation(a.begin(), a.end()));
    return t;
  }();
  return table;
}

Perm4 Perm4::ordered(int idx) { return ordered_table().at(idx); }

int Perm4::ordered_index() const {
  const auto& t = ordered_table();
  return static_cast<int>(std::find(t.begin(), t.end(), *this) - t.begin());
}

int edge_number(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int e = 0; e < 6; ++e)
    if (kEdgeVertices[e][0] == a && kEdgeVertices[e][1] == b) return e;
  throw std::invalid_argument("edge_number: bad vertex pair");
}

GluingTable::GluingTable(std::vector<std::array<Gluing, 4>> gluings) : gluings_(std::move(gluings)) {
  int n = size();
  if (n == 0) throw ParseError("empty triangulation");
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = gluings_[t][f];
      if (g.open()) throw ParseError("open face: triangulation is not closed up");
      if (g.tet >= n || !g.perm.valid()) throw ParseError("gluing out of range");
      if (g.tet == t && g.perm[f] == f) throw ParseError("face glued to itself");
      const Gluing& back = gluings_[g.tet][g.perm[f]];
      if (back.tet != t || !(back.perm == g.perm.inverse())) throw ParseError("non-involutive gluing");
      if (g.perm.sign() != -1) throw ParseError("non-orientable gluing table");
    }

  face_index_.assign(n, {-1, -1, -1, -1});
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      if (face_index_[t][f] >= 0) continue;
      const Gluing& g = gluings_[t][f];
      int id = static_cast<int>(faces_.size());
      faces_.push_back({FaceSide{t, f}, FaceSide{g.tet, g.perm[f]}});
      face_index_[t][f] = id;
      face_index_[g.tet][g.perm[f]] = id;
    }

  edge_index_.assign(n, {-1, -1, -1, -1, -1, -1});
  edge_pos_.assign(n, {-1, -1, -1, -1, -1, -1});
  for (int t = 0; t < n; ++t)
    for (int e = 0; e < 6; ++e) {
      if (edge_index_[t][e] >= 0) continue;
      int id = static_cast<int>(edge_cycles_.size());
      std::vector<EdgeStep> cyc;
      int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
      int c = kEdgeVertices[5 - e][0], d = kEdgeVertices[5 - e][1];
      int ct = t;
      for (int steps = 0;; ++steps) {
        if (steps > 6 * n) throw ParseError("edge cycle does not close");
        int ce = edge_number(a, b);
        if (edge_index_[ct][ce] >= 0) {
          const EdgeStep& s0 = cyc.front();
          if (edge_index_[ct][ce] == id && ct == s0.tet && a == s0.ends[0] && b == s0.ends[1] && c == s0.exit_vertex)
            break;
          throw ParseError("edge identified with itself reversed");
        }
        edge_index_[ct][ce] = id;
        edge_pos_[ct][ce] = static_cast<int>(cyc.size());
        const Gluing& g = gluings_[ct][c];
        cyc.push_back(EdgeStep{ct, ce, {a, b}, c, d, face_index_[ct][c]});
        int na = g.perm[a], nb = g.perm[b], nc = g.perm[d], nd = g.perm[c];
        ct = g.tet;
        a = na;
        b = nb;
        c = nc;
        d = nd;
      }
      edge_cycles_.push_back(std::move(cyc));
    }

  std::vector<int> parent(4 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = gluings_[t][f];
      for (int v = 0; v < 4; ++v)
        if (v != f) parent[find(4 * t + v)] = find(4 * g.tet + g.perm[v]);
    }
  vertex_index_.assign(n, {-1, -1, -1, -1});
  std::vector<int> root_id(4 * n, -1);
  for (int t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v) {
      int r = find(4 * t + v);
      if (root_id[r] < 0) root_id[r] = num_vertices_++;
      vertex_index_[t][v] = root_id[r];
    }

  if (num_faces() != 2 * n) throw ParseError("face count is not twice the tetrahedron count");
  if (num_edges() != n) throw ParseError("edge count differs from tetrahedron count (not a cusped ideal triangulation)");
}

int GluingTable::num_components() const {
  int n = size();
  std::vector<int> comp(n, -1);
  int k = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::deque<int> q{s};
    comp[s] = k;
    while (!q.empty()) {
      int t = q.front();
      q.pop_front();
      for (int f = 0; f < 4; ++f) {
        int u = gluings_[t][f].tet;
        if (comp[u] < 0) {
          comp[u] = k;
          q.push_back(u);
        }
      }
    }
    ++k;
  }
  return k;
}

void TautAngleVector::validate(const GluingTable& table) const {
  if (size() != table.size()) throw ParseError("angle digit count differs from tetrahedron count");
  for (int d : digits_)
    if (d < 0 || d > 2) throw ParseError("angle digit outside {0,1,2}");
  for (int e = 0; e < table.num_edges(); ++e) {
    int pis = 0;
    for (const auto& s : table.edge_cycle(e))
      if (is_pi(s.tet, s.edge)) ++pis;
    if (pis != 2) throw ParseError("angle sum around edge " + std::to_string(e) + " is not 2*pi");
  }
}

std::string TautAngleVector::to_string() const {
  std::string s;
  for (int d : digits_) s += static_cast<char>('0' + d);
  return s;
}

namespace {

int sig_value(char c) {
  if (c >= 'a' && c <= 'z') return c - 'a';
  if (c >= 'A' && c <= 'Z') return c - 'A' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '-') return 63;
  throw ParseError(std::string("invalid character '") + c + "' in signature");
}

class SigReader {
 public:
  explicit SigReader(std::string_view s) : s_(s) {
    for (char c : s) sig_value(c);
  }
  int next() {
    if (pos_ >= s_.size()) throw ParseError("truncated signature");
    return sig_value(s_[pos_++]);
  }
  long read(int nchars) {
    long v = 0;
    for (int i = 0; i < nchars; ++i) v |= static_cast<long>(next()) << (6 * i);
    return v;
  }
  bool done() const { return pos_ == s_.size(); }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

DecodedSig decode_isosig_detailed(std::string_view sig) {
  SigReader in(sig);
  long n = in.next();
  int nchars = 1;
  if (n == 63) {
    nchars = in.next();
    n = in.read(nchars);
  }
  if (n <= 0) throw ParseError("signature describes an empty triangulation");
  if (n > 100000) throw ParseError("signature size out of range");

  std::vector<int> actions;
  long facets = 0, joins = 0;
  while (facets < 4 * n) {
    int v = in.next();
    for (int k = 0; k < 3; ++k) {
      int a = (v >> (2 * k)) & 3;
      if (facets >= 4 * n) {
        if (a != 0) throw ParseError("malformed facet action padding");
        continue;
      }
      if (a == 3) throw ParseError("invalid facet action");
      facets += a == 0 ? 1 : 2;
      if (facets > 4 * n) throw ParseError("facet actions overrun");
      if (a == 2) ++joins;
      actions.push_back(a);
    }
  }
  std::vector<long> dest(joins);
  for (auto& d : dest) d = in.read(nchars);
  std::vector<int> perm_idx(joins);
  for (auto& p : perm_idx) {
    p = in.next();
    if (p >= 24) throw ParseError("permutation index out of range");
  }
  if (!in.done()) throw ParseError("trailing characters after signature");

  std::vector<std::array<Gluing, 4>> raw(n);
  std::size_t act = 0, jp = 0;
  long next_unused = 1;
  for (long t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      if (!raw[t][f].open()) continue;
      if (act >= actions.size()) throw ParseError("truncated facet actions");
      int a = actions[act++];
      if (a == 0) continue;
      Perm4 p;
      long target;
      if (a == 1) {
        if (next_unused >= n) throw ParseError("signature references too many tetrahedra");
        target = next_unused++;
      } else {
        target = dest[jp];
        p = Perm4::ordered(perm_idx[jp]);
        ++jp;
        if (target >= next_unused) throw ParseError("join to unreached tetrahedron");
        if (!raw[target][p[f]].open() || (target == t && p[f] == f)) throw ParseError("non-involutive gluing");
      }
      raw[t][f] = Gluing{static_cast<int>(target), p};
      raw[target][p[f]] = Gluing{static_cast<int>(t), p.inverse()};
    }
  if (act != actions.size() || next_unused != n) throw ParseError("inconsistent facet actions");
  for (long t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f)
      if (raw[t][f].open()) throw ParseError("open face: triangulation is not closed up");

  std::vector<int> orient(n, 0);
  for (long s = 0; s < n; ++s) {
    if (orient[s]) continue;
    orient[s] = 1;
    std::deque<long> q{s};
    while (!q.empty()) {
      long t = q.front();
      q.pop_front();
      for (int f = 0; f < 4; ++f) {
        const Gluing& g = raw[t][f];
        int want = -orient[t] * g.perm.sign();
        if (!orient[g.tet]) {
          orient[g.tet] = want;
          q.push_back(g.tet);
        } else if (orient[g.tet] != want) {
          throw ParseError("non-orientable gluing table");
        }
      }
    }
  }
  const Perm4 tau(0, 1, 3, 2);
  auto relabel = [&](long t) { return orient[t] < 0 ? tau : Perm4(); };
  std::vector<std::array<Gluing, 4>> glu(n);
  DecodedSig out;
  out.relabelled.resize(n);
  for (long t = 0; t < n; ++t) {
    out.relabelled[t] = orient[t] < 0;
    for (int f = 0; f < 4; ++f) {
      int old_face = relabel(t)[f];
      const Gluing& g = raw[t][old_face];
      glu[t][f] = Gluing{g.tet, relabel(g.tet) * g.perm * relabel(t)};
    }
  }
  out.table = GluingTable(std::move(glu));
  return out;
}

GluingTable decode_isosig(std::string_view sig) { return decode_isosig_detailed(sig).table; }

TautSig parse_taut_sig(std::string_view line) {
  std::size_t start = line.find_first_not_of(" \t\r\n");
  if (start == std::string_view::npos) throw ParseError("empty line");
  std::size_t end = line.find_first_of(" \t\r\n", start);
  std::string_view tok = line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
  std::size_t us = tok.rfind('_');
  if (us == std::string_view::npos) throw ParseError("missing '_' separating signature and angle digits");
  TautSig out;
  out.isosig = std::string(tok.substr(0, us));
  out.digits = std::string(tok.substr(us + 1));
  DecodedSig dec = decode_isosig_detailed(out.isosig);
  if (static_cast<int>(out.digits.size()) != dec.table.size())
    throw ParseError("angle digit count " + std::to_string(out.digits.size()) + " differs from tetrahedron count " +
                     std::to_string(dec.table.size()));
  std::vector<int> digits;
  for (std::size_t t = 0; t < out.digits.size(); ++t) {
    char c = out.digits[t];
    if (c < '0' || c > '2') throw ParseError(std::string("angle digit '") + c + "' outside {0,1,2}");
    int d = c - '0';
    // the (2 3) relabelling swaps the pairs (02,13) and (03,12)
    if (dec.relabelled[t] && d != 0) d = 3 - d;
    digits.push_back(d);
  }
  out.table = std::move(dec.table);
  out.angles = TautAngleVector(std::move(digits));
  out.angles.validate(out.table);
  return out;
}

std::vector<CensusEntry> parse_census_stream(std::istream& in) {
  std::vector<CensusEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r\n");
    if (start == std::string::npos || line[start] == '#') continue;
    CensusEntry e;
    e.line = lineno;
    std::size_t end = line.find_first_of(" \t\r\n", start);
    e.token = line.substr(start, end == std::string::npos ? std::string::npos : end - start);
    try {
      e.sig = parse_taut_sig(e.token);
    } catch (const ParseError& err) {
      e.error = err.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CensusEntry> load_census(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read census file " + path.string());
  return parse_census_stream(in);
}

std::pair<GluingTable, TautAngleVector> permute_tetrahedra(const GluingTable& table, const TautAngleVector& angles,
                                                           const std::vector<int>& perm) {
  int n = table.size();
  std::vector<std::array<Gluing, 4>> glu(n);
  std::vector<int> digits(n);
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = table.gluing(t, f);
      glu[perm[t]][f] = Gluing{perm[g.tet], g.perm};
    }
    digits[perm[t]] = angles[t];
  }
  return {GluingTable(std::move(glu)), TautAngleVector(std::move(digits))};
}

}  // namespace veerpoly
