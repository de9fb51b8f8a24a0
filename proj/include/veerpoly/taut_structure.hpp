#pragma once

#include "veerpoly/census_io.hpp"

#include <optional>
#include <vector>

namespace veerpoly {

struct H1Data;

struct TautStructure {
  GluingTable table;
  TautAngleVector angles;
  // per tetrahedron: local edge number of the top diagonal (bottom diagonal is 5 - top)
  std::vector<int> top_edge;
  // per face: 0 if the coorientation points out of side 0 (side 0 below), 1 otherwise
  std::vector<int> coorient;

  int size() const { return table.size(); }
  int bottom_edge(int t) const { return 5 - top_edge[t]; }
  int top_diagonal(int t) const { return table.edge_class(t, top_edge[t]); }
  int bottom_diagonal(int t) const { return table.edge_class(t, bottom_edge(t)); }
  // local face `face` of t contains the top diagonal
  bool is_top_face(int t, int face) const {
    int b = bottom_edge(t);
    return face == kEdgeVertices[b][0] || face == kEdgeVertices[b][1];
  }
  // +1 when leaving t through `face` moves upward
  int crossing_sign(int t, int face) const { return is_top_face(t, face) ? 1 : -1; }
  const FaceSide& below(int f) const { return table.face(f)[coorient[f]]; }
  const FaceSide& above(int f) const { return table.face(f)[1 - coorient[f]]; }
  // gluing permutation taking labels of below(f) to labels of above(f)
  Perm4 up_perm(int f) const { return table.gluing(below(f).tet, below(f).face).perm; }
  // local equatorial edges in cyclic order: T1B1, B1T2, T2B2, B2T1
  std::array<int, 4> equatorial_cycle(int t) const;
};

TautStructure derive_coorientation(const GluingTable& table, const TautAngleVector& angles);
TautStructure flip_coorientation(const TautStructure& ts);
// All 2-in-2-out conditions, common pi-edges, and one-above-one-below per face.
bool is_valid_taut(const TautStructure& ts);

enum class Track { upper, lower };

struct TrackData {
  // per face: local edge numbers (in the tetrahedron below the face)
  std::vector<int> upper_large;
  std::vector<int> lower_large;
  int large(Track tr, int f) const { return tr == Track::upper ? upper_large[f] : lower_large[f]; }
};

TrackData build_tracks(const TautStructure& ts);

enum class Colour { red = 0, blue = 1 };
using EdgeColouring = std::vector<Colour>;

EdgeColouring derive_veering_colouring(const TautStructure& ts);
bool is_veering_colouring(const TautStructure& ts, const EdgeColouring& c);

// Per tetrahedron, orientation (+1 = low to high label) of its six local edges under the
// canonical transverse orientation of the chosen track, anchored by `anchor` (+1 orients the
// bottom diagonal for the upper track, or the top diagonal for the lower track, upward in label).
std::vector<std::array<int, 6>> tetrahedron_edge_orientations(const TautStructure& ts, const TrackData& tracks,
                                                              Track tr, const std::vector<int>& anchor = {});
// beta(f) = 1 iff the orientations from the two sides of f disagree
std::vector<int> compute_beta(const TautStructure& ts, const TrackData& tracks, Track tr = Track::upper,
                              const std::vector<int>& anchor = {});
// beta is a coboundary on the dual graph
bool beta_is_coboundary(const TautStructure& ts, const std::vector<int>& beta);

struct EdgeOrientationData {
  std::vector<int> beta;
  // omega on H_1(M;Z) in SNF coordinates: one bit per torsion factor, one per H_M basis element
  std::vector<int> omega_torsion;
  std::vector<int> omega_free;
  bool is_edge_orientable = false;
  std::optional<std::vector<int>> sigma;
  int omega(const std::vector<long>& face_cycle) const;
};

EdgeOrientationData edge_orientation_data(const TautStructure& ts, const H1Data& h1, Track tr = Track::upper);

struct DoubleCover {
  GluingTable table;
  TautAngleVector angles;
  bool connected = false;
  // cover tetrahedron i lies over base tetrahedron i mod n; sheet -1 for i >= n
  int base_size = 0;
};

DoubleCover build_double_cover(const TautStructure& ts);
DoubleCover build_double_cover(const TautStructure& ts, const std::vector<int>& beta);
// the coorientation of the cover lifted from the base
TautStructure lift_taut_structure(const TautStructure& base, const DoubleCover& cover);

}  // namespace veerpoly
