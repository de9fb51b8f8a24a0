#pragma once

#include "veerpoly/homology.hpp"
#include "veerpoly/laurent.hpp"

#include <optional>
#include <string>
#include <vector>

namespace veerpoly {

enum class IncidenceRule { first, last };

struct PresentationOptions {
  TreeRule tree = TreeRule::bfs;
  IncidenceRule incidence = IncidenceRule::first;
};

// Lift labels of tetrahedron-edge slots in the abelian cover defined by `cocycle`
// (per face, values in Z^r), plus the sign of each slot's reference orientation.
struct SlotLabels {
  std::vector<std::array<std::vector<long>, 6>> label;
  std::vector<std::array<int, 6>> ref_sign;
};

SlotLabels slot_labels(const TautStructure& ts, const std::vector<std::vector<long>>& cocycle, int nvars,
                       IncidenceRule rule = IncidenceRule::first);

LaurentMatrix build_taut_matrix(const TautStructure& ts, const TrackData& tracks, const H1Data& h1,
                                IncidenceRule rule = IncidenceRule::first);
LaurentMatrix build_taut_matrix(const TautStructure& ts, const TrackData& tracks,
                                const std::vector<std::vector<long>>& cocycle, int nvars,
                                IncidenceRule rule = IncidenceRule::first);
LaurentMatrix build_alexander_matrix(const TautStructure& ts, const H1Data& h1,
                                     IncidenceRule rule = IncidenceRule::first);
LaurentMatrix build_alexander_matrix(const TautStructure& ts, const std::vector<std::vector<long>>& cocycle,
                                     int nvars, IncidenceRule rule = IncidenceRule::first);

struct FittingStats {
  int pivots = 0;
  int residual_rows = 0;
  int residual_cols = 0;
  long minors = 0;
};

// gcd of the maximal minors, after unit-pivot reduction
LaurentPoly fitting_gcd(const LaurentMatrix& m, FittingStats* stats = nullptr);
// gcd of every maximal minor of m as given
LaurentPoly exhaustive_minor_gcd(const LaurentMatrix& m);

// Everything derived from a taut triangulation that the polynomial computations share.
struct Analysis {
  TautStructure ts;
  TrackData tracks;
  ChainComplex cx;
  H1Data h1;
  EdgeOrientationData eo;
  std::vector<CuspData> cusps;
  PresentationOptions options;
};

Analysis analyze(const GluingTable& table, const TautAngleVector& angles, const PresentationOptions& opt = {});
Analysis analyze(const TautStructure& ts, const PresentationOptions& opt = {});

struct PolyRequest {
  bool taut = true;
  bool alex = true;
  bool hat = true;
};

struct PolyReport {
  int b1 = 0;
  std::vector<mpz_class> torsion;
  int cusps = 0;
  bool edge_orientable = false;
  std::optional<LaurentPoly> theta;
  std::optional<LaurentPoly> delta;
  // present iff the triangulation is not edge-orientable
  std::optional<LaurentPoly> delta_hat;
  bool edge_orientable_fab = false;
  std::optional<std::vector<int>> sigma;
  // cusps of the edge-orientation double cover (counted over the whole cover)
  std::optional<int> cover_cusps;
};

struct DoubleCoverData {
  DoubleCover cover;
  TautStructure ts;
  H1Data h1;
  // H^or -> H_M, r x r_or
  IntMatrixRows pushforward;
};

DoubleCoverData double_cover_data(const Analysis& a);
// cover Alexander matrix over Z[H^or] pushed to Z[H_M]
LaurentMatrix cover_alexander_matrix(const Analysis& a, const DoubleCoverData& d);
// same matrix built directly with the pulled-back cocycle
LaurentMatrix cover_alexander_matrix_pullback(const Analysis& a, const DoubleCoverData& d);

PolyReport compute_polynomials(const Analysis& a, const PolyRequest& req = {});
PolyReport compute_polynomials(const TautSig& sig, const PolyRequest& req = {});

struct VerifyRecord {
  // (i) theta = delta twisted by sigma
  std::optional<bool> twisted;
  // (ii) delta_hat = delta * theta
  std::optional<bool> hat_product;
  // (iii) theta differs from every sign change of delta => torsion has even order
  std::optional<bool> even_torsion;
  std::optional<std::vector<int>> sign_match;
  bool all_pass() const {
    return twisted.value_or(true) && hat_product.value_or(true) && even_torsion.value_or(true);
  }
};

VerifyRecord verify_identities(const PolyReport& r);

}  // namespace veerpoly
