#pragma once

#include "veerpoly/invariants.hpp"

#include <optional>
#include <string>
#include <vector>

namespace veerpoly {

struct Slope {
  long x = 0, y = 0;
};

// Per cusp: unfilled, or a primitive slope x*a + y*b in that cusp's basis_cycles.
struct FillingSpec {
  std::vector<std::optional<Slope>> slopes;

  int num_filled() const;
  bool empty() const { return num_filled() == 0; }
  // "c0:x/y,c2:x/y"; throws ParseError on malformed text, bad indices or non-primitive slopes
  static FillingSpec parse(const std::string& text, int n_cusps);
  std::string to_string() const;
};

struct FilledHomology {
  int r = 0;  // b1(M)
  int s = 0;  // b1(N)
  std::vector<mpz_class> torsion;
  IntMatrixRows i_star;  // s x r
  std::vector<int> filled;  // cusp indices, ascending
  std::vector<Slope> slopes;
  std::vector<std::vector<long>> gamma_cycles, delta_cycles;
  // per filled cusp: [l_j] in H_N
  std::vector<std::vector<long>> core_classes;
  std::vector<bool> core_trivial;
  bool boundary_empty = false;

  // presentation data of H_1(N;Z) on the generators of H_1(M;Z)
  std::vector<int> face_of_gen;
  int n_faces = 0;
  SNFResult snf;
  int first_free = 0;

  int k() const { return static_cast<int>(filled.size()); }
  std::vector<mpz_class> coordinates(const std::vector<long>& face_cycle) const;
  std::vector<long> free_part(const std::vector<long>& face_cycle) const;
};

FilledHomology filled_homology(const H1Data& h1, const std::vector<CuspData>& cusps, const FillingSpec& spec);

// H_1(N) as successive quotients of the SNF form of H_1(M); returns (rank, torsion)
std::pair<int, std::vector<mpz_class>> filled_homology_by_quotients(const H1Data& h1,
                                                                    const std::vector<CuspData>& cusps,
                                                                    const FillingSpec& spec);

// sigma_N when omega factors through H_N, on the H_N basis
std::optional<std::vector<int>> vN_edge_orientable(const EdgeOrientationData& eo, const H1Data& h1,
                                                   const FilledHomology& fh);
// sigma exists and omega(gamma_j) = 0 for every filled slope
bool slope_criterion(const EdgeOrientationData& eo, const FilledHomology& fh);

LaurentPoly specialise_under_filling(const LaurentPoly& theta, const FilledHomology& fh);

enum class FillingCase { Ia, Ib_boundary, Ib_closed, IIa, IIb };
std::string case_label(FillingCase c);
FillingCase filling_case(int b1_M, int s, bool boundary_empty);

struct FilledPrediction {
  FillingCase which = FillingCase::Ia;
  std::optional<LaurentPoly> delta_N;
  // i_*(Theta) = Delta_N(+-h) predicted by the four-condition criterion
  bool equality_condition = false;
  // hypotheses or division failures; empty when delta_N is present
  std::vector<std::string> diagnostics;
};

FilledPrediction predict_filled_alexander(const LaurentPoly& theta, const FilledHomology& fh,
                                          const std::optional<std::vector<int>>& sigma_N, int b1_M);

bool orientable_class_parity(const std::vector<long>& coeffs, const std::vector<int>& sigma_N);

}  // namespace veerpoly
