#pragma once

#include "veerpoly/taut_structure.hpp"

#include <gmpxx.h>

#include <array>
#include <vector>

namespace veerpoly {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows, int cols = -1);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  mpz_class& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const mpz_class& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool is_zero() const;

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  // row i += q * row j
  void add_row(int i, int j, const mpz_class& q);
  void add_col(int i, int j, const mpz_class& q);
  void negate_row(int i);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<mpz_class> a_;
};

struct SNFResult {
  IntMatrix U, V, D;
  IntMatrix U_inv, V_inv;
  int rank = 0;
  // D(i,i) for i < min(rows, cols)
  std::vector<mpz_class> diagonal;
};

SNFResult smith_normal_form(const IntMatrix& a);
mpz_class int_determinant(const IntMatrix& a);
int rational_rank(const IntMatrix& a);

struct ChainComplex {
  int n_tets = 0, n_faces = 0, n_edges = 0;
  IntMatrix d_faces_to_tets;   // |T| x |F|, column f = above(f) - below(f)
  IntMatrix d_edges_to_faces;  // |F| x |E|, column e = signed face cycle of e
  std::vector<int> face_below, face_above;
};

ChainComplex build_chain_complex(const TautStructure& ts);

enum class TreeRule { bfs, dfs };

// H_1(M;Z) from the presentation with generators the faces outside a spanning tree of the
// dual graph and one relation per edge class.  SNF coordinates y = U x; coordinate i has
// order divisor(i) (1 trivial, >1 torsion, 0 free).
struct H1Data {
  int rank = 0;
  std::vector<mpz_class> torsion;
  int n_faces = 0;
  int n_tets = 0;
  std::vector<int> tree_face;     // per face, 1 if in the spanning tree
  std::vector<int> gen_of_face;   // -1 for tree faces
  std::vector<int> face_of_gen;
  std::vector<int> face_below, face_above;
  std::vector<std::vector<long>> tet_path;  // per tetrahedron: tree path from the root, in Z^F
  SNFResult snf;
  int first_free = 0;
  // per SNF coordinate: a dual cycle in Z^F representing U^{-1} e_i
  std::vector<std::vector<long>> coord_cycles;
  // per face: Z^r
  std::vector<std::vector<long>> cocycle;

  int num_coords() const { return static_cast<int>(face_of_gen.size()); }
  const mpz_class& divisor(int i) const;
  // dual loop through face f closed up with tree paths
  std::vector<long> face_loop(int f) const;
  // SNF coordinates of a closed dual cycle given by signed face crossings
  std::vector<mpz_class> coordinates(const std::vector<long>& face_cycle) const;
  std::vector<long> free_part(const std::vector<long>& face_cycle) const;
  std::vector<long> free_basis_cycle(int j) const { return coord_cycles[first_free + j]; }
  // cocycle value on a dual path given by signed crossings (need not be closed)
  std::vector<long> evaluate_cocycle(const std::vector<long>& face_cycle) const;
};

H1Data compute_H1(const ChainComplex& cx, TreeRule rule = TreeRule::bfs);

struct CuspData {
  int vertex = 0;
  std::vector<std::pair<int, int>> corners;  // (tet, vertex) triangles of the link
  int n_link_edges = 0;
  int n_link_vertices = 0;
  int euler_characteristic() const {
    return n_link_vertices - n_link_edges + static_cast<int>(corners.size());
  }
  // basis (a, b) of H_1(link) as dual cycles in Z^F of M
  std::array<std::vector<long>, 2> basis_cycles;
  std::array<std::vector<mpz_class>, 2> image_coords;
  std::array<std::vector<long>, 2> image_free;
};

std::vector<CuspData> vertex_links(const TautStructure& ts, const H1Data& h1);

}  // namespace veerpoly
