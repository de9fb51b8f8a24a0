#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace veerpoly {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input outside the supported class (e.g. taut but not veering).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal consistency failure (a bug, not bad input).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define VEERPOLY_ASSERT(cond, msg) \
  do {                             \
    if (!(cond)) throw ::veerpoly::InvariantError(msg); \
  } while (0)

class Perm4 {
 public:
  constexpr Perm4() : img_{0, 1, 2, 3} {}
  constexpr Perm4(int a, int b, int c, int d)
      : img_{static_cast<uint8_t>(a), static_cast<uint8_t>(b), static_cast<uint8_t>(c), static_cast<uint8_t>(d)} {}

  int operator[](int i) const { return img_[i]; }
  Perm4 inverse() const;
  // (p * q)[i] = p[q[i]]
  Perm4 operator*(const Perm4& q) const;
  bool operator==(const Perm4& o) const { return img_ == o.img_; }
  int sign() const;
  bool valid() const;

  // index into the 24 permutations listed in lexicographic order of images
  static Perm4 ordered(int idx);
  int ordered_index() const;

 private:
  std::array<uint8_t, 4> img_;
};

// local edge numbering: 0:01 1:02 2:03 3:12 4:13 5:23; edge e is opposite 5-e
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
int edge_number(int a, int b);
// digit d in {0,1,2} selects local edges d and 5-d
inline int angle_pair_of_edge(int e) { return e < 3 ? e : 5 - e; }

struct Gluing {
  int tet = -1;
  Perm4 perm;
  bool open() const { return tet < 0; }
};

struct FaceSide {
  int tet;
  int face;
};

// One tetrahedron-edge slot in the cycle around an edge class.  `ends` is the
// edge's reference orientation transported to this slot; the walk leaves the
// tetrahedron through the face opposite `exit_vertex`.
struct EdgeStep {
  int tet;
  int edge;
  std::array<int, 2> ends;
  int exit_vertex;
  int other_vertex;
  int face;  // global face crossed when leaving
};

class GluingTable {
 public:
  GluingTable() = default;
  // Validates involution, orientability (odd gluings), closedness and |F|, |E| counts.
  explicit GluingTable(std::vector<std::array<Gluing, 4>> gluings);

  int size() const { return static_cast<int>(gluings_.size()); }
  const Gluing& gluing(int tet, int face) const { return gluings_[tet][face]; }
  const std::vector<std::array<Gluing, 4>>& gluings() const { return gluings_; }

  int num_faces() const { return static_cast<int>(faces_.size()); }
  const std::array<FaceSide, 2>& face(int f) const { return faces_[f]; }
  int face_index(int tet, int face) const { return face_index_[tet][face]; }

  int num_edges() const { return static_cast<int>(edge_cycles_.size()); }
  int edge_class(int tet, int edge) const { return edge_index_[tet][edge]; }
  // position of slot (tet, edge) within its class cycle
  int edge_position(int tet, int edge) const { return edge_pos_[tet][edge]; }
  const std::vector<EdgeStep>& edge_cycle(int e) const { return edge_cycles_[e]; }

  int num_vertices() const { return num_vertices_; }
  int vertex_class(int tet, int v) const { return vertex_index_[tet][v]; }

  int num_components() const;

 private:
  std::vector<std::array<Gluing, 4>> gluings_;
  std::vector<std::array<FaceSide, 2>> faces_;
  std::vector<std::array<int, 4>> face_index_;
  std::vector<std::vector<EdgeStep>> edge_cycles_;
  std::vector<std::array<int, 6>> edge_index_;
  std::vector<std::array<int, 6>> edge_pos_;
  std::vector<std::array<int, 4>> vertex_index_;
  int num_vertices_ = 0;
};

class TautAngleVector {
 public:
  TautAngleVector() = default;
  explicit TautAngleVector(std::vector<int> digits) : digits_(std::move(digits)) {}
  int size() const { return static_cast<int>(digits_.size()); }
  int operator[](int t) const { return digits_[t]; }
  const std::vector<int>& digits() const { return digits_; }
  bool is_pi(int tet, int edge) const { return angle_pair_of_edge(edge) == digits_[tet]; }
  // throws ParseError unless every edge class carries exactly two pi slots
  void validate(const GluingTable& table) const;
  std::string to_string() const;

 private:
  std::vector<int> digits_;
};

struct TautSig {
  std::string isosig;
  std::string digits;
  GluingTable table;
  TautAngleVector angles;
  std::string text() const { return isosig + "_" + digits; }
};

struct CensusEntry {
  int line = 0;
  std::string token;
  std::optional<TautSig> sig;
  std::string error;
};

struct DecodedSig {
  GluingTable table;
  // tetrahedra whose vertex labels were transposed (2 3) to orient them positively
  std::vector<bool> relabelled;
};

DecodedSig decode_isosig_detailed(std::string_view sig);
GluingTable decode_isosig(std::string_view sig);
TautSig parse_taut_sig(std::string_view line);
std::vector<CensusEntry> load_census(const std::filesystem::path& path);
std::vector<CensusEntry> parse_census_stream(std::istream& in);

// Relabels tetrahedra: new index of old tetrahedron t is perm[t].
std::pair<GluingTable, TautAngleVector> permute_tetrahedra(const GluingTable& table, const TautAngleVector& angles,
                                                           const std::vector<int>& perm);

}  // namespace veerpoly
