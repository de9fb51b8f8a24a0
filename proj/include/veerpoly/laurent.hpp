#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace veerpoly {

using Exponent = std::vector<int>;
using IntMatrixRows = std::vector<std::vector<long>>;

// Element of Z[x_1^{+-1}, ..., x_r^{+-1}].  Terms are kept sorted in ascending
// graded-lex order (total degree first, then lexicographic on the exponent).
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(int nvars) : nvars_(nvars) {}

  static LaurentPoly constant(int nvars, const mpz_class& c);
  static LaurentPoly monomial(const Exponent& e, const mpz_class& c = 1);
  static LaurentPoly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  std::size_t size() const { return coefs_.size(); }
  bool is_zero() const { return coefs_.empty(); }
  bool is_monomial() const { return coefs_.size() == 1; }
  // +-monomial, i.e. a unit of the Laurent ring
  bool is_unit() const;

  const int* exp(std::size_t k) const { return exps_.data() + k * nvars_; }
  Exponent exponent(std::size_t k) const;
  const mpz_class& coef(std::size_t k) const { return coefs_[k]; }

  // Appends a term without sorting; call canonicalize() afterwards.
  void push_term(const int* e, const mpz_class& c);
  void canonicalize();

  std::vector<int> min_exponents() const;
  std::vector<int> max_exponents() const;
  LaurentPoly shifted(const std::vector<int>& by) const;
  mpz_class coefficient(const Exponent& e) const;
  mpz_class content() const;
  mpz_class eval_one() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const mpz_class& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // Human-readable form with variables named by `names` (defaults x1..xr, or t when r = 1).
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int nvars_ = 0;
  std::vector<int> exps_;
  std::vector<mpz_class> coefs_;
};

bool graded_lex_less(const int* a, const int* b, int n);

LaurentPoly normalize_unit(const LaurentPoly& p);
std::optional<LaurentPoly> exact_div(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly gcd(const LaurentPoly& p, const LaurentPoly& q);
// Both zero or equal after normalize_unit.
bool unit_equivalent(const LaurentPoly& p, const LaurentPoly& q);

struct SignCharacter {
  enum class Side { source, target };
  std::vector<int> signs;
  Side side = Side::source;
};

// x^v -> chi(v) y^{A v}; A has s rows and r columns.
LaurentPoly specialize(const LaurentPoly& p, const IntMatrixRows& a,
                       const std::optional<SignCharacter>& chi = std::nullopt);
// h_j -> signs_j h_j
LaurentPoly twist(const LaurentPoly& p, const std::vector<int>& signs);
LaurentPoly parse_poly(const std::string& text, int nvars, const std::vector<std::string>& names = {});

class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  LaurentMatrix(int rows, int cols, int nvars);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nvars() const { return nvars_; }
  LaurentPoly& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const LaurentPoly& at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::vector<int> row_labels;
  std::vector<int> col_labels;

  LaurentMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
  LaurentMatrix map_entries(const IntMatrixRows& a, const std::optional<SignCharacter>& chi = std::nullopt) const;
  std::vector<std::vector<long>> eval_one() const;

 private:
  int rows_ = 0, cols_ = 0, nvars_ = 0;
  std::vector<LaurentPoly> entries_;
};

LaurentPoly determinant(const LaurentMatrix& m);
LaurentPoly cofactor_determinant(const LaurentMatrix& m);

}  // namespace veerpoly
