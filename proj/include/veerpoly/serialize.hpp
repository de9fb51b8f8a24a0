#pragma once

#include "veerpoly/filling.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace veerpoly {

using json = nlohmann::ordered_json;

// {"vars": r, "terms": [{"exp": [...], "coef": c}, ...]}, unit-normalised, ascending graded-lex.
// Coefficients outside the int64 range are written as decimal strings.
json poly_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const json& j);

struct VerifyBits {
  std::optional<bool> twisted;
  std::optional<bool> hat_product;
  std::optional<bool> even_torsion;
  bool pass = true;
  bool operator==(const VerifyBits&) const = default;
};

struct RunRecord {
  std::string sig;
  std::optional<std::string> error;
  int error_kind = 0;  // exit-code class: 1 input, 2 internal
  int b1 = 0;
  std::vector<std::string> torsion;
  int cusps = 0;
  bool edge_orientable = false;
  bool edge_orientable_fab = false;
  std::optional<int> cover_cusps;
  std::optional<LaurentPoly> theta, delta, delta_hat;
  std::optional<std::vector<int>> sigma;
  std::optional<VerifyBits> verify;
  double seconds = 0;

  static RunRecord from_report(const std::string& sig, const PolyReport& r);
  void attach(const VerifyRecord& v);
  bool operator==(const RunRecord&) const = default;
};

json to_json(const RunRecord& r);
RunRecord run_record_from_json(const json& j);

std::string torsion_string(const std::vector<mpz_class>& torsion, int b1);

}  // namespace veerpoly
