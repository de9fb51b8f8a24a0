#include "veerpoly/serialize.hpp"

namespace veerpoly {

namespace {

json coef_to_json(const mpz_class& c) {
  if (mpz_fits_slong_p(c.get_mpz_t())) return json(c.get_si());
  return json(c.get_str());
}

mpz_class coef_from_json(const json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  throw ParseError("polynomial coefficient must be an integer or a decimal string");
}

json opt_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

std::optional<bool> opt_bool_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<bool>();
}

}  // namespace

json poly_to_json(const LaurentPoly& p) {
  LaurentPoly n = normalize_unit(p);
  json terms = json::array();
  for (std::size_t k = 0; k < n.size(); ++k) terms.push_back({{"exp", n.exponent(k)}, {"coef", coef_to_json(n.coef(k))}});
  return {{"vars", n.nvars()}, {"terms", terms}};
}

LaurentPoly poly_from_json(const json& j) {
  try {
    int r = j.at("vars").get<int>();
    LaurentPoly p(r);
    for (const auto& t : j.at("terms")) {
      Exponent e = t.at("exp").get<Exponent>();
      if (static_cast<int>(e.size()) != r) throw ParseError("exponent length differs from vars");
      p.push_term(e.data(), coef_from_json(t.at("coef")));
    }
    p.canonicalize();
    return p;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad polynomial JSON: ") + ex.what());
  }
}

std::string torsion_string(const std::vector<mpz_class>& torsion, int b1) {
  std::string out;
  for (const auto& t : torsion) out += "Z/" + t.get_str() + "+";
  for (int i = 0; i < b1; ++i) out += "Z+";
  if (!out.empty()) out.pop_back();
  return out.empty() ? "0" : out;
}

RunRecord RunRecord::from_report(const std::string& sig, const PolyReport& r) {
  RunRecord rec;
  rec.sig = sig;
  rec.b1 = r.b1;
  for (const auto& t : r.torsion) rec.torsion.push_back(t.get_str());
  rec.cusps = r.cusps;
  rec.edge_orientable = r.edge_orientable;
  rec.edge_orientable_fab = r.edge_orientable_fab;
  rec.cover_cusps = r.cover_cusps;
  if (r.theta) rec.theta = normalize_unit(*r.theta);
  if (r.delta) rec.delta = normalize_unit(*r.delta);
  if (r.delta_hat) rec.delta_hat = normalize_unit(*r.delta_hat);
  rec.sigma = r.sigma;
  return rec;
}

void RunRecord::attach(const VerifyRecord& v) {
  verify = VerifyBits{v.twisted, v.hat_product, v.even_torsion, v.all_pass()};
}

json to_json(const RunRecord& r) {
  json j;
  j["sig"] = r.sig;
  if (r.error) {
    j["error"] = *r.error;
    j["error_kind"] = r.error_kind;
    return j;
  }
  j["b1"] = r.b1;
  j["torsion"] = r.torsion;
  j["cusps"] = r.cusps;
  j["edge_orientable"] = r.edge_orientable;
  j["edge_orientable_fab"] = r.edge_orientable_fab;
  j["cover_cusps"] = r.cover_cusps ? json(*r.cover_cusps) : json(nullptr);
  j["theta"] = r.theta ? poly_to_json(*r.theta) : json(nullptr);
  j["delta"] = r.delta ? poly_to_json(*r.delta) : json(nullptr);
  j["delta_hat"] = r.delta_hat ? poly_to_json(*r.delta_hat) : json(nullptr);
  j["sigma"] = r.sigma ? json(*r.sigma) : json(nullptr);
  if (r.verify)
    j["verify"] = {{"twisted", opt_bool(r.verify->twisted)},
                   {"hat_product", opt_bool(r.verify->hat_product)},
                   {"even_torsion", opt_bool(r.verify->even_torsion)},
                   {"pass", r.verify->pass}};
  else
    j["verify"] = nullptr;
  j["seconds"] = r.seconds;
  return j;
}

RunRecord run_record_from_json(const json& j) {
  RunRecord r;
  try {
    r.sig = j.at("sig").get<std::string>();
    if (j.contains("error")) {
      r.error = j.at("error").get<std::string>();
      r.error_kind = j.value("error_kind", 1);
      return r;
    }
    r.b1 = j.at("b1").get<int>();
    r.torsion = j.at("torsion").get<std::vector<std::string>>();
    r.cusps = j.at("cusps").get<int>();
    r.edge_orientable = j.at("edge_orientable").get<bool>();
    r.edge_orientable_fab = j.at("edge_orientable_fab").get<bool>();
    if (!j.at("cover_cusps").is_null()) r.cover_cusps = j.at("cover_cusps").get<int>();
    if (!j.at("theta").is_null()) r.theta = poly_from_json(j.at("theta"));
    if (!j.at("delta").is_null()) r.delta = poly_from_json(j.at("delta"));
    if (!j.at("delta_hat").is_null()) r.delta_hat = poly_from_json(j.at("delta_hat"));
    if (!j.at("sigma").is_null()) r.sigma = j.at("sigma").get<std::vector<int>>();
    const json& v = j.at("verify");
    if (!v.is_null())
      r.verify = VerifyBits{opt_bool_from(v.at("twisted")), opt_bool_from(v.at("hat_product")),
                            opt_bool_from(v.at("even_torsion")), v.at("pass").get<bool>()};
    r.seconds = j.value("seconds", 0.0);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad run record: ") + ex.what());
  }
  return r;
}

}  // namespace veerpoly
