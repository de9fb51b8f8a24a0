#include "veerpoly/filling.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <sstream>

namespace veerpoly {

int FillingSpec::num_filled() const {
  int k = 0;
  for (const auto& s : slopes)
    if (s) ++k;
  return k;
}

FillingSpec FillingSpec::parse(const std::string& text, int n_cusps) {
  FillingSpec spec;
  spec.slopes.assign(n_cusps, std::nullopt);
  if (text.empty()) return spec;
  static const std::regex item(R"(\s*c(\d+)\s*:\s*(-?\d+)\s*/\s*(-?\d+)\s*)");
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::smatch m;
    if (!std::regex_match(part, m, item)) throw ParseError("malformed slope '" + part + "', expected c<i>:<x>/<y>");
    long c, x, y;
    try {
      c = std::stol(m[1]);
      x = std::stol(m[2]);
      y = std::stol(m[3]);
    } catch (const std::out_of_range&) {
      throw ParseError("slope value out of range in '" + part + "'");
    }
    if (c < 0 || c >= n_cusps)
      throw ParseError("cusp index " + std::to_string(c) + " out of range (" + std::to_string(n_cusps) + " cusps)");
    if (std::gcd(x, y) != 1) throw ParseError("slope " + std::to_string(x) + "/" + std::to_string(y) + " is not primitive");
    if (spec.slopes[c]) throw ParseError("cusp c" + std::to_string(c) + " given twice");
    spec.slopes[c] = Slope{x, y};
  }
  return spec;
}

std::string FillingSpec::to_string() const {
  std::string out;
  for (std::size_t c = 0; c < slopes.size(); ++c) {
    if (!slopes[c]) continue;
    if (!out.empty()) out += ",";
    out += "c" + std::to_string(c) + ":" + std::to_string(slopes[c]->x) + "/" + std::to_string(slopes[c]->y);
  }
  return out;
}

namespace {

// p*x + q*y = gcd(x, y)
void ext_gcd(long x, long y, long& p, long& q) {
  long r0 = x, r1 = y, p0 = 1, p1 = 0, q0 = 0, q1 = 1;
  while (r1 != 0) {
    long t = r0 / r1;
    long r2 = r0 - t * r1, p2 = p0 - t * p1, q2 = q0 - t * q1;
    r0 = r1, r1 = r2, p0 = p1, p1 = p2, q0 = q1, q1 = q2;
  }
  if (r0 < 0) p0 = -p0, q0 = -q0;
  p = p0;
  q = q0;
}

std::vector<long> combine(long x, const std::vector<long>& a, long y, const std::vector<long>& b) {
  std::vector<long> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = x * a[i] + y * b[i];
  return out;
}

long to_long(const mpz_class& v) {
  VEERPOLY_ASSERT(v.fits_slong_p(), "homology coordinate too large");
  return v.get_si();
}

}  // namespace

std::vector<mpz_class> FilledHomology::coordinates(const std::vector<long>& face_cycle) const {
  int g = static_cast<int>(face_of_gen.size());
  std::vector<mpz_class> y(g);
  for (int i = 0; i < g; ++i)
    for (int k = 0; k < g; ++k) {
      long x = face_cycle[face_of_gen[k]];
      if (x != 0) y[i] += snf.U.at(i, k) * x;
    }
  return y;
}

std::vector<long> FilledHomology::free_part(const std::vector<long>& face_cycle) const {
  auto y = coordinates(face_cycle);
  std::vector<long> out;
  for (int j = first_free; j < static_cast<int>(y.size()); ++j) out.push_back(to_long(y[j]));
  return out;
}

FilledHomology filled_homology(const H1Data& h1, const std::vector<CuspData>& cusps, const FillingSpec& spec) {
  if (spec.slopes.size() != cusps.size()) throw std::invalid_argument("filling spec does not match the cusp count");
  FilledHomology fh;
  fh.r = h1.rank;
  fh.face_of_gen = h1.face_of_gen;
  fh.n_faces = h1.n_faces;
  for (std::size_t c = 0; c < cusps.size(); ++c) {
    if (!spec.slopes[c]) continue;
    const Slope& sl = *spec.slopes[c];
    const auto& ab = cusps[c].basis_cycles;
    long p, q;
    ext_gcd(sl.x, sl.y, p, q);
    fh.filled.push_back(static_cast<int>(c));
    fh.slopes.push_back(sl);
    fh.gamma_cycles.push_back(combine(sl.x, ab[0], sl.y, ab[1]));
    // det [[x, y], [u, v]] = 1 with (u, v) = (-q, p)
    fh.delta_cycles.push_back(combine(-q, ab[0], p, ab[1]));
  }
  fh.boundary_empty = fh.k() == static_cast<int>(cusps.size());

  int g = h1.num_coords();
  int n_edges = h1.snf.D.cols();
  IntMatrix rel(g, n_edges + fh.k());
  // original relations: U^{-1} D V^{-1}
  IntMatrix orig = h1.snf.U_inv * h1.snf.D * h1.snf.V_inv;
  for (int i = 0; i < g; ++i)
    for (int e = 0; e < n_edges; ++e) rel.at(i, e) = orig.at(i, e);
  for (int j = 0; j < fh.k(); ++j)
    for (int i = 0; i < g; ++i) rel.at(i, n_edges + j) = fh.gamma_cycles[j][h1.face_of_gen[i]];
  fh.snf = smith_normal_form(rel);
  fh.first_free = fh.snf.rank;
  fh.s = g - fh.snf.rank;
  for (int i = 0; i < fh.snf.rank; ++i)
    if (fh.snf.diagonal[i] > 1) fh.torsion.push_back(fh.snf.diagonal[i]);

  fh.i_star.assign(fh.s, std::vector<long>(fh.r, 0));
  for (int j = 0; j < fh.r; ++j) {
    auto img = fh.free_part(h1.free_basis_cycle(j));
    for (int i = 0; i < fh.s; ++i) fh.i_star[i][j] = img[i];
  }
  if (fh.s > 0) {
    SNFResult chk = smith_normal_form(IntMatrix::from_rows(fh.i_star, fh.r));
    VEERPOLY_ASSERT(chk.rank == fh.s, "i_* is not surjective");
    for (int i = 0; i < fh.s; ++i) VEERPOLY_ASSERT(chk.diagonal[i] == 1, "i_* is not surjective");
  }
  for (int j = 0; j < fh.k(); ++j) {
    auto cls = fh.free_part(fh.delta_cycles[j]);
    bool trivial = std::all_of(cls.begin(), cls.end(), [](long v) { return v == 0; });
    fh.core_classes.push_back(cls);
    fh.core_trivial.push_back(trivial);
  }
  return fh;
}

std::pair<int, std::vector<mpz_class>> filled_homology_by_quotients(const H1Data& h1,
                                                                    const std::vector<CuspData>& cusps,
                                                                    const FillingSpec& spec) {
  int g = h1.num_coords();
  // current group: Z^g / diag(d), coordinates y = T x on the generators
  IntMatrix T = h1.snf.U;
  std::vector<mpz_class> d(g, 0);
  for (int i = 0; i < h1.snf.rank; ++i) d[i] = h1.snf.diagonal[i];
  for (std::size_t c = 0; c < cusps.size(); ++c) {
    if (!spec.slopes[c]) continue;
    auto gamma = combine(spec.slopes[c]->x, cusps[c].basis_cycles[0], spec.slopes[c]->y, cusps[c].basis_cycles[1]);
    IntMatrix rel(g, g + 1);
    for (int i = 0; i < g; ++i) {
      rel.at(i, i) = d[i];
      for (int k = 0; k < g; ++k) rel.at(i, g) += T.at(i, k) * gamma[h1.face_of_gen[k]];
    }
    SNFResult s = smith_normal_form(rel);
    T = s.U * T;
    std::fill(d.begin(), d.end(), 0);
    for (int i = 0; i < s.rank; ++i) d[i] = s.diagonal[i];
  }
  int rank = 0;
  std::vector<mpz_class> torsion;
  for (const auto& v : d) {
    if (v == 0) ++rank;
    if (v > 1) torsion.push_back(v);
  }
  std::sort(torsion.begin(), torsion.end());
  return {rank, torsion};
}

std::optional<std::vector<int>> vN_edge_orientable(const EdgeOrientationData& eo, const H1Data& h1,
                                                   const FilledHomology& fh) {
  for (const auto& gamma : fh.gamma_cycles)
    if (eo.omega(gamma)) return std::nullopt;
  int g = h1.num_coords();
  std::vector<int> w(g);
  for (int k = 0; k < g; ++k) w[k] = eo.omega(h1.face_loop(h1.face_of_gen[k]));
  std::vector<int> sigma;
  for (int i = 0; i < g; ++i) {
    mpz_class acc = 0;
    for (int k = 0; k < g; ++k)
      if (w[k]) acc += fh.snf.U_inv.at(k, i);
    int bit = mpz_odd_p(acc.get_mpz_t()) ? 1 : 0;
    const mpz_class& div = i < fh.snf.rank ? fh.snf.diagonal[i] : mpz_class(0);
    if (div == 0) {
      sigma.push_back(bit ? -1 : 1);
    } else if (div % 2 == 0) {
      if (bit) return std::nullopt;
    } else {
      VEERPOLY_ASSERT(bit == 0, "omega nonzero on an odd-order class");
    }
  }
  return sigma;
}

bool slope_criterion(const EdgeOrientationData& eo, const FilledHomology& fh) {
  if (!eo.sigma) return false;
  for (const auto& gamma : fh.gamma_cycles)
    if (eo.omega(gamma)) return false;
  return true;
}

LaurentPoly specialise_under_filling(const LaurentPoly& theta, const FilledHomology& fh) {
  if (fh.s == 0) throw DomainError("filled manifold has b1 = 0");
  return specialize(theta, fh.i_star);
}

std::string case_label(FillingCase c) {
  switch (c) {
    case FillingCase::Ia: return "I(a)";
    case FillingCase::Ib_boundary: return "I(b) boundary";
    case FillingCase::Ib_closed: return "I(b) closed";
    case FillingCase::IIa: return "II(a)";
    case FillingCase::IIb: return "II(b)";
  }
  return "?";
}

FillingCase filling_case(int b1_M, int s, bool boundary_empty) {
  if (s < 1 || s > b1_M) throw DomainError("filled manifold has b1 = " + std::to_string(s));
  if (b1_M >= 2) {
    if (s >= 2) return FillingCase::Ia;
    return boundary_empty ? FillingCase::Ib_closed : FillingCase::Ib_boundary;
  }
  return boundary_empty ? FillingCase::IIb : FillingCase::IIa;
}

namespace {

int sigma_of(const std::vector<long>& cls, const std::vector<int>& sigma) {
  int s = 1;
  for (std::size_t i = 0; i < cls.size(); ++i)
    if (sigma[i] < 0 && cls[i] % 2 != 0) s = -s;
  return s;
}

bool generates(const std::vector<long>& cls) { return cls.size() == 1 && (cls[0] == 1 || cls[0] == -1); }

}  // namespace

FilledPrediction predict_filled_alexander(const LaurentPoly& theta, const FilledHomology& fh,
                                          const std::optional<std::vector<int>>& sigma_N, int b1_M) {
  FilledPrediction out;
  out.which = filling_case(b1_M, fh.s, fh.boundary_empty);
  int s = fh.s, k = fh.k();

  if (k == 0) {
    out.equality_condition = true;
  } else if (s == 1 && !fh.boundary_empty && k == 1) {
    out.equality_condition = generates(fh.core_classes[0]);
  } else if (s == 1 && fh.boundary_empty && k == 2) {
    const auto &l1 = fh.core_classes[0], &l2 = fh.core_classes[1];
    out.equality_condition = generates(l1) && (l1 == l2 || l1[0] == -l2[0]);
  }
  if (b1_M == 1 && fh.boundary_empty) out.equality_condition = generates(fh.core_classes[0]);

  if (!sigma_N) out.diagnostics.push_back("edge-orientation homomorphism does not factor through H_N");
  for (int j = 0; j < k; ++j)
    if (fh.core_trivial[j]) out.diagnostics.push_back("core class of cusp c" + std::to_string(fh.filled[j]) + " is trivial in H_N");
  if (!out.diagnostics.empty()) return out;
  const std::vector<int>& sg = *sigma_N;

  LaurentPoly num = specialise_under_filling(theta, fh);
  LaurentPoly den = LaurentPoly::constant(s, 1);
  auto core_factor = [&](int j) {
    Exponent e(fh.core_classes[j].begin(), fh.core_classes[j].end());
    return LaurentPoly::monomial(e) - LaurentPoly::constant(s, sigma_of(fh.core_classes[j], sg));
  };
  LaurentPoly h_factor(s);
  if (s == 1) h_factor = LaurentPoly::variable(1, 0) - LaurentPoly::constant(1, sg[0]);
  switch (out.which) {
    case FillingCase::Ia:
      for (int j = 0; j < k; ++j) den *= core_factor(j);
      break;
    case FillingCase::Ib_boundary:
      for (int j = 0; j < k; ++j) den *= core_factor(j);
      num *= h_factor;
      break;
    case FillingCase::Ib_closed:
      for (int j = 0; j < k; ++j) den *= core_factor(j);
      num *= h_factor;
      num *= h_factor;
      break;
    case FillingCase::IIa:
      break;
    case FillingCase::IIb:
      den = core_factor(0);
      num *= h_factor;
      break;
  }
  auto q = exact_div(num, den);
  if (!q) {
    out.diagnostics.push_back("specialised taut polynomial is not divisible by the core-curve factors");
    return out;
  }
  out.delta_N = normalize_unit(twist(*q, sg));
  return out;
}

bool orientable_class_parity(const std::vector<long>& coeffs, const std::vector<int>& sigma_N) {
  if (coeffs.size() != sigma_N.size()) throw std::invalid_argument("coefficient count differs from rank of H_N");
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    bool odd = coeffs[j] % 2 != 0;
    if (odd != (sigma_N[j] < 0)) return false;
  }
  return true;
}

}  // namespace veerpoly
