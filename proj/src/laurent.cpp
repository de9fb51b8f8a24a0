#include "veerpoly/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace veerpoly {

bool graded_lex_less(const int* a, const int* b, int n) {
  long da = 0, db = 0;
  for (int i = 0; i < n; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db;
  for (int i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

static bool exp_equal(const int* a, const int* b, int n) {
  return std::equal(a, a + n, b);
}

LaurentPoly LaurentPoly::constant(int nvars, const mpz_class& c) {
  LaurentPoly p(nvars);
  if (c != 0) {
    p.exps_.assign(nvars, 0);
    p.coefs_.push_back(c);
  }
  return p;
}

LaurentPoly LaurentPoly::monomial(const Exponent& e, const mpz_class& c) {
  LaurentPoly p(static_cast<int>(e.size()));
  if (c != 0) {
    p.exps_ = e;
    p.coefs_.push_back(c);
  }
  return p;
}

LaurentPoly LaurentPoly::variable(int nvars, int i) {
  Exponent e(nvars, 0);
  e[i] = 1;
  return monomial(e);
}

bool LaurentPoly::is_unit() const {
  return coefs_.size() == 1 && (coefs_[0] == 1 || coefs_[0] == -1);
}

Exponent LaurentPoly::exponent(std::size_t k) const {
  return Exponent(exp(k), exp(k) + nvars_);
}

void LaurentPoly::push_term(const int* e, const mpz_class& c) {
  if (c == 0) return;
  exps_.insert(exps_.end(), e, e + nvars_);
  coefs_.push_back(c);
}

void LaurentPoly::canonicalize() {
  std::size_t n = coefs_.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return graded_lex_less(exp(a), exp(b), nvars_);
  });
  std::vector<int> ne;
  std::vector<mpz_class> nc;
  ne.reserve(exps_.size());
  nc.reserve(n);
  for (std::size_t k = 0; k < n;) {
    std::size_t i = idx[k];
    mpz_class c = coefs_[i];
    std::size_t j = k + 1;
    while (j < n && exp_equal(exp(idx[j]), exp(i), nvars_)) c += coefs_[idx[j++]];
    if (c != 0) {
      ne.insert(ne.end(), exp(i), exp(i) + nvars_);
      nc.push_back(std::move(c));
    }
    k = j;
  }
  exps_ = std::move(ne);
  coefs_ = std::move(nc);
}

std::vector<int> LaurentPoly::min_exponents() const {
  std::vector<int> m(nvars_, 0);
  for (std::size_t k = 0; k < size(); ++k)
    for (int i = 0; i < nvars_; ++i) m[i] = k == 0 ? exp(k)[i] : std::min(m[i], exp(k)[i]);
  return m;
}

std::vector<int> LaurentPoly::max_exponents() const {
  std::vector<int> m(nvars_, 0);
  for (std::size_t k = 0; k < size(); ++k)
    for (int i = 0; i < nvars_; ++i) m[i] = k == 0 ? exp(k)[i] : std::max(m[i], exp(k)[i]);
  return m;
}

LaurentPoly LaurentPoly::shifted(const std::vector<int>& by) const {
  LaurentPoly r = *this;
  for (std::size_t k = 0; k < size(); ++k)
    for (int i = 0; i < nvars_; ++i) r.exps_[k * nvars_ + i] += by[i];
  return r;
}

mpz_class LaurentPoly::coefficient(const Exponent& e) const {
  for (std::size_t k = 0; k < size(); ++k)
    if (exp_equal(exp(k), e.data(), nvars_)) return coefs_[k];
  return 0;
}

mpz_class LaurentPoly::content() const {
  mpz_class g = 0;
  for (const auto& c : coefs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

mpz_class LaurentPoly::eval_one() const {
  mpz_class s = 0;
  for (const auto& c : coefs_) s += c;
  return s;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& c : r.coefs_) c = -c;
  return r;
}

static LaurentPoly merge(const LaurentPoly& a, const LaurentPoly& b, int sign) {
  int n = a.nvars();
  LaurentPoly r(n);
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && graded_lex_less(a.exp(i), b.exp(j), n))) {
      r.push_term(a.exp(i), a.coef(i));
      ++i;
    } else if (i == a.size() || graded_lex_less(b.exp(j), a.exp(i), n)) {
      r.push_term(b.exp(j), sign > 0 ? b.coef(j) : mpz_class(-b.coef(j)));
      ++j;
    } else {
      mpz_class c = a.coef(i);
      if (sign > 0) c += b.coef(j); else c -= b.coef(j);
      r.push_term(a.exp(i), c);
      ++i;
      ++j;
    }
  }
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  return *this = merge(*this, o, 1);
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = -o;
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  return *this = merge(*this, o, -1);
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  int n = a.nvars();
  if (a.is_zero() || b.is_zero()) return LaurentPoly(std::max(n, b.nvars()));
  if (n != b.nvars()) throw std::invalid_argument("variable count mismatch");
  if (a.is_monomial() || b.is_monomial()) {
    const LaurentPoly& m = a.is_monomial() ? a : b;
    const LaurentPoly& p = a.is_monomial() ? b : a;
    LaurentPoly r = p.shifted(m.exponent(0));
    if (m.coef(0) != 1) r *= m.coef(0);
    return r;
  }
  LaurentPoly r(n);
  std::vector<int> e(n);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      for (int k = 0; k < n; ++k) e[k] = a.exp(i)[k] + b.exp(j)[k];
      r.push_term(e.data(), a.coef(i) * b.coef(j));
    }
  r.canonicalize();
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly& LaurentPoly::operator*=(const mpz_class& c) {
  if (c == 0) {
    exps_.clear();
    coefs_.clear();
    return *this;
  }
  for (auto& x : coefs_) x *= c;
  return *this;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.nvars_ == b.nvars_ && a.exps_ == b.exps_ && a.coefs_ == b.coefs_;
}

std::string LaurentPoly::to_string(const std::vector<std::string>& names) const {
  std::vector<std::string> nm = names;
  if (nm.empty()) {
    if (nvars_ == 1) {
      nm = {"t"};
    } else {
      for (int i = 0; i < nvars_; ++i) nm.push_back("x" + std::to_string(i + 1));
    }
  }
  if (is_zero()) return "0";
  std::ostringstream os;
  // descending order reads more naturally
  for (std::size_t kk = size(); kk-- > 0;) {
    mpz_class c = coefs_[kk];
    bool first = kk + 1 == size();
    if (c < 0) {
      os << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      os << " + ";
    }
    bool any = false;
    std::ostringstream mono;
    for (int i = 0; i < nvars_; ++i) {
      int e = exp(kk)[i];
      if (e == 0) continue;
      if (any) mono << "*";
      mono << nm[i];
      if (e != 1) mono << "^" << e;
      any = true;
    }
    if (!any) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << mono.str();
    }
  }
  return os.str();
}

namespace {

// Dense recursive polynomial: at level 0 an integer, at level k a polynomial in
// x_{k-1} whose coefficients live at level k-1.  Trailing zero coefficients are trimmed.
struct RPoly {
  mpz_class c;
  std::vector<RPoly> cs;
};

bool rzero(int lv, const RPoly& p) { return lv == 0 ? p.c == 0 : p.cs.empty(); }

RPoly rconst(int lv, const mpz_class& v) {
  RPoly p;
  if (lv == 0) {
    p.c = v;
  } else if (v != 0) {
    p.cs.push_back(rconst(lv - 1, v));
  }
  return p;
}

void trim_level(int lv, RPoly& p) {
  if (lv == 0) return;
  while (!p.cs.empty() && rzero(lv - 1, p.cs.back())) p.cs.pop_back();
}

int rdeg(const RPoly& p) { return static_cast<int>(p.cs.size()) - 1; }

bool runit(int lv, const RPoly& p) {
  if (lv == 0) return p.c == 1 || p.c == -1;
  return p.cs.size() == 1 && runit(lv - 1, p.cs[0]);
}

// sign of the leading integer coefficient
int rsign(int lv, const RPoly& p) {
  if (lv == 0) return sgn(p.c);
  if (p.cs.empty()) return 0;
  return rsign(lv - 1, p.cs.back());
}

void rneg(int lv, RPoly& p) {
  if (lv == 0) {
    p.c = -p.c;
    return;
  }
  for (auto& q : p.cs) rneg(lv - 1, q);
}

RPoly radd(int lv, const RPoly& a, const RPoly& b, int sign = 1) {
  RPoly r;
  if (lv == 0) {
    if (sign > 0) r.c = a.c + b.c; else r.c = a.c - b.c;
    return r;
  }
  std::size_t n = std::max(a.cs.size(), b.cs.size());
  r.cs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < a.cs.size() && i < b.cs.size()) {
      r.cs[i] = radd(lv - 1, a.cs[i], b.cs[i], sign);
    } else if (i < a.cs.size()) {
      r.cs[i] = a.cs[i];
    } else {
      r.cs[i] = b.cs[i];
      if (sign < 0) rneg(lv - 1, r.cs[i]);
    }
  }
  trim_level(lv, r);
  return r;
}

RPoly rmul(int lv, const RPoly& a, const RPoly& b) {
  RPoly r;
  if (lv == 0) {
    r.c = a.c * b.c;
    return r;
  }
  if (a.cs.empty() || b.cs.empty()) return r;
  r.cs.assign(a.cs.size() + b.cs.size() - 1, rconst(lv - 1, 0));
  for (std::size_t i = 0; i < a.cs.size(); ++i) {
    if (rzero(lv - 1, a.cs[i])) continue;
    for (std::size_t j = 0; j < b.cs.size(); ++j) {
      if (rzero(lv - 1, b.cs[j])) continue;
      r.cs[i + j] = radd(lv - 1, r.cs[i + j], rmul(lv - 1, a.cs[i], b.cs[j]));
    }
  }
  trim_level(lv, r);
  return r;
}

// multiply every main-variable coefficient by c (c at level lv-1)
RPoly rscale(int lv, const RPoly& a, const RPoly& c) {
  RPoly r;
  r.cs.reserve(a.cs.size());
  for (const auto& x : a.cs) r.cs.push_back(rmul(lv - 1, x, c));
  trim_level(lv, r);
  return r;
}

RPoly rpow(int lv, const RPoly& a, int e) {
  RPoly r = rconst(lv, 1);
  for (int i = 0; i < e; ++i) r = rmul(lv, r, a);
  return r;
}

std::optional<RPoly> rdiv(int lv, const RPoly& a, const RPoly& b) {
  if (lv == 0) {
    if (b.c == 0) throw std::domain_error("division by zero");
    if (!mpz_divisible_p(a.c.get_mpz_t(), b.c.get_mpz_t())) return std::nullopt;
    RPoly r;
    mpz_divexact(r.c.get_mpz_t(), a.c.get_mpz_t(), b.c.get_mpz_t());
    return r;
  }
  if (b.cs.empty()) throw std::domain_error("division by zero");
  if (a.cs.empty()) return RPoly{};
  if (rdeg(a) < rdeg(b)) return std::nullopt;
  if (b.cs.size() == 1) {
    RPoly q;
    q.cs.reserve(a.cs.size());
    for (const auto& x : a.cs) {
      if (rzero(lv - 1, x)) {
        q.cs.push_back(x);
        continue;
      }
      auto d = rdiv(lv - 1, x, b.cs[0]);
      if (!d) return std::nullopt;
      q.cs.push_back(std::move(*d));
    }
    return q;
  }
  RPoly q;
  q.cs.assign(rdeg(a) - rdeg(b) + 1, rconst(lv - 1, 0));
  RPoly r = a;
  const RPoly& lb = b.cs.back();
  while (!r.cs.empty() && rdeg(r) >= rdeg(b)) {
    auto qc = rdiv(lv - 1, r.cs.back(), lb);
    if (!qc) return std::nullopt;
    int k = rdeg(r) - rdeg(b);
    for (std::size_t i = 0; i < b.cs.size(); ++i) {
      if (rzero(lv - 1, b.cs[i])) continue;
      r.cs[i + k] = radd(lv - 1, r.cs[i + k], rmul(lv - 1, *qc, b.cs[i]), -1);
    }
    if (!rzero(lv - 1, r.cs.back())) return std::nullopt;
    q.cs[k] = std::move(*qc);
    trim_level(lv, r);
  }
  if (!r.cs.empty()) return std::nullopt;
  trim_level(lv, q);
  return q;
}

RPoly rdiv_exact(int lv, const RPoly& a, const RPoly& b) {
  auto q = rdiv(lv, a, b);
  if (!q) throw std::logic_error("expected exact division");
  return *q;
}

RPoly rdiv_coeffs(int lv, const RPoly& a, const RPoly& c) {
  RPoly r;
  r.cs.reserve(a.cs.size());
  for (const auto& x : a.cs) r.cs.push_back(rzero(lv - 1, x) ? x : rdiv_exact(lv - 1, x, c));
  return r;
}

RPoly rprem(int lv, const RPoly& a, const RPoly& b) {
  RPoly r = a;
  int d = rdeg(a) - rdeg(b) + 1;
  const RPoly& lb = b.cs.back();
  while (!r.cs.empty() && rdeg(r) >= rdeg(b)) {
    int k = rdeg(r) - rdeg(b);
    RPoly lr = r.cs.back();
    RPoly nr;
    nr.cs.assign(r.cs.size(), rconst(lv - 1, 0));
    for (std::size_t i = 0; i < r.cs.size(); ++i)
      if (!rzero(lv - 1, r.cs[i])) nr.cs[i] = rmul(lv - 1, r.cs[i], lb);
    for (std::size_t i = 0; i < b.cs.size(); ++i)
      if (!rzero(lv - 1, b.cs[i])) nr.cs[i + k] = radd(lv - 1, nr.cs[i + k], rmul(lv - 1, lr, b.cs[i]), -1);
    trim_level(lv, nr);
    r = std::move(nr);
    --d;
  }
  if (d > 0 && !r.cs.empty()) r = rscale(lv, r, rpow(lv - 1, lb, d));
  return r;
}

RPoly rgcd(int lv, const RPoly& a, const RPoly& b);

RPoly rcontent(int lv, const RPoly& a) {
  RPoly g = rconst(lv - 1, 0);
  for (const auto& x : a.cs) {
    if (rzero(lv - 1, x)) continue;
    g = rgcd(lv - 1, g, x);
    if (runit(lv - 1, g)) break;
  }
  return g;
}

void rnormalize_sign(int lv, RPoly& p) {
  if (rsign(lv, p) < 0) rneg(lv, p);
}

RPoly rgcd(int lv, const RPoly& a, const RPoly& b) {
  if (rzero(lv, a)) {
    RPoly r = b;
    rnormalize_sign(lv, r);
    return r;
  }
  if (rzero(lv, b)) {
    RPoly r = a;
    rnormalize_sign(lv, r);
    return r;
  }
  if (lv == 0) {
    RPoly r;
    mpz_gcd(r.c.get_mpz_t(), a.c.get_mpz_t(), b.c.get_mpz_t());
    return r;
  }
  RPoly ca = rcontent(lv, a), cb = rcontent(lv, b);
  RPoly c = rgcd(lv - 1, ca, cb);
  RPoly result_content;
  result_content.cs.push_back(c);
  if (rdeg(a) == 0 || rdeg(b) == 0) return result_content;
  RPoly pa = rdiv_coeffs(lv, a, ca), pb = rdiv_coeffs(lv, b, cb);
  if (rdeg(pa) < rdeg(pb)) std::swap(pa, pb);
  RPoly g = rconst(lv - 1, 1), h = rconst(lv - 1, 1);
  while (true) {
    int delta = rdeg(pa) - rdeg(pb);
    RPoly r = rprem(lv, pa, pb);
    if (r.cs.empty()) break;
    if (rdeg(r) == 0) return result_content;
    pa = std::move(pb);
    pb = rdiv_coeffs(lv, r, rmul(lv - 1, g, rpow(lv - 1, h, delta)));
    g = pa.cs.back();
    if (delta > 0) h = rdiv_exact(lv - 1, rpow(lv - 1, g, delta), rpow(lv - 1, h, delta - 1));
  }
  RPoly pp = rdiv_coeffs(lv, pb, rcontent(lv, pb));
  RPoly r = rscale(lv, pp, c);
  rnormalize_sign(lv, r);
  return r;
}

void rinsert(int lv, RPoly& node, const int* e, const mpz_class& c) {
  if (lv == 0) {
    node.c += c;
    return;
  }
  int k = e[lv - 1];
  if (static_cast<int>(node.cs.size()) <= k) node.cs.resize(k + 1, rconst(lv - 1, 0));
  rinsert(lv - 1, node.cs[k], e, c);
}

// p must have nonnegative exponents
RPoly to_rpoly(const LaurentPoly& p) {
  int lv = p.nvars();
  RPoly r = rconst(lv, 0);
  for (std::size_t k = 0; k < p.size(); ++k) rinsert(lv, r, p.exp(k), p.coef(k));
  return r;
}

void collect(int lv, const RPoly& node, std::vector<int>& e, LaurentPoly& out) {
  if (lv == 0) {
    out.push_term(e.data(), node.c);
    return;
  }
  for (std::size_t k = 0; k < node.cs.size(); ++k) {
    e[lv - 1] = static_cast<int>(k);
    collect(lv - 1, node.cs[k], e, out);
  }
  e[lv - 1] = 0;
}

LaurentPoly from_rpoly(int nvars, const RPoly& r) {
  LaurentPoly out(nvars);
  std::vector<int> e(nvars, 0);
  collect(nvars, r, e, out);
  out.canonicalize();
  return out;
}

std::vector<int> negated(std::vector<int> v) {
  for (auto& x : v) x = -x;
  return v;
}

}  // namespace

LaurentPoly normalize_unit(const LaurentPoly& p) {
  if (p.is_zero()) return LaurentPoly(p.nvars());
  LaurentPoly r = p.shifted(negated(p.min_exponents()));
  if (r.coef(0) < 0) r = -r;
  return r;
}

bool unit_equivalent(const LaurentPoly& p, const LaurentPoly& q) {
  return normalize_unit(p) == normalize_unit(q);
}

std::optional<LaurentPoly> exact_div(const LaurentPoly& p, const LaurentPoly& q) {
  if (q.is_zero()) throw std::domain_error("exact_div by zero");
  int n = std::max(p.nvars(), q.nvars());
  if (p.is_zero()) return LaurentPoly(n);
  if (q.is_monomial()) {
    if (!mpz_divisible_p(p.content().get_mpz_t(), q.coef(0).get_mpz_t())) return std::nullopt;
    LaurentPoly r = p.shifted(negated(q.exponent(0)));
    LaurentPoly out(n);
    for (std::size_t k = 0; k < r.size(); ++k) {
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), r.coef(k).get_mpz_t(), q.coef(0).get_mpz_t());
      out.push_term(r.exp(k), c);
    }
    return out;
  }
  std::vector<int> mp = p.min_exponents(), mq = q.min_exponents();
  auto qd = rdiv(n, to_rpoly(p.shifted(negated(mp))), to_rpoly(q.shifted(negated(mq))));
  if (!qd) return std::nullopt;
  std::vector<int> off(n);
  for (int i = 0; i < n; ++i) off[i] = mp[i] - mq[i];
  return from_rpoly(n, *qd).shifted(off);
}

LaurentPoly gcd(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.is_zero()) return normalize_unit(q);
  if (q.is_zero()) return normalize_unit(p);
  int n = p.nvars();
  if (p.is_monomial() || q.is_monomial()) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p.content().get_mpz_t(), q.content().get_mpz_t());
    return LaurentPoly::constant(n, g);
  }
  LaurentPoly a = normalize_unit(p), b = normalize_unit(q);
  if (a == b) return a;
  if (exact_div(b, a)) return a;
  if (exact_div(a, b)) return b;
  return normalize_unit(from_rpoly(n, rgcd(n, to_rpoly(a), to_rpoly(b))));
}

LaurentPoly specialize(const LaurentPoly& p, const IntMatrixRows& a, const std::optional<SignCharacter>& chi) {
  int s = static_cast<int>(a.size());
  int r = p.nvars();
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != r) throw std::invalid_argument("specialize: matrix shape");
  LaurentPoly out(s);
  std::vector<int> e(s);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const int* v = p.exp(k);
    for (int i = 0; i < s; ++i) {
      long acc = 0;
      for (int j = 0; j < r; ++j) acc += a[i][j] * v[j];
      e[i] = static_cast<int>(acc);
    }
    int sign = 1;
    if (chi) {
      const int* src = chi->side == SignCharacter::Side::source ? v : e.data();
      for (std::size_t j = 0; j < chi->signs.size(); ++j)
        if (chi->signs[j] < 0 && (src[j] & 1)) sign = -sign;
    }
    out.push_term(e.data(), sign > 0 ? p.coef(k) : mpz_class(-p.coef(k)));
  }
  out.canonicalize();
  return out;
}

LaurentPoly twist(const LaurentPoly& p, const std::vector<int>& signs) {
  int r = p.nvars();
  IntMatrixRows id(r, std::vector<long>(r, 0));
  for (int i = 0; i < r; ++i) id[i][i] = 1;
  return specialize(p, id, SignCharacter{signs, SignCharacter::Side::source});
}

LaurentPoly parse_poly(const std::string& text, int nvars, const std::vector<std::string>& names) {
  std::vector<std::string> nm = names;
  if (nm.empty()) {
    if (nvars == 1) {
      nm = {"t"};
    } else {
      for (int i = 0; i < nvars; ++i) nm.push_back("x" + std::to_string(i + 1));
    }
  }
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  LaurentPoly out(nvars);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw std::invalid_argument("parse_poly: " + why + " in '" + text + "'"); };
  auto read_int = [&]() {
    std::size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    std::size_t k = j;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) fail("expected integer");
    mpz_class v(s.substr(j, k - j));
    if (s[i] == '-') v = -v;
    i = k;
    return v;
  };
  if (s == "0") return out;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    mpz_class c = 1;
    bool have_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      c = read_int();
      have_coef = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    std::vector<int> e(nvars, 0);
    bool have_var = false;
    while (i < s.size() && s[i] != '+' && s[i] != '-') {
      if (s[i] == '*') {
        ++i;
        continue;
      }
      int best = -1;
      std::size_t blen = 0;
      for (int v = 0; v < nvars; ++v)
        if (s.compare(i, nm[v].size(), nm[v]) == 0 && nm[v].size() > blen) {
          best = v;
          blen = nm[v].size();
        }
      if (best < 0) fail("unknown symbol");
      i += blen;
      int pw = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        bool paren = i < s.size() && s[i] == '(';
        if (paren) ++i;
        pw = static_cast<int>(read_int().get_si());
        if (paren) {
          if (i >= s.size() || s[i] != ')') fail("missing )");
          ++i;
        }
      }
      e[best] += pw;
      have_var = true;
    }
    if (!have_coef && !have_var) fail("empty term");
    out.push_term(e.data(), sign * c);
  }
  out.canonicalize();
  return out;
}

LaurentMatrix::LaurentMatrix(int rows, int cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars),
      entries_(static_cast<std::size_t>(rows) * cols, LaurentPoly(nvars)) {
  row_labels.resize(rows);
  col_labels.resize(cols);
  std::iota(row_labels.begin(), row_labels.end(), 0);
  std::iota(col_labels.begin(), col_labels.end(), 0);
}

LaurentMatrix LaurentMatrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
  LaurentMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()), nvars_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.row_labels[i] = row_labels[rows[i]];
    for (std::size_t j = 0; j < cols.size(); ++j) m.at(i, j) = at(rows[i], cols[j]);
  }
  for (std::size_t j = 0; j < cols.size(); ++j) m.col_labels[j] = col_labels[cols[j]];
  return m;
}

LaurentMatrix LaurentMatrix::map_entries(const IntMatrixRows& a, const std::optional<SignCharacter>& chi) const {
  LaurentMatrix m(rows_, cols_, static_cast<int>(a.size()));
  m.row_labels = row_labels;
  m.col_labels = col_labels;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i, j) = specialize(at(i, j), a, chi);
  return m;
}

std::vector<std::vector<long>> LaurentMatrix::eval_one() const {
  std::vector<std::vector<long>> out(rows_, std::vector<long>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i][j] = at(i, j).eval_one().get_si();
  return out;
}

LaurentPoly determinant(const LaurentMatrix& m) {
  int n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  int nv = m.nvars();
  if (n == 0) return LaurentPoly::constant(nv, 1);
  if (n == 1) return m.at(0, 0);
  if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  std::vector<std::vector<LaurentPoly>> a(n, std::vector<LaurentPoly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
  int sign = 1;
  LaurentPoly prev = LaurentPoly::constant(nv, 1);
  for (int k = 0; k + 1 < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!a[i][k].is_zero() && (piv < 0 || a[i][k].size() < a[piv][k].size())) piv = i;
    if (piv < 0) return LaurentPoly(nv);
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        LaurentPoly t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        if (k > 0) {
          auto q = exact_div(t, prev);
          if (!q) throw std::logic_error("Bareiss division failed");
          t = std::move(*q);
        }
        a[i][j] = std::move(t);
      }
      a[i][k] = LaurentPoly(nv);
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

LaurentPoly cofactor_determinant(const LaurentMatrix& m) {
  int n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return LaurentPoly::constant(m.nvars(), 1);
  LaurentPoly acc(m.nvars());
  std::vector<int> rows(n - 1);
  std::iota(rows.begin(), rows.end(), 1);
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    std::vector<int> cols;
    for (int k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    LaurentPoly t = m.at(0, j) * cofactor_determinant(m.submatrix(rows, cols));
    if (j % 2) acc -= t; else acc += t;
  }
  return acc;
}

}  // namespace veerpoly
