#include "kr/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace kr {

int VarSet::index(const std::string& nm) const {
  for (int i = 0; i < n(); ++i)
    if (names[i] == nm) return i;
  return -1;
}

Ring make_ring(std::vector<std::string> names) {
  auto vs = std::make_shared<VarSet>();
  vs->names = std::move(names);
  return vs;
}

int mono_deg(const Mono& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = (uint16_t)(a[i] + b[i]);
  return r;
}

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
  int da = mono_deg(a), db = mono_deg(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

int Poly::qdeg() const {
  if (t.empty()) throw std::logic_error("qdeg of zero polynomial");
  int d = mono_deg(t.begin()->first);
  if (mono_deg(t.rbegin()->first) != d)
    throw std::logic_error("qdeg of inhomogeneous polynomial " + str());
  return 2 * d;
}

bool Poly::is_homogeneous() const {
  if (t.empty()) return true;
  return mono_deg(t.begin()->first) == mono_deg(t.rbegin()->first);
}

static void add_term(Poly& p, const Mono& m, const mpq_class& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = p.t.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) p.t.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (auto& [m, c] : o.t) add_term(r, m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (auto& [m, c] : o.t) add_term(r, m, mpq_class(-c));
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(ring ? ring : o.ring);
  for (auto& [m1, c1] : t)
    for (auto& [m2, c2] : o.t) add_term(r, mono_mul(m1, m2), mpq_class(c1 * c2));
  return r;
}

Poly Poly::operator-() const { return scaled(mpq_class(-1)); }

Poly Poly::scaled(const mpq_class& c) const {
  Poly r(ring);
  if (sgn(c) == 0) return r;
  for (auto& [m, x] : t) r.t.emplace(m, mpq_class(x * c));
  return r;
}

std::string Poly::str() const {
  if (t.empty()) return "0";
  std::string s;
  // print highest degree first for readability
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string term;
    bool unit = (c == 1), munit = (c == -1), any = false;
    for (size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (any) term += "*";
      term += ring->names[i];
      if (m[i] > 1) term += "^" + std::to_string((int)m[i]);
      any = true;
    }
    if (!any) term = c.get_str();
    else if (munit) term = "-" + term;
    else if (!unit) term = c.get_str() + "*" + term;
    if (!s.empty() && term[0] != '-') s += "+";
    s += term;
  }
  return s;
}

Poly poly_zero(Ring R) { return Poly(std::move(R)); }

Poly poly_const(Ring R, const mpq_class& c) {
  Poly p(R);
  if (sgn(c) != 0) p.t.emplace(Mono(R->n(), 0), c);
  return p;
}

Poly poly_var(Ring R, int i) {
  if (i < 0 || i >= R->n()) throw std::out_of_range("poly_var index");
  Poly p(R);
  Mono m(R->n(), 0);
  m[i] = 1;
  p.t.emplace(m, mpq_class(1));
  return p;
}

Poly poly_mono(Ring R, const Mono& m, const mpq_class& c) {
  Poly p(R);
  if ((int)m.size() != R->n()) throw std::logic_error("poly_mono arity");
  if (sgn(c) != 0) p.t.emplace(m, c);
  return p;
}

Poly substitute(const Poly& p, Ring target, const std::vector<Poly>& images) {
  if ((int)images.size() != p.ring->n())
    throw std::logic_error("substitute: wrong image count");
  std::map<std::pair<int, int>, Poly> pw;  // (var, exp) -> image^exp
  auto power = [&](int v, int e) -> const Poly& {
    auto key = std::make_pair(v, e);
    auto it = pw.find(key);
    if (it != pw.end()) return it->second;
    Poly r = (e == 1) ? images[v] : pw.at({v, e - 1}) * images[v];
    return pw.emplace(key, std::move(r)).first->second;
  };
  // warm powers bottom-up so power() recursion never misses
  Poly out(target);
  for (auto& [m, c] : p.t) {
    Poly term = poly_const(target, c);
    for (size_t v = 0; v < m.size(); ++v) {
      if (!m[v]) continue;
      for (int e = 1; e <= m[v]; ++e) power((int)v, e);
      term = term * power((int)v, m[v]);
    }
    out = out + term;
  }
  return out;
}

std::vector<Mono> monomials_of_degree(Ring R, int q) {
  if (q < 0 || q % 2 != 0)
    throw std::invalid_argument("monomials_of_degree: q-degree must be even and nonnegative, got " +
                                std::to_string(q));
  MonIdx idx(R->n());
  int d = q / 2;
  std::vector<Mono> out;
  int64_t cnt = idx.count(d);
  out.reserve(cnt);
  for (int64_t r = 0; r < cnt; ++r) out.push_back(idx.unrank(r, d));
  return out;
}

MonIdx::MonIdx(int nvars) : n(nvars) {}

int64_t MonIdx::binom(int64_t a, int64_t b) const {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  int64_t r = 1;
  for (int64_t i = 1; i <= b; ++i) {
    r = r * (a - b + i);
    if (r < 0) throw std::overflow_error("MonIdx: binomial overflow");
    r /= i;
  }
  return r;
}

int64_t MonIdx::count(int d) const {
  if (d < 0) return 0;
  if (n == 0) return d == 0 ? 1 : 0;
  return binom(d + n - 1, n - 1);
}

int64_t MonIdx::rank(const Mono& m) const {
  int d = mono_deg(m);
  int64_t r = 0;
  int rem = d;
  for (int i = 0; i + 1 < n; ++i) {
    // monomials whose exponent here exceeds m[i] come first
    for (int f = m[i] + 1; f <= rem; ++f) {
      int mm = n - 1 - i;
      r += binom(rem - f + mm - 1, mm - 1);
    }
    rem -= m[i];
  }
  return r;
}

Mono MonIdx::unrank(int64_t r, int d) const {
  Mono m(n, 0);
  int rem = d;
  for (int i = 0; i + 1 < n; ++i) {
    for (int f = rem; f >= 0; --f) {
      int mm = n - 1 - i;
      int64_t c = binom(rem - f + mm - 1, mm - 1);
      if (r < c) { m[i] = (uint16_t)f; rem -= f; break; }
      r -= c;
    }
  }
  if (n > 0) m[n - 1] = (uint16_t)rem;
  return m;
}

Potential Potential::power(int k) {
  Potential p;
  p.c.assign(k + 1, mpq_class(0));
  p.c[k] = 1;
  return p;
}

bool Potential::is_zero() const {
  for (auto& x : c)
    if (sgn(x) != 0) return false;
  return true;
}

int Potential::deg() const {
  for (int k = (int)c.size() - 1; k >= 0; --k)
    if (sgn(c[k]) != 0) return k;
  return -1;
}

Poly Potential::eval(Ring R, int var) const {
  Poly x = poly_var(R, var), out(R), xp = poly_const(R, 1);
  for (size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) != 0) out = out + xp.scaled(c[k]);
    if (k + 1 < c.size()) xp = xp * x;
  }
  return out;
}

Poly Potential::eval_poly(const Poly& arg) const {
  Poly out(arg.ring), xp = poly_const(arg.ring, 1);
  for (size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) != 0) out = out + xp.scaled(c[k]);
    if (k + 1 < c.size()) xp = xp * arg;
  }
  return out;
}

Poly difference_quotient(const Potential& p, Ring R, int va, int vb) {
  Poly a = poly_var(R, va), b = poly_var(R, vb), out(R);
  // sum_k c_k sum_{s<k} a^s b^{k-1-s}
  std::vector<Poly> apow{poly_const(R, 1)}, bpow{poly_const(R, 1)};
  int dmax = (int)p.c.size() - 1;
  for (int e = 1; e <= dmax; ++e) {
    apow.push_back(apow.back() * a);
    bpow.push_back(bpow.back() * b);
  }
  for (int k = 1; k <= dmax; ++k) {
    if (sgn(p.c[k]) == 0) continue;
    for (int s = 0; s < k; ++s) out = out + (apow[s] * bpow[k - 1 - s]).scaled(p.c[k]);
  }
  return out;
}

}  // namespace kr
