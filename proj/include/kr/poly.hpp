#pragma once
// Multivariate polynomials over Q with the q-grading deg(x) = 2 for every
// variable. Rings are immutable shared var lists; all polys in one complex
// share one ring. Monomial indexing (rank/unrank within a fixed degree) is
// what the degreewise realization engine runs on.
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace kr {

struct VarSet {
  std::vector<std::string> names;
  int n() const { return (int)names.size(); }
  int index(const std::string& nm) const;  // -1 if absent
};
using Ring = std::shared_ptr<const VarSet>;
Ring make_ring(std::vector<std::string> names);

using Mono = std::vector<uint16_t>;

int mono_deg(const Mono& m);
Mono mono_mul(const Mono& a, const Mono& b);

// total degree ascending, then lexicographically descending exponent vectors
struct GrlexLess {
  bool operator()(const Mono& a, const Mono& b) const;
};

struct Poly {
  Ring ring;
  std::map<Mono, mpq_class, GrlexLess> t;

  Poly() = default;
  explicit Poly(Ring r) : ring(std::move(r)) {}

  bool is_zero() const { return t.empty(); }
  // q-degree of a homogeneous poly (2 * exponent sum); throws if mixed
  int qdeg() const;
  bool is_homogeneous() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const mpq_class& c) const;
  bool operator==(const Poly& o) const { return ring == o.ring ? t == o.t : str() == o.str(); }
  std::string str() const;
};

Poly poly_zero(Ring R);
Poly poly_const(Ring R, const mpq_class& c);
Poly poly_var(Ring R, int i);
Poly poly_mono(Ring R, const Mono& m, const mpq_class& c);

// images: one target-ring poly per source variable
Poly substitute(const Poly& p, Ring target, const std::vector<Poly>& images);

// monomials of q-degree q in canonical order; throws on odd or negative q
std::vector<Mono> monomials_of_degree(Ring R, int q);

// rank/unrank of degree-d monomials in n vars, canonical (descending lex) order
struct MonIdx {
  int n;
  explicit MonIdx(int nvars);
  int64_t count(int d) const;           // number of monomials of degree d
  int64_t rank(const Mono& m) const;
  Mono unrank(int64_t r, int d) const;
 private:
  int64_t binom(int64_t a, int64_t b) const;
};

// one-variable potential p = sum c[k] x^k with exact coefficients
struct Potential {
  std::vector<mpq_class> c;
  static Potential zero() { return {}; }
  static Potential power(int k);  // x^k
  bool is_zero() const;
  int deg() const;  // polynomial degree, -1 if zero
  Poly eval(Ring R, int var) const;
  Poly eval_poly(const Poly& arg) const;
};

// (p(a) - p(b)) / (a - b), expanded exactly (no division performed)
Poly difference_quotient(const Potential& p, Ring R, int va, int vb);

}  // namespace kr
