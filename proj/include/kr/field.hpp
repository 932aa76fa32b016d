#pragma once
// Exact coefficient fields for the degreewise linear algebra: Q via GMP
// rationals, and F_p with a runtime modulus (default 32003).
#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kr {

struct QQ {
  mpq_class v;
  QQ() : v(0) {}
  QQ(long a) : v(a) {}
  explicit QQ(mpq_class q) : v(std::move(q)) {}
  static QQ from_rational(const mpq_class& q) { return QQ(q); }
  static const char* name() { return "Q"; }
  bool is_zero() const { return sgn(v) == 0; }
  QQ operator+(const QQ& o) const { return QQ(mpq_class(v + o.v)); }
  QQ operator-(const QQ& o) const { return QQ(mpq_class(v - o.v)); }
  QQ operator*(const QQ& o) const { return QQ(mpq_class(v * o.v)); }
  QQ operator-() const { return QQ(mpq_class(-v)); }
  QQ inv() const {
    if (is_zero()) throw std::domain_error("QQ: division by zero");
    return QQ(mpq_class(1 / v));
  }
  bool operator==(const QQ& o) const { return v == o.v; }
  std::string str() const { return v.get_str(); }
};

// Prime field with a process-global modulus. Set once before any arithmetic;
// pipelines read it when the CLI passes --field f<p>.
struct GFp {
  static uint64_t& modulus() {
    static uint64_t m = 32003;
    return m;
  }
  uint64_t v = 0;
  GFp() = default;
  GFp(long a) {
    long long m = (long long)modulus();
    long long r = (long long)(a % m);
    if (r < 0) r += m;
    v = (uint64_t)r;
  }
  static GFp from_uint(uint64_t a) {
    GFp x;
    x.v = a % modulus();
    return x;
  }
  static GFp from_rational(const mpq_class& q) {
    mpz_class m((unsigned long)modulus());
    mpz_class num = q.get_num() % m;
    if (num < 0) num += m;
    mpz_class den = q.get_den() % m;
    if (den == 0)
      throw std::domain_error("GFp: denominator divisible by modulus " + std::to_string(modulus()));
    GFp n = from_uint(num.get_ui()), d = from_uint(den.get_ui());
    return n * d.inv();
  }
  static std::string name() { return "F" + std::to_string(modulus()); }
  bool is_zero() const { return v == 0; }
  GFp operator+(const GFp& o) const { return from_uint(v + o.v); }
  GFp operator-(const GFp& o) const { return from_uint(v + modulus() - o.v); }
  GFp operator*(const GFp& o) const {
    return from_uint((uint64_t)((__uint128_t)v * o.v % modulus()));
  }
  GFp operator-() const { return from_uint(modulus() - v % modulus()); }
  GFp inv() const {
    if (v == 0) throw std::domain_error("GFp: division by zero");
    // extended euclid on (v, p)
    int64_t a = (int64_t)v, b = (int64_t)modulus();
    int64_t x0 = 1, x1 = 0;
    while (b) {
      int64_t q = a / b;
      int64_t t = a - q * b; a = b; b = t;
      t = x0 - q * x1; x0 = x1; x1 = t;
    }
    if (a != 1) throw std::domain_error("GFp: modulus not prime?");
    GFp r((long)x0);
    return r;
  }
  bool operator==(const GFp& o) const { return v == o.v; }
  std::string str() const { return std::to_string(v); }
};

}  // namespace kr
