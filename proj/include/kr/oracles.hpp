#pragma once
// Elementary cross-checks for the homology pipelines: Jones via the Kauffman
// bracket state sum, HOMFLYPT by skein recursion on descending diagrams, and
// a cube-of-resolutions sl_2 homology over Q. Deliberately independent of the
// matrix factorization engine; only the diagram structs are shared.
//
// Conventions (the normalization dictionary):
//   jones_kauffman   unreduced, unknot -> q + q^-1, graded Euler
//                    characteristic of the sl_2 cube
//   homfly_skein     reduced, unknot -> 1, skein a P+ - a^-1 P- = z P0,
//                    c-component unlink -> ((a - a^-1)/z)^(c-1)
//   bridge           (q + q^-1) * P(a -> q^-2, z -> q^-1 - q) recovers the
//                    unreduced Jones from the reduced HOMFLYPT
//   khovanov_cube    unreduced tables put the unknot at (0, +-1); reduced
//                    tables put it at (0, 0)
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kr/chain.hpp"
#include "kr/diagram.hpp"

namespace kr {

// integer Laurent polynomial in one variable
struct Laurent1 {
  std::map<int, long long> c;  // exponent -> coefficient, zeros dropped

  static Laurent1 mono(int e, long long k = 1);
  Laurent1 operator+(const Laurent1& o) const;
  Laurent1 operator-(const Laurent1& o) const;
  Laurent1 operator*(const Laurent1& o) const;
  bool operator==(const Laurent1& o) const = default;
  bool is_zero() const { return c.empty(); }
  Laurent1 pow(int n) const;
  std::string str(const std::string& var = "q") const;
};

// throws unless den divides num exactly
Laurent1 divide_exact(const Laurent1& num, const Laurent1& den);

// integer Laurent polynomial in a and z
struct Laurent2 {
  std::map<std::pair<int, int>, long long> c;  // (a exp, z exp) -> coeff

  static Laurent2 mono(int ea, int ez, long long k = 1);
  Laurent2 operator+(const Laurent2& o) const;
  Laurent2 operator-(const Laurent2& o) const;
  Laurent2 operator*(const Laurent2& o) const;
  bool operator==(const Laurent2& o) const = default;
  bool is_zero() const { return c.empty(); }
  Laurent2 pow(int n) const;
  Laurent2 mirror() const;  // a -> a^-1, z -> -z
  std::string str() const;
};

// unreduced Jones polynomial by the bracket state sum, writhe normalized.
// Refuses above 12 crossings.
Laurent1 jones_kauffman(const TangleDiagram& T);

// reduced HOMFLYPT by skein recursion toward descending diagrams, with
// memoized reduction. Refuses above 10 crossings or runaway recursion.
Laurent2 homfly_skein(const TangleDiagram& T);

// (q + q^-1) * P(a -> q^-2, z -> q^-1 - q); sends homfly_skein(T) to
// jones_kauffman(T)
Laurent1 jones_specialization(const Laurent2& P);

struct KhTable {
  std::map<std::pair<int, int>, std::int64_t> dims;  // (hom, q) -> dim

  std::int64_t total() const;
  std::int64_t at(int h, int q) const;
  bool operator==(const KhTable& o) const = default;
  std::string str() const;
};

// cube of resolutions over Q with Frobenius algebra Q[x]/(x^2). The reduced
// complex keeps the basepoint circle labeled x and shifts q by +1; basepoint
// edge -1 means the smallest edge id. Refuses above 9 crossings.
KhTable khovanov_cube(const TangleDiagram& T, bool reduced = false,
                      int basepoint_edge = -1);

// sum of dim * (-1)^h * q^q over the table
Laurent1 euler_char(const KhTable& t);

// generic collapse: entries (sign exponent, q exponent, dim)
Laurent1 euler_char(const std::vector<std::array<std::int64_t, 3>>& entries);

// chain-layer tables: collapse maps a (j, t, q) cell to (sign exponent,
// q exponent). Cells above the certified line throw unless force is set.
Laurent1 euler_char(const DimTable& t,
                    const std::function<std::pair<int, int>(int, int, int)>& collapse,
                    bool force = false);

}  // namespace kr
