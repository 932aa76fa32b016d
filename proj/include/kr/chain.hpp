#pragma once
// Complexes, bicomplexes and Z-graded Koszul matrix factorizations over one
// polynomial ring. Terms are presented modules placed at a (vertical j,
// horizontal t) bidegree; arrows are polynomial matrices. dv lowers j by one
// and has q-degree 0; dh moves t by +-1 (the matrix factorization direction)
// and the total dh squares to phi * id. Koszul subset A sits at t = -|A| with
// generator shift sum(qdeg x_r - 2), which makes every d+ component q-degree 2
// and every d- component q-degree (deg phi - 2) regardless of row degrees.
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kr/grmod.hpp"

namespace kr {

struct KoszulRows {
  std::vector<std::pair<Poly, Poly>> rows;
};

Poly rows_potential(Ring R, const KoszulRows& rows);

// [dst gen][src gen]
using PolyMat = std::vector<std::vector<Poly>>;

PolyMat pmat1(Poly p);
PolyMat pmat_mul(Ring R, const PolyMat& A, const PolyMat& B);
bool pmat_zero(const PolyMat& A);

struct Term {
  PresentedModule mod;
  int j = 0;
  int t = 0;
};

struct Cplx {
  Ring ring;
  std::vector<Term> terms;
  std::map<std::pair<int, int>, PolyMat> dv, dh;  // (src term, dst term)
  Poly phi;

  int add_term(PresentedModule m, int j, int t);
  // accumulating: adding onto an existing arrow sums matrices, zero is erased
  void add_dv(int s, int d, PolyMat m);
  void add_dh(int s, int d, PolyMat m);
  const PolyMat* arrow(bool vertical, int s, int d) const;

  void validate() const;
  // (dv+dh)^2 == phi * id, symbolically; checks every source term when the
  // complex has at most max_full terms, otherwise a deterministic sample
  void check_d2(size_t max_full = 64) const;
};

Cplx module_complex(const PresentedModule& M, int j = 0, int t = 0);
Cplx koszul_mf(Ring R, const KoszulRows& rows);
std::pair<KoszulRows, KoszulRows> koszul_split(const KoszulRows& rows, size_t n);

// 2^|rows| terms in the t direction; checks d^2 = phi symbolically
// S/(x_1..x_m) when the x-sequence passes the regularity heuristic
// (pairwise-disjoint-variable linear forms, or vanishing Koszul homology in
// negative t up to the cutoff); force skips the heuristic
PresentedModule collapse_regular(Ring R, const KoszulRows& rows, int cutoff,
                                 bool force = false);

// total tensor complex; right-factor arrows get the sign (-1)^(j+t of the
// left term), potentials add
Cplx mf_tensor(const Cplx& A, const Cplx& B);

// homotopy reduction: cancels pairs of single-generator terms with identical
// presentation joined by a nonzero constant entry, with the usual correction
// -delta (1/c) gamma. A cancellation that would create an arrow outside the
// dv/dh bidegrees is skipped, so mixed bicomplexes reduce only where sound.
Cplx gauss_reduce(Cplx C);

// every term modulo f, arrows unchanged (reduced-homology transform)
Cplx quotient_complex(const Cplx& C, const Poly& f);

struct DimTable {
  // (j, t, q) -> dim; zero dims omitted. For ht tables t is the parity 0/1 of
  // the Koszul degree and the q slot holds the folded degree Q = q + (N-1) t.
  std::map<std::array<int, 3>, int64_t> dims;
  int cutoff = 0;
  int certified = 0;  // q-slot values <= certified are exact

  int64_t at(int j, int t, int q) const;
  int64_t total() const;
  std::string str() const;
  bool operator==(const DimTable& o) const { return dims == o.dims; }
};

}  // namespace kr

#include "kr/chain_impl.hpp"
