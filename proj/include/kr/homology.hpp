#pragma once
// End-user pipelines: sl_N homology and triply graded HOMFLYPT homology of
// closed diagrams, the Hochschild route for braid closures, reduced variants,
// grading normalization, and the IIb comparison harness. A closed diagram is
// cut acyclic, its naive complex is tensored with one Koszul closure row per
// cut, and the engine takes degreewise homology under the chosen potential.
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kr/chain.hpp"
#include "kr/diagram.hpp"
#include "kr/krbuild.hpp"
#include "kr/oracles.hpp"

namespace kr {

int default_cutoff_sln(int N, int crossings);  // 2 (N+1) c + 8
int default_cutoff_homfly(int crossings);      // 4 c + 8

struct SlnResult {
  // cells (homological degree, koszul t parity, q) by default; with full_t
  // the middle slot carries the honest koszul degree of the associated graded
  DimTable table;
  int N = 1;
  int cutoff = 0;
  int w = 0, b = 0;
  bool reduced = false;
  bool full_t = false;
  bool stabilized = false;  // trailing certified window of zeros seen
  std::string status;       // empty when certified cleanly, else a warning
};

struct HomflyResult {
  DimTable table;  // cells (horizontal i, vertical v, q), shifts applied
  int cutoff = 0;
  int w = 0, b = 0;
  std::array<int, 3> shifts{};  // (q, horizontal, vertical) translation
  bool reduced = false;
  std::string status;
};

struct IIbReport {
  HomflyResult first, second;
  // second minus first per (i, v, q) on the common certified window
  std::map<std::array<int, 3>, std::int64_t> difference;
  bool euler_equal = false;
  bool local_model_ok = false;
  bool local_onto = false;
  DimTable local_kernel;  // homology of the quotiented local pair, (j, 0, q)
  std::string classification;  // "identical" | "shift(dq,di,dv)" | "other"
  std::string notes;
};

// naive complex of the cut-open tangle tensored with one closure Koszul row
// (t_head - t_tail, difference quotient of p) per cut, over the cut tangle's
// edge ring. marked_edge resolves to the edge's polynomial in `marked`; the
// pipelines hand that to the engine, which quotients the stage-one homology
// by its action before the vertical pass.
struct ClosureBuild {
  Cplx total;
  NaiveComplex nc;
  DiagramStats st;
  std::optional<Poly> marked;
  int m = 0;           // closure rows
  int np = 0, nm = 0;  // positive and negative crossings
};
ClosureBuild build_closure_complex(const TangleDiagram& T, const Potential& p,
                                   std::optional<int> marked_edge = std::nullopt);

// grading translation by (-w+b, w+b-1, w-b+1) on (q, horizontal, vertical)
// for homfly tables; for sl_N the documented (N, w, b) normalization on
// (homological, q); reduced runs recenter q by one extra tower step
DimTable apply_shifts(const DimTable& t, const DiagramStats& st, bool homfly,
                      int N = 0, bool reduced = false);

// collapse the middle slot: (hom, q) -> dim
std::map<std::pair<int, int>, std::int64_t> hq_dims(const DimTable& t);

// equality of two tables on their common certified window; cells past the
// smaller certified bound are cutoff artifacts and do not count
bool tables_agree(const DimTable& A, const DimTable& B);

// truncated Euler series of a homfly table: sum of (-1)^v a^i q^deg over
// cells with q <= qmax, keyed (a exponent, q exponent) in the Laurent2 slots
Laurent2 homfly_euler_series(const DimTable& t, int qmax);
// Euler series agree on the common exactly-known q window
bool homfly_euler_equal(const HomflyResult& A, const HomflyResult& B);
// Euler series of H equals the skein polynomial times the series of the
// one-circle unit under the frozen dictionary (documented in the README);
// unit must come from the same pipeline flavor (reduced or not) as H
bool homfly_matches_skein(const HomflyResult& H, const Laurent2& P,
                          const HomflyResult& unit);

namespace detail {
DimTable sln_normalize(const DimTable& raw, const DiagramStats& st, int N,
                       int m, bool full_t);
DimTable homfly_normalize(const DimTable& raw, const DiagramStats& st, int m);
Cplx associated_graded(Cplx C);  // drop the t-lowering Koszul components
void finalize_sln(SlnResult& r);
void finalize_homfly(HomflyResult& r);
// the doubled-strand crossing pair of a IIb move, (negative idx, positive idx)
std::optional<std::pair<int, int>> find_iib_pair(const TangleDiagram& T);
TangleDiagram local_pair_tangle(const TangleDiagram& T, int c1, int c2);
}  // namespace detail

template <class F>
SlnResult sln_homology(Workspace<F>& ws, const TangleDiagram& T, int N,
                       int cutoff = -1,
                       std::optional<int> marked_edge = std::nullopt,
                       bool full_t = false);

template <class F>
HomflyResult homfly_homology(Workspace<F>& ws, const TangleDiagram& T,
                             int cutoff = -1,
                             std::optional<int> marked_edge = std::nullopt);

template <class F>
HomflyResult hochschild_route(Workspace<F>& ws, const std::string& word,
                              int strands, int cutoff = -1);

template <class F>
IIbReport iib_report(Workspace<F>& ws, const TangleDiagram& K,
                     const TangleDiagram& Kp, int cutoff = -1);

}  // namespace kr

#include "kr/homology_impl.hpp"
