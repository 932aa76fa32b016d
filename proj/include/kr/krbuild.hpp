#pragma once
// Builders from diagrams to complexes: the two term complex of a single
// crossing, the naive complex of a tangle (tensor of crossing complexes over
// one variable per edge, with crossing sum rules used to eliminate internal
// variables), Koszul matrix factorizations of arc diagrams, and the pairwise
// Rouquier tensor for braid words.
#include <array>
#include <map>
#include <string>

#include "kr/chain.hpp"
#include "kr/diagram.hpp"

namespace kr {

// sign + is the projection B -> R with R in homological degree 0; sign - is
// R -> B{-2} by multiplication by t_i - t_k. t holds the variable indices of
// the slots (i, j, k, l), all distinct.
Cplx crossing_complex(int sign, Ring R, const std::array<int, 4>& t);

struct NaiveComplex {
  Cplx C;
  // edge id -> its expression in C.ring; eliminated edges resolve to linear
  // combinations of the surviving ones, boundary edges always survive
  std::map<int, Poly> edge_poly;
};

NaiveComplex naive_complex(const TangleDiagram& T, bool require_acyclic = true);

// one variable per marked point and one Koszul row per arc:
// (t_head - t_tail, (p(t_head) - p(t_tail)) / (t_head - t_tail))
Cplx closure_mf(const PlanarArcDiagram& eta, const Potential& p);

// left to right tensor of per letter crossing complexes over the shared
// middle variables; graded dimensions agree with the naive complex of the
// same braid word
Cplx rouquier_complex(const std::string& word, int strands);

}  // namespace kr
