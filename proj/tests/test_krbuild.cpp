#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "doctest.h"
#include "kr/krbuild.hpp"

using kr::Cplx;
using kr::crossing_complex;
using kr::cyclic_quotient;
using kr::DimTable;
using kr::homology_degreewise;
using kr::make_ring;
using kr::naive_complex;
using kr::parse_braid;
using kr::parse_pd;
using kr::pmat1;
using kr::Poly;
using kr::poly_const;
using kr::poly_var;
using kr::Potential;
using kr::QQ;
using kr::Ring;
using kr::Workspace;

namespace {

Poly v(Ring R, const std::string& nm) { return poly_var(R, R->index(nm)); }

// summed graded dimensions of the terms sitting at each homological degree
std::map<std::pair<int, int>, int64_t> jq_dims(Workspace<QQ>& ws,
                                               const Cplx& C, int D) {
  std::map<std::pair<int, int>, int64_t> out;
  for (auto& T : C.terms) {
    int lo = *std::min_element(T.mod.gens.begin(), T.mod.gens.end());
    for (int q = lo; q <= D; q += 2) {
      int64_t d = ws.realize_dim(T.mod, q);
      if (d) out[{T.j, q}] += d;
    }
  }
  return out;
}

// the four module square that the cut open double crossing tangle produces,
// with the maps 1, e-b, e-b, -1
Cplx handbuilt_square() {
  auto R = make_ring({"a", "b", "c", "d", "e"});
  Poly a = v(R, "a"), b = v(R, "b"), c = v(R, "c"), d = v(R, "d"),
       e = v(R, "e");
  Cplx C;
  C.ring = R;
  C.phi = kr::poly_zero(R);
  int m1 = C.add_term(cyclic_quotient(R, {a - b, (c - d) * (e - d)}, 0), 1, 0);
  int m2 = C.add_term(cyclic_quotient(R, {a - b, c - d}, 0), 0, 0);
  int m3 = C.add_term(
      cyclic_quotient(R, {(a - b) * (e - b), (c - d) * (e - d)}, -2), 0, 0);
  int m4 = C.add_term(cyclic_quotient(R, {(a - b) * (e - b), c - d}, -2), -1,
                      0);
  C.add_dv(m1, m2, pmat1(poly_const(R, 1)));
  C.add_dv(m1, m3, pmat1(e - b));
  C.add_dv(m2, m4, pmat1(e - b));
  C.add_dv(m3, m4, pmat1((poly_const(R, 1)).scaled(-1)));
  C.check_d2();
  return C;
}

}  // namespace

TEST_SUITE("krbuild") {

TEST_CASE("positive crossing complex projects B onto the identified ring") {
  auto R = make_ring({"ti", "tj", "tk", "tl"});
  Cplx C = crossing_complex(1, R, {0, 1, 2, 3});
  REQUIRE(C.terms.size() == 2);
  CHECK(C.terms[0].j == 1);
  CHECK(C.terms[1].j == 0);
  CHECK(C.terms[0].mod.gens == std::vector<int>{0});
  CHECK(C.terms[1].mod.gens == std::vector<int>{0});
  REQUIRE(C.arrow(true, 0, 1) != nullptr);
  CHECK(*C.arrow(true, 0, 1) == pmat1(poly_const(R, 1)));

  Workspace<QQ> ws;
  // the target is a polynomial ring in two identified variables
  CHECK(ws.hilbert_truncated(C.terms[1].mod, 4) ==
        std::vector<int64_t>{1, 0, 2, 0, 3});
  // B is free of rank two over the incoming subring, generators at 0 and 2
  for (int m = 0; m <= 5; ++m)
    CHECK(ws.realize_dim(C.terms[0].mod, 2 * m) == 2 * m + 1);
  // projection is onto in every realized degree
  for (int q = 0; q <= 8; q += 2) {
    auto cols = ws.realize_map(
        kr::mult_map(C.terms[0].mod, C.terms[1].mod, poly_const(R, 1)), q);
    kr::Echelon<QQ> ech;
    for (auto& col : cols) ech.add(col);
    CHECK(ech.rank() == ws.realize_dim(C.terms[1].mod, q));
  }
}

TEST_CASE("negative crossing complex multiplies into the shifted B") {
  auto R = make_ring({"ti", "tj", "tk", "tl"});
  Cplx C = crossing_complex(-1, R, {0, 1, 2, 3});
  REQUIRE(C.terms.size() == 2);
  CHECK(C.terms[0].j == 0);
  CHECK(C.terms[1].j == -1);
  CHECK(C.terms[1].mod.gens == std::vector<int>{-2});
  REQUIRE(C.arrow(true, 0, 1) != nullptr);
  CHECK(*C.arrow(true, 0, 1) == pmat1(v(R, "ti") - v(R, "tk")));

  CHECK_THROWS_AS(crossing_complex(1, R, {0, 1, 2, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(crossing_complex(0, R, {0, 1, 2, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(crossing_complex(1, R, {0, 1, 2, 7}),
                  std::invalid_argument);
}

TEST_CASE("naive complex of one crossing is its crossing complex") {
  auto N = naive_complex(parse_pd("X+[1,2,3,4]"));
  REQUIRE(N.C.terms.size() == 2);
  CHECK(N.C.ring->n() == 4);  // nothing to eliminate
  // masks order the identified-ring term first
  CHECK(N.C.terms[0].j == 0);
  CHECK(N.C.terms[1].j == 1);
  REQUIRE(N.C.arrow(true, 1, 0) != nullptr);
  CHECK(*N.C.arrow(true, 1, 0) == pmat1(poly_const(N.C.ring, 1)));

  Workspace<QQ> ws;
  auto R = make_ring({"ti", "tj", "tk", "tl"});
  Cplx X = crossing_complex(1, R, {0, 1, 2, 3});
  CHECK(ws.hilbert_truncated(N.C.terms[1].mod, 6) ==
        ws.hilbert_truncated(X.terms[0].mod, 6));
  CHECK(ws.hilbert_truncated(N.C.terms[0].mod, 6) ==
        ws.hilbert_truncated(X.terms[1].mod, 6));

  auto M = naive_complex(parse_pd("X-[1,2,3,4]"));
  CHECK(M.C.terms[0].j == -1);
  CHECK(M.C.terms[0].mod.gens == std::vector<int>{-2});
  CHECK(M.C.terms[1].j == 0);
  Ring r = M.C.ring;
  CHECK(*M.C.arrow(true, 1, 0) == pmat1(v(r, "t1") - v(r, "t3")));
}

TEST_CASE("braid generator complex is a bimodule complex over four variables") {
  auto N = naive_complex(parse_braid("1", 2));
  CHECK(N.C.ring->n() == 4);
  REQUIRE(N.C.terms.size() == 2);
  Workspace<QQ> ws;
  CHECK(ws.hilbert_truncated(N.C.terms[1].mod, 4) ==
        std::vector<int64_t>{1, 0, 3, 0, 5});
  CHECK(ws.hilbert_truncated(N.C.terms[0].mod, 4) ==
        std::vector<int64_t>{1, 0, 2, 0, 3});
}

TEST_CASE("identity braids give the diagonal module") {
  auto N = naive_complex(parse_braid("", 3));
  REQUIRE(N.C.terms.size() == 1);
  CHECK(N.C.terms[0].j == 0);
  CHECK(N.C.dv.empty());
  Workspace<QQ> ws;
  CHECK(ws.hilbert_truncated(N.C.terms[0].mod, 4) ==
        std::vector<int64_t>{1, 0, 3, 0, 6});
}

TEST_CASE("internal edges are eliminated against the crossing sum rules") {
  // two crossings in a row share two internal edges; the sum rules only see
  // t3 + t4, so exactly one of them can be removed
  auto N = naive_complex(parse_braid("1 1", 2));
  CHECK(N.C.ring->n() == 5);
  CHECK(N.C.ring->index("t3") == -1);
  CHECK(N.C.ring->index("t4") >= 0);
  CHECK(N.C.terms.size() == 4);
  // boundary edges stay honest variables
  for (int e : {1, 2, 5, 6}) {
    CHECK(N.edge_poly.at(e) ==
          poly_var(N.C.ring, N.C.ring->index("t" + std::to_string(e))));
  }
}

TEST_CASE("the cut open double crossing tangle matches the hand built square") {
  auto T = parse_pd("X-[6,2,1,5] X+[5,3,4,7] B[-1,-4,-7,+2,+3,+6]");
  CHECK(kr::is_acyclic(T));
  auto N = naive_complex(T);
  REQUIRE(N.C.terms.size() == 4);
  CHECK(N.C.ring->n() == 6);  // only the middle edge is internal

  Ring r = N.C.ring;
  CHECK(N.edge_poly.at(5) == v(r, "t6") + v(r, "t2") - v(r, "t1"));

  Cplx H = handbuilt_square();
  // masks: bit0 flips the negative crossing, bit1 the positive one
  int want_j[4] = {-1, 0, 0, 1};
  int hand_of[4] = {3, 1, 2, 0};
  Workspace<QQ> wsn, wsh;
  for (int m = 0; m < 4; ++m) {
    CHECK(N.C.terms[m].j == want_j[m]);
    int lo = N.C.terms[m].mod.gens[0];
    CHECK(lo == H.terms[hand_of[m]].mod.gens[0]);
    for (int q = lo; q <= 10; q += 2)
      CHECK(wsn.realize_dim(N.C.terms[m].mod, q) ==
            wsh.realize_dim(H.terms[hand_of[m]].mod, q));
  }
  DimTable hn = homology_degreewise<QQ>(wsn, N.C, 10);
  DimTable hh = homology_degreewise<QQ>(wsh, H, 10);
  CHECK(hn == hh);
  CHECK(hn.total() > 0);
}

TEST_CASE("stacking two braid generators matches the flat two letter braid") {
  kr::PlanarArcDiagram eta;
  for (int h = 0; h < 2; ++h)
    eta.holes.push_back({{-1, 1}, {-1, 2}, {+1, 1}, {+1, 2}});
  eta.outer = {{-1, 1}, {-1, 2}, {+1, 1}, {+1, 2}};
  eta.arcs.push_back({kr::ArcEnd{0, 0}, kr::ArcEnd{1, 0}});
  eta.arcs.push_back({kr::ArcEnd{0, 1}, kr::ArcEnd{1, 1}});
  eta.arcs.push_back({kr::ArcEnd{1, 2}, kr::ArcEnd{2, 0}});
  eta.arcs.push_back({kr::ArcEnd{1, 3}, kr::ArcEnd{2, 1}});
  eta.arcs.push_back({kr::ArcEnd{2, 2}, kr::ArcEnd{0, 2}});
  eta.arcs.push_back({kr::ArcEnd{2, 3}, kr::ArcEnd{0, 3}});
  auto T2 = kr::compose(eta, {parse_braid("1", 2), parse_braid("1", 2)});
  auto A = naive_complex(T2);
  auto B = naive_complex(parse_braid("1 1", 2));
  Workspace<QQ> wa, wb;
  CHECK(jq_dims(wa, A.C, 10) == jq_dims(wb, B.C, 10));
  CHECK(homology_degreewise<QQ>(wa, A.C, 10) ==
        homology_degreewise<QQ>(wb, B.C, 10));
}

TEST_CASE("closure rows follow the arcs of the diagram") {
  Cplx Z = kr::closure_mf(kr::braid_closure(2), Potential::power(3));
  CHECK(Z.terms.size() == 4);  // two Koszul rows
  Ring r = Z.ring;
  Poly want = Potential::power(3).eval(r, r->index("h0p0")) +
              Potential::power(3).eval(r, r->index("h0p1")) -
              Potential::power(3).eval(r, r->index("h0p2")) -
              Potential::power(3).eval(r, r->index("h0p3"));
  CHECK(Z.phi == want);

  kr::PlanarArcDiagram one;
  one.holes.push_back({{+1, 1}, {-1, 1}});
  one.arcs.push_back({kr::ArcEnd{1, 0}, kr::ArcEnd{1, 1}});
  Cplx W = kr::closure_mf(one, Potential::zero());
  REQUIRE(W.terms.size() == 2);
  CHECK(W.phi.is_zero());
  Ring rw = W.ring;
  REQUIRE(W.arrow(false, 1, 0) != nullptr);
  CHECK(*W.arrow(false, 1, 0) == pmat1(v(rw, "h0p1") - v(rw, "h0p0")));
  CHECK(W.arrow(false, 0, 1) == nullptr);  // the p = 0 side vanishes

  Cplx G = kr::closure_mf(kr::braid_closure(3), Potential::power(4));
  CHECK(G.terms.size() == 8);
  CHECK(!G.phi.is_zero());
}

TEST_CASE("rouquier tensor agrees with the naive complex") {
  for (auto& [word, strands] : std::vector<std::pair<std::string, int>>{
           {"", 2}, {"1", 2}, {"1 1", 2}, {"-1", 2}, {"1 -1", 2}}) {
    Cplx Rq = kr::rouquier_complex(word, strands);
    auto N = naive_complex(parse_braid(word, strands));
    CHECK(Rq.terms.size() == N.C.terms.size());
    Workspace<QQ> wr, wn;
    CHECK(jq_dims(wr, Rq, 8) == jq_dims(wn, N.C, 8));
    CHECK(homology_degreewise<QQ>(wr, Rq, 8) ==
          homology_degreewise<QQ>(wn, N.C, 8));
  }
  CHECK_THROWS_AS(kr::rouquier_complex("3", 2), std::invalid_argument);
}

TEST_CASE("naive complex refuses tangles with oriented cycles") {
  CHECK_THROWS_AS(naive_complex(parse_pd("O[1]")), std::invalid_argument);
  auto N = naive_complex(parse_pd("O[1]"), false);
  // a free circle keeps its variable in the ring with no relation
  CHECK(N.C.ring->n() == 1);
  CHECK(N.C.terms.size() == 1);
  Workspace<QQ> ws;
  CHECK(ws.hilbert_truncated(N.C.terms[0].mod, 4) ==
        std::vector<int64_t>{1, 0, 1, 0, 1});
}

}  // TEST_SUITE
