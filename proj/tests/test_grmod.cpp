#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "kr/field.hpp"
#include "kr/grmod.hpp"
#include "kr/poly.hpp"
#include "support/dense.hpp"

using kr::cyclic_quotient;
using kr::GFp;
using kr::make_ring;
using kr::ModuleMap;
using kr::Poly;
using kr::PresentedModule;
using kr::QQ;
using kr::Ring;
using kr::SVec;
using kr::Workspace;

namespace {

Poly v(Ring R, const char* nm) { return kr::poly_var(R, R->index(nm)); }

template <class F>
int rank_of(const std::vector<SVec<F>>& cols) {
  kr::Echelon<F> E;
  for (auto& c : cols) E.add(c);
  return E.rank();
}

// the two-generator module with relations (a-b)u1 - b(a-b)u0, (c-d)u1 - d(c-d)u0
PresentedModule two_gen_fixture(Ring R, int s0, int s1) {
  Poly a = v(R, "a"), b = v(R, "b"), c = v(R, "c"), d = v(R, "d");
  PresentedModule M;
  M.ring = R;
  M.gens = {s0, s1};
  M.rels = {{-(b * (a - b)), a - b}, {-(d * (c - d)), c - d}};
  M.validate();
  return M;
}

Poly rand_homo(std::mt19937& rng, Ring R, int polydeg) {
  std::uniform_int_distribution<int> coef(-3, 3);
  auto ms = dense::monos(R->n(), polydeg);
  std::uniform_int_distribution<size_t> pick(0, ms.size() - 1);
  Poly p(R);
  for (int tries = 0; tries < 3; ++tries) {
    int c = coef(rng);
    if (c) p = p + kr::poly_mono(R, ms[pick(rng)], c);
  }
  return p;
}

}  // namespace

TEST_SUITE("grmod") {

TEST_CASE("cyclic quotient by a linear form has the dims of one fewer variable") {
  auto R = make_ring({"a", "b"});
  auto M = cyclic_quotient(R, {v(R, "a") - v(R, "b")});
  Workspace<QQ> ws;
  auto h = ws.hilbert_truncated(M, 8);
  CHECK(h == std::vector<int64_t>{1, 0, 1, 0, 1, 0, 1, 0, 1});
}

TEST_CASE("truncated polynomial algebra realizes expected degrees") {
  auto R = make_ring({"a"});
  Poly a = v(R, "a");
  auto M = cyclic_quotient(R, {a * a});
  Workspace<QQ> ws;
  CHECK(ws.realize_dim(M, 0) == 1);
  CHECK(ws.realize_dim(M, 2) == 1);
  CHECK(ws.realize_dim(M, 4) == 0);
  CHECK(ws.realize_dim(M, 3) == 0);
}

TEST_CASE("inhomogeneous relations are rejected") {
  auto R = make_ring({"a", "b"});
  Poly a = v(R, "a");
  CHECK_THROWS(cyclic_quotient(R, {a * a + a}));
}

TEST_CASE("two-generator staircase fixture") {
  auto R = make_ring({"a", "b", "c", "d"});
  auto M = two_gen_fixture(R, 0, 2);
  Workspace<QQ> ws;
  CHECK(ws.realize_dim(M, 0) == 1);
  CHECK(ws.realize_dim(M, 2) == 5);
  for (int q = 0; q <= 8; q += 2) CHECK(ws.realize_dim(M, q) == dense::dim(M, q));

  Workspace<GFp> wp;
  CHECK(wp.realize_dim(M, 2) == 5);
}

TEST_CASE("shifted copies share one staircase up to offset") {
  auto R = make_ring({"a", "b", "c", "d"});
  auto M = two_gen_fixture(R, 0, 2);
  auto Mdown = two_gen_fixture(R, -2, 0);
  Workspace<QQ> ws;
  for (int q = 0; q <= 6; q += 2)
    CHECK(ws.realize_dim(M, q + 2) == ws.realize_dim(Mdown, q));
  CHECK(ws.realize_dim(M.shifted(-2), 0) == ws.realize_dim(M, 2));
}

TEST_CASE("crossing modules: hilbert, projection, multiplication") {
  auto R = make_ring({"ti", "tj", "tk", "tl"});
  Poly ti = v(R, "ti"), tj = v(R, "tj"), tk = v(R, "tk"), tl = v(R, "tl");
  auto Lp = cyclic_quotient(R, {ti + tj - tk - tl, ti * tj - tk * tl});
  auto Ldp = cyclic_quotient(R, {ti - tl, tj - tk});
  Workspace<QQ> ws;

  // free of rank 2 over a two-variable subring, generators in degrees 0 and 2
  auto h = ws.hilbert_truncated(Lp, 4);
  CHECK(h == std::vector<int64_t>{1, 0, 3, 0, 5});

  ModuleMap proj = kr::mult_map(Lp, Ldp, kr::poly_const(R, 1));
  CHECK(proj.degree() == 0);
  for (int q = 0; q <= 8; q += 2) {
    auto cols = ws.realize_map(proj, q);
    CHECK(rank_of(cols) == ws.realize_dim(Ldp, q));  // surjective
  }

  ModuleMap rho = kr::mult_map(Ldp, Lp.shifted(-2), ti - tk);
  CHECK(rho.degree() == 0);
  for (int q = 0; q <= 8; q += 2) {
    auto cols = ws.realize_map(rho, q);
    CHECK(rank_of(cols) == ws.realize_dim(Ldp, q));  // injective
  }
}

TEST_CASE("tensor products") {
  auto R = make_ring({"a", "b"});
  Poly a = v(R, "a"), b = v(R, "b");
  Workspace<QQ> ws;

  auto A = cyclic_quotient(R, {a - b});
  auto B = cyclic_quotient(R, {a});
  auto AB = kr::tensor_modules(A, B);
  CHECK(ws.hilbert_truncated(AB, 4) == std::vector<int64_t>{1, 0, 0, 0, 0});

  auto F2 = kr::free_module(R, {2});
  auto AF = kr::tensor_modules(A, F2);
  CHECK(ws.hilbert_truncated(AF, 8) == ws.hilbert_truncated(A.shifted(2), 8));

  auto R4 = make_ring({"ti", "tj", "tk", "tl"});
  Poly ti = v(R4, "ti"), tj = v(R4, "tj"), tk = v(R4, "tk"), tl = v(R4, "tl");
  auto Lp = cyclic_quotient(R4, {ti + tj - tk - tl, ti * tj - tk * tl});
  auto LL = kr::tensor_modules(Lp, Lp);
  for (int q = 0; q <= 6; q += 2) CHECK(ws.realize_dim(LL, q) == dense::dim(LL, q));
}

TEST_CASE("tensor hilbert obeys the free Cauchy identity") {
  // for free A, B over R: h_A * h_B = h_{A tensor B} * h_R as truncated series
  auto R = make_ring({"a", "b"});
  Workspace<QQ> ws;
  auto A = kr::free_module(R, {0, 2, 4});
  auto B = kr::free_module(R, {0, 2});
  auto AB = kr::tensor_modules(A, B);
  auto hR = ws.hilbert_truncated(kr::free_module(R, {0}), 8);
  auto hA = ws.hilbert_truncated(A, 8);
  auto hB = ws.hilbert_truncated(B, 8);
  auto hAB = ws.hilbert_truncated(AB, 8);
  auto cauchy = [&](const std::vector<int64_t>& x, const std::vector<int64_t>& y, int d) {
    int64_t s = 0;
    for (int k = 0; k <= d; ++k) s += x[k] * y[d - k];
    return s;
  };
  for (int d = 0; d <= 8; ++d) CHECK(cauchy(hA, hB, d) == cauchy(hAB, hR, d));
}

TEST_CASE("direct sums add dimensions") {
  auto R = make_ring({"a", "b"});
  Poly a = v(R, "a"), b = v(R, "b");
  auto A = cyclic_quotient(R, {a - b});
  auto B = cyclic_quotient(R, {a * b}, 2);
  auto S = kr::direct_sum(A, B);
  Workspace<QQ> ws;
  for (int q = 0; q <= 8; ++q)
    CHECK(ws.realize_dim(S, q) == ws.realize_dim(A, q) + ws.realize_dim(B, q));
}

TEST_CASE("dims ignore generator, relation and variable order") {
  auto R = make_ring({"a", "b", "c", "d"});
  auto M = two_gen_fixture(R, 0, 2);

  PresentedModule P;  // generators swapped, relation columns swapped
  P.ring = R;
  P.gens = {M.gens[1], M.gens[0]};
  P.rels = {{M.rels[1][1], M.rels[1][0]}, {M.rels[0][1], M.rels[0][0]}};
  P.validate();

  // variables permuted by a cyclic shift
  auto Rp = make_ring({"d", "a", "b", "c"});
  std::vector<Poly> img = {v(Rp, "a"), v(Rp, "b"), v(Rp, "c"), v(Rp, "d")};
  PresentedModule Q;
  Q.ring = Rp;
  Q.gens = M.gens;
  Q.rels = M.rels;
  for (auto& col : Q.rels)
    for (auto& e : col) e = kr::substitute(e, Rp, img);
  Q.validate();

  Workspace<QQ> ws;
  for (int q = 0; q <= 8; q += 2) {
    auto d0 = ws.realize_dim(M, q);
    CHECK(ws.realize_dim(P, q) == d0);
    CHECK(ws.realize_dim(Q, q) == d0);
  }
}

TEST_CASE("staircase dims match the dense oracle on random presentations") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> nvars(2, 3), ncols(1, 3), ngens(1, 2);
  std::vector<std::string> names = {"a", "b", "c"};
  for (int trial = 0; trial < 25; ++trial) {
    int n = nvars(rng);
    auto R = make_ring(std::vector<std::string>(names.begin(), names.begin() + n));
    PresentedModule M;
    M.ring = R;
    int g = ngens(rng);
    for (int i = 0; i < g; ++i) M.gens.push_back(2 * i);
    int nc = ncols(rng);
    std::uniform_int_distribution<int> cd(1, 3);
    for (int c = 0; c < nc; ++c) {
      int coldeg = 2 * cd(rng) + (g > 1 ? 2 : 0);
      std::vector<Poly> col;
      bool nonzero = false;
      for (int i = 0; i < g; ++i) {
        int pd = (coldeg - M.gens[i]) / 2;
        Poly e = pd >= 0 ? rand_homo(rng, R, pd) : Poly(R);
        nonzero = nonzero || !e.is_zero();
        col.push_back(e);
      }
      if (nonzero) M.rels.push_back(col);
    }
    if (M.rels.empty()) M.rels.push_back(std::vector<Poly>(g, Poly(R)));
    M.validate();
    Workspace<QQ> ws;
    for (int q = 0; q <= 10; ++q) {
      INFO("trial ", trial, " degree ", q);
      CHECK(ws.realize_dim(M, q) == dense::dim(M, q));
    }
  }
}

TEST_CASE("linear renames collapse to a smaller staircase") {
  auto R = make_ring({"a", "b", "c"});
  Poly a = v(R, "a"), b = v(R, "b"), c = v(R, "c");
  Workspace<QQ> ws;

  // chain of scaled identifications, then a real relation
  auto M = cyclic_quotient(R, {a - b.scaled(2), b - c, c * c * c});
  auto R1 = make_ring({"c"});
  Poly cc = kr::poly_var(R1, 0);
  auto Mref = cyclic_quotient(R1, {cc * cc * cc});
  for (int q = 0; q <= 10; ++q) {
    CHECK(ws.realize_dim(M, q) == ws.realize_dim(Mref, q));
    CHECK(ws.realize_dim(M, q) == dense::dim(M, q));
  }

  // a three-term linear form stays in the staircase; dims still match
  auto M3 = cyclic_quotient(R, {a - b + c});
  for (int q = 0; q <= 10; ++q) CHECK(ws.realize_dim(M3, q) == dense::dim(M3, q));
}

TEST_CASE("maps that break relations are rejected loudly") {
  auto R = make_ring({"a", "b"});
  Poly a = v(R, "a"), b = v(R, "b");
  auto M = cyclic_quotient(R, {a});
  auto N = cyclic_quotient(R, {b});
  ModuleMap f = kr::mult_map(M, N, kr::poly_const(R, 1));
  Workspace<QQ> ws;
  CHECK_THROWS(ws.realize_map(f, 2));
}

TEST_CASE("identity realizes to the identity matrix") {
  auto R = make_ring({"a", "b", "c", "d"});
  auto M = two_gen_fixture(R, 0, 2);
  ModuleMap id = kr::mult_map(M, M, kr::poly_const(R, 1));
  Workspace<QQ> ws;
  for (int q = 0; q <= 4; q += 2) {
    auto cols = ws.realize_map(id, q);
    REQUIRE((int64_t)cols.size() == ws.realize_dim(M, q));
    for (size_t i = 0; i < cols.size(); ++i) {
      REQUIRE(cols[i].size() == 1);
      CHECK(cols[i][0].first == (int32_t)i);
      CHECK(cols[i][0].second == QQ(1));
    }
  }
}

TEST_CASE("a two-step composition that annihilates") {
  auto R = make_ring({"a", "b", "c", "d"});
  Poly a = v(R, "a"), b = v(R, "b"), c = v(R, "c"), d = v(R, "d");
  auto M1 = cyclic_quotient(R, {a - b});
  auto M3 = two_gen_fixture(R, -2, 0);
  auto M4 = cyclic_quotient(R, {c - d}, -2);

  ModuleMap f{M1, M3, {{-b}, {kr::poly_const(R, 1)}}};
  ModuleMap g{M3, M4, {{kr::poly_const(R, 1), b}}};
  CHECK(f.degree() == 0);
  CHECK(g.degree() == 0);

  ModuleMap gf = kr::compose(g, f);
  Workspace<QQ> ws;
  for (int q = 0; q <= 6; q += 2) {
    for (auto& col : ws.realize_map(gf, q)) CHECK(col.empty());
    // and the numeric product of the two realized stages vanishes as well
    auto fc = ws.realize_map(f, q);
    auto gc = ws.realize_map(g, q);
    for (auto& col : fc) {
      SVec<QQ> acc;
      for (auto& [l, cf] : col) acc = kr::svec_axpy(acc, cf, gc[l]);
      CHECK(acc.empty());
    }
  }
}

TEST_CASE("the N-family: dims, projection kernel") {
  // placement follows the source's dim tables: the generator sits at +2
  auto R = make_ring({"a", "b", "c", "d"});
  Poly a = v(R, "a"), b = v(R, "b"), c = v(R, "c"), d = v(R, "d");
  auto N1 = cyclic_quotient(R, {a - b - c + d, (b - d) * (c - d)}, 2);
  auto N1alt = cyclic_quotient(R, {a - b + c - d, (b - d) * (c - d)}, 2);
  auto N2 = cyclic_quotient(R, {a - b, c - d}, 2);
  Workspace<QQ> ws;

  CHECK(ws.hilbert_truncated(N2, 4) == std::vector<int64_t>{0, 0, 1, 0, 2});
  for (int q = 0; q <= 8; q += 2) {
    CHECK(ws.realize_dim(N1, q) == dense::dim(N1, q));
    CHECK(ws.realize_dim(N1alt, q) == dense::dim(N1alt, q));
    CHECK(ws.realize_dim(N1, q) == ws.realize_dim(N1alt, q));
  }

  ModuleMap pi = kr::mult_map(N1, N2, kr::poly_const(R, 1));
  for (int q = 0; q <= 8; q += 2) {
    int64_t rk = rank_of(ws.realize_map(pi, q));
    CHECK(rk == ws.realize_dim(N2, q));  // the projection is onto
    int64_t ker = ws.realize_dim(N1, q) - rk;
    // kernel: a polynomial ring in two variables, generator in degree 4
    CHECK(ker == (q >= 4 ? (q - 4) / 2 + 1 : 0));
  }
}

TEST_CASE("quotient by a ring element") {
  auto R = make_ring({"a", "b"});
  Poly a = v(R, "a");
  auto F = kr::free_module(R, {0});
  auto M = kr::quotient_by(F, a);
  Workspace<QQ> ws;
  auto h = ws.hilbert_truncated(M, 6);
  CHECK(h == std::vector<int64_t>{1, 0, 1, 0, 1, 0, 1});
  for (int q = 0; q <= 6; ++q) CHECK(ws.realize_dim(M, q) == dense::dim(M, q));
}

TEST_CASE("realize_element reduces ambient vectors to coordinates") {
  auto R = make_ring({"a", "b"});
  Poly a = v(R, "a"), b = v(R, "b");
  auto M = cyclic_quotient(R, {a - b});
  Workspace<QQ> ws;
  CHECK(ws.realize_element(M, {a - b}, 2).empty());
  auto ca = ws.realize_element(M, {a}, 2);
  auto cb = ws.realize_element(M, {b}, 2);
  REQUIRE(!ca.empty());
  CHECK(ca == cb);
}

}  // TEST_SUITE
