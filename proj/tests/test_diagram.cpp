#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "kr/diagram.hpp"

using kr::ArcEnd;
using kr::braid_closure;
using kr::compose;
using kr::Crossing;
using kr::cut_cycles;
using kr::identity_arcs;
using kr::is_acyclic;
using kr::parse_arcs;
using kr::parse_braid;
using kr::parse_pd;
using kr::ParseError;
using kr::PlanarArcDiagram;
using kr::stats;
using kr::TangleDiagram;
using kr::writhe;

namespace {

// three positive crossings wired as the closure of a two strand braid
const char* TREFOIL_PD = "X+[3,4,8,7] X+[5,6,4,3] X+[7,8,6,5]";

TangleDiagram mirror(TangleDiagram T) {
  for (auto& c : T.crossings) c.sign = -c.sign;
  return T;
}

TangleDiagram sorted_markers(TangleDiagram T) {
  std::sort(T.markers.begin(), T.markers.end());
  return T;
}

std::string random_word(std::mt19937& rng, int strands, int len) {
  std::uniform_int_distribution<int> letter(1, strands - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::string w;
  for (int k = 0; k < len; ++k) {
    w += std::to_string(letter(rng) * (coin(rng) ? 1 : -1));
    w += ' ';
  }
  return w;
}

}  // namespace

TEST_SUITE("diagram") {

TEST_CASE("a lone crossing parses with a synthesized boundary") {
  TangleDiagram T = parse_pd("X+[1,2,3,4]");
  REQUIRE(T.crossings.size() == 1);
  CHECK(T.crossings[0].sign == 1);
  CHECK(T.crossings[0].e == std::array<int, 4>{1, 2, 3, 4});
  CHECK(T.markers.empty());
  // inputs come first, ids ascending, then outputs
  std::vector<std::pair<int, int>> want{{-1, 3}, {-1, 4}, {+1, 1}, {+1, 2}};
  CHECK(T.boundary == want);
  CHECK(writhe(T) == 1);
  CHECK(is_acyclic(T));

  TangleDiagram M = parse_pd("X-[1,2,3,4]");
  CHECK(M.crossings[0].sign == -1);
  CHECK(writhe(M) == -1);
}

TEST_CASE("an explicit boundary declaration fixes the point order") {
  TangleDiagram S = parse_pd("X+[1,2,3,4]");
  TangleDiagram E = parse_pd("X+[1,2,3,4] B[-3,-4,+1,+2]");
  CHECK(S == E);
  TangleDiagram P = parse_pd("X+[1,2,3,4] B[+1,-3,-4,+2]");
  std::vector<std::pair<int, int>> want{{+1, 1}, {-1, 3}, {-1, 4}, {+1, 2}};
  CHECK(P.boundary == want);
}

TEST_CASE("the trefoil pd text is a closed three crossing diagram") {
  TangleDiagram T = parse_pd(TREFOIL_PD);
  CHECK(T.crossings.size() == 3);
  CHECK(T.boundary.empty());
  CHECK(!is_acyclic(T));
  auto st = stats(T);
  CHECK(st.w == 3);
  CHECK(st.b == 2);
}

TEST_CASE("parse errors carry the position of the offending text") {
  // edge 1 gets one tail and two heads
  try {
    parse_pd("X+[1,2,3,4] X+[5,6,1,2]\nX+[7,8,1,9]");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col == 1);
    CHECK(std::string(e.what()).find("used 3 times") != std::string::npos);
  }

  // two tails, no head
  CHECK_THROWS_AS(parse_pd("X+[1,2,3,4] X+[1,5,6,7]"), ParseError);
  try {
    parse_pd("X+[1,2,3,4] X+[1,5,6,7]");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("inconsistent orientation") !=
          std::string::npos);
  }

  // B naming an edge nobody else uses leaves it dangling
  CHECK_THROWS_AS(parse_pd("O[1] B[+2]"), ParseError);

  try {
    parse_pd("\n  Y[0]");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 3);
  }

  CHECK_THROWS_AS(parse_pd("X+[1,2,3]"), ParseError);
  CHECK_THROWS_AS(parse_pd("X+[1,2,3,4"), ParseError);
  CHECK_THROWS_AS(parse_pd("X+[1,2,3,x]"), ParseError);
  CHECK_THROWS_AS(parse_pd("O[1] B[1]"), ParseError);  // sign required
  CHECK_THROWS_AS(parse_pd("O[1] B[+1] B[-1]"), ParseError);
}

TEST_CASE("braid words parse to acyclic tangles with the expected wiring") {
  TangleDiagram T = parse_braid("1 1 1", 2);
  CHECK(T.crossings.size() == 3);
  for (auto& c : T.crossings) CHECK(c.sign == 1);
  CHECK(is_acyclic(T));
  std::vector<std::pair<int, int>> want{{-1, 1}, {-1, 2}, {+1, 8}, {+1, 7}};
  CHECK(T.boundary == want);

  TangleDiagram I = parse_braid("", 3);
  CHECK(I.crossings.empty());
  CHECK(I.boundary.size() == 6);
  for (int s = 0; s < 3; ++s) {
    CHECK(I.boundary[s] == std::pair<int, int>{-1, s + 1});
    CHECK(I.boundary[3 + s] == std::pair<int, int>{+1, s + 1});
  }

  TangleDiagram R2 = parse_braid("1 -1", 2);
  CHECK(R2.crossings.size() == 2);
  CHECK(writhe(R2) == 0);

  CHECK_THROWS_AS(parse_braid("2", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_braid("0", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_braid("x", 2), std::invalid_argument);
}

TEST_CASE("writhe and seifert circle counts of small closures") {
  TangleDiagram tre = compose(braid_closure(2), {parse_braid("1 1 1", 2)});
  auto st = stats(tre);
  CHECK(st.w == 3);
  CHECK(st.b == 2);
  // the closure built by hand matches the composed one
  CHECK(tre == parse_pd(TREFOIL_PD));

  TangleDiagram circ = parse_pd("O[1]");
  CHECK(stats(circ).w == 0);
  CHECK(stats(circ).b == 1);

  TangleDiagram neg = compose(braid_closure(2), {parse_braid("-1", 2)});
  CHECK(stats(neg).w == -1);
  CHECK(stats(neg).b == 2);

  CHECK_THROWS_AS(stats(parse_braid("1", 2)), std::invalid_argument);
  CHECK(writhe(parse_braid("1", 2)) == 1);
}

TEST_CASE("acyclicity of braids, crossings and closed components") {
  CHECK(is_acyclic(parse_braid("1 -2 1 2", 3)));
  CHECK(is_acyclic(parse_pd("X-[1,2,3,4]")));
  CHECK(!is_acyclic(parse_pd("O[1]")));
  CHECK(!is_acyclic(parse_pd(TREFOIL_PD)));
  // open tangle with a closed component hiding next to it
  TangleDiagram mixed = parse_braid("1", 2);
  mixed.markers.push_back({9, 9});
  mixed.validate();
  CHECK(!is_acyclic(mixed));
}

TEST_CASE("cutting an acyclic tangle is the identity") {
  TangleDiagram T = parse_braid("1 -1 2", 3);
  auto [C, eta] = cut_cycles(T);
  CHECK(C == T);
  CHECK(eta == identity_arcs(T));
  CHECK(compose(eta, {C}) == T);
}

TEST_CASE("cutting opens closed components and composition restores them") {
  TangleDiagram circ = parse_pd("O[1]");
  auto [C, eta] = cut_cycles(circ);
  CHECK(is_acyclic(C));
  CHECK(C.boundary.size() == 2);
  CHECK(compose(eta, {C}) == circ);

  TangleDiagram tre = parse_pd(TREFOIL_PD);
  auto [Ct, et] = cut_cycles(tre);
  CHECK(is_acyclic(Ct));
  CHECK(compose(et, {Ct}) == tre);

  // several components, one of them crossingless
  TangleDiagram multi = parse_pd("X+[3,4,8,7] X+[5,6,4,3] X+[7,8,6,5] O[9]");
  auto [Cm, em] = cut_cycles(multi);
  CHECK(is_acyclic(Cm));
  CHECK(compose(em, {Cm}) == multi);
}

TEST_CASE("round trips through cut and compose on random closures") {
  std::mt19937 rng(20260816);
  for (int it = 0; it < 24; ++it) {
    int d = 2 + (int)(rng() % 3);
    int len = (int)(rng() % 7);
    TangleDiagram braid = parse_braid(random_word(rng, d, len), d);
    TangleDiagram closed = compose(braid_closure(d), {braid});
    closed.validate();
    CHECK(stats(closed).w == writhe(braid));
    auto [C, eta] = cut_cycles(closed);
    CHECK(is_acyclic(C));
    CHECK(compose(eta, {C}) == closed);
    CHECK(compose(identity_arcs(braid), {braid}) == braid);
  }
}

TEST_CASE("closing strands one at a time matches closing them at once") {
  std::mt19937 rng(7);
  for (int it = 0; it < 12; ++it) {
    TangleDiagram sigma = parse_braid(random_word(rng, 2, (int)(rng() % 5)), 2);
    TangleDiagram flat = compose(braid_closure(2), {sigma});

    PlanarArcDiagram first;  // closes strand two, passes strand one through
    first.holes.push_back({{-1, 1}, {-1, 2}, {+1, 1}, {+1, 2}});
    first.outer = {{-1, 1}, {+1, 1}};
    first.arcs.push_back({ArcEnd{0, 0}, ArcEnd{1, 0}});
    first.arcs.push_back({ArcEnd{1, 3}, ArcEnd{1, 1}});
    first.arcs.push_back({ArcEnd{1, 2}, ArcEnd{0, 1}});
    TangleDiagram nested =
        compose(braid_closure(1), {compose(first, {sigma})});

    CHECK(nested.crossings == flat.crossings);
    CHECK(nested.boundary == flat.boundary);
    CHECK(sorted_markers(nested) == sorted_markers(flat));
  }
}

TEST_CASE("composing tangles with clashing edge names renames consistently") {
  PlanarArcDiagram eta;  // two independent two strand closures
  for (int h = 0; h < 2; ++h)
    eta.holes.push_back({{-1, 1}, {-1, 2}, {+1, 1}, {+1, 2}});
  for (int h = 1; h <= 2; ++h) {
    eta.arcs.push_back({ArcEnd{h, 2}, ArcEnd{h, 0}});
    eta.arcs.push_back({ArcEnd{h, 3}, ArcEnd{h, 1}});
  }
  TangleDiagram R =
      compose(eta, {parse_braid("1", 2), parse_braid("1 1 1", 2)});
  CHECK(R.crossings.size() == 4);
  CHECK(R.boundary.empty());
  auto st = stats(R);
  CHECK(st.w == 4);
  CHECK(st.b == 4);
}

TEST_CASE("composition rejects shape and orientation mismatches") {
  CHECK_THROWS_AS(compose(braid_closure(2), {}), std::invalid_argument);
  CHECK_THROWS_AS(compose(braid_closure(2), {parse_braid("1", 3)}),
                  std::invalid_argument);
  try {
    compose(braid_closure(2),
            {parse_pd("X+[1,2,3,4] B[+1,-3,-4,+2]")});
    FAIL("expected an orientation mismatch");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("hole 0 position 0") !=
          std::string::npos);
  }
}

TEST_CASE("mirroring flips the writhe and keeps the circle count") {
  std::mt19937 rng(99);
  for (int it = 0; it < 10; ++it) {
    int d = 2 + (int)(rng() % 2);
    TangleDiagram closed = compose(
        braid_closure(d), {parse_braid(random_word(rng, d, 1 + (int)(rng() % 5)), d)});
    auto a = stats(closed);
    auto b = stats(mirror(closed));
    CHECK(b.w == -a.w);
    CHECK(b.b == a.b);
  }
}

TEST_CASE("arc diagrams parse from json") {
  PlanarArcDiagram eta = parse_arcs(
      R"({"holes": [[-1, -2, 1, 2]], "outer": [],
          "arcs": [[[1, 2], [1, 0]], [[1, 3], [1, 1]]]})");
  CHECK(eta == braid_closure(2));
  CHECK(compose(eta, {parse_braid("1 1 1", 2)}) == parse_pd(TREFOIL_PD));

  CHECK_THROWS_AS(parse_arcs("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_arcs(R"({"holes": [], "outer": []})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_arcs(R"({"holes": [[0]], "outer": [], "arcs": []})"),
                  std::invalid_argument);
  // head against the declared orientation
  CHECK_THROWS_AS(
      parse_arcs(
          R"({"holes": [[-1, 1]], "outer": [], "arcs": [[[1, 0], [1, 1]]]})"),
      std::invalid_argument);
  // a point on two arcs
  CHECK_THROWS_AS(
      parse_arcs(
          R"({"holes": [[-1, -2, 1, 2]], "outer": [],
              "arcs": [[[1, 2], [1, 0]], [[1, 2], [1, 1]]]})"),
      std::invalid_argument);
}

TEST_CASE("tangle validation catches broken gluings") {
  TangleDiagram T;
  T.crossings.push_back({1, {1, 2, 3, 4}});
  CHECK_THROWS_AS(T.validate(), std::invalid_argument);  // all four dangle
  T.boundary = {{-1, 3}, {-1, 4}, {+1, 1}, {+1, 2}};
  T.validate();
  T.crossings[0].sign = 2;
  CHECK_THROWS_AS(T.validate(), std::invalid_argument);
}

}  // TEST_SUITE
