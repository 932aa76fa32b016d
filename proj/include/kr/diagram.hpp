#pragma once
// Oriented tangle diagrams and planar arc diagrams: parsing, statistics,
// acyclicity, cycle cutting and composition. Crossing slots are stored in the
// order (i, j, k, l): i and j leave the crossing, k and l enter it, the
// oriented smoothing joins l->i and k->j, and the strands run k->i and l->j.
// Boundary entries carry (eps, edge) with eps +1 where a strand exits the
// tangle and -1 where one enters; the first entry is the basepoint.
#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kr {

struct Crossing {
  int sign = 1;            // +1 or -1
  std::array<int, 4> e{};  // edge ids in slot order i, j, k, l
  bool operator==(const Crossing&) const = default;
};

struct TangleDiagram {
  std::vector<Crossing> crossings;
  // degree-2 vertices carrying crossingless circles: (incoming, outgoing) edge
  std::vector<std::pair<int, int>> markers;
  std::vector<std::pair<int, int>> boundary;  // (eps, edge), basepoint first

  void validate() const;  // every edge has exactly one tail and one head
  bool operator==(const TangleDiagram&) const = default;
};

struct DiagramStats {
  int w = 0;  // writhe
  int b = 0;  // Seifert circles
};

struct ArcEnd {
  int place = 0;  // 0 = outer boundary, 1 + h = hole h
  int idx = 0;    // position in that boundary sequence
  bool operator==(const ArcEnd&) const = default;
  bool operator<(const ArcEnd& o) const {
    return place != o.place ? place < o.place : idx < o.idx;
  }
};

struct PlanarArcDiagram {
  // per hole: (eps, label) sequence, star point first; eps as seen by the
  // tangle that fills the hole
  std::vector<std::vector<std::pair<int, int>>> holes;
  std::vector<std::pair<int, int>> outer;
  std::vector<std::pair<ArcEnd, ArcEnd>> arcs;  // (tail, head)

  void validate() const;  // each point on exactly one arc end, directions ok
  bool operator==(const PlanarArcDiagram&) const = default;
};

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_);
};

TangleDiagram parse_pd(const std::string& text);
TangleDiagram parse_braid(const std::string& word, int strands);

int writhe(const TangleDiagram& T);
DiagramStats stats(const TangleDiagram& T);  // closed diagrams only
bool is_acyclic(const TangleDiagram& T);

// cuts enough back edges to make T acyclic; the arc diagram re-glues them:
// compose(eta, {T_cut}) == T
std::pair<TangleDiagram, PlanarArcDiagram> cut_cycles(const TangleDiagram& T);

PlanarArcDiagram identity_arcs(const TangleDiagram& T);
PlanarArcDiagram braid_closure(int strands);

TangleDiagram compose(const PlanarArcDiagram& eta,
                      const std::vector<TangleDiagram>& tangles);

// JSON text with "holes", "outer" (signed labels, star/basepoint first) and
// "arcs" ([[place, idx], [place, idx]] pairs, place 0 = outer, 1 + h = hole h)
PlanarArcDiagram parse_arcs(const std::string& json_text);

}  // namespace kr
