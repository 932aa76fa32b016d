#include "kr/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace kr {

ParseError::ParseError(const std::string& msg, int line_, int col_)
    : std::runtime_error("line " + std::to_string(line_) + ", col " +
                         std::to_string(col_) + ": " + msg),
      line(line_),
      col(col_) {}

namespace {

struct Uses {
  int tails = 0, heads = 0;
};

// tails: crossing slots i, j, marker out, boundary entry points (-1)
// heads: crossing slots k, l, marker in, boundary exit points (+1)
std::map<int, Uses> edge_uses(const TangleDiagram& T) {
  std::map<int, Uses> u;
  for (auto& c : T.crossings) {
    u[c.e[0]].tails++;
    u[c.e[1]].tails++;
    u[c.e[2]].heads++;
    u[c.e[3]].heads++;
  }
  for (auto& [in, out] : T.markers) {
    u[in].heads++;
    u[out].tails++;
  }
  for (auto& [eps, e] : T.boundary) {
    if (eps > 0)
      u[e].heads++;
    else
      u[e].tails++;
  }
  return u;
}

int max_edge_id(const TangleDiagram& T) {
  int m = -1;
  for (auto& c : T.crossings)
    for (int e : c.e) m = std::max(m, e);
  for (auto& [in, out] : T.markers) m = std::max(m, std::max(in, out));
  for (auto& [eps, e] : T.boundary) m = std::max(m, e);
  return m;
}

struct UF {
  std::map<int, int> p;
  int find(int x) {
    auto it = p.find(x);
    if (it == p.end() || it->second == x) return x;
    return it->second = find(it->second);
  }
  // a's representative wins
  void unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra != rb) p[rb] = ra;
  }
};

}  // namespace

void TangleDiagram::validate() const {
  for (auto& c : crossings)
    if (c.sign != 1 && c.sign != -1)
      throw std::invalid_argument("tangle: crossing sign must be +1 or -1");
  for (auto& [eps, e] : boundary)
    if (eps != 1 && eps != -1)
      throw std::invalid_argument("tangle: boundary sign must be +1 or -1");
  for (auto& [e, u] : edge_uses(*this)) {
    if (u.tails != 1 || u.heads != 1) {
      std::ostringstream os;
      os << "tangle: edge " << e << " has " << u.tails << " tail(s) and "
         << u.heads << " head(s)";
      throw std::invalid_argument(os.str());
    }
  }
}

namespace {

struct Tok {
  std::string s;
  int line, col;
};

std::vector<Tok> lex_tokens(const std::string& text) {
  std::vector<Tok> out;
  int line = 1, col = 1;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (isspace((unsigned char)c)) {
      ++col;
      ++i;
      continue;
    }
    size_t j = i;
    int c0 = col;
    while (j < text.size() && !isspace((unsigned char)text[j])) {
      ++j;
      ++col;
    }
    out.push_back({text.substr(i, j - i), line, c0});
    i = j;
  }
  return out;
}

int edge_id_at(const Tok& t, const std::string& field) {
  int v = 0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size() || v < 0)
    throw ParseError("bad edge id '" + field + "'", t.line, t.col);
  return v;
}

std::vector<std::string> bracket_fields(const Tok& t, size_t name_len) {
  const std::string& s = t.s;
  if (s.size() < name_len + 2 || s[name_len] != '[' || s.back() != ']')
    throw ParseError("malformed token '" + s + "'", t.line, t.col);
  std::string inner = s.substr(name_len + 1, s.size() - name_len - 2);
  std::vector<std::string> out;
  if (inner.empty()) return out;
  size_t p = 0;
  while (true) {
    size_t q = inner.find(',', p);
    if (q == std::string::npos) {
      out.push_back(inner.substr(p));
      break;
    }
    out.push_back(inner.substr(p, q - p));
    p = q + 1;
  }
  return out;
}

}  // namespace

TangleDiagram parse_pd(const std::string& text) {
  TangleDiagram T;
  bool have_boundary = false;
  std::map<int, Tok> first_use;

  for (const Tok& t : lex_tokens(text)) {
    const std::string& s = t.s;
    if (s.size() >= 2 && s[0] == 'X' && (s[1] == '+' || s[1] == '-')) {
      auto f = bracket_fields(t, 2);
      if (f.size() != 4)
        throw ParseError(
            "crossing needs 4 edges, got " + std::to_string(f.size()), t.line,
            t.col);
      Crossing c;
      c.sign = (s[1] == '+') ? 1 : -1;
      for (int k = 0; k < 4; ++k) {
        c.e[k] = edge_id_at(t, f[k]);
        first_use.emplace(c.e[k], t);
      }
      T.crossings.push_back(c);
    } else if (s.size() >= 2 && s[0] == 'O' && s[1] == '[') {
      auto f = bracket_fields(t, 1);
      if (f.size() != 1) throw ParseError("marker takes one edge", t.line, t.col);
      int e = edge_id_at(t, f[0]);
      first_use.emplace(e, t);
      T.markers.push_back({e, e});
    } else if (s.size() >= 2 && s[0] == 'B' && s[1] == '[') {
      if (have_boundary)
        throw ParseError("duplicate boundary declaration", t.line, t.col);
      have_boundary = true;
      for (auto& f : bracket_fields(t, 1)) {
        if (f.empty() || (f[0] != '+' && f[0] != '-'))
          throw ParseError("boundary entries need a sign: '" + f + "'", t.line,
                           t.col);
        int e = edge_id_at(t, f.substr(1));
        first_use.emplace(e, t);
        T.boundary.push_back({f[0] == '+' ? 1 : -1, e});
      }
    } else {
      throw ParseError("unknown token '" + s + "'", t.line, t.col);
    }
  }

  if (!have_boundary) {
    // open ends become boundary points, inputs first, ids ascending
    auto inner = edge_uses(T);
    for (auto& [e, u] : inner)
      if (u.tails == 0 && u.heads == 1) T.boundary.push_back({-1, e});
    for (auto& [e, u] : inner)
      if (u.tails == 1 && u.heads == 0) T.boundary.push_back({+1, e});
  }

  for (auto& [e, u] : edge_uses(T)) {
    const Tok& w = first_use.at(e);
    if (u.tails + u.heads > 2)
      throw ParseError("edge " + std::to_string(e) + " used " +
                           std::to_string(u.tails + u.heads) + " times",
                       w.line, w.col);
    if (u.tails == 2 || u.heads == 2)
      throw ParseError("edge " + std::to_string(e) +
                           " has inconsistent orientation",
                       w.line, w.col);
    if (u.tails + u.heads < 2)
      throw ParseError("edge " + std::to_string(e) + " is dangling", w.line,
                       w.col);
  }
  return T;
}

TangleDiagram parse_braid(const std::string& word, int strands) {
  if (strands < 1)
    throw std::invalid_argument("parse_braid: need at least one strand");
  TangleDiagram T;
  std::vector<int> cur(strands);
  for (int s = 0; s < strands; ++s) cur[s] = s + 1;
  const std::vector<int> inputs = cur;
  int next = strands + 1;

  std::istringstream in(word);
  std::string tok;
  while (in >> tok) {
    int v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || v == 0 ||
        std::abs(v) >= strands)
      throw std::invalid_argument("parse_braid: letter '" + tok +
                                  "' out of range");
    int s = std::abs(v) - 1;  // left strand of the pair, 0-based
    int ei = next++;          // right-top
    int ej = next++;          // left-top
    Crossing c;
    c.sign = v > 0 ? 1 : -1;
    c.e = {ei, ej, cur[s], cur[s + 1]};
    T.crossings.push_back(c);
    // strands run k -> i and l -> j, so the pair swaps positions
    cur[s] = ej;
    cur[s + 1] = ei;
  }
  for (int s = 0; s < strands; ++s) T.boundary.push_back({-1, inputs[s]});
  for (int s = 0; s < strands; ++s) T.boundary.push_back({+1, cur[s]});
  T.validate();
  return T;
}

int writhe(const TangleDiagram& T) {
  int w = 0;
  for (auto& c : T.crossings) w += c.sign;
  return w;
}

DiagramStats stats(const TangleDiagram& T) {
  if (!T.boundary.empty())
    throw std::invalid_argument("stats: circle count needs a closed diagram");
  UF uf;
  std::set<int> edges;
  for (auto& c : T.crossings) {
    for (int e : c.e) edges.insert(e);
    uf.unite(c.e[3], c.e[0]);  // the oriented smoothing joins l->i
    uf.unite(c.e[2], c.e[1]);  // and k->j
  }
  for (auto& [in, out] : T.markers) {
    edges.insert(in);
    edges.insert(out);
    uf.unite(in, out);
  }
  std::set<int> reps;
  for (int e : edges) reps.insert(uf.find(e));
  return {writhe(T), (int)reps.size()};
}

namespace {

struct Graph {
  int nv = 0;
  std::vector<std::vector<int>> out;  // per vertex, edge ids in slot order
  std::map<int, int> head;            // edge -> head vertex, -1 at boundary
};

Graph build_graph(const TangleDiagram& T) {
  Graph G;
  int nc = (int)T.crossings.size();
  G.nv = nc + (int)T.markers.size();
  G.out.resize(G.nv);
  for (int v = 0; v < nc; ++v) {
    G.out[v] = {T.crossings[v].e[0], T.crossings[v].e[1]};
    G.head[T.crossings[v].e[2]] = v;
    G.head[T.crossings[v].e[3]] = v;
  }
  for (size_t m = 0; m < T.markers.size(); ++m) {
    G.out[nc + (int)m] = {T.markers[m].second};
    G.head[T.markers[m].first] = nc + (int)m;
  }
  for (auto& [eps, e] : T.boundary)
    if (eps > 0) G.head[e] = -1;
  return G;
}

// all back edges of the depth-first search over the fixed vertex and slot
// ordering; removing them leaves a directed acyclic graph
std::vector<int> back_edges(const TangleDiagram& T) {
  Graph G = build_graph(T);
  std::vector<int> color(G.nv, 0), cut;
  std::vector<std::pair<int, size_t>> stack;
  for (int root = 0; root < G.nv; ++root) {
    if (color[root]) continue;
    color[root] = 1;
    stack.push_back({root, 0});
    while (!stack.empty()) {
      int v = stack.back().first;
      size_t i = stack.back().second;
      if (i == G.out[v].size()) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      stack.back().second++;
      int e = G.out[v][i];
      auto it = G.head.find(e);
      int h = (it == G.head.end()) ? -1 : it->second;
      if (h < 0) continue;
      if (color[h] == 1) {
        cut.push_back(e);
        continue;
      }
      if (color[h] == 0) {
        color[h] = 1;
        stack.push_back({h, 0});
      }
    }
  }
  return cut;
}

}  // namespace

bool is_acyclic(const TangleDiagram& T) { return back_edges(T).empty(); }

std::pair<TangleDiagram, PlanarArcDiagram> cut_cycles(const TangleDiagram& T) {
  T.validate();
  std::vector<int> cuts = back_edges(T);
  TangleDiagram C = T;
  int fresh = max_edge_id(T) + 1;

  for (int e : cuts) {
    int ne = fresh++;
    // the head occurrence of e moves to the fresh id; the tail keeps e
    bool done = false;
    for (auto& c : C.crossings) {
      for (int k = 2; k < 4 && !done; ++k)
        if (c.e[k] == e) {
          c.e[k] = ne;
          done = true;
        }
      if (done) break;
    }
    if (!done)
      for (auto& m : C.markers)
        if (m.first == e) {
          m.first = ne;
          done = true;
          break;
        }
    C.boundary.push_back({+1, e});
    C.boundary.push_back({-1, ne});
  }
  C.validate();

  PlanarArcDiagram eta;
  eta.outer = T.boundary;
  eta.holes.push_back(C.boundary);
  size_t nb = T.boundary.size();
  for (size_t p = 0; p < nb; ++p) {
    if (T.boundary[p].first > 0)
      eta.arcs.push_back({ArcEnd{1, (int)p}, ArcEnd{0, (int)p}});
    else
      eta.arcs.push_back({ArcEnd{0, (int)p}, ArcEnd{1, (int)p}});
  }
  for (size_t c = 0; c < cuts.size(); ++c) {
    int pout = (int)(nb + 2 * c);
    eta.arcs.push_back({ArcEnd{1, pout}, ArcEnd{1, pout + 1}});
  }
  eta.validate();
  return {C, eta};
}

PlanarArcDiagram identity_arcs(const TangleDiagram& T) {
  PlanarArcDiagram eta;
  eta.outer = T.boundary;
  eta.holes.push_back(T.boundary);
  for (size_t p = 0; p < T.boundary.size(); ++p) {
    if (T.boundary[p].first > 0)
      eta.arcs.push_back({ArcEnd{1, (int)p}, ArcEnd{0, (int)p}});
    else
      eta.arcs.push_back({ArcEnd{0, (int)p}, ArcEnd{1, (int)p}});
  }
  eta.validate();
  return eta;
}

PlanarArcDiagram braid_closure(int strands) {
  if (strands < 1)
    throw std::invalid_argument("braid_closure: need at least one strand");
  PlanarArcDiagram eta;
  std::vector<std::pair<int, int>> hole;
  for (int s = 0; s < strands; ++s) hole.push_back({-1, s + 1});
  for (int s = 0; s < strands; ++s) hole.push_back({+1, s + 1});
  eta.holes.push_back(hole);
  for (int s = 0; s < strands; ++s)
    eta.arcs.push_back({ArcEnd{1, strands + s}, ArcEnd{1, s}});
  eta.validate();
  return eta;
}

void PlanarArcDiagram::validate() const {
  auto eps_at = [&](const ArcEnd& p) -> int {
    if (p.place < 0 || p.place > (int)holes.size())
      throw std::invalid_argument("arc diagram: bad arc place");
    const auto& seq = p.place == 0 ? outer : holes[p.place - 1];
    if (p.idx < 0 || p.idx >= (int)seq.size())
      throw std::invalid_argument("arc diagram: arc endpoint out of range");
    return seq[p.idx].first;
  };
  std::map<std::pair<int, int>, int> cover;
  for (auto& [tail, head] : arcs) {
    // a strand leaves a filled hole where the tangle exits, and leaves the
    // outer boundary where the composed tangle will receive an input
    if (tail.place == 0 ? eps_at(tail) != -1 : eps_at(tail) != 1)
      throw std::invalid_argument("arc diagram: arc tail against orientation");
    if (head.place == 0 ? eps_at(head) != 1 : eps_at(head) != -1)
      throw std::invalid_argument("arc diagram: arc head against orientation");
    cover[{tail.place, tail.idx}]++;
    cover[{head.place, head.idx}]++;
  }
  size_t npts = outer.size();
  for (auto& h : holes) npts += h.size();
  if (cover.size() != npts || arcs.size() * 2 != npts)
    throw std::invalid_argument(
        "arc diagram: boundary points and arc ends do not match up");
  for (auto& [pt, n] : cover)
    if (n != 1)
      throw std::invalid_argument("arc diagram: boundary point on two arcs");
}

TangleDiagram compose(const PlanarArcDiagram& eta,
                      const std::vector<TangleDiagram>& tangles) {
  eta.validate();
  if (eta.holes.size() != tangles.size())
    throw std::invalid_argument(
        "compose: " + std::to_string(eta.holes.size()) + " hole(s) but " +
        std::to_string(tangles.size()) + " tangle(s)");
  for (size_t h = 0; h < tangles.size(); ++h) {
    auto& hb = eta.holes[h];
    auto& tb = tangles[h].boundary;
    if (hb.size() != tb.size())
      throw std::invalid_argument(
          "compose: hole " + std::to_string(h) + " has " +
          std::to_string(hb.size()) + " points, tangle has " +
          std::to_string(tb.size()));
    for (size_t p = 0; p < hb.size(); ++p)
      if (hb[p].first != tb[p].first)
        throw std::invalid_argument("compose: hole " + std::to_string(h) +
                                    " position " + std::to_string(p) +
                                    ": orientation mismatch");
  }

  // deterministic renaming into one namespace: first come, first kept
  std::vector<TangleDiagram> ts = tangles;
  int top = -1;
  for (auto& t : ts) top = std::max(top, max_edge_id(t));
  int fresh = top + 1;
  std::set<int> used;
  for (auto& t : ts) {
    std::set<int> ids;
    for (auto& c : t.crossings)
      for (int e : c.e) ids.insert(e);
    for (auto& [in, out] : t.markers) {
      ids.insert(in);
      ids.insert(out);
    }
    for (auto& [eps, e] : t.boundary) ids.insert(e);
    std::map<int, int> ren;
    for (int e : ids) ren[e] = used.count(e) ? fresh++ : e;
    for (auto& [from, to] : ren) used.insert(to);
    auto ap = [&](int e) { return ren.at(e); };
    for (auto& c : t.crossings)
      for (int& e : c.e) e = ap(e);
    for (auto& [in, out] : t.markers) {
      in = ap(in);
      out = ap(out);
    }
    for (auto& [eps, e] : t.boundary) e = ap(e);
  }

  // glue along arcs; the tail side of each arc keeps its edge id
  UF uf;
  std::vector<int> outer_edge(eta.outer.size(), -1);
  auto hole_edge = [&](const ArcEnd& p) {
    return ts[p.place - 1].boundary[p.idx].second;
  };
  for (auto& [tail, head] : eta.arcs) {
    if (tail.place > 0 && head.place > 0)
      uf.unite(hole_edge(tail), hole_edge(head));
    else if (tail.place > 0)
      outer_edge[head.idx] = hole_edge(tail);
    else if (head.place > 0)
      outer_edge[tail.idx] = hole_edge(head);
    else {
      int f = fresh++;
      outer_edge[tail.idx] = f;
      outer_edge[head.idx] = f;
    }
  }

  TangleDiagram R;
  for (auto& t : ts)
    for (auto c : t.crossings) {
      for (int& e : c.e) e = uf.find(e);
      R.crossings.push_back(c);
    }
  for (auto& t : ts)
    for (auto m : t.markers)
      R.markers.push_back({uf.find(m.first), uf.find(m.second)});
  for (size_t p = 0; p < eta.outer.size(); ++p)
    R.boundary.push_back({eta.outer[p].first, uf.find(outer_edge[p])});

  // a through strand closed up by arcs leaves no vertex behind; it becomes a
  // marked circle
  std::set<int> incident;
  for (auto& c : R.crossings)
    for (int e : c.e) incident.insert(e);
  for (auto& [in, out] : R.markers) {
    incident.insert(in);
    incident.insert(out);
  }
  for (auto& [eps, e] : R.boundary) incident.insert(e);
  std::set<int> reps;
  for (auto& t : ts) {
    for (auto& [eps, e] : t.boundary) reps.insert(uf.find(e));
  }
  for (int r : reps)
    if (!incident.count(r)) R.markers.push_back({r, r});

  R.validate();
  return R;
}

}  // namespace kr
