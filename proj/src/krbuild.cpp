#include "kr/krbuild.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kr {

namespace {

PresentedModule soergel_B(Ring R, const std::array<Poly, 4>& t, int shift) {
  std::vector<Poly> rels;
  Poly lin = t[0] + t[1] - t[2] - t[3];
  if (!lin.is_zero()) rels.push_back(lin);
  Poly quad = t[0] * t[1] - t[2] * t[3];
  if (!quad.is_zero()) rels.push_back(quad);
  return cyclic_quotient(R, rels, shift);
}

PresentedModule soergel_R(Ring R, const std::array<Poly, 4>& t, int shift) {
  std::vector<Poly> rels;
  Poly r0 = t[0] - t[3];
  if (!r0.is_zero()) rels.push_back(r0);
  Poly r1 = t[1] - t[2];
  if (!r1.is_zero()) rels.push_back(r1);
  return cyclic_quotient(R, rels, shift);
}

}  // namespace

Cplx crossing_complex(int sign, Ring R, const std::array<int, 4>& t) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("crossing_complex: sign must be +1 or -1");
  for (int a = 0; a < 4; ++a) {
    if (t[a] < 0 || t[a] >= R->n())
      throw std::invalid_argument("crossing_complex: unknown variable");
    for (int b = a + 1; b < 4; ++b)
      if (t[a] == t[b])
        throw std::invalid_argument("crossing_complex: repeated variable");
  }
  std::array<Poly, 4> v{poly_var(R, t[0]), poly_var(R, t[1]),
                        poly_var(R, t[2]), poly_var(R, t[3])};
  Cplx C;
  C.ring = R;
  C.phi = poly_zero(R);
  if (sign > 0) {
    int a = C.add_term(soergel_B(R, v, 0), 1, 0);
    int b = C.add_term(soergel_R(R, v, 0), 0, 0);
    C.add_dv(a, b, pmat1(poly_const(R, 1)));
  } else {
    int a = C.add_term(soergel_R(R, v, 0), 0, 0);
    int b = C.add_term(soergel_B(R, v, -2), -1, 0);
    C.add_dv(a, b, pmat1(v[0] - v[2]));
  }
  C.validate();
  C.check_d2();
  return C;
}

NaiveComplex naive_complex(const TangleDiagram& T, bool require_acyclic) {
  T.validate();
  if (require_acyclic && !is_acyclic(T))
    throw std::invalid_argument("naive_complex: tangle has an oriented cycle");
  int nc = (int)T.crossings.size();
  if (nc > 20)
    throw std::invalid_argument("naive_complex: too many crossings");

  std::set<int> eset;
  for (auto& c : T.crossings)
    for (int e : c.e) eset.insert(e);
  for (auto& [in, out] : T.markers) {
    eset.insert(in);
    eset.insert(out);
  }
  for (auto& [eps, e] : T.boundary) eset.insert(e);
  std::vector<int> edges(eset.begin(), eset.end());
  std::map<int, int> col;
  for (size_t i = 0; i < edges.size(); ++i) col[edges[i]] = (int)i;
  int nE = (int)edges.size();
  std::vector<char> eliminable(nE, 1);
  for (auto& [eps, e] : T.boundary) eliminable[col[e]] = 0;

  // every crossing sum rule t_i + t_j - t_k - t_l and marker identification
  // annihilates every term, so they can be used to substitute internal
  // variables away
  std::vector<std::vector<mpq_class>> raw;
  for (auto& c : T.crossings) {
    std::vector<mpq_class> r(nE, 0);
    r[col[c.e[0]]] += 1;
    r[col[c.e[1]]] += 1;
    r[col[c.e[2]]] -= 1;
    r[col[c.e[3]]] -= 1;
    raw.push_back(std::move(r));
  }
  for (auto& [in, out] : T.markers) {
    if (in == out) continue;
    std::vector<mpq_class> r(nE, 0);
    r[col[in]] += 1;
    r[col[out]] -= 1;
    raw.push_back(std::move(r));
  }

  std::vector<std::vector<mpq_class>> kept;
  std::vector<int> pivcol;
  for (auto row : raw) {
    for (size_t r = 0; r < kept.size(); ++r) {
      mpq_class f = row[pivcol[r]];
      if (f == 0) continue;
      for (int v = 0; v < nE; ++v) row[v] -= f * kept[r][v];
    }
    int piv = -1;
    for (int v = 0; v < nE; ++v)
      if (row[v] != 0 && eliminable[v]) {
        piv = v;
        break;
      }
    if (piv < 0) continue;
    mpq_class lead = row[piv];
    for (int v = 0; v < nE; ++v) row[v] /= lead;
    kept.push_back(std::move(row));
    pivcol.push_back(piv);
  }
  // back substitution so each pivot resolves to free variables only
  for (size_t r = 0; r < kept.size(); ++r)
    for (size_t r2 = 0; r2 < kept.size(); ++r2) {
      if (r == r2) continue;
      mpq_class f = kept[r2][pivcol[r]];
      if (f == 0) continue;
      for (int v = 0; v < nE; ++v) kept[r2][v] -= f * kept[r][v];
    }

  std::vector<char> ispiv(nE, 0);
  for (int p : pivcol) ispiv[p] = 1;
  std::vector<std::string> names;
  std::vector<int> var_of(nE, -1);
  for (int v = 0; v < nE; ++v)
    if (!ispiv[v]) {
      var_of[v] = (int)names.size();
      names.push_back("t" + std::to_string(edges[v]));
    }
  Ring R = make_ring(names);

  std::map<int, Poly> edge_poly;
  for (int v = 0; v < nE; ++v) {
    if (!ispiv[v]) {
      edge_poly[edges[v]] = poly_var(R, var_of[v]);
      continue;
    }
    size_t r = 0;
    while (pivcol[(int)r] != v) ++r;
    Poly p = poly_zero(R);
    for (int w = 0; w < nE; ++w) {
      if (w == v || kept[r][w] == 0) continue;
      p = p + poly_var(R, var_of[w]).scaled(-kept[r][w]);
    }
    edge_poly[edges[v]] = p;
  }
  auto ex = [&](int e) { return edge_poly.at(e); };

  struct XFactor {
    PresentedModule hi, lo;  // the state at higher j and at lower j
    Poly flip;               // entry of the arrow hi -> lo
    int jhi, jlo, negative;
  };
  std::vector<XFactor> xf;
  for (auto& c : T.crossings) {
    std::array<Poly, 4> v{ex(c.e[0]), ex(c.e[1]), ex(c.e[2]), ex(c.e[3])};
    XFactor f;
    f.negative = c.sign < 0;
    if (c.sign > 0) {
      f.hi = soergel_B(R, v, 0);
      f.lo = soergel_R(R, v, 0);
      f.flip = poly_const(R, 1);
      f.jhi = 1;
      f.jlo = 0;
    } else {
      f.hi = soergel_R(R, v, 0);
      f.lo = soergel_B(R, v, -2);
      f.flip = v[0] - v[2];
      f.jhi = 0;
      f.jlo = -1;
    }
    xf.push_back(std::move(f));
  }
  std::vector<Poly> mrels;
  for (auto& [in, out] : T.markers) {
    Poly r = ex(in) - ex(out);
    if (!r.is_zero()) mrels.push_back(r);
  }

  NaiveComplex out;
  out.edge_poly = edge_poly;
  Cplx& C = out.C;
  C.ring = R;
  C.phi = poly_zero(R);

  auto state = [&](int mask, int x) { return (mask >> x) & 1; };
  std::vector<int> idx(size_t(1) << nc);
  for (int mask = 0; mask < (1 << nc); ++mask) {
    std::vector<Poly> rels;
    int j = 0, shift = 0;
    for (int x = 0; x < nc; ++x) {
      const XFactor& f = xf[x];
      const PresentedModule& M = state(mask, x) ? f.hi : f.lo;
      for (auto& colv : M.rels) rels.push_back(colv[0]);
      j += state(mask, x) ? f.jhi : f.jlo;
      shift += M.gens[0];
    }
    for (auto& r : mrels) rels.push_back(r);
    idx[mask] = C.add_term(cyclic_quotient(R, rels, shift), j, 0);
  }
  for (int mask = 0; mask < (1 << nc); ++mask)
    for (int x = 0; x < nc; ++x) {
      if (!state(mask, x)) continue;
      int par = 0;
      for (int y = 0; y < x; ++y)
        par ^= (state(mask, y) ^ (xf[y].negative ? 1 : 0)) & 1;
      Poly entry = par ? xf[x].flip.scaled(-1) : xf[x].flip;
      if (entry.is_zero()) continue;
      C.add_dv(idx[mask], idx[mask ^ (1 << x)], pmat1(entry));
    }

  C.validate();
  C.check_d2();
  return out;
}

Cplx closure_mf(const PlanarArcDiagram& eta, const Potential& p) {
  eta.validate();
  std::vector<std::string> names;
  std::map<std::pair<int, int>, int> pt;  // (place, idx) -> variable
  for (size_t i = 0; i < eta.outer.size(); ++i) {
    pt[{0, (int)i}] = (int)names.size();
    names.push_back("o" + std::to_string(i));
  }
  for (size_t h = 0; h < eta.holes.size(); ++h)
    for (size_t i = 0; i < eta.holes[h].size(); ++i) {
      pt[{(int)h + 1, (int)i}] = (int)names.size();
      names.push_back("h" + std::to_string(h) + "p" + std::to_string(i));
    }
  Ring R = make_ring(names);
  KoszulRows rows;
  for (auto& [tail, head] : eta.arcs) {
    int vt = pt.at({tail.place, tail.idx});
    int vh = pt.at({head.place, head.idx});
    rows.rows.push_back({poly_var(R, vh) - poly_var(R, vt),
                         difference_quotient(p, R, vh, vt)});
  }
  return koszul_mf(R, rows);
}

Cplx rouquier_complex(const std::string& word, int strands) {
  TangleDiagram B = parse_braid(word, strands);  // also validates the word
  std::set<int> eset;
  for (auto& [eps, e] : B.boundary) eset.insert(e);
  for (auto& c : B.crossings)
    for (int e : c.e) eset.insert(e);
  std::vector<std::string> names;
  std::map<int, int> var;
  for (int e : eset) {
    var[e] = (int)names.size();
    names.push_back("t" + std::to_string(e));
  }
  Ring R = make_ring(names);

  Cplx cur = module_complex(cyclic_quotient(R, {}, 0), 0, 0);
  cur.phi = poly_zero(R);
  for (auto& c : B.crossings) {
    Cplx X = crossing_complex(
        c.sign, R,
        {var.at(c.e[0]), var.at(c.e[1]), var.at(c.e[2]), var.at(c.e[3])});
    cur = mf_tensor(cur, X);
  }
  cur.check_d2();
  return cur;
}

}  // namespace kr
