#pragma once
// template implementation for the realization engine
#include <cassert>

#include "kr/grmod.hpp"

namespace kr {

namespace detail {
// union-find with multiplicative weights: x_v = coef * x_root
struct WeightedUF {
  std::vector<int> parent;
  std::vector<mpq_class> w;  // x_v = w[v] * x_parent[v]
  explicit WeightedUF(int n) : parent(n), w(n, mpq_class(1)) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  std::pair<int, mpq_class> find(int v) {
    if (parent[v] == v) return {v, mpq_class(1)};
    auto [r, c] = find(parent[v]);
    parent[v] = r;
    w[v] *= c;
    return {r, w[v]};
  }
  // record x_a = c * x_b; returns false if roots already equal (caller keeps the relation)
  bool unite(int a, const mpq_class& c, int b) {
    auto [ra, ca] = find(a);
    auto [rb, cb] = find(b);
    if (ra == rb) return false;
    // x_a = ca x_ra, x_b = cb x_rb, x_a = c x_b  =>  x_ra = (c cb / ca) x_rb
    mpq_class k = c * cb / ca;
    if (ra < rb) {  // keep the smaller index as root: x_rb = (1/k) x_ra
      parent[rb] = ra;
      w[rb] = 1 / k;
    } else {
      parent[ra] = rb;
      w[ra] = k;
    }
    return true;
  }
};
}  // namespace detail

template <class F>
ModReal<F>::ModReal(const PresentedModule& m) : M(m), midx(0) {
  M.validate();
  int nv = M.ring->n();
  ren = Renames::identity(nv);
  if (M.ngens() == 1) {
    detail::WeightedUF uf(nv);
    // fixpoint: apply current identifications, then look for fresh 2-term linear relations
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& col : M.rels) {
        const Poly& p = col[0];
        if (p.is_zero() || p.qdeg() != 2) continue;
        // rewrite via current classes: coeff per root
        std::map<int, mpq_class> acc;
        for (auto& [mo, c] : p.t) {
          int v = -1;
          for (int i = 0; i < nv; ++i)
            if (mo[i]) { v = i; break; }
          auto [r, cw] = uf.find(v);
          acc[r] += c * cw;
        }
        for (auto it = acc.begin(); it != acc.end();)
          it = (sgn(it->second) == 0) ? acc.erase(it) : std::next(it);
        if (acc.size() == 2) {
          auto i1 = acc.begin(), i2 = std::next(i1);
          // c1 x_{v1} + c2 x_{v2} = 0  =>  x_{v1} = (-c2/c1) x_{v2}
          mpq_class c = -i2->second / i1->second;
          if (uf.unite(i1->first, c, i2->first)) changed = true;
        }
      }
    }
    for (int v = 0; v < nv; ++v) {
      auto [r, c] = uf.find(v);
      ren.repr[v] = r;
      ren.coef[v] = c;
    }
  }
  std::vector<std::string> kept;
  amb2red.assign(nv, -1);
  for (int v = 0; v < nv; ++v)
    if (ren.repr[v] == v) {
      amb2red[v] = (int)keep.size();
      keep.push_back(v);
      kept.push_back(M.ring->names[v]);
    }
  rring = make_ring(kept);
  midx = MonIdx((int)kept.size());
  // rewrite relation columns over the reduced ring, dropping columns that die
  for (auto& col : M.rels) {
    std::vector<Poly> rc;
    bool nz = false;
    for (auto& p : col) {
      Poly q(rring);
      for (auto& [mo, c] : p.t) {
        auto [cc, rm] = reduce_mono(mo);
        Poly term = poly_mono(rring, rm, mpq_class(c * cc));
        q = q + term;
      }
      nz = nz || !q.is_zero();
      rc.push_back(std::move(q));
    }
    if (nz) rrels.push_back(std::move(rc));
  }
}

template <class F>
std::pair<mpq_class, Mono> ModReal<F>::reduce_mono(const Mono& amb) const {
  mpq_class c(1);
  Mono r(keep.size(), 0);
  for (size_t v = 0; v < amb.size(); ++v) {
    if (!amb[v]) continue;
    int root = ren.repr[v];
    if (ren.coef[v] != 1) {
      mpq_class p = ren.coef[v];
      for (int e = 1; e < amb[v]; ++e) p *= ren.coef[v];
      c *= p;
    }
    r[amb2red[root]] = (uint16_t)(r[amb2red[root]] + amb[v]);
  }
  return {c, r};
}

template <class F>
int ModReal<F>::minshift() const {
  int s = 0;
  for (size_t i = 0; i < M.gens.size(); ++i) s = i ? std::min(s, M.gens[i]) : M.gens[i];
  return s;
}

template <class F>
int64_t ModReal<F>::label_of(const Deg& D, int g, const Mono& m) const {
  for (auto& [gg, off] : D.genoff)
    if (gg == g) return off + midx.rank(m);
  return -1;
}

template <class F>
SVec<F> ModReal<F>::to_labels(const Deg& D, const std::vector<Poly>& elem) const {
  SVec<F> out;
  for (auto& [g, off] : D.genoff) {
    const Poly& p = elem[g];
    for (auto& [mo, c] : p.t) {
      F x = F::from_rational(c);
      if (!x.is_zero()) out.emplace_back((int32_t)(off + midx.rank(mo)), x);
    }
  }
  return out;
}

template <class F>
typename ModReal<F>::Deg& ModReal<F>::ensure(int n) {
  auto it = degs.find(n);
  if (it != degs.end()) return it->second;
  Deg D;
  int64_t off = 0;
  for (int g = 0; g < M.ngens(); ++g) {
    int r = n - M.gens[g];
    if (r < 0 || r % 2) continue;
    D.genoff.emplace_back(g, off);
    off += midx.count(r / 2);
  }
  D.nlabels = off;
  auto& slot = degs.emplace(n, std::move(D)).first->second;
  if (slot.nlabels > 0 && n - 2 >= minshift()) {
    Deg& P = ensure(n - 2);
    int nv = rring->n();
    // degree map can invalidate the reference; re-find
    Deg& DD = degs.at(n);
    for (int v = 0; v < nv; ++v) {
      for (auto& row : P.stair.rows) {
        SVec<F> mapped;
        mapped.reserve(row.size());
        for (auto& [idx, c] : row) {
          // decode against P: find gen block
          size_t k = 0;
          while (k + 1 < P.genoff.size() && P.genoff[k + 1].second <= idx) ++k;
          auto [g, goff] = P.genoff[k];
          int md = (n - 2 - M.gens[g]) / 2;
          Mono mo = midx.unrank(idx - goff, md);
          mo[v] = (uint16_t)(mo[v] + 1);
          mapped.emplace_back((int32_t)label_of(DD, g, mo), c);
        }
        DD.stair.add(std::move(mapped));
      }
    }
    for (size_t c = 0; c < rrels.size(); ++c) {
      int cd = INT32_MIN;
      for (int g = 0; g < M.ngens(); ++g)
        if (!rrels[c][g].is_zero()) { cd = rrels[c][g].qdeg() + M.gens[g]; break; }
      if (cd == n) DD.stair.add(to_labels(DD, rrels[c]));
    }
  } else if (slot.nlabels > 0) {
    Deg& DD = degs.at(n);
    for (size_t c = 0; c < rrels.size(); ++c) {
      int cd = INT32_MIN;
      for (int g = 0; g < M.ngens(); ++g)
        if (!rrels[c][g].is_zero()) { cd = rrels[c][g].qdeg() + M.gens[g]; break; }
      if (cd == n) DD.stair.add(to_labels(DD, rrels[c]));
    }
  }
  Deg& DD = degs.at(n);
  for (int64_t i = 0; i < DD.nlabels; ++i)
    if (!DD.stair.is_pivot((int32_t)i)) {
      DD.freepos[(int32_t)i] = (int)DD.freecols.size();
      DD.freecols.push_back((int32_t)i);
    }
  return DD;
}

template <class F>
ModReal<F>& Workspace<F>::get(const PresentedModule& M, int& offset) {
  PresentedModule N = M;
  int ms = 0;
  for (size_t i = 0; i < M.gens.size(); ++i) ms = i ? std::min(ms, M.gens[i]) : M.gens[i];
  offset = ms;
  if (ms != 0) N = M.shifted(-ms);
  std::string k = N.key();
  auto it = cache_.find(k);
  if (it == cache_.end()) it = cache_.emplace(k, std::make_unique<ModReal<F>>(N)).first;
  return *it->second;
}

template <class F>
int64_t Workspace<F>::realize_dim(const PresentedModule& M, int n) {
  int off;
  ModReal<F>& R = get(M, off);
  auto& D = R.ensure(n - off);
  return D.nlabels - D.stair.rank();
}

template <class F>
SVec<F> Workspace<F>::realize_element(const PresentedModule& M, const std::vector<Poly>& elem,
                                      int n) {
  int off;
  ModReal<F>& R = get(M, off);
  auto& D = R.ensure(n - off);
  // rewrite ambient polys through the module's renames
  std::map<int32_t, mpq_class> acc;
  for (auto& [g, goff] : D.genoff) {
    for (auto& [mo, c] : elem[g].t) {
      auto [cc, rm] = R.reduce_mono(mo);
      acc[(int32_t)(goff + R.midx.rank(rm))] += c * cc;
    }
  }
  SVec<F> v;
  for (auto& [i, c] : acc) {
    F x = F::from_rational(c);
    if (!x.is_zero()) v.emplace_back(i, x);
  }
  v = D.stair.reduce(std::move(v));
  SVec<F> out;
  for (auto& [i, c] : v) out.emplace_back(D.freepos.at(i), c);
  return out;
}

template <class F>
std::vector<SVec<F>> Workspace<F>::realize_map(const ModuleMap& f, int n) {
  std::string mk = f.key();
  if (!mapchecked_.count(mk)) {
    f.validate();
    int mdeg = f.degree();
    for (size_t c = 0; c < f.src.rels.size(); ++c) {
      std::vector<Poly> img(f.dst.ngens(), Poly(f.dst.ring));
      for (int d = 0; d < f.dst.ngens(); ++d)
        for (int g = 0; g < f.src.ngens(); ++g) img[d] = img[d] + f.mat[d][g] * f.src.rels[c][g];
      bool nz = false;
      for (auto& p : img) nz = nz || !p.is_zero();
      if (!nz) continue;
      auto res = realize_element(f.dst, img, f.src.coldeg((int)c) + mdeg);
      if (!res.empty())
        throw std::logic_error("module map not well-defined: relation column " +
                               std::to_string(c) + " does not map into target relations");
    }
    mapchecked_.emplace(mk, true);
  }
  int mdeg = f.degree();
  int soff, doff;
  ModReal<F>& S = get(f.src, soff);
  ModReal<F>& T = get(f.dst, doff);
  auto& DS = S.ensure(n - soff);
  auto& DT = T.ensure(n + mdeg - doff);
  std::vector<SVec<F>> cols;
  cols.reserve(DS.freecols.size());
  for (int32_t lbl : DS.freecols) {
    // decode source label
    size_t k = 0;
    while (k + 1 < DS.genoff.size() && DS.genoff[k + 1].second <= lbl) ++k;
    auto [g, goff] = DS.genoff[k];
    int md = (n - soff - S.M.gens[g]) / 2;
    Mono rm = S.midx.unrank(lbl - goff, md);
    // ambient lift
    Mono amb(f.src.ring->n(), 0);
    for (size_t v = 0; v < rm.size(); ++v) amb[S.keep[v]] = rm[v];
    std::map<int32_t, mpq_class> acc;
    for (int d = 0; d < f.dst.ngens(); ++d) {
      const Poly& e = f.mat[d][g];
      if (e.is_zero()) continue;
      for (auto& [mo, c] : e.t) {
        auto [cc, red] = T.reduce_mono(mono_mul(mo, amb));
        int64_t idx = T.label_of(DT, d, red);
        if (idx < 0) throw std::logic_error("realize_map: image label out of range");
        acc[(int32_t)idx] += c * cc;
      }
    }
    SVec<F> v;
    for (auto& [i, c] : acc) {
      F x = F::from_rational(c);
      if (!x.is_zero()) v.emplace_back(i, x);
    }
    v = DT.stair.reduce(std::move(v));
    SVec<F> out;
    for (auto& [i, c] : v) out.emplace_back(DT.freepos.at(i), c);
    cols.push_back(std::move(out));
  }
  return cols;
}

template <class F>
std::vector<int64_t> Workspace<F>::hilbert_truncated(const PresentedModule& M, int D) {
  std::vector<int64_t> h;
  for (int n = 0; n <= D; ++n) h.push_back(realize_dim(M, n));
  return h;
}

}  // namespace kr
