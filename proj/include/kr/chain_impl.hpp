#pragma once
// Homology engines for chain.hpp. All three run the same two-stage sweep:
// cells of retained gradings are realized degreewise, stage one takes
// homology along dh inside each cell (a Subquot with explicit
// representatives), stage two ranks the maps induced by dv on those
// representatives. Cells are certified exactly when every differential out of
// them stays realized under the cutoff; differentials only raise q, so
// truncation never corrupts a certified cell. Uncertified cells are dropped
// and taint anything whose stage-two input they feed.
#include <algorithm>
#include <climits>
#include <set>
#include <stdexcept>

namespace kr {

namespace chain_detail {

using CKey = std::array<int, 3>;

enum class Mode { Vert, Hhv, Ht };

inline int arrow_qdegree(const Cplx& C, int s, int d, const PolyMat& mat) {
  for (size_t gd = 0; gd < mat.size(); ++gd)
    for (size_t gs = 0; gs < mat[gd].size(); ++gs)
      if (!mat[gd][gs].is_zero())
        return mat[gd][gs].qdeg() + C.terms[d].mod.gens[gd] -
               C.terms[s].mod.gens[gs];
  return 0;
}

inline int min_gen(const PresentedModule& M) {
  int lo = INT_MAX;
  for (int g : M.gens) lo = std::min(lo, g);
  return lo;
}

inline int par2(int t) { return ((t % 2) + 2) % 2; }

template <class F>
void sort_by_index(SVec<F>& v) {
  std::sort(v.begin(), v.end(),
            [](const std::pair<int32_t, F>& a, const std::pair<int32_t, F>& b) {
              return a.first < b.first;
            });
}

template <class F>
struct Engine {
  Workspace<F>& ws;
  const Cplx& C;
  Mode mode;
  int N;  // sl_N fold parameter, Ht only
  int D;
  const Poly* red;  // reduced variant: stage-one homology modulo this action
  int rdeg = 0;

  struct Arr {
    int s, d, deg;
    const PolyMat* mat;
  };
  std::vector<Arr> hv, vv;
  std::vector<std::vector<int>> hout, vout;  // per source term

  struct Space {
    // (term, offset, dim)
    std::vector<std::array<int64_t, 3>> parts;
    int64_t dim = 0;
    int64_t off_of(int term) const {
      for (auto& p : parts)
        if (p[0] == term) return p[1];
      return -1;
    }
  };
  std::map<CKey, Space> spaces;
  std::map<CKey, Subquot<F>> sq;
  std::map<CKey, std::vector<SVec<F>>> oreps;  // unreduced reps, red runs only
  std::map<CKey, char> status;  // 'P' present, 'E' empty, 'U' uncertified
  std::map<CKey, std::vector<SVec<F>>> image_into;
  std::map<std::array<int64_t, 3>, std::vector<SVec<F>>> colcache;  // (s,d,q)
  std::map<std::pair<int, int>, std::vector<SVec<F>>> fcache;  // (term,q)

  Engine(Workspace<F>& w, const Cplx& c, Mode m, int n, int cutoff,
         const Poly* r = nullptr)
      : ws(w), C(c), mode(m), N(n), D(cutoff), red(r) {}

  CKey key_of(int term, int q) const {
    const Term& T = C.terms[term];
    switch (mode) {
      case Mode::Vert: return {T.j, 0, q};
      case Mode::Hhv: return {T.j, T.t, q};
      default: return {T.j, par2(T.t), q + (N - 1) * T.t};
    }
  }
  int q_of(int term, const CKey& k) const {
    if (mode == Mode::Ht) return k[2] - (N - 1) * C.terms[term].t;
    return k[2];
  }

  void prepare() {
    C.validate();
    hout.assign(C.terms.size(), {});
    vout.assign(C.terms.size(), {});
    for (auto& [key, mat] : C.dh) {
      int deg = arrow_qdegree(C, key.first, key.second, mat);
      hout[key.first].push_back((int)hv.size());
      hv.push_back({key.first, key.second, deg, &mat});
    }
    for (auto& [key, mat] : C.dv) {
      int deg = arrow_qdegree(C, key.first, key.second, mat);
      vout[key.first].push_back((int)vv.size());
      vv.push_back({key.first, key.second, deg, &mat});
    }
    if (mode == Mode::Vert) {
      if (!hv.empty())
        throw std::invalid_argument("homology_degreewise: horizontal arrows present");
    } else {
      if (!C.phi.is_zero()) {
        // a formally nonzero potential is fine when it annihilates every
        // term, as it does after a regular collapse inside a closed diagram
        int pd = C.phi.qdeg();
        for (auto& T : C.terms) {
          int lo = min_gen(T.mod);
          for (int q = lo; q + pd <= D; ++q) {
            auto cols = ws.realize_map(mult_map(T.mod, T.mod, C.phi), q);
            for (auto& c : cols)
              if (!c.empty())
                throw std::invalid_argument("homology: nonzero total potential");
          }
        }
      }
      for (auto& a : vv)
        if (a.deg != 0)
          throw std::invalid_argument("homology: vertical arrow of nonzero q-degree");
    }
    if (mode == Mode::Hhv) {
      int g = -1;
      for (auto& a : hv) {
        if (C.terms[a.d].t - C.terms[a.s].t != 1)
          throw std::invalid_argument("bicomplex_hhv: t-lowering arrow present");
        if (g == -1) g = a.deg;
        if (a.deg != g)
          throw std::invalid_argument("bicomplex_hhv: nonuniform horizontal degree");
      }
    }
    if (mode == Mode::Ht) {
      for (auto& a : hv)
        if (a.deg + (N - 1) * (C.terms[a.d].t - C.terms[a.s].t) != N + 1)
          throw std::invalid_argument("ht_homology: arrow incompatible with the fold");
    }
    if (red) {
      if (mode == Mode::Vert)
        throw std::invalid_argument("homology: no reduced variant here");
      if (red->is_zero())
        throw std::invalid_argument("homology: reduced quotient by zero");
      rdeg = red->qdeg();
    }
  }

  const std::vector<SVec<F>>& cols_of(int s, int d, int q, const PolyMat& mat) {
    auto key = std::array<int64_t, 3>{s, d, q};
    auto it = colcache.find(key);
    if (it != colcache.end()) return it->second;
    ModuleMap f{C.terms[s].mod, C.terms[d].mod, mat};
    auto cols = ws.realize_map(f, q);
    return colcache.emplace(key, std::move(cols)).first->second;
  }

  const std::vector<SVec<F>>& fcols_of(int term, int q) {
    auto key = std::make_pair(term, q);
    auto it = fcache.find(key);
    if (it != fcache.end()) return it->second;
    ModuleMap f{C.terms[term].mod, C.terms[term].mod, pmat1(*red)};
    auto cols = ws.realize_map(f, q);
    return fcache.emplace(key, std::move(cols)).first->second;
  }

  DimTable run() {
    prepare();

    // candidate cells
    std::set<CKey> cand;
    for (int i = 0; i < (int)C.terms.size(); ++i) {
      int lo = min_gen(C.terms[i].mod);
      for (int q = lo; q <= D; ++q) cand.insert(key_of(i, q));
    }
    std::vector<CKey> keys(cand.begin(), cand.end());
    std::sort(keys.begin(), keys.end(), [](const CKey& a, const CKey& b) {
      if (a[2] != b[2]) return a[2] < b[2];
      if (a[0] != b[0]) return a[0] < b[0];
      return a[1] < b[1];
    });

    for (auto& k : keys) {
      Space sp;
      for (int i = 0; i < (int)C.terms.size(); ++i) {
        if (key_of(i, q_of(i, k)) != k) continue;
        int q = q_of(i, k);
        if (q < min_gen(C.terms[i].mod) || q > D) continue;
        int64_t d = ws.realize_dim(C.terms[i].mod, q);
        if (d > 0) sp.parts.push_back({i, sp.dim, d}), sp.dim += d;
      }
      spaces.emplace(k, std::move(sp));
    }

    // stage one, ascending q so images are ready before their consumers
    for (auto& k : keys) {
      const Space& sp = spaces[k];
      if (sp.dim == 0) {
        status[k] = 'E';
        continue;
      }
      bool kernel_ok = true;
      std::vector<SVec<F>> cols(sp.dim);
      CKey next{};
      bool have_next = false;
      for (auto& [ti, off, dim] : sp.parts) {
        int s = (int)ti;
        int q = q_of(s, k);
        for (int ai : hout[s]) {
          const Arr& a = hv[ai];
          if (q + a.deg > D) {
            kernel_ok = false;
            continue;
          }
          CKey tk = key_of(a.d, q + a.deg);
          if (!have_next) {
            next = tk;
            have_next = true;
          } else if (tk != next) {
            throw std::logic_error("stage-one arrows leave through two cells");
          }
          const Space& tsp = spaces.count(tk) ? spaces[tk] : (spaces[tk] = Space{});
          int64_t offd = tsp.off_of(a.d);
          if (offd < 0) continue;  // target has no labels at that degree
          auto& mcols = cols_of(a.s, a.d, q, *a.mat);
          for (int64_t kk = 0; kk < dim; ++kk)
            for (auto& [li, v] : mcols[kk])
              cols[off + kk].emplace_back((int32_t)(offd + li), v);
        }
      }
      for (auto& c : cols) sort_by_index(c);

      if (have_next) {
        auto& im = image_into[next];
        for (auto& c : cols)
          if (!c.empty()) im.push_back(c);
      }
      if (!kernel_ok) {
        status[k] = 'U';
        continue;
      }
      std::vector<SVec<F>> cycles;
      if (mode == Mode::Vert) {
        for (int64_t i = 0; i < sp.dim; ++i)
          cycles.push_back(SVec<F>{{(int32_t)i, F(1)}});
      } else {
        KernelCalc<F> KC;
        for (auto& c : cols) KC.add_col(c);
        cycles = std::move(KC.kernel);
      }
      Subquot<F> S;
      auto iit = image_into.find(k);
      if (iit != image_into.end()) S.set_image(iit->second);
      if (red) {
        // quotient the stage-one homology by the marked action: everything
        // the marked polynomial carries up from the unreduced homology of the
        // cell one step below in q joins the image, so the unreduced
        // representatives have to be remembered separately per cell
        CKey src{k[0], k[1], k[2] - rdeg};
        auto sit = status.find(src);
        if (sit != status.end() && sit->second == 'U') {
          status[k] = 'U';
          continue;
        }
        Subquot<F> S0;
        if (iit != image_into.end()) S0.set_image(iit->second);
        for (auto& z : cycles) S0.offer_cycle(z);
        auto oit = oreps.find(src);
        if (oit != oreps.end() && !oit->second.empty()) {
          const Space& ssp = spaces[src];
          std::vector<SVec<F>> extra;
          for (auto& rep : oit->second) {
            std::map<int32_t, F> acc;
            for (auto& [idx, val] : rep) {
              const std::array<int64_t, 3>* part = nullptr;
              for (auto& p : ssp.parts)
                if (idx >= p[1] && idx < p[1] + p[2]) part = &p;
              int s = (int)(*part)[0];
              int64_t off = sp.off_of(s);
              if (off < 0) continue;
              auto& mcols = fcols_of(s, q_of(s, src));
              for (auto& [li, v] : mcols[idx - (*part)[1]]) {
                F& slot = acc[(int32_t)(off + li)];
                slot = slot + val * v;
              }
            }
            SVec<F> w;
            for (auto& [i2, v2] : acc)
              if (!v2.is_zero()) w.emplace_back(i2, v2);
            if (!w.empty()) extra.push_back(std::move(w));
          }
          if (!extra.empty()) S.set_image(extra);
        }
        oreps[k] = std::move(S0.reps);
      }
      for (auto& z : cycles) S.offer_cycle(z);
      status[k] = 'P';
      sq.emplace(k, std::move(S));
    }

    // stage two: rank the dv-induced maps between cell homologies
    std::set<CKey> taint;
    std::map<CKey, int> rank_out;
    std::map<CKey, std::vector<SVec<F>>> in_cols;

    auto dv_targets = [&](const CKey& k) {
      std::set<CKey> out;
      auto it = spaces.find(k);
      if (it == spaces.end()) return out;
      for (auto& [ti, off, dim] : it->second.parts)
        for (int ai : vout[(int)ti])
          out.insert(key_of(vv[ai].d, q_of((int)ti, k) + vv[ai].deg));
      return out;
    };

    for (auto& [k, st] : status)
      if (st == 'U')
        for (auto& tk : dv_targets(k)) taint.insert(tk);

    for (auto& k : keys) {
      if (status[k] != 'P') continue;
      const Subquot<F>& S = sq[k];
      const Space& sp = spaces[k];
      bool ok = true;
      for (auto& [ti, off, dim] : sp.parts)
        for (int ai : vout[(int)ti])
          if (q_of((int)ti, k) + vv[ai].deg > D) ok = false;
      if (!ok) {
        taint.insert(k);
        for (auto& tk : dv_targets(k)) taint.insert(tk);
        continue;
      }
      if (S.reps.empty()) {
        rank_out[k] = 0;
        continue;
      }
      // per-target rep-coordinate columns, then one stacked rank
      std::map<CKey, std::vector<SVec<F>>> per_target;
      bool bad = false;
      for (auto& rep : S.reps) {
        std::map<CKey, std::map<int32_t, F>> acc;
        for (auto& [idx, val] : rep) {
          // locate the part this coordinate belongs to
          const std::array<int64_t, 3>* part = nullptr;
          for (auto& p : sp.parts)
            if (idx >= p[1] && idx < p[1] + p[2]) part = &p;
          int s = (int)(*part)[0];
          int64_t local = idx - (*part)[1];
          int q = q_of(s, k);
          for (int ai : vout[s]) {
            const Arr& a = vv[ai];
            CKey tk = key_of(a.d, q + a.deg);
            auto tspit = spaces.find(tk);
            if (tspit == spaces.end() || tspit->second.dim == 0) continue;
            int64_t offd = tspit->second.off_of(a.d);
            if (offd < 0) continue;
            auto& mcols = cols_of(a.s, a.d, q, *a.mat);
            for (auto& [li, v] : mcols[local]) {
              F& slot = acc[tk][(int32_t)(offd + li)];
              slot = slot + val * v;
            }
          }
        }
        for (auto& [tk, entries] : acc) {
          SVec<F> w;
          for (auto& [i2, v2] : entries)
            if (!v2.is_zero()) w.emplace_back(i2, v2);
          char tst = status.count(tk) ? status[tk] : 'E';
          if (w.empty()) continue;
          if (tst != 'P') {
            bad = true;  // boundary lands in an unknown or empty cell
            continue;
          }
          per_target[tk].resize(S.reps.size());
          per_target[tk][&rep - S.reps.data()] = sq[tk].coords(w);
        }
      }
      if (bad) {
        taint.insert(k);
        for (auto& tk : dv_targets(k)) taint.insert(tk);
        continue;
      }
      // stacked rank over all targets
      Echelon<F> ech;
      std::vector<std::pair<CKey, int64_t>> bases;
      int64_t base = 0;
      for (auto& [tk, colsv] : per_target) {
        bases.emplace_back(tk, base);
        base += (int64_t)sq[tk].reps.size();
      }
      int64_t nreps = (int64_t)S.reps.size();
      for (int64_t r = 0; r < nreps; ++r) {
        SVec<F> col;
        for (auto& [tk, b] : bases) {
          auto& colsv = per_target[tk];
          if ((int64_t)colsv.size() > r)
            for (auto& [i2, v2] : colsv[r]) col.emplace_back((int32_t)(b + i2), v2);
        }
        sort_by_index(col);
        ech.add(col);
      }
      rank_out[k] = ech.rank();
      for (auto& [tk, colsv] : per_target) {
        colsv.resize(S.reps.size());
        auto& in = in_cols[tk];
        for (auto& c : colsv) in.push_back(c);
      }
    }

    DimTable out;
    out.cutoff = D;
    out.certified = certified_bound();
    for (auto& k : keys) {
      if (status[k] != 'P' || taint.count(k)) continue;
      if (!rank_out.count(k)) continue;
      CKey up{k[0] + 1, k[1], k[2]};
      char ust = status.count(up) ? status[up] : 'E';
      if (ust == 'U' || (ust == 'P' && !rank_out.count(up))) continue;
      int64_t rin = 0;
      auto iit = in_cols.find(k);
      if (iit != in_cols.end()) {
        Echelon<F> e;
        for (auto& c : iit->second) e.add(c);
        rin = e.rank();
      }
      int64_t h = (int64_t)sq[k].reps.size() - rank_out[k] - rin;
      if (h > 0) out.dims[{k[0], k[1], k[2]}] = h;
    }
    return out;
  }

  int certified_bound() const {
    if (mode == Mode::Vert) {
      int m = 0;
      for (auto& a : vv) m = std::max(m, a.deg);
      return D - m;
    }
    if (mode == Mode::Hhv) {
      int g = 2;
      for (auto& a : hv) g = a.deg;
      return D - g;
    }
    int depth = 0;
    for (auto& T : C.terms) depth = std::max(depth, -T.t);
    return D - (N - 1) * depth - (N + 1);
  }
};

}  // namespace chain_detail

template <class F>
DimTable homology_degreewise(Workspace<F>& ws, const Cplx& C, int D) {
  chain_detail::Engine<F> e(ws, C, chain_detail::Mode::Vert, 0, D);
  return e.run();
}

// reduce_by, when given, quotients the stage-one homology by that polynomial's
// action before the vertical pass (the reduced-homology transform)
template <class F>
DimTable bicomplex_hhv(Workspace<F>& ws, const Cplx& C, int D,
                       const Poly* reduce_by = nullptr) {
  chain_detail::Engine<F> e(ws, C, chain_detail::Mode::Hhv, 0, D, reduce_by);
  return e.run();
}

template <class F>
DimTable ht_homology(Workspace<F>& ws, const Cplx& C, int N, int D,
                     const Poly* reduce_by = nullptr) {
  if (N < 1) throw std::invalid_argument("ht_homology: N must be at least 1");
  chain_detail::Engine<F> e(ws, C, chain_detail::Mode::Ht, N, D, reduce_by);
  return e.run();
}

}  // namespace kr
