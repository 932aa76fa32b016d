#pragma once
// Template bodies for the homology pipelines; include via homology.hpp.
#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "kr/linalg.hpp"

namespace kr {

template <class F>
SlnResult sln_homology(Workspace<F>& ws, const TangleDiagram& T, int N,
                       int cutoff, std::optional<int> marked_edge,
                       bool full_t) {
  if (N < 1) throw std::invalid_argument("sln_homology: N must be positive");
  ClosureBuild cb =
      build_closure_complex(T, Potential::power(N + 1), marked_edge);
  int D = cutoff >= 0 ? cutoff : default_cutoff_sln(N, (int)T.crossings.size());
  SlnResult r;
  r.N = N;
  r.cutoff = D;
  r.w = cb.st.w;
  r.b = cb.st.b;
  r.reduced = marked_edge.has_value();
  r.full_t = full_t;
  const Poly* red = cb.marked ? &*cb.marked : nullptr;
  DimTable raw =
      full_t ? bicomplex_hhv(ws, detail::associated_graded(cb.total), D, red)
             : ht_homology(ws, cb.total, N, D, red);
  r.table = apply_shifts(detail::sln_normalize(raw, cb.st, N, cb.m, full_t),
                         cb.st, /*homfly=*/false, N, r.reduced);
  detail::finalize_sln(r);
  return r;
}

template <class F>
HomflyResult homfly_homology(Workspace<F>& ws, const TangleDiagram& T,
                             int cutoff, std::optional<int> marked_edge) {
  ClosureBuild cb = build_closure_complex(T, Potential::zero(), marked_edge);
  int D =
      cutoff >= 0 ? cutoff : default_cutoff_homfly((int)T.crossings.size());
  HomflyResult r;
  r.cutoff = D;
  r.w = cb.st.w;
  r.b = cb.st.b;
  r.reduced = marked_edge.has_value();
  r.shifts = {cb.st.b - cb.st.w - (r.reduced ? 1 : 0),
              cb.st.w + cb.st.b - 1, cb.st.w - cb.st.b + 1};
  DimTable raw =
      bicomplex_hhv(ws, cb.total, D, cb.marked ? &*cb.marked : nullptr);
  r.table = apply_shifts(detail::homfly_normalize(raw, cb.st, cb.m), cb.st,
                         /*homfly=*/true, 0, r.reduced);
  detail::finalize_homfly(r);
  return r;
}

template <class F>
HomflyResult hochschild_route(Workspace<F>& ws, const std::string& word,
                              int strands, int cutoff) {
  TangleDiagram braid = parse_braid(word, strands);
  Cplx rc = rouquier_complex(word, strands);
  // one row per strand, pairing the braid output variable with the input one
  KoszulRows rows;
  for (int s = 0; s < strands; ++s) {
    int in_e = braid.boundary[s].second;
    int out_e = braid.boundary[strands + s].second;
    int vi = rc.ring->index("t" + std::to_string(in_e));
    int vo = rc.ring->index("t" + std::to_string(out_e));
    if (vi < 0 || vo < 0)
      throw std::logic_error("hochschild_route: strand variable missing");
    rows.rows.push_back(
        {poly_var(rc.ring, vo) - poly_var(rc.ring, vi), poly_zero(rc.ring)});
  }
  Cplx total = mf_tensor(rc, koszul_mf(rc.ring, rows));
  int D = cutoff >= 0 ? cutoff
                      : default_cutoff_homfly((int)braid.crossings.size());
  HomflyResult r;
  r.cutoff = D;
  r.w = writhe(braid);
  r.b = strands;
  DiagramStats st{r.w, r.b};
  r.shifts = {st.b - st.w, st.w + st.b - 1, st.w - st.b + 1};
  DimTable raw = bicomplex_hhv(ws, total, D);
  r.table =
      apply_shifts(detail::homfly_normalize(raw, st, strands), st, true);
  detail::finalize_homfly(r);
  return r;
}

// termwise injectivity of multiplication by s, checked degree by degree
template <class F>
static bool mult_injective(Workspace<F>& ws, const Cplx& C, const Poly& s,
                           int D) {
  int ds = s.qdeg();
  for (const auto& term : C.terms) {
    const PresentedModule& M = term.mod;
    if (M.gens.empty()) continue;
    int g0 = *std::min_element(M.gens.begin(), M.gens.end());
    ModuleMap mm = mult_map(M, M, s);
    for (int q = g0; q + ds <= D; ++q) {
      int64_t sdim = ws.realize_dim(M, q);
      if (sdim == 0) continue;
      auto cols = ws.realize_map(mm, q);
      Echelon<F> ech;
      int64_t rank = 0;
      for (auto& col : cols)
        if (ech.add(col)) ++rank;
      if (rank < sdim) return false;
    }
  }
  return true;
}

template <class F>
IIbReport iib_report(Workspace<F>& ws, const TangleDiagram& K,
                     const TangleDiagram& Kp, int cutoff) {
  if (!K.boundary.empty() || !Kp.boundary.empty())
    throw std::invalid_argument("iib_report: both diagrams must be closed");
  if (Kp.crossings.size() != K.crossings.size() + 2)
    throw std::invalid_argument(
        "iib_report: second diagram must have exactly two extra crossings");
  auto pr = detail::find_iib_pair(Kp);
  if (!pr)
    throw std::invalid_argument(
        "iib_report: no doubled-strand crossing pair found");
  // cheap identity check through the skein oracle when small enough
  if (Kp.crossings.size() <= 10 && !(homfly_skein(K) == homfly_skein(Kp)))
    throw std::invalid_argument(
        "iib_report: the diagrams have different skein polynomials");

  IIbReport rep;
  rep.first = homfly_homology(ws, K, cutoff);
  rep.second = homfly_homology(ws, Kp, cutoff);
  rep.euler_equal = homfly_euler_equal(rep.first, rep.second);

  int com = std::min(rep.first.table.certified, rep.second.table.certified);
  for (auto& [c, d] : rep.second.table.dims)
    if (c[2] <= com && d) rep.difference[c] += d;
  for (auto& [c, d] : rep.first.table.dims)
    if (c[2] <= com && d) rep.difference[c] -= d;
  for (auto it = rep.difference.begin(); it != rep.difference.end();)
    it = it->second == 0 ? rep.difference.erase(it) : std::next(it);

  if (rep.difference.empty()) {
    rep.classification = "identical";
  } else {
    rep.classification = "other";
    auto window = [&](const DimTable& t) {
      std::map<std::array<int, 3>, std::int64_t> w;
      for (auto& [c, d] : t.dims)
        if (c[2] <= com && d) w[c] = d;
      return w;
    };
    auto wa = window(rep.first.table), wb = window(rep.second.table);
    for (int dq = -2; dq <= 2 && rep.classification == "other"; dq += 2)
      for (int di = -2; di <= 2 && rep.classification == "other"; ++di)
        for (int dv = -2; dv <= 2; ++dv) {
          if (!dq && !di && !dv) continue;
          std::map<std::array<int, 3>, std::int64_t> moved;
          for (auto& [c, d] : wa)
            moved[{c[0] + di, c[1] + dv, c[2] + dq}] = d;
          if (moved == wb) {
            rep.classification = "shift(" + std::to_string(dq) + "," +
                                 std::to_string(di) + "," +
                                 std::to_string(dv) + ")";
            break;
          }
        }
  }

  // local model of the doubled pair: cut the two-crossing cycle open, reglue
  // it with the cone on the gluing form s, and compare the homology against
  // the kernel of the two-term surjection, a free rank-one module over the
  // two surviving strand variables
  auto [ni, pi] = *pr;
  try {
    TangleDiagram local = detail::local_pair_tangle(Kp, ni, pi);
    auto [lcut, leta] = cut_cycles(local);
    NaiveComplex lnc = naive_complex(lcut);
    auto P = [&](int e) { return lnc.edge_poly.at(e); };
    Poly s = poly_zero(lnc.C.ring);
    for (size_t k = local.boundary.size(); k + 1 < lcut.boundary.size();
         k += 2)
      s = s + P(lcut.boundary[k].second) - P(lcut.boundary[k + 1].second);
    const int SD = 20;
    if (s.is_zero()) {
      rep.notes += "local model: gluing form collapses to zero; ";
    } else {
      DimTable qt = homology_degreewise(ws, quotient_complex(lnc.C, s), SD);
      rep.local_kernel = qt;
      std::map<int, std::int64_t> ladder;  // q -> dim on the certified window
      std::set<std::pair<int, int>> spots;
      for (auto& [c, d] : qt.dims)
        if (d && c[2] <= qt.certified) {
          spots.insert({c[0], c[1]});
          ladder[c[2]] += d;
        }
      rep.local_onto = spots.size() == 1;
      if (!rep.local_onto)
        rep.notes += "local model: homology spreads over several degrees; ";
      bool shape = !ladder.empty();
      if (shape) {
        int q0 = ladder.begin()->first;
        for (int q = q0, k = 0; q <= qt.certified; q += 2, ++k)
          if (!ladder.count(q) || ladder[q] != k + 1) shape = false;
        if ((int)ladder.size() != (qt.certified - q0) / 2 + 1) shape = false;
      } else {
        rep.notes += "local model: certified window is empty; ";
      }
      rep.local_model_ok = rep.local_onto && shape;
      if (!shape && !ladder.empty())
        rep.notes += "local model: dimensions do not match the kernel; ";
    }
  } catch (const std::exception& ex) {
    rep.local_model_ok = false;
    rep.notes += std::string("local model: ") + ex.what() + "; ";
  }
  return rep;
}

}  // namespace kr
