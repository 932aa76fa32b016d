#pragma once
// Exact sparse linear algebra over a field F: echelon forms with canonical
// reduction, kernels via column elimination with history, and subquotients
// ker/im with explicit representatives and coordinate maps. Everything here
// is deterministic: insertion order is fixed by the caller and no hashing
// is involved.
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kr/field.hpp"

namespace kr {

// sorted by index, entries nonzero
template <class F>
using SVec = std::vector<std::pair<int32_t, F>>;

template <class F>
SVec<F> svec_scale(const SVec<F>& a, const F& c) {
  SVec<F> r;
  if (c.is_zero()) return r;
  r.reserve(a.size());
  for (auto& [i, x] : a) r.emplace_back(i, x * c);
  return r;
}

// a + c*b
template <class F>
SVec<F> svec_axpy(const SVec<F>& a, const F& c, const SVec<F>& b) {
  SVec<F> r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      F x = c * b[j].second;
      if (!x.is_zero()) r.emplace_back(b[j].first, x);
      ++j;
    } else {
      F x = a[i].second + c * b[j].second;
      if (!x.is_zero()) r.emplace_back(a[i].first, x);
      ++i; ++j;
    }
  }
  return r;
}

// Row echelon basis, forward-reduced only. Rows keep leading coefficient 1 at
// their pivot column; a row's tail may touch later pivot columns, so reduce()
// walks left to right, which still yields the canonical residue (difference of
// two residues lies in the row span yet has no pivot column).
template <class F>
struct Echelon {
  std::vector<SVec<F>> rows;
  std::map<int32_t, int> pivots;  // col -> row index

  int rank() const { return (int)rows.size(); }

  bool is_pivot(int32_t col) const { return pivots.count(col) != 0; }

  SVec<F> reduce(SVec<F> v) const {
    size_t pos = 0;
    while (pos < v.size()) {
      auto it = pivots.find(v[pos].first);
      if (it == pivots.end()) { ++pos; continue; }
      F c = -v[pos].second;
      v = svec_axpy(v, c, rows[it->second]);
    }
    return v;
  }

  // reduce and record row coefficients used: v_in = v_out + sum coeffs[r]*rows[r]
  SVec<F> reduce_tracked(SVec<F> v, std::map<int, F>& coeffs) const {
    size_t pos = 0;
    while (pos < v.size()) {
      auto it = pivots.find(v[pos].first);
      if (it == pivots.end()) { ++pos; continue; }
      F c = v[pos].second;
      auto [cit, fresh] = coeffs.emplace(it->second, c);
      if (!fresh) cit->second = cit->second + c;
      v = svec_axpy(v, -c, rows[it->second]);
    }
    return v;
  }

  // returns true if v was independent (rank grew)
  bool add(SVec<F> v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    F lead = v[0].second;
    v = svec_scale(v, lead.inv());
    pivots[v[0].first] = (int)rows.size();
    rows.push_back(std::move(v));
    return true;
  }
};

// Kernel of a column-listed matrix: feed columns in order; each dependent
// column yields one kernel vector (coordinates over column indices).
template <class F>
struct KernelCalc {
  Echelon<F> ech;
  std::vector<SVec<F>> history;  // per echelon row: expression in original columns
  std::vector<SVec<F>> kernel;
  int ncols = 0;

  void add_col(const SVec<F>& col) {
    int j = ncols++;
    std::map<int, F> used;
    SVec<F> r = ech.reduce_tracked(col, used);
    SVec<F> expr{{j, F(1)}};
    for (auto& [row, c] : used) expr = svec_axpy(expr, -c, history[row]);
    if (r.empty()) {
      kernel.push_back(std::move(expr));
    } else {
      F lead = r[0].second;
      ech.pivots[r[0].first] = (int)ech.rows.size();
      ech.rows.push_back(svec_scale(r, lead.inv()));
      history.push_back(svec_scale(expr, lead.inv()));
    }
  }

  int rank() const { return ech.rank(); }
};

// Subquotient ker/im of an ambient coordinate space, with explicit
// representatives and a coordinate map for inducing maps on homology.
template <class F>
struct Subquot {
  Echelon<F> imE;
  Echelon<F> hE;                  // echelon of residues of representatives
  std::vector<SVec<F>> reps;      // representatives in the ambient space
  std::vector<std::map<int, F>> hExpr;  // per hE row: coefficients over reps

  int dim() const { return (int)reps.size(); }

  void set_image(const std::vector<SVec<F>>& im_cols) {
    for (auto& c : im_cols) imE.add(c);
  }

  // offer a cycle; keeps it as a new class representative if independent
  void offer_cycle(const SVec<F>& z) {
    SVec<F> r = imE.reduce(z);
    if (r.empty()) return;
    std::map<int, F> used;
    r = hE.reduce_tracked(std::move(r), used);
    if (r.empty()) return;
    F lead = r[0].second;
    F il = lead.inv();
    hE.pivots[r[0].first] = (int)hE.rows.size();
    hE.rows.push_back(svec_scale(r, il));
    std::map<int, F> expr;
    for (auto& [row, c] : used)
      for (auto& [k, v] : hExpr[row]) {
        auto [it, fresh] = expr.emplace(k, -(c * v) * il);
        if (!fresh) it->second = it->second - (c * v) * il;
      }
    auto [it, fresh] = expr.emplace((int)reps.size(), il);
    (void)it; (void)fresh;
    hExpr.push_back(std::move(expr));
    reps.push_back(z);
  }

  // coordinates of a cycle in terms of reps; throws if v is not in ker+im span
  SVec<F> coords(const SVec<F>& v) const {
    SVec<F> r = imE.reduce(v);
    std::map<int, F> used;
    r = hE.reduce_tracked(std::move(r), used);
    if (!r.empty()) throw std::logic_error("Subquot::coords: vector not a recognized cycle");
    std::map<int, F> acc;
    for (auto& [row, c] : used)
      for (auto& [k, w] : hExpr[row]) {
        auto [it, fresh] = acc.emplace(k, c * w);
        if (!fresh) it->second = it->second + c * w;
      }
    SVec<F> out;
    for (auto& [k, w] : acc)
      if (!w.is_zero()) out.emplace_back(k, w);
    return out;
  }
};

}  // namespace kr
