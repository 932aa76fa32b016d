#include "kr/chain.hpp"

#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kr {

Poly rows_potential(Ring R, const KoszulRows& rows) {
  Poly phi = poly_zero(R);
  for (auto& [x, y] : rows.rows) phi = phi + x * y;
  return phi;
}

PolyMat pmat1(Poly p) { return {{std::move(p)}}; }

PolyMat pmat_mul(Ring R, const PolyMat& A, const PolyMat& B) {
  size_t n = A.size(), m = B.size(), k = m ? B[0].size() : 0;
  PolyMat C(n, std::vector<Poly>(k, poly_zero(R)));
  for (size_t i = 0; i < n; ++i) {
    if (A[i].size() != m) throw std::invalid_argument("pmat_mul: shape mismatch");
    for (size_t j = 0; j < m; ++j) {
      if (A[i][j].is_zero()) continue;
      for (size_t c = 0; c < k; ++c)
        if (!B[j][c].is_zero()) C[i][c] = C[i][c] + A[i][j] * B[j][c];
    }
  }
  return C;
}

bool pmat_zero(const PolyMat& A) {
  for (auto& r : A)
    for (auto& p : r)
      if (!p.is_zero()) return false;
  return true;
}

static PolyMat pmat_add(Ring R, const PolyMat& A, const PolyMat& B) {
  if (A.size() != B.size()) throw std::invalid_argument("pmat_add: shape mismatch");
  PolyMat C = A;
  for (size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != B[i].size()) throw std::invalid_argument("pmat_add: shape mismatch");
    for (size_t j = 0; j < A[i].size(); ++j) C[i][j] = C[i][j] + B[i][j];
  }
  (void)R;
  return C;
}

int Cplx::add_term(PresentedModule m, int j, int t) {
  if (!ring) ring = m.ring;
  if (m.ring != ring) throw std::invalid_argument("Cplx: term over a different ring");
  if (phi.ring == nullptr) phi = poly_zero(ring);
  terms.push_back(Term{std::move(m), j, t});
  return (int)terms.size() - 1;
}

static void add_arrow(Ring R, std::map<std::pair<int, int>, PolyMat>& mp, int s,
                      int d, PolyMat m) {
  auto key = std::make_pair(s, d);
  auto it = mp.find(key);
  if (it == mp.end()) {
    if (!pmat_zero(m)) mp.emplace(key, std::move(m));
    return;
  }
  it->second = pmat_add(R, it->second, m);
  if (pmat_zero(it->second)) mp.erase(it);
}

void Cplx::add_dv(int s, int d, PolyMat m) { add_arrow(ring, dv, s, d, std::move(m)); }
void Cplx::add_dh(int s, int d, PolyMat m) { add_arrow(ring, dh, s, d, std::move(m)); }

const PolyMat* Cplx::arrow(bool vertical, int s, int d) const {
  auto& mp = vertical ? dv : dh;
  auto it = mp.find({s, d});
  return it == mp.end() ? nullptr : &it->second;
}

void Cplx::validate() const {
  for (auto& T : terms) {
    if (T.mod.ring != ring) throw std::logic_error("Cplx: mixed rings");
    T.mod.validate();
  }
  auto chk = [&](const std::map<std::pair<int, int>, PolyMat>& mp, bool vertical) {
    for (auto& [key, mat] : mp) {
      auto [s, d] = key;
      if (s < 0 || d < 0 || s >= (int)terms.size() || d >= (int)terms.size())
        throw std::logic_error("Cplx: arrow endpoint out of range");
      int dj = terms[d].j - terms[s].j, dt = terms[d].t - terms[s].t;
      if (vertical && !(dj == -1 && dt == 0))
        throw std::logic_error("Cplx: dv arrow with wrong bidegree");
      if (!vertical && !(dj == 0 && (dt == 1 || dt == -1)))
        throw std::logic_error("Cplx: dh arrow with wrong bidegree");
      ModuleMap f{terms[s].mod, terms[d].mod, mat};
      f.validate();
    }
  };
  chk(dv, true);
  chk(dh, false);
}

void Cplx::check_d2(size_t max_full) const {
  // adjacency over both differentials
  std::vector<std::vector<std::pair<int, const PolyMat*>>> out(terms.size());
  for (auto& [key, mat] : dv) out[key.first].emplace_back(key.second, &mat);
  for (auto& [key, mat] : dh) out[key.first].emplace_back(key.second, &mat);

  std::vector<int> sources;
  if (terms.size() <= max_full) {
    for (int u = 0; u < (int)terms.size(); ++u) sources.push_back(u);
  } else {
    size_t stride = terms.size() / max_full + 1;
    for (size_t u = 0; u < terms.size(); u += stride) sources.push_back((int)u);
    sources.push_back((int)terms.size() - 1);
  }

  for (int u : sources) {
    std::map<int, PolyMat> acc;
    for (auto& [v, m1] : out[u])
      for (auto& [w, m2] : out[v]) {
        PolyMat prod = pmat_mul(ring, *m2, *m1);
        auto it = acc.find(w);
        if (it == acc.end())
          acc.emplace(w, std::move(prod));
        else
          it->second = pmat_add(ring, it->second, prod);
      }
    for (auto& [w, m] : acc) {
      PolyMat want(terms[w].mod.ngens(),
                   std::vector<Poly>(terms[u].mod.ngens(), poly_zero(ring)));
      if (w == u && !phi.is_zero())
        for (int g = 0; g < terms[u].mod.ngens(); ++g) want[g][g] = phi;
      bool ok = m.size() == want.size();
      for (size_t i = 0; ok && i < m.size(); ++i) {
        ok = m[i].size() == want[i].size();
        for (size_t j2 = 0; ok && j2 < m[i].size(); ++j2)
          ok = (m[i][j2] - want[i][j2]).is_zero();
      }
      if (!ok) {
        std::ostringstream os;
        os << "d^2 != phi*id between terms " << u << " and " << w;
        throw std::logic_error(os.str());
      }
    }
    if (!phi.is_zero() && out[u].size()) {
      // a term with outgoing arrows whose d^2 never returns must still match
      // phi*id; absence from acc means the composite was dropped as zero
      if (!acc.count(u)) throw std::logic_error("d^2 misses phi*id on a term");
    }
  }
}

Cplx module_complex(const PresentedModule& M, int j, int t) {
  Cplx C;
  C.add_term(M, j, t);
  return C;
}

// q-degree charged to x_r in the summand shift; zero x counts as linear
// unless the potential degree says otherwise
static int row_xdeg(const std::pair<Poly, Poly>& row, int phideg) {
  if (!row.first.is_zero()) return row.first.qdeg();
  if (!row.second.is_zero() && phideg > 0) return phideg - row.second.qdeg();
  return 2;
}

Cplx koszul_mf(Ring R, const KoszulRows& rows) {
  size_t m = rows.rows.size();
  if (m > 20) throw std::invalid_argument("koszul_mf: too many rows");
  int phideg = 0;
  for (auto& [x, y] : rows.rows) {
    if (!x.is_homogeneous() || !y.is_homogeneous())
      throw std::invalid_argument("koszul_mf: row entries must be homogeneous");
    if (!x.is_zero() && !y.is_zero()) {
      int d = x.qdeg() + y.qdeg();
      if (phideg && d != phideg)
        throw std::invalid_argument("koszul_mf: inhomogeneous potential");
      phideg = d;
    }
  }
  std::vector<int> xd(m);
  for (size_t r = 0; r < m; ++r) xd[r] = row_xdeg(rows.rows[r], phideg);

  Cplx C;
  C.ring = R;
  C.phi = rows_potential(R, rows);
  for (uint32_t A = 0; A < (1u << m); ++A) {
    int shift = 0;
    for (size_t r = 0; r < m; ++r)
      if (A & (1u << r)) shift += xd[r] - 2;
    C.add_term(free_module(R, {shift}), 0, -(int)std::popcount(A));
  }
  for (uint32_t A = 0; A < (1u << m); ++A) {
    for (size_t r = 0; r < m; ++r) {
      mpq_class sgn = (std::popcount(A & ((1u << r) - 1)) & 1) ? -1 : 1;
      if (A & (1u << r)) {
        const Poly& x = rows.rows[r].first;
        if (!x.is_zero()) C.add_dh((int)A, (int)(A & ~(1u << r)), pmat1(x.scaled(sgn)));
      } else {
        const Poly& y = rows.rows[r].second;
        if (!y.is_zero()) C.add_dh((int)A, (int)(A | (1u << r)), pmat1(y.scaled(sgn)));
      }
    }
  }
  C.check_d2();
  return C;
}

std::pair<KoszulRows, KoszulRows> koszul_split(const KoszulRows& rows, size_t n) {
  if (n > rows.rows.size()) throw std::out_of_range("koszul_split: bad index");
  KoszulRows a, b;
  a.rows.assign(rows.rows.begin(), rows.rows.begin() + n);
  b.rows.assign(rows.rows.begin() + n, rows.rows.end());
  return {a, b};
}

Cplx mf_tensor(const Cplx& A, const Cplx& B) {
  if (A.ring != B.ring) throw std::invalid_argument("mf_tensor: ring mismatch");
  Cplx C;
  C.ring = A.ring;
  C.phi = A.phi + B.phi;
  size_t NB = B.terms.size();
  for (auto& a : A.terms)
    for (auto& b : B.terms)
      C.add_term(tensor_modules(a.mod, b.mod), a.j + b.j, a.t + b.t);

  auto lift_left = [&](const std::map<std::pair<int, int>, PolyMat>& mp, bool vertical) {
    for (auto& [key, mat] : mp) {
      auto [s, d] = key;
      for (size_t b = 0; b < NB; ++b) {
        int nb = B.terms[b].mod.ngens();
        int ns = A.terms[s].mod.ngens(), nd = A.terms[d].mod.ngens();
        PolyMat M(nd * nb, std::vector<Poly>(ns * nb, poly_zero(C.ring)));
        for (int i = 0; i < nd; ++i)
          for (int k = 0; k < ns; ++k)
            if (!mat[i][k].is_zero())
              for (int g = 0; g < nb; ++g) M[i * nb + g][k * nb + g] = mat[i][k];
        int cs = s * (int)NB + (int)b, cd = d * (int)NB + (int)b;
        if (vertical)
          C.add_dv(cs, cd, std::move(M));
        else
          C.add_dh(cs, cd, std::move(M));
      }
    }
  };
  auto lift_right = [&](const std::map<std::pair<int, int>, PolyMat>& mp, bool vertical) {
    for (auto& [key, mat] : mp) {
      auto [s, d] = key;
      int ns = B.terms[s].mod.ngens(), nd = B.terms[d].mod.ngens();
      for (size_t a = 0; a < A.terms.size(); ++a) {
        int na = A.terms[a].mod.ngens();
        int deg = A.terms[a].j + A.terms[a].t;
        mpq_class sgn = (deg % 2 != 0) ? -1 : 1;
        PolyMat M(na * nd, std::vector<Poly>(na * ns, poly_zero(C.ring)));
        for (int i = 0; i < nd; ++i)
          for (int k = 0; k < ns; ++k)
            if (!mat[i][k].is_zero())
              for (int g = 0; g < na; ++g)
                M[g * nd + i][g * ns + k] = mat[i][k].scaled(sgn);
        int cs = (int)a * (int)NB + s, cd = (int)a * (int)NB + d;
        if (vertical)
          C.add_dv(cs, cd, std::move(M));
        else
          C.add_dh(cs, cd, std::move(M));
      }
    }
  };
  lift_left(A.dv, true);
  lift_left(A.dh, false);
  lift_right(B.dv, true);
  lift_right(B.dh, false);
  return C;
}

static bool const_entry(const PolyMat& m, mpq_class& val) {
  if (m.size() != 1 || m[0].size() != 1) return false;
  const Poly& p = m[0][0];
  if (p.t.size() != 1) return false;
  auto& [mono, c] = *p.t.begin();
  if (mono_deg(mono) != 0) return false;
  val = c;
  return true;
}

Cplx gauss_reduce(Cplx C) {
  size_t n = C.terms.size();
  std::vector<bool> alive(n, true);

  auto bideg = [&](int s, int d) {
    return std::make_pair(C.terms[d].j - C.terms[s].j, C.terms[d].t - C.terms[s].t);
  };
  auto allowed = [](std::pair<int, int> b) {
    return b == std::make_pair(-1, 0) || b == std::make_pair(0, 1) ||
           b == std::make_pair(0, -1);
  };

  bool progress = true;
  while (progress) {
    progress = false;
    // candidate scan, vertical arrows first, key order within each map
    for (int pass = 0; pass < 2 && !progress; ++pass) {
      auto& mp = pass == 0 ? C.dv : C.dh;
      for (auto& [key, mat] : mp) {
        auto [s, d] = key;
        if (!alive[s] || !alive[d]) continue;
        if (C.terms[s].mod.ngens() != 1 || C.terms[d].mod.ngens() != 1) continue;
        mpq_class c;
        if (!const_entry(mat, c) || c == 0) continue;
        if (C.terms[s].mod.key() != C.terms[d].mod.key()) continue;

        // collect neighbours
        std::vector<std::pair<std::pair<int, int>, const PolyMat*>> in_d, out_s;
        for (auto* m2 : {&C.dv, &C.dh})
          for (auto& [k2, m] : *m2) {
            if (!alive[k2.first] || !alive[k2.second]) continue;
            if (k2 == key) continue;
            if (k2.second == d) in_d.push_back({k2, &m});
            if (k2.first == s) out_s.push_back({k2, &m});
          }
        // every correction must stay inside the dv/dh bidegrees
        auto ab = bideg(s, d);
        bool safe = true;
        for (auto& g : in_d)
          for (auto& dl : out_s) {
            auto bg = bideg(g.first.first, g.first.second);
            auto bd = bideg(dl.first.first, dl.first.second);
            std::pair<int, int> corr{bg.first + bd.first - ab.first,
                                     bg.second + bd.second - ab.second};
            if (!allowed(corr)) safe = false;
          }
        if (!safe) continue;

        mpq_class inv = mpq_class(-1) / c;
        for (auto& g : in_d)
          for (auto& dl : out_s) {
            int X = g.first.first, Y = dl.first.second;
            PolyMat corr = pmat_mul(C.ring, *dl.second, *g.second);
            for (auto& row : corr)
              for (auto& p : row) p = p.scaled(inv);
            auto b = bideg(X, Y);
            if (b == std::make_pair(-1, 0))
              C.add_dv(X, Y, std::move(corr));
            else
              C.add_dh(X, Y, std::move(corr));
          }
        alive[s] = alive[d] = false;
        progress = true;
        break;
      }
    }
    if (progress) {
      // drop arrows touching dead terms
      for (auto* m2 : {&C.dv, &C.dh})
        for (auto it = m2->begin(); it != m2->end();)
          if (!alive[it->first.first] || !alive[it->first.second])
            it = m2->erase(it);
          else
            ++it;
    }
  }

  // compact
  std::vector<int> remap(n, -1);
  Cplx R;
  R.ring = C.ring;
  R.phi = C.phi;
  for (size_t i = 0; i < n; ++i)
    if (alive[i]) remap[i] = R.add_term(C.terms[i].mod, C.terms[i].j, C.terms[i].t);
  for (auto& [key, mat] : C.dv) R.add_dv(remap[key.first], remap[key.second], mat);
  for (auto& [key, mat] : C.dh) R.add_dh(remap[key.first], remap[key.second], mat);
  return R;
}

Cplx quotient_complex(const Cplx& C, const Poly& f) {
  Cplx R;
  R.ring = C.ring;
  R.phi = C.phi;
  for (auto& T : C.terms) R.add_term(quotient_by(T.mod, f), T.j, T.t);
  for (auto& [key, mat] : C.dv) R.add_dv(key.first, key.second, mat);
  for (auto& [key, mat] : C.dh) R.add_dh(key.first, key.second, mat);
  return R;
}

PresentedModule collapse_regular(Ring R, const KoszulRows& rows, int cutoff,
                                 bool force) {
  std::vector<Poly> xs;
  for (auto& [x, y] : rows.rows) xs.push_back(x);
  if (!force) {
    for (auto& x : xs)
      if (x.is_zero())
        throw std::runtime_error("collapse_regular: zero entry in the x-sequence");
    // (i) pairwise-disjoint-variable linear forms
    bool disjoint = true;
    std::set<int> seen;
    for (auto& x : xs) {
      if (x.qdeg() != 2) { disjoint = false; break; }
      for (auto& [mono, c] : x.t)
        for (size_t v = 0; v < mono.size(); ++v)
          if (mono[v]) {
            if (seen.count((int)v)) disjoint = false;
            seen.insert((int)v);
          }
    }
    if (!disjoint) {
      // (ii) Koszul homology of the x-sequence vanishes in negative t
      KoszulRows xonly;
      for (auto& x : xs) xonly.rows.emplace_back(x, poly_zero(R));
      Cplx K = koszul_mf(R, xonly);
      Workspace<QQ> ws;
      DimTable tab = bicomplex_hhv(ws, K, cutoff);
      for (auto& [key, dim] : tab.dims)
        if (key[1] < 0 && dim != 0)
          throw std::runtime_error(
              "collapse_regular: sequence not known regular up to the cutoff");
    }
  }
  return cyclic_quotient(R, xs, 0);
}

int64_t DimTable::at(int j, int t, int q) const {
  auto it = dims.find({j, t, q});
  return it == dims.end() ? 0 : it->second;
}

int64_t DimTable::total() const {
  int64_t s = 0;
  for (auto& [k, v] : dims) s += v;
  return s;
}

std::string DimTable::str() const {
  std::ostringstream os;
  for (auto& [k, v] : dims)
    os << "(" << k[0] << "," << k[1] << "," << k[2] << "): " << v << "\n";
  return os.str();
}

}  // namespace kr
