#include "kr/grmod.hpp"

#include <algorithm>
#include <stdexcept>

namespace kr {

static bool same_ring(const Ring& a, const Ring& b) {
  return a == b || a->names == b->names;
}

int PresentedModule::coldeg(int c) const {
  const auto& col = rels[c];
  int d = INT32_MIN;
  for (int g = 0; g < ngens(); ++g) {
    if (col[g].is_zero()) continue;
    int dg = col[g].qdeg() + gens[g];
    if (d == INT32_MIN) d = dg;
    else if (d != dg)
      throw std::logic_error("relation column " + std::to_string(c) + " not homogeneous");
  }
  if (d == INT32_MIN) throw std::logic_error("zero relation column");
  return d;
}

void PresentedModule::validate() const {
  for (size_t c = 0; c < rels.size(); ++c) {
    if ((int)rels[c].size() != ngens())
      throw std::logic_error("relation column arity mismatch");
    bool nz = false;
    for (auto& p : rels[c]) {
      if (p.ring && !same_ring(p.ring, ring))
        throw std::logic_error("relation entry over a different ring");
      if (!p.is_homogeneous()) throw std::logic_error("inhomogeneous relation entry");
      nz = nz || !p.is_zero();
    }
    if (nz) (void)coldeg((int)c);
  }
}

PresentedModule PresentedModule::shifted(int s) const {
  PresentedModule r = *this;
  for (auto& g : r.gens) g += s;
  return r;
}

std::string PresentedModule::key() const {
  std::string k = "R[";
  for (auto& nm : ring->names) k += nm + ",";
  k += "]g[";
  for (int g : gens) k += std::to_string(g) + ",";
  k += "]r[";
  for (auto& col : rels) {
    for (auto& p : col) k += p.str() + ";";
    k += "|";
  }
  k += "]";
  return k;
}

PresentedModule free_module(Ring R, std::vector<int> gens) {
  PresentedModule m;
  m.ring = std::move(R);
  m.gens = std::move(gens);
  return m;
}

PresentedModule cyclic_quotient(Ring R, std::vector<Poly> rels, int shift) {
  PresentedModule m;
  m.ring = R;
  m.gens = {shift};
  for (auto& p : rels) {
    if (p.is_zero()) continue;
    m.rels.push_back({p});
  }
  m.validate();
  return m;
}

PresentedModule direct_sum(const PresentedModule& A, const PresentedModule& B) {
  if (!same_ring(A.ring, B.ring)) throw std::logic_error("direct_sum: ring mismatch");
  PresentedModule m;
  m.ring = A.ring;
  m.gens = A.gens;
  m.gens.insert(m.gens.end(), B.gens.begin(), B.gens.end());
  Poly z(A.ring);
  for (auto& col : A.rels) {
    auto c = col;
    c.resize(m.gens.size(), z);
    m.rels.push_back(std::move(c));
  }
  for (auto& col : B.rels) {
    std::vector<Poly> c(A.ngens(), z);
    c.insert(c.end(), col.begin(), col.end());
    m.rels.push_back(std::move(c));
  }
  return m;
}

PresentedModule tensor_modules(const PresentedModule& A, const PresentedModule& B) {
  if (!same_ring(A.ring, B.ring)) throw std::logic_error("tensor_modules: ring mismatch");
  PresentedModule m;
  m.ring = A.ring;
  int nb = B.ngens();
  for (int a = 0; a < A.ngens(); ++a)
    for (int b = 0; b < nb; ++b) m.gens.push_back(A.gens[a] + B.gens[b]);
  Poly z(A.ring);
  // rel (x) gen and gen (x) rel
  for (auto& col : A.rels)
    for (int b = 0; b < nb; ++b) {
      std::vector<Poly> c(m.gens.size(), z);
      for (int a = 0; a < A.ngens(); ++a) c[a * nb + b] = col[a];
      m.rels.push_back(std::move(c));
    }
  for (int a = 0; a < A.ngens(); ++a)
    for (auto& col : B.rels) {
      std::vector<Poly> c(m.gens.size(), z);
      for (int b = 0; b < nb; ++b) c[a * nb + b] = col[b];
      m.rels.push_back(std::move(c));
    }
  return m;
}

PresentedModule quotient_by(const PresentedModule& M, const Poly& f) {
  PresentedModule m = M;
  Poly z(M.ring);
  for (int g = 0; g < M.ngens(); ++g) {
    std::vector<Poly> c(M.ngens(), z);
    c[g] = f;
    m.rels.push_back(std::move(c));
  }
  return m;
}

int ModuleMap::degree() const {
  int d = INT32_MIN;
  for (int i = 0; i < dst.ngens(); ++i)
    for (int j = 0; j < src.ngens(); ++j) {
      if (mat[i][j].is_zero()) continue;
      int dd = mat[i][j].qdeg() + dst.gens[i] - src.gens[j];
      if (d == INT32_MIN) d = dd;
      else if (d != dd) throw std::logic_error("map not homogeneous");
    }
  return d == INT32_MIN ? 0 : d;
}

void ModuleMap::validate() const {
  if (!same_ring(src.ring, dst.ring)) throw std::logic_error("map: ring mismatch");
  if ((int)mat.size() != dst.ngens()) throw std::logic_error("map: row count");
  for (auto& row : mat)
    if ((int)row.size() != src.ngens()) throw std::logic_error("map: col count");
  (void)degree();
}

std::string ModuleMap::key() const {
  std::string k = src.key() + "->" + dst.key() + "@[";
  for (auto& row : mat) {
    for (auto& p : row) k += p.str() + ";";
    k += "|";
  }
  return k + "]";
}

ModuleMap mult_map(const PresentedModule& src, const PresentedModule& dst, const Poly& f) {
  if (src.ngens() != dst.ngens()) throw std::logic_error("mult_map: gen count mismatch");
  ModuleMap m;
  m.src = src;
  m.dst = dst;
  Poly z(src.ring);
  m.mat.assign(dst.ngens(), std::vector<Poly>(src.ngens(), z));
  for (int g = 0; g < src.ngens(); ++g) m.mat[g][g] = f;
  m.validate();
  return m;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (g.src.key() != f.dst.key()) throw std::logic_error("compose: middle module mismatch");
  ModuleMap m;
  m.src = f.src;
  m.dst = g.dst;
  Poly z(f.src.ring);
  m.mat.assign(g.dst.ngens(), std::vector<Poly>(f.src.ngens(), z));
  for (int i = 0; i < g.dst.ngens(); ++i)
    for (int j = 0; j < f.src.ngens(); ++j) {
      Poly acc(f.src.ring);
      for (int k = 0; k < f.dst.ngens(); ++k) acc = acc + g.mat[i][k] * f.mat[k][j];
      m.mat[i][j] = acc;
    }
  m.validate();
  return m;
}

Renames Renames::identity(int n) {
  Renames r;
  r.repr.resize(n);
  r.coef.assign(n, mpq_class(1));
  for (int i = 0; i < n; ++i) r.repr[i] = i;
  return r;
}

}  // namespace kr
