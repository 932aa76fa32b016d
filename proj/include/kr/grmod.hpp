#pragma once
// Finitely presented graded modules over a polynomial ring, and the
// degreewise realization engine: for each (module, degree) we maintain an
// incremental echelon ("staircase") of the relation span inside the span of
// monomial labels (gen, monomial). Degree n reuses the reduced basis of
// degree n-2 multiplied by each variable, so realizations are incremental in
// the degree. Modules are never resolved; maps are realized as matrices on
// the free label bases and checked for well-definedness on the presentation.
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kr/linalg.hpp"
#include "kr/poly.hpp"

namespace kr {

struct PresentedModule {
  Ring ring;
  std::vector<int> gens;                    // q-degree of each generator
  std::vector<std::vector<Poly>> rels;      // rels[c][g], column c, generator g

  int ngens() const { return (int)gens.size(); }
  int coldeg(int c) const;                  // homogeneous column degree
  void validate() const;
  PresentedModule shifted(int s) const;
  std::string key() const;                  // canonical serialization
};

PresentedModule free_module(Ring R, std::vector<int> gens);
PresentedModule cyclic_quotient(Ring R, std::vector<Poly> rels, int shift = 0);
PresentedModule direct_sum(const PresentedModule& A, const PresentedModule& B);
// tensor over the common polynomial ring; generator (a,b) has index a*B.ngens()+b
PresentedModule tensor_modules(const PresentedModule& A, const PresentedModule& B);
// M / f*M
PresentedModule quotient_by(const PresentedModule& M, const Poly& f);

struct ModuleMap {
  PresentedModule src, dst;
  std::vector<std::vector<Poly>> mat;       // mat[d][s]: dst gen d, src gen s
  int degree() const;                       // uniform q-degree of the map
  void validate() const;
  std::string key() const;
};

ModuleMap mult_map(const PresentedModule& src, const PresentedModule& dst, const Poly& f);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f

// scaled variable identification extracted from 2-term linear relations of a
// cyclic module: v is stored as coef[v] * x_repr[v]
struct Renames {
  std::vector<int> repr;
  std::vector<mpq_class> coef;
  static Renames identity(int n);
};

// ---- degreewise realization ----------------------------------------------

template <class F>
struct ModReal {
  PresentedModule M;                        // as given (gens may be shifted)
  Renames ren;
  Ring rring;                               // kept vars
  std::vector<int> keep;                    // reduced var -> ambient var
  std::vector<int> amb2red;                 // ambient var -> reduced var or -1
  std::vector<std::vector<Poly>> rrels;     // relation columns over rring
  MonIdx midx;

  struct Deg {
    std::vector<std::pair<int, int64_t>> genoff;  // (gen, label offset)
    int64_t nlabels = 0;
    Echelon<F> stair;
    std::vector<int32_t> freecols;
    std::map<int32_t, int> freepos;
  };
  std::map<int, Deg> degs;

  explicit ModReal(const PresentedModule& m);
  Deg& ensure(int n);
  int minshift() const;
  int64_t label_of(const Deg& D, int g, const Mono& m) const;
  // rename an ambient monomial into (coeff multiplier, reduced monomial)
  std::pair<mpq_class, Mono> reduce_mono(const Mono& amb) const;
  // realize an element given per-gen reduced-ring polys of matching degrees
  SVec<F> to_labels(const Deg& D, const std::vector<Poly>& elem) const;
};

template <class F>
class Workspace {
 public:
  int64_t realize_dim(const PresentedModule& M, int n);
  // coordinates of an element (per-gen ambient polys, homogeneous total degree n)
  // on the free basis at degree n; empty vector = zero class
  SVec<F> realize_element(const PresentedModule& M, const std::vector<Poly>& elem, int n);
  // columns = coords of images of the source free basis at degree n
  // (target degree n + f.degree()); checks well-definedness once per map
  std::vector<SVec<F>> realize_map(const ModuleMap& f, int n);
  std::vector<int64_t> hilbert_truncated(const PresentedModule& M, int D);

  ModReal<F>& get(const PresentedModule& M, int& offset);

 private:
  std::map<std::string, std::unique_ptr<ModReal<F>>> cache_;
  std::map<std::string, bool> mapchecked_;
};

}  // namespace kr

#include "kr/grmod_impl.hpp"
