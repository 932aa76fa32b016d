#include "kr/oracles.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kr {

namespace {

void put(std::map<int, long long>& m, int e, long long k) {
  if (k == 0) return;
  auto it = m.find(e);
  if (it == m.end()) {
    m.emplace(e, k);
  } else if ((it->second += k) == 0) {
    m.erase(it);
  }
}

void put2(std::map<std::pair<int, int>, long long>& m, std::pair<int, int> e,
          long long k) {
  if (k == 0) return;
  auto it = m.find(e);
  if (it == m.end()) {
    m.emplace(e, k);
  } else if ((it->second += k) == 0) {
    m.erase(it);
  }
}

void print_coeff(std::ostringstream& o, bool first, long long k,
                 const std::string& body) {
  long long a = k < 0 ? -k : k;
  if (!first) {
    o << (k < 0 ? " - " : " + ");
  } else if (k < 0) {
    o << "-";
  }
  if (a != 1 || body.empty()) {
    o << a;
    if (!body.empty()) o << "*";
  }
  o << body;
}

void require_closed(const TangleDiagram& T, const char* who) {
  if (!T.boundary.empty())
    throw std::invalid_argument(std::string(who) + ": diagram is not closed");
}

std::vector<int> edge_list(const TangleDiagram& T) {
  std::set<int> s;
  for (const auto& c : T.crossings) s.insert(c.e.begin(), c.e.end());
  for (const auto& m : T.markers) {
    s.insert(m.first);
    s.insert(m.second);
  }
  return {s.begin(), s.end()};
}

int edge_index(const std::vector<int>& edges, int e) {
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) return -1;
  return int(it - edges.begin());
}

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) {
    for (int i = 0; i < n; ++i) p[i] = i;
  }
  int find(int a) {
    while (p[a] != a) a = p[a] = p[p[a]];
    return a;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// circle classes of one resolution: per edge class id and circle count
std::pair<std::vector<int>, int> resolve(const TangleDiagram& T,
                                         const std::vector<int>& edges,
                                         unsigned mask) {
  UF uf(int(edges.size()));
  auto at = [&](int e) { return edge_index(edges, e); };
  for (const auto& m : T.markers) uf.unite(at(m.first), at(m.second));
  for (size_t ci = 0; ci < T.crossings.size(); ++ci) {
    const Crossing& c = T.crossings[ci];
    bool oriented = (((mask >> ci) & 1u) == 0) == (c.sign > 0);
    if (oriented) {
      uf.unite(at(c.e[3]), at(c.e[0]));
      uf.unite(at(c.e[2]), at(c.e[1]));
    } else {
      uf.unite(at(c.e[2]), at(c.e[3]));
      uf.unite(at(c.e[0]), at(c.e[1]));
    }
  }
  std::vector<int> cls(edges.size(), -1);
  int n = 0;
  for (size_t i = 0; i < edges.size(); ++i) {
    int r = uf.find(int(i));
    if (cls[r] < 0) cls[r] = n++;
    cls[i] = cls[r];
  }
  return {cls, n};
}

int rank_of(std::vector<std::vector<mpq_class>> M) {
  int rows = int(M.size());
  if (rows == 0) return 0;
  int cols = int(M[0].size());
  int r = 0;
  for (int c0 = 0; c0 < cols && r < rows; ++c0) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (M[i][c0] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[r], M[piv]);
    for (int i = r + 1; i < rows; ++i) {
      if (M[i][c0] == 0) continue;
      mpq_class f = M[i][c0] / M[r][c0];
      for (int j = c0; j < cols; ++j) M[i][j] -= f * M[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

Laurent1 Laurent1::mono(int e, long long k) {
  Laurent1 r;
  put(r.c, e, k);
  return r;
}

Laurent1 Laurent1::operator+(const Laurent1& o) const {
  Laurent1 r = *this;
  for (const auto& [e, k] : o.c) put(r.c, e, k);
  return r;
}

Laurent1 Laurent1::operator-(const Laurent1& o) const {
  Laurent1 r = *this;
  for (const auto& [e, k] : o.c) put(r.c, e, -k);
  return r;
}

Laurent1 Laurent1::operator*(const Laurent1& o) const {
  Laurent1 r;
  for (const auto& [e1, k1] : c)
    for (const auto& [e2, k2] : o.c) put(r.c, e1 + e2, k1 * k2);
  return r;
}

Laurent1 Laurent1::pow(int n) const {
  Laurent1 r = mono(0);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

std::string Laurent1::str(const std::string& var) const {
  if (c.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (const auto& [e, k] : c) {
    std::string body;
    if (e != 0) {
      body = var;
      if (e != 1) body += "^" + std::to_string(e);
    }
    print_coeff(o, first, k, body);
    first = false;
  }
  return o.str();
}

Laurent1 divide_exact(const Laurent1& num, const Laurent1& den) {
  if (den.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
  Laurent1 n = num, q;
  auto dlow = *den.c.begin();
  while (!n.is_zero()) {
    auto nlow = *n.c.begin();
    // a nonzero multiple of den is at least as wide as den, so a narrower
    // remainder proves the division is not exact; the lowest exponent climbs
    // strictly, making this the termination check as well
    if (n.c.rbegin()->first - nlow.first <
            den.c.rbegin()->first - dlow.first ||
        nlow.second % dlow.second != 0)
      throw std::runtime_error("divide_exact: not divisible");
    Laurent1 t =
        Laurent1::mono(nlow.first - dlow.first, nlow.second / dlow.second);
    q = q + t;
    n = n - t * den;
  }
  return q;
}

Laurent2 Laurent2::mono(int ea, int ez, long long k) {
  Laurent2 r;
  put2(r.c, {ea, ez}, k);
  return r;
}

Laurent2 Laurent2::operator+(const Laurent2& o) const {
  Laurent2 r = *this;
  for (const auto& [e, k] : o.c) put2(r.c, e, k);
  return r;
}

Laurent2 Laurent2::operator-(const Laurent2& o) const {
  Laurent2 r = *this;
  for (const auto& [e, k] : o.c) put2(r.c, e, -k);
  return r;
}

Laurent2 Laurent2::operator*(const Laurent2& o) const {
  Laurent2 r;
  for (const auto& [e1, k1] : c)
    for (const auto& [e2, k2] : o.c)
      put2(r.c, {e1.first + e2.first, e1.second + e2.second}, k1 * k2);
  return r;
}

Laurent2 Laurent2::pow(int n) const {
  Laurent2 r = mono(0, 0);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

Laurent2 Laurent2::mirror() const {
  Laurent2 r;
  for (const auto& [e, k] : c)
    put2(r.c, {-e.first, e.second}, (e.second & 1) ? -k : k);
  return r;
}

std::string Laurent2::str() const {
  if (c.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (const auto& [e, k] : c) {
    std::string body;
    if (e.first != 0) {
      body = "a";
      if (e.first != 1) body += "^" + std::to_string(e.first);
    }
    if (e.second != 0) {
      if (!body.empty()) body += "*";
      body += "z";
      if (e.second != 1) body += "^" + std::to_string(e.second);
    }
    print_coeff(o, first, k, body);
    first = false;
  }
  return o.str();
}

Laurent1 jones_kauffman(const TangleDiagram& T) {
  T.validate();
  require_closed(T, "jones_kauffman");
  int n = int(T.crossings.size());
  if (n > 12)
    throw std::invalid_argument("jones_kauffman: too many crossings");
  int np = 0, nm = 0;
  for (const auto& c : T.crossings) (c.sign > 0 ? np : nm)++;
  auto edges = edge_list(T);
  Laurent1 delta = Laurent1::mono(1) + Laurent1::mono(-1);
  Laurent1 acc;
  for (unsigned s = 0; s < (1u << n); ++s) {
    int circles = resolve(T, edges, s).second;
    int r = std::popcount(s);
    Laurent1 term = Laurent1::mono(r, (r & 1) ? -1 : 1);
    acc = acc + term * delta.pow(circles);
  }
  return Laurent1::mono(np - 2 * nm, (nm & 1) ? -1 : 1) * acc;
}

KhTable khovanov_cube(const TangleDiagram& T, bool reduced,
                      int basepoint_edge) {
  T.validate();
  require_closed(T, "khovanov_cube");
  int n = int(T.crossings.size());
  if (n > 9) throw std::invalid_argument("khovanov_cube: too many crossings");
  auto edges = edge_list(T);
  if (edges.empty())
    throw std::invalid_argument("khovanov_cube: empty diagram");
  int np = 0, nm = 0;
  for (const auto& c : T.crossings) (c.sign > 0 ? np : nm)++;
  int bp = 0;
  if (reduced) {
    bp = basepoint_edge < 0 ? 0 : edge_index(edges, basepoint_edge);
    if (bp < 0)
      throw std::invalid_argument("khovanov_cube: unknown basepoint edge");
  }

  int S = 1 << n;
  std::vector<std::vector<int>> cls(S);
  std::vector<int> ncirc(S);
  for (int s = 0; s < S; ++s) {
    auto [c, nc] = resolve(T, edges, unsigned(s));
    cls[s] = std::move(c);
    ncirc[s] = nc;
  }

  // basis elements (state, label mask), bit 1 = x on that circle
  struct Block {
    std::vector<std::pair<int, unsigned>> els;
    std::map<std::pair<int, unsigned>, int> idx;
  };
  std::map<std::pair<int, int>, Block> blocks;
  for (int s = 0; s < S; ++s) {
    int h = std::popcount(unsigned(s)) - nm;
    for (unsigned m = 0; m < (1u << ncirc[s]); ++m) {
      if (reduced && !((m >> cls[s][bp]) & 1u)) continue;
      int q = ncirc[s] - 2 * std::popcount(m) + std::popcount(unsigned(s)) +
              np - 2 * nm;
      Block& b = blocks[{h, q}];
      b.idx[{s, m}] = int(b.els.size());
      b.els.push_back({s, m});
    }
  }

  std::map<std::pair<int, int>, std::vector<std::vector<mpq_class>>> mats;
  auto mat_at = [&](int h, int q) -> std::vector<std::vector<mpq_class>>& {
    auto& M = mats[{h, q}];
    if (M.empty()) {
      auto st = blocks.find({h + 1, q});
      auto ss = blocks.find({h, q});
      size_t rows = st == blocks.end() ? 0 : st->second.els.size();
      size_t colsn = ss == blocks.end() ? 0 : ss->second.els.size();
      M.assign(rows ? rows : 1, std::vector<mpq_class>(colsn ? colsn : 1, 0));
    }
    return M;
  };

  for (const auto& [hq, blk] : blocks) {
    auto [h, q] = hq;
    for (int col = 0; col < int(blk.els.size()); ++col) {
      auto [s, m] = blk.els[col];
      for (int ci = 0; ci < n; ++ci) {
        if ((s >> ci) & 1) continue;
        int s2 = s | (1 << ci);
        int sgn = (std::popcount(unsigned(s) & ((1u << ci) - 1)) & 1) ? -1 : 1;
        const auto& c1 = cls[s];
        const auto& c2 = cls[s2];
        // class correspondence across the one resmoothed crossing
        std::vector<int> img(ncirc[s], -1), img2(ncirc[s], -1);
        for (size_t e = 0; e < edges.size(); ++e) {
          int a = c1[e], b = c2[e];
          if (img[a] < 0 || img[a] == b)
            img[a] = b;
          else
            img2[a] = b;
        }
        auto emit = [&](unsigned m2, int coeff) {
          Block& tb = blocks.at({h + 1, q});
          auto it = tb.idx.find({s2, m2});
          if (it == tb.idx.end()) return;  // reduced complex drops it
          mat_at(h, q)[it->second][col] += coeff;
        };
        if (ncirc[s2] == ncirc[s] - 1) {
          // merge: two classes A,B share an image
          int A = -1, B = -1, C = -1;
          std::vector<int> pre(ncirc[s2], -1);
          for (int a = 0; a < ncirc[s]; ++a) {
            if (pre[img[a]] < 0) {
              pre[img[a]] = a;
            } else {
              A = pre[img[a]];
              B = a;
              C = img[a];
            }
          }
          unsigned la = (m >> A) & 1u, lb = (m >> B) & 1u;
          if (la & lb) continue;  // x.x = 0
          unsigned m2 = 0;
          for (int a = 0; a < ncirc[s]; ++a)
            if (a != A && a != B && ((m >> a) & 1u)) m2 |= 1u << img[a];
          if (la | lb) m2 |= 1u << C;
          emit(m2, sgn);
        } else {
          // split: one class A has two images C,D
          int A = -1;
          for (int a = 0; a < ncirc[s]; ++a)
            if (img2[a] >= 0) A = a;
          int C = img[A], D = img2[A];
          unsigned base = 0;
          for (int a = 0; a < ncirc[s]; ++a)
            if (a != A && ((m >> a) & 1u)) base |= 1u << img[a];
          if ((m >> A) & 1u) {
            emit(base | (1u << C) | (1u << D), sgn);  // x -> x x
          } else {
            emit(base | (1u << C), sgn);  // 1 -> x 1 + 1 x
            emit(base | (1u << D), sgn);
          }
        }
      }
    }
  }

  KhTable out;
  for (const auto& [hq, blk] : blocks) {
    auto [h, q] = hq;
    std::int64_t dim = std::int64_t(blk.els.size());
    auto rk = [&](int hh) -> int {
      auto it = mats.find({hh, q});
      if (it == mats.end()) return 0;
      return rank_of(it->second);
    };
    // image into this block lives in the (h-1, q) matrix
    dim -= rk(h);
    dim -= rk(h - 1);
    if (dim > 0) out.dims[{h, q + (reduced ? 1 : 0)}] = dim;
  }
  return out;
}

std::int64_t KhTable::total() const {
  std::int64_t t = 0;
  for (const auto& [k, d] : dims) t += d;
  return t;
}

std::int64_t KhTable::at(int h, int q) const {
  auto it = dims.find({h, q});
  return it == dims.end() ? 0 : it->second;
}

std::string KhTable::str() const {
  std::ostringstream o;
  for (const auto& [k, d] : dims)
    o << "(" << k.first << "," << k.second << "):" << d << " ";
  return o.str();
}

namespace {

struct HeadRef {
  int kind = 0;  // 0 crossing, 1 marker
  int idx = 0;
  int slot = 0;
};

std::string skein_key(const TangleDiagram& T) {
  std::vector<std::array<int, 5>> cs;
  for (const auto& c : T.crossings)
    cs.push_back({c.sign, c.e[0], c.e[1], c.e[2], c.e[3]});
  std::sort(cs.begin(), cs.end());
  auto ms = T.markers;
  std::sort(ms.begin(), ms.end());
  std::ostringstream o;
  for (const auto& a : cs) {
    for (int v : a) o << v << ",";
    o << ";";
  }
  o << "|";
  for (const auto& m : ms) o << m.first << "," << m.second << ";";
  return o.str();
}

struct SkeinCtx {
  std::map<std::string, Laurent2> memo;
  long long calls = 0;
};

Laurent2 skein_eval(const TangleDiagram& T, SkeinCtx& ctx, int depth) {
  if (depth > 500 || ++ctx.calls > 5000000)
    throw std::runtime_error("homfly_skein: recursion depth exceeded");
  std::string key = skein_key(T);
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;

  auto edges = edge_list(T);
  std::vector<HeadRef> head(edges.size());
  for (int ci = 0; ci < int(T.crossings.size()); ++ci) {
    head[edge_index(edges, T.crossings[ci].e[2])] = {0, ci, 2};
    head[edge_index(edges, T.crossings[ci].e[3])] = {0, ci, 3};
  }
  for (int mi = 0; mi < int(T.markers.size()); ++mi)
    head[edge_index(edges, T.markers[mi].first)] = {1, mi, 0};
  auto next = [&](int e) {
    const HeadRef& h = head[e];
    if (h.kind == 1) return edge_index(edges, T.markers[h.idx].second);
    const Crossing& c = T.crossings[h.idx];
    return edge_index(edges, h.slot == 2 ? c.e[0] : c.e[1]);
  };

  // walk components in order, first sighting of each crossing must be on the
  // over strand for a descending diagram
  std::vector<char> visited(edges.size(), 0), seen(T.crossings.size(), 0);
  int ncomp = 0, bad = -1;
  for (size_t e0 = 0; e0 < edges.size() && bad < 0; ++e0) {
    if (visited[e0]) continue;
    ++ncomp;
    int e = int(e0);
    do {
      visited[e] = 1;
      const HeadRef& h = head[e];
      if (h.kind == 0 && !seen[h.idx]) {
        seen[h.idx] = 1;
        int over = T.crossings[h.idx].sign > 0 ? 2 : 3;
        if (h.slot != over) {
          bad = h.idx;
          break;
        }
      }
      e = next(e);
    } while (e != int(e0));
  }

  Laurent2 val;
  if (bad < 0) {
    // descending, hence an unlink
    Laurent2 delta = Laurent2::mono(1, -1) - Laurent2::mono(-1, -1);
    val = delta.pow(ncomp - 1);
  } else {
    TangleDiagram sw = T;
    sw.crossings[bad].sign = -sw.crossings[bad].sign;
    TangleDiagram sm = T;
    const Crossing c = T.crossings[bad];
    sm.crossings.erase(sm.crossings.begin() + bad);
    sm.markers.push_back({c.e[3], c.e[0]});
    sm.markers.push_back({c.e[2], c.e[1]});
    Laurent2 psw = skein_eval(sw, ctx, depth + 1);
    Laurent2 psm = skein_eval(sm, ctx, depth + 1);
    if (c.sign > 0) {
      // P+ = a^-2 P- + a^-1 z P0
      val = Laurent2::mono(-2, 0) * psw + Laurent2::mono(-1, 1) * psm;
    } else {
      // P- = a^2 P+ - a z P0
      val = Laurent2::mono(2, 0) * psw - Laurent2::mono(1, 1) * psm;
    }
  }
  ctx.memo.emplace(std::move(key), val);
  return val;
}

}  // namespace

Laurent2 homfly_skein(const TangleDiagram& T) {
  T.validate();
  require_closed(T, "homfly_skein");
  if (T.crossings.size() > 10)
    throw std::invalid_argument("homfly_skein: too many crossings");
  SkeinCtx ctx;
  return skein_eval(T, ctx, 0);
}

Laurent1 jones_specialization(const Laurent2& P) {
  if (P.is_zero()) return {};
  int minz = 0;
  for (const auto& [e, k] : P.c) minz = std::min(minz, e.second);
  int shift = -minz;
  Laurent1 zq = Laurent1::mono(-1) - Laurent1::mono(1);
  Laurent1 num;
  for (const auto& [e, k] : P.c)
    num = num + Laurent1::mono(-2 * e.first, k) * zq.pow(e.second + shift);
  Laurent1 red = divide_exact(num, zq.pow(shift));
  return (Laurent1::mono(1) + Laurent1::mono(-1)) * red;
}

Laurent1 euler_char(const KhTable& t) {
  Laurent1 r;
  for (const auto& [k, d] : t.dims)
    r = r + Laurent1::mono(k.second, (k.first & 1) ? -d : d);
  return r;
}

Laurent1 euler_char(const std::vector<std::array<std::int64_t, 3>>& entries) {
  Laurent1 r;
  for (const auto& e : entries)
    r = r + Laurent1::mono(int(e[1]), (e[0] & 1) ? -e[2] : e[2]);
  return r;
}

Laurent1 euler_char(
    const DimTable& t,
    const std::function<std::pair<int, int>(int, int, int)>& collapse,
    bool force) {
  Laurent1 r;
  for (const auto& [cell, d] : t.dims) {
    if (cell[2] > t.certified && !force)
      throw std::runtime_error("euler_char: provisional entries in window");
    auto [sgn, e] = collapse(cell[0], cell[1], cell[2]);
    r = r + Laurent1::mono(e, (sgn & 1) ? -d : d);
  }
  return r;
}

}  // namespace kr
