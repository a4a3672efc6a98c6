#pragma once
/* Lattice-ordered abelian groups and their finite join-closed subsets.
   Supported orders: the product (coordinatewise) order on Z^n, the
   lexicographic order (order arithmetic only; it cannot carry a dynamical
   action in rank >= 2 because its positive cone is not finitely generated),
   and divisible chains [1, n1, ...] stored as plain integers at the finest
   level.  Coordinates use checked machine integers: overflow is a hard error,
   never wraparound. */
#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace semicross {

using Coord = long long;
using Pt = std::vector<Coord>;
/* Sorted, duplicate-free, join-closed point set. */
using Grid = std::vector<Pt>;

inline Coord checked_add(Coord a, Coord b) {
  Coord r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw invalid_input("coordinate overflow in addition");
  return r;
}
inline Coord checked_sub(Coord a, Coord b) {
  Coord r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw invalid_input("coordinate overflow in subtraction");
  return r;
}
inline Coord checked_mul(Coord a, Coord b) {
  Coord r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw invalid_input("coordinate overflow in multiplication");
  return r;
}

enum class OrderKind { product, lex, chain };

struct OrderSpec {
  OrderKind kind = OrderKind::product;
  int rank = 1;                // coordinate count of group elements (chain: always 1)
  std::vector<Coord> levels;   // chain only: strictly increasing, levels[0] = 1, each divides the next

  static OrderSpec product(int rank) {
    if (rank < 1) throw invalid_input("order rank must be at least 1");
    return {OrderKind::product, rank, {}};
  }
  static OrderSpec lex(int rank) {
    if (rank < 1) throw invalid_input("order rank must be at least 1");
    return {OrderKind::lex, rank, {}};
  }
  static OrderSpec chain(std::vector<Coord> lv) {
    if (lv.empty()) throw invalid_input("a chain needs at least one level");
    if (lv.front() != 1) throw invalid_input("chain levels must start at 1");
    for (size_t i = 0; i + 1 < lv.size(); ++i) {
      if (lv[i + 1] <= lv[i]) throw invalid_input("chain levels must be strictly increasing");
      if (lv[i + 1] % lv[i] != 0) throw invalid_input("each chain level must divide the next");
    }
    return {OrderKind::chain, 1, std::move(lv)};
  }

  bool operator==(const OrderSpec&) const = default;
};

inline void check_point(const Pt& g, const OrderSpec& spec) {
  if (static_cast<int>(g.size()) != spec.rank)
    throw invalid_input("dimension mismatch: expected rank " + std::to_string(spec.rank) +
                        ", got a point of length " + std::to_string(g.size()));
}

inline Pt zero_pt(const OrderSpec& spec) { return Pt(spec.rank, 0); }

inline Pt unit_pt(const OrderSpec& spec, int i) {
  Pt e = zero_pt(spec);
  e.at(i) = 1;
  return e;
}

inline Pt pt_add(const Pt& g, const Pt& h) {
  if (g.size() != h.size()) throw invalid_input("dimension mismatch in point addition");
  Pt r(g.size());
  for (size_t i = 0; i < g.size(); ++i) r[i] = checked_add(g[i], h[i]);
  return r;
}
inline Pt pt_sub(const Pt& g, const Pt& h) {
  if (g.size() != h.size()) throw invalid_input("dimension mismatch in point subtraction");
  Pt r(g.size());
  for (size_t i = 0; i < g.size(); ++i) r[i] = checked_sub(g[i], h[i]);
  return r;
}
inline Pt pt_neg(const Pt& g) {
  Pt r(g.size());
  for (size_t i = 0; i < g.size(); ++i) r[i] = checked_sub(0, g[i]);
  return r;
}
inline Pt pt_scale(Coord k, const Pt& g) {
  Pt r(g.size());
  for (size_t i = 0; i < g.size(); ++i) r[i] = checked_mul(k, g[i]);
  return r;
}

inline bool leq(const Pt& g, const Pt& h, const OrderSpec& spec) {
  check_point(g, spec);
  check_point(h, spec);
  switch (spec.kind) {
    case OrderKind::product:
      for (int i = 0; i < spec.rank; ++i)
        if (g[i] > h[i]) return false;
      return true;
    case OrderKind::lex:
      for (int i = 0; i < spec.rank; ++i) {
        if (g[i] < h[i]) return true;
        if (g[i] > h[i]) return false;
      }
      return true;
    case OrderKind::chain:
      return g[0] <= h[0];
  }
  return false;
}

inline bool lt(const Pt& g, const Pt& h, const OrderSpec& spec) { return g != h && leq(g, h, spec); }

inline Pt join(const Pt& g, const Pt& h, const OrderSpec& spec) {
  check_point(g, spec);
  check_point(h, spec);
  if (spec.kind == OrderKind::product) {
    Pt r(spec.rank);
    for (int i = 0; i < spec.rank; ++i) r[i] = std::max(g[i], h[i]);
    return r;
  }
  return leq(g, h, spec) ? h : g;  // total orders
}

inline Pt meet(const Pt& g, const Pt& h, const OrderSpec& spec) {
  check_point(g, spec);
  check_point(h, spec);
  if (spec.kind == OrderKind::product) {
    Pt r(spec.rank);
    for (int i = 0; i < spec.rank; ++i) r[i] = std::min(g[i], h[i]);
    return r;
  }
  return leq(g, h, spec) ? g : h;  // total orders
}

inline Pt pos_part(const Pt& g, const OrderSpec& spec) { return join(g, zero_pt(spec), spec); }
inline Pt neg_part(const Pt& g, const OrderSpec& spec) { return pos_part(pt_neg(g), spec); }

inline bool is_join_closed(const Grid& F, const OrderSpec& spec) {
  std::set<Pt> pts(F.begin(), F.end());
  for (const Pt& g : F)
    for (const Pt& h : F)
      if (!pts.count(join(g, h, spec))) return false;
  return true;
}

/* Smallest join-closed superset; at most 2^|S| points. */
inline Grid grid_closure(const std::vector<Pt>& S, const OrderSpec& spec) {
  std::set<Pt> out;
  for (const Pt& g : S) {
    check_point(g, spec);
    out.insert(g);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Pt> cur(out.begin(), out.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j)
        if (out.insert(join(cur[i], cur[j], spec)).second) grew = true;
  }
  return Grid(out.begin(), out.end());
}

/* Coefficients c_g with sum over {h in F : h <= g} of c_h equal to 1 for every
   g in F, computed by the recursion c_g = 1 - sum over strictly smaller h.
   `order` must list F in some linear extension of the lattice order; the
   resulting family does not depend on which extension is chosen. */
inline std::map<Pt, long long> c_coefficients_in_order(const Grid& F, const OrderSpec& spec,
                                                       const std::vector<Pt>& order) {
  if (F.empty()) throw invalid_input("coefficient recursion needs a nonempty join-closed set");
  std::map<Pt, long long> c;
  for (const Pt& g : order) {
    long long below = 0;
    for (const Pt& h : F) {
      if (h == g || !lt(h, g, spec)) continue;
      auto it = c.find(h);
      if (it == c.end()) throw invariant_violation("processing order is not a linear extension");
      below += it->second;
    }
    c[g] = 1 - below;
  }
  if (c.size() != F.size()) throw invalid_input("processing order must enumerate the whole set");
  return c;
}

inline std::map<Pt, long long> c_coefficients(const Grid& F, const OrderSpec& spec) {
  if (!is_join_closed(F, spec)) throw invalid_input("coefficient recursion needs a join-closed set");
  Grid sorted = F;
  std::sort(sorted.begin(), sorted.end());  // lexicographic: a linear extension of all three orders
  return c_coefficients_in_order(F, spec, sorted);
}

/* All points of the coordinate box [lo, hi], in lexicographic order.  For the
   lexicographic ORDER this is still the coordinate box (the order interval
   would be infinite in rank >= 2); it is plumbing for finite enumeration
   windows, not order arithmetic. */
inline std::vector<Pt> enum_box(const Pt& lo, const Pt& hi, const OrderSpec& spec) {
  check_point(lo, spec);
  check_point(hi, spec);
  for (int i = 0; i < spec.rank; ++i)
    if (lo[i] > hi[i]) throw invalid_input("reversed box bounds");
  std::vector<Pt> out;
  Pt cur = lo;
  while (true) {
    out.push_back(cur);
    int i = spec.rank - 1;
    while (i >= 0) {
      if (cur[i] < hi[i]) {
        ++cur[i];
        break;
      }
      cur[i] = lo[i];
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

inline Pt coordinate_min(const Grid& F) {
  Pt lo = F.at(0);
  for (const Pt& g : F)
    for (size_t i = 0; i < lo.size(); ++i) lo[i] = std::min(lo[i], g[i]);
  return lo;
}
inline Pt coordinate_max(const Grid& F) {
  Pt hi = F.at(0);
  for (const Pt& g : F)
    for (size_t i = 0; i < hi.size(); ++i) hi[i] = std::max(hi[i], g[i]);
  return hi;
}

inline std::string pt_to_string(const Pt& g) {
  std::string s = "(";
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g[i]);
  }
  return s + ")";
}

}  // namespace semicross
