#pragma once
/* Elements of the product dilation: finite sums of translated copies of the
   function algebra, stored as a join-closed key grid plus one coefficient
   function per key.  The element with keys F and coefficients a_g has, at
   every group element h, the "entry" sum of alpha_{h-g}(a_g) over keys g <= h;
   two elements are equal exactly when their entries agree everywhere, which
   reduces to coefficient equality once both are padded onto a common grid.
   All products are pointwise in the entry picture; the key-level formula
   below (pairwise joins) is its finite-support realization. */
#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dynsys.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "scalar.hpp"

namespace semicross {

/* ---- pointwise function arithmetic ---------------------------------------- */

inline Func func_add(const Func& a, const Func& b) {
  if (a.size() != b.size()) throw invalid_input("function length mismatch");
  Func r(a.size());
  for (size_t x = 0; x < a.size(); ++x) r[x] = a[x] + b[x];
  return r;
}
inline Func func_sub(const Func& a, const Func& b) {
  if (a.size() != b.size()) throw invalid_input("function length mismatch");
  Func r(a.size());
  for (size_t x = 0; x < a.size(); ++x) r[x] = a[x] - b[x];
  return r;
}
inline Func func_mul(const Func& a, const Func& b) {
  if (a.size() != b.size()) throw invalid_input("function length mismatch");
  Func r(a.size());
  for (size_t x = 0; x < a.size(); ++x) r[x] = a[x] * b[x];
  return r;
}
inline Func func_scale(const GaussRat& c, const Func& a) {
  Func r(a.size());
  for (size_t x = 0; x < a.size(); ++x) r[x] = c * a[x];
  return r;
}
inline Func func_conj(const Func& a) {
  Func r(a.size());
  for (size_t x = 0; x < a.size(); ++x) r[x] = a[x].conj();
  return r;
}

/* ---- the element type ------------------------------------------------------ */

struct DilationElement {
  Grid grid;                // sorted, join-closed, never empty
  std::vector<Func> coeff;  // parallel to grid
};

inline void check_element(const System& sys, const DilationElement& x) {
  if (x.grid.empty()) throw invariant_violation("element with an empty key grid");
  if (x.grid.size() != x.coeff.size()) throw invariant_violation("key/coefficient count mismatch");
  for (const Pt& g : x.grid) check_point(g, sys.order);
  for (const Func& a : x.coeff)
    if (a.size() != static_cast<size_t>(sys.n_points))
      throw invalid_input("coefficient has the wrong number of values");
}

/* Assemble an element from keys and coefficients: duplicate keys are summed,
   the key set is closed under joins, and missing keys get zero coefficients. */
inline DilationElement make_element(const System& sys, const std::vector<std::pair<Pt, Func>>& terms) {
  std::map<Pt, Func> acc;
  std::vector<Pt> keys;
  if (terms.empty()) keys.push_back(zero_pt(sys.order));
  for (const auto& [g, a] : terms) {
    check_point(g, sys.order);
    if (a.size() != static_cast<size_t>(sys.n_points))
      throw invalid_input("coefficient has the wrong number of values");
    auto [it, fresh] = acc.emplace(g, a);
    if (!fresh) it->second = func_add(it->second, a);
    keys.push_back(g);
  }
  DilationElement x;
  x.grid = grid_closure(keys, sys.order);
  for (const Pt& g : x.grid) {
    auto it = acc.find(g);
    x.coeff.push_back(it == acc.end() ? zero_func(sys.n_points) : it->second);
  }
  return x;
}

inline DilationElement zero_element(const System& sys) { return make_element(sys, {}); }

/* The copy of the function algebra sitting at key zero. */
inline DilationElement embed_iota(const System& sys, const Func& a) {
  return make_element(sys, {{zero_pt(sys.order), a}});
}

/* The unit of that copy: the fundamental projection. */
inline DilationElement unit_element(const System& sys) { return embed_iota(sys, one_func(sys.n_points)); }

inline const Func* coefficient_at(const DilationElement& x, const Pt& g) {
  auto it = std::lower_bound(x.grid.begin(), x.grid.end(), g);
  if (it == x.grid.end() || *it != g) return nullptr;
  return &x.coeff[static_cast<size_t>(it - x.grid.begin())];
}

/* The value of the element at group point h: sum of alpha_{h-g}(a_g) over
   keys g <= h.  Zero whenever no key lies below h. */
inline Func entry_at(const System& sys, const DilationElement& x, const Pt& h) {
  check_point(h, sys.order);
  Func r = zero_func(sys.n_points);
  for (size_t k = 0; k < x.grid.size(); ++k) {
    if (!leq(x.grid[k], h, sys.order) || func_is_zero(x.coeff[k])) continue;
    r = func_add(r, alpha_func(sys, pt_sub(h, x.grid[k]), x.coeff[k]));
  }
  return r;
}

/* Re-represent x on a larger join-closed grid by zero padding.  Every key of
   x carrying a nonzero coefficient must already lie in G. */
inline DilationElement on_grid(const System& sys, const DilationElement& x, const Grid& G) {
  DilationElement r;
  r.grid = G;
  std::map<Pt, const Func*> lookup;
  for (size_t k = 0; k < x.grid.size(); ++k) lookup[x.grid[k]] = &x.coeff[k];
  for (const Pt& g : G) {
    auto it = lookup.find(g);
    r.coeff.push_back(it == lookup.end() ? zero_func(sys.n_points) : *it->second);
    if (it != lookup.end()) lookup.erase(it);
  }
  for (const auto& [g, a] : lookup)
    if (!func_is_zero(*a))
      throw invalid_input("element is not representable on the requested grid: key " + pt_to_string(g) +
                          " is missing");
  return r;
}

inline Grid common_grid(const System& sys, const DilationElement& x, const DilationElement& y) {
  std::vector<Pt> keys(x.grid.begin(), x.grid.end());
  keys.insert(keys.end(), y.grid.begin(), y.grid.end());
  return grid_closure(keys, sys.order);
}

inline DilationElement dil_add(const System& sys, const DilationElement& x, const DilationElement& y) {
  Grid G = common_grid(sys, x, y);
  DilationElement a = on_grid(sys, x, G), b = on_grid(sys, y, G);
  for (size_t k = 0; k < G.size(); ++k) a.coeff[k] = func_add(a.coeff[k], b.coeff[k]);
  return a;
}
inline DilationElement dil_sub(const System& sys, const DilationElement& x, const DilationElement& y) {
  Grid G = common_grid(sys, x, y);
  DilationElement a = on_grid(sys, x, G), b = on_grid(sys, y, G);
  for (size_t k = 0; k < G.size(); ++k) a.coeff[k] = func_sub(a.coeff[k], b.coeff[k]);
  return a;
}
inline DilationElement dil_scale(const GaussRat& c, DilationElement x) {
  for (Func& a : x.coeff) a = func_scale(c, a);
  return x;
}

/* Entries multiply pointwise; on keys that reads: each pair of keys (g, h)
   contributes alpha_{j-g}(a_g) * alpha_{j-h}(b_h) at the join j of g and h.
   The set of pairwise joins of two join-closed grids is again join-closed. */
inline DilationElement dil_mul(const System& sys, const DilationElement& x, const DilationElement& y) {
  std::map<Pt, Func> acc;
  for (size_t i = 0; i < x.grid.size(); ++i) {
    if (func_is_zero(x.coeff[i])) continue;
    for (size_t j = 0; j < y.grid.size(); ++j) {
      if (func_is_zero(y.coeff[j])) continue;
      Pt jn = join(x.grid[i], y.grid[j], sys.order);
      Func term = func_mul(alpha_func(sys, pt_sub(jn, x.grid[i]), x.coeff[i]),
                           alpha_func(sys, pt_sub(jn, y.grid[j]), y.coeff[j]));
      auto [it, fresh] = acc.emplace(jn, term);
      if (!fresh) it->second = func_add(it->second, term);
    }
  }
  std::vector<std::pair<Pt, Func>> terms(acc.begin(), acc.end());
  return make_element(sys, terms);
}

/* Termwise conjugation: translation and the embedding both respect adjoints. */
inline DilationElement dil_adjoint(DilationElement x) {
  for (Func& a : x.coeff) a = func_conj(a);
  return x;
}

inline bool dil_is_zero(const DilationElement& x) {
  for (const Func& a : x.coeff)
    if (!func_is_zero(a)) return false;
  return true;
}

/* Representation on a fixed grid is unique, so equality is coefficient
   equality after padding onto a common grid. */
inline bool dil_equal(const System& sys, const DilationElement& x, const DilationElement& y) {
  Grid G = common_grid(sys, x, y);
  return on_grid(sys, x, G).coeff == on_grid(sys, y, G).coeff;
}

/* Translation by v: keys move down by v, coefficients are untouched, and the
   entry at h becomes the old entry at h + v.  Defined for every group
   element, not only cone members. */
inline DilationElement dil_shift(const System& sys, const DilationElement& x, const Pt& v) {
  check_point(v, sys.order);
  DilationElement r;
  for (const Pt& g : x.grid) r.grid.push_back(pt_sub(g, v));
  r.coeff = x.coeff;
  return r;
}

/* ---- norms ----------------------------------------------------------------- */

/* Every entry value the element ever takes already occurs with h in the box
   [grid minimum, grid maximum + per-coordinate index + period]: below the
   minimum all entries vanish, and beyond the window each power map has already
   appeared, so larger h only repeat earlier entries. */
inline std::pair<Pt, Pt> norm_box(const System& sys, const DilationElement& x) {
  check_element(sys, x);
  Pt lo = coordinate_min(x.grid);
  Pt hi = pt_add(coordinate_max(x.grid), sys.window());
  return {lo, hi};
}

/* Squared sup norm, exactly: max over box entries and points of |value|^2.
   The square keeps the result rational even for complex values. */
inline Rat sup_norm_sq(const System& sys, const DilationElement& x) {
  auto [lo, hi] = norm_box(sys, x);
  Rat best{0};
  for (const Pt& h : enum_box(lo, hi, sys.order)) {
    Func e = entry_at(sys, x, h);
    for (const GaussRat& v : e) best = std::max(best, v.abs_sq());
  }
  return best;
}

/* ---- the approximate identity ---------------------------------------------- */

/* Whether the projection translated by p acts as the identity on x.  The set
   of such p is a principal filter in the cone (it is upward closed and closed
   under meets), so coordinatewise greedy descent from any member reaches the
   least one. */
inline bool absorbed_at(const System& sys, const DilationElement& x, const Pt& p) {
  return dil_equal(sys, dil_mul(sys, dil_shift(sys, unit_element(sys), p), x), x);
}

inline Pt approx_identity_index(const System& sys, const DilationElement& x) {
  check_element(sys, x);
  Pt p = zero_pt(sys.order);
  for (const Pt& g : x.grid) p = join(p, neg_part(g, sys.order), sys.order);
  if (!absorbed_at(sys, x, p))
    throw invariant_violation("translated projection fails to absorb at the guaranteed index");
  for (int i = 0; i < sys.order.rank; ++i) {
    while (p[i] > 0) {
      Pt q = p;
      --q[i];
      if (!absorbed_at(sys, x, q)) break;
      p = q;
    }
  }
  return p;
}

/* ---- structural checks ------------------------------------------------------ */

struct NicaReport {
  bool ok = true;
  std::string detail;  // first failure, empty when ok

  void fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
};

/* Entries of a product must be the pointwise products of the factors'
   entries, over the whole norm box of the three elements involved. */
inline bool check_product_oracle(const System& sys, const DilationElement& x, const DilationElement& y) {
  DilationElement p = dil_mul(sys, x, y);
  std::vector<Pt> keys = p.grid;
  keys.insert(keys.end(), x.grid.begin(), x.grid.end());
  keys.insert(keys.end(), y.grid.begin(), y.grid.end());
  Grid all = grid_closure(keys, sys.order);
  Pt lo = coordinate_min(all);
  Pt hi = pt_add(coordinate_max(all), sys.window());
  for (const Pt& h : enum_box(lo, hi, sys.order))
    if (entry_at(sys, p, h) != func_mul(entry_at(sys, x, h), entry_at(sys, y, h))) return false;
  return true;
}

/* The covariance package, checked exactly on a finite window of cone
   exponents and a family of sample functions:
     - the embedding is a *-homomorphism;
     - compressing a translated embedded function by the fundamental
       projection realizes the composition endomorphism;
     - translated projections multiply along joins (the lattice condition);
     - the algebra is commutative;
     - translated projections eventually absorb every sample element. */
inline NicaReport verify_nica_axioms(const System& sys, const std::vector<Func>& samples_in = {},
                                     Coord radius = 0) {
  NicaReport rep;
  std::vector<Func> samples = samples_in;
  if (samples.empty()) {
    for (int x = 0; x < sys.n_points; ++x) samples.push_back(delta_func(sys.n_points, x));
    samples.push_back(one_func(sys.n_points));
  }
  if (radius <= 0) {
    radius = 1;
    for (Coord w : sys.window()) radius = std::max(radius, w);
  }

  DilationElement pa = unit_element(sys);
  Pt lo = zero_pt(sys.order);
  Pt hi(static_cast<size_t>(sys.order.rank), radius);
  std::vector<Pt> box = enum_box(lo, hi, sys.order);

  for (size_t s = 0; s + 1 < samples.size(); ++s) {
    const Func &a = samples[s], &b = samples[s + 1];
    if (!dil_equal(sys, dil_mul(sys, embed_iota(sys, a), embed_iota(sys, b)), embed_iota(sys, func_mul(a, b))))
      rep.fail("embedding is not multiplicative");
    if (!dil_equal(sys, dil_add(sys, embed_iota(sys, a), embed_iota(sys, b)), embed_iota(sys, func_add(a, b))))
      rep.fail("embedding is not additive");
    if (!dil_equal(sys, dil_adjoint(embed_iota(sys, a)), embed_iota(sys, func_conj(a))))
      rep.fail("embedding does not respect adjoints");
  }

  for (const Pt& v : box) {
    DilationElement pv = dil_shift(sys, pa, pt_neg(v));
    for (const Pt& w : box) {
      DilationElement pw = dil_shift(sys, pa, pt_neg(w));
      DilationElement pj = dil_shift(sys, pa, pt_neg(join(v, w, sys.order)));
      if (!dil_equal(sys, dil_mul(sys, pv, pw), pj)) {
        rep.fail("translated projections do not multiply along joins at " + pt_to_string(v) + ", " +
                 pt_to_string(w));
        break;
      }
    }
    for (const Func& a : samples) {
      DilationElement moved = dil_shift(sys, embed_iota(sys, a), v);
      DilationElement squeezed = dil_mul(sys, pa, dil_mul(sys, moved, pa));
      if (!dil_equal(sys, squeezed, embed_iota(sys, alpha_func(sys, v, a)))) {
        rep.fail("compression does not realize the composition endomorphism at " + pt_to_string(v));
        break;
      }
    }
    if (!rep.ok) break;
  }

  for (size_t s = 0; s + 1 < samples.size() && rep.ok; ++s) {
    DilationElement x = dil_add(sys, embed_iota(sys, samples[s]),
                                dil_shift(sys, embed_iota(sys, samples[s + 1]), box.back()));
    DilationElement y = dil_shift(sys, embed_iota(sys, samples[s]), pt_neg(box.back()));
    if (!dil_equal(sys, dil_mul(sys, x, y), dil_mul(sys, y, x))) rep.fail("product is not commutative");
    Pt p = approx_identity_index(sys, x);
    if (!absorbed_at(sys, x, p)) rep.fail("approximate identity index does not absorb");
  }
  return rep;
}

/* ---- coordinates for linear algebra ----------------------------------------- */

/* Flatten onto a fixed grid: unknown index = key index * point count + point. */
inline Row element_to_row(const System& sys, const DilationElement& x, const Grid& G) {
  DilationElement padded = on_grid(sys, x, G);
  Row row;
  row.reserve(G.size() * static_cast<size_t>(sys.n_points));
  for (const Func& a : padded.coeff) row.insert(row.end(), a.begin(), a.end());
  return row;
}

inline DilationElement row_to_element(const System& sys, const Grid& G, const Row& row) {
  if (row.size() != G.size() * static_cast<size_t>(sys.n_points))
    throw invalid_input("row length does not match the grid");
  DilationElement x;
  x.grid = G;
  for (size_t k = 0; k < G.size(); ++k)
    x.coeff.emplace_back(row.begin() + static_cast<long>(k * sys.n_points),
                         row.begin() + static_cast<long>((k + 1) * sys.n_points));
  return x;
}

}  // namespace semicross
