#pragma once
/* The comparison construction: a concrete module built from quotients of the
   function algebra, with one shift-type operator per generator.  Vectors have
   one component per cone point, each component living in the quotient by an
   ideal that depends only on the cone point's support.  The representation
   sends an element carried by non-positive keys to a finite sum of shifted
   embeddings; its kernel on a fixed grid is the closed-form boundary
   subspace for product-type orders, computed here as a nullspace. */
#include <map>
#include <utility>
#include <vector>

#include "dilation.hpp"
#include "dynsys.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "linalg.hpp"

namespace semicross {

inline uint64_t support_mask_of(const Pt& y) {
  uint64_t m = 0;
  for (size_t i = 0; i < y.size(); ++i)
    if (y[i] > 0) m |= 1ull << i;
  return m;
}

/* Per-support ideals, cached for all subsets of the generator set. */
struct DfkFamily {
  const System* sys = nullptr;
  std::vector<Ideal> base;     // indexed by support mask: functions vanishing
                               // off the union of the supported generators' images
  std::vector<Ideal> quotient; // saturation of `base` under the unsupported maps
};

inline DfkFamily make_dfk_family(const System& sys) {
  size_t r = sys.gens.size();
  if (r > 16) throw invalid_input("generator count too large for the quotient cache");
  DfkFamily fam;
  fam.sys = &sys;
  Pt w = sys.window();
  for (uint64_t S = 0; S < (1ull << r); ++S) {
    uint64_t united = 0;
    for (size_t i = 0; i < r; ++i)
      if (S >> i & 1) united |= image_mask(sys.gens[i]);
    Ideal q0 = vanishing_on(sys.n_points, ~united & full_mask(sys.n_points));
    fam.base.push_back(q0);

    /* Push the base zero set around by every composite of maps outside S,
       one window per coordinate being enough by eventual periodicity. */
    Pt lo = zero_pt(sys.order), hi = zero_pt(sys.order);
    for (size_t i = 0; i < r; ++i)
      if (!(S >> i & 1)) hi[i] = w[i];
    uint64_t zeros = 0;
    for (const Pt& y : enum_box(lo, hi, sys.order))
      zeros |= set_image_mask(phi_exponent(sys, y), q0.zero_mask);
    fam.quotient.push_back(vanishing_on(sys.n_points, zeros));
  }
  return fam;
}

inline const Ideal& quotient_ideal_at(const DfkFamily& fam, const Pt& y) {
  return fam.quotient.at(support_mask_of(y));
}

/* Canonical coset representative: classes mod Z(T) are determined by the
   values on T, so keep those and zero the rest. */
inline Func reduce_rep(const Func& a, const Ideal& Q) {
  if (a.size() != static_cast<size_t>(Q.n)) throw invalid_input("function has the wrong number of values");
  Func r(a.size());
  for (int x = 0; x < Q.n; ++x)
    if (Q.zero_mask >> x & 1) r[x] = a[x];
  return r;
}

/* A finitely supported vector over the cone, component at y canonical mod the
   support-quotient ideal; zero components are pruned. */
using DfkVector = std::map<Pt, Func>;

inline void dfk_add_component(const DfkFamily& fam, DfkVector& v, const Pt& y, const Func& a) {
  Func rep = reduce_rep(a, quotient_ideal_at(fam, y));
  auto it = v.find(y);
  if (it == v.end()) {
    if (!func_is_zero(rep)) v.emplace(y, std::move(rep));
    return;
  }
  it->second = func_add(it->second, rep);
  if (func_is_zero(it->second)) v.erase(it);
}

inline DfkVector dfk_vec_add(const DfkFamily& fam, const DfkVector& v, const DfkVector& w) {
  DfkVector r = v;
  for (const auto& [y, a] : w) dfk_add_component(fam, r, y, a);
  return r;
}

inline bool dfk_vec_equal(const DfkVector& v, const DfkVector& w) { return v == w; }
inline bool dfk_vec_is_zero(const DfkVector& v) { return v.empty(); }

/* The embedding of the function algebra at the cone's origin. */
inline DfkVector dfk_eta(const DfkFamily& fam, const Func& a) {
  DfkVector v;
  dfk_add_component(fam, v, zero_pt(fam.sys->order), a);
  return v;
}

/* The i-th shift operator.  On a component at y it either splits (when y has
   no i-part: a composed copy stays at y and a plain copy moves to y + e_i) or
   just moves up. */
inline DfkVector gamma_apply(const DfkFamily& fam, int i, const DfkVector& v) {
  const System& sys = *fam.sys;
  Pt ei = unit_pt(sys.order, i);
  DfkVector r;
  for (const auto& [y, a] : v) {
    Pt up = pt_add(y, ei);
    if (y[static_cast<size_t>(i)] == 0) dfk_add_component(fam, r, y, alpha_func(sys, ei, a));
    dfk_add_component(fam, r, up, a);
  }
  return r;
}

/* Composite shift for a cone exponent. */
inline DfkVector gamma_pow(const DfkFamily& fam, const Pt& v, DfkVector vec) {
  check_point(v, fam.sys->order);
  if (!leq(zero_pt(fam.sys->order), v, fam.sys->order))
    throw invalid_input("shift exponent " + pt_to_string(v) + " lies outside the positive cone");
  for (size_t i = 0; i < v.size(); ++i)
    for (Coord k = 0; k < v[i]; ++k) vec = gamma_apply(fam, static_cast<int>(i), vec);
  return vec;
}

/* The representation on elements carried by non-positive keys: each key g
   contributes the (-g)-fold shift of the embedded coefficient. */
inline DfkVector pi_raw(const DfkFamily& fam, const DilationElement& x) {
  const System& sys = *fam.sys;
  check_element(sys, x);
  DfkVector out;
  for (size_t k = 0; k < x.grid.size(); ++k) {
    if (func_is_zero(x.coeff[k])) continue;
    if (!leq(x.grid[k], zero_pt(sys.order), sys.order))
      throw invalid_input("representation needs non-positive keys; got " + pt_to_string(x.grid[k]));
    out = dfk_vec_add(fam, out, gamma_pow(fam, pt_neg(x.grid[k]), dfk_eta(fam, x.coeff[k])));
  }
  return out;
}

struct PiImage {
  DfkVector vec;
  Pt stage;  // the translation applied before representing
};

/* Translate the element until all keys are non-positive, then represent.
   The kernel cut out on a fixed grid does not depend on the stage. */
inline PiImage pi_map(const DfkFamily& fam, const DilationElement& x) {
  check_element(*fam.sys, x);
  Pt m = coordinate_max(x.grid);
  return {pi_raw(fam, dil_shift(*fam.sys, x, m)), m};
}

/* Kernel of the representation on elements carried by the grid H, as a
   canonical basis of coefficient rows (key index * point count + point).
   Component y of the translated image collects alpha_{(m-g)-y}(a_g) over
   keys g <= m - y, and must vanish on the y-support quotient's zero set. */
inline Matrix pi_kernel(const DfkFamily& fam, const Grid& H) {
  const System& sys = *fam.sys;
  if (H.empty()) throw invalid_input("grid must be nonempty");
  if (!is_join_closed(H, sys.order)) throw invalid_input("grid must be closed under joins");
  int n = sys.n_points;
  size_t dim = H.size() * static_cast<size_t>(n);
  Pt m = coordinate_max(H);
  Pt span = pt_sub(m, coordinate_min(H));

  Matrix constraints;
  for (const Pt& y : enum_box(zero_pt(sys.order), span, sys.order)) {
    const Ideal& Q = quotient_ideal_at(fam, y);
    if (Q.zero_mask == 0) continue;
    std::vector<std::pair<size_t, PointMap>> terms;
    for (size_t k = 0; k < H.size(); ++k) {
      Pt d = pt_sub(pt_sub(m, H[k]), y);
      bool in_cone = true;
      for (Coord c : d) in_cone = in_cone && c >= 0;
      if (in_cone) terms.emplace_back(k, phi_exponent(sys, d));
    }
    for (int pt = 0; pt < n; ++pt) {
      if (!(Q.zero_mask >> pt & 1)) continue;
      Row row(dim);
      for (const auto& [k, map] : terms) row[k * static_cast<size_t>(n) + static_cast<size_t>(map[pt])] += GaussRat{1};
      constraints.push_back(std::move(row));
    }
  }
  return canonical_rows(nullspace(dedupe_rows(std::move(constraints)), dim));
}

}  // namespace semicross
