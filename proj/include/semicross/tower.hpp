#pragma once
/* The tower of relative boundary ideals.  A finite set F of group elements
   induces an ideal of the function algebra (functions vanishing on the union
   of the images of the maps indexed by the positive parts of F's non-cone
   members), and membership of a dilation element in the F-th tower ideal is a
   finite family of pointwise vanishing conditions on its entries.  The tower
   grows with F and its union, intersected with the elements carried by a
   fixed grid, stabilizes over expanding boxes; that stabilized subspace is
   the reference answer the closed-form algorithms are compared against. */
#include <map>
#include <set>
#include <vector>

#include "dilation.hpp"
#include "dynsys.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "linalg.hpp"

namespace semicross {

/* Functions vanishing on every image phi^{pos(g)}(X), g in F not below zero.
   With no such g the union is empty and the ideal is the whole algebra. */
inline Ideal image_union_ideal(const System& sys, const std::vector<Pt>& F) {
  uint64_t u = 0;
  for (const Pt& g : F) {
    if (leq(g, zero_pt(sys.order), sys.order)) continue;
    u |= image_mask(phi_exponent(sys, pos_part(g, sys.order)));
  }
  return {u, sys.n_points};
}

/* Functions supported on that union: the annihilator of the ideal above. */
inline Ideal image_support_ideal(const System& sys, const std::vector<Pt>& F) {
  return annihilator(image_union_ideal(sys, F));
}

/* Membership of x in the tower ideal of F: at every group point h, the entry
   of x must be supported on the union of images belonging to F - h.  Entries
   vanish below the grid minimum and repeat beyond the window, so the box
   [grid min, max(grid max, F max) + window] is exhaustive. */
inline bool in_tower_ideal(const System& sys, const DilationElement& x, const std::vector<Pt>& F) {
  check_element(sys, x);
  for (const Pt& g : F) check_point(g, sys.order);
  Pt lo = coordinate_min(x.grid);
  Pt hi = coordinate_max(x.grid);
  if (!F.empty()) {
    Pt fhi = coordinate_max(F);
    for (int i = 0; i < sys.order.rank; ++i) hi[i] = std::max(hi[i], fhi[i]);
  }
  hi = pt_add(hi, sys.window());
  for (const Pt& h : enum_box(lo, hi, sys.order)) {
    std::vector<Pt> shifted;
    shifted.reserve(F.size());
    for (const Pt& g : F) shifted.push_back(pt_sub(g, h));
    if (!func_in_ideal(entry_at(sys, x, h), image_support_ideal(sys, shifted)))
      return false;
  }
  return true;
}

/* Cache of image masks of phi^e, keyed by the reduced exponent vector. */
using ExpMemo = std::map<Pt, uint64_t>;

inline uint64_t memo_image(const System& sys, const Pt& e, ExpMemo& memo) {
  Pt key(e.size());
  for (size_t i = 0; i < e.size(); ++i) key[i] = reduce_exp(e[i], sys.per[i]);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  uint64_t m = image_mask(phi_exponent(sys, key));
  memo.emplace(std::move(key), m);
  return m;
}

/* image_union_ideal for F = every integer point of the box [lo, hi], without
   enumerating the box.  Per coordinate, the positive parts of the interval
   [lo_i, hi_i] reduce to a short list of exponent values (the power sequence
   repeats after index + period, so a window of index + 2 * period values from
   the interval's low end reaches them all); the union then runs over tuples
   of reduced values with at least one positive choice. */
inline Ideal image_union_ideal_box(const System& sys, const Pt& lo, const Pt& hi, ExpMemo& memo) {
  int r = sys.order.rank;
  std::vector<std::vector<Coord>> values(r);  // candidate reduced exponents per coordinate
  std::vector<bool> has_positive(r, false);
  for (int i = 0; i < r; ++i) {
    if (lo[i] > hi[i]) throw invariant_violation("reversed bounds in box ideal");
    if (lo[i] <= 0) values[i].push_back(0);
    Coord start = std::max<Coord>(lo[i], 1);
    Coord stop = std::min(hi[i], checked_add(start, sys.per[i].index + 2 * sys.per[i].period));
    std::set<Coord> reduced;
    for (Coord k = start; k <= stop; ++k) reduced.insert(reduce_exp(k, sys.per[i]));
    has_positive[i] = !reduced.empty();
    values[i].insert(values[i].end(), reduced.begin(), reduced.end());
  }

  uint64_t u = 0;
  Pt e(static_cast<size_t>(r), 0);
  std::vector<size_t> idx(static_cast<size_t>(r), 0);
  while (true) {
    bool any_positive = false;
    for (int i = 0; i < r; ++i) {
      e[i] = values[i][idx[i]];
      if (e[i] > 0) any_positive = true;
    }
    if (any_positive) u |= memo_image(sys, e, memo);
    int i = r - 1;
    while (i >= 0 && ++idx[i] == values[i].size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return {u, sys.n_points};
}

struct TowerResult {
  Matrix rows;             // canonical basis of the stabilized subspace, element coordinates on H
  bool stabilized = false; // two consecutive expansions agreed
  int expansions = 0;      // boxes actually computed
};

/* The tower limit restricted to elements on the grid H, approximated from
   below: for the box F_R = [H min - R * window, H max + R * window], collect
   the linear vanishing conditions of the F_R tower ideal on coefficients over
   H and take the nullspace; stop when two consecutive boxes agree. */
inline TowerResult tower_subspace(const System& sys, const Grid& H, int max_expansions = 4) {
  if (H.empty()) throw invalid_input("grid must be nonempty");
  if (!is_join_closed(H, sys.order)) throw invalid_input("grid must be closed under joins");
  for (const Pt& g : H) check_point(g, sys.order);

  int n = sys.n_points;
  size_t dim = H.size() * static_cast<size_t>(n);
  Pt w = sys.window();
  Pt hlo = coordinate_min(H), hhi = coordinate_max(H);
  ExpMemo memo;

  TowerResult result;
  Matrix prev;
  for (int R = 1; R <= max_expansions; ++R) {
    Pt flo = pt_sub(hlo, pt_scale(R, w));
    Pt fhi = pt_add(hhi, pt_scale(R, w));
    Matrix constraints;
    for (const Pt& h : enum_box(hlo, pt_add(fhi, w), sys.order)) {
      Ideal support = annihilator(image_union_ideal_box(sys, pt_sub(flo, h), pt_sub(fhi, h), memo));
      if (support.zero_mask == 0) continue;  // entry unconstrained at this h
      /* entry(h)(pt) = sum over keys g <= h of a_g(phi^{h-g}(pt)) */
      std::vector<std::pair<size_t, PointMap>> below;
      for (size_t k = 0; k < H.size(); ++k)
        if (leq(H[k], h, sys.order)) below.emplace_back(k, phi_exponent(sys, pt_sub(h, H[k])));
      for (int pt = 0; pt < n; ++pt) {
        if (!(support.zero_mask >> pt & 1)) continue;
        Row row(dim);
        for (const auto& [k, map] : below) row[k * n + static_cast<size_t>(map[pt])] += GaussRat{1};
        constraints.push_back(std::move(row));
      }
    }
    Matrix basis = canonical_rows(nullspace(dedupe_rows(std::move(constraints)), dim));
    result.expansions = R;
    if (R > 1 && basis == prev) {
      result.rows = std::move(basis);
      result.stabilized = true;
      return result;
    }
    prev = std::move(basis);
  }
  result.rows = std::move(prev);
  return result;
}

}  // namespace semicross
