#pragma once
/* Closed-form boundary subspaces and their consistency checks.  For a fixed
   join-closed grid H, the boundary subspace collects the elements carried by
   H that belong to the maximal boundary ideal; it is computed by the
   representation kernel for product-type orders and by a two-condition closed
   form for chains, with the expanding-box tower as an independent oracle.
   The module also hosts the envelope criterion, the one-parameter subgroup
   comparison, and the structural invariance checks that any correct boundary
   subspace must pass. */
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dfk.hpp"
#include "dilation.hpp"
#include "dynsys.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "tower.hpp"

namespace semicross {

struct ShilovSubspace {
  Grid grid;
  Matrix rows;  // canonical basis, coefficient layout: key index * point count + point
};

/* Chains (and any rank-one order): the boundary subspace is cut out by
     (i)  every entry over the window [grid min, grid max + index + period]
          vanishes off the image of the generating map, and
     (ii) entries over the final period [grid max + index, .. + period]
          vanish outright (the far tail is zero, pulled back by periodicity). */
inline Matrix z_case_ideal(const System& sys, const Grid& H) {
  if (sys.order.rank != 1) throw invalid_input("closed chain form needs a rank-one order");
  if (H.empty()) throw invalid_input("grid must be nonempty");
  int n = sys.n_points;
  size_t dim = H.size() * static_cast<size_t>(n);
  Coord lo = coordinate_min(H)[0], hi = coordinate_max(H)[0];
  Coord c = sys.per[0].index, p = sys.per[0].period;
  uint64_t off_image = ~image_mask(sys.gens[0]) & full_mask(n);

  auto entry_row = [&](Coord h, int pt) {
    Row row(dim);
    for (size_t k = 0; k < H.size(); ++k) {
      if (H[k][0] > h) continue;
      const PointMap& f = power_of(sys, 0, h - H[k][0]);
      row[k * static_cast<size_t>(n) + static_cast<size_t>(f[pt])] += GaussRat{1};
    }
    return row;
  };

  Matrix constraints;
  for (Coord h = lo; h <= hi + c + p; ++h)
    for (int pt = 0; pt < n; ++pt)
      if (off_image >> pt & 1) constraints.push_back(entry_row(h, pt));
  for (Coord h = hi + c; h <= hi + c + p; ++h)
    for (int pt = 0; pt < n; ++pt) constraints.push_back(entry_row(h, pt));
  return canonical_rows(nullspace(dedupe_rows(std::move(constraints)), dim));
}

/* Elements whose entries eventually die out: some stage N has every entry at
   h >= N equal to zero.  Past the coordinatewise key maximum plus the
   periodicity index the entries repeat with the period, so vanishing on the
   single far-corner period cell decides the whole tail.  For systems of
   bijections this coincides with the boundary subspace. */
inline Matrix c0_subspace(const System& sys, const Grid& H) {
  if (H.empty()) throw invalid_input("grid must be nonempty");
  int n = sys.n_points;
  size_t dim = H.size() * static_cast<size_t>(n);
  Pt lo = coordinate_min(H), hi = coordinate_max(H);
  Pt cap = pt_add(hi, sys.index_pt());

  Matrix constraints;
  for (const Pt& h : enum_box(lo, pt_add(hi, sys.window()), sys.order)) {
    bool beyond = true;
    for (int i = 0; i < sys.order.rank; ++i) beyond = beyond && h[i] > cap[i];
    if (!beyond) continue;
    std::vector<std::pair<size_t, PointMap>> below;
    for (size_t k = 0; k < H.size(); ++k)
      if (leq(H[k], h, sys.order)) below.emplace_back(k, phi_exponent(sys, pt_sub(h, H[k])));
    for (int pt = 0; pt < n; ++pt) {
      Row row(dim);
      for (const auto& [k, map] : below)
        row[k * static_cast<size_t>(n) + static_cast<size_t>(map[pt])] += GaussRat{1};
      constraints.push_back(std::move(row));
    }
  }
  return canonical_rows(nullspace(dedupe_rows(std::move(constraints)), dim));
}

/* The closed-form boundary subspace: representation kernel for product-type
   orders, two-condition form for chains. */
inline ShilovSubspace shilov_subspace(const System& sys, const Grid& H) {
  if (!is_join_closed(H, sys.order)) throw invalid_input("grid must be closed under joins");
  ShilovSubspace s;
  s.grid = H;
  if (sys.order.kind == OrderKind::chain) {
    s.rows = z_case_ideal(sys, H);
  } else {
    DfkFamily fam = make_dfk_family(sys);
    s.rows = pi_kernel(fam, H);
  }
  return s;
}

struct CompareResult {
  Matrix closed;      // closed-form basis
  TowerResult tower;  // expanding-box oracle
  bool agree = false;
};

/* Run the closed form and the tower oracle on the same grid and compare
   canonical bases.  Both must produce the same subspace. */
inline CompareResult compare_kernels(const System& sys, const Grid& H, int max_expansions = 4) {
  CompareResult r;
  r.closed = shilov_subspace(sys, H).rows;
  r.tower = tower_subspace(sys, H, max_expansions);
  r.agree = r.closed == r.tower.rows;
  return r;
}

/* Structural facts every boundary subspace satisfies; a failure is an
   implementation defect, so violations throw.
     - it meets the embedded function algebra only in zero, and
     - translating its elements by one generator step in either direction
       lands in the boundary subspace of the translated grid. */
inline void boundary_invariance_check(const System& sys, const Grid& H, const Matrix& rows) {
  int n = sys.n_points;
  Grid ambient = grid_closure([&] {
    std::vector<Pt> keys = H;
    keys.push_back(zero_pt(sys.order));
    return keys;
  }(), sys.order);

  Matrix sub_rows, iota_rows;
  for (const Row& r : rows)
    sub_rows.push_back(element_to_row(sys, row_to_element(sys, H, r), ambient));
  for (int x = 0; x < n; ++x)
    iota_rows.push_back(element_to_row(sys, embed_iota(sys, delta_func(n, x)), ambient));
  size_t du = subspace_dim(sub_rows), dv = subspace_dim(iota_rows);
  if (subspace_sum_dim(sub_rows, iota_rows) != du + dv)
    throw invariant_violation("boundary subspace meets the embedded function algebra");

  for (int i = 0; i < sys.order.rank; ++i) {
    for (Coord dir : {Coord{1}, Coord{-1}}) {
      Pt v = pt_scale(dir, unit_pt(sys.order, i));
      Grid target_grid;
      for (const Pt& g : H) target_grid.push_back(pt_sub(g, v));
      Matrix target = canonical_rows(shilov_subspace(sys, target_grid).rows);
      for (const Row& r : rows) {
        DilationElement moved = dil_shift(sys, row_to_element(sys, H, r), v);
        if (!in_span(target, element_to_row(sys, moved, target_grid)))
          throw invariant_violation("boundary subspace is not translation invariant along " +
                                    pt_to_string(v));
      }
    }
  }
}

/* ---- envelope criterion ------------------------------------------------------ */

struct EnvelopeReport {
  bool envelope = true;             // whether the semicrossed product is already its own envelope
  std::vector<Pt> witness;          // first obstructing key set when it is not
  Ideal witness_ideal;              // functions vanishing on the witnessed image union
  Ideal witness_annihilator;        // functions supported there
};

/* A candidate key set obstructs unless its image union is empty; on a
   nonempty point set every cone key has a nonempty image, so the very first
   candidate already witnesses that the envelope is strictly larger. */
inline EnvelopeReport envelope_criterion(const System& sys) {
  EnvelopeReport rep;
  rep.witness_ideal = whole_algebra(sys.n_points);
  rep.witness_annihilator = zero_ideal(sys.n_points);
  Pt w = sys.window();
  std::vector<std::vector<Pt>> candidates;
  std::vector<Pt> singles;
  for (int i = 0; i < sys.order.rank; ++i)
    for (Coord k = 1; k <= w[i]; ++k) singles.push_back(pt_scale(k, unit_pt(sys.order, i)));
  for (const Pt& g : singles) candidates.push_back({g});
  for (size_t a = 0; a < singles.size(); ++a)
    for (size_t b = a + 1; b < singles.size(); ++b) candidates.push_back({singles[a], singles[b]});

  for (const std::vector<Pt>& F : candidates) {
    Ideal K = image_union_ideal(sys, F);
    if (K.zero_mask == 0) continue;  // no obstruction from this candidate
    rep.envelope = false;
    rep.witness = F;
    rep.witness_ideal = K;
    rep.witness_annihilator = annihilator(K);
    break;
  }
  return rep;
}

/* ---- one-parameter subgroup comparison ---------------------------------------- */

struct SubgroupSpec {
  enum class Kind { coord, index } kind = Kind::coord;
  Coord value = 1;  // 1-based coordinate, or step in finest chain units
};

inline SubgroupSpec parse_subgroup_spec(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw invalid_input("subgroup must look like coord:i or index:k");
  std::string head = s.substr(0, colon), tail = s.substr(colon + 1);
  SubgroupSpec spec;
  if (head == "coord") spec.kind = SubgroupSpec::Kind::coord;
  else if (head == "index") spec.kind = SubgroupSpec::Kind::index;
  else throw invalid_input("unknown subgroup kind '" + head + "'");
  try {
    size_t used = 0;
    spec.value = std::stoll(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(tail);
  } catch (const std::exception&) {
    throw invalid_input("bad subgroup parameter '" + tail + "'");
  }
  if (spec.value < 1) throw invalid_input("subgroup parameter must be positive");
  return spec;
}

struct SubgroupReport {
  Grid sub_grid;    // grid in subgroup units
  Grid full_grid;   // its image in the ambient group
  Matrix sub_rows;  // boundary subspace of the one-parameter subsystem
  Matrix full_rows; // boundary subspace of the full system on the image grid
  bool contained = false;  // subsystem boundary sits inside the full one
  bool equal = false;
  bool isometry_ok = false;
  bool has_witness = false;
  Row witness_row;      // first subsystem basis element outside the full subspace
  Pt witness_h;         // group point where it breaks the full system's conditions
  Func witness_entry;   // the offending entry there
};

/* First failing closed-form condition for membership of x in the full
   system's boundary subspace, scanned in a deterministic order. */
inline std::optional<std::pair<Pt, Func>> first_boundary_violation(const System& sys,
                                                                   const DilationElement& x) {
  if (sys.order.kind == OrderKind::chain) {
    Coord lo = coordinate_min(x.grid)[0], hi = coordinate_max(x.grid)[0];
    Coord c = sys.per[0].index, p = sys.per[0].period;
    uint64_t off_image = ~image_mask(sys.gens[0]) & full_mask(sys.n_points);
    for (Coord h = lo; h <= hi + c + p; ++h) {
      Func e = entry_at(sys, x, {h});
      uint64_t must = h >= hi + c ? full_mask(sys.n_points) : off_image;
      for (int pt = 0; pt < sys.n_points; ++pt)
        if (must >> pt & 1 && !e[pt].is_zero()) return {{Pt{h}, e}};
    }
    return std::nullopt;
  }
  DfkFamily fam = make_dfk_family(sys);
  Pt m = coordinate_max(x.grid);
  Pt span = pt_sub(m, coordinate_min(x.grid));
  for (const Pt& y : enum_box(zero_pt(sys.order), span, sys.order)) {
    const Ideal& Q = quotient_ideal_at(fam, y);
    Pt h = pt_sub(m, y);
    Func e = entry_at(sys, x, h);
    for (int pt = 0; pt < sys.n_points; ++pt)
      if (Q.zero_mask >> pt & 1 && !e[pt].is_zero()) return {{h, e}};
  }
  return std::nullopt;
}

/* Compare the boundary subspace of a one-parameter subsystem with the full
   system's subspace on the embedded grid.  The row layouts coincide because
   the embedding preserves the key order, so rows are compared verbatim.  The
   squared sup norm is also checked to agree between the two pictures on the
   subsystem basis and on translated point masses; a mismatch there can only be an
   implementation defect, so it throws. */
inline SubgroupReport subgroup_compat(const System& sys, const SubgroupSpec& spec,
                                      const Grid& sub_grid_in = {}) {
  PointMap submap;
  Pt step;
  if (spec.kind == SubgroupSpec::Kind::coord) {
    if (sys.order.kind == OrderKind::chain)
      throw invalid_input("chain orders take index:k subgroups");
    if (spec.value > sys.order.rank)
      throw invalid_input("coordinate " + std::to_string(spec.value) + " exceeds the rank");
    submap = sys.gens[static_cast<size_t>(spec.value - 1)];
    step = unit_pt(sys.order, static_cast<int>(spec.value - 1));
  } else {
    if (sys.order.kind != OrderKind::chain)
      throw invalid_input("index:k subgroups apply to chain orders; use coord:i");
    submap = phi_exponent(sys, Pt{spec.value});
    step = Pt{spec.value};
  }
  System subsys = make_system(OrderSpec::chain({1}), sys.n_points, {submap});

  SubgroupReport rep;
  rep.sub_grid = sub_grid_in.empty() ? Grid{Pt{0}, Pt{1}} : sub_grid_in;
  for (const Pt& j : rep.sub_grid) {
    check_point(j, subsys.order);
    rep.full_grid.push_back(pt_scale(j[0], step));
  }

  rep.sub_rows = z_case_ideal(subsys, rep.sub_grid);
  rep.full_rows = shilov_subspace(sys, rep.full_grid).rows;

  Matrix full_canon = canonical_rows(rep.full_rows);
  rep.contained = true;
  for (const Row& r : rep.sub_rows) {
    if (in_span(full_canon, r)) continue;
    rep.contained = false;
    rep.has_witness = true;
    rep.witness_row = r;
    DilationElement x = row_to_element(sys, rep.full_grid, r);
    if (auto v = first_boundary_violation(sys, x)) {
      rep.witness_h = v->first;
      rep.witness_entry = v->second;
    }
    break;
  }
  rep.equal = rep.contained && subspace_equal(rep.sub_rows, rep.full_rows);

  /* Norm agreement between the subsystem picture and the embedded one. */
  std::vector<Row> samples = rep.sub_rows;
  for (const Pt& j : rep.sub_grid)
    for (int x = 0; x < sys.n_points; ++x) {
      DilationElement mono = make_element(
          subsys, {{j, delta_func(sys.n_points, x)}});
      samples.push_back(element_to_row(subsys, mono, rep.sub_grid));
    }
  for (const Row& r : samples) {
    DilationElement sub_el = row_to_element(subsys, rep.sub_grid, r);
    DilationElement full_el = row_to_element(sys, rep.full_grid, r);
    if (sup_norm_sq(subsys, sub_el) != sup_norm_sq(sys, full_el))
      throw invariant_violation("subgroup embedding is not isometric on a sample element");
  }
  rep.isometry_ok = true;
  return rep;
}

}  // namespace semicross
