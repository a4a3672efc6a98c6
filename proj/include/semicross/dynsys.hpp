#pragma once
/* Finite classical dynamical systems: a point set X (at most 64 points, so
   subsets fit in a word), commuting self-maps indexed by the positive cone of
   a lattice order, and the induced function-algebra machinery (composition
   endomorphisms, ideals as zero sets, eventual periodicity of each map). */
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "scalar.hpp"

namespace semicross {

/* A self-map of {0, ..., n-1}; entry x is the image of point x. */
using PointMap = std::vector<int>;

/* A function on the point set, with exact scalar values. */
using Func = std::vector<GaussRat>;

inline PointMap identity_map(int n) {
  PointMap f(n);
  for (int x = 0; x < n; ++x) f[x] = x;
  return f;
}

/* (f o g)(x) = f(g(x)). */
inline PointMap compose(const PointMap& f, const PointMap& g) {
  PointMap r(g.size());
  for (size_t x = 0; x < g.size(); ++x) r[x] = f.at(g[x]);
  return r;
}

/* Every self-map of a finite set is eventually periodic: the power sequence
   f^0, f^1, ... repeats from `index` onward with the given `period`. */
struct Periodicity {
  Coord index = 0;
  Coord period = 1;
};

inline Periodicity periodicity_of(const PointMap& f) {
  std::vector<PointMap> seen{identity_map(static_cast<int>(f.size()))};
  while (true) {
    PointMap next = compose(f, seen.back());
    for (size_t s = 0; s < seen.size(); ++s)
      if (seen[s] == next)
        return {static_cast<Coord>(s), static_cast<Coord>(seen.size() - s)};
    seen.push_back(std::move(next));
  }
}

/* Smallest exponent with the same power map: e itself below index+period,
   otherwise folded into [index, index+period). */
inline Coord reduce_exp(Coord e, const Periodicity& per) {
  if (e < 0) throw invariant_violation("negative exponent in power reduction");
  if (e <= per.index + per.period) return e;
  return per.index + (e - per.index) % per.period;
}

struct MinimalityReport {
  bool minimal = false;
  uint64_t witness_mask = 0;  // a proper invariant subset when not minimal
};

struct DistinctMapsReport {
  bool distinct = false;  // whether v != w always gives different maps (never, on a finite set)
  Pt v, w;                // a colliding pair of cone elements when not distinct
};

struct SimplicityReport {
  MinimalityReport minimality;
  DistinctMapsReport maps;
  bool simple = false;
};

/* A validated system.  `gens` are the effective finest-level generators, one
   per rank coordinate; for chains that is the single finest map and the
   supplied coarser maps (kept in `raw_gens`) are checked to be its powers. */
struct System {
  OrderSpec order;
  int n_points = 0;
  std::vector<PointMap> raw_gens;
  std::vector<PointMap> gens;
  std::vector<Periodicity> per;
  std::vector<std::vector<PointMap>> pows;  // pows[i][e] = gens[i]^e, e <= index+period

  /* Per-coordinate index + period: beyond this window every power map has
     already appeared. */
  Pt window() const {
    Pt w(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) w[i] = per[i].index + per[i].period;
    return w;
  }
  Pt index_pt() const {
    Pt c(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) c[i] = per[i].index;
    return c;
  }
  Pt period_pt() const {
    Pt p(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) p[i] = per[i].period;
    return p;
  }
};

inline System make_system(const OrderSpec& order, int n_points, std::vector<PointMap> gens) {
  if (n_points < 1) throw invalid_input("a dynamical system needs at least one point");
  if (n_points > 64) throw invalid_input("point sets above 64 points are not supported");
  if (order.kind == OrderKind::lex && order.rank >= 2)
    throw invalid_input(
        "lexicographic orders of rank 2 and higher carry no finitely generated dynamics; "
        "only order arithmetic is available for them");

  size_t expected = order.kind == OrderKind::chain ? order.levels.size() : static_cast<size_t>(order.rank);
  if (gens.size() != expected)
    throw invalid_input("expected " + std::to_string(expected) + " generator maps, got " +
                        std::to_string(gens.size()));
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].size() != static_cast<size_t>(n_points))
      throw invalid_input("generator " + std::to_string(i + 1) + " must assign a value to each of the " +
                          std::to_string(n_points) + " points");
    for (int x = 0; x < n_points; ++x)
      if (gens[i][x] < 0 || gens[i][x] >= n_points)
        throw invalid_input("generator " + std::to_string(i + 1) + " sends point " + std::to_string(x + 1) +
                            " to " + std::to_string(gens[i][x] + 1) + ", outside the 1.." +
                            std::to_string(n_points) + " point range");
  }

  System sys;
  sys.order = order;
  sys.n_points = n_points;
  sys.raw_gens = gens;

  if (order.kind == OrderKind::chain) {
    /* Generators are listed coarsest level first; the map for level l must be
       the (finest/l)-th power of the finest map.  Internally only the finest
       map acts, on exponents counted in finest-level units. */
    const PointMap& finest = gens.back();
    for (size_t i = 0; i + 1 < gens.size(); ++i) {
      Coord ratio = order.levels.back() / order.levels[i];
      PointMap want = identity_map(n_points);
      for (Coord k = 0; k < ratio; ++k) want = compose(finest, want);
      if (gens[i] != want)
        throw invalid_input("chain generators are inconsistent: generator " + std::to_string(i + 1) +
                            " is not the " + std::to_string(ratio) + "-th power of the finest generator");
    }
    sys.gens = {finest};
  } else {
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = i + 1; j < gens.size(); ++j) {
        PointMap ij = compose(gens[i], gens[j]);
        PointMap ji = compose(gens[j], gens[i]);
        if (ij != ji) {
          int x = 0;
          while (ij[x] == ji[x]) ++x;
          throw invalid_input("generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                              " do not commute: composites differ at point " + std::to_string(x + 1));
        }
      }
    sys.gens = std::move(gens);
  }

  for (const PointMap& f : sys.gens) {
    Periodicity p = periodicity_of(f);
    std::vector<PointMap> cache{identity_map(n_points)};
    for (Coord e = 1; e <= p.index + p.period; ++e) cache.push_back(compose(f, cache.back()));
    sys.per.push_back(p);
    sys.pows.push_back(std::move(cache));
  }
  return sys;
}

struct ValidationReport {
  bool ok = false;
  std::string message;  // empty when ok
};

inline ValidationReport validate_system(const OrderSpec& order, int n_points,
                                        const std::vector<PointMap>& gens) {
  try {
    make_system(order, n_points, gens);
    return {true, ""};
  } catch (const invalid_input& e) {
    return {false, e.what()};
  }
}

inline const PointMap& power_of(const System& sys, int i, Coord e) {
  return sys.pows.at(i).at(static_cast<size_t>(reduce_exp(e, sys.per.at(i))));
}

/* The composite map for a cone exponent v: gens[0]^{v0} o gens[1]^{v1} o ... */
inline PointMap phi_exponent(const System& sys, const Pt& v) {
  check_point(v, sys.order);
  if (!leq(zero_pt(sys.order), v, sys.order))
    throw invalid_input("exponent " + pt_to_string(v) + " lies outside the positive cone");
  PointMap r = identity_map(sys.n_points);
  for (size_t i = 0; i < sys.gens.size(); ++i) r = compose(r, power_of(sys, static_cast<int>(i), v[i]));
  return r;
}

/* The composition endomorphism a |-> a o phi^v of the function algebra. */
inline Func alpha_func(const System& sys, const Pt& v, const Func& a) {
  if (a.size() != static_cast<size_t>(sys.n_points))
    throw invalid_input("function has the wrong number of values");
  PointMap phi = phi_exponent(sys, v);
  Func r(a.size());
  for (int x = 0; x < sys.n_points; ++x) r[x] = a[phi[x]];
  return r;
}

/* ---- function helpers ---------------------------------------------------- */

inline Func zero_func(int n) { return Func(n); }
inline Func one_func(int n) { return Func(n, GaussRat{1}); }
inline Func delta_func(int n, int x) {
  Func f(n);
  f.at(x) = GaussRat{1};
  return f;
}
inline Func indicator_func(int n, uint64_t mask) {
  Func f(n);
  for (int x = 0; x < n; ++x)
    if (mask >> x & 1) f[x] = GaussRat{1};
  return f;
}
inline bool func_is_zero(const Func& a) {
  for (const GaussRat& v : a)
    if (!v.is_zero()) return false;
  return true;
}

/* ---- ideals of the function algebra -------------------------------------- */

inline uint64_t full_mask(int n) { return n == 64 ? ~0ull : (1ull << n) - 1; }

/* An ideal of functions, recorded by its zero set: bit x is set exactly when
   every member vanishes at point x.  The zero ideal has every bit set; the
   whole algebra has none. */
struct Ideal {
  uint64_t zero_mask = 0;
  int n = 0;

  bool operator==(const Ideal&) const = default;
};

inline Ideal whole_algebra(int n) { return {0, n}; }
inline Ideal zero_ideal(int n) { return {full_mask(n), n}; }
inline Ideal vanishing_on(int n, uint64_t mask) { return {mask & full_mask(n), n}; }

inline void check_same_points(const Ideal& I, const Ideal& J) {
  if (I.n != J.n) throw invalid_input("ideals live over different point sets");
}

/* Functions vanishing wherever some member of I does not: the zero set flips
   to its complement. */
inline Ideal annihilator(const Ideal& I) { return {~I.zero_mask & full_mask(I.n), I.n}; }

inline Ideal ideal_meet(const Ideal& I, const Ideal& J) {
  check_same_points(I, J);
  return {I.zero_mask | J.zero_mask, I.n};
}
inline Ideal ideal_sum(const Ideal& I, const Ideal& J) {
  check_same_points(I, J);
  return {I.zero_mask & J.zero_mask, I.n};
}
/* J subset of I: wherever I's members all vanish, J's must too. */
inline bool ideal_contains(const Ideal& I, const Ideal& J) {
  check_same_points(I, J);
  return (I.zero_mask & ~J.zero_mask) == 0;
}

inline uint64_t image_mask(const PointMap& f) {
  uint64_t m = 0;
  for (int y : f) m |= 1ull << y;
  return m;
}
/* Image of the subset S (given as a mask) under f. */
inline uint64_t set_image_mask(const PointMap& f, uint64_t S) {
  uint64_t m = 0;
  for (size_t x = 0; x < f.size(); ++x)
    if (S >> x & 1) m |= 1ull << f[x];
  return m;
}

/* Kernel of the composition endomorphism for exponent v: functions vanishing
   on the image of phi^v. */
inline Ideal kernel_ideal(const System& sys, const Pt& v) {
  return {image_mask(phi_exponent(sys, v)), sys.n_points};
}

/* Preimage of an ideal under the composition endomorphism: a o phi^v vanishes
   on S exactly when a vanishes on phi^v(S). */
inline Ideal preimage_ideal(const System& sys, const Pt& v, const Ideal& I) {
  if (I.n != sys.n_points) throw invalid_input("ideal lives over a different point set");
  return {set_image_mask(phi_exponent(sys, v), I.zero_mask), sys.n_points};
}

inline bool func_in_ideal(const Func& a, const Ideal& I) {
  if (a.size() != static_cast<size_t>(I.n)) throw invalid_input("function has the wrong number of values");
  for (int x = 0; x < I.n; ++x)
    if (I.zero_mask >> x & 1 && !a[x].is_zero()) return false;
  return true;
}

/* ---- orbit structure ------------------------------------------------------ */

/* Forward orbit of x under the semigroup generated by the effective maps:
   the smallest invariant subset containing x. */
inline uint64_t orbit_mask(const System& sys, int x) {
  uint64_t seen = 1ull << x;
  std::vector<int> stack{x};
  while (!stack.empty()) {
    int y = stack.back();
    stack.pop_back();
    for (const PointMap& f : sys.gens) {
      int z = f[y];
      if (!(seen >> z & 1)) {
        seen |= 1ull << z;
        stack.push_back(z);
      }
    }
  }
  return seen;
}

/* Minimal exactly when every forward orbit is the whole point set.  The
   witness is the smallest proper orbit (fewest points, then lowest mask),
   which is also the smallest proper invariant subset outright. */
inline MinimalityReport is_minimal(const System& sys) {
  uint64_t full = full_mask(sys.n_points);
  MinimalityReport rep{true, 0};
  for (int x = 0; x < sys.n_points; ++x) {
    uint64_t o = orbit_mask(sys, x);
    if (o == full) continue;
    if (rep.minimal || __builtin_popcountll(o) < __builtin_popcountll(rep.witness_mask) ||
        (__builtin_popcountll(o) == __builtin_popcountll(rep.witness_mask) && o < rep.witness_mask))
      rep.witness_mask = o;
    rep.minimal = false;
  }
  return rep;
}

/* Brute-force cross-check: scan every nonempty proper subset for invariance.
   Only sensible for small point sets. */
inline MinimalityReport minimal_exhaustive(const System& sys) {
  if (sys.n_points > 20) throw invalid_input("exhaustive subset scan limited to 20 points");
  uint64_t full = full_mask(sys.n_points);
  MinimalityReport rep{true, 0};
  for (uint64_t S = 1; S < full; ++S) {
    bool invariant = true;
    for (const PointMap& f : sys.gens)
      if ((set_image_mask(f, S) & ~S) != 0) {
        invariant = false;
        break;
      }
    if (!invariant) continue;
    if (rep.minimal || __builtin_popcountll(S) < __builtin_popcountll(rep.witness_mask) ||
        (__builtin_popcountll(S) == __builtin_popcountll(rep.witness_mask) && S < rep.witness_mask))
      rep.witness_mask = S;
    rep.minimal = false;
  }
  return rep;
}

/* On a finite point set the cone-to-map assignment is never injective: the
   power sequence of the first generator already repeats. */
inline DistinctMapsReport distinct_maps_check(const System& sys) {
  DistinctMapsReport rep;
  rep.distinct = false;
  const Periodicity& p = sys.per.at(0);
  Pt e0 = unit_pt(sys.order, 0);
  rep.v = pt_scale(p.index, e0);
  rep.w = pt_scale(p.index + p.period, e0);
  return rep;
}

inline SimplicityReport simplicity_verdict(const System& sys) {
  SimplicityReport rep;
  rep.minimality = is_minimal(sys);
  rep.maps = distinct_maps_check(sys);
  rep.simple = rep.minimality.minimal && rep.maps.distinct;
  return rep;
}

}  // namespace semicross
