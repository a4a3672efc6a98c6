#pragma once
/* Seeded counterexample searches over small systems.  Each target encodes a
   question about boundary behavior; a hit is a system witnessing the studied
   phenomenon.  Enumeration is exhaustive when the candidate space is small
   and a deterministic seeded sample otherwise, so a given configuration
   always reproduces the same outcome. */
#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dynsys.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "shilov.hpp"

namespace semicross {

enum class SearchTarget {
  subgroup_gap,      // one-parameter subsystem boundary escaping the full one
  orbit_boundary,    // covering images with a shrinking eventual range
  eventual_overlap,  // second map folding new points into the first map's image
};

struct SearchConfig {
  SearchTarget target = SearchTarget::subgroup_gap;
  int points = 3;
  int rank = 2;           // informational; pair targets always use two maps
  uint64_t seed = 1;
  bool bijective = false;
  size_t sample_cap = 4000;
  size_t max_recorded = 5;  // hits beyond this are counted but not stored
};

struct SearchHit {
  std::vector<PointMap> maps;
  Func witness;
};

struct SearchOutcome {
  std::vector<SearchHit> hits;
  size_t hit_count = 0;
  size_t examined = 0;
  bool exhaustive = false;
};

namespace detail {

inline PointMap nth_map(size_t code, int n) {
  PointMap f(n);
  for (int x = 0; x < n; ++x) {
    f[x] = static_cast<int>(code % static_cast<size_t>(n));
    code /= static_cast<size_t>(n);
  }
  return f;
}

inline PointMap random_map(std::mt19937_64& rng, int n) {
  PointMap f(n);
  for (int x = 0; x < n; ++x) f[x] = static_cast<int>(rng() % static_cast<uint64_t>(n));
  return f;
}

inline PointMap random_perm(std::mt19937_64& rng, int n) {
  PointMap f = identity_map(n);
  for (int x = n - 1; x > 0; --x)
    std::swap(f[x], f[rng() % static_cast<uint64_t>(x + 1)]);
  return f;
}

inline bool commute(const PointMap& f, const PointMap& g) { return compose(f, g) == compose(g, f); }

inline size_t pow_count(int n, int e) {
  size_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (size_t{1} << 40)) return size_t{1} << 40;  // saturate, only compared with caps
    r *= static_cast<size_t>(n);
  }
  return r;
}

inline size_t factorial(int n) {
  size_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<size_t>(i);
  return r;
}

inline std::vector<PointMap> all_perms(int n) {
  PointMap base = identity_map(n);
  std::vector<PointMap> out;
  do out.push_back(base);
  while (std::next_permutation(base.begin(), base.end()));
  return out;
}

}  // namespace detail

/* Candidate single maps: every map (or permutation) when that is small
   enough, otherwise a seeded sample of sample_cap draws. */
inline std::vector<PointMap> candidate_maps(const SearchConfig& cfg, bool& exhaustive) {
  int n = cfg.points;
  std::vector<PointMap> out;
  size_t space = cfg.bijective ? detail::factorial(n) : detail::pow_count(n, n);
  exhaustive = space <= cfg.sample_cap;
  if (exhaustive) {
    if (cfg.bijective) return detail::all_perms(n);
    for (size_t code = 0; code < space; ++code) out.push_back(detail::nth_map(code, n));
    return out;
  }
  std::mt19937_64 rng(cfg.seed);
  for (size_t i = 0; i < cfg.sample_cap; ++i)
    out.push_back(cfg.bijective ? detail::random_perm(rng, n) : detail::random_map(rng, n));
  return out;
}

/* For each candidate finest map, build the two-level chain it generates and
   test whether the one-parameter subsystem at twice the finest step has a
   boundary element the full system refuses. */
inline SearchOutcome search_subgroup_gap(const SearchConfig& cfg) {
  SearchOutcome out;
  std::vector<PointMap> cands = candidate_maps(cfg, out.exhaustive);
  for (const PointMap& psi : cands) {
    ++out.examined;
    System sys = make_system(OrderSpec::chain({1, 2}), cfg.points, {compose(psi, psi), psi});
    SubgroupReport rep = subgroup_compat(sys, {SubgroupSpec::Kind::index, 2});
    if (rep.contained) continue;
    ++out.hit_count;
    if (out.hits.size() < cfg.max_recorded) out.hits.push_back({{psi}, rep.witness_entry});
  }
  return out;
}

/* Candidate commuting pairs: exhaustive double enumeration when small,
   otherwise seeded draws where the second map falls back to a power of the
   first if a few independent draws fail to commute. */
inline std::vector<std::pair<PointMap, PointMap>> candidate_pairs(const SearchConfig& cfg,
                                                                  bool& exhaustive) {
  int n = cfg.points;
  std::vector<std::pair<PointMap, PointMap>> out;
  size_t singles = cfg.bijective ? detail::factorial(n) : detail::pow_count(n, n);
  exhaustive = singles <= 1000 && singles * singles <= cfg.sample_cap * 8;
  if (exhaustive) {
    std::vector<PointMap> maps;
    bool dummy = false;
    SearchConfig all = cfg;
    all.sample_cap = singles;
    maps = candidate_maps(all, dummy);
    for (const PointMap& f : maps)
      for (const PointMap& g : maps)
        if (detail::commute(f, g)) out.emplace_back(f, g);
    return out;
  }
  std::mt19937_64 rng(cfg.seed);
  while (out.size() < cfg.sample_cap) {
    PointMap f = cfg.bijective ? detail::random_perm(rng, n) : detail::random_map(rng, n);
    PointMap g;
    bool found = false;
    for (int tries = 0; tries < 64 && !found; ++tries) {
      g = cfg.bijective ? detail::random_perm(rng, n) : detail::random_map(rng, n);
      found = detail::commute(f, g);
    }
    if (!found) {
      Coord e = static_cast<Coord>(rng() % 3 + 1);
      g = identity_map(n);
      for (Coord k = 0; k < e; ++k) g = compose(f, g);
    }
    out.emplace_back(f, g);
  }
  return out;
}

/* Hit: the two images cover every point, yet the eventual joint image does
   not.  The indicator of the uncovered remainder is then a boundary witness. */
inline SearchOutcome search_orbit_boundary(const SearchConfig& cfg) {
  SearchOutcome out;
  auto pairs = candidate_pairs(cfg, out.exhaustive);
  uint64_t full = full_mask(cfg.points);
  for (const auto& [f, g] : pairs) {
    ++out.examined;
    if ((image_mask(f) | image_mask(g)) != full) continue;
    System sys = make_system(OrderSpec::product(2), cfg.points, {f, g});
    uint64_t eventual = image_mask(phi_exponent(sys, sys.window()));
    if (eventual == full) continue;
    ++out.hit_count;
    if (out.hits.size() < cfg.max_recorded)
      out.hits.push_back({{f, g}, indicator_func(cfg.points, ~eventual & full)});
  }
  return out;
}

/* Hit: every power of the second map within its window sends some point from
   outside the first map's image into it; the image's indicator witnesses the
   resulting overlap. */
inline SearchOutcome search_eventual_overlap(const SearchConfig& cfg) {
  SearchOutcome out;
  auto pairs = candidate_pairs(cfg, out.exhaustive);
  uint64_t full = full_mask(cfg.points);
  for (const auto& [f, g] : pairs) {
    ++out.examined;
    System sys = make_system(OrderSpec::product(2), cfg.points, {f, g});
    uint64_t im_f = image_mask(f);
    uint64_t outside = ~im_f & full;
    if (outside == 0) continue;
    Coord w2 = sys.per[1].index + sys.per[1].period;
    bool hit = true;
    for (Coord j = 1; j <= w2 && hit; ++j) {
      uint64_t moved = set_image_mask(phi_exponent(sys, {0, j}), outside);
      hit = (moved & im_f) != 0;
    }
    if (!hit) continue;
    ++out.hit_count;
    if (out.hits.size() < cfg.max_recorded) out.hits.push_back({{f, g}, indicator_func(cfg.points, im_f)});
  }
  return out;
}

inline SearchOutcome search_run(const SearchConfig& cfg) {
  if (cfg.points < 1 || cfg.points > 8) throw invalid_input("search targets cover 1 to 8 points");
  if (cfg.rank != 2) throw invalid_input("search targets are defined for rank 2");
  switch (cfg.target) {
    case SearchTarget::subgroup_gap: return search_subgroup_gap(cfg);
    case SearchTarget::orbit_boundary: return search_orbit_boundary(cfg);
    case SearchTarget::eventual_overlap: return search_eventual_overlap(cfg);
  }
  throw invalid_input("unknown search target");
}

}  // namespace semicross
