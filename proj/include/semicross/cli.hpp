#pragma once
/* Command-line front end.  Exit codes: 0 success, 1 expected mathematical
   finding (a subsystem boundary element the full system refuses, or search
   hits), 2 invalid input system or parameter value, 3 file/parse trouble,
   4 violated internal invariant (always an implementation defect). */
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crossed.hpp"
#include "dfk.hpp"
#include "dilation.hpp"
#include "dynsys.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "lattice.hpp"
#include "search.hpp"
#include "shilov.hpp"
#include "tower.hpp"

namespace semicross {

constexpr int exit_ok = 0;
constexpr int exit_finding = 1;
constexpr int exit_invalid = 2;
constexpr int exit_io = 3;
constexpr int exit_internal = 4;

namespace cli_detail {

inline ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  try {
    ordered_json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error("cannot parse '" + path + "': " + e.what());
  }
}

inline std::string order_description(const OrderSpec& spec) {
  switch (spec.kind) {
    case OrderKind::product: return "product order of rank " + std::to_string(spec.rank);
    case OrderKind::lex: return "lexicographic order of rank " + std::to_string(spec.rank);
    case OrderKind::chain: {
      std::string s = "chain with levels [";
      for (size_t i = 0; i < spec.levels.size(); ++i)
        s += (i ? ", " : "") + std::to_string(spec.levels[i]);
      return s + "]";
    }
  }
  return "";
}

inline std::string func_str(const Func& a) {
  std::string s = "(";
  for (size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + to_string(a[i]);
  return s + ")";
}

inline std::string mask_str(uint64_t mask, int n) {
  std::string s = "{";
  bool first = true;
  for (int x = 0; x < n; ++x)
    if (mask >> x & 1) {
      s += (first ? "" : ", ") + std::to_string(x + 1);
      first = false;
    }
  return s + "}";
}

inline std::string grid_str(const Grid& G) {
  std::string s;
  for (size_t i = 0; i < G.size(); ++i) s += (i ? " " : "") + pt_to_string(G[i]);
  return s;
}

inline void print_basis(std::ostream& out, const System& sys, const Grid& H, const Matrix& rows) {
  for (size_t r = 0; r < rows.size(); ++r) {
    out << "  basis[" << r << "]:";
    DilationElement x = row_to_element(sys, H, rows[r]);
    for (size_t k = 0; k < H.size(); ++k)
      if (!func_is_zero(x.coeff[k])) out << "  " << pt_to_string(H[k]) << " -> " << func_str(x.coeff[k]);
    out << "\n";
  }
}

inline ordered_json basis_json(const Matrix& rows) { return matrix_to_json(rows); }

inline int cmd_validate(const std::string& file, bool json, std::ostream& out) {
  ordered_json j = load_json_file(file);
  bool ok = true;
  std::string message;
  System sys;
  try {
    sys = system_from_json(j);
  } catch (const invalid_input& e) {
    ok = false;
    message = e.what();
  }
  if (json) {
    ordered_json rep;
    rep["command"] = "validate";
    rep["ok"] = ok;
    rep["message"] = ok ? "" : message;
    if (ok) rep["system"] = system_to_json(sys);
    out << rep.dump(2) << "\n";
  } else if (ok) {
    out << "valid: " << sys.n_points << " points, " << order_description(sys.order) << ", "
        << sys.raw_gens.size() << " generator map(s)\n";
  } else {
    out << "invalid: " << message << "\n";
  }
  return ok ? exit_ok : exit_invalid;
}

inline int cmd_dilation_check(const std::string& file, bool json, std::ostream& out) {
  System sys = load_system(file);
  std::vector<std::string> checks;

  NicaReport axioms = verify_nica_axioms(sys);
  if (!axioms.ok) throw invariant_violation(axioms.detail);
  checks.push_back("covariance axioms hold on the periodicity window");

  /* A handful of deterministic elements exercising products and absorption. */
  std::vector<DilationElement> samples;
  int n = sys.n_points;
  for (int i = 0; i < sys.order.rank; ++i) {
    Pt e = unit_pt(sys.order, i);
    samples.push_back(make_element(sys, {{pt_neg(e), delta_func(n, i % n)}, {zero_pt(sys.order), one_func(n)}}));
    samples.push_back(make_element(sys, {{e, delta_func(n, (i + 1) % n)}}));
  }
  size_t pairs = 0;
  for (const DilationElement& x : samples)
    for (const DilationElement& y : samples) {
      if (!check_product_oracle(sys, x, y))
        throw invariant_violation("product entries are not pointwise products");
      ++pairs;
    }
  checks.push_back("entrywise product oracle agrees on " + std::to_string(pairs) + " pairs");

  for (const DilationElement& x : samples) (void)approx_identity_index(sys, x);
  checks.push_back("translated projections absorb every sample element");

  for (int i = 0; i < sys.order.rank; ++i) {
    Pt e = unit_pt(sys.order, i);
    (void)monomial_normal_form(sys, pt_sub(e, unit_pt(sys.order, (i + 1) % sys.order.rank)), e,
                               delta_func(n, i % n));
  }
  checks.push_back("corner monomial rewritings agree");

  if (json) {
    ordered_json rep;
    rep["command"] = "dilation-check";
    rep["ok"] = true;
    rep["checks"] = checks;
    out << rep.dump(2) << "\n";
  } else {
    out << "dilation checks passed:\n";
    for (const std::string& c : checks) out << "  - " << c << "\n";
  }
  return exit_ok;
}

inline int cmd_shilov(const std::string& file, const std::string& grid_text, bool json,
                      std::ostream& out) {
  System sys = load_system(file);
  Grid H = parse_grid_literal(grid_text, sys.order);
  ShilovSubspace s = shilov_subspace(sys, H);
  boundary_invariance_check(sys, H, s.rows);
  if (json) {
    ordered_json rep;
    rep["command"] = "shilov";
    rep["grid"] = grid_to_json(H);
    rep["dimension"] = s.rows.size();
    rep["basis"] = basis_json(s.rows);
    rep["invariance"] = "pass";
    out << rep.dump(2) << "\n";
  } else {
    out << "grid: " << grid_str(H) << "\n";
    out << "boundary subspace dimension: " << s.rows.size() << "\n";
    print_basis(out, sys, H, s.rows);
    out << "invariance checks: pass\n";
  }
  return exit_ok;
}

inline int cmd_envelope(const std::string& file, bool json, std::ostream& out) {
  System sys = load_system(file);
  EnvelopeReport rep = envelope_criterion(sys);
  if (json) {
    ordered_json j;
    j["command"] = "envelope-report";
    j["envelope"] = rep.envelope;
    j["witness"] = grid_to_json(rep.witness);
    j["image_union"] = mask_to_json(rep.witness_ideal.zero_mask, sys.n_points);
    j["annihilator_zero_set"] = mask_to_json(rep.witness_annihilator.zero_mask, sys.n_points);
    out << j.dump(2) << "\n";
  } else if (rep.envelope) {
    out << "the semicrossed product is its own envelope: no candidate key set obstructs\n";
  } else {
    out << "not the envelope: key set " << grid_str(rep.witness) << " obstructs\n";
    out << "  image union: " << mask_str(rep.witness_ideal.zero_mask, sys.n_points) << "\n";
    out << "  annihilator vanishes on: " << mask_str(rep.witness_annihilator.zero_mask, sys.n_points)
        << "\n";
  }
  return exit_ok;
}

inline int cmd_dfk_compare(const std::string& file, const std::string& grid_text, int box_radius,
                           bool json, std::ostream& out) {
  if (box_radius < 2)
    throw invalid_input("box radius must be at least 2 to outrun the periodicity window");
  System sys = load_system(file);
  Grid H = parse_grid_literal(grid_text, sys.order);
  CompareResult r = compare_kernels(sys, H, box_radius);
  if (r.tower.stabilized && !r.agree)
    throw invariant_violation("closed-form subspace disagrees with the stabilized oracle (dimensions " +
                              std::to_string(r.closed.size()) + " vs " +
                              std::to_string(r.tower.rows.size()) + ")");
  if (json) {
    ordered_json j;
    j["command"] = "dfk-compare";
    j["grid"] = grid_to_json(H);
    j["dimension"] = r.closed.size();
    j["oracle_dimension"] = r.tower.rows.size();
    j["stabilized"] = r.tower.stabilized;
    j["expansions"] = r.tower.expansions;
    j["agree"] = r.agree;
    out << j.dump(2) << "\n";
  } else {
    out << "grid: " << grid_str(H) << "\n";
    out << "closed-form dimension: " << r.closed.size() << "\n";
    if (!r.tower.stabilized) {
      out << "oracle did not stabilize within " << r.tower.expansions
          << " box expansions; comparison inconclusive\n";
    } else {
      out << "oracle dimension: " << r.tower.rows.size() << " (stabilized after " << r.tower.expansions
          << " expansions)\n";
      out << "agreement: yes\n";
    }
  }
  return exit_ok;
}

inline int cmd_subgroup(const std::string& file, const std::string& subgroup_text,
                        const std::string& grid_text, bool json, std::ostream& out) {
  System sys = load_system(file);
  SubgroupSpec spec = parse_subgroup_spec(subgroup_text);
  Grid sub_grid;
  if (!grid_text.empty()) sub_grid = parse_grid_literal(grid_text, OrderSpec::chain({1}));
  SubgroupReport rep = subgroup_compat(sys, spec, sub_grid);
  if (json) {
    ordered_json j;
    j["command"] = "subgroup-compat";
    j["subgroup"] = subgroup_text;
    j["sub_grid"] = grid_to_json(rep.sub_grid);
    j["full_grid"] = grid_to_json(rep.full_grid);
    j["sub_dimension"] = rep.sub_rows.size();
    j["full_dimension"] = rep.full_rows.size();
    j["contained"] = rep.contained;
    j["equal"] = rep.equal;
    j["isometry"] = rep.isometry_ok;
    if (rep.has_witness) {
      ordered_json w;
      w["row"] = row_to_json(rep.witness_row);
      w["at"] = pt_to_json(rep.witness_h);
      w["entry"] = func_to_json(rep.witness_entry);
      j["witness"] = std::move(w);
    } else {
      j["witness"] = nullptr;
    }
    out << j.dump(2) << "\n";
  } else {
    out << "subsystem grid " << grid_str(rep.sub_grid) << " embeds as " << grid_str(rep.full_grid)
        << "\n";
    out << "subsystem boundary dimension: " << rep.sub_rows.size() << "\n";
    out << "full-system boundary dimension: " << rep.full_rows.size() << "\n";
    out << "norm agreement on samples: yes\n";
    if (rep.contained) {
      out << (rep.equal ? "the two subspaces coincide\n"
                        : "the subsystem boundary sits inside the full one\n");
    } else {
      out << "finding: a subsystem boundary element is NOT in the full boundary subspace\n";
      out << "  offending entry at " << pt_to_string(rep.witness_h) << ": "
          << func_str(rep.witness_entry) << "\n";
    }
  }
  return rep.contained ? exit_ok : exit_finding;
}

inline int cmd_simplicity(const std::string& file, bool json, std::ostream& out) {
  System sys = load_system(file);
  SimplicityReport rep = simplicity_verdict(sys);
  if (json) {
    ordered_json j;
    j["command"] = "simplicity";
    j["simple"] = rep.simple;
    j["minimal"] = rep.minimality.minimal;
    j["invariant_subset"] =
        rep.minimality.minimal ? ordered_json(nullptr) : mask_to_json(rep.minimality.witness_mask, sys.n_points);
    j["distinct_maps"] = rep.maps.distinct;
    ordered_json coll;
    coll["v"] = pt_to_json(rep.maps.v);
    coll["w"] = pt_to_json(rep.maps.w);
    j["collision"] = std::move(coll);
    out << j.dump(2) << "\n";
  } else {
    if (rep.minimality.minimal)
      out << "minimal: every forward orbit is the whole point set\n";
    else
      out << "not minimal: " << mask_str(rep.minimality.witness_mask, sys.n_points)
          << " is a proper invariant subset\n";
    out << "cone exponents " << pt_to_string(rep.maps.v) << " and " << pt_to_string(rep.maps.w)
        << " induce the same map, so the exponent-to-map assignment is never injective\n";
    out << "verdict: " << (rep.simple ? "simple\n" : "not simple\n");
  }
  return exit_ok;
}

inline int cmd_search(const std::string& target_text, int points, int rank, uint64_t seed,
                      bool bijective, bool json, std::ostream& out) {
  SearchConfig cfg;
  if (target_text == "prop68") cfg.target = SearchTarget::subgroup_gap;
  else if (target_text == "boundary") cfg.target = SearchTarget::orbit_boundary;
  else if (target_text == "dist61") cfg.target = SearchTarget::eventual_overlap;
  else throw invalid_input("unknown search target '" + target_text + "'");
  cfg.points = points;
  cfg.rank = rank;
  cfg.seed = seed;
  cfg.bijective = bijective;
  SearchOutcome res = search_run(cfg);
  if (json) {
    ordered_json j;
    j["command"] = "search";
    j["target"] = target_text;
    j["points"] = points;
    j["bijective"] = bijective;
    j["examined"] = res.examined;
    j["exhaustive"] = res.exhaustive;
    j["hit_count"] = res.hit_count;
    ordered_json hits = ordered_json::array();
    for (const SearchHit& h : res.hits) {
      ordered_json hit;
      ordered_json maps = ordered_json::array();
      for (const PointMap& f : h.maps) maps.push_back(map_to_json(f));
      hit["maps"] = std::move(maps);
      hit["witness"] = func_to_json(h.witness);
      hits.push_back(std::move(hit));
    }
    j["hits"] = std::move(hits);
    out << j.dump(2) << "\n";
  } else {
    out << "examined " << res.examined << " candidate(s) ("
        << (res.exhaustive ? "exhaustive" : "seeded sample") << "), hits: " << res.hit_count << "\n";
    for (const SearchHit& h : res.hits) {
      out << "  hit:";
      for (const PointMap& f : h.maps) {
        out << " [";
        for (size_t x = 0; x < f.size(); ++x) out << (x ? "," : "") << f[x] + 1;
        out << "]";
      }
      out << "  witness " << func_str(h.witness) << "\n";
    }
  }
  return res.hit_count > 0 ? exit_finding : exit_ok;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact boundary computations for finite dynamical systems over lattice cones"};
  app.require_subcommand(1);

  std::string file, grid_text, subgroup_text, target_text;
  bool json = false, bijective = false;
  int box_radius = 4, points = 3, rank = 2;
  uint64_t seed = 1;

  CLI::App* validate = app.add_subcommand("validate", "check a system file and report its shape");
  validate->add_option("file", file, "system file")->required();
  validate->add_flag("--json", json, "machine-readable output");

  CLI::App* dilation = app.add_subcommand("dilation-check", "verify the covariance package exactly");
  dilation->add_option("file", file, "system file")->required();
  dilation->add_flag("--json", json, "machine-readable output");

  CLI::App* shilov = app.add_subcommand("shilov", "boundary subspace on a grid");
  shilov->add_option("file", file, "system file")->required();
  shilov->add_option("--grid", grid_text, "grid literal, e.g. \"0,0;1,0\" (join closure is taken)")
      ->required();
  shilov->add_flag("--json", json, "machine-readable output");

  CLI::App* envelope = app.add_subcommand("envelope-report", "does any candidate key set obstruct?");
  envelope->add_option("file", file, "system file")->required();
  envelope->add_flag("--json", json, "machine-readable output");

  CLI::App* dfk = app.add_subcommand("dfk-compare", "closed form vs expanding-box oracle");
  dfk->add_option("file", file, "system file")->required();
  dfk->add_option("--grid", grid_text, "grid literal")->required();
  dfk->add_option("--box-radius", box_radius, "box expansions for the oracle (default 4, minimum 2)");
  dfk->add_flag("--json", json, "machine-readable output");

  CLI::App* subgroup = app.add_subcommand("subgroup-compat", "one-parameter subsystem comparison");
  subgroup->add_option("file", file, "system file")->required();
  subgroup->add_option("--subgroup", subgroup_text, "coord:i for product orders, index:k for chains")
      ->required();
  subgroup->add_option("--grid", grid_text, "subsystem grid literal (default \"0;1\")");
  subgroup->add_flag("--json", json, "machine-readable output");

  CLI::App* simplicity = app.add_subcommand("simplicity", "minimality and exponent collisions");
  simplicity->add_option("file", file, "system file")->required();
  simplicity->add_flag("--json", json, "machine-readable output");

  CLI::App* search = app.add_subcommand("search", "seeded counterexample searches");
  search->add_option("--target", target_text, "prop68 | boundary | dist61")->required();
  search->add_option("--points", points, "point count (default 3)");
  search->add_option("--rank", rank, "rank (always 2)");
  search->add_option("--seed", seed, "sample seed (default 1)");
  search->add_flag("--bijective", bijective, "restrict candidates to permutations");
  search->add_flag("--json", json, "machine-readable output");

  std::vector<const char*> argv;
  argv.push_back("semicross");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (validate->parsed()) return cli_detail::cmd_validate(file, json, out);
    if (dilation->parsed()) return cli_detail::cmd_dilation_check(file, json, out);
    if (shilov->parsed()) return cli_detail::cmd_shilov(file, grid_text, json, out);
    if (envelope->parsed()) return cli_detail::cmd_envelope(file, json, out);
    if (dfk->parsed()) return cli_detail::cmd_dfk_compare(file, grid_text, box_radius, json, out);
    if (subgroup->parsed()) return cli_detail::cmd_subgroup(file, subgroup_text, grid_text, json, out);
    if (simplicity->parsed()) return cli_detail::cmd_simplicity(file, json, out);
    if (search->parsed())
      return cli_detail::cmd_search(target_text, points, rank, seed, bijective, json, out);
    err << "no command selected\n";
    return exit_io;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_io;
  } catch (const io_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_io;
  } catch (const invalid_input& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const invariant_violation& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

}  // namespace semicross
