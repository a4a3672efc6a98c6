#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include <semicross/cli.hpp>

#include "test_helpers.hpp"

using namespace semicross;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

ordered_json parse_out(const CliResult& r) { return ordered_json::parse(r.out); }

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("help and argument errors") {
  CliResult help = run({"--help"});
  CHECK(help.code == exit_ok);
  CHECK(contains(help.out, "validate"));
  CHECK(contains(help.out, "shilov"));
  CHECK(contains(help.out, "search"));

  CliResult none = run({});
  CHECK(none.code == exit_io);
  CHECK(contains(none.err, "error:"));

  CliResult no_file = run({"validate"});
  CHECK(no_file.code == exit_io);
  CHECK(contains(no_file.err, "error:"));

  CliResult bad_sub = run({"frobnicate"});
  CHECK(bad_sub.code == exit_io);

  std::string f = testutil::write_system_file("cli_running", testutil::running_example());
  CliResult bad_flag = run({"validate", f, "--bogus"});
  CHECK(bad_flag.code == exit_io);
}

TEST_CASE("validate reports shape and rejects bad systems") {
  std::string f = testutil::write_system_file("cli_running", testutil::running_example());

  CliResult human = run({"validate", f});
  CHECK(human.code == exit_ok);
  CHECK(human.out == "valid: 3 points, product order of rank 2, 2 generator map(s)\n");

  CliResult js = run({"validate", f, "--json"});
  REQUIRE(js.code == exit_ok);
  ordered_json j = parse_out(js);
  CHECK(j["command"] == "validate");
  CHECK(j["ok"] == true);
  CHECK(j["message"] == "");
  CHECK(j["system"]["points"] == 3);
  CHECK(j["system"]["order"]["type"] == "product");
  CHECK(j["system"]["order"]["rank"] == 2);
  CHECK(j["system"]["generators"] == ordered_json({{1, 3, 3}, {3, 2, 3}}));

  std::string chain = testutil::write_system_file("clicollapse", testutil::collapse_chain());
  CliResult ch = run({"validate", chain});
  CHECK(ch.code == exit_ok);
  CHECK(contains(ch.out, "chain with levels [1, 2]"));

  std::string noncomm = testutil::write_text_file(
      "cli_noncomm.json",
      R"({"order":{"type":"product","rank":2},"points":2,"generators":[[2,1],[1,1]]})");
  CliResult bad = run({"validate", noncomm});
  CHECK(bad.code == exit_invalid);
  CHECK(contains(bad.out, "invalid: "));
  CHECK(contains(bad.out, "do not commute"));
  CliResult badjs = run({"validate", noncomm, "--json"});
  CHECK(badjs.code == exit_invalid);
  ordered_json bj = parse_out(badjs);
  CHECK(bj["ok"] == false);
  CHECK(contains(bj["message"].get<std::string>(), "do not commute"));
  CHECK(!bj.contains("system"));

  std::string lex = testutil::write_text_file(
      "cli_lex.json", R"({"order":{"type":"lex","rank":2},"points":2,"generators":[[1,2],[1,2]]})");
  CliResult lx = run({"validate", lex});
  CHECK(lx.code == exit_invalid);
  CHECK(contains(lx.out, "lexicographic orders of rank 2 and higher"));

  std::string floaty = testutil::write_text_file(
      "cli_float.json",
      R"({"order":{"type":"product","rank":2},"points":3.0,"generators":[[1,3,3],[3,2,3]]})");
  CliResult fl = run({"validate", floaty});
  CHECK(fl.code == exit_invalid);
  CHECK(contains(fl.out, "floating point values are rejected"));

  std::string mangled = testutil::write_text_file("cli_mangled.json", "{ this is not json");
  CliResult mg = run({"validate", mangled});
  CHECK(mg.code == exit_io);
  CHECK(contains(mg.err, "cannot parse"));

  CliResult missing = run({"validate", "no_such_file_anywhere.json"});
  CHECK(missing.code == exit_io);
  CHECK(contains(missing.err, "cannot open"));
}

TEST_CASE("shilov subcommand prints the boundary basis") {
  std::string f = testutil::write_system_file("cli_running", testutil::running_example());

  CliResult human = run({"shilov", f, "--grid", "0,0;1,0"});
  CHECK(human.code == exit_ok);
  CHECK(contains(human.out, "grid: (0,0) (1,0)"));
  CHECK(contains(human.out, "boundary subspace dimension: 2"));
  CHECK(contains(human.out, "invariance checks: pass"));

  CliResult js = run({"shilov", f, "--grid", "0,0;1,0", "--json"});
  REQUIRE(js.code == exit_ok);
  ordered_json j = parse_out(js);
  CHECK(j["command"] == "shilov");
  CHECK(j["grid"] == ordered_json({{0, 0}, {1, 0}}));
  CHECK(j["dimension"] == 2);
  CHECK(j["invariance"] == "pass");
  CHECK(j["basis"] == ordered_json({{"1", "0", "0", "-1", "0", "0"},
                                    {"0", "0", "1", "0", "-1", "-1"}}));

  CliResult bad_grid = run({"shilov", f, "--grid", "0,0;zz"});
  CHECK(bad_grid.code == exit_invalid);
  CHECK(contains(bad_grid.err, "grid literal"));

  // A literal that is not join-closed is closed automatically: the pair
  // (1,0), (0,1) gains its join (1,1) before the computation runs.
  CliResult open_grid = run({"shilov", f, "--grid", "1,0;0,1", "--json"});
  REQUIRE(open_grid.code == exit_ok);
  ordered_json oj = parse_out(open_grid);
  CHECK(oj["grid"] == ordered_json({{0, 1}, {1, 0}, {1, 1}}));

  CliResult no_grid = run({"shilov", f});
  CHECK(no_grid.code == exit_io);
}

TEST_CASE("dilation-check passes on the fixtures") {
  for (const std::string& f : {testutil::write_system_file("cli_running", testutil::running_example()),
                               testutil::write_system_file("clicollapse", testutil::collapse_chain()),
                               testutil::write_system_file("cliz2", testutil::z2sys())}) {
    CliResult human = run({"dilation-check", f});
    CHECK(human.code == exit_ok);
    CHECK(contains(human.out, "dilation checks passed:"));
    CHECK(contains(human.out, "covariance axioms hold on the periodicity window"));
    CHECK(contains(human.out, "entrywise product oracle agrees on"));
    CHECK(contains(human.out, "translated projections absorb every sample element"));
    CHECK(contains(human.out, "corner monomial rewritings agree"));

    CliResult js = run({"dilation-check", f, "--json"});
    REQUIRE(js.code == exit_ok);
    ordered_json j = parse_out(js);
    CHECK(j["command"] == "dilation-check");
    CHECK(j["ok"] == true);
    CHECK(j["checks"].size() == 4);
  }
}

TEST_CASE("envelope-report finds the obstruction or reports none") {
  std::string f = testutil::write_system_file("cli_running", testutil::running_example());
  CliResult human = run({"envelope-report", f});
  CHECK(human.code == exit_ok);
  CHECK(contains(human.out, "not the envelope: key set (1,0) obstructs"));
  CHECK(contains(human.out, "  image union: {1, 3}"));
  CHECK(contains(human.out, "  annihilator vanishes on: {2}"));

  CliResult js = run({"envelope-report", f, "--json"});
  REQUIRE(js.code == exit_ok);
  ordered_json j = parse_out(js);
  CHECK(j["command"] == "envelope-report");
  CHECK(j["envelope"] == false);
  CHECK(j["witness"] == ordered_json({{1, 0}}));
  CHECK(j["image_union"] == ordered_json({1, 3}));
  CHECK(j["annihilator_zero_set"] == ordered_json({2}));

  // Invertible dynamics still obstruct, but through the trivial ideal: the
  // image union is everything and the annihilator vanishes nowhere.
  std::string perms = testutil::write_text_file(
      "cli_perms.json",
      R"({"order":{"type":"product","rank":2},"points":3,"generators":[[2,3,1],[3,1,2]]})");
  CliResult own = run({"envelope-report", perms});
  CHECK(own.code == exit_ok);
  CHECK(contains(own.out, "not the envelope: key set (1,0) obstructs"));
  CHECK(contains(own.out, "  image union: {1, 2, 3}"));
  CHECK(contains(own.out, "  annihilator vanishes on: {}"));
  CliResult ownjs = run({"envelope-report", perms, "--json"});
  REQUIRE(ownjs.code == exit_ok);
  ordered_json oj = parse_out(ownjs);
  CHECK(oj["envelope"] == false);
  CHECK(oj["witness"] == ordered_json({{1, 0}}));
  CHECK(oj["image_union"] == ordered_json({1, 2, 3}));
  CHECK(oj["annihilator_zero_set"] == ordered_json::array());
}

TEST_CASE("dfk-compare agrees with the oracle") {
  std::string f = testutil::write_system_file("cli_running", testutil::running_example());
  CliResult human = run({"dfk-compare", f, "--grid", "0,0;1,0"});
  CHECK(human.code == exit_ok);
  CHECK(contains(human.out, "closed-form dimension: 2"));
  CHECK(contains(human.out, "agreement: yes"));

  CliResult js = run({"dfk-compare", f, "--grid", "0,0;1,0", "--json"});
  REQUIRE(js.code == exit_ok);
  ordered_json j = parse_out(js);
  CHECK(j["command"] == "dfk-compare");
  CHECK(j["dimension"] == 2);
  CHECK(j["oracle_dimension"] == 2);
  CHECK(j["stabilized"] == true);
  CHECK(j["agree"] == true);

  std::string chain = testutil::write_system_file("clicollapse", testutil::collapse_chain());
  CliResult ch = run({"dfk-compare", chain, "--grid", "0;1", "--json"});
  REQUIRE(ch.code == exit_ok);
  CHECK(parse_out(ch)["agree"] == true);

  CliResult small = run({"dfk-compare", f, "--grid", "0,0;1,0", "--box-radius", "1"});
  CHECK(small.code == exit_invalid);
  CHECK(contains(small.err, "box radius must be at least 2"));
}

TEST_CASE("subgroup-compat reports containment and findings") {
  std::string collapse = testutil::write_system_file("clicollapse", testutil::collapse_chain());
  CliResult finding = run({"subgroup-compat", collapse, "--subgroup", "index:2"});
  CHECK(finding.code == exit_finding);
  CHECK(contains(finding.out, "subsystem grid (0) (1) embeds as (0) (2)"));
  CHECK(contains(finding.out, "finding: a subsystem boundary element is NOT in the full boundary subspace"));
  CHECK(contains(finding.out, "  offending entry at (1): (1, 1, 1)"));

  CliResult js = run({"subgroup-compat", collapse, "--subgroup", "index:2", "--json"});
  REQUIRE(js.code == exit_finding);
  ordered_json j = parse_out(js);
  CHECK(j["command"] == "subgroup-compat");
  CHECK(j["sub_grid"] == ordered_json({{0}, {1}}));
  CHECK(j["full_grid"] == ordered_json({{0}, {2}}));
  CHECK(j["sub_dimension"] == 1);
  CHECK(j["full_dimension"] == 0);
  CHECK(j["contained"] == false);
  CHECK(j["equal"] == false);
  CHECK(j["isometry"] == true);
  REQUIRE(j["witness"].is_object());
  CHECK(j["witness"]["row"] == ordered_json({"0", "0", "1", "-1", "-1", "-1"}));
  CHECK(j["witness"]["at"] == ordered_json({1}));
  CHECK(j["witness"]["entry"] == ordered_json({"1", "1", "1"}));

  // An explicit grid equal to the default must reproduce the run byte for byte.
  CliResult same = run({"subgroup-compat", collapse, "--subgroup", "index:2", "--grid", "0;1", "--json"});
  CHECK(same.code == js.code);
  CHECK(same.out == js.out);

  std::string swap_file = testutil::write_text_file(
      "cli_swapchain.json",
      R"({"order":{"type":"chain","levels":[1,2]},"points":2,"generators":[[1,2],[2,1]]})");
  CliResult ok = run({"subgroup-compat", swap_file, "--subgroup", "index:2", "--json"});
  REQUIRE(ok.code == exit_ok);
  ordered_json oj = parse_out(ok);
  CHECK(oj["contained"] == true);
  CHECK(oj["equal"] == true);
  CHECK(oj["isometry"] == true);
  CHECK(oj["witness"].is_null());
  CHECK(oj["sub_dimension"] == 2);
  CHECK(oj["full_dimension"] == 2);
  CliResult okh = run({"subgroup-compat", swap_file, "--subgroup", "index:2"});
  CHECK(okh.code == exit_ok);
  CHECK(contains(okh.out, "the two subspaces coincide"));

  std::string fex = testutil::write_system_file("cli_running", testutil::running_example());
  CliResult coord = run({"subgroup-compat", fex, "--subgroup", "coord:1", "--json"});
  REQUIRE(coord.code == exit_ok);
  ordered_json cj = parse_out(coord);
  CHECK(cj["contained"] == true);
  CHECK(cj["equal"] == true);
  CHECK(cj["full_grid"] == ordered_json({{0, 0}, {1, 0}}));

  CliResult wrong_kind = run({"subgroup-compat", fex, "--subgroup", "index:2"});
  CHECK(wrong_kind.code == exit_invalid);
  CHECK(contains(wrong_kind.err, "index:k subgroups apply to chain orders"));

  CliResult out_of_range = run({"subgroup-compat", fex, "--subgroup", "coord:3"});
  CHECK(out_of_range.code == exit_invalid);
  CHECK(contains(out_of_range.err, "coordinate 3 exceeds the rank"));

  CliResult bad_spec = run({"subgroup-compat", fex, "--subgroup", "axis:1"});
  CHECK(bad_spec.code == exit_invalid);
}

TEST_CASE("simplicity verdicts") {
  std::string f = testutil::write_system_file("cli_running", testutil::running_example());
  CliResult human = run({"simplicity", f});
  CHECK(human.code == exit_ok);
  CHECK(contains(human.out, "not minimal: {3} is a proper invariant subset"));
  CHECK(contains(human.out, "cone exponents (1,0) and (2,0) induce the same map"));
  CHECK(contains(human.out, "verdict: not simple"));

  CliResult js = run({"simplicity", f, "--json"});
  REQUIRE(js.code == exit_ok);
  ordered_json j = parse_out(js);
  CHECK(j["command"] == "simplicity");
  CHECK(j["simple"] == false);
  CHECK(j["minimal"] == false);
  CHECK(j["invariant_subset"] == ordered_json({3}));
  CHECK(j["distinct_maps"] == false);
  CHECK(j["collision"]["v"] == ordered_json({1, 0}));
  CHECK(j["collision"]["w"] == ordered_json({2, 0}));

  std::string rot = testutil::write_text_file(
      "cli_rot.json",
      R"({"order":{"type":"chain","levels":[1]},"points":3,"generators":[[2,3,1]]})");
  CliResult minimal = run({"simplicity", rot, "--json"});
  REQUIRE(minimal.code == exit_ok);
  ordered_json mj = parse_out(minimal);
  CHECK(mj["simple"] == false);
  CHECK(mj["minimal"] == true);
  CHECK(mj["invariant_subset"].is_null());
  CHECK(mj["collision"]["v"] == ordered_json({0}));
  CHECK(mj["collision"]["w"] == ordered_json({3}));
  CliResult mh = run({"simplicity", rot});
  CHECK(contains(mh.out, "minimal: every forward orbit is the whole point set"));
}

TEST_CASE("search subcommand exit codes and hit shapes") {
  CliResult gap = run({"search", "--target", "prop68", "--points", "3", "--json"});
  CHECK(gap.code == exit_finding);
  ordered_json gj = parse_out(gap);
  CHECK(gj["command"] == "search");
  CHECK(gj["target"] == "prop68");
  CHECK(gj["examined"] == 27);
  CHECK(gj["exhaustive"] == true);
  CHECK(gj["hit_count"].get<size_t>() > 0);
  REQUIRE(!gj["hits"].empty());
  CHECK(gj["hits"][0]["maps"].size() == 1);

  CliResult gap_bij = run({"search", "--target", "prop68", "--points", "3", "--bijective", "--json"});
  CHECK(gap_bij.code == exit_ok);
  ordered_json bj = parse_out(gap_bij);
  CHECK(bj["examined"] == 6);
  CHECK(bj["exhaustive"] == true);
  CHECK(bj["hit_count"] == 0);

  CliResult boundary = run({"search", "--target", "boundary", "--points", "3"});
  CHECK(boundary.code == exit_finding);
  CHECK(contains(boundary.out, "(exhaustive)"));
  CHECK(contains(boundary.out, "  hit:"));
  CHECK(contains(boundary.out, "witness"));

  CliResult overlap = run({"search", "--target", "dist61", "--points", "3", "--json"});
  CHECK(overlap.code == exit_finding);
  ordered_json ov = parse_out(overlap);
  CHECK(ov["hit_count"].get<size_t>() > 0);
  CHECK(ov["hits"][0]["maps"].size() == 2);

  CliResult bogus = run({"search", "--target", "prop99", "--points", "3"});
  CHECK(bogus.code == exit_invalid);
  CHECK(contains(bogus.err, "unknown search target 'prop99'"));

  CliResult too_many = run({"search", "--target", "prop68", "--points", "9"});
  CHECK(too_many.code == exit_invalid);
  CHECK(contains(too_many.err, "search targets cover 1 to 8 points"));

  CliResult bad_rank = run({"search", "--target", "prop68", "--points", "3", "--rank", "3"});
  CHECK(bad_rank.code == exit_invalid);
  CHECK(contains(bad_rank.err, "rank 2"));

  // Seeded searches are deterministic: identical invocations, identical bytes.
  CliResult again = run({"search", "--target", "dist61", "--points", "3", "--json"});
  CHECK(again.out == overlap.out);
  CHECK(again.code == overlap.code);
}

TEST_CASE("search hits re-verify against the library") {
  SearchConfig cfg;
  cfg.points = 3;
  cfg.max_recorded = 100000;

  SECTION("subgroup gaps rebuild to non-contained subsystems") {
    cfg.target = SearchTarget::subgroup_gap;
    SearchOutcome res = search_run(cfg);
    REQUIRE(res.exhaustive);
    REQUIRE(res.hit_count > 0);
    REQUIRE(res.hits.size() == res.hit_count);
    for (const SearchHit& h : res.hits) {
      REQUIRE(h.maps.size() == 1);
      const PointMap& psi = h.maps[0];
      System sys = make_system(OrderSpec::chain({1, 2}), 3, {compose(psi, psi), psi});
      SubgroupReport rep = subgroup_compat(sys, {SubgroupSpec::Kind::index, 2});
      CHECK(!rep.contained);
      CHECK(rep.witness_entry == h.witness);
    }
  }

  SECTION("orbit boundary hits cover yet shrink, and include the running example") {
    cfg.target = SearchTarget::orbit_boundary;
    SearchOutcome res = search_run(cfg);
    REQUIRE(res.exhaustive);
    REQUIRE(res.hit_count > 0);
    REQUIRE(res.hits.size() == res.hit_count);
    uint64_t full = full_mask(3);
    bool found_example = false;
    for (const SearchHit& h : res.hits) {
      REQUIRE(h.maps.size() == 2);
      CHECK((image_mask(h.maps[0]) | image_mask(h.maps[1])) == full);
      System sys = make_system(OrderSpec::product(2), 3, {h.maps[0], h.maps[1]});
      uint64_t eventual = image_mask(phi_exponent(sys, sys.window()));
      CHECK(eventual != full);
      CHECK(h.witness == indicator_func(3, ~eventual & full));
      if (h.maps[0] == PointMap{0, 2, 2} && h.maps[1] == PointMap{2, 1, 2}) {
        found_example = true;
        CHECK(h.witness == Func{GaussRat(1), GaussRat(1), GaussRat(0)});
      }
    }
    CHECK(found_example);
  }

  SECTION("eventual overlap hits keep folding outside points into the image") {
    cfg.target = SearchTarget::eventual_overlap;
    SearchOutcome res = search_run(cfg);
    REQUIRE(res.exhaustive);
    REQUIRE(res.hit_count > 0);
    for (const SearchHit& h : res.hits) {
      uint64_t im_f = image_mask(h.maps[0]);
      uint64_t outside = ~im_f & full_mask(3);
      REQUIRE(outside != 0);
      System sys = make_system(OrderSpec::product(2), 3, {h.maps[0], h.maps[1]});
      Coord w2 = sys.per[1].index + sys.per[1].period;
      for (Coord j = 1; j <= w2; ++j)
        CHECK((set_image_mask(phi_exponent(sys, {0, j}), outside) & im_f) != 0);
      CHECK(h.witness == indicator_func(3, im_f));
    }
  }

  SECTION("bijective candidates admit none of the three phenomena") {
    cfg.bijective = true;
    for (SearchTarget t : {SearchTarget::subgroup_gap, SearchTarget::orbit_boundary,
                           SearchTarget::eventual_overlap}) {
      cfg.target = t;
      SearchOutcome res = search_run(cfg);
      CHECK(res.exhaustive);
      CHECK(res.hit_count == 0);
    }
  }

  SECTION("configuration bounds") {
    SearchConfig bad = cfg;
    bad.points = 0;
    CHECK_THROWS_AS(search_run(bad), invalid_input);
    bad.points = 9;
    CHECK_THROWS_AS(search_run(bad), invalid_input);
    bad = cfg;
    bad.rank = 1;
    CHECK_THROWS_AS(search_run(bad), invalid_input);
  }
}
