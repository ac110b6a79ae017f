#include <algorithm>

#include "doctest.h"
#include "twogen/relations.hpp"

using namespace twogen;

namespace {

const SurfaceModel& m37() {
  static const SurfaceModel m = build_surface({3, 7});
  return m;
}

const ObligationResult* find(const ObligationReport& r, const std::string& id) {
  for (const auto& x : r.results) {
    if (x.id == id) return &x;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("commutation and braid checks") {
  const auto& m = m37();
  CHECK(check_commutation(m, "a1", "a3").holds);
  CHECK(check_commutation(m, "a1", "a1").holds);
  CHECK_FALSE(check_commutation(m, "a1", "a2").holds);
  for (int i = 1; i < 6; ++i) {
    CHECK(check_braid(m, "a" + std::to_string(i), "a" + std::to_string(i + 1)).holds);
  }
  CHECK_FALSE(check_braid(m, "a1", "a3").holds);
  CHECK_THROWS_AS(check_commutation(m, "a1", "nope"), UnknownName);
}

TEST_CASE("lanterns") {
  const auto& m = m37();
  CHECK(check_lantern(m, {"b2", "a5", "a3", "a1"}, {"d1", "e", "b"}).holds);
  CHECK(check_lantern(m, {"bbar2", "a5", "a3", "a1"}, {"bbar", "ebar", "dbar1"}).holds);
  CHECK(check_lantern(m, {"e5", "e7", "delta7", "delta6"}, {"e6", "sigma6(e6)", "delta6,7"}).holds);
  // rotating the boundary and interior together keeps the relation
  CHECK(check_lantern(m, {"a5", "a3", "a1", "b2"}, {"e", "b", "d1"}).holds);
  // boundary twists commute, so only the interior order matters
  CHECK(check_lantern(m, {"a1", "a3", "a5", "b2"}, {"d1", "e", "b"}).holds);
  CHECK_FALSE(check_lantern(m, {"b2", "a5", "a3", "a1"}, {"b", "e", "d1"}).holds);
}

TEST_CASE("E recursion and permutations") {
  const auto& m = m37();
  for (int j = 1; j <= 5; ++j) {
    CHECK(check_e_recursion(m, j).holds);
    CHECK_FALSE(check_e_recursion(m, j, true).holds);
  }
  CHECK_THROWS(check_e_recursion(m, 0));
  CHECK_THROWS(check_e_recursion(m, 6));

  CHECK(closure_size({m.atom("sigma1").perm}, 7) == 2);
  auto v = check_perm_generation(m);
  CHECK(v.holds);
  CHECK(v.witness.find("5040") != std::string::npos);
  auto m3 = build_surface({1, 3});
  CHECK(closure_size({m3.atom("sigma1").perm}, 3) == 2);
}

TEST_CASE("atlas obligations at (3,7)") {
  const auto& m = m37();
  RunOptions opt;
  auto r = validate_atlas(m, opt);
  CHECK(r.ok());
  CHECK(r.count(Outcome::fail) == 0);
  std::size_t controls = 0;
  for (const auto& x : r.results) {
    CHECK_MESSAGE(x.outcome == Outcome::pass, x.id << ": " << x.witness);
    CHECK(x.holds == x.expect_holds);
    controls += !x.expect_holds;
  }
  CHECK(controls >= 4);
  for (const char* id : {"chain.a1..a6", "R.square", "relation.product"}) CHECK_MESSAGE(find(r, id), id);

  opt.negative_controls = false;
  auto off = validate_atlas(m, opt);
  CHECK(off.count(Outcome::skipped) == controls);
  CHECK(off.ok());
}

TEST_CASE("obligation reports do not depend on thread count") {
  const auto& m = m37();
  RunOptions a;
  a.threads = 1;
  a.exec = Exec::serial;
  RunOptions b;
  b.threads = 4;
  CHECK(report_json(validate_atlas(m, a)) == report_json(validate_atlas(m, b)));
  CHECK(report_text(check_action_table(m, a)) == report_text(check_action_table(m, b)));
}

TEST_CASE("action table at (3,7)") {
  const auto& m = m37();
  auto r = check_action_table(m);
  CHECK(r.ok());
  bool negative = false;
  for (const auto& x : r.results) {
    CHECK_MESSAGE(x.outcome == Outcome::pass, x.id << ": " << x.witness);
    if (x.kind == ObligationKind::arc_fact && !x.expect_holds) {
      negative = true;
      CHECK_FALSE(x.holds);
    }
  }
  CHECK(negative);
  CHECK_THROWS_AS(check_action_table(build_surface({1, 3})), Unsupported);
}

TEST_CASE("failing checks become failures, not exceptions") {
  std::vector<Obligation> list;
  list.push_back({"boom", ObligationKind::commutation, "", "", true,
                  []() -> Verdict { throw std::runtime_error("bad"); }});
  list.push_back({"ctl", ObligationKind::commutation, "", "", false, [] { return Verdict{true, "x"}; }});
  auto r = run_obligations("t", {3, 7}, list, {});
  CHECK_FALSE(r.ok());
  CHECK(r.results[0].outcome == Outcome::fail);
  CHECK(r.results[0].witness == "error: bad");
  CHECK(r.results[1].outcome == Outcome::fail);
}

TEST_CASE("small surfaces") {
  auto m = build_surface({3, 2});
  auto r = validate_atlas(m);
  CHECK(r.ok());
  auto m1 = build_surface({1, 2});
  CHECK(validate_atlas(m1).ok());
}
