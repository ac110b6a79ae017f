#include <algorithm>
#include <set>

#include "doctest.h"
#include "twogen/certificate.hpp"

using namespace twogen;

namespace {

const SurfaceModel& m37() {
  static const SurfaceModel m = build_surface({3, 7});
  return m;
}

const DerivationStep* step(const Certificate& c, const std::string& id) {
  for (const auto& s : c.steps) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::set<std::string> letters(const MCWord& w) {
  std::set<std::string> s;
  for (const auto& l : w) s.insert(l.name);
  return s;
}

std::set<std::string> handle_names(const Certificate& c) {
  std::set<std::string> s;
  for (const auto& h : c.alphabet) s.insert(h.name);
  return s;
}

}  // namespace

TEST_CASE("prop22 certificate") {
  auto c = derive_prop22(m37());
  REQUIRE(c.verified());
  std::set<std::string> gens;
  for (const auto& o : c.outputs) {
    gens.insert(o.generator);
    CHECK(o.holds);
  }
  CHECK(gens == std::set<std::string>{"E1", "E2", "E3", "E4", "E5", "E7"});
  CHECK(c.facts.at("sigma_permutation_closure").find("5040") != std::string::npos);
  CHECK_THROWS_AS(build_prop22(build_surface({3, 1})), Unsupported);
}

TEST_CASE("lemma31 certificate") {
  auto c = derive_lemma31(m37());
  REQUIRE(c.verified());
  CHECK(handle_names(c) == std::set<std::string>{"U", "V", "F"});
  const auto* s = step(c, "in1a.1");
  REQUIRE(s);
  CHECK(format_word(s->reference) == "A2 C1^-1");
  CHECK(format_word(s->expr) == "F^-1 V F");
  CHECK(c.outputs.size() == 8);

  // the handle expands to itself
  CHECK(format_word(expand(c, "F")) == "F");
  CHECK_THROWS_AS(expand(c, "nothing"), UnknownName);

  // flat words over the handles evaluate to the generators
  VerifyOptions opt;
  opt.evaluate_flat_words = true;
  auto flat = derive_lemma31(m37(), opt);
  CHECK(flat.verified());
  for (const auto& o : flat.outputs) CHECK(o.witness.rfind("flat word", 0) == 0);
  CHECK(export_json(flat) != "");
}

TEST_CASE("lemma41 sign bookkeeping") {
  auto c = derive_lemma41(m37());
  REQUIRE(c.verified());
  const auto* ctl = step(c, "control.epsilon");
  REQUIRE(ctl);
  CHECK_FALSE(ctl->expect_holds);
  CHECK_FALSE(ctl->holds);
  const auto* a6 = step(c, "A6");
  REQUIRE(a6);
  CHECK(format_word(a6->reference) == "A6^-1");
  CHECK(a6->holds);
}

TEST_CASE("thm32 and thm42 at (3,7)") {
  for (bool rf : {false, true}) {
    auto c = rf ? derive_thm42(m37()) : derive_thm32(m37());
    REQUIRE_MESSAGE(c.verified(), c.name);
    const std::set<std::string> h = handle_names(c);
    CHECK(h.size() == 2);
    CHECK(c.outputs.size() == (rf ? 15u : 14u));
    bool odd_rf = false;
    for (const auto& o : c.outputs) {
      CHECK(o.holds);
      CHECK(o.length == o.word.size());
      auto used = letters(o.word);
      CHECK(std::includes(h.begin(), h.end(), used.begin(), used.end()));
      if (rf) {
        auto n = std::count_if(o.word.begin(), o.word.end(), [](const NamedLetter& l) { return l.name == "RF"; });
        odd_rf = odd_rf || n % 2 == 1;
      }
    }
    CHECK(odd_rf == rf);
  }
  CHECK_THROWS_AS(build_thm32(build_surface({3, 5})), Unsupported);
  CHECK_THROWS_AS(build_thm42(build_surface({2, 7})), Unsupported);
}

TEST_CASE("a dangling reference fails at the first user") {
  auto c = build_lemma31(m37());
  const std::string gone = c.steps[0].target;
  c.steps.erase(c.steps.begin());
  verify(c, m37());
  CHECK_FALSE(c.verified());
  const auto* f = c.first_failure();
  REQUIRE(f);
  bool uses = false;
  for (const auto& l : f->expr) uses = uses || l.name == gone;
  CHECK(uses);
  CHECK(f->witness.find("unresolved") != std::string::npos);
  CHECK_THROWS(export_json(c));
}

TEST_CASE("steps may only use earlier targets") {
  auto c = build_lemma31(m37());
  std::swap(c.steps[0], c.steps[1]);
  verify(c, m37());
  // in1a.1 is independent of in1a.2, so only a genuine forward use would fail
  CHECK(c.verified());
  auto d = build_lemma31(m37());
  auto it = std::find_if(d.steps.begin(), d.steps.end(), [](const DerivationStep& s) { return s.id == "A5"; });
  REQUIRE(it != d.steps.end());
  auto moved = *it;
  d.steps.erase(it);
  d.steps.insert(d.steps.begin(), moved);
  verify(d, m37());
  CHECK_FALSE(d.verified());
}

TEST_CASE("mutations are caught") {
  for (auto* build : {&build_prop22, &build_lemma31, &build_lemma41}) {
    auto c = build(m37());
    verify(c, m37());
    auto mu = mutation_controls(c, m37(), 5, 12);
    CHECK(mu.size() == 12);
    for (const auto& x : mu) CHECK_MESSAGE(x.caught, c.name << " " << x.step_id << " " << x.mutated_expr);
  }
}

TEST_CASE("JSON round trip") {
  auto c = derive_lemma41(m37());
  auto text = export_json(c);
  auto back = import_json(text);
  CHECK_FALSE(back.verified());
  verify(back, m37());
  CHECK(back.verified());
  CHECK(export_json(back) == text);

  Certificate empty;
  empty.name = "empty";
  empty.surface = {3, 7};
  auto e = export_json(empty);
  CHECK(e.find("\"steps\": []") != std::string::npos);
  CHECK(e.find("\"outputs\": []") != std::string::npos);
}

TEST_CASE("verification is schedule independent") {
  VerifyOptions serial;
  serial.exec = Exec::serial;
  VerifyOptions par;
  par.threads = 3;
  CHECK(export_json(derive_thm32(m37(), serial)) == export_json(derive_thm32(m37(), par)));
}
