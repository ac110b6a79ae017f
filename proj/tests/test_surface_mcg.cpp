#include <random>

#include "doctest.h"
#include "twogen/mcg.hpp"
#include "twogen/relations.hpp"
#include "twogen/surface.hpp"

using namespace twogen;

namespace {

const SurfaceModel& m37() {
  static const SurfaceModel m = build_surface({3, 7});
  return m;
}

bool same_curve(const CyclicWord& a, const Word& b) {
  return same_unoriented_class(a.canonical, b);
}

}  // namespace

TEST_CASE("surface basis and product relation") {
  const auto& m = m37();
  CHECK(m.rank() == 12);
  CHECK(m.peripherals().size() == 7);
  CHECK(m.product_relation().empty());
  CHECK(m.basis_names().front() == "alpha1");
  CHECK(m.basis_names().back() == "x6");
  CHECK_THROWS_AS(build_surface({3, 0}), Unsupported);
  CHECK_THROWS_AS(build_surface({0, 3}), Unsupported);
  for (auto [g, p] : {std::pair{1, 1}, {1, 3}, {2, 2}, {4, 8}}) {
    auto s = build_surface({g, p});
    CHECK(s.rank() == static_cast<std::uint32_t>(2 * g + p - 1));
    CHECK(s.product_relation().empty());
  }
}

TEST_CASE("named curves") {
  const auto& m = m37();
  CHECK(same_unoriented_class(m.curve_word("delta6"), m.peripheral(5)));
  // a1 is not peripheral
  for (const auto& w : m.peripherals()) CHECK_FALSE(same_unoriented_class(m.curve_word("a1"), w));
  CHECK_THROWS_AS(m.curve_word("zz"), UnknownName);
  MappingClass r = atom_class(m, "R");
  CHECK(same_curve(act_on_curve(m, r, "e6"), m.curve_word("e6")));
}

TEST_CASE("atoms") {
  const auto& m = m37();
  auto a1 = m.atom("A1");
  CHECK(a1.sign == 1);
  CHECK(a1.perm == identity_permutation(7));
  auto s3 = m.atom("sigma3");
  CHECK(s3.sign == 1);
  CHECK(s3.perm[2] == 3);
  CHECK(s3.perm[3] == 2);
  for (std::uint32_t j : {0u, 1u, 4u, 5u, 6u}) CHECK(s3.perm[j] == j);
  auto r = m.atom("R");
  CHECK(r.sign == -1);
  CHECK(r.perm == identity_permutation(7));
  CHECK_THROWS_AS(m.atom("sigma7"), UnknownName);

  for (const auto& name : m.atom_names()) {
    const auto& a = m.atom(name);
    CHECK_MESSAGE(compose(a.automorphism, a.inverse).is_identity(), name);
    CHECK_MESSAGE(compose(a.inverse, a.automorphism).is_identity(), name);
    CHECK(a.sign * a.sign == 1);
    // peripheral classes are permuted as declared
    for (std::uint32_t j = 0; j < 7; ++j) {
      Word img = apply(a.automorphism, m.peripheral(j));
      CHECK_MESSAGE(same_unoriented_class(img, m.peripheral(a.perm[j])), name << " x" << j + 1);
    }
  }
}

TEST_CASE("R is an involution and Delta atoms") {
  const auto& m = m37();
  auto r = atom_class(m, "R");
  CHECK(compose(r.autom, r.autom).is_identity());
  CHECK(equal_in_mcg(atom_class(m, "Delta6"), identity_class(m)).holds);
  CHECK(equal_in_mcg(atom_class(m, "Delta7"), identity_class(m)).holds);
  CHECK(equal_in_mcg(evaluate(m, parse_word("sigma6^2")), atom_class(m, "Delta6,7")).holds);
}

TEST_CASE("word parsing") {
  auto w = parse_word("A1^2 [A1*B^-1]^-1 sigma3");
  REQUIRE(w.size() == 4);
  CHECK(w[2].name == "A1*B^-1");
  CHECK(w[2].exp == -1);
  CHECK(format_word(w) == "A1^2 [A1*B^-1]^-1 sigma3");
  CHECK(format_word(parse_word(format_word(w))) == format_word(w));
  CHECK_THROWS_AS(parse_word("A1^0"), StructuralError);
  CHECK_THROWS_AS(parse_word("[A1"), StructuralError);
}

TEST_CASE("evaluate") {
  const auto& m = m37();
  auto id = evaluate(m, {});
  CHECK(id.autom.is_identity());
  CHECK(id.sign == 1);

  auto f = evaluate(m, word_F(m));
  CHECK(word_F(m).size() == 13);
  CHECK(f.sign == 1);
  // the sigma product is a 7-cycle
  std::uint32_t j = 0;
  std::size_t n = 0;
  do {
    j = f.perm[j];
    ++n;
  } while (j != 0);
  CHECK(n == 7);
  auto rf = evaluate(m, word_RF(m));
  CHECK(rf.sign == -1);
  CHECK(rf.perm == f.perm);

  // homomorphism on random words
  std::mt19937_64 rng(41);
  const auto& names = m.atom_names();
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  for (int t = 0; t < 30; ++t) {
    MCWord u, v;
    for (int i = 0; i < 4; ++i) u.push_back({names[pick(rng)], (rng() & 1) ? 1 : -1});
    for (int i = 0; i < 4; ++i) v.push_back({names[pick(rng)], (rng() & 1) ? 1 : -1});
    auto a = evaluate(m, u);
    auto b = evaluate(m, v);
    auto ab = evaluate(m, concat({u, v}));
    auto prod = multiply(a, b);
    CHECK(ab.autom == prod.autom);
    CHECK(ab.perm == prod.perm);
    CHECK(ab.sign == prod.sign);
    CHECK(evaluate(m, concat({u, inverse(u)})).autom.is_identity());
    // action on curves is compatible with composition
    for (const char* c : {"a1", "b", "e3", "c1"}) {
      Word img = act_on_curve(b, m.curve_word(c)).canonical;
      CHECK(act_on_curve(ab, m.curve_word(c)) == act_on_curve(a, img));
    }
  }
}

TEST_CASE("action on curves") {
  const auto& m = m37();
  auto finv = inverse(evaluate(m, word_F(m)));
  CHECK(same_curve(act_on_curve(m, finv, "a1"), m.curve_word("a2")));
  CHECK(same_curve(act_on_curve(m, finv, "a6"), m.curve_word("e6")));
  CHECK(same_curve(act_on_curve(m, finv, "b"), m.curve_word("c1")));
  CHECK(same_curve(act_on_curve(m, identity_class(m), "b"), m.curve_word("b")));
}

TEST_CASE("conjugated twists") {
  const auto& m = m37();
  auto f = evaluate(m, word_F(m));
  auto rf = evaluate(m, word_RF(m));
  auto a1 = atom_class(m, "A1");
  CHECK(equal_in_mcg(conjugated_twist(identity_class(m), a1), a1).holds);

  auto ab = evaluate(m, parse_word("A1 B^-1"));
  CHECK(equal_in_mcg(conjugated_twist(inverse(f), ab), evaluate(m, parse_word("A2 C1^-1"))).holds);
  // for RF the twist exponent flips
  CHECK(equal_in_mcg(multiply(multiply(inverse(rf), ab), rf), evaluate(m, parse_word("A2^-1 C1")))
            .holds);

  // F^-1 t_b F agrees with the atom about F^-1(b) = c1 on every curve
  auto t = conjugated_twist(inverse(f), atom_class(m, "B"));
  auto c1 = atom_class(m, "C1");
  for (const auto& c : m.curve_names()) CHECK(act_on_curve(m, t, c) == act_on_curve(m, c1, c));
}

TEST_CASE("equal_in_mcg") {
  const auto& m = m37();
  auto e = [&](const char* a, const char* b) {
    return equal_in_mcg(evaluate(m, parse_word(a)), evaluate(m, parse_word(b)));
  };
  CHECK(e("A1 A3", "A3 A1").holds);
  auto v = e("A1 A2", "A2 A1");
  CHECK_FALSE(v.holds);
  CHECK(v.witness.rfind("not inner", 0) == 0);
  CHECK(e("sigma6^2", "[Delta6,7]").holds);
  CHECK_FALSE(e("R", "A1 A1^-1").holds);
  CHECK(e("sigma1", "sigma2").witness.find("puncture") != std::string::npos);

  // equivalence relation spot checks
  auto x = evaluate(m, parse_word("A1 A3 B"));
  auto y = evaluate(m, parse_word("A3 A1 B"));
  auto z = evaluate(m, parse_word("A3 B A1"));  // a1 and b are disjoint
  CHECK(equal_in_mcg(x, x).holds);
  CHECK(equal_in_mcg(x, y).holds == equal_in_mcg(y, x).holds);
  CHECK(equal_in_mcg(x, y).holds);
  CHECK(equal_in_mcg(y, z).holds);
  CHECK(equal_in_mcg(x, z).holds);
}

TEST_CASE("arc facts") {
  const auto& m = m37();
  auto finv = inverse(evaluate(m, word_F(m)));
  CHECK(arc_fact(m, finv, 1, 2).holds);
  CHECK_FALSE(arc_fact(m, finv, 5, 6).holds);
  CHECK(arc_fact(m, identity_class(m), 3, 3).holds);
  CHECK_THROWS_AS(arc_fact(m, finv, 0, 1), UnknownName);
  CHECK_THROWS_AS(arc_fact(m, finv, 1, 7), UnknownName);
}

TEST_CASE("evaluator memo is consistent") {
  const auto& m = m37();
  Evaluator ev(m);
  auto a = ev("A1 B^-1 sigma2");
  auto b = ev("A1 B^-1 sigma2");
  CHECK(a.autom == b.autom);
  CHECK(a.autom == evaluate(m, parse_word("A1 B^-1 sigma2")).autom);
}

TEST_CASE("atlas dump is JSON-like and lists every atom") {
  auto s = dump_atlas(m37());
  CHECK(s.front() == '{');
  for (const auto& a : m37().atom_names()) CHECK(s.find("\"" + a + "\"") != std::string::npos);
}
