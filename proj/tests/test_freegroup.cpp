#include "doctest.h"
#include "oracles.hpp"
#include "twogen/automorphism.hpp"
#include "twogen/word.hpp"

using namespace twogen;
using oracle::Raw;

namespace {

Word W(std::initializer_list<int> s, std::uint32_t rank = 2) { return Word::from_signed(rank, s); }

}  // namespace

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(W({1, -1}).empty());
  CHECK(W({1, 2, -2, 1}) == W({1, 1}));
  CHECK_THROWS_AS(W({3}), StructuralError);
}

TEST_CASE("reduce agrees with the quadratic reducer") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    Raw r = oracle::random_raw(rng, 3, 20);
    Word w = oracle::to_word(3, r);
    CHECK(oracle::to_raw(w) == oracle::naive_reduce(r));
    // idempotent
    CHECK(oracle::to_word(3, oracle::to_raw(w)) == w);
  }
}

TEST_CASE("w w^-1 is empty for random words up to length 12") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    Word w = oracle::to_word(3, oracle::random_raw(rng, 3, 12));
    CHECK(multiply(w, invert(w)).empty());
    CHECK(invert(invert(w)) == w);
  }
}

TEST_CASE("multiply") {
  CHECK(multiply(W({1, 2}), W({-2})) == W({1}));
  CHECK(multiply(Word(2), W({2, 1})) == W({2, 1}));
  CHECK(invert(W({1, 2})) == W({-2, -1}));
  CHECK(invert(Word(2)).empty());
  CHECK_THROWS(multiply(W({1}), W({1}, 3)));

  std::mt19937_64 rng(13);
  for (int t = 0; t < 500; ++t) {
    Word u = oracle::to_word(2, oracle::random_raw(rng, 2, 12));
    Word v = oracle::to_word(2, oracle::random_raw(rng, 2, 12));
    Word x = oracle::to_word(2, oracle::random_raw(rng, 2, 12));
    CHECK(multiply(multiply(u, v), invert(v)) == u);
    CHECK(multiply(multiply(u, v), x) == multiply(u, multiply(v, x)));
    CHECK(multiply(u, v).size() <= u.size() + v.size());
  }
}

TEST_CASE("length is additive exactly when nothing cancels") {
  const auto words = oracle::all_reduced(2, 3);
  for (const auto& a : words) {
    for (const auto& b : words) {
      const bool cancels = !a.empty() && !b.empty() && a.back() == -b.front();
      Word p = multiply(oracle::to_word(2, a), oracle::to_word(2, b));
      CHECK((p.size() == a.size() + b.size()) == !cancels);
    }
  }
}

TEST_CASE("cyclic normal form") {
  CHECK(cyclic_normal_form(W({1, 2, -1})) == cyclic_normal_form(W({2})));
  CHECK(cyclic_normal_form(W({2, 1})).canonical == W({1, 2}));
  CHECK(cyclic_normal_form(Word(2)).empty());

  std::mt19937_64 rng(17);
  for (int t = 0; t < 500; ++t) {
    Word u = oracle::to_word(3, oracle::random_raw(rng, 3, 10));
    Word g = oracle::to_word(3, oracle::random_raw(rng, 3, 10));
    auto c = cyclic_normal_form(u);
    CHECK(c == cyclic_normal_form(conjugate(g, u)));
    // core is cyclically reduced and canonical is one of its rotations
    const auto& k = c.core.letters();
    if (k.size() > 1) CHECK(k.front() != k.back().inv());
    CHECK(c.canonical.size() == c.core.size());
  }
}

TEST_CASE("find_conjugator") {
  auto w = find_conjugator(W({1, 2}), W({2, 1}));
  REQUIRE(w);
  CHECK(conjugate(*w, W({1, 2})) == W({2, 1}));
  CHECK(*w == W({-1}));
  CHECK_FALSE(find_conjugator(W({1}), W({2})));

  std::mt19937_64 rng(19);
  for (int t = 0; t < 500; ++t) {
    Word u = oracle::to_word(3, oracle::random_raw(rng, 3, 10));
    Word g = oracle::to_word(3, oracle::random_raw(rng, 3, 10));
    Word v = conjugate(g, u);
    auto x = find_conjugator(u, v);
    REQUIRE(x);
    CHECK(conjugate(*x, u) == v);
  }
}

TEST_CASE("conjugacy decisions agree with brute force on short rank-2 words") {
  auto r = oracle::sweep_conjugacy(4, 6);
  CHECK(r.disagreements == 0);
  CHECK(r.conjugate_pairs > 0);
}

TEST_CASE("apply and compose") {
  auto id = FreeAutomorphism::identity(2);
  Word u = W({1, -2, 1});
  CHECK(apply(id, u) == u);

  auto phi = FreeAutomorphism::from_images({W({1, 2}), W({2})});
  CHECK(apply(phi, W({1, -2})) == W({1}));
  CHECK(compose(id, phi) == phi);

  // psi acts first
  auto psi = FreeAutomorphism::from_images({W({2}), W({1})});
  CHECK(apply(compose(phi, psi), W({1})) == W({2}));
  CHECK(apply(compose(psi, phi), W({1})) == W({2, 1}));

  CHECK(oracle::sweep_compose(23, 300) == 0);

  std::mt19937_64 rng(29);
  for (int t = 0; t < 200; ++t) {
    auto a = oracle::random_endomorphism(rng, 3, 4);
    auto b = oracle::random_endomorphism(rng, 3, 4);
    auto c = oracle::random_endomorphism(rng, 3, 4);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    Word x = oracle::to_word(3, oracle::random_raw(rng, 3, 8));
    Word y = oracle::to_word(3, oracle::random_raw(rng, 3, 8));
    CHECK(apply(a, multiply(x, y)) == multiply(apply(a, x), apply(a, y)));
  }
}

TEST_CASE("length cap") {
  auto dbl = FreeAutomorphism::from_images({W({1, 1}), W({2})});
  FreeAutomorphism f = dbl;
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 40; ++i) f = compose(f, dbl, 1000);
      }(),
      LengthCapExceeded);
}

TEST_CASE("is_inner") {
  auto cx = FreeAutomorphism::from_images({W({1}), W({1, 2, -1})});
  auto w = is_inner(cx);
  REQUIRE(w);
  CHECK(*w == W({1}));

  auto swap = FreeAutomorphism::from_images({W({2}), W({1})});
  CHECK_FALSE(is_inner(swap));

  CHECK(is_inner(FreeAutomorphism::identity(3)).value().empty());
  CHECK_THROWS_AS(is_inner(FreeAutomorphism::identity(1)), UnsupportedRank);

  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    Word g = oracle::to_word(3, oracle::random_raw(rng, 3, 10));
    std::vector<Word> imgs;
    for (std::uint32_t i = 0; i < 3; ++i) imgs.push_back(conjugate(g, Word::generator(3, i)));
    auto found = is_inner(FreeAutomorphism::from_images(imgs));
    REQUIRE(found);
    // rank >= 2 has trivial center, so the conjugator is unique
    CHECK(*found == g);
    for (std::uint32_t i = 0; i < 3; ++i) CHECK(conjugate(*found, Word::generator(3, i)) == imgs[i]);
  }
}

TEST_CASE("least rotation matches sorting all rotations") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 1000; ++t) {
    Raw r = oracle::random_raw(rng, 2, 9);
    std::vector<Letter> ls;
    for (int x : r) ls.emplace_back(static_cast<std::uint32_t>(std::abs(x) - 1), x < 0);
    if (ls.empty()) continue;
    std::vector<Letter> best;
    for (std::size_t k = 0; k < ls.size(); ++k) {
      std::vector<Letter> rot(ls.begin() + static_cast<long>(k), ls.end());
      rot.insert(rot.end(), ls.begin(), ls.begin() + static_cast<long>(k));
      if (best.empty() || rot < best) best = rot;
    }
    std::size_t k = least_rotation(ls);
    std::vector<Letter> got(ls.begin() + static_cast<long>(k), ls.end());
    got.insert(got.end(), ls.begin(), ls.begin() + static_cast<long>(k));
    CHECK(got == best);
  }
}

TEST_CASE("unoriented classes") {
  CHECK(same_unoriented_class(W({1, 2}), W({-1, -2})));
  CHECK(same_unoriented_class(W({1, 2}), W({2, 1})));
  CHECK_FALSE(same_unoriented_class(W({1, 2}), W({1, -2})));
  CHECK(unoriented_key(W({-2, -1})) == unoriented_key(W({1, 2})));
}
