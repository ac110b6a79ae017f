#pragma once

// Independent reference implementations used only by tests. They work on
// plain vectors of signed ints (+k is basis letter k-1, -k its inverse) and
// share no code with the library.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "twogen/automorphism.hpp"
#include "twogen/word.hpp"

namespace oracle {

using Raw = std::vector<int>;

// Quadratic reducer: rescans from the start after every cancellation.
inline Raw naive_reduce(Raw w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == -w[i + 1]) {
        w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

inline Raw naive_inverse(const Raw& w) {
  Raw r(w.rbegin(), w.rend());
  for (auto& x : r) x = -x;
  return r;
}

inline Raw cat(const Raw& a, const Raw& b) {
  Raw r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline Raw to_raw(const twogen::Word& w) {
  Raw r;
  for (auto l : w.letters()) r.push_back(l.inverse() ? -static_cast<int>(l.index() + 1)
                                                     : static_cast<int>(l.index() + 1));
  return r;
}

inline twogen::Word to_word(std::uint32_t rank, const Raw& r) {
  std::vector<twogen::Letter> ls;
  for (int x : r) ls.emplace_back(static_cast<std::uint32_t>(std::abs(x) - 1), x < 0);
  return twogen::Word::reduce(rank, ls);
}

// Unreduced random letter sequence.
inline Raw random_raw(std::mt19937_64& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(1, rank);
  std::bernoulli_distribution neg(0.5);
  Raw r(static_cast<std::size_t>(len(rng)));
  for (auto& x : r) x = letter(rng) * (neg(rng) ? -1 : 1);
  return r;
}

// Every reduced word of length <= n over the given rank.
inline std::vector<Raw> all_reduced(int rank, int n) {
  std::vector<Raw> out{{}};
  std::size_t begin = 0;
  for (int len = 1; len <= n; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int a = -rank; a <= rank; ++a) {
        if (a == 0) continue;
        if (!out[i].empty() && out[i].back() == -a) continue;
        Raw w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

// The set {w u w^-1 : |w| <= max_conj}, reduced.
inline std::set<Raw> conjugates(const Raw& u, const std::vector<Raw>& conjugators) {
  std::set<Raw> s;
  for (const auto& w : conjugators) s.insert(naive_reduce(cat(cat(w, u), naive_inverse(w))));
  return s;
}

// Substitution homomorphism given letter images.
inline Raw naive_apply(const std::vector<Raw>& images, const Raw& u) {
  Raw r;
  for (int x : u) {
    const Raw& img = images[static_cast<std::size_t>(std::abs(x) - 1)];
    r = cat(r, x > 0 ? img : naive_inverse(img));
  }
  return naive_reduce(r);
}

inline std::vector<Raw> images_of(const twogen::FreeAutomorphism& f) {
  std::vector<Raw> out;
  for (std::uint32_t i = 0; i < f.rank(); ++i) out.push_back(to_raw(f.image(i)));
  return out;
}

// Exhaustive check of conjugacy decisions over rank 2: words up to length
// max_word, brute-force conjugators up to length max_conj. Calls report for
// each disagreement and returns the number of pairs compared.
struct ConjugacySweep {
  std::size_t pairs = 0;
  std::size_t conjugate_pairs = 0;
  std::size_t disagreements = 0;
};

inline ConjugacySweep sweep_conjugacy(int max_word, int max_conj,
                                      const std::function<void(const Raw&, const Raw&)>& report = {}) {
  const auto words = all_reduced(2, max_word);
  const auto conj = all_reduced(2, max_conj);
  std::vector<twogen::Word> ws;
  std::vector<twogen::CyclicWord> cnf;
  for (const auto& w : words) {
    ws.push_back(to_word(2, w));
    cnf.push_back(twogen::cyclic_normal_form(ws.back()));
  }
  ConjugacySweep out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto orbit = conjugates(words[i], conj);
    for (std::size_t j = 0; j < words.size(); ++j) {
      ++out.pairs;
      const bool brute = orbit.count(words[j]) != 0;
      const bool canon = cnf[i] == cnf[j];
      auto w = twogen::find_conjugator(ws[i], ws[j]);
      bool found = w.has_value();
      if (found && twogen::conjugate(*w, ws[i]) != ws[j]) found = false;  // unsound witness
      out.conjugate_pairs += brute;
      if (brute != canon || brute != found) {
        ++out.disagreements;
        if (report) report(words[i], words[j]);
      }
    }
  }
  return out;
}

inline twogen::FreeAutomorphism random_endomorphism(std::mt19937_64& rng, int rank, int max_len) {
  std::vector<twogen::Word> images;
  for (int i = 0; i < rank; ++i) {
    images.push_back(to_word(static_cast<std::uint32_t>(rank), random_raw(rng, rank, max_len)));
  }
  return twogen::FreeAutomorphism::from_images(std::move(images));
}

// compose(phi, psi) applied to a random word against substitution twice,
// over random endomorphisms. Returns the number of mismatches.
inline std::size_t sweep_compose(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> rank_dist(2, 5);
  std::size_t bad = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const int rank = rank_dist(rng);
    auto phi = random_endomorphism(rng, rank, 6);
    auto psi = random_endomorphism(rng, rank, 6);
    Raw u = random_raw(rng, rank, 12);
    auto got = twogen::apply(twogen::compose(phi, psi), to_word(static_cast<std::uint32_t>(rank), u));
    Raw want = naive_apply(images_of(phi), naive_apply(images_of(psi), naive_reduce(u)));
    if (to_raw(got) != want) ++bad;
  }
  return bad;
}

}  // namespace oracle
