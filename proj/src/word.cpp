#include "twogen/word.hpp"

#include <algorithm>
#include <cstdlib>

namespace twogen {

Word Word::reduce(std::uint32_t rank, std::span<const Letter> raw) {
  Word w(rank);
  w.letters_.reserve(raw.size());
  for (Letter l : raw) {
    if (l.index() >= rank) {
      throw StructuralError("letter index " + std::to_string(l.index()) +
                            " outside basis of rank " + std::to_string(rank));
    }
    w.push(l);
  }
  return w;
}

Word Word::from_signed(std::uint32_t rank, std::initializer_list<int> raw) {
  std::vector<Letter> letters;
  letters.reserve(raw.size());
  for (int s : raw) {
    if (s == 0) throw StructuralError("signed letter 0 is not a letter");
    letters.emplace_back(static_cast<std::uint32_t>(std::abs(s) - 1), s < 0);
  }
  return reduce(rank, letters);
}

Word Word::generator(std::uint32_t rank, std::uint32_t index, int exponent) {
  if (index >= rank) {
    throw StructuralError("generator index outside basis");
  }
  Word w(rank);
  w.letters_.assign(static_cast<std::size_t>(std::abs(exponent)),
                    Letter(index, exponent < 0));
  return w;
}

void Word::append(const Word& w) {
  if (w.rank_ != rank_) throw StructuralError("basis mismatch in append");
  // Cancel the overlap first so the copy below never reallocates twice.
  std::size_t k = 0;
  while (k < w.letters_.size() && !letters_.empty() &&
         letters_.back() == w.letters_[k].inv()) {
    letters_.pop_back();
    ++k;
  }
  letters_.insert(letters_.end(), w.letters_.begin() + static_cast<std::ptrdiff_t>(k),
                  w.letters_.end());
}

void Word::append_inverse(const Word& w) {
  if (w.rank_ != rank_) throw StructuralError("basis mismatch in append");
  auto it = w.letters_.rbegin();
  while (it != w.letters_.rend() && !letters_.empty() && letters_.back() == *it) {
    letters_.pop_back();
    ++it;
  }
  letters_.reserve(letters_.size() + static_cast<std::size_t>(w.letters_.rend() - it));
  for (; it != w.letters_.rend(); ++it) letters_.push_back(it->inv());
}

Word multiply(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) throw StructuralError("basis mismatch in multiply");
  Word r = u;
  r.append(v);
  return r;
}

Word invert(const Word& u) {
  Word r(u.rank());
  r.append_inverse(u);
  return r;
}

Word power(const Word& w, long k) {
  Word r(w.rank());
  const Word base = k < 0 ? invert(w) : w;
  for (long i = 0; i < std::labs(k); ++i) r.append(base);
  return r;
}

Word conjugate(const Word& w, const Word& u) {
  Word r = w;
  r.append(u);
  r.append_inverse(w);
  return r;
}

std::pair<Word, Word> cyclic_reduction(const Word& u) {
  const auto& l = u.letters();
  std::size_t lo = 0;
  std::size_t hi = l.size();
  while (hi - lo >= 2 && l[lo] == l[hi - 1].inv()) {
    ++lo;
    --hi;
  }
  Word t(u.rank());
  Word c(u.rank());
  std::vector<Letter> tl(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(lo));
  std::vector<Letter> cl(l.begin() + static_cast<std::ptrdiff_t>(lo),
                         l.begin() + static_cast<std::ptrdiff_t>(hi));
  return {Word::reduce(u.rank(), tl), Word::reduce(u.rank(), cl)};
}

std::size_t least_rotation(std::span<const Letter> s) {
  const std::size_t n = s.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    Letter a = s[(i + k) % n];
    Letter b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return n == 0 ? 0 : std::min(i, j);
}

CyclicWord cyclic_normal_form(const Word& u) {
  auto [t, core] = cyclic_reduction(u);
  const auto& l = core.letters();
  std::size_t r = least_rotation(l);
  std::vector<Letter> rot;
  rot.reserve(l.size());
  rot.insert(rot.end(), l.begin() + static_cast<std::ptrdiff_t>(r), l.end());
  rot.insert(rot.end(), l.begin(), l.begin() + static_cast<std::ptrdiff_t>(r));
  CyclicWord cw{core, Word(u.rank())};
  cw.canonical = Word::reduce(u.rank(), rot);
  return cw;
}

namespace {

// First occurrence of needle as a rotation of hay (both cyclically reduced,
// equal length). Returns the rotation offset r with hay[r..] hay[..r] == needle.
std::optional<std::size_t> rotation_offset(std::span<const Letter> hay,
                                           std::span<const Letter> needle) {
  const std::size_t n = needle.size();
  if (hay.size() != n) return std::nullopt;
  if (n == 0) return 0;
  std::vector<std::size_t> fail(n, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && needle[i] != needle[k]) k = fail[k - 1];
    if (needle[i] == needle[k]) ++k;
    fail[i] = k;
  }
  for (std::size_t i = 0, k = 0; i < 2 * n - 1; ++i) {
    Letter c = hay[i % n];
    while (k > 0 && c != needle[k]) k = fail[k - 1];
    if (c == needle[k]) ++k;
    if (k == n) return i + 1 - n;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Word> find_conjugator(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) throw StructuralError("basis mismatch in find_conjugator");
  auto [a, cu] = cyclic_reduction(u);
  auto [b, cv] = cyclic_reduction(v);
  auto r = rotation_offset(cu.letters(), cv.letters());
  if (!r) return std::nullopt;
  // cu = x y with |x| = r; y x = x^{-1} cu x, so v = b x^{-1} a^{-1} u a x b^{-1}.
  std::vector<Letter> xl(cu.letters().begin(),
                         cu.letters().begin() + static_cast<std::ptrdiff_t>(*r));
  Word x = Word::reduce(u.rank(), xl);
  Word w = b;
  w.append_inverse(x);
  w.append_inverse(a);
  // Soundness re-check.
  if (conjugate(w, u) != v) return std::nullopt;
  return w;
}

bool same_unoriented_class(const Word& u, const Word& v) {
  auto cv = cyclic_normal_form(v);
  auto cu = cyclic_normal_form(u);
  if (cu == cv) return true;
  return cu == cyclic_normal_form(invert(v));
}

Word unoriented_key(const Word& u) {
  auto a = cyclic_normal_form(u).canonical;
  auto b = cyclic_normal_form(invert(u)).canonical;
  return std::lexicographical_compare(b.letters().begin(), b.letters().end(),
                                      a.letters().begin(), a.letters().end())
             ? b
             : a;
}

std::string to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    Letter l = w[i];
    s += l.index() < names.size() ? names[l.index()] : "g" + std::to_string(l.index());
    if (l.inverse()) s += "^-1";
  }
  return s;
}

}  // namespace twogen
