#include "twogen/automorphism.hpp"

#include <algorithm>
#include <string>

namespace twogen {

FreeAutomorphism FreeAutomorphism::identity(std::uint32_t rank) {
  FreeAutomorphism phi;
  phi.rank_ = rank;
  phi.images_.reserve(rank);
  for (std::uint32_t i = 0; i < rank; ++i) {
    phi.images_.push_back(std::make_shared<const Word>(Word::generator(rank, i)));
  }
  return phi;
}

FreeAutomorphism FreeAutomorphism::from_images(std::vector<Word> images) {
  FreeAutomorphism phi;
  phi.rank_ = static_cast<std::uint32_t>(images.size());
  for (auto& w : images) {
    if (w.rank() != phi.rank_) throw StructuralError("image over a different basis");
    phi.images_.push_back(std::make_shared<const Word>(std::move(w)));
  }
  return phi;
}

std::size_t FreeAutomorphism::total_length() const {
  std::size_t n = 0;
  for (const auto& w : images_) n += w->size();
  return n;
}

std::size_t FreeAutomorphism::max_image_length() const {
  std::size_t n = 0;
  for (const auto& w : images_) n = std::max(n, w->size());
  return n;
}

bool FreeAutomorphism::is_identity() const {
  for (std::uint32_t i = 0; i < rank_; ++i) {
    const Word& w = *images_[i];
    if (w.size() != 1 || w[0] != Letter(i, false)) return false;
  }
  return true;
}

bool operator==(const FreeAutomorphism& a, const FreeAutomorphism& b) {
  if (a.rank_ != b.rank_) return false;
  for (std::uint32_t i = 0; i < a.rank_; ++i) {
    if (a.images_[i] != b.images_[i] && *a.images_[i] != *b.images_[i]) return false;
  }
  return true;
}

Word apply(const FreeAutomorphism& phi, const Word& u, std::size_t max_length) {
  if (phi.rank() != u.rank()) throw StructuralError("basis mismatch in apply");
  std::size_t estimate = 0;
  for (Letter l : u.letters()) estimate += phi.image(l.index()).size();
  Word r(u.rank());
  r.reserve(std::min(estimate, max_length + 1));
  for (Letter l : u.letters()) {
    if (l.inverse()) {
      r.append_inverse(phi.image(l.index()));
    } else {
      r.append(phi.image(l.index()));
    }
    if (r.size() > max_length) {
      throw LengthCapExceeded("automorphism image exceeds " + std::to_string(max_length) +
                              " letters");
    }
  }
  return r;
}

FreeAutomorphism compose(const FreeAutomorphism& phi, const FreeAutomorphism& psi,
                         std::size_t max_length) {
  if (phi.rank() != psi.rank()) throw StructuralError("basis mismatch in compose");
  FreeAutomorphism out;
  out.rank_ = phi.rank_;
  out.images_.resize(phi.rank_);
  for (std::uint32_t i = 0; i < phi.rank_; ++i) {
    const Word& pw = *psi.images_[i];
    if (pw.size() == 1 && !pw[0].inverse()) {
      out.images_[i] = phi.images_[pw[0].index()];
    } else {
      out.images_[i] = std::make_shared<const Word>(apply(phi, pw, max_length));
    }
  }
  return out;
}

std::optional<Word> is_inner(const FreeAutomorphism& phi) {
  const std::uint32_t n = phi.rank();
  if (n < 2) throw UnsupportedRank("is_inner requires rank >= 2");
  const Word first = Word::generator(n, 0);
  const Word second = Word::generator(n, 1);

  // Every conjugator of the first letter has the form c * first^k.
  auto c = find_conjugator(first, phi.image(0));
  if (!c) return std::nullopt;

  // Need first^k second first^{-k} == c^{-1} phi(second) c.
  Word target = invert(*c);
  target.append(phi.image(1));
  target.append(*c);
  const auto& t = target.letters();
  if (t.size() % 2 == 0) return std::nullopt;
  const std::size_t half = t.size() / 2;
  if (t[half] != Letter(1, false)) return std::nullopt;
  long k = 0;
  if (half > 0) {
    if (t[0].index() != 0) return std::nullopt;
    k = t[0].inverse() ? -static_cast<long>(half) : static_cast<long>(half);
  }
  Word w = *c;
  w.append(power(first, k));
  for (std::uint32_t i = 0; i < n; ++i) {
    if (conjugate(w, Word::generator(n, i)) != phi.image(i)) return std::nullopt;
  }
  return w;
}

}  // namespace twogen
