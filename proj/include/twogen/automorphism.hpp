#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "twogen/word.hpp"

namespace twogen {

class UnsupportedRank : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a composed image exceeds the configured letter cap.
class LengthCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMaxWordLength = 1'000'000;

/// An endomorphism of the free group given by the image of each basis letter.
/// Instances built by this library are automorphisms because they only ever
/// arise as composites of atoms with stated inverses.
///
/// Images are shared between automorphisms: composing with a map that fixes
/// most letters copies pointers, not words.
class FreeAutomorphism {
 public:
  FreeAutomorphism() = default;
  static FreeAutomorphism identity(std::uint32_t rank);
  static FreeAutomorphism from_images(std::vector<Word> images);

  std::uint32_t rank() const { return rank_; }
  const Word& image(std::uint32_t index) const { return *images_[index]; }
  /// Total letters across all images.
  std::size_t total_length() const;
  std::size_t max_image_length() const;
  bool is_identity() const;

  friend bool operator==(const FreeAutomorphism& a, const FreeAutomorphism& b);

 private:
  friend FreeAutomorphism compose(const FreeAutomorphism&, const FreeAutomorphism&,
                                  std::size_t);
  std::uint32_t rank_ = 0;
  std::vector<std::shared_ptr<const Word>> images_;
};

/// Image of u under phi (a homomorphism, so letters map to images and
/// inverse letters to inverted images).
Word apply(const FreeAutomorphism& phi, const Word& u,
           std::size_t max_length = kDefaultMaxWordLength);

/// phi o psi: psi is applied first.
FreeAutomorphism compose(const FreeAutomorphism& phi, const FreeAutomorphism& psi,
                         std::size_t max_length = kDefaultMaxWordLength);

/// Returns w with phi(l) = w l w^{-1} for every basis letter l, if phi is
/// inner. Throws UnsupportedRank for rank < 2 (every automorphism of Z
/// commutes with conjugation, so the question is degenerate there).
std::optional<Word> is_inner(const FreeAutomorphism& phi);

}  // namespace twogen
