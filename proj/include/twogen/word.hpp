#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace twogen {

/// A signed basis letter. The code is 2*index for the letter and 2*index+1
/// for its inverse, so the natural integer order on codes is the fixed total
/// order used for canonical rotations: basis order, positive before negative.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(std::uint32_t index, bool inverse)
      : code_(index * 2u + (inverse ? 1u : 0u)) {}

  static constexpr Letter from_code(std::uint32_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr std::uint32_t index() const { return code_ >> 1; }
  constexpr bool inverse() const { return (code_ & 1u) != 0; }
  constexpr int exponent() const { return inverse() ? -1 : 1; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Letter inv() const { return from_code(code_ ^ 1u); }

  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  std::uint32_t code_ = 0;
};

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A freely reduced word over a basis of fixed rank. The rank is carried so
/// that operations between words of different bases are rejected.
class Word {
 public:
  Word() = default;
  explicit Word(std::uint32_t rank) : rank_(rank) {}

  /// Reduces an arbitrary letter sequence. Throws StructuralError on a letter
  /// index outside [0, rank).
  static Word reduce(std::uint32_t rank, std::span<const Letter> raw);
  static Word reduce(std::uint32_t rank, std::initializer_list<Letter> raw) {
    return reduce(rank, std::span<const Letter>(raw.begin(), raw.size()));
  }
  /// Signed-index form: +k is letter k-1, -k is its inverse (1-based, no 0).
  static Word from_signed(std::uint32_t rank, std::initializer_list<int> raw);
  static Word generator(std::uint32_t rank, std::uint32_t index, int exponent = 1);

  std::uint32_t rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  /// Appends one letter with free cancellation against the tail.
  void push(Letter l) {
    if (!letters_.empty() && letters_.back() == l.inv()) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
  void append(const Word& w);
  void append_inverse(const Word& w);
  void reserve(std::size_t n) { letters_.reserve(n); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::uint32_t rank_ = 0;
  std::vector<Letter> letters_;
};

Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
/// w^k for integer k (negative powers use the inverse).
Word power(const Word& w, long k);
/// w u w^{-1}
Word conjugate(const Word& w, const Word& u);

/// Conjugacy class of a word: the cyclically reduced core and its least
/// rotation. Two CyclicWords are equal iff their canonical letters are.
struct CyclicWord {
  Word core;
  Word canonical;

  bool empty() const { return canonical.empty(); }
  friend bool operator==(const CyclicWord& a, const CyclicWord& b) {
    return a.canonical == b.canonical;
  }
};

CyclicWord cyclic_normal_form(const Word& u);

/// Splits u = t * c * t^{-1} with c cyclically reduced. Returns {t, c}.
std::pair<Word, Word> cyclic_reduction(const Word& u);

/// Returns w with w u w^{-1} = v, or nullopt if u and v are not conjugate.
std::optional<Word> find_conjugator(const Word& u, const Word& v);

/// Conjugacy class up to orientation: true iff u ~ v or u ~ v^{-1}.
bool same_unoriented_class(const Word& u, const Word& v);

/// Canonical key of the unoriented class (the lesser of the two canonical
/// forms).
Word unoriented_key(const Word& u);

/// Index of the least rotation (two-pointer scan; 0 for an empty sequence).
std::size_t least_rotation(std::span<const Letter> s);

std::string to_string(const Word& w, const std::vector<std::string>& names);

}  // namespace twogen
