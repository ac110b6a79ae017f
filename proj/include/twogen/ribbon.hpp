#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "twogen/automorphism.hpp"
#include "twogen/word.hpp"

namespace twogen {

class NotSimple : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One end of a band of the rose.
struct HalfEdge {
  std::uint32_t edge = 0;
  bool out = true;  // true: the end a positive traversal leaves through
};

/// A punctured surface presented as a thickened one-vertex graph (a rose).
/// The vertex is a disk whose boundary carries the 2n half-edges in
/// counterclockwise order; edge e is the basis letter e. The basepoint sits on
/// the disk boundary just before position 0.
///
/// A cyclically reduced word carried by the rose is realized as strands in
/// the bands and chords in the vertex disk. Strand order inside each band is
/// forced by requiring disjoint chords, so the word is simple iff that order
/// is consistent. The twist action then follows by inserting a copy of the
/// curve at every crossing of a basis loop with a chord.
class RoseSurface {
 public:
  RoseSurface() = default;
  explicit RoseSurface(std::vector<HalfEdge> cyclic_order);

  std::uint32_t rank() const { return rank_; }
  std::uint32_t position(std::uint32_t edge, bool out) const {
    return out ? pos_out_[edge] : pos_in_[edge];
  }

  /// Words read along each boundary component (one per puncture), in order of
  /// the first corner visited.
  std::vector<Word> boundary_words() const;

  /// Throws NotSimple when the free homotopy class has no embedded
  /// representative.
  void check_simple(const Word& curve) const;

  /// Action of the Dehn twist about the curve on pi_1. `power` is +1 or -1;
  /// +1 is the twist that turns right on meeting the curve, for the
  /// orientation given by the counterclockwise half-edge order.
  FreeAutomorphism dehn_twist(const Word& curve, int power) const;

 private:
  struct Realization;
  Realization realize(const Word& curve) const;

  std::uint32_t rank_ = 0;
  std::vector<HalfEdge> order_;
  std::vector<std::uint32_t> pos_out_;
  std::vector<std::uint32_t> pos_in_;
};

}  // namespace twogen
