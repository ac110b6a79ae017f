#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "twogen/automorphism.hpp"
#include "twogen/ribbon.hpp"
#include "twogen/word.hpp"

namespace twogen {

/// Raised for (g, p) outside the supported range or a construction that
/// needs more genus or punctures than the surface has.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownName : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SurfaceSpec {
  int genus = 0;
  int punctures = 0;
};

/// perm[j] is the puncture that puncture j is carried to (0-based).
using Permutation = std::vector<std::uint32_t>;

Permutation identity_permutation(std::size_t n);
/// a after b.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);

struct MappingClassAtom {
  std::string name;
  FreeAutomorphism automorphism;
  FreeAutomorphism inverse;  // stated, never computed by inversion
  Permutation perm;
  int sign = 1;
  std::string curve;  // twisted curve for Dehn twists, else empty
};

/// Punctured surface Sigma_{g,p} with a free basis of pi_1, the named
/// curves and the atomic mapping classes.
///
/// Public basis: alpha_1, beta_1, ..., alpha_g, beta_g, x_1, ..., x_{p-1}.
/// x_p is the word ([alpha_1,beta_1]...[alpha_g,beta_g] x_1...x_{p-1})^{-1}.
/// Internally the twists are computed on a ribbon-graph (rose) model whose
/// basis differs from the public one by a fixed Nielsen change of basis.
class SurfaceModel {
 public:
  const SurfaceSpec& spec() const { return spec_; }
  int genus() const { return spec_.genus; }
  int punctures() const { return spec_.punctures; }
  std::uint32_t rank() const { return rank_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }

  /// Loop around puncture j (0-based), j < p.
  const Word& peripheral(std::uint32_t j) const { return peripheral_[j]; }
  const std::vector<Word>& peripherals() const { return peripheral_; }
  /// [a1,b1]...[ag,bg] x_1 ... x_p, which must reduce to the empty word.
  Word product_relation() const;

  bool has_curve(const std::string& name) const { return curve_index_.count(name) != 0; }
  const Word& curve_word(const std::string& name) const;
  CyclicWord curve_class(const std::string& name) const;
  const std::vector<std::string>& curve_names() const { return curve_names_; }

  bool has_atom(const std::string& name) const { return atom_index_.count(name) != 0; }
  const MappingClassAtom& atom(const std::string& name) const;
  const std::vector<std::string>& atom_names() const { return atom_names_; }
  /// Name of the twist atom about a curve, if the atlas has one.
  std::string twist_atom_of(const std::string& curve) const;

  /// Dehn twist about an arbitrary simple closed curve of the public basis,
  /// as {twist, inverse twist}. Throws NotSimple for non-simple classes.
  std::pair<FreeAutomorphism, FreeAutomorphism> twist(const Word& curve) const;

  const RoseSurface& rose() const { return rose_; }
  /// Substitutions between the public basis and the rose basis.
  const FreeAutomorphism& to_rose() const { return to_rose_; }
  const FreeAutomorphism& from_rose() const { return from_rose_; }

  std::string describe(const Word& w) const { return to_string(w, basis_names_); }

 private:
  friend SurfaceModel build_surface(SurfaceSpec, std::size_t);
  friend class SurfaceBuilder;

  void add_curve(const std::string& name, Word w);
  void add_atom(MappingClassAtom a);

  SurfaceSpec spec_;
  std::uint32_t rank_ = 0;
  std::vector<std::string> basis_names_;
  std::vector<Word> peripheral_;
  std::vector<std::string> curve_names_;
  std::unordered_map<std::string, Word> curve_index_;
  std::vector<std::string> atom_names_;
  std::unordered_map<std::string, MappingClassAtom> atom_index_;
  std::unordered_map<std::string, std::string> twist_of_curve_;
  RoseSurface rose_;
  FreeAutomorphism to_rose_;
  FreeAutomorphism from_rose_;
};

/// Builds the model. Requires g >= 1 and p >= 1; curves that only exist
/// for larger (g, p) are omitted. The atlas
/// is not validated here; see validate_atlas in relations.hpp.
SurfaceModel build_surface(SurfaceSpec spec, std::size_t max_word_length = kDefaultMaxWordLength);

// Atom names.
std::string twist_name_A(int i);
std::string sigma_name(int k);
std::string e_name(int k);

/// Auxiliary chain-completing curves u_i (i = 3..g): u_i meets a_{2i} once and
/// misses every other chain curve; u_1 = a_1 and u_2 = b. The E_p
/// factorization is built from them.
std::string u_curve(int i);

/// Words (rightmost letter acts first) of the recursive factorization
/// U_{i+1} = f_i^{-1} U_i f_i, and P with E_p = P^{-1} U_g P. Letters are
/// atom names with exponent.
struct NamedLetter {
  std::string name;
  int exp = 1;
  friend bool operator==(const NamedLetter&, const NamedLetter&) = default;
};
using NamedWord = std::vector<NamedLetter>;

NamedWord u_step_word(int i);          // f_i, for 2 <= i <= g-1
NamedWord ep_palindrome_word(int g);   // P
std::string u_twist_name(int i);       // A1, B, U3, ...

/// JSON listing of every basis letter, curve word and atom image.
std::string dump_atlas(const SurfaceModel& model);

}  // namespace twogen
