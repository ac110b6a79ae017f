#pragma once

#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "twogen/surface.hpp"

namespace twogen {

/// Word over atom names (or certificate handles). The rightmost
/// letter acts first.
using MCWord = NamedWord;

/// Tokens separated by whitespace: NAME, NAME^k, [COMPOSITE NAME] or
/// [COMPOSITE NAME]^k. Powers expand into repeated letters.
MCWord parse_word(const std::string& text);
/// Inverse of parse_word; consecutive equal letters are folded into powers.
std::string format_word(const MCWord& w);
MCWord inverse(const MCWord& w);
MCWord concat(std::initializer_list<MCWord> parts);
MCWord power(const MCWord& w, int k);

struct MappingClass {
  FreeAutomorphism autom;
  FreeAutomorphism inv;
  Permutation perm;
  int sign = 1;
  MCWord word;  // provenance; may be left empty by bulk evaluators
};

MappingClass identity_class(const SurfaceModel& model);
MappingClass atom_class(const SurfaceModel& model, const std::string& name, int exp = 1);
/// a then b as written, i.e. b acts first.
MappingClass multiply(const MappingClass& a, const MappingClass& b,
                      std::size_t max_length = kDefaultMaxWordLength, bool keep_word = true);
MappingClass inverse(const MappingClass& m);
MappingClass evaluate(const SurfaceModel& model, const MCWord& w,
                      std::size_t max_length = kDefaultMaxWordLength);

/// Image of a curve class (unoriented, cyclically reduced and canonical).
CyclicWord act_on_curve(const MappingClass& m, const Word& curve,
                        std::size_t max_length = kDefaultMaxWordLength);
CyclicWord act_on_curve(const SurfaceModel& model, const MappingClass& m,
                        const std::string& curve, std::size_t max_length = kDefaultMaxWordLength);

/// f t^{sign(f)} f^{-1}.
MappingClass conjugated_twist(const MappingClass& f, const MappingClass& t,
                              std::size_t max_length = kDefaultMaxWordLength);

struct Verdict {
  bool holds = false;
  std::string witness;
};

/// Equality in the (extended) mapping class group: same sign, same puncture
/// permutation and inner-equal automorphisms. The witness is the conjugator
/// or the first distinguishing datum.
Verdict equal_in_mcg(const MappingClass& a, const MappingClass& b,
                     std::size_t max_length = kDefaultMaxWordLength);

/// f sigma_k^{sign f} f^{-1} == sigma_{k2}, i.e. f carries arc l_k to l_{k2}.
Verdict arc_fact(const SurfaceModel& model, const MappingClass& f, int k, int k2,
                 std::size_t max_length = kDefaultMaxWordLength);

/// Memoizes evaluation of MCWords by their formatted text. Safe for
/// concurrent use.
class Evaluator {
 public:
  explicit Evaluator(const SurfaceModel& model, std::size_t max_length = kDefaultMaxWordLength)
      : model_(model), cap_(max_length) {}

  const SurfaceModel& model() const { return model_; }
  std::size_t cap() const { return cap_; }
  MappingClass operator()(const MCWord& w) const;
  MappingClass operator()(const std::string& text) const { return (*this)(parse_word(text)); }

 private:
  const SurfaceModel& model_;
  std::size_t cap_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::string, MappingClass> memo_;
};

}  // namespace twogen
