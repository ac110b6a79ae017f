#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twogen/mcg.hpp"
#include "twogen/parallel.hpp"
#include "twogen/relations.hpp"

namespace twogen {

enum class StepKind { conjugation, product, commutation_swap, lantern_substitution };
std::string step_kind_name(StepKind k);
StepKind parse_step_kind(const std::string& s);

/// A named generator of the subgroup, given as a word over atoms.
struct Handle {
  std::string name;
  MCWord atoms;
};

/// Claims that `reference` (a word over atoms) lies in the subgroup because
/// it equals `expr`, a word over handles and earlier targets.
struct DerivationStep {
  std::string id;
  std::string target;
  MCWord reference;
  MCWord expr;
  StepKind kind = StepKind::product;
  std::string anchor;
  bool expect_holds = true;  // false for negative controls; their target is never usable
  bool defines = true;       // false: a checked identity whose target stays unusable

  bool checked = false;
  bool holds = false;
  std::string witness;
  bool ok() const { return checked && holds == expect_holds; }
};

struct CertificateOutput {
  std::string generator;  // atom name
  std::string target;
  MCWord word;            // flat word over handles
  std::uint64_t length = 0;
  bool checked = false;
  bool holds = false;
  std::string witness;
};

struct CertificateStats {
  std::size_t checks = 0;
  std::size_t max_image_length = 0;
  std::uint64_t max_output_length = 0;
  std::uint64_t total_output_length = 0;
};

struct Certificate {
  std::string name;
  SurfaceSpec surface;
  std::vector<Handle> alphabet;
  std::vector<DerivationStep> steps;
  std::vector<CertificateOutput> outputs;
  CertificateStats stats;
  std::map<std::string, std::string> facts;  // extra verified data, e.g. permutation closure

  bool verified() const;
  const DerivationStep* first_failure() const;
};

struct VerifyOptions {
  Exec exec = Exec::parallel;
  int threads = 0;
  std::size_t max_word_length = kDefaultMaxWordLength;
  bool negative_controls = true;
  /// Outputs longer than this keep their length but an empty word.
  std::uint64_t max_expanded_length = 50'000'000;
  /// Also evaluate each expanded output word letter by letter. Intermediate
  /// prefixes can have huge images, so this is only practical for short
  /// outputs.
  bool evaluate_flat_words = false;
};

// Step lists without verification.
Certificate build_prop22(const SurfaceModel& m);
Certificate build_lemma31(const SurfaceModel& m);
Certificate build_lemma41(const SurfaceModel& m);
Certificate build_thm32(const SurfaceModel& m);
Certificate build_thm42(const SurfaceModel& m);

/// Resolves names, checks every step against its reference, expands and
/// checks the outputs. Failures are recorded, never thrown.
void verify(Certificate& c, const SurfaceModel& m, const VerifyOptions& opt = {});

// build + verify. Throw Unsupported when (g, p) is out of range.
Certificate derive_prop22(const SurfaceModel& m, const VerifyOptions& opt = {});
Certificate derive_lemma31(const SurfaceModel& m, const VerifyOptions& opt = {});
Certificate derive_lemma41(const SurfaceModel& m, const VerifyOptions& opt = {});
Certificate derive_thm32(const SurfaceModel& m, const VerifyOptions& opt = {});
Certificate derive_thm42(const SurfaceModel& m, const VerifyOptions& opt = {});

/// Flat word over handles for a target or handle name.
MCWord expand(const Certificate& c, const std::string& name);

/// Shallow check of a single step against the current certificate names.
Verdict check_step(const Certificate& c, const SurfaceModel& m, std::size_t step_index,
                   std::size_t max_word_length = kDefaultMaxWordLength);

struct Mutation {
  std::string step_id;
  std::size_t position = 0;
  std::string mutated_expr;
  bool caught = false;
  std::string witness;
};

/// Flips one exponent in a random positive step, `count` times, and checks
/// that the mutated step fails.
std::vector<Mutation> mutation_controls(const Certificate& c, const SurfaceModel& m,
                                        std::uint64_t seed, std::size_t count,
                                        const VerifyOptions& opt = {});

/// Refuses unverified certificates. Without words, outputs keep only their
/// lengths.
std::string export_json(const Certificate& c, int indent = 2, bool include_words = true);
/// Reads the exported form; verdicts are reset so the result must be
/// verified again.
Certificate import_json(const std::string& text);

std::string certificate_text(const Certificate& c);

}  // namespace twogen
