#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "twogen/mcg.hpp"
#include "twogen/parallel.hpp"

namespace twogen {

enum class ObligationKind {
  basis,
  peripheral,
  simple_curve,
  atom_inverse,
  atom_shape,
  fixed_by_R,
  commutation,
  braid,
  lantern,
  square,
  chain,
  factorization,
  action_fact,
  arc_fact,
  recursion,
  permutation,
};

std::string kind_name(ObligationKind k);

/// One decidable fact. Negative controls have expect_holds = false.
struct Obligation {
  std::string id;
  ObligationKind kind = ObligationKind::commutation;
  std::string statement;
  std::string anchor;  // the formula being checked, as a quoted string
  bool expect_holds = true;
  std::function<Verdict()> check;
};

enum class Outcome { pass, fail, skipped };
std::string outcome_name(Outcome o);

struct ObligationResult {
  std::string id;
  ObligationKind kind = ObligationKind::commutation;
  std::string statement;
  std::string anchor;
  bool expect_holds = true;
  bool holds = false;
  Outcome outcome = Outcome::skipped;
  std::string witness;
};

struct ObligationReport {
  std::string suite;
  SurfaceSpec surface;
  std::vector<ObligationResult> results;

  bool ok() const;  // no result with outcome fail
  std::size_t count(Outcome o) const;
};

struct RunOptions {
  Exec exec = Exec::parallel;
  int threads = 0;
  bool negative_controls = true;
  std::size_t max_word_length = kDefaultMaxWordLength;
};

/// Runs every obligation and records its verdict in list order. Exceptions
/// thrown by a check become failures carrying the message as witness.
ObligationReport run_obligations(const std::string& suite, const SurfaceSpec& surface,
                                 const std::vector<Obligation>& list, const RunOptions& opt);

// Single checks over atlas curve names. Twists come from the atom atlas, so
// puncture-parallel curves enter as identity atoms.
Verdict check_commutation(const SurfaceModel& m, const std::string& c1, const std::string& c2,
                          std::size_t cap = kDefaultMaxWordLength);
Verdict check_braid(const SurfaceModel& m, const std::string& c1, const std::string& c2,
                    std::size_t cap = kDefaultMaxWordLength);
/// t_d t_c t_b t_a = t_z t_y t_x with boundary = {d, c, b, a} and
/// interior = {z, y, x}, written left to right.
Verdict check_lantern(const SurfaceModel& m, const std::array<std::string, 4>& boundary,
                      const std::array<std::string, 3>& interior,
                      std::size_t cap = kDefaultMaxWordLength);
/// E_j = E_{j+1} s E_{j+1} s^{-1} s^2 E_{j+2}^{-1} with s = sigma_{j+1}; the
/// perturbed form uses sigma_j for s.
Verdict check_e_recursion(const SurfaceModel& m, int j, bool perturbed = false,
                          std::size_t cap = kDefaultMaxWordLength);
/// Size of the permutation group generated by gens (orbit closure).
std::size_t closure_size(const std::vector<Permutation>& gens, std::size_t degree);
/// Closure of the sigma permutations compared with p!.
Verdict check_perm_generation(const SurfaceModel& m);

/// Curve image under a word of atoms equals a named curve (unoriented).
Verdict check_image(const SurfaceModel& m, const MCWord& f, const std::string& from,
                    const std::string& to, std::size_t cap = kDefaultMaxWordLength);

/// F = sigma_{p-1} ... sigma_1 E_{p-1} A_{2g} ... A_1 and RF.
MCWord word_F(const SurfaceModel& m);
MCWord word_RF(const SurfaceModel& m);

std::vector<Obligation> atlas_obligations(const SurfaceModel& m, std::size_t cap);
std::vector<Obligation> action_obligations(const SurfaceModel& m, std::size_t cap);

ObligationReport validate_atlas(const SurfaceModel& m, const RunOptions& opt = {});
ObligationReport check_action_table(const SurfaceModel& m, const RunOptions& opt = {});

std::string report_json(const ObligationReport& r, int indent = 2);
std::string report_text(const ObligationReport& r);

}  // namespace twogen
