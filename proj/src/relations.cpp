#include "twogen/relations.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace twogen {

std::string kind_name(ObligationKind k) {
  switch (k) {
    case ObligationKind::basis: return "basis";
    case ObligationKind::peripheral: return "peripheral";
    case ObligationKind::simple_curve: return "simple_curve";
    case ObligationKind::atom_inverse: return "atom_inverse";
    case ObligationKind::atom_shape: return "atom_shape";
    case ObligationKind::fixed_by_R: return "fixed_by_R";
    case ObligationKind::commutation: return "commutation";
    case ObligationKind::braid: return "braid";
    case ObligationKind::lantern: return "lantern";
    case ObligationKind::square: return "square";
    case ObligationKind::chain: return "chain";
    case ObligationKind::factorization: return "factorization";
    case ObligationKind::action_fact: return "action_fact";
    case ObligationKind::arc_fact: return "arc_fact";
    case ObligationKind::recursion: return "recursion";
    case ObligationKind::permutation: return "permutation";
  }
  return "unknown";
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::skipped: return "skipped";
  }
  return "unknown";
}

bool ObligationReport::ok() const { return count(Outcome::fail) == 0; }

std::size_t ObligationReport::count(Outcome o) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [&](const auto& r) { return r.outcome == o; }));
}

ObligationReport run_obligations(const std::string& suite, const SurfaceSpec& surface,
                                 const std::vector<Obligation>& list, const RunOptions& opt) {
  ObligationReport rep{suite, surface, {}};
  rep.results.resize(list.size());
  for_each_index(list.size(), opt.exec, opt.threads, [&](std::size_t i) {
    const Obligation& ob = list[i];
    ObligationResult& r = rep.results[i];
    r.id = ob.id;
    r.kind = ob.kind;
    r.statement = ob.statement;
    r.anchor = ob.anchor;
    r.expect_holds = ob.expect_holds;
    if (!ob.expect_holds && !opt.negative_controls) {
      r.outcome = Outcome::skipped;
      r.witness = "negative controls disabled";
      return;
    }
    try {
      Verdict v = ob.check();
      r.holds = v.holds;
      r.witness = std::move(v.witness);
    } catch (const std::exception& e) {
      r.holds = false;
      r.witness = std::string("error: ") + e.what();
    }
    r.outcome = r.holds == ob.expect_holds ? Outcome::pass : Outcome::fail;
  });
  return rep;
}

namespace {

MappingClass twist_of(const SurfaceModel& m, const std::string& curve, int exp = 1) {
  return atom_class(m, m.twist_atom_of(curve), exp);
}

MappingClass product(std::initializer_list<MappingClass> xs, std::size_t cap) {
  auto it = xs.begin();
  MappingClass r = *it++;
  for (; it != xs.end(); ++it) r = multiply(r, *it, cap, false);
  return r;
}

Verdict bool_verdict(bool b, const std::string& yes, const std::string& no) {
  return {b, b ? yes : no};
}

std::string num(int k) { return std::to_string(k); }

}  // namespace

Verdict check_commutation(const SurfaceModel& m, const std::string& c1, const std::string& c2,
                          std::size_t cap) {
  auto t1 = twist_of(m, c1);
  auto t2 = twist_of(m, c2);
  return equal_in_mcg(multiply(t1, t2, cap, false), multiply(t2, t1, cap, false), cap);
}

Verdict check_braid(const SurfaceModel& m, const std::string& c1, const std::string& c2,
                    std::size_t cap) {
  auto t1 = twist_of(m, c1);
  auto t2 = twist_of(m, c2);
  return equal_in_mcg(product({t1, t2, t1}, cap), product({t2, t1, t2}, cap), cap);
}

Verdict check_lantern(const SurfaceModel& m, const std::array<std::string, 4>& boundary,
                      const std::array<std::string, 3>& interior, std::size_t cap) {
  auto lhs = product({twist_of(m, boundary[0]), twist_of(m, boundary[1]),
                      twist_of(m, boundary[2]), twist_of(m, boundary[3])},
                     cap);
  auto rhs = product(
      {twist_of(m, interior[0]), twist_of(m, interior[1]), twist_of(m, interior[2])}, cap);
  return equal_in_mcg(lhs, rhs, cap);
}

Verdict check_e_recursion(const SurfaceModel& m, int j, bool perturbed, std::size_t cap) {
  const int p = m.punctures();
  if (j < 1 || j > p - 2) throw UnknownName("recursion index " + num(j) + " outside 1.." + num(p - 2));
  const int k = perturbed ? j : j + 1;
  auto s = atom_class(m, sigma_name(k));
  auto si = atom_class(m, sigma_name(k), -1);
  auto e1 = atom_class(m, e_name(j + 1));
  auto rhs = product({e1, s, e1, si, s, s, atom_class(m, e_name(j + 2), -1)}, cap);
  return equal_in_mcg(atom_class(m, e_name(j)), rhs, cap);
}

std::size_t closure_size(const std::vector<Permutation>& gens, std::size_t degree) {
  Permutation id = identity_permutation(degree);
  std::set<Permutation> seen{id};
  std::vector<Permutation> frontier{id};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        Permutation y = compose(g, x);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

Verdict check_perm_generation(const SurfaceModel& m) {
  const int p = m.punctures();
  std::vector<Permutation> gens;
  for (int k = 1; k < p; ++k) gens.push_back(m.atom(sigma_name(k)).perm);
  std::size_t size = closure_size(gens, static_cast<std::size_t>(p));
  std::size_t full = 1;
  for (int i = 2; i <= p; ++i) full *= static_cast<std::size_t>(i);
  return {size == full, "closure size " + std::to_string(size) + " of " + std::to_string(full)};
}

Verdict check_image(const SurfaceModel& m, const MCWord& f, const std::string& from,
                    const std::string& to, std::size_t cap) {
  auto img = act_on_curve(m, evaluate(m, f, cap), from, cap);
  bool same = same_unoriented_class(img.canonical, m.curve_word(to));
  return bool_verdict(same, "image is " + to,
                      "image has length " + std::to_string(img.canonical.size()) +
                          ", not the class of " + to);
}

MCWord word_F(const SurfaceModel& m) {
  MCWord w;
  for (int k = m.punctures() - 1; k >= 1; --k) w.push_back({sigma_name(k), 1});
  w.push_back({e_name(m.punctures() - 1), 1});
  for (int i = 2 * m.genus(); i >= 1; --i) w.push_back({twist_name_A(i), 1});
  return w;
}

MCWord word_RF(const SurfaceModel& m) {
  MCWord w{{"R", 1}};
  auto f = word_F(m);
  w.insert(w.end(), f.begin(), f.end());
  return w;
}

namespace {

class AtlasBuilder {
 public:
  AtlasBuilder(const SurfaceModel& m, std::size_t cap) : m_(m), cap_(cap) {}

  void add(std::string id, ObligationKind kind, std::string statement, std::string anchor,
           std::function<Verdict()> f, bool expect = true) {
    out_.push_back({std::move(id), kind, std::move(statement), std::move(anchor), expect,
                    std::move(f)});
  }

  void commute(const std::string& a, const std::string& b, const std::string& anchor,
               bool expect = true) {
    const SurfaceModel& m = m_;
    std::size_t cap = cap_;
    add("commute." + a + "." + b, ObligationKind::commutation,
        "T(" + a + ") T(" + b + ") = T(" + b + ") T(" + a + ")", anchor,
        [&m, cap, a, b] { return check_commutation(m, a, b, cap); }, expect);
  }

  void braid(const std::string& a, const std::string& b, bool expect = true) {
    const SurfaceModel& m = m_;
    std::size_t cap = cap_;
    add("braid." + a + "." + b, ObligationKind::braid,
        "T(" + a + ") T(" + b + ") T(" + a + ") = T(" + b + ") T(" + a + ") T(" + b + ")",
        "t_a t_b t_a = t_b t_a t_b", [&m, cap, a, b] { return check_braid(m, a, b, cap); },
        expect);
  }

  void atom_braid(const std::string& x, const std::string& y) {
    const SurfaceModel& m = m_;
    std::size_t cap = cap_;
    add("braid." + x + "." + y, ObligationKind::braid,
        x + " " + y + " " + x + " = " + y + " " + x + " " + y, "sigma_k sigma_{k+1} sigma_k = sigma_{k+1} sigma_k sigma_{k+1}",
        [&m, cap, x, y] {
          auto a = atom_class(m, x);
          auto b = atom_class(m, y);
          return equal_in_mcg(product({a, b, a}, cap), product({b, a, b}, cap), cap);
        });
  }

  void atom_commute(const std::string& x, const std::string& y) {
    const SurfaceModel& m = m_;
    std::size_t cap = cap_;
    add("commute." + x + "." + y, ObligationKind::commutation,
        x + " " + y + " = " + y + " " + x, "t_a t_{a'} = t_{a'} t_a", [&m, cap, x, y] {
          auto a = atom_class(m, x);
          auto b = atom_class(m, y);
          return equal_in_mcg(multiply(a, b, cap, false), multiply(b, a, cap, false), cap);
        });
  }

  void lantern(const std::string& id, std::array<std::string, 4> bd,
               std::array<std::string, 3> in, const std::string& anchor, bool expect = true) {
    const SurfaceModel& m = m_;
    std::size_t cap = cap_;
    std::string st;
    for (const auto& c : bd) st += "T(" + c + ") ";
    st += "=";
    for (const auto& c : in) st += " T(" + c + ")";
    add(id, ObligationKind::lantern, st, anchor,
        [&m, cap, bd, in] { return check_lantern(m, bd, in, cap); }, expect);
  }

  void equal_words(const std::string& id, ObligationKind kind, const MCWord& lhs,
                   const MCWord& rhs, const std::string& anchor, bool expect = true) {
    const SurfaceModel& m = m_;
    std::size_t cap = cap_;
    add(id, kind, format_word(lhs) + " = " + format_word(rhs), anchor,
        [&m, cap, lhs, rhs] { return equal_in_mcg(evaluate(m, lhs, cap), evaluate(m, rhs, cap), cap); },
        expect);
  }

  void fixed_by_R(const std::string& c) {
    const SurfaceModel& m = m_;
    std::size_t cap = cap_;
    add("R.fixes." + c, ObligationKind::fixed_by_R, "R(" + c + ") = " + c,
        "R(a_i)=a_i, R(b)=b, R(e_k)=e_k",
        [&m, cap, c] { return check_image(m, {{"R", 1}}, c, c, cap); });
  }

  void image(const std::string& id, const MCWord& f, const std::string& fname,
             const std::string& from, const std::string& to, const std::string& anchor) {
    const SurfaceModel& m = m_;
    std::size_t cap = cap_;
    add(id, ObligationKind::action_fact, fname + "(" + from + ") = " + to, anchor,
        [&m, cap, f, from, to] { return check_image(m, f, from, to, cap); });
  }

  void arc(const std::string& id, const MCWord& f, const std::string& fname, int k, int k2,
           const std::string& anchor, bool expect = true) {
    const SurfaceModel& m = m_;
    std::size_t cap = cap_;
    add(id, ObligationKind::arc_fact, fname + "(l" + num(k) + ") = l" + num(k2), anchor,
        [&m, cap, f, k, k2] { return arc_fact(m, evaluate(m, f, cap), k, k2, cap); }, expect);
  }

  std::vector<Obligation> take() { return std::move(out_); }

  const SurfaceModel& m_;
  std::size_t cap_;
  std::vector<Obligation> out_;
};

std::string a_(int j) { return "a" + num(j); }
std::string e_(int k) { return "e" + num(k); }

MCWord letter(const std::string& name, int exp = 1) { return {{name, exp}}; }

void add_R_fixes(AtlasBuilder& b, const SurfaceModel& m) {
  const int g = m.genus();
  const int p = m.punctures();
  for (int j = 1; j <= 2 * g; ++j) b.fixed_by_R(a_(j));
  if (m.has_curve("b")) b.fixed_by_R("b");
  for (int k = 1; k <= p; ++k) b.fixed_by_R(e_(k));
  for (int k = 1; k < p; ++k) {
    b.arc("R.fixes.l" + num(k), letter("R"), "R", k, k, "R(\\ell_k) = \\ell_k");
  }
}

}  // namespace

std::vector<Obligation> atlas_obligations(const SurfaceModel& m, std::size_t cap) {
  AtlasBuilder b(m, cap);
  const int g = m.genus();
  const int p = m.punctures();
  const bool has_b = m.has_curve("b");
  const bool lemma_curves = m.has_curve("b2");

  b.add("basis.round_trip", ObligationKind::basis, "rose basis substitutions are mutually inverse",
        "change of basis", [&m] {
          bool ok = compose(m.to_rose(), m.from_rose()).is_identity() &&
                    compose(m.from_rose(), m.to_rose()).is_identity();
          return bool_verdict(ok, "both composites are the identity", "composite is not the identity");
        });
  b.add("relation.product", ObligationKind::basis,
        "[alpha1,beta1]...[alphag,betag] x1...xp reduces to the empty word",
        "product relation of pi_1", [&m] {
          Word w = m.product_relation();
          return bool_verdict(w.empty(), "reduces to the empty word",
                              "leaves " + m.describe(w));
        });
  b.add("peripheral.count", ObligationKind::peripheral, "p peripheral classes match the rose boundary",
        "x_1, x_2, ..., x_p", [&m] {
          auto bw = m.rose().boundary_words();
          std::set<std::vector<Letter>> rose_keys, keys;
          for (const auto& w : bw) rose_keys.insert(unoriented_key(apply(m.from_rose(), w)).letters());
          for (const auto& w : m.peripherals()) keys.insert(unoriented_key(w).letters());
          bool ok = bw.size() == m.peripherals().size() && keys.size() == m.peripherals().size() &&
                    rose_keys == keys;
          return bool_verdict(ok, std::to_string(bw.size()) + " boundary classes",
                              "boundary classes differ from the peripheral words");
        });
  for (const auto& c : m.curve_names()) {
    b.add("simple." + c, ObligationKind::simple_curve, c + " is a simple closed curve",
          "simple closed curve", [&m, c] {
            m.rose().check_simple(apply(m.to_rose(), m.curve_word(c)));
            return Verdict{true, "embedded in the ribbon graph"};
          });
  }
  b.add("a1.not_peripheral", ObligationKind::peripheral, "a1 is not peripheral",
        "a_1 non-peripheral", [&m] {
          for (std::size_t j = 0; j < m.peripherals().size(); ++j) {
            if (same_unoriented_class(m.curve_word("a1"), m.peripheral(static_cast<std::uint32_t>(j)))) {
              return Verdict{false, "a1 is the loop about x" + std::to_string(j + 1)};
            }
          }
          return Verdict{true, "no peripheral class matches"};
        });

  for (const auto& name : m.atom_names()) {
    b.add("inverse." + name, ObligationKind::atom_inverse, name + " composed with its stated inverse",
          "composition f_2f_1", [&m, name] {
            const auto& a = m.atom(name);
            bool ok = compose(a.automorphism, a.inverse).is_identity() &&
                      compose(a.inverse, a.automorphism).is_identity();
            return bool_verdict(ok, "identity both ways", "not the identity");
          });
    b.add("peripheral." + name, ObligationKind::peripheral,
          name + " permutes the punctures by its declared permutation",
          "interchanges x_i, x_j", [&m, name, cap] {
            const auto& a = m.atom(name);
            for (std::uint32_t j = 0; j < m.peripherals().size(); ++j) {
              Word img = apply(a.automorphism, m.peripheral(j), cap);
              if (!same_unoriented_class(img, m.peripheral(a.perm[j]))) {
                return Verdict{false, "x" + std::to_string(j + 1) + " is not carried to x" +
                                          std::to_string(a.perm[j] + 1)};
              }
            }
            return Verdict{true, "all punctures match"};
          });
    b.add("shape." + name, ObligationKind::atom_shape, name + " has the declared sign and permutation type",
          "R(x_k)=x_k", [&m, name] {
            const auto& a = m.atom(name);
            const int p = m.punctures();
            const bool is_R = name == "R";
            if (a.sign != (is_R ? -1 : 1)) return Verdict{false, "sign " + std::to_string(a.sign)};
            Permutation want = identity_permutation(static_cast<std::size_t>(p));
            if (name.rfind("sigma", 0) == 0) {
              int k = std::stoi(name.substr(5));
              std::swap(want[k - 1], want[k]);
            }
            return bool_verdict(a.perm == want, "sign and permutation as declared",
                                "unexpected permutation");
          });
  }

  b.equal_words("R.square", ObligationKind::atom_shape, {{"R", 1}, {"R", 1}}, {},
                "R is a reflection");
  add_R_fixes(b, m);

  // Disjoint pairs.
  const std::string disjoint = "t_a t_{a'} = t_{a'} t_a";
  for (int i = 1; i <= 2 * g; ++i) {
    for (int j = i + 2; j <= 2 * g; ++j) b.commute(a_(i), a_(j), disjoint);
  }
  if (has_b) {
    for (int j = 1; j <= 2 * g; ++j) {
      if (j != 4) b.commute("b", a_(j), disjoint);
    }
  }
  const int first_e = p == 2 ? 0 : 1;
  for (int k = first_e; k <= p; ++k) {
    for (int j = 1; j < 2 * g; ++j) b.commute(e_(k), a_(j), disjoint);
    if (has_b) b.commute(e_(k), "b", disjoint);
    for (int l = k + 1; l <= p; ++l) b.commute(e_(k), e_(l), disjoint);
  }
  b.commute("a1", "a1", disjoint);
  for (int k = 1; k < p; ++k) {
    for (int j = 1; j <= 2 * g; ++j) b.atom_commute(sigma_name(k), twist_name_A(j));
    if (has_b) b.atom_commute(sigma_name(k), "B");
    for (int l = k + 2; l < p; ++l) b.atom_commute(sigma_name(k), sigma_name(l));
  }

  // Curves meeting once.
  for (int i = 1; i < 2 * g; ++i) b.braid(a_(i), a_(i + 1));
  if (has_b) b.braid("b", "a4");
  for (int k = first_e; k <= p; ++k) b.braid(e_(k), a_(2 * g));
  for (int k = 1; k + 1 < p; ++k) b.atom_braid(sigma_name(k), sigma_name(k + 1));

  // Half-twist squares and trivial twists.
  for (int k = 1; k < p; ++k) {
    const std::string id = "square.sigma" + num(k);
    if (k == p - 1) {
      b.equal_words(id, ObligationKind::square, {{sigma_name(k), 1}, {sigma_name(k), 1}},
                    letter("Delta" + num(p - 1) + "," + num(p)), "\\Delta_{p-1,p}=\\sigma_{p-1}^2");
      continue;
    }
    b.add(id, ObligationKind::square, "sigma" + num(k) + "^2 = T(x" + num(k) + " x" + num(k + 1) + ")",
          "\\sigma_\\ell^2 is the right handed Dehn twist about \\partial N(\\ell \\cup x_i \\cup x_j)",
          [&m, k, cap] {
            const std::uint32_t base = 2 * static_cast<std::uint32_t>(m.genus()) - 1;
            Word c = multiply(Word::generator(m.rank(), base + k), Word::generator(m.rank(), base + k + 1));
            auto [t, ti] = m.twist(c);
            const auto idp = identity_permutation(static_cast<std::size_t>(m.punctures()));
            MappingClass tw{t, ti, idp, 1, {}};
            auto s = atom_class(m, sigma_name(k));
            return equal_in_mcg(multiply(s, s, cap, false), tw, cap);
          });
  }
  for (int j = 0; j < p; ++j) {
    b.add("trivial_twist.x" + num(j + 1), ObligationKind::square,
          "the twist about the loop around x" + num(j + 1) + " is trivial",
          "homotopic to a puncture, then t_c=1", [&m, j, cap] {
            auto [t, ti] = m.twist(m.peripheral(static_cast<std::uint32_t>(j)));
            const auto idp = identity_permutation(static_cast<std::size_t>(m.punctures()));
            return equal_in_mcg(MappingClass{t, ti, idp, 1, {}}, identity_class(m), cap);
          });
  }

  // Lanterns.
  if (lemma_curves) {
    const std::string l31 = "B_2 A_5 A_3 A_1 = D_1 E B";
    for (const auto& x : {"a1", "a3", "a5", "b2"}) {
      for (const auto& y : {"a1", "a3", "a5", "b2"}) {
        if (std::string(x) < std::string(y)) b.commute(x, y, "a_1,a_3,a_5,b_2 are disjoint from each other");
      }
      for (const auto& y : {"d1", "e", "b"}) b.commute(x, y, l31);
    }
    b.lantern("lantern.b2_a5_a3_a1", {"b2", "a5", "a3", "a1"}, {"d1", "e", "b"}, l31);
    b.lantern("lantern.rotated.a1_b2_a5_a3", {"a1", "b2", "a5", "a3"}, {"b", "d1", "e"}, l31);
    b.lantern("lantern.reversed.b2_a5_a3_a1", {"b2", "a5", "a3", "a1"}, {"b", "e", "d1"}, l31,
              false);
    const std::string l41 =
        "\\overline{B}_2 A_5 A_3 A_1 = \\overline{B}_{} \\ \\overline{E} \\ \\overline{D}_1";
    for (const auto& x : {"a1", "a3", "a5", "bbar2"}) {
      for (const auto& y : {"bbar", "ebar", "dbar1"}) b.commute(x, y, l41);
    }
    b.lantern("lantern.bbar2_a5_a3_a1", {"bbar2", "a5", "a3", "a1"}, {"bbar", "ebar", "dbar1"}, l41);
    b.lantern("lantern.reversed.bbar2_a5_a3_a1", {"bbar2", "a5", "a3", "a1"},
              {"dbar1", "ebar", "bbar"}, l41, false);
  }
  if (p >= 2) {
    const std::string moved = "sigma" + num(p - 1) + "(e" + num(p - 1) + ")";
    const std::string pair = "delta" + num(p - 1) + "," + num(p);
    b.lantern("lantern.e" + num(p - 2) + "_e" + num(p),
              {e_(p - 2), e_(p), "delta" + num(p), "delta" + num(p - 1)}, {e_(p - 1), moved, pair},
              "E_{p-2} E_p \\Delta_{p} \\Delta_{p-1} = E_{p-1} E_{p-1}' \\Delta_{p-1,p}");
    b.equal_words("conjugate.E'" + num(p - 1), ObligationKind::action_fact,
                  letter("E'" + num(p - 1)),
                  {{sigma_name(p - 1), 1}, {e_name(p - 1), 1}, {sigma_name(p - 1), -1}},
                  "t_{f(c)} = ft_c^{\\varepsilon}f^{-1}");
  }

  // Chain relation and the explicit E_p factorization.
  {
    MCWord chain;
    for (int i = 1; i <= 2 * g; ++i) chain.push_back({twist_name_A(i), 1});
    b.equal_words("chain.a1..a" + num(2 * g), ObligationKind::chain, power(chain, 4 * g + 2),
                  letter("Delta"), "(A_1 ... A_{2g})^{4g+2} = Delta");
  }
  for (int i = 2; i < g; ++i) {
    const MCWord f = u_step_word(i);
    b.equal_words("factor." + u_twist_name(i + 1), ObligationKind::factorization,
                  letter(u_twist_name(i + 1)),
                  concat({inverse(f), letter(u_twist_name(i)), f}), "t_{f(c)} = ft_c^{\\varepsilon}f^{-1}");
  }
  if (g == 1 || has_b) {
    const MCWord P = ep_palindrome_word(g);
    b.equal_words("factor." + e_name(p), ObligationKind::factorization, letter(e_name(p)),
                  concat({inverse(P), letter(u_twist_name(g)), P}),
                  "E_p is generated by A_1,A_2,\\ldots,A_{2g},B");
  }

  // Negative controls.
  b.commute("a1", "a2", disjoint, false);
  b.braid("a1", "a3", false);
  b.equal_words("control.A1A2_vs_A2A1", ObligationKind::commutation, {{"A1", 1}, {"A2", 1}},
                {{"A2", 1}, {"A1", 1}}, "t_a t_{a'} = t_{a'} t_a", false);
  if (p >= 2) {
    b.equal_words("control.sigma" + num(p - 1) + "_vs_Delta", ObligationKind::square,
                  letter(sigma_name(p - 1)), letter("Delta" + num(p - 1) + "," + num(p)),
                  "\\Delta_{p-1,p}=\\sigma_{p-1}^2", false);
  }
  return b.take();
}

std::vector<Obligation> action_obligations(const SurfaceModel& m, std::size_t cap) {
  AtlasBuilder b(m, cap);
  const int g = m.genus();
  const int p = m.punctures();
  if (p < 2 || !m.has_curve("c1")) {
    throw Unsupported("the action table needs g >= 2 and p >= 2");
  }
  const MCWord F = word_F(m);
  const MCWord RF = word_RF(m);
  const MCWord Fi = inverse(F);
  const MCWord RFi = inverse(RF);

  b.add("F.shape", ObligationKind::action_fact, "F has sign +1, atomic length (p-1)+1+2g and a p-cycle",
        "F:=\\sigma_{p-1} \\cdots \\sigma_2 \\sigma_1 E_{p-1} A_{2g} \\cdots A_{2} A_1",
        [&m, F, cap] {
          auto f = evaluate(m, F, cap);
          const auto p = static_cast<std::size_t>(m.punctures());
          // orbit of x1 must visit every puncture
          std::size_t len = 0;
          std::uint32_t x = 0;
          do {
            x = f.perm[x];
            ++len;
          } while (x != 0 && len <= p);
          bool ok = f.sign == 1 && len == p &&
                    F.size() == static_cast<std::size_t>(m.punctures() + 2 * m.genus());
          return bool_verdict(ok, "sign +1, length " + std::to_string(F.size()) + ", " + std::to_string(len) + "-cycle",
                              "unexpected shape");
        });
  b.add("RF.shape", ObligationKind::action_fact, "RF has the permutation of F and sign -1",
        "orientation reversing diffeomorphism", [&m, F, RF, cap] {
          auto f = evaluate(m, F, cap);
          auto rf = evaluate(m, RF, cap);
          bool ok = rf.sign == -1 && rf.perm == f.perm;
          return bool_verdict(ok, "sign -1, same permutation", "unexpected shape");
        });

  for (int i = 1; i < 2 * g; ++i) {
    b.image("F^-1." + a_(i), Fi, "F^-1", a_(i), a_(i + 1), "F^{-1}(a_i) = a_{i+1}");
  }
  b.image("F^-1." + a_(2 * g), Fi, "F^-1", a_(2 * g), e_(p - 1), "F^{-1}(a_{2g}) = e_{p-1}");
  b.image("F^-1.b", Fi, "F^-1", "b", "c1", "F^{-1}(b) = c_1");
  b.image("F^-1.c1", Fi, "F^-1", "c1", "d1", "F^{-1}(c_1) = d_1");
  b.image("F^-1.d1", Fi, "F^-1", "d1", "c2", "F^{-1}(d_1) = c_2");
  for (int i = 1; i < 2 * g; ++i) {
    b.image("RF^-1." + a_(i), RFi, "(RF)^-1", a_(i), a_(i + 1), "(RF)^{-1}(a_i) = a_{i+1}");
  }
  b.image("RF^-1." + a_(2 * g), RFi, "(RF)^-1", a_(2 * g), e_(p - 1),
          "(RF)^{-1}(a_{2g}) = e_{p-1}");
  b.image("RF^-1.b", RFi, "(RF)^-1", "b", "c1", "(RF)^{-1}(b) = c_1");
  if (m.has_curve("dbar1")) {
    b.image("RF^-1.c1", RFi, "(RF)^-1", "c1", "dbar1", "(RF)^{-1}(c_1) = \\overline{d}_1");
    b.image("RF^-1.dbar1", RFi, "(RF)^-1", "dbar1", "cbar2",
            "(RF)^{-1}(\\overline{d}_1) = \\overline{c}_2");
  }
  for (int k = 1; k <= p - 3; ++k) {
    b.arc("F^-1.l" + num(k), Fi, "F^-1", k, k + 1, "F^{-1}(\\ell_k) = \\ell_{k+1}");
    b.arc("RF^-1.l" + num(k), RFi, "(RF)^-1", k, k + 1, "(RF)^{-1}(\\ell_k) = \\ell_{k+1}");
  }
  if (p >= 3) {
    b.arc("F^-1.l" + num(p - 2), Fi, "F^-1", p - 2, p - 1, "F^{-1}(\\ell_{p-2}) \\neq \\ell_{p-1}",
          false);
  }
  add_R_fixes(b, m);

  // Conjugators whose fixed curves the lemma proofs rely on.
  if (m.has_curve("b2")) {
    auto W = [](std::initializer_list<std::pair<const char*, int>> xs) {
      MCWord w;
      for (auto [n, e] : xs) w.push_back({n, e});
      return w;
    };
    const MCWord h1 = W({{"A6", 1}, {"A1", -1}, {"A5", 1}, {"A1", -1}, {"A4", 1}, {"C2", -1}});
    const MCWord h2 = W({{"B2", -1}, {"A2", 1}, {"B2", -1}, {"A1", 1}, {"A4", -1}, {"C1", 1}});
    const MCWord h3 = W({{"A6", 1}, {"A4", -1}, {"A6", 1}, {"A3", -1}, {"A6", 1}, {"A2", -1},
                         {"A6", 1}, {"A1", -1}});
    const MCWord h4 = W({{"A6", 1}, {"A1", -1}, {"A5", 1}, {"A1", -1}, {"A4", 1}, {"Cbar2", -1}});
    const MCWord h5 = W({{"Bbar2", 1}, {"A2", -1}, {"Bbar2", 1}, {"A1", -1}, {"C1", -1}, {"A4", 1}});
    b.image("h1.a1", h1, "A6A1^-1 A5A1^-1 A4C2^-1", "a1", "a1", "A_1 B_2^{-1}");
    b.image("h1.b", h1, "A6A1^-1 A5A1^-1 A4C2^-1", "b", "b2", "A_1 B_2^{-1}");
    b.image("h2.b2", h2, "B2^-1A2 B2^-1A1 A4^-1C1", "b2", "b2", "E B_2^{-1}");
    b.image("h2.a5", h2, "B2^-1A2 B2^-1A1 A4^-1C1", "a5", "e", "E B_2^{-1}");
    b.image("h3.a6", h3, "A6A4^-1 A6A3^-1 A6A2^-1 A6A1^-1", "a6", "a6", "A_6^{-1} \\overline{B}");
    b.image("h3.c1", h3, "A6A4^-1 A6A3^-1 A6A2^-1 A6A1^-1", "c1", "bbar", "A_6^{-1} \\overline{B}");
    b.image("h4.a6", h4, "A6A1^-1 A5A1^-1 A4Cbar2^-1", "a6", "a5", "A_5^{-1} \\overline{B}_2");
    b.image("h4.bbar", h4, "A6A1^-1 A5A1^-1 A4Cbar2^-1", "bbar", "bbar2", "A_5^{-1} \\overline{B}_2");
    b.image("h5.bbar2", h5, "Bbar2A2^-1 Bbar2A1^-1 C1^-1A4", "bbar2", "bbar2",
            "\\overline{E}^{-1} \\overline{B}_2");
    b.image("h5.a5", h5, "Bbar2A2^-1 Bbar2A1^-1 C1^-1A4", "a5", "ebar",
            "\\overline{E}^{-1} \\overline{B}_2");
  }

  // E_j recursion and the permutation group.
  for (int j = 1; j <= p - 2; ++j) {
    b.add("recursion.E" + num(j), ObligationKind::recursion,
          "E" + num(j) + " = E" + num(j + 1) + " s E" + num(j + 1) + " s^-1 s^2 E" + num(j + 2) +
              "^-1 with s = sigma" + num(j + 1),
          "E_{j} = E_{j+1} \\sigma_{j+1} E_{j+1} \\sigma_{j+1}^{-1} \\sigma_{j+1}^2 E_{j+2}^{-1}",
          [&m, j, cap] { return check_e_recursion(m, j, false, cap); });
    b.add("control.recursion.E" + num(j), ObligationKind::recursion,
          "recursion for E" + num(j) + " with sigma" + num(j + 1) + " replaced by sigma" + num(j),
          "E_{j} = E_{j+1} \\sigma_{j+1} E_{j+1} \\sigma_{j+1}^{-1} \\sigma_{j+1}^2 E_{j+2}^{-1}",
          [&m, j, cap] { return check_e_recursion(m, j, true, cap); }, false);
  }
  b.add("perm.generation", ObligationKind::permutation,
        "sigma1..sigma" + num(p - 1) + " generate Sym(" + num(p) + ")",
        "the permutation group on the p punctures", [&m] { return check_perm_generation(m); });
  return b.take();
}

ObligationReport validate_atlas(const SurfaceModel& m, const RunOptions& opt) {
  return run_obligations("atlas", m.spec(), atlas_obligations(m, opt.max_word_length), opt);
}

ObligationReport check_action_table(const SurfaceModel& m, const RunOptions& opt) {
  return run_obligations("actions", m.spec(), action_obligations(m, opt.max_word_length), opt);
}

std::string report_json(const ObligationReport& r, int indent) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["surface"] = {{"g", r.surface.genus}, {"p", r.surface.punctures}};
  auto& list = j["obligations"] = nlohmann::ordered_json::array();
  for (const auto& x : r.results) {
    list.push_back({{"id", x.id},
                    {"kind", kind_name(x.kind)},
                    {"statement", x.statement},
                    {"anchor", x.anchor},
                    {"expected", x.expect_holds ? "holds" : "fails"},
                    {"holds", x.holds},
                    {"verdict", outcome_name(x.outcome)},
                    {"witness", x.witness}});
  }
  j["summary"] = {{"total", r.results.size()},
                  {"pass", r.count(Outcome::pass)},
                  {"fail", r.count(Outcome::fail)},
                  {"skipped", r.count(Outcome::skipped)}};
  return j.dump(indent);
}

std::string report_text(const ObligationReport& r) {
  std::ostringstream os;
  os << "# " << r.suite << " (g=" << r.surface.genus << ", p=" << r.surface.punctures << ")\n";
  for (const auto& x : r.results) {
    os << (x.outcome == Outcome::pass ? "PASS " : x.outcome == Outcome::fail ? "FAIL " : "SKIP ")
       << x.id << (x.expect_holds ? "" : " [control]") << "  \"" << x.anchor << "\"  -- "
       << x.witness << "\n";
  }
  os << r.count(Outcome::pass) << " pass, " << r.count(Outcome::fail) << " fail, "
     << r.count(Outcome::skipped) << " skipped\n";
  return os.str();
}

}  // namespace twogen
