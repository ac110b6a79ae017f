#include "twogen/certificate.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace twogen {

std::string step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::conjugation: return "conjugation";
    case StepKind::product: return "product";
    case StepKind::commutation_swap: return "commutation-swap";
    case StepKind::lantern_substitution: return "lantern-substitution";
  }
  return "unknown";
}

StepKind parse_step_kind(const std::string& s) {
  for (auto k : {StepKind::conjugation, StepKind::product, StepKind::commutation_swap,
                 StepKind::lantern_substitution}) {
    if (step_kind_name(k) == s) return k;
  }
  throw StructuralError("unknown step kind '" + s + "'");
}

bool Certificate::verified() const {
  for (const auto& s : steps) {
    if (!s.ok()) return false;
  }
  for (const auto& o : outputs) {
    if (!o.checked || !o.holds) return false;
  }
  return true;
}

const DerivationStep* Certificate::first_failure() const {
  for (const auto& s : steps) {
    if (!s.ok()) return &s;
  }
  return nullptr;
}

namespace {

std::string num(int k) { return std::to_string(k); }

std::string bracket(const std::string& name) { return "[" + name + "]"; }

// h^k with the conventions of parse_word; empty for k = 0.
std::string pw(const std::string& h, int k) {
  if (k == 0) return "";
  if (k == 1) return h;
  return h + "^" + num(k);
}

// h^{-k} x h^k
std::string cj(const std::string& h, int k, const std::string& x) {
  std::string s = pw(h, -k);
  if (!s.empty()) s += ' ';
  s += x;
  if (k != 0) s += ' ' + pw(h, k);
  return s;
}

std::string target_name(const MCWord& ref) {
  std::string f = format_word(ref);
  std::replace(f.begin(), f.end(), ' ', '*');
  return f;
}

class Builder {
 public:
  Builder(const SurfaceModel& m, std::string name) : m_(m) {
    c_.name = std::move(name);
    c_.surface = m.spec();
  }

  void handle(const std::string& name, MCWord atoms) { c_.alphabet.push_back({name, std::move(atoms)}); }

  // Returns the bracketed target for use in later expressions.
  std::string step(const std::string& id, const std::string& reference, const std::string& expr,
                   StepKind kind, const std::string& anchor, bool expect = true) {
    return add(id, reference, expr, kind, anchor, expect, true);
  }

  // A checked identity that does not introduce a usable target.
  void check(const std::string& id, const std::string& reference, const std::string& expr,
             StepKind kind, const std::string& anchor) {
    add(id, reference, expr, kind, anchor, true, false);
  }

  std::string add(const std::string& id, const std::string& reference, const std::string& expr,
                  StepKind kind, const std::string& anchor, bool expect, bool defines) {
    DerivationStep s;
    s.defines = defines;
    s.id = id;
    s.reference = parse_word(reference);
    s.target = target_name(s.reference);
    s.expr = parse_word(expr);
    s.kind = kind;
    s.anchor = anchor;
    s.expect_holds = expect;
    c_.steps.push_back(std::move(s));
    return bracket(c_.steps.back().target);
  }

  void output(const std::string& generator) { output(generator, generator); }
  void output(const std::string& generator, const std::string& target) {
    CertificateOutput o;
    o.generator = generator;
    o.target = target;
    c_.outputs.push_back(std::move(o));
  }

  // Appends the steps of a lemma, rewriting its handles.
  void import(const Certificate& lemma, const std::map<std::string, std::string>& subst) {
    std::unordered_set<std::string> taken;
    for (const auto& h : c_.alphabet) taken.insert(h.name);
    for (const auto& s : c_.steps) taken.insert(s.target);
    for (const auto& s : lemma.steps) {
      if (s.defines && s.expect_holds && taken.count(s.target)) {
        throw StructuralError("imported target '" + s.target + "' already exists");
      }
      DerivationStep t = s;
      t.id = lemma.name + "." + s.id;
      t.expr.clear();
      for (const auto& l : s.expr) {
        auto it = subst.find(l.name);
        if (it == subst.end()) {
          t.expr.push_back(l);
          continue;
        }
        MCWord w = parse_word(it->second);
        if (l.exp < 0) w = inverse(w);
        t.expr.insert(t.expr.end(), w.begin(), w.end());
      }
      if (s.defines && s.expect_holds) taken.insert(s.target);
      c_.steps.push_back(std::move(t));
    }
  }

  Certificate take() { return std::move(c_); }
  const SurfaceModel& model() const { return m_; }

 private:
  const SurfaceModel& m_;
  Certificate c_;
};

void require(const SurfaceModel& m, const std::string& what, int min_g, int min_p) {
  if (m.genus() < min_g) {
    throw Unsupported(what + " requires g >= " + num(min_g) + " (got g = " + num(m.genus()) + ")");
  }
  if (m.punctures() < min_p) {
    throw Unsupported(what + " requires p >= " + num(min_p) + " (got p = " + num(m.punctures()) + ")");
  }
}

std::string A(int i) { return "A" + num(i); }

// A_{j+1}^e A_{j+2}^{-e}
std::string consecutive(int j, int e) {
  return e > 0 ? A(j + 1) + " " + A(j + 2) + "^-1" : A(j + 1) + "^-1 " + A(j + 2);
}

int alternating(int j) { return (j % 2 == 0) ? 1 : -1; }

const StepKind kConj = StepKind::conjugation;
const StepKind kProd = StepKind::product;
const StepKind kSwap = StepKind::commutation_swap;
const StepKind kLantern = StepKind::lantern_substitution;

// Shared tail: A_{5+j} by conjugating A5, E_{p-1}, then B. With `rf` the
// orientation sign alternates.
void lemma_tail(Builder& b, const std::string& G, bool rf, const std::string& a5) {
  const SurfaceModel& m = b.model();
  const int g = m.genus();
  const int p = m.punctures();
  for (int j = -4; j <= 2 * g - 5; ++j) {
    if (j == 0) continue;
    const int e = rf ? alternating(j) : 1;
    const std::string ref = e > 0 ? A(5 + j) : A(5 + j) + "^-1";
    const std::string anchor =
        rf ? "A_{5+j}^{\\varepsilon} = (RF)^{-j}A_5(RF)^j, where \\varepsilon=-1 if j is odd"
           : "A_{5+j} = F^{-j}A_5F^j";
    std::string t = b.step("A" + num(5 + j), ref, cj(G, j, a5), kConj, anchor);
    if (e < 0) b.step("A" + num(5 + j) + ".sign", A(5 + j), t + "^-1", kProd, anchor);
    if (rf && j == 1) {
      b.step("control.epsilon", A(6), cj(G, j, a5), kConj,
             "\\varepsilon=-1 if j is odd (forced +1)", false);
    }
  }
  const int k = 2 * g - 4;
  b.step("E" + num(p - 1), e_name(p - 1), cj(G, k, a5), kConj,
         rf ? "E_{p-1} = (RF)^{-2g+4}A_5(RF)^{2g-4}" : "E_{p-1} = F^{-2g+4}A_5F^{2g-4}");
  b.step("B", "B", "V^-1 " + bracket("A1"), kProd, "B = BA_1^{-1} \\cdot A_1");
}

void lemma_outputs(Builder& b, const SurfaceModel& m) {
  for (int i = 1; i <= 2 * m.genus(); ++i) b.output(A(i));
  b.output("B");
  b.output(e_name(m.punctures() - 1));
}

MCWord handle_word(const std::string& text) { return parse_word(text); }

}  // namespace

Certificate build_lemma31(const SurfaceModel& m) {
  require(m, "lemma31", 3, 2);
  const int g = m.genus();
  Builder b(m, "lemma31");
  b.handle("U", handle_word("A1 A2^-1"));
  b.handle("V", handle_word("A1 B^-1"));
  b.handle("F", word_F(m));

  auto a2c1 = b.step("in1a.1", "A2 C1^-1", cj("F", 1, "V"), kConj, "A_2 C_1^{-1} = F^{-1} A_1 B^{-1} F");
  auto a3d1 = b.step("in1a.2", "A3 D1^-1", cj("F", 2, "V"), kConj, "A_3 D_1^{-1} = F^{-2} A_1 B^{-1} F^2");
  auto a4c2 = b.step("in1a.3", "A4 C2^-1", cj("F", 3, "V"), kConj, "A_4 C_2^{-1} = F^{-3} A_1 B^{-1} F^3");
  std::map<int, std::string> cons;  // A_{j+1} A_{j+2}^{-1}
  cons[0] = "U";
  for (int j = 1; j <= 2 * g - 2; ++j) {
    cons[j] = b.step("in2a." + num(j), consecutive(j, 1), cj("F", j, "U"), kConj,
                     "A_{j+1} A_{j+2}^{-1} = F^{-j} A_1 A_2^{-1} F^j");
  }
  auto a1a4 = b.step("in3a.1", "A1 A4^-1", cons[0] + " " + cons[1] + " " + cons[2], kProd,
                     "A_1 A_4^{-1} = A_1A_2^{-1} \\cdot A_2A_3^{-1} \\cdot A_3A_4^{-1}");
  auto a1a5 = b.step("in3a.2", "A1 A5^-1", a1a4 + " " + cons[3], kProd,
                     "A_1 A_5^{-1} = A_1A_4^{-1} \\cdot A_4A_5^{-1}");
  auto a1a6 = b.step("in3a.3", "A1 A6^-1", a1a5 + " " + cons[4], kProd,
                     "A_1 A_6^{-1} = A_1A_5^{-1} \\cdot A_5A_6^{-1}");
  auto a2a5 = b.step("in4a", "A2 A5^-1", cj("F", 1, a1a4), kConj, "A_2 A_5^{-1} = F^{-1} A_1 A_4^{-1} F");
  auto a1ia2 = b.step("in5a", "A1^-1 A2", a1a5 + "^-1 " + a2a5, kProd,
                      "A_1^{-1} A_2 = (A_1 A_5^{-1})^{-1} A_2 A_5^{-1}");
  const std::string h1 = a1a6 + "^-1 " + a1a5 + "^-1 " + a4c2;
  const std::string h1i = a4c2 + "^-1 " + a1a5 + " " + a1a6;
  auto a1b2 = b.step("in6a", "A1 B2^-1", h1 + " V " + h1i, kConj,
                     "A_1 B_2^{-1} = (A_6A_1^{-1} \\cdot A_5A_1^{-1} \\cdot A_4C_2^{-1}) A_1B^{-1} "
                     "(A_6A_1^{-1} \\cdot A_5A_1^{-1} \\cdot A_4C_2^{-1})^{-1}");
  auto b2ia1 = b.step("in7a", "B2^-1 A1", a1b2, kSwap, "B_2^{-1}A_1 = A_1 B_2^{-1}");
  auto a5b2 = b.step("in8a.1", "A5 B2^-1", a1a5 + "^-1 " + a1b2, kProd,
                     "A_5 B_2^{-1} = A_5A_1^{-1} \\cdot A_1B_2^{-1}");
  auto b2ia2 = b.step("in8a.2", "B2^-1 A2", b2ia1 + " " + a1ia2, kProd,
                      "B_2^{-1}A_2 = B_2^{-1}A_1 \\cdot A_1^{-1}A_2");
  auto a2ic1 = b.step("in8a.3", "A2^-1 C1", a2c1 + "^-1", kSwap, "A_2^{-1}C_1 = (A_2C_1^{-1})^{-1}");
  auto a4ic1 = b.step("in8a.4", "A4^-1 C1", a1a4 + " " + a1ia2 + " " + a2ic1, kProd,
                      "A_4^{-1}C_1 = A_4^{-1}A_1 \\cdot A_1^{-1}A_2 \\cdot A_2^{-1}C_1");
  const std::string h2 = b2ia2 + " " + b2ia1 + " " + a4ic1;
  const std::string h2i = a4ic1 + "^-1 " + b2ia1 + "^-1 " + b2ia2 + "^-1";
  auto eb2 = b.step("in8a.5", "E B2^-1", h2 + " " + a5b2 + " " + h2i, kConj,
                    "E B_2^{-1} = (B_2^{-1}A_2 \\cdot B_2^{-1}A_1 \\cdot A_4^{-1}C_1) A_5B_2^{-1} "
                    "(B_2^{-1}A_2 \\cdot B_2^{-1}A_1 \\cdot A_4^{-1}C_1)^{-1}");
  auto a5 = b.step("A5", "A5", a3d1 + "^-1 " + eb2 + " V^-1", kLantern,
                   "A_5 = (D_1A_3^{-1}) (EB_2^{-1}) (BA_1^{-1})");
  lemma_tail(b, "F", false, a5);
  lemma_outputs(b, m);
  return b.take();
}

Certificate build_lemma41(const SurfaceModel& m) {
  require(m, "lemma41", 3, 2);
  const int g = m.genus();
  Builder b(m, "lemma41");
  b.handle("U", handle_word("A1 A2^-1"));
  b.handle("V", handle_word("A1 B^-1"));
  b.handle("RF", word_RF(m));
  const std::string G = "RF";

  auto a2ic1 = b.step("in1b.1", "A2^-1 C1", cj(G, 1, "V"), kConj,
                      "A_2^{-1} C_1 = (RF)^{-1} A_1 B^{-1} (RF)");
  auto a3db1 = b.step("in1b.2", "A3 Dbar1^-1", cj(G, 2, "V"), kConj,
                      "A_3 \\overline{D}_1^{-1} = (RF)^{-2} A_1 B^{-1} (RF)^2");
  auto a4icb2 = b.step("in1b.3", "A4^-1 Cbar2", cj(G, 3, "V"), kConj,
                       "A_4^{-1} \\overline{C}_2 = (RF)^{-3} A_1 B^{-1} (RF)^3");
  std::map<int, std::string> cons;
  cons[0] = "U";
  for (int j = 1; j <= 2 * g - 2; ++j) {
    cons[j] = b.step("in2b." + num(j), consecutive(j, alternating(j)), cj(G, j, "U"), kConj,
                     "A_{j+1}^{\\varepsilon} A_{j+2}^{-\\varepsilon} = (RF)^{-j} A_1 A_2^{-1} (RF)^j");
  }
  auto bia2 = b.step("in3b.1", "B^-1 A2", "U^-1 V", kProd, "B^{-1}A_2 = (A_1A_2^{-1})^{-1} A_1B^{-1}");
  auto a3ib = b.step("in3b.2", "A3^-1 B", cons[1] + "^-1 " + bia2 + "^-1", kProd,
                     "A_3^{-1}B = (A_2^{-1}A_3)^{-1} (B^{-1}A_2)^{-1}");
  auto a2a3 = b.step("in3b.3", "A2 A3^-1", bia2 + " " + a3ib, kProd,
                     "A_2A_3^{-1} = B^{-1}A_2 \\cdot BA_3^{-1}");
  auto a4a5 = b.step("in3b.4", "A4 A5^-1", cj(G, 2, a2a3), kConj,
                     "A_4A_5^{-1} = (RF)^{-2} A_2A_3^{-1} (RF)^2");
  auto a4a6 = b.step("in4b.1", "A4 A6^-1", a4a5 + " " + cons[4], kProd,
                     "A_4A_6^{-1} = A_4A_5^{-1} \\cdot A_5A_6^{-1}");
  auto a3a6 = b.step("in4b.2", "A3 A6^-1", cons[2] + " " + a4a6, kProd,
                     "A_3A_6^{-1} = A_3A_4^{-1} \\cdot A_4A_6^{-1}");
  auto a2a6 = b.step("in4b.3", "A2 A6^-1", a2a3 + " " + a3a6, kProd,
                     "A_2A_6^{-1} = A_2A_3^{-1} \\cdot A_3A_6^{-1}");
  auto a1a6 = b.step("in4b.4", "A1 A6^-1", "U " + a2a6, kProd,
                     "A_1A_6^{-1} = A_1A_2^{-1} \\cdot A_2A_6^{-1}");
  auto a6ic1 = b.step("in4b.5", "A6^-1 C1", a2a6 + " " + a2ic1, kProd,
                      "A_6^{-1}C_1 = A_2A_6^{-1} \\cdot A_2^{-1}C_1");
  const std::string h3 = a4a6 + "^-1 " + a3a6 + "^-1 " + a2a6 + "^-1 " + a1a6 + "^-1";
  const std::string h3i = a1a6 + " " + a2a6 + " " + a3a6 + " " + a4a6;
  auto a6ibb = b.step("in4b.6", "A6^-1 Bbar", h3 + " " + a6ic1 + " " + h3i, kConj,
                      "A_6^{-1}\\overline{B} = (A_6A_4^{-1} \\cdot A_6A_3^{-1} \\cdot A_6A_2^{-1} "
                      "\\cdot A_6A_1^{-1}) A_6^{-1}C_1 (\\cdots)^{-1}");
  auto a1ibb = b.step("in4b.7", "A1^-1 Bbar", a1a6 + "^-1 " + a6ibb, kProd,
                      "A_1^{-1}\\overline{B} = (A_1A_6^{-1})^{-1} A_6^{-1}\\overline{B}");
  auto bba1 = b.step("in4b.8", "Bbar A1^-1", a1ibb, kSwap,
                     "\\overline{B}A_1^{-1} = A_1^{-1}\\overline{B}");
  auto a1a5 = b.step("in5b.1", "A1 A5^-1", a1a6 + " " + cons[4] + "^-1", kProd,
                     "A_1A_5^{-1} = A_1A_6^{-1} (A_5A_6^{-1})^{-1}");
  auto a4cb2 = b.step("in5b.2", "A4 Cbar2^-1", a4icb2 + "^-1", kSwap,
                      "A_4\\overline{C}_2^{-1} = (A_4^{-1}\\overline{C}_2)^{-1}");
  const std::string h4 = a1a6 + "^-1 " + a1a5 + "^-1 " + a4cb2;
  const std::string h4i = a4cb2 + "^-1 " + a1a5 + " " + a1a6;
  auto a5ibb2 = b.step("in5b.3", "A5^-1 Bbar2", h4 + " " + a6ibb + " " + h4i, kConj,
                       "A_5^{-1}\\overline{B}_2 = (A_6A_1^{-1} \\cdot A_5A_1^{-1} \\cdot "
                       "A_4\\overline{C}_2^{-1}) A_6^{-1}\\overline{B} (\\cdots)^{-1}");
  auto bb2a1 = b.step("in5b.4", "Bbar2 A1^-1", a5ibb2 + " " + a1a5 + "^-1", kProd,
                      "\\overline{B}_2A_1^{-1} = A_5^{-1}\\overline{B}_2 \\cdot A_5A_1^{-1}");
  auto bb2a2 = b.step("in5b.5", "Bbar2 A2^-1", bb2a1 + " U", kProd,
                      "\\overline{B}_2A_2^{-1} = \\overline{B}_2A_1^{-1} \\cdot A_1A_2^{-1}");
  auto a3ia4 = b.step("in6b.1", "A3^-1 A4", cj(G, 1, a2a3), kConj,
                      "A_3^{-1}A_4 = (RF)^{-1} A_2A_3^{-1} (RF)");
  auto c1ia4 = b.step("in6b.2", "C1^-1 A4", a2ic1 + "^-1 " + cons[1] + " " + a3ia4, kProd,
                      "C_1^{-1}A_4 = C_1^{-1}A_2 \\cdot A_2^{-1}A_3 \\cdot A_3^{-1}A_4");
  const std::string h5 = bb2a2 + " " + bb2a1 + " " + c1ia4;
  const std::string h5i = c1ia4 + "^-1 " + bb2a1 + "^-1 " + bb2a2 + "^-1";
  auto ebib2 = b.step("in6b.3", "Ebar^-1 Bbar2", h5 + " " + a5ibb2 + " " + h5i, kConj,
                      "\\overline{E}^{-1}\\overline{B}_2 = (\\overline{B}_2A_2^{-1} \\cdot "
                      "\\overline{B}_2A_1^{-1} \\cdot C_1^{-1}A_4) A_5^{-1}\\overline{B}_2 (\\cdots)^{-1}");
  auto eb2 = b.step("in6b.4", "Ebar Bbar2^-1", ebib2 + "^-1", kSwap,
                    "\\overline{E}\\,\\overline{B}_2^{-1} = (\\overline{E}^{-1}\\overline{B}_2)^{-1}");
  auto a5 = b.step("A5", "A5", bba1 + " " + eb2 + " " + a3db1 + "^-1", kLantern,
                   "A_5 = (\\overline{B} A_1^{-1}) (\\overline{E}_{} \\ \\overline{B}_2^{-1}) "
                   "(\\overline{D}_1 A_3^{-1})");
  lemma_tail(b, G, true, a5);
  lemma_outputs(b, m);
  return b.take();
}

namespace {

// Steps shared by both theorems once sigma_1..sigma_4 and the lemma outputs
// exist. sigma_5..sigma_{p-2} come from the arc facts of F (or RF), and
// sigma_{p-1} from S = sigma_{p-1}...sigma_1 (R in front for RF). The
// transitivity of S on the arcs is checked as non-defining steps.
void sigma_tail(Builder& b, const std::string& G, bool rf) {
  const SurfaceModel& m = b.model();
  const int g = m.genus();
  const int p = m.punctures();
  const std::string inv = rf ? "^-1" : "";
  for (int k = 4; k <= p - 3; ++k) {
    b.step("in17.F." + num(k + 1), sigma_name(k + 1), cj(G, 1, bracket(sigma_name(k)) + inv), kConj,
           rf ? "(RF)^{-1}(\\ell_k) = \\ell_{k+1}" : "F^{-1}(\\ell_k) = \\ell_{k+1}");
  }
  std::string ref = rf ? "R" : "";
  for (int k = p - 1; k >= 1; --k) ref += (ref.empty() ? "" : " ") + sigma_name(k);
  std::string expr = G;
  for (int i = 1; i <= 2 * g; ++i) expr += " " + bracket(A(i)) + "^-1";
  expr += " " + bracket(e_name(p - 1)) + "^-1";
  auto S = b.step("in17.S", ref, expr, kProd,
                  rf ? "R\\sigma_{p-1}\\cdots\\sigma_1 = RF (E_{p-1}A_{2g}\\cdots A_1)^{-1}"
                     : "\\sigma_{p-1}\\cdots\\sigma_1 = F (E_{p-1}A_{2g}\\cdots A_1)^{-1}");
  if (!rf) {
    std::string e = S;
    for (int k = 1; k <= p - 2; ++k) e += " " + bracket(sigma_name(k)) + "^-1";
    b.step("in17.last", sigma_name(p - 1), e, kProd,
           "\\sigma_{p-1} = \\sigma_{p-1}\\cdots\\sigma_1 (\\sigma_{p-2}\\cdots\\sigma_1)^{-1}");
  } else {
    // T = R sigma_{p-1} sigma_{p-2} carries l_{p-1} to l_{p-2}.
    std::string e = S;
    for (int k = 1; k <= p - 3; ++k) e += " " + bracket(sigma_name(k)) + "^-1";
    auto T = b.step("in17.T", "R " + sigma_name(p - 1) + " " + sigma_name(p - 2), e, kProd,
                    "R\\sigma_{p-1}\\sigma_{p-2} = R\\sigma_{p-1}\\cdots\\sigma_1 (\\sigma_{p-3}\\cdots\\sigma_1)^{-1}");
    b.step("in17.last", sigma_name(p - 1), cj(T, 1, bracket(sigma_name(p - 2)) + "^-1"), kConj,
           "(R\\sigma_{p-1}\\sigma_{p-2})^{-1}(\\ell_{p-2}) = \\ell_{p-1}");
    b.step("sign.R", "R", T + " " + bracket(sigma_name(p - 2)) + "^-1 " + bracket(sigma_name(p - 1)) + "^-1",
           kProd, "RF is an orientation reversing diffeomorphism");
  }
  for (int i = 1; i <= p - 3; ++i) {
    const int e = rf ? alternating(i) : 1;
    const std::string inner = bracket(sigma_name(2)) + (e > 0 ? "" : "^-1");
    b.check("in17.transitive." + num(i), sigma_name(2 + i), cj(S, i, inner), kConj,
            rf ? "(R\\sigma_{p-1} \\cdots \\sigma_2 \\sigma_1)^{-i}(\\ell_2) = \\ell_{2+i}^{\\pm1}"
               : "(\\sigma_{p-1}\\cdots \\sigma_2 \\sigma_1)^{-i}(\\ell_2) = \\ell_{2+i}");
  }
  for (int i = 1; i <= 2 * g; ++i) b.output(A(i));
  b.output("B");
  b.output(e_name(p - 1));
  for (int k = 1; k < p; ++k) b.output(sigma_name(k));
  if (rf) b.output("R");
}

}  // namespace

Certificate build_thm32(const SurfaceModel& m) {
  require(m, "thm32", 3, 7);
  Builder b(m, "thm32");
  b.handle("X", handle_word("A2 B^-1 sigma2"));
  b.handle("F", word_F(m));

  auto Y = b.step("in13.1", "A5 C2^-1 sigma5", cj("F", 3, "X"), kConj,
                  "A_5 C_2^{-1} \\sigma_5 = F^{-3} A_2 B^{-1} \\sigma_2 F^3");
  auto a5b = b.step("in13.2", "A5 B^-1 sigma5", Y + " X " + Y + " X^-1 " + Y + "^-1", kConj,
                    "A_5 B^{-1} \\sigma_5 = (A_5 C_2^{-1} \\sigma_5 \\cdot A_2 B^{-1} \\sigma_2) "
                    "A_5 C_2^{-1} \\sigma_5 (\\cdots)^{-1}");
  auto bc2 = b.step("in14.1", "B C2^-1", a5b + "^-1 " + Y, kProd,
                    "BC_2^{-1} = \\sigma_5^{-1} B A_5^{-1} \\cdot A_5 C_2^{-1} \\sigma_5");
  auto W = b.step("in14.2", "A2 C2^-1 sigma2", "X " + bc2, kProd,
                  "A_2 C_2^{-1} \\sigma_2 = A_2 B^{-1} \\sigma_2 \\cdot B C_2^{-1}");
  auto a2a5 = b.step("in14.3", "A2 A5^-1 sigma2 sigma5^-1", "X " + a5b + "^-1", kProd,
                     "A_2 A_5^{-1} \\sigma_2 \\sigma_5^{-1} = A_2 B^{-1} \\sigma_2 \\cdot "
                     "\\sigma_5^{-1} B A_5^{-1}");
  auto Q = b.step("in15.1", "A1 A4^-1 sigma1 sigma4^-1", cj("F", -1, a2a5), kConj,
                  "A_1 A_4^{-1} \\sigma_1 \\sigma_4^{-1} = F A_2 A_5^{-1} \\sigma_2 \\sigma_5^{-1} F^{-1}");
  auto a1c2s = b.step("in15.2", "A1 C2^-1 sigma1", W + " " + Q + " " + W + " " + Q + "^-1 " + W + "^-1",
                      kConj, "A_1 C_2^{-1} \\sigma_1 = (A_2C_2^{-1}\\sigma_2 \\cdot A_1A_4^{-1}\\sigma_1\\sigma_4^{-1}) "
                             "A_2C_2^{-1}\\sigma_2 (\\cdots)^{-1}");
  auto K = b.step("in15.3", "A1 B^-1 sigma1", a1c2s + " " + bc2 + "^-1", kProd,
                  "A_1 B^{-1} \\sigma_1 = A_1 C_2^{-1} \\sigma_1 \\cdot C_2 B^{-1}");
  auto a1a4s = b.step("in15.4", "A1 A4^-1 sigma1", K + " " + Q + " " + K + " " + Q + "^-1 " + K + "^-1",
                      kConj, "A_1 A_4^{-1} \\sigma_1 = (A_1B^{-1}\\sigma_1 \\cdot A_1A_4^{-1}\\sigma_1\\sigma_4^{-1}) "
                             "A_1B^{-1}\\sigma_1 (\\cdots)^{-1}");
  auto s4 = b.step("in16.4", "sigma4", Q + "^-1 " + a1a4s, kProd,
                   "\\sigma_4 = (A_1 A_4^{-1} \\sigma_1 \\sigma_4^{-1})^{-1} A_1A_4^{-1}\\sigma_1");
  auto s3 = b.step("in16.3", "sigma3", cj("F", -1, s4), kConj, "F(\\ell_4) = \\ell_3");
  auto s2 = b.step("in16.2", "sigma2", cj("F", -1, s3), kConj, "F^2(\\ell_4) = \\ell_2");
  auto s1 = b.step("in16.1", "sigma1", cj("F", -1, s2), kConj, "F^3(\\ell_4) = \\ell_1");
  auto a2c2 = b.step("in16.5", "A2 C2^-1", W + " " + s2 + "^-1", kProd,
                     "A_2C_2^{-1} = A_2C_2^{-1}\\sigma_2 \\cdot \\sigma_2^{-1}");
  auto a1c2 = b.step("in16.6", "A1 C2^-1", a1c2s + " " + s1 + "^-1", kProd,
                     "A_1C_2^{-1} = A_1C_2^{-1}\\sigma_1 \\cdot \\sigma_1^{-1}");
  auto a1b = b.step("in16.7", "A1 B^-1", K + " " + s1 + "^-1", kProd,
                    "A_1B^{-1} = A_1B^{-1}\\sigma_1 \\cdot \\sigma_1^{-1}");
  auto a1a2 = b.step("in16.8", "A1 A2^-1", a1c2 + " " + a2c2 + "^-1", kProd,
                     "A_1A_2^{-1} = A_1C_2^{-1} (A_2C_2^{-1})^{-1}");
  b.import(build_lemma31(m), {{"U", a1a2}, {"V", a1b}, {"F", "F"}});
  sigma_tail(b, "F", false);
  return b.take();
}

Certificate build_thm42(const SurfaceModel& m) {
  require(m, "thm42", 3, 7);
  Builder b(m, "thm42");
  const std::string G = "RF";
  b.handle("X", handle_word("A2 B^-1 sigma2"));
  b.handle("RF", word_RF(m));

  auto Yi = b.step("in13b.1", "A5^-1 Cbar2 sigma5^-1", cj(G, 3, "X"), kConj,
                   "A_5^{-1} \\overline{C}_2 \\sigma_5^{-1} = (RF)^{-3} A_2 B^{-1} \\sigma_2 (RF)^3");
  auto Y = b.step("in13b.2", "A5 Cbar2^-1 sigma5", Yi + "^-1", kSwap,
                  "A_5 \\overline{C}_2^{-1} \\sigma_5 = (A_5^{-1} \\overline{C}_2 \\sigma_5^{-1})^{-1}");
  auto a5b = b.step("in13b.3", "A5 B^-1 sigma5", Y + " X " + Y + " X^-1 " + Y + "^-1", kConj,
                    "A_5 B^{-1} \\sigma_5 = (A_5 \\overline{C}_2^{-1} \\sigma_5 \\cdot A_2 B^{-1} "
                    "\\sigma_2) A_5 \\overline{C}_2^{-1} \\sigma_5 (\\cdots)^{-1}");
  auto bc2 = b.step("in14c", "B Cbar2^-1", a5b + "^-1 " + Y, kProd,
                    "B\\overline{C}_2^{-1} = \\sigma_5^{-1} B A_5^{-1} \\cdot A_5 \\overline{C}_2^{-1} \\sigma_5");
  auto W = b.step("in14b.1", "A2 Cbar2^-1 sigma2", "X " + bc2, kProd,
                  "A_2 \\overline{C}_2^{-1} \\sigma_2 = A_2 B^{-1} \\sigma_2 \\cdot B \\overline{C}_2^{-1}");
  auto a2a5 = b.step("in14b.2", "A2 A5^-1 sigma2 sigma5^-1", "X " + a5b + "^-1", kProd,
                     "A_2 A_5^{-1} \\sigma_2 \\sigma_5^{-1} = A_2 B^{-1} \\sigma_2 \\cdot "
                     "\\sigma_5^{-1} B A_5^{-1}");
  auto Q = b.step("in15b.1", "A1^-1 A4 sigma1^-1 sigma4", cj(G, -1, a2a5), kConj,
                  "A_1^{-1} A_4 \\sigma_1^{-1} \\sigma_4 = (RF) A_2 A_5^{-1} \\sigma_2 \\sigma_5^{-1} (RF)^{-1}");
  auto a1c2s = b.step("in15b.2", "A1 Cbar2^-1 sigma1",
                      W + "^-1 " + Q + " " + W + " " + Q + "^-1 " + W, kConj,
                      "A_1 \\overline{C}_2^{-1} \\sigma_1 = ((A_2\\overline{C}_2^{-1}\\sigma_2)^{-1} "
                      "A_1^{-1}A_4\\sigma_1^{-1}\\sigma_4) A_2\\overline{C}_2^{-1}\\sigma_2 (\\cdots)^{-1}");
  auto K = b.step("in15b.3", "A1 B^-1 sigma1", a1c2s + " " + bc2 + "^-1", kProd,
                  "A_1 B^{-1} \\sigma_1 = A_1 \\overline{C}_2^{-1} \\sigma_1 \\cdot \\overline{C}_2 B^{-1}");
  auto a1a4s = b.step("in15b.4", "A1 A4^-1 sigma1",
                      K + "^-1 " + Q + " " + K + " " + Q + "^-1 " + K, kConj,
                      "A_1 A_4^{-1} \\sigma_1 = ((A_1B^{-1}\\sigma_1)^{-1} A_1^{-1}A_4\\sigma_1^{-1}\\sigma_4) "
                      "A_1B^{-1}\\sigma_1 (\\cdots)^{-1}");
  auto s4 = b.step("in16b.4", "sigma4", Q + " " + a1a4s, kProd,
                   "\\sigma_4 = A_1^{-1}A_4\\sigma_1^{-1}\\sigma_4 \\cdot A_1A_4^{-1}\\sigma_1");
  auto s3 = b.step("in16b.3", "sigma3", cj(G, -1, s4 + "^-1"), kConj, "RF(\\ell_4) = \\ell_3");
  auto s2 = b.step("in16b.2", "sigma2", cj(G, -1, s3 + "^-1"), kConj, "(RF)^2(\\ell_4) = \\ell_2");
  auto s1 = b.step("in16b.1", "sigma1", cj(G, -1, s2 + "^-1"), kConj, "(RF)^3(\\ell_4) = \\ell_1");
  auto a2c2 = b.step("in16b.5", "A2 Cbar2^-1", W + " " + s2 + "^-1", kProd,
                     "A_2\\overline{C}_2^{-1} = A_2\\overline{C}_2^{-1}\\sigma_2 \\cdot \\sigma_2^{-1}");
  auto a1c2 = b.step("in16b.6", "A1 Cbar2^-1", a1c2s + " " + s1 + "^-1", kProd,
                     "A_1\\overline{C}_2^{-1} = A_1\\overline{C}_2^{-1}\\sigma_1 \\cdot \\sigma_1^{-1}");
  auto a1b = b.step("in16b.7", "A1 B^-1", K + " " + s1 + "^-1", kProd,
                    "A_1B^{-1} = A_1B^{-1}\\sigma_1 \\cdot \\sigma_1^{-1}");
  auto a1a2 = b.step("in16b.8", "A1 A2^-1", a1c2 + " " + a2c2 + "^-1", kProd,
                     "A_1A_2^{-1} = A_1\\overline{C}_2^{-1} (A_2\\overline{C}_2^{-1})^{-1}");
  b.import(build_lemma41(m), {{"U", a1a2}, {"V", a1b}, {"RF", "RF"}});
  sigma_tail(b, G, true);

  return b.take();
}

Certificate build_prop22(const SurfaceModel& m) {
  require(m, "prop22", 1, 2);
  const int g = m.genus();
  const int p = m.punctures();
  if (g >= 2 && !m.has_atom("B")) throw Unsupported("prop22 needs the curve b");
  Builder b(m, "prop22");
  for (int i = 1; i <= 2 * g; ++i) b.handle(A(i), parse_word(A(i)));
  if (g >= 2) b.handle("B", parse_word("B"));
  b.handle(e_name(p - 1), parse_word(e_name(p - 1)));
  for (int k = 1; k < p; ++k) b.handle(sigma_name(k), parse_word(sigma_name(k)));

  // Handles and targets share one namespace, so the atom names in these
  // words resolve directly.
  for (int i = 2; i < g; ++i) {
    const MCWord f = u_step_word(i);
    b.step("U" + num(i + 1), u_twist_name(i + 1),
           format_word(inverse(f)) + " " + u_twist_name(i) + " " + format_word(f), kConj,
           "t_{f(c)} = ft_c^{\\varepsilon}f^{-1}");
  }
  {
    const MCWord P = ep_palindrome_word(g);
    b.step("E" + num(p), e_name(p),
           format_word(inverse(P)) + " " + u_twist_name(g) + " " + format_word(P), kConj,
           "E_p is generated by A_1,A_2,\\ldots,A_{2g},B");
  }
  auto E = [&](int j) { return j == p - 1 ? e_name(j) : bracket(e_name(j)); };
  for (int j = p - 2; j >= 1; --j) {
    const std::string s = sigma_name(j + 1);
    b.step("E" + num(j), e_name(j),
           E(j + 1) + " " + s + " " + E(j + 1) + " " + s + "^-1 " + s + "^2 " + E(j + 2) + "^-1",
           StepKind::lantern_substitution,
           "E_{j} = E_{j+1} \\sigma_{j+1} E_{j+1} \\sigma_{j+1}^{-1} \\sigma_{j+1}^2 E_{j+2}^{-1}");
  }
  for (int j = 1; j <= p - 2; ++j) b.output(e_name(j));
  b.output(e_name(p));
  Certificate c = b.take();
  c.facts["sigma_permutation_closure"] = check_perm_generation(m).witness;
  return c;
}

// Verification.

namespace {

struct NameTable {
  std::unordered_map<std::string, std::size_t> handle;  // index into alphabet
  std::unordered_map<std::string, std::size_t> target;  // index into steps
};

// Sequential resolution: every name must be a handle or the target of an
// earlier defining step. Steps with unresolved names are marked failed and
// define nothing, so dependents fail too.
NameTable resolve(Certificate& c, const SurfaceModel& m, std::vector<bool>& resolved) {
  NameTable t;
  resolved.assign(c.steps.size(), false);
  for (std::size_t i = 0; i < c.alphabet.size(); ++i) {
    if (!t.handle.emplace(c.alphabet[i].name, i).second) {
      throw StructuralError("duplicate handle " + c.alphabet[i].name);
    }
    for (const auto& l : c.alphabet[i].atoms) {
      if (!m.has_atom(l.name)) {
        throw UnknownName("handle " + c.alphabet[i].name + " uses unknown atom " + l.name);
      }
    }
  }
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    auto& s = c.steps[i];
    std::string missing;
    for (const auto& l : s.reference) {
      if (!m.has_atom(l.name)) {
        missing = "unknown atom '" + l.name + "' in reference";
        break;
      }
    }
    for (const auto& l : s.expr) {
      if (!missing.empty()) break;
      if (!t.handle.count(l.name) && !t.target.count(l.name)) {
        missing = "unresolved name '" + l.name + "'";
      }
    }
    if (missing.empty() && s.defines && s.expect_holds &&
        (t.handle.count(s.target) || t.target.count(s.target))) {
      missing = "target '" + s.target + "' defined twice";
    }
    if (!missing.empty()) {
      s.checked = true;
      s.holds = false;
      s.witness = missing;
      continue;
    }
    resolved[i] = true;
    if (s.defines && s.expect_holds) t.target.emplace(s.target, i);
  }
  return t;
}

MappingClass eval_expr(const MCWord& expr,
                       const std::unordered_map<std::string, const MappingClass*>& cls,
                       const MappingClass& id, std::size_t cap) {
  MappingClass r = id;
  for (const auto& l : expr) {
    const MappingClass& x = *cls.at(l.name);
    r = multiply(r, l.exp > 0 ? x : inverse(x), cap, false);
  }
  return r;
}

struct Classes {
  std::vector<MappingClass> handle;
  std::vector<MappingClass> reference;  // per step
  std::unordered_map<std::string, const MappingClass*> by_name;
};

Classes shallow_classes(const Certificate& c, const SurfaceModel& m, const NameTable& t,
                        const VerifyOptions& opt) {
  Classes k;
  k.handle.resize(c.alphabet.size());
  k.reference.resize(c.steps.size());
  const std::size_t na = c.alphabet.size();
  for_each_index(na + c.steps.size(), opt.exec, opt.threads, [&](std::size_t i) {
    try {
      if (i < na) {
        k.handle[i] = evaluate(m, c.alphabet[i].atoms, opt.max_word_length);
      } else {
        k.reference[i - na] = evaluate(m, c.steps[i - na].reference, opt.max_word_length);
      }
    } catch (...) {
      // left default; the step check reports the error
    }
  });
  for (const auto& [name, i] : t.handle) k.by_name[name] = &k.handle[i];
  for (const auto& [name, i] : t.target) k.by_name[name] = &k.reference[i];
  return k;
}

std::size_t max_len(const MappingClass& x) {
  return std::max(x.autom.max_image_length(), x.inv.max_image_length());
}

// Flat words over handles as codes 2*index + inverse, freely reduced.
using Codes = std::vector<std::uint32_t>;

class Expander {
 public:
  explicit Expander(const Certificate& c) : c_(c) {
    for (std::uint32_t i = 0; i < c.alphabet.size(); ++i) handle_[c.alphabet[i].name] = i;
    for (const auto& s : c.steps) {
      if (s.defines && s.expect_holds && !def_.count(s.target)) def_[s.target] = &s;
    }
  }

  bool known(const std::string& name) const { return handle_.count(name) || def_.count(name); }

  const Codes& get(const std::string& name) {
    auto it = memo_.find(name);
    if (it != memo_.end()) return it->second;
    Codes w;
    auto h = handle_.find(name);
    if (h != handle_.end()) {
      w.push_back(2 * h->second);
    } else {
      auto d = def_.find(name);
      if (d == def_.end()) throw UnknownName("unknown target '" + name + "'");
      if (!active_.insert(name).second) throw StructuralError("cyclic definition of '" + name + "'");
      for (const auto& l : d->second->expr) {
        const Codes& sub = get(l.name);
        if (l.exp > 0) {
          for (auto x : sub) push(w, x);
        } else {
          for (auto r = sub.rbegin(); r != sub.rend(); ++r) push(w, *r ^ 1u);
        }
      }
      active_.erase(name);
    }
    return memo_.emplace(name, std::move(w)).first->second;
  }

  MCWord word(const Codes& w) const {
    MCWord out;
    out.reserve(w.size());
    for (auto x : w) out.push_back({c_.alphabet[x >> 1].name, (x & 1u) ? -1 : 1});
    return out;
  }

 private:
  static void push(Codes& w, std::uint32_t x) {
    if (!w.empty() && w.back() == (x ^ 1u)) {
      w.pop_back();
    } else {
      w.push_back(x);
    }
  }

  const Certificate& c_;
  std::unordered_map<std::string, std::uint32_t> handle_;
  std::unordered_map<std::string, const DerivationStep*> def_;
  std::unordered_map<std::string, Codes> memo_;
  std::unordered_set<std::string> active_;
};

// Left-to-right evaluation of a flat word; runs of one letter use cached
// powers.
MappingClass eval_flat(const Codes& w, const std::vector<MappingClass>& handles,
                       const MappingClass& id, std::size_t cap) {
  std::map<std::pair<std::uint32_t, std::size_t>, MappingClass> powers;
  auto letter = [&](std::uint32_t x) {
    return (x & 1u) ? inverse(handles[x >> 1]) : handles[x >> 1];
  };
  auto power = [&](std::uint32_t x, std::size_t k) -> const MappingClass& {
    auto key = std::make_pair(x, k);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    MappingClass one = letter(x);
    MappingClass r = one;
    for (std::size_t i = 1; i < k; ++i) r = multiply(r, one, cap, false);
    return powers.emplace(key, std::move(r)).first->second;
  };
  MappingClass r = id;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    r = multiply(r, power(w[i], j - i), cap, false);
    i = j;
  }
  return r;
}

}  // namespace

Verdict check_step(const Certificate& c, const SurfaceModel& m, std::size_t step_index,
                   std::size_t cap) {
  Certificate copy;  // outputs can be large and are not needed here
  copy.alphabet = c.alphabet;
  copy.steps = c.steps;
  for (auto& s : copy.steps) s.checked = false;
  std::vector<bool> resolved;
  NameTable t = resolve(copy, m, resolved);
  const auto& s = copy.steps[step_index];
  if (!resolved[step_index]) return {false, s.witness};
  std::unordered_map<std::string, const MappingClass*> cls;
  std::vector<MappingClass> store;
  store.reserve(s.expr.size());
  for (const auto& l : s.expr) {
    if (cls.count(l.name)) continue;
    auto h = t.handle.find(l.name);
    if (h == t.handle.end() && t.target.at(l.name) >= step_index) {
      return {false, "name '" + l.name + "' is not defined before step " + s.id};
    }
    const MCWord& w = h != t.handle.end() ? c.alphabet[h->second].atoms
                                          : c.steps[t.target.at(l.name)].reference;
    store.push_back(evaluate(m, w, cap));
    cls[l.name] = &store.back();
  }
  auto lhs = eval_expr(s.expr, cls, identity_class(m), cap);
  return equal_in_mcg(lhs, evaluate(m, s.reference, cap), cap);
}

void verify(Certificate& c, const SurfaceModel& m, const VerifyOptions& opt) {
  const std::size_t cap = opt.max_word_length;
  for (auto& s : c.steps) {
    s.checked = false;
    s.holds = false;
    s.witness.clear();
  }
  std::vector<bool> resolved;
  NameTable t = resolve(c, m, resolved);
  Classes k = shallow_classes(c, m, t, opt);
  const MappingClass id = identity_class(m);
  std::vector<std::size_t> lengths(c.steps.size(), 0);

  // Shallow: prior targets stand for their reference classes, so steps are
  // independent.
  for_each_index(c.steps.size(), opt.exec, opt.threads, [&](std::size_t i) {
    auto& s = c.steps[i];
    if (!resolved[i]) return;
    if (!s.expect_holds && !opt.negative_controls) {
      s.checked = true;
      s.holds = false;
      s.witness = "skipped";
      return;
    }
    try {
      for (const auto& l : s.expr) {
        auto it = t.target.find(l.name);
        if (it != t.target.end() && it->second >= i) {
          throw UnknownName("name '" + l.name + "' is not defined before this step");
        }
      }
      auto lhs = eval_expr(s.expr, k.by_name, id, cap);
      Verdict v = equal_in_mcg(lhs, k.reference[i], cap);
      s.holds = v.holds;
      s.witness = std::move(v.witness);
      lengths[i] = std::max(max_len(lhs), max_len(k.reference[i]));
    } catch (const std::exception& e) {
      s.holds = false;
      s.witness = std::string("error: ") + e.what();
    }
    s.checked = true;
  });

  // Deep: each target from handles only, in dependency order (a tree
  // parenthesization of its flat word).
  std::unordered_map<std::string, MappingClass> deep;
  for (std::size_t i = 0; i < c.alphabet.size(); ++i) deep.emplace(c.alphabet[i].name, k.handle[i]);
  std::size_t max_image = 0;
  for (auto x : lengths) max_image = std::max(max_image, x);
  for (const auto& s : c.steps) {
    if (!s.defines || !s.expect_holds || !s.ok()) continue;
    try {
      MappingClass r = id;
      for (const auto& l : s.expr) {
        const MappingClass& x = deep.at(l.name);
        r = multiply(r, l.exp > 0 ? x : inverse(x), cap, false);
      }
      max_image = std::max(max_image, max_len(r));
      deep.emplace(s.target, std::move(r));
    } catch (const std::exception&) {
      // outputs depending on it fail below
    }
  }

  // Flat: the freely reduced word over handles, optionally also evaluated
  // letter by letter.
  Expander ex(c);
  std::vector<const Codes*> flat(c.outputs.size(), nullptr);
  for (std::size_t i = 0; i < c.outputs.size(); ++i) {
    if (deep.count(c.outputs[i].target)) flat[i] = &ex.get(c.outputs[i].target);
  }

  c.stats = {};
  for_each_index(c.outputs.size(), opt.exec, opt.threads, [&](std::size_t i) {
    auto& o = c.outputs[i];
    o.checked = true;
    o.holds = false;
    auto it = deep.find(o.target);
    if (it == deep.end() || !flat[i]) {
      o.witness = "target '" + o.target + "' was not derived";
      return;
    }
    try {
      const MappingClass want = atom_class(m, o.generator);
      Verdict tree = equal_in_mcg(it->second, want, cap);
      if (!tree.holds) {
        o.witness = "tree evaluation: " + tree.witness;
        return;
      }
      if (!opt.evaluate_flat_words) {
        o.holds = true;
        o.witness = "tree evaluation: " + tree.witness;
        return;
      }
      Verdict v = equal_in_mcg(eval_flat(*flat[i], k.handle, id, cap), want, cap);
      o.holds = v.holds;
      o.witness = "flat word: " + v.witness;
    } catch (const std::exception& e) {
      o.witness = std::string("error: ") + e.what();
    }
  });
  for (std::size_t i = 0; i < c.outputs.size(); ++i) {
    auto& o = c.outputs[i];
    o.length = flat[i] ? flat[i]->size() : 0;
    o.word = flat[i] && o.length <= opt.max_expanded_length ? ex.word(*flat[i]) : MCWord{};
    c.stats.max_output_length = std::max(c.stats.max_output_length, o.length);
    c.stats.total_output_length += o.length;
  }
  c.stats.checks = c.steps.size() + (opt.evaluate_flat_words ? 2 : 1) * c.outputs.size();
  c.stats.max_image_length = max_image;
}

MCWord expand(const Certificate& c, const std::string& name) {
  Expander ex(c);
  if (!ex.known(name)) throw UnknownName("unknown target '" + name + "'");
  return ex.word(ex.get(name));
}

std::vector<Mutation> mutation_controls(const Certificate& c, const SurfaceModel& m,
                                        std::uint64_t seed, std::size_t count,
                                        const VerifyOptions& opt) {
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    if (c.steps[i].expect_holds && !c.steps[i].expr.empty()) candidates.push_back(i);
  }
  std::vector<Mutation> out(candidates.empty() ? 0 : count);
  std::vector<std::pair<std::size_t, std::size_t>> picks;
  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < out.size(); ++r) {
    std::size_t si = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
    std::size_t pos = std::uniform_int_distribution<std::size_t>(0, c.steps[si].expr.size() - 1)(rng);
    picks.emplace_back(si, pos);
  }
  for_each_index(out.size(), opt.exec, opt.threads, [&](std::size_t r) {
    auto [si, pos] = picks[r];
    Certificate mutated;
    mutated.alphabet = c.alphabet;
    mutated.steps = c.steps;
    auto& e = mutated.steps[si].expr[pos];
    e.exp = -e.exp;
    Mutation& mu = out[r];
    mu.step_id = c.steps[si].id;
    mu.position = pos;
    mu.mutated_expr = format_word(mutated.steps[si].expr);
    try {
      Verdict v = check_step(mutated, m, si, opt.max_word_length);
      mu.caught = !v.holds;
      mu.witness = v.witness;
    } catch (const std::exception& ex) {
      mu.caught = true;
      mu.witness = std::string("error: ") + ex.what();
    }
  });
  return out;
}

std::string export_json(const Certificate& c, int indent, bool include_words) {
  if (!c.verified()) {
    const auto* f = c.first_failure();
    throw StructuralError("refusing to export unverified certificate " + c.name +
                          (f ? " (step " + f->id + ": " + f->witness + ")" : " (an output failed)"));
  }
  nlohmann::ordered_json j;
  j["certificate"] = c.name;
  j["surface"] = {{"g", c.surface.genus}, {"p", c.surface.punctures}};
  auto& al = j["alphabet"] = nlohmann::ordered_json::array();
  for (const auto& h : c.alphabet) al.push_back({{"name", h.name}, {"atoms", format_word(h.atoms)}});
  auto& st = j["steps"] = nlohmann::ordered_json::array();
  for (const auto& s : c.steps) {
    st.push_back({{"id", s.id},
                  {"target", s.target},
                  {"reference", format_word(s.reference)},
                  {"expr", format_word(s.expr)},
                  {"kind", step_kind_name(s.kind)},
                  {"anchor", s.anchor},
                  {"expected", s.expect_holds ? "holds" : "fails"},
                  {"defines", s.defines},
                  {"verdict", !s.ok() ? "fail" : s.witness == "skipped" ? "skipped" : "pass"},
                  {"witness", s.witness}});
  }
  auto& out = j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& o : c.outputs) {
    nlohmann::ordered_json w = nullptr;
    if (include_words && o.length == o.word.size()) w = format_word(o.word);
    out.push_back({{"generator", o.generator},
                   {"target", o.target},
                   {"word", w},
                   {"length", o.length},
                   {"verdict", o.holds ? "pass" : "fail"},
                   {"witness", o.witness}});
  }
  j["stats"] = {{"steps", c.steps.size()},
                {"checks", c.stats.checks},
                {"max_image_length", c.stats.max_image_length},
                {"max_output_length", c.stats.max_output_length},
                {"total_output_length", c.stats.total_output_length}};
  if (!c.facts.empty()) j["facts"] = c.facts;
  return j.dump(indent);
}

Certificate import_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Certificate c;
  c.name = j.at("certificate").get<std::string>();
  c.surface = {j.at("surface").at("g").get<int>(), j.at("surface").at("p").get<int>()};
  for (const auto& h : j.at("alphabet")) {
    c.alphabet.push_back({h.at("name").get<std::string>(), parse_word(h.at("atoms").get<std::string>())});
  }
  for (const auto& s : j.at("steps")) {
    DerivationStep d;
    d.id = s.at("id").get<std::string>();
    d.target = s.at("target").get<std::string>();
    d.reference = parse_word(s.at("reference").get<std::string>());
    d.expr = parse_word(s.at("expr").get<std::string>());
    d.kind = parse_step_kind(s.at("kind").get<std::string>());
    d.anchor = s.at("anchor").get<std::string>();
    d.expect_holds = s.value("expected", std::string("holds")) == "holds";
    d.defines = s.value("defines", true);
    c.steps.push_back(std::move(d));
  }
  for (const auto& o : j.at("outputs")) {
    CertificateOutput x;
    x.generator = o.at("generator").get<std::string>();
    x.target = o.value("target", x.generator);
    c.outputs.push_back(std::move(x));
  }
  if (j.contains("facts")) c.facts = j.at("facts").get<std::map<std::string, std::string>>();
  return c;
}

std::string certificate_text(const Certificate& c) {
  std::ostringstream os;
  os << "# " << c.name << " (g=" << c.surface.genus << ", p=" << c.surface.punctures << ")\n";
  os << "alphabet:";
  for (const auto& h : c.alphabet) os << " " << h.name << " := " << format_word(h.atoms) << ";";
  os << "\n";
  for (const auto& s : c.steps) {
    os << (!s.ok() ? "FAIL " : s.witness == "skipped" ? "SKIP " : "PASS ") << s.id << (s.expect_holds ? "" : " [control]") << "  "
       << s.target << " = " << format_word(s.expr) << "  (" << step_kind_name(s.kind) << ")  \""
       << s.anchor << "\"  -- " << s.witness << "\n";
  }
  for (const auto& o : c.outputs) {
    os << (o.holds ? "PASS " : "FAIL ") << "output " << o.generator << "  length " << o.length
       << "  -- " << o.witness << "\n";
  }
  for (const auto& [k, v] : c.facts) os << "fact " << k << ": " << v << "\n";
  os << "checks " << c.stats.checks << ", max image length " << c.stats.max_image_length
     << ", max output length " << c.stats.max_output_length << "\n";
  return os.str();
}

Certificate derive_prop22(const SurfaceModel& m, const VerifyOptions& opt) {
  auto c = build_prop22(m);
  verify(c, m, opt);
  return c;
}
Certificate derive_lemma31(const SurfaceModel& m, const VerifyOptions& opt) {
  auto c = build_lemma31(m);
  verify(c, m, opt);
  return c;
}
Certificate derive_lemma41(const SurfaceModel& m, const VerifyOptions& opt) {
  auto c = build_lemma41(m);
  verify(c, m, opt);
  return c;
}
Certificate derive_thm32(const SurfaceModel& m, const VerifyOptions& opt) {
  auto c = build_thm32(m);
  verify(c, m, opt);
  return c;
}
Certificate derive_thm42(const SurfaceModel& m, const VerifyOptions& opt) {
  auto c = build_thm42(m);
  verify(c, m, opt);
  return c;
}

}  // namespace twogen
