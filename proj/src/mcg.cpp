#include "twogen/mcg.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace twogen {

namespace {

bool needs_brackets(const std::string& name) {
  return name.find_first_of("^ \t[]") != std::string::npos;
}

std::string format_letter(const std::string& name, int k) {
  std::string s = needs_brackets(name) ? "[" + name + "]" : name;
  if (k != 1) s += "^" + std::to_string(k);
  return s;
}

}  // namespace

MCWord parse_word(const std::string& text) {
  MCWord w;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::string name;
    if (text[i] == '[') {
      auto close = text.find(']', i);
      if (close == std::string::npos) throw StructuralError("unclosed '[' in word: " + text);
      name = text.substr(i + 1, close - i - 1);
      i = close + 1;
    } else {
      std::size_t j = i;
      while (j < n && text[j] != '^' && !std::isspace(static_cast<unsigned char>(text[j])) &&
             text[j] != '[') {
        ++j;
      }
      name = text.substr(i, j - i);
      i = j;
    }
    if (name.empty()) throw StructuralError("empty letter in word: " + text);
    int k = 1;
    if (i < n && text[i] == '^') {
      std::size_t j = i + 1;
      while (j < n && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      auto first = text.data() + i + 1;
      auto last = text.data() + j;
      auto [ptr, ec] = std::from_chars(first, last, k);
      if (ec != std::errc() || ptr != last || k == 0) {
        throw StructuralError("bad exponent in word: " + text);
      }
      i = j;
    }
    for (int r = 0; r < std::abs(k); ++r) w.push_back({name, k > 0 ? 1 : -1});
  }
  return w;
}

std::string format_word(const MCWord& w) {
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += ' ';
    out += format_letter(w[i].name, w[i].exp * static_cast<int>(j - i));
    i = j;
  }
  return out;
}

MCWord inverse(const MCWord& w) {
  MCWord r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->name, -it->exp});
  return r;
}

MCWord concat(std::initializer_list<MCWord> parts) {
  MCWord r;
  for (const auto& p : parts) r.insert(r.end(), p.begin(), p.end());
  return r;
}

MCWord power(const MCWord& w, int k) {
  MCWord base = k < 0 ? inverse(w) : w;
  MCWord r;
  for (int i = 0; i < std::abs(k); ++i) r.insert(r.end(), base.begin(), base.end());
  return r;
}

MappingClass identity_class(const SurfaceModel& model) {
  auto id = FreeAutomorphism::identity(model.rank());
  return {id, id, identity_permutation(static_cast<std::size_t>(model.punctures())), 1, {}};
}

MappingClass atom_class(const SurfaceModel& model, const std::string& name, int exp) {
  const auto& a = model.atom(name);
  if (exp > 0) return {a.automorphism, a.inverse, a.perm, a.sign, {{name, 1}}};
  return {a.inverse, a.automorphism, inverse(a.perm), a.sign, {{name, -1}}};
}

MappingClass multiply(const MappingClass& a, const MappingClass& b, std::size_t cap,
                      bool keep_word) {
  MappingClass r;
  r.autom = compose(a.autom, b.autom, cap);
  r.inv = compose(b.inv, a.inv, cap);
  r.perm = compose(a.perm, b.perm);
  r.sign = a.sign * b.sign;
  if (keep_word) {
    r.word = a.word;
    r.word.insert(r.word.end(), b.word.begin(), b.word.end());
  }
  return r;
}

MappingClass inverse(const MappingClass& m) {
  return {m.inv, m.autom, inverse(m.perm), m.sign, inverse(m.word)};
}

MappingClass evaluate(const SurfaceModel& model, const MCWord& w, std::size_t cap) {
  MappingClass r = identity_class(model);
  for (const auto& l : w) r = multiply(r, atom_class(model, l.name, l.exp), cap);
  return r;
}

CyclicWord act_on_curve(const MappingClass& m, const Word& curve, std::size_t cap) {
  Word image = apply(m.autom, curve, cap);
  auto a = cyclic_normal_form(image);
  auto b = cyclic_normal_form(invert(image));
  const auto& al = a.canonical.letters();
  const auto& bl = b.canonical.letters();
  return std::lexicographical_compare(bl.begin(), bl.end(), al.begin(), al.end()) ? b : a;
}

CyclicWord act_on_curve(const SurfaceModel& model, const MappingClass& m,
                        const std::string& curve, std::size_t cap) {
  return act_on_curve(m, model.curve_word(curve), cap);
}

MappingClass conjugated_twist(const MappingClass& f, const MappingClass& t, std::size_t cap) {
  MappingClass te = f.sign > 0 ? t : inverse(t);
  return multiply(multiply(f, te, cap), inverse(f), cap);
}

Verdict equal_in_mcg(const MappingClass& a, const MappingClass& b, std::size_t cap) {
  if (a.sign != b.sign) return {false, "orientation signs differ"};
  if (a.perm != b.perm) {
    for (std::size_t j = 0; j < a.perm.size(); ++j) {
      if (a.perm[j] != b.perm[j]) {
        return {false, "puncture x" + std::to_string(j + 1) + " goes to x" +
                           std::to_string(a.perm[j] + 1) + " vs x" +
                           std::to_string(b.perm[j] + 1)};
      }
    }
  }
  FreeAutomorphism q = compose(a.autom, b.inv, cap);
  if (q.is_identity()) return {true, "identical automorphisms"};
  auto w = is_inner(q);
  if (!w) {
    for (std::uint32_t i = 0; i < q.rank(); ++i) {
      if (!find_conjugator(Word::generator(q.rank(), i), q.image(i))) {
        return {false, "not inner: basis letter " + std::to_string(i) +
                           " goes outside its conjugacy class"};
      }
    }
    return {false, "not inner: no common conjugator"};
  }
  return {true, "inner by a word of length " + std::to_string(w->size())};
}

Verdict arc_fact(const SurfaceModel& model, const MappingClass& f, int k, int k2,
                 std::size_t cap) {
  const int p = model.punctures();
  if (k < 1 || k > p - 1 || k2 < 1 || k2 > p - 1) {
    throw UnknownName("arc index out of range 1.." + std::to_string(p - 1));
  }
  auto lhs = conjugated_twist(f, atom_class(model, sigma_name(k)), cap);
  return equal_in_mcg(lhs, atom_class(model, sigma_name(k2)), cap);
}

MappingClass Evaluator::operator()(const MCWord& w) const {
  const std::string key = format_word(w);
  {
    std::shared_lock lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  MappingClass r = evaluate(model_, w, cap_);
  std::unique_lock lock(mu_);
  return memo_.emplace(key, std::move(r)).first->second;
}

}  // namespace twogen
