#include "twogen/surface.hpp"

#include "json.hpp"

namespace twogen {

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw StructuralError("permutation size mismatch");
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

Permutation inverse(const Permutation& a) {
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint32_t>(i);
  return r;
}

std::string twist_name_A(int i) { return "A" + std::to_string(i); }
std::string sigma_name(int k) { return "sigma" + std::to_string(k); }
std::string e_name(int k) { return "E" + std::to_string(k); }
std::string u_curve(int i) { return "u" + std::to_string(i); }

std::string u_twist_name(int i) {
  if (i == 1) return "A1";
  if (i == 2) return "B";
  return "U" + std::to_string(i);
}

NamedWord u_step_word(int i) {
  auto A = [&](int j, int e) { return NamedLetter{twist_name_A(j), e}; };
  const int s = 2 * i;
  return {A(s, -1),     A(s - 1, -1), A(s - 2, -1), {u_twist_name(i - 1), -1},
          A(s + 1, -1), A(s, -1),     A(s - 1, -1), A(s - 2, -1),
          A(s + 2, -1), A(s + 1, -1), A(s, -1),     A(s - 1, -1),
          {u_twist_name(i), 1},       A(s, 1),      A(s + 1, 1), A(s + 2, 1)};
}

NamedWord ep_palindrome_word(int g) {
  NamedWord w;
  for (int i = 2 * g; i >= 1; --i) w.push_back({twist_name_A(i), -1});
  for (int i = 1; i <= 2 * g; ++i) w.push_back({twist_name_A(i), -1});
  return w;
}

Word SurfaceModel::product_relation() const {
  Word comm(rank_);
  for (int j = 0; j < spec_.genus; ++j) {
    Word a = Word::generator(rank_, 2 * j);
    Word b = Word::generator(rank_, 2 * j + 1);
    comm.append(a);
    comm.append(b);
    comm.append_inverse(a);
    comm.append_inverse(b);
  }
  for (const auto& x : peripheral_) comm.append(x);
  return comm;
}

const Word& SurfaceModel::curve_word(const std::string& name) const {
  auto it = curve_index_.find(name);
  if (it == curve_index_.end()) throw UnknownName("unknown curve '" + name + "'");
  return it->second;
}

CyclicWord SurfaceModel::curve_class(const std::string& name) const {
  return cyclic_normal_form(curve_word(name));
}

const MappingClassAtom& SurfaceModel::atom(const std::string& name) const {
  auto it = atom_index_.find(name);
  if (it == atom_index_.end()) throw UnknownName("unknown atom '" + name + "'");
  return it->second;
}

std::string SurfaceModel::twist_atom_of(const std::string& curve) const {
  auto it = twist_of_curve_.find(curve);
  if (it == twist_of_curve_.end()) throw UnknownName("no twist atom for curve '" + curve + "'");
  return it->second;
}

std::pair<FreeAutomorphism, FreeAutomorphism> SurfaceModel::twist(const Word& curve) const {
  Word r = apply(to_rose_, curve);
  FreeAutomorphism t = rose_.dehn_twist(r, 1);
  FreeAutomorphism ti = rose_.dehn_twist(r, -1);
  return {compose(from_rose_, compose(t, to_rose_)), compose(from_rose_, compose(ti, to_rose_))};
}

void SurfaceModel::add_curve(const std::string& name, Word w) {
  if (curve_index_.count(name)) throw StructuralError("duplicate curve " + name);
  curve_names_.push_back(name);
  curve_index_.emplace(name, cyclic_normal_form(w).canonical);
}

void SurfaceModel::add_atom(MappingClassAtom a) {
  if (atom_index_.count(a.name)) throw StructuralError("duplicate atom " + a.name);
  atom_names_.push_back(a.name);
  if (!a.curve.empty()) twist_of_curve_[a.curve] = a.name;
  std::string key = a.name;
  atom_index_.emplace(key, std::move(a));
}

class SurfaceBuilder {
 public:
  SurfaceBuilder(SurfaceSpec spec, std::size_t cap) : cap_(cap) {
    m_.spec_ = spec;
    g_ = spec.genus;
    p_ = spec.punctures;
    n_ = static_cast<std::uint32_t>(2 * g_ + p_ - 1);
    m_.rank_ = n_;
  }

  SurfaceModel run() {
    basis();
    rose();
    base_curves();
    base_atoms();
    derived();
    return std::move(m_);
  }

 private:
  // rose letters
  std::uint32_t V(int i) const { return static_cast<std::uint32_t>(i - 1); }
  std::uint32_t T(int i) const { return static_cast<std::uint32_t>(g_ + i - 1); }
  std::uint32_t Z(int k) const { return static_cast<std::uint32_t>(2 * g_ + k - 1); }
  // public letters
  std::uint32_t alpha(int j) const { return static_cast<std::uint32_t>(2 * (j - 1)); }
  std::uint32_t beta(int j) const { return static_cast<std::uint32_t>(2 * j - 1); }
  std::uint32_t x(int k) const { return static_cast<std::uint32_t>(2 * g_ + k - 1); }

  Word L(std::uint32_t i, int e = 1) const { return Word::generator(n_, i, e); }
  Word cat(std::initializer_list<Word> ws) const {
    Word r(n_);
    for (const auto& w : ws) r.append(w);
    return r;
  }

  // z_k in the rose basis; z_p closes up around the genus.
  Word zr(int k) const {
    if (k == 0) return Word(n_);
    if (k < p_) return L(Z(k));
    Word r(n_);
    for (int i = g_; i >= 1; --i) r.push(Letter(V(i), false));
    for (int i = 1; i <= g_; ++i) r.append(cat({L(T(i), -1), L(V(i), -1), L(T(i))}));
    return r;
  }

  void basis() {
    for (int j = 1; j <= g_; ++j) {
      m_.basis_names_.push_back("alpha" + std::to_string(j));
      m_.basis_names_.push_back("beta" + std::to_string(j));
    }
    for (int k = 1; k < p_; ++k) m_.basis_names_.push_back("x" + std::to_string(k));

    std::vector<Word> from(n_, Word(n_));
    std::vector<Word> to(n_, Word(n_));
    Word wp(n_);  // w_i in the public basis
    Word wr(n_);  // w_i in the rose basis
    for (int i = g_; i >= 1; --i) {
      const int j = g_ + 1 - i;
      from[V(i)] = cat({invert(wp), L(beta(j)), wp});
      from[T(i)] = cat({invert(wp), L(alpha(j), -1), wp});
      to[alpha(j)] = cat({wr, L(T(i), -1), invert(wr)});
      to[beta(j)] = cat({wr, L(V(i)), invert(wr)});
      wp.append(from[V(i)]);
      wr.push(Letter(V(i), false));
    }
    Word acc(n_);
    for (int k = 1; k < p_; ++k) {
      acc.push(Letter(x(k), false));
      from[Z(k)] = acc;
      to[x(k)] = cat({invert(zr(k - 1)), zr(k)});
    }
    m_.from_rose_ = FreeAutomorphism::from_images(std::move(from));
    m_.to_rose_ = FreeAutomorphism::from_images(std::move(to));

    for (int k = 1; k < p_; ++k) m_.peripheral_.push_back(L(x(k)));
    Word xp(n_);
    for (int j = 1; j <= g_; ++j) {
      xp.append(cat({L(alpha(j)), L(beta(j)), L(alpha(j), -1), L(beta(j), -1)}));
    }
    for (int k = 1; k < p_; ++k) xp.push(Letter(x(k), false));
    m_.peripheral_.push_back(invert(xp));
  }

  void rose() {
    std::vector<HalfEdge> order;
    for (int k = 1; k < p_; ++k) order.push_back({Z(k), true});
    for (int i = g_; i >= 1; --i) {
      order.push_back({V(i), true});
      order.push_back({T(i), true});
      order.push_back({V(i), false});
    }
    for (int i = 1; i <= g_; ++i) order.push_back({T(i), false});
    for (int k = p_ - 1; k >= 1; --k) order.push_back({Z(k), false});
    m_.rose_ = RoseSurface(std::move(order));
  }

  Word pub(const Word& rose_word) const { return apply(m_.from_rose_, rose_word); }

  void base_curves() {
    auto a = [&](int j) {
      if (j == 1) return L(T(1));
      if (j % 2 == 0) return L(V(j / 2));
      return cat({L(T((j + 1) / 2)), L(T((j - 1) / 2), -1)});
    };
    for (int j = 1; j <= 2 * g_; ++j) m_.add_curve("a" + std::to_string(j), pub(a(j)));
    if (g_ >= 2) m_.add_curve("b", pub(L(T(2))));
    for (int i = 3; i <= g_; ++i) m_.add_curve(u_curve(i), pub(L(T(i))));
    const int first_e = p_ == 2 ? 0 : 1;
    for (int k = first_e; k <= p_; ++k) {
      m_.add_curve("e" + std::to_string(k), pub(cat({zr(k), L(T(g_), -1)})));
    }
    m_.add_curve("delta", pub(zr(p_)));
    if (p_ >= 2) m_.add_curve("delta" + std::to_string(p_ - 1), m_.peripheral_[p_ - 2]);
    m_.add_curve("delta" + std::to_string(p_), m_.peripheral_[p_ - 1]);
    if (p_ >= 2) {
      m_.add_curve("delta" + std::to_string(p_ - 1) + "," + std::to_string(p_),
                   pub(cat({invert(zr(p_ - 2)), zr(p_)})));
    }
  }

  void add_twist(const std::string& atom_name, const std::string& curve) {
    auto [t, ti] = m_.twist(m_.curve_word(curve));
    m_.add_atom({atom_name, std::move(t), std::move(ti),
                 identity_permutation(static_cast<std::size_t>(p_)), 1, curve});
  }

  FreeAutomorphism to_public(const FreeAutomorphism& rose_map) const {
    return compose(m_.from_rose_, compose(rose_map, m_.to_rose_));
  }

  void base_atoms() {
    for (int j = 1; j <= 2 * g_; ++j) add_twist(twist_name_A(j), "a" + std::to_string(j));
    if (g_ >= 2) add_twist("B", "b");
    for (int i = 3; i <= g_; ++i) add_twist(u_twist_name(i), u_curve(i));
    const int first_e = p_ == 2 ? 0 : 1;
    for (int k = first_e; k <= p_; ++k) add_twist(e_name(k), "e" + std::to_string(k));
    add_twist("Delta", "delta");

    // Half twists: z_k -> z_{k-1} z_k^{-1} z_{k+1}, the stated inverse swaps
    // the outer factors.
    for (int k = 1; k < p_; ++k) {
      std::vector<Word> fwd, back;
      for (std::uint32_t i = 0; i < n_; ++i) {
        fwd.push_back(L(i));
        back.push_back(L(i));
      }
      fwd[Z(k)] = cat({zr(k - 1), invert(zr(k)), zr(k + 1)});
      back[Z(k)] = cat({zr(k + 1), invert(zr(k)), zr(k - 1)});
      Permutation perm = identity_permutation(static_cast<std::size_t>(p_));
      std::swap(perm[k - 1], perm[k]);
      m_.add_atom({sigma_name(k), to_public(FreeAutomorphism::from_images(std::move(fwd))),
                   to_public(FreeAutomorphism::from_images(std::move(back))), perm, 1, ""});
    }

    // Reflection across the plane of the picture.
    {
      std::vector<Word> im(n_, Word(n_));
      for (int i = 1; i <= g_; ++i) {
        im[V(i)] = cat({L(T(i), -1), L(V(i)), L(T(i))});
        im[T(i)] = L(T(i), -1);
      }
      for (int k = 1; k < p_; ++k) im[Z(k)] = L(Z(k), -1);
      FreeAutomorphism r = to_public(FreeAutomorphism::from_images(std::move(im)));
      m_.add_atom({"R", r, r, identity_permutation(static_cast<std::size_t>(p_)), -1, ""});
    }

    // Twists about puncture-parallel curves are trivial.
    auto id = FreeAutomorphism::identity(n_);
    const auto idp = identity_permutation(static_cast<std::size_t>(p_));
    if (p_ >= 2) {
      m_.add_atom({"Delta" + std::to_string(p_ - 1), id, id, idp, 1,
                   "delta" + std::to_string(p_ - 1)});
    }
    m_.add_atom({"Delta" + std::to_string(p_), id, id, idp, 1, "delta" + std::to_string(p_)});
    if (p_ >= 2) {
      const std::string pair = std::to_string(p_ - 1) + "," + std::to_string(p_);
      add_twist("Delta" + pair, "delta" + pair);
      const auto& s = m_.atom(sigma_name(p_ - 1));
      const std::string moved = "sigma" + std::to_string(p_ - 1) + "(e" + std::to_string(p_ - 1) + ")";
      m_.add_curve(moved, apply(s.automorphism, m_.curve_word("e" + std::to_string(p_ - 1))));
      add_twist("E'" + std::to_string(p_ - 1), moved);
    }
  }

  // Image of a curve under a word of atoms (rightmost acts first).
  Word act(const NamedWord& w, const Word& c) const {
    Word r = c;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      const auto& a = m_.atom(it->name);
      r = apply(it->exp > 0 ? a.automorphism : a.inverse, r, cap_);
      r = cyclic_reduction(r).second;
    }
    return r;
  }

  NamedWord F_inverse(bool with_R) const {
    NamedWord w;
    for (int i = 1; i <= 2 * g_; ++i) w.push_back({twist_name_A(i), -1});
    w.push_back({e_name(p_ - 1), -1});
    for (int k = 1; k < p_; ++k) w.push_back({sigma_name(k), -1});
    if (with_R) w.push_back({"R", 1});
    return w;
  }

  void derive(const std::string& curve, const std::string& atom_name, const NamedWord& by,
              const std::string& from) {
    m_.add_curve(curve, act(by, m_.curve_word(from)));
    add_twist(atom_name, curve);
  }

  void derived() {
    if (p_ < 2 || g_ < 2) return;
    const NamedWord Fi = F_inverse(false);
    derive("c1", "C1", Fi, "b");
    derive("d1", "D1", Fi, "c1");
    derive("c2", "C2", Fi, "d1");
    if (g_ < 3) return;
    auto A = [](int j, int e) { return NamedLetter{twist_name_A(j), e}; };
    derive("b2", "B2", {A(6, 1), A(1, -1), A(5, 1), A(1, -1), A(4, 1), {"C2", -1}}, "b");
    derive("e", "E", {{"B2", -1}, A(2, 1), {"B2", -1}, A(1, 1), A(4, -1), {"C1", 1}}, "a5");
    const NamedWord RFi = F_inverse(true);
    derive("dbar1", "Dbar1", RFi, "c1");
    derive("cbar2", "Cbar2", RFi, "dbar1");
    derive("bbar", "Bbar",
           {A(6, 1), A(4, -1), A(6, 1), A(3, -1), A(6, 1), A(2, -1), A(6, 1), A(1, -1)}, "c1");
    derive("bbar2", "Bbar2", {A(6, 1), A(1, -1), A(5, 1), A(1, -1), A(4, 1), {"Cbar2", -1}},
           "bbar");
    derive("ebar", "Ebar", {{"Bbar2", 1}, A(2, -1), {"Bbar2", 1}, A(1, -1), {"C1", -1}, A(4, 1)},
           "a5");
  }

  SurfaceModel m_;
  std::size_t cap_;
  int g_ = 0;
  int p_ = 0;
  std::uint32_t n_ = 0;
};

SurfaceModel build_surface(SurfaceSpec spec, std::size_t max_word_length) {
  if (spec.punctures < 1) {
    throw Unsupported("p = " + std::to_string(spec.punctures) +
                      " is unsupported: the closed case has a non-free fundamental group");
  }
  if (spec.genus < 1) {
    throw Unsupported("g = " + std::to_string(spec.genus) + " is unsupported: requires g >= 1");
  }
  return SurfaceBuilder(spec, max_word_length).run();
}

std::string dump_atlas(const SurfaceModel& m) {
  nlohmann::ordered_json j;
  j["surface"] = {{"g", m.genus()}, {"p", m.punctures()}};
  j["basis"] = m.basis_names();
  auto& per = j["peripheral"] = nlohmann::ordered_json::array();
  for (const auto& w : m.peripherals()) per.push_back(m.describe(w));
  auto& curves = j["curves"] = nlohmann::ordered_json::array();
  for (const auto& c : m.curve_names()) {
    curves.push_back({{"name", c}, {"word", m.describe(m.curve_word(c))}});
  }
  auto& atoms = j["atoms"] = nlohmann::ordered_json::array();
  for (const auto& a : m.atom_names()) {
    const auto& at = m.atom(a);
    nlohmann::ordered_json images = nlohmann::ordered_json::array();
    for (std::uint32_t i = 0; i < m.rank(); ++i) images.push_back(m.describe(at.automorphism.image(i)));
    atoms.push_back({{"name", a},
                     {"sign", at.sign},
                     {"perm", at.perm},
                     {"curve", at.curve},
                     {"images", images}});
  }
  return j.dump(2);
}

}  // namespace twogen
