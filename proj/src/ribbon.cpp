#include "twogen/ribbon.hpp"

#include <algorithm>
#include <string>

namespace twogen {

RoseSurface::RoseSurface(std::vector<HalfEdge> cyclic_order)
    : rank_(static_cast<std::uint32_t>(cyclic_order.size() / 2)),
      order_(std::move(cyclic_order)) {
  if (order_.size() % 2 != 0) throw StructuralError("odd number of half-edges");
  pos_out_.assign(rank_, UINT32_MAX);
  pos_in_.assign(rank_, UINT32_MAX);
  for (std::uint32_t p = 0; p < order_.size(); ++p) {
    const HalfEdge& h = order_[p];
    if (h.edge >= rank_) throw StructuralError("half-edge names an unknown edge");
    auto& slot = h.out ? pos_out_[h.edge] : pos_in_[h.edge];
    if (slot != UINT32_MAX) throw StructuralError("half-edge listed twice");
    slot = p;
  }
}

std::vector<Word> RoseSurface::boundary_words() const {
  const std::uint32_t m = 2 * rank_;
  std::vector<bool> seen(m, false);
  std::vector<Word> out;
  for (std::uint32_t start = 0; start < m; ++start) {
    if (seen[start]) continue;
    Word w(rank_);
    std::uint32_t corner = start;
    while (!seen[corner]) {
      seen[corner] = true;
      const HalfEdge& h = order_[(corner + 1) % m];
      w.push(Letter(h.edge, !h.out));
      corner = h.out ? pos_in_[h.edge] : pos_out_[h.edge];
    }
    out.push_back(std::move(w));
  }
  return out;
}

struct RoseSurface::Realization {
  Word core;                          // cyclically reduced curve
  std::vector<std::uint32_t> depart;  // half-edge position each strand leaves by
  std::vector<std::uint32_t> arrive;  // and re-enters by
  // rank of endpoint (2i: departure of strand i, 2i+1: arrival) within its
  // half-edge, counterclockwise
  std::vector<std::uint32_t> rank;
};

RoseSurface::Realization RoseSurface::realize(const Word& curve) const {
  if (curve.rank() != rank_) throw StructuralError("curve over a different basis");
  Realization r;
  r.core = cyclic_reduction(curve).second;
  const auto& c = r.core.letters();
  const std::size_t m = c.size();
  const std::uint32_t slots = 2 * rank_;
  r.depart.resize(m);
  r.arrive.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    r.depart[i] = c[i].inverse() ? pos_in_[c[i].index()] : pos_out_[c[i].index()];
    r.arrive[i] = c[i].inverse() ? pos_out_[c[i].index()] : pos_in_[c[i].index()];
  }
  auto endpoint_pos = [&](std::size_t id) {
    return id % 2 == 0 ? r.depart[id / 2] : r.arrive[id / 2];
  };
  auto dist = [&](std::uint32_t from, std::uint32_t to) {
    return (to + slots - from) % slots;
  };

  // Walk from an endpoint through its chord: returns the landing half-edge and
  // the endpoint on the far end of the landing band.
  auto step = [&](std::size_t id) -> std::pair<std::uint32_t, std::size_t> {
    std::size_t i = id / 2;
    if (id % 2 == 1) {
      std::size_t next = (i + 1) % m;
      return {r.depart[next], 2 * next + 1};
    }
    std::size_t prev = (i + m - 1) % m;
    return {r.arrive[prev], 2 * prev};
  };

  // True when endpoint x lies counterclockwise after endpoint y on their
  // common half-edge.
  auto later = [&](std::size_t x, std::size_t y) {
    std::uint32_t here = endpoint_pos(x);
    for (std::size_t k = 0; k < 2 * m + 2; ++k) {
      auto [lx, nx] = step(x);
      auto [ly, ny] = step(y);
      if (lx != ly) return dist(here, lx) < dist(here, ly);
      x = nx;
      y = ny;
      here = endpoint_pos(x);
    }
    throw NotSimple("curve is a proper power or not cyclically reduced");
  };

  std::vector<std::vector<std::size_t>> at(slots);
  for (std::size_t id = 0; id < 2 * m; ++id) at[endpoint_pos(id)].push_back(id);
  r.rank.assign(2 * m, 0);
  for (auto& list : at) {
    std::sort(list.begin(), list.end(),
              [&](std::size_t a, std::size_t b) { return a != b && later(b, a); });
    for (std::uint32_t k = 0; k < list.size(); ++k) r.rank[list[k]] = k;
  }

  // Strand order must reverse across each band.
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t count = at[r.depart[i]].size();
    if (r.rank[2 * i] + r.rank[2 * i + 1] + 1 != count) {
      throw NotSimple("strand order is inconsistent across a band");
    }
  }

  // Chords must be pairwise disjoint.
  auto coord = [&](std::size_t id) {
    return static_cast<std::uint64_t>(endpoint_pos(id)) * (2 * m + 1) + r.rank[id];
  };
  std::vector<std::pair<std::uint64_t, std::uint64_t>> chords(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto a = coord(2 * i + 1);
    auto b = coord(2 * ((i + 1) % m));
    chords[i] = {std::min(a, b), std::max(a, b)};
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      auto [a, b] = chords[i];
      auto [c2, d] = chords[j];
      bool c_in = a < c2 && c2 < b;
      bool d_in = a < d && d < b;
      if (c_in != d_in) throw NotSimple("chords cross in the vertex disk");
    }
  }
  return r;
}

void RoseSurface::check_simple(const Word& curve) const { (void)realize(curve); }

FreeAutomorphism RoseSurface::dehn_twist(const Word& curve, int power) const {
  if (power != 1 && power != -1) throw StructuralError("twist power must be +1 or -1");
  Realization r = realize(curve);
  const auto& c = r.core.letters();
  const std::size_t m = c.size();
  if (m == 0) return FreeAutomorphism::identity(rank_);

  // rot[i] is the curve read from the chord leaving strand i.
  std::vector<Word> rot_pos(m, Word(rank_));
  std::vector<Word> rot_neg(m, Word(rank_));
  for (std::size_t i = 0; i < m; ++i) {
    Word w(rank_);
    for (std::size_t k = 1; k <= m; ++k) w.push(c[(i + k) % m]);
    rot_neg[i] = invert(w);
    rot_pos[i] = std::move(w);
  }

  struct Crossing {
    std::uint64_t key;
    std::size_t chord;
    bool right_to_left;
  };
  auto endpoint_pos = [&](std::size_t id) {
    return id % 2 == 0 ? r.depart[id / 2] : r.arrive[id / 2];
  };
  auto coord = [&](std::size_t id) {
    return static_cast<std::uint64_t>(endpoint_pos(id)) * (2 * m + 1) + r.rank[id];
  };
  // Crossings of a boundary-hugging counterclockwise path over the half-edge
  // positions selected by `inside`.
  auto crossings = [&](auto inside) {
    std::vector<Crossing> xs;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t start = 2 * i + 1;
      std::size_t end = 2 * ((i + 1) % m);
      bool s_in = inside(endpoint_pos(start));
      bool e_in = inside(endpoint_pos(end));
      if (s_in == e_in) continue;
      xs.push_back({coord(s_in ? start : end), i, s_in});
    }
    std::sort(xs.begin(), xs.end(),
              [](const Crossing& a, const Crossing& b) { return a.key < b.key; });
    return xs;
  };
  auto insert = [&](Word& w, const Crossing& x) {
    // Turning right follows the curve forward when it crosses left to right.
    int s = (x.right_to_left ? -1 : 1) * power;
    w.append(s > 0 ? rot_pos[x.chord] : rot_neg[x.chord]);
  };

  std::vector<Word> images;
  images.reserve(rank_);
  for (std::uint32_t e = 0; e < rank_; ++e) {
    const std::uint32_t po = pos_out_[e];
    const std::uint32_t pi = pos_in_[e];
    Word w(rank_);
    for (const auto& x : crossings([&](std::uint32_t p) { return p < po; })) insert(w, x);
    w.push(Letter(e, false));
    for (const auto& x : crossings([&](std::uint32_t p) { return p > pi; })) insert(w, x);
    images.push_back(std::move(w));
  }
  return FreeAutomorphism::from_images(std::move(images));
}

}  // namespace twogen
