#pragma once

#include <algorithm>
#include <functional>
#include <iterator>
#include <numeric>
#include <stdexcept>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rackx/group.hpp"
#include "rackx/rack.hpp"
#include "rackx/xmod.hpp"

namespace rackx {

struct Letter {
  Index generator = 0;
  bool inverse = false;

  bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// Finite presentation of the associated group As(X): one generator per rack
/// element, the relator y⁻¹x⁻¹y(x◁y) for every ordered pair (x, y), and the
/// pointed relator killing the basepoint generator.
struct Presentation {
  Index generators = 0;
  Index basepoint = 0;
  /// Relator for (x, y) at position x * generators + y.
  std::vector<Word> relators;
  Word pointed_relator;
  /// Unit map X → As(X): element x goes to generator unit[x].
  std::vector<Index> unit;

  bool operator==(const Presentation&) const = default;
};

inline Presentation as_presentation(const FiniteRack& x) {
  Presentation p;
  p.generators = x.size();
  p.basepoint = x.basepoint();
  for (Index a = 0; a < x.size(); ++a)
    for (Index b = 0; b < x.size(); ++b)
      p.relators.push_back({{b, true}, {a, true}, {b, false}, {x.op(a, b), false}});
  p.pointed_relator = {{x.basepoint(), false}};
  p.unit.resize(x.size());
  std::iota(p.unit.begin(), p.unit.end(), Index{0});
  return p;
}

inline Index evaluate(const Word& w, const std::vector<Index>& assignment, const FiniteGroup& g) {
  Index value = g.identity();
  for (const Letter& l : w) {
    const Index v = assignment[l.generator];
    value = g.mul(value, l.inverse ? g.inv(v) : v);
  }
  return value;
}

/// Plain relator list: a "# generators N" header, then one word per line with
/// letters written as 1-based generator numbers, negated for inverses. The
/// pointed relator is the last line.
inline void write_presentation(std::ostream& os, const Presentation& p) {
  os << "# generators " << p.generators << "\n";
  auto line = [&](const Word& w) {
    for (Index i = 0; i < w.size(); ++i) {
      if (i) os << ' ';
      os << (w[i].inverse ? "-" : "") << (w[i].generator + 1);
    }
    os << "\n";
  };
  for (const Word& w : p.relators) line(w);
  line(p.pointed_relator);
}

/// Reads the relator list back; the unit map is the identity.
inline Presentation read_presentation(std::istream& is) {
  Presentation p;
  std::string header, word;
  if (!(is >> header >> word >> p.generators) || header != "#" || word != "generators")
    throw std::runtime_error("presentation: missing '# generators N' header");
  std::string line;
  std::getline(is, line);
  std::vector<Word> words;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Word w;
    long long v = 0;
    while (ls >> v) {
      if (v == 0 || static_cast<Index>(v < 0 ? -v : v) > p.generators)
        throw std::runtime_error("presentation: letter out of range: " + std::to_string(v));
      w.push_back({static_cast<Index>((v < 0 ? -v : v) - 1), v < 0});
    }
    if (!ls.eof()) throw std::runtime_error("presentation: malformed line: " + line);
    words.push_back(std::move(w));
  }
  if (words.empty() || words.back().size() != 1)
    throw std::runtime_error("presentation: missing pointed relator");
  p.pointed_relator = words.back();
  p.basepoint = p.pointed_relator.front().generator;
  words.pop_back();
  p.relators = std::move(words);
  p.unit.resize(p.generators);
  std::iota(p.unit.begin(), p.unit.end(), Index{0});
  return p;
}

/// Explicit, duplicate-free, lexicographically ordered list of maps.
struct HomSet {
  std::vector<std::vector<Index>> maps;

  Index count() const noexcept { return maps.size(); }
  bool contains(const std::vector<Index>& m) const {
    return std::binary_search(maps.begin(), maps.end(), m);
  }
};

/// All pointed rack homomorphisms X → Y, by backtracking over X in index
/// order with the hom law checked on every fully assigned pair.
inline HomSet enumerate_rack_homs(const FiniteRack& x, const FiniteRack& y) {
  const Index n = x.size();
  constexpr Index kNone = static_cast<Index>(-1);
  std::vector<Index> map(n, kNone);
  HomSet out;
  auto consistent = [&](Index a) {
    for (Index b = 0; b < n; ++b) {
      if (map[b] == kNone) continue;
      for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
        const Index w = x.op(u, v);
        if (map[w] != kNone && map[w] != y.op(map[u], map[v])) return false;
      }
    }
    return true;
  };
  std::function<void(Index)> assign = [&](Index a) {
    if (a == n) {
      out.maps.push_back(map);
      return;
    }
    for (Index v = 0; v < y.size(); ++v) {
      if (a == x.basepoint() && v != y.basepoint()) continue;
      map[a] = v;
      if (consistent(a)) assign(a + 1);
      map[a] = kNone;
    }
  };
  assign(0);
  return out;
}

/// All assignments generators → G under which every relator, including the
/// pointed one, evaluates to the identity: these are the homs As(X) → G.
inline HomSet enumerate_presented_homs(const Presentation& p, const FiniteGroup& g) {
  const Index n = p.generators;
  // relators grouped by the largest generator they mention
  std::vector<std::vector<const Word*>> ready(n);
  auto file = [&](const Word& w) {
    Index top = 0;
    for (const Letter& l : w) top = std::max(top, l.generator);
    if (!w.empty()) ready[top].push_back(&w);
  };
  for (const Word& w : p.relators) file(w);
  file(p.pointed_relator);

  std::vector<Index> assignment(n, g.identity());
  HomSet out;
  std::function<void(Index)> assign = [&](Index k) {
    if (k == n) {
      out.maps.push_back(assignment);
      return;
    }
    for (Index v = 0; v < g.size(); ++v) {
      assignment[k] = v;
      bool ok = true;
      for (const Word* w : ready[k])
        if (evaluate(*w, assignment, g) != g.identity()) {
          ok = false;
          break;
        }
      if (ok) assign(k + 1);
    }
  };
  if (n > 0) assign(0);
  return out;
}

struct AdjunctionReport {
  Index rack_side = 0;
  Index group_side = 0;
  std::vector<std::vector<Index>> matched;
  std::vector<std::vector<Index>> unmatched_rack_side;
  std::vector<std::vector<Index>> unmatched_group_side;
  bool passed = false;
};

namespace detail {

inline AdjunctionReport match(std::vector<std::vector<Index>> rack_side,
                              std::vector<std::vector<Index>> group_side) {
  AdjunctionReport r;
  std::sort(rack_side.begin(), rack_side.end());
  std::sort(group_side.begin(), group_side.end());
  r.rack_side = rack_side.size();
  r.group_side = group_side.size();
  std::set_intersection(rack_side.begin(), rack_side.end(), group_side.begin(), group_side.end(),
                        std::back_inserter(r.matched));
  std::set_difference(rack_side.begin(), rack_side.end(), group_side.begin(), group_side.end(),
                      std::back_inserter(r.unmatched_rack_side));
  std::set_difference(group_side.begin(), group_side.end(), rack_side.begin(), rack_side.end(),
                      std::back_inserter(r.unmatched_group_side));
  r.passed = r.unmatched_rack_side.empty() && r.unmatched_group_side.empty();
  return r;
}

}  // namespace detail

/// Hom(X, Conj(G)) against Hom(As(X), G), matched through the unit map.
inline AdjunctionReport check_adjunction_bijection(const FiniteRack& x, const FiniteGroup& g) {
  auto rack_side = enumerate_rack_homs(x, conj_rack(g)).maps;
  auto group_side = enumerate_presented_homs(as_presentation(x), g).maps;
  return detail::match(std::move(rack_side), std::move(group_side));
}

/// Rack crossed-module morphisms X → Conj_X(G) against generator-level
/// morphisms As_X(X) → G. A pair (f1, f0) is flattened as f1 followed by f0.
inline AdjunctionReport check_xmod_adjunction(const RackXMod& x, const GroupXMod& g) {
  const auto target = conj_xmod(g);
  std::vector<std::vector<Index>> rack_side, group_side;

  const auto f1s = enumerate_rack_homs(x.domain(), target.domain());
  const auto f0s = enumerate_rack_homs(x.codomain(), target.codomain());
  for (const auto& f1 : f1s.maps)
    for (const auto& f0 : f0s.maps)
      if (!RackXModMorphism::check(x, target, f1, f0)) {
        auto flat = f1;
        flat.insert(flat.end(), f0.begin(), f0.end());
        rack_side.push_back(std::move(flat));
      }

  const auto a1s = enumerate_presented_homs(as_presentation(x.domain()), g.domain());
  const auto a0s = enumerate_presented_homs(as_presentation(x.codomain()), g.codomain());
  const Index nr = x.domain().size(), ns = x.codomain().size();
  for (const auto& a1 : a1s.maps)
    for (const auto& a0 : a0s.maps) {
      bool ok = true;
      for (Index r = 0; r < nr && ok; ++r) ok = g.boundary()(a1[r]) == a0[x.boundary()(r)];
      for (Index r = 0; r < nr && ok; ++r)
        for (Index s = 0; s < ns && ok; ++s) ok = a1[x.act(r, s)] == g.act(a1[r], a0[s]);
      if (!ok) continue;
      auto flat = a1;
      flat.insert(flat.end(), a0.begin(), a0.end());
      group_side.push_back(std::move(flat));
    }
  return detail::match(std::move(rack_side), std::move(group_side));
}

}  // namespace rackx
