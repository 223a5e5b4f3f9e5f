#pragma once

// Finite group models with explicit identity filtrations, the four group
// uniformities (left, right, upper, lower/Roelcke) and the identities that
// compare the resulting topologies on automorphism groups.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unibo/core.hpp"
#include "unibo/mapspace.hpp"
#include "unibo/relalg.hpp"
#include "unibo/ulb.hpp"
#include "unibo/unif.hpp"

namespace unibo {

class GroupModel {
 public:
  /// `table[a][b]` is the index of a·b. Validates the group laws.
  explicit GroupModel(std::vector<std::vector<std::size_t>> table, std::vector<std::string> names = {})
      : table_(std::move(table)), names_(std::move(names)) {
    const std::size_t n = table_.size();
    if (n == 0 || n > kMaxCarrier) throw Error("group order must be in 1.." + std::to_string(kMaxCarrier));
    for (const auto& row : table_) {
      if (row.size() != n) throw Error("Cayley table is not square");
      for (auto v : row)
        if (v >= n) throw Error("Cayley table entry out of range");
    }
    std::optional<std::size_t> e;
    for (std::size_t a = 0; a < n && !e; ++a) {
      bool ok = true;
      for (std::size_t b = 0; b < n; ++b) ok = ok && table_[a][b] == b && table_[b][a] == b;
      if (ok) e = a;
    }
    if (!e) throw Error("Cayley table has no identity");
    identity_ = *e;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) throw Error("Cayley table is not associative");
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    for (std::size_t a = 0; a < n; ++a)
      if (inverse_[a] == n) throw Error("element " + std::to_string(a) + " has no inverse");
    if (names_.empty())
      for (std::size_t a = 0; a < n; ++a) names_.push_back(std::to_string(a));
  }

  /// Closure of permutation generators under composition (a·b = a∘b).
  static GroupModel from_permutations(const std::vector<std::vector<std::size_t>>& generators) {
    using Perm = std::vector<std::size_t>;
    const std::size_t deg = generators.front().size();
    Perm id(deg);
    for (std::size_t x = 0; x < deg; ++x) id[x] = x;
    auto mul = [&](const Perm& a, const Perm& b) {
      Perm c(deg);
      for (std::size_t x = 0; x < deg; ++x) c[x] = a[b[x]];
      return c;
    };
    std::vector<Perm> elems{id};
    for (std::size_t k = 0; k < elems.size(); ++k)
      for (const auto& g : generators) {
        Perm p = mul(elems[k], g);
        if (std::find(elems.begin(), elems.end(), p) == elems.end()) elems.push_back(p);
        if (elems.size() > kMaxCarrier) throw Error("generated group too large");
      }
    std::sort(elems.begin(), elems.end());
    std::vector<std::vector<std::size_t>> table(elems.size(), std::vector<std::size_t>(elems.size()));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < elems.size(); ++a) {
      std::string nm = "[";
      for (std::size_t x = 0; x < deg; ++x) nm += std::to_string(elems[a][x]);
      names.push_back(nm + "]");
      for (std::size_t b = 0; b < elems.size(); ++b)
        table[a][b] = static_cast<std::size_t>(std::find(elems.begin(), elems.end(), mul(elems[a], elems[b])) - elems.begin());
    }
    return GroupModel(std::move(table), std::move(names));
  }

  static GroupModel cyclic(std::size_t n) {
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return GroupModel(std::move(t));
  }

  /// Sym(3) as permutations of {0,1,2}; index 0 is the identity.
  static GroupModel symmetric3() { return from_permutations({{1, 0, 2}, {1, 2, 0}}); }

  /// Symmetries of a square acting on its vertices 0..3.
  static GroupModel dihedral4() { return from_permutations({{1, 2, 3, 0}, {0, 3, 2, 1}}); }

  /// Unit quaternions ±1, ±i, ±j, ±k; element 2u + s is (−1)^s times unit u (1,i,j,k).
  static GroupModel quaternion8() {
    // unit products: u*v = sign * w
    static constexpr int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static constexpr int neg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
    for (std::size_t a = 0; a < 8; ++a)
      for (std::size_t b = 0; b < 8; ++b) {
        std::size_t ua = a / 2, ub = b / 2;
        std::size_t s = (a % 2 + b % 2 + static_cast<std::size_t>(neg[ua][ub])) % 2;
        t[a][b] = 2 * static_cast<std::size_t>(unit[ua][ub]) + s;
      }
    return GroupModel(std::move(t), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
  }

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  const std::string& name(std::size_t a) const { return names_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  Subset everything() const { return Subset::full(order()); }
  Subset identity_set() const { return Subset::singleton(identity_); }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::string> names_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

/// A·B.
inline Subset product(const GroupModel& g, Subset a, Subset b) {
  Subset out;
  a.for_each([&](std::size_t x) { b.for_each([&](std::size_t y) { out.insert(g.mul(x, y)); }); });
  return out;
}

inline Subset inverse_set(const GroupModel& g, Subset a) {
  Subset out;
  a.for_each([&](std::size_t x) { out.insert(g.inv(x)); });
  return out;
}

inline bool is_symmetric_set(const GroupModel& g, Subset v) { return inverse_set(g, v) == v; }

/// Every subset closed under inversion (optionally required to contain e).
inline std::vector<Subset> symmetric_subsets(const GroupModel& g, bool with_identity = false) {
  std::vector<Subset> classes;
  Subset seen;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (seen.contains(x)) continue;
    Subset c = Subset::singleton(x) | Subset::singleton(g.inv(x));
    classes.push_back(c);
    seen = seen | c;
  }
  std::vector<Subset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << classes.size()); ++mask) {
    Subset s;
    for (std::size_t c = 0; c < classes.size(); ++c)
      if ((mask >> c) & 1u) s = s | classes[c];
    if (!with_identity || s.contains(g.identity())) out.push_back(s);
  }
  return out;
}

enum class GroupUniformity { left, right, upper, lower };

inline std::string_view to_string(GroupUniformity k) {
  switch (k) {
    case GroupUniformity::left: return "left";
    case GroupUniformity::right: return "right";
    case GroupUniformity::upper: return "upper";
    case GroupUniformity::lower: return "lower";
  }
  return "?";
}

/// L: x⁻¹y ∈ V; R: xy⁻¹ ∈ V; upper: L ∩ R; lower: x ∈ VyV.
inline Relation group_entourage(const GroupModel& g, Subset v, GroupUniformity kind) {
  if (!v.contains(g.identity())) throw PreconditionError("identity neighbourhood must contain the identity");
  if (!is_symmetric_set(g, v)) throw PreconditionError("identity neighbourhood must be symmetric");
  const std::size_t n = g.order();
  Relation r(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      bool left = v.contains(g.mul(g.inv(x), y));
      bool right = v.contains(g.mul(x, g.inv(y)));
      bool in = false;
      switch (kind) {
        case GroupUniformity::left: in = left; break;
        case GroupUniformity::right: in = right; break;
        case GroupUniformity::upper: in = left && right; break;
        case GroupUniformity::lower: in = product(g, product(g, v, Subset::singleton(y)), v).contains(x); break;
      }
      if (in) r.insert(x, y);
    }
  return r;
}

/// V_0 ⊇ V_1 ⊇ ... ⊇ V_k of symmetric identity-containing sets with V_{i+1}V_{i+1} ⊆ V_i.
class IdentityFiltration {
 public:
  explicit IdentityFiltration(std::vector<Subset> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw Error("identity filtration needs a level");
  }
  std::size_t depth() const { return levels_.size() - 1; }
  Subset level(std::size_t i) const { return levels_.at(i); }
  const std::vector<Subset>& levels() const { return levels_; }

 private:
  std::vector<Subset> levels_;
};

inline std::vector<std::string> validate_identity_filtration(const GroupModel& g, const IdentityFiltration& f) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i <= f.depth(); ++i) {
    Subset v = f.level(i);
    if (!v.subset_of(g.everything())) out.push_back("level " + std::to_string(i) + " leaves the group");
    if (!v.contains(g.identity())) out.push_back("level " + std::to_string(i) + " misses the identity");
    if (!is_symmetric_set(g, v)) out.push_back("level " + std::to_string(i) + " is not symmetric");
    if (i < f.depth() && !product(g, f.level(i + 1), f.level(i + 1)).subset_of(v))
      out.push_back("V_" + std::to_string(i + 1) + "^2 not inside V_" + std::to_string(i));
  }
  return out;
}

inline UniformFiltration to_uniform(const GroupModel& g, const IdentityFiltration& f, GroupUniformity kind) {
  std::vector<Relation> levels;
  for (Subset v : f.levels()) levels.push_back(group_entourage(g, v, kind));
  return UniformFiltration(std::move(levels));
}

/// γ(x)(y) = x y x⁻¹.
inline CarrierMap conjugation(const GroupModel& g, std::size_t x) {
  std::vector<std::size_t> t(g.order());
  for (std::size_t y = 0; y < g.order(); ++y) t[y] = g.mul(g.mul(x, y), g.inv(x));
  return CarrierMap(std::move(t));
}

inline bool is_automorphism(const GroupModel& g, const CarrierMap& f) {
  if (f.size() != g.order() || !f.bijective()) return false;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (f(g.mul(a, b)) != g.mul(f(a), f(b))) return false;
  return true;
}

/// Distinct inner automorphisms γ(x).
inline std::vector<CarrierMap> inner_automorphisms(const GroupModel& g) {
  std::vector<CarrierMap> out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    CarrierMap c = conjugation(g, x);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

/// All automorphisms, by extending every assignment of images to a greedy
/// generating set. Identity first.
inline std::vector<CarrierMap> all_automorphisms(const GroupModel& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> gens;
  Subset span = g.identity_set();
  auto close = [&](Subset s) {
    for (;;) {
      Subset next = s | product(g, s, s);
      if (next == s) return s;
      s = next;
    }
  };
  for (std::size_t x = 0; x < n && span != g.everything(); ++x)
    if (!span.contains(x)) {
      gens.push_back(x);
      span = close(span | Subset::singleton(x));
    }
  std::vector<CarrierMap> out{CarrierMap::identity(n)};
  std::vector<std::size_t> images(gens.size(), 0);
  for (;;) {
    // extend generator images along words
    std::vector<std::size_t> f(n, n);
    f[g.identity()] = g.identity();
    std::vector<std::size_t> frontier{g.identity()};
    bool consistent = true;
    for (std::size_t k = 0; k < frontier.size() && consistent; ++k)
      for (std::size_t t = 0; t < gens.size() && consistent; ++t) {
        std::size_t w = g.mul(frontier[k], gens[t]);
        std::size_t fw = g.mul(f[frontier[k]], images[t]);
        if (f[w] == n) {
          f[w] = fw;
          frontier.push_back(w);
        } else if (f[w] != fw) {
          consistent = false;
        }
      }
    if (consistent) {
      CarrierMap m(f);
      if (is_automorphism(g, m) && std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
    }
    std::size_t pos = 0;
    while (pos < images.size() && ++images[pos] == n) images[pos++] = 0;
    if (pos == images.size()) break;
  }
  return out;
}

struct IdentityCheckReport {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string counterexample;

  bool passed() const { return failures == 0; }
  void record(bool ok, const std::string& w) {
    ++checks;
    if (!ok && failures++ == 0) counterexample = w;
  }
};

/// For automorphisms f, g:  ∀x∈B f(x)⁻¹g(x) ∈ V  ⇔  ∀x∈B⁻¹ f(x)g(x)⁻¹ ∈ V.
inline IdentityCheckReport lru_agree_check(const GroupModel& g, const std::vector<CarrierMap>& auts,
                                           const IdentityFiltration& f, const std::vector<Subset>& basis) {
  for (Subset b : basis)
    if (!is_symmetric_set(g, b)) throw PreconditionError("bornology basis set " + to_string(b) + " is not symmetric");
  IdentityCheckReport rep;
  for (std::size_t p = 0; p < auts.size(); ++p)
    for (std::size_t q = 0; q < auts.size(); ++q)
      for (Subset b : basis)
        for (std::size_t i = 0; i <= f.depth(); ++i) {
          Subset v = f.level(i);
          bool left = true, right = true;
          b.for_each([&](std::size_t x) { left = left && v.contains(g.mul(g.inv(auts[p](x)), auts[q](x))); });
          inverse_set(g, b).for_each([&](std::size_t x) { right = right && v.contains(g.mul(auts[p](x), g.inv(auts[q](x)))); });
          rep.record(left == right, "f=" + std::to_string(p) + " g=" + std::to_string(q) + " B=" + to_string(b) +
                                        " V=" + to_string(v));
        }
  return rep;
}

/// Least i with x V_i x⁻¹ ⊆ U for every x ∈ B.
inline std::optional<std::size_t> coarsely_sin_check(const GroupModel& g, const IdentityFiltration& f, Subset u, Subset b) {
  if (!u.contains(g.identity())) throw PreconditionError("U must contain the identity");
  for (std::size_t i = 0; i <= f.depth(); ++i) {
    bool ok = true;
    b.for_each([&](std::size_t x) {
      ok = ok && product(g, product(g, Subset::singleton(x), f.level(i)), Subset::singleton(g.inv(x))).subset_of(u);
    });
    if (ok) return i;
  }
  return std::nullopt;
}

struct UpperLowerReport {
  BasisComparison comparison;
  /// (B, V_i) pairs where the coarse-SIN recipe produced a lower ball inside the upper ball.
  std::size_t recipe_witnesses = 0;
  std::size_t recipe_exhausted = 0;
  std::size_t recipe_failures = 0;
  std::string counterexample;

  /// Upper is always at least as fine as lower; when the recipe covers every
  /// pair the two must be equivalent.
  bool consistent() const {
    bool upper_finer = comparison.order == BasisOrder::finer || comparison.order == BasisOrder::equivalent;
    bool covered = recipe_exhausted == 0 && recipe_failures == 0;
    return upper_finer && recipe_failures == 0 && (!covered || comparison.order == BasisOrder::equivalent);
  }
};

/// Upper versus lower biconvergence topologies on a finite automorphism
/// sample, plus the coarsely-SIN recipe: for U = V_i pick U′ = V_m with
/// U′U′ ⊆ U, then V_j with x V_j x⁻¹ ⊆ U′ on B; the lower ball at (B, V_j)
/// must lie inside the upper ball at (B, V_i).
inline UpperLowerReport upper_lower_compare(const GroupModel& g, const std::vector<CarrierMap>& auts,
                                            const IdentityFiltration& f, const std::vector<Subset>& basis) {
  MapSet m(auts);
  UniformFiltration upper = to_uniform(g, f, GroupUniformity::upper);
  UniformFiltration lower = to_uniform(g, f, GroupUniformity::lower);
  std::vector<FunctionEntourage> ub, lb;
  for (Subset b : basis)
    for (std::size_t i = 0; i <= f.depth(); ++i) {
      ub.push_back(big_e(upper, m, b, i, true));
      lb.push_back(big_e(lower, m, b, i, true));
    }
  UpperLowerReport rep;
  rep.comparison = compare_neighborhood_bases(m, ub, lb);
  const std::size_t id = m.identity_index();
  for (Subset b : basis) {
    if (!b.contains(g.identity()) || !is_symmetric_set(g, b)) continue;
    for (std::size_t i = 0; i <= f.depth(); ++i) {
      std::optional<std::size_t> half;
      for (std::size_t mm = f.depth() + 1; mm-- > 0;)
        if (product(g, f.level(mm), f.level(mm)).subset_of(f.level(i))) {
          half = mm;
          break;
        }
      std::optional<std::size_t> j;
      if (half) j = coarsely_sin_check(g, f, f.level(*half), b);
      if (!j) {
        ++rep.recipe_exhausted;
        continue;
      }
      Subset lower_ball = big_e(lower, m, b, *j, true).relation.row(id);
      Subset upper_ball = big_e(upper, m, b, i, true).relation.row(id);
      if (lower_ball.subset_of(upper_ball)) {
        ++rep.recipe_witnesses;
      } else if (rep.recipe_failures++ == 0) {
        rep.counterexample = "B=" + to_string(b) + " i=" + std::to_string(i) + " j=" + std::to_string(*j);
      }
    }
  }
  return rep;
}

/// γ(v) for v ∈ V lies in the lower ball at (B, V): γ(v)(x) ∈ VxV, and
/// likewise for γ(v)⁻¹; also cross-checked against the lower E_{B,V} ball.
inline IdentityCheckReport conjugation_continuity_check(const GroupModel& g, const std::vector<CarrierMap>& auts,
                                                        const IdentityFiltration& f, const std::vector<Subset>& basis) {
  MapSet m(auts);
  for (std::size_t x = 0; x < g.order(); ++x)
    if (!m.index_of(conjugation(g, x))) throw PreconditionError("automorphism list lacks inner automorphism of " + g.name(x));
  UniformFiltration lower = to_uniform(g, f, GroupUniformity::lower);
  const std::size_t id = m.identity_index();
  IdentityCheckReport rep;
  for (Subset b : basis)
    for (std::size_t i = 0; i <= f.depth(); ++i) {
      Subset v = f.level(i);
      Subset ball = big_e(lower, m, b, i, true).relation.row(id);
      (v & inverse_set(g, v)).for_each([&](std::size_t w) {
        CarrierMap c = conjugation(g, w);
        CarrierMap ci = c.inverse();
        bool ok = true;
        b.for_each([&](std::size_t x) {
          Subset vxv = product(g, product(g, v, Subset::singleton(x)), v);
          ok = ok && vxv.contains(c(x)) && vxv.contains(ci(x));
        });
        rep.record(ok && ball.contains(*m.index_of(c)),
                   "v=" + g.name(w) + " B=" + to_string(b) + " V=" + to_string(v));
      });
    }
  return rep;
}

/// Least k (1-based) with elements ⊆ V_k for an exhaustion prefix
/// V_1 ⊆ V_2 ⊆ ... with V_n V_n ⊆ V_{n+1}; absent when the prefix runs out.
inline std::optional<std::size_t> bounded_in_exhaustion(const GroupModel& g, Subset elements,
                                                        const std::vector<Subset>& exhaustion) {
  for (std::size_t n = 0; n + 1 < exhaustion.size(); ++n) {
    if (!exhaustion[n].subset_of(exhaustion[n + 1]))
      throw PreconditionError("exhaustion is not increasing at " + std::to_string(n + 1));
    if (!product(g, exhaustion[n], exhaustion[n]).subset_of(exhaustion[n + 1]))
      throw PreconditionError("exhaustion violates V_n^2 <= V_{n+1} at " + std::to_string(n + 1));
  }
  for (std::size_t n = 0; n < exhaustion.size(); ++n)
    if (elements.subset_of(exhaustion[n])) return n + 1;
  return std::nullopt;
}

/// V∧[B] = VBV for symmetric V.
inline bool roelcke_image_identity(const GroupModel& g, Subset v, Subset b) {
  return image(group_entourage(g, v, GroupUniformity::lower), b) == product(g, product(g, v, b), v);
}

/// Filtrations {G, V, {e}} for every symmetric identity-containing V.
inline std::vector<IdentityFiltration> three_step_filtrations(const GroupModel& g) {
  std::vector<IdentityFiltration> out;
  for (Subset v : symmetric_subsets(g, true)) out.emplace_back(std::vector<Subset>{g.everything(), v, g.identity_set()});
  return out;
}

}  // namespace unibo
