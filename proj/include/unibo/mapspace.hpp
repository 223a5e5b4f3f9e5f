#pragma once

// Function-space entourages on a finite set of maps M:
//
//   E_{A,E} = {(f,g) : ∀x ∈ A, (f(x), g(x)) ∈ E}
//
// and, with biconvergence, additionally (f⁻¹(x), g⁻¹(x)) ∈ E. Topologies are
// represented only through balls around the identity map in M.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unibo/core.hpp"
#include "unibo/relalg.hpp"
#include "unibo/ulb.hpp"
#include "unibo/unif.hpp"

namespace unibo {

class MapSet {
 public:
  explicit MapSet(std::vector<CarrierMap> maps) : maps_(std::move(maps)) {
    if (maps_.empty()) throw Error("a map set needs at least one map");
    if (maps_.size() > kMaxCarrier) throw Error("map sets are limited to " + std::to_string(kMaxCarrier) + " maps");
    for (const auto& m : maps_)
      if (m.size() != maps_.front().size()) throw CarrierMismatch(maps_.front().size(), m.size());
    all_bijective_ = std::all_of(maps_.begin(), maps_.end(), [](const CarrierMap& m) { return m.bijective(); });
    contains_identity_ = index_of(CarrierMap::identity(carrier())).has_value();
    closed_ = true;
    for (const auto& f : maps_)
      for (const auto& g : maps_)
        if (!index_of(compose(f, g))) closed_ = false;
  }

  /// All n^n self-maps, in lexicographic table order.
  static MapSet all_endomaps(std::size_t n) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= n;
    if (total > kMaxCarrier) throw Error("too many endomaps");
    std::vector<CarrierMap> maps;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<std::size_t> t(n);
      std::size_t c = code;
      for (std::size_t x = n; x-- > 0;) {
        t[x] = c % n;
        c /= n;
      }
      maps.emplace_back(std::move(t));
    }
    return MapSet(std::move(maps));
  }

  static MapSet all_permutations(std::size_t n) {
    std::vector<std::size_t> t(n);
    for (std::size_t x = 0; x < n; ++x) t[x] = x;
    std::vector<CarrierMap> maps;
    do {
      maps.emplace_back(t);
      if (maps.size() > kMaxCarrier) throw Error("too many permutations");
    } while (std::next_permutation(t.begin(), t.end()));
    return MapSet(std::move(maps));
  }

  std::size_t size() const { return maps_.size(); }
  std::size_t carrier() const { return maps_.front().size(); }
  const CarrierMap& operator[](std::size_t i) const { return maps_.at(i); }
  const std::vector<CarrierMap>& maps() const { return maps_; }

  bool closed_under_composition() const { return closed_; }
  bool all_bijective() const { return all_bijective_; }
  bool contains_identity() const { return contains_identity_; }

  std::optional<std::size_t> index_of(const CarrierMap& f) const {
    for (std::size_t i = 0; i < maps_.size(); ++i)
      if (maps_[i] == f) return i;
    return std::nullopt;
  }

  std::size_t identity_index() const {
    auto i = index_of(CarrierMap::identity(carrier()));
    if (!i) throw PreconditionError("identity map absent from the map set");
    return *i;
  }

 private:
  std::vector<CarrierMap> maps_;
  bool closed_ = false;
  bool all_bijective_ = false;
  bool contains_identity_ = false;
};

/// Direct predicate (f,g) ∈ E_{A,E} (with inverses when `bi`), for maps that
/// need not belong to any MapSet.
inline bool in_big_e(const CarrierMap& f, const CarrierMap& g, Subset a, const Relation& e, bool bi = false) {
  bool ok = true;
  a.for_each([&](std::size_t x) { ok = ok && e.contains(f(x), g(x)); });
  if (ok && bi) {
    CarrierMap fi = f.inverse(), gi = g.inverse();
    a.for_each([&](std::size_t x) { ok = ok && e.contains(fi(x), gi(x)); });
  }
  return ok;
}

struct FunctionEntourage {
  Relation relation;  ///< on MapSet indices
  Subset domain;
  std::optional<std::size_t> level;
  bool bi = false;
};

inline FunctionEntourage big_e(const MapSet& m, Subset a, const Relation& e, bool bi) {
  if (e.size() != m.carrier()) throw CarrierMismatch(m.carrier(), e.size());
  if (bi && !m.all_bijective()) throw PreconditionError("biconvergence requires a set of bijections");
  std::vector<CarrierMap> inverses;
  if (bi)
    for (const auto& f : m.maps()) inverses.push_back(f.inverse());
  Relation r(m.size());
  for (std::size_t p = 0; p < m.size(); ++p)
    for (std::size_t q = 0; q < m.size(); ++q) {
      bool ok = true;
      a.for_each([&](std::size_t x) {
        ok = ok && e.contains(m[p](x), m[q](x)) && (!bi || e.contains(inverses[p](x), inverses[q](x)));
      });
      if (ok) r.insert(p, q);
    }
  return {std::move(r), a, std::nullopt, bi};
}

inline FunctionEntourage big_e(const UniformFiltration& fl, const MapSet& m, Subset a, std::size_t level, bool bi) {
  auto fe = big_e(m, a, fl.level(level), bi);
  fe.level = level;
  return fe;
}

/// Memoised E_{A,E_i} relations for one filtration and map set.
class EntourageTable {
 public:
  EntourageTable(const UniformFiltration& fl, const MapSet& m, bool bi = false) : fl_(fl), m_(m), bi_(bi) {}

  const Relation& get(Subset a, std::size_t level) {
    auto key = std::make_pair(a.bits(), level);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, big_e(fl_, m_, a, level, bi_).relation).first;
    return it->second;
  }

 private:
  const UniformFiltration& fl_;
  const MapSet& m_;
  bool bi_;
  std::map<std::pair<std::uint64_t, std::size_t>, Relation> cache_;
};

/// Identity ball {f : (id, f) ∈ E} as a set of map indices.
inline Subset identity_ball(const MapSet& m, const Relation& e) { return e.row(m.identity_index()); }

struct FamilyTally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_witness;

  void record(bool ok, const std::string& witness) {
    ++checks;
    if (!ok && failures++ == 0) first_witness = witness;
  }
};

struct LemmaReport {
  FamilyTally composition;   ///< E_{A,E} ∘ E_{B,F} ⊆ E_{A∩B, E∘F}
  FamilyTally idempotent;    ///< E∘E = E  ⇒  E_{A,E}∘E_{A,E} = E_{A,E}
  FamilyTally conjugation;   ///< g E_{A,E} g⁻¹ ⊆ E_{gA, gE}
  FamilyTally separation;    ///< Hausdorff-at-resolution ⇔ finest E_{X,E_k} is map equality

  bool passed() const {
    return composition.failures + idempotent.failures + conjugation.failures + separation.failures == 0;
  }
};

/// The function-space identities behind non-Archimedean propagation, the SIN
/// criterion and Hausdorff transfer, checked exhaustively over every basis
/// set and level (and pairs of them).
inline LemmaReport lemma_suite(const UlbSpace& s, const MapSet& m) {
  const auto& fl = s.filtration();
  const auto& basis = s.bornology().sets();
  const std::size_t n = s.carrier();
  if (m.carrier() != n) throw CarrierMismatch(n, m.carrier());
  LemmaReport rep;
  std::vector<bool> bis{false};
  if (m.all_bijective()) bis.push_back(true);

  for (bool bi : bis) {
    for (Subset a : basis)
      for (Subset b : basis)
        for (std::size_t i = 0; i <= fl.depth(); ++i)
          for (std::size_t j = 0; j <= fl.depth(); ++j) {
            Relation lhs = compose(big_e(fl, m, a, i, bi).relation, big_e(fl, m, b, j, bi).relation);
            Relation rhs = big_e(m, a & b, compose(fl.level(i), fl.level(j)), bi).relation;
            rep.composition.record(lhs.subset_of(rhs), "A=" + to_string(a) + " B=" + to_string(b) + " i=" +
                                                            std::to_string(i) + " j=" + std::to_string(j) +
                                                            (bi ? " bi" : ""));
          }
    for (Subset a : basis)
      for (std::size_t i = 0; i <= fl.depth(); ++i) {
        if (!is_idempotent(fl.level(i))) continue;
        Relation e = big_e(fl, m, a, i, bi).relation;
        rep.idempotent.record(compose(e, e) == e, "A=" + to_string(a) + " i=" + std::to_string(i));
      }
  }

  for (std::size_t gi = 0; gi < m.size(); ++gi) {
    const CarrierMap& g = m[gi];
    if (!g.bijective()) continue;
    CarrierMap ginv = g.inverse();
    for (Subset a : basis)
      for (std::size_t i = 0; i <= fl.depth(); ++i) {
        Relation e = big_e(fl, m, a, i, false).relation;
        Subset ga = g.image(a);
        Relation ge = g.image(fl.level(i));
        for (std::size_t p = 0; p < m.size(); ++p)
          e.row(p).for_each([&](std::size_t q) {
            CarrierMap cp = compose(compose(g, m[p]), ginv);
            CarrierMap cq = compose(compose(g, m[q]), ginv);
            rep.conjugation.record(in_big_e(cp, cq, ga, ge), "g=" + std::to_string(gi) + " A=" + to_string(a) +
                                                                 " i=" + std::to_string(i) + " pair=(" +
                                                                 std::to_string(p) + "," + std::to_string(q) + ")");
          });
      }
  }

  const Subset everything = Subset::full(n);
  const Relation& finest = fl.finest();
  const bool hausdorff = finest == Relation::diagonal(n);
  if (hausdorff) {
    Relation e = big_e(fl, m, everything, fl.depth(), false).relation;
    for (std::size_t p = 0; p < m.size(); ++p)
      for (std::size_t q = 0; q < m.size(); ++q)
        rep.separation.record(e.contains(p, q) == (m[p] == m[q]), "pair=(" + std::to_string(p) + "," + std::to_string(q) + ")");
  } else {
    // The transposition of an inseparable pair lies in every identity ball.
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        if (!finest.contains(x, y)) continue;
        std::vector<std::size_t> t(n);
        for (std::size_t z = 0; z < n; ++z) t[z] = z;
        std::swap(t[x], t[y]);
        CarrierMap swap(std::move(t));
        CarrierMap id = CarrierMap::identity(n);
        bool inside = true;
        for (std::size_t i = 0; i <= fl.depth(); ++i) inside = inside && in_big_e(id, swap, everything, fl.level(i), true);
        rep.separation.record(inside && !(swap == id), "swap (" + std::to_string(x) + " " + std::to_string(y) + ")");
      }
  }
  return rep;
}

struct ContinuityWitness {
  std::size_t source_level = 0;      ///< j
  std::size_t half_step_level = 0;   ///< i′, with E_{i′} bounded and E_{i′}∘E_{i′} ⊆ E_i
  Subset expanded_set;               ///< B′ = E_{i′}[h(B)]
};

struct ContinuityOutcome {
  std::optional<ContinuityWitness> witness;  ///< absent: resolution exhausted
  std::size_t pairs_checked = 0;
  bool sound = true;
  std::string counterexample;

  Verdict verdict() const {
    if (!witness) return Verdict::resolution_exhausted;
    return sound ? Verdict::pass : Verdict::fail;
  }
};

/// Builds the joint-continuity witness for composition at (g, h) following
/// the classical argument: F′ = E_{i′} bounded with F′∘F′ ⊆ E_i, B′ = F′[h(B)],
/// and j ≥ i′ from the continuity modulus of g on B′ into F′. Then checks,
/// over every (g′, h′) ∈ M×M, that (g,g′) ∈ E_{B′,E_j} and (h,h′) ∈ E_{B,E_j}
/// imply (g∘h, g′∘h′) ∈ E_{B,E_i}.
inline ContinuityOutcome composition_continuity_witness(const UlbSpace& s, const MapSet& m, const CarrierMap& g,
                                                        const CarrierMap& h, Subset b, std::size_t target,
                                                        EntourageTable& table) {
  if (!s.certified()) throw PreconditionError("space is not certified uniformly locally bounded");
  auto gi = m.index_of(g);
  auto hi = m.index_of(h);
  if (!gi || !hi) throw PreconditionError("g and h must belong to the map set");
  const auto& fl = s.filtration();
  if (target > fl.depth()) throw PreconditionError("target level beyond the filtration");

  ContinuityOutcome out;
  const std::size_t half = std::max(target + 1, *s.certified_index());
  if (half > fl.depth()) return out;
  const Subset expanded = image(fl.level(half), h.image(b));
  std::optional<std::size_t> source;
  for (std::size_t j = half; j <= fl.depth() && !source; ++j)
    if (maps_into(g, fl.level(j), expanded, fl.level(half))) source = j;
  if (!source) return out;
  out.witness = ContinuityWitness{*source, half, expanded};

  const Relation& near_g = table.get(expanded, *source);
  const Relation& near_h = table.get(b, *source);
  const Relation& goal = fl.level(target);
  for (std::size_t gp = 0; gp < m.size(); ++gp)
    for (std::size_t hp = 0; hp < m.size(); ++hp) {
      ++out.pairs_checked;
      if (!near_g.contains(*gi, gp) || !near_h.contains(*hi, hp)) continue;
      bool ok = true;
      b.for_each([&](std::size_t x) { ok = ok && goal.contains(g(h(x)), m[gp](m[hp](x))); });
      if (!ok && out.sound) {
        out.sound = false;
        out.counterexample = "g'=" + std::to_string(gp) + " h'=" + std::to_string(hp);
      }
    }
  return out;
}

inline ContinuityOutcome composition_continuity_witness(const UlbSpace& s, const MapSet& m, const CarrierMap& g,
                                                        const CarrierMap& h, Subset b, std::size_t target) {
  EntourageTable table(s.filtration(), m);
  return composition_continuity_witness(s, m, g, h, b, target, table);
}

enum class BasisOrder { finer, coarser, equivalent, incomparable };

inline std::string_view to_string(BasisOrder o) {
  switch (o) {
    case BasisOrder::finer: return "finer";
    case BasisOrder::coarser: return "coarser";
    case BasisOrder::equivalent: return "equivalent";
    case BasisOrder::incomparable: return "incomparable";
  }
  return "?";
}

struct BasisComparison {
  BasisOrder order = BasisOrder::equivalent;
  bool first_discrete = false;
  bool second_discrete = false;
};

namespace detail {

inline bool balls_finer(const std::vector<Subset>& a, const std::vector<Subset>& b) {
  for (Subset bb : b) {
    bool found = false;
    for (Subset ab : a) found = found || ab.subset_of(bb);
    if (!found) return false;
  }
  return true;
}

}  // namespace detail

/// Compares the identity-neighbourhood filters generated by two lists of
/// reflexive function entourages on the same map set.
inline BasisComparison compare_neighborhood_bases(const MapSet& m, const std::vector<FunctionEntourage>& first,
                                                  const std::vector<FunctionEntourage>& second) {
  const std::size_t id = m.identity_index();
  auto balls = [&](const std::vector<FunctionEntourage>& basis) {
    std::vector<Subset> out;
    for (const auto& fe : basis) {
      if (fe.relation.size() != m.size()) throw CarrierMismatch(m.size(), fe.relation.size());
      if (!is_reflexive(fe.relation)) throw PreconditionError("function entourage is not reflexive");
      out.push_back(identity_ball(m, fe.relation));
    }
    return out;
  };
  auto b1 = balls(first), b2 = balls(second);
  BasisComparison c;
  auto discrete = [&](const std::vector<Subset>& bs) {
    for (Subset b : bs)
      if (b == Subset::singleton(id)) return true;
    return false;
  };
  c.first_discrete = discrete(b1);
  c.second_discrete = discrete(b2);
  bool f12 = detail::balls_finer(b1, b2), f21 = detail::balls_finer(b2, b1);
  c.order = f12 && f21 ? BasisOrder::equivalent
            : f12      ? BasisOrder::finer
            : f21      ? BasisOrder::coarser
                       : BasisOrder::incomparable;
  return c;
}

/// With E idempotent and E[B] = B, the biconvergence ball
/// {f : ∀x∈B, (f(x),x) ∈ E and (f⁻¹(x),x) ∈ E} is a subgroup.
inline Outcome open_subgroup_check(const UniformFiltration& fl, const MapSet& m, Subset b, std::size_t level) {
  const Relation& e = fl.level(level);
  if (!m.all_bijective()) return {Verdict::precondition_unmet, "map set contains a non-bijection"};
  if (!is_idempotent(e)) return {Verdict::precondition_unmet, "level " + std::to_string(level) + " is not idempotent"};
  if (image(e, b) != b) return {Verdict::precondition_unmet, "E[B] != B for B=" + to_string(b)};
  auto in_ball = [&](const CarrierMap& f) {
    CarrierMap fi = f.inverse();
    bool ok = true;
    b.for_each([&](std::size_t x) { ok = ok && e.contains(f(x), x) && e.contains(fi(x), x); });
    return ok;
  };
  std::vector<std::size_t> ball;
  for (std::size_t p = 0; p < m.size(); ++p)
    if (in_ball(m[p])) ball.push_back(p);
  if (!in_ball(CarrierMap::identity(m.carrier()))) return {Verdict::fail, "identity outside the ball"};
  for (auto p : ball) {
    if (!in_ball(m[p].inverse())) return {Verdict::fail, "inverse of map " + std::to_string(p) + " leaves the ball"};
    for (auto q : ball)
      if (!in_ball(compose(m[p], m[q])))
        return {Verdict::fail, "product of maps " + std::to_string(p) + "," + std::to_string(q) + " leaves the ball"};
  }
  return {Verdict::pass, "ball size " + std::to_string(ball.size())};
}

/// When every g ∈ M preserves A and E_i, the ball M ∩ E_{A,E_i}[id] is
/// invariant under conjugation by M.
inline Outcome sin_criterion_check(const UniformFiltration& fl, const MapSet& m, Subset a, std::size_t level) {
  const Relation& e = fl.level(level);
  if (!m.all_bijective()) return {Verdict::precondition_unmet, "map set contains a non-bijection"};
  for (std::size_t g = 0; g < m.size(); ++g) {
    if (m[g].image(a) != a) return {Verdict::precondition_unmet, "map " + std::to_string(g) + " moves A"};
    if (m[g].image(e) != e) return {Verdict::precondition_unmet, "map " + std::to_string(g) + " moves E_" + std::to_string(level)};
  }
  const CarrierMap id = CarrierMap::identity(m.carrier());
  for (std::size_t f = 0; f < m.size(); ++f) {
    if (!in_big_e(id, m[f], a, e)) continue;
    for (std::size_t g = 0; g < m.size(); ++g) {
      CarrierMap conj = compose(compose(m[g], m[f]), m[g].inverse());
      if (!in_big_e(id, conj, a, e))
        return {Verdict::fail, "conjugate of map " + std::to_string(f) + " by map " + std::to_string(g) + " leaves the ball"};
    }
  }
  return {Verdict::pass, ""};
}

}  // namespace unibo
