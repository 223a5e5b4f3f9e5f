#pragma once

// Uniformly locally bounded spaces at finite resolution: a filtration plus a
// bornology, certified by the coarsest level E_i with E_i[B] bounded for
// every basis set B. Morphisms are modest maps that are uniformly continuous
// on bounded sets.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "unibo/born.hpp"
#include "unibo/core.hpp"
#include "unibo/relalg.hpp"
#include "unibo/unif.hpp"

namespace unibo {

class CarrierMap {
 public:
  explicit CarrierMap(std::vector<std::size_t> table) : table_(std::move(table)) {
    if (table_.empty() || table_.size() > kMaxCarrier) throw Error("bad map size");
    for (auto y : table_)
      if (y >= table_.size()) throw Error("map value " + std::to_string(y) + " leaves the carrier");
    std::vector<std::size_t> inv(table_.size(), table_.size());
    bool bijective = true;
    for (std::size_t x = 0; x < table_.size(); ++x) {
      if (inv[table_[x]] != table_.size()) bijective = false;
      inv[table_[x]] = x;
    }
    if (bijective) inverse_ = std::move(inv);
  }

  static CarrierMap identity(std::size_t n) {
    std::vector<std::size_t> t(n);
    for (std::size_t x = 0; x < n; ++x) t[x] = x;
    return CarrierMap(std::move(t));
  }

  static CarrierMap constant(std::size_t n, std::size_t value) { return CarrierMap(std::vector<std::size_t>(n, value)); }

  std::size_t size() const { return table_.size(); }
  std::size_t operator()(std::size_t x) const { return table_.at(x); }
  const std::vector<std::size_t>& table() const { return table_; }
  bool bijective() const { return inverse_.has_value(); }

  CarrierMap inverse() const {
    if (!inverse_) throw PreconditionError("map is not bijective");
    return CarrierMap(*inverse_);
  }

  Subset image(Subset a) const {
    Subset out;
    a.for_each([&](std::size_t x) { out.insert(table_.at(x)); });
    return out;
  }

  /// (f×f)(R).
  Relation image(const Relation& r) const {
    if (r.size() != size()) throw CarrierMismatch(size(), r.size());
    Relation out(size());
    for (std::size_t x = 0; x < size(); ++x) r.row(x).for_each([&](std::size_t y) { out.insert(table_[x], table_[y]); });
    return out;
  }

  std::string literal() const {
    std::string out;
    for (std::size_t x = 0; x < size(); ++x) out += (x ? " " : "") + std::to_string(table_[x]);
    return out;
  }

  friend bool operator==(const CarrierMap& a, const CarrierMap& b) { return a.table_ == b.table_; }

 private:
  std::vector<std::size_t> table_;
  std::optional<std::vector<std::size_t>> inverse_;
};

/// (f ∘ g)(x) = f(g(x)).
inline CarrierMap compose(const CarrierMap& f, const CarrierMap& g) {
  if (f.size() != g.size()) throw CarrierMismatch(f.size(), g.size());
  std::vector<std::size_t> t(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) t[x] = f(g(x));
  return CarrierMap(std::move(t));
}

/// Least i with E_i[B] bounded for every basis set B.
inline std::optional<std::size_t> bounded_entourage_index(const UniformFiltration& f, const BornologyBasis& b) {
  if (f.carrier() != b.carrier()) throw CarrierMismatch(f.carrier(), b.carrier());
  for (std::size_t i = 0; i <= f.depth(); ++i) {
    bool ok = true;
    for (Subset s : b.sets()) ok = ok && is_bounded(b, image(f.level(i), s));
    if (ok) return i;
  }
  return std::nullopt;
}

class UlbSpace {
 public:
  /// Validates both structures; throws PreconditionError on the first violation.
  UlbSpace(UniformFiltration filtration, BornologyBasis bornology)
      : filtration_(std::move(filtration)), bornology_(std::move(bornology)) {
    if (filtration_.carrier() != bornology_.carrier()) throw CarrierMismatch(filtration_.carrier(), bornology_.carrier());
    auto fr = validate_filtration(filtration_);
    if (!fr.valid) throw PreconditionError("invalid filtration: " + fr.violations.front().describe());
    auto br = validate_bornology(bornology_);
    if (!br.valid) throw PreconditionError("invalid bornology: " + br.violations.front());
    certified_ = bounded_entourage_index(filtration_, bornology_);
  }

  std::size_t carrier() const { return filtration_.carrier(); }
  const UniformFiltration& filtration() const { return filtration_; }
  const BornologyBasis& bornology() const { return bornology_; }
  std::optional<std::size_t> certified_index() const { return certified_; }
  bool certified() const { return certified_.has_value(); }

 private:
  UniformFiltration filtration_;
  BornologyBasis bornology_;
  std::optional<std::size_t> certified_;
};

enum class ModulusStatus { served, violated, exhausted };

struct LevelModulus {
  ModulusStatus status = ModulusStatus::exhausted;
  std::size_t source_level = 0;  ///< meaningful when served

  friend bool operator==(const LevelModulus&, const LevelModulus&) = default;
};

struct Modulus {
  /// Indexed by target level.
  std::vector<LevelModulus> levels;

  bool violated() const {
    for (auto& l : levels)
      if (l.status == ModulusStatus::violated) return true;
    return false;
  }
  std::size_t exhausted() const {
    std::size_t c = 0;
    for (auto& l : levels) c += l.status == ModulusStatus::exhausted;
    return c;
  }
};

/// (f×f)(E ∩ B×B) ⊆ target.
inline bool maps_into(const CarrierMap& f, const Relation& e, Subset b, const Relation& target) {
  for (std::size_t x = 0; x < e.size(); ++x) {
    if (!b.contains(x)) continue;
    bool ok = true;
    (e.row(x) & b).for_each([&](std::size_t y) { ok = ok && target.contains(f(x), f(y)); });
    if (!ok) return false;
  }
  return true;
}

/// For each target level i, the least j with (f×f)(E_j ∩ B×B) ⊆ E_i. When
/// even E_k fails, the failure is a violation if E_k is idempotent (the
/// chain then extends by repeating E_k into a genuine uniform structure) and
/// resolution-exhausted otherwise.
inline Modulus uniform_continuity_modulus(const UniformFiltration& fl, const CarrierMap& f, Subset b) {
  if (f.size() != fl.carrier()) throw CarrierMismatch(fl.carrier(), f.size());
  const bool closed_chain = is_idempotent(fl.finest());
  Modulus m;
  for (std::size_t i = 0; i <= fl.depth(); ++i) {
    LevelModulus lm;
    for (std::size_t j = 0; j <= fl.depth(); ++j)
      if (maps_into(f, fl.level(j), b, fl.level(i))) {
        lm = {ModulusStatus::served, j};
        break;
      }
    if (lm.status != ModulusStatus::served) lm.status = closed_chain ? ModulusStatus::violated : ModulusStatus::exhausted;
    m.levels.push_back(lm);
  }
  return m;
}

inline Modulus uniform_continuity_modulus(const UlbSpace& s, const CarrierMap& f, Subset b) {
  return uniform_continuity_modulus(s.filtration(), f, b);
}

struct MorphismReport {
  bool modest = true;
  bool uniformly_continuous_on_bounded = true;
  std::size_t exhausted_levels = 0;
  std::optional<Subset> non_modest_witness;

  bool passed() const { return modest && uniformly_continuous_on_bounded; }
};

inline MorphismReport is_morphism(const UlbSpace& s, const CarrierMap& f) {
  MorphismReport rep;
  for (Subset b : s.bornology().sets()) {
    if (rep.modest && !is_bounded(s.bornology(), f.image(b))) {
      rep.modest = false;
      rep.non_modest_witness = b;
    }
    Modulus m = uniform_continuity_modulus(s, f, b);
    if (m.violated()) rep.uniformly_continuous_on_bounded = false;
    rep.exhausted_levels += m.exhausted();
  }
  return rep;
}

inline bool is_ulb_automorphism(const UlbSpace& s, const CarrierMap& f) {
  if (!f.bijective()) throw PreconditionError("automorphism check needs a bijection");
  return is_morphism(s, f).passed() && is_morphism(s, f.inverse()).passed();
}

struct StructuralReport {
  bool closures_bounded = true;
  std::optional<Subset> unbounded_closure;
  std::size_t coarsest_components = 0;     ///< components of E_0^∞
  std::size_t certified_components = 0;    ///< components of E_c^∞, E_c the bounded entourage
  bool certified_star_full = false;
  bool bornology_connected = false;
  /// E_c^∞ = X×X ⇒ bornology connected.
  bool implication_holds = true;

  bool passed() const { return closures_bounded && implication_holds; }
};

/// Closure of every basis set is bounded; and, with E_c the certified bounded
/// entourage, E_c^∞ = X×X forces the bornology to be connected.
inline StructuralReport structural_checks(const UlbSpace& s) {
  if (!s.certified()) throw PreconditionError("space has no bounded uniform entourage at this resolution");
  StructuralReport rep;
  for (Subset b : s.bornology().sets()) {
    Subset c = closure(s.filtration(), b);
    if (!is_bounded(s.bornology(), c)) {
      rep.closures_bounded = false;
      rep.unbounded_closure = b;
      break;
    }
  }
  const Relation& bounded_entourage = s.filtration().level(*s.certified_index());
  rep.coarsest_components = components(s.filtration().level(0)).size();
  rep.certified_components = components(bounded_entourage).size();
  rep.certified_star_full = rep.certified_components == 1;
  rep.bornology_connected = validate_bornology(s.bornology()).connected;
  rep.implication_holds = !rep.certified_star_full || rep.bornology_connected;
  return rep;
}

}  // namespace unibo
