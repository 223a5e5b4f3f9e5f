#pragma once

// Bornologies given by a finite basis, and the coarse structure they
// generate: the finest coarse structure whose bounded sets are the bornology,
// made of all subsets of Δ ∪ A_1×A_1 ∪ ... ∪ A_n×A_n with each A_i bounded.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "unibo/core.hpp"
#include "unibo/relalg.hpp"

namespace unibo {

class BornologyBasis {
 public:
  BornologyBasis(std::size_t carrier, std::vector<Subset> sets) : carrier_(carrier), sets_(std::move(sets)) {
    if (carrier == 0 || carrier > kMaxCarrier) throw Error("bad carrier size " + std::to_string(carrier));
    if (sets_.empty()) throw Error("a bornology basis must be nonempty");
    for (Subset s : sets_)
      if (!s.subset_of(Subset::full(carrier_))) throw Error("basis set " + to_string(s) + " leaves the carrier");
  }

  /// The trivial bornology: every subset is bounded.
  static BornologyBasis trivial(std::size_t n) { return BornologyBasis(n, {Subset::full(n)}); }

  /// Only singletons (and the empty set) are bounded.
  static BornologyBasis singletons(std::size_t n) {
    std::vector<Subset> s;
    for (std::size_t x = 0; x < n; ++x) s.push_back(Subset::singleton(x));
    return BornologyBasis(n, std::move(s));
  }

  std::size_t carrier() const { return carrier_; }
  const std::vector<Subset>& sets() const { return sets_; }

  friend bool operator==(const BornologyBasis&, const BornologyBasis&) = default;

 private:
  std::size_t carrier_;
  std::vector<Subset> sets_;
};

inline bool is_bounded(const BornologyBasis& b, Subset s) {
  for (Subset a : b.sets())
    if (s.subset_of(a)) return true;
  return false;
}

struct BornologyReport {
  bool valid = true;
  bool connected = true;
  std::vector<std::string> violations;
};

inline BornologyReport validate_bornology(const BornologyBasis& b) {
  BornologyReport rep;
  for (std::size_t x = 0; x < b.carrier(); ++x)
    if (!is_bounded(b, Subset::singleton(x)))
      rep.violations.push_back("singleton {" + std::to_string(x) + "} is not bounded");
  const auto& s = b.sets();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      bool bounded_union = is_bounded(b, s[i] | s[j]);
      if (!bounded_union) rep.connected = false;
      if (!bounded_union && s[i].intersects(s[j]))
        rep.violations.push_back("union of overlapping basis sets " + to_string(s[i]) + " and " + to_string(s[j]) +
                                 " is not bounded");
    }
  rep.valid = rep.violations.empty();
  if (!rep.valid) rep.connected = false;
  return rep;
}

/// Membership predicate of the coarse structure generated by a valid bornology.
class CoarseOracle {
 public:
  explicit CoarseOracle(BornologyBasis basis) : basis_(std::move(basis)) {
    auto rep = validate_bornology(basis_);
    if (!rep.valid) throw PreconditionError("not a bornology: " + rep.violations.front());
    const std::size_t n = basis_.carrier();
    pairs_ = Relation::diagonal(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (is_bounded(basis_, Subset::singleton(x) | Subset::singleton(y))) pairs_.insert(x, y);
  }

  /// Every off-diagonal pair lies in a bounded doubleton; equivalently R sits
  /// inside Δ ∪ ⋃ {x,y}² over its pairs, a set of the generating form.
  bool contains(const Relation& r) const { return r.subset_of(pairs_); }

  /// The largest member: all pairs with a bounded doubleton.
  const Relation& saturation() const { return pairs_; }

  bool coarsely_connected() const { return pairs_ == Relation::full(basis_.carrier()); }

  const BornologyBasis& basis() const { return basis_; }

 private:
  BornologyBasis basis_;
  Relation pairs_{1};
};

inline bool coarse_membership(const BornologyBasis& b, const Relation& r) {
  if (r.size() != b.carrier()) throw CarrierMismatch(b.carrier(), r.size());
  return CoarseOracle(b).contains(r);
}

struct RoundTripReport {
  bool agree = true;
  std::size_t subsets_checked = 0;
  std::optional<Subset> witness;
};

/// {S : S×S coarse} = {S : S bounded}, over every subset of the carrier.
inline RoundTripReport bounded_round_trip(const BornologyBasis& b) {
  if (b.carrier() > 20) throw PreconditionError("exhaustive subset sweep limited to carriers of size <= 20");
  CoarseOracle oracle(b);
  RoundTripReport rep;
  const std::uint64_t count = std::uint64_t{1} << b.carrier();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    Subset s = Subset::from_bits(bits);
    ++rep.subsets_checked;
    if (oracle.contains(Relation::product(b.carrier(), s, s)) != is_bounded(b, s)) {
      rep.agree = false;
      rep.witness = s;
      break;
    }
  }
  return rep;
}

struct CoarseAxiomsReport {
  /// (C1) diagonal, (C2) inverse, (C3) subsets, (C4) unions, (C5) composition.
  std::array<bool, 5> axioms{true, true, true, true, true};
  bool exhaustive = false;
  std::size_t pairs_checked = 0;
  bool coarsely_connected = false;
  bool bornology_connected = false;
  std::string witness;

  bool connectivity_agrees() const { return coarsely_connected == bornology_connected; }
  bool passed() const {
    for (bool a : axioms)
      if (!a) return false;
    return connectivity_agrees();
  }
};

namespace detail {

inline void check_coarse_pair(const CoarseOracle& c, const Relation& e, const Relation& f, CoarseAxiomsReport& rep) {
  bool ce = c.contains(e);
  bool cf = c.contains(f);
  auto fail = [&](std::size_t axiom, const char* what) {
    if (rep.axioms[axiom]) rep.witness = std::string(what) + ": E=" + e.literal() + " F=" + f.literal();
    rep.axioms[axiom] = false;
  };
  ++rep.pairs_checked;
  if (ce && !c.contains(inverse(e))) fail(1, "C2");
  if (cf && e.subset_of(f) && !ce) fail(2, "C3");
  if (ce && cf) {
    if (!c.contains(e | f)) fail(3, "C4");
    if (!c.contains(compose(e, f))) fail(4, "C5");
  }
}

/// Random member of the coarse structure: a subset of Δ ∪ ⋃ A_i×A_i.
inline Relation random_coarse_entourage(const BornologyBasis& b, Rng& rng) {
  const std::size_t n = b.carrier();
  Relation envelope = Relation::diagonal(n);
  std::size_t picks = 1 + rng.below(3);
  for (std::size_t p = 0; p < picks; ++p) {
    Subset a = b.sets()[rng.below(b.sets().size())] & rng.subset(n);
    envelope = envelope | Relation::product(n, a, a);
  }
  return envelope & (random_relation(n, rng) | random_relation(n, rng));
}

}  // namespace detail

/// Coarse axioms for the generated coarse structure: exhaustive over all
/// relation pairs when the carrier has at most 3 points, else `random_pairs`
/// sampled pairs. Also checks coarse connectivity ⇔ bornology connectivity.
inline CoarseAxiomsReport coarse_axioms_suite(const BornologyBasis& b, Rng& rng, std::size_t random_pairs = 500) {
  CoarseOracle c(b);
  CoarseAxiomsReport rep;
  const std::size_t n = b.carrier();
  rep.axioms[0] = c.contains(Relation::diagonal(n));
  if (n <= 3) {
    rep.exhaustive = true;
    std::vector<Relation> all;
    const std::uint64_t count = std::uint64_t{1} << (n * n);
    for (std::uint64_t bits = 0; bits < count; ++bits) {
      Relation r(n);
      for (std::size_t k = 0; k < n * n; ++k)
        if ((bits >> k) & 1u) r.insert(k / n, k % n);
      all.push_back(std::move(r));
    }
    for (const auto& e : all)
      for (const auto& f : all) detail::check_coarse_pair(c, e, f, rep);
  } else {
    for (std::size_t k = 0; k < random_pairs; ++k) {
      Relation e = rng.chance(3, 4) ? detail::random_coarse_entourage(b, rng) : random_relation(n, rng);
      Relation f = rng.chance(3, 4) ? detail::random_coarse_entourage(b, rng) : random_relation(n, rng);
      detail::check_coarse_pair(c, e, f, rep);
      detail::check_coarse_pair(c, e & f, e, rep);
    }
  }
  rep.coarsely_connected = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (!c.contains(Relation::diagonal(n) | Relation::from_pairs(n, {{x, y}}))) rep.coarsely_connected = false;
  rep.bornology_connected = validate_bornology(b).connected;
  if (!rep.connectivity_agrees() && rep.witness.empty())
    rep.witness = "coarse connectivity " + std::string(rep.coarsely_connected ? "true" : "false") +
                  " but bornology connectivity " + (rep.bornology_connected ? "true" : "false");
  return rep;
}

/// Random valid bornology: random basis sets plus all singletons, closed
/// under unions of overlapping sets.
inline BornologyBasis random_bornology(std::size_t n, Rng& rng) {
  std::vector<Subset> sets;
  for (std::size_t x = 0; x < n; ++x) sets.push_back(Subset::singleton(x));
  std::size_t extra = rng.below(n + 1);
  for (std::size_t k = 0; k < extra; ++k) {
    Subset s = rng.subset(n);
    if (s.count() > 1 && s.count() < n + (rng.chance(1, 4) ? 1 : 0)) sets.push_back(s);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < sets.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < sets.size() && !changed; ++j)
        if (sets[i].intersects(sets[j]) && !sets[i].subset_of(sets[j]) && !sets[j].subset_of(sets[i])) {
          Subset u = sets[i] | sets[j];
          bool covered = false;
          for (Subset s : sets) covered = covered || u.subset_of(s);
          if (!covered) {
            sets.push_back(u);
            changed = true;
          }
        }
  }
  // drop sets covered by others to keep the basis small
  std::vector<Subset> basis;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < sets.size() && !dominated; ++j)
      dominated = j != i && sets[i].subset_of(sets[j]) && (sets[i] != sets[j] || j < i);
    if (!dominated) basis.push_back(sets[i]);
  }
  return BornologyBasis(n, std::move(basis));
}

}  // namespace unibo
