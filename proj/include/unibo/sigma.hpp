#pragma once

// Finite measure algebras. The carrier is the set of all 2^n subsets of an
// n-point ground set (index = bitmask), so the uniform structure generated by
// the pseudometrics μ(A△B) lives on algebra elements.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unibo/core.hpp"
#include "unibo/mapspace.hpp"
#include "unibo/relalg.hpp"
#include "unibo/ulb.hpp"
#include "unibo/unif.hpp"

namespace unibo {

inline constexpr std::size_t kMaxGround = 5;

class Measure {
 public:
  explicit Measure(std::vector<Rational> weights) : weights_(std::move(weights)) {
    if (weights_.empty() || weights_.size() > kMaxGround)
      throw Error("ground set must have 1.." + std::to_string(kMaxGround) + " points");
    for (const auto& w : weights_)
      if (w < 0) throw Error("negative weight " + to_string(w));
  }

  static Measure dirac(std::size_t n, std::size_t at) {
    std::vector<Rational> w(n, Rational(0));
    w.at(at) = 1;
    return Measure(std::move(w));
  }
  static Measure counting(std::size_t n) { return Measure(std::vector<Rational>(n, Rational(1))); }
  static Measure zero(std::size_t n) { return Measure(std::vector<Rational>(n, Rational(0))); }

  std::size_t ground() const { return weights_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }

  Rational operator()(std::size_t element) const {
    Rational s = 0;
    for (std::size_t x = 0; x < weights_.size(); ++x)
      if ((element >> x) & 1u) s += weights_[x];
    return s;
  }

 private:
  std::vector<Rational> weights_;
};

using MeasureFamily = std::vector<Measure>;

inline std::size_t family_ground(const MeasureFamily& fam) {
  if (fam.empty()) throw Error("measure family is empty");
  for (const auto& m : fam)
    if (m.ground() != fam.front().ground()) throw Error("measures disagree on the ground set");
  return fam.front().ground();
}

inline std::vector<Measure> all_diracs(std::size_t n) {
  std::vector<Measure> out;
  for (std::size_t x = 0; x < n; ++x) out.push_back(Measure::dirac(n, x));
  return out;
}

/// μ(A△B).
inline Rational sym_diff_distance(const Measure& mu, std::size_t a, std::size_t b) { return mu(a ^ b); }

inline std::string element_string(std::size_t element, std::size_t n) {
  return to_string(Subset::from_bits(element) & Subset::full(n));
}

/// E_i = ⋂_μ {(A,B) : μ(A△B) < ε_i}.
inline UniformFiltration build_measure_filtration(const MeasureFamily& fam, std::span<const Rational> thresholds) {
  const std::size_t n = family_ground(fam);
  require_halving(thresholds, "threshold");
  const std::size_t size = std::size_t{1} << n;
  std::vector<Relation> levels;
  for (const auto& eps : thresholds) {
    Relation e(size);
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = 0; b < size; ++b) {
        bool close = true;
        for (const auto& mu : fam) close = close && sym_diff_distance(mu, a, b) < eps;
        if (close) e.insert(a, b);
      }
    levels.push_back(std::move(e));
  }
  return UniformFiltration(std::move(levels));
}

/// Least positive distance over the family; 1 when every distance is zero.
inline Rational min_positive_distance(const MeasureFamily& fam) {
  std::optional<Rational> best;
  for (const auto& mu : fam)
    for (const auto& w : mu.weights())
      if (w > 0 && (!best || w < *best)) best = w;
  return best.value_or(Rational(1));
}

struct SeparationReport {
  bool separates = false;
  bool finest_is_diagonal = false;
  std::optional<std::pair<std::size_t, std::size_t>> inseparable;
  bool hausdorff_equivalence() const { return separates == finest_is_diagonal; }
};

inline SeparationReport separation_check(const MeasureFamily& fam) {
  const std::size_t n = family_ground(fam);
  const std::size_t size = std::size_t{1} << n;
  SeparationReport rep;
  rep.separates = true;
  for (std::size_t a = 0; a < size && rep.separates; ++a)
    for (std::size_t b = a + 1; b < size && rep.separates; ++b) {
      bool apart = false;
      for (const auto& mu : fam) apart = apart || sym_diff_distance(mu, a, b) > 0;
      if (!apart) {
        rep.separates = false;
        rep.inseparable = std::pair{a, b};
      }
    }
  Rational delta = min_positive_distance(fam);
  std::vector<Rational> eps{delta, delta / 2};
  rep.finest_is_diagonal = build_measure_filtration(fam, eps).finest() == Relation::diagonal(size);
  return rep;
}

struct NonArchReport {
  Rational gap{1};
  bool zero_one_valued = true;
  bool non_archimedean = false;
};

/// Below the least positive value δ, every level is the null-distance
/// equivalence, so the filtration at thresholds (δ, δ/2, δ/4) is non-Archimedean.
inline NonArchReport zero_one_non_arch(const MeasureFamily& fam) {
  const std::size_t n = family_ground(fam);
  NonArchReport rep;
  rep.gap = min_positive_distance(fam);
  for (const auto& mu : fam)
    for (std::size_t a = 0; a < (std::size_t{1} << n); ++a) {
      Rational v = mu(a);
      rep.zero_one_valued = rep.zero_one_valued && (v == 0 || v == 1);
    }
  std::vector<Rational> eps{rep.gap, rep.gap / 2, rep.gap / 4};
  rep.non_archimedean = is_non_archimedean(build_measure_filtration(fam, eps));
  return rep;
}

struct LimitReport {
  bool cauchy = false;
  std::optional<std::size_t> limit;
  /// max over μ and cycle positions of μ(A_k △ L); zero when the limit holds
  Rational residual{0};
  std::string divergence;
};

/// For A_k given as prefix then repeating cycle: L = ⋂_n ⋃_{k≥n} A_k, which is
/// the union of the cycle. Cauchy iff all cycle members are pairwise null-apart.
inline LimitReport cauchy_limit_formula(const std::vector<std::size_t>& prefix, const std::vector<std::size_t>& cycle,
                                        const MeasureFamily& fam) {
  const std::size_t n = family_ground(fam);
  if (cycle.empty()) throw PreconditionError("the repeating part must be nonempty");
  for (auto a : prefix)
    if (a >> n) throw Error("sequence element leaves the algebra");
  for (auto a : cycle)
    if (a >> n) throw Error("sequence element leaves the algebra");
  LimitReport rep;
  rep.cauchy = true;
  for (std::size_t m = 0; m < fam.size() && rep.cauchy; ++m)
    for (std::size_t i = 0; i < cycle.size() && rep.cauchy; ++i)
      for (std::size_t j = i + 1; j < cycle.size() && rep.cauchy; ++j)
        if (Rational d = sym_diff_distance(fam[m], cycle[i], cycle[j]); d > 0) {
          rep.cauchy = false;
          rep.divergence = "measure " + std::to_string(m) + " keeps " + element_string(cycle[i], n) + " and " +
                           element_string(cycle[j], n) + " at distance " + to_string(d);
        }
  if (!rep.cauchy) return rep;
  std::size_t l = 0;
  for (auto a : cycle) l |= a;
  rep.limit = l;
  for (const auto& mu : fam)
    for (auto a : cycle) rep.residual = std::max(rep.residual, sym_diff_distance(mu, a, l));
  return rep;
}

struct AtomReport {
  std::size_t automorphisms = 0;
  std::size_t induced = 0;
  std::size_t expected = 0;
  bool passed() const { return automorphisms == expected && induced == automorphisms; }
};

/// Every inclusion-order automorphism of the algebra on n ≤ 3 points permutes
/// the atoms and is the map induced by that permutation.
inline AtomReport atom_recovery(std::size_t n) {
  if (n == 0 || n > 3) throw PreconditionError("atom recovery enumerates 2^n! maps; n must be 1..3");
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::size_t> phi(size);
  std::iota(phi.begin(), phi.end(), 0);
  AtomReport rep;
  rep.expected = 1;
  for (std::size_t k = 2; k <= n; ++k) rep.expected *= k;
  do {
    bool order = true;
    for (std::size_t a = 0; a < size && order; ++a)
      for (std::size_t b = 0; b < size && order; ++b) order = ((a & b) == a) == ((phi[a] & phi[b]) == phi[a]);
    if (!order) continue;
    ++rep.automorphisms;
    bool atoms_to_atoms = true;
    std::vector<std::size_t> pi(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t img = phi[std::size_t{1} << x];
      atoms_to_atoms = atoms_to_atoms && std::has_single_bit(img);
      pi[x] = static_cast<std::size_t>(std::countr_zero(img));
    }
    bool induced = atoms_to_atoms;
    for (std::size_t a = 0; a < size && induced; ++a) {
      std::size_t img = 0;
      for (std::size_t x = 0; x < n; ++x)
        if ((a >> x) & 1u) img |= std::size_t{1} << pi[x];
      induced = img == phi[a];
    }
    rep.induced += induced;
  } while (std::next_permutation(phi.begin(), phi.end()));
  return rep;
}

/// Ground permutations preserving every measure, acting on algebra elements.
inline MapSet measure_preserving_maps(const MeasureFamily& fam) {
  const std::size_t n = family_ground(fam);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<CarrierMap> maps;
  do {
    bool keeps = true;
    for (const auto& mu : fam)
      for (std::size_t x = 0; x < n; ++x) keeps = keeps && mu.weights()[perm[x]] == mu.weights()[x];
    if (!keeps) continue;
    std::vector<std::size_t> t(std::size_t{1} << n);
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t x = 0; x < n; ++x)
        if ((a >> x) & 1u) t[a] |= std::size_t{1} << perm[x];
    maps.emplace_back(std::move(t));
  } while (std::next_permutation(perm.begin(), perm.end()) && maps.size() < kMaxCarrier);
  return MapSet(std::move(maps));
}

}  // namespace unibo
