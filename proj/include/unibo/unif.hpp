#pragma once

// Truncated uniform structures. A UniformFiltration is the first k+1 members
// E_0 ⊇ E_1 ⊇ ... ⊇ E_k of a symmetric entourage basis. The half-step
// condition E_{i+1} ∘ E_{i+1} ⊆ E_i is required between consecutive levels
// only; the finest level carries no obligation.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "unibo/core.hpp"
#include "unibo/relalg.hpp"

namespace unibo {

class UniformFiltration {
 public:
  explicit UniformFiltration(std::vector<Relation> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw Error("a filtration needs at least one level");
    for (const auto& l : levels_) levels_.front().same_carrier(l);
  }

  std::size_t carrier() const { return levels_.front().size(); }
  /// k, the index of the finest level.
  std::size_t depth() const { return levels_.size() - 1; }
  const Relation& level(std::size_t i) const { return levels_.at(i); }
  const Relation& finest() const { return levels_.back(); }
  const std::vector<Relation>& levels() const { return levels_; }

  friend bool operator==(const UniformFiltration&, const UniformFiltration&) = default;

 private:
  std::vector<Relation> levels_;
};

struct Violation {
  enum class Kind { not_reflexive, not_symmetric, not_nested, half_step };
  Kind kind;
  std::size_t level;

  std::string describe() const {
    switch (kind) {
      case Kind::not_reflexive: return "level " + std::to_string(level) + ": not reflexive";
      case Kind::not_symmetric: return "level " + std::to_string(level) + ": not symmetric";
      case Kind::not_nested: return "level " + std::to_string(level + 1) + " not contained in level " + std::to_string(level);
      case Kind::half_step:
        return "half-step fails at " + std::to_string(level) + ": E_" + std::to_string(level + 1) +
               " o E_" + std::to_string(level + 1) + " not inside E_" + std::to_string(level);
    }
    return "?";
  }

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct FiltrationReport {
  bool valid = true;
  bool hausdorff_at_resolution = false;
  std::vector<Violation> violations;
};

inline FiltrationReport validate_filtration(const UniformFiltration& f) {
  FiltrationReport rep;
  for (std::size_t i = 0; i <= f.depth(); ++i) {
    const auto& e = f.level(i);
    if (!is_reflexive(e)) rep.violations.push_back({Violation::Kind::not_reflexive, i});
    if (!is_symmetric(e)) rep.violations.push_back({Violation::Kind::not_symmetric, i});
  }
  for (std::size_t i = 0; i < f.depth(); ++i) {
    const auto& next = f.level(i + 1);
    if (!next.subset_of(f.level(i))) rep.violations.push_back({Violation::Kind::not_nested, i});
    if (!compose(next, next).subset_of(f.level(i))) rep.violations.push_back({Violation::Kind::half_step, i});
  }
  rep.valid = rep.violations.empty();
  rep.hausdorff_at_resolution = f.finest() == Relation::diagonal(f.carrier());
  return rep;
}

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Throws with a description when `dist` is not a pseudometric.
inline void require_pseudometric(const RationalMatrix& dist) {
  const std::size_t n = dist.size();
  if (n == 0) throw Error("empty distance matrix");
  for (const auto& row : dist)
    if (row.size() != n) throw Error("distance matrix is not square");
  for (std::size_t x = 0; x < n; ++x) {
    if (dist[x][x] != 0) throw Error("not a pseudometric: d(" + std::to_string(x) + "," + std::to_string(x) + ") != 0");
    for (std::size_t y = 0; y < n; ++y) {
      if (dist[x][y] < 0) throw Error("not a pseudometric: negative distance");
      if (dist[x][y] != dist[y][x])
        throw Error("not a pseudometric: d(" + std::to_string(x) + "," + std::to_string(y) + ") asymmetric");
      for (std::size_t z = 0; z < n; ++z)
        if (dist[x][z] > dist[x][y] + dist[y][z])
          throw Error("not a pseudometric: triangle inequality fails at (" + std::to_string(x) + "," +
                      std::to_string(y) + "," + std::to_string(z) + ")");
    }
  }
}

/// Requires scales[i+1] <= scales[i] / 2, all positive.
inline void require_halving(std::span<const Rational> scales, const char* what) {
  if (scales.empty()) throw Error(std::string(what) + " list is empty");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (scales[i] <= 0) throw Error(std::string(what) + " must be positive");
    if (i + 1 < scales.size() && scales[i + 1] * 2 > scales[i])
      throw Error(std::string(what) + " ratio violated at " + std::to_string(i) + ": " + to_string(scales[i + 1]) +
                  " > " + to_string(scales[i]) + "/2");
  }
}

/// E_i = {(x,y) : d(x,y) < scales[i]}, strict inequality.
inline UniformFiltration from_metric(const RationalMatrix& dist, std::span<const Rational> scales) {
  require_pseudometric(dist);
  require_halving(scales, "scale");
  const std::size_t n = dist.size();
  std::vector<Relation> levels;
  for (const auto& alpha : scales) {
    Relation e(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (dist[x][y] < alpha) e.insert(x, y);
    levels.push_back(std::move(e));
  }
  return UniformFiltration(std::move(levels));
}

/// Distance matrix of points placed at the given rational positions on a line.
inline RationalMatrix line_metric(const std::vector<Rational>& positions) {
  RationalMatrix d(positions.size(), std::vector<Rational>(positions.size()));
  for (std::size_t x = 0; x < positions.size(); ++x)
    for (std::size_t y = 0; y < positions.size(); ++y) d[x][y] = abs(positions[x] - positions[y]);
  return d;
}

inline RationalMatrix line_metric(std::size_t n) {
  std::vector<Rational> pos;
  for (std::size_t i = 0; i < n; ++i) pos.emplace_back(static_cast<long long>(i));
  return line_metric(pos);
}

/// ⋂_i E_i[A]; equal to E_k[A] because the levels are nested.
inline Subset closure(const UniformFiltration& f, Subset a) {
  Subset out = Subset::full(f.carrier());
  for (const auto& e : f.levels()) out = out & image(e, a);
  return out;
}

inline bool is_non_archimedean(const UniformFiltration& f) {
  for (const auto& e : f.levels())
    if (!is_idempotent(e)) return false;
  return true;
}

enum class Refinement { refines, refined_by, equivalent, incomparable };

inline std::string_view to_string(Refinement r) {
  switch (r) {
    case Refinement::refines: return "refines";
    case Refinement::refined_by: return "refined-by";
    case Refinement::equivalent: return "equivalent";
    case Refinement::incomparable: return "incomparable";
  }
  return "?";
}

/// a refines b iff every level of b contains some level of a.
inline bool filtration_finer(const UniformFiltration& a, const UniformFiltration& b) {
  a.level(0).same_carrier(b.level(0));
  for (const auto& eb : b.levels()) {
    bool found = false;
    for (const auto& ea : a.levels())
      if (ea.subset_of(eb)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

inline Refinement refines(const UniformFiltration& a, const UniformFiltration& b) {
  bool ab = filtration_finer(a, b);
  bool ba = filtration_finer(b, a);
  if (ab && ba) return Refinement::equivalent;
  if (ab) return Refinement::refines;
  if (ba) return Refinement::refined_by;
  return Refinement::incomparable;
}

/// Random valid filtration of the given depth, built from the finest level
/// upward: E_i = sym(E_{i+1} ∘ E_{i+1} ∪ random pairs).
inline UniformFiltration random_filtration(std::size_t n, std::size_t depth, Rng& rng, bool hausdorff = true) {
  std::vector<Relation> rev;
  Relation finest = Relation::diagonal(n);
  if (!hausdorff) {
    Relation extra = random_relation(n, rng) & random_relation(n, rng);
    finest = finest | extra | inverse(extra);
  }
  rev.push_back(finest);
  for (std::size_t i = 0; i < depth; ++i) {
    const Relation& prev = rev.back();
    Relation extra = random_relation(n, rng) & random_relation(n, rng);
    Relation e = compose(prev, prev) | extra;
    rev.push_back(e | inverse(e));
  }
  return UniformFiltration(std::vector<Relation>(rev.rbegin(), rev.rend()));
}

}  // namespace unibo
