#pragma once

// Boolean relation algebra on finite carriers. A relation is a dense
// incidence matrix stored one 64-bit row per source point; composition is a
// boolean matrix product done row-parallel.

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unibo/core.hpp"

namespace unibo {

class Relation {
 public:
  /// Empty relation on {0..n-1}.
  explicit Relation(std::size_t n) : n_(n), rows_(n, 0) {
    if (n == 0 || n > kMaxCarrier)
      throw Error("carrier size must be in 1.." + std::to_string(kMaxCarrier) + ", got " +
                  std::to_string(n));
  }

  static Relation diagonal(std::size_t n) {
    Relation r(n);
    for (std::size_t x = 0; x < n; ++x) r.insert(x, x);
    return r;
  }

  static Relation full(std::size_t n) {
    Relation r(n);
    for (auto& row : r.rows_) row = Subset::full(n).bits();
    return r;
  }

  static Relation from_pairs(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
    Relation r(n);
    for (auto [x, y] : pairs) r.insert(x, y);
    return r;
  }

  /// A × B.
  static Relation product(std::size_t n, Subset a, Subset b) {
    Relation r(n);
    r.check_range(a | b);
    a.for_each([&](std::size_t x) { r.rows_[x] = b.bits(); });
    return r;
  }

  /// `n row_0 row_1 ...`, each row a string of n characters in {0,1};
  /// row x, column y set means (x,y) in the relation.
  static Relation parse(std::string_view literal) {
    std::istringstream in{std::string(literal)};
    long long n = 0;
    if (!(in >> n) || n <= 0) throw Error("relation literal must start with a positive size");
    std::vector<std::string> rows;
    std::string tok;
    while (in >> tok) rows.push_back(tok);
    return from_rows(static_cast<std::size_t>(n), rows);
  }

  static Relation from_rows(std::size_t n, const std::vector<std::string>& rows) {
    if (rows.size() != n)
      throw Error("relation literal has " + std::to_string(rows.size()) + " rows, expected " +
                  std::to_string(n));
    Relation r(n);
    for (std::size_t x = 0; x < n; ++x) {
      if (rows[x].size() != n)
        throw Error("row " + std::to_string(x) + " has length " + std::to_string(rows[x].size()) +
                    ", expected " + std::to_string(n));
      for (std::size_t y = 0; y < n; ++y) {
        char c = rows[x][y];
        if (c == '1')
          r.insert(x, y);
        else if (c != '0')
          throw Error("row " + std::to_string(x) + " contains '" + std::string(1, c) + "'");
      }
    }
    return r;
  }

  std::size_t size() const noexcept { return n_; }

  bool contains(std::size_t x, std::size_t y) const { return x < n_ && Subset::from_bits(rows_[x]).contains(y); }

  void insert(std::size_t x, std::size_t y) {
    check_range(Subset::singleton(x) | Subset::singleton(y));
    rows_[x] |= std::uint64_t{1} << y;
  }

  /// E[x].
  Subset row(std::size_t x) const { return Subset::from_bits(rows_.at(x)); }

  std::size_t pair_count() const {
    std::size_t c = 0;
    for (auto r : rows_) c += Subset::from_bits(r).count();
    return c;
  }

  bool subset_of(const Relation& o) const {
    same_carrier(o);
    for (std::size_t x = 0; x < n_; ++x)
      if (rows_[x] & ~o.rows_[x]) return false;
    return true;
  }

  /// Row-major bit string, `n` then the rows, as accepted by parse().
  std::string literal() const {
    std::string out = std::to_string(n_);
    for (std::size_t x = 0; x < n_; ++x) {
      out += ' ';
      for (std::size_t y = 0; y < n_; ++y) out += contains(x, y) ? '1' : '0';
    }
    return out;
  }

  friend Relation operator|(const Relation& a, const Relation& b) {
    a.same_carrier(b);
    Relation r(a.n_);
    for (std::size_t x = 0; x < a.n_; ++x) r.rows_[x] = a.rows_[x] | b.rows_[x];
    return r;
  }

  friend Relation operator&(const Relation& a, const Relation& b) {
    a.same_carrier(b);
    Relation r(a.n_);
    for (std::size_t x = 0; x < a.n_; ++x) r.rows_[x] = a.rows_[x] & b.rows_[x];
    return r;
  }

  friend bool operator==(const Relation&, const Relation&) = default;

  void same_carrier(const Relation& o) const {
    if (n_ != o.n_) throw CarrierMismatch(n_, o.n_);
  }

  void check_range(Subset s) const {
    if (!s.subset_of(Subset::full(n_)))
      throw Error("index out of range for carrier of size " + std::to_string(n_) + ": " + to_string(s));
  }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> rows_;
};

/// R ∘ S = {(x,y) : ∃z, (x,z) ∈ R and (z,y) ∈ S}.
inline Relation compose(const Relation& r, const Relation& s) {
  r.same_carrier(s);
  Relation out(r.size());
  for (std::size_t x = 0; x < r.size(); ++x) {
    Subset acc;
    r.row(x).for_each([&](std::size_t z) { acc = acc | s.row(z); });
    acc.for_each([&](std::size_t y) { out.insert(x, y); });
  }
  return out;
}

inline Relation inverse(const Relation& r) {
  Relation out(r.size());
  for (std::size_t x = 0; x < r.size(); ++x) r.row(x).for_each([&](std::size_t y) { out.insert(y, x); });
  return out;
}

/// R[A] = ⋃_{x ∈ A} R[x].
inline Subset image(const Relation& r, Subset a) {
  r.check_range(a);
  Subset out;
  a.for_each([&](std::size_t x) { out = out | r.row(x); });
  return out;
}

inline bool is_reflexive(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    if (!r.contains(x, x)) return false;
  return true;
}

inline bool is_symmetric(const Relation& r) { return inverse(r) == r; }

inline bool is_idempotent(const Relation& r) { return compose(r, r) == r; }

/// R^∞ = ⋃_n R^{∘n}, as the least fixpoint of S ↦ S ∪ S∘R. Entourages only.
inline Relation iterate_star(const Relation& r) {
  if (!is_reflexive(r)) throw PreconditionError("iterate_star requires a reflexive relation");
  Relation s = r;
  for (;;) {
    Relation next = s | compose(s, r);
    if (next == s) return s;
    s = std::move(next);
  }
}

struct RelationClass {
  bool reflexive = false;
  bool symmetric = false;
  bool idempotent = false;
  bool contains_diagonal = false;
};

inline RelationClass classify(const Relation& r) {
  RelationClass c;
  c.contains_diagonal = Relation::diagonal(r.size()).subset_of(r);
  c.reflexive = c.contains_diagonal;
  c.symmetric = is_symmetric(r);
  c.idempotent = is_idempotent(r);
  return c;
}

/// Equivalence relation whose classes are the given blocks (unlisted points
/// are singleton classes).
inline Relation partition_relation(std::size_t n, std::initializer_list<Subset> blocks) {
  Relation r = Relation::diagonal(n);
  for (Subset b : blocks) r = r | Relation::product(n, b, b);
  return r;
}

/// Connected components of the equivalence relation generated by r.
inline std::vector<Subset> components(const Relation& r) {
  Relation star = iterate_star(r | inverse(r) | Relation::diagonal(r.size()));
  std::vector<Subset> out;
  Subset seen;
  for (std::size_t x = 0; x < r.size(); ++x) {
    if (seen.contains(x)) continue;
    out.push_back(star.row(x));
    seen = seen | star.row(x);
  }
  return out;
}

inline Relation random_relation(std::size_t n, Rng& rng) {
  Relation r(n);
  for (std::size_t x = 0; x < n; ++x)
    rng.subset(n).for_each([&](std::size_t y) { r.insert(x, y); });
  return r;
}

}  // namespace unibo
