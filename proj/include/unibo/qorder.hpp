#pragma once

// Order-automorphisms of Q that are piecewise affine with rational data, and
// the ray bornologies on Q: bounded intervals, rays bounded below, rays
// bounded above. Q carries the discrete uniformity, so the identity ball at a
// basis set S is the pointwise fixator of S.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "unibo/core.hpp"

namespace unibo {

struct AffinePiece {
  Rational slope{1};
  Rational offset{0};

  Rational operator()(const Rational& x) const { return slope * x + offset; }
  bool is_identity() const { return slope == 1 && offset == 0; }
  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

class PLBijection {
 public:
  PLBijection() : pieces_{AffinePiece{}} {}

  /// Piece j acts on [b_j, b_{j+1}] with b_0 = −∞ and b_{m+1} = +∞.
  PLBijection(std::vector<Rational> breakpoints, std::vector<AffinePiece> pieces)
      : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (pieces_.size() != breaks_.size() + 1) throw Error("need one more piece than breakpoints");
    for (std::size_t j = 0; j < pieces_.size(); ++j)
      if (pieces_[j].slope <= 0) throw Error("piece " + std::to_string(j) + " is not increasing");
    for (std::size_t j = 0; j < breaks_.size(); ++j) {
      if (j > 0 && breaks_[j] <= breaks_[j - 1]) throw Error("breakpoints must increase");
      if (pieces_[j](breaks_[j]) != pieces_[j + 1](breaks_[j]))
        throw Error("discontinuity at breakpoint " + to_string(breaks_[j]));
    }
    normalize();
  }

  static PLBijection identity() { return {}; }

  static PLBijection affine(Rational slope, Rational offset) { return PLBijection({}, {{std::move(slope), std::move(offset)}}); }

  /// Identity off (c,d); slope 2 on [c, c+L/3], then slope 1/2 up to d.
  static PLBijection bump(const Rational& c, const Rational& d) {
    if (d <= c) throw Error("bump needs c < d");
    Rational third = (d - c) / 3;
    Rational m = c + third;
    // x ↦ 2x − c on [c,m]; x ↦ x/2 + d/2 on [m,d]
    return PLBijection({c, m, d}, {{1, 0}, {2, -c}, {Rational(1, 2), d / 2}, {1, 0}});
  }

  /// Parses "-inf p q; b1 p q; ..." (left endpoint, slope, offset per piece).
  static PLBijection parse(std::string_view text) {
    std::vector<Rational> breaks;
    std::vector<AffinePiece> pieces;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(';', start);
      if (end == std::string_view::npos) end = text.size();
      std::istringstream in{std::string(text.substr(start, end - start))};
      std::string left, slope, offset, extra;
      if (!(in >> left >> slope >> offset) || (in >> extra))
        throw Error("piece " + std::to_string(pieces.size()) + " must be 'left slope offset'");
      if (pieces.empty() != (left == "-inf")) throw Error("only the first piece starts at -inf");
      if (!pieces.empty()) breaks.push_back(parse_rational(left));
      pieces.push_back({parse_rational(slope), parse_rational(offset)});
      start = end + 1;
    }
    return PLBijection(std::move(breaks), std::move(pieces));
  }

  std::string literal() const {
    std::string out;
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
      if (j) out += "; ";
      out += (j ? to_string(breaks_[j - 1]) : std::string("-inf")) + " " + to_string(pieces_[j].slope) + " " +
             to_string(pieces_[j].offset);
    }
    return out;
  }

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  bool is_identity() const { return pieces_.size() == 1 && pieces_.front().is_identity(); }

  std::size_t piece_index(const Rational& x) const {
    return static_cast<std::size_t>(std::lower_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin());
  }

  Rational operator()(const Rational& x) const { return pieces_[piece_index(x)](x); }

  /// A point strictly inside piece j.
  Rational interior_point(std::size_t j) const {
    if (breaks_.empty()) return 0;
    if (j == 0) return breaks_.front() - 1;
    if (j == breaks_.size()) return breaks_.back() + 1;
    return (breaks_[j - 1] + breaks_[j]) / 2;
  }

  PLBijection inverse() const {
    std::vector<Rational> b;
    std::vector<AffinePiece> p;
    for (const auto& x : breaks_) b.push_back((*this)(x));
    for (const auto& piece : pieces_) p.push_back({1 / piece.slope, -piece.offset / piece.slope});
    return PLBijection(std::move(b), std::move(p));
  }

  friend bool operator==(const PLBijection&, const PLBijection&) = default;

 private:
  void normalize() {
    std::vector<Rational> b;
    std::vector<AffinePiece> p{pieces_.front()};
    for (std::size_t j = 0; j < breaks_.size(); ++j) {
      if (pieces_[j + 1] == p.back()) continue;
      b.push_back(breaks_[j]);
      p.push_back(pieces_[j + 1]);
    }
    breaks_ = std::move(b);
    pieces_ = std::move(p);
  }

  std::vector<Rational> breaks_;
  std::vector<AffinePiece> pieces_;
};

/// (f ∘ g)(x) = f(g(x)).
inline PLBijection compose(const PLBijection& f, const PLBijection& g) {
  std::vector<Rational> b = g.breakpoints();
  PLBijection gi = g.inverse();
  for (const auto& x : f.breakpoints()) b.push_back(gi(x));
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<AffinePiece> pieces;
  for (std::size_t j = 0; j <= b.size(); ++j) {
    Rational x = b.empty() ? Rational(0) : j == 0 ? b.front() - 1 : j == b.size() ? b.back() + 1 : (b[j - 1] + b[j]) / 2;
    const AffinePiece& pg = g.pieces()[g.piece_index(x)];
    const AffinePiece& pf = f.pieces()[f.piece_index(pg(x))];
    pieces.push_back({pf.slope * pg.slope, pf.slope * pg.offset + pf.offset});
  }
  return PLBijection(std::move(b), std::move(pieces));
}

enum class RayKind { two_sided, upper_ray, lower_ray };

inline std::string_view to_string(RayKind k) {
  switch (k) {
    case RayKind::two_sided: return "two-sided";
    case RayKind::upper_ray: return "upper-ray";
    case RayKind::lower_ray: return "lower-ray";
  }
  return "?";
}

/// [a,b], [a,∞) or (−∞,b]; the unused endpoint is ignored.
struct RaySet {
  RayKind kind = RayKind::two_sided;
  Rational a{0};
  Rational b{0};

  static RaySet interval(Rational a, Rational b) {
    if (b < a) throw Error("empty interval");
    return {RayKind::two_sided, std::move(a), std::move(b)};
  }
  static RaySet upper(Rational a) { return {RayKind::upper_ray, std::move(a), 0}; }
  static RaySet lower(Rational b) { return {RayKind::lower_ray, 0, std::move(b)}; }

  bool has_lower() const { return kind != RayKind::lower_ray; }
  bool has_upper() const { return kind != RayKind::upper_ray; }

  bool contains(const Rational& x) const { return (!has_lower() || a <= x) && (!has_upper() || x <= b); }

  /// Inclusion of basis sets.
  bool subset_of(const RaySet& o) const {
    if (o.has_lower() && (!has_lower() || a < o.a)) return false;
    if (o.has_upper() && (!has_upper() || b > o.b)) return false;
    return true;
  }

  std::string describe() const {
    std::string lo = has_lower() ? "[" + to_string(a) : "(-inf";
    std::string hi = has_upper() ? to_string(b) + "]" : "inf)";
    return lo + "," + hi;
  }
};

/// g is the identity on S: every piece meeting S in an interval is the
/// identity, and single-point contacts are fixed points.
inline bool fixes_pointwise(const PLBijection& g, const RaySet& s) {
  const auto& br = g.breakpoints();
  for (std::size_t j = 0; j < g.pieces().size(); ++j) {
    // piece j covers [lo, hi]; absent ends are infinite
    std::optional<Rational> lo = j ? std::optional<Rational>(br[j - 1]) : std::nullopt;
    std::optional<Rational> hi = j < br.size() ? std::optional<Rational>(br[j]) : std::nullopt;
    std::optional<Rational> olo = lo, ohi = hi;
    if (s.has_lower() && (!olo || *olo < s.a)) olo = s.a;
    if (s.has_upper() && (!ohi || *ohi > s.b)) ohi = s.b;
    if (olo && ohi && *olo > *ohi) continue;
    if (olo && ohi && *olo == *ohi) {
      if (g(*olo) != *olo) return false;
    } else if (!g.pieces()[j].is_identity()) {
      return false;
    }
  }
  return true;
}

/// A non-identity element fixing S pointwise: a bump on an interval disjoint from S.
inline PLBijection non_discrete_witness(const RaySet& s) {
  PLBijection g = s.kind == RayKind::upper_ray ? PLBijection::bump(s.a - 3, s.a - 2) : PLBijection::bump(s.b + 1, s.b + 2);
  if (g.is_identity() || !fixes_pointwise(g, s)) throw Error("witness construction failed for " + s.describe());
  return g;
}

/// For every basis set S_A of `first`, `mover(S_A)` fixes S_A and moves a
/// point of `ball` (a basis set of `second`). So the `second` identity ball at
/// `ball` contains no `first` identity ball. When the requested direction is
/// impossible (the `first` topology is finer), the kinds come back swapped.
struct DistinctnessWitness {
  RayKind first;
  RayKind second;
  bool swapped = false;
  RaySet ball;

  PLBijection mover(const RaySet& sa) const {
    if (sa.kind != first) throw Error("basis set of the wrong kind");
    if (ball.has_lower()) {
      Rational base = sa.has_upper() ? std::max(sa.b, ball.a) : ball.a;
      return PLBijection::bump(base + 1, base + 2);
    }
    Rational base = sa.has_lower() ? std::min(sa.a, ball.b) : ball.b;
    return PLBijection::bump(base - 2, base - 1);
  }

  /// Point of `ball` moved by mover(sa).
  Rational moved_point(const RaySet& sa) const {
    PLBijection g = mover(sa);
    const auto& br = g.breakpoints();
    return (br.front() + br.back()) / 2;
  }
};

inline DistinctnessWitness distinctness_witness(RayKind first, RayKind second) {
  if (first == second) throw PreconditionError("distinctness needs two different kinds");
  if (second == RayKind::two_sided) {
    DistinctnessWitness w = distinctness_witness(second, first);
    w.swapped = true;
    return w;
  }
  RaySet ball = second == RayKind::upper_ray ? RaySet::upper(0) : RaySet::lower(0);
  return {first, second, false, ball};
}

inline std::vector<Rational> sample_endpoints() {
  std::vector<Rational> out;
  for (int k = -5; k <= 5; ++k) out.emplace_back(k);
  for (int k : {-7, -1, 1, 7}) out.emplace_back(k, 3);
  out.emplace_back(1, 2);
  out.emplace_back(-1, 2);
  return out;
}

inline std::vector<RaySet> sample_basis_sets(RayKind kind) {
  std::vector<RaySet> out;
  auto ends = sample_endpoints();
  for (const auto& a : ends) {
    if (kind == RayKind::upper_ray) out.push_back(RaySet::upper(a));
    if (kind == RayKind::lower_ray) out.push_back(RaySet::lower(a));
    if (kind == RayKind::two_sided)
      for (const auto& b : ends)
        if (a <= b) out.push_back(RaySet::interval(a, b));
  }
  return out;
}

struct CertificateReport {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string counterexample;
  bool passed() const { return failures == 0; }
};

/// Re-validates a distinctness witness over sampled endpoints.
inline CertificateReport check_distinctness(const DistinctnessWitness& w) {
  CertificateReport rep;
  for (const RaySet& sa : sample_basis_sets(w.first)) {
    ++rep.cases;
    PLBijection g = w.mover(sa);
    Rational p = w.moved_point(sa);
    bool ok = !g.is_identity() && fixes_pointwise(g, sa) && w.ball.contains(p) && g(p) != p;
    if (!ok && rep.failures++ == 0) rep.counterexample = sa.describe();
  }
  return rep;
}

struct SupDiscreteReport {
  bool rays_cover = false;
  std::size_t sampled = 0;
  std::size_t fixers = 0;
  std::size_t non_identity_fixers = 0;
  bool passed() const { return rays_cover && non_identity_fixers == 0; }
};

/// Any element fixing (−∞,b] and [a,∞) is the identity when a ≤ b: the two
/// rays cover Q, so every piece meets one of them in an interval.
inline SupDiscreteReport sup_is_discrete_check(const Rational& a, const Rational& b, const std::vector<PLBijection>& sample) {
  if (a > b) throw PreconditionError("rays (-inf," + to_string(b) + "] and [" + to_string(a) + ",inf) do not cover Q");
  SupDiscreteReport rep;
  rep.rays_cover = true;
  for (const auto& g : sample) {
    ++rep.sampled;
    if (fixes_pointwise(g, RaySet::lower(b)) && fixes_pointwise(g, RaySet::upper(a))) {
      ++rep.fixers;
      if (!g.is_identity()) ++rep.non_identity_fixers;
    }
  }
  return rep;
}

struct FixatorReport {
  std::size_t words = 0;
  std::size_t fixators = 0;
  std::size_t failures = 0;
  std::string counterexample;
  bool passed() const { return failures == 0; }
};

/// Words of length ≤ 3 in the sample and its inverses; the ones fixing S
/// must be closed under composition and inversion.
inline FixatorReport fixator_subgroup_check(const RaySet& s, const std::vector<PLBijection>& sample) {
  std::vector<PLBijection> letters;
  for (const auto& g : sample) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  std::vector<PLBijection> words{PLBijection::identity()};
  std::vector<PLBijection> layer{PLBijection::identity()};
  for (int len = 0; len < 3; ++len) {
    std::vector<PLBijection> next;
    for (const auto& w : layer)
      for (const auto& l : letters) {
        PLBijection x = compose(w, l);
        if (std::find(words.begin(), words.end(), x) == words.end()) {
          words.push_back(x);
          next.push_back(std::move(x));
        }
      }
    layer = std::move(next);
  }
  FixatorReport rep;
  rep.words = words.size();
  std::vector<PLBijection> fix;
  for (const auto& w : words)
    if (fixes_pointwise(w, s)) fix.push_back(w);
  rep.fixators = fix.size();
  auto fail = [&](const std::string& what) {
    if (rep.failures++ == 0) rep.counterexample = what;
  };
  for (const auto& f : fix) {
    if (!fixes_pointwise(f.inverse(), s)) fail("inverse of " + f.literal());
    for (const auto& g : fix)
      if (!fixes_pointwise(compose(f, g), s)) fail(f.literal() + " o " + g.literal());
  }
  return rep;
}

/// Random element with up to three breakpoints and slopes from a small set.
inline PLBijection random_pl(Rng& rng) {
  static const Rational slopes[] = {Rational(1, 3), Rational(1, 2), Rational(1), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
  std::size_t m = rng.below(4);
  std::vector<Rational> b;
  while (b.size() < m) {
    Rational x(rng.between(-12, 12), static_cast<long long>(1 + rng.below(3)));
    if (std::find(b.begin(), b.end(), x) == b.end()) b.push_back(x);
  }
  std::sort(b.begin(), b.end());
  std::vector<AffinePiece> p{{slopes[rng.below(7)], Rational(rng.between(-4, 4), static_cast<long long>(1 + rng.below(2)))}};
  for (std::size_t j = 0; j < m; ++j) {
    Rational s = slopes[rng.below(7)];
    p.push_back({s, p.back().offset + (p.back().slope - s) * b[j]});
  }
  return PLBijection(std::move(b), std::move(p));
}

/// Random element supported in [lo, hi], built from bumps.
inline PLBijection random_supported_pl(Rng& rng, const Rational& lo, const Rational& hi) {
  PLBijection g;
  std::size_t bumps = 1 + rng.below(2);
  for (std::size_t k = 0; k < bumps; ++k) {
    Rational u = lo + (hi - lo) * Rational(static_cast<long long>(rng.below(4)), 8);
    Rational v = u + (hi - lo) * Rational(static_cast<long long>(1 + rng.below(4)), 8);
    PLBijection b = PLBijection::bump(u, v);
    g = compose(g, rng.chance(1, 2) ? b : b.inverse());
  }
  return g;
}

}  // namespace unibo
