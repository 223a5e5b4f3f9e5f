#pragma once

// Permutations of Z that are affine outside a window: x ↦ εx + c for |x| > N
// and an explicit patch on [−N, N]. Enough to compute with the shift ρ, the
// reflection τ and their conjugates exactly.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "unibo/core.hpp"

namespace unibo {

class AffinePerm {
 public:
  AffinePerm() = default;

  /// `patch[i]` is the image of i − radius; radius −1 means no window.
  AffinePerm(int sign, std::int64_t offset, std::int64_t radius, std::vector<std::int64_t> patch)
      : sign_(sign), offset_(offset), radius_(radius), patch_(std::move(patch)) {
    if (sign != 1 && sign != -1) throw Error("sign must be +1 or -1");
    if (radius < -1) throw Error("window radius must be >= -1");
    if (static_cast<std::int64_t>(patch_.size()) != (radius < 0 ? 0 : 2 * radius + 1))
      throw Error("patch must cover [-" + std::to_string(radius) + ", " + std::to_string(radius) + "]");
    std::vector<std::int64_t> expected, got = patch_;
    for (std::int64_t x = -radius; x <= radius; ++x) expected.push_back(affine(x));
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    if (got != expected) throw Error("patch is not a bijection onto the affine image of the window");
    minimize();
  }

  static AffinePerm identity() { return {}; }
  static AffinePerm shift(std::int64_t n) { return AffinePerm(1, n, -1, {}); }
  static AffinePerm negation() { return AffinePerm(-1, 0, -1, {}); }
  /// x ↦ 2k − x.
  static AffinePerm reflection_at(std::int64_t k) { return AffinePerm(-1, 2 * k, -1, {}); }

  /// Affine part plus explicit values on a window; unspecified window points
  /// keep their affine value.
  static AffinePerm from_pairs(int sign, std::int64_t offset, const std::map<std::int64_t, std::int64_t>& pairs) {
    std::int64_t r = -1;
    for (const auto& [x, y] : pairs) r = std::max(r, x < 0 ? -x : x);
    std::vector<std::int64_t> patch;
    for (std::int64_t x = -r; x <= r; ++x) {
      auto it = pairs.find(x);
      patch.push_back(it != pairs.end() ? it->second : sign * x + offset);
    }
    return AffinePerm(sign, offset, r, std::move(patch));
  }

  /// Parses "(sign, offset, [(i, x(i)), ...])".
  static AffinePerm parse(std::string_view text) {
    std::string s;
    for (char ch : text)
      s += (ch == '(' || ch == ')' || ch == '[' || ch == ']' || ch == ',') ? ' ' : ch;
    std::istringstream in(s);
    long long sign = 0, offset = 0;
    if (!(in >> sign >> offset)) throw Error("affine permutation literal needs sign and offset");
    std::map<std::int64_t, std::int64_t> pairs;
    long long x = 0, y = 0;
    while (in >> x) {
      if (!(in >> y)) throw Error("patch entry " + std::to_string(x) + " has no image");
      if (!pairs.emplace(x, y).second) throw Error("patch entry " + std::to_string(x) + " repeated");
    }
    if (!in.eof()) throw Error("unexpected text in affine permutation literal");
    return from_pairs(static_cast<int>(sign), offset, pairs);
  }

  std::string literal() const {
    std::string out = "(" + std::to_string(sign_) + ", " + std::to_string(offset_) + ", [";
    for (std::int64_t x = -radius_; x <= radius_; ++x) {
      if (x != -radius_) out += ", ";
      out += "(" + std::to_string(x) + ", " + std::to_string((*this)(x)) + ")";
    }
    return out + "])";
  }

  int sign() const { return sign_; }
  std::int64_t offset() const { return offset_; }
  std::int64_t radius() const { return radius_; }
  bool is_identity() const { return sign_ == 1 && offset_ == 0 && radius_ < 0; }

  std::int64_t affine(std::int64_t x) const { return sign_ * x + offset_; }

  std::int64_t operator()(std::int64_t x) const {
    if (x < -radius_ || x > radius_) return affine(x);
    return patch_[static_cast<std::size_t>(x + radius_)];
  }

  AffinePerm inverse() const {
    const std::int64_t c = offset_ < 0 ? -offset_ : offset_;
    const std::int64_t r = radius_ < 0 ? -1 : radius_ + c;
    std::map<std::int64_t, std::int64_t> back;
    for (std::int64_t x = -radius_; x <= radius_; ++x) back[(*this)(x)] = x;
    std::vector<std::int64_t> patch;
    for (std::int64_t y = -r; y <= r; ++y) {
      auto it = back.find(y);
      patch.push_back(it != back.end() ? it->second : sign_ * (y - offset_));
    }
    return AffinePerm(sign_, -sign_ * offset_, r, std::move(patch));
  }

  friend bool operator==(const AffinePerm&, const AffinePerm&) = default;

 private:
  void minimize() {
    while (radius_ >= 0 && patch_.front() == affine(-radius_) && patch_.back() == affine(radius_)) {
      if (radius_ == 0) {
        patch_.clear();
      } else {
        patch_.pop_back();
        patch_.erase(patch_.begin());
      }
      --radius_;
    }
  }

  int sign_ = 1;
  std::int64_t offset_ = 0;
  std::int64_t radius_ = -1;
  std::vector<std::int64_t> patch_;
};

/// (f ∘ g)(x) = f(g(x)).
inline AffinePerm compose(const AffinePerm& f, const AffinePerm& g) {
  const std::int64_t cg = g.offset() < 0 ? -g.offset() : g.offset();
  const std::int64_t r = std::max(g.radius(), f.radius() < 0 ? -1 : f.radius() + cg);
  std::vector<std::int64_t> patch;
  for (std::int64_t x = -r; x <= r; ++x) patch.push_back(f(g(x)));
  return AffinePerm(f.sign() * g.sign(), f.sign() * g.offset() + f.offset(), r, std::move(patch));
}

inline AffinePerm conjugate(const AffinePerm& x, const AffinePerm& s) { return compose(compose(x, s), x.inverse()); }

struct FixedPoints {
  bool infinite = false;
  /// All fixed points when finite; those inside the window otherwise.
  std::set<std::int64_t> points;
};

inline FixedPoints fixed_points(const AffinePerm& f) {
  FixedPoints fp;
  for (std::int64_t x = -f.radius(); x <= f.radius(); ++x)
    if (f(x) == x) fp.points.insert(x);
  if (f.sign() == 1) {
    fp.infinite = f.offset() == 0;
  } else if (f.offset() % 2 == 0) {
    std::int64_t h = f.offset() / 2;
    if (h < -f.radius() || h > f.radius()) fp.points.insert(h);
  }
  return fp;
}

struct UpperCertificate {
  std::size_t tests = 0;
  bool all_pass = true;
  bool forced_identity = false;
  std::string detected_by;

  /// x = id with every test passing, or x ≠ id caught by some test.
  Verdict verdict() const {
    if (forced_identity) return all_pass ? Verdict::pass : Verdict::fail;
    return all_pass ? Verdict::fail : Verdict::pass;
  }
};

/// Tests σ ∈ {τ} ∪ {ρ^n : 1 ≤ |n| ≤ 2N+2}: does (xσx⁻¹)⁻¹σ fix 0? All
/// passing forces x(0) = 0 and x to fix ±1..±(2N+2), hence x = id.
inline UpperCertificate upper_discreteness_certificate(const AffinePerm& x, std::int64_t n) {
  if (n < 1) throw PreconditionError("window bound must be positive");
  if (x.radius() > n) throw PreconditionError("window radius " + std::to_string(x.radius()) + " exceeds " + std::to_string(n));
  std::vector<std::pair<std::string, AffinePerm>> family{{"tau", AffinePerm::negation()}};
  for (std::int64_t k = 1; k <= 2 * n + 2; ++k) {
    family.emplace_back("rho^" + std::to_string(k), AffinePerm::shift(k));
    family.emplace_back("rho^-" + std::to_string(k), AffinePerm::shift(-k));
  }
  UpperCertificate cert;
  for (const auto& [name, s] : family) {
    ++cert.tests;
    AffinePerm test = compose(conjugate(x, s).inverse(), s);
    if (test(0) != 0 && cert.all_pass) {
      cert.all_pass = false;
      cert.detected_by = name;
    }
  }
  cert.forced_identity = x.is_identity();
  return cert;
}

struct KeyVerdict {
  std::int64_t key = 0;
  std::int64_t image = 0;
  /// fixed points of xσ_kx⁻¹ are exactly {x(k)}
  bool fixed_point_transfer = false;
  bool inside = false;
};

struct LowerCertificate {
  std::vector<KeyVerdict> keys;

  bool transfer_holds() const {
    return std::all_of(keys.begin(), keys.end(), [](const KeyVerdict& k) { return k.fixed_point_transfer; });
  }
  bool inside() const { return std::all_of(keys.begin(), keys.end(), [](const KeyVerdict& k) { return k.inside; }); }
};

/// With V the fixator of the keys, every element of Vσ_kV fixes k, while
/// xσ_kx⁻¹ fixes only x(k). So xσ_kx⁻¹ ∈ Vσ_kV forces x(k) = k.
inline LowerCertificate lower_pointwise_certificate(const AffinePerm& x, const std::vector<std::int64_t>& keys) {
  LowerCertificate cert;
  for (auto k : keys) {
    KeyVerdict v;
    v.key = k;
    v.image = x(k);
    FixedPoints fp = fixed_points(conjugate(x, AffinePerm::reflection_at(k)));
    v.fixed_point_transfer = !fp.infinite && fp.points == std::set<std::int64_t>{v.image};
    v.inside = v.image == k;
    cert.keys.push_back(v);
  }
  return cert;
}

/// Window radius up to `max_radius`, sign ±1, offset in [−3, 3].
inline AffinePerm random_affine_perm(Rng& rng, std::int64_t max_radius = 5) {
  int sign = rng.chance(1, 2) ? 1 : -1;
  std::int64_t offset = rng.between(-3, 3);
  std::int64_t r = rng.between(-1, max_radius);
  std::vector<std::int64_t> targets;
  for (std::int64_t x = -r; x <= r; ++x) targets.push_back(sign * x + offset);
  rng.shuffle(targets);
  return AffinePerm(sign, offset, r, std::move(targets));
}

}  // namespace unibo
