#pragma once

// Shared vocabulary: finite subsets as bit masks, exact rationals, errors,
// verdicts and a reproducible random source.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace unibo {

/// Carriers are dense index ranges 0..n-1 with n at most this bound.
inline constexpr std::size_t kMaxCarrier = 64;

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CarrierMismatch : public Error {
 public:
  CarrierMismatch(std::size_t a, std::size_t b)
      : Error("carrier mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Outcome vocabulary shared by every check. A finite truncation can fail to
/// decide a universally quantified statement; that is `resolution_exhausted`,
/// never `fail`.
enum class Verdict { pass, fail, resolution_exhausted, precondition_unmet };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::resolution_exhausted: return "resolution-exhausted";
    case Verdict::precondition_unmet: return "precondition-unmet";
  }
  return "?";
}

struct Outcome {
  Verdict verdict = Verdict::pass;
  std::string detail;

  bool passed() const { return verdict == Verdict::pass; }
};

/// Subset of a carrier {0..63}.
class Subset {
 public:
  constexpr Subset() = default;

  static constexpr Subset from_bits(std::uint64_t bits) { return Subset(bits); }

  static constexpr Subset full(std::size_t n) {
    return Subset(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  static constexpr Subset singleton(std::size_t x) { return Subset(std::uint64_t{1} << x); }

  static Subset of(std::initializer_list<std::size_t> xs) {
    Subset s;
    for (auto x : xs) s.insert(x);
    return s;
  }

  static Subset of(const std::vector<std::size_t>& xs) {
    Subset s;
    for (auto x : xs) s.insert(x);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(std::size_t x) const { return x < 64 && ((bits_ >> x) & 1u); }
  constexpr void insert(std::size_t x) { bits_ |= std::uint64_t{1} << x; }
  constexpr void erase(std::size_t x) { bits_ &= ~(std::uint64_t{1} << x); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool subset_of(Subset o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(Subset o) const { return (bits_ & o.bits_) != 0; }
  /// Largest element plus one; 0 for the empty set.
  constexpr std::size_t span() const { return 64 - static_cast<std::size_t>(std::countl_zero(bits_)); }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(static_cast<std::size_t>(std::countr_zero(b)));
  }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t x) { out.push_back(x); });
    return out;
  }

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  friend constexpr Subset operator^(Subset a, Subset b) { return Subset(a.bits_ ^ b.bits_); }
  /// Relative complement a \ b.
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(Subset a, Subset b) = default;
  friend constexpr auto operator<=>(Subset a, Subset b) = default;

 private:
  constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

inline std::string to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t x) {
    if (!first) out += ',';
    out += std::to_string(x);
    first = false;
  });
  return out + "}";
}

inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses `p`, `-p` or `p/q` exactly.
inline Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw Error("not a rational: '" + std::string(text) + "'");
  Integer n(std::string(num.front() == '+' ? num.substr(1) : num));
  Integer d(std::string(den.front() == '+' ? den.substr(1) : den));
  if (d == 0) throw Error("zero denominator: '" + std::string(text) + "'");
  return Rational(n, d);
}

/// Seeded mt19937_64 with distribution-free helpers, so that report streams
/// are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish index in [0, n); n > 0.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

  long long between(long long lo, long long hi) {
    return lo + static_cast<long long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool chance(unsigned numerator, unsigned denominator) { return below(denominator) < numerator; }

  Subset subset(std::size_t n) { return Subset::from_bits(engine_()) & Subset::full(n); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace unibo
