#include <catch_amalgamated.hpp>

#include "unibo/born.hpp"

using namespace unibo;

namespace {

// members of the generated coarse structure lie inside Δ ∪ ⋃ B×B over the basis
bool coarse_oracle(const BornologyBasis& b, const Relation& r) {
  Relation envelope = Relation::diagonal(b.carrier());
  for (Subset s : b.sets()) envelope = envelope | Relation::product(b.carrier(), s, s);
  return r.subset_of(envelope);
}

// bounded iff inside a single basis set, by bit arithmetic
bool bounded_oracle(const BornologyBasis& b, Subset s) {
  for (Subset a : b.sets())
    if ((s.bits() & ~a.bits()) == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("bornology axioms") {
  CHECK(validate_bornology(BornologyBasis::trivial(4)).valid);
  CHECK(validate_bornology(BornologyBasis::trivial(4)).connected);
  auto singles = validate_bornology(BornologyBasis::singletons(3));
  CHECK(singles.valid);
  CHECK_FALSE(singles.connected);

  BornologyBasis missing(3, {Subset::of({0, 1})});
  auto rep = validate_bornology(missing);
  CHECK_FALSE(rep.valid);
  CHECK(rep.violations.front().find("{2}") != std::string::npos);

  BornologyBasis overlap(3, {Subset::of({0, 1}), Subset::of({1, 2})});
  CHECK_FALSE(validate_bornology(overlap).valid);

  CHECK_THROWS_AS(BornologyBasis(2, {Subset::of({2})}), Error);
  CHECK_THROWS_AS(BornologyBasis(2, {}), Error);
}

TEST_CASE("coarse membership matches the generating envelope") {
  Rng rng(8);
  for (int k = 0; k < 300; ++k) {
    std::size_t n = 1 + rng.below(6);
    BornologyBasis b = random_bornology(n, rng);
    REQUIRE(validate_bornology(b).valid);
    CoarseOracle c(b);
    for (int j = 0; j < 10; ++j) {
      Relation r = random_relation(n, rng);
      CHECK(c.contains(r) == coarse_oracle(b, r));
      Relation s = detail::random_coarse_entourage(b, rng);
      CHECK(c.contains(s));
    }
  }
}

TEST_CASE("bounded sets round trip through the coarse structure") {
  Rng rng(9);
  for (int k = 0; k < 200; ++k) {
    BornologyBasis b = random_bornology(1 + rng.below(5), rng);
    auto rep = bounded_round_trip(b);
    CHECK(rep.agree);
    CHECK(rep.subsets_checked == (std::size_t{1} << b.carrier()));
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << b.carrier()); ++bits)
      CHECK(is_bounded(b, Subset::from_bits(bits)) == bounded_oracle(b, Subset::from_bits(bits)));
  }
}

TEST_CASE("coarse axioms exhaustive on three points") {
  Rng rng(1);
  for (const auto& b : {BornologyBasis::trivial(3), BornologyBasis::singletons(3),
                        BornologyBasis(3, {Subset::of({0, 1}), Subset::of({2})})}) {
    auto rep = coarse_axioms_suite(b, rng);
    CHECK(rep.exhaustive);
    CHECK(rep.pairs_checked == 512u * 512u);
    CHECK(rep.passed());
  }
}

TEST_CASE("coarse connectivity agrees with bornology connectivity") {
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    BornologyBasis b = random_bornology(4 + rng.below(3), rng);
    auto rep = coarse_axioms_suite(b, rng, 100);
    CHECK_FALSE(rep.exhaustive);
    CHECK(rep.passed());
  }
  CHECK(CoarseOracle(BornologyBasis::trivial(3)).coarsely_connected());
  CHECK_FALSE(CoarseOracle(BornologyBasis::singletons(3)).coarsely_connected());
}

TEST_CASE("invalid bornologies have no coarse structure") {
  BornologyBasis overlap(3, {Subset::of({0, 1}), Subset::of({1, 2})});
  CHECK_THROWS_AS(CoarseOracle(overlap), PreconditionError);
  CHECK_THROWS_AS(bounded_round_trip(BornologyBasis::trivial(21)), PreconditionError);
}
