#include <catch_amalgamated.hpp>

#include "unibo/ulb.hpp"

using namespace unibo;

namespace {

std::vector<Rational> scales(std::initializer_list<int> xs) {
  std::vector<Rational> out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

// least j such that every pair of B at level j lands in level i, by pair scan
std::optional<std::size_t> modulus_oracle(const UniformFiltration& f, const CarrierMap& g, Subset b, std::size_t i) {
  for (std::size_t j = 0; j <= f.depth(); ++j) {
    bool ok = true;
    for (auto x : b.elements())
      for (auto y : b.elements())
        if (f.level(j).contains(x, y) && !f.level(i).contains(g(x), g(y))) ok = false;
    if (ok) return j;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("doubling map modulus on a line") {
  auto f = from_metric(line_metric(6), scales({4, 2, 1}));
  CarrierMap dbl({0, 2, 4, 5, 5, 5});
  Modulus m = uniform_continuity_modulus(f, dbl, Subset::of({0, 1, 2}));
  REQUIRE(m.levels.size() == 3);
  CHECK(m.levels[0] == LevelModulus{ModulusStatus::served, 1});
  CHECK(m.levels[1] == LevelModulus{ModulusStatus::served, 2});
  CHECK(m.levels[2] == LevelModulus{ModulusStatus::served, 2});
  CHECK_FALSE(m.violated());
}

TEST_CASE("modulus agrees with a pair scan") {
  Rng rng(31);
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 1 + rng.below(6);
    auto f = random_filtration(n, 1 + rng.below(3), rng, rng.chance(1, 2));
    std::vector<std::size_t> t(n);
    for (auto& v : t) v = rng.below(n);
    CarrierMap g(t);
    Subset b = rng.subset(n);
    Modulus m = uniform_continuity_modulus(f, g, b);
    for (std::size_t i = 0; i <= f.depth(); ++i) {
      auto j = modulus_oracle(f, g, b, i);
      CHECK(j.has_value() == (m.levels[i].status == ModulusStatus::served));
      if (j) CHECK(*j == m.levels[i].source_level);
    }
  }
}

TEST_CASE("failures are violations only when the finest level is idempotent") {
  UniformFiltration closed({Relation::full(2), Relation::diagonal(2)});
  CarrierMap swap_collapse({0, 0});
  CHECK_FALSE(uniform_continuity_modulus(closed, swap_collapse, Subset::full(2)).violated());

  // a map tearing the finest (non-idempotent) level apart is only exhausted
  Relation chain = Relation::diagonal(3) | Relation::from_pairs(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}});
  UniformFiltration open({Relation::full(3), chain});
  CarrierMap stretch({0, 2, 1});
  Modulus m = uniform_continuity_modulus(open, stretch, Subset::full(3));
  CHECK(m.levels[1].status == ModulusStatus::exhausted);
  CHECK(m.exhausted() == 1);

  UniformFiltration fixed({Relation::full(3), partition_relation(3, {Subset::of({0, 1})})});
  Modulus v = uniform_continuity_modulus(fixed, CarrierMap({0, 2, 1}), Subset::full(3));
  CHECK(v.violated());
}

TEST_CASE("certified index") {
  auto f = from_metric(line_metric(6), scales({4, 2, 1}));
  UlbSpace split(f, BornologyBasis(6, {Subset::of({0, 1, 2}), Subset::of({3, 4, 5})}));
  REQUIRE(split.certified());
  CHECK(*split.certified_index() == 2);
  UlbSpace trivial(f, BornologyBasis::trivial(6));
  CHECK(*trivial.certified_index() == 0);

  UniformFiltration coarse({Relation::full(3)});
  UlbSpace none(coarse, BornologyBasis::singletons(3));
  CHECK_FALSE(none.certified());
  CHECK_THROWS_AS(structural_checks(none), PreconditionError);
}

TEST_CASE("invalid inputs are rejected on construction") {
  UniformFiltration bad({Relation::parse("2 11 01")});
  CHECK_THROWS_AS(UlbSpace(bad, BornologyBasis::trivial(2)), PreconditionError);
  UniformFiltration ok({Relation::full(3)});
  CHECK_THROWS_AS(UlbSpace(ok, BornologyBasis(3, {Subset::of({0, 1}), Subset::of({1, 2})})), PreconditionError);
  CHECK_THROWS_AS(UlbSpace(ok, BornologyBasis::trivial(2)), CarrierMismatch);
}

TEST_CASE("morphisms") {
  auto f = from_metric(line_metric(6), scales({4, 2, 1}));
  UlbSpace s(f, BornologyBasis(6, {Subset::of({0, 1, 2}), Subset::of({3, 4, 5})}));
  auto flip = is_morphism(s, CarrierMap({5, 4, 3, 2, 1, 0}));
  CHECK(flip.passed());
  auto dbl = is_morphism(s, CarrierMap({0, 2, 4, 5, 5, 5}));
  CHECK_FALSE(dbl.modest);
  REQUIRE(dbl.non_modest_witness);
  CHECK(*dbl.non_modest_witness == Subset::of({0, 1, 2}));
  CHECK(is_ulb_automorphism(s, CarrierMap({5, 4, 3, 2, 1, 0})));
  CHECK(is_ulb_automorphism(s, CarrierMap({1, 0, 2, 3, 4, 5})));
  CHECK_FALSE(is_ulb_automorphism(s, CarrierMap({0, 1, 3, 2, 4, 5})));
  CHECK_THROWS_AS(is_ulb_automorphism(s, CarrierMap({0, 0, 1, 2, 3, 4})), PreconditionError);
}

TEST_CASE("structural consequences on random spaces") {
  Rng rng(77);
  std::size_t checked = 0;
  for (int k = 0; k < 300; ++k) {
    std::size_t n = 1 + rng.below(6);
    auto f = random_filtration(n, 1 + rng.below(3), rng, rng.chance(1, 3));
    UlbSpace s(f, random_bornology(n, rng));
    if (!s.certified()) continue;
    ++checked;
    auto rep = structural_checks(s);
    CHECK(rep.closures_bounded);
    CHECK(rep.implication_holds);
    // the bounded entourage connecting X forces X itself to be bounded
    if (rep.certified_star_full) CHECK(is_bounded(s.bornology(), Subset::full(n)));
  }
  CHECK(checked > 50);
}

TEST_CASE("carrier maps") {
  CarrierMap f({1, 2, 0});
  CHECK(f.bijective());
  CHECK(compose(f, f.inverse()) == CarrierMap::identity(3));
  CHECK(f.image(Subset::of({0, 1})) == Subset::of({1, 2}));
  CHECK(f.image(Relation::from_pairs(3, {{0, 1}})) == Relation::from_pairs(3, {{1, 2}}));
  CHECK_THROWS_AS(CarrierMap({0, 3}), Error);
  CHECK_THROWS_AS(CarrierMap::constant(3, 1).inverse(), PreconditionError);
}
