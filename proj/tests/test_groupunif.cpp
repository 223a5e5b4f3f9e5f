#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "unibo/groupunif.hpp"

using namespace unibo;

namespace {

// automorphisms counted by scanning every permutation of the elements
std::size_t automorphism_count_oracle(const GroupModel& g) {
  std::vector<std::size_t> p(g.order());
  std::iota(p.begin(), p.end(), 0);
  std::size_t count = 0;
  do {
    bool hom = true;
    for (std::size_t a = 0; a < g.order() && hom; ++a)
      for (std::size_t b = 0; b < g.order() && hom; ++b) hom = p[g.mul(a, b)] == g.mul(p[a], p[b]);
    count += hom;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

Relation lower_oracle(const GroupModel& g, Subset v) {
  Relation r(g.order());
  for (auto y : Subset::full(g.order()).elements())
    for (auto a : v.elements())
      for (auto b : v.elements()) r.insert(g.mul(g.mul(a, y), b), y);
  return r;
}

std::size_t transposition_of_01(const GroupModel& s3) {
  for (std::size_t x = 0; x < s3.order(); ++x)
    if (s3.name(x) == "[102]") return x;
  return s3.order();
}

}  // namespace

TEST_CASE("group models") {
  CHECK(GroupModel::symmetric3().order() == 6);
  CHECK(GroupModel::dihedral4().order() == 8);
  CHECK(GroupModel::quaternion8().order() == 8);
  CHECK(GroupModel::cyclic(5).order() == 5);
  auto q = GroupModel::quaternion8();
  // i² = −1, ij = k
  CHECK(q.mul(2, 2) == 1);
  CHECK(q.mul(2, 4) == 6);
  CHECK(q.mul(4, 2) == 7);
  CHECK_THROWS_AS(GroupModel({{0, 1}, {0, 1}}), Error);
  CHECK_THROWS_AS(GroupModel({{1, 0}, {0, 0}}), Error);
}

TEST_CASE("automorphism enumeration") {
  for (const auto& g : {GroupModel::symmetric3(), GroupModel::dihedral4(), GroupModel::quaternion8(), GroupModel::cyclic(6)}) {
    auto auts = all_automorphisms(g);
    CHECK(auts.size() == automorphism_count_oracle(g));
    CHECK(auts.front() == CarrierMap::identity(g.order()));
    for (const auto& f : auts) CHECK(is_automorphism(g, f));
  }
  CHECK(all_automorphisms(GroupModel::symmetric3()).size() == 6);
  CHECK(all_automorphisms(GroupModel::dihedral4()).size() == 8);
  CHECK(all_automorphisms(GroupModel::quaternion8()).size() == 24);
  CHECK(inner_automorphisms(GroupModel::symmetric3()).size() == 6);
  CHECK(inner_automorphisms(GroupModel::quaternion8()).size() == 4);
}

TEST_CASE("group entourages") {
  auto g = GroupModel::symmetric3();
  for (auto kind : {GroupUniformity::left, GroupUniformity::right, GroupUniformity::upper, GroupUniformity::lower}) {
    CHECK(group_entourage(g, g.identity_set(), kind) == Relation::diagonal(6));
    CHECK(group_entourage(g, g.everything(), kind) == Relation::full(6));
  }
  Subset v = g.identity_set() | Subset::singleton(transposition_of_01(g));
  Relation l = group_entourage(g, v, GroupUniformity::left);
  Relation r = group_entourage(g, v, GroupUniformity::right);
  Relation lo = group_entourage(g, v, GroupUniformity::lower);
  CHECK(group_entourage(g, v, GroupUniformity::upper) == (l & r));
  CHECK((l | r).subset_of(lo));
  CHECK(lo == lower_oracle(g, v));
  CHECK(l != r);
  CHECK_THROWS_AS(group_entourage(g, Subset::of({1}), GroupUniformity::left), PreconditionError);
  Subset three_cycle;
  for (std::size_t x = 0; x < 6; ++x)
    if (g.name(x) == "[120]") three_cycle = g.identity_set() | Subset::singleton(x);
  CHECK_THROWS_AS(group_entourage(g, three_cycle, GroupUniformity::left), PreconditionError);
}

TEST_CASE("left entourages are left invariant") {
  for (const auto& g : {GroupModel::symmetric3(), GroupModel::dihedral4(), GroupModel::quaternion8()})
    for (Subset v : symmetric_subsets(g, true)) {
      Relation l = group_entourage(g, v, GroupUniformity::left);
      for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = 0; y < g.order(); ++y)
          if (l.contains(x, y))
            for (std::size_t t = 0; t < g.order(); ++t) CHECK(l.contains(g.mul(t, x), g.mul(t, y)));
      CHECK(lower_oracle(g, v) == group_entourage(g, v, GroupUniformity::lower));
    }
}

TEST_CASE("identity filtrations") {
  auto g = GroupModel::symmetric3();
  CHECK(validate_identity_filtration(g, IdentityFiltration({g.everything(), g.identity_set()})).empty());
  Subset v = g.identity_set() | Subset::singleton(transposition_of_01(g));
  CHECK(validate_identity_filtration(g, IdentityFiltration({g.everything(), v, g.identity_set()})).empty());
  auto bad = validate_identity_filtration(g, IdentityFiltration({v, g.everything()}));
  CHECK_FALSE(bad.empty());
  for (const auto& f : three_step_filtrations(g)) CHECK(validate_identity_filtration(g, f).empty());
}

TEST_CASE("left and right convergence agree on symmetric bounded sets") {
  for (const auto& g : {GroupModel::symmetric3(), GroupModel::dihedral4(), GroupModel::quaternion8()}) {
    auto auts = all_automorphisms(g);
    auto basis = symmetric_subsets(g);
    for (const auto& f : three_step_filtrations(g)) {
      auto rep = lru_agree_check(g, auts, f, basis);
      CHECK(rep.passed());
      CHECK(rep.checks == auts.size() * auts.size() * basis.size() * 3);
    }
  }
  auto g = GroupModel::symmetric3();
  Subset asym;
  for (std::size_t x = 0; x < 6; ++x)
    if (g.name(x) == "[120]") asym = Subset::singleton(x);
  CHECK_THROWS_AS(lru_agree_check(g, all_automorphisms(g), IdentityFiltration({g.everything()}), {asym}),
                  PreconditionError);
}

TEST_CASE("coarsely SIN levels") {
  auto c = GroupModel::cyclic(4);
  IdentityFiltration cf({c.everything(), Subset::of({0, 2}), Subset::of({0})});
  CHECK(validate_identity_filtration(c, cf).empty());
  CHECK(coarsely_sin_check(c, cf, c.everything(), c.everything()) == std::optional<std::size_t>(0));
  CHECK(coarsely_sin_check(c, cf, Subset::of({0, 2}), c.everything()) == std::optional<std::size_t>(1));
  CHECK(coarsely_sin_check(c, cf, Subset::of({0, 1, 3}), Subset::of({0})) == std::optional<std::size_t>(2));

  auto g = GroupModel::symmetric3();
  Subset a3;
  for (std::size_t x = 0; x < 6; ++x)
    if (g.name(x) == "[012]" || g.name(x) == "[120]" || g.name(x) == "[201]") a3.insert(x);
  IdentityFiltration f({g.everything(), a3, g.identity_set()});
  CHECK(coarsely_sin_check(g, f, a3, g.everything()) == std::optional<std::size_t>(1));
  Subset v = g.identity_set() | Subset::singleton(transposition_of_01(g));
  IdentityFiltration f2({g.everything(), v});
  // conjugates of the transposition leave V
  CHECK(coarsely_sin_check(g, f2, v, g.everything()) == std::nullopt);
}

TEST_CASE("upper and lower topologies") {
  auto c = GroupModel::cyclic(6);
  for (const auto& f : three_step_filtrations(c)) {
    auto rep = upper_lower_compare(c, all_automorphisms(c), f, symmetric_subsets(c));
    CHECK(rep.comparison.order == BasisOrder::equivalent);
    CHECK(rep.consistent());
  }
  auto g = GroupModel::symmetric3();
  auto full = upper_lower_compare(g, all_automorphisms(g), IdentityFiltration({g.everything(), g.identity_set()}),
                                  symmetric_subsets(g));
  CHECK(full.comparison.order == BasisOrder::equivalent);
  CHECK(full.consistent());
  auto trivial = upper_lower_compare(g, {CarrierMap::identity(6)}, IdentityFiltration({g.everything()}), {g.everything()});
  CHECK(trivial.comparison.order == BasisOrder::equivalent);
  for (const auto& grp : {GroupModel::dihedral4(), GroupModel::quaternion8()})
    for (const auto& f : three_step_filtrations(grp))
      CHECK(upper_lower_compare(grp, all_automorphisms(grp), f, symmetric_subsets(grp)).consistent());
}

TEST_CASE("conjugation stays inside the lower ball") {
  for (const auto& g : {GroupModel::symmetric3(), GroupModel::dihedral4(), GroupModel::quaternion8()})
    for (const auto& f : three_step_filtrations(g)) {
      auto rep = conjugation_continuity_check(g, all_automorphisms(g), f, symmetric_subsets(g));
      CHECK(rep.passed());
      CHECK(rep.checks > 0);
    }
  auto g = GroupModel::symmetric3();
  CHECK_THROWS_AS(conjugation_continuity_check(g, {CarrierMap::identity(6)}, IdentityFiltration({g.everything()}),
                                               {g.everything()}),
                  PreconditionError);
}

TEST_CASE("lower image identity") {
  for (const auto& g : {GroupModel::symmetric3(), GroupModel::quaternion8()})
    for (Subset v : symmetric_subsets(g, true))
      for (Subset b : symmetric_subsets(g)) CHECK(roelcke_image_identity(g, v, b));
}

TEST_CASE("bounded sets of an exhaustion") {
  auto g = GroupModel::cyclic(8);
  std::vector<Subset> ex{Subset::of({0}), Subset::of({0, 4}), Subset::of({0, 2, 4, 6}), g.everything()};
  CHECK(bounded_in_exhaustion(g, g.identity_set(), ex) == std::optional<std::size_t>(1));
  CHECK(bounded_in_exhaustion(g, Subset::of({2}), ex) == std::optional<std::size_t>(3));
  CHECK(bounded_in_exhaustion(g, Subset::of({1}), ex) == std::optional<std::size_t>(4));
  std::vector<Subset> prefix(ex.begin(), ex.begin() + 2);
  CHECK(bounded_in_exhaustion(g, Subset::of({1}), prefix) == std::nullopt);
  std::vector<Subset> bad{Subset::of({0, 1, 7}), Subset::of({0, 1, 2, 6, 7})};
  CHECK_NOTHROW(bounded_in_exhaustion(g, Subset::of({0}), bad));
  std::vector<Subset> worse{Subset::of({0, 1, 7}), Subset::of({0, 1, 7})};
  CHECK_THROWS_AS(bounded_in_exhaustion(g, Subset::of({0}), worse), PreconditionError);
}
