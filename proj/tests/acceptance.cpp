// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "unibo/groupunif.hpp"
#include "unibo/mapspace.hpp"
#include "unibo/qorder.hpp"
#include "unibo/sigma.hpp"
#include "unibo/spacefile.hpp"
#include "unibo/suites.hpp"
#include "unibo/symz.hpp"

using namespace unibo;

namespace {

// Sample sizes and fixed seeds. Every criterion demands zero failures.
constexpr std::size_t kRandomTriples = 1000;
constexpr std::size_t kRandomBornologies = 200;
constexpr std::size_t kContinuityStructures = 20;
constexpr std::size_t kContinuityDepth = 3;
constexpr std::size_t kSupSamples = 100;
constexpr std::size_t kMeasureFamilies = 100;
constexpr std::size_t kCauchySequences = 100;
constexpr std::size_t kNonCauchySequences = 20;
constexpr std::size_t kAffinePerms = 1000;
constexpr std::int64_t kMaxWindow = 5;

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void operator()(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  }
  bool passed() const { return failures == 0 && checks > 0; }
};

Relation relation_from_bits(std::size_t n, std::uint64_t bits) {
  Relation r(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if ((bits >> (x * n + y)) & 1u) r.insert(x, y);
  return r;
}

void check_laws(const Relation& a, const Relation& b, const Relation& c, Tally& t) {
  const Relation id = Relation::diagonal(a.size());
  std::string w = a.literal() + " " + b.literal() + " " + c.literal();
  t(compose(compose(a, b), c) == compose(a, compose(b, c)), "associativity " + w);
  t(inverse(compose(a, b)) == compose(inverse(b), inverse(a)), "inverse " + w);
  t(compose(id, a) == a && compose(a, id) == a, "identity " + w);
}

Tally criterion1() {
  Tally t;
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t b = 0; b < 16; ++b)
      for (std::uint64_t c = 0; c < 16; ++c)
        check_laws(relation_from_bits(2, a), relation_from_bits(2, b), relation_from_bits(2, c), t);
  Rng rng(101);
  for (std::size_t k = 0; k < kRandomTriples; ++k)
    check_laws(random_relation(6, rng), random_relation(6, rng), random_relation(6, rng), t);
  return t;
}

Tally criterion2() {
  Tally t;
  Rng rng(202);
  for (std::size_t k = 0; k < kRandomBornologies; ++k) {
    BornologyBasis b = random_bornology(1 + rng.below(5), rng);
    auto rep = bounded_round_trip(b);
    t(rep.agree && rep.subsets_checked == (std::size_t{1} << b.carrier()), "round trip on " + std::to_string(k));
  }
  std::vector<BornologyBasis> threes{BornologyBasis::trivial(3), BornologyBasis::singletons(3),
                                     BornologyBasis(3, {Subset::of({0, 1}), Subset::of({2})}),
                                     BornologyBasis(3, {Subset::of({0, 2}), Subset::of({1})}),
                                     BornologyBasis(3, {Subset::of({1, 2}), Subset::of({0})})};
  for (const auto& b : threes) {
    auto rep = coarse_axioms_suite(b, rng);
    t(rep.exhaustive && rep.passed(), "coarse axioms: " + rep.witness);
  }
  return t;
}

Tally criterion3() {
  Tally t;
  Rng rng(303);
  auto m = MapSet::all_endomaps(3);
  std::size_t structures = 0;
  while (structures < kContinuityStructures) {
    std::size_t depth = kContinuityDepth + rng.below(2);
    UlbSpace s(random_filtration(3, depth, rng), random_bornology(3, rng));
    if (!s.certified()) continue;
    ++structures;
    const std::size_t k = s.filtration().depth();
    EntourageTable table(s.filtration(), m);
    for (std::size_t g = 0; g < m.size(); ++g)
      for (std::size_t h = 0; h < m.size(); ++h)
        for (Subset b : s.bornology().sets())
          for (std::size_t i = 0; i <= k; ++i) {
            auto o = composition_continuity_witness(s, m, m[g], m[h], b, i, table);
            std::string w = "g=" + std::to_string(g) + " h=" + std::to_string(h) + " i=" + std::to_string(i);
            if (i + 2 <= k) t(o.witness && o.sound && o.pairs_checked == m.size() * m.size(), "witness " + w);
            else t(o.verdict() != Verdict::fail, "soundness " + w);
          }
  }
  return t;
}

Tally criterion4() {
  Tally t;
  Rng rng(404);
  std::vector<UlbSpace> spaces;
  spaces.emplace_back(UniformFiltration({Relation::full(3), partition_relation(3, {Subset::of({0, 1})})}),
                      BornologyBasis::trivial(3));
  spaces.emplace_back(UniformFiltration({Relation::full(3), Relation::diagonal(3)}), BornologyBasis::singletons(3));
  for (int k = 0; k < 20; ++k)
    spaces.emplace_back(random_filtration(3, 1 + rng.below(3), rng, rng.chance(1, 2)), random_bornology(3, rng));
  for (const auto& s : spaces)
    for (const auto& m : {MapSet::all_endomaps(3), MapSet::all_permutations(3)}) {
      auto rep = lemma_suite(s, m);
      t(rep.passed(), rep.composition.first_witness + rep.idempotent.first_witness + rep.conjugation.first_witness +
                          rep.separation.first_witness);
    }
  return t;
}

std::vector<GroupModel> small_groups() {
  return {GroupModel::symmetric3(), GroupModel::dihedral4(), GroupModel::quaternion8()};
}

Tally criterion5() {
  Tally t;
  for (const auto& g : small_groups()) {
    auto auts = all_automorphisms(g);
    auto basis = symmetric_subsets(g);
    for (const auto& f : three_step_filtrations(g)) {
      auto rep = lru_agree_check(g, auts, f, basis);
      t(rep.passed(), rep.counterexample);
    }
  }
  return t;
}

Tally criterion6() {
  Tally t;
  for (const auto& g : small_groups()) {
    auto auts = all_automorphisms(g);
    auto basis = symmetric_subsets(g);
    for (const auto& f : three_step_filtrations(g)) {
      auto rep = conjugation_continuity_check(g, auts, f, basis);
      t(rep.passed(), rep.counterexample);
    }
  }
  return t;
}

Tally criterion7() {
  Tally t;
  for (auto kind : {RayKind::two_sided, RayKind::upper_ray, RayKind::lower_ray})
    for (const auto& s : sample_basis_sets(kind)) {
      bool ok = false;
      try {
        auto g = non_discrete_witness(s);
        ok = !g.is_identity() && fixes_pointwise(g, s);
      } catch (const Error&) {
      }
      t(ok, "non-discrete " + s.describe());
    }
  const RayKind kinds[] = {RayKind::two_sided, RayKind::upper_ray, RayKind::lower_ray};
  for (auto a : kinds)
    for (auto b : kinds)
      if (a != b) {
        auto rep = check_distinctness(distinctness_witness(a, b));
        t(rep.passed() && rep.cases > 0, std::string(to_string(a)) + " vs " + std::string(to_string(b)) + ": " +
                                             rep.counterexample);
      }
  Rng rng(707);
  std::vector<PLBijection> sample;
  for (std::size_t k = 0; k < kSupSamples; ++k) sample.push_back(random_pl(rng));
  for (auto [a, b] : {std::pair{0, 0}, std::pair{-3, 4}, std::pair{1, 2}}) {
    auto rep = sup_is_discrete_check(Rational(a), Rational(b), sample);
    t(rep.passed() && rep.sampled == kSupSamples, "sup on [" + std::to_string(a) + "," + std::to_string(b) + "]");
  }
  return t;
}

Rational family_distance(const MeasureFamily& fam, std::size_t a, std::size_t b) {
  Rational best = 0;
  for (const auto& mu : fam) best = std::max(best, sym_diff_distance(mu, a, b));
  return best;
}

MeasureFamily random_family(std::size_t n, Rng& rng, bool zero_one) {
  MeasureFamily fam;
  std::size_t count = 1 + rng.below(3);
  for (std::size_t m = 0; m < count; ++m) {
    if (zero_one) {
      fam.push_back(rng.chance(1, 4) ? Measure::zero(n) : Measure::dirac(n, rng.below(n)));
      continue;
    }
    std::vector<Rational> w;
    for (std::size_t x = 0; x < n; ++x)
      w.push_back(rng.chance(1, 3) ? Rational(0) : Rational(static_cast<long long>(1 + rng.below(5)), static_cast<long long>(1 + rng.below(4))));
    fam.emplace_back(std::move(w));
  }
  return fam;
}

Tally criterion8() {
  Tally t;
  constexpr std::size_t n = 4;
  Rng rng(808);
  for (std::size_t k = 0; k < kMeasureFamilies; ++k) {
    auto fam = random_family(n, rng, false);
    auto rep = separation_check(fam);
    bool separates = true;
    for (std::size_t a = 0; a < (1u << n); ++a)
      for (std::size_t b = a + 1; b < (1u << n); ++b) separates = separates && family_distance(fam, a, b) > 0;
    t(rep.hausdorff_equivalence() && rep.separates == separates, "separation family " + std::to_string(k));
    auto zo = zero_one_non_arch(random_family(n, rng, true));
    t(zo.zero_one_valued && zo.non_archimedean, "zero-one family " + std::to_string(k));
  }
  std::size_t cauchy = 0, broken = 0;
  while (cauchy < kCauchySequences || broken < kNonCauchySequences) {
    auto fam = random_family(n, rng, false);
    std::size_t null_points = 0, charged = 0;
    for (std::size_t x = 0; x < n; ++x) {
      bool c = false;
      for (const auto& mu : fam) c = c || mu.weights()[x] > 0;
      (c ? charged : null_points) |= std::size_t{1} << x;
    }
    std::vector<std::size_t> prefix(rng.below(4));
    for (auto& a : prefix) a = rng.below(1u << n);
    std::size_t base = rng.below(1u << n);
    std::vector<std::size_t> cycle(1 + rng.below(3));
    for (auto& a : cycle) a = base ^ (rng.below(1u << n) & null_points);
    if (cauchy < kCauchySequences) {
      ++cauchy;
      auto rep = cauchy_limit_formula(prefix, cycle, fam);
      // the limit is null-distance from every late term
      bool ok = rep.cauchy && rep.limit && rep.residual == 0;
      for (auto a : cycle) ok = ok && rep.limit && family_distance(fam, a, *rep.limit) == 0;
      t(ok, "cauchy sequence " + std::to_string(cauchy));
    }
    if (charged && broken < kNonCauchySequences) {
      ++broken;
      std::size_t x = static_cast<std::size_t>(std::countr_zero(charged));
      cycle.push_back(cycle.front() ^ (std::size_t{1} << x));
      auto rep = cauchy_limit_formula(prefix, cycle, fam);
      t(!rep.cauchy && !rep.limit, "non-cauchy sequence " + std::to_string(broken));
    }
  }
  const std::size_t expected[] = {1, 2, 6};
  for (std::size_t k = 1; k <= 3; ++k) {
    auto rep = atom_recovery(k);
    t(rep.passed() && rep.automorphisms == expected[k - 1], "atoms n=" + std::to_string(k));
  }
  return t;
}

Tally criterion9() {
  Tally t;
  Rng rng(909);
  for (std::size_t k = 0; k < kAffinePerms; ++k) {
    auto x = random_affine_perm(rng, kMaxWindow);
    auto up = upper_discreteness_certificate(x, kMaxWindow);
    t(x.is_identity() ? up.all_pass : !up.all_pass, "upper " + x.literal());
    std::vector<std::int64_t> keys;
    for (int j = 0, m = static_cast<int>(1 + rng.below(3)); j < m; ++j) keys.push_back(rng.between(-8, 8));
    auto low = lower_pointwise_certificate(x, keys);
    bool fixes = true;
    for (auto key : keys) fixes = fixes && x(key) == key;
    t(low.transfer_holds() && low.inside() == fixes, "lower " + x.literal());
  }
  return t;
}

std::string full_report(std::uint64_t seed) {
  std::string out;
  for (const char* name : {"minimal.space", "line6.space", "endo3.space", "perm3.space", "s3.space", "q8.space", "measures.space"}) {
    auto bundle = load_space(std::string(UNIBO_DATA_DIR) + "/" + name);
    for (const auto& r : run_all_suites(bundle, seed, std::nullopt)) out += format_record(r, ReportFormat::records) + '\n';
  }
  for (const auto& d : demo_names())
    for (const auto& r : run_demo(d, seed, std::nullopt)) out += format_record(r, ReportFormat::records) + '\n';
  return out;
}

Tally criterion10() {
  Tally t;
  std::string a = full_report(42), b = full_report(42);
  t(!a.empty() && a == b, "report streams differ");
  return t;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Tally()>>> criteria{
      {"relation algebra laws", criterion1},
      {"bornology and coarse structure round trip", criterion2},
      {"composition continuity witnesses", criterion3},
      {"function space lemma suite", criterion4},
      {"left and right convergence agree", criterion5},
      {"conjugation inside the lower ball", criterion6},
      {"ray topology separations", criterion7},
      {"measure algebra checks", criterion8},
      {"affine permutation certificates", criterion9},
      {"deterministic reports", criterion10},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    auto start = std::chrono::steady_clock::now();
    Tally t;
    std::string error;
    try {
      t = criteria[k].second();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = error.empty() && t.passed();
    failed += !ok;
    std::printf("%s %2zu %s: %zu checks, %zu failures, %.2fs", ok ? "PASS" : "FAIL", k + 1, criteria[k].first, t.checks,
                t.failures, secs);
    if (!error.empty()) std::printf(" (error: %s)", error.c_str());
    else if (!ok) std::printf(" (first: %s)", t.first.c_str());
    std::printf("\n");
  }
  return failed ? 1 : 0;
}
