#pragma once

// Verification suites over a loaded space bundle, the three model demos, and
// the line-oriented report format shared by the CLI and the acceptance run.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unibo/born.hpp"
#include "unibo/core.hpp"
#include "unibo/groupunif.hpp"
#include "unibo/mapspace.hpp"
#include "unibo/qorder.hpp"
#include "unibo/relalg.hpp"
#include "unibo/sigma.hpp"
#include "unibo/spacefile.hpp"
#include "unibo/symz.hpp"
#include "unibo/ulb.hpp"
#include "unibo/unif.hpp"

namespace unibo {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Record {
  std::string suite;
  std::string instance;
  Verdict verdict = Verdict::pass;
  std::vector<std::pair<std::string, std::string>> fields;

  Record& add(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Record& add(std::string key, std::size_t value) { return add(std::move(key), std::to_string(value)); }
  Record& add(std::string key, bool value) { return add(std::move(key), std::string(value ? "yes" : "no")); }
  Record& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
};

enum class ReportFormat { text, records };

inline std::string quote_value(const std::string& v) {
  if (!v.empty() && v.find_first_of(" \t\"=") == std::string::npos) return v;
  std::string out = "\"";
  for (char ch : v) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

inline std::string format_record(const Record& r, ReportFormat fmt) {
  std::string out;
  if (fmt == ReportFormat::records) {
    out = "suite=" + r.suite + " instance=" + quote_value(r.instance) + " verdict=" + std::string(to_string(r.verdict));
    for (const auto& [k, v] : r.fields) out += " " + k + "=" + quote_value(v);
    return out;
  }
  out = std::string(to_string(r.verdict)) + "  " + r.suite + " [" + r.instance + "]";
  for (std::size_t i = 0; i < r.fields.size(); ++i)
    out += (i ? ", " : "  ") + r.fields[i].first + ": " + r.fields[i].second;
  return out;
}

/// 1 when anything failed, 3 when something was exhausted or unmet, else 0.
inline int exit_code(const std::vector<Record>& records) {
  bool incomplete = false;
  for (const auto& r : records) {
    if (r.verdict == Verdict::fail) return 1;
    if (r.verdict != Verdict::pass) incomplete = true;
  }
  return incomplete ? 3 : 0;
}

namespace detail {

inline Record tally_record(const std::string& suite, const std::string& instance, const FamilyTally& t) {
  Record r{suite, instance, t.failures ? Verdict::fail : Verdict::pass, {}};
  r.add("checks", t.checks).add("failures", t.failures);
  if (t.failures) r.add("witness", t.first_witness);
  return r;
}

inline Record identity_record(const std::string& suite, const std::string& instance, const IdentityCheckReport& t) {
  Record r{suite, instance, t.passed() ? Verdict::pass : Verdict::fail, {}};
  r.add("checks", t.checks).add("failures", t.failures);
  if (!t.passed()) r.add("witness", t.counterexample);
  return r;
}

inline Record unmet(const std::string& suite, const std::string& why) {
  Record r{suite, "-", Verdict::precondition_unmet, {}};
  r.add("reason", why);
  return r;
}

inline Relation relation_from_code(std::size_t n, std::uint64_t code) {
  Relation r(n);
  for (std::size_t k = 0; k < n * n; ++k)
    if ((code >> k) & 1u) r.insert(k / n, k % n);
  return r;
}

/// Relation-algebra laws; exhaustive over all triples when n ≤ 2.
inline std::vector<Record> relalg_laws(std::size_t n, std::uint64_t seed, std::size_t budget) {
  FamilyTally assoc, anti, diag, img, star;
  Rng rng(seed);
  auto check = [&](const Relation& r, const Relation& s, const Relation& t) {
    std::string w = "R=" + r.literal() + " S=" + s.literal() + " T=" + t.literal();
    assoc.record(compose(compose(r, s), t) == compose(r, compose(s, t)), w);
    anti.record(inverse(compose(r, s)) == compose(inverse(s), inverse(r)), w);
    Relation d = Relation::diagonal(n);
    diag.record(compose(d, r) == r && compose(r, d) == r, w);
    Subset a = Subset::from_bits(t.row(0).bits());
    img.record(image(compose(r, s), a) == image(s, image(r, a)), w);
  };
  const bool exhaustive = n <= 2;
  if (exhaustive) {
    const std::uint64_t count = std::uint64_t{1} << (n * n);
    for (std::uint64_t a = 0; a < count; ++a)
      for (std::uint64_t b = 0; b < count; ++b)
        for (std::uint64_t c = 0; c < count; ++c)
          check(relation_from_code(n, a), relation_from_code(n, b), relation_from_code(n, c));
  } else {
    for (std::size_t k = 0; k < budget; ++k) {
      Relation r = random_relation(n, rng), s = random_relation(n, rng), t = random_relation(n, rng);
      check(r, s, t);
    }
  }
  for (std::size_t k = 0; k < (exhaustive ? std::size_t{64} : budget); ++k) {
    Relation r = random_relation(n, rng) | Relation::diagonal(n);
    Relation s = iterate_star(r);
    star.record(is_reflexive(s) && r.subset_of(s) && is_idempotent(s), "R=" + r.literal());
  }
  std::vector<Record> out{tally_record("relalg-laws", "associativity", assoc),
                          tally_record("relalg-laws", "inverse-anti-distribution", anti),
                          tally_record("relalg-laws", "diagonal-identity", diag),
                          tally_record("relalg-laws", "image-of-composite", img),
                          tally_record("relalg-laws", "star-closure", star)};
  for (auto& r : out) r.add("carrier", n).add("mode", exhaustive ? "exhaustive" : "random");
  return out;
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "relalg-laws",    "filtration",        "dictionary-roundtrip", "coarse-axioms",      "ulb-structure",
      "lemma-suite",    "composition-continuity", "open-subgroup",   "group-entourages",   "group-lru",
      "group-conjugation", "group-upper-lower", "measure"};
  return names;
}

/// Runs one suite. Deterministic in (bundle, seed, budget); exhaustive suites
/// ignore the seed. `budget` caps randomised instance counts.
inline std::vector<Record> run_suite(const SpaceBundle& b, const std::string& name, std::uint64_t seed,
                                     std::optional<std::size_t> budget = std::nullopt) {
  std::vector<Record> out;
  const std::string& s = name;

  if (s == "relalg-laws") {
    return detail::relalg_laws(b.carrier.value_or(2), seed, budget.value_or(1000));
  }

  if (s == "filtration") {
    if (!b.filtration) return {detail::unmet(s, "no [filtration] or [metric] section")};
    auto rep = validate_filtration(*b.filtration);
    Record r{s, "levels", rep.valid ? Verdict::pass : Verdict::fail, {}};
    r.add("depth", b.filtration->depth()).add("hausdorff", rep.hausdorff_at_resolution);
    r.add("non_archimedean", is_non_archimedean(*b.filtration));
    if (b.bornology) {
      auto c = bounded_entourage_index(*b.filtration, *b.bornology);
      r.add("certified_index", c ? std::to_string(*c) : std::string("none"));
    }
    if (!rep.valid) r.add("witness", rep.violations.front().describe());
    return {r};
  }

  if (s == "dictionary-roundtrip") {
    Rng rng(seed);
    const std::size_t count = budget.value_or(200);
    for (std::size_t k = 0; k < count; ++k) {
      std::size_t n = 1 + rng.below(5);
      BornologyBasis born = random_bornology(n, rng);
      auto rep = bounded_round_trip(born);
      Record r{s, std::to_string(k), rep.agree ? Verdict::pass : Verdict::fail, {}};
      r.add("carrier", n).add("basis_sets", born.sets().size()).add("subsets", rep.subsets_checked);
      if (rep.witness) r.add("witness", to_string(*rep.witness));
      out.push_back(std::move(r));
    }
    return out;
  }

  if (s == "coarse-axioms") {
    if (!b.bornology) return {detail::unmet(s, "no [bornology] section")};
    Rng rng(seed);
    auto rep = coarse_axioms_suite(*b.bornology, rng, budget.value_or(500));
    Record r{s, "bornology", rep.passed() ? Verdict::pass : Verdict::fail, {}};
    r.add("mode", rep.exhaustive ? "exhaustive" : "random").add("pairs", rep.pairs_checked);
    r.add("coarsely_connected", rep.coarsely_connected).add("bornology_connected", rep.bornology_connected);
    if (!rep.passed()) r.add("witness", rep.witness);
    return {r};
  }

  if (s == "ulb-structure") {
    if (!b.space) return {detail::unmet(s, "needs a filtration and a bornology")};
    const UlbSpace& sp = *b.space;
    if (!sp.certified()) {
      Record r{s, "certificate", Verdict::resolution_exhausted, {}};
      r.add("certified_index", "none").add("exhausted_at", sp.filtration().depth());
      return {r};
    }
    auto rep = structural_checks(sp);
    Record r{s, "certificate", rep.passed() ? Verdict::pass : Verdict::fail, {}};
    r.add("certified_index", *sp.certified_index()).add("closures_bounded", rep.closures_bounded);
    r.add("coarsest_components", rep.coarsest_components).add("certified_components", rep.certified_components);
    r.add("bornology_connected", rep.bornology_connected);
    if (rep.unbounded_closure) r.add("witness", "closure of " + to_string(*rep.unbounded_closure) + " unbounded");
    else if (!rep.implication_holds) r.add("witness", "certified entourage connects X but bornology is not connected");
    out.push_back(std::move(r));
    if (b.maps)
      for (std::size_t k = 0; k < b.maps->size(); ++k) {
        auto m = is_morphism(sp, (*b.maps)[k]);
        Verdict v = m.exhausted_levels && m.modest && m.uniformly_continuous_on_bounded ? Verdict::resolution_exhausted
                                                                                        : Verdict::pass;
        Record mr{s, "map-" + std::to_string(k), v, {}};
        mr.add("map", (*b.maps)[k].literal()).add("morphism", m.passed()).add("modest", m.modest);
        mr.add("continuous_on_bounded", m.uniformly_continuous_on_bounded).add("exhausted_levels", m.exhausted_levels);
        if (m.non_modest_witness) mr.add("image_unbounded_for", to_string(*m.non_modest_witness));
        out.push_back(std::move(mr));
      }
    return out;
  }

  if (s == "lemma-suite") {
    if (!b.space || !b.maps) return {detail::unmet(s, "needs a space and a [maps] section")};
    auto rep = lemma_suite(*b.space, *b.maps);
    return {detail::tally_record(s, "composition-inclusion", rep.composition),
            detail::tally_record(s, "idempotent-lift", rep.idempotent),
            detail::tally_record(s, "conjugation-inclusion", rep.conjugation),
            detail::tally_record(s, "separation", rep.separation)};
  }

  if (s == "composition-continuity") {
    if (!b.space || !b.maps) return {detail::unmet(s, "needs a space and a [maps] section")};
    const UlbSpace& sp = *b.space;
    const MapSet& m = *b.maps;
    if (!sp.certified()) {
      Record r{s, "all", Verdict::resolution_exhausted, {}};
      r.add("certified_index", "none");
      return {r};
    }
    EntourageTable table(sp.filtration(), m);
    for (std::size_t target = 0; target <= sp.filtration().depth(); ++target) {
      std::size_t witnesses = 0, exhausted = 0, pairs = 0, unsound = 0;
      std::string witness;
      std::optional<std::size_t> max_source;
      for (std::size_t g = 0; g < m.size(); ++g)
        for (std::size_t h = 0; h < m.size(); ++h)
          for (Subset bs : sp.bornology().sets()) {
            auto o = composition_continuity_witness(sp, m, m[g], m[h], bs, target, table);
            pairs += o.pairs_checked;
            if (!o.witness) {
              ++exhausted;
              continue;
            }
            ++witnesses;
            max_source = std::max(max_source.value_or(0), o.witness->source_level);
            if (!o.sound && unsound++ == 0)
              witness = "g=" + std::to_string(g) + " h=" + std::to_string(h) + " B=" + to_string(bs) + " " + o.counterexample;
          }
      Verdict v = unsound ? Verdict::fail : exhausted ? Verdict::resolution_exhausted : Verdict::pass;
      Record r{s, "target-" + std::to_string(target), v, {}};
      r.add("witnesses", witnesses).add("exhausted", exhausted).add("pairs_checked", pairs);
      if (max_source) r.add("max_source_level", *max_source);
      if (unsound) r.add("witness", witness);
      if (exhausted && !unsound) r.add("exhaustion_index", std::max(target + 1, *sp.certified_index()));
      out.push_back(std::move(r));
    }
    return out;
  }

  if (s == "open-subgroup") {
    if (!b.filtration || !b.maps) return {detail::unmet(s, "needs a filtration and a [maps] section")};
    std::vector<Subset> sets = b.bornology ? b.bornology->sets() : std::vector<Subset>{Subset::full(*b.carrier)};
    for (Subset bs : sets)
      for (std::size_t i = 0; i <= b.filtration->depth(); ++i) {
        if (!is_idempotent(b.filtration->level(i)) || image(b.filtration->level(i), bs) != bs) continue;
        Outcome o = open_subgroup_check(*b.filtration, *b.maps, bs, i);
        Record r{s, "B=" + to_string(bs) + " level=" + std::to_string(i), o.verdict, {}};
        if (!o.detail.empty()) r.add("detail", o.detail);
        out.push_back(std::move(r));
      }
    if (out.empty()) {
      Record r{s, "-", Verdict::precondition_unmet, {}};
      r.add("reason", "no idempotent level saturating a basis set");
      out.push_back(std::move(r));
    }
    return out;
  }

  if (s.rfind("group-", 0) == 0) {
    if (!b.group) return {detail::unmet(s, "no [group] section")};
    const GroupSection& g = *b.group;
    if (s == "group-entourages") {
      FamilyTally meet, lower, left_inv, image_id;
      for (Subset v : g.filtration.levels()) {
        Relation l = group_entourage(g.group, v, GroupUniformity::left);
        Relation r = group_entourage(g.group, v, GroupUniformity::right);
        Relation up = group_entourage(g.group, v, GroupUniformity::upper);
        Relation lo = group_entourage(g.group, v, GroupUniformity::lower);
        std::string w = "V=" + to_string(v);
        meet.record(up == (l & r), w);
        lower.record(l.subset_of(lo) && r.subset_of(lo), w);
        bool inv = true;
        for (std::size_t x = 0; x < g.group.order(); ++x)
          l.row(x).for_each([&](std::size_t y) {
            for (std::size_t t = 0; t < g.group.order(); ++t) inv = inv && l.contains(g.group.mul(t, x), g.group.mul(t, y));
          });
        left_inv.record(inv, w);
        for (Subset bs : g.basis) image_id.record(roelcke_image_identity(g.group, v, bs), w + " B=" + to_string(bs));
      }
      return {detail::tally_record(s, "upper-is-meet", meet), detail::tally_record(s, "lower-contains-left-right", lower),
              detail::tally_record(s, "left-invariance", left_inv), detail::tally_record(s, "lower-image", image_id)};
    }
    if (s == "group-lru") {
      return {detail::identity_record(s, "automorphisms=" + std::to_string(g.automorphisms.size()),
                                      lru_agree_check(g.group, g.automorphisms, g.filtration, g.basis))};
    }
    if (s == "group-conjugation") {
      return {detail::identity_record(s, "automorphisms=" + std::to_string(g.automorphisms.size()),
                                      conjugation_continuity_check(g.group, g.automorphisms, g.filtration, g.basis))};
    }
    if (s == "group-upper-lower") {
      auto rep = upper_lower_compare(g.group, g.automorphisms, g.filtration, g.basis);
      Verdict v = !rep.consistent() ? Verdict::fail : rep.recipe_exhausted ? Verdict::resolution_exhausted : Verdict::pass;
      Record r{s, "automorphisms=" + std::to_string(g.automorphisms.size()), v, {}};
      r.add("order", std::string(to_string(rep.comparison.order))).add("recipe_witnesses", rep.recipe_witnesses);
      r.add("recipe_exhausted", rep.recipe_exhausted).add("recipe_failures", rep.recipe_failures);
      if (rep.recipe_failures) r.add("witness", rep.counterexample);
      return {r};
    }
  }

  if (s == "measure") {
    if (!b.measures) return {detail::unmet(s, "no [measures] section")};
    const MeasureSection& ms = *b.measures;
    UniformFiltration fl = build_measure_filtration(ms.family, ms.thresholds);
    auto vf = validate_filtration(fl);
    Record fr{s, "filtration", vf.valid ? Verdict::pass : Verdict::fail, {}};
    fr.add("carrier", fl.carrier()).add("depth", fl.depth()).add("hausdorff", vf.hausdorff_at_resolution);
    if (!vf.valid) fr.add("witness", vf.violations.front().describe());
    out.push_back(std::move(fr));

    auto sep = separation_check(ms.family);
    Record sr{s, "separation", sep.hausdorff_equivalence() ? Verdict::pass : Verdict::fail, {}};
    sr.add("separates", sep.separates).add("finest_is_diagonal", sep.finest_is_diagonal);
    if (sep.inseparable) {
      std::size_t n = family_ground(ms.family);
      sr.add("inseparable", element_string(sep.inseparable->first, n) + "~" + element_string(sep.inseparable->second, n));
    }
    out.push_back(std::move(sr));

    auto na = zero_one_non_arch(ms.family);
    Record nr{s, "non-archimedean", na.non_archimedean ? Verdict::pass : Verdict::fail, {}};
    nr.add("gap", to_string(na.gap)).add("zero_one_valued", na.zero_one_valued);
    out.push_back(std::move(nr));

    MapSet preserving = measure_preserving_maps(ms.family);
    const Subset all = Subset::full(fl.carrier());
    for (std::size_t i = 0; i <= fl.depth(); ++i) {
      Outcome o = sin_criterion_check(fl, preserving, all, i);
      Record r{s, "conjugation-invariance-" + std::to_string(i), o.verdict, {}};
      r.add("maps", preserving.size());
      if (!o.detail.empty()) r.add("detail", o.detail);
      out.push_back(std::move(r));
    }
    std::size_t n = family_ground(ms.family);
    if (n <= 3) {
      auto ar = atom_recovery(n);
      Record r{s, "atom-recovery", ar.passed() ? Verdict::pass : Verdict::fail, {}};
      r.add("automorphisms", ar.automorphisms).add("induced", ar.induced).add("expected", ar.expected);
      out.push_back(std::move(r));
    }
    return out;
  }

  throw UsageError("unknown suite '" + name + "'");
}

/// Every suite whose sections are present, in the fixed suite order.
inline std::vector<Record> run_all_suites(const SpaceBundle& b, std::uint64_t seed, std::optional<std::size_t> budget) {
  std::vector<Record> out;
  for (const auto& name : suite_names()) {
    auto recs = run_suite(b, name, seed, budget);
    if (recs.size() == 1 && recs.front().verdict == Verdict::precondition_unmet && recs.front().instance == "-") continue;
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

enum class BallKind { conv, biconv, upper, lower };

inline BallKind parse_ball_kind(const std::string& s) {
  if (s == "conv") return BallKind::conv;
  if (s == "biconv") return BallKind::biconv;
  if (s == "upper") return BallKind::upper;
  if (s == "lower") return BallKind::lower;
  throw UsageError("unknown basis kind '" + s + "' (conv, biconv, upper, lower)");
}

/// Compares two identity-neighbourhood bases, "A:B". conv/biconv use the
/// space and its maps; upper/lower use the group and its automorphisms.
inline Record compare_bases(const SpaceBundle& b, const std::string& pair) {
  auto colon = pair.find(':');
  if (colon == std::string::npos) throw UsageError("--bases expects A:B");
  BallKind k1 = parse_ball_kind(pair.substr(0, colon)), k2 = parse_ball_kind(pair.substr(colon + 1));
  bool group1 = k1 == BallKind::upper || k1 == BallKind::lower;
  bool group2 = k2 == BallKind::upper || k2 == BallKind::lower;
  if (group1 != group2) throw UsageError("cannot compare a map-set basis with a group basis");
  Record r{"compare", pair, Verdict::pass, {}};
  auto balls = [&](BallKind k, const MapSet& m, const UniformFiltration& fl, const std::vector<Subset>& sets) {
    std::vector<FunctionEntourage> out;
    for (Subset a : sets)
      for (std::size_t i = 0; i <= fl.depth(); ++i) out.push_back(big_e(fl, m, a, i, k != BallKind::conv));
    return out;
  };
  if (!group1) {
    if (!b.space || !b.maps) return detail::unmet("compare", "needs a space and a [maps] section");
    if ((k1 == BallKind::biconv || k2 == BallKind::biconv) && !b.maps->all_bijective())
      return detail::unmet("compare", "biconvergence needs bijective maps");
    if (!b.maps->contains_identity()) return detail::unmet("compare", "map set lacks the identity");
    const auto& fl = b.space->filtration();
    const auto& sets = b.space->bornology().sets();
    auto c = compare_neighborhood_bases(*b.maps, balls(k1, *b.maps, fl, sets), balls(k2, *b.maps, fl, sets));
    r.add("order", std::string(to_string(c.order))).add("first_discrete", c.first_discrete).add("second_discrete", c.second_discrete);
    return r;
  }
  if (!b.group) return detail::unmet("compare", "no [group] section");
  const GroupSection& g = *b.group;
  MapSet m(g.automorphisms);
  auto kind = [](BallKind k) { return k == BallKind::upper ? GroupUniformity::upper : GroupUniformity::lower; };
  auto c = compare_neighborhood_bases(m, balls(k1, m, to_uniform(g.group, g.filtration, kind(k1)), g.basis),
                                      balls(k2, m, to_uniform(g.group, g.filtration, kind(k2)), g.basis));
  r.add("order", std::string(to_string(c.order))).add("first_discrete", c.first_discrete).add("second_discrete", c.second_discrete);
  return r;
}

// ---- demos ----

inline std::vector<Record> demo_qorder(std::uint64_t seed, std::size_t samples) {
  const std::string s = "qorder-separations";
  std::vector<Record> out;
  for (const RaySet& set : {RaySet::interval(0, 1), RaySet::upper(0), RaySet::lower(0)}) {
    PLBijection g = non_discrete_witness(set);
    bool ok = !g.is_identity() && fixes_pointwise(g, set);
    Record r{s, "non-discrete " + std::string(to_string(set.kind)), ok ? Verdict::pass : Verdict::fail, {}};
    r.add("basis_set", set.describe()).add("witness", g.literal());
    out.push_back(std::move(r));
  }
  const RayKind kinds[] = {RayKind::two_sided, RayKind::upper_ray, RayKind::lower_ray};
  for (RayKind a : kinds)
    for (RayKind b : kinds) {
      if (a == b) continue;
      DistinctnessWitness w = distinctness_witness(a, b);
      auto cert = check_distinctness(w);
      Record r{s, "distinct " + std::string(to_string(a)) + "/" + std::string(to_string(b)),
               cert.passed() ? Verdict::pass : Verdict::fail, {}};
      r.add("ball_kind", std::string(to_string(w.second))).add("ball", w.ball.describe()).add("swapped", w.swapped);
      r.add("cases", cert.cases);
      if (!cert.passed()) r.add("witness", cert.counterexample);
      out.push_back(std::move(r));
    }
  Rng rng(seed);
  std::vector<PLBijection> sample;
  for (std::size_t k = 0; k < samples; ++k) sample.push_back(random_pl(rng));
  auto sup = sup_is_discrete_check(-1, 1, sample);
  Record sr{s, "sup-discrete a=-1 b=1", sup.passed() ? Verdict::pass : Verdict::fail, {}};
  sr.add("sampled", sup.sampled).add("fixers", sup.fixers).add("non_identity_fixers", sup.non_identity_fixers);
  out.push_back(std::move(sr));
  auto fx = fixator_subgroup_check(RaySet::interval(0, 1), {PLBijection::bump(2, 3), PLBijection::bump(4, 7)});
  Record fr{s, "fixator-subgroup [0,1]", fx.passed() ? Verdict::pass : Verdict::fail, {}};
  fr.add("words", fx.words).add("fixators", fx.fixators);
  if (!fx.passed()) fr.add("witness", fx.counterexample);
  out.push_back(std::move(fr));
  return out;
}

inline std::vector<Record> demo_sigma() {
  const std::string s = "sigma-suite";
  std::vector<Record> out;
  struct Family {
    std::string name;
    MeasureFamily fam;
  };
  std::vector<Family> families{{"diracs-3", all_diracs(3)},
                               {"counting-3", {Measure::counting(3)}},
                               {"zero-3", {Measure::zero(3)}},
                               {"weight-1-0", {Measure({Rational(1), Rational(0)})}}};
  for (const auto& f : families) {
    auto sep = separation_check(f.fam);
    Record r{s, "separation " + f.name, sep.hausdorff_equivalence() ? Verdict::pass : Verdict::fail, {}};
    r.add("separates", sep.separates).add("finest_is_diagonal", sep.finest_is_diagonal);
    out.push_back(std::move(r));
    auto na = zero_one_non_arch(f.fam);
    Record nr{s, "non-archimedean " + f.name, na.non_archimedean ? Verdict::pass : Verdict::fail, {}};
    nr.add("gap", to_string(na.gap)).add("zero_one_valued", na.zero_one_valued);
    out.push_back(std::move(nr));
  }
  struct Seq {
    std::string name;
    std::vector<std::size_t> prefix, cycle;
    MeasureFamily fam;
    bool cauchy;
  };
  std::vector<Seq> seqs{{"constant {0,1}", {1}, {3}, {Measure::counting(2)}, true},
                        {"cycle {0},{0,1} dirac-0", {}, {1, 3}, {Measure::dirac(2, 0)}, true},
                        {"cycle {0},{1} counting", {}, {1, 2}, {Measure::counting(2)}, false}};
  for (const auto& q : seqs) {
    auto lr = cauchy_limit_formula(q.prefix, q.cycle, q.fam);
    bool ok = lr.cauchy == q.cauchy && (!lr.cauchy || lr.residual == 0);
    Record r{s, "limit " + q.name, ok ? Verdict::pass : Verdict::fail, {}};
    r.add("cauchy", lr.cauchy);
    if (lr.limit) r.add("limit", element_string(*lr.limit, q.fam.front().ground())).add("residual", to_string(lr.residual));
    else r.add("divergence", lr.divergence);
    out.push_back(std::move(r));
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    auto ar = atom_recovery(n);
    Record r{s, "atom-recovery n=" + std::to_string(n), ar.passed() ? Verdict::pass : Verdict::fail, {}};
    r.add("automorphisms", ar.automorphisms).add("induced", ar.induced);
    out.push_back(std::move(r));
  }
  return out;
}

struct SymzTally {
  std::size_t samples = 0;
  std::size_t non_identity = 0;
  std::size_t upper_failures = 0;
  std::size_t lower_disagreements = 0;
  std::size_t transfer_failures = 0;
  std::string witness;
};

/// Both certificates on `samples` random elements with window ≤ 5.
inline SymzTally symz_batch(std::uint64_t seed, std::size_t samples) {
  Rng rng(seed);
  SymzTally t;
  for (std::size_t k = 0; k < samples; ++k) {
    AffinePerm x = random_affine_perm(rng, 5);
    ++t.samples;
    if (!x.is_identity()) ++t.non_identity;
    auto up = upper_discreteness_certificate(x, 5);
    if (up.verdict() != Verdict::pass && t.upper_failures++ == 0) t.witness = "upper: " + x.literal();
    std::vector<std::int64_t> keys;
    std::size_t nk = 1 + rng.below(4);
    for (std::size_t j = 0; j < nk; ++j) keys.push_back(rng.between(-8, 8));
    auto lo = lower_pointwise_certificate(x, keys);
    bool pointwise = std::all_of(keys.begin(), keys.end(), [&](std::int64_t key) { return x(key) == key; });
    if (lo.inside() != pointwise && t.lower_disagreements++ == 0) t.witness = "lower: " + x.literal();
    if (!lo.transfer_holds() && t.transfer_failures++ == 0) t.witness = "transfer: " + x.literal();
  }
  return t;
}

inline std::vector<Record> demo_symz(std::uint64_t seed, std::size_t samples) {
  const std::string s = "symz-examples";
  std::vector<Record> out;
  AffinePerm rho = AffinePerm::shift(1);
  auto up = upper_discreteness_certificate(rho, 1);
  Record r1{s, "upper rho", up.verdict(), {}};
  r1.add("detected_by", up.detected_by).add("tests", up.tests);
  out.push_back(std::move(r1));
  auto upi = upper_discreteness_certificate(AffinePerm::identity(), 1);
  Record r2{s, "upper id", upi.verdict(), {}};
  r2.add("forced_identity", upi.forced_identity).add("tests", upi.tests);
  out.push_back(std::move(r2));
  auto lo = lower_pointwise_certificate(rho, {0});
  Record r3{s, "lower rho key 0", lo.transfer_holds() && !lo.inside() ? Verdict::pass : Verdict::fail, {}};
  r3.add("image", std::to_string(lo.keys.front().image)).add("inside", lo.inside());
  out.push_back(std::move(r3));
  auto t = symz_batch(seed, samples);
  Verdict v = t.upper_failures + t.lower_disagreements + t.transfer_failures ? Verdict::fail : Verdict::pass;
  Record r4{s, "random batch", v, {}};
  r4.add("samples", t.samples).add("non_identity", t.non_identity).add("upper_failures", t.upper_failures);
  r4.add("lower_disagreements", t.lower_disagreements).add("transfer_failures", t.transfer_failures);
  if (v == Verdict::fail) r4.add("witness", t.witness);
  out.push_back(std::move(r4));
  return out;
}

inline const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names{"qorder-separations", "sigma-suite", "symz-examples"};
  return names;
}

inline std::vector<Record> run_demo(const std::string& name, std::uint64_t seed, std::optional<std::size_t> budget) {
  if (name == "qorder-separations") return demo_qorder(seed, budget.value_or(100));
  if (name == "sigma-suite") return demo_sigma();
  if (name == "symz-examples") return demo_symz(seed, budget.value_or(1000));
  throw UsageError("unknown demo '" + name + "'");
}

}  // namespace unibo
