#pragma once

// Space files: a line-oriented description of a finite model.
//
//   carrier 3
//   [filtration]          level <row> <row> ...       (one per level, coarsest first)
//   [metric]              row <d> ...   scales <a> ...
//   [bornology]           set <x> ...  | trivial | singletons
//   [maps]                map <f(0)> ... | endomaps all | permutations all
//   [group]               model S3|D4|Q8|C<n> | row <a·0> ...   level <g> ... | level all
//                         auto inner|all   set <g> ...
//   [measures]            weights <w> ...   thresholds <e> ...
//
// '#' starts a comment. Numbers may be rationals p/q where it makes sense.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "unibo/born.hpp"
#include "unibo/core.hpp"
#include "unibo/groupunif.hpp"
#include "unibo/mapspace.hpp"
#include "unibo/relalg.hpp"
#include "unibo/sigma.hpp"
#include "unibo/ulb.hpp"
#include "unibo/unif.hpp"

namespace unibo {

class ValidationError : public Error {
 public:
  using Error::Error;
};

struct GroupSection {
  GroupModel group;
  IdentityFiltration filtration;
  std::vector<CarrierMap> automorphisms;
  std::vector<Subset> basis;
};

struct MeasureSection {
  MeasureFamily family;
  std::vector<Rational> thresholds;
};

struct SpaceBundle {
  std::optional<std::size_t> carrier;
  std::optional<UniformFiltration> filtration;
  std::optional<BornologyBasis> bornology;
  std::optional<UlbSpace> space;
  std::optional<MapSet> maps;
  std::optional<GroupSection> group;
  std::optional<MeasureSection> measures;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

inline std::size_t parse_index(const Token& t, std::size_t line) {
  std::size_t v = 0;
  if (t.text.empty() || t.text.size() > 9) throw ParseError(line, t.column, "expected a small nonnegative integer");
  for (char ch : t.text) {
    if (ch < '0' || ch > '9') throw ParseError(line, t.column, "expected a nonnegative integer, got '" + t.text + "'");
    v = v * 10 + static_cast<std::size_t>(ch - '0');
  }
  return v;
}

inline Rational parse_number(const Token& t, std::size_t line) {
  try {
    return parse_rational(t.text);
  } catch (const Error&) {
    throw ParseError(line, t.column, "expected a rational, got '" + t.text + "'");
  }
}

struct RawGroup {
  std::optional<std::string> model;
  std::vector<std::vector<std::size_t>> rows;
  std::vector<std::vector<std::size_t>> levels;
  std::vector<bool> level_all;
  std::string automorphisms = "inner";
  std::vector<std::vector<std::size_t>> sets;
  std::size_t line = 0;
};

inline GroupModel named_group(const std::string& name) {
  if (name == "S3") return GroupModel::symmetric3();
  if (name == "D4") return GroupModel::dihedral4();
  if (name == "Q8") return GroupModel::quaternion8();
  if (name.size() > 1 && name[0] == 'C') {
    std::size_t n = 0;
    for (char ch : name.substr(1)) {
      if (ch < '0' || ch > '9') throw Error("unknown group model " + name);
      n = n * 10 + static_cast<std::size_t>(ch - '0');
    }
    return GroupModel::cyclic(n);
  }
  throw Error("unknown group model " + name);
}

}  // namespace detail

/// Parses and validates; ParseError carries the position of the offending
/// token, ValidationError names the first violated condition.
inline SpaceBundle parse_space(std::string_view text) {
  using detail::Token;
  SpaceBundle bundle;
  std::string section;
  std::vector<std::pair<std::vector<std::string>, std::size_t>> levels;
  std::vector<std::vector<Rational>> metric_rows;
  std::optional<std::vector<Rational>> scales;
  std::vector<Subset> born_sets;
  std::optional<std::string> born_keyword;
  std::vector<CarrierMap> maps;
  std::optional<std::string> maps_keyword;
  std::optional<detail::RawGroup> group;
  std::vector<Measure> measures;
  std::vector<Rational> thresholds;
  bool saw[6] = {};
  static const char* const kSections[] = {"filtration", "metric", "bornology", "maps", "group", "measures"};

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    const Token& head = toks.front();
    auto args = std::vector<Token>(toks.begin() + 1, toks.end());
    auto need_args = [&](std::size_t k) {
      if (args.size() < k) throw ParseError(lineno, head.column, "'" + head.text + "' needs an argument");
    };
    auto indices = [&] {
      std::vector<std::size_t> v;
      for (const auto& t : args) v.push_back(detail::parse_index(t, lineno));
      return v;
    };
    auto element_set = [&](std::size_t limit) {
      Subset s;
      for (const auto& t : args) {
        std::size_t x = detail::parse_index(t, lineno);
        if (x >= limit) throw ParseError(lineno, t.column, "element " + t.text + " outside the carrier");
        s.insert(x);
      }
      return s;
    };
    auto need_carrier = [&] {
      if (!bundle.carrier) throw ParseError(lineno, head.column, "'carrier' must come before this section");
      return *bundle.carrier;
    };

    if (head.text.front() == '[') {
      if (head.text.back() != ']' || toks.size() != 1) throw ParseError(lineno, head.column, "malformed section header");
      section = head.text.substr(1, head.text.size() - 2);
      std::size_t k = 0;
      while (k < 6 && section != kSections[k]) ++k;
      if (k == 6) throw ParseError(lineno, head.column, "unknown section [" + section + "]");
      if (saw[k]) throw ParseError(lineno, head.column, "section [" + section + "] repeated");
      saw[k] = true;
      if (section == "group") {
        group.emplace();
        group->line = lineno;
      }
      continue;
    }

    if (section.empty()) {
      if (head.text != "carrier") throw ParseError(lineno, head.column, "expected 'carrier' or a section header");
      need_args(1);
      if (args.size() != 1) throw ParseError(lineno, args[1].column, "unexpected token");
      std::size_t n = detail::parse_index(args[0], lineno);
      if (n == 0 || n > kMaxCarrier)
        throw ParseError(lineno, args[0].column, "carrier must be 1.." + std::to_string(kMaxCarrier));
      bundle.carrier = n;
    } else if (section == "filtration") {
      if (head.text != "level") throw ParseError(lineno, head.column, "expected 'level'");
      std::size_t n = need_carrier();
      if (args.size() != n) throw ParseError(lineno, head.column, "level needs " + std::to_string(n) + " rows");
      std::vector<std::string> rows;
      for (const auto& t : args) {
        if (t.text.size() != n || t.text.find_first_not_of("01") != std::string::npos)
          throw ParseError(lineno, t.column, "row must be " + std::to_string(n) + " characters of 0/1");
        rows.push_back(t.text);
      }
      levels.emplace_back(std::move(rows), lineno);
    } else if (section == "metric") {
      std::size_t n = need_carrier();
      std::vector<Rational> v;
      for (const auto& t : args) v.push_back(detail::parse_number(t, lineno));
      if (head.text == "row") {
        if (v.size() != n) throw ParseError(lineno, head.column, "metric row needs " + std::to_string(n) + " entries");
        metric_rows.push_back(std::move(v));
      } else if (head.text == "scales") {
        need_args(1);
        scales = std::move(v);
      } else {
        throw ParseError(lineno, head.column, "expected 'row' or 'scales'");
      }
    } else if (section == "bornology") {
      std::size_t n = need_carrier();
      if (head.text == "set") {
        need_args(1);
        born_sets.push_back(element_set(n));
      } else if (head.text == "trivial" || head.text == "singletons") {
        born_keyword = head.text;
      } else {
        throw ParseError(lineno, head.column, "expected 'set', 'trivial' or 'singletons'");
      }
    } else if (section == "maps") {
      std::size_t n = need_carrier();
      if (head.text == "map") {
        auto v = indices();
        if (v.size() != n) throw ParseError(lineno, head.column, "map needs " + std::to_string(n) + " values");
        for (std::size_t k = 0; k < v.size(); ++k)
          if (v[k] >= n) throw ParseError(lineno, args[k].column, "value outside the carrier");
        maps.emplace_back(std::move(v));
      } else if (head.text == "endomaps" || head.text == "permutations") {
        if (args.size() != 1 || args[0].text != "all") throw ParseError(lineno, head.column, "expected '" + head.text + " all'");
        maps_keyword = head.text;
      } else {
        throw ParseError(lineno, head.column, "expected 'map', 'endomaps all' or 'permutations all'");
      }
    } else if (section == "group") {
      if (head.text == "model") {
        need_args(1);
        group->model = args[0].text;
      } else if (head.text == "row") {
        group->rows.push_back(indices());
      } else if (head.text == "level") {
        bool all = args.size() == 1 && args[0].text == "all";
        group->level_all.push_back(all);
        group->levels.push_back(all ? std::vector<std::size_t>{} : indices());
      } else if (head.text == "auto") {
        if (args.size() != 1 || (args[0].text != "inner" && args[0].text != "all"))
          throw ParseError(lineno, head.column, "expected 'auto inner' or 'auto all'");
        group->automorphisms = args[0].text;
      } else if (head.text == "set") {
        group->sets.push_back(indices());
      } else {
        throw ParseError(lineno, head.column, "expected 'model', 'row', 'level', 'auto' or 'set'");
      }
    } else if (section == "measures") {
      std::vector<Rational> v;
      for (const auto& t : args) v.push_back(detail::parse_number(t, lineno));
      if (head.text == "weights") {
        need_args(1);
        try {
          measures.emplace_back(std::move(v));
        } catch (const Error& e) {
          throw ParseError(lineno, head.column, e.what());
        }
      } else if (head.text == "thresholds") {
        need_args(1);
        thresholds = std::move(v);
      } else {
        throw ParseError(lineno, head.column, "expected 'weights' or 'thresholds'");
      }
    }
  }

  // validation
  if (saw[0] && saw[1]) throw ValidationError("[filtration] and [metric] are alternatives");
  if (saw[0]) {
    if (levels.empty()) throw ValidationError("[filtration] has no levels");
    std::vector<Relation> rels;
    for (auto& [rows, line] : levels) rels.push_back(Relation::from_rows(*bundle.carrier, rows));
    UniformFiltration f(std::move(rels));
    auto rep = validate_filtration(f);
    if (!rep.valid) throw ValidationError("filtration " + rep.violations.front().describe());
    bundle.filtration = std::move(f);
  }
  if (saw[1]) {
    if (metric_rows.size() != *bundle.carrier) throw ValidationError("metric needs one row per point");
    if (!scales) throw ValidationError("metric needs a 'scales' line");
    try {
      bundle.filtration = from_metric(metric_rows, *scales);
    } catch (const Error& e) {
      throw ValidationError(e.what());
    }
  }
  if (saw[2]) {
    if (born_keyword && !born_sets.empty()) throw ValidationError("bornology mixes a keyword with explicit sets");
    std::size_t n = *bundle.carrier;
    if (born_keyword)
      bundle.bornology = *born_keyword == "trivial" ? BornologyBasis::trivial(n) : BornologyBasis::singletons(n);
    else if (born_sets.empty())
      throw ValidationError("[bornology] has no sets");
    else
      bundle.bornology = BornologyBasis(n, born_sets);
    auto rep = validate_bornology(*bundle.bornology);
    if (!rep.valid) throw ValidationError("bornology: " + rep.violations.front());
  }
  if (bundle.filtration && bundle.bornology) bundle.space.emplace(*bundle.filtration, *bundle.bornology);
  if (saw[3]) {
    if (maps_keyword && !maps.empty()) throw ValidationError("maps section mixes a keyword with explicit maps");
    std::size_t n = *bundle.carrier;
    try {
      if (maps_keyword == "endomaps")
        bundle.maps = MapSet::all_endomaps(n);
      else if (maps_keyword == "permutations")
        bundle.maps = MapSet::all_permutations(n);
      else if (maps.empty())
        throw ValidationError("[maps] has no maps");
      else
        bundle.maps = MapSet(maps);
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError(std::string("maps: ") + e.what());
    }
  }
  if (group) {
    std::optional<GroupModel> g;
    try {
      if (group->model && !group->rows.empty()) throw ValidationError("group gives both a model and a table");
      if (group->model)
        g = detail::named_group(*group->model);
      else if (!group->rows.empty())
        g = GroupModel(group->rows);
      else
        throw ValidationError("group needs 'model' or table rows");
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError(std::string("group: ") + e.what());
    }
    auto to_subset = [&](const std::vector<std::size_t>& v) {
      Subset s;
      for (auto x : v) {
        if (x >= g->order()) throw ValidationError("group element " + std::to_string(x) + " out of range");
        s.insert(x);
      }
      return s;
    };
    std::vector<Subset> vs;
    for (std::size_t k = 0; k < group->levels.size(); ++k)
      vs.push_back(group->level_all[k] ? g->everything() : to_subset(group->levels[k]));
    if (vs.empty()) vs = {g->everything(), g->identity_set()};
    IdentityFiltration f(vs);
    auto problems = validate_identity_filtration(*g, f);
    if (!problems.empty()) throw ValidationError("group filtration: " + problems.front());
    std::vector<Subset> basis;
    for (const auto& v : group->sets) {
      Subset s = to_subset(v);
      if (!is_symmetric_set(*g, s)) throw ValidationError("group bornology set " + to_string(s) + " is not symmetric");
      basis.push_back(s);
    }
    if (basis.empty()) basis = symmetric_subsets(*g);
    auto auts = group->automorphisms == "all" ? all_automorphisms(*g) : inner_automorphisms(*g);
    if (group->automorphisms == "inner") {
      // keep the identity first so MapSet lookups stay stable
      auto id = std::find(auts.begin(), auts.end(), CarrierMap::identity(g->order()));
      std::rotate(auts.begin(), id, id + 1);
    }
    bundle.group = GroupSection{std::move(*g), std::move(f), std::move(auts), std::move(basis)};
  }
  if (saw[5]) {
    if (measures.empty()) throw ValidationError("[measures] has no weights");
    try {
      family_ground(measures);
      if (thresholds.empty()) {
        Rational d = min_positive_distance(measures);
        thresholds = {d * 4, d * 2, d, d / 2};
      }
      require_halving(thresholds, "threshold");
    } catch (const Error& e) {
      throw ValidationError(std::string("measures: ") + e.what());
    }
    bundle.measures = MeasureSection{std::move(measures), std::move(thresholds)};
  }
  if (!bundle.carrier && !bundle.group && !bundle.measures) throw ValidationError("file declares no carrier");
  return bundle;
}

inline SpaceBundle load_space(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_space(buf.str());
}

}  // namespace unibo
