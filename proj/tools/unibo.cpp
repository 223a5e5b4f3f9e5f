// unibo: validate space files, run verification suites, compare topologies
// and run the model demos.
//
// Exit codes: 0 all pass, 1 any fail, 2 usage or parse error, 3 some outcome
// resolution-exhausted or precondition-unmet (and nothing failed).

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "unibo/spacefile.hpp"
#include "unibo/suites.hpp"

namespace {

int emit(const std::vector<unibo::Record>& records, unibo::ReportFormat fmt) {
  for (const auto& r : records) std::cout << unibo::format_record(r, fmt) << '\n';
  return unibo::exit_code(records);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-model verifier for uniform structures and bornologies"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "records"}));

  std::string file;
  std::string suite = "all";
  std::uint64_t seed = 1;
  std::optional<std::size_t> budget;
  std::string bases;
  std::string demo;

  auto* validate = app.add_subcommand("validate", "Parse and validate a space file");
  validate->add_option("file", file, "Space file")->required();

  auto* check = app.add_subcommand("check", "Run a verification suite");
  check->add_option("file", file, "Space file")->required();
  std::string suite_help = "Suite name, or 'all':";
  for (const auto& n : unibo::suite_names()) suite_help += " " + n;
  check->add_option("--suite", suite, suite_help);
  check->add_option("--seed", seed, "Seed for randomised suites");
  check->add_option("--budget", budget, "Cap on randomised instance counts");

  auto* compare = app.add_subcommand("compare", "Compare identity-neighbourhood bases");
  compare->add_option("file", file, "Space file")->required();
  compare->add_option("--bases", bases, "Pair A:B of conv, biconv, upper, lower")->required();

  auto* demo_cmd = app.add_subcommand("demo", "Run a model demo");
  demo_cmd->add_option("name", demo, "qorder-separations, sigma-suite or symz-examples")->required();
  demo_cmd->add_option("--seed", seed, "Seed for sampled elements");
  demo_cmd->add_option("--budget", budget, "Number of sampled elements");

  for (auto* sub : {validate, check, compare, demo_cmd})
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "records"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const auto fmt = format == "records" ? unibo::ReportFormat::records : unibo::ReportFormat::text;

  try {
    if (*demo_cmd) return emit(unibo::run_demo(demo, seed, budget), fmt);

    unibo::SpaceBundle bundle;
    try {
      bundle = unibo::load_space(file);
    } catch (const unibo::ValidationError& e) {
      unibo::Record r{"validate", file, unibo::Verdict::fail, {}};
      r.add("error", e.what());
      return emit({r}, fmt);
    } catch (const unibo::PreconditionError& e) {
      unibo::Record r{"validate", file, unibo::Verdict::fail, {}};
      r.add("error", e.what());
      return emit({r}, fmt);
    }

    if (*validate) {
      unibo::Record r{"validate", file, unibo::Verdict::pass, {}};
      if (bundle.carrier) r.add("carrier", *bundle.carrier);
      if (bundle.filtration) r.add("depth", bundle.filtration->depth());
      if (bundle.space) {
        auto c = bundle.space->certified_index();
        r.add("certified_index", c ? std::to_string(*c) : std::string("none"));
      }
      if (bundle.maps) r.add("maps", bundle.maps->size());
      if (bundle.group) r.add("group_order", bundle.group->group.order()).add("automorphisms", bundle.group->automorphisms.size());
      if (bundle.measures) r.add("measures", bundle.measures->family.size());
      return emit({r}, fmt);
    }
    if (*check) {
      auto records = suite == "all" ? unibo::run_all_suites(bundle, seed, budget) : unibo::run_suite(bundle, suite, seed, budget);
      return emit(records, fmt);
    }
    if (*compare) return emit({unibo::compare_bases(bundle, bases)}, fmt);
  } catch (const unibo::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const unibo::ParseError& e) {
    std::cerr << file << ": " << e.what() << '\n';
    return 2;
  } catch (const unibo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
