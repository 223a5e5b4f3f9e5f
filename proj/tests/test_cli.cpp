#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "unibo/spacefile.hpp"
#include "unibo/suites.hpp"

using namespace unibo;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(UNIBO_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(UNIBO_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("space file parser") {
  auto b = parse_space("carrier 3\n[filtration]\nlevel 111 111 111\nlevel 100 010 001\n[bornology]\nset 0 1\nset 2\n");
  REQUIRE(b.space);
  CHECK(*b.space->certified_index() == 1);
  CHECK(b.filtration->depth() == 1);

  try {
    parse_space("carrier 2\n[filtration]\nlevel 11 1x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 10);
  }
  CHECK_THROWS_AS(parse_space("carrier 2\n[nonsense]\n"), ParseError);
  CHECK_THROWS_AS(parse_space("[filtration]\nlevel 1\n"), ParseError);
  CHECK_THROWS_AS(parse_space("carrier 2\n[filtration]\nlevel 11 11\n[filtration]\n"), ParseError);
  try {
    parse_space("carrier 2\n[filtration]\nlevel 11 11\nlevel 11 01\n");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    std::string what = e.what();
    CHECK(what.find("symmetric") != std::string::npos);
    CHECK(what.find('1') != std::string::npos);
  }
  CHECK_THROWS_AS(parse_space("carrier 3\n[bornology]\nset 0 1\nset 1 2\n"), ValidationError);
}

TEST_CASE("sample files load") {
  for (const char* name : {"minimal.space", "line6.space", "endo3.space", "perm3.space", "s3.space", "q8.space", "measures.space"})
    CHECK_NOTHROW(load_space(data(name)));
  auto line = load_space(data("line6.space"));
  CHECK(*line.space->certified_index() == 2);
  auto q8 = load_space(data("q8.space"));
  CHECK(q8.group->automorphisms.size() == 24);
  CHECK_THROWS_AS(load_space(data("bad_asymmetric.space")), ValidationError);
  CHECK_THROWS_AS(load_space(data("missing.space")), Error);
}

TEST_CASE("record formatting and exit codes") {
  Record r{"filtration", "x", Verdict::pass, {}};
  r.add("note", "two words");
  CHECK(format_record(r, ReportFormat::records) == "suite=filtration instance=x verdict=pass note=\"two words\"");
  CHECK(exit_code({r}) == 0);
  Record ex{"s", "i", Verdict::resolution_exhausted, {}};
  Record f{"s", "i", Verdict::fail, {}};
  CHECK(exit_code({r, ex}) == 3);
  CHECK(exit_code({ex, f}) == 1);
}

TEST_CASE("cli exit codes") {
  CHECK(run("validate " + data("line6.space")).code == 0);
  CHECK(run("validate " + data("bad_asymmetric.space")).code == 1);
  CHECK(run("validate " + data("missing.space")).code == 2);
  CHECK(run("check " + data("line6.space") + " --suite no-such-suite").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("check " + data("perm3.space") + " --suite lemma-suite").code == 0);
  CHECK(run("check " + data("s3.space") + " --suite group-lru").code == 0);
  CHECK(run("check " + data("measures.space") + " --suite measure").code == 0);
  CHECK(run("compare " + data("s3.space") + " --bases upper:lower").code == 0);
  CHECK(run("demo symz-examples --budget 50").code == 0);
  CHECK(run("demo qorder-separations --budget 20").code == 0);
}

TEST_CASE("cli output is deterministic") {
  std::string args = "check " + data("endo3.space") + " --format records --seed 7 --budget 40";
  auto a = run(args);
  auto b = run(args);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
  CHECK(a.out.find("verdict=fail") == std::string::npos);
  auto c = run("check " + data("endo3.space") + " --format records --seed 8 --budget 40");
  CHECK(c.out.size() > 0);
}
