#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "eigenposet/cli.hpp"
#include "eigenposet/errors.hpp"

using namespace eigenposet;
using namespace eigenposet::cli;

namespace {

JobSpec random_job(std::mt19937_64& rng) {
  static const std::vector<std::string> groups{"sym:3", "gmpn:2,1,2", "gmpn:3,1,3", "file:st4", "file:/tmp/x.grp"};
  static const std::vector<std::string> gammas{"identity", "scalar:2:1", "scalar:6:5", "file:d3-flip"};
  JobSpec j;
  if (rng() % 2) j.name = "job" + std::to_string(rng() % 100);
  j.group = groups[rng() % groups.size()];
  j.gamma = gammas[rng() % gammas.size()];
  j.zeta = {static_cast<int>(1 + rng() % 12), static_cast<long>(rng() % 12)};
  for (const auto& t : known_tasks()) {
    if (rng() % 3 == 0) j.tasks.push_back(t);
  }
  if (j.tasks.empty()) j.tasks.push_back("poset");
  std::shuffle(j.tasks.begin(), j.tasks.end(), rng);
  j.budget_elements = rng() % 2'000'000;
  j.budget_simplices = rng() % 20'000'000;
  j.emit_matrices = rng() % 2;
  if (rng() % 2) j.out = "/tmp/report" + std::to_string(rng() % 10) + ".json";
  return j;
}

const json* task(const json& report, const std::string& name) {
  for (const auto& t : report["tasks"]) {
    if (t["task"] == name) return &t;
  }
  return nullptr;
}

const json* check(const json& t, const std::string& name) {
  for (const auto& c : t["checks"]) {
    if (c["name"] == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("job specs round-trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const JobSpec j = random_job(rng);
    const std::string text = serialize(j);
    CAPTURE(text);
    CHECK(parse_job(text) == j);
    CHECK(serialize(parse_job(text)) == text);
  }
  const JobSpec multi = parse_job("# a job\ngroup=sym:4\n  zeta=3:1   # a comment\ntasks=poset,homology\n");
  CHECK(multi.group == "sym:4");
  CHECK(multi.zeta.order == 3);
  CHECK(multi.tasks == std::vector<std::string>{"poset", "homology"});
}

TEST_CASE("job specs reject bad input at parse time") {
  CHECK_THROWS_AS(parse_job("group=sym:3 zeta=3 tasks=poset"), ParseError);
  CHECK_THROWS_AS(parse_job("group=sym:3 zeta=0:1 tasks=poset"), ParseError);
  CHECK_THROWS_AS(parse_job("group=sym:3 zeta=x:1 tasks=poset"), ParseError);
  CHECK_THROWS_AS(parse_job("group=sym:3 tasks=poset,frobnicate"), ParseError);
  CHECK_THROWS_AS(parse_job("group=sym:3"), ParseError);
  CHECK_THROWS_AS(parse_job("colour=red tasks=poset"), ParseError);
  CHECK_THROWS_AS(parse_job("tasks=poset budget-elements=-4"), ParseError);
  CHECK_THROWS_AS(parse_job("tasks=poset emit-matrices=yes"), ParseError);
  CHECK_THROWS_AS(parse_job("tasks=poset gamma=scalar:2"), ParseError);
  CHECK_THROWS_AS(parse_job("tasks=poset gamma=rotation"), ParseError);
  JobSpec j;
  j.tasks = {"poset"};
  j.group = "file:my group";
  CHECK_THROWS_AS(serialize(j), InvalidArgument);
}

TEST_CASE("run: worked jobs") {
  const json us = run(parse_job("group=sym:3 gamma=identity zeta=1:0 tasks=verify-us"));
  CHECK(us["verdict"] == "PASS");
  CHECK(us["tasks"].size() == 1);

  const json b2 = run(parse_job("group=gmpn:2,1,2 zeta=4:1 tasks=verify-spheres,verify-decomposition"));
  CHECK(b2["verdict"] == "PASS");
  REQUIRE(b2["tasks"].size() == 2);
  CHECK(b2["tasks"][0]["task"] == "verify-decomposition");  // dependency order, not request order
  const json* cor = task(b2, "verify-spheres");
  REQUIRE(cor != nullptr);
  CHECK((*check(*cor, "sphere-count-fibre"))["values"]["brute_force"] == "2");

  const json e8 = run(parse_job("zeta=3:1 tasks=e8-formula"));
  CHECK(e8["verdict"] == "PASS");
  CHECK(e8["tasks"][0]["count"] == "7745920");
  CHECK(e8["tasks"][0]["quotient_candidates"] == json::array({"ST32"}));
  const json e8m4 = run(parse_job("zeta=4:1 tasks=e8-formula"));
  CHECK(e8m4["tasks"][0]["quotient_candidates"] == json::array({"ST31"}));
  const json e8m7 = run(parse_job("zeta=7:1 tasks=e8-formula"));
  CHECK(e8m7["tasks"][0]["regular"] == false);
  CHECK(e8m7["verdict"] == "SKIPPED");
}

TEST_CASE("run: poset, homology and character payloads") {
  const json r = run(parse_job("group=sym:3 zeta=1:0 tasks=poset,homology,characters emit-matrices=true"));
  CHECK(r["verdict"] == "PASS");
  const json& p = *task(r, "poset");
  CHECK(p["sizes"]["S"] == 5);  // V, the three reflecting lines, and 0
  CHECK(p["dump"].get<std::string>().find("cover") != std::string::npos);
  const json& h = *task(r, "homology");
  CHECK(h["homology"]["summary"] == "H1=Z^2");
  CHECK(h["boundaries"].size() == 2);
  const json& c = *task(r, "characters");
  CHECK(c["classes"].size() == 3);
  int dimension_hits = 0;
  for (const auto& [key, entry] : c["classes"].items()) {
    if (entry["size"] == 1) {
      CHECK(entry["top"] == "cyc(1; 2)");
      ++dimension_hits;
    }
  }
  CHECK(dimension_hits == 1);
}

TEST_CASE("run: budgets and gamma errors") {
  const json small = run(parse_job("group=sym:4 zeta=1:0 tasks=homology,verify-decomposition budget-simplices=5"));
  for (const auto& t : small["tasks"]) {
    CHECK(t["verdict"] == "SKIPPED");
    CHECK(t["notes"][0].get<std::string>().find("budget") != std::string::npos);
  }
  CHECK(exit_code(small) == 0);
  const json tiny = run(parse_job("group=sym:4 tasks=poset budget-elements=3"));
  CHECK(tiny["tasks"][0]["verdict"] == "SKIPPED");

  const auto path = std::filesystem::temp_directory_path() / "eigenposet-shear.txt";
  std::ofstream(path) << "1; 1\n0; 1\n";
  CHECK_THROWS_AS(run(parse_job("group=sym:3 tasks=poset gamma=file:" + path.string())), InvalidArgument);
  std::ofstream(path) << "1; 0; 0\n0; 1; 0\n0; 0; 1\n";
  CHECK_THROWS_AS(run(parse_job("group=sym:3 tasks=poset gamma=file:" + path.string())), DimensionMismatch);
  std::filesystem::remove(path);
  CHECK(run(parse_job("group=gmpn:2,2,3 gamma=file:d3-flip zeta=2:1 tasks=verify-decomposition"))["verdict"] == "PASS");
}

TEST_CASE("reports are deterministic modulo the timestamp") {
  const JobSpec j = parse_job("group=gmpn:3,1,2 zeta=3:1 tasks=poset,homology,characters,verify-decomposition,verify-spheres");
  const json a = run(j);
  const json b = run(j);
  CHECK(a.contains("timestamp"));
  CHECK(strip_timestamps(a).dump() == strip_timestamps(b).dump());
}

TEST_CASE("batteries") {
  std::istringstream empty("# nothing here\n\n");
  const json e = battery(parse_suite(empty, "empty"));
  CHECK(e["jobs"].empty());
  CHECK(exit_code(e) == 0);

  std::istringstream mixed(
      "group=sym:3 zeta=3:1 tasks=verify-spheres\n"
      "group=sym:3 gamma=file:/nonexistent/gamma tasks=poset\n");
  const json m = battery(parse_suite(mixed, "mixed"), 2);
  REQUIRE(m["jobs"].size() == 2);
  CHECK(m["jobs"][0]["verdict"] == "PASS");
  CHECK(m["jobs"][1]["verdict"] == "FAIL");
  CHECK(m["jobs"][1]["tasks"][0]["witness"]["detail"].get<std::string>().find("gamma") != std::string::npos);
  CHECK(exit_code(m) == 1);
  CHECK_FALSE(m["jobs"][0].contains("timestamp"));

  std::istringstream bad("tasks=poset\nzeta=1 tasks=poset\n");
  CHECK_THROWS_WITH_AS(parse_suite(bad, "bad"), doctest::Contains("bad:2"), ParseError);

  const Suite quick = load_suite("quick");
  CHECK(quick.jobs.size() >= 17);
  const json q = battery(quick);
  CHECK(q["verdict"] == "PASS");
  CHECK(exit_code(q) == 0);
  CHECK(q["task_counts"]["FAIL"] == 0);
}
