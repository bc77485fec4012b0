#pragma once

// Jobs, reports and batteries behind the command-line tool. A job is flat
// key=value text; a report is JSON whose only run-dependent field is the
// top-level "timestamp".

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "eigenposet/cyclo.hpp"
#include "eigenposet/homology.hpp"
#include "eigenposet/refl.hpp"

namespace eigenposet::cli {

using nlohmann::json;

/// Tasks in execution order; run() sorts a job's tasks into this order.
const std::vector<std::string>& known_tasks();

struct JobSpec {
  std::string name;                   // label only
  std::string group = "sym:3";        // gmpn:m,p,n | sym:n | file:path
  std::string gamma = "identity";     // identity | scalar:m:k | file:<path or name under data/gammas>
  RootOfUnity zeta{1, 0};
  std::vector<std::string> tasks;
  std::size_t budget_elements = kDefaultElementBudget;
  std::size_t budget_simplices = kDefaultSimplexBudget;
  bool emit_matrices = false;
  std::string out;

  friend bool operator==(const JobSpec& a, const JobSpec& b);
};

/// Whitespace-separated key=value tokens; '#' starts a comment running to end of line.
/// Keys: name group gamma zeta tasks budget-elements budget-simplices emit-matrices out.
/// Throws ParseError on unknown keys, unknown tasks, or a malformed rootspec.
JobSpec parse_job(std::string_view text);
/// One line; parse_job(serialize(j)) == j.
std::string serialize(const JobSpec& j);

/// The coset gamma G selected by the job; throws InvalidArgument if gamma does not normalize G.
ReflCoset job_coset(const JobSpec& j);

/// Runs every task of the job. Budget overruns become SKIPPED tasks; other
/// library errors propagate.
json run(const JobSpec& j);

struct Suite {
  std::string name;
  std::vector<JobSpec> jobs;
};

/// One job per non-empty line.
Suite parse_suite(std::istream& in, std::string name);
/// `selector` is a path to a suite file, or a name under <data>/suites/ without the .suite suffix.
Suite load_suite(const std::string& selector);

/// Runs jobs on up to `threads` workers (0 = hardware concurrency). A job that
/// throws is reported as a FAIL task named "job". Output order follows the suite.
json battery(const Suite& s, unsigned threads = 0);

/// Formula-only evaluation for E8 from the shipped degree table.
json e8_formula(int m);

/// FAIL beats INDETERMINATE beats PASS; SKIPPED only when nothing else ran.
std::string combine(const std::vector<std::string>& verdicts);
/// 1 iff the report's verdict is FAIL.
int exit_code(const json& report);
/// The report with its "timestamp" member removed, at every depth.
json strip_timestamps(json report);

}  // namespace eigenposet::cli
