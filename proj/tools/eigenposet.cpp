// Command-line front end: each subcommand builds a JobSpec (or a suite) and
// prints the JSON report. Exit status is 1 iff the report verdict is FAIL,
// 2 on usage or input errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "eigenposet/cli.hpp"
#include "eigenposet/errors.hpp"

namespace {

using eigenposet::cli::json;
using eigenposet::cli::JobSpec;

struct Common {
  std::string group = "sym:3";
  std::string gamma = "identity";
  std::string zeta = "1:0";
  std::size_t budget_elements = eigenposet::kDefaultElementBudget;
  std::size_t budget_simplices = eigenposet::kDefaultSimplexBudget;
  bool emit_matrices = false;
  std::string out;
};

void add_common(CLI::App* app, Common& c, bool group_options = true) {
  if (group_options) {
    app->add_option("--group", c.group, "gmpn:m,p,n | sym:n | file:<path or shipped name>")->capture_default_str();
    app->add_option("--gamma", c.gamma, "identity | scalar:m:k | file:<matrix path or name under data/gammas>")->capture_default_str();
    app->add_option("--budget-elements", c.budget_elements, "group enumeration limit")->capture_default_str();
    app->add_option("--budget-simplices", c.budget_simplices, "order complex size limit")->capture_default_str();
    app->add_flag("--emit-matrices", c.emit_matrices, "include poset dumps and boundary matrices");
  }
  app->add_option("--zeta", c.zeta, "root of unity m:k, i.e. exp(2 pi i k/m)")->capture_default_str();
  app->add_option("--out", c.out, "write the report here instead of stdout");
}

JobSpec job_from(const Common& c, std::vector<std::string> tasks) {
  std::ostringstream text;
  text << "group=" << c.group << " gamma=" << c.gamma << " zeta=" << c.zeta << " budget-elements=" << c.budget_elements
       << " budget-simplices=" << c.budget_simplices << " emit-matrices=" << (c.emit_matrices ? "true" : "false")
       << " tasks=";
  for (std::size_t i = 0; i < tasks.size(); ++i) text << (i ? "," : "") << tasks[i];
  if (!c.out.empty()) text << " out=" << c.out;
  return eigenposet::cli::parse_job(text.str());
}

int emit(const json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw eigenposet::IoError("cannot write " + out);
    f << text;
  }
  return eigenposet::cli::exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenspace posets of reflection groups: homology, characters and verification"};
  app.require_subcommand(1);

  Common c;
  auto* poset = app.add_subcommand("poset", "build S, S~, S', T', U' and check the G-poset axioms");
  auto* homology = app.add_subcommand("homology", "integer homology of U' and S~");
  auto* character = app.add_subcommand("character", "Lefschetz and top homology characters of U'");
  auto* verify = app.add_subcommand("verify", "run verification tasks");
  auto* battery = app.add_subcommand("battery", "run a suite of jobs");
  auto* e8 = app.add_subcommand("e8-formula", "sphere counts for E8 from the shipped degree table");
  for (auto* sub : {poset, homology, character, verify}) add_common(sub, c);
  add_common(e8, c, false);

  std::vector<std::string> verify_tasks{"verify-decomposition", "verify-spheres"};
  std::string job_file;
  verify->add_option("tasks", verify_tasks, "tasks to run")->capture_default_str();
  verify->add_option("--job", job_file, "key=value job file; overrides the other options");

  std::string suite;
  unsigned threads = 0;
  battery->add_option("suite", suite, "suite name under <data>/suites or a path")->required();
  battery->add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();
  battery->add_option("--out", c.out, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (battery->parsed()) {
      return emit(eigenposet::cli::battery(eigenposet::cli::load_suite(suite), threads), c.out);
    }
    JobSpec job;
    if (poset->parsed()) job = job_from(c, {"poset"});
    if (homology->parsed()) job = job_from(c, {"homology"});
    if (character->parsed()) job = job_from(c, {"characters"});
    if (e8->parsed()) job = job_from(c, {"e8-formula"});
    if (verify->parsed()) {
      if (job_file.empty()) {
        job = job_from(c, verify_tasks);
      } else {
        std::ifstream f(job_file);
        if (!f) throw eigenposet::IoError("cannot read " + job_file);
        std::stringstream text;
        text << f.rdbuf();
        job = eigenposet::cli::parse_job(text.str());
      }
    }
    return emit(eigenposet::cli::run(job), job.out);
  } catch (const eigenposet::Error& e) {
    std::cerr << "eigenposet: " << e.what() << "\n";
    return 2;
  }
}
