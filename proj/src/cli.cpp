#include "eigenposet/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "eigenposet/data.hpp"
#include "eigenposet/equivariant.hpp"
#include "eigenposet/errors.hpp"
#include "eigenposet/gposet.hpp"

namespace eigenposet::cli {

const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> tasks{
      "poset",        "homology",    "characters",  "verify-us",        "verify-mv",
      "verify-suspension", "verify-wedge", "verify-decomposition", "verify-spheres", "e8-formula"};
  return tasks;
}

bool operator==(const JobSpec& a, const JobSpec& b) {
  return a.name == b.name && a.group == b.group && a.gamma == b.gamma && a.zeta.order == b.zeta.order &&
         a.zeta.exponent == b.zeta.exponent && a.tasks == b.tasks && a.budget_elements == b.budget_elements &&
         a.budget_simplices == b.budget_simplices && a.emit_matrices == b.emit_matrices && a.out == b.out;
}

// ---------------------------------------------------------------- job text

namespace {

std::size_t parse_size(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || v.front() == '-') throw ParseError(key + ": expected a non-negative integer, got '" + v + "'");
  return static_cast<std::size_t>(n);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

bool has_space(const std::string& s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) || c == '#'; });
}

}  // namespace

JobSpec parse_job(std::string_view text) {
  JobSpec j;
  bool saw_tasks = false;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + tok + "'");
      const std::string key = tok.substr(0, eq);
      const std::string value = tok.substr(eq + 1);
      if (key == "name") {
        j.name = value;
      } else if (key == "group") {
        j.group = value;
      } else if (key == "gamma") {
        j.gamma = value;
      } else if (key == "zeta") {
        j.zeta = RootOfUnity::parse(value);
      } else if (key == "tasks") {
        saw_tasks = true;
        j.tasks = split(value, ',');
        for (const auto& t : j.tasks) {
          if (std::find(known_tasks().begin(), known_tasks().end(), t) == known_tasks().end()) {
            throw ParseError("unknown task '" + t + "'");
          }
        }
      } else if (key == "budget-elements") {
        j.budget_elements = parse_size(key, value);
      } else if (key == "budget-simplices") {
        j.budget_simplices = parse_size(key, value);
      } else if (key == "emit-matrices") {
        if (value != "true" && value != "false") throw ParseError("emit-matrices must be true or false");
        j.emit_matrices = value == "true";
      } else if (key == "out") {
        j.out = value;
      } else {
        throw ParseError("unknown key '" + key + "'");
      }
    }
  }
  if (!saw_tasks || j.tasks.empty()) throw ParseError("a job needs tasks=...");
  if (j.gamma != "identity" && j.gamma.rfind("scalar:", 0) != 0 && j.gamma.rfind("file:", 0) != 0) {
    throw ParseError("gamma must be identity, scalar:m:k or file:path");
  }
  if (j.gamma.rfind("scalar:", 0) == 0) (void)RootOfUnity::parse(j.gamma.substr(7));
  return j;
}

std::string serialize(const JobSpec& j) {
  for (const std::string* s : {&j.name, &j.group, &j.gamma, &j.out}) {
    if (has_space(*s)) throw InvalidArgument("job values may not contain whitespace or '#': '" + *s + "'");
  }
  std::ostringstream os;
  if (!j.name.empty()) os << "name=" << j.name << ' ';
  os << "group=" << j.group << " gamma=" << j.gamma << " zeta=" << j.zeta.to_string() << " tasks=";
  for (std::size_t i = 0; i < j.tasks.size(); ++i) os << (i ? "," : "") << j.tasks[i];
  os << " budget-elements=" << j.budget_elements << " budget-simplices=" << j.budget_simplices
     << " emit-matrices=" << (j.emit_matrices ? "true" : "false");
  if (!j.out.empty()) os << " out=" << j.out;
  return os.str();
}

ReflCoset job_coset(const JobSpec& j) {
  ReflGroupPtr g = build_group(j.group, j.budget_elements);
  const Index n = g->dim();
  if (j.gamma == "identity") return trivial_coset(std::move(g));
  if (j.gamma.rfind("scalar:", 0) == 0) {
    const CycNum z = embed(RootOfUnity::parse(j.gamma.substr(7)));
    Mat gamma = identity(n);
    for (Index i = 0; i < n; ++i) gamma(i, i) = z;
    return make_coset(std::move(g), std::move(gamma));
  }
  // An existing path, else a name under <data>/gammas/ with or without ".txt".
  std::filesystem::path path = j.gamma.substr(5);
  if (!std::filesystem::exists(path)) {
    path = data_dir() / "gammas" / path;
    if (!std::filesystem::exists(path)) path += ".txt";
  }
  std::ifstream in(path);
  if (!in) throw IoError("cannot read gamma file " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  Mat gamma = parse_matrix(lines);
  if (gamma.rows() != n || gamma.cols() != n) throw DimensionMismatch("gamma has the wrong size for " + j.group);
  return make_coset(std::move(g), std::move(gamma));
}

// ---------------------------------------------------------------- tasks

namespace {

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

json homology_json(const HomologyResult& h) {
  json torsion = json::array();
  for (const auto& t : h.torsion) {
    json row = json::array();
    for (const auto& f : t) row.push_back(f.get_str());
    torsion.push_back(row);
  }
  return {{"first_degree", -1},
          {"betti", h.betti},
          {"torsion", torsion},
          {"reduced_euler", h.reduced_euler},
          {"summary", h.describe()}};
}

json task_json(const VerifyReport& r) {
  json checks = json::array();
  json witness;
  for (const Check& c : r.checks) {
    json values = json::object();
    for (const auto& [k, v] : c.values) values[k] = v;
    checks.push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}, {"values", values}});
    if (c.verdict == Verdict::Fail && witness.is_null()) witness = {{"check", c.name}, {"detail", c.detail}};
  }
  json out = {{"task", r.task}, {"verdict", to_string(r.overall())}, {"checks", checks}, {"notes", r.notes}};
  if (!witness.is_null()) out["witness"] = witness;
  return out;
}

json skipped(const std::string& task, const std::string& reason) {
  return {{"task", task}, {"verdict", "SKIPPED"}, {"checks", json::array()}, {"notes", json::array({reason})}};
}

// Posets shared by the tasks of one job.
struct Context {
  const JobSpec& job;
  ReflCoset coset;
  GPoset s, stilde, sp, tp, up;
  std::vector<int> t_idx;  // T' inside S'

  Context(const JobSpec& j, ReflCoset c) : job(j), coset(std::move(c)) {
    s = build_S(coset, job.zeta);
    stilde = build_Stilde(s, true);
    sp = build_Sprime(s, true);
    tp = build_Tprime(sp, true);
    up = build_Uprime(sp);
    const auto minimal = sp.minimal_elements();
    for (int x = 0; x < sp.size(); ++x) {
      if (!std::binary_search(minimal.begin(), minimal.end(), x)) t_idx.push_back(x);
    }
  }
};

json poset_task(const Context& ctx) {
  VerifyReport r;
  r.task = "poset";
  json sizes = json::object();
  const std::vector<std::pair<const char*, const GPoset*>> posets{
      {"S", &ctx.s}, {"S~", &ctx.stilde}, {"S'", &ctx.sp}, {"T'", &ctx.tp}, {"U'", &ctx.up}};
  for (const auto& [label, p] : posets) {
    Check& c = r.add(std::string("gposet ") + label, verdict_of(is_gposet(*p)));
    c.values.emplace_back("size", std::to_string(p->size()));
    c.values.emplace_back("length", std::to_string(length(*p)));
    sizes[label] = p->size();
  }
  json out = task_json(r);
  out["sizes"] = sizes;
  out["group_order"] = ctx.coset.group->order();
  out["gamma_order"] = ctx.coset.gamma_order;
  if (ctx.job.emit_matrices) out["dump"] = dump(ctx.up);
  return out;
}

json homology_task(const Context& ctx) {
  VerifyReport r;
  r.task = "homology";
  const ChainComplex c = order_complex(ctx.up, ctx.job.budget_simplices);
  r.add("boundary-squares-to-zero", verdict_of(boundary_squares_to_zero(c)));
  const HomologyResult h = homology(c);
  long euler = 0;
  for (int d = -1; d <= c.top_dim(); ++d) euler += (d % 2 == 0 ? 1 : -1) * static_cast<long>(c.count(d));
  r.add("euler-characteristic", verdict_of(euler == h.reduced_euler), std::to_string(euler));
  json out = task_json(r);
  out["poset"] = "U'";
  out["simplices"] = c.simplex_count();
  out["homology"] = homology_json(h);
  out["homology_Stilde"] = homology_json(homology(ctx.stilde, ctx.job.budget_simplices));
  if (ctx.job.emit_matrices) {
    json mats = json::array();
    for (int d = 0; d <= c.top_dim(); ++d) mats.push_back(sparse_triplets(c.boundary(d), d));
    out["boundaries"] = mats;
  }
  return out;
}

json characters_task(const Context& ctx) {
  VerifyReport r;
  r.task = "characters";
  r.checks.push_back(check_lefschetz(ctx.up));
  const ClassFunction l = lefschetz_character(ctx.up);
  std::optional<ClassFunction> top;
  try {
    top = top_homology_character(ctx.up);
  } catch (const NotConcentrated& e) {
    r.notes.push_back(e.what());
  }
  const auto& g = *ctx.up.group();
  json classes = json::object();
  for (std::size_t k = 0; k < g.classes().size(); ++k) {
    const int rep = g.classes()[k].front();
    json entry = {{"class", k}, {"size", g.classes()[k].size()}, {"lefschetz", l.at(rep).to_string()}};
    if (top) entry["top"] = top->at(rep).to_string();
    classes[matrix_key(ctx.coset.group->element(rep))] = entry;
  }
  json out = task_json(r);
  out["poset"] = "U'";
  out["classes"] = classes;
  return out;
}

json mv_task(const Context& ctx) {
  if (ctx.sp.empty()) return skipped("verify-mv", "S' is empty");
  VerifyReport r;
  r.task = "verify-mv";
  const MVReport mv = verify_mayer_vietoris(ctx.sp, ctx.t_idx, ctx.job.budget_simplices);
  r.add("exactness", verdict_of(mv.exact), mv.witness);
  r.add("simplex-decomposition", verdict_of(verify_simplex_decomposition(ctx.sp, ctx.t_idx)));
  if (ctx.t_idx.empty()) r.notes.push_back("T' is empty");
  json out = task_json(r);
  json nodes = json::array();
  for (const MVNode& n : mv.nodes) {
    nodes.push_back({{"space", n.space},
                     {"degree", n.degree},
                     {"dim", n.dim},
                     {"incoming_rank", n.incoming_rank},
                     {"outgoing_rank", n.outgoing_rank},
                     {"composite_zero", n.composite_zero},
                     {"exact", n.exact}});
  }
  out["nodes"] = nodes;
  return out;
}

json suspension_task(const Context& ctx) {
  VerifyReport r;
  r.task = "verify-suspension";
  const std::size_t budget = ctx.job.budget_simplices;
  for (const auto& [label, p] : {std::pair<std::string, const GPoset*>{"S~", &ctx.stilde}, {"S'", &ctx.sp}}) {
    const GPoset sus = suspension(*p);
    const HomologyResult h = homology(*p, budget);
    const HomologyResult hs = homology(sus, budget);
    Check& c = r.add("homology-shift " + label, verdict_of(hs.isomorphic_to(h.shifted(1))), hs.describe());
    c.values.emplace_back("base", h.describe());
    const auto chars = homology_characters(*p, budget);
    const auto schars = homology_characters(sus, budget);
    bool ok = schars.size() == chars.size() + 1 && schars.front().is_zero();
    for (std::size_t k = 0; ok && k < chars.size(); ++k) ok = schars[k + 1] == chars[k];
    r.add("character-shift " + label, verdict_of(ok));
    r.add("lefschetz-sign " + label, verdict_of(lefschetz_character(sus) == CycNum(-1) * lefschetz_character(*p)));
  }
  return task_json(r);
}

json wedge_task(const Context& ctx) {
  if (ctx.sp.empty()) return skipped("verify-wedge", "S' is empty");
  VerifyReport r;
  r.task = "verify-wedge";
  const std::size_t budget = ctx.job.budget_simplices;
  const MinimalWedge mw = wedge_over_minimal(ctx.sp, ctx.t_idx);
  const HomologyResult hw = homology(mw.wedge, budget);
  const HomologyResult hpq = homology(mw.pq, budget);
  std::vector<HomologyResult> parts;
  for (int m : mw.minimal) parts.push_back(homology(upset(ctx.sp, m), budget).shifted(1));
  const HomologyResult sum = direct_sum(parts);
  r.add("wedge-vs-extension", verdict_of(hw.isomorphic_to(hpq)), hw.describe() + " / " + hpq.describe());
  r.add("extension-vs-upsets", verdict_of(hpq.isomorphic_to(sum)), sum.describe());
  const IsoVerdict iso = are_isomorphic_gposets(mw.pq, ctx.up);
  r.add("extension-is-U'", iso == IsoVerdict::Isomorphic     ? Verdict::Pass
                           : iso == IsoVerdict::Indeterminate ? Verdict::Indeterminate
                                                              : Verdict::Fail);
  r.add("lefschetz", verdict_of(lefschetz_character(mw.wedge) == lefschetz_character(mw.pq)));
  r.checks.push_back(check_lefschetz(mw.wedge, "lefschetz-traces"));
  return task_json(r);
}

json timed(const std::string& task, double& seconds, const std::function<json()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  json out;
  try {
    out = f();
  } catch (const BudgetExceeded& e) {
    out = skipped(task, std::string("budget exceeded: ") + e.what());
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

json e8_formula(int m) {
  if (m < 1) throw InvalidArgument("m must be positive");
  const auto row = find_table_row("E8");
  if (!row) throw UnknownGroup("E8 is missing from the degree table");
  VerifyReport r;
  r.task = "e8-formula";
  std::vector<int> deg_div, codeg_div;
  for (int d : row->degrees) {
    if (d % m == 0) deg_div.push_back(d);
  }
  for (int c : row->codegrees) {
    if (c % m == 0) codeg_div.push_back(c);
  }
  // Without the group elements, regularity is read off the table: m is regular
  // iff as many codegrees as degrees are divisible by m.
  const bool regular = deg_div.size() == codeg_div.size();
  json out;
  if (!regular) {
    r.add("regular-formula", Verdict::Skipped, "m is not regular for E8");
    out = task_json(r);
  } else {
    const mpz_class count = regular_sphere_count(row->degrees, row->codegrees, m);
    Check& c = r.add("regular-formula", Verdict::Pass);
    c.values.emplace_back("count", count.get_str());
    // Echo the table rows whose degrees are those of E8 divisible by m.
    std::vector<std::string> names;
    for (const TableRow& t : degree_table()) {
      if (t.degrees != deg_div || t.name == row->name) continue;
      names.push_back(t.name);
      const mpq_class via_quotient = sphere_count_formula(row->degrees, m, 1, t.codegrees);
      Check& q = r.add("quotient-formula " + t.name, verdict_of(via_quotient == count));
      q.values.emplace_back("count", via_quotient.get_str());
      r.add("quotient-codegrees " + t.name, verdict_of(t.codegrees == codeg_div), join(t.codegrees));
    }
    if (deg_div.size() == row->degrees.size()) names.push_back(row->name);
    if (names.empty()) r.notes.push_back("no table row has degrees " + join(deg_div));
    out = task_json(r);
    out["count"] = count.get_str();
    out["quotient_candidates"] = names;
  }
  out["m"] = m;
  out["regular"] = regular;
  out["degrees_divisible"] = deg_div;
  out["codegrees_divisible"] = codeg_div;
  return out;
}

json run(const JobSpec& j) {
  std::vector<std::string> tasks;
  for (const auto& t : known_tasks()) {
    if (std::find(j.tasks.begin(), j.tasks.end(), t) != j.tasks.end()) tasks.push_back(t);
  }
  json task_reports = json::array();
  json timings = json::object();
  std::optional<Context> ctx;
  std::string group_skip;
  const bool needs_group = std::any_of(tasks.begin(), tasks.end(), [](const std::string& t) { return t != "e8-formula"; });
  if (needs_group) {
    try {
      ctx.emplace(j, job_coset(j));
    } catch (const BudgetExceeded& e) {
      group_skip = std::string("budget exceeded: ") + e.what();
    }
  }
  for (const auto& t : tasks) {
    double seconds = 0;
    json rep;
    if (t == "e8-formula") {
      rep = timed(t, seconds, [&] { return e8_formula(j.zeta.exact_order()); });
    } else if (!ctx) {
      rep = skipped(t, group_skip);
    } else if (t == "poset") {
      rep = timed(t, seconds, [&] { return poset_task(*ctx); });
    } else if (t == "homology") {
      rep = timed(t, seconds, [&] { return homology_task(*ctx); });
    } else if (t == "characters") {
      rep = timed(t, seconds, [&] { return characters_task(*ctx); });
    } else if (t == "verify-us") {
      rep = timed(t, seconds, [&] { return task_json(verify_uprime_suspension(ctx->coset.group, j.budget_simplices)); });
    } else if (t == "verify-mv") {
      rep = timed(t, seconds, [&] { return mv_task(*ctx); });
    } else if (t == "verify-suspension") {
      rep = timed(t, seconds, [&] { return suspension_task(*ctx); });
    } else if (t == "verify-wedge") {
      rep = timed(t, seconds, [&] { return wedge_task(*ctx); });
    } else if (t == "verify-decomposition") {
      rep = timed(t, seconds, [&] { return task_json(verify_wedge_decomposition(ctx->coset, j.zeta, j.budget_simplices)); });
    } else if (t == "verify-spheres") {
      rep = timed(t, seconds, [&] { return task_json(verify_sphere_count(ctx->coset, j.zeta, j.budget_simplices)); });
    }
    timings[t] = seconds;
    task_reports.push_back(std::move(rep));
  }
  std::vector<std::string> verdicts;
  for (const auto& t : task_reports) verdicts.push_back(t["verdict"]);
  json job = {{"spec", serialize(j)}, {"group", j.group}, {"gamma", j.gamma}, {"zeta", j.zeta.to_string()}};
  if (!j.name.empty()) job["name"] = j.name;
  if (ctx) job["group_order"] = ctx->coset.group->order();
  return {{"job", job},
          {"tasks", task_reports},
          {"verdict", combine(verdicts)},
          {"timestamp", {{"utc", utc_now()}, {"seconds", timings}}}};
}

// ---------------------------------------------------------------- batteries

Suite parse_suite(std::istream& in, std::string name) {
  Suite s;
  s.name = std::move(name);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      s.jobs.push_back(parse_job(line));
    } catch (const ParseError& e) {
      throw ParseError(s.name + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return s;
}

Suite load_suite(const std::string& selector) {
  std::filesystem::path path = selector;
  if (!std::filesystem::exists(path)) path = data_dir() / "suites" / (selector + ".suite");
  std::ifstream in(path);
  if (!in) throw IoError("cannot read suite '" + selector + "'");
  return parse_suite(in, path.stem().string());
}

json battery(const Suite& s, unsigned threads) {
  const std::size_t n = s.jobs.size();
  std::vector<json> reports(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        reports[i] = run(s.jobs[i]);
      } catch (const std::exception& e) {
        json job = {{"spec", serialize(s.jobs[i])}};
        reports[i] = {{"job", job},
                      {"tasks", {{{"task", "job"}, {"verdict", "FAIL"}, {"witness", {{"detail", e.what()}}}}}},
                      {"verdict", "FAIL"},
                      {"timestamp", {{"utc", utc_now()}}}};
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json jobs = json::array();
  json job_times = json::array();
  std::vector<std::string> verdicts;
  json counts = {{"PASS", 0}, {"FAIL", 0}, {"SKIPPED", 0}, {"INDETERMINATE", 0}};
  for (auto& r : reports) {
    job_times.push_back(r["timestamp"]);
    r.erase("timestamp");
    for (const auto& t : r["tasks"]) counts[t["verdict"].get<std::string>()] = counts[t["verdict"].get<std::string>()].get<int>() + 1;
    verdicts.push_back(r["verdict"]);
    jobs.push_back(std::move(r));
  }
  return {{"suite", s.name},
          {"jobs", jobs},
          {"task_counts", counts},
          {"verdict", combine(verdicts)},
          {"timestamp", {{"utc", utc_now()}, {"jobs", job_times}}}};
}

std::string combine(const std::vector<std::string>& verdicts) {
  const auto has = [&](const char* v) { return std::find(verdicts.begin(), verdicts.end(), v) != verdicts.end(); };
  if (has("FAIL")) return "FAIL";
  if (has("INDETERMINATE")) return "INDETERMINATE";
  if (has("PASS")) return "PASS";
  return "SKIPPED";
}

int exit_code(const json& report) { return report.value("verdict", "") == "FAIL" ? 1 : 0; }

json strip_timestamps(json report) {
  if (report.is_object()) {
    report.erase("timestamp");
    for (auto& [k, v] : report.items()) v = strip_timestamps(v);
  } else if (report.is_array()) {
    for (auto& v : report) v = strip_timestamps(v);
  }
  return report;
}

}  // namespace eigenposet::cli
