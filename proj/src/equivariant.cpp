#include "eigenposet/equivariant.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>

#include "eigenposet/errors.hpp"

namespace eigenposet {

// ---------------------------------------------------------------- ClassFunction

ClassFunction::ClassFunction(std::shared_ptr<const FiniteGroup> group, std::vector<CycNum> class_values)
    : group_(std::move(group)), values_(std::move(class_values)) {
  if (values_.size() != group_->classes().size()) throw InvalidArgument("one value per conjugacy class expected");
}

ClassFunction ClassFunction::zero(std::shared_ptr<const FiniteGroup> group) {
  const std::size_t k = group->classes().size();
  return ClassFunction(std::move(group), std::vector<CycNum>(k));
}

ClassFunction ClassFunction::from_elements(std::shared_ptr<const FiniteGroup> group, const std::vector<CycNum>& values) {
  if (static_cast<int>(values.size()) != group->order()) throw InvalidArgument("one value per group element expected");
  std::vector<CycNum> per_class;
  for (const auto& cls : group->classes()) {
    for (int g : cls) {
      if (!(values[g] == values[cls.front()])) throw InvalidArgument("values are not constant on a conjugacy class");
    }
    per_class.push_back(values[cls.front()]);
  }
  return ClassFunction(std::move(group), std::move(per_class));
}

bool ClassFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const CycNum& v) { return v.is_zero(); });
}

ClassFunction& ClassFunction::operator+=(const ClassFunction& o) {
  if (group_->order() != o.group_->order() || values_.size() != o.values_.size()) {
    throw InvalidArgument("class functions on different groups");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}

ClassFunction operator*(const CycNum& s, ClassFunction f) {
  for (auto& v : f.values_) v *= s;
  return f;
}

bool operator==(const ClassFunction& a, const ClassFunction& b) {
  return a.group_->order() == b.group_->order() && a.values_ == b.values_;
}

// ---------------------------------------------------------------- characters

std::vector<long> fixed_point_euler(const GPoset& p) {
  const int n = p.size();
  std::vector<int> below(n, 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) below[x] += p.less(y, x);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });

  const int k = static_cast<int>(p.action().size());
  std::vector<long> out(k);
  // Elements are independent; each worker owns a scratch buffer and a disjoint slice of `out`.
  auto work = [&](int first, int last) {
    std::vector<long> signed_chains(n);  // sum over chains of P^g topped at x of (-1)^dim
    for (int g = first; g < last; ++g) {
      long total = -1;  // the empty chain
      for (int x : order) {
        if (p.act(g, x) != x) continue;
        long s = 1;
        for (int y = 0; y < n; ++y) {
          if (p.act(g, y) == y && p.less(y, x)) s -= signed_chains[y];
        }
        signed_chains[x] = s;
        total += s;
      }
      out[g] = total;
    }
  };
  const long cost = static_cast<long>(k) * n * n;
  const int workers = cost < 4'000'000 ? 1 : std::max(1, std::min<int>(k, std::thread::hardware_concurrency()));
  if (workers == 1) {
    work(0, k);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work, k * w / workers, k * (w + 1) / workers);
  for (auto& t : pool) t.join();
  return out;
}

ClassFunction lefschetz_character(const GPoset& p) {
  const auto euler = fixed_point_euler(p);
  std::vector<CycNum> values(euler.begin(), euler.end());
  return ClassFunction::from_elements(p.group(), values);
}

std::vector<ClassFunction> homology_characters(const GPoset& p, std::size_t simplex_budget) {
  const ChainComplex c = order_complex(p, simplex_budget);
  std::vector<ClassFunction> out;
  for (int n = -1; n <= c.top_dim(); ++n) {
    const RationalHomology h = rational_homology(c, n);
    std::vector<CycNum> values;
    for (const auto& cls : p.group()->classes()) {
      const QMatrix a = action_on_homology(p, c, h, cls.front());
      mpq_class trace = 0;
      for (Index i = 0; i < a.rows(); ++i) trace += a(i, i);
      values.emplace_back(trace);
    }
    out.emplace_back(p.group(), std::move(values));
  }
  return out;
}

ClassFunction top_homology_character(const GPoset& p) {
  const auto support = homology(p).support();
  if (support.size() > 1) throw NotConcentrated("homology lives in more than one degree");
  if (support.empty()) return ClassFunction::zero(p.group());
  const int d = support.front();
  return CycNum(d % 2 == 0 ? 1 : -1) * lefschetz_character(p);
}

ClassFunction induced_character(const Subgroup& h, const ClassFunction& chi, std::shared_ptr<const FiniteGroup> g) {
  if (chi.group()->order() != h.group->order()) throw InvalidArgument("character is not on the subgroup");
  std::vector<int> local(g->order(), -1);
  for (std::size_t i = 0; i < h.embedding.size(); ++i) local[h.embedding[i]] = static_cast<int>(i);
  std::vector<CycNum> values;
  for (const auto& cls : g->classes()) {
    CycNum sum;
    for (int x = 0; x < g->order(); ++x) {
      const int y = local[g->conjugate(g->inv(x), cls.front())];
      if (y >= 0) sum += chi.at(y);
    }
    values.push_back(sum / CycNum(static_cast<long>(h.group->order())));
  }
  return ClassFunction(std::move(g), std::move(values));
}

ClassFunction induced_character(const std::vector<int>& h_elements, const ClassFunction& chi,
                                std::shared_ptr<const FiniteGroup> g) {
  const Subgroup h = make_subgroup(*g, h_elements);
  return induced_character(h, chi, std::move(g));
}

// ---------------------------------------------------------------- eigenspaces

namespace {

Mat column(const Mat& basis, Index i) { return basis.row(i).transpose(); }

// Matrix of g on E in E's RREF basis; g must map E to itself.
Mat restrict_to(const Mat& g, const Subspace& e) {
  Mat out(e.dim(), e.dim());
  for (Index j = 0; j < e.dim(); ++j) {
    const Mat image = matmul(g, column(e.basis(), j));
    out.col(j) = e.coordinates(image.col(0));
  }
  return out;
}

bool acts_trivially(const Mat& g, const Subspace& e) {
  for (Index j = 0; j < e.dim(); ++j) {
    const Mat v = column(e.basis(), j);
    if (!(matmul(g, v) == v)) return false;
  }
  return true;
}

}  // namespace

EigenspaceOrbitData maximal_eigenspaces(const GPoset& sp, const ReflGroup& g) {
  EigenspaceOrbitData d;
  d.maximal = sp.minimal_elements();
  if (d.maximal.empty()) return d;
  std::vector<char> seen(sp.size(), 0);
  for (int x : d.maximal) {
    if (seen[x]) continue;
    d.orbits.push_back(sp.orbit(x));
    for (int y : d.orbits.back()) seen[y] = 1;
  }
  d.representative = d.maximal.front();
  const auto& space = sp.element(d.representative).subspace();
  if (!space) throw InvalidArgument("S' element carries no subspace");
  d.e = *space;
  d.normalizer = sp.stabilizer(d.representative);
  for (int n : d.normalizer) {
    if (acts_trivially(g.element(n), d.e)) d.centralizer.push_back(n);
  }
  return d;
}

ReflGroupPtr restricted_group(const ReflGroup& g, const EigenspaceOrbitData& data) {
  std::vector<Mat> elements;
  std::unordered_map<std::string, int> seen;
  for (int n : data.normalizer) {
    Mat r = restrict_to(g.element(n), data.e);
    if (seen.emplace(matrix_key(r), static_cast<int>(elements.size())).second) elements.push_back(std::move(r));
  }
  return std::make_shared<const ReflGroup>(data.e.dim(), elements, elements, "N(E)/C(E)");
}

// ---------------------------------------------------------------- reports

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skipped: return "SKIPPED";
    case Verdict::Indeterminate: return "INDETERMINATE";
  }
  return "?";
}

Verdict VerifyReport::overall() const {
  bool any_run = false;
  bool indeterminate = false;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::Fail) return Verdict::Fail;
    indeterminate = indeterminate || c.verdict == Verdict::Indeterminate;
    any_run = any_run || c.verdict != Verdict::Skipped;
  }
  if (indeterminate) return Verdict::Indeterminate;
  return any_run ? Verdict::Pass : Verdict::Skipped;
}

const Check* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Check& VerifyReport::add(std::string name, Verdict v, std::string detail) {
  checks.push_back(Check{std::move(name), v, std::move(detail), {}});
  return checks.back();
}

Check check_lefschetz(const GPoset& p, const std::string& name) {
  Check out{name, Verdict::Pass, {}, {}};
  const auto fast = fixed_point_euler(p);
  const ChainComplex c = order_complex(p);
  std::vector<RationalHomology> bases;
  for (int n = -1; n <= c.top_dim(); ++n) bases.push_back(rational_homology(c, n));
  for (int g = 0; g < static_cast<int>(p.action().size()); ++g) {
    mpq_class slow = 0;
    for (const auto& h : bases) {
      if (h.dim() == 0) continue;
      const QMatrix a = action_on_homology(p, c, h, g);
      mpq_class trace = 0;
      for (Index i = 0; i < a.rows(); ++i) trace += a(i, i);
      slow += h.degree % 2 == 0 ? trace : mpq_class(-trace);
    }
    if (slow != fast[g]) {
      out.verdict = Verdict::Fail;
      out.detail = "element " + std::to_string(g) + ": fixed-point " + std::to_string(fast[g]) + " vs trace " +
                   slow.get_str();
      break;
    }
  }
  out.values.emplace_back("elements", std::to_string(p.action().size()));
  return out;
}

namespace {

const RootOfUnity kOne{1, 0};

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Upset P_{>x} acted on by the stabilizer h of x, sharing h's group pointer.
GPoset upset_over(const GPoset& p, int x, const Subgroup& h) {
  std::vector<int> keep;
  for (int y = 0; y < p.size(); ++y) {
    if (p.less(x, y)) keep.push_back(y);
  }
  return induced_subposet(restrict_action(p, h), keep, PosetTag::Subposet);
}

bool characters_match(const std::vector<ClassFunction>& a, const std::vector<ClassFunction>& b, int shift,
                      std::string* witness) {
  // a[n + 1] is degree n; compare degree n of a with degree n - shift of b.
  const int top = std::max(static_cast<int>(a.size()), static_cast<int>(b.size()) + shift) - 2;
  for (int n = -1; n <= top; ++n) {
    const int ia = n + 1;
    const int ib = n - shift + 1;
    const bool has_a = ia >= 0 && ia < static_cast<int>(a.size());
    const bool has_b = ib >= 0 && ib < static_cast<int>(b.size());
    const ClassFunction& ref = has_a ? a[ia] : b[ib];
    const ClassFunction za = has_a ? a[ia] : ClassFunction::zero(ref.group());
    const ClassFunction zb = has_b ? b[ib] : ClassFunction::zero(ref.group());
    if (!(za == zb)) {
      if (witness) *witness = "degree " + std::to_string(n);
      return false;
    }
  }
  return true;
}

long product_of_coexponents(const std::vector<int>& codegrees) {
  long out = 1;
  for (int c : codegrees) out *= c + 1;
  return out;
}

}  // namespace

mpz_class regular_sphere_count(const std::vector<int>& degrees, const std::vector<int>& codegrees, int m) {
  mpz_class out = 1;
  for (int d : degrees) {
    if (d % m != 0) out *= d;
  }
  for (int c : codegrees) {
    if (c % m == 0) out *= c + 1;
  }
  return out;
}

mpq_class sphere_count_formula(const std::vector<int>& degrees, int m, long centralizer_order,
                               const std::vector<int>& quotient_codegrees) {
  mpz_class num = 1;
  for (int d : degrees) {
    if (d % m != 0) num *= d;
  }
  for (int c : quotient_codegrees) num *= c + 1;
  mpq_class out(num, centralizer_order);
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------- verification drivers

VerifyReport verify_wedge_decomposition(const ReflCoset& c, const RootOfUnity& zeta, std::size_t budget) {
  VerifyReport r;
  r.task = "verify-decomposition";
  const GPoset s = build_S(c, zeta);
  const GPoset sp = build_Sprime(s, true);
  if (sp.empty()) {
    r.notes.push_back("S' is empty; nothing to decompose");
    for (const char* name : {"mayer-vietoris", "wedge-homology", "wedge-lefschetz", "induced-decomposition"}) {
      r.add(name, Verdict::Skipped, "S' is empty");
    }
    return r;
  }
  const std::vector<int> t_idx = [&] {
    const auto minimal = sp.minimal_elements();
    std::vector<int> out;
    for (int x = 0; x < sp.size(); ++x) {
      if (!std::binary_search(minimal.begin(), minimal.end(), x)) out.push_back(x);
    }
    return out;
  }();
  if (t_idx.empty()) r.notes.push_back("T' is empty; U' is S' plus an isolated point");
  const GPoset up = build_Uprime(sp);

  // Exactness of the long sequence for (S', T').
  const MVReport mv = verify_mayer_vietoris(sp, t_idx, budget);
  Check& ci = r.add("mayer-vietoris", verdict_of(mv.exact), mv.witness);
  ci.values.emplace_back("nodes", std::to_string(mv.nodes.size()));

  // U' against the wedge of suspended upsets over the maximal eigenspaces.
  const MinimalWedge mw = wedge_over_minimal(sp, t_idx);
  const HomologyResult hu = homology(up, budget);
  const HomologyResult hw = homology(mw.wedge, budget);
  std::vector<HomologyResult> parts;
  for (int m : mw.minimal) parts.push_back(homology(upset(sp, m), budget).shifted(1));
  const bool same = hu.isomorphic_to(hw) && hu.isomorphic_to(direct_sum(parts));
  Check& cii = r.add("wedge-homology", verdict_of(same), same ? "" : hu.describe() + " vs " + hw.describe());
  cii.values.emplace_back("homology", hu.describe());
  r.add("wedge-lefschetz", verdict_of(lefschetz_character(up) == lefschetz_character(mw.wedge)));

  // Characters of U' against induced characters of the upsets.
  const auto g = sp.group();
  const auto hu_chars = homology_characters(up, budget);
  std::vector<ClassFunction> sum;  // sum[n + 1], shifted up by one from the upsets
  std::vector<char> seen(sp.size(), 0);
  for (int m : mw.minimal) {
    if (seen[m]) continue;
    for (int y : sp.orbit(m)) seen[y] = 1;
    const Subgroup gm = stabilizer_subgroup(sp, m);
    const auto chars = homology_characters(upset_over(sp, m, gm), budget);
    for (std::size_t k = 0; k < chars.size(); ++k) {
      const std::size_t at = k + 1;  // degree (k - 1) + 1
      while (sum.size() <= at) sum.push_back(ClassFunction::zero(g));
      sum[at] += induced_character(gm, chars[k], g);
    }
  }
  std::string witness;
  const bool ok = characters_match(hu_chars, sum, 0, &witness);
  r.add("induced-decomposition", verdict_of(ok), witness);
  return r;
}

VerifyReport verify_sphere_count(const ReflCoset& c, const RootOfUnity& zeta, std::size_t budget) {
  VerifyReport r;
  r.task = "verify-spheres";
  const ReflGroup& grp = *c.group;
  const int m = zeta.exact_order();
  const GPoset sp = build_Sprime(build_S(c, zeta), true);
  if (sp.empty()) {
    r.notes.push_back("S' is empty (degenerate)");
    for (const char* name : {"concentration", "sphere-count-fibre", "sphere-count-formula", "induced-character"}) {
      r.add(name, Verdict::Skipped, "S' is empty");
    }
    return r;
  }
  const GPoset up = build_Uprime(sp);
  const int l = length(up);
  const HomologyResult hu = homology(up, budget);
  const auto support = hu.support();
  const bool concentrated = (support.empty() || support == std::vector<int>{l}) && hu.torsion_at(l).empty();
  Check& cc = r.add("concentration", verdict_of(concentrated), concentrated ? "" : hu.describe());
  cc.values.emplace_back("length", std::to_string(l));
  cc.values.emplace_back("homology", hu.describe());
  if (!hu.torsion_free()) r.notes.push_back("torsion in H~(U'): " + hu.describe());
  const long count = hu.betti_at(l);

  // Orbit data and the fibre S~_1^E(N(E)/C(E)).
  const EigenspaceOrbitData od = maximal_eigenspaces(sp, grp);
  const long orbit = static_cast<long>(od.maximal.size());
  const long n_order = static_cast<long>(od.normalizer.size());
  const long c_order = static_cast<long>(od.centralizer.size());
  bool same_dim = true;
  for (int x : od.maximal) same_dim = same_dim && sp.element(x).subspace()->dim() == od.e.dim();
  Check& co = r.add("single-orbit", verdict_of(od.orbits.size() == 1 && same_dim && orbit * n_order == grp.order()));
  co.values.emplace_back("maximal_eigenspaces", std::to_string(orbit));
  co.values.emplace_back("dim_E", std::to_string(od.e.dim()));
  co.values.emplace_back("normalizer_order", std::to_string(n_order));
  co.values.emplace_back("centralizer_order", std::to_string(c_order));

  const ReflGroupPtr quotient = restricted_group(grp, od);
  const GPoset fibre = build_Stilde(build_S(trivial_coset(quotient), kOne), true);
  const HomologyResult hf = homology(fibre, budget);
  const auto fsupport = hf.support();
  const long fibre_rank = fsupport.size() == 1 ? hf.betti_at(fsupport.front()) : -1;
  r.add("fibre-homology", verdict_of(hf.isomorphic_to(homology(upset(sp, od.representative), budget))),
        hf.describe());
  Check& cf = r.add("sphere-count-fibre", verdict_of(fibre_rank >= 0 && count == orbit * fibre_rank));
  cf.values.emplace_back("brute_force", std::to_string(count));
  cf.values.emplace_back("fibre_rank", std::to_string(fibre_rank));

  // Invariant theory of G and of N(E)/C(E).
  std::optional<DegreeData> dd;
  try {
    dd = degree_data(grp);
  } catch (const UnknownGroup& e) {
    r.notes.push_back(std::string("unknown degree data: ") + e.what());
  }
  const bool coset_case = !c.is_group();
  if (coset_case) r.notes.push_back("gamma is not the identity; degree formulas are stated for gamma = I and are skipped");

  std::vector<int> g_div;
  if (dd) {
    for (int d : dd->degrees) {
      if (d % m == 0) g_div.push_back(d);
    }
    const int refl = static_cast<int>(reflection_indices(grp).size());
    int sum_exp = 0;
    for (int d : dd->degrees) sum_exp += d - 1;
    const bool molien_ok = !dd->molien || *dd->molien == dd->degrees;
    const bool ok = dd->degree_product() == grp.order() && sum_exp == refl && molien_ok;
    Check& ci = r.add("invariant-theory", verdict_of(ok));
    ci.values.emplace_back("degrees", join(dd->degrees));
    ci.values.emplace_back("codegrees", join(dd->codegrees));
    ci.values.emplace_back("reflections", std::to_string(refl));
  }

  const auto q_molien = molien_degrees(quotient->elements(), quotient->dim());
  if (dd && !coset_case) {
    const bool ok = q_molien && *q_molien == g_div;
    r.add("quotient-degrees", verdict_of(ok), q_molien ? join(*q_molien) : "N(E)/C(E) degrees unavailable");
    r.add("eigenspace-dimension",
          verdict_of(od.e.dim() == static_cast<Index>(g_div.size())),
          "dim E = " + std::to_string(od.e.dim()));
  } else {
    const char* why = coset_case ? "gamma is not the identity" : "no degree data for G";
    r.add("quotient-degrees", Verdict::Skipped, why);
    r.add("eigenspace-dimension", Verdict::Skipped, why);
  }

  // Codegrees of N(E)/C(E): G's own when E = V, else identified by candidates.
  std::optional<std::vector<int>> q_codegrees;
  std::string q_name;
  if (od.e.dim() == grp.dim() && dd && dd->has_codegrees()) {
    q_codegrees = dd->codegrees;
    q_name = grp.name().empty() ? "G" : grp.name();
  } else if (q_molien) {
    const int codegree_sum = hyperplane_count(*quotient) - static_cast<int>(quotient->dim() - fixed_space_dim(*quotient));
    const auto cands = degree_candidates(static_cast<int>(quotient->dim()), quotient->order(), *q_molien, codegree_sum);
    bool agree = !cands.empty();
    for (const auto& cand : cands) agree = agree && cand.codegrees == cands.front().codegrees;
    if (agree) {
      q_codegrees = cands.front().codegrees;
      for (const auto& cand : cands) q_name += (q_name.empty() ? "" : "|") + cand.name;
    } else {
      r.notes.push_back(cands.empty() ? "N(E)/C(E) not identified" : "N(E)/C(E) candidates disagree on codegrees");
    }
  }

  if (dd && q_codegrees && !coset_case) {
    const mpq_class formula = sphere_count_formula(dd->degrees, m, c_order, *q_codegrees);
    Check& cfo = r.add("sphere-count-formula", verdict_of(formula == count));
    cfo.values.emplace_back("formula", formula.get_str());
    cfo.values.emplace_back("quotient", q_name);
    cfo.values.emplace_back("quotient_codegrees", join(*q_codegrees));
  } else {
    r.add("sphere-count-formula", Verdict::Skipped,
          coset_case ? "gamma is not the identity" : "N(E)/C(E) codegrees unavailable");
  }
  // The coexponent count only involves N(E)/C(E), so it also runs for cosets.
  if (q_codegrees) {
    const long coexp = product_of_coexponents(*q_codegrees);
    Check& cce = r.add("coexponent-product", verdict_of(orbit * coexp == count),
                       std::to_string(orbit) + " * " + std::to_string(coexp));
    cce.values.emplace_back("quotient", q_name);
    r.add("fibre-coexponents", verdict_of(fibre_rank == coexp));
  } else {
    for (const char* name : {"coexponent-product", "fibre-coexponents"}) {
      r.add(name, Verdict::Skipped, "N(E)/C(E) codegrees unavailable");
    }
  }

  // Regularity: C(E) = {1}, cross-checked by E avoiding every reflecting hyperplane.
  const bool regular = c_order == 1;
  bool avoids = true;
  for (const Mat& refl : reflections(grp)) avoids = avoids && !contains(kernel(refl - identity(grp.dim())), od.e);
  Check& creg = r.add("regularity", verdict_of(regular == avoids));
  creg.values.emplace_back("regular", regular ? "true" : "false");
  if (regular && dd && dd->has_codegrees() && !coset_case) {
    const mpz_class reg = regular_sphere_count(dd->degrees, dd->codegrees, m);
    Check& crf = r.add("regular-formula", verdict_of(reg == count));
    crf.values.emplace_back("formula", reg.get_str());
    if (q_codegrees) {
      std::vector<int> div;
      for (int cd : dd->codegrees) {
        if (cd % m == 0) div.push_back(cd);
      }
      r.add("regular-codegrees", verdict_of(div == *q_codegrees), join(div));
    }
  } else {
    r.add("regular-formula", Verdict::Skipped,
          !regular ? "m is not regular" : coset_case ? "gamma is not the identity" : "no codegrees for G");
  }

  // Top homology of U' against the induced fibre character.
  const Subgroup nsub = make_subgroup(*sp.group(), od.normalizer);
  std::vector<Perm> action;
  for (int h : nsub.embedding) {
    const int k = quotient->index_of(restrict_to(grp.element(h), od.e));
    action.push_back(fibre.action()[k]);
  }
  const GPoset fibre_n(nsub.group, fibre.elements(), fibre.relation(), action, PosetTag::Stilde);
  try {
    const ClassFunction top_u = top_homology_character(up);
    const ClassFunction ind = induced_character(nsub, top_homology_character(fibre_n), sp.group());
    Check& cic = r.add("induced-character", verdict_of(is_gposet(fibre_n) && top_u == ind));
    cic.values.emplace_back("dimension", top_u.dimension().to_string());
  } catch (const NotConcentrated& e) {
    r.add("induced-character", Verdict::Fail, e.what());
  }
  return r;
}

VerifyReport verify_uprime_suspension(ReflGroupPtr g, std::size_t budget) {
  VerifyReport r;
  r.task = "verify-us";
  const GPoset s = build_S(trivial_coset(g), kOne);
  const GPoset sp = build_Sprime(s, true);
  if (sp.empty()) {
    r.notes.push_back("S has a single element; U' and the suspension are not defined");
    r.add("isomorphism", Verdict::Skipped, "degenerate");
    r.add("homology-shift", Verdict::Skipped, "degenerate");
    return r;
  }
  const GPoset st = build_Stilde(s, true);
  const GPoset up = build_Uprime(sp);
  const GPoset sus = suspension(st);
  const IsoVerdict iso = are_isomorphic_gposets(up, sus);
  r.add("isomorphism",
        iso == IsoVerdict::Isomorphic ? Verdict::Pass
                                      : (iso == IsoVerdict::NotIsomorphic ? Verdict::Fail : Verdict::Indeterminate),
        to_string(iso));
  const HomologyResult hu = homology(up, budget);
  const HomologyResult hs = homology(st, budget);
  Check& ch = r.add("homology-shift", verdict_of(hu.isomorphic_to(hs.shifted(1))));
  ch.values.emplace_back("Uprime", hu.describe());
  ch.values.emplace_back("Stilde", hs.describe());
  std::string witness;
  const bool chars = characters_match(homology_characters(sus, budget), homology_characters(st, budget), 1, &witness);
  r.add("character-shift", verdict_of(chars), witness);
  r.add("suspension-lefschetz", verdict_of(lefschetz_character(sus) == CycNum(-1) * lefschetz_character(st)));
  return r;
}

}  // namespace eigenposet
