#include <random>

#include "doctest.h"
#include "eigenposet/equivariant.hpp"
#include "fixtures.hpp"
#include "random_gposet.hpp"

using namespace eigenposet;
using namespace eigenposet::testing;

namespace {

const RootOfUnity kOne{1, 0};

GPoset uprime(const ReflCoset& c, const RootOfUnity& z) { return build_Uprime(build_Sprime(build_S(c, z), true)); }

// <a, b> = (1/|G|) sum_g a(g) conj(b(g)).
CycNum inner(const ClassFunction& a, const ClassFunction& b) {
  const auto& g = *a.group();
  CycNum sum;
  for (int x = 0; x < g.order(); ++x) sum += a.at(x) * conj(b.at(x));
  return sum / CycNum(static_cast<long>(g.order()));
}

ClassFunction restrict_to(const ClassFunction& chi, const Subgroup& h) {
  std::vector<CycNum> values;
  for (int x : h.embedding) values.push_back(chi.at(x));
  return ClassFunction::from_elements(h.group, values);
}

ClassFunction random_class_function(std::mt19937_64& rng, std::shared_ptr<const FiniteGroup> g) {
  std::vector<CycNum> values;
  for (std::size_t k = 0; k < g->classes().size(); ++k) {
    values.push_back(CycNum::root_of_unity(3, static_cast<long>(rng() % 3)) * CycNum(static_cast<long>(rng() % 5)));
  }
  return ClassFunction(std::move(g), values);
}

void check_all_pass(const VerifyReport& r) {
  for (const auto& c : r.checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.verdict != Verdict::Fail);
    CHECK(c.verdict != Verdict::Indeterminate);
  }
  CHECK(r.overall() == Verdict::Pass);
}

}  // namespace

TEST_CASE("class functions") {
  const auto g = build_sym(3)->abstract();
  std::vector<CycNum> values(6, CycNum(1));
  const ClassFunction one = ClassFunction::from_elements(g, values);
  CHECK(one.dimension() == CycNum(1));
  CHECK(one.class_values().size() == 3);
  values[1] = CycNum(2);
  CHECK_THROWS_AS(ClassFunction::from_elements(g, values), InvalidArgument);
  CHECK((one + one).at(3) == CycNum(2));
  CHECK(ClassFunction::zero(g).is_zero());
}

TEST_CASE("Lefschetz character") {
  const ClassFunction c3 = lefschetz_character(chain(3));
  CHECK(c3.is_zero());
  const GPoset a3 = antichain(3);
  CHECK(lefschetz_character(a3).dimension() == CycNum(2));

  const GPoset up = uprime(trivial_coset(build_sym(3)), kOne);
  const ClassFunction l = lefschetz_character(up);
  CHECK(l.dimension() == CycNum(homology(up).reduced_euler));
  CHECK(check_lefschetz(up).verdict == Verdict::Pass);
  const ClassFunction top = top_homology_character(up);
  CHECK(top.dimension() == CycNum(2));
  // H~_1 of U'_1(Sym(3)) is the reflection representation tensored with the sign.
  const auto& g = *up.group();
  for (int x = 0; x < g.order(); ++x) {
    const auto& cls = g.classes()[g.class_of(x)];
    if (cls.size() == 3) CHECK(top.at(x) == CycNum(0));
    if (cls.size() == 2) CHECK(top.at(x) == CycNum(-1));
  }
  const auto chars = homology_characters(up);
  CHECK(chars[2] == top);  // degree 1

  CHECK(top_homology_character(chain(1)).is_zero());
  // A circle plus an isolated point has homology in degrees 0 and 1.
  const GPoset circle = suspension(antichain(2));
  CHECK_THROWS_AS(top_homology_character(extension_PQ(circle, {}, false)), NotConcentrated);

  const GPoset b2 = uprime(trivial_coset(build_gmpn(2, 1, 2)), RootOfUnity{4, 1});
  CHECK(top_homology_character(b2).dimension() == CycNum(2));
}

TEST_CASE("Lefschetz consistency on random posets") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_instance(rng);
    CAPTURE(t);
    CHECK(check_lefschetz(inst.p).verdict == Verdict::Pass);
    const ClassFunction l = lefschetz_character(inst.p);
    CHECK(lefschetz_character(suspension(inst.p)) == CycNum(-1) * l);
    const auto chars = homology_characters(inst.p);
    const auto sus = homology_characters(suspension(inst.p));
    for (std::size_t k = 0; k < chars.size(); ++k) CHECK(sus[k + 1] == chars[k]);
    const MinimalWedge mw = wedge_over_minimal(inst.p, inst.q_minimal);
    CHECK(lefschetz_character(mw.wedge) == lefschetz_character(mw.pq));
  }
}

TEST_CASE("induced characters") {
  const auto g = build_sym(4)->abstract();
  const Subgroup h = make_subgroup(*g, {0});
  const ClassFunction triv_h = ClassFunction::from_elements(h.group, {CycNum(1)});
  const ClassFunction reg = induced_character(h, triv_h, g);
  CHECK(reg.dimension() == CycNum(24));
  for (int x = 1; x < 24; ++x) CHECK(reg.at(x) == CycNum(0));

  std::vector<int> all(24);
  for (int i = 0; i < 24; ++i) all[i] = i;
  std::mt19937_64 rng(3);
  const ClassFunction chi = random_class_function(rng, g);
  const Subgroup whole = make_subgroup(*g, all);
  CHECK(induced_character(whole, restrict_to(chi, whole), g) == chi);
  int order3 = 1;
  while (g->mul(order3, order3) == 0) ++order3;
  CHECK_THROWS_AS(induced_character(std::vector<int>{0, order3}, chi, g), NotASubgroup);

  // Frobenius reciprocity against every point stabilizer of Sym(4) acting on U'_1.
  const GPoset up = uprime(trivial_coset(build_sym(4)), kOne);
  for (int x = 0; x < up.size(); ++x) {
    const Subgroup gx = stabilizer_subgroup(up, x);
    for (int t = 0; t < 3; ++t) {
      const ClassFunction a = random_class_function(rng, gx.group);
      const ClassFunction b = random_class_function(rng, g);
      CHECK(inner(induced_character(gx, a, g), b) == inner(a, restrict_to(b, gx)));
    }
    const ClassFunction triv = ClassFunction::from_elements(gx.group, std::vector<CycNum>(gx.group->order(), CycNum(1)));
    CHECK(induced_character(gx, triv, g).dimension() == CycNum(24 / gx.group->order()));
  }
}

TEST_CASE("maximal eigenspaces") {
  const auto s3 = build_sym(3);
  const GPoset sp1 = build_Sprime(build_S(trivial_coset(s3), kOne));
  const EigenspaceOrbitData d1 = maximal_eigenspaces(sp1, *s3);
  CHECK(d1.maximal.size() == 1);
  CHECK(d1.e.dim() == 2);
  CHECK(d1.normalizer.size() == 6);
  CHECK(d1.centralizer == std::vector<int>{0});

  const GPoset sp3 = build_Sprime(build_S(trivial_coset(s3), RootOfUnity{3, 1}), true);
  const EigenspaceOrbitData d3 = maximal_eigenspaces(sp3, *s3);
  CHECK(d3.maximal.size() == 2);
  CHECK(d3.orbits.size() == 1);
  CHECK(d3.maximal.size() * d3.normalizer.size() == 6);
  CHECK(d3.e.dim() == 1);  // one degree of Sym(3) is divisible by 3
  const ReflGroupPtr q = restricted_group(*s3, d3);
  CHECK(q->order() == 3);
  CHECK(molien_degrees(q->elements(), 1) == std::vector<int>{3});

  // Sym(4), zeta = -1: E is a plane on which N(E)/C(E) acts as B2.
  const auto s4 = build_sym(4);
  const GPoset sp = build_Sprime(build_S(trivial_coset(s4), RootOfUnity{2, 1}));
  const EigenspaceOrbitData d = maximal_eigenspaces(sp, *s4);
  CHECK(d.e.dim() == 2);
  CHECK(d.maximal.size() * d.normalizer.size() == 24);
  const ReflGroupPtr b2 = restricted_group(*s4, d);
  CHECK(b2->order() * static_cast<int>(d.centralizer.size()) == static_cast<int>(d.normalizer.size()));
  CHECK(molien_degrees(b2->elements(), 2) == std::vector<int>{2, 4});
}

TEST_CASE("sphere count formulas") {
  const std::vector<int> deg{2, 8, 12, 14, 18, 20, 24, 30};
  const std::vector<int> codeg{0, 6, 10, 12, 16, 18, 22, 28};
  CHECK(regular_sphere_count(deg, codeg, 3) == 7745920);
  CHECK(regular_sphere_count(deg, codeg, 3) == mpz_class(2 * 8 * 14 * 20) * (1 * 7 * 13 * 19));
  CHECK(regular_sphere_count(deg, codeg, 4) == mpz_class(2 * 14 * 18 * 30) * (1 * 13 * 17 * 29));
  CHECK(regular_sphere_count(deg, codeg, 4) == 96904080);
  CHECK(regular_sphere_count({2, 3}, {0, 1}, 3) == 2);
  CHECK(regular_sphere_count({2, 3}, {0, 1}, 1) == 2);
  CHECK(sphere_count_formula({2, 3}, 3, 1, {0}) == 2);
  CHECK(sphere_count_formula({2, 4}, 2, 2, {0, 2}) == mpq_class(3, 2));
  // Sym(5), m = 3: |C(E)| = 2 and the quotient is cyclic of order 3.
  CHECK(sphere_count_formula({2, 3, 4, 5}, 3, 2, {0}) == 20);
}

TEST_CASE("wedge decomposition on small groups") {
  check_all_pass(verify_wedge_decomposition(trivial_coset(build_sym(3)), kOne));
  check_all_pass(verify_wedge_decomposition(trivial_coset(build_gmpn(2, 1, 2)), RootOfUnity{4, 1}));
  const VerifyReport g312 = verify_wedge_decomposition(trivial_coset(build_gmpn(3, 1, 2)), RootOfUnity{3, 1});
  check_all_pass(g312);
  const VerifyReport s3z3 = verify_wedge_decomposition(trivial_coset(build_sym(3)), RootOfUnity{3, 1});
  check_all_pass(s3z3);
  REQUIRE_FALSE(s3z3.notes.empty());
  CHECK(s3z3.notes.front().find("T' is empty") != std::string::npos);
}

TEST_CASE("sphere counts on small groups") {
  const VerifyReport r = verify_sphere_count(trivial_coset(build_sym(3)), RootOfUnity{3, 1});
  check_all_pass(r);
  const Check* count = r.find("sphere-count-formula");
  REQUIRE(count != nullptr);
  CHECK(count->values.front().second == "2");
  CHECK(r.find("regular-formula")->verdict == Verdict::Pass);

  for (auto [sel, m] : {std::pair{"sym:4", 2}, {"gmpn:2,1,2", 4}, {"gmpn:3,1,2", 3}, {"file:st4", 4}, {"sym:4", 1}}) {
    CAPTURE(sel);
    CAPTURE(m);
    check_all_pass(verify_sphere_count(trivial_coset(build_group(sel)), RootOfUnity{m, 1}));
  }
  // G(2,2,3) is Sym(4) in another realisation; zeta_4 is regular for it.
  const VerifyReport d3 = verify_sphere_count(trivial_coset(build_gmpn(2, 2, 3)), RootOfUnity{4, 1});
  check_all_pass(d3);
}

TEST_CASE("U'_1 is the suspension of S~_1") {
  check_all_pass(verify_uprime_suspension(build_sym(3)));
  check_all_pass(verify_uprime_suspension(build_gmpn(2, 1, 2)));
  const VerifyReport r = verify_uprime_suspension(build_sym(3));
  CHECK(r.find("homology-shift")->values.front().second == "H1=Z^2");
  const VerifyReport degenerate = verify_uprime_suspension(build_from_generators(1, {identity(1)}));
  CHECK(degenerate.overall() == Verdict::Skipped);
  CHECK_FALSE(degenerate.notes.empty());
}
