#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "eigenposet/data.hpp"
#include "eigenposet/refl.hpp"

using namespace eigenposet;

namespace {

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Closure, identity and inverses by brute force over the element list.
void check_group_axioms(const ReflGroup& g) {
  CHECK(g.element(0) == identity(g.dim()));
  for (int a = 0; a < g.order(); ++a) {
    CHECK(g.index_of(matinv(g.element(a))) >= 0);
    for (int b = 0; b < g.order(); ++b) CHECK(g.index_of(matmul(g.element(a), g.element(b))) >= 0);
  }
}

void check_degree_identities(const ReflGroup& g) {
  const DegreeData d = degree_data(g);
  CHECK(d.degree_product() == g.order());
  const int reflections_from_degrees = std::accumulate(d.degrees.begin(), d.degrees.end(), 0) - static_cast<int>(d.degrees.size());
  CHECK(reflections_from_degrees == static_cast<int>(reflection_indices(g).size()));
  REQUIRE(d.molien.has_value());
  CHECK(*d.molien == d.degrees);
  REQUIRE(d.has_codegrees());
  const int codegree_sum = std::accumulate(d.codegrees.begin(), d.codegrees.end(), 0);
  CHECK(codegree_sum == hyperplane_count(g) - (g.dim() - fixed_space_dim(g)));
}

Mat diag2(const CycNum& a, const CycNum& b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("G(m,p,n) orders") {
  CHECK(build_gmpn(1, 1, 3)->order() == 6);
  const auto b2 = build_gmpn(2, 1, 2);
  CHECK(b2->order() == 8);
  CHECK(reflections(*b2).size() == 4);
  CHECK(build_gmpn(3, 3, 3)->order() == 54);
  for (auto [m, p, n] : {std::tuple{2, 2, 3}, {3, 1, 2}, {4, 2, 2}, {6, 3, 2}, {2, 1, 3}, {5, 5, 2}}) {
    const auto g = build_gmpn(m, p, n);
    long expected = factorial(n);
    for (int i = 0; i < n; ++i) expected *= m;
    expected /= p;
    CHECK(g->order() == expected);
    // The shipped generators close to the same group.
    CHECK(build_from_generators(n, g->generators())->order() == expected);
  }
  CHECK_THROWS_AS(build_gmpn(4, 3, 2), InvalidArgument);
  CHECK_THROWS_AS(build_gmpn(2, 1, 8, 1000), BudgetExceeded);
}

TEST_CASE("group axioms on small groups") {
  check_group_axioms(*build_gmpn(3, 1, 2));
  check_group_axioms(*build_sym(4));
  check_group_axioms(*load_group_file("st4"));
}

TEST_CASE("build_from_generators") {
  CHECK(build_from_generators(2, {identity(2)})->order() == 1);
  CHECK(build_from_generators(2, {diag2(CycNum::root_of_unity(5, 1), CycNum(1))})->order() == 5);
  CHECK(load_group_file("st4")->order() == 24);
  CHECK(load_group_file("st8")->order() == 96);
  // An element of infinite order exhausts any budget.
  Mat shear = identity(2);
  shear(0, 1) = CycNum(1);
  CHECK_THROWS_AS(build_from_generators(2, {shear}, 500), BudgetExceeded);
}

TEST_CASE("reflections") {
  CHECK(reflections(*build_from_generators(2, {identity(2)})).empty());
  const auto s3 = build_gmpn(1, 1, 3);
  const auto refl = reflections(*s3);
  CHECK(refl.size() == 3);
  for (const auto& r : refl) CHECK(determinant(r) == CycNum(-1));
  CHECK(reflections(*build_sym(3)).size() == 3);
  CHECK(reflections(*load_group_file("st4")).size() == 8);
}

TEST_CASE("Molien degrees") {
  const auto s3 = build_sym(3);
  CHECK(molien_degrees(s3->elements(), 2) == std::vector<int>{2, 3});
  const DegreeData d = degree_data(*s3);
  CHECK(d.degrees == std::vector<int>{2, 3});
  CHECK(d.codegrees == std::vector<int>{0, 1});
  CHECK(molien_degrees(build_gmpn(2, 1, 2)->elements(), 2) == std::vector<int>{2, 4});
  // A cyclic group generated by diag(z3, z3) is not a reflection group.
  const auto scalar = build_from_generators(2, {diag2(CycNum::root_of_unity(3, 1), CycNum::root_of_unity(3, 1))});
  CHECK_FALSE(molien_degrees(scalar->elements(), 2).has_value());
  CHECK(molien_degrees(load_group_file("st8")->elements(), 2) == std::vector<int>{8, 12});
}

TEST_CASE("degree identities") {
  for (const auto& sel : {"sym:3", "sym:4", "gmpn:2,1,2", "gmpn:3,1,2", "gmpn:2,2,3", "gmpn:4,2,2", "gmpn:3,3,3",
                          "gmpn:1,1,3", "gmpn:4,4,2", "file:st4", "file:st8"}) {
    CAPTURE(sel);
    check_degree_identities(*build_group(sel));
  }
}

TEST_CASE("degree table") {
  const auto e8 = find_table_row("E8");
  REQUIRE(e8.has_value());
  CHECK(e8->degrees == std::vector<int>{2, 8, 12, 14, 18, 20, 24, 30});
  CHECK(e8->codegrees == std::vector<int>{0, 6, 10, 12, 16, 18, 22, 28});
  for (const auto& row : degree_table()) {
    mpz_class prod = 1;
    for (int d : row.degrees) prod *= d;
    CHECK(prod == row.order);
  }
  CHECK(find_table_row("L4")->name == "ST32");
  CHECK_FALSE(find_table_row("nonsense").has_value());
  const auto unnamed = build_from_generators(2, {diag2(CycNum(-1), CycNum(1))});
  CHECK_THROWS_AS(degree_data(*unnamed), UnknownGroup);
}

TEST_CASE("degree candidates separate equal-degree groups") {
  // ST4 and G(6,3,2) share order 24 and degrees (4,6); hyperplane counts differ.
  const auto st4 = degree_candidates(2, 24, {4, 6}, 2);
  REQUIRE(st4.size() == 1);
  CHECK(st4.front().name == "ST4");
  const auto g632 = degree_candidates(2, 24, {4, 6}, 6);
  REQUIRE(g632.size() == 1);
  CHECK(g632.front().name == "G(6,3,2)");
  const auto b2 = degree_candidates(2, 8, {2, 4}, 2);
  REQUIRE_FALSE(b2.empty());
  for (const auto& c : b2) CHECK(c.codegrees == std::vector<int>{0, 2});
  CHECK(degree_candidates(1, 4, {4}, 0).front().codegrees == std::vector<int>{0});
}

TEST_CASE("cosets") {
  const auto b2 = build_gmpn(2, 1, 2);
  CHECK(normalizes(identity(2), *b2));
  const ReflCoset id = trivial_coset(b2);
  CHECK(coset_elements(id) == b2->elements());
  const Mat i4 = diag2(CycNum::root_of_unity(4, 1), CycNum::root_of_unity(4, 1));
  CHECK(normalizes(i4, *b2));
  const ReflCoset c = make_coset(b2, i4);
  CHECK(c.gamma_order == 4);
  CHECK(b2->index_of(coset_elements(c)[0]) < 0);

  const auto g312 = build_gmpn(3, 1, 2);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    Mat x(2, 2);
    for (Index i = 0; i < 2; ++i) {
      for (Index j = 0; j < 2; ++j) x(i, j) = CycNum(static_cast<long>(rng() % 5) + 1);
    }
    if (determinant(x).is_zero()) continue;
    CHECK_FALSE(normalizes(x, *g312));
    CHECK_THROWS_AS(make_coset(g312, x), InvalidArgument);
  }
}

TEST_CASE("group files") {
  std::istringstream in(
      "# comment\nname = C2\ndim = 1\norder = 2\ndegrees = 2\ncodegrees = 0\ngenerator\n-1\nend\n");
  const GroupFile f = parse_group_file(in);
  CHECK(f.name == "C2");
  CHECK(f.generators.size() == 1);
  CHECK(f.degrees == std::vector<int>{2});
  std::istringstream bad("dim = 2\ngenerator\n1; 0\n");
  CHECK_THROWS_AS(parse_group_file(bad), ParseError);
  std::istringstream shape("dim = 2\ngenerator\n1\nend\n");
  CHECK_THROWS_AS(parse_group_file(shape), ParseError);
  CHECK_THROWS_AS(build_group("bogus:3"), ParseError);
  CHECK_THROWS_AS(build_group("file:missing-group"), IoError);
}

TEST_CASE("abstract group") {
  const auto s4 = build_sym(4);
  const auto ag = s4->abstract();
  CHECK(ag->order() == 24);
  CHECK(ag->classes().size() == 5);
  const auto st4 = load_group_file("st4");
  CHECK(st4->abstract()->classes().size() == 7);
}
