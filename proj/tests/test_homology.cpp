#include <numeric>
#include <random>

#include "doctest.h"
#include "eigenposet/homology.hpp"
#include "fixtures.hpp"
#include "random_gposet.hpp"

using namespace eigenposet;
using namespace eigenposet::testing;

namespace {

const RootOfUnity kOne{1, 0};

std::vector<Index> counts(const ChainComplex& c) {
  std::vector<Index> out;
  for (int d = -1; d <= c.top_dim(); ++d) out.push_back(c.count(d));
  return out;
}

Boundary sparse_from(const std::vector<std::vector<int>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Boundary m(r, c);
  std::vector<Eigen::Triplet<int>> t;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      if (rows[i][j] != 0) t.emplace_back(i, j, rows[i][j]);
    }
  }
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

// Exact determinant by cofactor expansion; only used on tiny matrices.
mpz_class det(const std::vector<std::vector<int>>& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.empty()) return 1;
  mpz_class total = 0;
  std::vector<int> rest(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const int v = m[rows[0]][cols[j]];
    if (v == 0) continue;
    std::vector<int> sub = cols;
    sub.erase(sub.begin() + static_cast<long>(j));
    const mpz_class term = v * det(m, rest, sub);
    total += j % 2 == 0 ? term : mpz_class(-term);
  }
  return total;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// gcd of all k x k minors (the k-th determinantal divisor).
mpz_class determinantal_divisor(const std::vector<std::vector<int>>& m, int k) {
  std::vector<std::vector<int>> rs, cs;
  std::vector<int> cur;
  subsets(static_cast<int>(m.size()), k, 0, cur, rs);
  subsets(static_cast<int>(m[0].size()), k, 0, cur, cs);
  mpz_class g = 0;
  for (const auto& r : rs) {
    for (const auto& c : cs) {
      const mpz_class d = abs(det(m, r, c));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  }
  return g;
}

bool is_identity(const QMatrix& m) {
  return m.rows() == m.cols() && m == QMatrix::Identity(m.rows(), m.cols());
}

// The same G-poset with elements renumbered by perm.
GPoset relabel(const GPoset& p, const std::vector<int>& perm) {
  const int n = p.size();
  std::vector<Payload> e(n);
  std::vector<char> rel(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    e[perm[x]] = p.element(x);
    for (int y = 0; y < n; ++y) rel[static_cast<std::size_t>(perm[x]) * n + perm[y]] = p.leq(x, y);
  }
  std::vector<Perm> action;
  for (const auto& g : p.action()) {
    Perm a(n);
    for (int x = 0; x < n; ++x) a[perm[x]] = perm[g[x]];
    action.push_back(a);
  }
  return GPoset(p.group(), e, rel, action, p.tag());
}

}  // namespace

TEST_CASE("order complex simplex counts") {
  const ChainComplex empty = order_complex(antichain(0));
  CHECK(counts(empty) == std::vector<Index>{1});
  const HomologyResult he = homology(empty);
  CHECK(he.betti_at(-1) == 1);
  CHECK(he.support() == std::vector<int>{-1});

  const ChainComplex c3 = order_complex(chain(3));
  CHECK(counts(c3) == std::vector<Index>{1, 3, 3, 1});
  CHECK(boundary_squares_to_zero(c3));
  CHECK(homology(c3).support().empty());
  CHECK(homology(c3).reduced_euler == 0);

  const GPoset st = build_Stilde(build_S(trivial_coset(build_sym(3)), kOne));
  CHECK(counts(order_complex(st)) == std::vector<Index>{1, 3});

  CHECK_THROWS_AS(order_complex(chain(12), 100), BudgetExceeded);
}

TEST_CASE("chains are lexicographic and boundary signs alternate") {
  const ChainComplex c = order_complex(chain(3));
  CHECK(c.chains(1) == std::vector<Chain>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(c.index_of({0, 2}) == 1);
  CHECK(c.index_of({2, 0}) == -1);
  CHECK(sparse_triplets(order_complex(chain(2)).boundary(1), 1) == "boundary 1 rows 2 cols 1 nnz 2\n0 0 -1\n1 0 1\n");
  const QMatrix d2 = to_dense(c.boundary(2));
  CHECK(d2(0, 0) == 1);   // omit 0 -> (1,2)
  CHECK(d2(1, 0) == -1);  // omit 1 -> (0,2)
  CHECK(d2(2, 0) == 1);   // omit 2 -> (0,1)
}

TEST_CASE("Smith normal form against determinantal divisors") {
  SmithForm s = smith_normal_form(sparse_from({{2, 0}, {0, 3}}));
  CHECK(s.rank == 2);
  CHECK(s.invariant_factors == std::vector<mpz_class>{1, 6});
  s = smith_normal_form(sparse_from({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  CHECK(s.invariant_factors == std::vector<mpz_class>{2, 6, 12});
  CHECK(smith_normal_form(Boundary(0, 3)).rank == 0);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const int r = 1 + static_cast<int>(rng() % 4);
    const int c = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<int>> m(r, std::vector<int>(c));
    for (auto& row : m) {
      for (auto& v : row) v = rng() % 3 == 0 ? 0 : static_cast<int>(rng() % 13) - 6;
    }
    const SmithForm f = smith_normal_form(sparse_from(m));
    CAPTURE(t);
    CHECK(f.rank == rank(to_dense(sparse_from(m))));
    mpz_class prefix = 1;
    for (Index k = 1; k <= f.rank; ++k) {
      prefix *= f.invariant_factors[k - 1];
      CHECK(prefix == determinantal_divisor(m, static_cast<int>(k)));
      if (k > 1) CHECK(f.invariant_factors[k - 1] % f.invariant_factors[k - 2] == 0);
    }
    if (f.rank < std::min(r, c)) CHECK(determinantal_divisor(m, static_cast<int>(f.rank) + 1) == 0);
  }
}

TEST_CASE("homology examples") {
  const HomologyResult a3 = homology(antichain(3));
  CHECK(a3.betti_at(0) == 2);
  CHECK(a3.support() == std::vector<int>{0});

  const HomologyResult circle = homology(suspension(antichain(2)));
  CHECK(circle.betti_at(1) == 1);
  CHECK(circle.support() == std::vector<int>{1});

  const GPoset up = build_Uprime(build_Sprime(build_S(trivial_coset(build_sym(3)), kOne)));
  const HomologyResult hu = homology(up);
  CHECK(hu.betti_at(1) == 2);
  CHECK(hu.betti_at(0) == 0);
  CHECK(hu.support() == std::vector<int>{1});

  // Barycentric subdivision of the six-vertex projective plane.
  const GPoset rp2 = face_poset({{1, 2, 4}, {1, 2, 6}, {1, 3, 5}, {1, 3, 6}, {1, 4, 5},
                                 {2, 3, 4}, {2, 3, 5}, {2, 5, 6}, {3, 4, 6}, {4, 5, 6}});
  REQUIRE(rp2.size() == 31);
  const HomologyResult hp = homology(rp2);
  CHECK(hp.betti_at(1) == 0);
  CHECK(hp.torsion_at(1) == std::vector<mpz_class>{2});
  CHECK(hp.support() == std::vector<int>{1});
  CHECK(hp.reduced_euler == 0);
  CHECK_FALSE(hp.torsion_free());
  CHECK(homology(suspension(rp2)).isomorphic_to(hp.shifted(1)));
}

TEST_CASE("induced maps") {
  const GPoset a3 = antichain(3);
  CHECK(is_identity(induced_map(a3, a3, 0)));
  const QMatrix cone = induced_map(a3, adjoin_bottom(a3), 0);
  CHECK(cone.rows() == 0);
  CHECK(cone.cols() == 2);
  CHECK_THROWS_AS(induced_map(chain(2), antichain(2), 0), NotASubposet);
  // Same keys but a different order is not an induced subposet.
  std::vector<Payload> e{Payload::point("a0"), Payload::point("a1")};
  const GPoset bent(nullptr, e, {1, 1, 0, 1}, {}, PosetTag::Generic);
  CHECK_THROWS_AS(induced_map(bent, antichain(2), 0), NotASubposet);

  // T' -> S' for A2: three points into a poset with a minimum.
  const GPoset s = build_S(trivial_coset(build_sym(3)), kOne);
  const GPoset sp = build_Sprime(s);
  const GPoset tp = build_Tprime(sp);
  const QMatrix m0 = induced_map(tp, sp, 0);
  CHECK(m0.cols() == 2);
  CHECK(m0.rows() == 0);  // S' has a minimum, so it is contractible
}

TEST_CASE("connecting map") {
  // P = Q: P_Q is a cone, so H~_0(P_Q) = 0.
  const GPoset a2 = antichain(2);
  const QMatrix r0 = connecting_map(a2, all_of(a2), 0);
  CHECK(r0.cols() == 0);
  const GPoset up = build_Uprime(build_Sprime(build_S(trivial_coset(build_sym(3)), kOne)));
  const GPoset sp = build_Sprime(build_S(trivial_coset(build_sym(3)), kOne));
  const QMatrix r1 = connecting_map(sp, non_minimal(sp), 1);
  CHECK(r1.cols() == homology(up).betti_at(1));
  CHECK(r1.rows() == homology(build_Tprime(sp)).betti_at(0));
  CHECK(rank(r1) == 2);  // H~_1(S') = 0, so r is injective in degree 1
}

TEST_CASE("Mayer-Vietoris exactness") {
  const GPoset sp = build_Sprime(build_S(trivial_coset(build_sym(3)), kOne));
  const MVReport a2 = verify_mayer_vietoris(sp, non_minimal(sp));
  CHECK(a2.exact);
  CHECK(a2.witness.empty());
  CHECK_FALSE(a2.nodes.empty());
  CHECK(verify_simplex_decomposition(sp, non_minimal(sp)));

  const GPoset c3 = chain(3);
  CHECK(verify_mayer_vietoris(c3, all_of(c3)).exact);
  CHECK(verify_mayer_vietoris(antichain(3), all_of(antichain(3))).exact);

  // Sym(3), zeta_3: T' is empty.
  const GPoset sp3 = build_Sprime(build_S(trivial_coset(build_sym(3)), RootOfUnity{3, 1}), true);
  CHECK(verify_mayer_vietoris(sp3, non_minimal(sp3)).exact);
  CHECK_THROWS_AS(verify_mayer_vietoris(c3, {0}), NotAnIdeal);

  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_instance(rng);
    CAPTURE(t);
    const MVReport r = verify_mayer_vietoris(inst.p, inst.q);
    CHECK(r.exact);
    CHECK(verify_simplex_decomposition(inst.p, inst.q));
  }
}

TEST_CASE("homology properties on random posets") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_instance(rng);
    CAPTURE(t);
    const ChainComplex c = order_complex(inst.p);
    CHECK(boundary_squares_to_zero(c));
    const HomologyResult h = homology(c);
    long alt = 0;
    for (int n = -1; n <= h.max_degree(); ++n) alt += (n % 2 == 0 ? 1 : -1) * h.betti_at(n);
    CHECK(alt == h.reduced_euler);

    std::vector<int> perm(inst.p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(homology(relabel(inst.p, perm)).isomorphic_to(h));

    // Suspension shift.
    CHECK(homology(suspension(inst.p)).isomorphic_to(h.shifted(1)));

    // Wedge of suspensions against the direct sum of the parts.
    const GPoset q = induced_subposet(inst.p, inst.q, PosetTag::Subposet);
    const HomologyResult hq = homology(q);
    const GPoset w = wedge_of_suspensions({inst.p, q});
    CHECK(homology(w).isomorphic_to(direct_sum({h.shifted(1), hq.shifted(1)})));

    // Extension by minimal elements against the upsets of the removed points.
    const MinimalWedge mw = wedge_over_minimal(inst.p, inst.q_minimal);
    std::vector<HomologyResult> parts;
    for (int m : mw.minimal) parts.push_back(homology(upset(inst.p, m)).shifted(1));
    const HomologyResult hpq = homology(mw.pq);
    CHECK(hpq.isomorphic_to(direct_sum(parts)));
    CHECK(homology(mw.wedge).isomorphic_to(hpq));
  }
}

TEST_CASE("rational homology bases") {
  const GPoset up = build_Uprime(build_Sprime(build_S(trivial_coset(build_sym(3)), kOne)));
  const ChainComplex c = order_complex(up);
  const RationalHomology h1 = rational_homology(c, 1);
  REQUIRE(h1.dim() == 2);
  CHECK(is_zero_matrix(multiply(to_dense(c.boundary(1)), h1.cycles)));
  CHECK(is_identity(multiply(h1.projection, h1.cycles)));
  // The identity acts as the identity; the group acts by invertible matrices.
  CHECK(is_identity(action_on_homology(up, c, h1, 0)));
  for (int g = 0; g < up.group()->order(); ++g) CHECK(rank(action_on_homology(up, c, h1, g)) == 2);
  CHECK(rational_homology(c, 5).dim() == 0);
}
