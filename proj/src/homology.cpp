#include "eigenposet/homology.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "eigenposet/errors.hpp"

namespace eigenposet {

// ---------------------------------------------------------------- ChainComplex

ChainComplex::ChainComplex(std::vector<std::vector<Chain>> cells, std::vector<Boundary> boundaries)
    : cells_(std::move(cells)), boundaries_(std::move(boundaries)) {}

Index ChainComplex::count(int d) const { return static_cast<Index>(chains(d).size()); }

const std::vector<Chain>& ChainComplex::chains(int d) const {
  static const std::vector<Chain> none;
  if (d < -1 || d + 1 >= static_cast<int>(cells_.size())) return none;
  return cells_[d + 1];
}

Index ChainComplex::index_of(const Chain& c) const {
  const auto& list = chains(static_cast<int>(c.size()) - 1);
  const auto it = std::lower_bound(list.begin(), list.end(), c);
  if (it == list.end() || *it != c) return -1;
  return static_cast<Index>(it - list.begin());
}

Boundary ChainComplex::boundary(int d) const {
  if (d >= -1 && d + 1 < static_cast<int>(boundaries_.size())) return boundaries_[d + 1];
  return Boundary(count(d - 1), count(d));
}

std::size_t ChainComplex::simplex_count() const {
  std::size_t total = 0;
  for (const auto& level : cells_) total += level.size();
  return total;
}

ChainComplex order_complex(const GPoset& p, std::size_t simplex_budget) {
  const int n = p.size();
  std::vector<std::vector<int>> above(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (p.less(x, y)) above[x].push_back(y);
    }
  }
  std::vector<std::vector<Chain>> cells(1, std::vector<Chain>{Chain{}});
  std::size_t total = 1;
  Chain current;
  // Visiting successors in index order emits each dimension lexicographically.
  auto visit = [&](auto&& self, int x) -> void {
    current.push_back(x);
    if (++total > simplex_budget) throw BudgetExceeded("order complex exceeds the simplex budget");
    const std::size_t d = current.size();
    if (cells.size() <= d) cells.resize(d + 1);
    cells[d].push_back(current);
    for (int y : above[x]) self(self, y);
    current.pop_back();
  };
  for (int x = 0; x < n; ++x) visit(visit, x);
  for (auto& level : cells) std::sort(level.begin(), level.end());

  std::vector<Boundary> boundaries;
  boundaries.emplace_back(0, 1);  // del_{-1}
  for (std::size_t k = 1; k < cells.size(); ++k) {
    const auto& faces = cells[k - 1];
    Boundary b(static_cast<Index>(faces.size()), static_cast<Index>(cells[k].size()));
    std::vector<Eigen::Triplet<int>> entries;
    for (std::size_t col = 0; col < cells[k].size(); ++col) {
      const Chain& c = cells[k][col];
      for (std::size_t i = 0; i < c.size(); ++i) {
        Chain face;
        face.reserve(c.size() - 1);
        for (std::size_t j = 0; j < c.size(); ++j) {
          if (j != i) face.push_back(c[j]);
        }
        const auto row = std::lower_bound(faces.begin(), faces.end(), face) - faces.begin();
        entries.emplace_back(static_cast<int>(row), static_cast<int>(col), i % 2 == 0 ? 1 : -1);
      }
    }
    b.setFromTriplets(entries.begin(), entries.end());
    boundaries.push_back(std::move(b));
  }
  return ChainComplex(std::move(cells), std::move(boundaries));
}

bool boundary_squares_to_zero(const ChainComplex& c) {
  for (int d = 0; d <= c.top_dim(); ++d) {
    const Boundary prod = c.boundary(d - 1) * c.boundary(d);
    for (int k = 0; k < prod.outerSize(); ++k) {
      for (Boundary::InnerIterator it(prod, k); it; ++it) {
        if (it.value() != 0) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- Smith normal form

std::vector<mpz_class> normalize_invariant_factors(std::vector<mpz_class> f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      mpz_class g;
      mpz_class l;
      mpz_gcd(g.get_mpz_t(), f[i].get_mpz_t(), f[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), f[i].get_mpz_t(), f[j].get_mpz_t());
      f[i] = g;
      f[j] = l;
    }
  }
  return f;
}

SmithForm smith_normal_form(const Boundary& m) {
  std::vector<std::map<Index, mpz_class>> rows(m.rows());
  std::vector<std::set<Index>> cols(m.cols());
  for (int k = 0; k < m.outerSize(); ++k) {
    for (Boundary::InnerIterator it(m, k); it; ++it) {
      if (it.value() == 0) continue;
      rows[it.row()][it.col()] = it.value();
      cols[it.col()].insert(it.row());
    }
  }
  // rows[dst] -= f * rows[src]
  auto row_op = [&](Index dst, Index src, const mpz_class& f) {
    for (const auto& [c, v] : rows[src]) {
      auto& cell = rows[dst][c];
      cell -= f * v;
      if (cell == 0) {
        rows[dst].erase(c);
        cols[c].erase(dst);
      } else {
        cols[c].insert(dst);
      }
    }
  };

  std::vector<mpz_class> diagonal;
  while (true) {
    Index pr = -1;
    Index pc = -1;
    mpz_class best;
    for (Index r = 0; r < m.rows() && !(pr >= 0 && best == 1); ++r) {
      for (const auto& [c, v] : rows[r]) {
        const mpz_class a = abs(v);
        if (pr < 0 || a < best) {
          pr = r;
          pc = c;
          best = a;
          if (best == 1) break;
        }
      }
    }
    if (pr < 0) break;
    const mpz_class pivot = rows[pr].at(pc);

    bool clean = true;
    const std::vector<Index> others(cols[pc].begin(), cols[pc].end());
    for (Index i : others) {
      if (i == pr) continue;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i].at(pc).get_mpz_t(), pivot.get_mpz_t());
      row_op(i, pr, q);
      if (rows[i].count(pc)) clean = false;
    }
    if (!clean) continue;

    // Column pc now meets only row pr, so column operations touch row pr alone.
    std::vector<Index> row_cols;
    for (const auto& [c, v] : rows[pr]) {
      if (c != pc) row_cols.push_back(c);
    }
    for (Index c : row_cols) {
      auto& cell = rows[pr][c];
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), cell.get_mpz_t(), pivot.get_mpz_t());
      cell -= q * pivot;
      if (cell == 0) {
        rows[pr].erase(c);
        cols[c].erase(pr);
      } else {
        clean = false;
      }
    }
    if (!clean) continue;
    diagonal.push_back(abs(pivot));
    rows[pr].clear();
    cols[pc].clear();
  }

  const auto rank = static_cast<Index>(diagonal.size());
  return SmithForm{rank, normalize_invariant_factors(std::move(diagonal))};
}

// ---------------------------------------------------------------- HomologyResult

long HomologyResult::betti_at(int n) const {
  if (n < -1 || n + 1 >= static_cast<int>(betti.size())) return 0;
  return betti[n + 1];
}

const std::vector<mpz_class>& HomologyResult::torsion_at(int n) const {
  static const std::vector<mpz_class> none;
  if (n < -1 || n + 1 >= static_cast<int>(torsion.size())) return none;
  return torsion[n + 1];
}

std::vector<int> HomologyResult::support() const {
  std::vector<int> out;
  for (int n = -1; n <= max_degree(); ++n) {
    if (!is_zero_at(n)) out.push_back(n);
  }
  return out;
}

bool HomologyResult::torsion_free() const {
  for (const auto& t : torsion) {
    if (!t.empty()) return false;
  }
  return true;
}

bool HomologyResult::isomorphic_to(const HomologyResult& o) const {
  const int top = std::max(max_degree(), o.max_degree());
  for (int n = -1; n <= top; ++n) {
    if (betti_at(n) != o.betti_at(n) || torsion_at(n) != o.torsion_at(n)) return false;
  }
  return true;
}

HomologyResult HomologyResult::shifted(int k) const {
  HomologyResult out;
  out.reduced_euler = k % 2 == 0 ? reduced_euler : -reduced_euler;
  const int top = max_degree() + k;
  for (int n = -1; n <= top; ++n) {
    out.betti.push_back(betti_at(n - k));
    out.torsion.push_back(torsion_at(n - k));
  }
  return out;
}

std::string HomologyResult::describe() const {
  std::ostringstream os;
  bool first = true;
  for (int n : support()) {
    if (!first) os << ", ";
    first = false;
    os << "H" << n << "=Z^" << betti_at(n);
    for (const auto& t : torsion_at(n)) os << "+Z/" << t.get_str();
  }
  if (first) os << "acyclic";
  return os.str();
}

HomologyResult direct_sum(const std::vector<HomologyResult>& parts) {
  HomologyResult out;
  int top = -1;
  for (const auto& h : parts) {
    top = std::max(top, h.max_degree());
    out.reduced_euler += h.reduced_euler;
  }
  for (int n = -1; n <= top; ++n) {
    long b = 0;
    std::vector<mpz_class> t;
    for (const auto& h : parts) {
      b += h.betti_at(n);
      t.insert(t.end(), h.torsion_at(n).begin(), h.torsion_at(n).end());
    }
    t = normalize_invariant_factors(std::move(t));
    t.erase(std::remove_if(t.begin(), t.end(), [](const mpz_class& x) { return x == 1; }), t.end());
    out.betti.push_back(b);
    out.torsion.push_back(std::move(t));
  }
  return out;
}

HomologyResult homology(const ChainComplex& c) {
  const int top = c.top_dim();
  std::vector<Index> ranks;
  std::vector<std::vector<mpz_class>> factors;
  for (int d = -1; d <= top + 1; ++d) {
    SmithForm s = smith_normal_form(c.boundary(d));
    ranks.push_back(s.rank);
    std::vector<mpz_class> t;
    for (const auto& f : s.invariant_factors) {
      if (f > 1) t.push_back(f);
    }
    factors.push_back(std::move(t));
  }
  HomologyResult out;
  for (int d = -1; d <= top; ++d) {
    const Index nullity = c.count(d) - ranks[d + 1];
    out.betti.push_back(static_cast<long>(nullity - ranks[d + 2]));
    out.torsion.push_back(factors[d + 2]);
    out.reduced_euler += (d % 2 == 0 ? 1 : -1) * static_cast<long>(c.count(d));
  }
  return out;
}

HomologyResult homology(const GPoset& p, std::size_t simplex_budget) {
  return homology(order_complex(p, simplex_budget));
}

// ---------------------------------------------------------------- rational homology

QMatrix to_dense(const Boundary& m) {
  QMatrix out = QMatrix::Zero(m.rows(), m.cols());
  for (int k = 0; k < m.outerSize(); ++k) {
    for (Boundary::InnerIterator it(m, k); it; ++it) out(it.row(), it.col()) = it.value();
  }
  return out;
}

RationalHomology rational_homology(const ChainComplex& c, int n) {
  RationalHomology h;
  h.degree = n;
  const Index size = c.count(n);
  const QMatrix cycles = kernel_basis(to_dense(c.boundary(n)));  // rows
  QMatrix image = to_dense(c.boundary(n + 1)).transpose();
  const auto image_pivots = rref_in_place(image);
  const Index b = static_cast<Index>(image_pivots.size());

  // Greedy extension of the boundary basis by kernel vectors, in order.
  QMatrix stacked(size, b + cycles.rows());
  for (Index i = 0; i < b; ++i) stacked.col(i) = image.row(i).transpose();
  for (Index i = 0; i < cycles.rows(); ++i) stacked.col(b + i) = cycles.row(i).transpose();
  QMatrix reduced = stacked;
  const auto pivots = rref_in_place(reduced);
  std::vector<Index> chosen;
  for (Index p : pivots) {
    if (p >= b) chosen.push_back(p);
  }
  h.cycles = QMatrix::Zero(size, static_cast<Index>(chosen.size()));
  for (std::size_t j = 0; j < chosen.size(); ++j) h.cycles.col(static_cast<Index>(j)) = stacked.col(chosen[j]);

  QMatrix basis(size, b + h.dim());
  basis.leftCols(b) = stacked.leftCols(b);
  basis.rightCols(h.dim()) = h.cycles;
  h.projection = left_inverse(basis).bottomRows(h.dim());
  return h;
}

QMatrix chain_map(const ChainComplex& from, const ChainComplex& to, const std::vector<int>& element_map, int n) {
  QMatrix out = QMatrix::Zero(to.count(n), from.count(n));
  const auto& chains = from.chains(n);
  for (std::size_t i = 0; i < chains.size(); ++i) {
    Chain image;
    for (int x : chains[i]) image.push_back(element_map[x]);
    const Index j = to.index_of(image);
    if (j < 0) throw InvalidArgument("element map does not send chains to chains");
    out(j, static_cast<Index>(i)) = 1;
  }
  return out;
}

namespace {

std::vector<int> induced_embedding(const GPoset& sub, const GPoset& sup) {
  const auto emb = embed_indices(sub, sup);
  for (int a = 0; a < sub.size(); ++a) {
    for (int b = 0; b < sub.size(); ++b) {
      if (sub.leq(a, b) != sup.leq(emb[a], emb[b])) throw NotASubposet("order differs from the induced order");
    }
  }
  return emb;
}

QMatrix induced_in_homology(const ChainComplex& cs, const RationalHomology& hs, const ChainComplex& cp,
                            const RationalHomology& hp, const std::vector<int>& emb) {
  return multiply(hp.projection, multiply(chain_map(cs, cp, emb, hs.degree), hs.cycles));
}

// Everything the connecting map and the exact sequence need, built once.
struct MVData {
  GPoset q;
  GPoset pq;
  ChainComplex cq, cp, cpq;
  std::vector<int> q_in_p;   // Q index -> P index
  std::vector<int> p_in_pq;  // P index -> P_Q index
  std::vector<int> pos_in_q;  // P_Q index -> Q index, -1 outside Q
};

MVData mv_data(const GPoset& p, const std::vector<int>& q, std::size_t budget) {
  check_upper_ideal(p, q);
  std::vector<int> sorted = q;
  std::sort(sorted.begin(), sorted.end());
  MVData d{induced_subposet(p, sorted, PosetTag::Subposet), extension_PQ(p, sorted, false), {}, {}, {}, sorted, {}, {}};
  d.cq = order_complex(d.q, budget);
  d.cp = order_complex(p, budget);
  d.cpq = order_complex(d.pq, budget);
  d.p_in_pq.resize(p.size());
  for (int x = 0; x < p.size(); ++x) d.p_in_pq[x] = x;
  d.pos_in_q.assign(d.pq.size(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) d.pos_in_q[sorted[i]] = static_cast<int>(i);
  return d;
}

QMatrix connecting(const MVData& d, const RationalHomology& hpq, const RationalHomology& hq) {
  const int n = hpq.degree;
  QMatrix out = QMatrix::Zero(hq.dim(), hpq.dim());
  if (n < 0 || hpq.dim() == 0) return out;
  const int bottom = d.pq.size() - 1;
  const auto& chains = d.cpq.chains(n);
  std::vector<char> leaves_qq(chains.size(), 0);
  for (std::size_t i = 0; i < chains.size(); ++i) {
    for (int x : chains[i]) leaves_qq[i] = leaves_qq[i] || (x != bottom && d.pos_in_q[x] < 0);
  }
  const QMatrix del = to_dense(d.cpq.boundary(n));
  const auto& faces = d.cpq.chains(n - 1);
  for (Index j = 0; j < hpq.dim(); ++j) {
    Vector<mpq_class> alpha = Vector<mpq_class>::Zero(static_cast<Index>(chains.size()));
    for (std::size_t i = 0; i < chains.size(); ++i) {
      if (leaves_qq[i]) alpha(static_cast<Index>(i)) = hpq.cycles(static_cast<Index>(i), j);
    }
    Vector<mpq_class> y = Vector<mpq_class>::Zero(d.cq.count(n - 1));
    for (Index f = 0; f < del.rows(); ++f) {
      mpq_class v = 0;
      for (Index i = 0; i < del.cols(); ++i) {
        if (!is_zero(del(f, i)) && !is_zero(alpha(i))) v += del(f, i) * alpha(i);
      }
      if (is_zero(v)) continue;
      Chain face;
      for (int x : faces[f]) {
        if (x == bottom || d.pos_in_q[x] < 0) throw InvalidArgument("boundary of the split chain leaves Q");
        face.push_back(d.pos_in_q[x]);
      }
      y(d.cq.index_of(face)) = v;
    }
    out.col(j) = multiply(hq.projection, QMatrix(y));
  }
  return out;
}

}  // namespace

QMatrix induced_map(const GPoset& sub, const GPoset& sup, int n) {
  const auto emb = induced_embedding(sub, sup);
  const ChainComplex cs = order_complex(sub);
  const ChainComplex cp = order_complex(sup);
  return induced_in_homology(cs, rational_homology(cs, n), cp, rational_homology(cp, n), emb);
}

QMatrix action_on_homology(const GPoset& p, const ChainComplex& c, const RationalHomology& h, int g) {
  // g permutes the n-chains, so g * cycles is a row permutation of cycles.
  const auto& chains = c.chains(h.degree);
  QMatrix moved(h.cycles.rows(), h.cycles.cols());
  for (std::size_t i = 0; i < chains.size(); ++i) {
    Chain image;
    for (int x : chains[i]) image.push_back(p.act(g, x));
    const Index j = c.index_of(image);
    if (j < 0) throw InvalidArgument("group element does not act on chains");
    moved.row(j) = h.cycles.row(static_cast<Index>(i));
  }
  return multiply(h.projection, moved);
}

QMatrix connecting_map(const GPoset& p, const std::vector<int>& q, int n) {
  const MVData d = mv_data(p, q, kDefaultSimplexBudget);
  return connecting(d, rational_homology(d.cpq, n), rational_homology(d.cq, n - 1));
}

MVReport verify_mayer_vietoris(const GPoset& p, const std::vector<int>& q, std::size_t simplex_budget) {
  const MVData d = mv_data(p, q, simplex_budget);
  const int top = d.cpq.top_dim() + 1;
  std::vector<RationalHomology> hq, hp, hpq;  // index n + 1
  for (int n = -1; n <= top; ++n) {
    hq.push_back(rational_homology(d.cq, n));
    hp.push_back(rational_homology(d.cp, n));
    hpq.push_back(rational_homology(d.cpq, n));
  }
  std::vector<QMatrix> iota, kappa, r;
  for (int n = -1; n <= top; ++n) {
    iota.push_back(induced_in_homology(d.cq, hq[n + 1], d.cp, hp[n + 1], d.q_in_p));
    kappa.push_back(induced_in_homology(d.cp, hp[n + 1], d.cpq, hpq[n + 1], d.p_in_pq));
    r.push_back(n == -1 ? QMatrix::Zero(0, hpq[0].dim()) : connecting(d, hpq[n + 1], hq[n]));
  }

  MVReport report;
  auto add = [&](const std::string& space, int n, Index dim, const QMatrix& in, const QMatrix& out) {
    MVNode node;
    node.space = space;
    node.degree = n;
    node.dim = dim;
    node.incoming_rank = rank(in);
    node.outgoing_rank = rank(out);
    node.composite_zero = is_zero_matrix(multiply(out, in));
    node.exact = node.composite_zero && node.incoming_rank == dim - node.outgoing_rank;
    if (!node.exact && report.exact) {
      report.exact = false;
      report.witness = "H~_" + std::to_string(n) + "(" + space + ")";
    }
    report.nodes.push_back(node);
  };
  for (int n = top; n >= -1; --n) {
    const QMatrix from_above = n + 2 <= top + 1 ? r[n + 2] : QMatrix::Zero(hq[n + 1].dim(), 0);
    add("Q", n, hq[n + 1].dim(), from_above, iota[n + 1]);
    add("P", n, hp[n + 1].dim(), iota[n + 1], kappa[n + 1]);
    add("P_Q", n, hpq[n + 1].dim(), kappa[n + 1], r[n + 1]);
  }
  return report;
}

bool verify_simplex_decomposition(const GPoset& p, const std::vector<int>& q) {
  const MVData d = mv_data(p, q, kDefaultSimplexBudget);
  const GPoset qq = adjoin_bottom(d.q);
  const auto qq_in_pq = embed_indices(qq, d.pq);
  using SimplexSet = std::set<Chain>;
  auto collect = [&](const ChainComplex& c, const std::vector<int>& map) {
    SimplexSet out;
    for (int dim = -1; dim <= c.top_dim(); ++dim) {
      for (const auto& chain : c.chains(dim)) {
        Chain image;
        for (int x : chain) image.push_back(map[x]);
        std::sort(image.begin(), image.end());
        out.insert(image);
      }
    }
    return out;
  };
  std::vector<int> q_in_pq;
  for (int x : d.q_in_p) q_in_pq.push_back(d.p_in_pq[x]);
  std::vector<int> id(d.pq.size());
  for (int x = 0; x < d.pq.size(); ++x) id[x] = x;
  const SimplexSet all = collect(d.cpq, id);
  const SimplexSet in_p = collect(d.cp, d.p_in_pq);
  const SimplexSet in_qq = collect(order_complex(qq), qq_in_pq);
  const SimplexSet in_q = collect(d.cq, q_in_pq);
  SimplexSet uni;
  SimplexSet meet;
  std::set_union(in_p.begin(), in_p.end(), in_qq.begin(), in_qq.end(), std::inserter(uni, uni.end()));
  std::set_intersection(in_p.begin(), in_p.end(), in_qq.begin(), in_qq.end(), std::inserter(meet, meet.end()));
  return uni == all && meet == in_q;
}

std::string sparse_triplets(const Boundary& m, int d) {
  std::ostringstream os;
  os << "boundary " << d << " rows " << m.rows() << " cols " << m.cols() << " nnz " << m.nonZeros() << "\n";
  std::vector<std::tuple<Index, Index, int>> entries;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (Boundary::InnerIterator it(m, k); it; ++it) entries.emplace_back(it.row(), it.col(), it.value());
  }
  std::sort(entries.begin(), entries.end());
  for (const auto& [r, c, v] : entries) os << r << " " << c << " " << v << "\n";
  return os.str();
}

}  // namespace eigenposet
