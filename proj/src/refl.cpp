#include "eigenposet/refl.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "eigenposet/data.hpp"
#include "eigenposet/errors.hpp"

namespace eigenposet {

struct ReflGroup::Cache {
  std::once_flag once;
  std::shared_ptr<const FiniteGroup> group;
};

mpz_class DegreeData::degree_product() const {
  mpz_class p = 1;
  for (int d : degrees) p *= d;
  return p;
}

std::string to_string(DegreeData::Source s) {
  switch (s) {
    case DegreeData::Source::Table: return "table";
    case DegreeData::Source::Formula: return "formula";
    case DegreeData::Source::Molien: return "molien";
  }
  return "?";
}

ReflGroup::ReflGroup(Index dim, std::vector<Mat> generators, std::vector<Mat> elements, std::string name)
    : dim_(dim),
      generators_(std::move(generators)),
      elements_(std::move(elements)),
      name_(std::move(name)),
      cache_(std::make_shared<Cache>()) {
  if (elements_.empty() || elements_.front() != identity(dim_)) {
    throw InvalidArgument("group element list must start with the identity");
  }
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!index_.emplace(matrix_key(elements_[i]), static_cast<int>(i)).second) {
      throw InvalidArgument("duplicate group element");
    }
  }
}

int ReflGroup::index_of(const Mat& m) const {
  const auto it = index_.find(matrix_key(m));
  return it == index_.end() ? -1 : it->second;
}

int ReflGroup::mul(int a, int b) const {
  const int c = index_of(matmul(elements_[a], elements_[b]));
  if (c < 0) throw InvalidArgument("group is not closed under multiplication");
  return c;
}

std::shared_ptr<const FiniteGroup> ReflGroup::abstract() const {
  std::call_once(cache_->once, [this] {
    if (elements_.size() > kCayleyLimit) throw BudgetExceeded("group too large for a multiplication table");
    const int n = order();
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) table[a][b] = mul(a, b);
    }
    cache_->group = std::make_shared<const FiniteGroup>(std::move(table), name_);
  });
  return cache_->group;
}

namespace {

std::shared_ptr<ReflGroup> closure(Index n, std::vector<Mat> gens, std::size_t budget, std::string name) {
  for (const auto& g : gens) {
    if (g.rows() != n || g.cols() != n) throw DimensionMismatch("generator has wrong shape");
    if (determinant(g).is_zero()) throw SingularMatrix("generator is not invertible");
  }
  std::vector<Mat> elements{identity(n)};
  std::unordered_map<std::string, int> seen{{matrix_key(elements.front()), 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : gens) {
      Mat next = matmul(s, elements[head]);
      std::string key = matrix_key(next);
      if (seen.count(key)) continue;
      if (elements.size() >= budget) throw BudgetExceeded("group enumeration exceeds budget");
      seen.emplace(std::move(key), static_cast<int>(elements.size()));
      elements.push_back(std::move(next));
    }
  }
  return std::make_shared<ReflGroup>(n, std::move(gens), std::move(elements), std::move(name));
}

Mat permutation_matrix(int n, int i, int j) {
  Mat s = identity(n);
  s(i, i) = CycNum(0);
  s(j, j) = CycNum(0);
  s(i, j) = CycNum(1);
  s(j, i) = CycNum(1);
  return s;
}

}  // namespace

ReflGroupPtr build_gmpn(int m, int p, int n, std::size_t budget) {
  if (m < 1 || p < 1 || n < 1 || m % p != 0) throw InvalidArgument("G(m,p,n) needs m,p,n >= 1 and p | m");
  mpz_class expected = 1;
  for (int i = 0; i < n; ++i) expected *= m * (i + 1);
  expected /= p;
  if (expected > mpz_class(static_cast<unsigned long>(budget))) {
    throw BudgetExceeded("G(" + std::to_string(m) + "," + std::to_string(p) + "," + std::to_string(n) +
                         ") exceeds the element budget");
  }
  std::vector<CycNum> roots(m);
  for (int k = 0; k < m; ++k) roots[k] = CycNum::root_of_unity(m, k);

  std::vector<Mat> elements;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> exps(n, 0);
    while (true) {
      if (std::accumulate(exps.begin(), exps.end(), 0) % p == 0) {
        Mat g = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i) g(perm[i], i) = roots[exps[i]];
        elements.push_back(std::move(g));
      }
      int k = n - 1;
      while (k >= 0 && exps[k] == m - 1) exps[k--] = 0;
      if (k < 0) break;
      ++exps[k];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Mat> gens;
  for (int i = 0; i + 1 < n; ++i) gens.push_back(permutation_matrix(n, i, i + 1));
  if (p > 1 && n >= 2) {
    Mat s = Mat::Zero(n, n);
    s(0, 1) = roots[m - 1];
    s(1, 0) = roots[1 % m];
    for (int i = 2; i < n; ++i) s(i, i) = CycNum(1);
    gens.push_back(s);
  }
  if (p < m) {
    Mat t = identity(n);
    t(0, 0) = roots[p];
    gens.push_back(t);
  }
  auto g = std::make_shared<ReflGroup>(n, std::move(gens), std::move(elements),
                                       "G(" + std::to_string(m) + "," + std::to_string(p) + "," +
                                           std::to_string(n) + ")");
  g->family = GroupFamily{GroupFamily::Kind::Gmpn, m, p, n};
  return g;
}

ReflGroupPtr build_sym(int n, std::size_t budget) {
  if (n < 2) throw InvalidArgument("Sym(n) reflection representation needs n >= 2");
  const int r = n - 1;
  std::vector<Mat> gens;
  // s_i(a_j) = a_j - A_ij a_i for the type A Cartan matrix A.
  for (int i = 0; i < r; ++i) {
    Mat s = identity(r);
    s(i, i) = CycNum(-1);
    if (i > 0) s(i, i - 1) = CycNum(1);
    if (i + 1 < r) s(i, i + 1) = CycNum(1);
    gens.push_back(s);
  }
  auto g = closure(r, std::move(gens), budget, "Sym(" + std::to_string(n) + ")");
  g->family = GroupFamily{GroupFamily::Kind::Sym, 0, 0, n};
  return g;
}

ReflGroupPtr build_from_generators(Index n, std::vector<Mat> gens, std::size_t budget, std::string name) {
  return closure(n, std::move(gens), budget, std::move(name));
}

ReflGroupPtr load_group_file(const std::string& selector, std::size_t budget) {
  const GroupFile file = read_group_file(resolve_group_file(selector));
  auto g = closure(file.dim, file.generators, budget, file.name);
  if (file.order && *file.order != g->order()) {
    throw InvalidArgument("group file " + file.name + " declares order " + std::to_string(*file.order) +
                          " but generates " + std::to_string(g->order()));
  }
  if (!file.degrees.empty()) {
    DegreeData d;
    d.degrees = file.degrees;
    d.codegrees = file.codegrees;
    d.source = DegreeData::Source::Table;
    g->declared = d;
  }
  return g;
}

ReflGroupPtr build_group(const std::string& selector, std::size_t budget) {
  const auto colon = selector.find(':');
  if (colon == std::string::npos) throw ParseError("group selector needs a kind prefix: " + selector);
  const std::string kind = selector.substr(0, colon);
  const std::string rest = selector.substr(colon + 1);
  if (kind == "gmpn") {
    std::vector<int> v;
    std::string item;
    std::istringstream parts(rest);
    while (std::getline(parts, item, ',')) {
      try {
        v.push_back(std::stoi(item));
      } catch (const std::logic_error&) {
        throw ParseError("bad gmpn selector " + selector);
      }
    }
    if (v.size() != 3) throw ParseError("gmpn selector needs m,p,n: " + selector);
    return build_gmpn(v[0], v[1], v[2], budget);
  }
  if (kind == "sym") {
    try {
      return build_sym(std::stoi(rest), budget);
    } catch (const std::logic_error&) {
      throw ParseError("bad sym selector " + selector);
    }
  }
  if (kind == "file") return load_group_file(rest, budget);
  throw ParseError("unknown group kind " + kind);
}

std::vector<int> reflection_indices(const ReflGroup& g) {
  std::vector<int> out;
  const Mat id = identity(g.dim());
  for (int i = 0; i < g.order(); ++i) {
    if (rank(Mat(g.element(i) - id)) == 1) out.push_back(i);
  }
  return out;
}

std::vector<Mat> reflections(const ReflGroup& g) {
  std::vector<Mat> out;
  for (int i : reflection_indices(g)) out.push_back(g.element(i));
  return out;
}

int hyperplane_count(const ReflGroup& g) {
  std::set<std::string> keys;
  const Mat id = identity(g.dim());
  for (int i : reflection_indices(g)) keys.insert(kernel(Mat(g.element(i) - id)).key());
  return static_cast<int>(keys.size());
}

Index fixed_space_dim(const ReflGroup& g) {
  const Index n = g.dim();
  if (g.generators().empty()) return n;
  Mat stacked(n * static_cast<Index>(g.generators().size()), n);
  for (std::size_t k = 0; k < g.generators().size(); ++k) {
    stacked.middleRows(static_cast<Index>(k) * n, n) = g.generators()[k] - identity(n);
  }
  return kernel(stacked).dim();
}

std::vector<CycNum> reverse_char_poly(const Mat& x) {
  if (x.rows() != x.cols()) throw DimensionMismatch("characteristic polynomial of a non-square matrix");
  // Faddeev-LeVerrier: p_0 = 1, M_1 = I, p_k = -tr(x M_k)/k, M_{k+1} = x M_k + p_k I.
  const Index n = x.rows();
  std::vector<CycNum> p(n + 1);
  p[0] = CycNum(1);
  Mat mk = identity(n);
  for (Index k = 1; k <= n; ++k) {
    const Mat xm = matmul(x, mk);
    CycNum trace(0);
    for (Index i = 0; i < n; ++i) trace += xm(i, i);
    p[k] = -trace / CycNum(static_cast<long>(k));
    mk = xm;
    for (Index i = 0; i < n; ++i) mk(i, i) += p[k];
  }
  return p;
}

std::optional<std::vector<int>> molien_degrees(const std::vector<Mat>& elements, Index dim) {
  if (dim == 0) return std::vector<int>{};
  std::map<std::string, std::pair<std::vector<CycNum>, long>> polys;
  for (const auto& x : elements) {
    auto p = reverse_char_poly(x);
    std::string key;
    for (const auto& c : p) key += c.to_string() + '|';
    auto [it, inserted] = polys.try_emplace(key, std::move(p), 0);
    ++it->second.second;
  }
  const mpz_class order = static_cast<unsigned long>(elements.size());
  for (std::size_t terms = 32;; terms *= 2) {
    const std::size_t k_max = std::min<std::size_t>(terms, elements.size() + 1);
    std::vector<CycNum> total(k_max + 1, CycNum(0));
    for (const auto& [key, entry] : polys) {
      const auto& [p, count] = entry;
      // Power series of 1/p(t).
      std::vector<CycNum> c(k_max + 1, CycNum(0));
      c[0] = CycNum(1);
      for (std::size_t k = 1; k <= k_max; ++k) {
        CycNum acc(0);
        for (std::size_t j = 1; j < p.size() && j <= k; ++j) {
          if (!p[j].is_zero() && !c[k - j].is_zero()) acc -= p[j] * c[k - j];
        }
        c[k] = acc;
      }
      for (std::size_t k = 0; k <= k_max; ++k) total[k] += c[k] * CycNum(count);
    }
    std::vector<mpz_class> b(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k) {
      if (!total[k].is_rational()) return std::nullopt;
      const mpq_class v = total[k].rational() / mpq_class(order);
      if (v.get_den() != 1) return std::nullopt;
      b[k] = v.get_num();
    }
    std::vector<int> degrees;
    bool truncated = false;
    while (true) {
      std::size_t d = 1;
      while (d <= k_max && b[d] == 0) ++d;
      if (d > k_max) {
        truncated = static_cast<Index>(degrees.size()) < dim;
        break;
      }
      if (b[d] < 0 || static_cast<Index>(degrees.size()) == dim) return std::nullopt;
      degrees.push_back(static_cast<int>(d));
      // Multiply by (1 - t^d).
      for (std::size_t k = k_max; k >= d; --k) b[k] -= b[k - d];
    }
    if (truncated) {
      if (k_max > elements.size()) return std::nullopt;
      continue;
    }
    mpz_class prod = 1;
    for (int d : degrees) prod *= d;
    if (prod != order) return std::nullopt;
    return degrees;
  }
}

std::optional<DegreeData> family_degree_data(const GroupFamily& f) {
  DegreeData d;
  d.source = DegreeData::Source::Formula;
  switch (f.kind) {
    case GroupFamily::Kind::None:
      return std::nullopt;
    case GroupFamily::Kind::Sym:
      for (int k = 2; k <= f.n; ++k) d.degrees.push_back(k);
      for (int k = 0; k <= f.n - 2; ++k) d.codegrees.push_back(k);
      return d;
    case GroupFamily::Kind::Gmpn:
      break;
  }
  const int m = f.m;
  const int p = f.p;
  const int n = f.n;
  if (n == 1) {
    d.degrees = {m / p};
    d.codegrees = {0};
  } else if (m == 1) {
    // Sym(n) on C^n: the reflection representation plus a trivial line.
    for (int k = 1; k <= n; ++k) d.degrees.push_back(k);
    d.codegrees.push_back(0);
    for (int k = 0; k <= n - 2; ++k) d.codegrees.push_back(k);
  } else {
    for (int k = 1; k < n; ++k) d.degrees.push_back(k * m);
    d.degrees.push_back(n * m / p);
    for (int k = 0; k < n - 1; ++k) d.codegrees.push_back(k * m);
    d.codegrees.push_back(p == m ? (n - 1) * m - n : (n - 1) * m);
  }
  std::sort(d.degrees.begin(), d.degrees.end());
  std::sort(d.codegrees.begin(), d.codegrees.end());
  return d;
}

DegreeData degree_data(const ReflGroup& g) {
  DegreeData d;
  if (auto f = family_degree_data(g.family)) {
    d = *f;
  } else if (g.declared) {
    d = *g.declared;
  } else if (auto row = find_table_row(g.name()); row && row->dim == g.dim()) {
    d.degrees = row->degrees;
    d.codegrees = row->codegrees;
    d.source = DegreeData::Source::Table;
  } else {
    throw UnknownGroup("no degree data for group " + g.name());
  }
  if (static_cast<std::size_t>(g.order()) <= kMolienLimit) {
    d.molien = molien_degrees(g.elements(), g.dim()).value_or(std::vector<int>{-1});
  }
  return d;
}

std::vector<DegreeCandidate> degree_candidates(int dim, const mpz_class& order, const std::vector<int>& degrees,
                                               int codegree_sum) {
  std::vector<DegreeCandidate> out;
  const auto consider = [&](std::string name, const std::vector<int>& deg, const std::vector<int>& codeg) {
    if (deg != degrees || static_cast<int>(codeg.size()) != dim) return;
    if (std::accumulate(codeg.begin(), codeg.end(), 0) != codegree_sum) return;
    out.push_back(DegreeCandidate{std::move(name), deg, codeg});
  };
  if (dim == 0) {
    if (order == 1) consider("trivial", {}, {});
    return out;
  }
  if (dim == 1) {
    if (order.fits_sint_p()) {
      const int m = static_cast<int>(order.get_si());
      const auto d = family_degree_data(GroupFamily{GroupFamily::Kind::Gmpn, m, 1, 1});
      consider("G(" + std::to_string(m) + ",1,1)", d->degrees, d->codegrees);
    }
  } else {
    mpz_class nfact = 1;
    for (int k = 2; k <= dim; ++k) nfact *= k;
    for (int m = 1;; ++m) {
      mpz_class base = nfact;
      for (int k = 1; k < dim; ++k) base *= m;  // m^{n-1} n!, the order at p = m
      if (base > order) break;
      for (int p = 1; p <= m; ++p) {
        if (m % p != 0 || base * m / p != order) continue;
        const auto d = family_degree_data(GroupFamily{GroupFamily::Kind::Gmpn, m, p, dim});
        consider("G(" + std::to_string(m) + "," + std::to_string(p) + "," + std::to_string(dim) + ")", d->degrees,
                 d->codegrees);
      }
    }
  }
  const auto sym = family_degree_data(GroupFamily{GroupFamily::Kind::Sym, 0, 0, dim + 1});
  if (sym->degree_product() == order) consider("Sym(" + std::to_string(dim + 1) + ")", sym->degrees, sym->codegrees);
  for (const auto& row : degree_table()) {
    if (row.dim == dim && row.order == order) consider(row.name, row.degrees, row.codegrees);
  }
  return out;
}

bool normalizes(const Mat& gamma, const ReflGroup& g) {
  if (gamma.rows() != g.dim() || gamma.cols() != g.dim()) throw DimensionMismatch("gamma has wrong shape");
  const Mat gi = matinv(gamma);
  for (const auto& x : g.elements()) {
    if (g.index_of(matmul(matmul(gamma, x), gi)) < 0) return false;
  }
  return true;
}

ReflCoset make_coset(ReflGroupPtr g, Mat gamma) {
  if (!normalizes(gamma, *g)) throw InvalidArgument("gamma does not normalize " + g->name());
  const long order = matrix_order(gamma, kGammaOrderLimit);
  if (order == 0) throw InvalidArgument("gamma has no finite order within the limit");
  ReflCoset c;
  c.group = std::move(g);
  c.gamma = std::move(gamma);
  c.gamma_order = order;
  return c;
}

ReflCoset trivial_coset(ReflGroupPtr g) {
  const Index n = g->dim();
  return make_coset(std::move(g), identity(n));
}

std::vector<Mat> coset_elements(const ReflCoset& c) {
  std::vector<Mat> out;
  out.reserve(c.group->elements().size());
  for (const auto& x : c.group->elements()) out.push_back(matmul(c.gamma, x));
  return out;
}

}  // namespace eigenposet
